#pragma once

#include "bathdiff/hamiltonian.hpp"

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

namespace bathdiff {

/// Uniform sampling grid t_i = i * t_max / n_steps, i = 0..n_steps.
struct TimeGrid {
    double t_max = 10.0;
    int n_steps = 1000;

    [[nodiscard]] double dt() const noexcept { return t_max / n_steps; }
    [[nodiscard]] int n_samples() const noexcept { return n_steps + 1; }
    [[nodiscard]] double time(int i) const noexcept { return i * (t_max / n_steps); }

    [[nodiscard]] bool operator==(const TimeGrid&) const = default;
};

/// Sampled real observable on a TimeGrid.
struct TimeSeries {
    TimeGrid grid;
    std::vector<double> values;
    std::string label;
};

/// Unit vector on the single basis state occupying exactly `occupied_modes`.
[[nodiscard]] Eigen::VectorXcd initial_state(const SectorBasis& basis,
                                             const std::vector<int>& occupied_modes);

/// <O_0† O_0>: total weight on basis states with the system site occupied.
[[nodiscard]] double system_population(const Eigen::VectorXcd& psi, const SectorBasis& basis);

enum class PropagationMethod { DenseEig, Krylov };

/// Largest dimension handled by the dense spectral backend.
inline constexpr int kDenseDimThreshold = 4000;

[[nodiscard]] PropagationMethod choose_method(std::size_t dim) noexcept;

/// Propagate psi0 under H and invoke on_sample(i, t_i, psi(t_i)) for every
/// grid sample, including i = 0.
///
/// DenseEig: full spectral decomposition, then exact phase evolution per
/// sample. Krylov: per-step Lanczos exponential with adaptive step halving
/// (subspace <= 30, step tolerance 1e-12). Both conserve norm and energy to
/// working precision.
void evolve(const SparseHermitian& h, const Eigen::VectorXcd& psi0, const TimeGrid& grid,
            PropagationMethod method,
            const std::function<void(int, double, const Eigen::VectorXcd&)>& on_sample);

/// Convenience wrapper storing the full trajectory.
[[nodiscard]] std::vector<Eigen::VectorXcd> evolve_states(const SparseHermitian& h,
                                                          const Eigen::VectorXcd& psi0,
                                                          const TimeGrid& grid,
                                                          PropagationMethod method);

/// Streamed n_S(t): populations only, no state storage.
[[nodiscard]] TimeSeries population_series(const SparseHermitian& h, const SectorBasis& basis,
                                           const Eigen::VectorXcd& psi0, const TimeGrid& grid,
                                           PropagationMethod method,
                                           std::string label = "n_S");

/// Fermionic single-body population n_0(t) = sum_j occ_j |U(t)_{0j}|^2 with
/// U(t) = exp(-i A t), from the eigendecomposition of the one-body matrix A.
[[nodiscard]] TimeSeries single_body_population(const Eigen::MatrixXd& a,
                                                const std::vector<int>& initial_occupations,
                                                const TimeGrid& grid);

} // namespace bathdiff
