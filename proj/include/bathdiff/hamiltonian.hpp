#pragma once

#include "bathdiff/fock.hpp"

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace bathdiff {

/// Resonant-level model: one system mode at omega0 coupled to N_E bath modes.
/// Couplings are real, so every Hamiltonian here is real symmetric.
struct ModelSpec {
    double omega0 = 0.0;
    std::vector<double> bath_frequencies; // omega_k, k = 1..N_E
    std::vector<double> couplings;        // V_k
    Statistics statistics = Statistics::Fermion;

    [[nodiscard]] int n_bath() const noexcept { return static_cast<int>(bath_frequencies.size()); }
    [[nodiscard]] int n_modes() const noexcept { return n_bath() + 1; }

    /// Frequency of mode j (j = 0 is the system site).
    [[nodiscard]] double mode_frequency(int j) const {
        return j == 0 ? omega0 : bath_frequencies.at(j - 1);
    }
};

/// Throws ArgumentError unless sizes match and all entries are finite.
void validate(const ModelSpec& model);

/// Real symmetric sparse matrix, upper triangle stored (row <= col).
struct SparseHermitian {
    struct Entry {
        int row;
        int col;
        double value;
    };

    int dim = 0;
    std::vector<Entry> entries;

    /// y = H x, expanding the implied lower triangle.
    void apply(const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const;

    [[nodiscard]] Eigen::MatrixXd to_dense() const;

    /// Gershgorin-style bound on the spectral radius.
    [[nodiscard]] double norm_bound() const;
};

/// Many-body Hamiltonian in the fixed-particle-number sector spanned by
/// `basis`. Diagonal entries are the summed frequencies of occupied modes;
/// off-diagonal entries are sign * V_k for every hop between mode 0 and bath
/// mode k, with the sign set by the model's statistics.
[[nodiscard]] SparseHermitian build_many_body(const ModelSpec& model, const SectorBasis& basis);

/// Single-body matrix A of the fermionic model (arrowhead form):
/// A_00 = omega0, A_kk = omega_k, A_0k = A_k0 = V_k. The spin model admits no
/// such reduction, so this is meaningful for Fermion statistics only.
[[nodiscard]] Eigen::MatrixXd build_single_body(const ModelSpec& model);

/// Default bath layout: N_E frequencies uniformly spanning [-omega_bw/2,
/// +omega_bw/2] (a single mode sits at 0).
[[nodiscard]] std::vector<double> uniform_band_frequencies(int n_bath, double omega_bw);

} // namespace bathdiff
