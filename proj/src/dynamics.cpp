#include "bathdiff/dynamics.hpp"

#include <cmath>
#include <complex>
#include <string>

namespace bathdiff {

namespace {

using Complex = std::complex<double>;
constexpr Complex kI{0.0, 1.0};

/// psi <- exp(-i H dt) psi via a Lanczos subspace, recursing on halved steps
/// when the subspace estimate misses the tolerance.
void krylov_step(const SparseHermitian& h, Eigen::VectorXcd& psi, double dt, int depth) {
    constexpr int kMaxSubspace = 30;
    constexpr double kStepTol = 1e-12;
    constexpr double kBreakdownTol = 1e-14;
    constexpr int kMaxDepth = 24;

    if (depth > kMaxDepth) {
        throw NumericalError("krylov_step: step halving exceeded depth " +
                             std::to_string(kMaxDepth) + " without meeting tolerance " +
                             std::to_string(kStepTol));
    }

    const double beta0 = psi.norm();
    if (beta0 == 0.0) return;

    const int dim = h.dim;
    std::vector<Eigen::VectorXcd> v;
    v.reserve(kMaxSubspace + 1);
    v.push_back(psi / beta0);

    std::vector<double> alpha;
    std::vector<double> beta; // beta[m] couples v[m] and v[m+1]
    Eigen::VectorXcd w(dim);

    Eigen::VectorXcd subspace_phases; // exp(-i dt T_m) e_1 in the Lanczos basis
    bool converged = false;

    for (int m = 0; m < kMaxSubspace; ++m) {
        h.apply(v[m], w);
        alpha.push_back(std::real(v[m].dot(w)));
        w -= alpha[m] * v[m];
        if (m > 0) w -= beta[m - 1] * v[m - 1];
        // One full reorthogonalization pass; cheap next to the matvec.
        for (const auto& vj : v) {
            w -= vj.dot(w) * vj;
        }
        const double b = w.norm();

        const int k = m + 1;
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
        for (int i = 0; i < k; ++i) {
            t(i, i) = alpha[i];
            if (i + 1 < k) t(i, i + 1) = t(i + 1, i) = beta[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
        if (es.info() != Eigen::Success) {
            throw NumericalError("krylov_step: subspace eigensolver failed");
        }
        const Eigen::MatrixXd& q = es.eigenvectors();
        subspace_phases = Eigen::VectorXcd::Zero(k);
        for (int i = 0; i < k; ++i) {
            const Complex weight = std::exp(-kI * es.eigenvalues()[i] * dt) * q(0, i);
            for (int r = 0; r < k; ++r) {
                subspace_phases[r] += weight * q(r, i);
            }
        }

        if (b < kBreakdownTol) {
            converged = true; // invariant subspace: result exact
            break;
        }
        const double err_estimate = b * std::abs(subspace_phases[k - 1]);
        if (err_estimate < kStepTol) {
            converged = true;
            break;
        }
        beta.push_back(b);
        v.push_back(w / b);
    }

    if (!converged) {
        krylov_step(h, psi, dt / 2, depth + 1);
        krylov_step(h, psi, dt / 2, depth + 1);
        return;
    }

    psi.setZero();
    for (std::size_t j = 0; j < static_cast<std::size_t>(subspace_phases.size()); ++j) {
        psi += (beta0 * subspace_phases[j]) * v[j];
    }
}

void evolve_dense(const SparseHermitian& h, const Eigen::VectorXcd& psi0, const TimeGrid& grid,
                  const std::function<void(int, double, const Eigen::VectorXcd&)>& on_sample) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.to_dense());
    if (es.info() != Eigen::Success) {
        throw NumericalError("evolve: dense eigensolver did not converge at dim " +
                             std::to_string(h.dim));
    }
    const Eigen::MatrixXd& phi = es.eigenvectors();
    const Eigen::VectorXd& energy = es.eigenvalues();

    // Split complex work into real GEMVs to keep phi real.
    const Eigen::VectorXd c_re = phi.transpose() * psi0.real();
    const Eigen::VectorXd c_im = phi.transpose() * psi0.imag();

    const int dim = h.dim;
    Eigen::VectorXd w_re(dim), w_im(dim);
    Eigen::VectorXcd psi(dim);
    for (int i = 0; i < grid.n_samples(); ++i) {
        const double t = grid.time(i);
        for (int a = 0; a < dim; ++a) {
            const double cphi = std::cos(energy[a] * t);
            const double sphi = std::sin(energy[a] * t);
            // (cphi - i sphi) * (c_re + i c_im)
            w_re[a] = cphi * c_re[a] + sphi * c_im[a];
            w_im[a] = cphi * c_im[a] - sphi * c_re[a];
        }
        psi.real() = phi * w_re;
        psi.imag() = phi * w_im;
        on_sample(i, t, psi);
    }
}

void evolve_krylov(const SparseHermitian& h, const Eigen::VectorXcd& psi0, const TimeGrid& grid,
                   const std::function<void(int, double, const Eigen::VectorXcd&)>& on_sample) {
    Eigen::VectorXcd psi = psi0;
    on_sample(0, 0.0, psi);
    const double dt = grid.dt();
    // Pre-split so each Lanczos step covers at most ~1/||H|| of time; the
    // in-step halving then only fires as a backstop.
    const double bound = h.norm_bound();
    const int splits = std::max(1, static_cast<int>(std::ceil(dt * bound)));
    for (int i = 1; i < grid.n_samples(); ++i) {
        for (int k = 0; k < splits; ++k) {
            krylov_step(h, psi, dt / splits, 0);
        }
        on_sample(i, grid.time(i), psi);
    }
}

} // namespace

Eigen::VectorXcd initial_state(const SectorBasis& basis, const std::vector<int>& occupied_modes) {
    OccMask s = 0;
    for (int m : occupied_modes) {
        if (m < 0 || m >= basis.n_modes()) {
            throw ArgumentError("initial_state: mode index out of range");
        }
        if (bit_set(s, m)) {
            throw ArgumentError("initial_state: duplicate mode in occupation set");
        }
        s |= OccMask{1} << m;
    }
    if (popcount(s) != basis.n_particles()) {
        throw ArgumentError("initial_state: occupation set has wrong particle count for sector");
    }
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<long>(basis.size()));
    psi[static_cast<long>(basis.rank(s))] = 1.0;
    return psi;
}

double system_population(const Eigen::VectorXcd& psi, const SectorBasis& basis) {
    if (psi.size() != static_cast<long>(basis.size())) {
        throw ArgumentError("system_population: state/basis dimension mismatch");
    }
    double n = 0.0;
    for (long i = 0; i < psi.size(); ++i) {
        if (bit_set(basis.state(static_cast<std::size_t>(i)), 0)) {
            n += std::norm(psi[i]);
        }
    }
    return n;
}

PropagationMethod choose_method(std::size_t dim) noexcept {
    return dim <= static_cast<std::size_t>(kDenseDimThreshold) ? PropagationMethod::DenseEig
                                                               : PropagationMethod::Krylov;
}

void evolve(const SparseHermitian& h, const Eigen::VectorXcd& psi0, const TimeGrid& grid,
            PropagationMethod method,
            const std::function<void(int, double, const Eigen::VectorXcd&)>& on_sample) {
    if (psi0.size() != h.dim) {
        throw ArgumentError("evolve: state/Hamiltonian dimension mismatch");
    }
    if (grid.n_steps < 1 || !(grid.t_max > 0)) {
        throw ArgumentError("evolve: grid needs t_max > 0 and n_steps >= 1");
    }
    if (method == PropagationMethod::DenseEig && h.dim > kDenseDimThreshold) {
        throw ArgumentError("evolve: DenseEig limited to dim <= " +
                            std::to_string(kDenseDimThreshold) + ", got " + std::to_string(h.dim));
    }
    if (method == PropagationMethod::DenseEig) {
        evolve_dense(h, psi0, grid, on_sample);
    } else {
        evolve_krylov(h, psi0, grid, on_sample);
    }
}

std::vector<Eigen::VectorXcd> evolve_states(const SparseHermitian& h, const Eigen::VectorXcd& psi0,
                                            const TimeGrid& grid, PropagationMethod method) {
    std::vector<Eigen::VectorXcd> states;
    states.reserve(grid.n_samples());
    evolve(h, psi0, grid, method,
           [&](int, double, const Eigen::VectorXcd& psi) { states.push_back(psi); });
    return states;
}

TimeSeries population_series(const SparseHermitian& h, const SectorBasis& basis,
                             const Eigen::VectorXcd& psi0, const TimeGrid& grid,
                             PropagationMethod method, std::string label) {
    TimeSeries series{grid, {}, std::move(label)};
    series.values.resize(grid.n_samples());
    evolve(h, psi0, grid, method, [&](int i, double, const Eigen::VectorXcd& psi) {
        series.values[i] = system_population(psi, basis);
    });
    return series;
}

TimeSeries single_body_population(const Eigen::MatrixXd& a,
                                  const std::vector<int>& initial_occupations,
                                  const TimeGrid& grid) {
    const int n = static_cast<int>(a.rows());
    if (a.cols() != n) throw ArgumentError("single_body_population: matrix not square");
    if (static_cast<int>(initial_occupations.size()) != n) {
        throw ArgumentError("single_body_population: occupation vector size mismatch");
    }
    for (int occ : initial_occupations) {
        if (occ != 0 && occ != 1) {
            throw ArgumentError("single_body_population: occupations must be 0 or 1");
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    if (es.info() != Eigen::Success) {
        throw NumericalError("single_body_population: eigensolver failed");
    }
    const Eigen::MatrixXd& p = es.eigenvectors();
    const Eigen::VectorXd& lambda = es.eigenvalues();

    TimeSeries series{grid, std::vector<double>(grid.n_samples(), 0.0), "n_0"};
    for (int i = 0; i < grid.n_samples(); ++i) {
        const double t = grid.time(i);
        double n0 = 0.0;
        for (int j = 0; j < n; ++j) {
            if (!initial_occupations[j]) continue;
            Complex u{0.0, 0.0};
            for (int al = 0; al < n; ++al) {
                u += p(0, al) * p(j, al) * std::exp(-kI * lambda[al] * t);
            }
            n0 += std::norm(u);
        }
        series.values[i] = n0;
    }
    return series;
}

} // namespace bathdiff
