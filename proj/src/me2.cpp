#include "bathdiff/me2.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace bathdiff {

namespace {

using Complex = std::complex<double>;
constexpr Complex kI{0.0, 1.0};

// O0 = |empty><occupied| in the basis {|empty>, |occupied>}.
const Eigen::Matrix2cd kLower = [] {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 1) = 1.0;
    return m;
}();
const Eigen::Matrix2cd kRaise = kLower.adjoint().eval();

// [O0, O0† rho]
Eigen::Matrix2cd commutator_gain(const Eigen::Matrix2cd& rho) {
    const Eigen::Matrix2cd x = kRaise * rho;
    return kLower * x - x * kLower;
}

// [rho O0†, O0]
Eigen::Matrix2cd commutator_loss(const Eigen::Matrix2cd& rho) {
    const Eigen::Matrix2cd x = rho * kRaise;
    return x * kLower - kLower * x;
}

void check_occ(const ModelSpec& model, const BathOccupation& occ) {
    if (occ.n_bath() != model.n_bath()) {
        throw ArgumentError("bath occupation has " + std::to_string(occ.n_bath()) +
                            " modes, model has " + std::to_string(model.n_bath()));
    }
    for (double fk : occ.f) {
        if (!(fk >= 0.0 && fk <= 1.0)) {
            throw ArgumentError("bath occupation outside [0, 1]");
        }
    }
}

} // namespace

BathOccupation BathOccupation::step(const std::vector<double>& bath_frequencies, int n_exc) {
    const int n = static_cast<int>(bath_frequencies.size());
    if (n_exc < 0 || n_exc > n) {
        throw ArgumentError("BathOccupation::step: n_exc outside [0, N_E]");
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return bath_frequencies[a] < bath_frequencies[b];
    });
    BathOccupation occ;
    occ.f.assign(n, 0.0);
    occ.provenance = Provenance::Step;
    for (int i = 0; i < n_exc; ++i) {
        occ.f[order[i]] = 1.0;
    }
    return occ;
}

BathOccupation BathOccupation::step_from_modes(int n_bath, const std::vector<int>& occupied) {
    BathOccupation occ;
    occ.f.assign(n_bath, 0.0);
    occ.provenance = Provenance::Step;
    for (int k : occupied) {
        if (k < 0 || k >= n_bath) {
            throw ArgumentError("BathOccupation::step_from_modes: index out of range");
        }
        occ.f[k] = 1.0;
    }
    return occ;
}

BathOccupation BathOccupation::fermi_dirac(const std::vector<double>& bath_frequencies,
                                           double beta, double mu) {
    BathOccupation occ;
    occ.f.reserve(bath_frequencies.size());
    occ.provenance = Provenance::FermiDirac;
    for (double w : bath_frequencies) {
        occ.f.push_back(1.0 / (std::exp(beta * (w - mu)) + 1.0));
    }
    return occ;
}

Kernel build_kernel(const ModelSpec& model, const BathOccupation& occ, const TimeGrid& grid) {
    validate(model);
    check_occ(model, occ);

    Kernel kernel{grid, {}, {}};
    kernel.c1.resize(grid.n_samples());
    kernel.c2.resize(grid.n_samples());
    for (int i = 0; i < grid.n_samples(); ++i) {
        const double tau = grid.time(i);
        Complex c1{0.0, 0.0};
        Complex c2{0.0, 0.0};
        for (int k = 0; k < model.n_bath(); ++k) {
            const double v2 = model.couplings[k] * model.couplings[k];
            const Complex phase = std::exp(-kI * (model.omega0 - model.bath_frequencies[k]) * tau);
            c1 += v2 * phase * occ.f[k];
            c2 += v2 * phase * (1.0 - occ.f[k]);
        }
        kernel.c1[i] = c1;
        kernel.c2[i] = c2;
    }
    return kernel;
}

Me2Result solve_me2(const ModelSpec& model, const BathOccupation& occ, const DensityMatrix2& rho0,
                    const TimeGrid& grid, Me2Form form, int substeps) {
    validate(model);
    check_occ(model, occ);
    if (substeps < 1) throw ArgumentError("solve_me2: substeps must be >= 1");
    if (std::abs(rho0.trace() - 1.0) > 1e-8) {
        throw ArgumentError("solve_me2: rho0 trace differs from 1");
    }
    if ((rho0 - rho0.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
        throw ArgumentError("solve_me2: rho0 not Hermitian");
    }

    const TimeGrid fine{grid.t_max, grid.n_steps * substeps};
    const Kernel kernel = build_kernel(model, occ, fine);
    const double dt = fine.dt();
    const int n_fine = fine.n_samples();

    std::vector<Eigen::Matrix2cd> rho(n_fine);
    rho[0] = rho0;

    // Memory integral over the stored history by trapezoid; `current` is the
    // state multiplying the conjugate pair (equals the history entry for the
    // time-convolution form, rho(t_n) for the mixed form).
    const auto rhs = [&](int n, const Eigen::Matrix2cd& current) -> Eigen::Matrix2cd {
        Eigen::Matrix2cd acc = Eigen::Matrix2cd::Zero();
        if (n == 0) return acc;
        for (int m = 0; m <= n; ++m) {
            const double weight = (m == 0 || m == n) ? 0.5 : 1.0;
            const Complex c1 = kernel.c1[n - m];
            const Complex c2 = kernel.c2[n - m];
            const Eigen::Matrix2cd history =
                c1 * commutator_gain(rho[m]) + c2 * commutator_loss(rho[m]);
            Eigen::Matrix2cd conj_pair;
            if (form == Me2Form::TimeNonlocal) {
                conj_pair = history.adjoint();
            } else {
                conj_pair =
                    (c1 * commutator_gain(current) + c2 * commutator_loss(current)).adjoint();
            }
            acc += weight * (history + conj_pair);
        }
        return (-dt) * acc;
    };

    for (int n = 0; n + 1 < n_fine; ++n) {
        const Eigen::Matrix2cd f_n = rhs(n, rho[n]);
        rho[n + 1] = rho[n] + dt * f_n; // predictor
        const Eigen::Matrix2cd f_np1 = rhs(n + 1, rho[n + 1]);
        rho[n + 1] = rho[n] + 0.5 * dt * (f_n + f_np1);
    }

    Me2Result result;
    result.population.grid = grid;
    result.population.label = "n_me2";
    result.population.values.resize(grid.n_samples());
    result.trajectory.resize(grid.n_samples());
    for (int i = 0; i < grid.n_samples(); ++i) {
        const Eigen::Matrix2cd& r = rho[static_cast<std::size_t>(i) * substeps];
        result.trajectory[i] = r;
        result.population.values[i] = std::real(r(1, 1));
        result.max_trace_drift = std::max(result.max_trace_drift, std::abs(r.trace() - 1.0));
        result.max_hermiticity_error = std::max(
            result.max_hermiticity_error, (r - r.adjoint().eval()).cwiseAbs().maxCoeff());
    }
    if (result.max_trace_drift > 1e-6) {
        throw NumericalError("solve_me2: trace drift " + std::to_string(result.max_trace_drift) +
                             " exceeds 1e-6; refine the grid (n_steps or substeps)");
    }
    return result;
}

} // namespace bathdiff
