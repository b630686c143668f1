#include "bathdiff/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bathdiff {

void validate(const ModelSpec& model) {
    if (model.bath_frequencies.empty()) {
        throw ArgumentError("ModelSpec: need at least one bath mode");
    }
    if (model.bath_frequencies.size() != model.couplings.size()) {
        throw ArgumentError("ModelSpec: |bath_frequencies| != |couplings|");
    }
    if (!std::isfinite(model.omega0)) {
        throw ArgumentError("ModelSpec: omega0 not finite");
    }
    for (double w : model.bath_frequencies) {
        if (!std::isfinite(w)) throw ArgumentError("ModelSpec: bath frequency not finite");
    }
    for (double v : model.couplings) {
        if (!std::isfinite(v)) throw ArgumentError("ModelSpec: coupling not finite");
    }
}

void SparseHermitian::apply(const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const {
    y.setZero(dim);
    for (const Entry& e : entries) {
        y[e.row] += e.value * x[e.col];
        if (e.row != e.col) {
            y[e.col] += e.value * x[e.row];
        }
    }
}

Eigen::MatrixXd SparseHermitian::to_dense() const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    for (const Entry& e : entries) {
        m(e.row, e.col) = e.value;
        m(e.col, e.row) = e.value;
    }
    return m;
}

double SparseHermitian::norm_bound() const {
    std::vector<double> row_sum(dim, 0.0);
    for (const Entry& e : entries) {
        row_sum[e.row] += std::abs(e.value);
        if (e.row != e.col) row_sum[e.col] += std::abs(e.value);
    }
    return row_sum.empty() ? 0.0 : *std::max_element(row_sum.begin(), row_sum.end());
}

SparseHermitian build_many_body(const ModelSpec& model, const SectorBasis& basis) {
    validate(model);
    if (basis.n_modes() != model.n_modes()) {
        throw ArgumentError("build_many_body: basis has " + std::to_string(basis.n_modes()) +
                            " modes, model has " + std::to_string(model.n_modes()));
    }

    SparseHermitian h;
    h.dim = static_cast<int>(basis.size());
    h.entries.reserve(basis.size() * (1 + model.n_bath() / 2));

    for (std::size_t c = 0; c < basis.size(); ++c) {
        const OccMask s = basis.state(c);
        double diag = 0.0;
        for (int j = 0; j < basis.n_modes(); ++j) {
            if (bit_set(s, j)) diag += model.mode_frequency(j);
        }
        h.entries.push_back({static_cast<int>(c), static_cast<int>(c), diag});

        // Hops O_k† O_0 out of states with the system site occupied. Each
        // unordered pair appears exactly once; hermiticity supplies O_0† O_k.
        if (!bit_set(s, 0)) continue;
        for (int k = 1; k < basis.n_modes(); ++k) {
            const auto hop = apply_hop(s, k, 0, model.statistics);
            if (!hop) continue;
            const auto r = static_cast<int>(basis.rank(hop->state));
            const double v = hop->sign * model.couplings[k - 1];
            const int row = std::min(r, static_cast<int>(c));
            const int col = std::max(r, static_cast<int>(c));
            h.entries.push_back({row, col, v});
        }
    }

    std::sort(h.entries.begin(), h.entries.end(), [](const auto& a, const auto& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    return h;
}

Eigen::MatrixXd build_single_body(const ModelSpec& model) {
    validate(model);
    const int n = model.n_modes();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    a(0, 0) = model.omega0;
    for (int k = 1; k < n; ++k) {
        a(k, k) = model.bath_frequencies[k - 1];
        a(0, k) = model.couplings[k - 1];
        a(k, 0) = model.couplings[k - 1];
    }
    return a;
}

std::vector<double> uniform_band_frequencies(int n_bath, double omega_bw) {
    if (n_bath < 1) throw ArgumentError("uniform_band_frequencies: n_bath < 1");
    if (!(omega_bw > 0)) throw ArgumentError("uniform_band_frequencies: omega_bw must be positive");
    std::vector<double> w(n_bath);
    if (n_bath == 1) {
        w[0] = 0.0;
        return w;
    }
    for (int k = 0; k < n_bath; ++k) {
        w[k] = -0.5 * omega_bw + k * omega_bw / (n_bath - 1);
    }
    return w;
}

} // namespace bathdiff
