#include "bathdiff/corr4.hpp"

#include <string>

namespace bathdiff {

namespace {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;

const Mat2 kLower = [] {
    Mat2 m = Mat2::Zero();
    m(0, 1) = 1.0; // sigma^-: |1> -> |0>
    return m;
}();
const Mat2 kRaise = kLower.adjoint().eval();
const Mat2 kParity = [] {
    Mat2 m = Mat2::Zero();
    m(0, 0) = 1.0;
    m(1, 1) = -1.0; // 1 - 2n
    return m;
}();

/// Daggers sit on positions 0 and 3 of the written operator string.
constexpr bool is_creation(int position) {
    return position == 0 || position == 3;
}

void check_query(const CorrQuery& q) {
    const int n = q.occ.n_bath();
    if (n < 1) throw ArgumentError("corr4: empty bath");
    for (int k : q.modes) {
        if (k < 0 || k >= n) {
            throw ArgumentError("corr4: mode index " + std::to_string(k) +
                                " outside bath of size " + std::to_string(n));
        }
    }
    for (double f : q.occ.f) {
        if (!(f >= 0.0 && f <= 1.0)) throw ArgumentError("corr4: occupation outside [0, 1]");
    }
}

/// Exact per-mode reduction: commute the product into mode-local ordered
/// factors (spin operators on distinct modes commute after the Jordan-Wigner
/// mapping) and trace each 2x2 factor against its mode's mixture.
Complex reduce_per_mode(const CorrQuery& q) {
    Complex total{1.0, 0.0};
    for (int m = 0; m < q.occ.n_bath(); ++m) {
        Mat2 prod = Mat2::Identity();
        bool touched = false;
        for (int p = 0; p < 4; ++p) {
            const int k = q.modes[p];
            if (q.statistics == Statistics::Fermion && m < k) {
                prod *= kParity;
                touched = true;
            } else if (m == k) {
                prod *= is_creation(p) ? kRaise : kLower;
                touched = true;
            }
        }
        if (!touched) continue;
        const double fm = q.occ.f[m];
        total *= prod(0, 0) * (1.0 - fm) + prod(1, 1) * fm;
        if (total == Complex{0.0, 0.0}) break;
    }
    return total;
}

} // namespace

std::complex<double> corr4_closed(const CorrQuery& q) {
    check_query(q);
    const auto [k1, k2, k3, k4] = q.modes;
    const auto& f = q.occ.f;

    // A mode with unequal creation/annihilation counts kills the trace.
    for (int m = 0; m < q.occ.n_bath(); ++m) {
        int balance = 0;
        for (int p = 0; p < 4; ++p) {
            if (q.modes[p] == m) balance += is_creation(p) ? 1 : -1;
        }
        if (balance != 0) return {0.0, 0.0};
    }

    if (k1 == k2 && k3 == k4 && k1 != k3) {
        return {f[k1] * (1.0 - f[k3]), 0.0};
    }
    if (k1 == k3 && k2 == k4 && k1 != k2) {
        const double sign = q.statistics == Statistics::Fermion ? -1.0 : 1.0;
        return {sign * f[k1] * (1.0 - f[k2]), 0.0};
    }
    // Remaining balanced patterns (the equal-mode case): exact reduction.
    return reduce_per_mode(q);
}

Eigen::MatrixXcd dense_lowering(int k, int n_bath, Statistics stat) {
    if (n_bath < 1 || n_bath > 12) {
        throw CapacityError("dense_lowering: n_bath must be in [1, 12]");
    }
    if (k < 0 || k >= n_bath) throw ArgumentError("dense_lowering: mode out of range");
    const std::size_t dim = std::size_t{1} << n_bath;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<long>(dim), static_cast<long>(dim));
    const OccMask bit = OccMask{1} << k;
    const OccMask below = bit - 1;
    for (OccMask s = 0; s < dim; ++s) {
        if (!(s & bit)) continue;
        double sign = 1.0;
        if (stat == Statistics::Fermion && (popcount(s & below) & 1)) sign = -1.0;
        m(static_cast<long>(s & ~bit), static_cast<long>(s)) = sign;
    }
    return m;
}

std::complex<double> corr4_bruteforce(const CorrQuery& q) {
    check_query(q);
    const int n = q.occ.n_bath();
    if (n > 12) {
        throw CapacityError("corr4_bruteforce: N_E = " + std::to_string(n) +
                            " exceeds the dense budget of 12 modes");
    }

    Eigen::MatrixXcd prod;
    for (int p = 0; p < 4; ++p) {
        Eigen::MatrixXcd op = dense_lowering(q.modes[p], n, q.statistics);
        if (is_creation(p)) op = op.adjoint().eval();
        prod = p == 0 ? std::move(op) : Eigen::MatrixXcd(prod * op);
    }

    const std::size_t dim = std::size_t{1} << n;
    Complex trace{0.0, 0.0};
    for (OccMask s = 0; s < dim; ++s) {
        double weight = 1.0;
        for (int k = 0; k < n; ++k) {
            weight *= bit_set(s, k) ? q.occ.f[k] : 1.0 - q.occ.f[k];
        }
        trace += prod(static_cast<long>(s), static_cast<long>(s)) * weight;
    }
    return trace;
}

} // namespace bathdiff
