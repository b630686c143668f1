#pragma once

#include "bathdiff/bath_occupation.hpp"
#include "bathdiff/fock.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>

namespace bathdiff {

/// Four-point bath correlator query
///   Tr_B[ O_{k1}† O_{k2} O_{k3} O_{k4}† rho_B ]
/// with the daggers fixed on positions 1 and 4 as written, over the product
/// bath state described by `occ`. Mode indices are bath-local (< N_E).
struct CorrQuery {
    std::array<int, 4> modes; // k1, k2, k3, k4
    Statistics statistics = Statistics::Fermion;
    BathOccupation occ;
};

/// Exact correlator by pattern analysis. The two distinct-pair contractions
/// evaluate to f_{k1}(1-f_{k3}) (k1=k2, k3=k4) and -/+ f_{k1}(1-f_{k2})
/// (k1=k3, k2=k4; minus for fermions, plus for spins); any mode with
/// unbalanced creation/annihilation gives 0; every remaining pattern is
/// reduced mode by mode with 2x2 ladder algebra, inserting Jordan-Wigner
/// parity factors on lower modes for fermions.
[[nodiscard]] std::complex<double> corr4_closed(const CorrQuery& q);

/// Oracle: builds explicit 2^N_E operator matrices (Jordan-Wigner strings for
/// fermions, bare ladder operators for spins), multiplies them in the written
/// order and traces against the product state. Requires N_E <= 12.
[[nodiscard]] std::complex<double> corr4_bruteforce(const CorrQuery& q);

/// Dense matrix of the lowering operator on two-level mode k over 2^n_modes
/// product states (Jordan-Wigner string over modes below k for fermions).
[[nodiscard]] Eigen::MatrixXcd dense_lowering(int k, int n_modes, Statistics stat);

} // namespace bathdiff
