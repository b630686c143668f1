#pragma once

#include "bathdiff/errors.hpp"

#include <vector>

namespace bathdiff {

/// Per-mode bath occupation probabilities f_k for a product bath state
/// rho_B = prod_k [(1-f_k)|0><0| + f_k|1><1|]. Indices are bath-local:
/// k = 0..N_E-1 refers to bath mode k+1 of the full mode numbering.
struct BathOccupation {
    enum class Provenance { Step, FermiDirac };

    std::vector<double> f;
    Provenance provenance = Provenance::Step;

    [[nodiscard]] int n_bath() const noexcept { return static_cast<int>(f.size()); }

    /// Zero-temperature step filling: f_k = 1 on the n_exc lowest-frequency
    /// bath modes, 0 elsewhere. Matches the Fermi-sea initial Fock states
    /// used by the exact propagation.
    static BathOccupation step(const std::vector<double>& bath_frequencies, int n_exc);

    /// Step filling of an explicit set of bath modes (bath-local indices).
    static BathOccupation step_from_modes(int n_bath, const std::vector<int>& occupied);

    /// Thermal occupation f(w) = 1 / (exp(beta (w - mu)) + 1).
    static BathOccupation fermi_dirac(const std::vector<double>& bath_frequencies, double beta,
                                      double mu);
};

} // namespace bathdiff
