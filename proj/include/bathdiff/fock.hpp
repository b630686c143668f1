#pragma once

#include "bathdiff/errors.hpp"

#include <bit>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

namespace bathdiff {

/// Occupation bitmask over two-level modes. Bit j is the occupation of mode j;
/// mode 0 is the system site, modes 1..N_E are bath modes.
using OccMask = std::uint64_t;

/// Operator algebra of the two-level modes.
enum class Statistics { Fermion, Spin };

[[nodiscard]] constexpr int popcount(OccMask s) noexcept {
    return std::popcount(s);
}

[[nodiscard]] constexpr bool bit_set(OccMask s, int mode) noexcept {
    return (s >> mode) & 1u;
}

/// Occupied modes with index strictly between a and b (order of a, b irrelevant).
[[nodiscard]] int count_between(OccMask s, int a, int b) noexcept;

/// Result of applying a hop O_i† O_j to a basis state.
struct Hop {
    OccMask state;
    int sign; // +1 or -1
};

/// Apply O_i† O_j (create at `i`, annihilate at `j`) to the canonically ordered
/// product state `s`.
///
/// Returns nullopt when bit j is empty (nothing to annihilate) or bit i is
/// already occupied (Pauli blocked). The sign is +1 for spins; for fermions it
/// is (-1)^(occupied modes strictly between i and j), which is the
/// anticommutation parity for kets written as creation operators in
/// descending mode order onto the vacuum.
[[nodiscard]] std::optional<Hop> apply_hop(OccMask s, int i, int j, Statistics stat);

/// Memory budget on sector dimensions. Defaults to 500000 states; the
/// environment variable BATHDIFF_MAX_DIM overrides it.
[[nodiscard]] std::uint64_t max_sector_dim();

/// Binomial coefficient from a precomputed table (n, k <= 64; saturates at
/// UINT64_MAX on overflow, which cannot occur for n <= 64).
[[nodiscard]] std::uint64_t binomial(int n, int k) noexcept;

/// Fixed-particle-number basis over n_modes two-level modes.
///
/// States are all bitmasks with popcount n_particles, ordered by increasing
/// bitmask value. Ranking uses the combinatorial number system (combinadics);
/// a hash-map inverse is also kept and the two are cross-validated in tests.
/// Immutable after construction and safe to share across threads.
class SectorBasis {
public:
    SectorBasis(int n_modes, int n_particles);

    [[nodiscard]] int n_modes() const noexcept { return n_modes_; }
    [[nodiscard]] int n_particles() const noexcept { return n_particles_; }
    [[nodiscard]] std::size_t size() const noexcept { return states_.size(); }

    /// State at position idx (unrank).
    [[nodiscard]] OccMask state(std::size_t idx) const { return states_.at(idx); }

    [[nodiscard]] const std::vector<OccMask>& states() const noexcept { return states_; }

    /// Position of state s (combinadic formula, O(n_modes)).
    [[nodiscard]] std::size_t rank(OccMask s) const;

    /// Position of state s via the stored inverse map.
    [[nodiscard]] std::size_t rank_lookup(OccMask s) const;

private:
    int n_modes_;
    int n_particles_;
    std::vector<OccMask> states_;
    std::unordered_map<OccMask, std::size_t> index_of_;
};

/// All popcount-n_particles bitmasks over n_modes modes, increasing order.
[[nodiscard]] SectorBasis enumerate_basis(int n_modes, int n_particles);

} // namespace bathdiff
