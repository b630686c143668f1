#include "bathdiff/fock.hpp"

#include <array>
#include <cstdlib>
#include <string>

namespace bathdiff {

namespace {

constexpr int kMaxModes = 64;

std::array<std::array<std::uint64_t, kMaxModes + 1>, kMaxModes + 1> build_binomial_table() {
    std::array<std::array<std::uint64_t, kMaxModes + 1>, kMaxModes + 1> tab{};
    for (int n = 0; n <= kMaxModes; ++n) {
        tab[n][0] = 1;
        for (int k = 1; k <= n; ++k) {
            tab[n][k] = tab[n - 1][k - 1] + (k <= n - 1 ? tab[n - 1][k] : 0);
        }
    }
    return tab;
}

const auto& binomial_table() {
    static const auto tab = build_binomial_table();
    return tab;
}

} // namespace

std::uint64_t binomial(int n, int k) noexcept {
    if (n < 0 || k < 0 || k > n || n > kMaxModes) return 0;
    return binomial_table()[n][k];
}

int count_between(OccMask s, int a, int b) noexcept {
    const int lo = a < b ? a : b;
    const int hi = a < b ? b : a;
    if (hi - lo < 2) return 0;
    const OccMask mask = ((OccMask{1} << (hi - lo - 1)) - 1) << (lo + 1);
    return popcount(s & mask);
}

std::optional<Hop> apply_hop(OccMask s, int i, int j, Statistics stat) {
    if (i == j) {
        throw ArgumentError("apply_hop: i == j; read the occupation directly");
    }
    if (i < 0 || j < 0 || i >= kMaxModes || j >= kMaxModes) {
        throw ArgumentError("apply_hop: mode index out of range");
    }
    if (!bit_set(s, j) || bit_set(s, i)) {
        return std::nullopt; // nothing to annihilate, or Pauli blocked
    }
    const OccMask out = (s & ~(OccMask{1} << j)) | (OccMask{1} << i);
    int sign = 1;
    if (stat == Statistics::Fermion && (count_between(s, i, j) & 1)) {
        sign = -1;
    }
    return Hop{out, sign};
}

std::uint64_t max_sector_dim() {
    static const std::uint64_t budget = [] {
        constexpr std::uint64_t kDefault = 500000;
        if (const char* env = std::getenv("BATHDIFF_MAX_DIM")) {
            char* end = nullptr;
            const unsigned long long v = std::strtoull(env, &end, 10);
            if (end != env && v > 0) return static_cast<std::uint64_t>(v);
        }
        return kDefault;
    }();
    return budget;
}

SectorBasis::SectorBasis(int n_modes, int n_particles)
    : n_modes_(n_modes), n_particles_(n_particles) {
    if (n_modes < 1 || n_modes > kMaxModes) {
        throw ArgumentError("SectorBasis: n_modes must be in [1, 64]");
    }
    if (n_particles < 0 || n_particles > n_modes) {
        throw ArgumentError("SectorBasis: n_particles must be in [0, n_modes]");
    }
    const std::uint64_t dim = binomial(n_modes, n_particles);
    if (dim > max_sector_dim()) {
        throw CapacityError("SectorBasis: dimension " + std::to_string(dim) +
                            " exceeds budget " + std::to_string(max_sector_dim()) +
                            " (set BATHDIFF_MAX_DIM to raise)");
    }

    states_.reserve(dim);
    index_of_.reserve(dim);
    if (n_particles == 0) {
        states_.push_back(0);
        index_of_.emplace(OccMask{0}, 0);
        return;
    }
    // Gosper-style enumeration: next bitmask with the same popcount.
    OccMask s = (OccMask{1} << n_particles) - 1;
    const OccMask limit = n_modes < kMaxModes ? (OccMask{1} << n_modes) : ~OccMask{0};
    while (n_modes == kMaxModes || s < limit) {
        index_of_.emplace(s, states_.size());
        states_.push_back(s);
        if (states_.size() == dim) break;
        const OccMask c = s & (~s + 1);
        const OccMask r = s + c;
        s = (((r ^ s) >> 2) / c) | r;
    }
}

std::size_t SectorBasis::rank(OccMask s) const {
    if (popcount(s) != n_particles_) {
        throw ArgumentError("rank: state has wrong particle number for this sector");
    }
    // Colex rank: sum of C(p_i, i+1) over occupied positions p_0 < p_1 < ...
    std::uint64_t r = 0;
    int k = 1;
    OccMask rest = s;
    while (rest) {
        const int p = std::countr_zero(rest);
        r += binomial(p, k);
        ++k;
        rest &= rest - 1;
    }
    return static_cast<std::size_t>(r);
}

std::size_t SectorBasis::rank_lookup(OccMask s) const {
    const auto it = index_of_.find(s);
    if (it == index_of_.end()) {
        throw ArgumentError("rank_lookup: state not in sector");
    }
    return it->second;
}

SectorBasis enumerate_basis(int n_modes, int n_particles) {
    return SectorBasis(n_modes, n_particles);
}

} // namespace bathdiff
