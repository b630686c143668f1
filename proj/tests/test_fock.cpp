#include "bathdiff/fock.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cstdlib>

using namespace bathdiff;

TEST_CASE("enumerate_basis: sizes and ordering") {
    const SectorBasis tiny(2, 1);
    REQUIRE(tiny.size() == 2);
    CHECK(tiny.state(0) == 0b01);
    CHECK(tiny.state(1) == 0b10);

    CHECK(SectorBasis(4, 3).size() == 4);
    CHECK(SectorBasis(17, 8).size() == 24310);
    CHECK(SectorBasis(17, 8).size() == oracles::pascal_binomial(17, 8));

    SUBCASE("strictly increasing bitmask order, constant popcount") {
        const SectorBasis basis(9, 4);
        REQUIRE(basis.size() == oracles::pascal_binomial(9, 4));
        for (std::size_t i = 0; i < basis.size(); ++i) {
            CHECK(popcount(basis.state(i)) == 4);
            if (i) CHECK(basis.state(i) > basis.state(i - 1));
        }
    }
}

TEST_CASE("enumerate_basis: argument and capacity errors") {
    CHECK_THROWS_AS(SectorBasis(4, 5), ArgumentError);
    CHECK_THROWS_AS(SectorBasis(4, -1), ArgumentError);
    CHECK_THROWS_AS(SectorBasis(0, 0), ArgumentError);
    // C(40, 20) is far beyond the default 5e5-state budget.
    CHECK_THROWS_AS(SectorBasis(40, 20), CapacityError);
}

TEST_CASE("rank: combinadics agree with enumeration order and lookup map") {
    const SectorBasis b21(2, 1);
    CHECK(b21.rank(0b01) == 0);
    CHECK(b21.rank(0b10) == 1);
    const SectorBasis b42(4, 2);
    CHECK(b42.rank(0b1100) == 5);

    CHECK_THROWS_AS(static_cast<void>(b42.rank(0b0001)), ArgumentError);
    CHECK_THROWS_AS(static_cast<void>(b42.rank_lookup(0b0111)), ArgumentError);

    SUBCASE("round trip over every sector with n_modes <= 12") {
        for (int n_modes = 1; n_modes <= 12; ++n_modes) {
            for (int n = 0; n <= n_modes; ++n) {
                const SectorBasis basis(n_modes, n);
                for (std::size_t i = 0; i < basis.size(); ++i) {
                    const OccMask s = basis.state(i);
                    CHECK(basis.rank(s) == i);
                    CHECK(basis.rank_lookup(s) == i);
                }
            }
        }
    }
}

TEST_CASE("apply_hop: paper signs on the two-particle sector") {
    // s = c1† c0† |0>, hop 2 <- 0.
    const OccMask s = 0b011;
    const auto fermion = apply_hop(s, 2, 0, Statistics::Fermion);
    REQUIRE(fermion.has_value());
    CHECK(fermion->state == 0b110);
    CHECK(fermion->sign == -1);

    const auto spin = apply_hop(s, 2, 0, Statistics::Spin);
    REQUIRE(spin.has_value());
    CHECK(spin->state == 0b110);
    CHECK(spin->sign == +1);

    CHECK_FALSE(apply_hop(s, 1, 0, Statistics::Fermion).has_value()); // Pauli blocked
    CHECK_FALSE(apply_hop(0b100, 1, 0, Statistics::Fermion).has_value()); // nothing at 0
    CHECK_THROWS_AS(static_cast<void>(apply_hop(s, 1, 1, Statistics::Fermion)), ArgumentError);
}

TEST_CASE("apply_hop: particle number and hermiticity") {
    for (int n_modes = 2; n_modes <= 8; ++n_modes) {
        for (OccMask s = 0; s < (OccMask{1} << n_modes); ++s) {
            for (int i = 0; i < n_modes; ++i) {
                for (int j = 0; j < n_modes; ++j) {
                    if (i == j) continue;
                    const auto hop = apply_hop(s, i, j, Statistics::Fermion);
                    if (!hop) continue;
                    CHECK(popcount(hop->state) == popcount(s));
                    const auto back = apply_hop(hop->state, j, i, Statistics::Fermion);
                    REQUIRE(back.has_value());
                    CHECK(back->state == s);
                    CHECK(back->sign == hop->sign);
                }
            }
        }
    }
}

TEST_CASE("apply_hop: dense Jordan-Wigner / spin ladder oracle, n_modes <= 6") {
    for (int n_modes = 2; n_modes <= 6; ++n_modes) {
        for (Statistics stat : {Statistics::Fermion, Statistics::Spin}) {
            for (int i = 0; i < n_modes; ++i) {
                for (int j = 0; j < n_modes; ++j) {
                    if (i == j) continue;
                    const oracles::Mat dense = oracles::creator(i, n_modes, stat) *
                                               oracles::annihilator(j, n_modes, stat);
                    for (OccMask s = 0; s < (OccMask{1} << n_modes); ++s) {
                        const auto hop = apply_hop(s, i, j, stat);
                        for (OccMask r = 0; r < (OccMask{1} << n_modes); ++r) {
                            const std::complex<double> expect =
                                (hop && hop->state == r) ? std::complex<double>(hop->sign) : 0.0;
                            CAPTURE(n_modes);
                            CAPTURE(i);
                            CAPTURE(j);
                            CAPTURE(s);
                            CAPTURE(r);
                            REQUIRE(std::abs(dense(static_cast<long>(r), static_cast<long>(s)) -
                                             expect) < 1e-14);
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("binomial table matches Pascal oracle") {
    for (int n = 0; n <= 30; ++n) {
        for (int k = 0; k <= n; ++k) {
            CHECK(binomial(n, k) == oracles::pascal_binomial(n, k));
        }
    }
    CHECK(binomial(64, 32) == oracles::pascal_binomial(64, 32));
}
