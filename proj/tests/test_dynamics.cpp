#include "bathdiff/dynamics.hpp"

#include <doctest.h>

#include <cmath>
#include <algorithm>
#include <complex>
#include <numeric>
#include <random>

using namespace bathdiff;

namespace {

ModelSpec random_model(std::mt19937& rng, int n_bath) {
    std::uniform_real_distribution<double> freq(-2.0, 2.0);
    std::uniform_real_distribution<double> coup(0.1, 1.0);
    ModelSpec m;
    m.omega0 = freq(rng);
    for (int k = 0; k < n_bath; ++k) {
        m.bath_frequencies.push_back(freq(rng));
        m.couplings.push_back(coup(rng));
    }
    m.statistics = Statistics::Fermion;
    return m;
}

std::vector<int> random_fock(std::mt19937& rng, int n_modes, int n_particles) {
    std::vector<int> all(n_modes);
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(n_particles);
    std::sort(all.begin(), all.end());
    return all;
}

} // namespace

TEST_CASE("initial_state: unit amplitude on the requested ket") {
    const SectorBasis b42(4, 2);
    const Eigen::VectorXcd bath_pair = initial_state(b42, {1, 2});
    // {1, 2} is the paper's ket |3); canonical position from rank().
    for (long i = 0; i < bath_pair.size(); ++i) {
        const double expected = static_cast<std::size_t>(i) == b42.rank(0b0110) ? 1.0 : 0.0;
        CHECK(std::abs(bath_pair[i] - expected) == 0.0);
    }

    const Eigen::VectorXcd system_pair = initial_state(b42, {0, 1});
    CHECK(std::abs(system_pair[0] - 1.0) == 0.0);
    CHECK(system_pair.tail(5).norm() == 0.0);

    const SectorBasis b21(2, 1);
    const Eigen::VectorXcd sys = initial_state(b21, {0});
    CHECK(std::abs(sys[0] - 1.0) == 0.0);

    CHECK_THROWS_AS(static_cast<void>(initial_state(b42, {1})), ArgumentError);
    CHECK_THROWS_AS(static_cast<void>(initial_state(b42, {1, 1})), ArgumentError);
    CHECK_THROWS_AS(static_cast<void>(initial_state(b42, {1, 7})), ArgumentError);
}

TEST_CASE("system_population: weight on system-occupied kets") {
    const SectorBasis b42(4, 2);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(6);
    psi[b42.rank(0b0011)] = 1.0;
    CHECK(system_population(psi, b42) == doctest::Approx(1.0));

    psi.setZero();
    psi[b42.rank(0b0110)] = 1.0;
    CHECK(system_population(psi, b42) == doctest::Approx(0.0));

    psi.setZero();
    psi[b42.rank(0b0011)] = 1.0 / std::sqrt(2.0);
    psi[b42.rank(0b0110)] = 1.0 / std::sqrt(2.0);
    CHECK(system_population(psi, b42) == doctest::Approx(0.5));
}

TEST_CASE("evolve: zero coupling freezes populations") {
    ModelSpec m;
    m.omega0 = 0.9;
    m.bath_frequencies = {-1.0, 0.3, 1.4};
    m.couplings = {0.0, 0.0, 0.0};
    const SectorBasis basis(4, 2);
    const SparseHermitian h = build_many_body(m, basis);
    const Eigen::VectorXcd psi0 = initial_state(basis, {0, 2});
    const TimeGrid grid{8.0, 200};

    for (PropagationMethod method : {PropagationMethod::DenseEig, PropagationMethod::Krylov}) {
        const TimeSeries n = population_series(h, basis, psi0, grid, method);
        for (double v : n.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("evolve: detuned Rabi oscillation against the analytic two-level formula") {
    const double v = 0.8;
    const double delta = 0.3 - (-0.5);
    ModelSpec m;
    m.omega0 = 0.3;
    m.bath_frequencies = {-0.5};
    m.couplings = {v};

    const SectorBasis basis(2, 1);
    const SparseHermitian h = build_many_body(m, basis);
    const Eigen::VectorXcd psi0 = initial_state(basis, {1}); // bath occupied, system empty
    const TimeGrid grid{12.0, 600};

    const double rabi2 = v * v + 0.25 * delta * delta;
    const auto analytic = [&](double t) {
        return v * v / rabi2 * std::pow(std::sin(std::sqrt(rabi2) * t), 2);
    };

    for (PropagationMethod method : {PropagationMethod::DenseEig, PropagationMethod::Krylov}) {
        const TimeSeries n = population_series(h, basis, psi0, grid, method);
        for (int i = 0; i < grid.n_samples(); ++i) {
            CHECK(n.values[i] == doctest::Approx(analytic(grid.time(i))).epsilon(1e-9));
        }
    }

    const TimeSeries one_body = single_body_population(build_single_body(m), {0, 1}, grid);
    for (int i = 0; i < grid.n_samples(); ++i) {
        CHECK(one_body.values[i] == doctest::Approx(analytic(grid.time(i))).epsilon(1e-9));
    }
}

TEST_CASE("evolve: DenseEig and Krylov agree; norm and energy conserved") {
    std::mt19937 rng(101);
    ModelSpec m = random_model(rng, 5);
    const SectorBasis basis(6, 3);
    const SparseHermitian h = build_many_body(m, basis);
    const Eigen::VectorXcd psi0 = initial_state(basis, random_fock(rng, 6, 3));
    const TimeGrid grid{10.0, 400};

    std::vector<Eigen::VectorXcd> dense = evolve_states(h, psi0, grid, PropagationMethod::DenseEig);
    std::vector<Eigen::VectorXcd> krylov = evolve_states(h, psi0, grid, PropagationMethod::Krylov);
    REQUIRE(dense.size() == krylov.size());

    Eigen::VectorXcd hpsi(h.dim);
    h.apply(psi0, hpsi);
    const double e0 = std::real(psi0.dot(hpsi));

    for (std::size_t i = 0; i < dense.size(); ++i) {
        CHECK((dense[i] - krylov[i]).norm() < 1e-8);
        for (const auto& psi : {dense[i], krylov[i]}) {
            CHECK(std::abs(psi.norm() - 1.0) < 1e-9);
            h.apply(psi, hpsi);
            CHECK(std::abs(std::real(psi.dot(hpsi)) - e0) < 1e-8);
        }
    }
}

TEST_CASE("evolve: fermionic many-body population equals the single-body path") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 6; ++trial) {
        const int n_bath = 3 + static_cast<int>(rng() % 6); // up to 8
        ModelSpec m = random_model(rng, n_bath);
        const int n_particles = 1 + static_cast<int>(rng() % n_bath);
        const std::vector<int> occupied = random_fock(rng, n_bath + 1, n_particles);

        const SectorBasis basis(n_bath + 1, n_particles);
        const SparseHermitian h = build_many_body(m, basis);
        const TimeGrid grid{10.0, 250};
        const TimeSeries many =
            population_series(h, basis, initial_state(basis, occupied), grid,
                              choose_method(basis.size()));

        std::vector<int> occ01(n_bath + 1, 0);
        for (int mode : occupied) occ01[mode] = 1;
        const TimeSeries one = single_body_population(build_single_body(m), occ01, grid);

        for (int i = 0; i < grid.n_samples(); ++i) {
            CHECK(std::abs(many.values[i] - one.values[i]) < 1e-8);
        }
    }
}

TEST_CASE("evolve: fermion and spin trajectories identical when no pair can swap") {
    std::mt19937 rng(55);
    for (int n_bath : {2, 4, 5}) {
        for (int n_exc : {1, n_bath}) {
            ModelSpec m = random_model(rng, n_bath);
            const SectorBasis basis(n_bath + 1, n_exc);
            std::vector<int> occupied;
            for (int k = 1; k <= n_exc; ++k) occupied.push_back(k);
            const Eigen::VectorXcd psi0 = initial_state(basis, occupied);
            const TimeGrid grid{10.0, 200};

            m.statistics = Statistics::Fermion;
            const TimeSeries nf = population_series(build_many_body(m, basis), basis, psi0, grid,
                                                    PropagationMethod::DenseEig);
            m.statistics = Statistics::Spin;
            const TimeSeries ns = population_series(build_many_body(m, basis), basis, psi0, grid,
                                                    PropagationMethod::DenseEig);
            for (int i = 0; i < grid.n_samples(); ++i) {
                CHECK(std::abs(nf.values[i] - ns.values[i]) < 1e-12);
            }
        }
    }
}

TEST_CASE("single_body_population: trivial limits") {
    ModelSpec m;
    m.omega0 = 0.4;
    m.bath_frequencies = {-0.7, 1.1};
    m.couplings = {0.6, 0.9};
    const TimeGrid grid{5.0, 100};

    const TimeSeries empty = single_body_population(build_single_body(m), {0, 0, 0}, grid);
    for (double v : empty.values) CHECK(v == 0.0);

    ModelSpec uncoupled = m;
    uncoupled.couplings = {0.0, 0.0};
    const TimeSeries frozen =
        single_body_population(build_single_body(uncoupled), {1, 0, 0}, grid);
    for (double v : frozen.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("evolve: argument checks") {
    ModelSpec m;
    m.omega0 = 0.0;
    m.bath_frequencies = {1.0};
    m.couplings = {0.5};
    const SectorBasis basis(2, 1);
    const SparseHermitian h = build_many_body(m, basis);
    const Eigen::VectorXcd psi0 = initial_state(basis, {0});

    CHECK_THROWS_AS(evolve(h, Eigen::VectorXcd::Zero(5), TimeGrid{1.0, 10},
                           PropagationMethod::DenseEig, [](int, double, const Eigen::VectorXcd&) {}),
                    ArgumentError);
    CHECK_THROWS_AS(evolve(h, psi0, TimeGrid{-1.0, 10}, PropagationMethod::DenseEig,
                           [](int, double, const Eigen::VectorXcd&) {}),
                    ArgumentError);
}
