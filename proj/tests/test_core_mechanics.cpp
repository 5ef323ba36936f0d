#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rkp/core_mechanics.hpp"

using namespace rkp;
using namespace rkp::mech;

namespace {

constexpr double kPi = std::numbers::pi;

CartesianState random_state(std::mt19937_64& rng) {
    auto u = [&rng] { return 2.0 * ((rng() >> 11) * 0x1.0p-53) - 1.0; };
    Vec2 q{0.0, 0.0};
    while (q.norm() < 0.05) q = {2.0 * u(), 2.0 * u()};
    return CartesianState(q, {1.5 * u(), 1.5 * u()});
}

}  // namespace

TEST_CASE("kepler energy on reference states") {
    CHECK(kepler_energy(CartesianState({1, 0}, {0, 1})) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(kepler_energy(CartesianState({2, 0}, {0, 0})) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(kepler_energy(CartesianState({0.25, 0}, {0, 2})) == doctest::Approx(-2.0).epsilon(1e-15));
}

TEST_CASE("angular momentum on reference states") {
    CHECK(angular_momentum(CartesianState({1, 0}, {0, 1})) == 1.0);
    CHECK(angular_momentum(CartesianState({1, 0}, {1, 0})) == 0.0);
    CHECK(angular_momentum(CartesianState({0.25, 0}, {0, -2})) == -0.5);
}

TEST_CASE("collision states are rejected at construction") {
    CHECK_THROWS_AS(CartesianState({0, 0}, {0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(CartesianState({1e-14, 0}, {0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(PolarState(0.0, 0, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(PolarState(-1.0, 0, 0, 1), std::invalid_argument);
}

TEST_CASE("eccentricity: circular and collision loci") {
    CHECK(eccentricity(-0.5, 1.0) == 0.0);
    CHECK(eccentricity(-0.5, 0.0) == 1.0);
    CHECK(eccentricity(-2.0, 0.5) == 0.0);
    CHECK(eccentricity(-2.0, 0.5 * (1.0 - 1e-8)) > 0.0);
    // tiny negative radicand clamps, larger one rejects
    CHECK(eccentricity(-0.5 * (1.0 + 1e-13), 1.0) == 0.0);
    CHECK_THROWS_AS(eccentricity(-0.51, 1.0), std::invalid_argument);
}

TEST_CASE("eccentricity vanishes exactly on the circular locus") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const double E = -5.0 + 4.9 * ((rng() >> 11) * 0x1.0p-53);
        const double L = std::sqrt(1.0 / (-2.0 * E));
        // the radicand vanishes to rounding; the eccentricity is its sqrt
        CHECK(std::abs(2.0 * E * L * L + 1.0) <= 1e-12);
        CHECK(eccentricity(E, L) <= 1e-6);
    }
}

TEST_CASE("Kepler's third law") {
    CHECK(kepler_period(-0.5) == doctest::Approx(2.0 * kPi).epsilon(1e-15));
    CHECK(kepler_period(-2.0) == doctest::Approx(kPi / 4.0).epsilon(1e-15));
    const double E21 = -0.5 * std::pow(2.0, 2.0 / 3.0);
    CHECK(kepler_period(E21) == doctest::Approx(kPi).epsilon(1e-14));
    CHECK_THROWS_AS(kepler_period(0.0), std::invalid_argument);
    CHECK_THROWS_AS(kepler_period(0.3), std::invalid_argument);
}

TEST_CASE("rotating Hamiltonian H = E + L and its mechanical form") {
    CHECK(rotating_hamiltonian(CartesianState({1, 0}, {0, 1})) ==
          doctest::Approx(0.5).epsilon(1e-15));
    CHECK(rotating_hamiltonian(CartesianState({0.25, 0}, {0, 2})) ==
          doctest::Approx(-1.5).epsilon(1e-15));
    CHECK(rotating_hamiltonian(CartesianState({1, 0}, {0, 0})) ==
          doctest::Approx(-1.0).epsilon(1e-15));

    std::mt19937_64 rng(7);
    for (int i = 0; i < 1000; ++i) {
        const CartesianState s = random_state(rng);
        CHECK(std::abs(rotating_hamiltonian(s) - rotating_hamiltonian_mechanical(s)) <= 1e-12);
    }
}

TEST_CASE("effective potential and its maximum") {
    CHECK(effective_potential(1.0) == -1.5);
    CHECK(effective_potential(2.0) == -2.5);
    CHECK(effective_potential(0.5) == -2.125);
    CHECK_THROWS_AS(effective_potential(0.0), std::invalid_argument);
}

TEST_CASE("Hill region classification") {
    CHECK(hill_region_classify(2.0, 0.2) == HillRegion::Bounded);
    CHECK(hill_region_classify(2.0, 1.0) == HillRegion::Forbidden);
    CHECK(hill_region_classify(2.0, 3.0) == HillRegion::Unbounded);
    CHECK(hill_region_classify(1.0, 1.0) == HillRegion::AllowedEverywhere);
    CHECK(hill_region_classify(1.5, 123.0) == HillRegion::AllowedEverywhere);

    const auto [inner, outer] = hill_region_radii(2.0);
    CHECK(inner < 1.0);
    CHECK(outer > 1.0);
    CHECK(std::abs(effective_potential(inner) + 2.0) <= 1e-11);
    CHECK(std::abs(effective_potential(outer) + 2.0) <= 1e-11);
}

TEST_CASE("Moser regularization energy") {
    CHECK(moser_energy(CartesianState({1, 0}, {0, 1}), 0.5) == doctest::Approx(1.0));
    CHECK(moser_energy(CartesianState({2, 0}, {0, 0}), 0.5) == doctest::Approx(1.0));
    CHECK_THROWS_AS(moser_energy(CartesianState({1, 0}, {0, 1}), 0.0), std::invalid_argument);

    // scaling identity K_k(q/sqrt(2k), sqrt(2k) p) = sqrt(2k) K_{1/2}(q, p)
    const CartesianState s({1, 0}, {0, 1});
    const double k = 2.0, root = std::sqrt(2.0 * k);
    CHECK(moser_energy(CartesianState(s.q * (1.0 / root), s.p * root), k) ==
          doctest::Approx(root * moser_energy(s, 0.5)).epsilon(1e-15));

    std::mt19937_64 rng(23);
    auto u = [&rng] { return (rng() >> 11) * 0x1.0p-53; };
    for (int i = 0; i < 200; ++i) {
        const CartesianState t = random_state(rng);
        const double kk = 0.1 + 4.0 * u();
        const double rr = std::sqrt(2.0 * kk);
        const double lhs = moser_energy(CartesianState(t.q * (1.0 / rr), t.p * rr), kk);
        const double rhs = rr * moser_energy(t, 0.5);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("polar transform on reference states") {
    const PolarState p = to_polar(CartesianState({1, 0}, {0, 1}));
    CHECK(p.x == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p.y == doctest::Approx(0.0));
    CHECK(p.r == doctest::Approx(0.0));
    CHECK(p.t == doctest::Approx(1.0).epsilon(1e-15));

    const CartesianState s = from_polar(PolarState(1.0, kPi / 2.0, 0.0, 1.0));
    CHECK(s.q.x == doctest::Approx(0.0));
    CHECK(s.q.y == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s.p.x == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(s.p.y == doctest::Approx(0.0));
}

TEST_CASE("polar round trip preserves E, L, H") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 500; ++i) {
        const CartesianState s = random_state(rng);
        const PolarState p = to_polar(s);
        const CartesianState back = from_polar(p);
        CHECK(std::abs(back.q.x - s.q.x) <= 1e-12);
        CHECK(std::abs(back.q.y - s.q.y) <= 1e-12);
        CHECK(std::abs(back.p.x - s.p.x) <= 1e-12);
        CHECK(std::abs(back.p.y - s.p.y) <= 1e-12);
        CHECK(p.t == doctest::Approx(angular_momentum(s)).epsilon(1e-14));
        CHECK(std::abs(kepler_energy_polar(p) - kepler_energy(s)) <= 1e-12);
        CHECK(std::abs(rotating_hamiltonian_polar(p, 1.0) - rotating_hamiltonian(s)) <= 1e-12);
    }
}

TEST_CASE("polar Hamiltonian vector field") {
    const Vec4 v = hamiltonian_vector_field_polar(PolarState(0.25, 0.0, 0.0, 0.5), 1.0);
    CHECK(v[0] == doctest::Approx(0.0));
    CHECK(v[1] == 0.0);
    CHECK(v[2] == doctest::Approx(0.0));
    CHECK(v[3] == doctest::Approx(9.0).epsilon(1e-15));

    // frozen direct orbit at the critical radius: the frame keeps pace
    const Vec4 w = hamiltonian_vector_field_polar(PolarState(1.0, 0.0, 0.0, -1.0), 1.0);
    CHECK(w[3] == doctest::Approx(0.0));

    std::mt19937_64 rng(3);
    auto u = [&rng] { return (rng() >> 11) * 0x1.0p-53; };
    for (int i = 0; i < 200; ++i) {
        const PolarState s(0.1 + 3.0 * u(), 6.0 * u(), 2.0 * u() - 1.0, 2.0 * u() - 1.0);
        CHECK(hamiltonian_vector_field_polar(s, 1.0)[1] == 0.0);  // dL/ds = 0 exactly
        CHECK(hamiltonian_vector_field_polar(s, 0.0)[1] == 0.0);
    }
}

TEST_CASE("inertial case a = 0: polar field matches Cartesian Kepler flow direction") {
    // On a circular inertial orbit ydot = t/x^2 (no frame correction).
    const Vec4 v = hamiltonian_vector_field_polar(PolarState(1.0, 0.0, 0.0, 1.0), 0.0);
    CHECK(v[3] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("E, L, H are conserved along an integrated trajectory") {
    const PolarState start(0.3, 0.1, 0.02, 0.52);
    const double E0 = kepler_energy_polar(start);
    const double H0 = rotating_hamiltonian_polar(start, 1.0);
    const PolarState end = integrate_polar(start, 1.0, 2.0, 40'000);
    CHECK(std::abs(kepler_energy_polar(end) - E0) <= 1e-10);
    CHECK(std::abs(end.t - start.t) <= 1e-14);
    CHECK(std::abs(rotating_hamiltonian_polar(end, 1.0) - H0) <= 1e-10);
}

TEST_CASE("EnergyTriple enforces c = -E - L") {
    const EnergyTriple t = EnergyTriple::of(CartesianState({0.25, 0}, {0, 2}));
    CHECK(t.kepler_energy == doctest::Approx(-2.0).epsilon(1e-15));
    CHECK(t.angular_momentum == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(t.jacobi_param == -t.kepler_energy - t.angular_momentum);
}
