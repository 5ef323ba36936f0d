#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rkp/maslov.hpp"

using namespace rkp;
using namespace rkp::maslov;

namespace {

constexpr double kPi = std::numbers::pi;

Mat2 rotation_generator(double omega) { return Mat2::of(0.0, -omega, omega, 0.0); }

// Generator of the contact-plane path at a circular orbit with momentum t0.
Mat2 orbit_generator(double t0) {
    const double t2 = t0 * t0;
    return Mat2::of(0.0, -1.0 / (t2 * t2), 1.0 / t2, 0.0);
}

bool contains_time(const std::vector<double>& times, double t, double tol = 1e-10) {
    for (double s : times)
        if (std::abs(s - t) <= tol) return true;
    return false;
}

}  // namespace

TEST_CASE("HalfInteger arithmetic stays exact") {
    CHECK(HalfInteger::from_halves(3).str() == "3/2");
    CHECK(HalfInteger::from_halves(4).str() == "2");
    CHECK(HalfInteger::from_integer(5).as_integer() == 5);
    CHECK((HalfInteger::from_halves(1) + HalfInteger::from_halves(3)).as_integer() == 2);
    CHECK_THROWS_AS(HalfInteger::from_halves(3).as_integer(), std::logic_error);
}

TEST_CASE("crossings of the rotation loop") {
    const auto full = SymplecticPath::closed_form(rotation_generator(1.0), 2.0 * kPi);
    const auto times = find_crossing_times(full);
    REQUIRE(times.size() == 2);
    CHECK(contains_time(times, 0.0));
    CHECK(contains_time(times, 2.0 * kPi));
    CHECK(crossing_signature(full, 0.0).kernel_dim == 2);
    CHECK(crossing_signature(full, 2.0 * kPi).kernel_dim == 2);

    const auto half = SymplecticPath::closed_form(rotation_generator(1.0), kPi);
    const auto half_times = find_crossing_times(half);
    REQUIRE(half_times.size() == 1);
    CHECK(contains_time(half_times, 0.0));
}

TEST_CASE("crossings of the circular-orbit generator land on t0^3 * 2pi * Z") {
    const double t0 = 0.5;  // crossing spacing pi/4
    const auto path = SymplecticPath::closed_form(orbit_generator(t0), 3.0 * kPi / 8.0);
    const auto times = find_crossing_times(path);
    REQUIRE(times.size() == 2);
    CHECK(contains_time(times, 0.0));
    CHECK(contains_time(times, kPi / 4.0));
}

TEST_CASE("crossing form values at the initial crossing") {
    const double t0 = 0.5;
    const auto path = SymplecticPath::closed_form(orbit_generator(t0), 1.0);
    CHECK(crossing_form(path, 0.0, {1, 0}) == doctest::Approx(4.0).epsilon(1e-12));   // 1/t0^2
    CHECK(crossing_form(path, 0.0, {0, 1}) == doctest::Approx(16.0).epsilon(1e-12));  // 1/t0^4

    const auto clockwise = SymplecticPath::closed_form(Mat2::of(0, 1, -1, 0), 1.0);
    CHECK(crossing_form(clockwise, 0.0, {1, 0}) == doctest::Approx(-1.0).epsilon(1e-12));

    // vectors outside the kernel are rejected (psi(pi/2) = -J has no eigenvalue 1)
    const auto quarter = SymplecticPath::closed_form(rotation_generator(1.0), 2.0 * kPi);
    CHECK_THROWS_AS(crossing_form(quarter, kPi / 2.0, {1, 0}), std::invalid_argument);
}

TEST_CASE("crossing signatures: definite, negated, and degenerate shear") {
    const auto orbit = SymplecticPath::closed_form(orbit_generator(0.5), 3.0 * kPi / 8.0);
    for (double s : find_crossing_times(orbit)) {
        const auto sig = crossing_signature(orbit, s);
        CHECK(sig.signature == 2);
        CHECK_FALSE(sig.degenerate);
    }

    const auto clockwise = SymplecticPath::closed_form(Mat2::of(0, 1, -1, 0), kPi / 2.0);
    CHECK(crossing_signature(clockwise, 0.0).signature == -2);

    // Shear: kernel is the whole plane but Q(v) = -v2^2 has rank 1, so the
    // crossing is degenerate and the nonzero eigenvalue is negative.
    const auto shear = SymplecticPath::closed_form(Mat2::of(0, 1, 0, 0), 1.0);
    const auto sig = crossing_signature(shear, 0.0);
    CHECK(sig.kernel_dim == 2);
    CHECK(sig.signature == -1);
    CHECK(sig.degenerate);
}

TEST_CASE("Robbin-Salamon index of rotation paths") {
    const double T = 2.0 * kPi;
    CHECK(maslov_index(SymplecticPath::closed_form(rotation_generator(1.0), T)).as_integer() == 2);
    CHECK(maslov_index(SymplecticPath::closed_form(rotation_generator(1.0), 0.9 * T)).as_integer() ==
          1);
    CHECK(maslov_index(SymplecticPath::closed_form(rotation_generator(1.0), 2.5 * T)).as_integer() ==
          5);
}

TEST_CASE("catenation: the index is additive over a split at a non-crossing") {
    std::mt19937_64 rng(41);
    auto u = [&rng] { return (rng() >> 11) * 0x1.0p-53; };
    for (int trial = 0; trial < 100; ++trial) {
        // rotation-type generator P (omega J) P^-1, P a random unimodular map
        const double omega = 0.5 + 2.5 * u();
        Mat2 p = Mat2::of(1.0 + u(), u() - 0.5, u() - 0.5, 1.0);
        p.m[1][1] = (1.0 + p.m[0][1] * p.m[1][0]) / p.m[0][0];  // det P = 1
        const Mat2 p_inv = Mat2::of(p.m[1][1], -p.m[0][1], -p.m[1][0], p.m[0][0]);
        const Mat2 gen = p * rotation_generator(omega) * p_inv;

        const double T = (0.3 + 2.2 * u()) * 2.0 * kPi / omega;
        const auto path = SymplecticPath::closed_form(gen, T);
        // split away from the crossing lattice 2pi/omega * Z
        double split;
        do {
            split = T * (0.2 + 0.6 * u());
        } while (std::abs(std::remainder(split, 2.0 * kPi / omega)) < 0.05 / omega);
        const auto left = path.subpath(0.0, split);
        const auto right = path.subpath(split, T);
        CHECK(maslov_index(path).twice == maslov_index(left).twice + maslov_index(right).twice);
    }
}

TEST_CASE("index is stable under small generator scalings") {
    // endpoints held non-crossing: T = 0.9 of a full period
    const double T = 0.9 * 2.0 * kPi;
    const int base = maslov_index(SymplecticPath::closed_form(rotation_generator(1.0), T)).as_integer();
    for (double delta : {-1e-6, -1e-9, 1e-9, 1e-6}) {
        const auto scaled = SymplecticPath::closed_form(rotation_generator(1.0 + delta), T);
        CHECK(maslov_index(scaled).as_integer() == base);
        for (double s : find_crossing_times(scaled))
            CHECK(crossing_signature(scaled, s).signature == 2);
    }
}

TEST_CASE("evaluated matrices stay symplectic") {
    const auto path = SymplecticPath::closed_form(orbit_generator(0.7), 5.0);
    for (int i = 0; i <= 200; ++i) {
        const double s = 5.0 * i / 200.0;
        CHECK(std::abs(path.value(s).det() - 1.0) <= 5e-10);
    }
    const auto bumped = path.perturbed(1e-8);
    for (int i = 0; i <= 50; ++i) {
        const double s = 5.0 * i / 50.0;
        CHECK(std::abs(bumped.value(s).det() - 1.0) <= 5e-10);
        CHECK(max_abs_diff(bumped.value(s), path.value(s)) <= 2e-8);
    }
    // the perturbation fixes the endpoints
    CHECK(max_abs_diff(bumped.value(0.0), path.value(0.0)) == 0.0);
    CHECK(max_abs_diff(bumped.value(5.0), path.value(5.0)) <= 1e-15);
}

TEST_CASE("transversal crossing pairs: resolved by refinement, or UNRESOLVED") {
    // tr(exp(sJ) M0) = (d + 1/d) cos(s - s0): a dip below 2 of width ~2*delta
    // around s0 produces two transversal crossings delta apart.
    auto dip_path = [](double delta, double s0) {
        const double target = 2.0 / std::cos(delta);  // d + 1/d
        const double d = 0.5 * (target + std::sqrt(target * target - 4.0));
        const Mat2 m0 = mat2_rotation(-s0) * Mat2::of(d, 0.0, 0.0, 1.0 / d);
        return SymplecticPath::closed_form_from(rotation_generator(1.0), m0, 2.0 * kPi);
    };

    // node 5000 of the default 10^4-point grid; the pair straddles it
    const double s0 = 2.0 * kPi * 5000.0 / 9999.0;

    // 2e-4 apart: one grid refinement separates them
    const auto resolved = find_crossing_times(dip_path(1e-4, s0));
    REQUIRE(resolved.size() == 2);
    CHECK(std::abs(resolved[0] - (s0 - 1e-4)) <= 1e-8);
    CHECK(std::abs(resolved[1] - (s0 + 1e-4)) <= 1e-8);

    // 2e-6 apart: below the resolution even after two refinements
    CHECK_THROWS_AS(find_crossing_times(dip_path(1e-6, s0)), UnresolvedCrossingsError);
}

TEST_CASE("degenerate interior crossings are resolved by the perturbation fallback") {
    // Hyperbolic generator H = diag(1,-1) through an upper shear at s = 1:
    // psi(1) = [[1,1],[0,1]] has kernel e1 and Q(e1) = omega0(e1, H e1) = 0,
    // a degenerate interior crossing. The perturbed index is 0 (the touch
    // either splits into a +1/-1 pair or detaches).
    const Mat2 gen = Mat2::of(1, 0, 0, -1);
    const double e = std::exp(1.0);
    const Mat2 m0 = Mat2::of(1.0 / e, 1.0 / e, 0.0, e);
    const auto path = SymplecticPath::closed_form_from(gen, m0, 2.0);

    const auto crossings = find_crossings(path);
    REQUIRE(crossings.size() == 1);
    CHECK(crossings[0].time == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(crossings[0].kernel_dim == 1);
    CHECK(crossings[0].degenerate);
    CHECK_FALSE(crossings[0].is_endpoint);

    CHECK(maslov_index(path).twice == 0);
}

TEST_CASE("degenerate endpoint crossings cannot be perturbed away") {
    // same construction, but the path ends exactly on the shear
    const Mat2 gen = Mat2::of(1, 0, 0, -1);
    const double e = std::exp(1.0);
    const Mat2 m0 = Mat2::of(1.0 / e, 1.0 / e, 0.0, e);
    const auto path = SymplecticPath::closed_form_from(gen, m0, 1.0);
    CHECK_THROWS_AS(maslov_index(path), DegenerateCrossingError);
}

TEST_CASE("sampled paths: snapping evaluation and finite-difference slopes") {
    const auto closed = SymplecticPath::closed_form(rotation_generator(1.0), 2.0 * kPi);
    std::vector<Mat2> samples;
    const int n = 20'001;
    for (int i = 0; i < n; ++i) samples.push_back(closed.value(2.0 * kPi * i / (n - 1)));
    const auto sampled = SymplecticPath::sampled(std::move(samples), 2.0 * kPi);

    CHECK(max_abs_diff(sampled.value(1.234), closed.value(1.234)) <= 2e-4);  // node snap
    CHECK(max_abs_diff(sampled.derivative(1.234), closed.derivative(1.234)) <= 1e-4);

    const auto times = find_crossing_times(sampled);
    REQUIRE(times.size() == 2);
    CHECK(contains_time(times, 0.0, 1e-3));
    CHECK(contains_time(times, 2.0 * kPi, 1e-3));
    CHECK(maslov_index(sampled).as_integer() == 2);
}
