#include "rkp/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

#include "rkp/core_mechanics.hpp"
#include "rkp/levi_civita.hpp"
#include "rkp/linearized_flow.hpp"
#include "rkp/maslov.hpp"
#include "rkp/orbit_catalog.hpp"

namespace rkp::acceptance {

namespace {

using catalog::CzIndex;
using catalog::OrbitSign;
using Clock = std::chrono::steady_clock;

double elapsed_seconds(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

CriterionResult witness_reproduction() {
    CriterionResult r{1, "witness-reproduction", true, "", 0.0};
    const double sqrt5 = std::sqrt(5.0);
    const double expected = 1.5 * (2.2 - sqrt5);
    lc::convexity_witness();  // warm up
    const auto t0 = Clock::now();
    const lc::Witness w = lc::convexity_witness();
    r.seconds = elapsed_seconds(t0);
    const double a = (1.0 + sqrt5) / 4.0;
    const double u2hat = 9.0 * sqrt5 / 10.0 - 1.5;
    bool ok = std::abs(w.hessian_value - expected) <= 1e-12;
    ok = ok && w.point.u.x == 0.0 && std::abs(w.point.u.y + a) <= 1e-15;
    ok = ok && std::abs(w.point.v.x - 0.5) <= 1e-15 && w.point.v.y == 0.0;
    ok = ok && std::abs(w.direction[1] - u2hat) <= 1e-15 && w.direction[2] == 1.0;
    ok = ok && r.seconds < 1e-3;
    r.passed = ok;
    r.detail = "value " + num(w.hessian_value) + " vs " + num(expected);
    return r;
}

CriterionResult hekuba_birth_energy() {
    CriterionResult r{2, "hekuba-birth-energy", true, "", 0.0};
    const auto t0 = Clock::now();
    const double c_minus = catalog::torus_family(2, 1).c_minus;
    const double closed = 2.0 * std::pow(2.0, -1.0 / 3.0);
    r.passed = std::abs(c_minus - closed) <= 1e-12 && std::abs(c_minus - 1.59) <= 0.005;
    r.detail = "c-(2,1) = " + num(c_minus);
    r.seconds = elapsed_seconds(t0);
    return r;
}

CriterionResult closed_form_vs_oracle_grid() {
    CriterionResult r{3, "closed-form-vs-oracle-grid", true, "", 0.0};
    const auto t0 = Clock::now();
    int checked = 0, failures = 0;
    for (int j = 0; j < 13 && checked < 200; ++j) {
        const double E = -5.0 + 4.45 * (j + 1.0 / std::numbers::pi) / 13.0;
        for (OrbitSign sign : {OrbitSign::Retrograde, OrbitSign::Direct}) {
            for (int N = 1; N <= 8 && checked < 200; ++N) {
                const CzIndex closed = catalog::circular_cz_index(E, sign, N);
                const CzIndex oracle = catalog::cz_index_oracle(E, sign, N);
                ++checked;
                if (closed.resonant() || oracle.resonant() ||
                    *closed.value != *oracle.value)
                    ++failures;
            }
        }
    }
    r.seconds = elapsed_seconds(t0);
    r.passed = checked == 200 && failures == 0 && r.seconds < 30.0;
    r.detail = std::to_string(checked) + " tuples, " + std::to_string(failures) +
               " failures, " + num(r.seconds) + " s";
    return r;
}

bool index_is(const CzIndex& idx, int expected) {
    return !idx.resonant() && *idx.value == expected;
}

CriterionResult index_landmarks() {
    CriterionResult r{4, "index-landmarks", true, "", 0.0};
    const auto t0 = Clock::now();
    const bool ok = index_is(catalog::circular_cz_index(-2.0, OrbitSign::Retrograde, 1), 1) &&
                    index_is(catalog::circular_cz_index(-2.0, OrbitSign::Retrograde, 2), 3) &&
                    index_is(catalog::circular_cz_index(-2.0, OrbitSign::Direct, 1), 3) &&
                    index_is(catalog::circular_cz_index(-0.7, OrbitSign::Direct, 1), 5);
    r.passed = ok;
    r.detail = "retro x1 -> 1, retro x2 -> 3, direct x1 -> 3, direct(E=-0.7) -> 5";
    r.seconds = elapsed_seconds(t0);
    return r;
}

CriterionResult torus_indices() {
    CriterionResult r{5, "torus-indices", true, "", 0.0};
    const auto t0 = Clock::now();
    bool ok = true;
    for (int l = 1; l < 12 && ok; ++l)
        for (int k = l + 1; k <= 12 && ok; ++k) {
            const auto fam = catalog::torus_family(k, l);
            ok = fam.cz_index == 2 * k - 1 && catalog::index_bookkeeping(k, l) == 2 * k - 1;
        }
    ok = ok && catalog::torus_family(2, 1).cz_index == 3 &&
         catalog::torus_family(3, 2).cz_index == 5 && catalog::torus_family(4, 3).cz_index == 7 &&
         catalog::torus_family(3, 1).cz_index == 5 && catalog::torus_family(7, 4).cz_index == 13;
    r.passed = ok;
    r.detail = "2k-1 and bookkeeping agree for all k <= 12; named tori 3/5/7/5/13";
    r.seconds = elapsed_seconds(t0);
    return r;
}

CriterionResult covering_numbers() {
    CriterionResult r{6, "covering-numbers", true, "", 0.0};
    const auto t0 = Clock::now();
    bool ok = true;
    for (int l = 1; l < 12 && ok; ++l)
        for (int k = l + 1; k <= 12 && ok; ++k)
            ok = catalog::birth_covering_check(k, l) == k - l &&
                 catalog::death_covering_check(k, l) == k + l;
    r.passed = ok;
    r.detail = "N- = k-l and N+ = k+l for all k <= 12";
    r.seconds = elapsed_seconds(t0);
    return r;
}

CriterionResult dynamical_convexity() {
    CriterionResult r{7, "dynamical-convexity", true, "", 0.0};
    const auto t0 = Clock::now();
    bool ok = true;
    int resonant = 0;
    for (double c : {1.55, 1.7, 2.0, 3.0, 5.0, 10.0}) {
        const auto rep = catalog::dynamical_convexity_report(c, -1e300, 20, 20);
        ok = ok && rep.assertions.all_ok() && rep.assertions.violations.empty();
        resonant += rep.assertions.resonant_skipped;
    }
    ok = ok && resonant == 0;
    r.passed = ok;
    r.detail = "c in {1.55,1.7,2,3,5,10}, N_max = k_max = 20, zero violations";
    r.seconds = elapsed_seconds(t0);
    return r;
}

CriterionResult cubic_degeneration() {
    CriterionResult r{8, "cubic-degeneration", true, "", 0.0};
    const auto t0 = Clock::now();
    const auto roots = catalog::circular_energies(1.5);
    bool ok = roots.size() == 2;
    if (ok) {
        ok = std::abs(roots[0].E + 2.0) <= 1e-10 && roots[0].multiplicity == 1 &&
             std::abs(roots[1].E + 0.5) <= 1e-10 && roots[1].multiplicity == 2;
    }
    r.passed = ok;
    r.detail = "roots at c = 3/2: E = -2 simple, E = -1/2 double";
    r.seconds = elapsed_seconds(t0);
    return r;
}

CriterionResult numeric_oracle_fidelity() {
    CriterionResult r{9, "numeric-oracle-fidelity", true, "", 0.0};
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (double t0_param : {0.4, 0.5, 1.0, 1.5}) {
        const auto seed =
            linflow::CircularOrbitSeed::from_radius(t0_param * t0_param,
                                                    linflow::OrbitSign::Retrograde);
        const double S = seed.synodical_period();
        const auto numeric = linflow::numeric_monodromy_path(seed, S);
        const auto closed = linflow::closed_form_path(seed, S);
        for (std::size_t i = 0; i < numeric.sample_count(); ++i) {
            const double s = numeric.sample_time(i);
            worst = std::max(worst, max_abs_diff(numeric.sample_value(i), closed.value(s)));
        }
    }
    r.passed = worst < 1e-8;
    r.detail = "max-norm deviation " + num(worst) + " over one synodical period";
    r.seconds = elapsed_seconds(t0);
    return r;
}

CriterionResult scan_sanity() {
    CriterionResult r{10, "scan-sanity", true, "", 0.0};
    const auto t0 = Clock::now();
    const auto critical = lc::convexity_scan(1.5, 10'000, 7);  // witness auto-injected
    const auto below = lc::convexity_scan(1.45, 100'000, 7, false);
    r.seconds = elapsed_seconds(t0);
    r.passed = critical.witness_injected && critical.min_eigenvalue < 0.0 &&
               below.min_eigenvalue < 0.0 && r.seconds < 60.0;
    r.detail = "min eig " + num(critical.min_eigenvalue) + " at c=3/2, " +
               num(below.min_eigenvalue) + " at c=1.45, " + num(r.seconds) + " s";
    return r;
}

CriterionResult conservation_and_calculus() {
    CriterionResult r{11, "conservation-and-calculus", true, "", 0.0};
    const auto t0 = Clock::now();
    std::ostringstream why;

    // E/L/H drift along a (slightly eccentric) trajectory over 10 synodical
    // periods of the nearby E = -2 circular orbit.
    const double S = catalog::synodical_period(-2.0, OrbitSign::Retrograde);
    mech::PolarState state(0.26, 0.3, 0.05, 0.5);
    const double E0 = mech::kepler_energy_polar(state);
    const double L0 = state.t;
    const double H0 = mech::rotating_hamiltonian_polar(state, 1.0);
    double drift = 0.0;
    for (int period = 0; period < 10; ++period) {
        state = mech::integrate_polar(state, 1.0, S, 30'000);
        drift = std::max({drift, std::abs(mech::kepler_energy_polar(state) - E0),
                          std::abs(state.t - L0),
                          std::abs(mech::rotating_hamiltonian_polar(state, 1.0) - H0)});
    }
    bool ok = drift < 1e-8;
    why << "drift " << num(drift);

    // gradient/Hessian vs central finite differences at 1000 random points
    std::mt19937_64 rng(20260811);
    auto unit = [&rng] { return (rng() >> 11) * 0x1.0p-53; };
    double worst_grad = 0.0, worst_hess = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const double c = 1.4 + 8.6 * unit();
        const lc::LCPoint p{{2.0 * unit() - 1.0, 2.0 * unit() - 1.0},
                            {2.0 * unit() - 1.0, 2.0 * unit() - 1.0}};
        const Vec4 grad = lc::lc_gradient(p, c);
        const Mat4 hess = lc::lc_hessian(p, c);
        auto shift = [&p](int i, double h) {
            lc::LCPoint q = p;
            double* coord[4] = {&q.u.x, &q.u.y, &q.v.x, &q.v.y};
            *coord[i] += h;
            return q;
        };
        const double hg = 1e-6, hh = 1e-4;
        for (int i = 0; i < 4; ++i) {
            const double fd =
                (lc::lc_energy(shift(i, hg), c) - lc::lc_energy(shift(i, -hg), c)) / (2.0 * hg);
            worst_grad = std::max(worst_grad,
                                  std::abs(grad[i] - fd) / std::max(1.0, std::abs(grad[i])));
        }
        for (int i = 0; i < 4; ++i)
            for (int j = i; j < 4; ++j) {
                auto shift2 = [&](double si, double sj) {
                    lc::LCPoint q = shift(i, si);
                    double* coord[4] = {&q.u.x, &q.u.y, &q.v.x, &q.v.y};
                    *coord[j] += sj;
                    return lc::lc_energy(q, c);
                };
                const double fd = (shift2(hh, hh) - shift2(hh, -hh) - shift2(-hh, hh) +
                                   shift2(-hh, -hh)) /
                                  (4.0 * hh * hh);
                worst_hess = std::max(
                    worst_hess, std::abs(hess.m[i][j] - fd) / std::max(1.0, std::abs(hess.m[i][j])));
            }
    }
    ok = ok && worst_grad < 1e-7 && worst_hess < 1e-5;
    why << ", grad fd " << num(worst_grad) << ", hess fd " << num(worst_hess);

    // Moser scaling identity at 1000 samples
    double worst_moser = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const Vec2 q{2.0 * unit() - 1.0, 2.0 * unit() - 1.0};
        const Vec2 p{2.0 * unit() - 1.0, 2.0 * unit() - 1.0};
        if (q.norm() < 1e-3) continue;
        const double k = 0.1 + 5.0 * unit();
        const double root = std::sqrt(2.0 * k);
        const mech::CartesianState plain(q, p);
        const mech::CartesianState scaled(q * (1.0 / root), p * root);
        const double lhs = mech::moser_energy(scaled, k);
        const double rhs = root * mech::moser_energy(plain, 0.5);
        worst_moser = std::max(worst_moser, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
    }
    ok = ok && worst_moser < 1e-12;
    why << ", moser " << num(worst_moser);

    r.passed = ok;
    r.detail = why.str();
    r.seconds = elapsed_seconds(t0);
    return r;
}

}  // namespace

std::vector<CriterionResult> run_all() {
    return {witness_reproduction(), hekuba_birth_energy(),  closed_form_vs_oracle_grid(),
            index_landmarks(),      torus_indices(),        covering_numbers(),
            dynamical_convexity(),  cubic_degeneration(),   numeric_oracle_fidelity(),
            scan_sanity(),          conservation_and_calculus()};
}

std::string format_line(const CriterionResult& r) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s  %2d  %-28s  %8.3f s  %s",
                  r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                  r.detail.c_str());
    return buf;
}

}  // namespace rkp::acceptance
