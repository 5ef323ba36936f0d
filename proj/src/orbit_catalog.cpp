#include "rkp/orbit_catalog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace rkp::catalog {

namespace {

constexpr double kCriticalJacobi = 1.5;
constexpr double kResonanceRelTol = 1e-10;
constexpr double kRootClusterTol = 1e-7;
constexpr double kBookkeepingEps = 1e-4;

double cubic_residual(double E, double c) {
    const double s = c + E;
    return 2.0 * E * s * s + 1.0;
}

double cubic_residual_slope(double E, double c) {
    const double s = c + E;
    return 2.0 * s * (s + 2.0 * E);
}

}  // namespace

std::string branch_name(Branch b) {
    switch (b) {
        case Branch::Retrograde: return "retrograde";
        case Branch::Direct: return "direct";
        case Branch::Unbounded: return "unbounded";
    }
    return "?";
}

std::vector<CircularRoot> circular_energies(double c) {
    // 2E(c+E)^2 + 1 = 0  <=>  E^3 + 2c E^2 + c^2 E + 1/2 = 0.
    // Depressed form w^3 + p w + q with E = w - 2c/3.
    const double p = -c * c / 3.0;
    const double q = 0.5 - 2.0 * c * c * c / 27.0;
    const double disc = 0.25 * q * q + p * p * p / 27.0;

    std::vector<double> roots;
    if (disc > 0.0) {
        // one real root (c below the critical degeneration)
        const double sq = std::sqrt(disc);
        const double w = std::cbrt(-0.5 * q + sq) + std::cbrt(-0.5 * q - sq);
        roots.push_back(w - 2.0 * c / 3.0);
    } else {
        const double m = 2.0 * std::sqrt(-p / 3.0);
        const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
        const double phi = std::acos(arg);
        for (int k = 0; k < 3; ++k) {
            const double w =
                m * std::cos(phi / 3.0 - 2.0 * std::numbers::pi * k / 3.0);
            roots.push_back(w - 2.0 * c / 3.0);
        }
    }

    // One Newton polish per simple root (skipped where f' ~ 0, i.e. at the
    // c = 3/2 double root where the trig value is already exact).
    for (double& E : roots) {
        for (int it = 0; it < 2; ++it) {
            const double fp = cubic_residual_slope(E, c);
            if (std::abs(fp) < 1e-6) break;
            E -= cubic_residual(E, c) / fp;
        }
    }
    std::sort(roots.begin(), roots.end());

    std::vector<CircularRoot> out;
    for (double E : roots) {
        if (!out.empty() && std::abs(E - out.back().E) <
                                kRootClusterTol * std::max(1.0, std::abs(E))) {
            out.back().multiplicity += 1;
            continue;
        }
        CircularRoot r;
        r.E = E;
        r.c = c;
        r.L = -c - E;
        r.multiplicity = 1;
        // boundary tolerance: the c = 3/2 double root computes to -1/2 up to
        // rounding and belongs to the bounded side
        if (E > -0.5 + 1e-9)
            r.branch = Branch::Unbounded;
        else
            r.branch = r.L > 0.0 ? Branch::Retrograde : Branch::Direct;
        out.push_back(r);
    }
    return out;
}

double synodical_period(double E, OrbitSign sign) {
    if (!(E < 0.0)) throw std::invalid_argument("synodical_period: requires E < 0");
    const double w = std::pow(-2.0 * E, 1.5);
    const double denom = sign == OrbitSign::Retrograde ? w + 1.0 : w - 1.0;
    if (std::abs(denom) < 1e-14) return std::numeric_limits<double>::infinity();
    return 2.0 * std::numbers::pi / std::abs(denom);
}

TorusFamily torus_family(int k, int l) {
    if (!(k > l && l >= 1))
        throw std::invalid_argument("torus_family: requires k > l >= 1");
    TorusFamily f;
    f.k = k;
    f.l = l;
    // c+- = -E -+ sqrt(1/(-2E)) with E = -(k/l)^(2/3)/2 simplifies to
    // (r -+ 2) / (2 r^(1/3)), r = k/l; this form is cancellation-free
    // (c+ of T(2l,l) is exactly zero).
    const double r = static_cast<double>(k) / l;
    const double cbrt_r = std::cbrt(r);
    f.E_kl = -0.5 * cbrt_r * cbrt_r;
    f.c_minus = (r + 2.0) / (2.0 * cbrt_r);
    f.c_plus = (r - 2.0) / (2.0 * cbrt_r);
    f.birth_covering = k - l;
    f.death_covering = k + l;
    f.cz_index = 2 * k - 1;
    f.iterate = std::gcd(k, l) > 1;
    if (k == 2 && l == 1) f.name = "Hekuba";
    else if (k == 3 && l == 2) f.name = "Hilda";
    else if (k == 4 && l == 3) f.name = "Thule";
    else if (k == 3 && l == 1) f.name = "Hestia";
    else if (k == 7 && l == 4) f.name = "Cybele";
    return f;
}

namespace {

int solve_covering(int k, int l, OrbitSign sign) {
    const TorusFamily f = torus_family(k, l);
    const double period = synodical_period(f.E_kl, sign);
    const double solved = 2.0 * std::numbers::pi * l / period;
    const double rounded = std::round(solved);
    if (std::abs(solved - rounded) > 1e-6)
        throw NonIntegerCoveringError("covering check: solved value " +
                                      std::to_string(solved) + " is not an integer");
    return static_cast<int>(rounded);
}

}  // namespace

int birth_covering_check(int k, int l) { return solve_covering(k, l, OrbitSign::Direct); }

int death_covering_check(int k, int l) { return solve_covering(k, l, OrbitSign::Retrograde); }

namespace {

void validate_index_inputs(double E, OrbitSign sign, int N) {
    if (!(E < 0.0)) throw std::invalid_argument("cz index: requires E < 0");
    if (sign == OrbitSign::Direct && !(E < -0.5))
        throw std::invalid_argument("cz index: direct orbits need E < -1/2 (bounded component)");
    if (N < 1) throw std::invalid_argument("cz index: covering N must be >= 1");
}

}  // namespace

CzIndex circular_cz_index(double E, OrbitSign sign, int N) {
    validate_index_inputs(E, sign, N);
    const double kepler = mech::kepler_period(E);
    const double ratio = N * synodical_period(E, sign) / kepler;
    const double nearest = std::round(ratio);
    if (std::abs(ratio - nearest) < kResonanceRelTol * std::max(1.0, std::abs(ratio)))
        return CzIndex::make_resonant();
    return CzIndex::of(1 + 2 * static_cast<int>(std::floor(ratio)));
}

CzIndex cz_index_oracle(double E, OrbitSign sign, int N) {
    validate_index_inputs(E, sign, N);
    const auto seed = linflow::CircularOrbitSeed::from_energy(E, sign);
    const double duration = N * synodical_period(E, sign);
    if (!std::isfinite(duration)) return CzIndex::make_resonant();

    // Keep >= 128 scan cells per crossing: near the synodical lock the path
    // covers many Kepler periods and the default grid would miss touches.
    const double crossings_expected = duration / mech::kepler_period(E);
    if (crossings_expected > 250'000)
        throw std::domain_error(
            "cz_index_oracle: too close to the synodical lock for the crossing scan; "
            "the closed form stays valid there");
    maslov::FindOptions opts;
    opts.grid_points =
        std::max(opts.grid_points, 128 * static_cast<int>(std::ceil(crossings_expected) + 1));

    const auto path = linflow::closed_form_path(seed, duration);
    try {
        const auto crossings = maslov::find_crossings(path, opts);
        // A crossing at s = T means N*S sits on the crossing lattice
        // Z * Kepler period: the covered orbit is transversally degenerate
        // and no index is assigned.
        const double resonant_band = 1e-8 * std::max(1.0, duration);
        for (const auto& cr : crossings)
            if (cr.time >= duration - resonant_band) return CzIndex::make_resonant();
        int halves = 0;
        for (const auto& cr : crossings) {
            if (cr.degenerate)
                throw maslov::DegenerateCrossingError("degenerate crossing in oracle path");
            halves += cr.is_endpoint ? cr.signature : 2 * cr.signature;
        }
        return CzIndex::of(HalfInteger::from_halves(halves).as_integer());
    } catch (const maslov::DegenerateCrossingError&) {
        return CzIndex::make_resonant();
    }
}

int index_bookkeeping(int k, int l) {
    const TorusFamily fam = torus_family(k, l);
    const double E_probe = fam.E_kl - kBookkeepingEps;  // pre-birth side
    const int N = k - l;
    const CzIndex idx = circular_cz_index(E_probe, OrbitSign::Direct, N);
    if (idx.resonant())
        throw MismatchError("index_bookkeeping: probe energy unexpectedly resonant");

    // The probe must be cleanly separated from the birth resonance: no
    // crossing of the contact path may fall within 1e-6 of the endpoint.
    const auto seed = linflow::CircularOrbitSeed::from_energy(E_probe, OrbitSign::Direct);
    const double duration = N * synodical_period(E_probe, OrbitSign::Direct);
    const auto times = maslov::find_crossing_times(linflow::closed_form_path(seed, duration));
    for (double s : times)
        if (s > 0.0 && duration - s < 1e-6)
            throw MismatchError("index_bookkeeping: crossing within 1e-6 of the endpoint");

    if (*idx.value != 2 * k - 1)
        throw MismatchError("index_bookkeeping: route disagreement at (k,l) = (" +
                            std::to_string(k) + "," + std::to_string(l) + "): got " +
                            std::to_string(*idx.value) + ", expected " +
                            std::to_string(2 * k - 1));
    return *idx.value;
}

CatalogReport dynamical_convexity_report(double c, double E_floor, int N_max, int k_max) {
    if (!(c > kCriticalJacobi))
        throw std::invalid_argument("dynamical_convexity_report: requires c > 3/2");
    if (N_max < 1 || k_max < 2)
        throw std::invalid_argument("dynamical_convexity_report: need N_max >= 1, k_max >= 2");

    CatalogReport rep;
    rep.c = c;
    rep.E_floor = E_floor;
    rep.N_max = N_max;
    rep.k_max = k_max;

    for (const CircularRoot& root : circular_energies(c)) {
        if (root.E < E_floor) continue;
        if (root.branch == Branch::Unbounded) {
            OrbitRecord r;
            r.kind = OrbitRecord::Kind::Circular;
            r.branch = Branch::Unbounded;
            r.covering = 1;
            r.E = root.E;
            r.L = root.L;
            r.synodical = synodical_period(root.E, OrbitSign::Direct);
            r.index = CzIndex::make_resonant();  // no index claimed off the bounded component
            r.excluded = true;
            rep.records.push_back(r);
            continue;
        }
        const OrbitSign sign =
            root.branch == Branch::Retrograde ? OrbitSign::Retrograde : OrbitSign::Direct;
        for (int N = 1; N <= N_max; ++N) {
            OrbitRecord r;
            r.kind = OrbitRecord::Kind::Circular;
            r.branch = root.branch;
            r.covering = N;
            r.E = root.E;
            r.L = root.L;
            r.synodical = synodical_period(root.E, sign);
            r.index = circular_cz_index(root.E, sign, N);
            r.contractible = N % 2 == 0;
            rep.records.push_back(r);
        }
    }

    for (int l = 1; l < k_max; ++l) {
        for (int k = l + 1; k <= k_max; ++k) {
            const TorusFamily f = torus_family(k, l);
            if (!(f.c_plus < c && c < f.c_minus)) continue;
            if (f.E_kl < E_floor) continue;
            OrbitRecord r;
            r.kind = OrbitRecord::Kind::Torus;
            r.k = k;
            r.l = l;
            r.E = f.E_kl;
            r.covering = f.birth_covering;
            r.name = f.name;
            r.iterate = f.iterate;
            r.index = CzIndex::of(f.cz_index);
            r.contractible = (k - l) % 2 == 0;
            rep.records.push_back(r);
        }
    }

    AssertionOutcome& a = rep.assertions;
    int index3_contractible = 0;
    int index1_count = 0;
    for (const OrbitRecord& r : rep.records) {
        if (r.excluded) continue;
        if (r.index.resonant()) {
            a.resonant_skipped += 1;
            continue;
        }
        const int idx = *r.index.value;
        if (r.contractible && idx < 3) {
            a.min_index_ok = false;
            a.violations.push_back(r);
        }
        if (r.contractible && idx == 3) {
            index3_contractible += 1;
            const bool is_double_retrograde = r.kind == OrbitRecord::Kind::Circular &&
                                              r.branch == Branch::Retrograde && r.covering == 2;
            if (!is_double_retrograde) {
                a.unique_index3_ok = false;
                a.violations.push_back(r);
            }
        }
        if (idx == 1) {
            index1_count += 1;
            const bool is_simple_retrograde = r.kind == OrbitRecord::Kind::Circular &&
                                              r.branch == Branch::Retrograde &&
                                              r.covering == 1 && !r.contractible;
            if (!is_simple_retrograde) {
                a.unique_index1_ok = false;
                a.violations.push_back(r);
            }
        }
    }
    if (index3_contractible != 1) a.unique_index3_ok = false;
    if (index1_count != 1) a.unique_index1_ok = false;
    return rep;
}

}  // namespace rkp::catalog
