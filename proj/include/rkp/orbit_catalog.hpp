// Closed-form catalog of the periodic orbits of the rotating Kepler problem:
// circular orbits from the cubic, torus families T(k,l), covering numbers,
// Conley-Zehnder indices and the dynamical-convexity report.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rkp/linearized_flow.hpp"

namespace rkp::catalog {

using linflow::OrbitSign;

/// Raised when a solved covering number is farther than 1e-6 from an integer.
struct NonIntegerCoveringError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when the bookkeeping route and the 2k-1 closed form disagree
/// (a convention bug, never expected).
struct MismatchError : std::logic_error {
    using std::logic_error::logic_error;
};

enum class Branch { Retrograde, Direct, Unbounded };

std::string branch_name(Branch b);

/// A real root of the circular-orbit cubic 2E(c+E)^2 + 1 = 0 at fixed c,
/// with its signed angular momentum L = -c - E.
struct CircularRoot {
    double E;
    double L;
    double c;
    Branch branch;
    int multiplicity;  // 2 at the c = 3/2 degeneration, else 1
};

/// All real roots of 2E(c+E)^2 + 1 = 0, classified. For c > 3/2 there are
/// three (retrograde/direct bounded plus the unbounded branch); at c = 3/2
/// the direct and unbounded roots coincide at E = -1/2 (multiplicity 2).
std::vector<CircularRoot> circular_energies(double c);

/// Positive synodical period 2*pi/|(-2E)^(3/2) +- 1| (+ for retrograde,
/// - for direct); +infinity at the direct lock E = -1/2.
double synodical_period(double E, OrbitSign sign);

/// A T(k,l) torus family record (k-fold covered ellipses in an l-fold
/// covered rotating frame), k > l >= 1.
struct TorusFamily {
    int k, l;
    double E_kl;          // -(k/l)^(2/3) / 2
    double c_minus;       // birth (larger c), direct side
    double c_plus;        // death (smaller c), retrograde side
    int birth_covering;   // k - l
    int death_covering;   // k + l
    int cz_index;         // 2k - 1
    std::string name;     // one of the five named tori, or empty
    bool iterate;         // gcd(k, l) > 1: an iterate of a lower family
};

TorusFamily torus_family(int k, int l);

/// Solves N * T_direct(E_kl) = 2*pi*l for the birth covering; must round to
/// k - l within 1e-6.
int birth_covering_check(int k, int l);
/// Death-side analog with the retrograde period; rounds to k + l.
int death_covering_check(int k, int l);

/// A Conley-Zehnder index, or RESONANT when the covered orbit is
/// transversally degenerate (N*S lands in Z * 2*pi/(-2E)^(3/2), i.e. its
/// period is commensurable with the Kepler period).
struct CzIndex {
    std::optional<int> value;
    bool resonant() const { return !value.has_value(); }
    static CzIndex of(int v) { return {v}; }
    static CzIndex make_resonant() { return {std::nullopt}; }
};

/// Closed-form index of the N-fold covered circular orbit:
///   1 + 2 * max{ j in Z : j * 2*pi/(-2E)^(3/2) < N * S_sign }.
/// Resonance is detected at 1e-10 relative tolerance.
CzIndex circular_cz_index(double E, OrbitSign sign, int N);

/// Crossing-form route: Robbin-Salamon index of the closed-form
/// contact-plane path over N synodical periods. Must equal
/// circular_cz_index on every non-resonant input.
CzIndex cz_index_oracle(double E, OrbitSign sign, int N);

/// Index of the (k-l)-fold covered direct orbit just before the T(k,l)
/// birth (probe at E_kl - 1e-4); checked against 2k - 1, MismatchError on
/// disagreement.
int index_bookkeeping(int k, int l);

struct OrbitRecord {
    enum class Kind { Circular, Torus } kind;
    // circular fields
    Branch branch = Branch::Retrograde;
    int covering = 0;
    double E = 0.0, L = 0.0;
    double synodical = 0.0;
    // torus fields
    int k = 0, l = 0;
    std::string name;
    bool iterate = false;
    // common
    CzIndex index;
    bool contractible = false;
    bool excluded = false;  // unbounded-branch rows stay out of the assertions
};

struct AssertionOutcome {
    bool min_index_ok = true;       // every contractible orbit has index >= 3
    bool unique_index3_ok = true;   // exactly one contractible index-3 orbit,
                                    // the doubly covered retrograde
    bool unique_index1_ok = true;   // exactly one index-1 orbit, the simple
                                    // retrograde (non-contractible)
    int resonant_skipped = 0;
    std::vector<OrbitRecord> violations;
    bool all_ok() const { return min_index_ok && unique_index3_ok && unique_index1_ok; }
};

struct CatalogReport {
    double c;
    double E_floor;
    int N_max, k_max;
    std::vector<OrbitRecord> records;
    AssertionOutcome assertions;
};

/// Enumerate all circular orbits at parameter c with coverings N <= N_max
/// and all torus families with k <= k_max alive at c (c_plus < c < c_minus),
/// mark contractibility (even covering) and run the three dynamical
/// convexity assertions. Requires c > 3/2.
CatalogReport dynamical_convexity_report(double c, double E_floor, int N_max, int k_max);

}  // namespace rkp::catalog
