// Serialization of catalogs, indices, diagrams and convexity reports.
// Reals carry 17 significant digits (round-trip exact for doubles); CSV is
// UTF-8, LF line endings, fixed column order, mandatory header row.
#pragma once

#include <optional>
#include <string>

#include "rkp/levi_civita.hpp"
#include "rkp/orbit_catalog.hpp"

namespace rkp::io {

enum class Format { Json, Csv };

/// %.17g rendering used by every emitter.
std::string fmt_real(double v);

std::string catalog_report(const catalog::CatalogReport& rep, Format f);

/// Sweep of the circular-orbit cubic: columns (c, E_root, branch); the
/// c = 3/2 double root expands to a direct and an unbounded row.
std::string energy_jacobi_diagram(double c_min, double c_max, int steps, Format f);

/// Torus-family table for all k <= k_max, l < k:
/// columns (k, l, name, E_kl, c_minus, c_plus, cz_index).
std::string life_of_tori_diagram(int k_max, Format f);

struct CzResult {
    double E;
    catalog::OrbitSign sign;
    int N;
    catalog::CzIndex closed_form;
    std::optional<catalog::CzIndex> oracle;  // set when the oracle route ran
    bool agree = true;
};

/// Plain text: "3", "RESONANT", or with the oracle "3 3 AGREE".
std::string cz_result_plain(const CzResult& r);
std::string cz_result_json(const CzResult& r);

/// When `witness` is given (c = 3/2 runs) it is printed alongside the
/// report: a "witness" member in JSON, a '#' comment line in CSV.
std::string convexity_report(const lc::ConvexityReport& rep, Format f,
                             const lc::Witness* witness = nullptr);

}  // namespace rkp::io
