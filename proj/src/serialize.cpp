#include "rkp/serialize.hpp"

#include <cstdio>
#include <sstream>

namespace rkp::io {

std::string fmt_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string json_str(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out += '\\';
        out += ch;
    }
    return out + "\"";
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

std::string index_cell(const catalog::OrbitRecord& r) {
    if (r.excluded) return "";  // no index claimed off the bounded component
    if (r.index.resonant()) return "RESONANT";
    return std::to_string(*r.index.value);
}

std::string index_json(const catalog::CzIndex& idx) {
    if (idx.resonant()) return "\"RESONANT\"";
    return std::to_string(*idx.value);
}

std::string kind_name(catalog::OrbitRecord::Kind k) {
    return k == catalog::OrbitRecord::Kind::Circular ? "circular" : "torus";
}

}  // namespace

std::string catalog_report(const catalog::CatalogReport& rep, Format f) {
    const auto& a = rep.assertions;
    if (f == Format::Csv) {
        std::ostringstream os;
        os << "kind,branch,k,l,covering,E,L,name,iterate,contractible,cz_index\n";
        for (const auto& r : rep.records) {
            const bool torus = r.kind == catalog::OrbitRecord::Kind::Torus;
            os << kind_name(r.kind) << ',' << (torus ? "" : catalog::branch_name(r.branch))
               << ',' << (torus ? std::to_string(r.k) : "") << ','
               << (torus ? std::to_string(r.l) : "") << ',' << r.covering << ','
               << fmt_real(r.E) << ',' << (torus ? "" : fmt_real(r.L)) << ',' << r.name << ','
               << (torus ? bool_str(r.iterate) : "") << ',' << bool_str(r.contractible) << ','
               << index_cell(r) << '\n';
        }
        os << "# assertion min_index_ge_3 " << (a.min_index_ok ? "pass" : "FAIL") << '\n';
        os << "# assertion unique_contractible_index3_is_double_retrograde "
           << (a.unique_index3_ok ? "pass" : "FAIL") << '\n';
        os << "# assertion unique_index1_is_simple_retrograde "
           << (a.unique_index1_ok ? "pass" : "FAIL") << '\n';
        os << "# resonant_skipped " << a.resonant_skipped << '\n';
        return os.str();
    }
    std::ostringstream os;
    os << "{\"c\":" << fmt_real(rep.c) << ",\"N_max\":" << rep.N_max
       << ",\"k_max\":" << rep.k_max << ",\"records\":[";
    bool first = true;
    for (const auto& r : rep.records) {
        if (!first) os << ',';
        first = false;
        os << "{\"kind\":" << json_str(kind_name(r.kind));
        if (r.kind == catalog::OrbitRecord::Kind::Torus) {
            os << ",\"k\":" << r.k << ",\"l\":" << r.l;
            if (!r.name.empty()) os << ",\"name\":" << json_str(r.name);
            os << ",\"iterate\":" << bool_str(r.iterate);
        } else {
            os << ",\"branch\":" << json_str(catalog::branch_name(r.branch)) << ",\"L\":"
               << fmt_real(r.L);
        }
        os << ",\"covering\":" << r.covering << ",\"E\":" << fmt_real(r.E)
           << ",\"contractible\":" << bool_str(r.contractible)
           << ",\"excluded\":" << bool_str(r.excluded);
        if (!r.excluded) os << ",\"cz_index\":" << index_json(r.index);
        os << '}';
    }
    os << "],\"assertions\":{\"min_index_ge_3\":" << bool_str(a.min_index_ok)
       << ",\"unique_contractible_index3_is_double_retrograde\":"
       << bool_str(a.unique_index3_ok)
       << ",\"unique_index1_is_simple_retrograde\":" << bool_str(a.unique_index1_ok)
       << ",\"resonant_skipped\":" << a.resonant_skipped
       << ",\"violations\":" << a.violations.size() << "}}\n";
    return os.str();
}

namespace {

struct DiagramRow {
    double c, E;
    std::string branch;
};

std::vector<DiagramRow> energy_jacobi_rows(double c_min, double c_max, int steps) {
    std::vector<DiagramRow> rows;
    for (int i = 0; i < steps; ++i) {
        const double c =
            steps == 1 ? c_min : c_min + (c_max - c_min) * i / static_cast<double>(steps - 1);
        for (const auto& root : catalog::circular_energies(c)) {
            rows.push_back({c, root.E, catalog::branch_name(root.branch)});
            if (root.multiplicity == 2) {
                // the direct / unbounded merger at the critical value
                const bool boundary = std::abs(root.E + 0.5) < 1e-6;
                rows.push_back(
                    {c, root.E, boundary ? "unbounded" : catalog::branch_name(root.branch)});
            }
        }
    }
    return rows;
}

}  // namespace

std::string energy_jacobi_diagram(double c_min, double c_max, int steps, Format f) {
    if (steps < 1 || !(c_max >= c_min))
        throw std::invalid_argument("energy_jacobi_diagram: bad range");
    const auto rows = energy_jacobi_rows(c_min, c_max, steps);
    std::ostringstream os;
    if (f == Format::Csv) {
        os << "c,E_root,branch\n";
        for (const auto& r : rows)
            os << fmt_real(r.c) << ',' << fmt_real(r.E) << ',' << r.branch << '\n';
        return os.str();
    }
    os << "{\"rows\":[";
    bool first = true;
    for (const auto& r : rows) {
        if (!first) os << ',';
        first = false;
        os << "{\"c\":" << fmt_real(r.c) << ",\"E_root\":" << fmt_real(r.E)
           << ",\"branch\":" << json_str(r.branch) << '}';
    }
    os << "]}\n";
    return os.str();
}

std::string life_of_tori_diagram(int k_max, Format f) {
    if (k_max < 2) throw std::invalid_argument("life_of_tori_diagram: k_max must be >= 2");
    std::vector<catalog::TorusFamily> rows;
    for (int k = 2; k <= k_max; ++k)
        for (int l = 1; l < k; ++l) rows.push_back(catalog::torus_family(k, l));
    std::ostringstream os;
    if (f == Format::Csv) {
        os << "k,l,name,E_kl,c_minus,c_plus,cz_index\n";
        for (const auto& t : rows)
            os << t.k << ',' << t.l << ',' << t.name << ',' << fmt_real(t.E_kl) << ','
               << fmt_real(t.c_minus) << ',' << fmt_real(t.c_plus) << ',' << t.cz_index << '\n';
        return os.str();
    }
    os << "{\"rows\":[";
    bool first = true;
    for (const auto& t : rows) {
        if (!first) os << ',';
        first = false;
        os << "{\"k\":" << t.k << ",\"l\":" << t.l << ",\"name\":" << json_str(t.name)
           << ",\"E_kl\":" << fmt_real(t.E_kl) << ",\"c_minus\":" << fmt_real(t.c_minus)
           << ",\"c_plus\":" << fmt_real(t.c_plus) << ",\"cz_index\":" << t.cz_index << '}';
    }
    os << "]}\n";
    return os.str();
}

namespace {

std::string index_token(const catalog::CzIndex& idx) {
    return idx.resonant() ? "RESONANT" : std::to_string(*idx.value);
}

}  // namespace

std::string cz_result_plain(const CzResult& r) {
    std::string out = index_token(r.closed_form);
    if (r.oracle) {
        out += ' ';
        out += index_token(*r.oracle);
        out += r.agree ? " AGREE" : " DISAGREE";
    }
    return out + "\n";
}

std::string cz_result_json(const CzResult& r) {
    std::ostringstream os;
    os << "{\"E\":" << fmt_real(r.E) << ",\"sign\":"
       << json_str(r.sign == catalog::OrbitSign::Retrograde ? "retrograde" : "direct")
       << ",\"N\":" << r.N << ",\"closed_form\":" << index_json(r.closed_form);
    if (r.oracle)
        os << ",\"oracle\":" << index_json(*r.oracle)
           << ",\"verdict\":" << json_str(r.agree ? "AGREE" : "DISAGREE");
    os << "}\n";
    return os.str();
}

std::string convexity_report(const lc::ConvexityReport& rep, Format f,
                             const lc::Witness* witness) {
    const auto& p = rep.argmin_point;
    const auto& d = rep.argmin_direction;
    std::ostringstream os;
    if (f == Format::Csv) {
        os << "c,samples,min_eigenvalue,point_u1,point_u2,point_v1,point_v2,"
              "dir_u1,dir_u2,dir_v1,dir_v2,ray_misses,gradient_resamples,witness_injected\n";
        os << fmt_real(rep.c) << ',' << rep.samples << ',' << fmt_real(rep.min_eigenvalue) << ','
           << fmt_real(p.u.x) << ',' << fmt_real(p.u.y) << ',' << fmt_real(p.v.x) << ','
           << fmt_real(p.v.y) << ',' << fmt_real(d[0]) << ',' << fmt_real(d[1]) << ','
           << fmt_real(d[2]) << ',' << fmt_real(d[3]) << ',' << rep.ray_misses << ','
           << rep.gradient_resamples << ',' << bool_str(rep.witness_injected) << '\n';
        if (witness)
            os << "# witness value " << fmt_real(witness->hessian_value) << " at point ("
               << fmt_real(witness->point.u.x) << ',' << fmt_real(witness->point.u.y) << ','
               << fmt_real(witness->point.v.x) << ',' << fmt_real(witness->point.v.y)
               << ") direction (" << fmt_real(witness->direction[0]) << ','
               << fmt_real(witness->direction[1]) << ',' << fmt_real(witness->direction[2]) << ','
               << fmt_real(witness->direction[3]) << ")\n";
        return os.str();
    }
    os << "{\"c\":" << fmt_real(rep.c) << ",\"samples\":" << rep.samples
       << ",\"min_eigenvalue\":" << fmt_real(rep.min_eigenvalue) << ",\"argmin_point\":{\"u\":["
       << fmt_real(p.u.x) << ',' << fmt_real(p.u.y) << "],\"v\":[" << fmt_real(p.v.x) << ','
       << fmt_real(p.v.y) << "]},\"argmin_direction\":[" << fmt_real(d[0]) << ',' << fmt_real(d[1])
       << ',' << fmt_real(d[2]) << ',' << fmt_real(d[3]) << "],\"ray_misses\":" << rep.ray_misses
       << ",\"gradient_resamples\":" << rep.gradient_resamples
       << ",\"witness_injected\":" << bool_str(rep.witness_injected);
    if (witness) {
        const auto& wp = witness->point;
        const auto& wd = witness->direction;
        os << ",\"witness\":{\"value\":" << fmt_real(witness->hessian_value) << ",\"point\":{\"u\":["
           << fmt_real(wp.u.x) << ',' << fmt_real(wp.u.y) << "],\"v\":[" << fmt_real(wp.v.x) << ','
           << fmt_real(wp.v.y) << "]},\"direction\":[" << fmt_real(wd[0]) << ',' << fmt_real(wd[1])
           << ',' << fmt_real(wd[2]) << ',' << fmt_real(wd[3]) << "]}";
    }
    os << ",\"verdict\":" << json_str(rep.min_eigenvalue < 0.0
                                          ? "non-convexity witnessed"
                                          : "no counterexample found")
       << "}\n";
    return os.str();
}

}  // namespace rkp::io
