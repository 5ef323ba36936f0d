// rkp: periodic-orbit catalog, Conley-Zehnder indices and Levi-Civita
// convexity scans for the rotating Kepler problem.
//
// Exit codes: 0 success, 1 verify failure, 2 assertion failure,
//             3 oracle disagreement, 64 usage error.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rkp/acceptance.hpp"
#include "rkp/serialize.hpp"

namespace {

constexpr int kExitVerifyFailure = 1;
constexpr int kExitAssertionFailure = 2;
constexpr int kExitOracleDisagree = 3;
constexpr int kExitUsage = 64;

void write_out(const std::string& payload, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(output_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + output_path);
    out << payload;
}

rkp::io::Format parse_format(const std::string& name) {
    if (name == "json") return rkp::io::Format::Json;
    if (name == "csv") return rkp::io::Format::Csv;
    throw CLI::ValidationError("--format", "expected json or csv");
}

struct Args {
    double c = 0.0;
    double E = 0.0;
    int N = 1;
    int n_max = 10;
    int k_max = 10;
    int samples = 10'000;
    std::uint64_t seed = 0;
    int steps = 101;
    double c_min = 1.5;
    double c_max = 3.0;
    std::string sign = "retrograde";
    std::string kind;
    std::string format;
    std::string output;
    bool oracle = false;
};

int run_catalog(const Args& a) {
    const auto rep = rkp::catalog::dynamical_convexity_report(a.c, -1e300, a.n_max, a.k_max);
    const auto fmt = parse_format(a.format.empty() ? "json" : a.format);
    write_out(rkp::io::catalog_report(rep, fmt), a.output);
    if (!rep.assertions.all_ok()) {
        std::cerr << "assertion failed; offending records: "
                  << rep.assertions.violations.size() << "\n";
        for (const auto& v : rep.assertions.violations) {
            std::cerr << "  " << (v.kind == rkp::catalog::OrbitRecord::Kind::Circular
                                      ? rkp::catalog::branch_name(v.branch)
                                      : "torus(" + std::to_string(v.k) + "," +
                                            std::to_string(v.l) + ")")
                      << " covering " << v.covering << " index "
                      << (v.index.resonant() ? std::string("RESONANT")
                                             : std::to_string(*v.index.value))
                      << "\n";
        }
        return kExitAssertionFailure;
    }
    return 0;
}

int run_cz_index(const Args& a) {
    rkp::io::CzResult res;
    res.E = a.E;
    res.N = a.N;
    if (a.sign == "retrograde")
        res.sign = rkp::catalog::OrbitSign::Retrograde;
    else if (a.sign == "direct")
        res.sign = rkp::catalog::OrbitSign::Direct;
    else
        throw CLI::ValidationError("--sign", "expected retrograde or direct");
    res.closed_form = rkp::catalog::circular_cz_index(a.E, res.sign, a.N);
    if (a.oracle) {
        res.oracle = rkp::catalog::cz_index_oracle(a.E, res.sign, a.N);
        res.agree = res.closed_form.resonant() == res.oracle->resonant() &&
                    (res.closed_form.resonant() ||
                     *res.closed_form.value == *res.oracle->value);
    }
    write_out(a.format == "json" ? rkp::io::cz_result_json(res) : rkp::io::cz_result_plain(res),
              a.output);
    return a.oracle && !res.agree ? kExitOracleDisagree : 0;
}

int run_diagram(const Args& a) {
    const auto fmt = parse_format(a.format.empty() ? "csv" : a.format);
    if (a.kind == "energy-jacobi") {
        write_out(rkp::io::energy_jacobi_diagram(a.c_min, a.c_max, a.steps, fmt), a.output);
        return 0;
    }
    if (a.kind == "life-of-tori") {
        write_out(rkp::io::life_of_tori_diagram(a.k_max, fmt), a.output);
        return 0;
    }
    throw CLI::ValidationError("--kind", "expected energy-jacobi or life-of-tori");
}

int run_convexity_scan(const Args& a) {
    const bool critical = std::abs(a.c - 1.5) <= 1e-12;
    const auto rep = rkp::lc::convexity_scan(a.c, a.samples, a.seed, critical);
    const auto fmt = parse_format(a.format.empty() ? "json" : a.format);
    if (critical) {
        const rkp::lc::Witness w = rkp::lc::convexity_witness();
        write_out(rkp::io::convexity_report(rep, fmt, &w), a.output);
        if (rep.min_eigenvalue >= 0.0) {
            std::cerr << "scan at the critical value failed to reproduce the negative witness\n";
            return kExitAssertionFailure;
        }
        return 0;
    }
    write_out(rkp::io::convexity_report(rep, fmt), a.output);
    return 0;
}

int run_verify() {
    bool all = true;
    for (const auto& r : rkp::acceptance::run_all()) {
        std::cout << rkp::acceptance::format_line(r) << "\n";
        all = all && r.passed;
    }
    std::cout << (all ? "verify: all criteria passed" : "verify: FAILURES present") << "\n";
    return all ? 0 : kExitVerifyFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rotating Kepler problem: orbit catalog, Conley-Zehnder indices, convexity"};
    app.require_subcommand(1);
    Args a;

    auto* catalog = app.add_subcommand("catalog", "orbit table plus dynamical-convexity assertions");
    catalog->add_option("--c", a.c, "Jacobi parameter c = -H, must be > 3/2")->required();
    catalog->add_option("--n-max", a.n_max, "max circular covering");
    catalog->add_option("--k-max", a.k_max, "max torus k");
    catalog->add_option("--format", a.format, "json|csv (default json)");
    catalog->add_option("--output", a.output, "write to file instead of stdout");

    auto* cz = app.add_subcommand("cz-index", "Conley-Zehnder index of a covered circular orbit");
    cz->add_option("--E", a.E, "Kepler energy (< 0)")->required();
    cz->add_option("--sign", a.sign, "retrograde|direct")->required();
    cz->add_option("--N", a.N, "covering number (>= 1)");
    cz->add_flag("--oracle", a.oracle, "also run the crossing-form route and compare");
    cz->add_option("--format", a.format, "json for a JSON object (default plain)");
    cz->add_option("--output", a.output, "write to file instead of stdout");

    auto* diagram = app.add_subcommand("diagram", "data files behind the diagrams");
    diagram->add_option("--kind", a.kind, "energy-jacobi|life-of-tori")->required();
    diagram->add_option("--c-min", a.c_min, "sweep start (energy-jacobi)");
    diagram->add_option("--c-max", a.c_max, "sweep end (energy-jacobi)");
    diagram->add_option("--steps", a.steps, "sweep point count (energy-jacobi)");
    diagram->add_option("--k-max", a.k_max, "max torus k (life-of-tori)");
    diagram->add_option("--format", a.format, "json|csv (default csv)");
    diagram->add_option("--output", a.output, "write to file instead of stdout");

    auto* scan = app.add_subcommand("convexity-scan", "tangential-Hessian scan of {K_c = 0}");
    scan->add_option("--c", a.c, "Jacobi parameter (>= 1.4)")->required();
    scan->add_option("--samples", a.samples, "sample count");
    scan->add_option("--seed", a.seed, "RNG seed");
    scan->add_option("--format", a.format, "json|csv (default json)");
    scan->add_option("--output", a.output, "write to file instead of stdout");

    auto* verify = app.add_subcommand("verify", "run the full acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (catalog->parsed()) return run_catalog(a);
        if (cz->parsed()) return run_cz_index(a);
        if (diagram->parsed()) return run_diagram(a);
        if (scan->parsed()) return run_convexity_scan(a);
        if (verify->parsed()) return run_verify();
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 70;
    }
    return kExitUsage;
}
