#include <doctest.h>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rkp/serialize.hpp"

using namespace rkp;
using namespace rkp::io;

namespace {

std::vector<std::string> data_lines(const std::string& csv) {
    std::vector<std::string> out;
    std::istringstream is(csv);
    std::string line;
    while (std::getline(is, line))
        if (!line.empty() && line[0] != '#') out.push_back(line);
    return out;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) out.push_back(cell);
    return out;
}

}  // namespace

TEST_CASE("reals render with 17 significant digits and round-trip exactly") {
    for (double v : {1.5, 0.1, -0.054101966249684544, 2.0 * std::pow(2.0, -1.0 / 3.0),
                     3.141592653589793, 1e-17, -1234.5678901234567}) {
        const std::string s = fmt_real(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
    CHECK(fmt_real(1.5) == "1.5");
}

TEST_CASE("catalog CSV: column order, rows, assertion trailer") {
    const auto rep = catalog::dynamical_convexity_report(2.0, -1e300, 4, 4);
    const std::string csv = catalog_report(rep, Format::Csv);
    const auto lines = data_lines(csv);
    CHECK(lines[0] == "kind,branch,k,l,covering,E,L,name,iterate,contractible,cz_index");
    CHECK(lines.size() == rep.records.size() + 1);
    CHECK(csv.find("# assertion min_index_ge_3 pass") != std::string::npos);
    CHECK(csv.find("# assertion unique_contractible_index3_is_double_retrograde pass") !=
          std::string::npos);
    CHECK(csv.find("# assertion unique_index1_is_simple_retrograde pass") != std::string::npos);
    CHECK(csv.find('\r') == std::string::npos);  // LF endings only
}

TEST_CASE("catalog JSON parses and mirrors the CSV values") {
    const auto rep = catalog::dynamical_convexity_report(2.0, -1e300, 4, 4);
    const auto parsed = nlohmann::json::parse(catalog_report(rep, Format::Json));
    CHECK(parsed["c"] == 2.0);
    CHECK(parsed["records"].size() == rep.records.size());
    CHECK(parsed["assertions"]["min_index_ge_3"] == true);
    CHECK(parsed["assertions"]["unique_contractible_index3_is_double_retrograde"] == true);
    CHECK(parsed["assertions"]["unique_index1_is_simple_retrograde"] == true);

    // cross-check one circular row against the CSV rendering
    const auto csv_rows = data_lines(catalog_report(rep, Format::Csv));
    const auto cells = split(csv_rows[1]);
    const auto& first = parsed["records"][0];
    CHECK(cells[0] == first["kind"]);
    CHECK(std::strtod(cells[5].c_str(), nullptr) == first["E"].get<double>());
}

TEST_CASE("energy-Jacobi diagram rows at the critical value") {
    const std::string csv = energy_jacobi_diagram(1.5, 1.5, 1, Format::Csv);
    const auto lines = data_lines(csv);
    CHECK(lines[0] == "c,E_root,branch");
    REQUIRE(lines.size() == 4);  // header + retrograde + double root twice
    CHECK(lines[1] == "1.5,-2,retrograde");
    const auto direct = split(lines[2]);
    const auto unbounded = split(lines[3]);
    CHECK(std::strtod(direct[1].c_str(), nullptr) == doctest::Approx(-0.5).epsilon(1e-10));
    CHECK(direct[2] == "direct");
    CHECK(unbounded[2] == "unbounded");

    // away from the critical value: three distinct rows per c
    const auto sweep = data_lines(energy_jacobi_diagram(1.6, 2.6, 11, Format::Csv));
    CHECK(sweep.size() == 1 + 3 * 11);
}

TEST_CASE("life-of-tori diagram contains the named rows") {
    const std::string csv = life_of_tori_diagram(4, Format::Csv);
    const auto lines = data_lines(csv);
    CHECK(lines[0] == "k,l,name,E_kl,c_minus,c_plus,cz_index");
    CHECK(lines.size() == 1 + 6);  // (2,1) (3,1) (3,2) (4,1) (4,2) (4,3)
    bool hekuba = false, hilda = false, thule = false;
    for (const auto& line : lines) {
        if (line.find("Hekuba") != std::string::npos) hekuba = split(line).back() == "3";
        if (line.find("Hilda") != std::string::npos) hilda = split(line).back() == "5";
        if (line.find("Thule") != std::string::npos) thule = split(line).back() == "7";
    }
    CHECK(hekuba);
    CHECK(hilda);
    CHECK(thule);

    // parse(emit(x)) = x for every real cell
    const auto parsed = nlohmann::json::parse(life_of_tori_diagram(4, Format::Json));
    std::size_t row = 0;
    for (const auto& line : lines) {
        if (&line == &lines[0]) continue;
        const auto cells = split(line);
        const auto& jrow = parsed["rows"][row++];
        CHECK(std::strtod(cells[3].c_str(), nullptr) == jrow["E_kl"].get<double>());
        CHECK(std::strtod(cells[4].c_str(), nullptr) == jrow["c_minus"].get<double>());
        CHECK(std::strtod(cells[5].c_str(), nullptr) == jrow["c_plus"].get<double>());
    }
}

TEST_CASE("cz-index renderings") {
    CzResult plain;
    plain.E = -2.0;
    plain.sign = catalog::OrbitSign::Direct;
    plain.N = 1;
    plain.closed_form = catalog::CzIndex::of(3);
    CHECK(cz_result_plain(plain) == "3\n");

    plain.oracle = catalog::CzIndex::of(3);
    plain.agree = true;
    CHECK(cz_result_plain(plain) == "3 3 AGREE\n");

    plain.closed_form = catalog::CzIndex::make_resonant();
    plain.oracle = catalog::CzIndex::make_resonant();
    CHECK(cz_result_plain(plain) == "RESONANT RESONANT AGREE\n");

    plain.closed_form = catalog::CzIndex::of(5);
    plain.oracle = catalog::CzIndex::of(3);
    plain.agree = false;
    const auto parsed = nlohmann::json::parse(cz_result_json(plain));
    CHECK(parsed["closed_form"] == 5);
    CHECK(parsed["oracle"] == 3);
    CHECK(parsed["verdict"] == "DISAGREE");
}

TEST_CASE("convexity report: JSON and CSV agree to full printed precision") {
    const auto rep = lc::convexity_scan(1.5, 300, 7);
    const lc::Witness w = lc::convexity_witness();
    const std::string csv = convexity_report(rep, Format::Csv, &w);
    const auto parsed = nlohmann::json::parse(convexity_report(rep, Format::Json, &w));

    const auto cells = split(data_lines(csv)[1]);
    CHECK(std::strtod(cells[2].c_str(), nullptr) == parsed["min_eigenvalue"].get<double>());
    CHECK(std::strtod(cells[3].c_str(), nullptr) == parsed["argmin_point"]["u"][0].get<double>());
    CHECK(std::strtod(cells[10].c_str(), nullptr) ==
          parsed["argmin_direction"][3].get<double>());
    CHECK(parsed["witness"]["value"].get<double>() == w.hessian_value);
    CHECK(parsed["verdict"] == "non-convexity witnessed");
    CHECK(csv.find("# witness value") != std::string::npos);
}
