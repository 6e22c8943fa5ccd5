#include <doctest.h>

#include "kstab/casebook.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include <json.hpp>

using namespace kstab;

namespace {

std::string slurp(const std::string& id) {
    std::ifstream in(case_path(default_cases_dir(), id));
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_CASE("every manifest case loads, validates, and does so quickly") {
    for (const auto& entry : manifest().entries) {
        auto t0 = std::chrono::steady_clock::now();
        CaseSpec spec = load_case_file(case_path(default_cases_dir(), entry.id));
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
        CHECK(spec.id == entry.id);
        CHECK(spec.mechanism == entry.mechanism);
        CHECK(ms < 1000);
    }
}

TEST_CASE("manifest structure") {
    const Manifest& m = manifest();
    CHECK(m.entries.size() == 26);
    std::map<std::string, int> mechs;
    for (const auto& e : m.entries) {
        mechs[e.mechanism]++;
        if (e.mechanism == "beta-pullback") {
            CHECK(m.find(e.parent) != nullptr);
        } else {
            CHECK(e.parent.empty());
        }
    }
    CHECK(mechs["degeneration"] == 2);
    CHECK(mechs["localization"] == 2);
    CHECK(mechs["beta"] == 13);
    CHECK(mechs["beta-pullback"] == 9);

    CHECK(m.find("2.36")->parent == "3.29");
    CHECK(m.find("2.36")->specialization == "a := 0");
    CHECK(m.find("2.30")->parent == "3.23");
    CHECK(m.find("2.21")->mechanism == "degeneration");
}

TEST_CASE("sparse tensor default: omitted zero entries are accepted") {
    auto doc = nlohmann::ordered_json::parse(slurp("3.21"));
    // the 3.21 tensor omits H1.H1.H1 etc. already; also drop a harmless zero
    CHECK_NOTHROW(load_case_json(doc.dump(), "inline"));

    // deleting a nonzero entry must trip the L^n reconstruction gate
    doc["intersections"].erase("E.E.E");
    CHECK_THROWS_AS(load_case_json(doc.dump(), "inline"), CaseDataError);
}

TEST_CASE("alpha arity errors are rejected") {
    auto doc = nlohmann::ordered_json::parse(slurp("2.26"));
    doc["localization"]["fixed_points"][0]["alphas"] = {1, 2};
    CHECK_THROWS_AS(load_case_json(doc.dump(), "inline"), CaseDataError);
}

TEST_CASE("unresolved names are rejected with a location") {
    auto doc = nlohmann::ordered_json::parse(slurp("3.21"));
    doc["divisors"]["S"]["schedules"][0]["chambers"][1]["orthogonality"] = {"nosuch"};
    try {
        load_case_json(doc.dump(), "inline");
        CHECK(false);
    } catch (const CaseDataError& e) {
        CHECK(std::string(e.what()).find("nosuch") != std::string::npos);
    }
}

TEST_CASE("tensor gate: a corrupted polarization fails mu reproduction") {
    auto doc = nlohmann::ordered_json::parse(slurp("3.22"));
    doc["polarization"]["H1"] = "a+2*c";
    CHECK_THROWS_AS(load_case_json(doc.dump(), "inline"), CaseDataError);
}

TEST_CASE("serialization round-trips to a semantically identical case") {
    for (const char* id : {"3.21", "3.18", "4.11", "2.26", "2.30", "2.21", "dP7"}) {
        CaseSpec spec = load_case_file(case_path(default_cases_dir(), id));
        std::string doc = serialize_case(spec);
        CaseSpec again = load_case_json(doc, "roundtrip");
        INFO(id);
        CHECK(semantically_equal(spec, again));
    }
}

TEST_CASE("expression strings in case files round-trip bit-exactly") {
    CaseSpec spec = load_case_file(case_path(default_cases_dir(), "3.21"));
    for (const auto& [name, poly] : spec.named) {
        Polynomial reparsed = parse_polynomial(poly.str(), poly.vars());
        CHECK(reparsed == poly);
    }
}
