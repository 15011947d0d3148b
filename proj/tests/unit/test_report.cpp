#include "ptolemy/errors.hpp"
#include "ptolemy/report.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

using namespace ptolemy;

TEST_CASE("empty report is valid") {
    Report r;
    CHECK(r.all_pass());
    auto j = nlohmann::json::parse(emit_report(r, "json"));
    CHECK(j["summary"]["checks"] == 0);
    CHECK(j["summary"]["all_pass"] == true);
    CHECK(j["checks"].empty());
    CHECK(emit_report(r, "csv") == "check_id,index,residual\n");
}

TEST_CASE("config validation") {
    SuiteConfig c;
    c.samples = 0;
    CHECK_THROWS_AS(validate(c), ConfigError);
    c.samples = 10;
    c.model = "hyperbolic";
    c.threads = 0;
    try {
        validate(c);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        std::string what = e.what();
        CHECK(what.find("model") != std::string::npos);
        CHECK(what.find("threads") != std::string::npos);
    }
    SuiteConfig ok;
    ok.suites = {"nope"};
    CHECK_THROWS_AS(validate(ok), ConfigError);
    ok.suites = {"slope"};
    ok.tolerances["slope.self"] = -1;
    CHECK_THROWS_AS(validate(ok), ConfigError);
}

TEST_CASE("config from json") {
    SuiteConfig c = config_from_json(R"({"model":"euclidean","dim":3,"suites":["ptolemy"],
        "samples":20,"seed":7,"tolerances":{"ptolemy.triangle":1e-6},"format":"csv"})");
    CHECK(c.model == "euclidean");
    CHECK(c.effective_dim() == 3);
    CHECK(c.suites == std::vector<std::string>{"ptolemy"});
    CHECK(*c.samples == 20);
    CHECK(c.seed == 7);
    CHECK(c.tolerances.at("ptolemy.triangle") == 1e-6);
    CHECK(c.format == "csv");
    CHECK_THROWS_AS(config_from_json(R"({"sample":3})"), ConfigError);
    CHECK_THROWS_AS(config_from_json(R"({"dim":"two"})"), ConfigError);
    CHECK_THROWS_AS(config_from_json("{"), ConfigError);
    CHECK(SuiteConfig{}.effective_dim() == 1);
}

TEST_CASE("registry covers every suite with unique ids") {
    std::set<std::string> ids, suites;
    for (const auto& d : check_registry()) {
        CHECK(ids.insert(d.id).second);
        suites.insert(d.suite);
        CHECK_FALSE(d.anchor.empty());
    }
    CHECK(suites.size() == all_suites().size());
}

TEST_CASE("tolerance precedence and pass rule") {
    CheckDef d{"demo.check", "demo", "x = y", 3, true, 1e-9, 1e-7,
               [](const ModelPtr&, long n, Rng&) {
                   CheckOutput o;
                   o.residuals.assign(static_cast<std::size_t>(n), 1e-8);
                   return o;
               }};
    SuiteConfig c;
    auto H = make_model("heisenberg", 1);
    CheckRecord r = run_check(d, c, H);
    CHECK(r.tol == 1e-7);
    CHECK(r.pass);
    CHECK(r.samples == 3);
    CHECK_FALSE(r.seconds.has_value());
    c.tolerances["demo.check"] = 1e-9;
    CHECK_FALSE(run_check(d, c, H).pass);
    c.tol = 1e-8;
    CHECK(run_check(d, c, H).pass);
    c.samples = 5;
    c.timing = true;
    CheckRecord t = run_check(d, c, H);
    CHECK(t.samples == 5);
    CHECK(t.seconds.has_value());
}

TEST_CASE("errors inside a check fail it") {
    CheckDef d{"demo.throws", "demo", "x", 1, true, 1, 1,
               [](const ModelPtr&, long, Rng&) -> CheckOutput { throw NonConvergence("boom"); }};
    CheckRecord r = run_check(d, SuiteConfig{}, make_model("euclidean", 2));
    CHECK_FALSE(r.pass);
    CHECK(std::isinf(r.max_residual));
    CHECK(r.note.find("boom") != std::string::npos);
}

TEST_CASE("histogram bins") {
    auto h = residual_histogram({0.0, 1e-20, 3e-16, 5e-10, 0.5, 2.0, NAN});
    REQUIRE(h.size() == 18);
    CHECK(h[0] == 2);
    CHECK(h[1] == 1);
    CHECK(h[7] == 1);
    CHECK(h[16] == 1);
    CHECK(h[17] == 2);
}

TEST_CASE("runs are deterministic across thread counts") {
    SuiteConfig c;
    c.suites = {"ptolemy", "slope"};
    c.samples = 40;
    std::string one = emit_report(run_suite(c), "json");
    c.threads = 3;
    std::string three = emit_report(run_suite(c), "json");
    CHECK(one == three);
    c.seed = 99;
    CHECK(emit_report(run_suite(c), "json") != one);
}

TEST_CASE("csv export and file output") {
    SuiteConfig c;
    c.model = "euclidean";
    c.suites = {"ptolemy"};
    c.samples = 4;
    Report r = run_suite(c);
    std::string csv = emit_report(r, "csv");
    CHECK(csv.rfind("check_id,index,residual\n", 0) == 0);
    CHECK(csv.find("ptolemy.triangle,3,") != std::string::npos);

    auto path = std::filesystem::temp_directory_path() / "ptolemy_report_test.json";
    write_report(r, path.string(), "json");
    std::ifstream f(path);
    auto j = nlohmann::json::parse(f);
    CHECK(j["meta"]["model"] == "euclidean");
    CHECK(j["checks"].size() == r.checks.size());
    std::filesystem::remove(path);
    CHECK_THROWS_AS(write_report(r, "/nonexistent-dir/x.json", "json"), IOError);
    CHECK_THROWS_AS(emit_report(r, "xml"), ConfigError);
}
