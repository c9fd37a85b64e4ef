#include "doctest.h"

#include "paretokit/result_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace paretokit;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("paretokit_io_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

RunResult sample_run() {
    RunConfig c;
    c.algorithm = "NSGAII";
    c.problem = "ZDT1";
    c.N = 20;
    c.max_evaluations = 2000;
    c.seed = 42;
    c.function_params["EAreal"] = {1, 15};
    return run_algorithm(c);
}

} // namespace

TEST_CASE("save, load and save again is byte identical") {
    const fs::path dir = scratch("roundtrip");
    const RunResult r = sample_run();
    CHECK(r.snapshots.size() == 100);
    save_result(r, dir / "a.result");
    const RunResult back = load_result(dir / "a.result");
    CHECK(back == r);
    CHECK(back.snapshots.size() == 100);
    save_result(back, dir / "b.result");
    CHECK(slurp(dir / "a.result") == slurp(dir / "b.result"));
    CHECK_FALSE(fs::exists(dir / "a.result.partial"));
}

TEST_CASE("constraints and auxiliary data survive") {
    Population pop;
    Vector d(2), o(2), c(1);
    d << 0.25, 1.0 / 3.0;
    o << 1e-300, 5e300;
    c << -0.5;
    pop.emplace_back(d, o, c, AuxiliaryMap{{"velocity", (Vector(2) << 0.1, -0.2).finished()}});
    const Population back = population_from_json(population_to_json(pop));
    CHECK(back == pop);
}

TEST_CASE("truncated files raise a parse error with an offset") {
    const std::string text = serialize_result(sample_run());
    const std::string cut = text.substr(0, text.size() / 2);
    try {
        parse_result(cut);
        FAIL("no exception");
    } catch (const ParseError& e) {
        CHECK(e.offset() <= cut.size());
        CHECK(e.offset() > 0);
    }
    const auto last_line = text.rfind('{');
    CHECK_THROWS_AS(parse_result(text.substr(0, last_line)), ParseError);
    CHECK_THROWS_AS(parse_result(""), ParseError);
}

TEST_CASE("schema version mismatch") {
    std::string text = serialize_result(sample_run());
    const auto at = text.find("\"version\":1");
    REQUIRE(at != std::string::npos);
    text.replace(at, 11, "\"version\":2");
    try {
        parse_result(text);
        FAIL("no exception");
    } catch (const SchemaError& e) {
        CHECK(e.version() == 2);
    }
}

TEST_CASE("config json") {
    RunConfig c;
    c.algorithm = "IBEA";
    c.function_params["IBEA"] = {0.1};
    const RunConfig back = config_from_json(config_to_json(c));
    CHECK(back == c);
    auto j = config_to_json(c);
    j["colour"] = "red";
    CHECK_THROWS_AS(config_from_json(j), ConfigError);
}

TEST_CASE("result path layout") {
    CHECK(result_path("out", "NSGAII", "DTLZ2", 3, 12, 7) == fs::path("out/NSGAII/DTLZ2_M3_D12_R7.result"));
}
