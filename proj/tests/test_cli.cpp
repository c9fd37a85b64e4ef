#include "doctest.h"

#include "paretokit/cli.hpp"
#include "paretokit/result_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace paretokit;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome cli(std::vector<std::string> args) {
    args.insert(args.begin(), "paretokit");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out, err;
    const int code = parse_and_run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("defaults run NSGA-II on DTLZ2") {
    const auto r = cli({"--evaluation", "1000"});
    REQUIRE(r.code == 0);
    const RunResult res = parse_result(r.out);
    CHECK(res.config.algorithm == "NSGAII");
    CHECK(res.config.problem == "DTLZ2");
    CHECK(res.config.N == 100);
    CHECK(res.config.M == 3);
    CHECK(res.config.D == 12);
    CHECK(res.config.op == "EAreal");
    CHECK(res.config.seed == 1);
    CHECK(res.snapshots.size() == 10);
    CHECK(r.err.find("IGD") != std::string::npos);
}

TEST_CASE("run settings reach the configuration") {
    const auto r = cli({"--algorithm", "SPEA2", "--problem", "DTLZ2", "--N", "50", "--M", "5", "--D", "14",
                        "--evaluation", "500", "--run", "3", "--EAreal-parameter", "1,20,1,20"});
    REQUIRE(r.code == 0);
    const RunResult res = parse_result(r.out);
    CHECK(res.config.algorithm == "SPEA2");
    CHECK(res.config.N == 50);
    CHECK(res.config.M == 5);
    CHECK(res.config.D == 14);
    CHECK(res.config.run_no == 3);
    CHECK(res.config.seed == 3);
    CHECK(res.config.function_params.at("EAreal") == std::vector<double>{1, 20, 1, 20});
    CHECK(res.final_population.front().obj().size() == 5);
}

TEST_CASE("save mode writes the result file") {
    const fs::path folder = fs::temp_directory_path() / "paretokit_cli_save";
    fs::remove_all(folder);
    const auto r = cli({"--algorithm", "IBEA", "--problem", "ZDT1", "--evaluation", "500", "--mode", "2", "--folder",
                        folder.string()});
    REQUIRE(r.code == 0);
    const fs::path expected = folder / "IBEA" / "ZDT1_M2_D30_R1.result";
    CHECK(fs::exists(expected));
    CHECK(r.out.find(expected.string()) != std::string::npos);
    CHECK(load_result(expected).config.algorithm == "IBEA");
}

TEST_CASE("identical invocations are identical") {
    const auto a = cli({"--algorithm", "MOEAD", "--problem", "ZDT2", "--evaluation", "800", "--seed", "9"});
    const auto b = cli({"--algorithm", "MOEAD", "--problem", "ZDT2", "--evaluation", "800", "--seed", "9"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const auto c = cli({"--algorithm", "MOEAD", "--problem", "ZDT2", "--evaluation", "800", "--seed", "10"});
    CHECK(a.out != c.out);
}

TEST_CASE("bad input exits with code 2") {
    CHECK(cli({"--algorithm", "NoSuch"}).code == 2);
    CHECK(cli({"--problem", "NoSuch"}).code == 2);
    CHECK(cli({"--operator", "NoSuch"}).code == 2);
    CHECK(cli({"--N", "abc"}).code == 2);
    CHECK(cli({"--N", "0"}).code == 2);
    CHECK(cli({"--evaluation", "-5"}).code == 2);
    CHECK(cli({"--mode", "3"}).code == 2);
    CHECK(cli({"--EAreal-parameter", "1,x"}).code == 2);
    CHECK(cli({"--EAreal-parameter", "1,2,3,4,5"}).code == 2);
    CHECK(cli({"--problem", "ZDT5", "--operator", "EAreal"}).code == 2);
    const auto r = cli({"--algorithm", "NoSuch"});
    CHECK(r.err.find("NSGAII") != std::string::npos);
}

TEST_CASE("list output is machine readable") {
    const auto r = cli({"list"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    int functions = 0;
    bool kappa = false;
    while (std::getline(in, line)) {
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, '\t')) {
            fields.push_back(f);
        }
        REQUIRE(fields.size() >= 4);
        if (fields[0] == "function") {
            ++functions;
        } else {
            CHECK(fields[0] == "param");
            kappa = kappa || (fields[1] == "IBEA" && fields[2] == "kappa");
        }
    }
    CHECK(functions >= 5 + 13 + 3 + 7);
    CHECK(kappa);
    const auto j = nlohmann::json::parse(cli({"list", "--json"}).out);
    CHECK(j.contains("algorithms"));
    CHECK(j.contains("problems"));
}

TEST_CASE("experiment subcommand writes tables") {
    const fs::path dir = fs::temp_directory_path() / "paretokit_cli_exp";
    fs::remove_all(dir);
    fs::create_directories(dir);
    {
        std::ofstream spec(dir / "spec.json");
        spec << R"({"algorithms":["NSGAII","IBEA"],"problems":[{"name":"ZDT1","N":20,"evaluation":200}],
                    "runs":2,"indicators":["IGD","HV"],"folder":")"
             << (dir / "out").string() << R"(","pf_samples":200})";
    }
    const auto r = cli({"experiment", (dir / "spec.json").string()});
    CHECK(r.code == 0);
    CHECK(fs::exists(dir / "out" / "IGD.tex"));
    CHECK(fs::exists(dir / "out" / "HV.csv"));
    CHECK(cli({"experiment", (dir / "missing.json").string()}).code != 0);
}
