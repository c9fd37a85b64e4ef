#include "doctest.h"

#include "paretokit/experiment.hpp"
#include "paretokit/result_io.hpp"

#include <filesystem>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

using namespace paretokit;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("paretokit_exp_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

ExperimentSpec small_grid(const fs::path& folder, int runs) {
    ExperimentSpec spec;
    spec.algorithms = {{"NSGAII", "", "", {}}, {"SPEA2", "", "", {}}};
    spec.problems = {{"ZDT1", 0, 0, 20, 400}, {"ZDT2", 0, 0, 20, 400}, {"DTLZ2", 3, 0, 20, 400}};
    spec.runs = runs;
    spec.folder = folder;
    spec.pf_samples = 500;
    return spec;
}

ExperimentTable manual_table(std::vector<std::vector<double>> cells) {
    ExperimentTable t;
    t.indicator = "IGD";
    for (std::size_t i = 0; i < cells.size(); ++i) {
        t.columns.push_back("A" + std::to_string(i));
    }
    t.control = cells.size() - 1;
    TableRow row{"ZDT1", 2, 30, {}};
    for (auto& v : cells) {
        row.cells.push_back(TableCell{v, {}, {}, Sign::none, false});
    }
    t.rows.push_back(row);
    return t;
}

} // namespace

TEST_CASE("grid produces one file per cell and resumes") {
    const auto spec = small_grid(scratch("grid"), 5);
    const auto first = run_experiment(spec);
    CHECK(first.total == 30);
    CHECK(first.executed == 30);
    CHECK(first.failures.empty());
    std::size_t files = 0;
    for (const auto& e : fs::recursive_directory_iterator(spec.folder)) {
        files += e.path().extension() == ".result" ? 1 : 0;
    }
    CHECK(files == 30);
    CHECK(fs::exists(spec.folder / "SPEA2" / "DTLZ2_M3_D12_R5.result"));
    CHECK(completed_cells(spec) == 30);
    const auto again = run_experiment(spec);
    CHECK(again.executed == 0);
    CHECK(again.skipped == 30);
}

TEST_CASE("parallel grid matches sequential byte for byte") {
    auto one = small_grid(scratch("seq"), 2);
    auto many = small_grid(scratch("par"), 2);
    many.parallelism = 8;
    run_experiment(one);
    run_experiment(many);
    for (const auto& cell : experiment_cells(one)) {
        const fs::path rel = fs::relative(cell.path, one.folder);
        CHECK(slurp(cell.path) == slurp(many.folder / rel));
    }
}

TEST_CASE("cell seeds differ across cells") {
    const auto cells = experiment_cells(small_grid(scratch("seeds"), 5));
    std::set<std::uint64_t> seeds;
    for (const auto& c : cells) {
        seeds.insert(c.config.seed);
    }
    CHECK(seeds.size() == cells.size());
    CHECK(cell_seed(1, "NSGAII", "ZDT1_2_30_100_10000", 1) != cell_seed(1, "NSGAII", "ZDT1_2_30_100_10000", 2));
}

TEST_CASE("grid validation") {
    auto spec = small_grid(scratch("bad"), 1);
    spec.algorithms.push_back({"NSGAII", "", "", {}});
    CHECK_THROWS_AS(experiment_cells(spec), ConfigError);
    spec = small_grid(scratch("bad"), 1);
    spec.problems.push_back({"ZDT1", 2, 30, 20, 400});
    CHECK_THROWS_AS(experiment_cells(spec), ConfigError);
    spec = small_grid(scratch("bad"), 1);
    spec.algorithms[0].name = "NoSuch";
    CHECK_THROWS_AS(experiment_cells(spec), ConfigError);
}

TEST_CASE("spec json") {
    const auto j = nlohmann::json::parse(R"({"algorithms":["NSGAII",{"name":"MOEAD","label":"MOEAD-T5",
        "parameters":{"MOEAD":[5]}}],"problems":["ZDT1",{"name":"DTLZ2","M":5}],"runs":3,"indicators":["IGD","HV"]})");
    const auto spec = experiment_spec_from_json(j);
    CHECK(spec.algorithms.size() == 2);
    CHECK(spec.algorithms[1].column() == "MOEAD-T5");
    CHECK(spec.problems[1].M == 5);
    CHECK(spec.runs == 3);
    const auto back = experiment_spec_from_json(experiment_spec_to_json(spec));
    CHECK(experiment_spec_to_json(back) == experiment_spec_to_json(spec));
    CHECK(spec.algorithms[1].params.at("MOEAD") == std::vector<double>{5});
    CHECK_THROWS_AS(experiment_spec_from_json(nlohmann::json::parse(
                        R"({"algorithms":[{"name":"NSGAII","params":{}}],"problems":["ZDT1"]})")),
                    ConfigError);
    CHECK_THROWS_AS(experiment_spec_from_json(nlohmann::json::parse(
                        R"({"algorithms":["NSGAII"],"problems":[{"name":"ZDT1","max_evaluations":5}]})")),
                    ConfigError);
    CHECK_THROWS_AS(experiment_spec_from_json(nlohmann::json::parse(R"({"algorithms":["NSGAII"],"problems":["ZDT1"],"run":3})")),
                    ConfigError);
}

TEST_CASE("single runs format as zero deviation and similar") {
    const auto spec = small_grid(scratch("r1"), 1);
    run_experiment(spec);
    const auto table = aggregate_table(spec, "IGD");
    CHECK(table.control == 1);
    REQUIRE(table.rows.size() == 3);
    const auto text = format_cell(table.rows[0].cells[0]);
    CHECK(text.find("(0.00e+0) $\\approx$") != std::string::npos);
    const auto tex = export_latex(table);
    CHECK(tex.find("0/0/3") != std::string::npos);
}

TEST_CASE("scientific formatting") {
    CHECK(format_scientific(0.12629, 4) == "1.2629e-1");
    CHECK(format_scientific(16.835, 4) == "1.6835e+1");
    CHECK(format_scientific(0.0, 2) == "0.00e+0");
    CHECK(format_scientific(1.5e-12, 2) == "1.50e-12");
    CHECK(format_scientific(-2.5e100, 1) == "-2.5e+100");
}

TEST_CASE("csv export round-trips") {
    const auto spec = small_grid(scratch("csv"), 3);
    run_experiment(spec);
    const auto table = aggregate_table(spec, "HV");
    CHECK(table.direction == Direction::maximize);
    const auto csv = parse_csv(export_csv(table));
    REQUIRE(csv.header.size() == 9);
    CHECK(csv.header[0] == "Problem");
    CHECK(csv.header[3] == "NSGAII mean");
    CHECK(csv.header[8] == "SPEA2 sign");
    REQUIRE(csv.rows.size() == 4);
    CHECK(csv.rows[2][0] == "DTLZ2");
    CHECK(csv.rows[2][1] == "3");
    CHECK(csv.rows[3][0] == "+/-/~");
    for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t c = 0; c < 2; ++c) {
            const auto& cell = table.rows[r].cells[c];
            CHECK(std::stod(csv.rows[r][3 + 3 * c]) == doctest::Approx(*cell.mean).epsilon(1e-4));
            CHECK(std::stod(csv.rows[r][4 + 3 * c]) == doctest::Approx(*cell.std).epsilon(1e-2).scale(1e-3));
            CHECK((csv.rows[r][5 + 3 * c].find('*') != std::string::npos) == cell.best);
        }
    }
}

TEST_CASE("missing cells") {
    auto t = manual_table({{}, {0.1, 0.2, 0.3}});
    summarize_table(t);
    CHECK_FALSE(t.rows[0].cells[0].mean);
    CHECK(t.rows[0].cells[1].best);
    CHECK(export_latex(t).find("—") != std::string::npos);
    CHECK(export_csv(t).find("—") != std::string::npos);
}

TEST_CASE("ties go to the control column") {
    auto t = manual_table({{0.1, 0.2}, {0.1, 0.2}, {0.1, 0.2}});
    summarize_table(t);
    CHECK(t.rows[0].cells[2].best);
    CHECK_FALSE(t.rows[0].cells[0].best);
    t = manual_table({{0.1, 0.2}, {0.1, 0.2}, {0.5, 0.6}});
    summarize_table(t);
    CHECK(t.rows[0].cells[0].best);
    CHECK_FALSE(t.rows[0].cells[1].best);
}

TEST_CASE("signs and tallies") {
    auto t = manual_table({{1, 2, 3, 4, 5}, {11, 12, 13, 14, 15}, {6, 7, 8, 9, 10}});
    summarize_table(t);
    CHECK(t.rows[0].cells[0].sign == Sign::better);
    CHECK(t.rows[0].cells[1].sign == Sign::worse);
    CHECK(t.rows[0].cells[2].sign == Sign::none);
    CHECK(t.footer[0].better == 1);
    CHECK(t.footer[1].worse == 1);
    CHECK(*t.rows[0].cells[0].std == doctest::Approx(std::sqrt(2.5)));
}
