#ifndef PARETOKIT_EXPERIMENT_HPP
#define PARETOKIT_EXPERIMENT_HPP

#include "paretokit/kernel.hpp"
#include "paretokit/stats.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace paretokit {

struct AlgorithmSetting {
    std::string name;
    std::string label; // column and folder name; defaults to name
    std::string op;
    ParamMap params;

    const std::string& column() const { return label.empty() ? name : label; }
};

struct ProblemSetting {
    std::string name;
    int M = 0;
    int D = 0;
    int N = 100;
    long long max_evaluations = 10000;
};

struct ExperimentSpec {
    std::vector<AlgorithmSetting> algorithms;
    std::vector<ProblemSetting> problems;
    int runs = 1;
    std::vector<std::string> indicators{"IGD"};
    std::filesystem::path folder = "results";
    int parallelism = 1;
    std::uint64_t seed = 1;
    double alpha = 0.05;
    Index pf_samples = 10000;
};

ExperimentSpec experiment_spec_from_json(const nlohmann::json& j);
nlohmann::json experiment_spec_to_json(const ExperimentSpec& spec);
ExperimentSpec load_experiment_spec(const std::filesystem::path& path);

struct Cell {
    std::size_t algorithm = 0;
    std::size_t problem = 0;
    int run = 1;
    RunConfig config;
    std::filesystem::path path;
};

// Every (algorithm, problem setting, run) cell with its finalized
// configuration, derived seed and result path. Rejects unknown names,
// duplicate columns, duplicate settings and seed collisions.
std::vector<Cell> experiment_cells(const ExperimentSpec& spec, const Registry& registry = builtin_registry());

std::uint64_t cell_seed(std::uint64_t base, const std::string& algorithm, const std::string& setting, int run);

struct CellFailure {
    std::string algorithm;
    std::string problem;
    int M = 0;
    int D = 0;
    int run = 0;
    std::string message;
};

struct ExperimentOutcome {
    std::size_t total = 0;
    std::size_t executed = 0;
    std::size_t skipped = 0;
    std::vector<CellFailure> failures;
};

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

// Runs the missing cells; present result files are taken as complete.
ExperimentOutcome run_experiment(const ExperimentSpec& spec, const Registry& registry = builtin_registry(),
                                 const ProgressFn& progress = {});

// Number of cells whose result file exists.
std::size_t completed_cells(const ExperimentSpec& spec, const Registry& registry = builtin_registry());

struct TableCell {
    std::vector<double> values;
    std::optional<double> mean;
    std::optional<double> std;
    Sign sign = Sign::none;
    bool best = false;
};

struct Tally {
    int better = 0;
    int worse = 0;
    int similar = 0;
};

struct TableRow {
    std::string problem;
    int M = 0;
    int D = 0;
    std::vector<TableCell> cells;
};

struct ExperimentTable {
    std::string indicator;
    Direction direction = Direction::minimize;
    std::vector<std::string> columns;
    std::size_t control = 0;
    std::vector<TableRow> rows;
    std::vector<Tally> footer; // per column; the control entry stays zero
};

/// Fills statistics, signs, best flags and the footer from the raw values in
/// each row's cells. Empty cells have no mean and take no part in the
/// comparison.
void summarize_table(ExperimentTable& table, double alpha = 0.05);

// Indicator of each run's final population against the problem's PF sample.
// control: column name or label; empty selects the last column.
ExperimentTable aggregate_table(const ExperimentSpec& spec, const std::string& indicator,
                                const std::string& control = "", const Registry& registry = builtin_registry());

// "1.2629e-1": printf scientific with `precision` digits after the point and
// the exponent's leading zeros removed.
std::string format_scientific(double value, int precision);
// "mean (std) $sign$" as in the LaTeX table, without the highlight.
std::string format_cell(const TableCell& cell);

std::string export_latex(const ExperimentTable& table);
std::string export_csv(const ExperimentTable& table);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};
CsvTable parse_csv(const std::string& text);

} // namespace paretokit

#endif // PARETOKIT_EXPERIMENT_HPP
