#ifndef PARETOKIT_KERNEL_HPP
#define PARETOKIT_KERNEL_HPP

#include "paretokit/core.hpp"
#include "paretokit/individual.hpp"
#include "paretokit/problem.hpp"
#include "paretokit/registry.hpp"
#include "paretokit/rng.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace paretokit {

enum class RunMode { display = 1, save = 2 };

using ParamMap = std::map<std::string, std::vector<double>>;

/// Settings for one run. M, D and operator may be left at 0 / empty to take
/// the problem's (or algorithm's) defaults; Run finalizes them along with the
/// bounds and encoding, after which the configuration is read-only.
struct RunConfig {
    std::string algorithm = "NSGAII";
    std::string problem = "DTLZ2";
    std::string op;
    int N = 100;
    int M = 0;
    int D = 0;
    long long max_evaluations = 10000;
    int run_no = 1;
    RunMode mode = RunMode::display;
    std::uint64_t seed = 1;
    ParamMap function_params;
    int snapshot_stride = 1; // keep every k-th generation (the final one always)

    // Filled in by problem initialization.
    Vector lower;
    Vector upper;
    Encoding encoding = Encoding::real;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Rejects non-positive sizes and budgets.
void validate(const RunConfig& config);

struct EvaluationLedger {
    long long consumed = 0;
    long long budget = 0;

    bool exhausted() const noexcept { return consumed >= budget; }
};

struct Snapshot {
    int generation = 0;
    long long evaluations = 0;
    Population population;

    friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

using SnapshotObserver = std::function<void(const Snapshot&)>;

struct RunResult {
    RunConfig config;
    int population_size = 0; // effective N (NSGA-III may round up)
    std::vector<Snapshot> snapshots;
    Population final_population;
    long long evaluations = 0;
    double wall_seconds = 0.0; // not serialized

    bool operator==(const RunResult& o) const {
        return config == o.config && population_size == o.population_size && snapshots == o.snapshots &&
               final_population == o.final_population && evaluations == o.evaluations;
    }
};

/// Execution context for one run: configuration, problem instance, random
/// stream, evaluation ledger and snapshot record. Every Individual of the run
/// is produced through this object so the ledger counts all evaluations.
class Run {
public:
    explicit Run(RunConfig config, const Registry& registry = builtin_registry());

    Run(const Run&) = delete;
    Run& operator=(const Run&) = delete;
    Run(Run&&) = default;

    const RunConfig& config() const noexcept { return config_; }
    const Problem& problem() const noexcept { return *problem_; }
    const Registry& registry() const noexcept { return *registry_; }
    const EvaluationLedger& ledger() const noexcept { return ledger_; }
    Rng& rng() noexcept { return rng_; }

    Population initialization(Index size);
    Population spawn(const Matrix& dec);
    Population spawn(const Matrix& dec, std::span<const AuxiliaryMap> add);

    // Records a snapshot; false once the budget is spent, at which point pop
    // becomes the final output.
    bool not_terminated(const Population& pop);

    Population variation(const Population& parents, std::optional<Index> count = std::nullopt);

    // User values for `function_name` positionally, defaults elsewhere.
    std::vector<double> parameter_set(const std::string& function_name, std::span<const double> defaults) const;
    // Same, with defaults taken from the registered metadata.
    std::vector<double> parameter_set(const std::string& function_name) const;

    void set_population_size(int n) { result_.population_size = n; }
    // Called with each recorded snapshot, on the thread running the algorithm.
    void set_observer(SnapshotObserver observer) { observer_ = std::move(observer); }
    const RunResult& result() const noexcept { return result_; }
    RunResult take_result() { return std::move(result_); }
    bool finished() const noexcept { return finished_; }

private:
    RunConfig config_;
    const Registry* registry_;
    std::unique_ptr<Problem> problem_;
    Rng rng_;
    EvaluationLedger ledger_;
    RunResult result_;
    SnapshotObserver observer_;
    int generation_ = 0;
    bool finished_ = false;
};

// Positional override: errors when `supplied` is longer than `defaults`.
std::vector<double> parameter_set(const ParamMap& params, const std::string& function_name,
                                  std::span<const double> defaults);

// Fills defaults, bounds and encoding from the problem and algorithm.
RunConfig finalize_config(RunConfig config, const Registry& registry = builtin_registry());

// Runs the configured algorithm to termination.
RunResult run_algorithm(const RunConfig& config, const Registry& registry = builtin_registry(),
                        SnapshotObserver observer = {});

} // namespace paretokit

#endif // PARETOKIT_KERNEL_HPP
