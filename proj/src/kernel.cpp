#include "paretokit/kernel.hpp"

#include <chrono>

namespace paretokit {

void validate(const RunConfig& c) {
    auto require = [](bool ok, const char* field) {
        if (!ok) {
            throw ConfigError(std::string("invalid value for ") + field + ": must be positive");
        }
    };
    require(c.N > 0, "N");
    require(c.M >= 0, "M");
    require(c.D >= 0, "D");
    require(c.max_evaluations > 0, "evaluation");
    require(c.run_no > 0, "run");
    require(c.snapshot_stride > 0, "snapshot_stride");
    if (c.mode != RunMode::display && c.mode != RunMode::save) {
        throw ConfigError("invalid value for mode: must be 1 or 2");
    }
}

std::vector<double> parameter_set(const ParamMap& params, const std::string& function_name,
                                  std::span<const double> defaults) {
    std::vector<double> out(defaults.begin(), defaults.end());
    const auto it = params.find(function_name);
    if (it == params.end()) {
        return out;
    }
    const auto& supplied = it->second;
    if (supplied.size() > defaults.size()) {
        throw ConfigError(function_name + " accepts " + std::to_string(defaults.size()) + " parameter(s), got " +
                          std::to_string(supplied.size()));
    }
    for (std::size_t i = 0; i < supplied.size(); ++i) {
        out[i] = supplied[i];
    }
    return out;
}

RunConfig finalize_config(RunConfig config, const Registry& registry) {
    validate(config);
    const auto& algorithm = registry.algorithm(config.algorithm);
    const auto problem = registry.make_problem(config.problem, config.M, config.D);
    const auto& def = problem->definition();
    config.M = def.M;
    config.D = def.D;
    config.lower = def.lower;
    config.upper = def.upper;
    config.encoding = def.encoding;
    if (config.op.empty()) {
        config.op = algorithm.default_operator.empty() ? def.default_operator : algorithm.default_operator;
        // An algorithm's preferred operator may not fit this problem's encoding.
        if (registry.op(config.op).encoding != def.encoding) {
            config.op = def.default_operator;
        }
    }
    const auto& op = registry.op(config.op);
    if (op.encoding != def.encoding) {
        throw ConfigError("operator " + config.op + " works on " + to_string(op.encoding) +
                          " encoding but problem " + def.name + " uses " + to_string(def.encoding));
    }
    for (const auto& [name, values] : config.function_params) {
        const FunctionInfo* info = registry.info(name);
        if (info == nullptr) {
            throw ConfigError("parameters given for unknown function '" + name + "'");
        }
        if (values.size() > info->params.size()) {
            throw ConfigError(name + " accepts " + std::to_string(info->params.size()) + " parameter(s), got " +
                              std::to_string(values.size()));
        }
    }
    return config;
}

Run::Run(RunConfig config, const Registry& registry)
    : config_(finalize_config(std::move(config), registry)),
      registry_(&registry),
      problem_(registry.make_problem(config_.problem, config_.M, config_.D)),
      rng_(config_.seed) {
    ledger_.budget = config_.max_evaluations;
    result_.config = config_;
    result_.population_size = config_.N;
}

Population Run::initialization(Index size) {
    if (size <= 0) {
        return {};
    }
    if (ledger_.exhausted()) {
        throw RunTerminated("evaluation budget exhausted before initialization");
    }
    return spawn(problem_->random_decisions(size, rng_));
}

Population Run::spawn(const Matrix& dec) {
    return spawn(dec, {});
}

Population Run::spawn(const Matrix& dec, std::span<const AuxiliaryMap> add) {
    if (dec.rows() == 0) {
        return {};
    }
    Evaluation ev = problem_->evaluate(dec);
    Population out;
    out.reserve(static_cast<std::size_t>(dec.rows()));
    for (Index r = 0; r < dec.rows(); ++r) {
        AuxiliaryMap aux = static_cast<std::size_t>(r) < add.size() ? add[static_cast<std::size_t>(r)] : AuxiliaryMap{};
        out.emplace_back(dec.row(r).transpose(), ev.obj.row(r).transpose(), ev.con.row(r).transpose(), std::move(aux));
    }
    ledger_.consumed += dec.rows();
    result_.evaluations = ledger_.consumed;
    return out;
}

bool Run::not_terminated(const Population& pop) {
    if (finished_) {
        return false;
    }
    const int generation = generation_++;
    const bool keep_going = !ledger_.exhausted();
    if (!keep_going || generation % config_.snapshot_stride == 0) {
        result_.snapshots.push_back({generation, ledger_.consumed, pop});
        if (observer_) {
            observer_(result_.snapshots.back());
        }
    }
    if (!keep_going) {
        result_.final_population = pop;
        finished_ = true;
    }
    return keep_going;
}

Population Run::variation(const Population& parents, std::optional<Index> count) {
    if (parents.empty()) {
        throw DomainError("variation: no parents given");
    }
    const auto& op = registry_->op(config_.op);
    return op.apply(*this, parents, count);
}

std::vector<double> Run::parameter_set(const std::string& function_name, std::span<const double> defaults) const {
    return paretokit::parameter_set(config_.function_params, function_name, defaults);
}

std::vector<double> Run::parameter_set(const std::string& function_name) const {
    const FunctionInfo* info = registry_->info(function_name);
    if (info == nullptr) {
        throw ConfigError("no parameter metadata for '" + function_name + "'");
    }
    const auto defaults = info->defaults();
    return parameter_set(function_name, defaults);
}

RunResult run_algorithm(const RunConfig& config, const Registry& registry, SnapshotObserver observer) {
    const auto start = std::chrono::steady_clock::now();
    Run run(config, registry);
    run.set_observer(std::move(observer));
    const auto& algorithm = registry.algorithm(run.config().algorithm);
    try {
        algorithm.body(run);
    } catch (const RunTerminated&) {
        // Budget ran out inside a factory call; whatever was recorded stands.
    }
    RunResult result = run.take_result();
    result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

} // namespace paretokit
