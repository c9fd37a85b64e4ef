#include "paretokit/cli.hpp"

#include "paretokit/experiment.hpp"
#include "paretokit/indicators.hpp"
#include "paretokit/kernel.hpp"
#include "paretokit/result_io.hpp"
#include "paretokit/server.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "CLI11.hpp"

namespace paretokit {

using nlohmann::json;

namespace {

json info_to_json(const FunctionInfo& info) {
    json params = json::array();
    for (const auto& p : info.params) {
        params.push_back({{"name", p.name}, {"default", p.default_value}, {"help", p.help}});
    }
    return json{{"name", info.name},
                {"kind", to_string(info.kind)},
                {"labels", info.labels},
                {"description", info.description},
                {"parameters", params}};
}

std::string join(const std::vector<std::string>& items, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        out += (i ? sep : "") + items[i];
    }
    return out;
}

std::vector<double> parse_number_list(const std::string& flag, const std::string& text) {
    std::vector<double> values;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const std::string piece = text.substr(pos, comma - pos);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), v);
        if (piece.empty() || ec != std::errc() || ptr != piece.data() + piece.size()) {
            throw ConfigError("invalid value for " + flag + ": '" + text + "' is not a comma-separated number list");
        }
        values.push_back(v);
        pos = comma + 1;
    }
    return values;
}

void print_list(const Registry& registry, std::ostream& out) {
    for (const FunctionInfo* info : registry.all()) {
        out << "function\t" << to_string(info->kind) << '\t' << info->name << '\t' << join(info->labels, ",") << '\t'
            << info->description << '\n';
        for (const auto& p : info->params) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%g", p.default_value);
            out << "param\t" << info->name << '\t' << p.name << '\t' << buf << '\t' << p.help << '\n';
        }
    }
}

void print_summary(const RunResult& result, const Registry& registry, std::ostream& err) {
    const auto problem = registry.make_problem(result.config.problem, result.config.M, result.config.D);
    const Matrix pf = problem->sample_pf(10000);
    const Matrix pop = objs(result.final_population);
    char line[160];
    std::snprintf(line, sizeof line, "%s on %s (M=%d, D=%d, N=%d): %lld evaluations, %zu snapshots\n",
                  result.config.algorithm.c_str(), result.config.problem.c_str(), result.config.M, result.config.D,
                  result.population_size, result.evaluations, result.snapshots.size());
    err << line;
    if (pop.rows() == 0) {
        return;
    }
    for (const char* name : {"IGD", "HV", "GD", "Spacing"}) {
        if (pop.rows() < 2 && std::string(name) == "Spacing") {
            continue;
        }
        const auto r = evaluate_indicator(registry, name, pop, pf, result.config.function_params);
        std::snprintf(line, sizeof line, "  %-8s %.6e\n", name, r.score);
        err << line;
    }
}

int run_single(RunConfig config, const std::string& folder, const Registry& registry, std::ostream& out,
               std::ostream& err) {
    const RunResult result = run_algorithm(config, registry);
    if (config.mode == RunMode::display) {
        print_summary(result, registry, err);
        write_result(out, result);
    } else {
        const auto path = result_path(folder, result.config.algorithm, result.config.problem, result.config.M,
                                      result.config.D, result.config.run_no);
        save_result(result, path);
        out << path.string() << '\n';
    }
    return 0;
}

int run_experiment_command(const std::string& spec_file, const Registry& registry, std::ostream& out,
                           std::ostream& err) {
    const ExperimentSpec spec = load_experiment_spec(spec_file);
    const auto outcome = run_experiment(spec, registry, [&](std::size_t done, std::size_t total) {
        err << "\r" << done << "/" << total << " cells" << std::flush;
    });
    err << '\n';
    for (const auto& f : outcome.failures) {
        err << "cell " << f.algorithm << " " << f.problem << " M=" << f.M << " D=" << f.D << " run " << f.run
            << " failed: " << f.message << '\n';
    }
    for (const auto& indicator : spec.indicators) {
        const auto table = aggregate_table(spec, indicator, "", registry);
        for (const auto& [ext, text] : {std::pair{".tex", export_latex(table)}, std::pair{".csv", export_csv(table)}}) {
            const auto path = spec.folder / (indicator + ext);
            std::ofstream file(path, std::ios::binary);
            file << text;
            if (!file) {
                throw std::runtime_error("cannot write " + path.string());
            }
            out << path.string() << '\n';
        }
    }
    err << outcome.executed << " run, " << outcome.skipped << " already present, " << outcome.failures.size()
        << " failed\n";
    return outcome.failures.empty() ? 0 : 1;
}

} // namespace

json registry_to_json(const Registry& registry) {
    json out{{"algorithms", json::array()}, {"problems", json::array()}, {"operators", json::array()},
             {"indicators", json::array()}};
    for (const auto& name : registry.names(FunctionKind::algorithm)) {
        const auto& e = registry.algorithm(name);
        json j = info_to_json(e.info);
        j["default_operator"] = e.default_operator;
        out["algorithms"].push_back(j);
    }
    for (const auto& name : registry.names(FunctionKind::problem)) {
        const auto& e = registry.problem(name);
        json j = info_to_json(e.info);
        const auto p = e.make(0, 0);
        j["M"] = p->M();
        j["D"] = p->D();
        j["encoding"] = to_string(p->definition().encoding);
        j["default_operator"] = p->definition().default_operator;
        out["problems"].push_back(j);
    }
    for (const auto& name : registry.names(FunctionKind::op)) {
        const auto& e = registry.op(name);
        json j = info_to_json(e.info);
        j["encoding"] = to_string(e.encoding);
        out["operators"].push_back(j);
    }
    for (const auto& name : registry.names(FunctionKind::indicator)) {
        const auto& e = registry.indicator(name);
        json j = info_to_json(e.info);
        j["direction"] = to_string(e.direction);
        out["indicators"].push_back(j);
    }
    return out;
}

int parse_and_run(int argc, const char* const* argv, std::ostream& out, std::ostream& err, const Registry& registry) {
    CLI::App app{"Evolutionary multi-objective optimization runs and experiments"};
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    RunConfig config;
    int mode = 1;
    std::string folder = "results";
    app.add_option("--algorithm", config.algorithm, "Algorithm name")->capture_default_str();
    app.add_option("--problem", config.problem, "Problem name")->capture_default_str();
    app.add_option("--operator", config.op, "Variation operator (default: the algorithm's, else the problem's, EAreal)");
    app.add_option("--N", config.N, "Population size")->capture_default_str();
    app.add_option("--M", config.M, "Number of objectives (default: the problem's, 3 for DTLZ2)");
    app.add_option("--D", config.D, "Number of decision variables (default: the problem's, 12 for DTLZ2)");
    app.add_option("--evaluation", config.max_evaluations, "Maximum number of evaluations")->capture_default_str();
    app.add_option("--run", config.run_no, "Run number")->capture_default_str();
    app.add_option("--mode", mode, "1: display the result, 2: save it")->capture_default_str();
    auto* seed_opt = app.add_option("--seed", config.seed, "Random seed (default: the run number)");
    app.add_option("--snapshot-stride", config.snapshot_stride, "Keep every k-th generation")->capture_default_str();
    app.add_option("--folder", folder, "Results folder for mode 2")->capture_default_str();

    std::map<std::string, std::string> raw_params;
    for (const FunctionInfo* info : registry.all()) {
        if (info->params.empty()) {
            continue;
        }
        std::vector<std::string> names;
        for (const auto& p : info->params) {
            names.push_back(p.name);
        }
        app.add_option("--" + info->name + "-parameter", raw_params[info->name],
                       "Comma-separated " + join(names, ","));
    }

    auto* list = app.add_subcommand("list", "List registered functions and their parameters");
    bool list_json = false;
    list->add_flag("--json", list_json, "Emit JSON");

    auto* experiment = app.add_subcommand("experiment", "Run an experiment grid and export its tables");
    std::string spec_file;
    experiment->add_option("specfile", spec_file, "Experiment spec (JSON)")->required();

    auto* serve = app.add_subcommand("serve", "Start the HTTP API");
    ServerOptions server_options;
    serve->add_option("--port", server_options.port, "Port")->capture_default_str();
    serve->add_option("--host", server_options.host, "Bind address")->capture_default_str();
    serve->add_option("--folder", server_options.folder, "Results folder")->capture_default_str();
    serve->add_option("--static", server_options.static_dir, "Directory served at /");

    app.require_subcommand(0, 1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return 2;
    }

    try {
        if (*list) {
            if (list_json) {
                out << registry_to_json(registry).dump(2) << '\n';
            } else {
                print_list(registry, out);
            }
            return 0;
        }
        if (*experiment) {
            return run_experiment_command(spec_file, registry, out, err);
        }
        if (*serve) {
            server_options.registry = &registry;
            return serve_forever(server_options, err);
        }
        if (mode != 1 && mode != 2) {
            throw ConfigError("invalid value for --mode: must be 1 or 2");
        }
        config.mode = static_cast<RunMode>(mode);
        if (seed_opt->count() == 0) {
            config.seed = static_cast<std::uint64_t>(config.run_no);
        }
        for (const auto& [name, text] : raw_params) {
            if (!text.empty()) {
                config.function_params[name] = parse_number_list("--" + name + "-parameter", text);
            }
        }
        finalize_config(config, registry);
        return run_single(config, folder, registry, out, err);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace paretokit
