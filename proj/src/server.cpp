#include "paretokit/server.hpp"

#include "paretokit/cli.hpp"
#include "paretokit/experiment.hpp"
#include "paretokit/indicators.hpp"
#include "paretokit/kernel.hpp"
#include "paretokit/result_io.hpp"

#include <chrono>
#include <condition_variable>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>
#include <tuple>

#include "httplib.h"

namespace paretokit {

using nlohmann::json;

namespace {

struct RunEntry {
    std::string id;
    RunConfig config;
    std::string status = "running";
    std::string error;
    int population_size = 0;
    long long evaluations = 0;
    std::vector<Snapshot> snapshots;
    std::map<std::size_t, json> indicator_cache;
};

struct ExperimentEntry {
    std::string id;
    ExperimentSpec spec;
    std::string status = "running";
    std::size_t total = 0;
    std::size_t done = 0;
    std::vector<CellFailure> failures;
};

struct FieldError {
    std::string field;
    std::string message;
};

const char* const kSnapshotIndicators[] = {"IGD", "HV", "GD", "Spacing"};

std::string field_of(const std::string& message) {
    const std::string invalid = "invalid value for ";
    if (message.rfind(invalid, 0) == 0) {
        const auto rest = message.substr(invalid.size());
        return rest.substr(0, rest.find_first_of(": "));
    }
    const auto q = message.find('\'');
    if (message.rfind("unknown configuration field", 0) == 0 && q != std::string::npos) {
        return message.substr(q + 1, message.find('\'', q + 1) - q - 1);
    }
    return "config";
}

void send_json(httplib::Response& res, const json& body, int status = 200) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& message, json extra = json::object()) {
    extra["error"] = message;
    send_json(res, extra, status);
}

std::string format_id(char prefix, int n) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%c%06d", prefix, n);
    return buf;
}

int id_number(const std::string& id) {
    if (id.size() < 2) {
        return 0;
    }
    try {
        return std::stoi(id.substr(1));
    } catch (const std::exception&) {
        return 0;
    }
}

json failures_to_json(const std::vector<CellFailure>& failures) {
    json out = json::array();
    for (const auto& f : failures) {
        out.push_back({{"algorithm", f.algorithm},
                       {"problem", f.problem},
                       {"M", f.M},
                       {"D", f.D},
                       {"run", f.run},
                       {"message", f.message}});
    }
    return out;
}

json table_to_json(const ExperimentTable& t) {
    json rows = json::array();
    for (const auto& row : t.rows) {
        json cells = json::array();
        for (const auto& c : row.cells) {
            json cell{{"count", c.values.size()},
                      {"sign", to_string(c.sign)},
                      {"best", c.best},
                      {"text", format_cell(c)}};
            cell["mean"] = c.mean ? json(*c.mean) : json(nullptr);
            cell["std"] = c.std ? json(*c.std) : json(nullptr);
            cells.push_back(cell);
        }
        rows.push_back({{"problem", row.problem}, {"M", row.M}, {"D", row.D}, {"cells", cells}});
    }
    json footer = json::array();
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        if (c == t.control) {
            footer.push_back(nullptr);
        } else {
            const auto& f = t.footer[c];
            footer.push_back({{"better", f.better},
                              {"worse", f.worse},
                              {"similar", f.similar},
                              {"text", std::to_string(f.better) + "/" + std::to_string(f.worse) + "/" +
                                           std::to_string(f.similar)}});
        }
    }
    return json{{"indicator", t.indicator}, {"direction", to_string(t.direction)}, {"columns", t.columns},
                {"control", t.control},     {"rows", rows},                        {"footer", footer}};
}

} // namespace

struct ApiServer::State {
    ServerOptions options;
    const Registry* registry;
    httplib::Server http;
    std::thread listener;
    int bound_port = 0;

    std::mutex mutex;
    std::condition_variable changed;
    std::map<std::string, std::shared_ptr<RunEntry>> runs;
    std::map<std::string, std::shared_ptr<ExperimentEntry>> experiments;
    std::map<std::tuple<std::string, int, int>, std::shared_ptr<const Matrix>> pf_cache;
    int next_run = 1;
    int next_experiment = 1;
    int active = 0;
    bool stopping = false;

    explicit State(ServerOptions o) : options(std::move(o)), registry(options.registry ? options.registry : &builtin_registry()) {
        recover();
        routes();
    }

    std::filesystem::path runs_folder() const { return options.folder / "runs"; }
    std::filesystem::path experiments_folder() const { return options.folder / "experiments"; }

    void recover() {
        std::error_code ec;
        if (std::filesystem::is_directory(runs_folder(), ec)) {
            for (const auto& f : std::filesystem::directory_iterator(runs_folder())) {
                if (f.path().extension() != ".result") {
                    continue;
                }
                try {
                    RunResult r = load_result(f.path());
                    auto e = std::make_shared<RunEntry>();
                    e->id = f.path().stem().string();
                    e->config = r.config;
                    e->status = "finished";
                    e->population_size = r.population_size;
                    e->evaluations = r.evaluations;
                    e->snapshots = std::move(r.snapshots);
                    next_run = std::max(next_run, id_number(e->id) + 1);
                    runs[e->id] = e;
                } catch (const std::exception&) {
                    // Unreadable files are left alone and not listed.
                }
            }
        }
        if (std::filesystem::is_directory(experiments_folder(), ec)) {
            for (const auto& d : std::filesystem::directory_iterator(experiments_folder())) {
                const auto spec_path = d.path() / "spec.json";
                if (!std::filesystem::exists(spec_path)) {
                    continue;
                }
                try {
                    std::ifstream in(spec_path);
                    auto e = std::make_shared<ExperimentEntry>();
                    e->id = d.path().filename().string();
                    e->spec = experiment_spec_from_json(json::parse(in));
                    e->total = experiment_cells(e->spec, *registry).size();
                    e->done = completed_cells(e->spec, *registry);
                    e->status = e->done == e->total ? "finished" : "incomplete";
                    next_experiment = std::max(next_experiment, id_number(e->id) + 1);
                    experiments[e->id] = e;
                } catch (const std::exception&) {
                }
            }
        }
    }

    std::shared_ptr<const Matrix> pf_sample(const std::string& problem, int M, int D) {
        const auto key = std::make_tuple(problem, M, D);
        {
            std::lock_guard lock(mutex);
            const auto it = pf_cache.find(key);
            if (it != pf_cache.end()) {
                return it->second;
            }
        }
        auto pf = std::make_shared<const Matrix>(registry->make_problem(problem, M, D)->sample_pf(10000));
        std::lock_guard lock(mutex);
        return pf_cache.emplace(key, pf).first->second;
    }

    std::shared_ptr<RunEntry> find_run(const std::string& id) {
        std::lock_guard lock(mutex);
        const auto it = runs.find(id);
        return it == runs.end() ? nullptr : it->second;
    }

    std::shared_ptr<ExperimentEntry> find_experiment(const std::string& id) {
        std::lock_guard lock(mutex);
        const auto it = experiments.find(id);
        return it == experiments.end() ? nullptr : it->second;
    }

    template <class F>
    void launch(F&& task) {
        {
            std::lock_guard lock(mutex);
            ++active;
        }
        std::thread([this, task = std::forward<F>(task)]() mutable {
            task();
            std::lock_guard lock(mutex);
            --active;
            changed.notify_all();
        }).detach();
    }

    json run_summary(const RunEntry& e) const {
        return json{{"id", e.id},
                    {"status", e.status},
                    {"error", e.error},
                    {"config", config_to_json(e.config)},
                    {"population_size", e.population_size},
                    {"evaluations", e.evaluations},
                    {"snapshots", e.snapshots.size()}};
    }

    json snapshot_indicators(const RunConfig& config, const Population& pop) {
        json out = json::object();
        const Matrix obj = objs(pop);
        if (obj.rows() == 0) {
            return out;
        }
        const auto pf = pf_sample(config.problem, config.M, config.D);
        for (const char* name : kSnapshotIndicators) {
            try {
                out[name] = evaluate_indicator(*registry, name, obj, *pf, config.function_params).score;
            } catch (const DomainError&) {
                out[name] = nullptr;
            }
        }
        return out;
    }

    std::vector<FieldError> start_run(const json& body, std::string& id) {
        std::vector<FieldError> errors;
        RunConfig config;
        try {
            config = config_from_json(body);
        } catch (const ConfigError& e) {
            errors.push_back({field_of(e.what()), e.what()});
            return errors;
        }
        if (!registry->has(FunctionKind::algorithm, config.algorithm)) {
            errors.push_back({"algorithm", "unknown algorithm '" + config.algorithm + "'"});
        }
        if (!registry->has(FunctionKind::problem, config.problem)) {
            errors.push_back({"problem", "unknown problem '" + config.problem + "'"});
        }
        if (!config.op.empty() && !registry->has(FunctionKind::op, config.op)) {
            errors.push_back({"operator", "unknown operator '" + config.op + "'"});
        }
        if (!errors.empty()) {
            return errors;
        }
        try {
            config = finalize_config(config, *registry);
        } catch (const ConfigError& e) {
            errors.push_back({field_of(e.what()), e.what()});
            return errors;
        }
        auto entry = std::make_shared<RunEntry>();
        entry->config = config;
        entry->population_size = config.N;
        {
            std::lock_guard lock(mutex);
            entry->id = format_id('r', next_run++);
            runs[entry->id] = entry;
        }
        id = entry->id;
        launch([this, entry] {
            try {
                RunResult result = run_algorithm(entry->config, *registry, [this, entry](const Snapshot& s) {
                    std::lock_guard lock(mutex);
                    entry->snapshots.push_back(s);
                    entry->evaluations = s.evaluations;
                    changed.notify_all();
                });
                save_result(result, runs_folder() / (entry->id + ".result"));
                std::lock_guard lock(mutex);
                entry->population_size = result.population_size;
                entry->evaluations = result.evaluations;
                entry->snapshots = std::move(result.snapshots);
                entry->status = "finished";
            } catch (const std::exception& e) {
                std::lock_guard lock(mutex);
                entry->status = "failed";
                entry->error = e.what();
            }
            changed.notify_all();
        });
        return errors;
    }

    void routes() {
        http.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                  {"Access-Control-Allow-Headers", "Content-Type"},
                                  {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
        http.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
        http.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
            try {
                std::rethrow_exception(ep);
            } catch (const ConfigError& e) {
                send_error(res, 400, e.what());
            } catch (const DomainError& e) {
                send_error(res, 400, e.what());
            } catch (const std::exception& e) {
                send_error(res, 500, e.what());
            }
        });

        http.Get("/api/registry", [this](const httplib::Request&, httplib::Response& res) {
            send_json(res, registry_to_json(*registry));
        });

        http.Get(R"(/api/problems/([^/]+)/pf)", [this](const httplib::Request& req, httplib::Response& res) {
            const std::string name = req.matches[1];
            if (!registry->has(FunctionKind::problem, name)) {
                send_error(res, 404, "unknown problem '" + name + "'", {{"field", "problem"}});
                return;
            }
            auto int_param = [&](const char* key, int fallback) {
                if (!req.has_param(key)) {
                    return fallback;
                }
                try {
                    return std::stoi(req.get_param_value(key));
                } catch (const std::exception&) {
                    throw ConfigError(std::string("invalid value for ") + key);
                }
            };
            const auto problem = registry->make_problem(name, int_param("M", 0), int_param("D", 0));
            const int count = int_param("count", 1000);
            if (count < 1) {
                throw ConfigError("invalid value for count: must be positive");
            }
            const Matrix pf = problem->sample_pf(count);
            json points = json::array();
            for (Index i = 0; i < pf.rows(); ++i) {
                json p = json::array();
                for (Index k = 0; k < pf.cols(); ++k) {
                    p.push_back(pf(i, k));
                }
                points.push_back(std::move(p));
            }
            send_json(res, {{"problem", name}, {"M", problem->M()}, {"D", problem->D()}, {"points", points}});
        });

        http.Post("/api/runs", [this](const httplib::Request& req, httplib::Response& res) {
            json body;
            try {
                body = json::parse(req.body);
            } catch (const json::parse_error& e) {
                send_error(res, 400, std::string("malformed JSON: ") + e.what());
                return;
            }
            std::string id;
            const auto errors = start_run(body, id);
            if (!errors.empty()) {
                json list = json::array();
                for (const auto& e : errors) {
                    list.push_back({{"field", e.field}, {"message", e.message}});
                }
                send_json(res, {{"errors", list}}, 400);
                return;
            }
            send_json(res, {{"id", id}, {"status", "running"}}, 201);
        });

        http.Get("/api/runs", [this](const httplib::Request&, httplib::Response& res) {
            json list = json::array();
            std::lock_guard lock(mutex);
            for (const auto& [id, e] : runs) {
                list.push_back(run_summary(*e));
            }
            send_json(res, list);
        });

        http.Get(R"(/api/runs/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
            const auto e = find_run(req.matches[1]);
            if (!e) {
                send_error(res, 404, "unknown run id");
                return;
            }
            std::lock_guard lock(mutex);
            send_json(res, run_summary(*e));
        });

        http.Get(R"(/api/runs/([^/]+)/snapshots/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
            const auto e = find_run(req.matches[1]);
            if (!e) {
                send_error(res, 404, "unknown run id");
                return;
            }
            const std::string which = req.matches[2];
            std::unique_lock lock(mutex);
            const std::size_t count = e->snapshots.size();
            std::size_t index = 0;
            if (which == "latest") {
                if (count == 0) {
                    send_error(res, 404, "no snapshot recorded yet", {{"max_index", -1}});
                    return;
                }
                index = count - 1;
            } else {
                long long parsed = -1;
                try {
                    std::size_t used = 0;
                    parsed = std::stoll(which, &used);
                    if (used != which.size()) {
                        parsed = -1;
                    }
                } catch (const std::exception&) {
                }
                if (parsed < 0 || static_cast<std::size_t>(parsed) >= count) {
                    send_error(res, 416, "generation index out of range",
                               {{"max_index", static_cast<long long>(count) - 1}});
                    return;
                }
                index = static_cast<std::size_t>(parsed);
            }
            const Snapshot snapshot = e->snapshots[index];
            const RunConfig config = e->config;
            const auto cached = e->indicator_cache.find(index);
            json indicators = cached != e->indicator_cache.end() ? cached->second : json();
            lock.unlock();
            if (indicators.is_null()) {
                indicators = snapshot_indicators(config, snapshot.population);
                lock.lock();
                e->indicator_cache[index] = indicators;
                lock.unlock();
            }
            json body{{"run", e->id},
                      {"index", index},
                      {"generation", snapshot.generation},
                      {"evaluations", snapshot.evaluations},
                      {"indicators", indicators}};
            body.update(population_to_json(snapshot.population));
            send_json(res, body);
        });

        http.Get(R"(/api/runs/([^/]+)/trajectory)", [this](const httplib::Request& req, httplib::Response& res) {
            const auto e = find_run(req.matches[1]);
            if (!e) {
                send_error(res, 404, "unknown run id");
                return;
            }
            const std::string indicator = req.has_param("indicator") ? req.get_param_value("indicator") : "IGD";
            const auto& entry = registry->indicator(indicator);
            std::unique_lock lock(mutex);
            const auto snapshots = e->snapshots;
            const RunConfig config = e->config;
            lock.unlock();
            const auto pf = pf_sample(config.problem, config.M, config.D);
            json values = json::array();
            json generations = json::array();
            json evaluations = json::array();
            for (const auto& s : snapshots) {
                const Matrix obj = objs(s.population);
                try {
                    values.push_back(evaluate_indicator(*registry, indicator, obj, *pf, config.function_params).score);
                } catch (const DomainError&) {
                    values.push_back(nullptr);
                }
                generations.push_back(s.generation);
                evaluations.push_back(s.evaluations);
            }
            send_json(res, {{"run", e->id},
                            {"indicator", indicator},
                            {"direction", to_string(entry.direction)},
                            {"values", values},
                            {"generations", generations},
                            {"evaluations", evaluations}});
        });

        http.Get(R"(/api/runs/([^/]+)/events)", [this](const httplib::Request& req, httplib::Response& res) {
            const auto e = find_run(req.matches[1]);
            if (!e) {
                send_error(res, 404, "unknown run id");
                return;
            }
            res.set_header("Cache-Control", "no-cache");
            res.set_chunked_content_provider(
                "text/event-stream", [this, e, sent = std::size_t{0}](std::size_t, httplib::DataSink& sink) mutable {
                    std::unique_lock lock(mutex);
                    changed.wait_for(lock, std::chrono::milliseconds(500), [&] {
                        return stopping || e->snapshots.size() > sent || e->status != "running";
                    });
                    std::string chunk;
                    while (sent < e->snapshots.size()) {
                        chunk += "event: generation\ndata: " +
                                 json{{"index", sent}, {"generation", e->snapshots[sent].generation}}.dump() + "\n\n";
                        ++sent;
                    }
                    const bool over = stopping || e->status != "running";
                    const std::string status = e->status;
                    lock.unlock();
                    if (over) {
                        chunk += "event: end\ndata: " + json{{"status", status}}.dump() + "\n\n";
                    }
                    if (!chunk.empty() && !sink.write(chunk.data(), chunk.size())) {
                        return false;
                    }
                    if (over) {
                        sink.done();
                    }
                    return true;
                });
        });

        http.Post("/api/experiments", [this](const httplib::Request& req, httplib::Response& res) {
            json body;
            try {
                body = json::parse(req.body);
            } catch (const json::parse_error& e) {
                send_error(res, 400, std::string("malformed JSON: ") + e.what());
                return;
            }
            auto entry = std::make_shared<ExperimentEntry>();
            try {
                entry->spec = experiment_spec_from_json(body);
            } catch (const ConfigError& e) {
                send_json(res, {{"errors", json::array({{{"field", field_of(e.what())}, {"message", e.what()}}})}}, 400);
                return;
            }
            {
                std::lock_guard lock(mutex);
                entry->id = format_id('e', next_experiment++);
            }
            const auto folder = experiments_folder() / entry->id;
            entry->spec.folder = body.contains("folder") ? options.folder / entry->spec.folder : folder / "results";
            try {
                entry->total = experiment_cells(entry->spec, *registry).size();
            } catch (const ConfigError& e) {
                send_json(res, {{"errors", json::array({{{"field", field_of(e.what())}, {"message", e.what()}}})}}, 400);
                return;
            }
            std::filesystem::create_directories(folder);
            {
                std::ofstream out(folder / "spec.json");
                out << experiment_spec_to_json(entry->spec).dump(2) << '\n';
            }
            {
                std::lock_guard lock(mutex);
                experiments[entry->id] = entry;
            }
            launch([this, entry] {
                try {
                    auto outcome = run_experiment(entry->spec, *registry, [this, entry](std::size_t done, std::size_t) {
                        std::lock_guard lock(mutex);
                        entry->done = done;
                    });
                    std::lock_guard lock(mutex);
                    entry->failures = std::move(outcome.failures);
                    entry->status = "finished";
                } catch (const std::exception& e) {
                    std::lock_guard lock(mutex);
                    entry->status = "failed";
                    entry->failures.push_back({"", "", 0, 0, 0, e.what()});
                }
            });
            send_json(res, {{"id", entry->id}, {"total", entry->total}, {"status", "running"}}, 201);
        });

        http.Get(R"(/api/experiments/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
            const auto e = find_experiment(req.matches[1]);
            if (!e) {
                send_error(res, 404, "unknown experiment id");
                return;
            }
            std::lock_guard lock(mutex);
            send_json(res, {{"id", e->id},
                            {"status", e->status},
                            {"completed", e->done},
                            {"total", e->total},
                            {"failures", failures_to_json(e->failures)},
                            {"spec", experiment_spec_to_json(e->spec)}});
        });

        auto table_for = [this](const httplib::Request& req, httplib::Response& res) -> std::optional<ExperimentTable> {
            const auto e = find_experiment(req.matches[1]);
            if (!e) {
                send_error(res, 404, "unknown experiment id");
                return std::nullopt;
            }
            const std::string indicator = req.has_param("indicator") ? req.get_param_value("indicator")
                                                                      : e->spec.indicators.front();
            const std::string control = req.has_param("control") ? req.get_param_value("control") : "";
            return aggregate_table(e->spec, indicator, control, *registry);
        };

        http.Get(R"(/api/experiments/([^/]+)/table)", [table_for](const httplib::Request& req, httplib::Response& res) {
            if (const auto table = table_for(req, res)) {
                send_json(res, table_to_json(*table));
            }
        });

        http.Get(R"(/api/experiments/([^/]+)/export)", [table_for](const httplib::Request& req, httplib::Response& res) {
            const std::string format = req.has_param("format") ? req.get_param_value("format") : "tex";
            if (format != "tex" && format != "csv") {
                send_error(res, 400, "invalid value for format: expected tex or csv", {{"field", "format"}});
                return;
            }
            if (const auto table = table_for(req, res)) {
                const bool tex = format == "tex";
                res.set_header("Content-Disposition",
                               "attachment; filename=\"" + table->indicator + (tex ? ".tex\"" : ".csv\""));
                res.set_content(tex ? export_latex(*table) : export_csv(*table), tex ? "application/x-tex" : "text/csv");
            }
        });

        if (!options.static_dir.empty()) {
            http.set_mount_point("/", options.static_dir.string());
        }
    }
};

ApiServer::ApiServer(ServerOptions options) : state_(std::make_unique<State>(std::move(options))) {}

ApiServer::~ApiServer() {
    stop();
    wait_idle();
}

bool ApiServer::listen() {
    auto& s = *state_;
    if (s.options.port == 0) {
        s.bound_port = s.http.bind_to_any_port(s.options.host);
    } else if (s.http.bind_to_port(s.options.host, s.options.port)) {
        s.bound_port = s.options.port;
    } else {
        return false;
    }
    if (s.bound_port <= 0) {
        return false;
    }
    return s.http.listen_after_bind();
}

int ApiServer::start() {
    auto& s = *state_;
    if (s.options.port == 0) {
        s.bound_port = s.http.bind_to_any_port(s.options.host);
    } else if (s.http.bind_to_port(s.options.host, s.options.port)) {
        s.bound_port = s.options.port;
    } else {
        throw std::runtime_error("cannot bind " + s.options.host + ":" + std::to_string(s.options.port));
    }
    s.listener = std::thread([&s] { s.http.listen_after_bind(); });
    s.http.wait_until_ready();
    return s.bound_port;
}

void ApiServer::stop() {
    auto& s = *state_;
    {
        std::lock_guard lock(s.mutex);
        s.stopping = true;
        s.changed.notify_all();
    }
    s.http.stop();
    if (s.listener.joinable()) {
        s.listener.join();
    }
}

int ApiServer::port() const { return state_->bound_port; }

void ApiServer::wait_idle() {
    auto& s = *state_;
    std::unique_lock lock(s.mutex);
    s.changed.wait(lock, [&] { return s.active == 0; });
}

int serve_forever(const ServerOptions& options, std::ostream& log) {
    ApiServer server(options);
    log << "listening on http://" << options.host << ":" << options.port << '\n' << std::flush;
    if (!server.listen()) {
        log << "error: cannot bind " << options.host << ":" << options.port << '\n';
        return 1;
    }
    return 0;
}

} // namespace paretokit
