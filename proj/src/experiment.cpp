#include "paretokit/experiment.hpp"

#include "paretokit/indicators.hpp"
#include "paretokit/result_io.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

namespace paretokit {

using nlohmann::json;

namespace {

template <class T>
void read_field(const json& j, const char* key, T& target, const std::string& where) {
    if (!j.contains(key)) {
        return;
    }
    try {
        j.at(key).get_to(target);
    } catch (const json::exception&) {
        throw ConfigError("invalid value for " + where + key);
    }
}

ParamMap params_from_json(const json& j, const std::string& where) {
    ParamMap out;
    if (!j.is_object()) {
        throw ConfigError("invalid value for " + where + "parameters: expected an object");
    }
    for (const auto& [name, values] : j.items()) {
        try {
            out[name] = values.get<std::vector<double>>();
        } catch (const json::exception&) {
            throw ConfigError("invalid value for " + where + "parameters." + name);
        }
    }
    return out;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string setting_key(const RunConfig& c) {
    return c.problem + "_M" + std::to_string(c.M) + "_D" + std::to_string(c.D) + "_N" + std::to_string(c.N) + "_E" +
           std::to_string(c.max_evaluations);
}

double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_std(const std::vector<double>& v, double mean) {
    if (v.size() < 2) {
        return 0.0;
    }
    double ss = 0.0;
    for (double x : v) {
        ss += (x - mean) * (x - mean);
    }
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

const char* csv_sign(Sign s) {
    switch (s) {
    case Sign::better:
        return "+";
    case Sign::worse:
        return "-";
    case Sign::similar:
        return "~";
    case Sign::none:
        break;
    }
    return "";
}

const char* latex_sign(Sign s) {
    switch (s) {
    case Sign::better:
        return " $+$";
    case Sign::worse:
        return " $-$";
    case Sign::similar:
        return " $\\approx$";
    case Sign::none:
        break;
    }
    return "";
}

const char* const kMissing = "\xE2\x80\x94";

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

void reject_unknown(const json& j, std::initializer_list<const char*> known, const std::string& prefix) {
    for (const auto& [key, value] : j.items()) {
        if (std::none_of(known.begin(), known.end(), [&](const char* k) { return key == k; })) {
            throw ConfigError("unknown field " + prefix + key);
        }
    }
}

} // namespace

ExperimentSpec experiment_spec_from_json(const json& j) {
    if (!j.is_object()) {
        throw ConfigError("experiment spec must be an object");
    }
    reject_unknown(j, {"algorithms", "problems", "runs", "indicators", "folder", "parallelism", "seed", "alpha",
                       "pf_samples"},
                   "");
    ExperimentSpec spec;
    if (!j.contains("algorithms") || !j.at("algorithms").is_array() || j.at("algorithms").empty()) {
        throw ConfigError("invalid value for algorithms: expected a non-empty list");
    }
    for (const auto& a : j.at("algorithms")) {
        AlgorithmSetting s;
        if (a.is_string()) {
            s.name = a.get<std::string>();
        } else if (a.is_object()) {
            reject_unknown(a, {"name", "label", "operator", "parameters"}, "algorithms.");
            read_field(a, "name", s.name, "algorithms.");
            read_field(a, "label", s.label, "algorithms.");
            read_field(a, "operator", s.op, "algorithms.");
            if (a.contains("parameters")) {
                s.params = params_from_json(a.at("parameters"), "algorithms.");
            }
        } else {
            throw ConfigError("invalid value for algorithms: entries are names or objects");
        }
        spec.algorithms.push_back(std::move(s));
    }
    if (!j.contains("problems") || !j.at("problems").is_array() || j.at("problems").empty()) {
        throw ConfigError("invalid value for problems: expected a non-empty list");
    }
    for (const auto& p : j.at("problems")) {
        ProblemSetting s;
        if (p.is_string()) {
            s.name = p.get<std::string>();
        } else if (p.is_object()) {
            reject_unknown(p, {"name", "M", "D", "N", "evaluation"}, "problems.");
            read_field(p, "name", s.name, "problems.");
            read_field(p, "M", s.M, "problems.");
            read_field(p, "D", s.D, "problems.");
            read_field(p, "N", s.N, "problems.");
            read_field(p, "evaluation", s.max_evaluations, "problems.");
        } else {
            throw ConfigError("invalid value for problems: entries are names or objects");
        }
        spec.problems.push_back(std::move(s));
    }
    read_field(j, "runs", spec.runs, "");
    read_field(j, "indicators", spec.indicators, "");
    std::string folder = spec.folder.string();
    read_field(j, "folder", folder, "");
    spec.folder = folder;
    read_field(j, "parallelism", spec.parallelism, "");
    read_field(j, "seed", spec.seed, "");
    read_field(j, "alpha", spec.alpha, "");
    read_field(j, "pf_samples", spec.pf_samples, "");
    if (spec.runs < 1) {
        throw ConfigError("invalid value for runs: must be at least 1");
    }
    if (spec.parallelism < 1) {
        throw ConfigError("invalid value for parallelism: must be at least 1");
    }
    if (!(spec.alpha > 0.0 && spec.alpha < 1.0)) {
        throw ConfigError("invalid value for alpha: must lie in (0, 1)");
    }
    if (spec.pf_samples < 1) {
        throw ConfigError("invalid value for pf_samples: must be positive");
    }
    return spec;
}

json experiment_spec_to_json(const ExperimentSpec& spec) {
    json algorithms = json::array();
    for (const auto& a : spec.algorithms) {
        json params = json::object();
        for (const auto& [k, v] : a.params) {
            params[k] = v;
        }
        algorithms.push_back({{"name", a.name}, {"label", a.column()}, {"operator", a.op}, {"parameters", params}});
    }
    json problems = json::array();
    for (const auto& p : spec.problems) {
        problems.push_back({{"name", p.name}, {"M", p.M}, {"D", p.D}, {"N", p.N}, {"evaluation", p.max_evaluations}});
    }
    return json{{"algorithms", algorithms},   {"problems", problems},       {"runs", spec.runs},
                {"indicators", spec.indicators}, {"folder", spec.folder.string()}, {"parallelism", spec.parallelism},
                {"seed", spec.seed},          {"alpha", spec.alpha},        {"pf_samples", spec.pf_samples}};
}

ExperimentSpec load_experiment_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read experiment spec " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed experiment spec: ") + e.what(), e.byte > 0 ? e.byte - 1 : 0);
    }
    ExperimentSpec spec = experiment_spec_from_json(j);
    if (spec.folder.is_relative() && !j.contains("folder")) {
        spec.folder = path.parent_path() / spec.folder;
    }
    return spec;
}

std::uint64_t cell_seed(std::uint64_t base, const std::string& algorithm, const std::string& setting, int run) {
    std::uint64_t h = mix64(base);
    h = mix64(h ^ fnv1a(algorithm));
    h = mix64(h ^ fnv1a(setting));
    h = mix64(h ^ static_cast<std::uint64_t>(run));
    return h;
}

std::vector<Cell> experiment_cells(const ExperimentSpec& spec, const Registry& registry) {
    std::set<std::string> columns;
    for (const auto& a : spec.algorithms) {
        registry.algorithm(a.name);
        if (!columns.insert(a.column()).second) {
            throw ConfigError("duplicate algorithm column '" + a.column() + "'; give repeated algorithms a label");
        }
    }
    std::vector<RunConfig> settings;
    std::set<std::string> setting_files;
    for (const auto& p : spec.problems) {
        RunConfig c;
        c.algorithm = spec.algorithms.front().name;
        c.problem = p.name;
        c.M = p.M;
        c.D = p.D;
        c.N = p.N;
        c.max_evaluations = p.max_evaluations;
        const auto finalized = finalize_config(c, registry);
        const std::string file_key = p.name + "_M" + std::to_string(finalized.M) + "_D" + std::to_string(finalized.D);
        if (!setting_files.insert(file_key).second) {
            throw ConfigError("duplicate problem setting " + file_key);
        }
        settings.push_back(finalized);
    }
    std::vector<Cell> cells;
    std::set<std::uint64_t> seeds;
    for (std::size_t ai = 0; ai < spec.algorithms.size(); ++ai) {
        const auto& a = spec.algorithms[ai];
        for (std::size_t pi = 0; pi < settings.size(); ++pi) {
            for (int r = 1; r <= spec.runs; ++r) {
                RunConfig c;
                c.algorithm = a.name;
                c.problem = settings[pi].problem;
                c.op = a.op;
                c.N = settings[pi].N;
                c.M = settings[pi].M;
                c.D = settings[pi].D;
                c.max_evaluations = settings[pi].max_evaluations;
                c.run_no = r;
                c.mode = RunMode::save;
                c.function_params = a.params;
                c.seed = cell_seed(spec.seed, a.column(), setting_key(settings[pi]), r);
                if (!seeds.insert(c.seed).second) {
                    throw ConfigError("derived cell seeds collide; choose another base seed");
                }
                Cell cell;
                cell.algorithm = ai;
                cell.problem = pi;
                cell.run = r;
                cell.config = finalize_config(std::move(c), registry);
                cell.path = result_path(spec.folder, a.column(), cell.config.problem, cell.config.M, cell.config.D, r);
                cells.push_back(std::move(cell));
            }
        }
    }
    return cells;
}

std::size_t completed_cells(const ExperimentSpec& spec, const Registry& registry) {
    const auto cells = experiment_cells(spec, registry);
    return static_cast<std::size_t>(std::count_if(
        cells.begin(), cells.end(), [](const Cell& c) { return std::filesystem::exists(c.path); }));
}

ExperimentOutcome run_experiment(const ExperimentSpec& spec, const Registry& registry, const ProgressFn& progress) {
    const auto cells = experiment_cells(spec, registry);
    ExperimentOutcome outcome;
    outcome.total = cells.size();
    std::vector<const Cell*> pending;
    for (const auto& c : cells) {
        if (std::filesystem::exists(c.path)) {
            ++outcome.skipped;
        } else {
            pending.push_back(&c);
        }
    }
    std::mutex mutex;
    std::size_t done = outcome.skipped;
    if (progress) {
        progress(done, outcome.total);
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < pending.size(); i = next++) {
            const Cell& cell = *pending[i];
            std::optional<CellFailure> failure;
            try {
                save_result(run_algorithm(cell.config, registry), cell.path);
            } catch (const std::exception& e) {
                failure = CellFailure{spec.algorithms[cell.algorithm].column(), cell.config.problem, cell.config.M,
                                      cell.config.D, cell.run, e.what()};
            }
            std::lock_guard lock(mutex);
            if (failure) {
                outcome.failures.push_back(std::move(*failure));
            } else {
                ++outcome.executed;
            }
            ++done;
            if (progress) {
                progress(done, outcome.total);
            }
        }
    };
    const auto workers = std::min<std::size_t>(static_cast<std::size_t>(spec.parallelism), pending.size());
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (std::size_t t = 0; t < workers; ++t) {
            threads.emplace_back(worker);
        }
        for (auto& t : threads) {
            t.join();
        }
    }
    std::sort(outcome.failures.begin(), outcome.failures.end(), [](const CellFailure& a, const CellFailure& b) {
        return std::tie(a.algorithm, a.problem, a.M, a.D, a.run) < std::tie(b.algorithm, b.problem, b.M, b.D, b.run);
    });
    return outcome;
}

void summarize_table(ExperimentTable& table, double alpha) {
    const std::size_t ncols = table.columns.size();
    if (ncols == 0) {
        throw ConfigError("table has no columns");
    }
    if (table.control >= ncols) {
        throw ConfigError("control column out of range");
    }
    table.footer.assign(ncols, Tally{});
    for (auto& row : table.rows) {
        if (row.cells.size() != ncols) {
            throw DomainError("table row width differs from the column count");
        }
        for (auto& cell : row.cells) {
            cell.best = false;
            cell.sign = Sign::none;
            if (cell.values.empty()) {
                cell.mean.reset();
                cell.std.reset();
                continue;
            }
            cell.mean = mean_of(cell.values);
            cell.std = sample_std(cell.values, *cell.mean);
        }
        const auto& control = row.cells[table.control];
        for (std::size_t c = 0; c < ncols; ++c) {
            auto& cell = row.cells[c];
            if (c == table.control || !cell.mean || !control.mean) {
                continue;
            }
            cell.sign = wilcoxon_rank_sum(cell.values, control.values, table.direction, alpha).sign;
            auto& tally = table.footer[c];
            (cell.sign == Sign::better ? tally.better : cell.sign == Sign::worse ? tally.worse : tally.similar)++;
        }
        std::optional<std::size_t> best;
        auto better = [&](double a, double b) { return table.direction == Direction::minimize ? a < b : a > b; };
        if (control.mean) {
            best = table.control;
        }
        for (std::size_t c = 0; c < ncols; ++c) {
            const auto& cell = row.cells[c];
            if (cell.mean && (!best || better(*cell.mean, *row.cells[*best].mean))) {
                best = c;
            }
        }
        if (best) {
            row.cells[*best].best = true;
        }
    }
}

ExperimentTable aggregate_table(const ExperimentSpec& spec, const std::string& indicator, const std::string& control,
                                const Registry& registry) {
    const auto& entry = registry.indicator(indicator);
    const auto cells = experiment_cells(spec, registry);
    ExperimentTable table;
    table.indicator = indicator;
    table.direction = entry.direction;
    for (const auto& a : spec.algorithms) {
        table.columns.push_back(a.column());
    }
    table.control = table.columns.size() - 1;
    if (!control.empty()) {
        const auto it = std::find(table.columns.begin(), table.columns.end(), control);
        if (it == table.columns.end()) {
            throw unknown_name(FunctionKind::algorithm, control, table.columns);
        }
        table.control = static_cast<std::size_t>(it - table.columns.begin());
    }
    std::vector<Matrix> pfs;
    for (std::size_t p = 0; p < spec.problems.size(); ++p) {
        const Cell& first = *std::find_if(cells.begin(), cells.end(), [&](const Cell& c) { return c.problem == p; });
        TableRow row;
        row.problem = first.config.problem;
        row.M = first.config.M;
        row.D = first.config.D;
        row.cells.resize(table.columns.size());
        table.rows.push_back(std::move(row));
        pfs.push_back(registry.make_problem(first.config.problem, first.config.M, first.config.D)->sample_pf(spec.pf_samples));
    }
    for (const auto& cell : cells) {
        if (!std::filesystem::exists(cell.path)) {
            continue;
        }
        const RunResult result = load_result(cell.path);
        const Matrix pop = objs(result.final_population);
        if (pop.rows() == 0) {
            continue;
        }
        const double score = evaluate_indicator(registry, indicator, pop, pfs[cell.problem], cell.config.function_params).score;
        table.rows[cell.problem].cells[cell.algorithm].values.push_back(score);
    }
    summarize_table(table, spec.alpha);
    return table;
}

std::string format_scientific(double value, int precision) {
    if (!std::isfinite(value)) {
        return std::isnan(value) ? "NaN" : (value > 0 ? "Inf" : "-Inf");
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", precision, value);
    std::string s = buf;
    const auto e = s.find('e');
    std::size_t digits = e + 2;
    std::size_t end = digits;
    while (end + 1 < s.size() && s[end] == '0') {
        ++end;
    }
    return s.substr(0, digits) + s.substr(end);
}

std::string format_cell(const TableCell& cell) {
    if (!cell.mean) {
        return kMissing;
    }
    return format_scientific(*cell.mean, 4) + " (" + format_scientific(cell.std.value_or(0.0), 2) + ")" +
           latex_sign(cell.sign);
}

std::string export_latex(const ExperimentTable& table) {
    std::ostringstream out;
    out << "\\begin{tabular}{ccc" << std::string(table.columns.size(), 'c') << "}\n\\hline\n";
    out << "Problem & $M$ & $D$";
    for (const auto& c : table.columns) {
        out << " & " << c;
    }
    out << " \\\\\n\\hline\n";
    for (const auto& row : table.rows) {
        out << row.problem << " & " << row.M << " & " << row.D;
        for (const auto& cell : row.cells) {
            const std::string text = format_cell(cell);
            out << " & " << (cell.best ? "\\hl{" + text + "}" : text);
        }
        out << " \\\\\n";
    }
    out << "\\hline\n\\multicolumn{3}{c}{$+/-/\\approx$}";
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        out << " &";
        if (c != table.control) {
            const auto& t = table.footer[c];
            out << ' ' << t.better << '/' << t.worse << '/' << t.similar;
        }
    }
    out << " \\\\\n\\hline\n\\end{tabular}\n";
    return out.str();
}

std::string export_csv(const ExperimentTable& table) {
    std::ostringstream out;
    out << "Problem,M,D";
    for (const auto& c : table.columns) {
        out << ',' << csv_field(c + " mean") << ',' << csv_field(c + " std") << ',' << csv_field(c + " sign");
    }
    out << '\n';
    for (const auto& row : table.rows) {
        out << csv_field(row.problem) << ',' << row.M << ',' << row.D;
        for (const auto& cell : row.cells) {
            if (cell.mean) {
                out << ',' << format_scientific(*cell.mean, 4) << ',' << format_scientific(cell.std.value_or(0.0), 2);
            } else {
                out << ',' << kMissing << ',' << kMissing;
            }
            out << ',' << csv_sign(cell.sign) << (cell.best ? "*" : "");
        }
        out << '\n';
    }
    out << "+/-/~,,";
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        out << ',';
        if (c != table.control) {
            const auto& t = table.footer[c];
            out << t.better << '/' << t.worse << '/' << t.similar;
        }
        out << ",,";
    }
    out << '\n';
    return out.str();
}

CsvTable parse_csv(const std::string& text) {
    CsvTable table;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false;
    bool first = true;
    auto end_record = [&] {
        record.push_back(field);
        field.clear();
        if (first) {
            table.header = std::move(record);
            first = false;
        } else {
            table.rows.push_back(std::move(record));
        }
        record.clear();
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            record.push_back(field);
            field.clear();
        } else if (c == '\n') {
            end_record();
        } else if (c != '\r') {
            field += c;
        }
    }
    if (quoted) {
        throw ParseError("unterminated quoted field", text.size());
    }
    if (!field.empty() || !record.empty()) {
        end_record();
    }
    return table;
}

} // namespace paretokit
