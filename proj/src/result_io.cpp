#include "paretokit/result_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace paretokit {

using nlohmann::json;

namespace {

json vector_to_json(const Vector& v) {
    json a = json::array();
    for (Index i = 0; i < v.size(); ++i) {
        a.push_back(v(i));
    }
    return a;
}

Vector vector_from_json(const json& j) {
    Vector v(static_cast<Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        v(static_cast<Index>(i)) = j[i].get<double>();
    }
    return v;
}

json rows_to_json(const Population& pop, const Vector& (Individual::*field)() const) {
    json rows = json::array();
    for (const auto& x : pop) {
        rows.push_back(vector_to_json((x.*field)()));
    }
    return rows;
}

RunMode mode_from_int(int m) {
    if (m != 1 && m != 2) {
        throw ConfigError("invalid value for mode: must be 1 or 2");
    }
    return static_cast<RunMode>(m);
}

} // namespace

json config_to_json(const RunConfig& c) {
    json params = json::object();
    for (const auto& [name, values] : c.function_params) {
        params[name] = values;
    }
    return json{{"algorithm", c.algorithm},
                {"problem", c.problem},
                {"operator", c.op},
                {"N", c.N},
                {"M", c.M},
                {"D", c.D},
                {"evaluation", c.max_evaluations},
                {"run", c.run_no},
                {"mode", static_cast<int>(c.mode)},
                {"seed", c.seed},
                {"parameters", params},
                {"snapshot_stride", c.snapshot_stride},
                {"lower", vector_to_json(c.lower)},
                {"upper", vector_to_json(c.upper)},
                {"encoding", to_string(c.encoding)}};
}

RunConfig config_from_json(const json& j) {
    if (!j.is_object()) {
        throw ConfigError("run configuration must be an object");
    }
    static const char* const known[] = {"algorithm", "problem", "operator", "N",     "M",     "D",
                                        "evaluation", "run",    "mode",     "seed",  "parameters",
                                        "snapshot_stride", "lower", "upper", "encoding"};
    for (const auto& [key, value] : j.items()) {
        if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
            throw ConfigError("unknown configuration field '" + key + "'");
        }
    }
    RunConfig c;
    auto field = [&](const char* key, auto& target) {
        if (!j.contains(key)) {
            return;
        }
        try {
            j.at(key).get_to(target);
        } catch (const json::exception&) {
            throw ConfigError(std::string("invalid value for ") + key);
        }
    };
    field("algorithm", c.algorithm);
    field("problem", c.problem);
    field("operator", c.op);
    field("N", c.N);
    field("M", c.M);
    field("D", c.D);
    field("evaluation", c.max_evaluations);
    field("run", c.run_no);
    int mode = 1;
    field("mode", mode);
    c.mode = mode_from_int(mode);
    c.seed = static_cast<std::uint64_t>(c.run_no);
    field("seed", c.seed);
    field("snapshot_stride", c.snapshot_stride);
    if (j.contains("parameters")) {
        const auto& p = j.at("parameters");
        if (!p.is_object()) {
            throw ConfigError("invalid value for parameters: expected an object of number lists");
        }
        for (const auto& [name, values] : p.items()) {
            try {
                c.function_params[name] = values.get<std::vector<double>>();
            } catch (const json::exception&) {
                throw ConfigError("invalid value for parameters." + name + ": expected a list of numbers");
            }
        }
    }
    if (j.contains("lower")) {
        c.lower = vector_from_json(j.at("lower"));
    }
    if (j.contains("upper")) {
        c.upper = vector_from_json(j.at("upper"));
    }
    if (j.contains("encoding")) {
        c.encoding = encoding_from_string(j.at("encoding").get<std::string>());
    }
    return c;
}

json population_to_json(const Population& pop) {
    json j{{"dec", rows_to_json(pop, &Individual::dec)},
           {"obj", rows_to_json(pop, &Individual::obj)},
           {"con", rows_to_json(pop, &Individual::con)}};
    const bool any_aux = std::any_of(pop.begin(), pop.end(), [](const Individual& x) { return !x.add().empty(); });
    if (any_aux) {
        json add = json::array();
        for (const auto& x : pop) {
            json entry = json::object();
            for (const auto& [key, value] : x.add()) {
                entry[key] = vector_to_json(value);
            }
            add.push_back(entry);
        }
        j["add"] = add;
    }
    return j;
}

Population population_from_json(const json& j) {
    const auto& dec = j.at("dec");
    const auto& obj = j.at("obj");
    const auto& con = j.at("con");
    if (dec.size() != obj.size() || dec.size() != con.size()) {
        throw DomainError("population rows disagree in length");
    }
    const json* add = j.contains("add") ? &j.at("add") : nullptr;
    Population pop;
    pop.reserve(dec.size());
    for (std::size_t i = 0; i < dec.size(); ++i) {
        AuxiliaryMap aux;
        if (add != nullptr) {
            for (const auto& [key, value] : add->at(i).items()) {
                aux[key] = vector_from_json(value);
            }
        }
        pop.emplace_back(vector_from_json(dec[i]), vector_from_json(obj[i]), vector_from_json(con[i]), std::move(aux));
    }
    return pop;
}

void write_result(std::ostream& out, const RunResult& r) {
    out << json{{"schema", "paretokit.result"},
                {"version", kResultSchemaVersion},
                {"config", config_to_json(r.config)},
                {"population_size", r.population_size}}
               .dump()
        << '\n';
    for (const auto& s : r.snapshots) {
        json line{{"type", "snapshot"}, {"generation", s.generation}, {"evaluations", s.evaluations}};
        line.update(population_to_json(s.population));
        out << line.dump() << '\n';
    }
    json final_line{{"type", "final"}, {"evaluations", r.evaluations}};
    final_line.update(population_to_json(r.final_population));
    out << final_line.dump() << '\n';
    out << json{{"type", "end"}, {"snapshots", r.snapshots.size()}}.dump() << '\n';
}

std::string serialize_result(const RunResult& result) {
    std::ostringstream out;
    write_result(out, result);
    return out.str();
}

RunResult parse_result(const std::string& text) {
    RunResult r;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    bool saw_final = false;
    bool saw_end = false;
    while (pos < text.size()) {
        const std::size_t line_start = pos;
        const std::size_t nl = text.find('\n', pos);
        if (nl == std::string::npos) {
            throw ParseError("result file ends inside a line", text.size());
        }
        pos = nl + 1;
        if (saw_end) {
            throw ParseError("content after the end record", line_start);
        }
        json j;
        try {
            j = json::parse(text.begin() + static_cast<std::ptrdiff_t>(line_start),
                            text.begin() + static_cast<std::ptrdiff_t>(nl));
        } catch (const json::parse_error& e) {
            throw ParseError(std::string("malformed record: ") + e.what(), line_start + (e.byte > 0 ? e.byte - 1 : 0));
        }
        try {
            if (line_no++ == 0) {
                if (!j.is_object() || j.value("schema", std::string()) != "paretokit.result") {
                    throw ParseError("not a result file", line_start);
                }
                const int version = j.at("version").get<int>();
                if (version != kResultSchemaVersion) {
                    throw SchemaError("unsupported result schema version " + std::to_string(version) + " (expected " +
                                          std::to_string(kResultSchemaVersion) + ")",
                                      version);
                }
                r.config = config_from_json(j.at("config"));
                r.population_size = j.at("population_size").get<int>();
                continue;
            }
            const std::string type = j.at("type").get<std::string>();
            if (type == "snapshot" && !saw_final) {
                r.snapshots.push_back(
                    {j.at("generation").get<int>(), j.at("evaluations").get<long long>(), population_from_json(j)});
            } else if (type == "final" && !saw_final) {
                r.evaluations = j.at("evaluations").get<long long>();
                r.final_population = population_from_json(j);
                saw_final = true;
            } else if (type == "end" && saw_final) {
                if (j.at("snapshots").get<std::size_t>() != r.snapshots.size()) {
                    throw ParseError("snapshot count disagrees with the end record", line_start);
                }
                saw_end = true;
            } else {
                throw ParseError("unexpected record type '" + type + "'", line_start);
            }
        } catch (const json::exception& e) {
            throw ParseError(std::string("invalid record: ") + e.what(), line_start);
        } catch (const DomainError& e) {
            throw ParseError(std::string("invalid record: ") + e.what(), line_start);
        }
    }
    if (!saw_end) {
        throw ParseError(line_no == 0 ? "empty result file" : "result file is truncated (no end record)", text.size());
    }
    return r;
}

void save_result(const RunResult& result, const std::filesystem::path& path) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    auto tmp = path;
    tmp += ".partial";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot write " + tmp.string());
        }
        write_result(out, result);
        out.flush();
        if (!out) {
            throw std::runtime_error("failed writing " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

RunResult load_result(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_result(buffer.str());
}

std::filesystem::path result_path(const std::filesystem::path& folder, const std::string& label,
                                  const std::string& problem, int M, int D, int run) {
    return folder / label /
           (problem + "_M" + std::to_string(M) + "_D" + std::to_string(D) + "_R" + std::to_string(run) + ".result");
}

} // namespace paretokit
