#include "paretokit/registry.hpp"

#include <sstream>

namespace paretokit {

const char* to_string(FunctionKind kind) {
    switch (kind) {
    case FunctionKind::algorithm:
        return "algorithm";
    case FunctionKind::problem:
        return "problem";
    case FunctionKind::op:
        return "operator";
    case FunctionKind::indicator:
        return "indicator";
    }
    return "unknown";
}

const char* to_string(Direction d) {
    return d == Direction::maximize ? "maximize" : "minimize";
}

std::vector<double> FunctionInfo::defaults() const {
    std::vector<double> out;
    out.reserve(params.size());
    for (const auto& p : params) {
        out.push_back(p.default_value);
    }
    return out;
}

ConfigError unknown_name(FunctionKind kind, const std::string& name, const std::vector<std::string>& known) {
    std::ostringstream msg;
    msg << "unknown " << to_string(kind) << " '" << name << "'; registered:";
    for (const auto& k : known) {
        msg << ' ' << k;
    }
    return ConfigError(msg.str());
}

namespace {

template <class Entry>
void insert(std::map<std::string, Entry>& table, Entry e, FunctionKind kind) {
    e.info.kind = kind;
    const std::string name = e.info.name;
    if (name.empty()) {
        throw ConfigError("cannot register a function without a name");
    }
    if (!table.emplace(name, std::move(e)).second) {
        throw ConfigError(std::string(to_string(kind)) + " '" + name + "' is already registered");
    }
}

template <class Entry>
std::vector<std::string> keys(const std::map<std::string, Entry>& table) {
    std::vector<std::string> out;
    out.reserve(table.size());
    for (const auto& [k, v] : table) {
        out.push_back(k);
    }
    return out;
}

template <class Entry>
const Entry& lookup(const std::map<std::string, Entry>& table, const std::string& name, FunctionKind kind) {
    const auto it = table.find(name);
    if (it == table.end()) {
        throw unknown_name(kind, name, keys(table));
    }
    return it->second;
}

} // namespace

void Registry::add(AlgorithmEntry e) { insert(algorithms_, std::move(e), FunctionKind::algorithm); }
void Registry::add(ProblemEntry e) { insert(problems_, std::move(e), FunctionKind::problem); }
void Registry::add(OperatorEntry e) { insert(operators_, std::move(e), FunctionKind::op); }
void Registry::add(IndicatorEntry e) { insert(indicators_, std::move(e), FunctionKind::indicator); }

const AlgorithmEntry& Registry::algorithm(const std::string& name) const {
    return lookup(algorithms_, name, FunctionKind::algorithm);
}
const ProblemEntry& Registry::problem(const std::string& name) const {
    return lookup(problems_, name, FunctionKind::problem);
}
const OperatorEntry& Registry::op(const std::string& name) const {
    return lookup(operators_, name, FunctionKind::op);
}
const IndicatorEntry& Registry::indicator(const std::string& name) const {
    return lookup(indicators_, name, FunctionKind::indicator);
}

bool Registry::has(FunctionKind kind, const std::string& name) const {
    switch (kind) {
    case FunctionKind::algorithm:
        return algorithms_.count(name) != 0;
    case FunctionKind::problem:
        return problems_.count(name) != 0;
    case FunctionKind::op:
        return operators_.count(name) != 0;
    case FunctionKind::indicator:
        return indicators_.count(name) != 0;
    }
    return false;
}

std::vector<std::string> Registry::names(FunctionKind kind) const {
    switch (kind) {
    case FunctionKind::algorithm:
        return keys(algorithms_);
    case FunctionKind::problem:
        return keys(problems_);
    case FunctionKind::op:
        return keys(operators_);
    case FunctionKind::indicator:
        return keys(indicators_);
    }
    return {};
}

const FunctionInfo* Registry::info(const std::string& name) const {
    if (auto it = algorithms_.find(name); it != algorithms_.end()) {
        return &it->second.info;
    }
    if (auto it = problems_.find(name); it != problems_.end()) {
        return &it->second.info;
    }
    if (auto it = operators_.find(name); it != operators_.end()) {
        return &it->second.info;
    }
    if (auto it = indicators_.find(name); it != indicators_.end()) {
        return &it->second.info;
    }
    return nullptr;
}

std::vector<const FunctionInfo*> Registry::all() const {
    std::vector<const FunctionInfo*> out;
    for (const auto& [k, v] : algorithms_) {
        out.push_back(&v.info);
    }
    for (const auto& [k, v] : problems_) {
        out.push_back(&v.info);
    }
    for (const auto& [k, v] : operators_) {
        out.push_back(&v.info);
    }
    for (const auto& [k, v] : indicators_) {
        out.push_back(&v.info);
    }
    return out;
}

std::unique_ptr<Problem> Registry::make_problem(const std::string& name, int M, int D) const {
    return problem(name).make(M, D);
}

} // namespace paretokit
