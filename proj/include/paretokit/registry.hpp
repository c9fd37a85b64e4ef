#ifndef PARETOKIT_REGISTRY_HPP
#define PARETOKIT_REGISTRY_HPP

#include "paretokit/core.hpp"
#include "paretokit/individual.hpp"
#include "paretokit/problem.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace paretokit {

class Run;

enum class FunctionKind { algorithm, problem, op, indicator };

const char* to_string(FunctionKind kind);

struct ParamInfo {
    std::string name;
    double default_value = 0.0;
    std::string help;
};

/// Header metadata for a registered function: labels, a one-line
/// description, and the positional parameter table.
struct FunctionInfo {
    std::string name;
    FunctionKind kind = FunctionKind::algorithm;
    std::vector<std::string> labels;
    std::string description;
    std::vector<ParamInfo> params;

    std::vector<double> defaults() const;
};

enum class Direction { minimize, maximize };

const char* to_string(Direction d);

struct AlgorithmEntry {
    FunctionInfo info;
    std::string default_operator; // empty: use the problem's default
    std::function<void(Run&)> body;
};

struct ProblemEntry {
    FunctionInfo info;
    // M or D of 0 selects the problem default.
    std::function<std::unique_ptr<Problem>(int M, int D)> make;
};

struct OperatorEntry {
    FunctionInfo info;
    Encoding encoding = Encoding::real;
    // Parents in, evaluated offspring out. count empty: operator convention.
    std::function<Population(Run&, const Population&, std::optional<Index>)> apply;
};

struct IndicatorEntry {
    FunctionInfo info;
    Direction direction = Direction::minimize;
    // Parameters arrive resolved, positionally as declared in info.params.
    std::function<double(const Matrix& pop_obj, const Matrix& pf, std::span<const double> params)> score;
};

/// Name-keyed catalogue joining algorithms, problems, operators and
/// indicators. Nothing in the kernel refers to a concrete function by type.
class Registry {
public:
    void add(AlgorithmEntry e);
    void add(ProblemEntry e);
    void add(OperatorEntry e);
    void add(IndicatorEntry e);

    const AlgorithmEntry& algorithm(const std::string& name) const;
    const ProblemEntry& problem(const std::string& name) const;
    const OperatorEntry& op(const std::string& name) const;
    const IndicatorEntry& indicator(const std::string& name) const;

    bool has(FunctionKind kind, const std::string& name) const;
    std::vector<std::string> names(FunctionKind kind) const;
    // Metadata lookup across all kinds; nullptr when unknown.
    const FunctionInfo* info(const std::string& name) const;
    std::vector<const FunctionInfo*> all() const;

    std::unique_ptr<Problem> make_problem(const std::string& name, int M = 0, int D = 0) const;

private:
    std::map<std::string, AlgorithmEntry> algorithms_;
    std::map<std::string, ProblemEntry> problems_;
    std::map<std::string, OperatorEntry> operators_;
    std::map<std::string, IndicatorEntry> indicators_;
};

// Unknown-name error that lists what is registered.
ConfigError unknown_name(FunctionKind kind, const std::string& name, const std::vector<std::string>& known);

// Every built-in algorithm, problem, operator and indicator.
const Registry& builtin_registry();

} // namespace paretokit

#endif // PARETOKIT_REGISTRY_HPP
