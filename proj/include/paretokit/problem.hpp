#ifndef PARETOKIT_PROBLEM_HPP
#define PARETOKIT_PROBLEM_HPP

#include "paretokit/core.hpp"
#include "paretokit/rng.hpp"

#include <string>

namespace paretokit {

struct ProblemDefinition {
    std::string name;
    int M = 0;
    int D = 0;
    Vector lower;
    Vector upper;
    Encoding encoding = Encoding::real;
    std::string default_operator = "EAreal";
};

struct Evaluation {
    Matrix obj;
    Matrix con; // zero columns when unconstrained
};

/// A test problem: random decision generation, evaluation, and Pareto front
/// sampling. Instances are immutable once constructed.
class Problem {
public:
    explicit Problem(ProblemDefinition def);
    virtual ~Problem() = default;

    const ProblemDefinition& definition() const noexcept { return def_; }
    const std::string& name() const noexcept { return def_.name; }
    int M() const noexcept { return def_.M; }
    int D() const noexcept { return def_.D; }

    // Uniform inside the bounds for real encoding, fair bits for binary.
    virtual Matrix random_decisions(Index count, Rng& rng) const;

    // Checks the column count, then defers to compute().
    Evaluation evaluate(const Matrix& dec) const;

    // Reference points on the true front; the row count may differ from the
    // request for structured sets.
    virtual Matrix sample_pf(Index count) const = 0;

protected:
    virtual Evaluation compute(const Matrix& dec) const = 0;

private:
    ProblemDefinition def_;
};

} // namespace paretokit

#endif // PARETOKIT_PROBLEM_HPP
