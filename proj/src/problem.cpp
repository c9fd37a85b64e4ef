#include "paretokit/problem.hpp"

namespace paretokit {

Problem::Problem(ProblemDefinition def) : def_(std::move(def)) {
    if (def_.M < 1 || def_.D < 1) {
        throw ConfigError(def_.name + ": M and D must be positive");
    }
    if (def_.lower.size() != def_.D || def_.upper.size() != def_.D) {
        throw ConfigError(def_.name + ": bounds must have length D");
    }
    for (Index i = 0; i < def_.D; ++i) {
        if (!(def_.lower(i) < def_.upper(i))) {
            throw ConfigError(def_.name + ": lower bound must be below upper bound for variable " +
                              std::to_string(i + 1));
        }
    }
}

Matrix Problem::random_decisions(Index count, Rng& rng) const {
    Matrix dec(count, def_.D);
    for (Index r = 0; r < count; ++r) {
        for (Index c = 0; c < def_.D; ++c) {
            if (def_.encoding == Encoding::binary) {
                dec(r, c) = rng.bernoulli(0.5) ? 1.0 : 0.0;
            } else {
                dec(r, c) = rng.uniform(def_.lower(c), def_.upper(c));
            }
        }
    }
    return dec;
}

Evaluation Problem::evaluate(const Matrix& dec) const {
    if (dec.cols() != def_.D) {
        throw DomainError(def_.name + ": expected " + std::to_string(def_.D) + " decision variables, got " +
                          std::to_string(dec.cols()));
    }
    if (dec.rows() == 0) {
        return {Matrix(0, def_.M), Matrix(0, 0)};
    }
    Evaluation ev = compute(dec);
    if (ev.obj.cols() != def_.M || ev.obj.rows() != dec.rows()) {
        throw DomainError(def_.name + ": evaluator returned a matrix of the wrong shape");
    }
    if (ev.con.rows() != dec.rows()) {
        ev.con.resize(dec.rows(), 0);
    }
    return ev;
}

} // namespace paretokit
