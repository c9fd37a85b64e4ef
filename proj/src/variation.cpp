#include "paretokit/variation.hpp"

#include "paretokit/kernel.hpp"

#include <cmath>

namespace paretokit {

Matrix clamp_to_bounds(const Matrix& dec, const Vector& lower, const Vector& upper) {
    Matrix out = dec;
    for (Index r = 0; r < out.rows(); ++r) {
        out.row(r) = out.row(r).cwiseMax(lower.transpose()).cwiseMin(upper.transpose());
    }
    return out;
}

Matrix polynomial_mutation(Matrix dec, const Vector& lower, const Vector& upper, double proM, double disM, Rng& rng) {
    const Index d = dec.cols();
    if (d == 0) {
        return dec;
    }
    const double rate = proM / static_cast<double>(d);
    const double exponent = 1.0 / (disM + 1.0);
    for (Index r = 0; r < dec.rows(); ++r) {
        for (Index j = 0; j < d; ++j) {
            const bool site = rng.uniform() < rate;
            const double mu = rng.uniform();
            if (!site) {
                continue;
            }
            const double lo = lower(j);
            const double hi = upper(j);
            const double span = hi - lo;
            const double x = std::clamp(dec(r, j), lo, hi);
            double delta = 0.0;
            if (mu <= 0.5) {
                const double t = 1.0 - (x - lo) / span;
                delta = std::pow(2.0 * mu + (1.0 - 2.0 * mu) * std::pow(t, disM + 1.0), exponent) - 1.0;
            } else {
                const double t = 1.0 - (hi - x) / span;
                delta = 1.0 - std::pow(2.0 * (1.0 - mu) + 2.0 * (mu - 0.5) * std::pow(t, disM + 1.0), exponent);
            }
            dec(r, j) = std::clamp(x + span * delta, lo, hi);
        }
    }
    return dec;
}

Matrix ea_real(const Matrix& parents, const Vector& lower, const Vector& upper, const RealVariationParams& params,
               Rng& rng) {
    if (parents.rows() < 1) {
        throw DomainError("ea_real: no parents");
    }
    Matrix offspring = clamp_to_bounds(parents, lower, upper);
    const Index d = parents.cols();
    const double exponent = 1.0 / (params.disC + 1.0);
    for (Index p = 0; p + 1 < parents.rows(); p += 2) {
        if (!(rng.uniform() < params.proC)) {
            continue;
        }
        for (Index j = 0; j < d; ++j) {
            const double mu = rng.uniform();
            const bool flip = rng.bernoulli(0.5);
            const bool engage = rng.bernoulli(0.5);
            if (!engage) {
                continue;
            }
            double beta = mu <= 0.5 ? std::pow(2.0 * mu, exponent) : std::pow(2.0 - 2.0 * mu, -exponent);
            if (flip) {
                beta = -beta;
            }
            const double a = offspring(p, j);
            const double b = offspring(p + 1, j);
            const double mean = 0.5 * (a + b);
            const double half = 0.5 * beta * (a - b);
            offspring(p, j) = mean + half;
            offspring(p + 1, j) = mean - half;
        }
    }
    offspring = clamp_to_bounds(offspring, lower, upper);
    return polynomial_mutation(std::move(offspring), lower, upper, params.proM, params.disM, rng);
}

Matrix ea_binary(const Matrix& parents, const BinaryVariationParams& params, Rng& rng) {
    if (parents.rows() < 1) {
        throw DomainError("ea_binary: no parents");
    }
    Matrix offspring = parents;
    const Index d = parents.cols();
    for (Index p = 0; p + 1 < parents.rows(); p += 2) {
        if (d < 2 || !(rng.uniform() < params.proC)) {
            continue;
        }
        const Index cut = 1 + static_cast<Index>(rng.uniform_int(static_cast<std::uint64_t>(d - 1)));
        for (Index j = cut; j < d; ++j) {
            std::swap(offspring(p, j), offspring(p + 1, j));
        }
    }
    const double rate = d > 0 ? params.proM / static_cast<double>(d) : 0.0;
    for (Index r = 0; r < offspring.rows(); ++r) {
        for (Index j = 0; j < d; ++j) {
            if (rng.uniform() < rate) {
                offspring(r, j) = offspring(r, j) != 0.0 ? 0.0 : 1.0;
            }
        }
    }
    return offspring;
}

Vector de_variation(const Vector& x1, const Vector& x2, const Vector& x3, const Vector& lower, const Vector& upper,
                    const DifferentialParams& params, Rng& rng) {
    const Index d = x1.size();
    if (x2.size() != d || x3.size() != d) {
        throw DomainError("de_variation: parent length mismatch");
    }
    Vector v = x1;
    const auto forced = d > 0 ? static_cast<Index>(rng.uniform_int(static_cast<std::uint64_t>(d))) : 0;
    for (Index j = 0; j < d; ++j) {
        const bool take = rng.uniform() < params.CR;
        if (take || j == forced) {
            v(j) = x1(j) + params.F * (x2(j) - x3(j));
        }
    }
    Matrix row = clamp_to_bounds(v.transpose(), lower, upper);
    row = polynomial_mutation(std::move(row), lower, upper, params.proM, params.disM, rng);
    return row.row(0).transpose();
}

namespace {

Population take_first(Population pop, std::optional<Index> count) {
    if (count && static_cast<std::size_t>(*count) < pop.size()) {
        pop.erase(pop.begin() + static_cast<std::ptrdiff_t>(*count), pop.end());
    }
    return pop;
}

Matrix truncate_rows(const Matrix& m, std::optional<Index> count) {
    if (count && *count < m.rows()) {
        return m.topRows(*count);
    }
    return m;
}

} // namespace

void register_operators(Registry& registry) {
    registry.add(OperatorEntry{
        {"EAreal",
         FunctionKind::op,
         {"operator", "real"},
         "Simulated binary crossover and polynomial mutation for real-valued variables",
         {{"proC", 1, "Probability of doing crossover"},
          {"disC", 15, "Distribution index of simulated binary crossover"},
          {"proM", 1, "Expectation of number of variables doing mutation"},
          {"disM", 15, "Distribution index of polynomial mutation"}}},
        Encoding::real,
        [](Run& run, const Population& parents, std::optional<Index> count) {
            const auto p = run.parameter_set("EAreal");
            const RealVariationParams params{p[0], p[1], p[2], p[3]};
            const Matrix dec =
                ea_real(decs(parents), run.config().lower, run.config().upper, params, run.rng());
            return run.spawn(truncate_rows(dec, count));
        }});

    registry.add(OperatorEntry{
        {"EAbinary",
         FunctionKind::op,
         {"operator", "binary"},
         "Single-point crossover and bitwise mutation for binary variables",
         {{"proC", 1, "Probability of doing crossover"},
          {"proM", 1, "Expectation of number of bits doing mutation"}}},
        Encoding::binary,
        [](Run& run, const Population& parents, std::optional<Index> count) {
            const auto p = run.parameter_set("EAbinary");
            const Matrix dec = ea_binary(decs(parents), {p[0], p[1]}, run.rng());
            return run.spawn(truncate_rows(dec, count));
        }});

    registry.add(OperatorEntry{
        {"DE",
         FunctionKind::op,
         {"operator", "real"},
         "Differential evolution (rand/1/bin) followed by polynomial mutation; parents are read as "
         "consecutive triples (base, donor, donor)",
         {{"CR", 1, "Crossover rate"},
          {"F", 0.5, "Scaling factor"},
          {"proM", 1, "Expectation of number of variables doing mutation"},
          {"disM", 20, "Distribution index of polynomial mutation"}}},
        Encoding::real,
        [](Run& run, const Population& parents, std::optional<Index> count) {
            if (parents.size() < 3) {
                throw DomainError("DE needs at least three parents");
            }
            const auto p = run.parameter_set("DE");
            const DifferentialParams params{p[0], p[1], p[2], p[3]};
            const Index n = static_cast<Index>(parents.size() / 3);
            Matrix dec(n, run.config().D);
            for (Index i = 0; i < n; ++i) {
                const auto base = static_cast<std::size_t>(3 * i);
                dec.row(i) = de_variation(parents[base].dec(), parents[base + 1].dec(), parents[base + 2].dec(),
                                          run.config().lower, run.config().upper, params, run.rng())
                                 .transpose();
            }
            return take_first(run.spawn(truncate_rows(dec, count)), count);
        }});
}

} // namespace paretokit
