#ifndef PARETOKIT_VARIATION_HPP
#define PARETOKIT_VARIATION_HPP

// Reproduction operators. Decision matrices hold one individual per row.

#include "paretokit/core.hpp"
#include "paretokit/registry.hpp"
#include "paretokit/rng.hpp"

namespace paretokit {

struct RealVariationParams {
    double proC = 1.0;  // crossover probability per pair
    double disC = 15.0; // SBX distribution index
    double proM = 1.0;  // expected number of mutated variables
    double disM = 15.0; // polynomial mutation distribution index
};

struct BinaryVariationParams {
    double proC = 1.0;
    double proM = 1.0; // expected number of flipped bits
};

struct DifferentialParams {
    double CR = 1.0;
    double F = 0.5;
    double proM = 1.0;
    double disM = 20.0;
};

// Rows of `dec` clamped into [lower, upper].
Matrix clamp_to_bounds(const Matrix& dec, const Vector& lower, const Vector& upper);

// Polynomial mutation; each variable mutates with probability proM / D.
Matrix polynomial_mutation(Matrix dec, const Vector& lower, const Vector& upper, double proM, double disM, Rng& rng);

/// Simulated binary crossover on pairs (0,1), (2,3), ... followed by
/// polynomial mutation. An odd trailing parent is copied and mutated.
Matrix ea_real(const Matrix& parents, const Vector& lower, const Vector& upper, const RealVariationParams& params,
               Rng& rng);

// Single-point crossover on pairs, then bitwise mutation.
Matrix ea_binary(const Matrix& parents, const BinaryVariationParams& params, Rng& rng);

// DE/rand/1 with binomial crossover (one variable always taken from the
// mutant), then polynomial mutation.
Vector de_variation(const Vector& x1, const Vector& x2, const Vector& x3, const Vector& lower, const Vector& upper,
                    const DifferentialParams& params, Rng& rng);

// EAreal, EAbinary and DE.
void register_operators(Registry& registry);

} // namespace paretokit

#endif // PARETOKIT_VARIATION_HPP
