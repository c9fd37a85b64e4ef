#ifndef PARETOKIT_ALGORITHMS_HPP
#define PARETOKIT_ALGORITHMS_HPP

// NSGA-II, SPEA2, MOEA/D, IBEA and NSGA-III, with the selection
// subroutines each one is built from. Subroutines work on objective
// matrices (one row per individual) and return row indices.

#include "paretokit/core.hpp"
#include "paretokit/individual.hpp"
#include "paretokit/nds.hpp"
#include "paretokit/registry.hpp"
#include "paretokit/rng.hpp"

#include <optional>
#include <span>
#include <vector>

namespace paretokit {

class Run;

/// Feasibility-first transform: infeasible rows are moved past the worst
/// feasible value in every objective by their total violation, so plain
/// Pareto dominance then ranks feasible before infeasible and infeasible
/// rows by violation. Identity when `con` has no columns or all is feasible.
Matrix constrained_objectives(const Matrix& obj, const Matrix& con);
Matrix selection_objectives(const Population& pop);
Vector violations(const Population& pop);

// Crowding distance per row; kUnranked rows get 0.
std::vector<double> crowding_distance(const Matrix& obj, const FrontAssignment& fronts);

/// `count` binary tournaments with replacement. keys[c][i] is the c-th
/// criterion of candidate i, lower is better, compared lexicographically;
/// exact ties are settled by a fair coin.
std::vector<Index> tournament_select(std::span<const std::vector<double>> keys, Index count, Rng& rng);

struct Spea2Fitness {
    Vector fitness;
    Vector strength;
    Vector raw;
};

Spea2Fitness spea2_fitness_detail(const Matrix& obj);
inline Vector spea2_fitness(const Matrix& obj) { return spea2_fitness_detail(obj).fitness; }

// Weighted Tchebycheff distance to the ideal point; zero weights count as 1e-6.
double tchebycheff(const Vector& obj, const Vector& weight, const Vector& ideal);

struct EpsilonFitness {
    Vector fitness;
    Matrix indicator; // indicator(i, j) = I_eps+(i, j) on normalized objectives
    double scale = 1.0; // max |I| over all pairs
};

EpsilonFitness epsilon_fitness_detail(const Matrix& obj, double kappa);
inline Vector epsilon_fitness(const Matrix& obj, double kappa) { return epsilon_fitness_detail(obj, kappa).fitness; }

struct NicheAssociation {
    Matrix normalized;
    Vector ideal;
    Vector intercepts;
    std::vector<Index> reference;  // associated reference row per individual
    Vector distance;               // perpendicular distance to that reference ray
};

NicheAssociation nsga3_normalize_associate(const Matrix& obj, const Matrix& reference_set,
                                           std::optional<Vector> ideal = std::nullopt);

// Perpendicular distance from `point` to the ray through `direction`.
double perpendicular_distance(const Vector& point, const Vector& direction);

// ---------------------------------------------------------------------------
// Environmental selection. Each returns the kept rows in ascending order.

struct Nsga2Selection {
    std::vector<Index> kept;
    std::vector<int> front_no;     // aligned with kept
    std::vector<double> crowding;  // aligned with kept
};

Nsga2Selection nsga2_select(const Matrix& obj, Index n);

struct Spea2Selection {
    std::vector<Index> kept;
    Vector fitness; // aligned with kept
};

Spea2Selection spea2_select(const Matrix& obj, Index n);
// Rows removed from a non-dominated archive by iterative k-NN truncation, in removal order.
std::vector<Index> spea2_truncation(const Matrix& obj, Index remove);

std::vector<Index> ibea_select(const Matrix& obj, Index n, double kappa);

// `sort_obj` drives the front filling, `obj` the niching (they differ only
// under constraints).
std::vector<Index> nsga3_select(const Matrix& sort_obj, const Matrix& obj, Index n, const Matrix& reference_set,
                                const Vector& ideal, Rng& rng);

// ---------------------------------------------------------------------------
// MOEA/D

struct MoeadState {
    Matrix weights;
    std::vector<std::vector<Index>> neighbours; // nearest first, self included
    Vector ideal;
};

// Weight vectors (N of them) and neighbourhoods of size T.
MoeadState moead_setup(int N, int M, int T);
Matrix moead_weights(int N, int M);
// One pass over all subproblems.
void moead_generation(Run& run, MoeadState& state, Population& pop);

// NSGAII, SPEA2, MOEAD, IBEA, NSGAIII.
void register_algorithms(Registry& registry);

} // namespace paretokit

#endif // PARETOKIT_ALGORITHMS_HPP
