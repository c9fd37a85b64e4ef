#ifndef PARETOKIT_PROBLEMS_HPP
#define PARETOKIT_PROBLEMS_HPP

// ZDT and DTLZ benchmark suites, plus simplex-lattice weight generation.

#include "paretokit/core.hpp"
#include "paretokit/problem.hpp"
#include "paretokit/registry.hpp"

#include <cstdint>
#include <memory>
#include <string>

namespace paretokit {

// C(n, k); DomainError if it does not fit in 64 bits.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Das-Dennis simplex lattice: every vector with entries in {0, 1/H, ..., 1}
/// summing to one, C(H+M-1, M-1) rows in lexicographic order.
Matrix das_dennis(int M, int H);

// Smallest H whose lattice has at least `count` points.
int das_dennis_level(int M, Index count);
Matrix das_dennis_at_least(int M, Index count);

enum class ZdtVariant { zdt1 = 1, zdt2, zdt3, zdt4, zdt5, zdt6 };
enum class DtlzVariant { dtlz1 = 1, dtlz2, dtlz3, dtlz4, dtlz5, dtlz6, dtlz7 };

std::unique_ptr<Problem> make_zdt(ZdtVariant variant, int M = 0, int D = 0);
std::unique_ptr<Problem> make_dtlz(DtlzVariant variant, int M = 0, int D = 0);

// Looks `name` up in the registry and initializes it; M or D of 0 takes the default.
std::unique_ptr<Problem> problem_init(const std::string& name, int M = 0, int D = 0,
                                      const Registry& registry = builtin_registry());

// Smallest first objective reachable on ZDT6.
double zdt6_min_f1();

// Retained x-intervals of DTLZ7's disconnected front: [0, a] and (b, c].
struct Dtlz7Intervals {
    double a;
    double b;
    double c;
};
const Dtlz7Intervals& dtlz7_intervals();

void register_problems(Registry& registry);

} // namespace paretokit

#endif // PARETOKIT_PROBLEMS_HPP
