#ifndef PARETOKIT_INDICATORS_HPP
#define PARETOKIT_INDICATORS_HPP

// Performance indicators over objective matrices (one row per point,
// minimization). Generic over the Eigen expression and scalar type.

#include "paretokit/core.hpp"
#include "paretokit/registry.hpp"
#include "paretokit/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace paretokit {

struct IndicatorResult {
    std::string name;
    double score = 0.0;
    Direction direction = Direction::minimize;
    std::string reference_used;
};

namespace detail {

template <class A, class B>
void require_same_width(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b, const char* what) {
    if (a.rows() == 0 || b.rows() == 0) {
        throw DomainError(std::string(what) + ": empty point set");
    }
    if (a.cols() != b.cols()) {
        throw DomainError(std::string(what) + ": objective counts differ");
    }
}

// Mean over rows of `from` of the Euclidean distance to the nearest row of `to`.
template <class A, class B>
typename A::Scalar mean_min_distance(const Eigen::MatrixBase<A>& from, const Eigen::MatrixBase<B>& to) {
    using Scalar = typename A::Scalar;
    Scalar total = 0;
    for (Index i = 0; i < from.rows(); ++i) {
        Scalar best = std::numeric_limits<Scalar>::infinity();
        for (Index j = 0; j < to.rows(); ++j) {
            best = std::min(best, (from.row(i) - to.row(j)).squaredNorm());
        }
        total += std::sqrt(best);
    }
    return total / static_cast<Scalar>(from.rows());
}

template <class Scalar>
using DenseMat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// Slicing-objectives recursion; every row strictly dominates `ref`.
template <class Scalar>
Scalar hv_recursive(const DenseMat<Scalar>& pts, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& ref, Index dims) {
    const Index n = pts.rows();
    if (n == 0) {
        return 0;
    }
    if (dims == 1) {
        return ref(0) - pts.col(0).minCoeff();
    }
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    const Index last = dims - 1;
    std::sort(order.begin(), order.end(), [&](Index a, Index b) { return pts(a, last) < pts(b, last); });
    if (dims == 2) {
        Scalar area = 0;
        Scalar best_x = ref(0);
        for (std::size_t k = 0; k < order.size(); ++k) {
            const Index i = order[k];
            best_x = std::min(best_x, pts(i, 0));
            const Scalar next_y = k + 1 < order.size() ? pts(order[k + 1], last) : ref(last);
            area += (ref(0) - best_x) * (next_y - pts(i, last));
        }
        return area;
    }
    Scalar volume = 0;
    DenseMat<Scalar> slice(n, last);
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> sub_ref = ref.head(last);
    for (std::size_t k = 0; k < order.size(); ++k) {
        slice.row(static_cast<Index>(k)) = pts.row(order[k]).head(last);
        const Scalar next = k + 1 < order.size() ? pts(order[k + 1], last) : ref(last);
        const Scalar height = next - pts(order[k], last);
        if (height > 0) {
            const DenseMat<Scalar> active = slice.topRows(static_cast<Index>(k) + 1);
            volume += hv_recursive<Scalar>(active, sub_ref, last) * height;
        }
    }
    return volume;
}

template <class Derived, class RefDerived>
DenseMat<typename Derived::Scalar> contributing_points(const Eigen::MatrixBase<Derived>& pop,
                                                       const Eigen::MatrixBase<RefDerived>& ref) {
    using Scalar = typename Derived::Scalar;
    std::vector<Index> keep;
    for (Index i = 0; i < pop.rows(); ++i) {
        bool inside = true;
        for (Index k = 0; k < pop.cols() && inside; ++k) {
            inside = pop(i, k) < ref(k);
        }
        if (inside) {
            keep.push_back(i);
        }
    }
    DenseMat<Scalar> out(static_cast<Index>(keep.size()), pop.cols());
    for (std::size_t r = 0; r < keep.size(); ++r) {
        out.row(static_cast<Index>(r)) = pop.row(keep[r]);
    }
    return out;
}

} // namespace detail

/// Inverted generational distance: mean over reference points of the
/// distance to the nearest population point.
template <class A, class B>
typename A::Scalar igd(const Eigen::MatrixBase<A>& pop_obj, const Eigen::MatrixBase<B>& pf) {
    detail::require_same_width(pop_obj, pf, "igd");
    return detail::mean_min_distance(pf, pop_obj);
}

// Generational distance, arithmetic-mean form.
template <class A, class B>
typename A::Scalar gd(const Eigen::MatrixBase<A>& pop_obj, const Eigen::MatrixBase<B>& pf) {
    detail::require_same_width(pop_obj, pf, "gd");
    return detail::mean_min_distance(pop_obj, pf);
}

enum class HvMethod { automatic, exact, monte_carlo };

struct HvOptions {
    HvMethod method = HvMethod::automatic;
    Index exact_max_objectives = 4;
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 0x5eed;
};

struct HvResult {
    double hv = 0.0;
    double nhv = 0.0;
    bool exact = true;
    std::string reference_used;
};

template <class Derived, class RefDerived>
typename Derived::Scalar hv_exact(const Eigen::MatrixBase<Derived>& pop, const Eigen::MatrixBase<RefDerived>& ref) {
    using Scalar = typename Derived::Scalar;
    if (pop.cols() != ref.size()) {
        throw DomainError("hv: reference point length differs from objective count");
    }
    const auto pts = detail::contributing_points(pop, ref);
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> r = ref;
    return detail::hv_recursive<Scalar>(pts, r, pop.cols());
}

// Uniform sampling of the box spanned by the contributing points and `ref`.
template <class Derived, class RefDerived>
typename Derived::Scalar hv_monte_carlo(const Eigen::MatrixBase<Derived>& pop, const Eigen::MatrixBase<RefDerived>& ref,
                                        std::uint64_t samples, std::uint64_t seed) {
    using Scalar = typename Derived::Scalar;
    if (pop.cols() != ref.size()) {
        throw DomainError("hv: reference point length differs from objective count");
    }
    const auto pts = detail::contributing_points(pop, ref);
    if (pts.rows() == 0 || samples == 0) {
        return 0;
    }
    const Index m = pop.cols();
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> lo = pts.colwise().minCoeff().transpose();
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> hi = ref;
    const Scalar box = (hi - lo).prod();
    Rng rng(seed);
    std::vector<Scalar> sample(static_cast<std::size_t>(m));
    std::uint64_t hits = 0;
    for (std::uint64_t s = 0; s < samples; ++s) {
        for (Index k = 0; k < m; ++k) {
            sample[static_cast<std::size_t>(k)] = lo(k) + (hi(k) - lo(k)) * static_cast<Scalar>(rng.uniform());
        }
        for (Index i = 0; i < pts.rows(); ++i) {
            bool covers = true;
            for (Index k = 0; k < m && covers; ++k) {
                covers = pts(i, k) <= sample[static_cast<std::size_t>(k)];
            }
            if (covers) {
                ++hits;
                break;
            }
        }
    }
    return box * static_cast<Scalar>(hits) / static_cast<Scalar>(samples);
}

/// Hypervolume against an explicit reference point. nhv divides by the
/// volume of the box between `origin` (zeros by default) and the reference.
template <class Derived, class RefDerived>
HvResult hv(const Eigen::MatrixBase<Derived>& pop, const Eigen::MatrixBase<RefDerived>& ref,
            const HvOptions& opts = {}, std::optional<Vector> origin = std::nullopt) {
    const Index m = pop.cols();
    if (ref.size() != m) {
        throw DomainError("hv: reference point length differs from objective count");
    }
    bool exact = opts.method == HvMethod::exact;
    if (opts.method == HvMethod::automatic) {
        exact = m <= opts.exact_max_objectives;
    }
    HvResult out;
    out.exact = exact;
    out.hv = exact ? static_cast<double>(hv_exact(pop, ref))
                   : static_cast<double>(hv_monte_carlo(pop, ref, opts.samples, opts.seed));
    const Vector o = origin.value_or(Vector::Zero(m));
    const double extent = (ref.template cast<double>() - o).prod();
    out.nhv = extent > 0 ? out.hv / extent : 0.0;
    out.reference_used = exact ? "exact" : "monte-carlo " + std::to_string(opts.samples) + " samples";
    return out;
}

/// Default reference: objectives scaled by the PF sample's per-objective
/// range, reference point 1.1 in every objective.
template <class A, class B>
HvResult hv_normalized(const Eigen::MatrixBase<A>& pop, const Eigen::MatrixBase<B>& pf, const HvOptions& opts = {}) {
    detail::require_same_width(pop, pf, "hv");
    const Index m = pop.cols();
    const Matrix p = pop.template cast<double>();
    const RowVector lo = pf.template cast<double>().colwise().minCoeff();
    RowVector range = pf.template cast<double>().colwise().maxCoeff() - lo;
    for (Index k = 0; k < m; ++k) {
        if (!(range(k) > 0)) {
            range(k) = 1.0;
        }
    }
    const Matrix scaled = (p.rowwise() - lo).array().rowwise() / range.array();
    const Vector ref = Vector::Constant(m, 1.1);
    HvResult out = hv(scaled, ref, opts);
    out.reference_used = "PF-normalized, r=1.1, " + out.reference_used;
    return out;
}

// Population standard deviation of nearest-neighbour L1 distances.
template <class Derived>
typename Derived::Scalar spacing(const Eigen::MatrixBase<Derived>& pop) {
    using Scalar = typename Derived::Scalar;
    const Index n = pop.rows();
    if (n < 2) {
        throw DomainError("spacing: needs at least two points");
    }
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> d(n);
    for (Index i = 0; i < n; ++i) {
        Scalar best = std::numeric_limits<Scalar>::infinity();
        for (Index j = 0; j < n; ++j) {
            if (j != i) {
                best = std::min(best, (pop.row(i) - pop.row(j)).template lpNorm<1>());
            }
        }
        d(i) = best;
    }
    const Scalar mean = d.mean();
    return std::sqrt((d.array() - mean).square().sum() / static_cast<Scalar>(n));
}

/// Spread (Delta). Extremes are the PF points maximizing each objective.
/// Two objectives: gaps between neighbours sorted on f1; more objectives:
/// nearest-neighbour distances.
template <class A, class B>
typename A::Scalar spread(const Eigen::MatrixBase<A>& pop, const Eigen::MatrixBase<B>& pf) {
    using Scalar = typename A::Scalar;
    detail::require_same_width(pop, pf, "spread");
    const Index n = pop.rows();
    const Index m = pop.cols();
    if (n < 2) {
        throw DomainError("spread: needs at least two points");
    }
    Scalar extreme_total = 0;
    for (Index k = 0; k < m; ++k) {
        Index e = 0;
        pf.col(k).maxCoeff(&e);
        Scalar best = std::numeric_limits<Scalar>::infinity();
        for (Index i = 0; i < n; ++i) {
            best = std::min(best, static_cast<Scalar>((pf.row(e).template cast<Scalar>() - pop.row(i)).norm()));
        }
        extreme_total += best;
    }
    std::vector<Scalar> gaps;
    if (m == 2) {
        std::vector<Index> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), Index{0});
        std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return pop(a, 0) < pop(b, 0); });
        for (std::size_t k = 0; k + 1 < order.size(); ++k) {
            gaps.push_back((pop.row(order[k + 1]) - pop.row(order[k])).norm());
        }
    } else {
        for (Index i = 0; i < n; ++i) {
            Scalar best = std::numeric_limits<Scalar>::infinity();
            for (Index j = 0; j < n; ++j) {
                if (j != i) {
                    best = std::min(best, static_cast<Scalar>((pop.row(i) - pop.row(j)).norm()));
                }
            }
            gaps.push_back(best);
        }
    }
    const Scalar mean = std::accumulate(gaps.begin(), gaps.end(), Scalar{0}) / static_cast<Scalar>(gaps.size());
    Scalar deviation = 0;
    for (Scalar g : gaps) {
        deviation += std::abs(g - mean);
    }
    const Scalar numerator = extreme_total + deviation;
    const Scalar denominator = extreme_total + static_cast<Scalar>(gaps.size()) * mean;
    if (denominator == 0) {
        return numerator == 0 ? Scalar{0} : std::numeric_limits<Scalar>::infinity();
    }
    return numerator / denominator;
}

// C(A, B): share of B weakly dominated by some member of A.
template <class A, class B>
double coverage(const Eigen::MatrixBase<A>& set_a, const Eigen::MatrixBase<B>& set_b) {
    detail::require_same_width(set_a, set_b, "coverage");
    Index covered = 0;
    for (Index j = 0; j < set_b.rows(); ++j) {
        for (Index i = 0; i < set_a.rows(); ++i) {
            if ((set_a.row(i).array() <= set_b.row(j).array()).all()) {
                ++covered;
                break;
            }
        }
    }
    return static_cast<double>(covered) / static_cast<double>(set_b.rows());
}

// GD, IGD, HV, NHV, Spacing, Spread, Coverage.
void register_indicators(Registry& registry);

// Scores `pop_obj` with indicator `name` against a PF sample, resolving the
// indicator's parameters from `params`.
IndicatorResult evaluate_indicator(const Registry& registry, const std::string& name, const Matrix& pop_obj,
                                   const Matrix& pf, const std::map<std::string, std::vector<double>>& params = {});

} // namespace paretokit

#endif // PARETOKIT_INDICATORS_HPP
