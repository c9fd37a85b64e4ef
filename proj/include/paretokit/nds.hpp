#ifndef PARETOKIT_NDS_HPP
#define PARETOKIT_NDS_HPP

// Non-dominated sorting. All routines assume minimization and take the
// objective matrix with one row per individual.

#include "paretokit/core.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace paretokit {

enum class Dominance { a_dominates, b_dominates, incomparable, equal };

template <class DerivedA, class DerivedB>
Dominance dominates(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    if (a.size() != b.size()) {
        throw DomainError("dominates: length mismatch (" + std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()) + ")");
    }
    bool a_better = false;
    bool b_better = false;
    for (Index i = 0; i < a.size(); ++i) {
        if (a(i) < b(i)) {
            a_better = true;
        } else if (b(i) < a(i)) {
            b_better = true;
        }
        if (a_better && b_better) {
            return Dominance::incomparable;
        }
    }
    if (a_better) {
        return Dominance::a_dominates;
    }
    return b_better ? Dominance::b_dominates : Dominance::equal;
}

enum class SortMethod { automatic, brute, fast, ens_ss, t_ens };

SortMethod sort_method_from_string(const std::string& s);

inline constexpr int kUnranked = std::numeric_limits<int>::max();

struct FrontAssignment {
    std::vector<int> front_no; // 1-based; kUnranked past the stopping front
    int max_front = 0;

    Index ranked_count() const {
        return static_cast<Index>(
            std::count_if(front_no.begin(), front_no.end(), [](int f) { return f != kUnranked; }));
    }
};

namespace detail {

template <class Mat>
bool row_weakly_dominates(const Mat& obj, Index a, Index b) {
    for (Index k = 0; k < obj.cols(); ++k) {
        if (obj(a, k) > obj(b, k)) {
            return false;
        }
    }
    return true;
}

template <class Mat>
bool row_dominates(const Mat& obj, Index a, Index b) {
    bool strict = false;
    for (Index k = 0; k < obj.cols(); ++k) {
        if (obj(a, k) > obj(b, k)) {
            return false;
        }
        if (obj(a, k) < obj(b, k)) {
            strict = true;
        }
    }
    return strict;
}

inline Index sort_target(Index n_sort, Index rows) { return std::min(n_sort, rows); }

// Rows sorted lexicographically, with identical rows collapsed.
template <class Mat>
struct UniqueRows {
    Mat rows;                     // unique rows in lexicographic order
    std::vector<Index> group_of;  // input row -> unique row
    std::vector<Index> count;     // multiplicity per unique row
};

template <class Mat>
UniqueRows<Mat> unique_sorted_rows(const Mat& obj) {
    const Index n = obj.rows();
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    auto row_less = [&](Index a, Index b) {
        for (Index k = 0; k < obj.cols(); ++k) {
            if (obj(a, k) < obj(b, k)) {
                return true;
            }
            if (obj(b, k) < obj(a, k)) {
                return false;
            }
        }
        return false;
    };
    std::stable_sort(order.begin(), order.end(), row_less);

    UniqueRows<Mat> out;
    out.group_of.assign(static_cast<std::size_t>(n), 0);
    std::vector<Index> reps;
    for (Index pos = 0; pos < n; ++pos) {
        const Index i = order[static_cast<std::size_t>(pos)];
        if (reps.empty() || row_less(reps.back(), i)) {
            reps.push_back(i);
            out.count.push_back(0);
        }
        out.group_of[static_cast<std::size_t>(i)] = static_cast<Index>(reps.size()) - 1;
        ++out.count.back();
    }
    out.rows.resize(static_cast<Index>(reps.size()), obj.cols());
    for (std::size_t u = 0; u < reps.size(); ++u) {
        out.rows.row(static_cast<Index>(u)) = obj.row(reps[u]);
    }
    return out;
}

template <class Mat>
FrontAssignment expand(const UniqueRows<Mat>& uniq, const std::vector<int>& unique_front, int max_front) {
    FrontAssignment fa;
    fa.max_front = max_front;
    fa.front_no.resize(uniq.group_of.size());
    for (std::size_t i = 0; i < uniq.group_of.size(); ++i) {
        fa.front_no[i] = unique_front[static_cast<std::size_t>(uniq.group_of[i])];
    }
    return fa;
}

template <class Mat>
FrontAssignment sort_brute(const Mat& obj, Index n_sort) {
    const Index n = obj.rows();
    FrontAssignment fa;
    fa.front_no.assign(static_cast<std::size_t>(n), kUnranked);
    Index ranked = 0;
    const Index target = sort_target(n_sort, n);
    while (ranked < target) {
        ++fa.max_front;
        std::vector<Index> front;
        for (Index i = 0; i < n; ++i) {
            if (fa.front_no[static_cast<std::size_t>(i)] != kUnranked) {
                continue;
            }
            bool dominated = false;
            for (Index j = 0; j < n && !dominated; ++j) {
                dominated = fa.front_no[static_cast<std::size_t>(j)] == kUnranked && row_dominates(obj, j, i);
            }
            if (!dominated) {
                front.push_back(i);
            }
        }
        for (Index i : front) {
            fa.front_no[static_cast<std::size_t>(i)] = fa.max_front;
        }
        ranked += static_cast<Index>(front.size());
    }
    return fa;
}

template <class Mat>
FrontAssignment sort_fast(const Mat& obj, Index n_sort) {
    const Index n = obj.rows();
    std::vector<std::vector<Index>> dominated_by_me(static_cast<std::size_t>(n));
    std::vector<Index> dominator_count(static_cast<std::size_t>(n), 0);
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            if (row_dominates(obj, i, j)) {
                dominated_by_me[static_cast<std::size_t>(i)].push_back(j);
                ++dominator_count[static_cast<std::size_t>(j)];
            } else if (row_dominates(obj, j, i)) {
                dominated_by_me[static_cast<std::size_t>(j)].push_back(i);
                ++dominator_count[static_cast<std::size_t>(i)];
            }
        }
    }
    FrontAssignment fa;
    fa.front_no.assign(static_cast<std::size_t>(n), kUnranked);
    std::vector<Index> current;
    for (Index i = 0; i < n; ++i) {
        if (dominator_count[static_cast<std::size_t>(i)] == 0) {
            current.push_back(i);
        }
    }
    Index ranked = 0;
    const Index target = sort_target(n_sort, n);
    while (ranked < target && !current.empty()) {
        ++fa.max_front;
        std::vector<Index> next;
        for (Index i : current) {
            fa.front_no[static_cast<std::size_t>(i)] = fa.max_front;
            for (Index j : dominated_by_me[static_cast<std::size_t>(i)]) {
                if (--dominator_count[static_cast<std::size_t>(j)] == 0) {
                    next.push_back(j);
                }
            }
        }
        ranked += static_cast<Index>(current.size());
        current = std::move(next);
    }
    return fa;
}

// Efficient non-dominated sort with sequential search, front by front over
// the lexicographically sorted unique rows.
template <class Mat>
FrontAssignment sort_ens_ss(const Mat& obj, Index n_sort) {
    const auto uniq = unique_sorted_rows(obj);
    const Mat& pop = uniq.rows;
    const Index n = pop.rows();
    const Index m = pop.cols();
    std::vector<int> front(static_cast<std::size_t>(n), kUnranked);
    std::vector<std::vector<Index>> members;
    Index ranked = 0;
    const Index target = sort_target(n_sort, obj.rows());
    int max_front = 0;
    while (ranked < target) {
        ++max_front;
        members.emplace_back();
        auto& current = members.back();
        for (Index i = 0; i < n; ++i) {
            if (front[static_cast<std::size_t>(i)] != kUnranked) {
                continue;
            }
            bool dominated = false;
            for (auto it = current.rbegin(); it != current.rend(); ++it) {
                Index k = 1;
                while (k < m && pop(i, k) >= pop(*it, k)) {
                    ++k;
                }
                dominated = k >= m;
                // With two objectives the last member has the smallest second
                // objective, so it alone decides.
                if (dominated || m == 2) {
                    break;
                }
            }
            if (!dominated) {
                front[static_cast<std::size_t>(i)] = max_front;
                current.push_back(i);
                ranked += uniq.count[static_cast<std::size_t>(i)];
            }
        }
    }
    return expand(uniq, front, max_front);
}

// Tree-based ENS. Each front is a tree; a node orders objectives 2..M by its
// own values (largest first) and hangs a later member p under branch b, the
// first position in that order where p is strictly better. Every member in
// branch b of q is then no better than q at positions < b, so when the query
// point first beats q at position b*, branches past b* cannot dominate it.
template <class Mat>
FrontAssignment sort_t_ens(const Mat& obj, Index n_sort) {
    if (obj.cols() < 3) {
        return sort_ens_ss(obj, n_sort);
    }
    const auto uniq = unique_sorted_rows(obj);
    const Mat& pop = uniq.rows;
    const Index n = pop.rows();
    const Index branches = pop.cols() - 1;

    std::vector<std::vector<Index>> order(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
        auto& ord = order[static_cast<std::size_t>(i)];
        ord.resize(static_cast<std::size_t>(branches));
        std::iota(ord.begin(), ord.end(), Index{1});
        std::stable_sort(ord.begin(), ord.end(), [&](Index a, Index b) { return pop(i, a) > pop(i, b); });
    }
    // children[q * branches + b]: child of q at branch position b, or -1
    std::vector<Index> children(static_cast<std::size_t>(n * branches), -1);

    auto first_better = [&](Index p, Index q) -> Index {
        const auto& ord = order[static_cast<std::size_t>(q)];
        for (Index b = 0; b < branches; ++b) {
            const Index k = ord[static_cast<std::size_t>(b)];
            if (pop(p, k) < pop(q, k)) {
                return b;
            }
        }
        return branches;
    };

    std::vector<int> front(static_cast<std::size_t>(n), kUnranked);
    std::vector<Index> stack;
    Index ranked = 0;
    const Index target = sort_target(n_sort, obj.rows());
    int max_front = 0;
    while (ranked < target) {
        ++max_front;
        Index root = -1;
        for (Index p = 0; p < n; ++p) {
            if (front[static_cast<std::size_t>(p)] != kUnranked) {
                continue;
            }
            if (root < 0) {
                root = p;
                front[static_cast<std::size_t>(p)] = max_front;
                ranked += uniq.count[static_cast<std::size_t>(p)];
                continue;
            }
            bool dominated = false;
            stack.assign(1, root);
            while (!stack.empty() && !dominated) {
                const Index q = stack.back();
                stack.pop_back();
                const Index b_star = first_better(p, q);
                if (b_star == branches) {
                    dominated = true;
                    break;
                }
                for (Index b = 0; b <= b_star; ++b) {
                    const Index c = children[static_cast<std::size_t>(q * branches + b)];
                    if (c >= 0) {
                        stack.push_back(c);
                    }
                }
            }
            if (dominated) {
                continue;
            }
            Index q = root;
            while (true) {
                const Index b = first_better(p, q);
                Index& slot = children[static_cast<std::size_t>(q * branches + b)];
                if (slot < 0) {
                    slot = p;
                    break;
                }
                q = slot;
            }
            front[static_cast<std::size_t>(p)] = max_front;
            ranked += uniq.count[static_cast<std::size_t>(p)];
        }
    }
    return expand(uniq, front, max_front);
}

} // namespace detail

/// Partial non-dominated sort: fronts are peeled until at least n_sort rows
/// are ranked. The whole critical front is ranked; rows past it carry kUnranked.
/// Identical rows always share a front.
template <class Derived>
FrontAssignment nd_sort(const Eigen::MatrixBase<Derived>& objectives, Index n_sort,
                        SortMethod method = SortMethod::automatic) {
    using Scalar = typename Derived::Scalar;
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    if (objectives.rows() < 1) {
        throw DomainError("nd_sort: objective matrix has no rows");
    }
    if (objectives.cols() < 1) {
        throw DomainError("nd_sort: objective matrix has no columns");
    }
    n_sort = std::clamp<Index>(n_sort, 1, objectives.rows());
    const Mat obj = objectives;
    if (method == SortMethod::automatic) {
        method = obj.cols() == 2 ? SortMethod::ens_ss : SortMethod::t_ens;
    }
    switch (method) {
    case SortMethod::brute:
        return detail::sort_brute(obj, n_sort);
    case SortMethod::fast:
        return detail::sort_fast(obj, n_sort);
    case SortMethod::ens_ss:
        return detail::sort_ens_ss(obj, n_sort);
    case SortMethod::t_ens:
    default:
        return detail::sort_t_ens(obj, n_sort);
    }
}

template <class Derived>
FrontAssignment nd_sort(const Eigen::MatrixBase<Derived>& objectives, SortMethod method = SortMethod::automatic) {
    return nd_sort(objectives, objectives.rows(), method);
}

// Row indices of the first front.
template <class Derived>
std::vector<Index> non_dominated_indices(const Eigen::MatrixBase<Derived>& objectives) {
    const auto fa = nd_sort(objectives, 1);
    std::vector<Index> out;
    for (std::size_t i = 0; i < fa.front_no.size(); ++i) {
        if (fa.front_no[i] == 1) {
            out.push_back(static_cast<Index>(i));
        }
    }
    return out;
}

} // namespace paretokit

#endif // PARETOKIT_NDS_HPP
