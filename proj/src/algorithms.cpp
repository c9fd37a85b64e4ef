#include "paretokit/algorithms.hpp"

#include "paretokit/kernel.hpp"
#include "paretokit/problems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace paretokit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<Index> iota_indices(Index n) {
    std::vector<Index> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), Index{0});
    return v;
}

Matrix pairwise_distances(const Matrix& obj) {
    const Index n = obj.rows();
    Matrix d(n, n);
    for (Index i = 0; i < n; ++i) {
        d(i, i) = kInf;
        for (Index j = i + 1; j < n; ++j) {
            d(i, j) = d(j, i) = (obj.row(i) - obj.row(j)).norm();
        }
    }
    return d;
}

Population pick(const Population& pop, const std::vector<Index>& rows) { return subset(pop, rows); }

} // namespace

Matrix constrained_objectives(const Matrix& obj, const Matrix& con) {
    if (con.cols() == 0 || obj.rows() == 0) {
        return obj;
    }
    const Vector cv = con.cwiseMax(0.0).rowwise().sum();
    if ((cv.array() <= 0.0).all()) {
        return obj;
    }
    const RowVector worst = obj.colwise().maxCoeff();
    Matrix out = obj;
    for (Index i = 0; i < obj.rows(); ++i) {
        if (cv(i) > 0.0) {
            out.row(i) = worst.array() + cv(i);
        }
    }
    return out;
}

Matrix selection_objectives(const Population& pop) {
    return constrained_objectives(objs(pop), cons(pop));
}

Vector violations(const Population& pop) {
    Vector v(static_cast<Index>(pop.size()));
    for (std::size_t i = 0; i < pop.size(); ++i) {
        v(static_cast<Index>(i)) = pop[i].violation();
    }
    return v;
}

std::vector<double> crowding_distance(const Matrix& obj, const FrontAssignment& fronts) {
    const Index n = obj.rows();
    const Index m = obj.cols();
    std::vector<double> dist(static_cast<std::size_t>(n), 0.0);
    for (int f = 1; f <= fronts.max_front; ++f) {
        std::vector<Index> members;
        for (Index i = 0; i < n; ++i) {
            if (fronts.front_no[static_cast<std::size_t>(i)] == f) {
                members.push_back(i);
            }
        }
        if (members.size() <= 2) {
            for (Index i : members) {
                dist[static_cast<std::size_t>(i)] = kInf;
            }
            continue;
        }
        for (Index k = 0; k < m; ++k) {
            auto order = members;
            std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return obj(a, k) < obj(b, k); });
            const double lo = obj(order.front(), k);
            const double hi = obj(order.back(), k);
            const double range = hi - lo;
            if (!(range > 0.0)) {
                continue;
            }
            dist[static_cast<std::size_t>(order.front())] = kInf;
            dist[static_cast<std::size_t>(order.back())] = kInf;
            for (std::size_t j = 1; j + 1 < order.size(); ++j) {
                dist[static_cast<std::size_t>(order[j])] += (obj(order[j + 1], k) - obj(order[j - 1], k)) / range;
            }
        }
    }
    return dist;
}

std::vector<Index> tournament_select(std::span<const std::vector<double>> keys, Index count, Rng& rng) {
    std::vector<Index> winners;
    if (count <= 0) {
        return winners;
    }
    if (keys.empty() || keys.front().empty()) {
        throw DomainError("tournament_select: no candidates");
    }
    const auto n = static_cast<std::uint64_t>(keys.front().size());
    for (const auto& k : keys) {
        if (k.size() != n) {
            throw DomainError("tournament_select: key lengths differ");
        }
    }
    winners.reserve(static_cast<std::size_t>(count));
    for (Index t = 0; t < count; ++t) {
        const auto a = static_cast<std::size_t>(rng.uniform_int(n));
        const auto b = static_cast<std::size_t>(rng.uniform_int(n));
        int verdict = 0; // <0: a wins, >0: b wins
        for (const auto& key : keys) {
            if (key[a] < key[b]) {
                verdict = -1;
                break;
            }
            if (key[b] < key[a]) {
                verdict = 1;
                break;
            }
        }
        if (verdict == 0) {
            verdict = rng.bernoulli(0.5) ? -1 : 1;
        }
        winners.push_back(static_cast<Index>(verdict < 0 ? a : b));
    }
    return winners;
}

Spea2Fitness spea2_fitness_detail(const Matrix& obj) {
    const Index n = obj.rows();
    if (n < 1) {
        throw DomainError("spea2_fitness: empty population");
    }
    Spea2Fitness out;
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> dom(n, n);
    dom.setConstant(false);
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            const auto d = dominates(obj.row(i), obj.row(j));
            if (d == Dominance::a_dominates) {
                dom(i, j) = true;
            } else if (d == Dominance::b_dominates) {
                dom(j, i) = true;
            }
        }
    }
    out.strength = dom.cast<double>().rowwise().sum();
    out.raw = Vector::Zero(n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            if (dom(j, i)) {
                out.raw(i) += out.strength(j);
            }
        }
    }
    const Matrix dist = pairwise_distances(obj);
    const auto k = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n))));
    out.fitness = out.raw;
    std::vector<double> row(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            row[static_cast<std::size_t>(j)] = dist(i, j);
        }
        std::nth_element(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(k - 1), row.end());
        const double sigma = row[k - 1];
        out.fitness(i) += 1.0 / (sigma + 2.0);
    }
    return out;
}

double tchebycheff(const Vector& obj, const Vector& weight, const Vector& ideal) {
    if (obj.size() != weight.size() || obj.size() != ideal.size()) {
        throw DomainError("tchebycheff: length mismatch");
    }
    double value = 0.0;
    for (Index i = 0; i < obj.size(); ++i) {
        value = std::max(value, std::max(weight(i), 1e-6) * std::abs(obj(i) - ideal(i)));
    }
    return value;
}

EpsilonFitness epsilon_fitness_detail(const Matrix& obj, double kappa) {
    if (!(kappa > 0.0)) {
        throw ConfigError("IBEA kappa must be positive");
    }
    const Index n = obj.rows();
    const Index m = obj.cols();
    const RowVector lo = obj.colwise().minCoeff();
    const RowVector hi = obj.colwise().maxCoeff();
    Matrix norm(n, m);
    for (Index k = 0; k < m; ++k) {
        const double range = hi(k) - lo(k);
        for (Index i = 0; i < n; ++i) {
            norm(i, k) = range > 0.0 ? (obj(i, k) - lo(k)) / range : 0.0;
        }
    }
    EpsilonFitness out;
    out.indicator.resize(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            out.indicator(i, j) = (norm.row(i) - norm.row(j)).maxCoeff();
        }
    }
    out.scale = n > 0 ? out.indicator.cwiseAbs().maxCoeff() : 1.0;
    if (!(out.scale > 0.0)) {
        out.scale = 1.0;
    }
    out.fitness = Vector::Zero(n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            if (j != i) {
                out.fitness(i) -= std::exp(-out.indicator(j, i) / (out.scale * kappa));
            }
        }
    }
    return out;
}

double perpendicular_distance(const Vector& point, const Vector& direction) {
    const double dd = direction.squaredNorm();
    if (!(dd > 0.0)) {
        return point.norm();
    }
    const Vector projection = (point.dot(direction) / dd) * direction;
    return (point - projection).norm();
}

NicheAssociation nsga3_normalize_associate(const Matrix& obj, const Matrix& reference_set, std::optional<Vector> ideal) {
    const Index n = obj.rows();
    const Index m = obj.cols();
    if (reference_set.cols() != m) {
        throw DomainError("nsga3_normalize_associate: reference set width differs from objective count");
    }
    NicheAssociation out;
    out.ideal = ideal.value_or(Vector(obj.colwise().minCoeff().transpose()));
    const Matrix shifted = obj.rowwise() - out.ideal.transpose();

    // Extreme point per axis by achievement scalarization.
    Matrix extremes(m, m);
    for (Index axis = 0; axis < m; ++axis) {
        Vector w = Vector::Constant(m, 1e-6);
        w(axis) = 1.0;
        Index best = 0;
        double best_value = kInf;
        for (Index i = 0; i < n; ++i) {
            const double asf = (shifted.row(i).transpose().array() / w.array()).maxCoeff();
            if (asf < best_value) {
                best_value = asf;
                best = i;
            }
        }
        extremes.row(axis) = shifted.row(best);
    }
    bool fallback = true;
    Eigen::FullPivLU<Matrix> lu(extremes);
    if (lu.isInvertible()) {
        const Vector h = lu.solve(Vector::Ones(m));
        out.intercepts = h.cwiseInverse();
        fallback = !out.intercepts.allFinite() || (out.intercepts.array() <= 1e-10).any();
    }
    if (fallback) {
        out.intercepts = shifted.colwise().maxCoeff().transpose();
        for (Index k = 0; k < m; ++k) {
            if (!(out.intercepts(k) > 1e-10)) {
                out.intercepts(k) = 1.0;
            }
        }
    }
    out.normalized = shifted.array().rowwise() / out.intercepts.transpose().array();

    out.reference.assign(static_cast<std::size_t>(n), 0);
    out.distance.resize(n);
    for (Index i = 0; i < n; ++i) {
        const Vector p = out.normalized.row(i).transpose();
        double best = kInf;
        for (Index r = 0; r < reference_set.rows(); ++r) {
            const double d = perpendicular_distance(p, reference_set.row(r).transpose());
            if (d < best) {
                best = d;
                out.reference[static_cast<std::size_t>(i)] = r;
            }
        }
        out.distance(i) = best;
    }
    return out;
}

Nsga2Selection nsga2_select(const Matrix& obj, Index n) {
    const auto fronts = nd_sort(obj, n);
    const auto cd = crowding_distance(obj, fronts);
    std::vector<bool> keep(static_cast<std::size_t>(obj.rows()), false);
    std::vector<Index> last;
    Index taken = 0;
    for (Index i = 0; i < obj.rows(); ++i) {
        const int f = fronts.front_no[static_cast<std::size_t>(i)];
        if (f < fronts.max_front) {
            keep[static_cast<std::size_t>(i)] = true;
            ++taken;
        } else if (f == fronts.max_front) {
            last.push_back(i);
        }
    }
    std::stable_sort(last.begin(), last.end(),
                     [&](Index a, Index b) { return cd[static_cast<std::size_t>(a)] > cd[static_cast<std::size_t>(b)]; });
    for (std::size_t k = 0; k < last.size() && taken < n; ++k, ++taken) {
        keep[static_cast<std::size_t>(last[k])] = true;
    }
    Nsga2Selection out;
    for (Index i = 0; i < obj.rows(); ++i) {
        if (keep[static_cast<std::size_t>(i)]) {
            out.kept.push_back(i);
            out.front_no.push_back(fronts.front_no[static_cast<std::size_t>(i)]);
            out.crowding.push_back(cd[static_cast<std::size_t>(i)]);
        }
    }
    return out;
}

std::vector<Index> spea2_truncation(const Matrix& obj, Index remove) {
    const Index n = obj.rows();
    const Matrix dist = pairwise_distances(obj);
    std::vector<bool> deleted(static_cast<std::size_t>(n), false);
    std::vector<Index> removed;
    while (static_cast<Index>(removed.size()) < remove) {
        std::vector<Index> remain;
        for (Index i = 0; i < n; ++i) {
            if (!deleted[static_cast<std::size_t>(i)]) {
                remain.push_back(i);
            }
        }
        std::vector<std::vector<double>> profiles(remain.size());
        for (std::size_t a = 0; a < remain.size(); ++a) {
            for (std::size_t b = 0; b < remain.size(); ++b) {
                profiles[a].push_back(dist(remain[a], remain[b]));
            }
            std::sort(profiles[a].begin(), profiles[a].end());
        }
        std::size_t victim = 0;
        for (std::size_t a = 1; a < remain.size(); ++a) {
            if (profiles[a] < profiles[victim]) {
                victim = a;
            }
        }
        deleted[static_cast<std::size_t>(remain[victim])] = true;
        removed.push_back(remain[victim]);
    }
    return removed;
}

Spea2Selection spea2_select(const Matrix& obj, Index n) {
    const Vector fitness = spea2_fitness(obj);
    const Index total = obj.rows();
    std::vector<bool> keep(static_cast<std::size_t>(total), false);
    std::vector<Index> archive;
    for (Index i = 0; i < total; ++i) {
        if (fitness(i) < 1.0) {
            keep[static_cast<std::size_t>(i)] = true;
            archive.push_back(i);
        }
    }
    const auto archived = static_cast<Index>(archive.size());
    if (archived < n) {
        auto order = iota_indices(total);
        std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return fitness(a) < fitness(b); });
        for (Index k = 0; k < std::min(n, total); ++k) {
            keep[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = true;
        }
    } else if (archived > n) {
        Matrix sub(archived, obj.cols());
        for (Index k = 0; k < archived; ++k) {
            sub.row(k) = obj.row(archive[static_cast<std::size_t>(k)]);
        }
        for (Index r : spea2_truncation(sub, archived - n)) {
            keep[static_cast<std::size_t>(archive[static_cast<std::size_t>(r)])] = false;
        }
    }
    Spea2Selection out;
    std::vector<double> fit;
    for (Index i = 0; i < total; ++i) {
        if (keep[static_cast<std::size_t>(i)]) {
            out.kept.push_back(i);
            fit.push_back(fitness(i));
        }
    }
    out.fitness = Eigen::Map<Vector>(fit.data(), static_cast<Index>(fit.size()));
    return out;
}

std::vector<Index> ibea_select(const Matrix& obj, Index n, double kappa) {
    const auto eps = epsilon_fitness_detail(obj, kappa);
    const Matrix weight = (-eps.indicator.array() / (eps.scale * kappa)).exp().matrix();
    std::vector<Index> next = iota_indices(obj.rows());
    std::vector<double> fitness(next.size());
    while (static_cast<Index>(next.size()) > n) {
        // Summed afresh over the survivors: adding removed terms back cancels badly.
        for (std::size_t k = 0; k < next.size(); ++k) {
            double f = 0.0;
            for (Index j : next) {
                if (j != next[k]) {
                    f += -weight(j, next[k]);
                }
            }
            fitness[k] = f;
        }
        std::size_t worst = 0;
        for (std::size_t k = 1; k < next.size(); ++k) {
            if (fitness[k] < fitness[worst]) {
                worst = k;
            }
        }
        next.erase(next.begin() + static_cast<std::ptrdiff_t>(worst));
        fitness.pop_back();
    }
    return next;
}

std::vector<Index> nsga3_select(const Matrix& sort_obj, const Matrix& obj, Index n, const Matrix& reference_set,
                                const Vector& ideal, Rng& rng) {
    const auto fronts = nd_sort(sort_obj, n);
    std::vector<Index> chosen;
    std::vector<Index> last;
    for (Index i = 0; i < obj.rows(); ++i) {
        const int f = fronts.front_no[static_cast<std::size_t>(i)];
        if (f < fronts.max_front) {
            chosen.push_back(i);
        } else if (f == fronts.max_front) {
            last.push_back(i);
        }
    }
    const Index needed = n - static_cast<Index>(chosen.size());
    if (needed >= static_cast<Index>(last.size())) {
        chosen.insert(chosen.end(), last.begin(), last.end());
        std::sort(chosen.begin(), chosen.end());
        return chosen;
    }
    std::vector<Index> candidates = chosen;
    candidates.insert(candidates.end(), last.begin(), last.end());
    Matrix sub(static_cast<Index>(candidates.size()), obj.cols());
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        sub.row(static_cast<Index>(k)) = obj.row(candidates[k]);
    }
    const auto assoc = nsga3_normalize_associate(sub, reference_set, ideal);
    const Index nz = reference_set.rows();
    std::vector<Index> rho(static_cast<std::size_t>(nz), 0);
    for (std::size_t k = 0; k < chosen.size(); ++k) {
        ++rho[static_cast<std::size_t>(assoc.reference[k])];
    }
    const std::size_t offset = chosen.size();
    std::vector<bool> picked(last.size(), false);
    std::vector<bool> open(static_cast<std::size_t>(nz), true);
    Index added = 0;
    while (added < needed) {
        Index min_rho = std::numeric_limits<Index>::max();
        for (Index r = 0; r < nz; ++r) {
            if (open[static_cast<std::size_t>(r)]) {
                min_rho = std::min(min_rho, rho[static_cast<std::size_t>(r)]);
            }
        }
        std::vector<Index> tied;
        for (Index r = 0; r < nz; ++r) {
            if (open[static_cast<std::size_t>(r)] && rho[static_cast<std::size_t>(r)] == min_rho) {
                tied.push_back(r);
            }
        }
        const Index j = tied[static_cast<std::size_t>(rng.uniform_int(tied.size()))];
        std::vector<std::size_t> members;
        for (std::size_t k = 0; k < last.size(); ++k) {
            if (!picked[k] && assoc.reference[offset + k] == j) {
                members.push_back(k);
            }
        }
        if (members.empty()) {
            open[static_cast<std::size_t>(j)] = false;
            continue;
        }
        std::size_t s = members.front();
        if (rho[static_cast<std::size_t>(j)] == 0) {
            for (std::size_t k : members) {
                if (assoc.distance(static_cast<Index>(offset + k)) < assoc.distance(static_cast<Index>(offset + s))) {
                    s = k;
                }
            }
        } else {
            s = members[static_cast<std::size_t>(rng.uniform_int(members.size()))];
        }
        picked[s] = true;
        ++rho[static_cast<std::size_t>(j)];
        ++added;
    }
    for (std::size_t k = 0; k < last.size(); ++k) {
        if (picked[k]) {
            chosen.push_back(last[k]);
        }
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

Matrix moead_weights(int N, int M) {
    const Matrix lattice = das_dennis_at_least(M, N);
    if (lattice.rows() == N) {
        return lattice;
    }
    // Evenly spaced rows, first and last kept.
    Matrix w(N, M);
    for (Index i = 0; i < N; ++i) {
        const auto src = N == 1 ? 0
                                : static_cast<Index>(std::llround(static_cast<double>(i) *
                                                                  static_cast<double>(lattice.rows() - 1) /
                                                                  static_cast<double>(N - 1)));
        w.row(i) = lattice.row(src);
    }
    return w;
}

MoeadState moead_setup(int N, int M, int T) {
    MoeadState state;
    state.weights = moead_weights(N, M);
    T = std::clamp(T, std::min(2, N), N);
    const Matrix dist = pairwise_distances(state.weights);
    state.neighbours.resize(static_cast<std::size_t>(N));
    for (Index i = 0; i < N; ++i) {
        auto order = iota_indices(N);
        std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
            const double da = a == i ? -1.0 : dist(i, a);
            const double db = b == i ? -1.0 : dist(i, b);
            return da < db;
        });
        order.resize(static_cast<std::size_t>(T));
        state.neighbours[static_cast<std::size_t>(i)] = std::move(order);
    }
    return state;
}

void moead_generation(Run& run, MoeadState& state, Population& pop) {
    const bool differential = run.config().op == "DE";
    const auto n = static_cast<Index>(pop.size());
    for (Index i = 0; i < n; ++i) {
        const auto& hood = state.neighbours[static_cast<std::size_t>(i)];
        const auto perm = run.rng().permutation(hood.size());
        std::vector<Index> shuffled;
        for (auto k : perm) {
            shuffled.push_back(hood[k]);
        }
        Population parents;
        if (differential) {
            std::vector<Index> donors;
            for (Index j : shuffled) {
                if (j != i && donors.size() < 2) {
                    donors.push_back(j);
                }
            }
            while (donors.size() < 2) {
                // Neighbourhood too small: draw donors from the whole population.
                const auto j = static_cast<Index>(run.rng().uniform_int(static_cast<std::uint64_t>(n)));
                if ((j != i && std::find(donors.begin(), donors.end(), j) == donors.end()) || n < 3) {
                    donors.push_back(j);
                }
            }
            parents = {pop[static_cast<std::size_t>(i)], pop[static_cast<std::size_t>(donors[0])],
                       pop[static_cast<std::size_t>(donors[1])]};
        } else {
            parents = {pop[static_cast<std::size_t>(shuffled[0])],
                       pop[static_cast<std::size_t>(shuffled[std::min<std::size_t>(1, shuffled.size() - 1)])]};
        }
        const Population offspring = run.variation(parents, 1);
        if (offspring.empty()) {
            continue;
        }
        const Individual& child = offspring.front();
        state.ideal = state.ideal.cwiseMin(child.obj());
        const double child_cv = child.violation();
        for (Index j : shuffled) {
            const auto& current = pop[static_cast<std::size_t>(j)];
            const double current_cv = current.violation();
            bool replace = false;
            if (child_cv < current_cv) {
                replace = true;
            } else if (child_cv == current_cv) {
                const Vector w = state.weights.row(j).transpose();
                replace = tchebycheff(child.obj(), w, state.ideal) <= tchebycheff(current.obj(), w, state.ideal);
            }
            if (replace) {
                pop[static_cast<std::size_t>(j)] = child;
            }
        }
    }
}

namespace {

void nsga2_body(Run& run) {
    const Index n = run.config().N;
    Population pop = run.initialization(n);
    auto sel = nsga2_select(selection_objectives(pop), n);
    std::vector<double> front(sel.front_no.begin(), sel.front_no.end());
    std::vector<double> crowd = sel.crowding;
    for (auto& c : crowd) {
        c = -c;
    }
    while (run.not_terminated(pop)) {
        const std::vector<std::vector<double>> keys{front, crowd};
        const auto pool = tournament_select(keys, n, run.rng());
        const Population offspring = run.variation(pick(pop, pool));
        const Population combined = concat(pop, offspring);
        sel = nsga2_select(selection_objectives(combined), n);
        pop = pick(combined, sel.kept);
        front.assign(sel.front_no.begin(), sel.front_no.end());
        crowd = sel.crowding;
        for (auto& c : crowd) {
            c = -c;
        }
    }
}

void spea2_body(Run& run) {
    const Index n = run.config().N;
    Population pop = run.initialization(n);
    Vector fitness = spea2_fitness(selection_objectives(pop));
    while (run.not_terminated(pop)) {
        const std::vector<std::vector<double>> keys{std::vector<double>(fitness.data(), fitness.data() + fitness.size())};
        const auto pool = tournament_select(keys, n, run.rng());
        const Population offspring = run.variation(pick(pop, pool));
        const Population combined = concat(pop, offspring);
        const auto sel = spea2_select(selection_objectives(combined), n);
        pop = pick(combined, sel.kept);
        fitness = sel.fitness;
    }
}

void moead_body(Run& run) {
    const int n = run.config().N;
    const int t_param = static_cast<int>(run.parameter_set("MOEAD")[0]);
    const int t = t_param > 0 ? t_param : static_cast<int>(std::ceil(n / 10.0));
    MoeadState state = moead_setup(n, run.config().M, t);
    Population pop = run.initialization(n);
    state.ideal = objs(pop).colwise().minCoeff().transpose();
    while (run.not_terminated(pop)) {
        moead_generation(run, state, pop);
    }
}

void ibea_body(Run& run) {
    const Index n = run.config().N;
    const double kappa = run.parameter_set("IBEA")[0];
    Population pop = run.initialization(n);
    while (run.not_terminated(pop)) {
        const Vector fit = epsilon_fitness(selection_objectives(pop), kappa);
        std::vector<double> key(static_cast<std::size_t>(fit.size()));
        for (Index i = 0; i < fit.size(); ++i) {
            key[static_cast<std::size_t>(i)] = -fit(i);
        }
        const std::vector<std::vector<double>> keys{key};
        const auto pool = tournament_select(keys, n, run.rng());
        const Population offspring = run.variation(pick(pop, pool));
        const Population combined = concat(pop, offspring);
        pop = pick(combined, ibea_select(selection_objectives(combined), n, kappa));
    }
}

Vector feasible_min(const Population& pop, Vector current) {
    for (const auto& x : pop) {
        if (x.violation() <= 0.0) {
            current = current.size() == 0 ? x.obj() : Vector(current.cwiseMin(x.obj()));
        }
    }
    return current;
}

void nsga3_body(Run& run) {
    const Matrix reference = das_dennis_at_least(run.config().M, run.config().N);
    const Index n = reference.rows();
    run.set_population_size(static_cast<int>(n));
    Population pop = run.initialization(n);
    Vector ideal = feasible_min(pop, {});
    if (ideal.size() == 0) {
        ideal = objs(pop).colwise().minCoeff().transpose();
    }
    while (run.not_terminated(pop)) {
        const Vector cv = violations(pop);
        const std::vector<std::vector<double>> keys{std::vector<double>(cv.data(), cv.data() + cv.size())};
        const auto pool = tournament_select(keys, n, run.rng());
        const Population offspring = run.variation(pick(pop, pool));
        ideal = feasible_min(offspring, ideal);
        const Population combined = concat(pop, offspring);
        const auto kept = nsga3_select(selection_objectives(combined), objs(combined), n, reference, ideal, run.rng());
        pop = pick(combined, kept);
    }
}

} // namespace

void register_algorithms(Registry& registry) {
    registry.add(AlgorithmEntry{{"NSGAII",
                                 FunctionKind::algorithm,
                                 {"multi", "real", "binary"},
                                 "A fast and elitist multiobjective genetic algorithm: NSGA-II",
                                 {}},
                                "",
                                nsga2_body});
    registry.add(AlgorithmEntry{{"SPEA2",
                                 FunctionKind::algorithm,
                                 {"multi", "real", "binary"},
                                 "SPEA2: Improving the strength Pareto evolutionary algorithm",
                                 {}},
                                "",
                                spea2_body});
    registry.add(AlgorithmEntry{{"MOEAD",
                                 FunctionKind::algorithm,
                                 {"multi", "many", "real", "binary"},
                                 "MOEA/D: A multiobjective evolutionary algorithm based on decomposition",
                                 {{"T", 0, "Neighbourhood size; 0 selects ceil(N/10)"}}},
                                "DE",
                                moead_body});
    registry.add(AlgorithmEntry{{"IBEA",
                                 FunctionKind::algorithm,
                                 {"multi", "many", "real", "binary"},
                                 "Indicator-based selection in multiobjective search",
                                 {{"kappa", 0.05, "Fitness scaling factor"}}},
                                "",
                                ibea_body});
    registry.add(AlgorithmEntry{{"NSGAIII",
                                 FunctionKind::algorithm,
                                 {"many", "real", "binary"},
                                 "An evolutionary many-objective optimization algorithm using reference-point based "
                                 "non-dominated sorting",
                                 {}},
                                "",
                                nsga3_body});
}

} // namespace paretokit
