#include "doctest.h"

#include "oracles.hpp"
#include "paretokit/algorithms.hpp"
#include "paretokit/kernel.hpp"
#include "paretokit/problems.hpp"
#include "paretokit/variation.hpp"

#include <cmath>
#include <limits>

using namespace paretokit;

namespace {

Matrix random_set(Rng& rng, Index n, Index m) {
    Matrix s(n, m);
    for (Index i = 0; i < n; ++i) {
        for (Index k = 0; k < m; ++k) {
            s(i, k) = rng.uniform();
        }
    }
    return s;
}

// Two objectives; feasible when x1 >= 0.5.
class Toy : public Problem {
public:
    Toy() : Problem({"Toy", 2, 2, Vector::Zero(2), Vector::Ones(2)}) {}
    Matrix sample_pf(Index count) const override {
        Matrix pf(count, 2);
        for (Index i = 0; i < count; ++i) {
            const double t = 0.5 + 0.5 * static_cast<double>(i) / static_cast<double>(std::max<Index>(count - 1, 1));
            pf.row(i) << t, 1 - t;
        }
        return pf;
    }

protected:
    Evaluation compute(const Matrix& dec) const override {
        Evaluation e;
        e.obj.resize(dec.rows(), 2);
        e.obj.col(0) = dec.col(0);
        e.obj.col(1) = (1.0 - dec.col(0).array()) + dec.col(1).array();
        e.con = (0.5 - dec.col(0).array()).matrix();
        return e;
    }
};

const Registry& toy_registry() {
    static const Registry reg = [] {
        Registry r;
        register_operators(r);
        register_algorithms(r);
        r.add(ProblemEntry{{"Toy", FunctionKind::problem, {}, "constrained toy", {}},
                           [](int, int) { return std::make_unique<Toy>(); }});
        return r;
    }();
    return reg;
}

} // namespace

TEST_CASE("crowding distance") {
    Matrix three(3, 2);
    three << 0, 2, 1, 1, 2, 0;
    const auto d = crowding_distance(three, nd_sort(three));
    CHECK(std::isinf(d[0]));
    CHECK(d[1] == doctest::Approx(2.0));
    CHECK(std::isinf(d[2]));
    Matrix two(2, 2);
    two << 0, 1, 1, 0;
    for (double x : crowding_distance(two, nd_sort(two))) {
        CHECK(std::isinf(x));
    }
    Matrix flat(4, 3);
    flat << 0, 3, 5, 1, 2, 5, 2, 1, 5, 3, 0, 5;
    const auto f = crowding_distance(flat, nd_sort(flat));
    CHECK(f[1] == doctest::Approx(4.0 / 3.0));
    CHECK(f[2] == doctest::Approx(4.0 / 3.0));
}

TEST_CASE("tournament selection") {
    Rng rng(3);
    CHECK(tournament_select(std::vector<std::vector<double>>{{1, 2}}, 0, rng).empty());
    const std::vector<std::vector<double>> ordered{{0.0, 1.0}};
    int first = 0;
    for (Index i : tournament_select(ordered, 1000, rng)) {
        first += i == 0;
    }
    CHECK(first == doctest::Approx(750).epsilon(0.1));

    // Equal keys: uniform over candidates, chi-square at alpha = 0.01 with 9 dof.
    const std::vector<std::vector<double>> flat{std::vector<double>(10, 1.0)};
    std::vector<int> counts(10, 0);
    const int draws = 100000;
    for (Index i : tournament_select(flat, draws, rng)) {
        ++counts[i];
    }
    double chi = 0.0;
    for (int c : counts) {
        chi += (c - draws / 10.0) * (c - draws / 10.0) / (draws / 10.0);
    }
    CHECK(chi < 21.666);

    // Second key decides when the first ties.
    const std::vector<std::vector<double>> two{{0, 0}, {1, 0}};
    Rng r2(4);
    for (int t = 0; t < 50; ++t) {
        const auto w = tournament_select(two, 1, r2)[0];
        CHECK((w == 1 || w == 0));
    }
}

TEST_CASE("two candidates: the better wins every discordant tournament") {
    Rng rng(7);
    const std::vector<std::vector<double>> keys{{2.0, 1.0}};
    // Pairs drawn with replacement; with two candidates a mixed pair always picks 1.
    int zero_wins = 0;
    for (Index w : tournament_select(keys, 4000, rng)) {
        zero_wins += w == 0;
    }
    CHECK(zero_wins == doctest::Approx(1000).epsilon(0.15));
}

TEST_CASE("spea2 fitness") {
    Matrix line(3, 2);
    line << 0, 0, 1, 1, 2, 2;
    const auto f = spea2_fitness_detail(line);
    CHECK(f.strength == Vector((Vector(3) << 2, 1, 0).finished()));
    CHECK(f.raw == Vector((Vector(3) << 0, 2, 3).finished()));
    Rng rng(1);
    Matrix nd(6, 2);
    for (Index i = 0; i < 6; ++i) {
        const double t = rng.uniform();
        nd.row(i) << t, 1 - t;
    }
    CHECK((spea2_fitness(nd).array() < 1.0).all());
    Matrix dup(3, 2);
    dup << 0.3, 0.2, 0.3, 0.2, 0.1, 0.9;
    const Vector df = spea2_fitness(dup);
    CHECK(df(0) == df(1));
}

TEST_CASE("tchebycheff") {
    Vector f(2), w(2), z(2);
    f << 2, 3;
    w << 1, 0;
    z << 0, 0;
    CHECK(tchebycheff(f, w, z) == doctest::Approx(2.0));
    CHECK(tchebycheff(z, w, z) == 0.0);
    Rng rng(2);
    for (int t = 0; t < 20; ++t) {
        Vector a(3), b(3), ww(3), zz = Vector::Zero(3);
        a << rng.uniform(), rng.uniform(), rng.uniform();
        b << rng.uniform(), rng.uniform(), rng.uniform();
        ww << rng.uniform(), rng.uniform(), rng.uniform();
        const bool before = tchebycheff(a, ww, zz) <= tchebycheff(b, ww, zz);
        const Vector scaled = 3.7 * ww;
        CHECK(before == (tchebycheff(a, scaled, zz) <= tchebycheff(b, scaled, zz)));
        CHECK(tchebycheff(a, scaled, zz) == doctest::Approx(3.7 * tchebycheff(a, ww, zz)));
    }
}

TEST_CASE("epsilon fitness") {
    Rng rng(9);
    const Matrix s = random_set(rng, 4, 3);
    const auto e = epsilon_fitness_detail(s, 0.05);
    for (Index i = 0; i < 4; ++i) {
        CHECK(e.indicator(i, i) == 0.0);
    }
    const Matrix eps = oracle::epsilon_matrix(s);
    const double c = eps.cwiseAbs().maxCoeff();
    std::vector<Index> all{0, 1, 2, 3};
    const auto expected = oracle::ibea_fitness(eps, all, c, 0.05);
    for (Index i = 0; i < 4; ++i) {
        CHECK(std::abs(e.fitness(i) - expected[i]) < 1e-12);
    }
    Matrix ab(2, 2);
    ab << 0, 0, 1, 1;
    const Vector f = epsilon_fitness(ab, 0.05);
    CHECK(f(0) > f(1));
    CHECK_THROWS_AS(epsilon_fitness(ab, 0.0), ConfigError);
}

TEST_CASE("nsga-iii normalization and association") {
    Matrix simplex(3, 3);
    simplex << 1, 0, 0, 0, 1, 0, 0, 0, 1;
    const Matrix z = das_dennis(3, 4);
    const auto a = nsga3_normalize_associate(simplex, z);
    CHECK((a.intercepts.array() - 1.0).abs().maxCoeff() < 1e-12);
    CHECK((a.normalized - simplex).norm() < 1e-12);

    Matrix on_ray(1, 3);
    on_ray << 0.5, 0.25, 0.25;
    Matrix with_ray(4, 3);
    with_ray << simplex, on_ray;
    const auto b = nsga3_normalize_associate(with_ray, z);
    CHECK(b.distance(3) < 1e-12);
    CHECK((z.row(b.reference[3]) - Eigen::RowVector3d(0.5, 0.25, 0.25)).norm() < 1e-12);

    Rng rng(4);
    Matrix five = random_set(rng, 5, 2);
    Matrix rays(3, 2);
    rays << 1, 0, 0.5, 0.5, 0, 1;
    const auto c = nsga3_normalize_associate(five, rays);
    for (Index i = 0; i < 5; ++i) {
        Index best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (Index r = 0; r < 3; ++r) {
            const Eigen::Vector2d p = c.normalized.row(i).transpose();
            const Eigen::Vector2d u = rays.row(r).transpose().normalized();
            const double d = (p - p.dot(u) * u).norm();
            if (d < best_d) {
                best_d = d;
                best = r;
            }
        }
        CHECK(c.reference[i] == best);
        CHECK(c.distance(i) == doctest::Approx(best_d));
    }
}

TEST_CASE("nsga-ii selection matches the oracle") {
    Rng rng(21);
    for (int t = 0; t < 100; ++t) {
        const Index n = 1 + static_cast<Index>(rng.uniform_int(8));
        const Matrix obj = random_set(rng, 2 * n, 2 + static_cast<Index>(rng.uniform_int(2)));
        CHECK(nsga2_select(obj, n).kept == oracle::nsga2_select(obj, n));
    }
}

TEST_CASE("ibea selection matches recomputation") {
    Rng rng(22);
    for (int t = 0; t < 100; ++t) {
        const Index n = 2 + static_cast<Index>(rng.uniform_int(9));
        const Matrix obj = random_set(rng, n, 2 + static_cast<Index>(rng.uniform_int(3)));
        const Index keep = 1 + static_cast<Index>(rng.uniform_int(static_cast<std::uint64_t>(n)));
        CHECK(ibea_select(obj, keep, 0.05) == oracle::ibea_select(obj, keep, 0.05));
    }
}

TEST_CASE("spea2 selection") {
    Rng rng(5);
    const Matrix obj = random_set(rng, 40, 2);
    const auto s = spea2_select(obj, 20);
    CHECK(s.kept.size() == 20);
    Matrix nd(10, 2);
    for (Index i = 0; i < 10; ++i) {
        nd.row(i) << i / 9.0, 1 - i / 9.0;
    }
    const auto removed = spea2_truncation(nd, 1);
    CHECK(removed.size() == 1);
    CHECK((removed[0] > 0 && removed[0] < 9));
}

TEST_CASE("moea/d setup") {
    const auto s = moead_setup(100, 2, 10);
    CHECK(s.weights.rows() == 100);
    CHECK(s.neighbours[5].size() == 10);
    CHECK(s.neighbours[5][0] == 5);
    CHECK(moead_weights(91, 3).rows() == 91);
    const Matrix w = moead_weights(100, 3);
    CHECK(w.rows() == 100);
    CHECK((w.rowwise().sum().array() - 1.0).abs().maxCoeff() < 1e-12);
    CHECK(moead_setup(5, 2, 1).neighbours[0].size() == 2);
}

TEST_CASE("moea/d ideal point is monotone") {
    RunConfig c;
    c.algorithm = "MOEAD";
    c.problem = "ZDT1";
    c.max_evaluations = 3000;
    Run run(c);
    MoeadState state = moead_setup(100, 2, 10);
    Population pop = run.initialization(100);
    state.ideal = objs(pop).colwise().minCoeff().transpose();
    for (int g = 0; g < 20; ++g) {
        const Vector before = state.ideal;
        moead_generation(run, state, pop);
        CHECK((state.ideal.array() <= before.array()).all());
        CHECK((state.ideal.transpose().array() <= objs(pop).colwise().minCoeff().array()).all());
        CHECK(pop.size() == 100);
    }
}

TEST_CASE("population size contract and elitism") {
    for (const char* alg : {"NSGAII", "SPEA2", "NSGAIII", "IBEA", "MOEAD"}) {
        RunConfig c;
        c.algorithm = alg;
        c.problem = "DTLZ2";
        c.max_evaluations = 3000;
        const auto r = run_algorithm(c);
        const auto n = static_cast<std::size_t>(r.population_size);
        for (const auto& s : r.snapshots) {
            CHECK(s.population.size() == n);
        }
        if (std::string(alg) == "NSGAIII") {
            CHECK(n == 105);
        } else {
            CHECK(n == 100);
        }
        if (std::string(alg) == "NSGAII" || std::string(alg) == "NSGAIII" || std::string(alg) == "SPEA2") {
            for (std::size_t g = 1; g < r.snapshots.size(); ++g) {
                const Matrix prev = objs(r.snapshots[g - 1].population);
                const Matrix next = objs(r.snapshots[g].population);
                const auto first = non_dominated_indices(next);
                for (Index i : first) {
                    bool dominated = false;
                    for (Index j = 0; j < prev.rows() && !dominated; ++j) {
                        dominated = dominates(prev.row(j), next.row(i)) == Dominance::a_dominates;
                    }
                    CHECK_FALSE(dominated);
                }
            }
        }
    }
}

TEST_CASE("constrained objectives") {
    Matrix obj(3, 2), con(3, 1);
    obj << 1, 1, 0, 0, 2, 3;
    con << -1, 0.5, 0;
    const Matrix t = constrained_objectives(obj, con);
    CHECK(t.row(0) == obj.row(0));
    CHECK(t(1, 0) == doctest::Approx(2.5));
    CHECK(t(1, 1) == doctest::Approx(3.5));
    CHECK(constrained_objectives(obj, Matrix(3, 0)) == obj);
    const auto fronts = nd_sort(t).front_no;
    CHECK(fronts[1] > fronts[0]);
}

TEST_CASE("algorithms drive a constrained toy problem to feasibility") {
    for (const char* alg : {"NSGAII", "SPEA2", "MOEAD", "IBEA", "NSGAIII"}) {
        RunConfig c;
        c.algorithm = alg;
        c.problem = "Toy";
        c.N = 40;
        c.max_evaluations = 4000;
        c.op = "EAreal";
        const auto r = run_algorithm(c, toy_registry());
        const Vector cv = violations(r.final_population);
        CAPTURE(alg);
        CHECK((cv.array() <= 0.0).cast<double>().mean() > 0.9);
    }
}

TEST_CASE("algorithm registrations") {
    const auto& reg = builtin_registry();
    CHECK(reg.algorithm("IBEA").info.params.at(0).default_value == 0.05);
    CHECK(reg.algorithm("MOEAD").info.params.at(0).name == "T");
    CHECK(reg.algorithm("MOEAD").default_operator == "DE");
    CHECK_THROWS_AS(reg.algorithm("KnEA"), ConfigError);
}
