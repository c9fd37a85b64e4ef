#include "doctest.h"

#include "paretokit/kernel.hpp"
#include "paretokit/problems.hpp"
#include "paretokit/variation.hpp"

using namespace paretokit;

namespace {

RunConfig dtlz2(long long budget = 10000) {
    RunConfig c;
    c.max_evaluations = budget;
    return c;
}

// A registry knowing nothing but one stub of each kind.
class Line : public Problem {
public:
    Line() : Problem({"Line", 2, 1, Vector::Zero(1), Vector::Ones(1)}) {}
    Matrix sample_pf(Index count) const override {
        Matrix pf(count, 2);
        for (Index i = 0; i < count; ++i) {
            const double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
            pf.row(i) << t, 1 - t;
        }
        return pf;
    }

protected:
    Evaluation compute(const Matrix& dec) const override {
        Evaluation e;
        e.obj.resize(dec.rows(), 2);
        e.obj.col(0) = dec.col(0);
        e.obj.col(1) = 1.0 - dec.col(0).array();
        return e;
    }
};

Registry stub_registry() {
    Registry r;
    r.add(ProblemEntry{{"Line", FunctionKind::problem, {}, "stub", {}},
                       [](int, int) { return std::make_unique<Line>(); }});
    r.add(OperatorEntry{{"Copy", FunctionKind::op, {}, "stub", {}},
                        Encoding::real,
                        [](Run& run, const Population& parents, std::optional<Index>) { return run.spawn(decs(parents)); }});
    r.add(AlgorithmEntry{{"Idle", FunctionKind::algorithm, {}, "stub", {{"width", 3, ""}}},
                         "Copy",
                         [](Run& run) {
                             Population pop = run.initialization(run.config().N);
                             while (run.not_terminated(pop)) {
                                 pop = run.variation(pop);
                             }
                         }});
    return r;
}

} // namespace

TEST_CASE("initialization") {
    RunConfig c = dtlz2();
    c.problem = "ZDT1";
    c.seed = 42;
    Run a(c), b(c);
    CHECK(a.initialization(0).empty());
    CHECK(a.ledger().consumed == 0);
    const auto pa = a.initialization(100);
    CHECK(pa == b.initialization(100));
    CHECK(a.ledger().consumed == 100);
    const Matrix d = decs(pa);
    CHECK(d.cols() == 30);
    CHECK(d.minCoeff() >= 0.0);
    CHECK(d.maxCoeff() <= 1.0);
}

TEST_CASE("spawn evaluates through the problem") {
    Run run(dtlz2());
    CHECK(run.spawn(Matrix(0, 12)).empty());
    Matrix dec = Matrix::Constant(1, 12, 0.5);
    dec(0, 0) = 0.0;
    dec(0, 1) = 0.0;
    const auto pop = run.spawn(dec);
    CHECK(pop[0].obj()(0) == doctest::Approx(1.0));
    CHECK(pop[0].obj()(1) == doctest::Approx(0.0));
    CHECK(pop[0].obj()(2) == doctest::Approx(0.0));
    CHECK((run.problem().evaluate(decs(pop)).obj - objs(pop)).norm() == 0.0);
}

TEST_CASE("budget overshoot by one batch") {
    Run run(dtlz2(10));
    auto pop = run.initialization(9);
    CHECK(run.not_terminated(pop));
    pop = run.spawn(decs(subset(pop, {0, 1})));
    CHECK(run.ledger().consumed == 11);
    CHECK_FALSE(run.not_terminated(pop));
    CHECK(run.result().final_population == pop);
    CHECK(run.result().snapshots.size() == 2);
    CHECK_THROWS_AS(run.initialization(1), RunTerminated);
}

TEST_CASE("snapshot boundaries") {
    Run run(dtlz2(5));
    const auto pop = run.initialization(5);
    CHECK_FALSE(run.not_terminated(pop));
    CHECK(run.result().snapshots.at(0).generation == 0);
    CHECK(run.result().snapshots.at(0).evaluations == 5);
}

TEST_CASE("NSGA-II defaults record 100 snapshots") {
    const auto r = run_algorithm(RunConfig{});
    CHECK(r.snapshots.size() == 100);
    CHECK(r.evaluations == 10000);
    for (const auto& s : r.snapshots) {
        CHECK(s.population.size() == 100);
    }
    CHECK(r.final_population == r.snapshots.back().population);
}

TEST_CASE("snapshot thinning keeps the final one") {
    RunConfig c;
    c.snapshot_stride = 7;
    const auto r = run_algorithm(c);
    CHECK(r.snapshots.size() == 16);
    CHECK(r.snapshots.back().generation == 99);
    CHECK(r.snapshots[1].generation == 7);
}

TEST_CASE("variation sizes and identity") {
    RunConfig c = dtlz2();
    c.function_params["EAreal"] = {0, 15, 0, 15};
    Run run(c);
    const auto parents = run.initialization(100);
    const auto kids = run.variation(parents);
    CHECK(kids.size() == 100);
    CHECK(decs(kids) == decs(parents));
    CHECK(run.variation(parents, 3).size() == 3);
}

TEST_CASE("parameter_set") {
    const std::vector<double> defaults{1, 15, 1, 15};
    ParamMap p;
    CHECK(parameter_set(p, "EAreal", defaults) == defaults);
    p["EAreal"] = {1, 20, 1, 20};
    CHECK(parameter_set(p, "EAreal", defaults) == std::vector<double>{1, 20, 1, 20});
    p["KnEA"] = {0.5};
    CHECK(parameter_set(p, "KnEA", std::vector<double>{0.1, 7}) == std::vector<double>{0.5, 7});
    p["EAreal"] = {1, 2, 3, 4, 5};
    CHECK_THROWS_AS(parameter_set(p, "EAreal", defaults), ConfigError);
}

TEST_CASE("configuration finalization") {
    const auto c = finalize_config(RunConfig{});
    CHECK(c.M == 3);
    CHECK(c.D == 12);
    CHECK(c.op == "EAreal");
    RunConfig m;
    m.algorithm = "MOEAD";
    CHECK(finalize_config(m).op == "DE");
    m.problem = "ZDT5";
    CHECK(finalize_config(m).op == "EAbinary");
    m.op = "EAreal";
    CHECK_THROWS_AS(finalize_config(m), ConfigError);
    RunConfig bad;
    bad.algorithm = "Nope";
    CHECK_THROWS_AS(finalize_config(bad), ConfigError);
    bad = RunConfig{};
    bad.N = 0;
    CHECK_THROWS_AS(finalize_config(bad), ConfigError);
    bad = RunConfig{};
    bad.function_params["Nope"] = {1};
    CHECK_THROWS_AS(finalize_config(bad), ConfigError);
}

TEST_CASE("kernel runs against stub registrations") {
    const Registry reg = stub_registry();
    RunConfig c;
    c.algorithm = "Idle";
    c.problem = "Line";
    c.N = 4;
    c.max_evaluations = 10;
    const auto r = run_algorithm(c, reg);
    CHECK(r.config.op == "Copy");
    CHECK(r.snapshots.size() == 3);
    CHECK(r.evaluations == 12);
    Run run(c, reg);
    CHECK(run.parameter_set("Idle") == std::vector<double>{3});
}

TEST_CASE("identical configs give identical results") {
    RunConfig c;
    c.algorithm = "SPEA2";
    c.problem = "ZDT2";
    c.max_evaluations = 1000;
    c.seed = 11;
    CHECK(run_algorithm(c) == run_algorithm(c));
    RunConfig d = c;
    d.seed = 12;
    CHECK_FALSE(run_algorithm(c) == run_algorithm(d));
}
