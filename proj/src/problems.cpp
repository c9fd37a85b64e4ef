#include "paretokit/problems.hpp"

#include "paretokit/nds.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace paretokit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kMaxLatticeEntries = 50'000'000;

Vector linspace(double lo, double hi, Index n) {
    if (n == 1) {
        return Vector::Constant(1, lo);
    }
    return Vector::LinSpaced(n, lo, hi);
}

double bisect(const std::function<double(double)>& f, double lo, double hi) {
    double flo = f(lo);
    for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        const double fmid = f(mid);
        if ((fmid > 0) == (flo > 0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Keeps `count` rows at evenly spaced positions.
Matrix thin_rows(const Matrix& rows, Index count) {
    if (rows.rows() <= count) {
        return rows;
    }
    Matrix out(count, rows.cols());
    for (Index i = 0; i < count; ++i) {
        const auto src = count == 1 ? 0
                                    : static_cast<Index>(std::llround(static_cast<double>(i) *
                                                                      static_cast<double>(rows.rows() - 1) /
                                                                      static_cast<double>(count - 1)));
        out.row(i) = rows.row(src);
    }
    return out;
}

// ---------------------------------------------------------------------------
// ZDT

class Zdt final : public Problem {
public:
    Zdt(ZdtVariant v, ProblemDefinition def) : Problem(std::move(def)), variant_(v) {}

    Matrix sample_pf(Index count) const override {
        if (count < 1) {
            throw DomainError(name() + ": PF sample count must be positive");
        }
        switch (variant_) {
        case ZdtVariant::zdt1:
        case ZdtVariant::zdt4:
            return curve(linspace(0.0, 1.0, count), [](double f1) { return 1.0 - std::sqrt(f1); });
        case ZdtVariant::zdt2:
            return curve(linspace(0.0, 1.0, count), [](double f1) { return 1.0 - f1 * f1; });
        case ZdtVariant::zdt6:
            return curve(linspace(zdt6_min_f1(), 1.0, count), [](double f1) { return 1.0 - f1 * f1; });
        case ZdtVariant::zdt3: {
            // Dense sample of the analytic curve, filtered to its non-dominated
            // segments, then thinned.
            const Matrix dense = curve(linspace(0.0, 1.0, std::max<Index>(10 * count, 1000)), zdt3_front);
            const auto keep = non_dominated_indices(dense);
            Matrix nd(static_cast<Index>(keep.size()), 2);
            for (std::size_t i = 0; i < keep.size(); ++i) {
                nd.row(static_cast<Index>(i)) = dense.row(keep[i]);
            }
            return thin_rows(nd, count);
        }
        case ZdtVariant::zdt5: {
            Matrix pf(31, 2);
            for (Index i = 0; i < 31; ++i) {
                pf(i, 0) = static_cast<double>(i + 1);
                pf(i, 1) = 10.0 / static_cast<double>(i + 1);
            }
            return pf;
        }
        }
        return {};
    }

    static double zdt3_front(double f1) { return 1.0 - std::sqrt(f1) - f1 * std::sin(10.0 * kPi * f1); }

protected:
    Evaluation compute(const Matrix& dec) const override {
        const Index n = dec.rows();
        const Index d = dec.cols();
        Matrix obj(n, 2);
        for (Index r = 0; r < n; ++r) {
            const auto x = dec.row(r);
            double f1 = x(0);
            double g = 0.0;
            double f2 = 0.0;
            switch (variant_) {
            case ZdtVariant::zdt1:
                g = 1.0 + 9.0 * x.tail(d - 1).sum() / static_cast<double>(d - 1);
                f2 = g * (1.0 - std::sqrt(f1 / g));
                break;
            case ZdtVariant::zdt2:
                g = 1.0 + 9.0 * x.tail(d - 1).sum() / static_cast<double>(d - 1);
                f2 = g * (1.0 - (f1 / g) * (f1 / g));
                break;
            case ZdtVariant::zdt3:
                g = 1.0 + 9.0 * x.tail(d - 1).sum() / static_cast<double>(d - 1);
                f2 = g * (1.0 - std::sqrt(f1 / g) - (f1 / g) * std::sin(10.0 * kPi * f1));
                break;
            case ZdtVariant::zdt4: {
                g = 1.0 + 10.0 * static_cast<double>(d - 1);
                for (Index j = 1; j < d; ++j) {
                    g += x(j) * x(j) - 10.0 * std::cos(4.0 * kPi * x(j));
                }
                f2 = g * (1.0 - std::sqrt(f1 / g));
                break;
            }
            case ZdtVariant::zdt5: {
                // 30-bit head then ten 5-bit substrings.
                const auto ones = [&](Index from, Index len) {
                    double u = 0.0;
                    for (Index j = from; j < from + len; ++j) {
                        u += x(j) != 0.0 ? 1.0 : 0.0;
                    }
                    return u;
                };
                f1 = 1.0 + ones(0, 30);
                for (Index s = 0; s < 10; ++s) {
                    const double u = ones(30 + 5 * s, 5);
                    g += u < 5.0 ? 2.0 + u : 1.0;
                }
                f2 = g / f1;
                break;
            }
            case ZdtVariant::zdt6: {
                f1 = 1.0 - std::exp(-4.0 * x(0)) * std::pow(std::sin(6.0 * kPi * x(0)), 6);
                g = 1.0 + 9.0 * std::pow(x.tail(d - 1).sum() / static_cast<double>(d - 1), 0.25);
                f2 = g * (1.0 - (f1 / g) * (f1 / g));
                break;
            }
            }
            obj(r, 0) = f1;
            obj(r, 1) = f2;
        }
        return {obj, Matrix(n, 0)};
    }

private:
    template <class F>
    static Matrix curve(const Vector& f1, F f2) {
        Matrix pf(f1.size(), 2);
        for (Index i = 0; i < f1.size(); ++i) {
            pf(i, 0) = f1(i);
            pf(i, 1) = f2(f1(i));
        }
        return pf;
    }

    ZdtVariant variant_;
};

// ---------------------------------------------------------------------------
// DTLZ

class Dtlz final : public Problem {
public:
    Dtlz(DtlzVariant v, ProblemDefinition def) : Problem(std::move(def)), variant_(v) {}

    Matrix sample_pf(Index count) const override {
        if (count < 1) {
            throw DomainError(name() + ": PF sample count must be positive");
        }
        const int m = M();
        switch (variant_) {
        case DtlzVariant::dtlz1:
            return 0.5 * das_dennis_at_least(m, count);
        case DtlzVariant::dtlz2:
        case DtlzVariant::dtlz3:
        case DtlzVariant::dtlz4:
            return das_dennis_at_least(m, count).rowwise().normalized();
        case DtlzVariant::dtlz5:
        case DtlzVariant::dtlz6: {
            const Vector t = linspace(0.0, 1.0, count);
            Matrix pf(count, m);
            Vector theta = Vector::Constant(std::max(m - 1, 1), kPi / 4.0);
            for (Index i = 0; i < count; ++i) {
                theta(0) = t(i) * kPi / 2.0;
                pf.row(i) = sphere_point(theta.head(m - 1), 0.0).transpose();
            }
            return pf;
        }
        case DtlzVariant::dtlz7: {
            const auto& iv = dtlz7_intervals();
            const double left = iv.a;
            const double right = iv.c - iv.b;
            const double split = left / (left + right);
            const int dims = m - 1;
            // Grid over the unit cube, each axis mapped onto the two retained
            // intervals; the lower edge of the right interval is excluded.
            Index per_axis = 1;
            while (static_cast<double>(std::pow(static_cast<double>(per_axis), dims)) <
                   static_cast<double>(count)) {
                ++per_axis;
            }
            per_axis = std::max<Index>(per_axis, 2);
            const auto total = static_cast<Index>(std::llround(std::pow(static_cast<double>(per_axis), dims)));
            const Vector axis = linspace(0.0, 1.0, per_axis);
            Matrix pf(total, m);
            for (Index idx = 0; idx < total; ++idx) {
                Index rem = idx;
                double sum = 0.0;
                for (int j = dims - 1; j >= 0; --j) {
                    const double u = axis(rem % per_axis);
                    rem /= per_axis;
                    const double x = u <= split ? u / split * left : iv.b + (u - split) / (1.0 - split) * right;
                    pf(idx, j) = x;
                    sum += x / 2.0 * (1.0 + std::sin(3.0 * kPi * x));
                }
                pf(idx, m - 1) = 2.0 * (static_cast<double>(m) - sum);
            }
            return pf;
        }
        }
        return {};
    }

protected:
    Evaluation compute(const Matrix& dec) const override {
        const Index n = dec.rows();
        const int m = M();
        const Index k = D() - m + 1;
        Matrix obj(n, m);
        for (Index r = 0; r < n; ++r) {
            const Vector x = dec.row(r).transpose();
            const auto tail = x.tail(k);
            switch (variant_) {
            case DtlzVariant::dtlz1: {
                const double g = multimodal_g(tail);
                for (int i = 0; i < m; ++i) {
                    double f = 0.5 * (1.0 + g);
                    for (int j = 0; j < m - 1 - i; ++j) {
                        f *= x(j);
                    }
                    if (i > 0) {
                        f *= 1.0 - x(m - 1 - i);
                    }
                    obj(r, i) = f;
                }
                break;
            }
            case DtlzVariant::dtlz2:
            case DtlzVariant::dtlz3:
            case DtlzVariant::dtlz4: {
                const double g = variant_ == DtlzVariant::dtlz3 ? multimodal_g(tail) : sphere_g(tail);
                Vector theta(m - 1);
                for (int j = 0; j < m - 1; ++j) {
                    const double xj = variant_ == DtlzVariant::dtlz4 ? std::pow(x(j), 100.0) : x(j);
                    theta(j) = xj * kPi / 2.0;
                }
                obj.row(r) = sphere_point(theta, g).transpose();
                break;
            }
            case DtlzVariant::dtlz5:
            case DtlzVariant::dtlz6: {
                double g = 0.0;
                if (variant_ == DtlzVariant::dtlz5) {
                    g = sphere_g(tail);
                } else {
                    for (Index j = 0; j < tail.size(); ++j) {
                        g += std::pow(tail(j), 0.1);
                    }
                }
                Vector theta(m - 1);
                for (int j = 0; j < m - 1; ++j) {
                    theta(j) = j == 0 ? x(0) * kPi / 2.0 : kPi / (4.0 * (1.0 + g)) * (1.0 + 2.0 * g * x(j));
                }
                obj.row(r) = sphere_point(theta, g).transpose();
                break;
            }
            case DtlzVariant::dtlz7: {
                const double g = 1.0 + 9.0 * tail.sum() / static_cast<double>(k);
                double h = static_cast<double>(m);
                for (int i = 0; i < m - 1; ++i) {
                    obj(r, i) = x(i);
                    h -= x(i) / (1.0 + g) * (1.0 + std::sin(3.0 * kPi * x(i)));
                }
                obj(r, m - 1) = (1.0 + g) * h;
                break;
            }
            }
        }
        return {obj, Matrix(n, 0)};
    }

private:
    template <class V>
    static double sphere_g(const V& tail) {
        return (tail.array() - 0.5).square().sum();
    }

    template <class V>
    static double multimodal_g(const V& tail) {
        const auto shifted = tail.array() - 0.5;
        return 100.0 * (static_cast<double>(tail.size()) + (shifted.square() - (20.0 * kPi * shifted).cos()).sum());
    }

    // f_1 = (1+g) prod cos(theta), f_i = (1+g) prod_{j < M-i} cos(theta_j) sin(theta_{M-i}).
    template <class V>
    static Vector sphere_point(const V& theta, double g) {
        const Index m = theta.size() + 1;
        Vector f(m);
        for (Index i = 0; i < m; ++i) {
            double v = 1.0 + g;
            for (Index j = 0; j < m - 1 - i; ++j) {
                v *= std::cos(theta(j));
            }
            if (i > 0) {
                v *= std::sin(theta(m - 1 - i));
            }
            f(i) = v;
        }
        return f;
    }

    DtlzVariant variant_;
};

ProblemDefinition bounded(std::string name, int m, int d, double lo = 0.0, double hi = 1.0) {
    ProblemDefinition def;
    def.name = std::move(name);
    def.M = m;
    def.D = d;
    def.lower = Vector::Constant(d, lo);
    def.upper = Vector::Constant(d, hi);
    return def;
}

} // namespace

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    unsigned __int128 result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        result = result * (n - k + i) / i;
        if (result > std::numeric_limits<std::uint64_t>::max()) {
            throw DomainError("binomial(" + std::to_string(n) + ", " + std::to_string(k) + ") overflows");
        }
    }
    return static_cast<std::uint64_t>(result);
}

Matrix das_dennis(int M, int H) {
    if (M < 1 || H < 1) {
        throw DomainError("das_dennis: M and H must be positive");
    }
    const std::uint64_t rows = binomial(static_cast<std::uint64_t>(H + M - 1), static_cast<std::uint64_t>(M - 1));
    if (rows > kMaxLatticeEntries / static_cast<std::uint64_t>(M)) {
        throw DomainError("das_dennis: lattice with " + std::to_string(rows) + " points is too large");
    }
    Matrix w(static_cast<Index>(rows), M);
    std::vector<int> parts(static_cast<std::size_t>(M), 0);
    Index next = 0;
    // Compositions of H into M non-negative parts, lexicographic order.
    std::function<void(int, int)> fill = [&](int pos, int left) {
        if (pos == M - 1) {
            parts[static_cast<std::size_t>(pos)] = left;
            for (int j = 0; j < M; ++j) {
                w(next, j) = static_cast<double>(parts[static_cast<std::size_t>(j)]) / static_cast<double>(H);
            }
            ++next;
            return;
        }
        for (int v = 0; v <= left; ++v) {
            parts[static_cast<std::size_t>(pos)] = v;
            fill(pos + 1, left - v);
        }
    };
    fill(0, H);
    return w;
}

int das_dennis_level(int M, Index count) {
    if (M < 1) {
        throw DomainError("das_dennis_level: M must be positive");
    }
    if (M == 1) {
        return 1;
    }
    int h = 1;
    while (binomial(static_cast<std::uint64_t>(h + M - 1), static_cast<std::uint64_t>(M - 1)) <
           static_cast<std::uint64_t>(std::max<Index>(count, 1))) {
        ++h;
    }
    return h;
}

Matrix das_dennis_at_least(int M, Index count) {
    return das_dennis(M, das_dennis_level(M, count));
}

double zdt6_min_f1() {
    static const double value = [] {
        auto f1 = [](double x) { return 1.0 - std::exp(-4.0 * x) * std::pow(std::sin(6.0 * kPi * x), 6); };
        // Golden-section search on the first lobe, where the minimum lies.
        double lo = 0.0;
        double hi = 1.0 / 6.0;
        const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
        double a = hi - ratio * (hi - lo);
        double b = lo + ratio * (hi - lo);
        for (int i = 0; i < 200; ++i) {
            if (f1(a) < f1(b)) {
                hi = b;
            } else {
                lo = a;
            }
            a = hi - ratio * (hi - lo);
            b = lo + ratio * (hi - lo);
        }
        return f1(0.5 * (lo + hi));
    }();
    return value;
}

const Dtlz7Intervals& dtlz7_intervals() {
    static const Dtlz7Intervals iv = [] {
        auto phi = [](double x) { return x * (1.0 + std::sin(3.0 * kPi * x)); };
        auto dphi = [](double x) { return 1.0 + std::sin(3.0 * kPi * x) + 3.0 * kPi * x * std::cos(3.0 * kPi * x); };
        const double a = bisect(dphi, 1.0 / 6.0, 1.0 / 3.0);
        const double c = bisect(dphi, 5.0 / 6.0, 1.0);
        const double level = phi(a);
        const double b = bisect([&](double x) { return phi(x) - level; }, 0.5, 2.0 / 3.0);
        return Dtlz7Intervals{a, b, c};
    }();
    return iv;
}

std::unique_ptr<Problem> make_zdt(ZdtVariant variant, int M, int D) {
    const auto label = "ZDT" + std::to_string(static_cast<int>(variant));
    if (M != 0 && M != 2) {
        throw ConfigError(label + " has exactly 2 objectives (M=" + std::to_string(M) + " requested)");
    }
    if (variant == ZdtVariant::zdt5) {
        if (D != 0 && D != 80) {
            throw ConfigError("ZDT5 has exactly 80 binary variables");
        }
        auto def = bounded(label, 2, 80);
        def.encoding = Encoding::binary;
        def.default_operator = "EAbinary";
        return std::make_unique<Zdt>(variant, std::move(def));
    }
    const bool short_default = variant == ZdtVariant::zdt4 || variant == ZdtVariant::zdt6;
    const int d = D != 0 ? D : (short_default ? 10 : 30);
    if (d < 2) {
        throw ConfigError(label + " needs at least 2 decision variables");
    }
    auto def = bounded(label, 2, d);
    if (variant == ZdtVariant::zdt4) {
        def.lower.tail(d - 1).setConstant(-5.0);
        def.upper.tail(d - 1).setConstant(5.0);
    }
    return std::make_unique<Zdt>(variant, std::move(def));
}

std::unique_ptr<Problem> make_dtlz(DtlzVariant variant, int M, int D) {
    const auto label = "DTLZ" + std::to_string(static_cast<int>(variant));
    const int m = M != 0 ? M : 3;
    if (m < 2) {
        throw ConfigError(label + " needs at least 2 objectives");
    }
    int k = 10;
    if (variant == DtlzVariant::dtlz1) {
        k = 5;
    } else if (variant == DtlzVariant::dtlz7) {
        k = 20;
    }
    const int d = D != 0 ? D : m + k - 1;
    if (d < m) {
        throw ConfigError(label + ": D=" + std::to_string(d) + " is smaller than M=" + std::to_string(m));
    }
    return std::make_unique<Dtlz>(variant, bounded(label, m, d));
}

std::unique_ptr<Problem> problem_init(const std::string& name, int M, int D, const Registry& registry) {
    return registry.make_problem(name, M, D);
}

void register_problems(Registry& registry) {
    const char* zdt_titles[] = {
        "ZDT1: convex front", "ZDT2: concave front", "ZDT3: disconnected front",
        "ZDT4: multimodal, convex front", "ZDT5: deceptive binary problem", "ZDT6: non-uniform, concave front"};
    for (int i = 1; i <= 6; ++i) {
        const auto variant = static_cast<ZdtVariant>(i);
        registry.add(ProblemEntry{{"ZDT" + std::to_string(i),
                                   FunctionKind::problem,
                                   {"problem", i == 5 ? "binary" : "real"},
                                   zdt_titles[i - 1],
                                   {}},
                                  [variant](int M, int D) { return make_zdt(variant, M, D); }});
    }
    const char* dtlz_titles[] = {"DTLZ1: linear front, multimodal", "DTLZ2: spherical front",
                                 "DTLZ3: spherical front, multimodal", "DTLZ4: spherical front, biased density",
                                 "DTLZ5: degenerate curve front", "DTLZ6: degenerate curve front, biased",
                                 "DTLZ7: disconnected front"};
    for (int i = 1; i <= 7; ++i) {
        const auto variant = static_cast<DtlzVariant>(i);
        registry.add(ProblemEntry{{"DTLZ" + std::to_string(i),
                                   FunctionKind::problem,
                                   {"problem", "real", "many"},
                                   dtlz_titles[i - 1],
                                   {}},
                                  [variant](int M, int D) { return make_dtlz(variant, M, D); }});
    }
}

} // namespace paretokit
