#include "paretokit/indicators.hpp"

#include "paretokit/kernel.hpp"

namespace paretokit {

namespace {

HvOptions hv_options(std::span<const double> p) {
    HvOptions opts;
    opts.samples = static_cast<std::uint64_t>(p[0]);
    opts.exact_max_objectives = static_cast<Index>(p[1]);
    return opts;
}

std::vector<ParamInfo> hv_params() {
    return {{"samples", 1e6, "Monte Carlo sample count when the exact method is not used"},
            {"exactM", 4, "Largest objective count computed exactly"}};
}

} // namespace

void register_indicators(Registry& registry) {
    registry.add(IndicatorEntry{{"IGD", FunctionKind::indicator, {"indicator"}, "Inverted generational distance", {}},
                                Direction::minimize,
                                [](const Matrix& pop, const Matrix& pf, std::span<const double>) {
                                    return igd(pop, pf);
                                }});
    registry.add(IndicatorEntry{{"GD", FunctionKind::indicator, {"indicator"}, "Generational distance", {}},
                                Direction::minimize,
                                [](const Matrix& pop, const Matrix& pf, std::span<const double>) {
                                    return gd(pop, pf);
                                }});
    registry.add(IndicatorEntry{{"HV", FunctionKind::indicator, {"indicator"},
                                 "Hypervolume of the PF-normalized population, reference point 1.1", hv_params()},
                                Direction::maximize,
                                [](const Matrix& pop, const Matrix& pf, std::span<const double> p) {
                                    return hv_normalized(pop, pf, hv_options(p)).hv;
                                }});
    registry.add(IndicatorEntry{{"NHV", FunctionKind::indicator, {"indicator"},
                                 "Hypervolume divided by the reference box volume", hv_params()},
                                Direction::maximize,
                                [](const Matrix& pop, const Matrix& pf, std::span<const double> p) {
                                    return hv_normalized(pop, pf, hv_options(p)).nhv;
                                }});
    registry.add(IndicatorEntry{{"Spacing", FunctionKind::indicator, {"indicator"},
                                 "Deviation of nearest-neighbour distances", {}},
                                Direction::minimize,
                                [](const Matrix& pop, const Matrix&, std::span<const double>) {
                                    return spacing(pop);
                                }});
    registry.add(IndicatorEntry{{"Spread", FunctionKind::indicator, {"indicator"},
                                 "Diversity metric Delta", {}},
                                Direction::minimize,
                                [](const Matrix& pop, const Matrix& pf, std::span<const double>) {
                                    return spread(pop, pf);
                                }});
    registry.add(IndicatorEntry{{"Coverage", FunctionKind::indicator, {"indicator"},
                                 "Share of the reference set weakly dominated by the population", {}},
                                Direction::maximize,
                                [](const Matrix& pop, const Matrix& pf, std::span<const double>) {
                                    return coverage(pop, pf);
                                }});
}

IndicatorResult evaluate_indicator(const Registry& registry, const std::string& name, const Matrix& pop_obj,
                                   const Matrix& pf, const std::map<std::string, std::vector<double>>& params) {
    const auto& entry = registry.indicator(name);
    const auto defaults = entry.info.defaults();
    const auto resolved = parameter_set(params, name, defaults);
    IndicatorResult out;
    out.name = name;
    out.direction = entry.direction;
    out.score = entry.score(pop_obj, pf, resolved);
    out.reference_used = "PF sample of " + std::to_string(pf.rows()) + " points";
    return out;
}

} // namespace paretokit
