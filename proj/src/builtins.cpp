#include "paretokit/algorithms.hpp"
#include "paretokit/indicators.hpp"
#include "paretokit/nds.hpp"
#include "paretokit/problems.hpp"
#include "paretokit/registry.hpp"
#include "paretokit/variation.hpp"

namespace paretokit {

SortMethod sort_method_from_string(const std::string& s) {
    if (s == "auto" || s == "automatic") {
        return SortMethod::automatic;
    }
    if (s == "brute") {
        return SortMethod::brute;
    }
    if (s == "fast") {
        return SortMethod::fast;
    }
    if (s == "ens_ss" || s == "ENS-SS") {
        return SortMethod::ens_ss;
    }
    if (s == "t_ens" || s == "T-ENS") {
        return SortMethod::t_ens;
    }
    throw ConfigError("unknown sort method '" + s + "'; expected auto, brute, fast, ens_ss or t_ens");
}

const Registry& builtin_registry() {
    static const Registry registry = [] {
        Registry r;
        register_problems(r);
        register_operators(r);
        register_algorithms(r);
        register_indicators(r);
        return r;
    }();
    return registry;
}

} // namespace paretokit
