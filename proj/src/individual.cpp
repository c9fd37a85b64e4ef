#include "paretokit/individual.hpp"

namespace paretokit {

namespace {

template <class Get>
Matrix stack_rows(const Population& pop, Get get) {
    if (pop.empty()) {
        return {};
    }
    const Index cols = get(pop.front()).size();
    Matrix out(static_cast<Index>(pop.size()), cols);
    for (std::size_t i = 0; i < pop.size(); ++i) {
        out.row(static_cast<Index>(i)) = get(pop[i]).transpose();
    }
    return out;
}

} // namespace

Matrix decs(const Population& pop) {
    return stack_rows(pop, [](const Individual& x) -> const Vector& { return x.dec(); });
}

Matrix objs(const Population& pop) {
    return stack_rows(pop, [](const Individual& x) -> const Vector& { return x.obj(); });
}

Matrix cons(const Population& pop) {
    return stack_rows(pop, [](const Individual& x) -> const Vector& { return x.con(); });
}

Population subset(const Population& pop, const std::vector<Index>& rows) {
    Population out;
    out.reserve(rows.size());
    for (Index r : rows) {
        out.push_back(pop.at(static_cast<std::size_t>(r)));
    }
    return out;
}

Population concat(const Population& a, const Population& b) {
    Population out;
    out.reserve(a.size() + b.size());
    out.insert(out.end(), a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

} // namespace paretokit
