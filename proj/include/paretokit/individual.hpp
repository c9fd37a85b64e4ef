#ifndef PARETOKIT_INDIVIDUAL_HPP
#define PARETOKIT_INDIVIDUAL_HPP

#include "paretokit/core.hpp"

#include <map>
#include <string>
#include <vector>

namespace paretokit {

using AuxiliaryMap = std::map<std::string, Vector>;

/// One evaluated solution. Decision, objective and constraint vectors are
/// fixed at construction; there is no mutating access.
class Individual {
public:
    Individual(Vector dec, Vector obj, Vector con = {}, AuxiliaryMap add = {})
        : dec_(std::move(dec)), obj_(std::move(obj)), con_(std::move(con)), add_(std::move(add)) {}

    const Vector& dec() const noexcept { return dec_; }
    const Vector& obj() const noexcept { return obj_; }
    const Vector& con() const noexcept { return con_; }
    const AuxiliaryMap& add() const noexcept { return add_; }

    // Sum of positive constraint values; zero when feasible or unconstrained.
    double violation() const noexcept { return con_.size() == 0 ? 0.0 : con_.cwiseMax(0.0).sum(); }

    friend bool operator==(const Individual& a, const Individual& b) {
        return a.dec_ == b.dec_ && a.obj_ == b.obj_ && a.con_ == b.con_ && a.add_ == b.add_;
    }

private:
    Vector dec_;
    Vector obj_;
    Vector con_;
    AuxiliaryMap add_;
};

using Population = std::vector<Individual>;

Matrix decs(const Population& pop);
Matrix objs(const Population& pop);
Matrix cons(const Population& pop);

Population subset(const Population& pop, const std::vector<Index>& rows);
Population concat(const Population& a, const Population& b);

} // namespace paretokit

#endif // PARETOKIT_INDIVIDUAL_HPP
