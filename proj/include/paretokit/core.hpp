#ifndef PARETOKIT_CORE_HPP
#define PARETOKIT_CORE_HPP

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace paretokit {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using RowVector = Eigen::RowVectorXd;

enum class Encoding { real, binary };

const char* to_string(Encoding e);
Encoding encoding_from_string(const std::string& s);

// Bad names, bad parameter values, incompatible combinations.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Inputs outside an operation's mathematical domain (empty sets, shape mismatch).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Raised by the kernel when a factory call is made after the budget is spent.
class RunTerminated : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t byte_offset)
        : std::runtime_error(what + " (at byte offset " + std::to_string(byte_offset) + ")"),
          offset_(byte_offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class SchemaError : public std::runtime_error {
public:
    SchemaError(const std::string& what, int found_version)
        : std::runtime_error(what), version_(found_version) {}
    int version() const noexcept { return version_; }

private:
    int version_;
};

} // namespace paretokit

#endif // PARETOKIT_CORE_HPP
