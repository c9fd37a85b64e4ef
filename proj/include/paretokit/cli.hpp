#ifndef PARETOKIT_CLI_HPP
#define PARETOKIT_CLI_HPP

#include "paretokit/registry.hpp"

#include <iosfwd>

#include "json.hpp"

namespace paretokit {

// Exit codes: 0 success, 1 runtime failure, 2 bad name or value.
int parse_and_run(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
                  const Registry& registry = builtin_registry());

// Metadata of every registered function, grouped by kind.
nlohmann::json registry_to_json(const Registry& registry);

} // namespace paretokit

#endif // PARETOKIT_CLI_HPP
