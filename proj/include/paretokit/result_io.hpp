#ifndef PARETOKIT_RESULT_IO_HPP
#define PARETOKIT_RESULT_IO_HPP

// Result files are JSON Lines:
//   {"schema":"paretokit.result","version":1,"config":{...},"population_size":N}
//   {"type":"snapshot","generation":g,"evaluations":fe,"dec":[[..]],"obj":[[..]],"con":[[..]]}   (one per snapshot)
//   {"type":"final","evaluations":fe,"dec":..,"obj":..,"con":..}
//   {"type":"end","snapshots":count}
// Rows carrying auxiliary data add "add":[{"key":[..]}, ...] aligned with the rows.

#include "paretokit/kernel.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

#include "json.hpp"

namespace paretokit {

inline constexpr int kResultSchemaVersion = 1;

nlohmann::json config_to_json(const RunConfig& config);
RunConfig config_from_json(const nlohmann::json& j);

nlohmann::json population_to_json(const Population& pop);
Population population_from_json(const nlohmann::json& j);

std::string serialize_result(const RunResult& result);
RunResult parse_result(const std::string& text);

void write_result(std::ostream& out, const RunResult& result);
// Written to a sibling temp file then renamed, so a present file is complete.
void save_result(const RunResult& result, const std::filesystem::path& path);
RunResult load_result(const std::filesystem::path& path);

// <folder>/<label>/<problem>_M<M>_D<D>_R<run>.result
std::filesystem::path result_path(const std::filesystem::path& folder, const std::string& label,
                                  const std::string& problem, int M, int D, int run);

} // namespace paretokit

#endif // PARETOKIT_RESULT_IO_HPP
