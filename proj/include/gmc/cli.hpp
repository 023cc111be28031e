#pragma once

#include "gmc/config.hpp"
#include "gmc/experiments.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace gmc {

// CSV: parameter columns, estimate, se, replicas. '.' radix, '\n' endings.
std::string result_csv(const ExperimentResult& res);
// One JSON object per ResultRow, then a {"summary": ...} line.
std::string result_jsonl(const ExperimentResult& res);

// Writes <dir>/<name>.csv and <dir>/<name>.jsonl; returns their paths.
std::vector<std::filesystem::path> write_result(const ExperimentResult& res,
                                                const std::filesystem::path& dir);

// Entry point of the `gmc` tool. Exit codes: 0 ok, 1 other error,
// 2 configuration error, 3 numerical consistency error.
int run_cli(int argc, char** argv);

}  // namespace gmc
