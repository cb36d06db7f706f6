#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gsimplex {

struct RunConfig {
  enum class Command { kMoments, kDensity, kSample, kVerify, kReport };

  Command command = Command::kMoments;
  std::string experiment;  // verify: theorem1 | withorigin | projection | grassmannian
  std::string kind = "volumes";  // sample: volumes | origin | chiprod
  int d = 0;
  int l = 0;
  std::vector<double> sigmas;
  std::size_t n = 100000;
  std::uint64_t seed = 0;
  std::vector<double> p_list{1.0};
  int workers = 1;
  int grid_size = 8192;
  std::string input_path;
  std::string output_path;
  std::string format = "text";  // text | json | csv

  std::vector<std::string> to_argv() const;
  bool operator==(const RunConfig& other) const = default;
};

struct ParseResult {
  enum class Status { kOk, kHelp, kError };
  Status status = Status::kError;
  RunConfig config;
  std::string message;
};

/// Total: either a valid RunConfig, help text, or a usage error naming the
/// offending flag. No side effects.
ParseResult parse_args(const std::vector<std::string>& argv);

/// Dispatches config; writes artifacts atomically. Returns 0 on success,
/// 1 when a verification threshold fails, 2 on usage/domain/numerical error.
int run(const RunConfig& config);

int cli_main(int argc, char** argv);

}  // namespace gsimplex
