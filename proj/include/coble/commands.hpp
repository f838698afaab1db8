#pragma once

// The four CLI commands as functions from parsed JSON input to a JSON result
// and an exit code: 0 success, 2 mathematical failure, 3 usage or input
// error. Failures are reported as {"error": kind, "detail": message}.

#include "coble/errors.hpp"
#include "coble/json_io.hpp"

#include <functional>
#include <optional>
#include <string>

namespace coble::cli {

using json = nlohmann::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitMath = 2;
inline constexpr int kExitUsage = 3;

struct CommandResult {
  int exit_code = kExitOk;
  json output;
};

int exit_code_for(ErrorKind kind);
CommandResult failure(const MathError& e);

/// Six points -> the 40 gammas, their power sums and the Clebsch vector.
CommandResult cmd_gamma(const json& config);

/// Clebsch vector (bare array, or an object with a "clebsch" field such as
/// the gamma command's output) -> sigma, g and the surface.
CommandResult cmd_equation(const json& input);

CommandResult cmd_verify(const std::string& suite, std::uint64_t seed, std::optional<int> samples);

struct TwistOptions {
  std::optional<int> bound;             // overrides the job file
  std::optional<std::uint64_t> seed;    // overrides the job file
  int workers = 1;
  std::optional<int> samples;           // relation samples; default shared data
  std::function<void(const std::string&)> log;
};

/// Descent space, basis reduction (or the job's basis), restricted cubics,
/// point search and surface recovery for every point found.
CommandResult cmd_twist(const json& job, const TwistOptions& options);

}  // namespace coble::cli
