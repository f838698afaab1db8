// coble: batch front end for the gamma, equation, verify and twist commands.
// Results go to --output (stdout when absent), progress to stderr.

#include "coble/commands.hpp"
#include "coble/verify.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

using coble::cli::CommandResult;
using coble::cli::json;

namespace {

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) coble::fail(coble::ErrorKind::InvalidInput, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    coble::fail(coble::ErrorKind::InvalidInput, path + ": " + e.what());
  }
}

int emit(const CommandResult& r, const std::string& output) {
  const std::string text = r.output.dump(2) + "\n";
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output);
    if (!out) {
      std::cerr << "coble: cannot write " << output << "\n";
      return coble::cli::kExitUsage;
    }
    out << text;
  }
  if (r.exit_code != coble::cli::kExitOk && r.output.contains("error"))
    std::cerr << "coble: " << r.output.value("detail", r.output["error"].get<std::string>()) << "\n";
  return r.exit_code;
}

// Reads the input file, turning an unreadable file into a structured failure.
CommandResult with_input(const std::string& path, const std::function<CommandResult(const json&)>& run) {
  try {
    return run(read_json(path));
  } catch (const coble::MathError& e) {
    return coble::cli::failure(e);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cubic surfaces from six points and their twists"};
  app.require_subcommand(1);

  std::string output;
  std::uint64_t seed = coble::kDefaultSeed;
  int samples = 0;
  int bound = -1;
  int workers = 1;
  auto common = [&](CLI::App* sub) { sub->add_option("-o,--output", output, "Result file (default: stdout)"); };

  std::string config_path;
  auto* gamma = app.add_subcommand("gamma", "Gammas, power sums and Clebsch invariants of six points");
  gamma->add_option("config", config_path, "JSON array of six points")->required();
  common(gamma);

  std::string clebsch_path;
  auto* equation = app.add_subcommand("equation", "A cubic surface with the given Clebsch invariants");
  equation->add_option("clebsch", clebsch_path, "JSON Clebsch vector")->required();
  common(equation);

  std::string suite;
  auto* verify = app.add_subcommand("verify", "Run an invariant suite");
  verify->add_option("suite", suite, "rank10 | spans | group | cubic | beautiful")->required();
  verify->add_option("--seed", seed, "Sampling seed");
  verify->add_option("--samples", samples, "Sample count (suite default when omitted)")->check(CLI::PositiveNumber);
  common(verify);

  std::string job_path;
  auto* twist = app.add_subcommand("twist", "Twisted model, point search and surface recovery");
  twist->add_option("job", job_path, "JSON job file")->required();
  auto* seed_opt = twist->add_option("--seed", seed, "Search filter seed (overrides the job)");
  twist->add_option("--bound", bound, "Height bound (overrides the job)")->check(CLI::Range(0, 1000));
  twist->add_option("--workers", workers, "Search threads")->check(CLI::Range(1, 256));
  twist->add_option("--samples", samples, "Relation samples (default 400, shared data)")->check(CLI::PositiveNumber);
  common(twist);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : coble::cli::kExitUsage;
  }

  if (*gamma) return emit(with_input(config_path, coble::cli::cmd_gamma), output);
  if (*equation) return emit(with_input(clebsch_path, coble::cli::cmd_equation), output);
  if (*verify) {
    const auto r = coble::cli::cmd_verify(suite, seed, samples > 0 ? std::optional<int>(samples) : std::nullopt);
    if (r.output.contains("passed"))
      std::cerr << "verify " << suite << ": " << (r.output["passed"].get<bool>() ? "pass" : "FAIL") << "\n";
    return emit(r, output);
  }
  coble::cli::TwistOptions opt;
  if (bound >= 0) opt.bound = bound;
  if (seed_opt->count() > 0) opt.seed = seed;
  opt.workers = workers;
  if (samples > 0) opt.samples = samples;
  opt.log = [](const std::string& s) { std::cerr << "twist: " << s << "\n"; };
  return emit(with_input(job_path, [&](const json& j) { return coble::cli::cmd_twist(j, opt); }), output);
}
