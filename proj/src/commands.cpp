#include "coble/commands.hpp"

#include "coble/verify.hpp"

#include <algorithm>

namespace coble::cli {

int exit_code_for(ErrorKind kind) { return is_input_error(kind) ? kExitUsage : kExitMath; }

CommandResult failure(const MathError& e) {
  return {exit_code_for(e.kind()), {{"error", error_name(e.kind())}, {"detail", e.what()}}};
}

namespace {

CommandResult guarded(const std::function<CommandResult()>& body) {
  try {
    return body();
  } catch (const MathError& e) {
    return failure(e);
  } catch (const json::exception& e) {
    return {kExitUsage, {{"error", error_name(ErrorKind::InvalidInput)}, {"detail", e.what()}}};
  }
}

}  // namespace

CommandResult cmd_gamma(const json& config) {
  return guarded([&] {
    const auto c = io::config_from_json(config);
    if (auto w = degeneracy(c)) fail(ErrorKind::DegenerateConfig, w->describe());
    const auto g = evaluate_all(c);
    const auto p = power_sums(g);
    return CommandResult{kExitOk,
                         {{"config", io::to_json(c.canonical())},
                          {"gammas", io::gamma_to_json(g)},
                          {"power_sums", io::to_json(p)},
                          {"clebsch", io::to_json(clebsch_from_power_sums(p))}}};
  });
}

CommandResult cmd_equation(const json& input) {
  return guarded([&] {
    const json& raw = input.is_object() && input.contains("clebsch") ? input.at("clebsch") : input;
    const auto c = io::clebsch_from_json(raw);
    json out = io::to_json(equation_problem(c));
    out["clebsch"] = io::to_json(c);
    return CommandResult{kExitOk, out};
  });
}

CommandResult cmd_verify(const std::string& suite, std::uint64_t seed, std::optional<int> samples) {
  return guarded([&] {
    const auto r = run_suite(suite, seed, samples);
    json counts = json::object();
    for (const auto& [k, v] : r.counts) counts[k] = v;
    return CommandResult{r.passed ? kExitOk : kExitMath,
                         {{"suite", r.suite}, {"seed", seed}, {"passed", r.passed}, {"counts", counts}}};
  });
}

CommandResult cmd_twist(const json& job_json, const TwistOptions& options) {
  auto log = [&](const std::string& s) {
    if (options.log) options.log(s);
  };
  return guarded([&] {
    auto job = io::job_from_json(job_json);
    if (options.bound) job.bound = *options.bound;
    if (options.seed) job.seed = *options.seed;
    if (job.bound < 0) fail(ErrorKind::InvalidInput, "negative bound");

    const GammaData data =
        options.samples ? compute_gamma_data(kDefaultSeed, *options.samples) : default_gamma_data();
    log("field of degree " + std::to_string(job.field.degree()) + " with " +
        std::to_string(job.field.automorphisms.size()) + " generators");
    TwistedModel model = build_descent_space(job.field, job.rho, data);
    log("descent space of dimension " + std::to_string(model.basis.size()));
    if (job.basis) {
      model = with_basis(model, *job.basis);
      log("using the basis from the job file");
    } else {
      model = reduce_basis(model, job.field);
      log("basis reduced");
    }
    model = restrict_cubics(model, data);
    log(std::to_string(model.cubics.size()) + " rational cubics");

    std::size_t last = 0;
    const auto points = point_search(model, job.bound, options.workers, job.seed, [&](std::size_t done, std::size_t total) {
      const std::size_t pct = 100 * done / total;
      if (pct >= last + 10 || done == total) {
        last = pct;
        log("search " + std::to_string(pct) + "% (" + std::to_string(done) + "/" + std::to_string(total) + " blocks)");
      }
    });
    log(std::to_string(points.size()) + " candidate points within bound " + std::to_string(job.bound));

    json out;
    out["descent_dimension"] = model.basis.size();
    json basis = json::array();
    for (const auto& b : model.basis) basis.push_back(io::matrix_to_json(b));
    json cubics = json::array();
    for (const auto& c : model.cubics) {
      json row = json::array();
      for (Eigen::Index i = 0; i < c.size(); ++i) row.push_back(io::to_json(c(i)));
      cubics.push_back(row);
    }
    out["model"] = {{"basis", basis}, {"cubics", cubics}, {"cubic_monomial_order", "desc-lex-t0..t9-deg3"}};
    out["bound"] = job.bound;
    out["seed"] = job.seed;

    json candidates = json::array();
    json result = nullptr;
    for (std::size_t i = 0; i < points.size(); ++i) {
      json cand = {{"point", io::to_json(points[i])}};
      try {
        // Boundary points of the gamma variety have many vanishing gammas.
        const auto g = gammas_at(model, model.point(to_rational(points[i])), data);
        cand["vanishing_gammas"] = std::count_if(g.begin(), g.end(), [](const EtaleElement& x) { return x.residue.is_zero(); });
        const auto r = recover_surface(model, points[i], data);
        cand["power_sums"] = io::to_json(r.power_sums);
        cand["clebsch"] = io::to_json(r.clebsch);
        if (r.equation) {
          cand["status"] = "ok";
          cand["surface"] = io::to_json(r.equation->surface);
          if (result.is_null()) result = {{"point", cand["point"]}, {"clebsch", cand["clebsch"]}, {"surface", cand["surface"]}};
        } else {
          cand["status"] = error_name(*r.failure);
          cand["detail"] = r.failure_detail;
        }
      } catch (const MathError& e) {
        if (is_input_error(e.kind())) throw;
        cand["status"] = error_name(e.kind());
        cand["detail"] = e.what();
      }
      log("candidate " + std::to_string(i + 1) + "/" + std::to_string(points.size()) + ": " +
          cand["status"].get<std::string>());
      candidates.push_back(cand);
    }
    out["candidates"] = candidates;
    out["result"] = result;
    if (result.is_null()) {
      out["error"] = error_name(ErrorKind::NotFoundWithinBound);
      out["detail"] = "no point with a solvable equation problem within bound " + std::to_string(job.bound);
      return CommandResult{kExitMath, out};
    }
    return CommandResult{kExitOk, out};
  });
}

}  // namespace coble::cli
