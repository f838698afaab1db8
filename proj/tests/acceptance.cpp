// End-to-end acceptance checks, one line per criterion. Exit status is the
// number of failed criteria.

#include "coble/commands.hpp"
#include "coble/errors.hpp"
#include "coble/forms.hpp"
#include "coble/linalg.hpp"
#include "coble/verify.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace coble;
using io::json;

#ifndef COBLE_DATA_DIR
#error "COBLE_DATA_DIR must point at tests/data"
#endif

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::vector<SixPointConfig> general_configs(std::uint64_t seed, int count) {
  Rng rng(seed);
  std::vector<SixPointConfig> out;
  while (static_cast<int>(out.size()) < count) {
    auto c = random_config(rng);
    if (general_position(c)) out.push_back(c);
  }
  return out;
}

ClebschVector from_gammas(const GammaVector& g) { return clebsch_from_power_sums(power_sums(g)); }

// 1. Linear span of the 40 gammas over 200 configurations.
Outcome linear_span() {
  const int count = 200;
  const auto configs = general_configs(101, count);
  QMatrix m(count, kGammaCount);
  for (int i = 0; i < count; ++i) m.row(i) = evaluate_all(configs[static_cast<std::size_t>(i)]).transpose();
  const auto r = rank(m);
  const auto nullity = kGammaCount - r;
  return {r == 10 && nullity == 30, "rank " + std::to_string(r) + ", nullity " + std::to_string(nullity) + " over " +
                                        std::to_string(count) + " configurations"};
}

// 2. Quadratic and cubic spans in the ten basis coordinates, on samples
// independent of the shared relation data.
Outcome quadratic_cubic_spans() {
  const auto s = sample_gammas(424242, kDefaultSamples);
  const auto basis = find_gamma_basis(s);
  const auto q = sampled_relation_space(2, s, basis);
  const auto c = sampled_relation_space(3, s, basis);
  // Every cubic relation of the new samples also kills the shared ones'
  // complement: the two 30-dimensional spaces coincide.
  QMatrix both(60, 220);
  for (int i = 0; i < 30 && i < static_cast<int>(c.kernel.size()); ++i) {
    both.row(i) = c.kernel[static_cast<std::size_t>(i)].transpose();
    both.row(30 + i) = default_gamma_data().cubic.kernel[static_cast<std::size_t>(i)].transpose();
  }
  const bool same = c.kernel.size() == 30 && rank(both) == 30;
  return {q.rank == 55 && q.kernel.empty() && c.rank == 190 && c.kernel.size() == 30 && same,
          "degree 2 rank " + std::to_string(q.rank) + ", degree 3 rank " + std::to_string(c.rank) + " nullity " +
              std::to_string(c.kernel.size()) + (same ? ", same relations as the shared data" : ", relation spaces differ")};
}

// 3. Group order, transitivity on 80 and the {gamma, -gamma} blocks.
Outcome group_order() {
  const auto r = verify_group(weyl_group().generators());
  // Orbit of +gamma_0 under the generators, computed here.
  std::vector<Perm> gens;
  for (const auto& g : weyl_group().generators()) gens.push_back(weyl_group().gamma_action(g).as_perm80());
  std::vector<bool> seen(80, false);
  std::vector<int> queue{0};
  seen[0] = true;
  for (std::size_t k = 0; k < queue.size(); ++k)
    for (const auto& p : gens) {
      const int y = p[static_cast<std::size_t>(queue[k])];
      if (!seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = true;
        queue.push_back(y);
      }
    }
  const bool ok = r.order == 51840 && queue.size() == 80 && r.transitive80 && r.sign_pairs_only_blocks && r.block_count == 40;
  return {ok, "order " + std::to_string(r.order) + ", orbit " + std::to_string(queue.size()) + ", " +
                  std::to_string(r.block_count) + " blocks" + (r.sign_pairs_only_blocks ? " (the only nontrivial system)" : "")};
}

// 4. The six-term cubic relation and the d2 identity on 50 configurations each.
Outcome relation_identities() {
  int cubic = 0, beautiful = 0;
  auto gamma = [](const GammaVector& g, const char* s) { return g(symbol_index(GammaSymbol::parse(s))); };
  for (const auto& c : general_configs(202, 50)) {
    const auto g = evaluate_all(c);
    cubic += gamma(g, "(12)(34)(56)") * gamma(g, "(23)(45)(16)") * gamma(g, "(14)(36)(25)") ==
             gamma(g, "(12)(36)(45)") * gamma(g, "(34)(25)(16)") * gamma(g, "(56)(14)(23)");
  }
  for (const auto& c : general_configs(203, 50)) {
    auto m = [&](int i, int j, int k) { return minor(c, i, j, k); };
    beautiful += d2(c) == -(m(1, 3, 4) * m(1, 5, 6) * m(2, 3, 5) * m(2, 4, 6) - m(1, 3, 5) * m(1, 4, 6) * m(2, 3, 4) * m(2, 5, 6));
  }
  return {cubic == 50 && beautiful == 50,
          "cubic relation " + std::to_string(cubic) + "/50, d2 identity " + std::to_string(beautiful) + "/50"};
}

// 5. Partner and I123 leave the Clebsch vector unchanged.
Outcome partner_invariance() {
  Rng rng(505);
  int partner_ok = 0, partner_n = 0, i123_ok = 0, i123_n = 0;
  while (partner_n < 20 || i123_n < 20) {
    const auto n = random_naive(rng);
    if (!general_position(n)) continue;
    const auto g = evaluate_all_raw(naive_config(n));
    const auto c = from_gammas(g);
    if (partner_n < 20) {
      try {
        const auto m = partner(n);
        ++partner_n;
        partner_ok += weighted_equal(from_gammas(evaluate_all_raw(naive_config(m))), c);
      } catch (const MathError& e) {
        if (e.kind() != ErrorKind::NotDefinedHere) throw;
      }
    }
    if (i123_n < 20) {
      try {
        const auto m = cremona_i123(n);
        ++i123_n;
        const Rational s = pow(n.w * n.x * n.y * n.z, 2);
        const auto ci = from_gammas(s * evaluate_all_raw(naive_config(m)));
        i123_ok += weighted_equal(ci, c) && ci == c;
      } catch (const MathError& e) {
        if (e.kind() != ErrorKind::NotDefinedHere) throw;
      }
    }
  }
  return {partner_ok == 20 && i123_ok == 20,
          "partner " + std::to_string(partner_ok) + "/20, I123 after clearing the scalar " + std::to_string(i123_ok) + "/20"};
}

// 6. sigma -> Clebsch -> sigma -> Clebsch.
Outcome equation_round_trip() {
  Rng rng(606);
  int ok = 0, n = 0;
  while (n < 50) {
    SigmaVector s;
    for (auto& x : s) x = Rational(rng.uniform(-30, 30), rng.uniform(1, 6));
    if (s[4].is_zero()) continue;
    const UniPoly g = pentahedral_polynomial(s);
    if (!is_squarefree(g)) continue;
    ++n;
    const auto c = clebsch_from_sigma(s);
    const auto back = clebsch_from_sigma(sigma_from_clebsch(c));
    const auto sol = equation_problem(c);
    ok += weighted_equal(back, c) && weighted_equal(clebsch_from_sigma(sol.sigma), c);
  }
  return {ok == 50, std::to_string(ok) + "/50 weighted-equal round trips"};
}

// 7. Split quintics: the descent equals sum a_j l_j^3 with l_j the trace-zero
// forms evaluated at the roots.
Outcome split_descent() {
  Rng rng(707);
  int ok = 0;
  for (int t = 0; t < 20; ++t) {
    std::vector<Rational> roots;
    while (roots.size() < 5) {
      const Rational x(rng.uniform(-12, 12), rng.uniform(1, 4));
      if (std::find(roots.begin(), roots.end(), x) == roots.end()) roots.push_back(x);
    }
    const UniPoly g = UniPoly::from_roots(roots);
    const auto c = descent_forms(g);
    Form sum(4, 3);
    for (const auto& a : roots) {
      QVector l(4);
      for (int i = 0; i < 4; ++i) l(i) = c[static_cast<std::size_t>(i)].residue(a);
      sum = sum + a * Form::linear(l).pow(3);
    }
    ok += galois_descent(g) == CubicForm4::from_form(sum);
  }
  return {ok == 20, std::to_string(ok) + "/20 coefficientwise equal"};
}

// 8. Trivial twist with five planted configurations as basis vectors.
Outcome trivial_pipeline() {
  const auto& data = default_gamma_data();
  const auto configs = general_configs(808, 5);
  std::vector<QVector> planted;
  for (const auto& c : configs) {
    ZVector z = primitive_integer(basis_coordinates(evaluate_all(c), data.basis));
    normalize_sign(z);
    planted.push_back(to_rational(z));
  }
  // Complete with unit vectors to a basis of Q^10.
  std::vector<QVector> basis = planted;
  for (int k = 0; k < kGammaRank && basis.size() < kGammaRank; ++k) {
    QVector e = QVector::Zero(kGammaRank);
    e(k) = 1;
    QMatrix m(static_cast<Eigen::Index>(basis.size()) + 1, kGammaRank);
    for (std::size_t i = 0; i < basis.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = basis[i].transpose();
    m.row(m.rows() - 1) = e.transpose();
    if (rank(m) == m.rows()) basis.push_back(e);
  }
  json jb = json::array();
  for (const auto& b : basis) {
    QMatrix col(kGammaRank, 1);
    col.col(0) = b;
    jb.push_back(io::matrix_to_json(col));
  }
  const json job = {{"field", {{"modulus", {"0", "1"}}, {"automorphisms", json::array()}}},
                    {"rho", json::array()},
                    {"bound", 1},
                    {"seed", 8},
                    {"basis", jb}};
  const auto r = cli::cmd_twist(job, {});
  if (!r.output.contains("candidates")) return {false, "twist failed: " + r.output.dump()};
  int found = 0, matched = 0;
  for (std::size_t k = 0; k < configs.size(); ++k) {
    json unit = json::array();
    for (std::size_t i = 0; i < kGammaRank; ++i) unit.push_back(i == k ? 1 : 0);
    for (const auto& cand : r.output["candidates"]) {
      if (cand["point"] != unit) continue;
      ++found;
      if (cand.contains("clebsch") && weighted_equal(io::clebsch_from_json(cand["clebsch"]), from_gammas(evaluate_all(configs[k]))))
        ++matched;
    }
  }
  return {found == 5 && matched == 5, std::to_string(found) + "/5 planted points found among " +
                                          std::to_string(r.output["candidates"].size()) + ", " + std::to_string(matched) +
                                          "/5 Clebsch vectors reproduced"};
}

json load(const std::string& name) {
  std::ifstream in(std::string(COBLE_DATA_DIR) + "/" + name);
  return json::parse(in);
}

// Structural checks on a twist result; returns an empty string when fine.
std::string check_twist(const cli::CommandResult& r, int& surfaces) {
  const json& o = r.output;
  if (!o.contains("descent_dimension")) return "pipeline failed: " + o.value("detail", o.dump());
  if (o["descent_dimension"] != 10) return "descent dimension " + o["descent_dimension"].dump();
  if (o["model"]["cubics"].size() != 30) return std::to_string(o["model"]["cubics"].size()) + " cubics";
  for (const auto& c : o["model"]["cubics"])
    for (const auto& x : c) io::rational_from_json(x, "cubic");
  surfaces = 0;
  for (const auto& cand : o["candidates"]) {
    if (cand["status"] != "ok") continue;
    ++surfaces;
    const auto c = io::clebsch_from_json(cand["clebsch"]);
    io::cubic_from_json(cand["surface"]);
    if (!weighted_equal(clebsch_from_sigma(sigma_from_clebsch(c)), c)) return "round trip fails for a recovered surface";
  }
  if (surfaces == 0 && o.value("error", "") != "NotFoundWithinBound") return "no surface and no NotFoundWithinBound";
  if (surfaces > 0 && (r.exit_code != 0 || o["result"].is_null())) return "surfaces found but no result";
  return {};
}

// 9. Quadratic and degree-nine cyclic twists.
Outcome nontrivial_twists() {
  std::ostringstream detail;
  bool ok = true;
  for (const auto& [name, label] : {std::pair<std::string, std::string>{"c2_sqrt5.json", "C2"},
                                    std::pair<std::string, std::string>{"c9_real_cyclotomic19.json", "C9"}}) {
    const json job = load(name);
    const auto t0 = std::chrono::steady_clock::now();
    const auto r1 = cli::cmd_twist(job, {std::nullopt, std::nullopt, 1, std::nullopt, {}});
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const auto r2 = cli::cmd_twist(job, {std::nullopt, std::nullopt, 3, std::nullopt, {}});
    int surfaces = 0;
    std::string problem = check_twist(r1, surfaces);
    if (problem.empty() && r1.output.dump() != r2.output.dump()) problem = "output depends on the worker count";
    ok = ok && problem.empty();
    detail << (label == "C2" ? "" : "; ") << label << ": ";
    if (!problem.empty())
      detail << problem;
    else if (surfaces > 0)
      detail << surfaces << " surfaces from " << r1.output["candidates"].size() << " points, bound " << job["bound"] << " ("
             << static_cast<int>(secs) << "s)";
    else
      detail << "NotFoundWithinBound, reproducible";
  }
  return {ok, detail.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 linear span", linear_span},
      {"2 quadratic/cubic spans", quadratic_cubic_spans},
      {"3 group order and blocks", group_order},
      {"4 relation identities", relation_identities},
      {"5 partner/I123 invariance", partner_invariance},
      {"6 equation round trip", equation_round_trip},
      {"7 split-case descent", split_descent},
      {"8 trivial-twist pipeline", trivial_pipeline},
      {"9 nontrivial twists", nontrivial_twists},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.passed;
    std::printf("[%s] %s: %s (%.1fs)\n", o.passed ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed;
}
