#include "coble/verify.hpp"

#include "coble/errors.hpp"
#include "coble/gamma.hpp"
#include "coble/linalg.hpp"
#include "coble/plane_config.hpp"
#include "coble/weyl.hpp"

namespace coble {

namespace {

std::vector<SixPointConfig> general_configs(std::uint64_t seed, int count) {
  Rng rng(seed);
  std::vector<SixPointConfig> out;
  while (static_cast<int>(out.size()) < count) {
    auto c = random_config(rng);
    if (general_position(c)) out.push_back(c);
  }
  return out;
}

int checked_count(std::optional<int> samples, int fallback) {
  const int n = samples.value_or(fallback);
  if (n < 1) fail(ErrorKind::InvalidInput, "sample count must be positive");
  return n;
}

SuiteReport rank10(std::uint64_t seed, int count) {
  const auto configs = general_configs(seed, count);
  ZMatrix rows(count, kGammaCount);
  for (int i = 0; i < count; ++i) rows.row(i) = primitive_integer(evaluate_all(configs[static_cast<std::size_t>(i)])).transpose();
  const auto sk = sampled_kernel(rows);
  const auto nullity = static_cast<long long>(sk.kernel.size());
  return {"rank10", sk.rank == kGammaRank && nullity == kGammaCount - kGammaRank,
          {{"configurations", count}, {"rank", sk.rank}, {"nullity", nullity}}};
}

SuiteReport spans(std::uint64_t seed, int count) {
  const auto s = sample_gammas(seed, count);
  const auto basis = find_gamma_basis(s);
  const auto q = sampled_relation_space(2, s, basis);
  const auto c = sampled_relation_space(3, s, basis);
  const auto nq = static_cast<long long>(q.kernel.size()), nc = static_cast<long long>(c.kernel.size());
  return {"spans", q.rank == 55 && nq == 0 && c.rank == 190 && nc == 30,
          {{"samples", count}, {"rank2", q.rank}, {"nullity2", nq}, {"rank3", c.rank}, {"nullity3", nc}}};
}

SuiteReport group() {
  const auto r = verify_group(weyl_group().generators());
  return {"group", r.order == 51840 && r.transitive80 && r.sign_pairs_only_blocks && r.block_count == 40,
          {{"order", static_cast<long long>(r.order)},
           {"transitive80", r.transitive80},
           {"sign_pairs_only_blocks", r.sign_pairs_only_blocks},
           {"blocks", r.block_count}}};
}

SuiteReport cubic(std::uint64_t seed, int count) {
  long long holds = 0;
  for (const auto& c : general_configs(seed, count)) holds += check_cubic_relation(evaluate_all(c));
  return {"cubic", holds == count, {{"configurations", count}, {"holds", holds}}};
}

SuiteReport beautiful(std::uint64_t seed, int count) {
  long long holds = 0;
  for (const auto& c : general_configs(seed, count)) holds += check_beautiful_relation(c);
  return {"beautiful", holds == count, {{"configurations", count}, {"holds", holds}}};
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"rank10", "spans", "group", "cubic", "beautiful"};
  return names;
}

bool check_beautiful_relation(const SixPointConfig& c) {
  auto m = [&](int i, int j, int k) { return minor(c, i, j, k); };
  return d2(c) == -(m(1, 3, 4) * m(1, 5, 6) * m(2, 3, 5) * m(2, 4, 6) - m(1, 3, 5) * m(1, 4, 6) * m(2, 3, 4) * m(2, 5, 6));
}

SuiteReport run_suite(const std::string& suite, std::uint64_t seed, std::optional<int> samples) {
  if (suite == "rank10") return rank10(seed, checked_count(samples, 200));
  if (suite == "spans") return spans(seed, checked_count(samples, kDefaultSamples));
  if (suite == "group") return group();
  if (suite == "cubic") return cubic(seed, checked_count(samples, 50));
  if (suite == "beautiful") return beautiful(seed, checked_count(samples, 50));
  fail(ErrorKind::InvalidInput, "unknown suite \"" + suite + "\"");
}

}  // namespace coble
