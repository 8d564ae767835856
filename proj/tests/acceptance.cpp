// Acceptance harness: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion delegates to the shared suite implementations so
// the CLI `verify` subcommand exercises exactly the same checks.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "resmeta/suites.hpp"

namespace {

using resmeta::oracle::Verdict;
using resmeta::suites::Results;

struct Criterion {
  int id;
  std::string title;
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

/// All checks must pass; anything else (fail or exhausted search) rejects.
Criterion from_results(int id, std::string title, const Results& rs,
                       double elapsed, double budget = 0.0) {
  long fails = 0, inconclusive = 0;
  std::string first_bad;
  for (const auto& r : rs) {
    if (r.verdict == Verdict::Pass) continue;
    if (r.verdict == Verdict::Fail)
      ++fails;
    else
      ++inconclusive;
    if (first_bad.empty()) first_bad = r.name + " (" + r.detail + ")";
  }
  bool pass = fails == 0 && inconclusive == 0;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%zu checks, %.1fs", rs.size(), elapsed);
  std::string detail = buf;
  if (budget > 0 && elapsed > budget) {
    pass = false;
    detail += " (over the time budget)";
  }
  if (!pass && !first_bad.empty()) detail += "; first: " + first_bad;
  return {id, std::move(title), pass, detail};
}

Results filter(const Results& rs, const std::string& prefix) {
  Results out;
  for (const auto& r : rs)
    if (r.name.rfind(prefix, 0) == 0) out.push_back(r);
  return out;
}

}  // namespace

int main() {
  using namespace resmeta::suites;
  std::vector<Criterion> crit;
  auto timed = [](auto&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    Results rs = fn();
    return std::make_pair(rs, seconds_since(t0));
  };

  {
    auto [rs, t] = timed([] { return suite_operators(42, 1000); });
    crit.push_back(from_results(1, "operator laws", rs, t, 10.0));
  }
  {
    auto [rs, t] = timed([] { return suite_convergence(10000); });
    crit.push_back(from_results(2, "strong convergence to the reference", rs, t,
                                60.0));
  }
  {
    auto [rs, t] = timed([] { return suite_metastability(100000, 4); });
    auto uncond = filter(rs, "meta/unconditional/");
    crit.push_back(
        from_results(3, "unconditional bound domination", uncond, t));
    Results cond = filter(rs, "meta/conditional_even/");
    for (auto& r : filter(rs, "meta/conditional_full/")) cond.push_back(r);
    crit.push_back(
        from_results(5, "conditional bounds with empirical regularity rates",
                     cond, t));
  }
  {
    auto [rs, t] = timed([] { return suite_regularity(100000, 4); });
    crit.push_back(from_results(4, "residual quasi-rate domination", rs, t));
  }
  {
    auto [rs, t] = timed([] { return suite_errors(100000, 4); });
    crit.push_back(from_results(6, "error reduction and combined bound", rs, t));
  }
  {
    auto [rs, t] = timed([] { return suite_transfer(100000, 4, 1000); });
    crit.push_back(from_results(7, "form transfer identities and domination",
                                rs, t));
  }
  {
    auto [rs, t] = timed([] { return suite_lemmas(12345, 1000, 1000); });
    crit.push_back(from_results(8, "lemma engines", rs, t));
  }
  {
    auto [rs, t] = timed([] { return suite_rates(4); });
    crit.push_back(from_results(9, "rate-calculus sanity", rs, t));
  }

  std::sort(crit.begin(), crit.end(),
            [](const Criterion& a, const Criterion& b) { return a.id < b.id; });
  bool all_pass = true;
  for (const auto& c : crit) {
    std::printf("criterion %d (%s): %s — %s\n", c.id, c.title.c_str(),
                c.pass ? "pass" : "fail", c.detail.c_str());
    all_pass = all_pass && c.pass;
  }
  return all_pass ? 0 : 1;
}
