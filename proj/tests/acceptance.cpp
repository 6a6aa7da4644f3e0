// Acceptance suite: one line per criterion with the wall time against its limit.
// Exit status is non-zero when any criterion fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "defq/sweeps.hpp"

using namespace defq;

namespace {

struct Criterion {
  int id;
  std::string title;
  long limit_ms;
  std::function<std::vector<SweepReport>()> run;
};

}  // namespace

int main() {
  const std::uint64_t seed = 20240601;
  std::vector<Criterion> criteria = {
      {1, "DGLA axiom suite", 1000, [] { return std::vector{sweep_dgla_fixtures()}; }},
      {2, "Gerstenhaber and Hochschild", 10000,
       [&] { return std::vector{sweep_hochschild(seed + 2, 50)}; }},
      {3, "Maurer-Cartan iff associative", 10000,
       [&] { return std::vector{sweep_mc_associativity(seed + 3, 200)}; }},
      {4, "deviation cocycles", 30000, [&] { return std::vector{sweep_deviation(seed + 4, 100)}; }},
      {5, "twisted matrices", 30000, [&] { return std::vector{sweep_twisted(seed + 5, 100, 50)}; }},
      {6, "barycentric reconstruction", 30000,
       [&] { return std::vector{sweep_barycentric(seed + 6, 100)}; }},
      {7, "Sullivan forms and Tot", 60000,
       [&] { return std::vector{sweep_totalization(seed + 7, 50)}; }},
      {8, "Fedosov pairs", 60000, [&] { return std::vector{sweep_fedosov(seed + 8, 4)}; }},
      {9, "Moyal normalization", 30000, [&] { return std::vector{sweep_moyal(seed + 9)}; }},
      {10, "Rozansky-Witten form", 10000, [&] { return std::vector{sweep_rw(seed + 10, 20)}; }},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    std::vector<SweepReport> reports;
    std::string error;
    try {
      reports = c.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    long ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    bool ok = error.empty();
    long samples = 0;
    std::string detail;
    for (const auto& r : reports)
      for (const auto& k : r.checks) {
        samples += k.samples;
        if (!k.ok() && detail.empty())
          detail = k.name + ": " + std::to_string(k.passed) + "/" + std::to_string(k.samples) +
                   ", first failure " + k.first_failure;
        ok = ok && k.ok();
      }
    bool in_time = ms < c.limit_ms;
    if (!in_time && detail.empty()) detail = "over the time limit";
    if (!error.empty()) detail = "exception: " + error;
    ok = ok && in_time;
    failed += !ok;
    std::printf("criterion %2d %s  %-30s %6ld checks  %6ld ms (limit %ld ms)%s%s\n", c.id,
                ok ? "PASS" : "FAIL", c.title.c_str(), samples, ms, c.limit_ms,
                detail.empty() ? "" : "  ", detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
