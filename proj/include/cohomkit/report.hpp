#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "cohomkit/io.hpp"

namespace cohomkit {

struct CheckResult {
  std::string name;
  bool passed = false;
  bool exact = false;    // exact-arithmetic check; residual is not meaningful
  double residual = 0.0;
  double tolerance = 0.0;
  double runtime_ms = 0.0;
  std::string note;      // failure detail (exception text, mismatch description)
};

/// A named check drawing randomness only from the rng it is handed.
/// `samples` <= 0 means "use the check's own default count".
struct Check {
  std::string name;
  std::function<CheckResult(Rng&, int samples)> run;
};

struct Report {
  std::string command;
  std::uint64_t seed = 0;
  bool timings = false;
  std::vector<CheckResult> checks;
};

inline int count_passed(const Report& r) {
  int n = 0;
  for (const auto& c : r.checks) n += c.passed ? 1 : 0;
  return n;
}

inline bool all_passed(const Report& r) {
  return count_passed(r) == static_cast<int>(r.checks.size());
}

/// Runs checks in parallel workers, each with its own rng derived from the
/// seed and the check's name, so results do not depend on scheduling.
/// Output order is the sorted name order.
inline Report run_checks(const std::string& command, std::uint64_t seed, int samples,
                         std::vector<Check> checks, bool timings = false) {
  std::sort(checks.begin(), checks.end(),
            [](const Check& a, const Check& b) { return a.name < b.name; });
  Report report;
  report.command = command;
  report.seed = seed;
  report.timings = timings;
  report.checks.resize(checks.size());
  parallel_for(static_cast<int>(checks.size()), [&](int i) {
    auto rng = seeded_rng(seed, checks[i].name);
    auto start = std::chrono::steady_clock::now();
    CheckResult result;
    try {
      result = checks[i].run(rng, samples);
    } catch (const std::exception& e) {
      result.passed = false;
      result.note = e.what();
    }
    auto stop = std::chrono::steady_clock::now();
    result.name = checks[i].name;
    result.runtime_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    report.checks[i] = result;
  });
  return report;
}

namespace detail {
inline std::string format_residual(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}
}  // namespace detail

inline Json report_to_json(const Report& r) {
  Json j;
  j["schema"] = 1;
  j["command"] = r.command;
  j["seed"] = r.seed;
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json e;
    e["name"] = c.name;
    e["status"] = c.passed ? "pass" : "fail";
    if (c.exact) {
      e["exact"] = true;
    } else {
      e["residual"] = detail::format_residual(c.residual);
      e["tolerance"] = detail::format_residual(c.tolerance);
    }
    if (r.timings) e["runtime_ms"] = c.runtime_ms;
    if (!c.note.empty()) e["note"] = c.note;
    checks.push_back(e);
  }
  j["checks"] = checks;
  j["summary"] = {{"total", r.checks.size()},
                  {"passed", count_passed(r)},
                  {"failed", static_cast<int>(r.checks.size()) - count_passed(r)}};
  return j;
}

inline std::string report_to_text(const Report& r) {
  std::string out;
  out += "# " + r.command + " (seed " + std::to_string(r.seed) + ")\n";
  for (const auto& c : r.checks) {
    out += c.passed ? "[PASS] " : "[FAIL] ";
    out += c.name;
    if (c.exact) {
      out += "  exact";
    } else {
      out += "  residual " + detail::format_residual(c.residual) + " tol " +
             detail::format_residual(c.tolerance);
    }
    if (r.timings) out += "  " + detail::format_residual(c.runtime_ms) + " ms";
    if (!c.note.empty()) out += "  (" + c.note + ")";
    out += "\n";
  }
  out += std::to_string(count_passed(r)) + " passed, " +
         std::to_string(static_cast<int>(r.checks.size()) - count_passed(r)) + " failed\n";
  return out;
}

}  // namespace cohomkit
