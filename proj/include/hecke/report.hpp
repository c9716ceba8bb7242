#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace hecke {

enum class Verdict { Holds, HoldsCalibrated, Violated };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "Holds";
    case Verdict::HoldsCalibrated: return "HoldsCalibrated";
    case Verdict::Violated: return "Violated";
  }
  return "?";
}

/// Unconditional claims must satisfy lhs <= rhs outright. Calibrated claims
/// compare lhs/rhs beyond the calibration grid against the safety factor
/// times the largest ratio seen on it.
enum class ClaimKind { Unconditional, Calibrated };

inline constexpr double kSafetyFactor = 2.0;
inline constexpr std::uint64_t kCalibrationGrid[] = {1'000, 10'000, 100'000};

inline bool on_calibration_grid(std::uint64_t x) {
  return std::find(std::begin(kCalibrationGrid), std::end(kCalibrationGrid), x) != std::end(kCalibrationGrid);
}

struct BoundReport {
  std::string claim_id;
  ClaimKind kind = ClaimKind::Calibrated;
  std::vector<std::uint64_t> grid;
  std::vector<double> lhs;
  std::vector<double> rhs;
  std::vector<double> ratio;
  double calibrated_constant = 1.0;
  Verdict verdict = Verdict::Holds;

  BoundReport() = default;
  BoundReport(std::string id, ClaimKind k) : claim_id(std::move(id)), kind(k) {}

  void add(std::uint64_t x, double l, double r) {
    grid.push_back(x);
    lhs.push_back(l);
    rhs.push_back(r);
    ratio.push_back(l == 0.0 ? 0.0 : l / r);
  }

  /// Sets calibrated_constant and verdict from the rows collected so far.
  BoundReport& finalize() {
    const bool all_within = std::all_of(ratio.begin(), ratio.end(), [](double r) { return r <= 1.0; });
    if (kind == ClaimKind::Unconditional) {
      calibrated_constant = 1.0;
      verdict = all_within ? Verdict::Holds : Verdict::Violated;
      return *this;
    }
    double constant = 0.0;
    bool any_calibration = false;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (on_calibration_grid(grid[i])) {
        constant = std::max(constant, ratio[i]);
        any_calibration = true;
      }
    }
    if (!any_calibration && !ratio.empty()) constant = ratio.front();
    calibrated_constant = constant;
    if (all_within) {
      verdict = Verdict::Holds;
      return *this;
    }
    bool ok = true;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const bool calibration_point = any_calibration ? on_calibration_grid(grid[i]) : i == 0;
      if (!calibration_point && !(ratio[i] <= kSafetyFactor * constant)) ok = false;
    }
    verdict = ok ? Verdict::HoldsCalibrated : Verdict::Violated;
    return *this;
  }
};

inline Verdict worst_verdict(std::span<const BoundReport> reports) {
  Verdict worst = Verdict::Holds;
  for (const auto& r : reports) {
    if (r.verdict == Verdict::Violated) return Verdict::Violated;
    if (r.verdict == Verdict::HoldsCalibrated) worst = Verdict::HoldsCalibrated;
  }
  return worst;
}

inline const BoundReport* find_report(std::span<const BoundReport> reports, const std::string& id) {
  for (const auto& r : reports)
    if (r.claim_id == id) return &r;
  return nullptr;
}

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_report_csv(std::ostream& out, std::span<const BoundReport> reports) {
  out << "claim_id,x,lhs,rhs,ratio,constant,verdict\n";
  for (const auto& r : reports) {
    for (std::size_t i = 0; i < r.grid.size(); ++i) {
      out << r.claim_id << ',' << r.grid[i] << ',' << format_double(r.lhs[i]) << ',' << format_double(r.rhs[i])
          << ',' << format_double(r.ratio[i]) << ',' << format_double(r.calibrated_constant) << ','
          << verdict_name(r.verdict) << '\n';
    }
  }
}

}  // namespace hecke
