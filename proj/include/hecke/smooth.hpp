#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hecke/errors.hpp"
#include "hecke/parallel.hpp"
#include "hecke/sieve.hpp"

namespace hecke {

/// The smoothness cut (log x)^2, natural log.
inline double smoothness_cut(double x) {
  const double l = std::log(x);
  return l * l;
}

// ---------------------------------------------------------------------------
// Dickman rho

/// rho sampled on u = i * step, i = 0 .. ceil(u_max) / step.
class RhoTable {
 public:
  RhoTable() = default;
  RhoTable(double u_max, double step, std::size_t per_unit, std::vector<double> values)
      : u_max_(u_max), step_(step), per_unit_(per_unit), values_(std::move(values)) {}

  double u_max() const noexcept { return u_max_; }
  double step() const noexcept { return step_; }
  std::size_t per_unit() const noexcept { return per_unit_; }
  std::span<const double> values() const noexcept { return values_; }
  double grid_end() const noexcept { return static_cast<double>(values_.size() - 1) / per_unit_; }

  /// rho(u), cubic interpolation between grid points inside one unit interval.
  double operator()(double u) const {
    if (u < 0.0 || u > grid_end() + 1e-12) throw DomainError("rho: u outside [0, u_max]");
    if (u <= 1.0) return 1.0;
    const double s = u * static_cast<double>(per_unit_);
    const double nearest = std::round(s);
    if (std::fabs(s - nearest) < 1e-9) return values_[static_cast<std::size_t>(nearest)];
    const auto unit = static_cast<std::size_t>(std::floor(u));
    return interpolate(s, unit * per_unit_, (unit + 1) * per_unit_);
  }

  /// Four-point Lagrange at fractional index s, stencil kept inside [lo, hi].
  double interpolate(double s, std::size_t lo, std::size_t hi) const {
    const auto i = static_cast<std::ptrdiff_t>(std::floor(s));
    const auto start = static_cast<std::size_t>(
        std::clamp<std::ptrdiff_t>(i - 1, static_cast<std::ptrdiff_t>(lo), static_cast<std::ptrdiff_t>(hi) - 3));
    const double x = s - static_cast<double>(start);
    double total = 0.0;
    for (int a = 0; a < 4; ++a) {
      double w = 1.0;
      for (int b = 0; b < 4; ++b)
        if (b != a) w *= (x - b) / static_cast<double>(a - b);
      total += w * values_[start + a];
    }
    return total;
  }

 private:
  double u_max_ = 0.0;
  double step_ = 0.0;
  std::size_t per_unit_ = 0;
  std::vector<double> values_;
};

/// Integrates rho(u) = rho(k) - int_k^u rho(t-1)/t dt one unit interval at a
/// time: Simpson per grid step, with the delayed midpoint value taken from a
/// cubic through the previous interval's grid.
inline RhoTable build_rho(double u_max, double step = 1e-3) {
  if (!(u_max >= 1.0 && u_max <= 100.0)) throw DomainError("build_rho needs 1 <= u_max <= 100");
  const double inv = 1.0 / step;
  const auto per_unit = static_cast<std::size_t>(std::llround(inv));
  if (per_unit < 4 || std::fabs(static_cast<double>(per_unit) * step - 1.0) > 1e-12) {
    throw DomainError("build_rho needs 1/step to be an integer >= 4");
  }
  const auto units = static_cast<std::size_t>(std::ceil(u_max - 1e-12));
  const std::size_t n = units * per_unit;
  std::vector<double> v(n + 1, 1.0);

  const double pu = static_cast<double>(per_unit);
  for (std::size_t i = per_unit; i < n; ++i) {
    const std::size_t unit = i / per_unit;
    const std::size_t j = i - per_unit;  // delayed index
    const std::size_t lo = (unit - 1) * per_unit;
    const std::size_t hi = unit * per_unit;
    const double t0 = static_cast<double>(i) / pu;
    const double t1 = static_cast<double>(i + 1) / pu;
    const double tm = (static_cast<double>(i) + 0.5) / pu;

    double delayed_mid;
    {
      const auto start = std::clamp<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(j) - 1,
                                                    static_cast<std::ptrdiff_t>(lo),
                                                    static_cast<std::ptrdiff_t>(hi) - 3);
      const double x = static_cast<double>(j) + 0.5 - static_cast<double>(start);
      delayed_mid = 0.0;
      for (int a = 0; a < 4; ++a) {
        double w = 1.0;
        for (int b = 0; b < 4; ++b)
          if (b != a) w *= (x - b) / static_cast<double>(a - b);
        delayed_mid += w * v[static_cast<std::size_t>(start) + a];
      }
    }
    const double f0 = v[j] / t0;
    const double fm = delayed_mid / tm;
    const double f1 = v[j + 1] / t1;
    v[i + 1] = v[i] - (f0 + 4.0 * fm + f1) / (6.0 * pu);
  }
  for (std::size_t i = per_unit + 1; i <= n; ++i) {
    if (!(v[i] > 0.0) || !(v[i] < v[i - 1])) {
      throw std::logic_error("rho integration lost positivity or monotonicity at u=" +
                             std::to_string(static_cast<double>(i) / pu));
    }
  }
  return RhoTable(u_max, step, per_unit, std::move(v));
}

/// log rho(u) ~ -u(log u + log log u - 1 + log log u / log u), without the O(1/log u) term.
inline double norton_log_rho(double u) {
  if (!(u > std::numbers::e)) throw DomainError("norton_log_rho needs u > e");
  const double l = std::log(u);
  const double ll = std::log(l);
  return -u * (l + ll - 1.0 + ll / l);
}

// ---------------------------------------------------------------------------
// Smooth numbers

inline std::vector<std::uint64_t> primes_up_to(const FactorTable& t, double y, std::uint64_t cap) {
  const double lim = std::min(y, static_cast<double>(cap));
  std::vector<std::uint64_t> out;
  if (lim < 2.0) return out;
  const auto bound = static_cast<std::uint64_t>(std::floor(lim));
  const std::size_t count = t.prime_pi(bound);
  out.assign(t.primes().begin(), t.primes().begin() + static_cast<std::ptrdiff_t>(count));
  return out;
}

/// Depth-first enumeration of every n <= x with P^+(n) <= y (n = 1 included).
/// Each path multiplies primes in non-increasing order, so every smooth n is
/// reached exactly once and the recursion depth is at most log2 x.
template <class Fn>
void for_each_smooth(std::uint64_t x, double y, const FactorTable& t, Fn&& fn) {
  if (x < 1) return;
  if (x > t.x_max()) throw OutOfRange("smooth enumeration beyond factor table");
  const std::vector<std::uint64_t> ps = primes_up_to(t, y, x);
  auto rec = [&](auto&& self, std::uint64_t n, std::size_t top) -> void {
    fn(n);
    for (std::size_t i = 0; i < top; ++i) {
      const std::uint64_t p = ps[i];
      if (p > x / n) break;
      self(self, n * p, i + 1);
    }
  };
  rec(rec, 1, ps.size());
}

inline std::uint64_t psi_dfs(std::uint64_t x, double y, const FactorTable& t) {
  std::uint64_t count = 0;
  for_each_smooth(x, y, t, [&](std::uint64_t) { ++count; });
  return count;
}

inline std::uint64_t psi_scan(std::uint64_t x, double y, const FactorTable& t) {
  if (x > t.x_max()) throw OutOfRange("psi beyond factor table");
  std::uint64_t count = 0;
  for (std::uint64_t n = 1; n <= x; ++n)
    if (static_cast<double>(t.p_plus(n)) <= y) ++count;
  return count;
}

struct PsiCounts {
  std::uint64_t dfs = 0;
  std::uint64_t scan = 0;
  bool agree() const noexcept { return dfs == scan; }
};

/// psi(x, y) by both algorithms.
inline PsiCounts psi_exact(std::uint64_t x, double y, const FactorTable& t) {
  return {psi_dfs(x, y, t), psi_scan(x, y, t)};
}

/// sum_{n <= x, P^+(n) <= L} n^{-a}, in DFS order.
inline double smooth_power_sum(std::uint64_t x, double L, double a, const FactorTable& t) {
  CompensatedSum s;
  for_each_smooth(x, L, t, [&](std::uint64_t n) { s.add(a == 0.0 ? 1.0 : std::pow(static_cast<double>(n), -a)); });
  return s.value();
}

// ---------------------------------------------------------------------------
// Smooth power sum envelope and its dyadic slices

inline void require_beyond_ee(double x) {
  if (!(x > std::exp(std::numbers::e))) throw DomainError("needs x > e^e so that log log x > 1");
}

/// x^{1/2-a} exp(C1 log x / log log x).
inline double lemma1_rhs(double x, double a, double c1) {
  require_beyond_ee(x);
  const double l = std::log(x);
  return std::exp((0.5 - a) * l + c1 * l / std::log(l));
}

/// Smallest C1 with smooth_sum <= x^{1/2-a} exp(C1 log x / log log x).
inline double lemma1_c1_needed(double x, double a, double smooth_sum) {
  require_beyond_ee(x);
  const double l = std::log(x);
  return (std::log(smooth_sum) - (0.5 - a) * l) * std::log(l) / l;
}

/// Per-slice majorant x^{1/2-a} e^{-k(1-a)} exp((log 2 / 2) log x / log log x).
inline double dyadic_slice_bound(double x, double a, int k) {
  require_beyond_ee(x);
  const double l = std::log(x);
  if (k < 0 || static_cast<double>(k) > l) throw DomainError("slice index outside [0, log x]");
  return std::exp((0.5 - a) * l - k * (1.0 - a) + 0.5 * std::numbers::ln2 * l / std::log(l));
}

struct DyadicSlices {
  std::vector<double> integrals;  // J_k = int psi(w, L) w^{-1-a} dw over [x e^{-(k+1)}, x e^{-k}] (clipped at 1)
  std::vector<double> bounds;     // dyadic_slice_bound(x, a, k)
  double boundary = 0.0;          // psi(x, L) x^{-a}
  double smooth_sum = 0.0;        // sum_{n <= x, P^+(n) <= L} n^{-a}

  /// boundary + a * sum_k J_k, equal to smooth_sum by partial summation.
  double reassembled(double a) const {
    CompensatedSum s;
    for (double j : integrals) s.add(j);
    return boundary + a * s.value();
  }
};

inline DyadicSlices lemma1_slices(std::uint64_t x, double a, const FactorTable& t) {
  const double xd = static_cast<double>(x);
  require_beyond_ee(xd);
  if (!(a > 0.0)) throw DomainError("slices need a > 0");
  const double L = smoothness_cut(xd);
  std::vector<std::uint64_t> smooth;
  for_each_smooth(x, L, t, [&](std::uint64_t n) { smooth.push_back(n); });
  std::sort(smooth.begin(), smooth.end());

  DyadicSlices out;
  CompensatedSum total;
  for (std::uint64_t n : smooth) total.add(std::pow(static_cast<double>(n), -a));
  out.smooth_sum = total.value();
  out.boundary = static_cast<double>(smooth.size()) * std::pow(xd, -a);

  const int k_max = static_cast<int>(std::floor(std::log(xd)));
  for (int k = 0; k <= k_max; ++k) {
    const double hi = xd * std::exp(-static_cast<double>(k));
    const double lo = std::max(1.0, xd * std::exp(-static_cast<double>(k + 1)));
    const double hi_pow = std::pow(hi, -a);
    const double lo_pow = std::pow(lo, -a);
    const auto below_lo = static_cast<std::size_t>(
        std::upper_bound(smooth.begin(), smooth.end(), lo, [](double v, std::uint64_t n) { return v < static_cast<double>(n); }) -
        smooth.begin());
    const auto below_hi = static_cast<std::size_t>(
        std::upper_bound(smooth.begin(), smooth.end(), hi, [](double v, std::uint64_t n) { return v < static_cast<double>(n); }) -
        smooth.begin());
    CompensatedSum j;
    j.add(static_cast<double>(below_lo) * (lo_pow - hi_pow));
    for (std::size_t i = below_lo; i < below_hi; ++i) j.add(std::pow(static_cast<double>(smooth[i]), -a) - hi_pow);
    out.integrals.push_back(j.value() / a);
    out.bounds.push_back(dyadic_slice_bound(xd, a, k));
  }
  return out;
}

}  // namespace hecke
