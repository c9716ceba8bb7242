#pragma once

#include <array>
#include <climits>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hecke/coefficients.hpp"
#include "hecke/errors.hpp"
#include "hecke/parallel.hpp"
#include "hecke/prime_source.hpp"
#include "hecke/report.hpp"
#include "hecke/satake.hpp"
#include "hecke/sieve.hpp"

// S(x) versus L(x) for a nonnegative multiplicative weight g:
//   S(x) <= (A h1(x) + B h2(x) + 1) x / log x * L(x)
// whenever sum_{p<=x} g(p) log p <= A x h1(x) and
// sum_p sum_{a>=2} g(p^a) log p^a / p^a <= B h2(x).

namespace hecke {

enum class GrowthForm { One, SqrtLog, Log };

inline double growth_value(GrowthForm f, double x) {
  switch (f) {
    case GrowthForm::One: return 1.0;
    case GrowthForm::SqrtLog: return std::sqrt(std::log(x));
    case GrowthForm::Log: return std::log(x);
  }
  return 1.0;
}

inline const char* growth_name(GrowthForm f) {
  switch (f) {
    case GrowthForm::One: return "1";
    case GrowthForm::SqrtLog: return "sqrt(log x)";
    case GrowthForm::Log: return "log x";
  }
  return "?";
}

/// g given by its values at prime powers. The evaluator receives p, the
/// exponent a >= 1 and lambda(p^a); g(p^0) = 1 implicitly.
struct MultiplicativeWeight {
  std::string descriptor;
  std::function<double(std::uint64_t p, unsigned a, double lambda_pa)> at_prime_power;
  GrowthForm h1 = GrowthForm::SqrtLog;
  GrowthForm h2 = GrowthForm::One;
  unsigned alpha_cap = UINT_MAX;  // g(p^a) = 0 for a > alpha_cap
  double envelope_theta = kKimSarnak;  // g(p^a) <= (a+1) p^{theta a} when lambda is unknown

  double value(const CoefficientTable& table, const FactorTable& factors, std::uint64_t n) const {
    double g = 1.0;
    factors.for_each_prime_power(n, [&](std::uint64_t p, unsigned a, std::uint64_t pa) {
      if (g != 0.0) g *= a > alpha_cap ? 0.0 : at_prime_power(p, a, table[pa]);
    });
    return g;
  }

  std::string describe() const {
    return descriptor + " [h1=" + growth_name(h1) + ", h2=" + growth_name(h2) + "]";
  }
};

inline MultiplicativeWeight abs_mu_weight(GrowthForm h1 = GrowthForm::SqrtLog) {
  return {"abs-mu", [](std::uint64_t, unsigned a, double) { return a == 1 ? 1.0 : 0.0; }, h1,
          GrowthForm::One, 1, 0.0};
}

inline MultiplicativeWeight abs_lambda_mu_weight(GrowthForm h1 = GrowthForm::SqrtLog) {
  return {"abs-lambda-mu", [](std::uint64_t, unsigned a, double l) { return a == 1 ? std::fabs(l) : 0.0; }, h1,
          GrowthForm::One, 1, kKimSarnak};
}

/// |lambda(n)| h_k(n), h_k the k-free indicator.
inline MultiplicativeWeight abs_lambda_kfree_weight(unsigned k, GrowthForm h1 = GrowthForm::SqrtLog) {
  if (k < 2) throw DomainError("k-free weight needs k >= 2");
  return {"abs-lambda-kfree-" + std::to_string(k),
          [k](std::uint64_t, unsigned a, double l) { return a < k ? std::fabs(l) : 0.0; }, h1, GrowthForm::One,
          k - 1, kKimSarnak};
}

/// g(1) = 1 and g = 0 at every prime power.
inline MultiplicativeWeight unit_weight() {
  return {"unit", [](std::uint64_t, unsigned, double) { return 0.0; }, GrowthForm::One, GrowthForm::One, 0, 0.0};
}

struct SLogDecomposition {
  double S1 = 0.0;  // sum g(n) log(x/n)
  double S2 = 0.0;  // sum g(n) sum_{p || n} log p
  double S3 = 0.0;  // sum g(n) sum_{p^a || n, a >= 2} a log p
  double S = 0.0;
  double L = 0.0;
  double total() const { return S1 + S2 + S3; }
};

inline SLogDecomposition decompose_S_log(const MultiplicativeWeight& w, const CoefficientTable& table,
                                         const FactorTable& factors, std::uint64_t x, Exec exec = {}) {
  if (x < 1 || x > table.x_max()) throw OutOfRange("decomposition beyond table");
  const double log_x = std::log(static_cast<double>(x));
  const std::uint64_t cp[] = {x};
  const auto r = ordered_prefix_sums<5>(x, cp, exec, [&](std::uint64_t n, std::array<double, 5>& out) {
    const double g = w.value(table, factors, n);
    if (g == 0.0) return;
    double simple = 0.0, higher = 0.0;
    factors.for_each_prime_power(n, [&](std::uint64_t p, unsigned a, std::uint64_t) {
      const double lp = std::log(static_cast<double>(p));
      if (a == 1)
        simple += lp;
      else
        higher += a * lp;
    });
    out[0] = g * (log_x - std::log(static_cast<double>(n)));
    out[1] = g * simple;
    out[2] = g * higher;
    out[3] = g;
    out[4] = g / static_cast<double>(n);
  });
  return {r[0][0], r[0][1], r[0][2], r[0][3], r[0][4]};
}

/// max over the grid of sum_{p<=x} g(p) log p / (x h1(x)). Grid-relative only.
inline double estimate_A(const MultiplicativeWeight& w, std::span<const std::uint64_t> grid,
                         const CoefficientTable& table, const FactorTable& factors) {
  if (grid.empty()) throw std::invalid_argument("estimate_A needs a grid");
  if (grid.back() > table.x_max()) throw OutOfRange("grid beyond table");
  const auto primes = factors.primes();
  CompensatedSum theta_g;
  std::size_t i = 0;
  double A = 0.0;
  for (const std::uint64_t x : grid) {
    for (; i < primes.size() && primes[i] <= x; ++i) {
      const std::uint64_t p = primes[i];
      if (w.alpha_cap >= 1) theta_g.add(w.at_prime_power(p, 1, table[p]) * std::log(static_cast<double>(p)));
    }
    const double xd = static_cast<double>(x);
    A = std::max(A, theta_g.value() / (xd * growth_value(w.h1, xd)));
  }
  return A;
}

inline constexpr std::uint64_t kPrimePowerTruncation = 1'000'000;
inline constexpr unsigned kMaxTailExponent = 200;

/// sum_{p > P} c log p p^{-s}, taking prime density 1/log t: c P^{1-s}/(s-1).
inline double prime_log_tail(double P, double s, double c) {
  if (!(s > 1.0)) throw DivergentTail("prime tail exponent " + std::to_string(s) + " <= 1");
  return c * std::pow(P, 1.0 - s) / (s - 1.0);
}

/// Envelope for the prime-power tail beyond P: sum_{a>=2} (a+1) a P^{1-(1-theta)a}/((1-theta)a - 1).
inline double envelope_prime_power_tail(double P, double theta, unsigned alpha_cap) {
  double tail = 0.0;
  for (unsigned a = 2; a <= std::min(alpha_cap, kMaxTailExponent); ++a) {
    const double term = prime_log_tail(P, (1.0 - theta) * a, (a + 1.0) * a);
    tail += term;
    if (a > 4 && term < 1e-15 * tail) break;
  }
  return tail;
}

/// B = (sum_{p<=1e6} sum_{a>=2} g(p^a) log p^a / p^a + tail) / h2(3). Zero for
/// weights vanishing at every a >= 2. Primes the source cannot supply fall back
/// to the envelope (a+1) p^{theta a}. Throws DivergentTail if theta >= 1/2.
inline double estimate_B(const MultiplicativeWeight& w, const PrimeCoefficientSource& source,
                         std::uint64_t truncation = kPrimePowerTruncation) {
  if (w.alpha_cap < 2) return 0.0;
  if (w.envelope_theta >= 0.5) throw DivergentTail("envelope exponent >= 1/2: sum over p^2 diverges");
  const auto sieve = FactorTable::build(truncation);
  const auto primes = sieve.primes();
  CompensatedSum total;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const std::uint64_t p = primes[i];
    const double lp = std::log(static_cast<double>(p));
    std::vector<double> lam;
    try {
      lam = prime_power_coeffs(source.value(p, i), std::min(w.alpha_cap, kMaxTailExponent));
    } catch (const MissingPrimeCoefficient&) {
      lam.clear();
    }
    for (unsigned a = 2; a <= std::min(w.alpha_cap, kMaxTailExponent); ++a) {
      const double envelope = (a + 1.0) * std::pow(static_cast<double>(p), w.envelope_theta * a);
      const double g = lam.empty() ? envelope : w.at_prime_power(p, a, lam[a]);
      const double decay = std::pow(static_cast<double>(p), -static_cast<double>(a));
      total.add(g * a * lp * decay);
      if (a > 4 && envelope * a * lp * decay < 1e-15) break;
    }
  }
  total.add(envelope_prime_power_tail(static_cast<double>(truncation), w.envelope_theta, w.alpha_cap));
  return total.value() / growth_value(w.h2, 3.0);
}

/// S(x) against (A h1(x) + B h2(x) + 1) x / log x L(x) at each grid point.
inline BoundReport verify_lemma6(const MultiplicativeWeight& w, double A, double B,
                                 std::span<const std::uint64_t> grid, const CoefficientTable& table,
                                 const FactorTable& factors, Exec exec = {}, std::string id = "lemma6") {
  if (grid.empty()) throw std::invalid_argument("verify_lemma6 needs a grid");
  if (grid.back() > table.x_max()) throw OutOfRange("grid beyond table");
  const auto sums = ordered_prefix_sums<2>(grid.back(), grid, exec, [&](std::uint64_t n, std::array<double, 2>& out) {
    const double g = w.value(table, factors, n);
    out[0] = g;
    out[1] = g / static_cast<double>(n);
  });
  BoundReport r(std::move(id), ClaimKind::Unconditional);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = static_cast<double>(grid[i]);
    const double factor = A * growth_value(w.h1, x) + B * growth_value(w.h2, x) + 1.0;
    r.add(grid[i], sums[i][0], factor * x / std::log(x) * sums[i][1]);
  }
  r.finalize();
  return r;
}

}  // namespace hecke
