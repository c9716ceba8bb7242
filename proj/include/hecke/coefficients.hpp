#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hecke/errors.hpp"
#include "hecke/majorant.hpp"
#include "hecke/parallel.hpp"
#include "hecke/prime_source.hpp"
#include "hecke/satake.hpp"
#include "hecke/sieve.hpp"

namespace hecke {

inline constexpr std::size_t kCoefficientBlock = std::size_t{1} << 16;

namespace detail {

// Fills values at every prime power p^a <= x_max from local(p, index, a_max),
// then every other n as the ascending product over p^a || n. Each entry
// depends only on its own factorization, so any worker count gives the same bits.
template <class Local>
void fill_multiplicative(std::vector<double>& values, const FactorTable& factors, std::uint64_t x_max,
                         Exec exec, Local&& local) {
  values.assign(x_max + 1, 0.0);
  values[1] = 1.0;
  const auto primes = factors.primes();
  const std::size_t n_primes = factors.prime_pi(x_max);
  const std::size_t prime_blocks = (n_primes + kCoefficientBlock - 1) / kCoefficientBlock;
  parallel_blocks(prime_blocks, exec.workers, [&](std::size_t b) {
    const std::size_t end = std::min(n_primes, (b + 1) * kCoefficientBlock);
    for (std::size_t i = b * kCoefficientBlock; i < end; ++i) {
      const std::uint64_t p = primes[i];
      unsigned a_max = 0;
      for (std::uint64_t pa = p; pa <= x_max; pa *= p) {
        ++a_max;
        if (pa > x_max / p) break;
      }
      const std::vector<double> c = local(p, static_cast<std::uint64_t>(i), a_max);
      std::uint64_t pa = 1;
      for (unsigned a = 1; a <= a_max; ++a) {
        pa *= p;
        values[pa] = c[a];
      }
    }
  });

  const std::size_t n_blocks = static_cast<std::size_t>((x_max + kCoefficientBlock) / kCoefficientBlock);
  parallel_blocks(n_blocks, exec.workers, [&](std::size_t b) {
    const std::uint64_t lo = std::max<std::uint64_t>(2, b * kCoefficientBlock);
    const std::uint64_t hi = std::min<std::uint64_t>(x_max, (b + 1) * kCoefficientBlock - 1);
    for (std::uint64_t n = lo; n <= hi; ++n) {
      const std::uint64_t p = factors.p_minus(n);
      std::uint64_t m = n;
      while (m % p == 0) m /= p;
      if (m == 1) continue;  // prime power, set above
      double acc = 1.0;
      factors.for_each_prime_power(n, [&](std::uint64_t, unsigned, std::uint64_t pa) { acc *= values[pa]; });
      values[n] = acc;
    }
  });
}

}  // namespace detail

/// Dense lambda_f(n), n <= x_max, plus the optional fourth-moment majorant
/// lambda*(n). Immutable once built (lambda* is added in a separate step).
class CoefficientTable {
 public:
  /// Throws MissingPrimeCoefficient if a file-backed source lacks a prime <= x_max.
  static CoefficientTable build(const PrimeCoefficientSource& source, const FactorTable& factors,
                                std::uint64_t x_max, Exec exec = {}) {
    if (x_max < 1) throw DomainError("coefficient table needs x_max >= 1");
    if (x_max > factors.x_max()) throw OutOfRange("factor table does not cover x_max");
    CoefficientTable t;
    t.x_max_ = x_max;
    t.descriptor_ = source.descriptor();
    detail::fill_multiplicative(t.lambda_, factors, x_max, exec,
                                [&](std::uint64_t p, std::uint64_t index, unsigned a_max) {
                                  return prime_power_coeffs(source.value(p, index), a_max);
                                });
    return t;
  }

  std::uint64_t x_max() const noexcept { return x_max_; }
  const std::string& descriptor() const noexcept { return descriptor_; }

  double lambda(std::uint64_t n) const {
    check(n);
    return lambda_[n];
  }
  double operator[](std::uint64_t n) const { return lambda_[n]; }
  std::span<const double> lambda_values() const noexcept { return lambda_; }

  bool has_lambda_star() const noexcept { return !lambda_star_.empty(); }
  double lambda_star(std::uint64_t n) const {
    check(n);
    if (!has_lambda_star()) throw std::logic_error("lambda* not built; call build_lambda_star first");
    return lambda_star_[n];
  }
  std::span<const double> lambda_star_values() const noexcept { return lambda_star_; }

  /// Expands the local factor of L(s,sym^4 f) L(s,sym^2 f)^3 zeta(s)^2 at each
  /// p <= x_max to degree floor(log_p x_max) and fills lambda* multiplicatively.
  void build_lambda_star(const FactorTable& factors, Exec exec = {}) {
    detail::fill_multiplicative(lambda_star_, factors, x_max_, exec,
                                [&](std::uint64_t p, std::uint64_t, unsigned a_max) {
                                  return checked_majorant_local_series(lambda_[p], a_max);
                                });
  }

 private:
  void check(std::uint64_t n) const {
    if (n < 1 || n > x_max_)
      throw OutOfRange("n=" + std::to_string(n) + " outside [1, " + std::to_string(x_max_) + "]");
  }

  std::uint64_t x_max_ = 0;
  std::string descriptor_;
  std::vector<double> lambda_;
  std::vector<double> lambda_star_;
};

inline CoefficientTable build_coefficient_table(const PrimeCoefficientSource& source,
                                                const FactorTable& factors, std::uint64_t x_max,
                                                Exec exec = {}) {
  return CoefficientTable::build(source, factors, x_max, exec);
}

inline void build_lambda_star(CoefficientTable& table, const FactorTable& factors, Exec exec = {}) {
  table.build_lambda_star(factors, exec);
}

/// |lambda(m)lambda(n) - sum_{d | gcd(m,n)} lambda(mn/d^2)|.
inline double verify_hecke_relation(const CoefficientTable& table, std::uint64_t m, std::uint64_t n) {
  if (m < 1 || n < 1 || m > table.x_max() / n) {
    throw OutOfRange("hecke relation needs 1 <= m*n <= x_max");
  }
  const std::uint64_t g = std::gcd(m, n);
  const std::uint64_t mn = m * n;
  CompensatedSum rhs;
  for (std::uint64_t d = 1; d <= g; ++d) {
    if (g % d == 0) rhs.add(table[mn / (d * d)]);
  }
  return std::fabs(table[m] * table[n] - rhs.value());
}

inline double hecke_tolerance(const CoefficientTable& table, std::uint64_t m, std::uint64_t n) {
  return 1e-9 * (1.0 + std::fabs(table[m] * table[n]));
}

/// Number of n <= x with lambda(n)^4 > lambda*(n) (beyond relative 1e-12).
/// Partial sums are what matter; this is reported for information only.
inline std::uint64_t coefficientwise_majorant_violations(const CoefficientTable& table, std::uint64_t x) {
  std::uint64_t bad = 0;
  for (std::uint64_t n = 1; n <= x; ++n) {
    const double l2 = table[n] * table[n];
    const double star = table.lambda_star(n);
    if (l2 * l2 > star + 1e-12 * std::fabs(star) + 1e-300) ++bad;
  }
  return bad;
}

}  // namespace hecke
