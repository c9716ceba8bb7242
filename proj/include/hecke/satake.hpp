#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "hecke/errors.hpp"

namespace hecke {

/// Roots of z^2 - lambda_p z + 1, with alpha * beta = 1 and alpha + beta = lambda_p.
struct SatakePair {
  std::complex<double> alpha;
  std::complex<double> beta;
};

/// |alpha| >= |beta|; on the unit circle alpha takes the nonnegative imaginary part.
inline SatakePair satake_split(double lambda_p) {
  if (std::fabs(lambda_p) <= 2.0) {
    const double im = 0.5 * std::sqrt(std::max(0.0, 4.0 - lambda_p * lambda_p));
    return {{0.5 * lambda_p, im}, {0.5 * lambda_p, -im}};
  }
  const double root = std::sqrt(lambda_p * lambda_p - 4.0);
  const double big = lambda_p > 0 ? 0.5 * (lambda_p + root) : 0.5 * (lambda_p - root);
  return {{big, 0.0}, {1.0 / big, 0.0}};
}

/// lambda(p^0), ..., lambda(p^nu_max) from the Hecke recursion
/// lambda(p^v) = lambda_p lambda(p^{v-1}) - lambda(p^{v-2}).
inline std::vector<double> prime_power_coeffs(double lambda_p, unsigned nu_max) {
  std::vector<double> c(nu_max + 1);
  c[0] = 1.0;
  if (nu_max >= 1) c[1] = lambda_p;
  for (unsigned v = 2; v <= nu_max; ++v) c[v] = lambda_p * c[v - 1] - c[v - 2];
  return c;
}

/// The same values as the geometric Satake sum alpha^v + alpha^{v-1} beta + ... + beta^v.
inline std::complex<double> satake_power_sum(const SatakePair& s, unsigned nu) {
  std::complex<double> total = 0.0;
  for (unsigned j = 0; j <= nu; ++j) {
    total += std::pow(s.alpha, static_cast<int>(nu - j)) * std::pow(s.beta, static_cast<int>(j));
  }
  return total;
}

/// Exponent delta_m = 1 - 4(m+1)/(pi m (m+2)) cot(pi/(2(m+1))) governing
/// sum_{n<=x} |lambda(n^m)| under Sato-Tate.
inline double delta_m(unsigned m) {
  if (m < 1) throw DomainError("delta_m needs m >= 1");
  const double pi = std::numbers::pi;
  const double md = m;
  return 1.0 - 4.0 * (md + 1.0) / (pi * md * (md + 2.0)) / std::tan(pi / (2.0 * (md + 1.0)));
}

/// Tang-Wu exponent for sum_{n<=x} |lambda(n)| under Ramanujan.
inline constexpr double kTangWuTheta = 0.118;

/// Kim-Sarnak exponent: p^{-7/64} <= |alpha(p)| <= p^{7/64}.
inline constexpr double kKimSarnak = 7.0 / 64.0;

}  // namespace hecke
