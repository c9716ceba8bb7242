#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "hecke/hecke.hpp"

// Independent reference implementations used by the tests. Nothing here
// calls into the sieve; everything is trial division or textbook series.

namespace oracle {

inline std::uint64_t spf(std::uint64_t n) {
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return d;
  return n;
}

inline bool is_prime(std::uint64_t n) { return n >= 2 && spf(n) == n; }

inline int moebius(std::uint64_t n) {
  int mu = 1;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    n /= d;
    if (n % d == 0) return 0;
    mu = -mu;
  }
  return n > 1 ? -mu : mu;
}

inline std::uint64_t divisor_count(std::uint64_t n) {
  std::uint64_t c = 0;
  for (std::uint64_t d = 1; d <= n; ++d) c += n % d == 0;
  return c;
}

/// theta(x) = sum_{p<=x} log p by trial division.
inline double chebyshev_theta(std::uint64_t x) {
  double s = 0.0;
  for (std::uint64_t n = 2; n <= x; ++n)
    if (is_prime(n)) s += std::log(static_cast<double>(n));
  return s;
}

/// Li2(z) for real z <= 1.
inline double dilog(double z) {
  if (z < -1.0) {
    const double l = std::log(-z);
    return -std::numbers::pi * std::numbers::pi / 6.0 - 0.5 * l * l - dilog(1.0 / z);
  }
  if (z < -0.5) {
    const double l = std::log(1.0 - z);
    return -dilog(z / (z - 1.0)) - 0.5 * l * l;
  }
  if (z > 0.5) {
    return std::numbers::pi * std::numbers::pi / 6.0 - std::log(z) * std::log(1.0 - z) - dilog(1.0 - z);
  }
  double term = z, sum = 0.0;
  for (int k = 1; k < 2000; ++k) {
    sum += term / (static_cast<double>(k) * k);
    term *= z;
    if (std::fabs(term) < 1e-20) break;
  }
  return sum;
}

/// rho(u) on [2, 3] in closed form.
inline double rho_closed_form(double u) {
  const double pi2 = std::numbers::pi * std::numbers::pi;
  return 1.0 - (1.0 - std::log(u - 1.0)) * std::log(u) + dilog(1.0 - u) + pi2 / 12.0;
}

/// rho(u) on [2, 3] by Simpson at step h using the exact delayed value 1 - log(t - 1).
inline double rho_fine_simpson(double u, double h = 1e-5) {
  const auto f = [](double t) { return (1.0 - std::log(t - 1.0)) / t; };
  const auto n = static_cast<long>(std::llround((u - 2.0) / h));
  double s = 0.0;
  for (long i = 0; i < n; ++i) {
    const double a = 2.0 + i * h, b = a + h;
    s += (f(a) + 4.0 * f(0.5 * (a + b)) + f(b)) * h / 6.0;
  }
  return 1.0 - std::log(2.0) - s;
}

/// lambda* at p^0..p^degree by Newton's identities from the power sums
/// p_i = V_{4i} + 4 V_{2i} + 6, V_j = alpha^j + beta^j (all real).
inline std::vector<double> majorant_local_newton(double lambda_p, unsigned degree) {
  std::vector<double> V(4 * degree + 2);
  V[0] = 2.0;
  if (V.size() > 1) V[1] = lambda_p;
  for (std::size_t j = 2; j < V.size(); ++j) V[j] = lambda_p * V[j - 1] - V[j - 2];
  std::vector<double> h(degree + 1, 0.0);
  h[0] = 1.0;
  for (unsigned k = 1; k <= degree; ++k) {
    double s = 0.0;
    for (unsigned i = 1; i <= k; ++i) s += (V[4 * i] + 4.0 * V[2 * i] + 6.0) * h[k - i];
    h[k] = s / k;
  }
  return h;
}

}  // namespace oracle
