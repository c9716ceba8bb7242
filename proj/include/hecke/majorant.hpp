#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "hecke/errors.hpp"
#include "hecke/satake.hpp"

namespace hecke {

// Local factor at p of L(s, sym^4 f) L(s, sym^2 f)^3 zeta(s)^2, as a power
// series in t = p^{-s}. Its denominator is
//   Q(t) = (1 - s4 t + t^2) (1 - s2 t + t^2)^4 (1 - t)^6,
// s2 = alpha^2 + beta^2 = lambda^2 - 2, s4 = alpha^4 + beta^4 = s2^2 - 2,
// a degree-16 polynomial in t whose coefficients are integer polynomials in
// lambda_p. Keeping those coefficients exact means the degree-1 coefficient
// evaluates to lambda_p^4 with no cancellation, even for lambda_p near 0.

inline constexpr unsigned kMajorantLocalDegree = 16;

namespace detail {

using IntPoly = std::vector<long long>;  // coefficients in lambda, ascending

inline IntPoly int_poly_add(const IntPoly& a, const IntPoly& b) {
  IntPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

inline IntPoly int_poly_mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

using SeriesPoly = std::vector<IntPoly>;  // polynomial in t with IntPoly coefficients

inline SeriesPoly series_mul(const SeriesPoly& a, const SeriesPoly& b) {
  SeriesPoly r(a.size() + b.size() - 1, IntPoly{0});
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = int_poly_add(r[i + j], int_poly_mul(a[i], b[j]));
  return r;
}

inline const SeriesPoly& majorant_denominator() {
  static const SeriesPoly q = [] {
    const SeriesPoly sym4_outer = {{1}, {-2, 0, 4, 0, -1}, {1}};  // 1 - s4 t + t^2
    const SeriesPoly sym2_outer = {{1}, {2, 0, -1}, {1}};         // 1 - s2 t + t^2
    const SeriesPoly trivial = {{1}, {-1}};                       // 1 - t
    SeriesPoly r = sym4_outer;
    for (int i = 0; i < 4; ++i) r = series_mul(r, sym2_outer);
    for (int i = 0; i < 6; ++i) r = series_mul(r, trivial);
    for (auto& c : r)
      while (c.size() > 1 && c.back() == 0) c.pop_back();
    return r;
  }();
  return q;
}

inline double eval_int_poly(const IntPoly& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + static_cast<double>(*it);
  return acc;
}

}  // namespace detail

/// lambda*(p^0..p^degree) from the real recurrence c_k = -sum_j q_j c_{k-j}.
inline std::vector<double> majorant_local_series(double lambda_p, unsigned degree) {
  const auto& q_poly = detail::majorant_denominator();
  std::array<double, kMajorantLocalDegree + 1> q{};
  for (unsigned j = 0; j <= kMajorantLocalDegree; ++j) q[j] = detail::eval_int_poly(q_poly[j], lambda_p);
  std::vector<double> c(degree + 1, 0.0);
  c[0] = 1.0;
  for (unsigned k = 1; k <= degree; ++k) {
    double acc = 0.0;
    for (unsigned j = 1; j <= std::min(k, kMajorantLocalDegree); ++j) acc -= q[j] * c[k - j];
    c[k] = acc;
  }
  return c;
}

/// The 16 inverse roots of the local denominator, grouped as
/// sym^4 (5), three copies of sym^2 (9), zeta^2 (2).
inline std::array<std::complex<double>, kMajorantLocalDegree> majorant_satake_roots(const SatakePair& s) {
  const auto a2 = s.alpha * s.alpha;
  const auto b2 = s.beta * s.beta;
  const std::complex<double> one = 1.0;
  return {a2 * a2, a2, one, b2, b2 * b2, a2, one, b2, a2, one, b2, a2, one, b2, one, one};
}

struct ComplexLocalSeries {
  std::vector<std::complex<double>> coeffs;
  std::vector<double> magnitude;  // coefficients of prod 1/(1 - |gamma| t); bounds |coeffs|
};

/// Product of 1/(1 - gamma t) over the Satake roots, in complex arithmetic.
inline ComplexLocalSeries majorant_local_series_complex(const SatakePair& s, unsigned degree) {
  ComplexLocalSeries out;
  out.coeffs.assign(degree + 1, 0.0);
  out.magnitude.assign(degree + 1, 0.0);
  out.coeffs[0] = 1.0;
  out.magnitude[0] = 1.0;
  for (const auto& g : majorant_satake_roots(s)) {
    const double ag = std::abs(g);
    for (unsigned k = 1; k <= degree; ++k) {
      out.coeffs[k] += g * out.coeffs[k - 1];
      out.magnitude[k] += ag * out.magnitude[k - 1];
    }
  }
  return out;
}

inline constexpr double kRealTolerance = 1e-9;

/// Real series, cross-checked against the complex Satake expansion. Throws
/// NonRealCoefficient when the complex route leaves an imaginary part above
/// 1e-9 (scaled by the magnitude series) or disagrees with the real route.
inline std::vector<double> checked_majorant_local_series(double lambda_p, unsigned degree) {
  auto real = majorant_local_series(lambda_p, degree);
  const auto cplx = majorant_local_series_complex(satake_split(lambda_p), degree);
  for (unsigned k = 0; k <= degree; ++k) {
    const double scale = kRealTolerance * (1.0 + cplx.magnitude[k]);
    const double im = std::fabs(cplx.coeffs[k].imag());
    const double diff = std::fabs(cplx.coeffs[k].real() - real[k]);
    if (!(im <= scale) || !(diff <= scale)) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "local coefficient t^%u at lambda_p=%.17g: imag %.3g, mismatch %.3g",
                    k, lambda_p, im, diff);
      throw NonRealCoefficient(buf);
    }
  }
  return real;
}

}  // namespace hecke
