#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hecke/coefficients.hpp"
#include "hecke/errors.hpp"
#include "hecke/parallel.hpp"
#include "hecke/sieve.hpp"

namespace hecke {

/// Weight w(n) = |lambda(n)|^e * 1_S(n) * (1/n if reciprocal); every factor optional.
struct WeightSpec {
  std::optional<double> lambda_exponent;
  std::vector<SetKind> indicators;
  bool reciprocal = false;

  /// Parses factors joined by '*', with an optional trailing "/n":
  /// one, abs-lambda, abs-lambda^E, lambda4, abs-mu, abs-lambda-mu,
  /// kfree-K, prime, squarefull. Example: "abs-lambda*kfree-3/n".
  static WeightSpec parse(std::string_view text) {
    WeightSpec w;
    std::string_view body = text;
    if (body.size() >= 2 && body.substr(body.size() - 2) == "/n") {
      w.reciprocal = true;
      body.remove_suffix(2);
    }
    if (body.empty()) throw ParseError("empty weight");
    while (!body.empty()) {
      const auto star = body.find('*');
      const std::string token(body.substr(0, star));
      body = star == std::string_view::npos ? std::string_view{} : body.substr(star + 1);
      if (token == "one") {
      } else if (token == "abs-lambda") {
        w.set_exponent(1.0);
      } else if (token == "lambda4") {
        w.set_exponent(4.0);
      } else if (token.rfind("abs-lambda^", 0) == 0) {
        const std::string e = token.substr(11);
        char* end = nullptr;
        const double v = std::strtod(e.c_str(), &end);
        if (e.empty() || *end != '\0' || !(v > 0.0)) throw ParseError("bad exponent in '" + token + "'");
        w.set_exponent(v);
      } else if (token == "abs-mu") {
        w.indicators.push_back(SetKind::squarefree());
      } else if (token == "abs-lambda-mu") {
        w.set_exponent(1.0);
        w.indicators.push_back(SetKind::squarefree());
      } else if (token.rfind("kfree-", 0) == 0) {
        const std::string k = token.substr(6);
        char* end = nullptr;
        const long v = std::strtol(k.c_str(), &end, 10);
        if (k.empty() || *end != '\0' || v < 2) throw ParseError("bad k in '" + token + "'");
        w.indicators.push_back(SetKind::kfree(static_cast<unsigned>(v)));
      } else if (token == "prime") {
        w.indicators.push_back(SetKind::prime());
      } else if (token == "squarefull") {
        w.indicators.push_back(SetKind::squarefull());
      } else {
        throw ParseError("unknown weight factor '" + token + "'");
      }
    }
    return w;
  }

  std::string descriptor() const {
    std::string d;
    auto join = [&](const std::string& s) { d += (d.empty() ? "" : "*") + s; };
    if (lambda_exponent) {
      if (*lambda_exponent == 1.0) {
        join("abs-lambda");
      } else {
        char buf[48];
        std::snprintf(buf, sizeof buf, "abs-lambda^%g", *lambda_exponent);
        join(buf);
      }
    }
    for (const auto& k : indicators) join(k.name());
    if (d.empty()) d = "one";
    if (reciprocal) d += "/n";
    return d;
  }

  double operator()(const CoefficientTable& table, const FactorTable& factors, std::uint64_t n) const {
    for (const auto& k : indicators)
      if (!factors.indicator(n, k)) return 0.0;
    double v = 1.0;
    if (lambda_exponent) {
      const double a = std::fabs(table[n]);
      const double e = *lambda_exponent;
      if (e == 1.0) {
        v = a;
      } else if (e == 2.0) {
        v = a * a;
      } else if (e == 4.0) {
        v = (a * a) * (a * a);
      } else {
        v = std::pow(a, e);
      }
    }
    if (reciprocal) v /= static_cast<double>(n);
    return v;
  }

 private:
  void set_exponent(double e) {
    if (lambda_exponent) throw ParseError("weight has more than one lambda factor");
    lambda_exponent = e;
  }
};

/// S(t) = sum_{n<=t} w(n) and L(t) = sum_{n<=t} w(n)/n at each checkpoint.
struct SumSeries {
  std::vector<std::uint64_t> checkpoints;
  std::vector<double> S_values;
  std::vector<double> L_values;
  std::string weight_descriptor;
};

/// Single streaming pass with compensated, chunk-ordered accumulation.
inline SumSeries partial_sums(const CoefficientTable& table, const FactorTable& factors, const WeightSpec& weight,
                              std::span<const std::uint64_t> checkpoints, Exec exec = {}) {
  if (checkpoints.empty()) throw std::invalid_argument("partial_sums needs at least one checkpoint");
  const std::uint64_t x_end = checkpoints.back();
  if (x_end > table.x_max() || x_end > factors.x_max()) throw OutOfRange("checkpoint beyond table");
  const auto totals = ordered_prefix_sums<2>(x_end, checkpoints, exec, [&](std::uint64_t n, std::array<double, 2>& out) {
    const double w = weight(table, factors, n);
    out[0] = w;
    out[1] = w / static_cast<double>(n);
  });
  SumSeries s;
  s.checkpoints.assign(checkpoints.begin(), checkpoints.end());
  s.weight_descriptor = weight.descriptor();
  for (const auto& t : totals) {
    s.S_values.push_back(t[0]);
    s.L_values.push_back(t[1]);
  }
  return s;
}

}  // namespace hecke
