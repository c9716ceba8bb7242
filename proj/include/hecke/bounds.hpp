#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "hecke/coefficients.hpp"
#include "hecke/errors.hpp"
#include "hecke/weight_bound.hpp"
#include "hecke/parallel.hpp"
#include "hecke/prime_source.hpp"
#include "hecke/report.hpp"
#include "hecke/sieve.hpp"
#include "hecke/smooth.hpp"
#include "hecke/zeta.hpp"

namespace hecke {

struct LabContext {
  const FactorTable& factors;
  const CoefficientTable& table;
  const PrimeCoefficientSource& source;
  Exec exec{};
  double epsilon = 1.0 / 64.0;
  unsigned k = 3;
  std::string lemma6_weight = "abs-lambda-mu";
};

inline constexpr double kSmoothSumExponent = 57.0 / 64.0;  // 1/2 < a < 1 used by `verify lemma1`
inline constexpr double kRelativeIdentityTolerance = 1e-10;

/// 1 - 7/64 - epsilon: the exponent the smooth |lambda mu|/n sum reduces to.
inline double lambda_smooth_exponent(double epsilon) { return 1.0 - kKimSarnak - epsilon; }

inline double log_log(double x) { return std::log(std::log(x)); }

inline void check_grid(const LabContext& c, std::span<const std::uint64_t> grid) {
  if (grid.empty()) throw DomainError("empty grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i > 0 && grid[i] <= grid[i - 1]) throw DomainError("grid must be strictly increasing");
    require_beyond_ee(static_cast<double>(grid[i]));
  }
  if (grid.back() > c.table.x_max() || grid.back() > c.factors.x_max()) throw OutOfRange("grid beyond x_max");
}

inline bool is_rough(const FactorTable& f, std::uint64_t n, double L) {
  return n == 1 || static_cast<double>(f.p_minus(n)) > L;
}

inline double abs_lambda_mu(const LabContext& c, std::uint64_t n) {
  return c.factors.moebius(n) == 0 ? 0.0 : std::fabs(c.table[n]);
}

inline double abs_lambda_kfree(const LabContext& c, std::uint64_t n, unsigned k) {
  return c.factors.indicator(n, SetKind::kfree(k)) ? std::fabs(c.table[n]) : 0.0;
}

inline double fourth_power(double v) {
  const double s = v * v;
  return s * s;
}

/// Smallest C1 making the smooth power sum bound hold at x in {1e3, 1e4}
/// (or the first grid point if the table is smaller).
inline double calibrate_c1(const FactorTable& f, double a, std::span<const std::uint64_t> grid) {
  std::vector<std::uint64_t> points;
  for (std::uint64_t x : {std::uint64_t{1000}, std::uint64_t{10000}})
    if (x <= f.x_max()) points.push_back(x);
  if (points.empty()) points.push_back(grid.front());
  double c1 = -INFINITY;
  for (std::uint64_t x : points) {
    const double xd = static_cast<double>(x);
    c1 = std::max(c1, lemma1_c1_needed(xd, a, smooth_power_sum(x, smoothness_cut(xd), a, f)));
  }
  return c1;
}

// ---------------------------------------------------------------------------
// Smooth power sum

inline std::vector<BoundReport> verify_lemma1(const LabContext& c, std::span<const std::uint64_t> grid,
                                              double a = kSmoothSumExponent) {
  check_grid(c, grid);
  const double c1 = calibrate_c1(c.factors, a, grid);
  BoundReport main("lemma1", ClaimKind::Calibrated);
  BoundReport identity("lemma1.slice-identity", ClaimKind::Unconditional);
  BoundReport slices("lemma1.slices", ClaimKind::Calibrated);
  for (std::uint64_t x : grid) {
    const double xd = static_cast<double>(x);
    const auto s = lemma1_slices(x, a, c.factors);
    main.add(x, s.smooth_sum, lemma1_rhs(xd, a, c1));
    identity.add(x, std::fabs(s.reassembled(a) - s.smooth_sum) / s.smooth_sum, kRelativeIdentityTolerance);
    CompensatedSum j, b;
    for (double v : s.integrals) j.add(v);
    for (double v : s.bounds) b.add(v);
    slices.add(x, j.value(), b.value());
  }
  return {main.finalize(), identity.finalize(), slices.finalize()};
}

inline std::vector<BoundReport> verify_lemma2(const LabContext& c, std::span<const std::uint64_t> grid) {
  check_grid(c, grid);
  const double a = lambda_smooth_exponent(c.epsilon);
  const double c1 = calibrate_c1(c.factors, a, grid);
  BoundReport main("lemma2", ClaimKind::Calibrated);
  BoundReport envelope("lemma2.envelope", ClaimKind::Unconditional);
  for (std::uint64_t x : grid) {
    const double xd = static_cast<double>(x);
    CompensatedSum lhs;
    double worst = 0.0;
    for_each_smooth(x, smoothness_cut(xd), c.factors, [&](std::uint64_t n) {
      if (c.factors.moebius(n) == 0) return;
      const double l = std::fabs(c.table[n]);
      const double nd = static_cast<double>(n);
      lhs.add(l / nd);
      worst = std::max(worst, l / (std::pow(nd, kKimSarnak) * static_cast<double>(c.factors.divisor_count(n))));
    });
    main.add(x, lhs.value(), lemma1_rhs(xd, a, c1));
    envelope.add(x, worst, 1.0);
  }
  return {main.finalize(), envelope.finalize()};
}

// ---------------------------------------------------------------------------
// Sums over (log x)^2-rough integers

inline constexpr std::size_t kThresholdCount = 4;

struct RoughSums {
  double total = 0.0;  // sum |lambda mu|/n
  double inverse = 0.0;  // sum 1/n
  double fourth = 0.0;  // sum |lambda|^4/n
  std::array<double, kThresholdCount> M{};
  std::array<double, kThresholdCount> S1{};  // |lambda| <= M part of total
  std::array<double, kThresholdCount> S2{};  // |lambda| > M part of total
};

/// Thresholds M in {0.5, 1, 2, (log x)^{1/4}}.
inline RoughSums rough_sums(const LabContext& c, std::uint64_t x) {
  const double xd = static_cast<double>(x);
  const double L = smoothness_cut(xd);
  RoughSums r;
  r.M = {0.5, 1.0, 2.0, std::pow(std::log(xd), 0.25)};
  const std::uint64_t cp[] = {x};
  constexpr std::size_t K = 3 + 2 * kThresholdCount;
  const auto sums = ordered_prefix_sums<K>(x, cp, c.exec, [&](std::uint64_t n, std::array<double, K>& out) {
    if (!is_rough(c.factors, n, L)) return;
    const double inv = 1.0 / static_cast<double>(n);
    const double l = std::fabs(c.table[n]);
    const double lm = c.factors.moebius(n) == 0 ? 0.0 : l * inv;
    out[0] = lm;
    out[1] = inv;
    out[2] = fourth_power(l) * inv;
    for (std::size_t j = 0; j < kThresholdCount; ++j) (l <= r.M[j] ? out[3 + j] : out[3 + kThresholdCount + j]) = lm;
  });
  r.total = sums[0][0];
  r.inverse = sums[0][1];
  r.fourth = sums[0][2];
  for (std::size_t j = 0; j < kThresholdCount; ++j) {
    r.S1[j] = sums[0][3 + j];
    r.S2[j] = sums[0][3 + kThresholdCount + j];
  }
  return r;
}

inline std::vector<BoundReport> verify_lemma3(const LabContext& c, std::span<const std::uint64_t> grid) {
  check_grid(c, grid);
  BoundReport r("lemma3", ClaimKind::Unconditional);
  for (std::uint64_t x : grid) r.add(x, rough_sums(c, x).inverse, 1.0 + std::log(static_cast<double>(x)));
  return {r.finalize()};
}

inline std::vector<BoundReport> verify_lemma4(const LabContext& c, std::span<const std::uint64_t> grid) {
  check_grid(c, grid);
  BoundReport r("lemma4", ClaimKind::Calibrated);
  for (std::uint64_t x : grid) {
    const double l = std::log(static_cast<double>(x));
    r.add(x, rough_sums(c, x).fourth, l * l);
  }
  return {r.finalize()};
}

/// Majorant f(M) = a M + b / M^3 for the split at threshold M.
struct ThresholdSplit {
  double a = 0.0;
  double b = 0.0;
  double operator()(double M) const { return a * M + b / (M * M * M); }
  double closed_form_argmin() const { return std::pow(3.0 * b / a, 0.25); }
  /// Log-spaced scan of M over [1e-3, 1e3].
  double scanned_argmin(int points = 60001) const {
    double best_m = 1e-3, best = (*this)(best_m);
    for (int i = 1; i < points; ++i) {
      const double m = std::pow(10.0, -3.0 + 6.0 * i / (points - 1));
      if (const double v = (*this)(m); v < best) {
        best = v;
        best_m = m;
      }
    }
    return best_m;
  }
};

inline ThresholdSplit threshold_split(const RoughSums& r, double x) { return {1.0 + std::log(x), r.fourth}; }

inline std::vector<BoundReport> verify_lemma5(const LabContext& c, std::span<const std::uint64_t> grid) {
  check_grid(c, grid);
  BoundReport main("lemma5", ClaimKind::Calibrated);
  BoundReport partition("lemma5.partition", ClaimKind::Unconditional);
  BoundReport split("lemma5.split", ClaimKind::Unconditional);
  BoundReport argmin("lemma5.argmin", ClaimKind::Calibrated);
  for (std::uint64_t x : grid) {
    const double xd = static_cast<double>(x);
    const double l = std::log(xd);
    const auto r = rough_sums(c, x);
    main.add(x, r.total, std::pow(l, 1.25));
    double dev = 0.0;
    for (std::size_t j = 0; j < kThresholdCount; ++j)
      dev = std::max(dev, std::fabs(r.S1[j] + r.S2[j] - r.total) / r.total);
    partition.add(x, dev, 1e-12);
    const double M = r.M.back();
    split.add(x, r.total, M * r.inverse + r.fourth / (M * M * M));
    argmin.add(x, threshold_split(r, xd).scanned_argmin(), std::pow(l, 0.25));
  }
  return {main.finalize(), partition.finalize(), split.finalize(), argmin.finalize()};
}

// ---------------------------------------------------------------------------
// The S versus L bound applied to a chosen weight

inline MultiplicativeWeight weight_by_name(const std::string& name, unsigned k) {
  if (name == "abs-mu") return abs_mu_weight();
  if (name == "abs-lambda-mu") return abs_lambda_mu_weight();
  if (name == "abs-lambda-kfree") return abs_lambda_kfree_weight(k);
  if (name == "unit") return unit_weight();
  throw DomainError("unknown multiplicative weight '" + name + "'");
}

inline std::vector<BoundReport> verify_lemma6_claim(const LabContext& c, std::span<const std::uint64_t> grid) {
  check_grid(c, grid);
  const auto w = weight_by_name(c.lemma6_weight, c.k);
  const double A = estimate_A(w, grid, c.table, c.factors);
  const double B = estimate_B(w, c.source);
  auto main = verify_lemma6(w, A, B, grid, c.table, c.factors, c.exec);
  BoundReport decomposition("lemma6.decomposition", ClaimKind::Unconditional);
  BoundReport trivial("lemma6.trivial-bound", ClaimKind::Unconditional);
  for (std::uint64_t x : grid) {
    const auto d = decompose_S_log(w, c.table, c.factors, x, c.exec);
    const double target = d.S * std::log(static_cast<double>(x));
    decomposition.add(x, std::fabs(d.total() - target) / target, kRelativeIdentityTolerance);
    trivial.add(x, d.S, static_cast<double>(x) * d.L);
  }
  return {main, decomposition.finalize(), trivial.finalize()};
}

// ---------------------------------------------------------------------------
// Sums over primes

inline std::vector<BoundReport> verify_lemma7(const LabContext& c, std::span<const std::uint64_t> grid) {
  check_grid(c, grid);
  if (!c.table.has_lambda_star()) throw std::logic_error("lemma7 split needs lambda*");
  const auto sums = ordered_prefix_sums<4>(grid.back(), grid, c.exec, [&](std::uint64_t n, std::array<double, 4>& out) {
    out[2] = c.table.lambda_star_values()[n];
    if (n == 1) return;
    const std::uint64_t p = c.factors.p_minus(n);
    const double lp = std::log(static_cast<double>(p));
    if (p == n) {
      out[0] = abs_lambda_mu(c, n) * lp;
      out[1] = lp;
      return;
    }
    std::uint64_t m = n;
    unsigned a = 0;
    while (m % p == 0) {
      m /= p;
      ++a;
    }
    if (m == 1) out[3] = abs_lambda_mu(c, n) * a * lp / static_cast<double>(n);
  });
  BoundReport main("lemma7", ClaimKind::Calibrated);
  BoundReport split("lemma7.split", ClaimKind::Unconditional);
  BoundReport powers("lemma7.prime-power-sum", ClaimKind::Unconditional);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = static_cast<double>(grid[i]);
    const double lx = std::log(x);
    const double L = std::sqrt(lx);
    main.add(grid[i], sums[i][0], x * std::sqrt(lx));
    split.add(grid[i], sums[i][0], L * sums[i][1] + lx / (L * L * L) * sums[i][2]);
    powers.add(grid[i], sums[i][3], 0.0);
  }
  return {main.finalize(), split.finalize(), powers.finalize()};
}

inline std::vector<BoundReport> verify_lemma8(const LabContext& c, std::span<const std::uint64_t> grid) {
  check_grid(c, grid);
  const auto sums = ordered_prefix_sums<2>(grid.back(), grid, c.exec, [&](std::uint64_t n, std::array<double, 2>& out) {
    out[0] = abs_lambda_mu(c, n);
    out[1] = out[0] / static_cast<double>(n);
  });
  BoundReport main("lemma8", ClaimKind::Calibrated);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = static_cast<double>(grid[i]);
    main.add(grid[i], sums[i][0], x / std::sqrt(std::log(x)) * sums[i][1]);
  }
  const auto w = abs_lambda_mu_weight(GrowthForm::SqrtLog);
  const double A = estimate_A(w, grid, c.table, c.factors);
  return {main.finalize(), verify_lemma6(w, A, 0.0, grid, c.table, c.factors, c.exec, "lemma8.lemma6-form")};
}

// ---------------------------------------------------------------------------
// Full pipeline for sum_{n<=x} |lambda(n)| h_k(n); k = 2 is the squarefree case

struct PrimePowerTail {
  double envelope_sum = 0.0;  // sum_p sum_{2<=a<=k-1} (a+1) a log p p^{-57a/64}
  double chain_sum = 0.0;     // sum_p 1/(p^{7/8}(p^{7/8}-1))
  double chain_constant = 0.0;
  double bound() const { return chain_constant * chain_sum; }
};

/// (a+1) a log p p^{-a(1-7/64)} <= 4 (64)^2 / log 2 * p^{-7a/8}, summed over a >= 2.
inline constexpr double kChainConstant = 4.0 * 64.0 * 64.0 / std::numbers::ln2;

/// sum_p 1/(p^{7/8}(p^{7/8}-1)) over p <= P, plus the tail
/// int_P^inf dt/(t^{7/4} log t) / (1 - P^{-7/8}).
inline double prime_chain_sum(const FactorTable& f, std::uint64_t P) {
  if (P > f.x_max()) throw OutOfRange("chain truncation beyond factor table");
  CompensatedSum s;
  const auto primes = f.primes();
  for (std::size_t i = 0; i < f.prime_pi(P); ++i) {
    const double q = std::pow(static_cast<double>(primes[i]), 0.875);
    s.add(1.0 / (q * (q - 1.0)));
  }
  const double Pd = static_cast<double>(P);
  const double integral = -std::expint(-0.75 * std::log(Pd));  // E1(3/4 log P)
  s.add(integral / (1.0 - std::pow(Pd, -0.875)));
  return s.value();
}

inline PrimePowerTail prime_power_tail(unsigned k, std::uint64_t P = kPrimePowerTruncation) {
  if (k < 2) throw DomainError("k must be >= 2");
  const auto f = FactorTable::build(P);
  PrimePowerTail t;
  t.chain_constant = kChainConstant;
  t.chain_sum = prime_chain_sum(f, P);
  if (k == 2) return t;
  const double theta = kKimSarnak;
  CompensatedSum s;
  for (std::uint64_t p : f.primes()) {
    const double lp = std::log(static_cast<double>(p));
    for (unsigned a = 2; a <= k - 1; ++a)
      s.add((a + 1.0) * a * lp * std::pow(static_cast<double>(p), -(1.0 - theta) * a));
  }
  s.add(envelope_prime_power_tail(static_cast<double>(P), theta, k - 1));
  t.envelope_sum = s.value();
  return t;
}

inline std::vector<BoundReport> kfree_pipeline(const LabContext& c, std::span<const std::uint64_t> grid, unsigned k,
                                               const std::string& id) {
  check_grid(c, grid);
  if (k < 2) throw DomainError("k must be >= 2");
  const auto weight = [&](std::uint64_t n) { return abs_lambda_kfree(c, n, k); };
  const auto totals = ordered_prefix_sums<2>(grid.back(), grid, c.exec, [&](std::uint64_t n, std::array<double, 2>& out) {
    out[0] = weight(n);
    out[1] = out[0] / static_cast<double>(n);
  });
  const double c1 = calibrate_c1(c.factors, lambda_smooth_exponent(c.epsilon), grid);

  BoundReport main(id, ClaimKind::Calibrated);
  BoundReport holder(id + ".holder-initial", ClaimKind::Unconditional);
  BoundReport initial(id + ".initial-segment", ClaimKind::Calibrated);
  BoundReport decomposition(id + ".decomposition", ClaimKind::Unconditional);
  BoundReport smooth_rough(id + ".smooth-rough", ClaimKind::Calibrated);
  BoundReport log_sum(id + ".log-sum", ClaimKind::Calibrated);
  BoundReport step(id + ".lemma8-step", ClaimKind::Calibrated);

  std::vector<double> rough_prefix;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const std::uint64_t x = grid[i];
    const double xd = static_cast<double>(x);
    const double lx = std::log(xd);
    const double llx = log_log(xd);
    const double L = smoothness_cut(xd);
    const auto L_floor = std::min<std::uint64_t>(x, static_cast<std::uint64_t>(std::floor(L)));
    const double S = totals[i][0];
    const double Lx = totals[i][1];

    // (i) n <= L
    CompensatedSum seg_w, seg_abs, seg_fourth, seg_inv;
    for (std::uint64_t n = 1; n <= L_floor; ++n) {
      const double inv = 1.0 / static_cast<double>(n);
      const double l = std::fabs(c.table[n]);
      seg_w.add(weight(n) * inv);
      seg_abs.add(l * inv);
      seg_fourth.add(fourth_power(l) * inv);
      seg_inv.add(inv);
    }
    holder.add(x, seg_abs.value(), std::pow(seg_fourth.value(), 0.25) * std::pow(seg_inv.value(), 0.75));
    initial.add(x, seg_w.value(), std::pow(llx, 1.25));

    // (ii) n = m1 m2 with m1 L-smooth and m2 L-rough
    rough_prefix.assign(x + 1, 0.0);
    CompensatedSum running, beyond;
    for (std::uint64_t n = 1; n <= x; ++n) {
      const double wn = weight(n) / static_cast<double>(n);
      if (n > L_floor) beyond.add(wn);
      if (is_rough(c.factors, n, L)) running.add(wn);
      rough_prefix[n] = running.value();
    }
    CompensatedSum all_pairs, large_pairs, majorant;
    for_each_smooth(x, L, c.factors, [&](std::uint64_t m1) {
      const double w1 = weight(m1) / static_cast<double>(m1);
      if (w1 == 0.0) return;
      const double inner = rough_prefix[x / m1];
      all_pairs.add(w1 * inner);
      large_pairs.add(w1 * (inner - rough_prefix[L_floor / m1]));
      majorant.add(w1 * std::pow(1.0 + std::log(xd / static_cast<double>(m1)), 1.25));
    });
    const double dev = std::max(std::fabs(large_pairs.value() - beyond.value()) / beyond.value(),
                                std::fabs(all_pairs.value() - Lx) / Lx);
    decomposition.add(x, dev, kRelativeIdentityTolerance);
    smooth_rough.add(x, all_pairs.value(), majorant.value());
    log_sum.add(x, Lx, std::pow(llx, 1.25) + lemma1_rhs(xd, lambda_smooth_exponent(c.epsilon), c1) * std::pow(lx, 1.25));

    // (iii), (iv)
    step.add(x, S, xd / std::sqrt(lx) * Lx);
    main.add(x, S, xd * std::pow(llx, 1.25) / std::sqrt(lx));
  }

  const auto w = abs_lambda_kfree_weight(k, GrowthForm::SqrtLog);
  const double A = estimate_A(w, grid, c.table, c.factors);
  const double B = estimate_B(w, c.source);
  return {main.finalize(),  holder.finalize(),  initial.finalize(), decomposition.finalize(),
          smooth_rough.finalize(), log_sum.finalize(), step.finalize(),
          verify_lemma6(w, A, B, grid, c.table, c.factors, c.exec, id + ".lemma6-form")};
}

inline std::vector<BoundReport> theorem1_pipeline(const LabContext& c, std::span<const std::uint64_t> grid) {
  return kfree_pipeline(c, grid, 2, "theorem1");
}

inline std::vector<BoundReport> theorem2_pipeline(const LabContext& c, std::span<const std::uint64_t> grid,
                                                  unsigned k) {
  if (k < 2) throw DomainError("k must be >= 2");
  auto reports = kfree_pipeline(c, grid, k, "theorem2");
  const auto tail = prime_power_tail(k);
  BoundReport tail_row("theorem2.prime-power-tail", ClaimKind::Unconditional);
  tail_row.add(grid.back(), tail.envelope_sum, tail.bound());
  reports.push_back(tail_row.finalize());
  BoundReport count("theorem2.kfree-count", ClaimKind::Unconditional);
  for (std::uint64_t x : grid) {
    const auto sc = count_set(c.factors, x, SetKind::kfree(k));
    count.add(x, std::fabs(sc.deviation), 5.0 * std::pow(static_cast<double>(x), 1.0 / k));
  }
  reports.push_back(count.finalize());
  return reports;
}

// ---------------------------------------------------------------------------
// Sums over primes and squarefull numbers via the fourth moment

enum class FourthMomentSet { Primes, Squarefull };

inline std::vector<BoundReport> fourth_moment_holder(const LabContext& c, std::span<const std::uint64_t> grid,
                                                FourthMomentSet kind) {
  check_grid(c, grid);
  if (!c.table.has_lambda_star()) throw std::logic_error("section6 needs lambda*");
  const SetKind set = kind == FourthMomentSet::Primes ? SetKind::prime() : SetKind::squarefull();
  const auto sums = ordered_prefix_sums<3>(grid.back(), grid, c.exec, [&](std::uint64_t n, std::array<double, 3>& out) {
    out[2] = c.table.lambda_star_values()[n];
    if (!c.factors.indicator(n, set)) return;
    out[0] = std::fabs(c.table[n]);
    out[1] = 1.0;
  });
  const std::string id = kind == FourthMomentSet::Primes ? "section6-primes" : "section6-squarefull";
  BoundReport main(id, ClaimKind::Calibrated);
  BoundReport holder(id + ".holder", ClaimKind::Unconditional);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = static_cast<double>(grid[i]);
    const double lx = std::log(x);
    holder.add(grid[i], sums[i][0], std::pow(sums[i][2], 0.25) * std::pow(sums[i][1], 0.75));
    main.add(grid[i], sums[i][0], kind == FourthMomentSet::Primes ? x / std::sqrt(lx) : std::pow(x, 0.625) * std::pow(lx, 0.25));
  }
  std::vector<BoundReport> out{main.finalize(), holder.finalize()};
  if (kind == FourthMomentSet::Squarefull) {
    BoundReport count(id + ".count", ClaimKind::Unconditional);
    for (std::uint64_t x : grid)
      count.add(x, std::fabs(count_set(c.factors, x, set).deviation), 5.0 * std::cbrt(static_cast<double>(x)));
    out.push_back(count.finalize());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Relative density of |lambda| on squarefree integers

struct DensityRow {
  std::uint64_t x = 0;
  double ratio = 0.0;       // sum |lambda mu| / sum |mu|
  double envelope = 0.0;    // (log log x)^{5/4} / sqrt(log x)
  double abs_lambda = 0.0;  // sum |lambda|
  double reference = 0.0;   // x / (log x)^0.118
  double squarefree = 0.0;  // sum |mu|
};

inline std::vector<DensityRow> remark1_density(const LabContext& c, std::span<const std::uint64_t> grid) {
  check_grid(c, grid);
  const auto sums = ordered_prefix_sums<3>(grid.back(), grid, c.exec, [&](std::uint64_t n, std::array<double, 3>& out) {
    const double l = std::fabs(c.table[n]);
    out[2] = l;
    if (c.factors.moebius(n) == 0) return;
    out[0] = l;
    out[1] = 1.0;
  });
  std::vector<DensityRow> rows;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = static_cast<double>(grid[i]);
    const double lx = std::log(x);
    rows.push_back({grid[i], sums[i][0] / sums[i][1], std::pow(log_log(x), 1.25) / std::sqrt(lx), sums[i][2],
                    x / std::pow(lx, kTangWuTheta), sums[i][1]});
  }
  return rows;
}

inline std::vector<BoundReport> verify_remark1(const LabContext& c, std::span<const std::uint64_t> grid) {
  BoundReport main("remark1", ClaimKind::Calibrated);
  BoundReport count("remark1.squarefree-count", ClaimKind::Unconditional);
  for (const auto& row : remark1_density(c, grid)) {
    const double x = static_cast<double>(row.x);
    main.add(row.x, row.ratio, row.envelope);
    count.add(row.x, std::fabs(row.squarefree - x / zeta(2.0)), 5.0 * std::sqrt(x));
  }
  return {main.finalize(), count.finalize()};
}

// ---------------------------------------------------------------------------
// Fourth moment against lambda*

inline std::vector<BoundReport> verify_eq3(const LabContext& c, std::span<const std::uint64_t> grid) {
  check_grid(c, grid);
  if (!c.table.has_lambda_star()) throw std::logic_error("eq3 needs lambda*");
  const auto sums = ordered_prefix_sums<2>(grid.back(), grid, c.exec, [&](std::uint64_t n, std::array<double, 2>& out) {
    out[0] = fourth_power(c.table[n]);
    out[1] = c.table.lambda_star_values()[n];
  });
  BoundReport main("eq3", ClaimKind::Unconditional);
  BoundReport primes("eq3.prime-identity", ClaimKind::Unconditional);
  BoundReport growth("eq3.growth", ClaimKind::Calibrated);
  const auto ps = c.factors.primes();
  std::size_t j = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = static_cast<double>(grid[i]);
    for (; j < ps.size() && ps[j] <= grid[i]; ++j) {
      const double l4 = fourth_power(c.table[ps[j]]);
      const double diff = std::fabs(c.table.lambda_star_values()[ps[j]] - l4);
      worst = std::max(worst, l4 > 0.0 ? diff / l4 : diff);
    }
    main.add(grid[i], sums[i][0], sums[i][1]);
    primes.add(grid[i], worst, 1e-9);
    growth.add(grid[i], sums[i][1], x * std::log(x));
  }
  return {main.finalize(), primes.finalize(), growth.finalize()};
}

// ---------------------------------------------------------------------------
// Dispatch

inline const std::vector<std::string>& claim_names() {
  static const std::vector<std::string> names = {"lemma1",   "lemma2",   "lemma3",          "lemma4",
                                                 "lemma5",   "lemma6",   "lemma7",          "lemma8",
                                                 "theorem1", "theorem2", "section6-primes", "section6-squarefull",
                                                 "remark1",  "eq3"};
  return names;
}

inline bool claim_needs_lambda_star(const std::string& claim) {
  return claim == "lemma7" || claim == "eq3" || claim == "section6-primes" || claim == "section6-squarefull";
}

inline std::vector<BoundReport> run_claim(const std::string& claim, const LabContext& c,
                                          std::span<const std::uint64_t> grid) {
  if (claim == "lemma1") return verify_lemma1(c, grid);
  if (claim == "lemma2") return verify_lemma2(c, grid);
  if (claim == "lemma3") return verify_lemma3(c, grid);
  if (claim == "lemma4") return verify_lemma4(c, grid);
  if (claim == "lemma5") return verify_lemma5(c, grid);
  if (claim == "lemma6") return verify_lemma6_claim(c, grid);
  if (claim == "lemma7") return verify_lemma7(c, grid);
  if (claim == "lemma8") return verify_lemma8(c, grid);
  if (claim == "theorem1") return theorem1_pipeline(c, grid);
  if (claim == "theorem2") return theorem2_pipeline(c, grid, c.k);
  if (claim == "section6-primes") return fourth_moment_holder(c, grid, FourthMomentSet::Primes);
  if (claim == "section6-squarefull") return fourth_moment_holder(c, grid, FourthMomentSet::Squarefull);
  if (claim == "remark1") return verify_remark1(c, grid);
  if (claim == "eq3") return verify_eq3(c, grid);
  throw DomainError("unknown claim '" + claim + "'");
}

}  // namespace hecke
