#include <doctest.h>

#include "support.hpp"

using namespace hecke;

namespace {

struct Fixture {
  FactorTable f = FactorTable::build(100000);
  PrimeCoefficientSource src = PrimeCoefficientSource::sato_tate(2);
  CoefficientTable t = CoefficientTable::build(src, f, 100000);
};

const Fixture& fixture() {
  static const Fixture fx;
  return fx;
}

}  // namespace

TEST_CASE("S log x decomposition") {
  const auto& fx = fixture();
  // n = 12: log 12 = log 3 (p || n) + log 4 (2^2 || n)
  const auto one12 = MultiplicativeWeight{"only-12",
                                          [](std::uint64_t p, unsigned a, double) {
                                            return (p == 2 && a == 2) || (p == 3 && a == 1) ? 1.0 : 0.0;
                                          },
                                          GrowthForm::One, GrowthForm::One, 2, 0.0};
  const auto d12 = decompose_S_log(one12, fx.t, fx.f, 12);
  CHECK(d12.S == 4.0);  // n = 1, 3, 4, 12
  CHECK(d12.S2 == doctest::Approx(2 * std::log(3.0)));
  CHECK(d12.S3 == doctest::Approx(2 * std::log(4.0)));

  for (const auto& w : {abs_mu_weight(), abs_lambda_mu_weight(), abs_lambda_kfree_weight(3)}) {
    for (std::uint64_t x : {100, 1000, 100000}) {
      const auto d = decompose_S_log(w, fx.t, fx.f, x);
      const double target = d.S * std::log(static_cast<double>(x));
      CHECK(std::fabs(d.total() - target) <= 1e-10 * target);
      CHECK(d.S <= static_cast<double>(x) * d.L);
    }
  }
  CHECK(decompose_S_log(abs_mu_weight(), fx.t, fx.f, 1000).S3 == 0.0);
  CHECK(decompose_S_log(abs_lambda_kfree_weight(3), fx.t, fx.f, 1000).S3 > 0.0);
}

TEST_CASE("estimate A against a Chebyshev theta oracle") {
  const auto& fx = fixture();
  const std::uint64_t grid[] = {1000, 10000, 100000};
  double want = 0.0;
  for (std::uint64_t x : grid) {
    const double xd = static_cast<double>(x);
    want = std::max(want, oracle::chebyshev_theta(x) / (xd * std::sqrt(std::log(xd))));
  }
  CHECK(estimate_A(abs_mu_weight(GrowthForm::SqrtLog), grid, fx.t, fx.f) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("estimate B") {
  const auto& fx = fixture();
  CHECK(estimate_B(abs_lambda_mu_weight(), fx.src) == 0.0);
  CHECK(estimate_B(abs_mu_weight(), fx.src) == 0.0);
  const double b3 = estimate_B(abs_lambda_kfree_weight(3), fx.src);
  CHECK(std::isfinite(b3));
  CHECK(b3 > 0.0);
  // |lambda(p^2)| <= 3 under Ramanujan, so B <= 3 * 2 sum_p log p / p^2 < 3 * 2 * 0.5
  CHECK(b3 < 3.0);
  auto wide = abs_lambda_kfree_weight(5);
  wide.envelope_theta = 0.6;
  CHECK_THROWS_AS(estimate_B(wide, fx.src), DivergentTail);
  CHECK(prime_log_tail(1e6, 2.0, 1.0) == doctest::Approx(1e-6));
}

TEST_CASE("lemma 6 inequality instances") {
  const auto& fx = fixture();
  const std::uint64_t grid[] = {1000, 10000, 100000};
  const auto unit = verify_lemma6(unit_weight(), 0.0, 0.0, grid, fx.t, fx.f);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(unit.lhs[i] == 1.0);
    const double x = static_cast<double>(grid[i]);
    CHECK(unit.rhs[i] == doctest::Approx(x / std::log(x)));
  }
  CHECK(unit.verdict == Verdict::Holds);

  for (const auto& w : {abs_mu_weight(), abs_lambda_mu_weight(), abs_lambda_kfree_weight(3)}) {
    const double A = estimate_A(w, grid, fx.t, fx.f);
    const double B = estimate_B(w, fx.src);
    const auto r = verify_lemma6(w, A, B, grid, fx.t, fx.f);
    CHECK(r.verdict == Verdict::Holds);
    CHECK(r.kind == ClaimKind::Unconditional);
  }
}
