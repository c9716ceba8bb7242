// Acceptance checks, one PASS/FAIL line per criterion.
// Usage: acceptance [N ...]   (no arguments runs all ten)

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "hecke_lab_cli.hpp"
#include "support.hpp"

using namespace hecke;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

unsigned workers() { return std::max(2u, std::thread::hardware_concurrency()); }

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail.clear();
    pass = false;
    detail += (detail.empty() ? "" : "; ") + why;
  }
  void note(const std::string& s) {
    if (pass) detail += (detail.empty() ? "" : "; ") + s;
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

PrimeCoefficientSource file_model(std::uint64_t x_max) {
  const auto f = FactorTable::build(x_max);
  std::stringstream ss;
  write_coefficients(ss, PrimeCoefficientSource::stress(SignRule::Alternating), f, x_max);
  return read_coefficient_stream(ss, "generated");
}

// 1. Hecke relation for every mn <= 1e4 and 1e4 random mn <= 1e7, three models.
Outcome hecke_algebra() {
  Outcome o;
  const auto t0 = Clock::now();
  const std::uint64_t X = 10'000'000;
  const Exec exec{workers()};
  const auto f = FactorTable::build(X, exec);
  const PrimeCoefficientSource models[] = {PrimeCoefficientSource::sato_tate(1), PrimeCoefficientSource::stress(),
                                           file_model(X)};
  const char* names[] = {"sato-tate", "stress", "file"};
  std::mt19937_64 rng(20240611);
  for (int m = 0; m < 3; ++m) {
    const auto t = CoefficientTable::build(models[m], f, X, exec);
    std::uint64_t pairs = 0;
    for (std::uint64_t a = 1; a <= 10000; ++a)
      for (std::uint64_t b = 1; a * b <= 10000; ++b, ++pairs)
        if (verify_hecke_relation(t, a, b) > hecke_tolerance(t, a, b))
          o.fail(std::string(names[m]) + " fails at (" + std::to_string(a) + "," + std::to_string(b) + ")");
    for (int i = 0; i < 10000; ++i) {
      const std::uint64_t a = std::uniform_int_distribution<std::uint64_t>(1, X)(rng);
      const std::uint64_t b = std::uniform_int_distribution<std::uint64_t>(1, X / a)(rng);
      if (verify_hecke_relation(t, a, b) > hecke_tolerance(t, a, b))
        o.fail(std::string(names[m]) + " fails at (" + std::to_string(a) + "," + std::to_string(b) + ")");
    }
    if (m == 0) o.note(std::to_string(pairs) + " small pairs per model");
  }
  const double secs = seconds_since(t0);
  if (secs >= 30.0) o.fail("runtime " + fmt("%.1f", secs) + " s >= 30 s");
  o.note(fmt("%.1f s", secs));
  return o;
}

// 2. lambda*(p) = lambda(p)^4 for p <= 1e5 and the partial-sum inequality up to 1e6.
Outcome majorant_identity() {
  Outcome o;
  const auto t0 = Clock::now();
  const std::uint64_t X = 1'000'000;
  const Exec exec{workers()};
  const auto f = FactorTable::build(X, exec);
  for (const auto& src : {PrimeCoefficientSource::sato_tate(2), PrimeCoefficientSource::stress()}) {
    auto t = CoefficientTable::build(src, f, X, exec);
    t.build_lambda_star(f, exec);
    double worst = 0.0;
    for (std::size_t i = 0; i < f.prime_pi(100000); ++i) {
      const std::uint64_t p = f.primes()[i];
      const double l4 = std::pow(t[p], 4);
      const double rel = std::fabs(t.lambda_star(p) - l4) / (l4 > 0 ? l4 : 1.0);
      worst = std::max(worst, rel);
    }
    if (!(worst <= 1e-9)) o.fail(src.descriptor() + " lambda*(p) relative error " + fmt("%.3g", worst));
    const std::uint64_t grid[] = {1000, 10000, 100000, 1000000};
    LabContext ctx{f, t, src, exec};
    const auto r = verify_eq3(ctx, grid);
    if (find_report(r, "eq3")->verdict != Verdict::Holds) o.fail(src.descriptor() + " partial sums violate");
    o.note(src.descriptor() + " max rel " + fmt("%.2g", worst));
  }
  const double secs = seconds_since(t0);
  if (secs >= 120.0) o.fail("runtime " + fmt("%.1f", secs) + " s >= 120 s");
  return o;
}

// 3. Dickman rho.
Outcome dickman_rho() {
  Outcome o;
  const auto rho = build_rho(20.0);
  for (double u = 0.0; u <= 1.0; u += 1.0 / 64)
    if (rho(u) != 1.0) o.fail("rho(" + fmt("%g", u) + ") != 1");
  const double d2 = std::fabs(rho(2.0) - (1.0 - std::numbers::ln2));
  if (!(d2 <= 1e-9)) o.fail("rho(2) off by " + fmt("%.3g", d2));
  const double d3 = std::fabs(rho(3.0) - oracle::rho_fine_simpson(3.0, 1e-5));
  if (!(d3 <= 1e-8)) o.fail("rho(3) off by " + fmt("%.3g", d3));
  const auto v = rho.values();
  for (std::size_t i = rho.per_unit() + 1; i < v.size(); ++i)
    if (!(v[i] > 0.0 && v[i] < v[i - 1])) {
      o.fail("not positive and decreasing at index " + std::to_string(i));
      break;
    }
  o.note("|rho(2)-(1-ln2)|=" + fmt("%.2g", d2) + ", |rho(3)-oracle|=" + fmt("%.2g", d3));
  return o;
}

// 4. psi by DFS and by table scan.
Outcome psi_cross_check() {
  Outcome o;
  const auto t = FactorTable::build(100000);
  for (std::uint64_t x : {1000, 10000, 100000})
    for (double y : {10.0, 30.0, 100.0}) {
      const auto c = psi_exact(x, y, t);
      if (!c.agree())
        o.fail("psi(" + std::to_string(x) + "," + fmt("%g", y) + "): " + std::to_string(c.dfs) + " vs " +
               std::to_string(c.scan));
    }
  const auto small = psi_exact(100, 5, t);
  if (small.dfs != 34 || small.scan != 34) o.fail("psi(100,5) != 34");
  return o;
}

// 5. S log x decomposition, weight-bound verdict and B = 0 for |lambda mu|.
Outcome lemma6_engine() {
  Outcome o;
  const std::uint64_t X = 100000;
  const auto f = FactorTable::build(X);
  const std::uint64_t grid[] = {1000, 10000, 100000};
  for (const auto& src : {PrimeCoefficientSource::sato_tate(5), PrimeCoefficientSource::stress()}) {
    const auto t = CoefficientTable::build(src, f, X);
    for (const auto& w : {abs_mu_weight(), abs_lambda_mu_weight(), abs_lambda_kfree_weight(3)}) {
      for (std::uint64_t x : grid) {
        const auto d = decompose_S_log(w, t, f, x);
        const double target = d.S * std::log(static_cast<double>(x));
        if (!(std::fabs(d.total() - target) <= 1e-10 * target))
          o.fail(w.descriptor + " decomposition at " + std::to_string(x));
      }
      const double A = estimate_A(w, grid, t, f);
      const double B = estimate_B(w, src);
      const auto r = verify_lemma6(w, A, B, grid, t, f);
      if (r.verdict != Verdict::Holds) o.fail(src.descriptor() + " " + w.descriptor + " verdict " + verdict_name(r.verdict));
      if (w.descriptor == "abs-lambda-mu" && B != 0.0) o.fail("B != 0 for abs-lambda-mu");
    }
  }
  return o;
}

// 6. Unconditional inequality instances.
Outcome unconditional_instances() {
  Outcome o;
  const std::uint64_t X = 1'000'000;
  const Exec exec{workers()};
  const auto f = FactorTable::build(X, exec);
  const std::uint64_t grid[] = {1000, 10000, 100000, 1000000};
  const std::uint64_t decomposition_grid[] = {1000, 10000, 100000};
  const PrimeCoefficientSource models[] = {PrimeCoefficientSource::sato_tate(6), PrimeCoefficientSource::stress(),
                                           file_model(X)};
  for (const auto& src : models) {
    auto t = CoefficientTable::build(src, f, X, exec);
    t.build_lambda_star(f, exec);
    LabContext ctx{f, t, src, exec};
    const auto t1 = theorem1_pipeline(ctx, grid);
    if (find_report(t1, "theorem1.holder-initial")->verdict != Verdict::Holds)
      o.fail(src.descriptor() + " initial-segment Holder");
    const auto dec = theorem1_pipeline(ctx, decomposition_grid);
    if (find_report(dec, "theorem1.decomposition")->verdict != Verdict::Holds)
      o.fail(src.descriptor() + " decomposition identity");
    for (auto kind : {FourthMomentSet::Primes, FourthMomentSet::Squarefull})
      if (fourth_moment_holder(ctx, grid, kind)[1].verdict != Verdict::Holds)
        o.fail(src.descriptor() + (kind == FourthMomentSet::Primes ? " primes Holder" : " squarefull Holder"));
    for (const char* w : {"abs-mu", "abs-lambda-mu", "abs-lambda*kfree-3", "lambda4", "abs-lambda*squarefull"}) {
      const auto s = partial_sums(t, f, WeightSpec::parse(w), grid, exec);
      for (std::size_t i = 0; i < s.checkpoints.size(); ++i)
        if (!(s.S_values[i] <= static_cast<double>(s.checkpoints[i]) * s.L_values[i]))
          o.fail(src.descriptor() + " S > tL for " + w);
    }
  }
  return o;
}

// 7. Calibrated asymptotics at 1e6 and 1e7.
Outcome calibrated_asymptotics() {
  Outcome o;
  const std::uint64_t X = 10'000'000;
  const Exec exec{workers()};
  const auto f = FactorTable::build(X, exec);
  const std::uint64_t grid[] = {1000, 10000, 100000, 1000000, 10000000};
  const char* claims[] = {"lemma1", "lemma2", "lemma3", "lemma4", "lemma5", "lemma7", "lemma8", "theorem1", "theorem2"};
  for (const auto& src : {PrimeCoefficientSource::sato_tate(7), PrimeCoefficientSource::stress()}) {
    auto t = CoefficientTable::build(src, f, X, exec);
    t.build_lambda_star(f, exec);
    LabContext ctx{f, t, src, exec};
    for (const char* claim : claims) {
      const auto t0 = Clock::now();
      const auto reports = run_claim(claim, ctx, grid);
      const double secs = seconds_since(t0);
      const auto& r = reports.front();
      double cal = 0.0;
      for (std::size_t i = 0; i < 3; ++i) cal = std::max(cal, r.ratio[i]);
      for (std::size_t i = 3; i < 5; ++i) {
        if (!(r.ratio[i] <= kSafetyFactor * cal))
          o.fail(src.descriptor() + " " + claim + " ratio " + fmt("%.4g", r.ratio[i]) + " at " +
                 std::to_string(r.grid[i]) + " > 2 x " + fmt("%.4g", cal));
      }
      if (std::string(claim) == "theorem1") {
        if (secs >= 300.0) o.fail("theorem1 took " + fmt("%.1f", secs) + " s");
        o.note(src.descriptor() + " theorem1 " + fmt("%.1f s", secs));
      }
    }
  }
  return o;
}

// 8. Counting baselines at 1e6.
Outcome counting_baselines() {
  Outcome o;
  const std::uint64_t X = 1'000'000;
  const auto f = FactorTable::build(X);
  const double x = static_cast<double>(X);
  const auto sf = count_set(f, X, SetKind::squarefree());
  std::uint64_t oracle_sf = 0;
  for (std::uint64_t n = 1; n <= X; ++n) oracle_sf += oracle::moebius(n) != 0;
  if (oracle_sf != 607926) o.fail("trial-division squarefree count " + std::to_string(oracle_sf));
  if (sf.count != oracle_sf) o.fail("squarefree count " + std::to_string(sf.count));
  for (unsigned k : {2u, 3u}) {
    std::uint64_t n_kfree = 0;
    for (std::uint64_t n = 1; n <= X; ++n) {
      bool ok = true;
      f.for_each_prime_power(n, [&](std::uint64_t, unsigned a, std::uint64_t) { ok = ok && a < k; });
      n_kfree += ok;
    }
    const double dev = std::fabs(static_cast<double>(n_kfree) - x / zeta(k));
    if (!(dev <= 5.0 * std::pow(x, 1.0 / k))) o.fail(std::to_string(k) + "-free deviation " + fmt("%.1f", dev));
    o.note(std::to_string(k) + "-free dev " + fmt("%.1f", dev));
  }
  const auto sq = count_set(f, X, SetKind::squarefull());
  const double dev = std::fabs(static_cast<double>(sq.count) - zeta(1.5) / zeta(3.0) * std::sqrt(x));
  if (!(dev <= 5.0 * std::cbrt(x))) o.fail("squarefull deviation " + fmt("%.1f", dev));
  o.note("squarefull dev " + fmt("%.1f", dev));
  return o;
}

// 9. Relative density of |lambda| on squarefree integers.
Outcome remark1_density_check() {
  Outcome o;
  const std::uint64_t X = 10'000'000;
  const Exec exec{workers()};
  const auto f = FactorTable::build(X, exec);
  const std::uint64_t grid[] = {10000, 100000, 1000000, 10000000};
  {
    const auto src = PrimeCoefficientSource::sato_tate(7);
    const auto t = CoefficientTable::build(src, f, X, exec);
    const auto rows = remark1_density(LabContext{f, t, src, exec}, grid);
    for (std::size_t i = 1; i < rows.size(); ++i)
      if (!(rows[i].ratio < rows[i - 1].ratio)) o.fail("ratio not decreasing at " + std::to_string(rows[i].x));
    o.note("R(1e7)=" + fmt("%.4f", rows.back().ratio));
  }
  {
    const auto src = PrimeCoefficientSource::constant(1.0);
    const auto t = CoefficientTable::build(src, f, X, exec);
    for (const auto& row : remark1_density(LabContext{f, t, src, exec}, grid))
      if (row.ratio != 1.0) o.fail("trivial source ratio " + fmt("%.17g", row.ratio));
  }
  return o;
}

// 10. CSV output independent of worker count.
Outcome determinism() {
  Outcome o;
  const auto base = fs::temp_directory_path() / "hecke_lab_acceptance";
  fs::remove_all(base);
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  auto run = [](std::vector<std::string> args) {
    args.insert(args.begin(), "hecke_lab");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return std::make_pair(code, out.str());
  };
  const std::string n = std::to_string(workers() + 1);
  std::size_t files = 0;
  for (const std::string model : {"sato-tate", "stress"}) {
    const auto d1 = base / (model + "-1"), dn = base / (model + "-n");
    for (const auto& claim : claim_names()) {
      const std::vector<std::string> common = {"verify", claim, "--model", model, "--seed", "7", "--x-max", "200000"};
      auto a = common, b = common;
      a.insert(a.end(), {"--workers", "1", "--out", d1.string()});
      b.insert(b.end(), {"--workers", n, "--out", dn.string()});
      const auto ra = run(a), rb = run(b);
      if (ra.first != rb.first) o.fail(model + " " + claim + " exit codes differ");
      const auto ca = slurp(d1 / (claim + ".csv")), cb = slurp(dn / (claim + ".csv"));
      if (ca.empty() || ca != cb) o.fail(model + " " + claim + ".csv differs");
      ++files;
    }
    const auto sa = run({"sums", "--weight", "abs-lambda*kfree-3/n", "--model", model, "--x-max", "200000", "--workers", "1"});
    const auto sb = run({"sums", "--weight", "abs-lambda*kfree-3/n", "--model", model, "--x-max", "200000", "--workers", n});
    if (sa.second != sb.second) o.fail(model + " sums output differs");
  }
  fs::remove_all(base);
  o.note(std::to_string(files) + " CSV pairs compared");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"Hecke relation, three models", hecke_algebra},
      {"lambda* identity at primes and partial-sum majorant", majorant_identity},
      {"Dickman rho values, positivity, monotonicity", dickman_rho},
      {"psi(x,y) DFS vs table scan", psi_cross_check},
      {"S log x decomposition and weight-bound verdicts", lemma6_engine},
      {"unconditional inequality instances", unconditional_instances},
      {"calibrated asymptotics at 1e6 and 1e7", calibrated_asymptotics},
      {"counting baselines at 1e6", counting_baselines},
      {"relative density on squarefree integers", remark1_density_check},
      {"byte-identical CSV across worker counts", determinism},
  };
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
  if (which.empty())
    for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) which.push_back(i);

  bool all = true;
  for (int id : which) {
    if (id < 1 || id > static_cast<int>(criteria.size())) {
      std::printf("criterion %d: FAIL - no such criterion\n", id);
      all = false;
      continue;
    }
    Outcome o;
    try {
      o = criteria[id - 1].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::printf("criterion %d: %s - %s%s%s\n", id, o.pass ? "PASS" : "FAIL", criteria[id - 1].first,
                o.detail.empty() ? "" : " | ", o.detail.c_str());
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
