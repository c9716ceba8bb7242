#pragma once

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "hecke/hecke.hpp"

namespace hecke::cli {

enum Exit : int { kOk = 0, kViolated = 1, kUsage = 2 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::uint64_t x_max = 1'000'000;
  std::string model = "sato-tate";
  std::string coeffs;
  std::uint64_t seed = 0;
  std::string sign = "plus";
  std::vector<std::uint64_t> grid;  // empty: powers of 10 from 1e3 to x_max
  int k = 3;
  std::string epsilon = "1/64";
  std::string out_dir;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
};

/// "P/Q" or a decimal; must be positive.
inline double parse_epsilon(const std::string& text) {
  const auto slash = text.find('/');
  double v = 0.0;
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      v = std::stod(text, &used);
      if (used != text.size()) throw UsageError("");
    } else {
      const std::string p = text.substr(0, slash), q = text.substr(slash + 1);
      std::size_t up = 0, uq = 0;
      const double num = std::stod(p, &up), den = std::stod(q, &uq);
      if (up != p.size() || uq != q.size() || den == 0.0) throw UsageError("");
      v = num / den;
    }
  } catch (const std::exception&) {
    throw UsageError("bad --epsilon '" + text + "' (expected P/Q)");
  }
  if (!(v > 0.0) || !std::isfinite(v)) throw UsageError("--epsilon must be positive");
  return v;
}

inline std::vector<std::uint64_t> resolve_grid(const RunConfig& cfg) {
  std::vector<std::uint64_t> g = cfg.grid;
  if (g.empty())
    for (std::uint64_t x = 1000; x <= cfg.x_max; x *= 10) g.push_back(x);
  if (g.empty()) throw UsageError("grid is empty: --x-max below 1000 needs an explicit --grid");
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i > 0 && g[i] <= g[i - 1]) throw UsageError("--grid must be strictly ascending");
  }
  if (g.back() > cfg.x_max) throw UsageError("--grid exceeds --x-max");
  return g;
}

inline void validate(const RunConfig& cfg) {
  if (cfg.x_max < 2) throw UsageError("--x-max must be at least 2");
  if (cfg.x_max > kMaxTableSize) throw UsageError("--x-max above " + std::to_string(kMaxTableSize));
  if (cfg.k < 2) throw UsageError("--k must be >= 2");
  if (cfg.workers < 1) throw UsageError("--workers must be >= 1");
  parse_epsilon(cfg.epsilon);
  if (cfg.model == "file" && cfg.coeffs.empty()) throw UsageError("--model file needs --coeffs PATH");
}

inline PrimeCoefficientSource make_source(const RunConfig& cfg) {
  if (cfg.model == "file") return read_coefficient_file(cfg.coeffs);
  if (cfg.model == "sato-tate") return PrimeCoefficientSource::sato_tate(cfg.seed);
  return PrimeCoefficientSource::stress(cfg.sign == "alternating" ? SignRule::Alternating : SignRule::AllPlus);
}

inline std::filesystem::path output_dir(const RunConfig& cfg) {
  if (!cfg.out_dir.empty()) return cfg.out_dir;
  if (const char* env = std::getenv("HECKE_SUM_LAB_OUT"); env && *env) return env;
  return ".";
}

struct Tables {
  FactorTable factors;
  PrimeCoefficientSource source;
  CoefficientTable table;
};

inline Tables build_tables(const RunConfig& cfg, bool with_lambda_star) {
  const Exec exec{cfg.workers};
  auto factors = FactorTable::build(cfg.x_max, exec);
  auto source = make_source(cfg);
  auto table = CoefficientTable::build(source, factors, cfg.x_max, exec);
  if (with_lambda_star) table.build_lambda_star(factors, exec);
  return {std::move(factors), std::move(source), std::move(table)};
}

inline int cmd_verify(const RunConfig& cfg, const std::string& claim, const std::string& weight, std::ostream& out,
                      std::ostream& err) {
  if (std::find(claim_names().begin(), claim_names().end(), claim) == claim_names().end())
    throw UsageError("unknown claim '" + claim + "'");
  const auto grid = resolve_grid(cfg);
  const auto t = build_tables(cfg, claim_needs_lambda_star(claim));
  LabContext ctx{t.factors, t.table, t.source, Exec{cfg.workers}, parse_epsilon(cfg.epsilon),
                 static_cast<unsigned>(cfg.k), weight};
  const auto reports = run_claim(claim, ctx, grid);

  const auto dir = output_dir(cfg);
  std::filesystem::create_directories(dir);
  const auto path = dir / (claim + ".csv");
  {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    write_report_csv(f, reports);
  }
  if (claim == "remark1") {
    std::ofstream f(dir / "remark1-density.csv");
    f << "x,ratio,envelope,abs_lambda_sum,reference_curve\n";
    for (const auto& r : remark1_density(ctx, grid))
      f << r.x << ',' << format_double(r.ratio) << ',' << format_double(r.envelope) << ','
        << format_double(r.abs_lambda) << ',' << format_double(r.reference) << '\n';
  }
  if (claim == "eq3") {
    err << "coefficientwise lambda^4 > lambda* at " << coefficientwise_majorant_violations(t.table, grid.back())
        << " of n <= " << grid.back() << " (partial sums are what is checked)\n";
  }
  out << "source " << t.source.descriptor() << ", grid " << grid.front() << ".." << grid.back() << '\n';
  for (const auto& r : reports) {
    double worst = 0.0;
    for (double v : r.ratio) worst = std::max(worst, v);
    out << r.claim_id << ' ' << verdict_name(r.verdict) << " max_ratio=" << format_double(worst)
        << " constant=" << format_double(r.calibrated_constant) << '\n';
  }
  out << "wrote " << path.string() << '\n';
  return worst_verdict(reports) == Verdict::Violated ? kViolated : kOk;
}

inline int cmd_rho(double u_max, double step, std::ostream& out) {
  if (!(step > 0.0)) throw DomainError("--step must be positive");
  if (!(u_max >= 0.0)) throw DomainError("--u-max must be nonnegative");
  const auto rho = build_rho(std::max(1.0, u_max));
  const int decimals = std::max(0, static_cast<int>(std::ceil(-std::log10(step) - 1e-9)));
  const auto rows = static_cast<std::uint64_t>(std::floor(u_max / step + 1e-9));
  out << "u,rho\n";
  char buf[64];
  for (std::uint64_t i = 0; i <= rows; ++i) {
    const double u = std::min(u_max, static_cast<double>(i) * step);
    std::snprintf(buf, sizeof buf, "%.*f", decimals, u);
    out << buf << ',' << format_double(rho(u)) << '\n';
  }
  return kOk;
}

inline int cmd_psi(std::uint64_t x, double y, std::ostream& out, std::ostream& err) {
  const auto t = FactorTable::build(std::max<std::uint64_t>(x, 2));
  const auto c = psi_exact(x, y, t);
  out << "x,y,dfs,scan\n" << x << ',' << format_double(y) << ',' << c.dfs << ',' << c.scan << '\n';
  if (!c.agree()) {
    err << "psi mismatch: dfs " << c.dfs << " vs scan " << c.scan << '\n';
    return kViolated;
  }
  return kOk;
}

inline int cmd_sums(const RunConfig& cfg, const std::string& weight_text, std::ostream& out) {
  const auto weight = WeightSpec::parse(weight_text);
  std::vector<std::uint64_t> cps = cfg.grid;
  if (cps.empty()) {
    for (std::uint64_t x = 10; x < cfg.x_max; x *= 10) cps.push_back(x);
    cps.push_back(cfg.x_max);
  } else {
    resolve_grid(cfg);
  }
  const auto t = build_tables(cfg, false);
  const auto s = partial_sums(t.table, t.factors, weight, cps, Exec{cfg.workers});
  out << "x,S,L\n";
  for (std::size_t i = 0; i < s.checkpoints.size(); ++i)
    out << s.checkpoints[i] << ',' << format_double(s.S_values[i]) << ',' << format_double(s.L_values[i]) << '\n';
  return kOk;
}

inline int cmd_gen_coeffs(const RunConfig& cfg, const std::string& file, std::ostream& out) {
  if (cfg.model == "file") throw UsageError("gen-coeffs needs a generated model (sato-tate or stress)");
  const auto factors = FactorTable::build(cfg.x_max, Exec{cfg.workers});
  const auto source = make_source(cfg);
  std::ofstream f(file);
  if (!f) throw std::runtime_error("cannot write " + file);
  write_coefficients(f, source, factors, cfg.x_max);
  f.close();
  if (!f) throw std::runtime_error("write failed for " + file);
  out << "wrote " << factors.prime_pi(cfg.x_max) << " primes to " << file << '\n';
  return kOk;
}

/// Full command line entry point; returns the process exit code.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Partial sums of Hecke eigenvalues over squarefree and k-free integers"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file; command-line flags take precedence");
  app.allow_config_extras(false);

  RunConfig cfg;
  std::vector<std::string> grid_items;
  app.add_option("--x-max", cfg.x_max, "largest n tabulated")->capture_default_str();
  app.add_option("--model", cfg.model, "prime coefficient model")
      ->check(CLI::IsMember({"file", "sato-tate", "stress"}))
      ->capture_default_str();
  app.add_option("--coeffs", cfg.coeffs, "coefficient file for --model file");
  app.add_option("--seed", cfg.seed, "sato-tate seed")->capture_default_str();
  app.add_option("--sign", cfg.sign, "stress sign rule")
      ->check(CLI::IsMember({"plus", "alternating"}))
      ->capture_default_str();
  app.add_option("--grid", grid_items, "checkpoints a,b,c (default powers of 10 from 1e3)")->delimiter(',');
  app.add_option("--k", cfg.k, "k for k-free weights")->capture_default_str();
  app.add_option("--epsilon", cfg.epsilon, "epsilon as P/Q")->capture_default_str();
  app.add_option("--out", cfg.out_dir, "output directory (default $HECKE_SUM_LAB_OUT or .)");
  app.add_option("--workers", cfg.workers, "worker threads")->capture_default_str();

  std::string claim, lemma6_weight = "abs-lambda-mu";
  auto* verify = app.add_subcommand("verify", "check one claim over the grid and write <claim>.csv");
  verify->add_option("claim", claim, "claim id")->required();
  verify->add_option("--weight", lemma6_weight, "weight for lemma6")
      ->check(CLI::IsMember({"abs-mu", "abs-lambda-mu", "abs-lambda-kfree", "unit"}))
      ->capture_default_str();

  double u_max = 5.0, step = 0.01;
  auto* rho = app.add_subcommand("rho", "Dickman rho table as u,rho");
  rho->add_option("--u-max", u_max)->capture_default_str();
  rho->add_option("--step", step)->capture_default_str();

  std::uint64_t psi_x = 100;
  double psi_y = 5.0;
  auto* psi = app.add_subcommand("psi", "count y-smooth n <= x by two algorithms");
  psi->add_option("--x", psi_x)->required();
  psi->add_option("--y", psi_y)->required();

  std::string weight_text;
  auto* sums = app.add_subcommand("sums", "partial sums S and L of a weight as x,S,L");
  sums->add_option("--weight", weight_text, "e.g. abs-mu, abs-lambda-mu, abs-lambda*kfree-3, one/n")->required();

  std::string coeff_out;
  auto* gen = app.add_subcommand("gen-coeffs", "write lambda_p for p <= x_max");
  gen->add_option("--out", coeff_out, "output file")->required();

  for (auto* sub : {verify, rho, psi, sums, gen}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kUsage;
  }

  try {
    for (const auto& item : grid_items) {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size() || !(v >= 1.0) || v != std::floor(v)) throw UsageError("bad grid entry '" + item + "'");
      cfg.grid.push_back(static_cast<std::uint64_t>(v));
    }
    validate(cfg);
    if (*verify) return cmd_verify(cfg, claim, lemma6_weight, out, err);
    if (*rho) return cmd_rho(u_max, step, out);
    if (*psi) return cmd_psi(psi_x, psi_y, out, err);
    if (*sums) return cmd_sums(cfg, weight_text, out);
    if (*gen) return cmd_gen_coeffs(cfg, coeff_out, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kUsage;
  } catch (const OutOfRange& e) {
    err << "out of range: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kViolated;
  }
  return kUsage;
}

}  // namespace hecke::cli
