#pragma once

#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hecke/errors.hpp"
#include "hecke/prime_source.hpp"
#include "hecke/sieve.hpp"

// Prime coefficient file: one "<p> <lambda_p>" record per line, '#' starts a
// comment, primes strictly increasing, values printed with 17 significant
// digits so that reading back reproduces the doubles exactly.

namespace hecke {

namespace detail {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  b %= m;
  while (e) {
    if (e & 1) r = mul_mod(r, b, m);
    b = mul_mod(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace detail

/// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = detail::pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = detail::mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline PrimeCoefficientSource read_coefficient_stream(std::istream& in, std::string origin = "stream") {
  std::vector<std::pair<std::uint64_t, double>> entries;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    throw ParseError(origin + ":" + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string p_text, v_text, extra;
    if (!(fields >> p_text)) continue;
    if (!(fields >> v_text)) fail("expected '<p> <lambda_p>'");
    if (fields >> extra) fail("trailing field '" + extra + "'");

    errno = 0;
    char* end = nullptr;
    const unsigned long long p = std::strtoull(p_text.c_str(), &end, 10);
    if (errno != 0 || *end != '\0' || p_text[0] == '-') fail("bad prime '" + p_text + "'");
    errno = 0;
    const double v = std::strtod(v_text.c_str(), &end);
    if (errno == ERANGE || *end != '\0') fail("bad coefficient '" + v_text + "'");
    if (!std::isfinite(v)) fail("non-finite coefficient");
    if (!is_prime_u64(p)) fail(std::to_string(p) + " is not prime");
    if (!entries.empty() && p <= entries.back().first) fail("primes must be strictly increasing");
    entries.emplace_back(p, v);
  }
  return PrimeCoefficientSource::from_entries(std::move(entries), std::move(origin));
}

inline PrimeCoefficientSource read_coefficient_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open coefficient file '" + path + "'");
  return read_coefficient_stream(in, path);
}

/// Writes lambda_p for every prime p <= x_max of the factor table.
inline void write_coefficients(std::ostream& out, const PrimeCoefficientSource& source,
                               const FactorTable& factors, std::uint64_t x_max) {
  out << "# prime coefficients, source " << source.descriptor() << ", p <= " << x_max << '\n';
  const auto primes = factors.primes();
  const std::size_t count = factors.prime_pi(x_max);
  char buf[64];
  for (std::size_t i = 0; i < count; ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", source.value(primes[i], i));
    out << primes[i] << ' ' << buf << '\n';
  }
}

}  // namespace hecke
