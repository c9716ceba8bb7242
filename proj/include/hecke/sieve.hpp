#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "hecke/errors.hpp"
#include "hecke/parallel.hpp"
#include "hecke/zeta.hpp"

namespace hecke {

inline constexpr std::uint64_t kMaxTableSize = 100'000'000;
inline constexpr std::uint64_t kSieveSegment = std::uint64_t{1} << 20;

struct PrimePower {
  std::uint64_t prime = 0;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Canonical factorization, primes ascending.
struct Factorization {
  std::vector<PrimePower> pairs;

  std::uint64_t value() const {
    std::uint64_t n = 1;
    for (const auto& [p, a] : pairs)
      for (unsigned i = 0; i < a; ++i) n *= p;
    return n;
  }
};

/// Integer-set membership tests used by the weighted sums.
struct SetKind {
  enum class Tag { KFree, Prime, Squarefull, SquarefreeMu };
  Tag tag = Tag::SquarefreeMu;
  unsigned k = 2;  // only meaningful for KFree

  static SetKind kfree(unsigned k) {
    if (k < 2) throw DomainError("k-free indicator needs k >= 2");
    return {Tag::KFree, k};
  }
  static SetKind prime() { return {Tag::Prime, 0}; }
  static SetKind squarefull() { return {Tag::Squarefull, 0}; }
  static SetKind squarefree() { return {Tag::SquarefreeMu, 2}; }

  std::string name() const {
    switch (tag) {
      case Tag::KFree: return "kfree-" + std::to_string(k);
      case Tag::Prime: return "prime";
      case Tag::Squarefull: return "squarefull";
      case Tag::SquarefreeMu: return "abs-mu";
    }
    return {};
  }
};

struct SmoothRoughSplit {
  std::uint64_t smooth = 1;  // m1: full prime powers with p <= L
  std::uint64_t rough = 1;   // m2: the rest
};

struct SetCount {
  std::uint64_t count = 0;
  double main_term = 0.0;
  double deviation = 0.0;  // count - main_term
};

/// Smallest-prime-factor table on [1, x_max] with the arithmetic functions
/// derived from it. spf(1) = 0 and P^+(1) = P^-(1) = 0.
class FactorTable {
 public:
  static FactorTable build(std::uint64_t x_max, Exec exec = {}) {
    if (x_max < 1) throw DomainError("factor table needs x_max >= 1");
    if (x_max > kMaxTableSize) {
      throw CapacityExceeded("x_max=" + std::to_string(x_max) + " exceeds cap " +
                             std::to_string(kMaxTableSize));
    }
    FactorTable t;
    t.x_max_ = x_max;
    t.spf_.assign(x_max + 1, 0);

    std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x_max)));
    while (root * root > x_max) --root;
    while ((root + 1) * (root + 1) <= x_max) ++root;
    std::vector<std::uint32_t> base;
    {
      std::vector<char> composite(root + 1, 0);
      for (std::uint64_t i = 2; i <= root; ++i) {
        if (composite[i]) continue;
        base.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= root; j += i) composite[j] = 1;
      }
    }

    const std::size_t n_segments = static_cast<std::size_t>((x_max + kSieveSegment) / kSieveSegment);
    std::vector<std::vector<std::uint32_t>> seg_primes(n_segments);
    parallel_blocks(n_segments, exec.workers, [&](std::size_t s) {
      const std::uint64_t lo = s * kSieveSegment;
      const std::uint64_t hi = std::min<std::uint64_t>(x_max, lo + kSieveSegment - 1);
      std::uint32_t* spf = t.spf_.data();
      for (const std::uint32_t p : base) {
        const std::uint64_t pp = std::uint64_t{p} * p;
        if (pp > hi) break;
        std::uint64_t start = std::max(pp, (lo + p - 1) / p * p);
        for (std::uint64_t j = start; j <= hi; j += p)
          if (spf[j] == 0) spf[j] = p;
      }
      auto& out = seg_primes[s];
      for (std::uint64_t n = std::max<std::uint64_t>(lo, 2); n <= hi; ++n) {
        if (spf[n] == 0) {
          spf[n] = static_cast<std::uint32_t>(n);
          out.push_back(static_cast<std::uint32_t>(n));
        }
      }
    });
    for (auto& sp : seg_primes) t.primes_.insert(t.primes_.end(), sp.begin(), sp.end());
    return t;
  }

  std::uint64_t x_max() const noexcept { return x_max_; }
  std::span<const std::uint32_t> primes() const noexcept { return primes_; }

  std::uint32_t spf(std::uint64_t n) const {
    check(n);
    return spf_[n];
  }
  bool is_prime(std::uint64_t n) const {
    check(n);
    return n >= 2 && spf_[n] == n;
  }

  /// pi(y) for y <= x_max.
  std::uint64_t prime_pi(std::uint64_t y) const {
    return static_cast<std::uint64_t>(
        std::upper_bound(primes_.begin(), primes_.end(), std::min(y, x_max_)) - primes_.begin());
  }

  /// Calls fn(p, a, p^a) for each p^a || n, primes ascending.
  template <class Fn>
  void for_each_prime_power(std::uint64_t n, Fn&& fn) const {
    check(n);
    while (n > 1) {
      const std::uint64_t p = spf_[n];
      unsigned a = 0;
      std::uint64_t pa = 1;
      do {
        n /= p;
        pa *= p;
        ++a;
      } while (n % p == 0);
      fn(p, a, pa);
    }
  }

  Factorization factorize(std::uint64_t n) const {
    Factorization f;
    for_each_prime_power(n, [&](std::uint64_t p, unsigned a, std::uint64_t) { f.pairs.push_back({p, a}); });
    return f;
  }

  int moebius(std::uint64_t n) const {
    int mu = 1;
    bool square = false;
    for_each_prime_power(n, [&](std::uint64_t, unsigned a, std::uint64_t) {
      if (a > 1) square = true;
      mu = -mu;
    });
    return square ? 0 : mu;
  }

  std::uint64_t p_plus(std::uint64_t n) const {
    std::uint64_t largest = 0;
    for_each_prime_power(n, [&](std::uint64_t p, unsigned, std::uint64_t) { largest = p; });
    return largest;
  }

  std::uint64_t p_minus(std::uint64_t n) const {
    check(n);
    return spf_[n];
  }

  std::uint64_t divisor_count(std::uint64_t n) const {
    std::uint64_t d = 1;
    for_each_prime_power(n, [&](std::uint64_t, unsigned a, std::uint64_t) { d *= a + 1; });
    return d;
  }

  bool indicator(std::uint64_t n, SetKind kind) const {
    switch (kind.tag) {
      case SetKind::Tag::Prime:
        return is_prime(n);
      case SetKind::Tag::SquarefreeMu:
      case SetKind::Tag::KFree: {
        const unsigned k = kind.tag == SetKind::Tag::KFree ? kind.k : 2;
        if (k < 2) throw DomainError("k-free indicator needs k >= 2");
        bool ok = true;
        for_each_prime_power(n, [&](std::uint64_t, unsigned a, std::uint64_t) {
          if (a >= k) ok = false;
        });
        return ok;
      }
      case SetKind::Tag::Squarefull: {
        bool ok = true;  // n = 1 is squarefull (empty product)
        for_each_prime_power(n, [&](std::uint64_t, unsigned a, std::uint64_t) {
          if (a < 2) ok = false;
        });
        return ok;
      }
    }
    return false;
  }

  /// n = m1 * m2 with m1 the product of the full prime powers p^a || n, p <= L.
  SmoothRoughSplit smooth_rough_split(std::uint64_t n, double L) const {
    SmoothRoughSplit s;
    for_each_prime_power(n, [&](std::uint64_t p, unsigned, std::uint64_t pa) {
      if (static_cast<double>(p) <= L) {
        s.smooth *= pa;
      } else {
        s.rough *= pa;
      }
    });
    return s;
  }

 private:
  void check(std::uint64_t n) const {
    if (n < 1 || n > x_max_) {
      throw OutOfRange("n=" + std::to_string(n) + " outside [1, " + std::to_string(x_max_) + "]");
    }
  }

  std::uint64_t x_max_ = 0;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
};

/// Leading term of the counting function of each set:
/// x/zeta(k) for k-free, x/zeta(2) for squarefree, zeta(3/2)/zeta(3) sqrt(x)
/// for squarefull and x/log x for primes.
inline double set_main_term(SetKind kind, double x) {
  switch (kind.tag) {
    case SetKind::Tag::KFree: return x / zeta(static_cast<double>(kind.k));
    case SetKind::Tag::SquarefreeMu: return x / zeta(2.0);
    case SetKind::Tag::Squarefull: return zeta(1.5) / zeta(3.0) * std::sqrt(x);
    case SetKind::Tag::Prime: return x / std::log(x);
  }
  return 0.0;
}

inline SetCount count_set(const FactorTable& t, std::uint64_t x, SetKind kind) {
  if (x < 1 || x > t.x_max()) {
    throw OutOfRange("count_set: x=" + std::to_string(x) + " outside table");
  }
  SetCount c;
  if (kind.tag == SetKind::Tag::Prime) {
    c.count = t.prime_pi(x);
  } else {
    for (std::uint64_t n = 1; n <= x; ++n) c.count += t.indicator(n, kind) ? 1 : 0;
  }
  c.main_term = set_main_term(kind, static_cast<double>(x));
  c.deviation = static_cast<double>(c.count) - c.main_term;
  return c;
}

}  // namespace hecke
