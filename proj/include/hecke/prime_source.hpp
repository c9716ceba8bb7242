#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "hecke/errors.hpp"
#include "hecke/satake.hpp"

namespace hecke {

// Sato-Tate sampling: theta in [0, pi] with density (2/pi) sin^2 theta,
// lambda_p = 2 cos theta.

inline double sato_tate_cdf(double theta) {
  return (theta - std::sin(theta) * std::cos(theta)) / std::numbers::pi;
}

/// Bisection on [0, pi], 60 halvings (interval width ~3e-18).
inline double sato_tate_inverse_cdf(double u) {
  double lo = 0.0;
  double hi = std::numbers::pi;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (sato_tate_cdf(mid) < u) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Uniform in (0, 1), a pure function of (seed, key).
inline double keyed_uniform(std::uint64_t seed, std::uint64_t key) {
  const std::uint64_t h = splitmix64(splitmix64(seed) ^ key);
  return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

inline double sample_sato_tate(std::uint64_t seed, std::uint64_t p) {
  return 2.0 * std::cos(sato_tate_inverse_cdf(keyed_uniform(seed, p)));
}

/// p^{7/64} + p^{-7/64}: the largest |lambda_p| allowed by Kim-Sarnak.
inline double kim_sarnak_magnitude(std::uint64_t p) {
  const double e = std::pow(static_cast<double>(p), kKimSarnak);
  return e + 1.0 / e;
}

enum class PrimeModel { File, SatoTate, KimSarnakStress, Constant };
enum class SignRule { AllPlus, Alternating };

/// Provider of lambda_f(p). Values are pure functions of (p, index) where
/// index is the 0-based position of p in the ascending prime list.
class PrimeCoefficientSource {
 public:
  /// Entries must be strictly increasing primes with finite values; the
  /// caller (see coeff_file.hpp) is responsible for primality.
  static PrimeCoefficientSource from_entries(std::vector<std::pair<std::uint64_t, double>> entries,
                                             std::string origin = "file") {
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (i > 0 && entries[i].first <= entries[i - 1].first)
        throw ParseError("prime coefficient entries must be strictly increasing");
      if (!std::isfinite(entries[i].second))
        throw ParseError("non-finite coefficient for p=" + std::to_string(entries[i].first));
    }
    PrimeCoefficientSource s;
    s.model_ = PrimeModel::File;
    s.entries_ = std::move(entries);
    s.origin_ = std::move(origin);
    return s;
  }

  static PrimeCoefficientSource sato_tate(std::uint64_t seed) {
    PrimeCoefficientSource s;
    s.model_ = PrimeModel::SatoTate;
    s.seed_ = seed;
    return s;
  }

  static PrimeCoefficientSource stress(SignRule rule = SignRule::AllPlus) {
    PrimeCoefficientSource s;
    s.model_ = PrimeModel::KimSarnakStress;
    s.sign_ = rule;
    return s;
  }

  /// lambda_p = value at every prime; value 1 gives lambda = 1 on squarefree n.
  static PrimeCoefficientSource constant(double value) {
    PrimeCoefficientSource s;
    s.model_ = PrimeModel::Constant;
    s.constant_ = value;
    return s;
  }

  PrimeModel model() const noexcept { return model_; }
  std::uint64_t seed() const noexcept { return seed_; }
  SignRule sign_rule() const noexcept { return sign_; }
  const std::vector<std::pair<std::uint64_t, double>>& entries() const noexcept { return entries_; }

  double value(std::uint64_t p, std::uint64_t index) const {
    switch (model_) {
      case PrimeModel::SatoTate:
        return sample_sato_tate(seed_, p);
      case PrimeModel::KimSarnakStress: {
        const double mag = kim_sarnak_magnitude(p);
        return (sign_ == SignRule::Alternating && index % 2 == 1) ? -mag : mag;
      }
      case PrimeModel::Constant:
        return constant_;
      case PrimeModel::File: {
        if (index < entries_.size() && entries_[index].first == p) return entries_[index].second;
        auto it = std::lower_bound(entries_.begin(), entries_.end(), p,
                                   [](const auto& e, std::uint64_t q) { return e.first < q; });
        if (it == entries_.end() || it->first != p) throw MissingPrimeCoefficient(p);
        return it->second;
      }
    }
    return 0.0;
  }

  std::string descriptor() const {
    switch (model_) {
      case PrimeModel::SatoTate: return "sato-tate(seed=" + std::to_string(seed_) + ")";
      case PrimeModel::KimSarnakStress:
        return sign_ == SignRule::Alternating ? "stress(alternating)" : "stress(plus)";
      case PrimeModel::Constant: {
        char buf[64];
        std::snprintf(buf, sizeof buf, "constant(%.17g)", constant_);
        return buf;
      }
      case PrimeModel::File: return "file(" + origin_ + ")";
    }
    return {};
  }

 private:
  PrimeModel model_ = PrimeModel::SatoTate;
  std::uint64_t seed_ = 0;
  SignRule sign_ = SignRule::AllPlus;
  double constant_ = 1.0;
  std::vector<std::pair<std::uint64_t, double>> entries_;
  std::string origin_;
};

}  // namespace hecke
