#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

namespace hecke {

/// Worker budget for table construction and streaming sums. Every parallel
/// routine in this library produces bit-identical output for any value.
struct Exec {
  unsigned workers = 1;
};

/// Runs fn(block) for every block in [0, n_blocks). Blocks are claimed
/// dynamically, so fn must only write block-local output.
template <class Fn>
void parallel_blocks(std::size_t n_blocks, unsigned workers, Fn&& fn) {
  if (workers <= 1 || n_blocks <= 1) {
    for (std::size_t b = 0; b < n_blocks; ++b) fn(b);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (;;) {
      const std::size_t b = next.fetch_add(1);
      if (b >= n_blocks) return;
      try {
        fn(b);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n_blocks);
        return;
      }
    }
  };
  const unsigned n_threads = static_cast<unsigned>(std::min<std::size_t>(workers, n_blocks));
  {
    std::vector<std::jthread> pool;
    pool.reserve(n_threads);
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(run);
  }
  if (error) std::rethrow_exception(error);
}

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double v) noexcept {
    add(v);
    return *this;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline constexpr std::uint64_t kReductionChunk = std::uint64_t{1} << 16;

/// Streams term(n, out) for n = 1..x_end over K channels and returns the
/// running totals at each checkpoint (ascending, each in [1, x_end]).
///
/// The range is cut into fixed chunks of 2^16 integers; each chunk is summed
/// independently (split at checkpoints) and the pieces are merged strictly in
/// order, so the result does not depend on the worker count.
template <std::size_t K, class Term>
std::vector<std::array<double, K>> ordered_prefix_sums(std::uint64_t x_end,
                                                       std::span<const std::uint64_t> checkpoints,
                                                       Exec exec, Term&& term) {
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] < 1 || checkpoints[i] > x_end ||
        (i > 0 && checkpoints[i] <= checkpoints[i - 1])) {
      throw std::invalid_argument("checkpoints must be strictly increasing within [1, x_end]");
    }
  }
  using Piece = std::array<double, K>;
  const std::size_t n_chunks = static_cast<std::size_t>((x_end + kReductionChunk - 1) / kReductionChunk);
  std::vector<std::vector<Piece>> pieces(n_chunks);

  parallel_blocks(n_chunks, exec.workers, [&](std::size_t c) {
    const std::uint64_t lo = 1 + c * kReductionChunk;
    const std::uint64_t hi = std::min<std::uint64_t>(x_end, lo + kReductionChunk - 1);
    auto cp = std::lower_bound(checkpoints.begin(), checkpoints.end(), lo);
    std::array<CompensatedSum, K> acc{};
    Piece out{};
    auto& local = pieces[c];
    for (std::uint64_t n = lo; n <= hi; ++n) {
      out.fill(0.0);
      term(n, out);
      for (std::size_t k = 0; k < K; ++k) acc[k].add(out[k]);
      if (cp != checkpoints.end() && *cp == n) {
        Piece closed;
        for (std::size_t k = 0; k < K; ++k) closed[k] = acc[k].value();
        local.push_back(closed);
        acc = {};
        ++cp;
      }
    }
    Piece rest;
    for (std::size_t k = 0; k < K; ++k) rest[k] = acc[k].value();
    local.push_back(rest);
  });

  std::vector<Piece> result;
  result.reserve(checkpoints.size());
  std::array<CompensatedSum, K> running{};
  for (const auto& local : pieces) {
    for (std::size_t i = 0; i < local.size(); ++i) {
      for (std::size_t k = 0; k < K; ++k) running[k].add(local[i][k]);
      if (i + 1 < local.size()) {
        Piece snap;
        for (std::size_t k = 0; k < K; ++k) snap[k] = running[k].value();
        result.push_back(snap);
      }
    }
  }
  return result;
}

}  // namespace hecke
