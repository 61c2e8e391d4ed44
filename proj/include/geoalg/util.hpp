#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <random>
#include <thread>
#include <vector>

#include "geoalg/poly.hpp"

namespace geoalg {

/// Seeded source of small exact rationals: numerator and denominator
/// magnitudes are at most 97, zero excluded.
class RationalSampler {
 public:
  explicit RationalSampler(std::uint64_t seed) : rng_(seed) {}

  Rational next() {
    std::uniform_int_distribution<int> num(-97, 97), den(1, 97);
    int p = 0;
    while (p == 0) p = num(rng_);
    Rational r(p, den(rng_));
    r.canonicalize();
    return r;
  }

  /// Value for every variable, in the given order.
  Bindings point(const std::vector<Sym>& vars) {
    Bindings b;
    for (Sym v : vars) b[v] = Poly(next());
    return b;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Worker count: GEOALG_THREADS if set and positive, else the hardware count.
inline unsigned thread_count() {
  if (const char* s = std::getenv("GEOALG_THREADS")) {
    int v = std::atoi(s);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs f(i) for i in [0, n) on up to thread_count() threads. The first
/// exception thrown by any task is rethrown after all workers join.
template <class F>
void parallel_for(std::size_t n, F f) {
  unsigned t = std::min<std::size_t>(thread_count(), n);
  if (t <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < t; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < n;) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace geoalg
