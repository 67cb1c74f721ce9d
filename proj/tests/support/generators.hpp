#pragma once

// Seeded generators for property-style tests.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "holointerp/spaces.hpp"
#include "holointerp/types.hpp"

namespace holointerp::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }
  std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
  }
  Complex complex_gauss() {
    std::normal_distribution<double> g;
    const double re = g(rng_);
    return {re, g(rng_)};
  }

  CVector vector(std::size_t dim) {
    CVector v(dim);
    for (auto& z : v) z = complex_gauss();
    // Occasionally sparse, to hit the single-coordinate equality cases.
    if (uniform(0.0, 1.0) < 0.2) {
      const std::size_t keep = index(dim);
      for (std::size_t k = 0; k < dim; ++k) {
        if (k != keep && uniform(0.0, 1.0) < 0.7) v[k] = 0.0;
      }
    }
    return v;
  }

  std::vector<double> weights(std::size_t dim, double lo = 1e-2, double hi = 1e2) {
    std::vector<double> w(dim);
    for (auto& x : w) x = log_uniform(lo, hi);
    return w;
  }

  WeightedCouple couple(std::size_t dim) { return WeightedCouple(weights(dim), weights(dim)); }

  /// A couple with w0 <= w1 (embedding constant at most one).
  WeightedCouple nested_couple(std::size_t dim) {
    auto w0 = weights(dim);
    std::vector<double> w1(dim);
    for (std::size_t k = 0; k < dim; ++k) w1[k] = w0[k] * log_uniform(1.0, 50.0);
    return WeightedCouple(std::move(w0), std::move(w1));
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline double rel_diff(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

inline double max_abs_diff(CSpan a, CSpan b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

}  // namespace holointerp::testing
