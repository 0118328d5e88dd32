#pragma once

#include <cmath>
#include <random>

namespace testutil {

inline bool close_rel(double actual, double expected, double rel_tol) {
    if (expected == 0.0) return std::abs(actual) <= rel_tol;
    return std::abs(actual - expected) <= rel_tol * std::abs(expected);
}

// Deterministic generator for property suites.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }

    // Log-uniform over [lo, hi], lo > 0.
    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }

    int uniform_int(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(engine_);
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace testutil
