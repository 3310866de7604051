#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "epcl/core.hpp"

namespace test {

using epcl::cd;
using epcl::Lattice;
using epcl::SiteIndex;
using epcl::SiteWindow;
using epcl::StateVector;

inline constexpr double pi = std::numbers::pi;
inline constexpr cd I{0.0, 1.0};

inline Lattice random_lattice(SiteWindow w, std::uint64_t seed, bool complex_entries = true) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cd> kappa(w.size()), v(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    kappa[i] = {1.0 + 0.4 * u(rng), complex_entries ? 0.4 * u(rng) : 0.0};
    v[i] = {u(rng), complex_entries ? 0.5 * u(rng) : 0.0};
  }
  return Lattice(w, std::move(kappa), std::move(v), 1.0);
}

inline StateVector random_state(SiteWindow w, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  StateVector s(w);
  for (SiteIndex n = w.n_min; n <= w.n_max; ++n) s[n] = {g(rng), g(rng)};
  return s;
}

inline double max_diff(const StateVector& a, const StateVector& b, SiteWindow w) {
  double m = 0.0;
  for (SiteIndex n = w.n_min; n <= w.n_max; ++n) m = std::max(m, std::abs(a[n] - b[n]));
  return m;
}

inline double max_diff(const StateVector& a, const StateVector& b) { return max_diff(a, b, a.window()); }

inline double max_abs(const StateVector& a) {
  double m = 0.0;
  for (cd z : a.amplitudes()) m = std::max(m, std::abs(z));
  return m;
}

/// Expects `expr` to throw epcl::Error of `kind`.
#define CHECK_ERROR_KIND(expr, kind_value)                         \
  do {                                                             \
    bool thrown_ = false;                                          \
    try {                                                          \
      (void)(expr);                                                \
    } catch (const epcl::Error& e_) {                              \
      thrown_ = true;                                              \
      CHECK(e_.kind() == (kind_value));                            \
    }                                                              \
    CHECK_MESSAGE(thrown_, "expected an epcl::Error");             \
  } while (false)

}  // namespace test
