#pragma once

#include "horolab/error.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <type_traits>
#include <vector>

namespace horolab::quad {

// Gauss-Legendre nodes and weights on [-1, 1].
struct Rule {
  std::vector<double> x;
  std::vector<double> w;
  int size() const { return static_cast<int>(x.size()); }
};

// Supported sizes: 4, 8, 16, 20, 32, 64.
const Rule& gauss_legendre(int nodes);

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }

template <class F>
auto fixed(const F& f, double a, double b, const Rule& r) {
  using R = std::decay_t<decltype(f(a))>;
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  R sum{};
  for (int i = 0; i < r.size(); ++i) sum += r.w[i] * f(mid + half * r.x[i]);
  return sum * half;
}

template <class F>
auto composite(const F& f, double a, double b, int panels, const Rule& r) {
  using R = std::decay_t<decltype(f(a))>;
  const double h = (b - a) / panels;
  R sum{};
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double hi = (p + 1 == panels) ? b : lo + h;
    sum += fixed(f, lo, hi, r);
  }
  return sum;
}

namespace detail {

inline constexpr double kRoundoff = 64.0 * std::numeric_limits<double>::epsilon();

template <class F, class R>
R adaptive_step(const F& f, double a, double b, const R& whole, const Rule& r,
                double tol, int depth, int max_depth) {
  const double m = 0.5 * (a + b);
  const R left = fixed(f, a, m, r);
  const R right = fixed(f, m, b, r);
  const R both = left + right;
  const double diff = magnitude(both - whole);
  if (diff <= tol || diff <= kRoundoff * (magnitude(left) + magnitude(right))) return both;
  // Below this width a jump cannot be resolved further.
  if (b - a <= kRoundoff * std::max(std::abs(a), std::abs(b))) return both;
  if (depth >= max_depth)
    raise(ErrorCode::convergence,
          "adaptive quadrature did not converge on [" + std::to_string(a) + ", " +
              std::to_string(b) + "]");
  const double next = std::max(0.5 * tol, std::numeric_limits<double>::min());
  return adaptive_step(f, a, m, left, r, next, depth + 1, max_depth) +
         adaptive_step(f, m, b, right, r, next, depth + 1, max_depth);
}

}  // namespace detail

// Adaptive panel bisection. The local acceptance threshold is rel_tol times the
// magnitude of a coarse first estimate (or abs_tol if larger).
template <class F>
auto adaptive(const F& f, double a, double b, double rel_tol, int nodes = 32,
              double abs_tol = 0.0, int max_depth = 48) {
  using R = std::decay_t<decltype(f(a))>;
  if (a == b) return R{};
  const Rule& r = gauss_legendre(nodes);
  const R coarse = composite(f, a, b, 4, r);
  const double scale = magnitude(coarse);
  const double tol = std::max(rel_tol * scale, abs_tol);
  if (tol == 0.0) {
    const R fine = composite(f, a, b, 8, r);
    if (magnitude(fine) == 0.0) return fine;
    return adaptive(f, a, b, rel_tol, nodes, rel_tol * magnitude(fine), max_depth);
  }
  const double h = 0.25 * (b - a);
  R sum{};
  for (int p = 0; p < 4; ++p) {
    const double lo = a + p * h;
    const double hi = (p == 3) ? b : lo + h;
    sum += detail::adaptive_step(f, lo, hi, fixed(f, lo, hi, r), r, 0.25 * tol, 0, max_depth);
  }
  return sum;
}

}  // namespace horolab::quad
