#include "horolab/modular.hpp"

#include "horolab/error.hpp"
#include "horolab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace horolab {

namespace {

double profile(double u) {
  if (!(std::abs(u) < 1.0)) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - u * u));
}

double profile_derivative(double u) {
  if (!(std::abs(u) < 1.0)) return 0.0;
  const double w = 1.0 - u * u;
  return profile(u) * (-2.0 * u / (w * w));
}

}  // namespace

UpperHalfPoint moebius(const UnimodularMatrix& g, const UpperHalfPoint& z) {
  const double a = static_cast<double>(g.a), b = static_cast<double>(g.b);
  const double c = static_cast<double>(g.c), d = static_cast<double>(g.d);
  const double re = c * z.x + d;
  const double den = re * re + c * c * z.y * z.y;
  return {((a * z.x + b) * re + a * c * z.y * z.y) / den, z.y / den};
}

Reduction reduce(const UpperHalfPoint& z) {
  if (!(z.y > 0.0)) raise(ErrorCode::domain, "point is not in the upper half plane");
  double x = z.x, y = z.y;
  UnimodularMatrix g;
  for (int it = 0; it < 10000; ++it) {
    const double n = std::round(x);
    if (n != 0.0) {
      x -= n;
      const auto k = static_cast<std::int64_t>(n);
      g = UnimodularMatrix{1, -k, 0, 1} * g;
    }
    const double r2 = x * x + y * y;
    if (r2 >= 1.0) return {{x, y}, g};
    x = -x / r2;
    y = y / r2;
    g = UnimodularMatrix{0, -1, 1, 0} * g;
  }
  raise(ErrorCode::numeric_degeneracy, "reduction exceeded 10000 iterations");
}

bool in_fundamental_domain(const UpperHalfPoint& z, double slack) {
  return std::abs(z.x) <= 0.5 + slack && z.x * z.x + z.y * z.y >= 1.0 - slack;
}

BumpTestFunction::BumpTestFunction(UpperHalfPoint center, double wx, double wy, double amplitude)
    : center_(center), wx_(wx), wy_(wy), amplitude_(amplitude) {
  if (!(wx > 0.0 && wy > 0.0) || !std::isfinite(wx) || !std::isfinite(wy))
    raise(ErrorCode::domain, "bump half-widths must be positive");
  if (!std::isfinite(amplitude) || !std::isfinite(center.x) || !std::isfinite(center.y))
    raise(ErrorCode::domain, "bump parameters must be finite");
  if (y_lo() < 0.5 || y_hi() > 10.0)
    raise(ErrorCode::domain, "bump support must have y-range within [0.5, 10]");
  if (x_lo() < -0.5 || x_hi() > 0.5)
    raise(ErrorCode::domain, "bump support must satisfy |x| <= 1/2");
  const double min_x2 = (x_lo() <= 0.0 && x_hi() >= 0.0)
                            ? 0.0
                            : std::min(x_lo() * x_lo(), x_hi() * x_hi());
  if (min_x2 + y_lo() * y_lo() < 1.0)
    raise(ErrorCode::domain, "bump support must lie outside the unit circle");
}

BumpTestFunction BumpTestFunction::default_bump() { return {{0.0, 2.0}, 0.4, 0.8, 1.0}; }

double BumpTestFunction::operator()(double x, double y) const {
  if (amplitude_ == 0.0) return 0.0;
  return amplitude_ * profile((x - center_.x) / wx_) * profile((y - center_.y) / wy_);
}

double BumpTestFunction::dy(double x, double y) const {
  if (amplitude_ == 0.0) return 0.0;
  return amplitude_ * profile((x - center_.x) / wx_) *
         profile_derivative((y - center_.y) / wy_) / wy_;
}

double BumpTestFunction::automorphic(double x, double y) const {
  const UpperHalfPoint p = reduce({x, y}).point;
  return (*this)(p.x, p.y);
}

void QuadratureSpec::validate() const {
  if (panels_x < 1 || panels_y < 1) raise(ErrorCode::config, "panel counts must be positive");
  if (nodes_per_panel < 1) raise(ErrorCode::config, "nodes per panel must be positive");
  quad::gauss_legendre(nodes_per_panel);
  if (!(tol > 0.0)) raise(ErrorCode::config, "quadrature tolerance must be positive");
  if (max_doublings < 1) raise(ErrorCode::config, "max_doublings must be positive");
}

double horocycle_integral_at(const BumpTestFunction& F, double y, const QuadratureSpec& q) {
  q.validate();
  if (F.amplitude() == 0.0) return 0.0;
  const quad::Rule& rule = quad::gauss_legendre(q.nodes_per_panel);
  const auto f = [&](double x) { return F.automorphic(x, y); };
  int panels = q.panels_x;
  double prev = quad::composite(f, 0.0, 1.0, panels, rule);
  for (int k = 0; k < q.max_doublings; ++k) {
    panels *= 2;
    const double cur = quad::composite(f, 0.0, 1.0, panels, rule);
    if (std::abs(cur - prev) <= q.tol * std::abs(cur)) return cur;
    prev = cur;
  }
  std::ostringstream os;
  os << "horocycle quadrature did not reach tolerance " << q.tol << " at y = " << y << " with "
     << panels << " panels";
  raise(ErrorCode::convergence, os.str());
}

double horocycle_average(const BumpTestFunction& F, double T, const QuadratureSpec& q) {
  if (!(T >= 1.0)) raise(ErrorCode::domain, "horocycle height T must be >= 1");
  return horocycle_integral_at(F, 1.0 / T, q);
}

namespace {

constexpr std::int64_t kMaxEnumeration = 50'000'000;

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    const std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

void check_index_range(double v) {
  if (!(std::abs(v) < 1e15)) raise(ErrorCode::capacity, "coset enumeration bound overflows");
}

}  // namespace

std::vector<Coset> kernel_cosets(const ThickKernel& k, const UpperHalfPoint& z) {
  if (k.n() != 1) raise(ErrorCode::domain, "automorphization needs an n = 1 kernel");
  if (!(z.y > 0.0)) raise(ErrorCode::domain, "point is not in the upper half plane");
  std::vector<Coset> out;
  if (k(z.y) != 0.0) out.push_back({0, 1});
  const double ymin = k.y_min();
  const double cmax_f = std::sqrt(1.0 / (z.y * ymin));
  check_index_range(cmax_f);
  const auto cmax = static_cast<std::int64_t>(std::ceil(cmax_f));
  std::int64_t visited = 0;
  for (std::int64_t c = 1; c <= cmax; ++c) {
    const double cd = static_cast<double>(c);
    const double r2 = z.y / ymin - cd * cd * z.y * z.y;
    if (r2 < 0.0) continue;
    const double r = std::sqrt(r2) * (1.0 + 1e-12) + 1e-12;
    const double lo = -cd * z.x - r;
    const double hi = -cd * z.x + r;
    check_index_range(lo);
    check_index_range(hi);
    visited += static_cast<std::int64_t>(hi - lo) + 1;
    if (visited > kMaxEnumeration) raise(ErrorCode::capacity, "coset enumeration too large");
    for (auto d = static_cast<std::int64_t>(std::floor(lo));
         d <= static_cast<std::int64_t>(std::ceil(hi)); ++d) {
      if (gcd64(c, d) != 1) continue;
      const double re = cd * z.x + static_cast<double>(d);
      const double Y = z.y / (re * re + cd * cd * z.y * z.y);
      if (k(Y) != 0.0) out.push_back({c, d});
    }
  }
  return out;
}

double automorphized_kernel(const ThickKernel& k, const UpperHalfPoint& z) {
  return k.constant() * static_cast<double>(kernel_cosets(k, z).size());
}

namespace {

// Open interval (lo, hi) of reals; empty when lo >= hi.
struct Interval {
  double lo, hi;
  bool empty() const { return !(lo < hi); }
};

// Roots of a y^2 + b y + c (a > 0); empty when no real roots.
Interval quadratic_roots(double a, double b, double c) {
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return {1.0, 0.0};
  const double sq = std::sqrt(disc);
  const double q = -0.5 * (b + (b >= 0.0 ? sq : -sq));
  double r1 = q / a, r2 = q != 0.0 ? c / q : r1;
  if (r1 > r2) std::swap(r1, r2);
  return {r1, r2};
}

bool meets(const Interval& base, const Interval& keep, const Interval& remove) {
  Interval a{std::max(base.lo, keep.lo), std::min(base.hi, keep.hi)};
  if (a.empty()) return false;
  if (remove.empty()) return true;
  return a.lo < remove.lo || a.hi > remove.hi;
}

bool coset_meets_box(const BumpTestFunction& F, const ThickKernel& k, const Coset& cs) {
  const Interval box_y{F.y_lo(), F.y_hi()};
  if (cs.c == 0) return cs.d == 1 && !Interval{std::max(box_y.lo, k.y_min()),
                                                std::min(box_y.hi, k.y_max())}
                                           .empty();
  const double c = static_cast<double>(cs.c);
  const double p = -static_cast<double>(cs.d) / c;
  double dmin = 0.0;
  if (p <= F.x_lo()) dmin = F.x_lo() - p;
  if (p >= F.x_hi()) dmin = p - F.x_hi();
  const double dmax = std::max(std::abs(F.x_lo() - p), std::abs(F.x_hi() - p));
  // |x - p| ranges over [lo(y)/c, hi(y)/c] with
  // c^2 |x - p|^2 in [y/y_max - c^2 y^2, y/y_min - c^2 y^2].
  const Interval keep = quadratic_roots(c * c, -1.0 / k.y_min(), c * c * dmin * dmin);
  const Interval remove = quadratic_roots(c * c, -1.0 / k.y_max(), c * c * dmax * dmax);
  return meets(box_y, keep, remove);
}

}  // namespace

std::vector<Coset> contributing_cosets(const BumpTestFunction& F, const ThickKernel& k) {
  if (k.n() != 1) raise(ErrorCode::domain, "automorphization needs an n = 1 kernel");
  std::vector<Coset> out;
  if (coset_meets_box(F, k, {0, 1})) out.push_back({0, 1});
  const double ymin = k.y_min();
  const double cmax_f = std::sqrt(1.0 / (F.y_lo() * ymin));
  check_index_range(cmax_f);
  const auto cmax = static_cast<std::int64_t>(std::ceil(cmax_f));
  std::int64_t visited = 0;
  for (std::int64_t c = 1; c <= cmax; ++c) {
    const double cd = static_cast<double>(c);
    const double ypeak = std::clamp(1.0 / (2.0 * cd * cd * ymin), F.y_lo(), F.y_hi());
    const double r2 = ypeak / ymin - cd * cd * ypeak * ypeak;
    if (r2 < 0.0) continue;
    const double r = std::sqrt(r2) + 1.0;
    const double lo = -cd * F.x_hi() - r;
    const double hi = -cd * F.x_lo() + r;
    check_index_range(lo);
    check_index_range(hi);
    visited += static_cast<std::int64_t>(hi - lo) + 1;
    if (visited > kMaxEnumeration) raise(ErrorCode::capacity, "coset enumeration too large");
    for (auto d = static_cast<std::int64_t>(std::floor(lo));
         d <= static_cast<std::int64_t>(std::ceil(hi)); ++d) {
      if (gcd64(c, d) != 1) continue;
      if (coset_meets_box(F, k, {c, d})) out.push_back({c, d});
    }
  }
  return out;
}

namespace {

// Cumulative integral of the profile on a uniform grid over [-1, 1].
class ProfileTable {
 public:
  static constexpr int kCells = 4096;

  ProfileTable() : cum_(kCells + 1, 0.0) {
    const quad::Rule& r = quad::gauss_legendre(32);
    for (int i = 0; i < kCells; ++i)
      cum_[i + 1] = cum_[i] + quad::fixed(profile, node(i), node(i + 1), r);
  }

  double cumulative(double u) const {
    if (u <= -1.0) return 0.0;
    if (u >= 1.0) return cum_[kCells];
    const int i = std::clamp(static_cast<int>((u + 1.0) / h_), 0, kCells - 1);
    return cum_[i] + quad::fixed(profile, node(i), u, quad::gauss_legendre(20));
  }

 private:
  static constexpr double h_ = 2.0 / kCells;
  static double node(int i) { return -1.0 + h_ * i; }
  std::vector<double> cum_;
};

double profile_integral(double a, double b) {
  static const ProfileTable table;
  a = std::max(a, -1.0);
  b = std::min(b, 1.0);
  if (!(a < b)) return 0.0;
  return table.cumulative(b) - table.cumulative(a);
}

}  // namespace

double coset_contribution(const BumpTestFunction& F, const ThickKernel& k, const Coset& cs,
                          const QuadratureSpec& q) {
  if (F.amplitude() == 0.0) return 0.0;
  const double cx = F.center().x, wx = F.wx();
  const auto x_integral = [&](double a, double b) {
    return wx * profile_integral((a - cx) / wx, (b - cx) / wx);
  };
  const auto y_weight = [&](double y) {
    return F.amplitude() * profile((y - F.center().y) / F.wy()) / (y * y);
  };
  const double rel = std::min(q.tol, 1e-10);
  // Each coset only needs absolute accuracy against the size of the whole average.
  const double mass = wx * profile_integral(-1.0, 1.0) *
                      std::abs(quad::composite(y_weight, F.y_lo(), F.y_hi(), 8, quad::gauss_legendre(16)));
  const double abs_tol = 1e-3 * rel * mass / k.constant();
  std::vector<double> breaks{F.y_lo(), F.y_hi()};
  std::function<double(double)> inner;
  if (cs.c == 0) {
    if (cs.d != 1) return 0.0;
    breaks.push_back(k.y_min());
    breaks.push_back(k.y_max());
    inner = [&](double y) {
      if (k(y) == 0.0) return 0.0;
      return y_weight(y) * x_integral(F.x_lo(), F.x_hi());
    };
  } else {
    const double c = static_cast<double>(cs.c);
    const double p = -static_cast<double>(cs.d) / c;
    breaks.push_back(1.0 / (c * c * k.y_max()));
    breaks.push_back(1.0 / (c * c * k.y_min()));
    inner = [&, c, p](double y) {
      const double hi2 = y / k.y_min() - c * c * y * y;
      if (hi2 <= 0.0) return 0.0;
      const double lo2 = std::max(0.0, y / k.y_max() - c * c * y * y);
      const double hi = std::sqrt(hi2) / c, lo = std::sqrt(lo2) / c;
      double sum = 0.0;
      const double segs[2][2] = {{p - hi, p - lo}, {p + lo, p + hi}};
      for (const auto& s : segs) {
        const double a = std::max(s[0], F.x_lo()), b = std::min(s[1], F.x_hi());
        if (a < b) sum += x_integral(a, b);
      }
      return sum == 0.0 ? 0.0 : y_weight(y) * sum;
    };
  }
  std::sort(breaks.begin(), breaks.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = std::max(breaks[i], F.y_lo()), b = std::min(breaks[i + 1], F.y_hi());
    if (!(a < b)) continue;
    total += quad::adaptive(inner, a, b, rel, 16, abs_tol);
  }
  return k.constant() * total;
}

double thickened_average_folded(const BumpTestFunction& F, const ThickKernel& k,
                                const QuadratureSpec& q) {
  q.validate();
  double total = 0.0;
  for (const Coset& cs : contributing_cosets(F, k)) total += coset_contribution(F, k, cs, q);
  return total;
}

double thickened_average_unfolded(const BumpTestFunction& F, const ThickKernel& k,
                                  const QuadratureSpec& q) {
  if (k.n() != 1) raise(ErrorCode::domain, "unfolding needs an n = 1 kernel");
  q.validate();
  if (F.amplitude() == 0.0) return 0.0;
  const auto f = [&](double y) { return horocycle_integral_at(F, y, q) / (y * y); };
  const quad::Rule& rule = quad::gauss_legendre(16);
  double prev = quad::fixed(f, k.y_min(), k.y_max(), rule);
  for (int panels = 2; panels <= 64; panels *= 2) {
    const double cur = quad::composite(f, k.y_min(), k.y_max(), panels, rule);
    if (std::abs(cur - prev) <= q.tol * std::abs(cur)) return k.constant() * cur;
    prev = cur;
  }
  raise(ErrorCode::convergence, "unfolded window quadrature did not converge");
}

double hyperbolic_average(const BumpTestFunction& F, double rel_tol) {
  if (F.amplitude() == 0.0) return 0.0;
  const double ix = F.wx() * profile_integral(-1.0, 1.0);
  const auto fy = [&](double y) { return profile((y - F.center().y) / F.wy()) / (y * y); };
  const double iy = quad::adaptive(fy, F.y_lo(), F.y_hi(), rel_tol, 32, 1e-300);
  return 3.0 / std::numbers::pi * F.amplitude() * ix * iy;
}

FunctionNorms norms(const BumpTestFunction& F, const QuadratureSpec& q) {
  if (F.amplitude() == 0.0) return {0.0, 0.0};
  const double rel = std::min(q.tol, 1e-12);
  const auto sq = [](double u) { return profile(u) * profile(u); };
  const double ix = F.wx() * quad::adaptive(sq, -1.0, 1.0, rel, 32, 1e-300);
  const auto fy = [&](double y) {
    const double p = profile((y - F.center().y) / F.wy());
    return p * p / (y * y);
  };
  const double iy = quad::adaptive(fy, F.y_lo(), F.y_hi(), rel, 32, 1e-300);
  const double l2 = std::abs(F.amplitude()) * std::sqrt(ix * iy);
  double sup = 0.0;
  constexpr int grid = 400;
  for (int i = 0; i < grid; ++i) {
    const double x = F.x_lo() + (F.x_hi() - F.x_lo()) * i / (grid - 1);
    for (int j = 0; j < grid; ++j) {
      const double y = F.y_lo() + (F.y_hi() - F.y_lo()) * j / (grid - 1);
      sup = std::max(sup, std::abs(F.dy(x, y)));
    }
  }
  return {l2, sup};
}

}  // namespace horolab
