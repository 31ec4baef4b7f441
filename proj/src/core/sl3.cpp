#include "horolab/sl3.hpp"

#include "horolab/diffop.hpp"
#include "horolab/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace horolab::sl3 {

SRPair sr_from_nu(const NuPair& nu) { return {nu.nu1 + 2.0 * nu.nu2, 2.0 * nu.nu1 + nu.nu2}; }

NuPair nu_from_sr(const SRPair& sr) {
  return {(2.0 * sr.r - sr.s) / 3.0, (2.0 * sr.s - sr.r) / 3.0};
}

LambdaPair lambda_from_nu(const NuPair& nu) {
  const cplx a = nu.nu1, b = nu.nu2;
  return {-3.0 * (a * a + b * b - a - b + a * b),
          (b - a) * (2.0 * a * a + b * (-3.0 + 2.0 * b) + a * (-3.0 + 5.0 * b))};
}

LambdaPair lambda_from_sr(const SRPair& sr) {
  const cplx s = sr.s, r = sr.r;
  return {s * r - s * (s - 1.0) - r * (r - 1.0), s * r * (s - r) + s * (s - 1.0) + r * (r - 1.0)};
}

namespace {

// y-parts of the displayed -Delta_1 and -Delta_2 on functions of (y1, y2).
const YOperator& displayed_operator(int op_index) {
  static const YOperator op1(2, {
                                    {1.0, {2, 0}, {2, 0}},
                                    {1.0, {0, 2}, {0, 2}},
                                    {-1.0, {1, 1}, {1, 1}},
                                });
  static const YOperator op2(2, {
                                    {-1.0, {2, 1}, {2, 1}},
                                    {1.0, {1, 2}, {1, 2}},
                                    {-1.0, {0, 2}, {0, 2}},
                                    {1.0, {2, 0}, {2, 0}},
                                });
  if (op_index == 1) return op1;
  if (op_index == 2) return op2;
  raise(ErrorCode::domain, "Casimir index must be 1 or 2");
}

// The displayed operators are -Delta_i; lambda is the scalar of Delta_i, calibrated so
// that nu = (1/3, 1/3) gives lambda1 = 1.
constexpr double kSign = -1.0;

}  // namespace

cplx casimir_apply_monomial(int op_index, const SRPair& sr) {
  const cplx s[2] = {sr.s, sr.r};
  return kSign * displayed_operator(op_index).monomial_scalar(s);
}

cplx casimir_ratio_at(int op_index, const SRPair& sr, double y1, double y2) {
  const cplx s[2] = {sr.s, sr.r};
  const double y[2] = {y1, y2};
  return kSign * displayed_operator(op_index).apply_to_monomial(s, y);
}

double orbit_residual(const NuPair& nu, const LambdaPair& lp) {
  const LambdaPair got = lambda_from_nu(nu);
  return std::max(std::abs(got.lambda1 - lp.lambda1), std::abs(got.lambda2 - lp.lambda2));
}

namespace {

constexpr double kClusterTol = 1e-7;

struct CubicRoot {
  cplx m;
  int mult;
};

cplx newton_polish(cplx m, cplx a, cplx b) {
  for (int it = 0; it < 4; ++it) {
    const cplx f = m * m * m + a * m + b;
    const cplx df = 3.0 * m * m + a;
    if (std::abs(df) == 0.0) break;
    const cplx step = f / df;
    m -= step;
    if (std::abs(step) <= 1e-17 * (1.0 + std::abs(m))) break;
  }
  return m;
}

// Roots of m^3 + a m + b with multiplicity.
std::vector<CubicRoot> depressed_cubic(cplx a, cplx b) {
  const double scale = std::max({std::abs(a), std::cbrt(std::abs(b)), 1e-300});
  if (std::abs(a) <= 1e-15 * scale && std::abs(b) <= 1e-15 * scale * scale * scale)
    return {{0.0, 3}};
  const cplx disc = -4.0 * a * a * a - 27.0 * b * b;
  if (std::abs(disc) <= 1e-13 * (4.0 * std::abs(a * a * a) + 27.0 * std::abs(b * b))) {
    if (std::abs(a) == 0.0) return {{0.0, 3}};
    return {{3.0 * b / a, 1}, {-1.5 * b / a, 2}};
  }
  const cplx d0 = -3.0 * a;
  const cplx d1 = 27.0 * b;
  const cplx sq = std::sqrt(d1 * d1 - 4.0 * d0 * d0 * d0);
  cplx c = 0.5 * (d1 + sq);
  if (std::abs(0.5 * (d1 - sq)) > std::abs(c)) c = 0.5 * (d1 - sq);
  c = std::pow(c, 1.0 / 3.0);
  const cplx xi(-0.5, 0.5 * std::sqrt(3.0));
  std::vector<CubicRoot> out;
  cplx ck = c;
  for (int k = 0; k < 3; ++k) {
    const cplx m = -(ck + d0 / ck) / 3.0;
    out.push_back({newton_polish(m, a, b), 1});
    ck *= xi;
  }
  // Merge near-coincident roots.
  std::vector<CubicRoot> merged;
  for (const CubicRoot& r : out) {
    bool joined = false;
    for (CubicRoot& g : merged) {
      if (std::abs(g.m - r.m) <= kClusterTol * (1.0 + std::abs(g.m))) {
        g.m = (g.m * static_cast<double>(g.mult) + r.m) / static_cast<double>(g.mult + 1);
        ++g.mult;
        joined = true;
        break;
      }
    }
    if (!joined) merged.push_back(r);
  }
  return merged;
}

bool nu_less(const NuPair& x, const NuPair& y) {
  if (x.nu1.real() != y.nu1.real()) return x.nu1.real() < y.nu1.real();
  if (x.nu2.real() != y.nu2.real()) return x.nu2.real() < y.nu2.real();
  if (x.nu1.imag() != y.nu1.imag()) return x.nu1.imag() < y.nu1.imag();
  return x.nu2.imag() < y.nu2.imag();
}

}  // namespace

NuOrbit nu_orbit(const LambdaPair& lp) {
  // With p = nu1 + nu2 - 2/3 and m = nu2 - nu1 the system becomes
  // m^3 + lambda1 m + lambda2 = 0 and 9 p^2 = 4 (1 - lambda1) - 3 m^2.
  struct Entry {
    NuPair nu;
    int mult;
    int p_order;
    int m_order;
  };
  std::vector<Entry> entries;
  const double third = 1.0 / 3.0;
  for (const CubicRoot& cr : depressed_cubic(lp.lambda1, lp.lambda2)) {
    const cplx p2 = (4.0 * (1.0 - lp.lambda1) - 3.0 * cr.m * cr.m) / 9.0;
    cplx p = std::sqrt(p2);
    const bool double_p = std::abs(p) <= kClusterTol;
    if (double_p) p = 0.0;
    const cplx signs[2] = {p, -p};
    for (int branch = 0; branch < (double_p ? 1 : 2); ++branch) {
      const cplx pp = signs[branch];
      const NuPair nu{0.5 * (pp - cr.m) + third, 0.5 * (pp + cr.m) + third};
      const int pm = double_p ? 2 : 1;
      for (int a = 0; a < pm; ++a)
        for (int c = 0; c < cr.mult; ++c) entries.push_back({nu, pm * cr.mult, a, c});
    }
  }
  if (entries.size() != 6) {
    std::ostringstream os;
    os << "orbit solver found " << entries.size() << " roots";
    raise(ErrorCode::incomplete_orbit, os.str());
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& x, const Entry& y) { return nu_less(x.nu, y.nu); });
  NuOrbit out;
  out.max_residual = 0.0;
  for (const Entry& e : entries) {
    out.roots.push_back(e.nu);
    out.multiplicity.push_back(e.mult);
    out.p_order.push_back(e.p_order);
    out.m_order.push_back(e.m_order);
    out.max_residual = std::max(out.max_residual, orbit_residual(e.nu, lp));
  }
  const double scale = 1.0 + std::abs(lp.lambda1) + std::abs(lp.lambda2);
  if (!(out.max_residual <= 1e-9 * scale)) {
    std::ostringstream os;
    os << "orbit residual " << out.max_residual << " exceeds tolerance";
    raise(ErrorCode::incomplete_orbit, os.str());
  }
  return out;
}

double green_exponent(double lambda1) {
  const double disc = 0.25 + 4.0 * lambda1;
  if (disc < 0.0)
    raise(ErrorCode::domain, "Green exponent is complex for lambda1 < -1/16");
  return 0.5 + std::sqrt(disc);
}

GreenKernel green_kernel(double lambda1, std::array<double, 2> y, std::array<double, 2> xi) {
  const double r = std::hypot(xi[0] - y[0], xi[1] - y[1]);
  if (r == 0.0) raise(ErrorCode::domain, "Green kernel is singular at y = xi");
  const double kappa = green_exponent(lambda1);
  return {kappa, std::pow(r, kappa)};
}

double green_radial_residual(double lambda1, double r) {
  const double kappa = green_exponent(lambda1);
  const double h = std::pow(r, kappa);
  const double h2 = kappa * (kappa - 1.0) * std::pow(r, kappa - 2.0);
  const double lhs = 0.5 * std::numbers::pi * r * r * h2;
  const double rhs = 2.0 * std::numbers::pi * lambda1 * h;
  const double scale = std::max({std::abs(lhs), std::abs(rhs), std::abs(h)});
  return std::abs(lhs - rhs) / scale;
}

EpsilonSl3 epsilon_optimizer_sl3(double T1, double T2, double norm_gamma, double norm_1inf) {
  if (!(T1 > 1.0 && T2 > 1.0)) raise(ErrorCode::domain, "need T1, T2 > 1");
  if (!(norm_gamma > 0.0 && norm_1inf > 0.0)) raise(ErrorCode::domain, "norms must be positive");
  const double logs = std::log(T1) * std::log(T2);
  EpsilonSl3 out;
  out.eps = std::sqrt(logs * norm_gamma / (norm_1inf * T1 * T2));
  out.smoothing_term = out.eps * norm_1inf;
  out.spectral_term = logs * norm_gamma / (out.eps * T1 * T2);
  out.regime_ok = out.eps < 0.5;
  return out;
}

}  // namespace horolab::sl3
