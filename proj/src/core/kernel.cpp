#include "horolab/kernel.hpp"

#include "horolab/error.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace horolab {

namespace {

std::string describe(cplx s) {
  std::ostringstream os;
  os.precision(17);
  os << s.real();
  if (s.imag() != 0.0) os << (s.imag() < 0 ? " - " : " + ") << std::abs(s.imag()) << "i";
  return os.str();
}

constexpr int kMaxLogPower = 8;

// phi_j(z) = int_0^1 x^j e^(zx) dx for j = 0..k.
std::array<cplx, kMaxLogPower + 1> phi_table(cplx z, int k) {
  std::array<cplx, kMaxLogPower + 1> phi{};
  if (std::abs(z) <= 4.0) {
    for (int j = 0; j <= k; ++j) {
      cplx term = 1.0;
      cplx sum = 1.0 / static_cast<double>(j + 1);
      for (int m = 1; m < 80; ++m) {
        term *= z / static_cast<double>(m);
        const cplx add = term / static_cast<double>(m + j + 1);
        sum += add;
        if (std::abs(add) < 1e-18 * std::abs(sum)) break;
      }
      phi[j] = sum;
    }
    return phi;
  }
  const cplx ez = std::exp(z);
  phi[0] = expm1(z) / z;
  for (int j = 1; j <= k; ++j) phi[j] = (ez - static_cast<double>(j) * phi[j - 1]) / z;
  return phi;
}

}  // namespace

cplx expm1(cplx z) {
  const double x = z.real();
  const double y = z.imag();
  if (y == 0.0) return std::expm1(x);
  const double sh = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * sh * sh, std::exp(x) * std::sin(y)};
}

cplx window_log_moment(cplx q, double a, double L, int k) {
  if (k < 0 || k > kMaxLogPower)
    raise(ErrorCode::domain, "log power out of range: " + std::to_string(k));
  const auto phi = phi_table(q * L, k);
  cplx sum = 0.0;
  double binom = 1.0;
  for (int j = 0; j <= k; ++j) {
    sum += binom * std::pow(a, k - j) * std::pow(L, j + 1) * phi[j];
    binom = binom * (k - j) / (j + 1);
  }
  return std::exp(q * a) * sum;
}

ThickKernel::ThickKernel(int n, double T, double eps) : n_(n), T_(T), eps_(eps) {
  if (n < 1) raise(ErrorCode::domain, "kernel dimension must be positive");
  if (!(T >= 1.0) || !std::isfinite(T)) raise(ErrorCode::domain, "kernel height T must be >= 1");
  if (!(eps > 0.0 && eps < 0.5)) raise(ErrorCode::domain, "kernel eps must lie in (0, 1/2)");
  const double h = eps / std::pow(T, n);
  y_min_ = 1.0 / T - eps / std::pow(T, n + 1);
  y_max_ = 1.0 / T + eps / std::pow(T, n + 1);
  log_y_min_ = -std::log(T) + std::log1p(-h);
  log_ratio_ = std::log1p(h) - std::log1p(-h);
  c_ = 1.0 / window_log_moment(-static_cast<double>(n), log_y_min_, log_ratio_, 0).real();
}

double ThickKernel::operator()(double y) const {
  if (!(y > 0.0)) raise(ErrorCode::domain, "kernel evaluated at non-positive y");
  if (!resolved())
    raise(ErrorCode::numeric_degeneracy, "kernel window is narrower than double resolution at T = " +
                                             std::to_string(T_) + ", eps = " + std::to_string(eps_));
  return (y >= y_min_ && y <= y_max_) ? c_ : 0.0;
}

cplx ThickKernel::moment(cplx p, int log_power) const {
  return c_ * window_log_moment(p - static_cast<double>(n_), log_y_min_, log_ratio_, log_power);
}

SpectralPoint::SpectralPoint(int n, cplx s) : n_(n), s_(s) {
  if (n < 1) raise(ErrorCode::domain, "spectral point dimension must be positive");
  const double half = 0.5 * n;
  const bool real_ok = s.imag() == 0.0 && s.real() >= half && s.real() <= n;
  const bool line_ok = s.real() == half && std::isfinite(s.imag());
  if (!real_ok && !line_ok)
    raise(ErrorCode::domain, "spectral parameter s = " + describe(s) +
                                 " is neither in [n/2, n] nor on Re s = n/2");
}

AlphaBeta alpha_beta(const ThickKernel& k, const SpectralPoint& sp) {
  if (k.n() != sp.n()) raise(ErrorCode::domain, "kernel and spectral point differ in n");
  const double n = k.n();
  if (sp.is_tempered()) return {k.moment(0.5 * n, 0), k.moment(0.5 * n, 1)};
  return {k.moment(sp.s(), 0), k.moment(n - sp.s(), 0)};
}

InterpolationPair interpolation_weights(const SpectralPoint& sp, double T, double b, double eps) {
  if (!(b > 1.0)) raise(ErrorCode::domain, "interpolation node b must exceed 1");
  const int n = sp.n();
  const AlphaBeta one = alpha_beta(ThickKernel(n, 1.0, eps), sp);
  const AlphaBeta nb = alpha_beta(ThickKernel(n, b, eps), sp);
  const AlphaBeta at = alpha_beta(ThickKernel(n, T, eps), sp);
  const cplx den = one.alpha * nb.beta - nb.alpha * one.beta;
  const double scale = std::abs(one.alpha * nb.beta) + std::abs(nb.alpha * one.beta);
  if (!(std::abs(den) > 1e-10 * scale)) {
    std::ostringstream os;
    os.precision(17);
    os << "degenerate interpolation nodes: s = " << describe(sp.s()) << ", b = " << b;
    raise(ErrorCode::degenerate_node, os.str());
  }
  return {b, (at.alpha * nb.beta - nb.alpha * at.beta) / den,
          (one.alpha * at.beta - one.beta * at.alpha) / den};
}

double homogeneous_interpolation_residual(cplx A, cplx B, const SpectralPoint& sp, double T,
                                          double b, double eps) {
  const double norm = std::abs(A) + std::abs(B);
  const InterpolationPair w = interpolation_weights(sp, T, b, eps);
  if (norm == 0.0) return 0.0;
  const int n = sp.n();
  const AlphaBeta one = alpha_beta(ThickKernel(n, 1.0, eps), sp);
  const AlphaBeta nb = alpha_beta(ThickKernel(n, b, eps), sp);
  const AlphaBeta at = alpha_beta(ThickKernel(n, T, eps), sp);
  const cplx f1 = A * one.alpha + B * one.beta;
  const cplx fb = A * nb.alpha + B * nb.beta;
  const cplx fT = A * at.alpha + B * at.beta;
  return std::abs(fT - w.K * f1 - w.L * fb) / norm;
}

}  // namespace horolab
