#include "horolab/error.hpp"
#include "horolab/kernel.hpp"
#include "horolab/quadrature.hpp"

#include <cmath>

namespace horolab {

double variation_of_parameters(int n, const SpectralPoint& sp,
                               const std::function<double(double)>& g, double y_lo,
                               double y_hi, double y, double rel_tol) {
  if (sp.n() != n) raise(ErrorCode::domain, "spectral point does not match n");
  if (!(y_lo > 0.0 && y_lo < y_hi)) raise(ErrorCode::domain, "need 0 < y_lo < y_hi");
  if (!(y >= y_lo && y <= y_hi)) raise(ErrorCode::domain, "y outside [y_lo, y_hi]");
  if (y == y_lo) return 0.0;
  const double half = 0.5 * n;
  const cplx s = sp.s();
  const double abs_tol = 1e-300;

  if (s.imag() == 0.0 && s.real() == half) {
    const auto u_int = [&](double w) { return -std::pow(w, -half - 1.0) * std::log(w) * g(w); };
    const auto v_int = [&](double w) { return std::pow(w, -half - 1.0) * g(w); };
    const double u = quad::adaptive(u_int, y_lo, y, rel_tol, 32, abs_tol);
    const double v = quad::adaptive(v_int, y_lo, y, rel_tol, 32, abs_tol);
    return std::pow(y, half) * (u + std::log(y) * v);
  }

  const cplx w_const = static_cast<double>(n) - 2.0 * s;
  const auto u_int = [&](double w) -> cplx { return std::pow(w, -s - 1.0) * g(w); };
  const auto v_int = [&](double w) -> cplx {
    return std::pow(w, s - static_cast<double>(n) - 1.0) * g(w);
  };
  const cplx u = -quad::adaptive(u_int, y_lo, y, rel_tol, 32, abs_tol) / w_const;
  const cplx v = quad::adaptive(v_int, y_lo, y, rel_tol, 32, abs_tol) / w_const;
  const cplx f = std::pow(y, s) * u + std::pow(y, static_cast<double>(n) - s) * v;
  return f.real();
}

}  // namespace horolab
