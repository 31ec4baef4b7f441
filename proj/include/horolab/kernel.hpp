#pragma once

#include "horolab/rational.hpp"

#include <complex>
#include <functional>

namespace horolab {

using cplx = std::complex<double>;

// L1-normalized indicator of [1/T - eps/T^(n+1), 1/T + eps/T^(n+1)] against dy/y^(n+1).
class ThickKernel {
 public:
  ThickKernel(int n, double T, double eps);

  int n() const { return n_; }
  double T() const { return T_; }
  double eps() const { return eps_; }
  double y_min() const { return y_min_; }
  double y_max() const { return y_max_; }
  double constant() const { return c_; }
  // False when the window is below double resolution; moments stay exact, pointwise values do not.
  bool resolved() const { return y_min_ < 1.0 / T_ && y_max_ > 1.0 / T_; }

  double operator()(double y) const;

  // Integral of psi(y) y^p (log y)^k dy / y^(n+1), in closed form.
  cplx moment(cplx p, int log_power = 0) const;

 private:
  int n_;
  double T_;
  double eps_;
  double y_min_;
  double y_max_;
  double log_y_min_;
  double log_ratio_;
  double c_;
};

// Closed-form integral of y^(q-1) (log y)^k over [e^a, e^(a+L)].
cplx window_log_moment(cplx q, double a, double L, int k);

cplx expm1(cplx z);

class SpectralPoint {
 public:
  // Real s in [n/2, n], or s = n/2 + i t.
  SpectralPoint(int n, cplx s);

  static SpectralPoint exceptional(int n, double s) { return SpectralPoint(n, s); }
  static SpectralPoint tempered(int n, double t) { return SpectralPoint(n, cplx(0.5 * n, t)); }

  int n() const { return n_; }
  cplx s() const { return s_; }
  bool is_tempered() const { return s_.real() == 0.5 * n_; }
  cplx lambda() const { return s_ * (static_cast<double>(n_) - s_); }

 private:
  int n_;
  cplx s_;
};

struct AlphaBeta {
  cplx alpha;
  cplx beta;
};

// Basis moments: (y^s, y^(n-s)) off the critical line, (y^(n/2), y^(n/2) log y) on it.
AlphaBeta alpha_beta(const ThickKernel& k, const SpectralPoint& sp);

struct InterpolationPair {
  double node_b;
  cplx K;
  cplx L;
};

InterpolationPair interpolation_weights(const SpectralPoint& sp, double T, double b, double eps);

double homogeneous_interpolation_residual(cplx A, cplx B, const SpectralPoint& sp, double T,
                                          double b, double eps);

// Particular solution of y^2 f'' - (n-1) y f' + s(n-s) f = g vanishing with its
// derivative at y_lo.
double variation_of_parameters(int n, const SpectralPoint& sp,
                               const std::function<double(double)>& g, double y_lo,
                               double y_hi, double y, double rel_tol = 1e-12);

struct ExponentBudget {
  int n;
  Rational delta;
  Rational s1;
  Rational P;
  Rational eta_cont;
  Rational eta_s1;
  Rational kernel_norm_exp;
  Rational eps_exponent;
  // Smoothed route: the kernel norm grows like eps^-kernel_norm_exp.
  Rational total_error_exp;
  Rational log_power;
  // K-invariant route: the kernel norm grows like eps^-1/2.
  Rational kinv_total_error_exp;
  Rational kinv_log_power;
};

ExponentBudget exponent_budget(int n, const Rational& delta, const Rational& s1);
ExponentBudget exponent_budget(int n, const Rational& delta);

enum class KernelRoute { automatic, smoothed, k_invariant };

struct EpsilonChoice {
  double eps;
  double error_exponent;  // power of T in the balanced error
  double log_power;       // power of log T in the balanced error
  double smoothing_term;  // eps T^(delta-n) |F|_{1,inf}
  double spectral_term;   // eps^-k T^(-n/2) log T |F|_Gamma
  bool regime_ok;         // false when eps >= 1/2
};

EpsilonChoice epsilon_optimizer_rank1(int n, double delta, double T, double norm_gamma,
                                      double norm_1inf,
                                      KernelRoute route = KernelRoute::automatic);

}  // namespace horolab
