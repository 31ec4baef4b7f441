#include "horolab/error.hpp"
#include "horolab/kernel.hpp"

#include <cmath>

namespace horolab {

ExponentBudget exponent_budget(int n, const Rational& delta, const Rational& s1) {
  if (n < 1) raise(ErrorCode::domain, "budget dimension must be positive");
  const Rational half(n, 2);
  if (!(delta > half && delta <= Rational(n)))
    raise(ErrorCode::domain, "delta must lie in (n/2, n], got " + to_string(delta));
  if (!(s1 >= half && s1 < delta))
    raise(ErrorCode::domain, "s1 must lie in [n/2, delta), got " + to_string(s1));
  ExponentBudget b;
  b.n = n;
  b.delta = delta;
  b.s1 = s1;
  const std::int64_t nn = n;
  b.P = Rational(nn * nn - 3 * nn + 10);
  b.kernel_norm_exp = Rational(nn * nn - 3 * nn + 6, 4);
  b.eta_cont = Rational(4) * (delta - half) / b.P;
  b.eta_s1 = Rational(4) * (delta - s1) / b.P;
  b.eps_exponent = -b.eta_cont;
  b.total_error_exp = delta - Rational(n) + b.eps_exponent;
  b.log_power = Rational(4) / b.P;
  b.kinv_total_error_exp = delta - Rational(n) + (half - delta) * Rational(2, 3);
  b.kinv_log_power = Rational(2, 3);
  return b;
}

ExponentBudget exponent_budget(int n, const Rational& delta) {
  return exponent_budget(n, delta, Rational(n, 2));
}

EpsilonChoice epsilon_optimizer_rank1(int n, double delta, double T, double norm_gamma,
                                      double norm_1inf, KernelRoute route) {
  if (n < 1) raise(ErrorCode::domain, "dimension must be positive");
  if (!(delta > 0.5 * n && delta <= n)) raise(ErrorCode::domain, "delta must lie in (n/2, n]");
  if (!(T > 1.0)) raise(ErrorCode::domain, "T must exceed 1 so that log T > 0");
  if (!(norm_gamma > 0.0 && norm_1inf > 0.0)) raise(ErrorCode::domain, "norms must be positive");
  if (route == KernelRoute::automatic)
    route = n == 1 ? KernelRoute::k_invariant : KernelRoute::smoothed;
  const double k = route == KernelRoute::k_invariant ? 0.5 : (n * n - 3.0 * n + 6.0) / 4.0;
  const double logT = std::log(T);
  const double x = std::pow(T, 0.5 * n - delta) * logT * norm_gamma / norm_1inf;
  EpsilonChoice out;
  out.eps = std::pow(x, 1.0 / (1.0 + k));
  out.error_exponent = delta - n + (0.5 * n - delta) / (1.0 + k);
  out.log_power = 1.0 / (1.0 + k);
  out.smoothing_term = out.eps * std::pow(T, delta - n) * norm_1inf;
  out.spectral_term = std::pow(out.eps, -k) * std::pow(T, -0.5 * n) * logT * norm_gamma;
  out.regime_ok = out.eps < 0.5;
  return out;
}

}  // namespace horolab
