#include "horolab/error.hpp"
#include "horolab/kernel.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace horolab;

namespace {

// Measure of [y_min, y_max] under dy / y^(n+1), written through log1p/expm1.
double window_measure(int n, double T, double eps) {
  const double h = eps / std::pow(T, n);
  const double a = std::expm1(-n * std::log1p(-h));
  const double b = std::expm1(-n * std::log1p(h));
  return std::pow(T, n) * (a - b) / n;
}

double relerr(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(ThickKernel, ConstantAtUnitHeight) {
  const ThickKernel k(1, 1.0, 0.1);
  EXPECT_DOUBLE_EQ(k.y_min(), 0.9);
  EXPECT_DOUBLE_EQ(k.y_max(), 1.1);
  EXPECT_NEAR(k(1.0), 4.95, 1e-13);
  const double mass = oracle::simpson([&](double y) { return 1.0 / (y * y); }, 0.9, 1.1, 1e-15);
  EXPECT_NEAR(k(1.0) * mass, 1.0, 1e-12);
}

TEST(ThickKernel, SupportIsClosed) {
  const ThickKernel k(2, 10.0, 0.01);
  EXPECT_EQ(k(10.0), 0.0);
  EXPECT_GT(k(k.y_min()), 0.0);
  EXPECT_GT(k(k.y_max()), 0.0);
  EXPECT_GT(k(0.1 - 0.01 / 1000.0), 0.0);
  EXPECT_EQ(k(std::nextafter(k.y_min(), 0.0)), 0.0);
  EXPECT_EQ(k(std::nextafter(k.y_max(), 1.0)), 0.0);
}

TEST(ThickKernel, RejectsBadArguments) {
  EXPECT_THROW(ThickKernel(0, 2.0, 0.1), Error);
  EXPECT_THROW(ThickKernel(1, 0.5, 0.1), Error);
  EXPECT_THROW(ThickKernel(1, 2.0, 0.5), Error);
  EXPECT_THROW(ThickKernel(1, 2.0, 0.0), Error);
  const ThickKernel k(1, 2.0, 0.1);
  try {
    k(0.0);
    FAIL() << "expected a domain error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::domain);
  }
}

TEST(ThickKernel, NormalizationProperty) {
  oracle::Rng rng(20240611);
  for (int i = 0; i < 1000; ++i) {
    const int n = static_cast<int>(rng.integer(1, 4));
    const double T = rng.log_uniform(1.0, 1e4);
    const double eps = rng.log_uniform(1e-5, 0.1);
    const ThickKernel k(n, T, eps);
    EXPECT_NEAR(k.constant() * window_measure(n, T, eps), 1.0, 1e-12) << n << " " << T << " " << eps;
    if (!k.resolved()) {
      EXPECT_LT(eps / std::pow(T, n), 1e-14);
      continue;
    }
    EXPECT_LT(k.y_min(), 1.0 / T);
    EXPECT_GT(k.y_max(), 1.0 / T);
    EXPECT_NEAR(k.constant() * window_measure(n, T, eps), 1.0, 1e-12) << n << " " << T << " " << eps;
  }
}

TEST(ThickKernel, MomentsAgreeWithQuadrature) {
  oracle::Rng rng(7);
  for (int i = 0; i < 40; ++i) {
    const int n = static_cast<int>(rng.integer(1, 3));
    const ThickKernel k(n, rng.uniform(1.0, 20.0), rng.uniform(0.01, 0.3));
    const double p = rng.uniform(-1.0, 4.0);
    for (int lp = 0; lp <= 2; ++lp) {
      const auto f = [&](double y) {
        return k.constant() * std::pow(y, p - n - 1) * std::pow(std::log(y), lp);
      };
      const double ref = oracle::simpson(f, k.y_min(), k.y_max(), 1e-16);
      EXPECT_NEAR(k.moment(p, lp).real(), ref, 1e-11 * std::abs(ref) + 1e-300);
    }
  }
}

TEST(ThickKernel, ComplexMomentMatchesQuadrature) {
  const ThickKernel k(1, 3.0, 0.2);
  const cplx p(0.5, 7.0);
  const auto re = [&](double y) { return k.constant() * std::real(std::pow(y, p - 2.0)); };
  const auto im = [&](double y) { return k.constant() * std::imag(std::pow(y, p - 2.0)); };
  const cplx ref(oracle::simpson(re, k.y_min(), k.y_max(), 1e-16),
                 oracle::simpson(im, k.y_min(), k.y_max(), 1e-16));
  EXPECT_LT(relerr(k.moment(p), ref), 1e-11);
}

TEST(SpectralPoint, Classification) {
  EXPECT_TRUE(SpectralPoint::tempered(2, 3.0).is_tempered());
  EXPECT_FALSE(SpectralPoint::exceptional(2, 1.5).is_tempered());
  EXPECT_NEAR(SpectralPoint::exceptional(1, 0.75).lambda().real(), 0.1875, 1e-15);
  EXPECT_NEAR(SpectralPoint::tempered(1, 2.0).lambda().real(), 0.25 + 4.0, 1e-14);
  EXPECT_THROW(SpectralPoint(1, cplx(0.3, 0.0)), Error);
  EXPECT_THROW(SpectralPoint(1, cplx(0.7, 1.0)), Error);
  EXPECT_THROW(SpectralPoint(2, cplx(2.5, 0.0)), Error);
}

TEST(AlphaBeta, LogMomentAtUnitExponent) {
  const ThickKernel k(1, 10.0, 0.01);
  const AlphaBeta ab = alpha_beta(k, SpectralPoint::exceptional(1, 1.0));
  EXPECT_NEAR(ab.alpha.real(), 0.09999993333331999999, 1e-17);
  EXPECT_NEAR(ab.alpha.real(), 0.1, 1e-5 * 0.1);
  EXPECT_NEAR(ab.beta.real(), 1.0, 1e-14);
}

TEST(AlphaBeta, FixedPointPowerMomentsCoincide) {
  for (double eps : {0.01, 0.1, 0.4}) {
    const ThickKernel k(1, 1.0, eps);
    EXPECT_LT(relerr(k.moment(0.5), k.moment(1.0 - 0.5)), 1e-15);
  }
}

TEST(AlphaBeta, AsymptoticContract) {
  for (int n = 1; n <= 3; ++n)
    for (double T : {10.0, 100.0, 1000.0})
      for (double eps : {1e-4, 1e-3, 1e-2})
        for (double frac : {0.55, 0.7, 0.85, 1.0}) {
          const double s = n * frac;
          const AlphaBeta ab = alpha_beta(ThickKernel(n, T, eps), SpectralPoint::exceptional(n, s));
          EXPECT_LE(std::abs(ab.alpha * std::pow(T, s) - 1.0), 2.0 * eps / T);
          EXPECT_LE(std::abs(ab.beta * std::pow(T, n - s) - 1.0), 2.0 * eps / T);
        }
}

TEST(AlphaBeta, CriticalLineUsesLogBasis) {
  const ThickKernel k(2, 5.0, 0.05);
  const AlphaBeta ab = alpha_beta(k, SpectralPoint::tempered(2, 4.0));
  EXPECT_LT(relerr(ab.alpha, k.moment(1.0, 0)), 1e-15);
  EXPECT_LT(relerr(ab.beta, k.moment(1.0, 1)), 1e-15);
  EXPECT_NEAR(ab.beta.real() / ab.alpha.real(), -std::log(5.0), 1e-3);
}

TEST(Interpolation, NodeProperty) {
  oracle::Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const int n = static_cast<int>(rng.integer(1, 4));
    const double b = rng.uniform(1.5, 6.0);
    const double eps = rng.log_uniform(1e-4, 0.2);
    const SpectralPoint sp = (i % 2 == 0) ? SpectralPoint::exceptional(n, rng.uniform(0.5 * n, n))
                                          : SpectralPoint::tempered(n, rng.uniform(0.0, 30.0));
    const InterpolationPair one = interpolation_weights(sp, 1.0, b, eps);
    const InterpolationPair nb = interpolation_weights(sp, b, b, eps);
    EXPECT_LT(std::abs(one.K - 1.0), 1e-12);
    EXPECT_LT(std::abs(one.L), 1e-12);
    EXPECT_LT(std::abs(nb.K), 1e-12);
    EXPECT_LT(std::abs(nb.L - 1.0), 1e-12);
  }
}

TEST(Interpolation, DegenerateNodeRejected) {
  try {
    interpolation_weights(SpectralPoint::exceptional(2, 1.0 + 1e-12), 5.0, 2.0, 0.01);
    FAIL() << "expected a degenerate-node error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::degenerate_node);
    EXPECT_NE(std::string(e.what()).find("b = 2"), std::string::npos);
  }
  EXPECT_THROW(interpolation_weights(SpectralPoint::exceptional(1, 0.8), 5.0, 1.0, 0.01), Error);
  EXPECT_NO_THROW(interpolation_weights(SpectralPoint::exceptional(2, 1.0 + 1e-6), 5.0, 2.0, 0.01));
}

TEST(ThickKernel, UnresolvableWindowRejectsPointValues) {
  const ThickKernel k(4, 1e4, 1e-5);
  EXPECT_FALSE(k.resolved());
  EXPECT_NEAR(k.constant() * window_measure(4, 1e4, 1e-5), 1.0, 1e-12);
  try {
    k(1e-4);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::numeric_degeneracy);
  }
}

TEST(Interpolation, GrowthMatchesExponent) {
  for (double s : {0.6, 0.75, 0.9, 1.0}) {
    double lo = INFINITY, hi = 0.0;
    for (double T = 10.0; T <= 1e4 * 1.0001; T *= std::sqrt(10.0)) {
      const InterpolationPair w = interpolation_weights(SpectralPoint::exceptional(1, s), T, 2.0, 0.01);
      const double r = std::abs(w.K) * std::pow(T, 1.0 - s);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    EXPECT_GT(lo, 0.0);
    EXPECT_LT(hi / lo, 10.0) << s;
  }
}

TEST(Interpolation, CriticalLineEnvelopeIsBounded) {
  const double b = 2.0;
  for (double T : {10.0, 100.0, 1000.0, 10000.0}) {
    double env = 0.0;
    for (int i = 0; i <= 500; ++i) {
      const InterpolationPair w = interpolation_weights(SpectralPoint::tempered(1, 0.1 * i), T, b, 0.01);
      env = std::max(env, std::abs(w.K) * std::sqrt(T) / std::log(T));
    }
    EXPECT_TRUE(std::isfinite(env));
    EXPECT_LT(env, 1.0 / std::log(b) + 0.05) << T;
  }
}

TEST(Interpolation, HomogeneousResidualExamples) {
  EXPECT_LE(homogeneous_interpolation_residual(1.0, 0.0, SpectralPoint::exceptional(1, 0.8), 7.0, 2.0, 0.01),
            1e-10);
  EXPECT_EQ(homogeneous_interpolation_residual(0.0, 0.0, SpectralPoint::exceptional(1, 0.8), 7.0, 2.0, 0.01),
            0.0);
  EXPECT_LE(homogeneous_interpolation_residual(1.0, 1.0, SpectralPoint::tempered(1, 3.0), 50.0, 2.0, 0.001),
            1e-10);
}

TEST(Interpolation, HomogeneousResidualProperty) {
  oracle::Rng rng(99);
  for (int i = 0; i < 1000; ++i) {
    const int n = static_cast<int>(rng.integer(1, 4));
    const cplx A(rng.uniform(-2, 2), rng.uniform(-2, 2));
    const cplx B(rng.uniform(-2, 2), rng.uniform(-2, 2));
    const SpectralPoint sp = (i % 3 == 0) ? SpectralPoint::tempered(n, rng.uniform(0.0, 50.0))
                                          : SpectralPoint::exceptional(n, rng.uniform(0.5 * n + 0.01, n));
    const double T = rng.log_uniform(1.0, 1e4);
    const double b = rng.uniform(1.5, 4.0);
    const double eps = rng.log_uniform(1e-4, 0.2);
    EXPECT_LE(homogeneous_interpolation_residual(A, B, sp, T, b, eps), 1e-10);
  }
}

namespace {

// Sup of |y^2 f'' - (n-1) y f' + s(n-s) f - g| with centered differences of step 1e-4 y.
double ode_residual(int n, double s, const std::function<double(double)>& g, double lo, double hi,
                    int samples) {
  const SpectralPoint sp = SpectralPoint::exceptional(n, s);
  const auto f = [&](double y) { return variation_of_parameters(n, sp, g, lo, hi, y); };
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double y = lo + (hi - lo) * (i + 0.5) / samples;
    const double h = 1e-4 * y;
    const double fp = f(y + h), f0 = f(y), fm = f(y - h);
    const double d2 = (fp - 2.0 * f0 + fm) / (h * h);
    const double d1 = (fp - fm) / (2.0 * h);
    worst = std::max(worst, std::abs(y * y * d2 - (n - 1) * y * d1 + s * (n - s) * f0 - g(y)));
  }
  return worst;
}

}  // namespace

TEST(VariationOfParameters, ZeroSource) {
  const auto zero = [](double) { return 0.0; };
  EXPECT_EQ(variation_of_parameters(1, SpectralPoint::exceptional(1, 0.75), zero, 0.5, 1.5, 1.0), 0.0);
}

TEST(VariationOfParameters, Battery) {
  const auto sq = [](double y) { return y * y; };
  const auto one = [](double) { return 1.0; };
  const auto wave = [](double y) { return std::sin(3.0 * y) + std::log(y); };
  EXPECT_LE(ode_residual(1, 0.75, sq, 0.5, 1.5, 20), 1e-6);
  EXPECT_LE(ode_residual(1, 0.5, one, 0.5, 1.5, 20), 1e-6);
  EXPECT_LE(ode_residual(1, 0.9, wave, 0.5, 1.5, 20), 1e-6);
  EXPECT_LE(ode_residual(2, 1.0, sq, 0.5, 1.5, 20), 1e-6);
  EXPECT_LE(ode_residual(2, 1.7, wave, 0.5, 1.5, 20), 1e-6);
  EXPECT_LE(ode_residual(3, 1.5, one, 0.5, 1.5, 20), 1e-6);
  EXPECT_LE(ode_residual(3, 2.4, sq, 0.5, 1.5, 20), 1e-6);
}

TEST(VariationOfParameters, HigherOrderStencil) {
  const auto g = [](double y) { return std::cos(y); };
  for (double s : {0.5, 0.8}) {
    const SpectralPoint sp = SpectralPoint::exceptional(1, s);
    const auto f = [&](double y) { return variation_of_parameters(1, sp, g, 0.5, 2.0, y); };
    for (double y : {0.8, 1.2, 1.7}) {
      const double d2 = oracle::fd_derivative(f, y, 2, 2e-3, 4);
      EXPECT_NEAR(y * y * d2 + s * (1 - s) * f(y), g(y), 1e-8) << s << " " << y;
    }
  }
}

TEST(VariationOfParameters, InitialConditions) {
  const auto g = [](double y) { return y; };
  const SpectralPoint sp = SpectralPoint::exceptional(2, 1.25);
  EXPECT_NEAR(variation_of_parameters(2, sp, g, 0.5, 1.5, 0.5), 0.0, 1e-15);
  const auto f = [&](double y) { return variation_of_parameters(2, sp, g, 0.5, 1.5, y); };
  EXPECT_NEAR(oracle::fd_derivative(f, 0.5 + 4e-3, 1, 1e-3, 4), 0.0, 1e-2);
}

TEST(VariationOfParameters, RejectsOutsideInterval) {
  const auto g = [](double) { return 1.0; };
  EXPECT_THROW(variation_of_parameters(1, SpectralPoint::exceptional(1, 0.75), g, 0.5, 1.5, 2.0), Error);
}

TEST(ExponentBudget, TwoDimensionalRemark) {
  const Rational delta = parse_rational("1305/1000");
  const Rational s1 = parse_rational("11/10");
  const ExponentBudget b = exponent_budget(2, delta, s1);
  EXPECT_EQ(b.P, Rational(8));
  EXPECT_EQ(b.eta_cont, (delta - 1) / 2);
  EXPECT_EQ(b.eta_s1, (delta - s1) / 2);
}

TEST(ExponentBudget, LatticeRankOne) {
  const ExponentBudget b = exponent_budget(1, Rational(1));
  EXPECT_EQ(b.P, Rational(8));
  EXPECT_EQ(b.eta_cont, Rational(1, 4));
  EXPECT_EQ(b.kinv_total_error_exp, Rational(-1, 3));
  EXPECT_EQ(b.kinv_log_power, Rational(2, 3));
  EXPECT_EQ(exponent_budget(4, Rational(3)).P, Rational(14));
}

TEST(ExponentBudget, BalanceIdentity) {
  for (int n = 1; n <= 50; ++n) {
    const ExponentBudget b = exponent_budget(n, Rational(n));
    EXPECT_EQ(b.P / 4, 1 + b.kernel_norm_exp) << n;
    EXPECT_EQ(b.kernel_norm_exp, Rational(n * n - 3 * n + 6, 4));
    EXPECT_EQ(b.eta_cont, Rational(4) * (Rational(n) - Rational(n, 2)) / b.P);
  }
}

TEST(ExponentBudget, RangeChecks) {
  EXPECT_THROW(exponent_budget(0, Rational(1)), Error);
  EXPECT_THROW(exponent_budget(2, Rational(1)), Error);
  EXPECT_THROW(exponent_budget(2, Rational(3)), Error);
  EXPECT_THROW(exponent_budget(2, Rational(3, 2), Rational(3, 2)), Error);
  EXPECT_THROW(exponent_budget(2, Rational(3, 2), Rational(1, 2)), Error);
}

TEST(EpsilonRank1, LatticeBalance) {
  const double T = 1e4;
  const EpsilonChoice c = epsilon_optimizer_rank1(1, 1.0, T, 1.0, 1.0);
  EXPECT_NEAR(c.eps, std::pow(T, -1.0 / 3.0) * std::pow(std::log(T), 2.0 / 3.0), 1e-14);
  EXPECT_NEAR(c.error_exponent, -1.0 / 3.0, 1e-15);
  EXPECT_NEAR(c.log_power, 2.0 / 3.0, 1e-15);
  EXPECT_LE(std::abs(c.smoothing_term - c.spectral_term) / c.spectral_term, 1e-12);
  EXPECT_TRUE(c.regime_ok);
}

TEST(EpsilonRank1, LogFactorOne) {
  const EpsilonChoice c = epsilon_optimizer_rank1(2, 1.5, std::numbers::e, 1.0, 1.0);
  EXPECT_NEAR(c.eps, std::exp(-4.0 * 0.5 / 8.0), 1e-14);
}

TEST(EpsilonRank1, BalanceProperty) {
  oracle::Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const int n = static_cast<int>(rng.integer(1, 6));
    const double delta = rng.uniform(0.5 * n + 0.01, n);
    const KernelRoute route = (i % 2 == 0) ? KernelRoute::smoothed : KernelRoute::k_invariant;
    const EpsilonChoice c = epsilon_optimizer_rank1(n, delta, rng.log_uniform(3.0, 1e8),
                                                    rng.log_uniform(0.1, 10.0), rng.log_uniform(0.1, 10.0),
                                                    route);
    EXPECT_LE(std::abs(c.smoothing_term - c.spectral_term) / c.spectral_term, 1e-12);
    EXPECT_EQ(c.regime_ok, c.eps < 0.5);
  }
}

TEST(EpsilonRank1, SmallHeightFlagsRegime) {
  const EpsilonChoice c = epsilon_optimizer_rank1(1, 1.0, 3.0, 1.0, 1.0);
  EXPECT_GE(c.eps, 0.5);
  EXPECT_FALSE(c.regime_ok);
  EXPECT_THROW(epsilon_optimizer_rank1(1, 1.0, 1.0, 1.0, 1.0), Error);
}
