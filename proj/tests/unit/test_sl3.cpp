#include "horolab/error.hpp"
#include "horolab/sl3.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace horolab;
using namespace horolab::sl3;

namespace {

constexpr double kThird = 1.0 / 3.0;

// Displayed y-part of the second operator, differentiated numerically.
double second_operator_fd(double s, double r, double y1, double y2) {
  const auto f = [&](double a, double b) { return std::pow(a, s) * std::pow(b, r); };
  const double h1 = 1e-2 * y1, h2 = 1e-2 * y2;
  const auto d1 = [&](int m, double b) {
    return oracle::fd_derivative([&](double a) { return f(a, b); }, y1, m, h1, 4);
  };
  const auto d2 = [&](double a) {
    return oracle::fd_derivative([&](double b) { return f(a, b); }, y2, 2, h2, 4);
  };
  const double f112 = oracle::fd_derivative([&](double b) { return d1(2, b); }, y2, 1, h2, 4);
  const double f122 = oracle::fd_derivative([&](double a) { return d2(a); }, y1, 1, h1, 4);
  return -y1 * y1 * y2 * f112 + y1 * y2 * y2 * f122 - y2 * y2 * d2(y1) + y1 * y1 * d1(2, y2);
}

}  // namespace

TEST(LambdaFromNu, Examples) {
  const LambdaPair base = lambda_from_nu({kThird, kThird});
  EXPECT_NEAR(base.lambda1.real(), 1.0, 1e-15);
  EXPECT_EQ(base.lambda2, 0.0);
  const LambdaPair origin = lambda_from_nu({0.0, 0.0});
  EXPECT_EQ(origin.lambda1, 0.0);
  EXPECT_EQ(origin.lambda2, 0.0);
}

TEST(LambdaFromNu, SwapSymmetry) {
  oracle::Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const cplx a(rng.uniform(-1, 1), rng.uniform(-1, 1)), b(rng.uniform(-1, 1), rng.uniform(-1, 1));
    const LambdaPair x = lambda_from_nu({a, b});
    const LambdaPair y = lambda_from_nu({b, a});
    EXPECT_LT(std::abs(x.lambda1 - y.lambda1), 1e-14);
    EXPECT_LT(std::abs(x.lambda2 + y.lambda2), 1e-14);
  }
}

TEST(LambdaFromSr, Examples) {
  const LambdaPair base = lambda_from_sr({1.0, 1.0});
  EXPECT_EQ(base.lambda1, 1.0);
  EXPECT_EQ(base.lambda2, 0.0);
  const LambdaPair origin = lambda_from_sr({0.0, 0.0});
  EXPECT_EQ(origin.lambda1, 0.0);
  EXPECT_EQ(origin.lambda2, 0.0);
}

TEST(SrPair, RoundTrip) {
  oracle::Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    const NuPair nu{cplx(rng.uniform(-1, 1), rng.uniform(-1, 1)), cplx(rng.uniform(-1, 1), 0.0)};
    const SRPair sr = sr_from_nu(nu);
    EXPECT_LT(std::abs(sr.s + sr.r - 3.0 * (nu.nu1 + nu.nu2)), 1e-14);
    const NuPair back = nu_from_sr(sr);
    EXPECT_LT(std::abs(back.nu1 - nu.nu1), 1e-14);
    EXPECT_LT(std::abs(back.nu2 - nu.nu2), 1e-14);
  }
}

TEST(LambdaParameterizations, FirstCasimirAgrees) {
  oracle::Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const NuPair nu{rng.uniform(0, 1), rng.uniform(0, 1)};
    EXPECT_LT(std::abs(lambda_from_nu(nu).lambda1 - lambda_from_sr(sr_from_nu(nu)).lambda1), 1e-13);
  }
}

TEST(LambdaParameterizations, SecondCasimirDiscrepancyIsCharacterized) {
  oracle::Rng rng(4);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double a = rng.uniform(0, 1), b = rng.uniform(0, 1);
    const NuPair nu{a, b};
    const SRPair sr = sr_from_nu(nu);
    const cplx from_sr = lambda_from_sr(sr).lambda2;
    const cplx from_nu = lambda_from_nu(nu).lambda2;
    const cplx monomial = casimir_apply_monomial(2, sr);
    worst = std::max(worst, std::abs(from_sr - from_nu));
    EXPECT_LT(std::abs(from_sr - from_nu - (2 * a * a + 8 * a * b + 8 * b * b - 3 * a - 3 * b)), 1e-13);
    EXPECT_LT(std::abs(monomial - from_nu - (sr.s - sr.r)), 1e-13);
    EXPECT_LT(std::abs(monomial - from_sr + 2.0 * sr.s * (sr.s - 1.0)), 1e-13);
  }
  RecordProperty("max_lambda2_discrepancy", std::to_string(worst));
  EXPECT_GT(worst, 0.1);
}

TEST(Casimir, FirstOperatorExamples) {
  EXPECT_EQ(casimir_apply_monomial(1, {0.0, 0.0}), 0.0);
  EXPECT_NEAR(casimir_apply_monomial(1, {1.0, 1.0}).real(), 1.0, 1e-15);
  EXPECT_THROW(casimir_apply_monomial(3, {1.0, 1.0}), Error);
}

TEST(Casimir, FirstOperatorMatchesLambdaFromSr) {
  oracle::Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const SRPair sr{cplx(rng.uniform(-2, 3), rng.uniform(-2, 2)), cplx(rng.uniform(-2, 3), rng.uniform(-2, 2))};
    EXPECT_LT(std::abs(casimir_apply_monomial(1, sr) - lambda_from_sr(sr).lambda1), 1e-10);
  }
}

TEST(Casimir, SecondOperatorOnDiagonal) {
  for (double s : {0.3, 1.0, 1.7}) {
    EXPECT_NEAR(casimir_apply_monomial(2, {s, s}).real(), 0.0, 1e-14);
    EXPECT_NEAR(lambda_from_sr({s, s}).lambda2.real(), 2.0 * s * (s - 1.0), 1e-14);
  }
}

TEST(Casimir, MonomialScalarIsYIndependent) {
  oracle::Rng rng(6);
  for (int op = 1; op <= 2; ++op)
    for (int i = 0; i < 10; ++i) {
      const SRPair sr{cplx(rng.uniform(-1, 2), rng.uniform(-1, 1)), cplx(rng.uniform(-1, 2), 0.0)};
      const cplx ref = casimir_apply_monomial(op, sr);
      for (int j = 0; j < 10; ++j) {
        const cplx got = casimir_ratio_at(op, sr, rng.uniform(0.2, 5), rng.uniform(0.2, 5));
        EXPECT_LE(std::abs(got - ref), 1e-10 * std::max(1.0, std::abs(ref)));
      }
    }
}

TEST(Casimir, SecondOperatorFiniteDifferenceOracle) {
  oracle::Rng rng(7);
  for (int i = 0; i < 10; ++i) {
    const double s = rng.uniform(-1, 2), r = rng.uniform(-1, 2);
    const double y1 = rng.uniform(0.5, 3), y2 = rng.uniform(0.5, 3);
    const double mono = std::pow(y1, s) * std::pow(y2, r);
    const double ref = -second_operator_fd(s, r, y1, y2) / mono;
    EXPECT_NEAR(casimir_apply_monomial(2, {s, r}).real(), ref, 1e-6 * std::max(1.0, std::abs(ref)));
  }
}

TEST(NuOrbit, TemperedBase) {
  const NuOrbit o = nu_orbit({1.0, 0.0});
  ASSERT_EQ(o.roots.size(), 6u);
  EXPECT_LE(o.max_residual, 1e-9);
  int hits = 0;
  for (const NuPair& nu : o.roots)
    if (std::abs(nu.nu1 - kThird) < 1e-9 && std::abs(nu.nu2 - kThird) < 1e-9) ++hits;
  EXPECT_GE(hits, 1);
}

TEST(NuOrbit, OriginHasMultiplicity) {
  const NuOrbit o = nu_orbit({0.0, 0.0});
  ASSERT_EQ(o.roots.size(), 6u);
  int at_origin = 0;
  for (std::size_t i = 0; i < o.roots.size(); ++i)
    if (std::abs(o.roots[i].nu1) < 1e-12 && std::abs(o.roots[i].nu2) < 1e-12) {
      ++at_origin;
      EXPECT_EQ(o.multiplicity[i], 3);
    }
  EXPECT_EQ(at_origin, 3);
}

TEST(NuOrbit, RandomRealOrbitProperty) {
  oracle::Rng rng(8);
  for (int i = 0; i < 50; ++i) {
    const NuPair nu{rng.uniform(0, 1), rng.uniform(0, 1)};
    const LambdaPair lp = lambda_from_nu(nu);
    const NuOrbit o = nu_orbit(lp);
    ASSERT_EQ(o.roots.size(), 6u);
    double best = INFINITY;
    for (const NuPair& r : o.roots) {
      EXPECT_LE(orbit_residual(r, lp), 1e-9);
      best = std::min(best, std::max(std::abs(r.nu1 - nu.nu1), std::abs(r.nu2 - nu.nu2)));
      const LambdaPair swapped = lambda_from_nu({r.nu2, r.nu1});
      EXPECT_LT(std::abs(swapped.lambda1 - lp.lambda1), 1e-8);
      EXPECT_LT(std::abs(swapped.lambda2 + lp.lambda2), 1e-8);
    }
    EXPECT_LE(best, 1e-9);
  }
}

TEST(NuOrbit, ComplexLambda) {
  const LambdaPair lp{cplx(2.5, 0.3), cplx(-0.4, 1.1)};
  const NuOrbit o = nu_orbit(lp);
  ASSERT_EQ(o.roots.size(), 6u);
  for (const NuPair& r : o.roots) EXPECT_LE(orbit_residual(r, lp), 1e-9);
}

TEST(AlphaI, ProductStructureAndLimit) {
  const KernelPair k(7.0, 7.0, 0.02);
  const SRPair sr{0.9, 0.9};
  const cplx one = k.k1.moment(0.9);
  EXPECT_LT(std::abs(alpha_i(k, sr) - one * one), 1e-15);
  const KernelPair thin(4.0, 9.0, 1e-7);
  const SRPair e{1.3, 0.6};
  EXPECT_NEAR(alpha_i(thin, e).real(), std::pow(4.0, -1.3) * std::pow(9.0, -0.6), 1e-9);
}

TEST(AlphaI, UnitHeightsMatchQuadrature) {
  const KernelPair k(1.0, 1.0, 0.2);
  const auto f = [&](double y) { return k.k1(y) * std::pow(y, 2.0) / (y * y * y); };
  const double one = oracle::simpson(f, k.k1.y_min(), k.k1.y_max(), 1e-16);
  EXPECT_NEAR(alpha_i(k, {2.0, 2.0}).real(), one * one, 1e-10 * one * one);
}

TEST(NodeScheme, DefaultConditionNumber) {
  const NodeScheme6 sch = build_node_scheme({1.0, 0.0}, default_nodes(), 0.01);
  EXPECT_LT(sch.condition_number(), 1e12);
  RecordProperty("condition_number", std::to_string(sch.condition_number()));
}

TEST(NodeScheme, NodeTargetsGiveUnitVectors) {
  const NodeScheme6 sch = build_node_scheme({1.0, 0.0}, default_nodes(), 0.01);
  for (int j = 0; j < 6; ++j) {
    const auto K = sch.weights(sch.nodes()[j].b1, sch.nodes()[j].b2);
    for (int i = 0; i < 6; ++i) EXPECT_LT(std::abs(K[i] - (i == j ? 1.0 : 0.0)), 1e-10) << i << " " << j;
  }
}

TEST(NodeScheme, ReproducesMixtures) {
  oracle::Rng rng(9);
  const LambdaPair lps[] = {{1.0, 0.0}, lambda_from_nu({0.2, 0.7}), lambda_from_nu({0.1, 0.15})};
  for (const LambdaPair& lp : lps) {
    const NodeScheme6 sch = build_node_scheme(lp, default_nodes(), 0.01);
    for (int trial = 0; trial < 20; ++trial) {
      std::array<cplx, 6> A;
      for (cplx& a : A) a = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
      const auto data = [&](double T1, double T2) {
        const KernelPair k(T1, T2, sch.eps());
        cplx v = 0.0;
        for (int i = 0; i < 6; ++i) v += A[i] * alpha_basis(k, sch.basis()[i]);
        return v;
      };
      std::array<cplx, 6> nodes;
      for (int j = 0; j < 6; ++j) nodes[j] = data(sch.nodes()[j].b1, sch.nodes()[j].b2);
      const double T1 = trial == 0 ? 7.0 : rng.uniform(1.5, 30), T2 = trial == 0 ? 13.0 : rng.uniform(1.5, 30);
      const cplx ref = data(T1, T2);
      EXPECT_LE(std::abs(sch.reproduce(nodes, T1, T2) - ref), 1e-8 * std::abs(ref));
    }
  }
}

TEST(NodeScheme, RejectsBadNodes) {
  auto nodes = default_nodes();
  nodes[1] = nodes[0];
  try {
    build_node_scheme({1.0, 0.0}, nodes, 0.01);
    FAIL() << "expected a node-choice error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::node_choice);
  }
  nodes = default_nodes();
  nodes[0] = {1.0, 3.0};
  EXPECT_THROW(build_node_scheme({1.0, 0.0}, nodes, 0.01), Error);
  nodes = default_nodes();
  nodes[1] = {nodes[0].b1 * (1.0 + 1e-9), nodes[0].b2};
  try {
    build_node_scheme(lambda_from_nu({0.2, 0.7}), nodes, 0.01);
    FAIL() << "expected a node-choice error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::node_choice);
  }
}

TEST(MT, Examples) {
  const std::array<cplx, 6> unit{1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  for (double T : {1.0, 5.0, 40.0}) EXPECT_NEAR(m_T({0.0, 0.0}, T, 2 * T, unit).real(), 1.0, 1e-14);
  std::array<cplx, 6> ones;
  ones.fill(1.0);
  const NuOrbit o = nu_orbit({1.0, 0.0});
  cplx ref = 0.0;
  for (const NuPair& nu : o.roots) {
    const SRPair sr = sr_from_nu(nu);
    ref += std::pow(cplx(3.0), sr.s) * std::pow(cplx(8.0), sr.r);
  }
  EXPECT_LT(std::abs(m_T({1.0, 0.0}, 3.0, 8.0, ones) - ref), 1e-11 * std::abs(ref));
  int tt = 0;
  for (const NuPair& nu : o.roots)
    if (std::abs(sr_from_nu(nu).s - 1.0) < 1e-9 && std::abs(sr_from_nu(nu).r - 1.0) < 1e-9) ++tt;
  EXPECT_GE(tt, 1);
  std::array<cplx, 6> twice;
  twice.fill(2.0);
  EXPECT_LT(std::abs(m_T({1.0, 0.0}, 3.0, 8.0, twice) - 2.0 * ref), 1e-11 * std::abs(ref));
}

TEST(Green, Examples) {
  const GreenKernel g0 = green_kernel(0.0, {0.0, 0.0}, {3.0, 4.0});
  EXPECT_EQ(g0.kappa, 1.0);
  EXPECT_NEAR(g0.value, 5.0, 1e-14);
  const GreenKernel g1 = green_kernel(0.5, {0.0, 0.0}, {3.0, 4.0});
  EXPECT_NEAR(g1.kappa, 2.0, 1e-15);
  EXPECT_NEAR(g1.value, 25.0, 1e-12);
  EXPECT_THROW(green_kernel(0.5, {1.0, 1.0}, {1.0, 1.0}), Error);
  EXPECT_THROW(green_exponent(-0.1), Error);
}

TEST(Green, HomogeneityAndResidual) {
  oracle::Rng rng(10);
  for (int i = 0; i < 50; ++i) {
    const double l1 = rng.uniform(-1.0 / 16.0, 5.0);
    const double kappa = green_exponent(l1);
    EXPECT_GE(kappa, 0.5);
    EXPECT_NEAR(kappa * (kappa - 1.0), 4.0 * l1, 1e-12 * std::max(1.0, std::abs(l1)));
    const double c = rng.uniform(0.5, 3.0);
    const double a = green_kernel(l1, {0, 0}, {0.3, 0.4}).value;
    const double b = green_kernel(l1, {0, 0}, {0.3 * c, 0.4 * c}).value;
    EXPECT_NEAR(b, std::pow(c, kappa) * a, 1e-12 * b);
    for (double r : {0.1, 1.0, 7.0}) EXPECT_LE(green_radial_residual(l1, r), 1e-10);
  }
  const auto h = [&](double r) { return std::pow(r, green_exponent(0.7)); };
  const double r = 1.3;
  const double lhs = 0.5 * std::numbers::pi * r * r * oracle::fd_derivative(h, r, 2, 1e-2, 4);
  EXPECT_NEAR(lhs, 2.0 * std::numbers::pi * 0.7 * h(r), 1e-7);
}

TEST(EpsilonSl3, Examples) {
  const EpsilonSl3 e = epsilon_optimizer_sl3(std::numbers::e, std::numbers::e, 1.0, 1.0);
  EXPECT_NEAR(e.eps, std::exp(-1.0), 1e-15);
  const EpsilonSl3 b = epsilon_optimizer_sl3(100.0, 1000.0, 1.0, 1.0);
  EXPECT_LE(std::abs(b.smoothing_term - b.spectral_term) / b.spectral_term, 1e-12);
  EXPECT_TRUE(b.regime_ok);
  EXPECT_FALSE(epsilon_optimizer_sl3(std::numbers::e, std::numbers::e, 10.0, 1.0).regime_ok);
  EXPECT_THROW(epsilon_optimizer_sl3(1.0, 5.0, 1.0, 1.0), Error);
}
