#include "horolab/error.hpp"
#include "horolab/experiment.hpp"
#include "horolab/kernel.hpp"
#include "horolab/sl3.hpp"
#include "horolab/sln.hpp"

#include <cmath>
#include <cstdio>
#include <functional>

namespace horolab {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

void check(std::vector<CheckResult>& out, const std::string& name,
           const std::function<std::pair<bool, std::string>()>& body) {
  try {
    auto [ok, detail] = body();
    out.push_back({name, ok, detail});
  } catch (const Error& e) {
    out.push_back({name, false, std::string(error_code_name(e.code())) + ": " + e.what()});
  }
}

void kernel_checks(std::vector<CheckResult>& out) {
  check(out, "kernel normalization", [] {
    double worst = 0.0;
    for (int n = 1; n <= 4; ++n)
      for (double T : {1.0, 10.0, 1e4}) {
        const ThickKernel k(n, T, 0.01);
        worst = std::max(worst, std::abs(k.moment(0.0).real() - 1.0));
      }
    return std::pair{worst <= 1e-12, "max |int psi - 1| = " + num(worst)};
  });
  check(out, "interpolation nodes", [] {
    const SpectralPoint sp = SpectralPoint::exceptional(1, 0.8);
    const auto a = interpolation_weights(sp, 1.0, 2.0, 0.01);
    const auto b = interpolation_weights(sp, 2.0, 2.0, 0.01);
    const double err = std::max({std::abs(a.K - 1.0), std::abs(a.L), std::abs(b.K), std::abs(b.L - 1.0)});
    return std::pair{err <= 1e-12, "node error " + num(err)};
  });
  check(out, "homogeneous residual", [] {
    const double r1 = homogeneous_interpolation_residual(1.0, 0.0, SpectralPoint::exceptional(1, 0.8), 7.0, 2.0, 0.01);
    const double r2 = homogeneous_interpolation_residual(1.0, 1.0, SpectralPoint::tempered(1, 3.0), 50.0, 2.0, 0.001);
    return std::pair{std::max(r1, r2) <= 1e-10, "residuals " + num(r1) + ", " + num(r2)};
  });
  check(out, "ODE residual", [] {
    double worst = 0.0;
    for (double s : {0.75, 0.5}) {
      const SpectralPoint sp = SpectralPoint::exceptional(1, s);
      const auto g = [](double y) { return y * y; };
      const auto f = [&](double y) { return variation_of_parameters(1, sp, g, 0.5, 1.5, y); };
      for (double y = 0.6; y <= 1.4; y += 0.2) {
        const double h = 1e-4 * y;
        const double d2 = (f(y + h) - 2.0 * f(y) + f(y - h)) / (h * h);
        worst = std::max(worst, std::abs(y * y * d2 + s * (1.0 - s) * f(y) - g(y)));
      }
    }
    return std::pair{worst <= 1e-6, "max residual " + num(worst)};
  });
  check(out, "budget n=1 delta=1", [] {
    const ExponentBudget b = exponent_budget(1, Rational(1));
    const bool ok = b.kinv_total_error_exp == Rational(-1, 3) && b.kinv_log_power == Rational(2, 3);
    return std::pair{ok, "exponent " + to_string(b.kinv_total_error_exp) + ", log power " +
                             to_string(b.kinv_log_power)};
  });
}

void modular_checks(std::vector<CheckResult>& out) {
  check(out, "moebius examples", [] {
    const UpperHalfPoint a = moebius({0, -1, 1, 0}, {0.0, 1.0});
    const UpperHalfPoint b = moebius({1, 1, 0, 1}, {0.0, 1.0});
    const double err = std::abs(a.x) + std::abs(a.y - 1.0) + std::abs(b.x - 1.0) + std::abs(b.y - 1.0);
    return std::pair{err <= 1e-15, "error " + num(err)};
  });
  check(out, "reduction round trip", [] {
    const UpperHalfPoint z{0.7, 0.1};
    const Reduction r = reduce(z);
    const UpperHalfPoint w = moebius(r.g, z);
    const double err = std::abs(w.x - r.point.x) + std::abs(w.y - r.point.y);
    return std::pair{err <= 1e-13 && in_fundamental_domain(r.point, 1e-15), "error " + num(err)};
  });
  check(out, "fold/unfold at T=5, eps=0.05", [] {
    const BumpTestFunction F = BumpTestFunction::default_bump();
    const ThickKernel k(1, 5.0, 0.05);
    const QuadratureSpec q;
    const double a = thickened_average_folded(F, k, q);
    const double b = thickened_average_unfolded(F, k, q);
    const double rel = std::abs(a - b) / std::abs(b);
    return std::pair{rel <= 1e-6, "relative difference " + num(rel)};
  });
}

void sl3_checks(std::vector<CheckResult>& out) {
  check(out, "tempered base lambda", [] {
    const auto a = sl3::lambda_from_nu({1.0 / 3.0, 1.0 / 3.0});
    const auto b = sl3::lambda_from_sr(sl3::sr_from_nu({1.0 / 3.0, 1.0 / 3.0}));
    const double err = std::abs(a.lambda1 - 1.0) + std::abs(a.lambda2) + std::abs(b.lambda1 - 1.0) +
                       std::abs(b.lambda2);
    return std::pair{err <= 1e-14, "error " + num(err)};
  });
  check(out, "orbit of nu = (0.2, 0.7)", [] {
    const sl3::NuPair nu{0.2, 0.7};
    const auto orbit = sl3::nu_orbit(sl3::lambda_from_nu(nu));
    double best = INFINITY;
    for (const auto& r : orbit.roots)
      best = std::min(best, std::abs(r.nu1 - nu.nu1) + std::abs(r.nu2 - nu.nu2));
    return std::pair{orbit.roots.size() == 6 && orbit.max_residual <= 1e-9 && best <= 1e-9,
                     "residual " + num(orbit.max_residual) + ", distance " + num(best)};
  });
  check(out, "default node scheme", [] {
    const auto s = sl3::build_node_scheme({1.0, 0.0}, sl3::default_nodes(), 0.01);
    return std::pair{s.condition_number() < 1e12, "condition number " + num(s.condition_number())};
  });
}

void sln_checks(std::vector<CheckResult>& out) {
  check(out, "b table n=3", [] {
    const auto t = sln::b_table(3);
    const bool ok = t.b == std::vector<std::vector<std::int64_t>>{{1, 2}, {2, 1}};
    return std::pair{ok, ok ? "[[1,2],[2,1]]" : "mismatch"};
  });
  check(out, "Laplace-Beltrami n=4", [] {
    const cplx s[3] = {1.0, 1.0, 1.0};
    const cplx v = sln::laplace_beltrami_monomial(4, s);
    const cplx w = sln::casimir_n4_monomial(1, s);
    return std::pair{v == cplx(-2.0) && w == v, "value " + num(v.real())};
  });
  check(out, "epsilon balance n=2..6", [] {
    double worst = 0.0;
    for (int n = 2; n <= 6; ++n) {
      const std::vector<double> T(n - 1, 37.0);
      const auto e = sln::epsilon_optimizer_sln(n, T, 1.3, 0.7);
      worst = std::max(worst, std::abs(e.smoothing_term - e.spectral_term) / e.spectral_term);
    }
    return std::pair{worst <= 1e-12, "max relative mismatch " + num(worst)};
  });
}

}  // namespace

std::vector<CheckResult> verify_suite(std::string_view suite) {
  std::vector<CheckResult> out;
  const bool all = suite == "all";
  bool known = all;
  if (all || suite == "kernel") known = true, kernel_checks(out);
  if (all || suite == "modular") known = true, modular_checks(out);
  if (all || suite == "sl3") known = true, sl3_checks(out);
  if (all || suite == "sln") known = true, sln_checks(out);
  if (!known) raise(ErrorCode::config, "unknown verify suite '" + std::string(suite) + "'");
  return out;
}

}  // namespace horolab
