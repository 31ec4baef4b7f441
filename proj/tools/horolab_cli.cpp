#include "horolab/horolab.h"

#include <CLI11.hpp>

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

int exit_code_for(int status) {
  switch (status) {
    case HORO_OK: return kExitPass;
    case HORO_ERR_CONFIG:
    case HORO_ERR_IO:
    case HORO_ERR_DOMAIN:
    case HORO_ERR_NULL_POINTER:
      return kExitConfig;
    default: return kExitNumeric;
  }
}

int report(int status) {
  if (status != HORO_OK)
    std::fprintf(stderr, "error: %s: %s\n", horo_status_string(status), horo_last_error());
  return exit_code_for(status);
}

std::string rat(const horo_rational_t& q) {
  if (q.den == 1) return std::to_string(q.num);
  return std::to_string(q.num) + "/" + std::to_string(q.den);
}

std::string cnum(double re, double im) {
  char buf[96];
  if (im == 0.0) std::snprintf(buf, sizeof buf, "%.12g", re);
  else std::snprintf(buf, sizeof buf, "%.12g%+.12gi", re, im);
  return buf;
}

int cmd_exponents(int n, const std::string& delta, const std::string& s1) {
  horo_budget_t b;
  if (int rc = horo_exponent_budget(n, delta.c_str(), s1.empty() ? nullptr : s1.c_str(), &b))
    return report(rc);
  std::printf("n                      %d\n", b.n);
  std::printf("delta                  %s\n", rat(b.delta).c_str());
  std::printf("s1                     %s\n", rat(b.s1).c_str());
  std::printf("P                      %s\n", rat(b.P).c_str());
  std::printf("eta_cont               %s\n", rat(b.eta_cont).c_str());
  std::printf("eta_s1                 %s\n", rat(b.eta_s1).c_str());
  std::printf("kernel_norm_exp        %s\n", rat(b.kernel_norm_exp).c_str());
  std::printf("eps_exponent           %s\n", rat(b.eps_exponent).c_str());
  std::printf("total_error_exp        %s\n", rat(b.total_error_exp).c_str());
  std::printf("log_power              %s\n", rat(b.log_power).c_str());
  std::printf("kinv_total_error_exp   %s\n", rat(b.kinv_total_error_exp).c_str());
  std::printf("kinv_log_power         %s\n", rat(b.kinv_log_power).c_str());
  return kExitPass;
}

int cmd_horocycle(const std::string& path, int workers, const std::string& out, bool timing) {
  horo_experiment_t e = nullptr;
  if (int rc = horo_experiment_load(&e, path.c_str())) return report(rc);
  int rc = HORO_OK;
  if (workers > 0) rc = horo_experiment_set_workers(e, workers);
  if (rc == HORO_OK && !out.empty()) rc = horo_experiment_set_output(e, out.c_str());
  if (rc == HORO_OK) rc = horo_experiment_run(e, timing ? 1 : 0);
  if (rc == HORO_OK) {
    size_t needed = 0;
    horo_experiment_summary(e, nullptr, 0, &needed);
    std::string text(needed, '\0');
    rc = horo_experiment_summary(e, text.data(), text.size(), &needed);
    if (rc == HORO_OK) std::fputs(text.c_str(), stdout);
  }
  if (rc == HORO_OK) {
    const int wrc = horo_experiment_write_report(e, nullptr);
    if (wrc != HORO_OK && wrc != HORO_ERR_CONFIG) rc = wrc;
  }
  int passed = 0;
  if (rc == HORO_OK) rc = horo_experiment_passed(e, &passed);
  horo_experiment_destroy(e);
  if (rc != HORO_OK) return report(rc);
  return passed ? kExitPass : kExitFail;
}

void print_check(const char* name, int passed, const char* detail, void*) {
  std::printf("%s  %s: %s\n", passed ? "PASS" : "FAIL", name, detail);
}

int cmd_verify(const std::string& suite) {
  int all = 0;
  if (int rc = horo_verify(suite.c_str(), print_check, nullptr, &all)) return report(rc);
  return all ? kExitPass : kExitFail;
}

int cmd_sl3_roots(double l1, double l2) {
  const double lambda[4] = {l1, 0.0, l2, 0.0};
  double roots[24];
  int mult[6];
  double residual = 0.0;
  if (int rc = horo_sl3_nu_orbit(lambda, roots, mult, &residual)) return report(rc);
  std::printf("%-4s %-34s %-34s %-34s %-34s %s\n", "i", "nu1", "nu2", "s", "r", "mult");
  for (int i = 0; i < 6; ++i) {
    double sr[4];
    horo_sl3_sr_from_nu(roots + 4 * i, sr);
    std::printf("%-4d %-34s %-34s %-34s %-34s %d\n", i + 1,
                cnum(roots[4 * i], roots[4 * i + 1]).c_str(),
                cnum(roots[4 * i + 2], roots[4 * i + 3]).c_str(), cnum(sr[0], sr[1]).c_str(),
                cnum(sr[2], sr[3]).c_str(), mult[i]);
  }
  std::printf("max residual %.3e\n", residual);
  return kExitPass;
}

int cmd_sl3_scheme(double t1, double t2, double eps, double l1, double l2) {
  const double lambda[4] = {l1, 0.0, l2, 0.0};
  horo_sl3_scheme_t s = nullptr;
  if (int rc = horo_sl3_scheme_create(&s, lambda, nullptr, eps)) return report(rc);
  double cond = 0.0, w[12], ex[24];
  int rc = horo_sl3_scheme_condition(s, &cond);
  if (rc == HORO_OK) rc = horo_sl3_scheme_weights(s, t1, t2, w);
  if (rc == HORO_OK) rc = horo_sl3_scheme_exponents(s, ex);
  horo_sl3_scheme_destroy(s);
  if (rc != HORO_OK) return report(rc);
  std::printf("condition number %.6e\n", cond);
  std::printf("%-4s %-34s %-34s %s\n", "i", "s", "r", "K_i");
  for (int i = 0; i < 6; ++i)
    std::printf("%-4d %-34s %-34s %s\n", i + 1, cnum(ex[4 * i], ex[4 * i + 1]).c_str(),
                cnum(ex[4 * i + 2], ex[4 * i + 3]).c_str(), cnum(w[2 * i], w[2 * i + 1]).c_str());
  return kExitPass;
}

int cmd_sln_table(int n) {
  size_t needed = 0;
  horo_sln_b_table(n, nullptr, 0, &needed);
  if (needed == 0) return report(horo_sln_b_table(n, nullptr, 0, &needed));
  std::vector<long long> b(needed);
  if (int rc = horo_sln_b_table(n, b.data(), b.size(), &needed)) return report(rc);
  const int m = n - 1;
  std::printf("b table (n = %d)\n", n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) std::printf("%5lld", b[i * m + j]);
    std::printf("\n");
  }
  std::vector<horo_rational_t> e(m);
  if (int rc = horo_sln_icont_exponents(n, e.data(), e.size(), &needed)) return report(rc);
  std::printf("I_cont exponents:");
  for (const auto& q : e) std::printf(" %s", rat(q).c_str());
  std::printf("\n");
  std::vector<int> ye(m), we(m);
  if (int rc = horo_sln_kernel_widths(n, ye.data(), we.data(), m, &needed)) return report(rc);
  std::printf("measure exponents:");
  for (int v : ye) std::printf(" %d", v);
  std::printf("\nkernel width exponents:");
  for (int v : we) std::printf(" %d", v);
  std::printf("\n");
  unsigned long long w = 0;
  if (horo_sln_weyl_orbit_size(n, &w) == HORO_OK) std::printf("Weyl orbit size: %llu\n", w);
  else std::printf("Weyl orbit size: overflow\n");
  return kExitPass;
}

int cmd_sln_budget(int n, const std::vector<double>& T, double ng, double n1) {
  horo_sln_eps_t e;
  if (int rc = horo_sln_epsilon(n, T.data(), T.size(), ng, n1, &e)) return report(rc);
  double icont = 0.0;
  horo_sln_icont(n, T.data(), T.size(), &icont);
  std::printf("I_cont           %.12g\n", icont);
  std::printf("eps              %.12g\n", e.eps);
  std::printf("error exponent   %.12g\n", e.error_exponent);
  std::printf("smoothing term   %.12g\n", e.smoothing_term);
  std::printf("spectral term    %.12g\n", e.spectral_term);
  std::printf("regime           %s\n", e.regime_ok ? "asymptotic" : "asymptotic regime not reached");
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thickened-kernel spectral interpolation laboratory"};
  app.require_subcommand(1);
  int exit_code = kExitPass;

  auto* exponents = app.add_subcommand("exponents", "Exact exponent budget for rank one");
  int ex_n = 1;
  std::string ex_delta, ex_s1;
  exponents->add_option("--n", ex_n, "Dimension n")->required();
  exponents->add_option("--delta", ex_delta, "Critical exponent (decimal or a/b)")->required();
  exponents->add_option("--s1", ex_s1, "First exceptional parameter (default n/2)");
  exponents->callback([&] { exit_code = cmd_exponents(ex_n, ex_delta, ex_s1); });

  auto* horocycle = app.add_subcommand("horocycle", "Run an experiment from a config file");
  std::string h_config, h_out;
  int h_workers = 0;
  bool h_no_timing = false;
  horocycle->add_option("--config", h_config, "Config file")->required();
  horocycle->add_option("--workers", h_workers, "Override worker count");
  horocycle->add_option("--out", h_out, "Override output path");
  horocycle->add_flag("--no-timing", h_no_timing, "Write zero wall times for byte-stable output");
  horocycle->callback([&] { exit_code = cmd_horocycle(h_config, h_workers, h_out, !h_no_timing); });

  auto* verify = app.add_subcommand("verify", "Run module self-checks");
  std::string v_suite = "all";
  verify->add_option("--suite", v_suite, "kernel, modular, sl3, sln or all")
      ->check(CLI::IsMember({"kernel", "modular", "sl3", "sln", "all"}));
  verify->callback([&] { exit_code = cmd_verify(v_suite); });

  auto* sl3 = app.add_subcommand("sl3", "SL3 spectral algebra");
  sl3->require_subcommand(1);
  auto* roots = sl3->add_subcommand("roots", "Six-root orbit of (lambda1, lambda2)");
  double r_l1 = 1.0, r_l2 = 0.0;
  roots->add_option("--lambda1", r_l1)->required();
  roots->add_option("--lambda2", r_l2)->required();
  roots->callback([&] { exit_code = cmd_sl3_roots(r_l1, r_l2); });
  auto* scheme = sl3->add_subcommand("scheme", "Node-scheme weights at (T1, T2)");
  double s_t1 = 0, s_t2 = 0, s_eps = 0.01, s_l1 = 1.0, s_l2 = 0.0;
  scheme->add_option("--t1", s_t1)->required();
  scheme->add_option("--t2", s_t2)->required();
  scheme->add_option("--eps", s_eps, "Kernel thickening")->capture_default_str();
  scheme->add_option("--lambda1", s_l1)->capture_default_str();
  scheme->add_option("--lambda2", s_l2)->capture_default_str();
  scheme->callback([&] { exit_code = cmd_sl3_scheme(s_t1, s_t2, s_eps, s_l1, s_l2); });

  auto* sln = app.add_subcommand("sln", "SLn exponent tables");
  sln->require_subcommand(1);
  auto* table = sln->add_subcommand("table", "b table and derived exponents");
  int t_n = 3;
  table->add_option("--n", t_n)->required();
  table->callback([&] { exit_code = cmd_sln_table(t_n); });
  auto* budget = sln->add_subcommand("budget", "Balanced eps for heights T1,T2,...");
  int b_n = 3;
  std::vector<double> b_t;
  double b_ng = 1.0, b_n1 = 1.0;
  budget->add_option("--n", b_n)->required();
  budget->add_option("--t", b_t, "Comma-separated heights")->required()->delimiter(',');
  budget->add_option("--norm-gamma", b_ng)->capture_default_str();
  budget->add_option("--norm-1inf", b_n1)->capture_default_str();
  budget->callback([&] { exit_code = cmd_sln_budget(b_n, b_t, b_ng, b_n1); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitConfig;
  }
  return exit_code;
}
