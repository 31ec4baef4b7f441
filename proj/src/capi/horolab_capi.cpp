#include "horolab/horolab.h"

#include "horolab/error.hpp"
#include "horolab/experiment.hpp"
#include "horolab/kernel.hpp"
#include "horolab/modular.hpp"
#include "horolab/sl3.hpp"
#include "horolab/sln.hpp"

#include <array>
#include <cstdint>
#include <cstring>
#include <exception>
#include <functional>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

using namespace horolab;

namespace {

thread_local std::string g_last_error;

int status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::domain: return HORO_ERR_DOMAIN;
    case ErrorCode::degenerate_node: return HORO_ERR_DEGENERATE_NODE;
    case ErrorCode::convergence: return HORO_ERR_CONVERGENCE;
    case ErrorCode::capacity: return HORO_ERR_CAPACITY;
    case ErrorCode::numeric_degeneracy: return HORO_ERR_NUMERIC;
    case ErrorCode::incomplete_orbit: return HORO_ERR_INCOMPLETE_ORBIT;
    case ErrorCode::node_choice: return HORO_ERR_NODE_CHOICE;
    case ErrorCode::config: return HORO_ERR_CONFIG;
    case ErrorCode::io: return HORO_ERR_IO;
  }
  return HORO_ERR_UNKNOWN;
}

int fail(int status, const std::string& msg) {
  g_last_error = msg;
  return status;
}

template <class F>
int guard(F&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(HORO_ERR_CAPACITY, "out of memory");
  } catch (const std::exception& e) {
    return fail(HORO_ERR_UNKNOWN, e.what());
  } catch (...) {
    return fail(HORO_ERR_UNKNOWN, "unknown exception");
  }
}

template <class T, std::uint32_t Magic>
struct Handle {
  explicit Handle(T&& v) : magic(Magic), value(std::move(v)) {}
  ~Handle() { magic = 0; }
  std::uint32_t magic;
  T value;
};

struct ExperimentState {
  ExperimentConfig config;
  std::optional<RunResult> result;
};

constexpr std::uint32_t kKernelMagic = 0x4B524E4C;
constexpr std::uint32_t kBumpMagic = 0x42554D50;
constexpr std::uint32_t kSchemeMagic = 0x53434845;
constexpr std::uint32_t kExperimentMagic = 0x45585052;

using KernelHandle = Handle<ThickKernel, kKernelMagic>;
using BumpHandle = Handle<BumpTestFunction, kBumpMagic>;
using SchemeHandle = Handle<sl3::NodeScheme6, kSchemeMagic>;
using ExperimentHandle = Handle<ExperimentState, kExperimentMagic>;

template <class H>
int destroy(void* p, std::uint32_t magic) {
  return guard([&] {
    if (p == nullptr) return HORO_OK;
    auto* h = static_cast<H*>(p);
    if (h->magic != magic) return fail(HORO_ERR_INVALID_HANDLE, "invalid handle");
    delete h;
    return HORO_OK;
  });
}

template <class H>
int with_handle(void* p, std::uint32_t magic, const std::function<int(H&)>& fn) {
  return guard([&] {
    if (p == nullptr) return fail(HORO_ERR_NULL_POINTER, "null handle");
    auto* h = static_cast<H*>(p);
    if (h->magic != magic) return fail(HORO_ERR_INVALID_HANDLE, "invalid handle");
    return fn(*h);
  });
}

horo_rational_t to_c(const Rational& q) { return {q.numerator(), q.denominator()}; }

QuadratureSpec to_spec(const horo_quad_t* q) {
  QuadratureSpec s;
  if (q != nullptr) {
    s.panels_x = q->panels_x;
    s.panels_y = q->panels_y;
    s.nodes_per_panel = q->nodes_per_panel;
    s.tol = q->tol;
  }
  return s;
}

sl3::LambdaPair lambda_of(const double l[4]) { return {cplx(l[0], l[1]), cplx(l[2], l[3])}; }

void put(double* out, cplx a, cplx b) {
  out[0] = a.real();
  out[1] = a.imag();
  out[2] = b.real();
  out[3] = b.imag();
}

int copy_text(const std::string& text, char* buf, size_t capacity, size_t* needed) {
  if (needed != nullptr) *needed = text.size() + 1;
  if (buf == nullptr || capacity < text.size() + 1)
    return fail(HORO_ERR_BUFFER_TOO_SMALL, "buffer too small");
  std::memcpy(buf, text.c_str(), text.size() + 1);
  return HORO_OK;
}

#define HORO_REQUIRE(p)                                                   \
  do {                                                                    \
    if ((p) == nullptr) return fail(HORO_ERR_NULL_POINTER, #p " is null"); \
  } while (0)

}  // namespace

extern "C" {

const char* horo_status_string(int status) {
  switch (status) {
    case HORO_OK: return "ok";
    case HORO_ERR_DOMAIN: return "domain error";
    case HORO_ERR_DEGENERATE_NODE: return "degenerate interpolation node";
    case HORO_ERR_CONVERGENCE: return "quadrature did not converge";
    case HORO_ERR_CAPACITY: return "capacity exceeded";
    case HORO_ERR_NUMERIC: return "numeric degeneracy";
    case HORO_ERR_INCOMPLETE_ORBIT: return "incomplete orbit";
    case HORO_ERR_NODE_CHOICE: return "ill-conditioned node choice";
    case HORO_ERR_CONFIG: return "configuration error";
    case HORO_ERR_IO: return "i/o error";
    case HORO_ERR_NULL_POINTER: return "null pointer";
    case HORO_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case HORO_ERR_INVALID_HANDLE: return "invalid handle";
    default: return "unknown error";
  }
}

const char* horo_last_error(void) { return g_last_error.c_str(); }

int horo_exponent_budget(int n, const char* delta, const char* s1, horo_budget_t* out) {
  return guard([&] {
    HORO_REQUIRE(delta);
    HORO_REQUIRE(out);
    const Rational d = parse_rational(delta);
    const ExponentBudget b =
        s1 == nullptr ? exponent_budget(n, d) : exponent_budget(n, d, parse_rational(s1));
    *out = {b.n,
            to_c(b.delta),
            to_c(b.s1),
            to_c(b.P),
            to_c(b.eta_cont),
            to_c(b.eta_s1),
            to_c(b.kernel_norm_exp),
            to_c(b.eps_exponent),
            to_c(b.total_error_exp),
            to_c(b.log_power),
            to_c(b.kinv_total_error_exp),
            to_c(b.kinv_log_power)};
    return HORO_OK;
  });
}

int horo_epsilon_rank1(int n, double delta, double T, double norm_gamma, double norm_1inf,
                       int route, horo_eps_t* out) {
  return guard([&] {
    HORO_REQUIRE(out);
    KernelRoute r = KernelRoute::automatic;
    if (route == HORO_ROUTE_SMOOTHED) r = KernelRoute::smoothed;
    else if (route == HORO_ROUTE_K_INVARIANT) r = KernelRoute::k_invariant;
    else if (route != HORO_ROUTE_AUTO) return fail(HORO_ERR_DOMAIN, "unknown route");
    const EpsilonChoice e = epsilon_optimizer_rank1(n, delta, T, norm_gamma, norm_1inf, r);
    *out = {e.eps, e.error_exponent, e.log_power, e.smoothing_term, e.spectral_term, e.regime_ok ? 1 : 0};
    return HORO_OK;
  });
}

int horo_kernel_create(horo_kernel_t* out, int n, double T, double eps) {
  return guard([&] {
    HORO_REQUIRE(out);
    *out = reinterpret_cast<horo_kernel_t>(new KernelHandle(ThickKernel(n, T, eps)));
    return HORO_OK;
  });
}

int horo_kernel_destroy(horo_kernel_t k) { return destroy<KernelHandle>(k, kKernelMagic); }

int horo_kernel_value(horo_kernel_t k, double y, double* out) {
  return with_handle<KernelHandle>(k, kKernelMagic, [&](KernelHandle& h) {
    HORO_REQUIRE(out);
    *out = h.value(y);
    return HORO_OK;
  });
}

int horo_kernel_support(horo_kernel_t k, double* y_min, double* y_max) {
  return with_handle<KernelHandle>(k, kKernelMagic, [&](KernelHandle& h) {
    HORO_REQUIRE(y_min);
    HORO_REQUIRE(y_max);
    *y_min = h.value.y_min();
    *y_max = h.value.y_max();
    return HORO_OK;
  });
}

int horo_alpha_beta(horo_kernel_t k, double s_re, double s_im, double out[4]) {
  return with_handle<KernelHandle>(k, kKernelMagic, [&](KernelHandle& h) {
    HORO_REQUIRE(out);
    const AlphaBeta ab = alpha_beta(h.value, SpectralPoint(h.value.n(), cplx(s_re, s_im)));
    put(out, ab.alpha, ab.beta);
    return HORO_OK;
  });
}

int horo_interpolation_weights(int n, double s_re, double s_im, double T, double b, double eps,
                               double out[4]) {
  return guard([&] {
    HORO_REQUIRE(out);
    const InterpolationPair w = interpolation_weights(SpectralPoint(n, cplx(s_re, s_im)), T, b, eps);
    put(out, w.K, w.L);
    return HORO_OK;
  });
}

int horo_interpolation_residual(int n, double s_re, double s_im, const double A[2],
                                const double B[2], double T, double b, double eps, double* out) {
  return guard([&] {
    HORO_REQUIRE(A);
    HORO_REQUIRE(B);
    HORO_REQUIRE(out);
    *out = homogeneous_interpolation_residual(cplx(A[0], A[1]), cplx(B[0], B[1]),
                                              SpectralPoint(n, cplx(s_re, s_im)), T, b, eps);
    return HORO_OK;
  });
}

void horo_quad_default(horo_quad_t* q) {
  if (q == nullptr) return;
  const QuadratureSpec s;
  *q = {s.panels_x, s.panels_y, s.nodes_per_panel, s.tol};
}

int horo_bump_create(horo_bump_t* out, double center_x, double center_y, double wx, double wy,
                     double amplitude) {
  return guard([&] {
    HORO_REQUIRE(out);
    *out = reinterpret_cast<horo_bump_t>(
        new BumpHandle(BumpTestFunction({center_x, center_y}, wx, wy, amplitude)));
    return HORO_OK;
  });
}

int horo_bump_create_default(horo_bump_t* out) {
  return guard([&] {
    HORO_REQUIRE(out);
    *out = reinterpret_cast<horo_bump_t>(new BumpHandle(BumpTestFunction::default_bump()));
    return HORO_OK;
  });
}

int horo_bump_destroy(horo_bump_t f) { return destroy<BumpHandle>(f, kBumpMagic); }

int horo_reduce(double x, double y, double* rx, double* ry, long long g[4]) {
  return guard([&] {
    HORO_REQUIRE(rx);
    HORO_REQUIRE(ry);
    const Reduction r = reduce({x, y});
    *rx = r.point.x;
    *ry = r.point.y;
    if (g != nullptr) {
      g[0] = r.g.a;
      g[1] = r.g.b;
      g[2] = r.g.c;
      g[3] = r.g.d;
    }
    return HORO_OK;
  });
}

int horo_horocycle_average(horo_bump_t f, double T, const horo_quad_t* q, double* out) {
  return with_handle<BumpHandle>(f, kBumpMagic, [&](BumpHandle& h) {
    HORO_REQUIRE(out);
    *out = horocycle_average(h.value, T, to_spec(q));
    return HORO_OK;
  });
}

int horo_hyperbolic_average(horo_bump_t f, double* out) {
  return with_handle<BumpHandle>(f, kBumpMagic, [&](BumpHandle& h) {
    HORO_REQUIRE(out);
    *out = hyperbolic_average(h.value);
    return HORO_OK;
  });
}

int horo_norms(horo_bump_t f, const horo_quad_t* q, double* l2_gamma, double* sobolev_1_inf) {
  return with_handle<BumpHandle>(f, kBumpMagic, [&](BumpHandle& h) {
    HORO_REQUIRE(l2_gamma);
    HORO_REQUIRE(sobolev_1_inf);
    const FunctionNorms n = norms(h.value, to_spec(q));
    *l2_gamma = n.l2_gamma;
    *sobolev_1_inf = n.sobolev_1_inf;
    return HORO_OK;
  });
}

int horo_thickened_average(horo_bump_t f, double T, double eps, const horo_quad_t* q, int folded,
                           double* out) {
  return with_handle<BumpHandle>(f, kBumpMagic, [&](BumpHandle& h) {
    HORO_REQUIRE(out);
    const ThickKernel k(1, T, eps);
    *out = folded ? thickened_average_folded(h.value, k, to_spec(q))
                  : thickened_average_unfolded(h.value, k, to_spec(q));
    return HORO_OK;
  });
}

int horo_automorphized_kernel(double T, double eps, double x, double y, double* out) {
  return guard([&] {
    HORO_REQUIRE(out);
    *out = automorphized_kernel(ThickKernel(1, T, eps), {x, y});
    return HORO_OK;
  });
}

int horo_sl3_lambda_from_nu(const double nu[4], double out[4]) {
  return guard([&] {
    HORO_REQUIRE(nu);
    HORO_REQUIRE(out);
    const auto l = sl3::lambda_from_nu({cplx(nu[0], nu[1]), cplx(nu[2], nu[3])});
    put(out, l.lambda1, l.lambda2);
    return HORO_OK;
  });
}

int horo_sl3_lambda_from_sr(const double sr[4], double out[4]) {
  return guard([&] {
    HORO_REQUIRE(sr);
    HORO_REQUIRE(out);
    const auto l = sl3::lambda_from_sr({cplx(sr[0], sr[1]), cplx(sr[2], sr[3])});
    put(out, l.lambda1, l.lambda2);
    return HORO_OK;
  });
}

int horo_sl3_sr_from_nu(const double nu[4], double out[4]) {
  return guard([&] {
    HORO_REQUIRE(nu);
    HORO_REQUIRE(out);
    const auto sr = sl3::sr_from_nu({cplx(nu[0], nu[1]), cplx(nu[2], nu[3])});
    put(out, sr.s, sr.r);
    return HORO_OK;
  });
}

int horo_sl3_nu_orbit(const double lambda[4], double roots[24], int multiplicity[6],
                      double* max_residual) {
  return guard([&] {
    HORO_REQUIRE(lambda);
    HORO_REQUIRE(roots);
    const sl3::NuOrbit o = sl3::nu_orbit(lambda_of(lambda));
    for (int i = 0; i < 6; ++i) {
      put(roots + 4 * i, o.roots[i].nu1, o.roots[i].nu2);
      if (multiplicity != nullptr) multiplicity[i] = o.multiplicity[i];
    }
    if (max_residual != nullptr) *max_residual = o.max_residual;
    return HORO_OK;
  });
}

int horo_sl3_scheme_create(horo_sl3_scheme_t* out, const double lambda[4], const double* nodes,
                           double eps) {
  return guard([&] {
    HORO_REQUIRE(out);
    HORO_REQUIRE(lambda);
    std::array<sl3::NodePair, 6> nd = sl3::default_nodes();
    if (nodes != nullptr)
      for (int i = 0; i < 6; ++i) nd[i] = {nodes[2 * i], nodes[2 * i + 1]};
    *out = reinterpret_cast<horo_sl3_scheme_t>(
        new SchemeHandle(sl3::build_node_scheme(lambda_of(lambda), nd, eps)));
    return HORO_OK;
  });
}

int horo_sl3_scheme_destroy(horo_sl3_scheme_t s) { return destroy<SchemeHandle>(s, kSchemeMagic); }

int horo_sl3_scheme_condition(horo_sl3_scheme_t s, double* out) {
  return with_handle<SchemeHandle>(s, kSchemeMagic, [&](SchemeHandle& h) {
    HORO_REQUIRE(out);
    *out = h.value.condition_number();
    return HORO_OK;
  });
}

int horo_sl3_scheme_weights(horo_sl3_scheme_t s, double T1, double T2, double weights[12]) {
  return with_handle<SchemeHandle>(s, kSchemeMagic, [&](SchemeHandle& h) {
    HORO_REQUIRE(weights);
    const auto K = h.value.weights(T1, T2);
    for (int i = 0; i < 6; ++i) {
      weights[2 * i] = K[i].real();
      weights[2 * i + 1] = K[i].imag();
    }
    return HORO_OK;
  });
}

int horo_sl3_scheme_exponents(horo_sl3_scheme_t s, double exponents[24]) {
  return with_handle<SchemeHandle>(s, kSchemeMagic, [&](SchemeHandle& h) {
    HORO_REQUIRE(exponents);
    for (int i = 0; i < 6; ++i) put(exponents + 4 * i, h.value.basis()[i].sr.s, h.value.basis()[i].sr.r);
    return HORO_OK;
  });
}

int horo_sl3_epsilon(double T1, double T2, double norm_gamma, double norm_1inf, double* eps,
                     int* regime_ok) {
  return guard([&] {
    HORO_REQUIRE(eps);
    const auto e = sl3::epsilon_optimizer_sl3(T1, T2, norm_gamma, norm_1inf);
    *eps = e.eps;
    if (regime_ok != nullptr) *regime_ok = e.regime_ok ? 1 : 0;
    return HORO_OK;
  });
}

int horo_sl3_green_kernel(double lambda1, const double y[2], const double xi[2], double* kappa,
                          double* value) {
  return guard([&] {
    HORO_REQUIRE(y);
    HORO_REQUIRE(xi);
    HORO_REQUIRE(value);
    const auto g = sl3::green_kernel(lambda1, {y[0], y[1]}, {xi[0], xi[1]});
    if (kappa != nullptr) *kappa = g.kappa;
    *value = g.value;
    return HORO_OK;
  });
}

int horo_sln_b_table(int n, long long* out, size_t capacity, size_t* needed) {
  return guard([&] {
    const auto t = sln::b_table(n);
    const size_t count = t.b.size() * t.b.size();
    if (needed != nullptr) *needed = count;
    if (out == nullptr || capacity < count) return fail(HORO_ERR_BUFFER_TOO_SMALL, "buffer too small");
    size_t k = 0;
    for (const auto& row : t.b)
      for (auto v : row) out[k++] = v;
    return HORO_OK;
  });
}

int horo_sln_icont_exponents(int n, horo_rational_t* out, size_t capacity, size_t* needed) {
  return guard([&] {
    const auto e = sln::I_cont_exponents(n);
    if (needed != nullptr) *needed = e.size();
    if (out == nullptr || capacity < e.size()) return fail(HORO_ERR_BUFFER_TOO_SMALL, "buffer too small");
    for (size_t i = 0; i < e.size(); ++i) out[i] = to_c(e[i]);
    return HORO_OK;
  });
}

int horo_sln_icont(int n, const double* T, size_t len, double* out) {
  return guard([&] {
    HORO_REQUIRE(T);
    HORO_REQUIRE(out);
    *out = sln::I_cont(n, std::span<const double>(T, len));
    return HORO_OK;
  });
}

int horo_sln_weyl_orbit_size(int n, unsigned long long* out) {
  return guard([&] {
    HORO_REQUIRE(out);
    *out = sln::weyl_orbit_size(n);
    return HORO_OK;
  });
}

int horo_sln_kernel_widths(int n, int* y_exponents, int* width_exponents, size_t capacity,
                           size_t* needed) {
  return guard([&] {
    const auto m = sln::kernel_widths(n);
    if (needed != nullptr) *needed = m.y_exponents.size();
    if (y_exponents == nullptr || width_exponents == nullptr || capacity < m.y_exponents.size())
      return fail(HORO_ERR_BUFFER_TOO_SMALL, "buffer too small");
    for (size_t i = 0; i < m.y_exponents.size(); ++i) {
      y_exponents[i] = m.y_exponents[i];
      width_exponents[i] = m.kernel_width_exponents[i];
    }
    return HORO_OK;
  });
}

int horo_sln_laplace_beltrami(int n, const double* s, size_t len, double* out) {
  return guard([&] {
    HORO_REQUIRE(s);
    HORO_REQUIRE(out);
    std::vector<cplx> e(s, s + len);
    *out = sln::laplace_beltrami_monomial(n, e).real();
    return HORO_OK;
  });
}

int horo_sln_casimir_n4(int op_index, const double s[3], double* out) {
  return guard([&] {
    HORO_REQUIRE(s);
    HORO_REQUIRE(out);
    const cplx e[3] = {s[0], s[1], s[2]};
    *out = sln::casimir_n4_monomial(op_index, e).real();
    return HORO_OK;
  });
}

int horo_sln_epsilon(int n, const double* T, size_t len, double norm_gamma, double norm_1inf,
                     horo_sln_eps_t* out) {
  return guard([&] {
    HORO_REQUIRE(T);
    HORO_REQUIRE(out);
    const auto e = sln::epsilon_optimizer_sln(n, std::span<const double>(T, len), norm_gamma, norm_1inf);
    *out = {e.eps, e.error_exponent, e.smoothing_term, e.spectral_term, e.regime_ok ? 1 : 0};
    return HORO_OK;
  });
}

int horo_experiment_load(horo_experiment_t* out, const char* path) {
  return guard([&] {
    HORO_REQUIRE(out);
    HORO_REQUIRE(path);
    *out = reinterpret_cast<horo_experiment_t>(
        new ExperimentHandle(ExperimentState{ExperimentConfig::load(path), std::nullopt}));
    return HORO_OK;
  });
}

int horo_experiment_parse(horo_experiment_t* out, const char* text) {
  return guard([&] {
    HORO_REQUIRE(out);
    HORO_REQUIRE(text);
    *out = reinterpret_cast<horo_experiment_t>(
        new ExperimentHandle(ExperimentState{ExperimentConfig::parse(text), std::nullopt}));
    return HORO_OK;
  });
}

int horo_experiment_destroy(horo_experiment_t e) {
  return destroy<ExperimentHandle>(e, kExperimentMagic);
}

int horo_experiment_set_workers(horo_experiment_t e, int workers) {
  return with_handle<ExperimentHandle>(e, kExperimentMagic, [&](ExperimentHandle& h) {
    if (workers < 1) return fail(HORO_ERR_CONFIG, "workers must be >= 1");
    h.value.config.workers = workers;
    return HORO_OK;
  });
}

int horo_experiment_set_output(horo_experiment_t e, const char* path) {
  return with_handle<ExperimentHandle>(e, kExperimentMagic, [&](ExperimentHandle& h) {
    HORO_REQUIRE(path);
    h.value.config.out = path;
    return HORO_OK;
  });
}

int horo_experiment_run(horo_experiment_t e, int record_timing) {
  return with_handle<ExperimentHandle>(e, kExperimentMagic, [&](ExperimentHandle& h) {
    h.value.result.reset();
    h.value.result = run(h.value.config, RunOptions{record_timing != 0});
    return HORO_OK;
  });
}

namespace {

int require_result(ExperimentHandle& h) {
  if (!h.value.result) return fail(HORO_ERR_CONFIG, "experiment has not been run");
  return HORO_OK;
}

}  // namespace

int horo_experiment_passed(horo_experiment_t e, int* passed) {
  return with_handle<ExperimentHandle>(e, kExperimentMagic, [&](ExperimentHandle& h) {
    HORO_REQUIRE(passed);
    if (int rc = require_result(h)) return rc;
    *passed = h.value.result->pass ? 1 : 0;
    return HORO_OK;
  });
}

int horo_experiment_row_count(horo_experiment_t e, size_t* out) {
  return with_handle<ExperimentHandle>(e, kExperimentMagic, [&](ExperimentHandle& h) {
    HORO_REQUIRE(out);
    if (int rc = require_result(h)) return rc;
    *out = h.value.result->rows.size();
    return HORO_OK;
  });
}

int horo_experiment_fit(horo_experiment_t e, int* has_fit, double* slope, double* intercept,
                        double* r2) {
  return with_handle<ExperimentHandle>(e, kExperimentMagic, [&](ExperimentHandle& h) {
    if (int rc = require_result(h)) return rc;
    const RunResult& r = *h.value.result;
    if (has_fit != nullptr) *has_fit = r.has_fit ? 1 : 0;
    if (slope != nullptr) *slope = r.fit.slope;
    if (intercept != nullptr) *intercept = r.fit.intercept;
    if (r2 != nullptr) *r2 = r.fit.r2;
    return HORO_OK;
  });
}

int horo_experiment_write_report(horo_experiment_t e, const char* path) {
  return with_handle<ExperimentHandle>(e, kExperimentMagic, [&](ExperimentHandle& h) {
    if (int rc = require_result(h)) return rc;
    const std::string target = path != nullptr ? path : h.value.config.out;
    if (target.empty()) return fail(HORO_ERR_CONFIG, "no output path configured");
    emit_report(h.value.config, *h.value.result, target);
    return HORO_OK;
  });
}

int horo_experiment_csv(horo_experiment_t e, char* buf, size_t capacity, size_t* needed) {
  return with_handle<ExperimentHandle>(e, kExperimentMagic, [&](ExperimentHandle& h) {
    if (int rc = require_result(h)) return rc;
    return copy_text(format_csv(h.value.result->rows), buf, capacity, needed);
  });
}

int horo_experiment_summary(horo_experiment_t e, char* buf, size_t capacity, size_t* needed) {
  return with_handle<ExperimentHandle>(e, kExperimentMagic, [&](ExperimentHandle& h) {
    if (int rc = require_result(h)) return rc;
    return copy_text(format_summary(h.value.config, *h.value.result), buf, capacity, needed);
  });
}

int horo_verify(const char* suite, horo_check_cb cb, void* user, int* all_passed) {
  return guard([&] {
    HORO_REQUIRE(suite);
    const auto checks = verify_suite(suite);
    bool ok = true;
    for (const CheckResult& c : checks) {
      ok = ok && c.pass;
      if (cb != nullptr) cb(c.name.c_str(), c.pass ? 1 : 0, c.detail.c_str(), user);
    }
    if (all_passed != nullptr) *all_passed = ok ? 1 : 0;
    return HORO_OK;
  });
}

}  // extern "C"
