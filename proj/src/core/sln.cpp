#include "horolab/sln.hpp"

#include "horolab/error.hpp"

#include <cmath>
#include <string>

namespace horolab::sln {

ExponentTable b_table(int n) {
  if (n < 2) raise(ErrorCode::domain, "b table needs n >= 2");
  ExponentTable t{n, std::vector<std::vector<std::int64_t>>(n - 1, std::vector<std::int64_t>(n - 1))};
  for (int i = 1; i < n; ++i)
    for (int j = 1; j < n; ++j)
      t.b[i - 1][j - 1] = (i + j <= n) ? std::int64_t{i} * j : std::int64_t{n - i} * (n - j);
  return t;
}

std::vector<cplx> s_exponents(const ExponentTable& tbl, std::span<const cplx> nu) {
  const std::size_t m = tbl.b.size();
  if (nu.size() != m)
    raise(ErrorCode::domain, "nu has length " + std::to_string(nu.size()) + ", expected " +
                                 std::to_string(m));
  std::vector<cplx> s(m, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) s[i] += static_cast<double>(tbl.b[i][j]) * nu[j];
  return s;
}

cplx I_function(const ExponentTable& tbl, std::span<const cplx> nu, std::span<const double> y) {
  const auto s = s_exponents(tbl, nu);
  if (y.size() != s.size()) raise(ErrorCode::domain, "y has the wrong length");
  cplx log_sum = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!(y[i] > 0.0)) raise(ErrorCode::domain, "I function needs positive y");
    log_sum += s[i] * std::log(y[i]);
  }
  return std::exp(log_sum);
}

std::vector<Rational> I_cont_exponents(int n) {
  const ExponentTable t = b_table(n);
  std::vector<Rational> e;
  for (const auto& row : t.b) {
    std::int64_t sum = 0;
    for (std::int64_t v : row) sum += v;
    e.emplace_back(sum, n);
  }
  return e;
}

double I_cont(int n, std::span<const double> T) {
  const auto e = I_cont_exponents(n);
  if (T.size() != e.size()) raise(ErrorCode::domain, "T has the wrong length");
  double log_sum = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (!(T[i] > 0.0)) raise(ErrorCode::domain, "I_cont needs positive T");
    log_sum += to_double(e[i]) * std::log(T[i]);
  }
  return std::exp(log_sum);
}

std::uint64_t weyl_orbit_size(int n) {
  if (n < 2) raise(ErrorCode::domain, "Weyl orbit needs n >= 2");
  if (n > 20) raise(ErrorCode::capacity, "n! overflows 64 bits for n > 20");
  std::uint64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
  return f;
}

YOperator laplace_beltrami_operator(int n) {
  if (n < 2) raise(ErrorCode::domain, "Laplace-Beltrami form needs n >= 2");
  const int m = n - 1;
  std::vector<DiffTerm> terms;
  for (int i = 0; i < m; ++i) {
    DiffTerm t{1.0, std::vector<int>(m, 0), std::vector<int>(m, 0)};
    t.y_power[i] = t.deriv[i] = 2;
    terms.push_back(t);
  }
  for (int i = 0; i + 1 < m; ++i) {
    DiffTerm t{-1.0, std::vector<int>(m, 0), std::vector<int>(m, 0)};
    t.y_power[i] = t.deriv[i] = 1;
    t.y_power[i + 1] = t.deriv[i + 1] = 1;
    terms.push_back(t);
  }
  return YOperator(m, std::move(terms));
}

cplx laplace_beltrami_monomial(int n, std::span<const cplx> s) {
  if (n < 2) raise(ErrorCode::domain, "Laplace-Beltrami form needs n >= 2");
  if (static_cast<int>(s.size()) != n - 1) raise(ErrorCode::domain, "exponent list has wrong length");
  cplx sum = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) sum += s[i] * (s[i] - 1.0);
  for (std::size_t i = 0; i + 1 < s.size(); ++i) sum -= s[i] * s[i + 1];
  return sum;
}

namespace {

// coef * y1^a y2^b y3^c d1^a d2^b d3^c
DiffTerm euler(double coef, int a, int b, int c) { return {coef, {a, b, c}, {a, b, c}}; }

}  // namespace

const YOperator& casimir_n4_operator(int op_index) {
  static const YOperator op1(3, {
                                    euler(1, 2, 0, 0),
                                    euler(1, 0, 2, 0),
                                    euler(1, 0, 0, 2),
                                    euler(-1, 1, 1, 0),
                                    euler(-1, 0, 1, 1),
                                });
  static const YOperator op2(3, {
                                    euler(1, 2, 0, 0),
                                    euler(-3, 2, 1, 0),
                                    euler(-7, 1, 1, 0),
                                    euler(3, 1, 2, 0),
                                    euler(-2, 0, 0, 2),
                                    euler(-1, 0, 1, 1),
                                    euler(3, 0, 1, 2),
                                    euler(4, 0, 2, 0),
                                    euler(-3, 0, 2, 1),
                                });
  static const YOperator op3(3, {
                                    euler(1, 4, 0, 0),
                                    euler(4, 3, 0, 0),
                                    euler(-2, 3, 1, 0),
                                    euler(21, 2, 0, 0),
                                    euler(-12, 2, 1, 0),
                                    euler(3, 2, 2, 0),
                                    euler(-9, 1, 1, 0),
                                    euler(6, 1, 2, 0),
                                    euler(-2, 1, 3, 0),
                                    euler(-3, 0, 0, 2),
                                    euler(4, 0, 0, 3),
                                    euler(1, 0, 0, 4),
                                    euler(3, 0, 1, 1),
                                    euler(-2, 0, 1, 3),
                                    euler(3, 0, 2, 0),
                                    euler(-6, 0, 2, 1),
                                    euler(3, 0, 2, 2),
                                    euler(4, 0, 3, 0),
                                    euler(-2, 0, 3, 1),
                                    euler(1, 0, 4, 0),
                                });
  switch (op_index) {
    case 1: return op1;
    case 2: return op2;
    case 3: return op3;
    default: raise(ErrorCode::domain, "n = 4 Casimir index must be 1, 2 or 3");
  }
}

cplx casimir_n4_monomial(int op_index, std::span<const cplx> s) {
  return casimir_n4_operator(op_index).monomial_scalar(s);
}

MeasureExponents kernel_widths(int n) {
  if (n < 2) raise(ErrorCode::domain, "kernel widths need n >= 2");
  MeasureExponents m{n, {}, {}};
  for (int k = 1; k < n; ++k) {
    m.y_exponents.push_back(-k * (n - k) - 1);
    m.kernel_width_exponents.push_back(k * (n - k) + 1);
  }
  return m;
}

EpsilonSln epsilon_optimizer_sln(int n, std::span<const double> T, double norm_gamma,
                                 double norm_1inf) {
  if (n < 2) raise(ErrorCode::domain, "optimizer needs n >= 2");
  if (static_cast<int>(T.size()) != n - 1) raise(ErrorCode::domain, "T has the wrong length");
  if (!(norm_gamma > 0.0 && norm_1inf > 0.0)) raise(ErrorCode::domain, "norms must be positive");
  double logs = 1.0;
  for (double t : T) {
    if (!(t > 1.0)) raise(ErrorCode::domain, "optimizer needs every T_i > 1");
    logs *= std::log(t);
  }
  const double icont = I_cont(n, T);
  const double k = 0.5 * (n - 1);
  EpsilonSln out;
  out.eps = std::pow(logs * norm_gamma / (norm_1inf * icont), 1.0 / (1.0 + k));
  out.error_exponent = 2.0 / (n + 1);
  out.smoothing_term = out.eps * norm_1inf;
  out.spectral_term = std::pow(out.eps, -k) * logs * norm_gamma / icont;
  out.error_magnitude = out.smoothing_term;
  out.regime_ok = out.eps < 0.5;
  return out;
}

cplx m_T_general(const ExponentTable& tbl, const std::vector<std::vector<cplx>>& orbit,
                 std::span<const double> T, std::span<const cplx> coeffs) {
  if (orbit.size() > weyl_orbit_size(tbl.n))
    raise(ErrorCode::domain, "orbit longer than n!");
  if (coeffs.size() != orbit.size()) raise(ErrorCode::domain, "coefficient count mismatch");
  cplx sum = 0.0;
  for (std::size_t j = 0; j < orbit.size(); ++j) sum += coeffs[j] * I_function(tbl, orbit[j], T);
  return sum;
}

}  // namespace horolab::sln
