#pragma once

#include "horolab/diffop.hpp"
#include "horolab/rational.hpp"

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace horolab::sln {

using cplx = std::complex<double>;

struct ExponentTable {
  int n;
  std::vector<std::vector<std::int64_t>> b;  // (n-1) x (n-1)
};

ExponentTable b_table(int n);

std::vector<cplx> s_exponents(const ExponentTable& tbl, std::span<const cplx> nu);

cplx I_function(const ExponentTable& tbl, std::span<const cplx> nu, std::span<const double> y);

// Exponent of T_i in I_cont: row sum of b over n.
std::vector<Rational> I_cont_exponents(int n);
double I_cont(int n, std::span<const double> T);

std::uint64_t weyl_orbit_size(int n);

YOperator laplace_beltrami_operator(int n);
cplx laplace_beltrami_monomial(int n, std::span<const cplx> s);

// The three displayed n = 4 operators (degree 2, 3, 4), y-part only.
const YOperator& casimir_n4_operator(int op_index);
cplx casimir_n4_monomial(int op_index, std::span<const cplx> s);

struct MeasureExponents {
  int n;
  std::vector<int> y_exponents;
  std::vector<int> kernel_width_exponents;
};

MeasureExponents kernel_widths(int n);

struct EpsilonSln {
  double eps;
  double error_exponent;   // 2/(n+1)
  double error_magnitude;  // eps |F|_{1,inf}
  double smoothing_term;
  double spectral_term;
  bool regime_ok;
};

EpsilonSln epsilon_optimizer_sln(int n, std::span<const double> T, double norm_gamma,
                                 double norm_1inf);

cplx m_T_general(const ExponentTable& tbl, const std::vector<std::vector<cplx>>& orbit,
                 std::span<const double> T, std::span<const cplx> coeffs);

}  // namespace horolab::sln
