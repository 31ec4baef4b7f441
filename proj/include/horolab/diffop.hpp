#pragma once

#include <complex>
#include <span>
#include <vector>

namespace horolab {

using cplx = std::complex<double>;

// coef * prod_i y_i^y_power[i] * prod_i d^deriv[i]/dy_i^deriv[i]
struct DiffTerm {
  double coef;
  std::vector<int> y_power;
  std::vector<int> deriv;
};

// Linear differential operator in the y-variables, stored as a term list.
class YOperator {
 public:
  YOperator(int vars, std::vector<DiffTerm> terms);

  int vars() const { return vars_; }
  const std::vector<DiffTerm>& terms() const { return terms_; }

  // Every term has y_power == deriv, so monomials are eigenfunctions.
  bool euler_homogeneous() const;

  // (D prod y_i^s_i)(y) / prod y_i^s_i, by exact power-rule differentiation.
  cplx apply_to_monomial(std::span<const cplx> s, std::span<const double> y) const;

  // Scalar on monomials; requires euler_homogeneous().
  cplx monomial_scalar(std::span<const cplx> s) const;

 private:
  int vars_;
  std::vector<DiffTerm> terms_;
};

cplx falling_factorial(cplx s, int k);

}  // namespace horolab
