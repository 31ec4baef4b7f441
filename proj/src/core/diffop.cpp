#include "horolab/diffop.hpp"

#include "horolab/error.hpp"

#include <cmath>

namespace horolab {

cplx falling_factorial(cplx s, int k) {
  cplx out = 1.0;
  for (int j = 0; j < k; ++j) out *= s - static_cast<double>(j);
  return out;
}

YOperator::YOperator(int vars, std::vector<DiffTerm> terms) : vars_(vars), terms_(std::move(terms)) {
  for (const DiffTerm& t : terms_)
    if (static_cast<int>(t.y_power.size()) != vars_ || static_cast<int>(t.deriv.size()) != vars_)
      raise(ErrorCode::domain, "operator term has the wrong number of variables");
}

bool YOperator::euler_homogeneous() const {
  for (const DiffTerm& t : terms_)
    if (t.y_power != t.deriv) return false;
  return true;
}

cplx YOperator::apply_to_monomial(std::span<const cplx> s, std::span<const double> y) const {
  if (static_cast<int>(s.size()) != vars_ || static_cast<int>(y.size()) != vars_)
    raise(ErrorCode::domain, "monomial has the wrong number of variables");
  cplx sum = 0.0;
  for (const DiffTerm& t : terms_) {
    cplx term = t.coef;
    for (int i = 0; i < vars_; ++i)
      term *= falling_factorial(s[i], t.deriv[i]) * std::pow(y[i], t.y_power[i] - t.deriv[i]);
    sum += term;
  }
  return sum;
}

cplx YOperator::monomial_scalar(std::span<const cplx> s) const {
  if (!euler_homogeneous())
    raise(ErrorCode::domain, "operator does not act by a scalar on monomials");
  if (static_cast<int>(s.size()) != vars_)
    raise(ErrorCode::domain, "monomial has the wrong number of variables");
  cplx sum = 0.0;
  for (const DiffTerm& t : terms_) {
    cplx term = t.coef;
    for (int i = 0; i < vars_; ++i) term *= falling_factorial(s[i], t.deriv[i]);
    sum += term;
  }
  return sum;
}

}  // namespace horolab
