#include "horolab/error.hpp"
#include "horolab/sl3.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>

namespace horolab::sl3 {

cplx alpha_i(const KernelPair& k, const SRPair& sr) {
  return k.k1.moment(sr.s, 0) * k.k2.moment(sr.r, 0);
}

cplx alpha_basis(const KernelPair& k, const SchemeBasis& e) {
  if (e.p_order == 0 && e.m_order == 0) return alpha_i(k, e.sr);
  // (L1 + L2)^a (L1 - L2)^c expanded in L1^i L2^j.
  const int a = e.p_order, c = e.m_order;
  const auto binom = [](int n, int k) {
    double v = 1.0;
    for (int j = 0; j < k; ++j) v = v * (n - j) / (j + 1);
    return v;
  };
  cplx sum = 0.0;
  for (int i1 = 0; i1 <= a; ++i1)
    for (int i2 = 0; i2 <= c; ++i2) {
      const double coef = binom(a, i1) * binom(c, i2) * (((c - i2) % 2) ? -1.0 : 1.0);
      const int p1 = i1 + i2;
      const int p2 = (a - i1) + (c - i2);
      sum += coef * k.k1.moment(e.sr.s, p1) * k.k2.moment(e.sr.r, p2);
    }
  return sum;
}

std::array<NodePair, 6> default_nodes() {
  return {{{2, 3}, {2, 5}, {3, 3}, {3, 5}, {5, 3}, {5, 5}}};
}

NodeScheme6::NodeScheme6(const LambdaPair& lp, const std::array<NodePair, 6>& nodes, double eps)
    : nodes_(nodes), eps_(eps) {
  for (int i = 0; i < 6; ++i) {
    if (!(nodes[i].b1 > 1.0 && nodes[i].b2 > 1.0))
      raise(ErrorCode::domain, "scheme nodes must have coordinates > 1");
    for (int j = 0; j < i; ++j)
      if (nodes[i].b1 == nodes[j].b1 && nodes[i].b2 == nodes[j].b2)
        raise(ErrorCode::node_choice, "scheme nodes must be distinct");
  }
  const NuOrbit orbit = nu_orbit(lp);
  for (int i = 0; i < 6; ++i)
    basis_[i] = {sr_from_nu(orbit.roots[i]), orbit.p_order[i], orbit.m_order[i]};

  Eigen::Matrix<std::complex<double>, 6, 6> M;
  for (int j = 0; j < 6; ++j) {
    const KernelPair k(nodes[j].b1, nodes[j].b2, eps);
    for (int i = 0; i < 6; ++i) {
      M_[i][j] = alpha_basis(k, basis_[i]);
      M(i, j) = M_[i][j];
    }
  }
  Eigen::JacobiSVD<Eigen::Matrix<std::complex<double>, 6, 6>> svd(M);
  const auto& sv = svd.singularValues();
  cond_ = sv(5) > 0.0 ? sv(0) / sv(5) : INFINITY;
  if (!(cond_ < 1e12)) {
    std::ostringstream os;
    os << "node matrix is ill-conditioned (condition number " << cond_ << ")";
    raise(ErrorCode::node_choice, os.str());
  }
  const Eigen::Matrix<std::complex<double>, 6, 6> inv = M.fullPivLu().inverse();
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) M_inv_[i][j] = inv(i, j);
}

std::array<cplx, 6> NodeScheme6::weights(double T1, double T2) const {
  const KernelPair k(T1, T2, eps_);
  std::array<cplx, 6> a;
  for (int i = 0; i < 6; ++i) a[i] = alpha_basis(k, basis_[i]);
  std::array<cplx, 6> K{};
  for (int j = 0; j < 6; ++j)
    for (int i = 0; i < 6; ++i) K[j] += M_inv_[j][i] * a[i];
  return K;
}

cplx NodeScheme6::reproduce(const std::array<cplx, 6>& node_values, double T1, double T2) const {
  const auto K = weights(T1, T2);
  cplx sum = 0.0;
  for (int j = 0; j < 6; ++j) sum += K[j] * node_values[j];
  return sum;
}

NodeScheme6 build_node_scheme(const LambdaPair& lp, const std::array<NodePair, 6>& nodes,
                              double eps) {
  return NodeScheme6(lp, nodes, eps);
}

cplx m_T(const LambdaPair& lp, double T1, double T2, const std::array<cplx, 6>& coeffs) {
  if (!(T1 > 0.0 && T2 > 0.0)) raise(ErrorCode::domain, "m_T needs positive T");
  const NuOrbit orbit = nu_orbit(lp);
  cplx sum = 0.0;
  for (int i = 0; i < 6; ++i) {
    const SRPair sr = sr_from_nu(orbit.roots[i]);
    sum += coeffs[i] * std::exp(sr.s * std::log(T1) + sr.r * std::log(T2));
  }
  return sum;
}

}  // namespace horolab::sl3
