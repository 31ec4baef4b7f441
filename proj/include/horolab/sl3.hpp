#pragma once

#include "horolab/kernel.hpp"

#include <array>
#include <vector>

namespace horolab::sl3 {

struct NuPair {
  cplx nu1;
  cplx nu2;
};

struct SRPair {
  cplx s;
  cplx r;
};

struct LambdaPair {
  cplx lambda1;
  cplx lambda2;
};

SRPair sr_from_nu(const NuPair& nu);
NuPair nu_from_sr(const SRPair& sr);

LambdaPair lambda_from_nu(const NuPair& nu);
LambdaPair lambda_from_sr(const SRPair& sr);

// Scalar of the negated y-part of the displayed Casimir op_index (1 or 2) on y1^s y2^r.
cplx casimir_apply_monomial(int op_index, const SRPair& sr);

// Same operator applied by exact differentiation, divided by the monomial, at y.
cplx casimir_ratio_at(int op_index, const SRPair& sr, double y1, double y2);

struct NuOrbit {
  std::vector<NuPair> roots;          // six roots, with multiplicity
  std::vector<int> multiplicity;      // multiplicity of each entry's cluster
  std::vector<int> p_order;           // confluent log orders inside a cluster
  std::vector<int> m_order;
  double max_residual;
};

NuOrbit nu_orbit(const LambdaPair& lp);

// Residual of lambda_from_nu(nu) against lp, max norm.
double orbit_residual(const NuPair& nu, const LambdaPair& lp);

struct KernelPair {
  ThickKernel k1;
  ThickKernel k2;
  KernelPair(double T1, double T2, double eps) : k1(2, T1, eps), k2(2, T2, eps) {}
};

// Integral of psi1 psi2 y1^s y2^r dy1 dy2 / (y1^3 y2^3).
cplx alpha_i(const KernelPair& k, const SRPair& sr);

// Basis element y1^s y2^r (log y1 + log y2)^a (log y1 - log y2)^c. Repeated orbit
// exponents take increasing log powers so the node system stays nonsingular.
struct SchemeBasis {
  SRPair sr;
  int p_order = 0;
  int m_order = 0;
};

cplx alpha_basis(const KernelPair& k, const SchemeBasis& e);

struct NodePair {
  double b1;
  double b2;
};

std::array<NodePair, 6> default_nodes();

class NodeScheme6 {
 public:
  NodeScheme6(const LambdaPair& lp, const std::array<NodePair, 6>& nodes, double eps);

  const std::array<NodePair, 6>& nodes() const { return nodes_; }
  const std::array<SchemeBasis, 6>& basis() const { return basis_; }
  double condition_number() const { return cond_; }
  double eps() const { return eps_; }
  cplx matrix(int i, int j) const { return M_[i][j]; }

  // K such that sum_j K_j alpha(b_j) = alpha(T) for every basis element.
  std::array<cplx, 6> weights(double T1, double T2) const;

  // Interpolated value at (T1, T2) from values at the nodes.
  cplx reproduce(const std::array<cplx, 6>& node_values, double T1, double T2) const;

 private:
  std::array<NodePair, 6> nodes_;
  std::array<SchemeBasis, 6> basis_;
  std::array<std::array<cplx, 6>, 6> M_;      // M[i][j] = alpha_i(b_j)
  std::array<std::array<cplx, 6>, 6> M_inv_;
  double eps_;
  double cond_;
};

NodeScheme6 build_node_scheme(const LambdaPair& lp, const std::array<NodePair, 6>& nodes,
                              double eps);

cplx m_T(const LambdaPair& lp, double T1, double T2, const std::array<cplx, 6>& coeffs);

struct GreenKernel {
  double kappa;
  double value;
};

// |xi - y|^kappa with kappa(kappa - 1) = 4 lambda1, Re kappa >= 1/2.
GreenKernel green_kernel(double lambda1, std::array<double, 2> y, std::array<double, 2> xi);
double green_exponent(double lambda1);
// Residual of (pi/2) r^2 h'' - 2 pi lambda1 h for h = r^kappa, relative to |h|.
double green_radial_residual(double lambda1, double r);

struct EpsilonSl3 {
  double eps;
  double smoothing_term;
  double spectral_term;
  bool regime_ok;
};

EpsilonSl3 epsilon_optimizer_sl3(double T1, double T2, double norm_gamma, double norm_1inf);

}  // namespace horolab::sl3
