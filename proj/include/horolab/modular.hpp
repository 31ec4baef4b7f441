#pragma once

#include "horolab/kernel.hpp"

#include <cstdint>
#include <vector>

namespace horolab {

struct UpperHalfPoint {
  double x;
  double y;
};

struct UnimodularMatrix {
  std::int64_t a = 1, b = 0, c = 0, d = 1;

  static UnimodularMatrix identity() { return {}; }
  std::int64_t det() const { return a * d - b * c; }
  UnimodularMatrix operator*(const UnimodularMatrix& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
};

UpperHalfPoint moebius(const UnimodularMatrix& g, const UpperHalfPoint& z);

struct Reduction {
  UpperHalfPoint point;
  UnimodularMatrix g;  // g maps the input to point
};

Reduction reduce(const UpperHalfPoint& z);

bool in_fundamental_domain(const UpperHalfPoint& z, double slack = 0.0);

class BumpTestFunction {
 public:
  BumpTestFunction(UpperHalfPoint center, double wx, double wy, double amplitude);

  static BumpTestFunction default_bump();

  UpperHalfPoint center() const { return center_; }
  double wx() const { return wx_; }
  double wy() const { return wy_; }
  double amplitude() const { return amplitude_; }
  double x_lo() const { return center_.x - wx_; }
  double x_hi() const { return center_.x + wx_; }
  double y_lo() const { return center_.y - wy_; }
  double y_hi() const { return center_.y + wy_; }

  // Value in fundamental-domain coordinates (no reduction).
  double operator()(double x, double y) const;
  double dy(double x, double y) const;
  // Gamma-invariant extension.
  double automorphic(double x, double y) const;

 private:
  UpperHalfPoint center_;
  double wx_, wy_, amplitude_;
};

struct QuadratureSpec {
  int panels_x = 64;
  int panels_y = 32;
  int nodes_per_panel = 16;
  double tol = 1e-8;
  int max_doublings = 16;

  void validate() const;
};

struct FunctionNorms {
  double l2_gamma;
  double sobolev_1_inf;
};

double horocycle_average(const BumpTestFunction& F, double T, const QuadratureSpec& q);

// Integral over x in [0,1) of F at height y, by panel doubling.
double horocycle_integral_at(const BumpTestFunction& F, double y, const QuadratureSpec& q);

struct Coset {
  std::int64_t c;
  std::int64_t d;
};

// Cosets of Gamma_inf \ Gamma whose window term psi(y/|cz+d|^2) is nonzero at z.
std::vector<Coset> kernel_cosets(const ThickKernel& k, const UpperHalfPoint& z);

double automorphized_kernel(const ThickKernel& k, const UpperHalfPoint& z);

// Cosets whose window region meets the support box of F.
std::vector<Coset> contributing_cosets(const BumpTestFunction& F, const ThickKernel& k);

// Contribution of a single coset to the folded average.
double coset_contribution(const BumpTestFunction& F, const ThickKernel& k, const Coset& cs,
                          const QuadratureSpec& q);

double thickened_average_unfolded(const BumpTestFunction& F, const ThickKernel& k,
                                  const QuadratureSpec& q);
double thickened_average_folded(const BumpTestFunction& F, const ThickKernel& k,
                                const QuadratureSpec& q);

double hyperbolic_average(const BumpTestFunction& F, double rel_tol = 1e-12);

FunctionNorms norms(const BumpTestFunction& F, const QuadratureSpec& q);

}  // namespace horolab
