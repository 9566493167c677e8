// Copyright the ednse authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef EDNSE_DAMPING_HPP
#define EDNSE_DAMPING_HPP

#include <array>

#include "ednse/field.hpp"

namespace ednse {

enum class DampingKind { exponential, polynomial, none };

/// Damping force h(|u|) u with
///   exponential: h = a (e^{b |u|^2} - 1)
///   polynomial:  h = a |u|^{beta - 1}
///   none:        h = 0
struct DampingParams {
  DampingKind kind = DampingKind::exponential;
  double a = 1.0;
  double b = 1.0;
  double beta = 3.0;

  void validate() const;
  bool operator==(const DampingParams&) const = default;
};

/// Exponents b |u|^2 above this value are treated as blow-up.
inline constexpr double kMaxDampingExponent = 700.0;

/// e^z - 1 - z without cancellation for small z.
double expm1_minus_linear(double z);

/// Pointwise h(|u|) u. Throws BlowUpError on non-finite input or when the
/// exponent exceeds kMaxDampingExponent, naming the grid point.
PhysicalVectorField damping_force(const PhysicalVectorField& u, const DampingParams& p);

/// Grid average of (e^{b|u|^2} - 1) |u|^2 (exponential), |u|^{beta+1}
/// (polynomial) or 0 (none). The factor a is not included.
double dissipation_density_l1(const PhysicalVectorField& u, const DampingParams& p);

struct ThresholdResult {
  double lambda0 = 0.0;
  std::array<double, 2> bracket{0.0, 0.0};
  int iterations = 0;
};

/// Largest lambda with a (e^{b lambda} - 1) <= lambda; zero when ab >= 1.
ThresholdResult lambda0(double a, double b);

using Vec3 = std::array<double, 3>;

/// Both sides of a monotonicity inequality <F(x) - F(y), x - y> >= rhs.
struct MonotonicityTerms {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual() const { return lhs - rhs; }
};

MonotonicityTerms monotonicity_terms_exp(const Vec3& x, const Vec3& y, double b);
MonotonicityTerms monotonicity_terms_poly(const Vec3& x, const Vec3& y, double beta);

/// <(e^{b|x|^2}-1)x - (e^{b|y|^2}-1)y, x-y> - (1/2)((e^{b|x|^2}-1) + (e^{b|y|^2}-1))|x-y|^2.
double check_monotonicity_exp(const Vec3& x, const Vec3& y, double b);

/// <|x|^beta x - |y|^beta y, x-y> - (1/2)(|x|^beta + |y|^beta)|x-y|^2.
double check_monotonicity_poly(const Vec3& x, const Vec3& y, double beta);

/// sup_{z > 0} (e^{bz^2} - 1 - bz^2) / ((e^{bz^2} - 1) z).
double m_b_constant(double b);

}  // namespace ednse

#endif  // EDNSE_DAMPING_HPP
