// Copyright the ednse authors.
// SPDX-License-Identifier: Apache-2.0

#include "ednse/damping.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "ednse/error.hpp"

namespace ednse {

void DampingParams::validate() const {
  switch (kind) {
    case DampingKind::exponential:
      if (!(a > 0.0) || !(b > 0.0)) throw InvalidArgument("damping: exponential kind needs a > 0 and b > 0");
      break;
    case DampingKind::polynomial:
      if (!(a > 0.0) || !(beta > 0.0)) throw InvalidArgument("damping: polynomial kind needs a > 0 and beta > 0");
      break;
    case DampingKind::none:
      break;
  }
}

double expm1_minus_linear(double z) {
  if (std::abs(z) < 1e-2) {
    // Horner form of z^2/2! + z^3/3! + ... + z^7/7!.
    return z * z * (1.0 / 2 + z * (1.0 / 6 + z * (1.0 / 24 + z * (1.0 / 120 + z * (1.0 / 720 + z / 5040)))));
  }
  return std::expm1(z) - z;
}

namespace {

[[noreturn]] void report_point(const GridSpec& grid, std::size_t idx, const char* what) {
  const auto p = grid.unflat(idx);
  std::ostringstream msg;
  msg << "damping_force: " << what << " at grid point (" << p[0] << ", " << p[1] << ", " << p[2] << ")";
  throw BlowUpError(msg.str());
}

// h(|u|) for one point; `speed_sq` is |u|^2.
double coefficient(const DampingParams& p, double speed_sq) {
  switch (p.kind) {
    case DampingKind::exponential:
      return p.a * std::expm1(p.b * speed_sq);
    case DampingKind::polynomial:
      return speed_sq == 0.0 ? 0.0 : p.a * std::pow(speed_sq, 0.5 * (p.beta - 1.0));
    case DampingKind::none:
      return 0.0;
  }
  return 0.0;
}

}  // namespace

PhysicalVectorField damping_force(const PhysicalVectorField& u, const DampingParams& p) {
  const GridSpec& grid = u.grid();
  PhysicalVectorField out(grid);
  const std::size_t total = grid.size();
  for (std::size_t i = 0; i < total; ++i) {
    const double s2 = u.speed_sq(i);
    if (!std::isfinite(s2)) report_point(grid, i, "non-finite velocity");
    if (p.kind == DampingKind::exponential && p.b * s2 > kMaxDampingExponent) {
      report_point(grid, i, "damping exponent overflow");
    }
    const double h = coefficient(p, s2);
    for (int j = 0; j < 3; ++j) out.at(j, i) = h * u.at(j, i);
  }
  return out;
}

double dissipation_density_l1(const PhysicalVectorField& u, const DampingParams& p) {
  if (p.kind == DampingKind::none) return 0.0;
  const std::size_t total = u.grid().size();
  double sum = 0.0;
  for (std::size_t i = 0; i < total; ++i) {
    const double s2 = u.speed_sq(i);
    if (p.kind == DampingKind::exponential) {
      sum += std::expm1(p.b * s2) * s2;
    } else {
      sum += std::pow(s2, 0.5 * (p.beta + 1.0));
    }
  }
  return sum / static_cast<double>(total);
}

ThresholdResult lambda0(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw InvalidArgument("lambda0: a and b must be positive");
  ThresholdResult result;
  if (a * b >= 1.0) return result;

  auto g = [a, b](double lambda) { return a * std::expm1(b * lambda) - lambda; };
  // The root lies strictly above log(1/(ab))/b, where g is still negative.
  double lo = std::log(1.0 / (a * b)) / b;
  double hi = lo > 0.0 ? 2.0 * lo : 1.0;
  while (g(hi) <= 0.0) {
    lo = hi;
    hi *= 2.0;
    ++result.iterations;
  }
  while (hi - lo > 1e-15 * hi && result.iterations < 400) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (g(mid) <= 0.0 ? lo : hi) = mid;
    ++result.iterations;
  }
  result.bracket = {lo, hi};
  result.lambda0 = 0.5 * (lo + hi);
  return result;
}

namespace {

double dot(const Vec3& x, const Vec3& y) { return x[0] * y[0] + x[1] * y[1] + x[2] * y[2]; }

// lhs = <f(x) x - f(y) y, x - y>, rhs = (f(x) + f(y)) |x - y|^2 / 2
MonotonicityTerms monotonicity_terms(const Vec3& x, const Vec3& y, double fx, double fy) {
  Vec3 d{};
  Vec3 g{};
  for (int i = 0; i < 3; ++i) {
    d[i] = x[i] - y[i];
    g[i] = fx * x[i] - fy * y[i];
  }
  return {dot(g, d), 0.5 * (fx + fy) * dot(d, d)};
}

}  // namespace

MonotonicityTerms monotonicity_terms_exp(const Vec3& x, const Vec3& y, double b) {
  return monotonicity_terms(x, y, std::expm1(b * dot(x, x)), std::expm1(b * dot(y, y)));
}

MonotonicityTerms monotonicity_terms_poly(const Vec3& x, const Vec3& y, double beta) {
  return monotonicity_terms(x, y, std::pow(dot(x, x), 0.5 * beta), std::pow(dot(y, y), 0.5 * beta));
}

double check_monotonicity_exp(const Vec3& x, const Vec3& y, double b) {
  return monotonicity_terms_exp(x, y, b).residual();
}

double check_monotonicity_poly(const Vec3& x, const Vec3& y, double beta) {
  return monotonicity_terms_poly(x, y, beta).residual();
}

double m_b_constant(double b) {
  if (!(b > 0.0)) throw InvalidArgument("m_b_constant: b must be positive");
  auto ratio = [b](double z) {
    const double w = b * z * z;
    return expm1_minus_linear(w) / (std::expm1(w) * z);
  };
  // Log-spaced scan over b z^2 in [1e-8, 700], then golden section around
  // the best sample.
  constexpr int samples = 4000;
  const double z_lo = std::sqrt(1e-8 / b);
  const double z_hi = std::sqrt(kMaxDampingExponent / b);
  const double step = std::log(z_hi / z_lo) / (samples - 1);
  std::vector<double> z(samples);
  int best = 0;
  double best_value = -1.0;
  for (int i = 0; i < samples; ++i) {
    z[i] = z_lo * std::exp(step * i);
    const double r = ratio(z[i]);
    if (r > best_value) {
      best_value = r;
      best = i;
    }
  }
  double lo = z[std::max(best - 1, 0)];
  double hi = z[std::min(best + 1, samples - 1)];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = ratio(c);
  double fd = ratio(d);
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = ratio(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = ratio(d);
    }
  }
  return std::max({best_value, fc, fd});
}

}  // namespace ednse
