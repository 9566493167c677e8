// Copyright the ednse authors.
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"

#include <cmath>
#include <random>

#include "ednse/damping.hpp"
#include "ednse/error.hpp"
#include "oracles.hpp"

using namespace ednse;

namespace {

double norm_sq(const Vec3& v) { return v[0] * v[0] + v[1] * v[1] + v[2] * v[2]; }

}  // namespace

TEST_CASE("expm1_minus_linear agrees with a long double series") {
  for (double z : {0.0, 1e-12, 1e-6, 3e-3, 9.99e-3, 1e-2, 0.3, 1.0, 5.0, 40.0, -0.5}) {
    long double term = 1.0L;
    long double sum = 0.0L;
    for (int k = 1; k < 200; ++k) {
      term *= static_cast<long double>(z) / k;
      if (k >= 2) sum += term;
    }
    const double tol = 2e-16 * std::max(1.0, static_cast<double>(std::fabs(sum)));
    CHECK(std::abs(expm1_minus_linear(z) - static_cast<double>(sum)) <= tol + 1e-300);
  }
}

TEST_CASE("damping force and dissipation density are pointwise") {
  GridSpec g;
  g.n = 4;
  PhysicalVectorField u(g);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(-1.5, 1.5);
  for (int j = 0; j < 3; ++j)
    for (auto& v : u.component(j)) v = d(rng);
  const DampingParams p{DampingKind::exponential, 0.7, 1.3, 3.0};
  const PhysicalVectorField f = damping_force(u, p);
  double density = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double s = u.speed_sq(i);
    for (int j = 0; j < 3; ++j) CHECK(f.at(j, i) == doctest::Approx(0.7 * std::expm1(1.3 * s) * u.at(j, i)));
    density += std::expm1(1.3 * s) * s;
  }
  CHECK(dissipation_density_l1(u, p) == doctest::Approx(density / static_cast<double>(g.size())));

  const DampingParams poly{DampingKind::polynomial, 2.0, 1.0, 2.5};
  const PhysicalVectorField fp = damping_force(u, poly);
  CHECK(fp.at(2, 5) == doctest::Approx(2.0 * std::pow(u.speed_sq(5), 0.75) * u.at(2, 5)));

  const DampingParams none{DampingKind::none, 1.0, 1.0, 3.0};
  CHECK(dissipation_density_l1(u, none) == 0.0);
}

TEST_CASE("exponent cap raises a blow-up error") {
  GridSpec g;
  g.n = 4;
  PhysicalVectorField u(g);
  u.at(0, 3) = 30.0;
  CHECK_THROWS_AS(damping_force(u, DampingParams{DampingKind::exponential, 1.0, 1.0, 3.0}), BlowUpError);
}

TEST_CASE("threshold constant lambda0") {
  CHECK(lambda0(1.0, 1.0).lambda0 == 0.0);
  CHECK(lambda0(2.0, 3.0).lambda0 == 0.0);

  const double l = lambda0(0.5, 1.0).lambda0;
  CHECK(std::abs(l - oracle::lambda0_by_bisection(0.5, 1.0)) <= 1e-12);
  CHECK(l == doctest::Approx(1.2564312086261697).epsilon(1e-13));

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ad(0.01, 2.0), bd(0.01, 3.0);
  int trials = 0;
  while (trials < 100) {
    const double a = ad(rng), b = bd(rng);
    if (a * b >= 1.0) continue;
    ++trials;
    const double root = lambda0(a, b).lambda0;
    CHECK(root > std::log(1.0 / (a * b)) / b);
    CHECK(std::abs(root - oracle::lambda0_by_bisection(a, b)) <= 1e-12 * std::max(1.0, root));
  }
  CHECK_THROWS_AS(lambda0(0.0, 1.0), InvalidArgument);
}

TEST_CASE("monotonicity residuals match the closed form") {
  // <f(x)x - f(y)y, x - y> - (f(x) + f(y))|x - y|^2 / 2 = (f(x) - f(y))(|x|^2 - |y|^2) / 2
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (int i = 0; i < 2000; ++i) {
    const Vec3 x{d(rng), d(rng), d(rng)};
    const Vec3 y{d(rng), d(rng), d(rng)};
    const double b = 0.5 + (i % 3);
    const double fx = std::expm1(b * norm_sq(x)), fy = std::expm1(b * norm_sq(y));
    const double closed = 0.5 * (fx - fy) * (norm_sq(x) - norm_sq(y));
    const double scale = std::max(1.0, std::abs(monotonicity_terms_exp(x, y, b).lhs));
    CHECK(std::abs(check_monotonicity_exp(x, y, b) - closed) <= 1e-12 * scale);
    CHECK(check_monotonicity_exp(x, y, b) >= -1e-12 * scale);

    const double beta = 1.0 + (i % 3);
    const double gx = std::pow(norm_sq(x), beta / 2), gy = std::pow(norm_sq(y), beta / 2);
    const double closed_poly = 0.5 * (gx - gy) * (norm_sq(x) - norm_sq(y));
    const double pscale = std::max(1.0, std::abs(monotonicity_terms_poly(x, y, beta).lhs));
    CHECK(std::abs(check_monotonicity_poly(x, y, beta) - closed_poly) <= 1e-12 * pscale);
  }
  CHECK(check_monotonicity_exp({0, 0, 0}, {0, 0, 0}, 1.0) == 0.0);
}

TEST_CASE("M_b against a dense scan") {
  for (double b : {0.5, 1.0, 2.0}) {
    double best = 0.0;
    for (int i = 0; i < 1000000; ++i) {
      const double w = 1e-6 + (20.0 - 1e-6) * i / 999999.0;  // w = b z^2
      const double z = std::sqrt(w / b);
      best = std::max(best, (std::expm1(w) - w) / (std::expm1(w) * z));
    }
    const double m = m_b_constant(b);
    CHECK(m >= best * (1 - 1e-12));
    CHECK(m == doctest::Approx(best).epsilon(1e-8));
    for (double z : {1e-3, 1.0, 10.0}) {
      const double w = std::min(b * z * z, 700.0);
      const double zz = std::sqrt(w / b);
      CHECK(expm1_minus_linear(w) * zz <= m * std::expm1(w) * zz * zz * (1 + 1e-10));
    }
  }
  // z -> z / sqrt(b) gives r_b(z) = sqrt(b) r_1(sqrt(b) z), so M_b = sqrt(b) M_1.
  CHECK(std::abs(m_b_constant(4.0) - 2.0 * m_b_constant(1.0)) <= 1e-8);
  CHECK(std::abs(m_b_constant(0.25) - 0.5 * m_b_constant(1.0)) <= 1e-8);
  CHECK_THROWS_AS(m_b_constant(0.0), InvalidArgument);
}
