// Copyright the ednse authors.
// SPDX-License-Identifier: Apache-2.0

#include "ednse/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "ednse/error.hpp"
#include "fft.hpp"
#include "pseudo.hpp"

namespace ednse {

namespace detail {

std::vector<double> axis_wavenumbers(const GridSpec& grid) {
  std::vector<double> k(grid.n);
  for (int i = 0; i < grid.n; ++i) k[i] = grid.wavenumber(i);
  return k;
}

PhysicalVectorField inverse_unchecked(const SpectralVectorField& s) {
  const GridSpec& grid = s.grid();
  PhysicalVectorField out(grid);
  inverse_real_pair(grid, s.component(0), s.component(1), out.component(0), out.component(1));
  inverse_real_pair(grid, s.component(2), {}, out.component(2), {});
  return out;
}

PhysicalVectorField dealiased_physical(const SpectralVectorField& u) {
  return inverse_unchecked(friedrichs_cutoff(u, u.grid().dealias_radius()));
}

SpectralVectorField advection_divergence(const PhysicalVectorField& u) {
  const GridSpec& grid = u.grid();
  const std::size_t total = grid.size();
  // Products in the order 00, 01, 02, 11, 12, 22.
  constexpr int pairs[6][2] = {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}};
  // Scratch reused across calls. Bound to plain references so that OpenMP
  // workers see the calling thread's buffers.
  thread_local std::vector<std::vector<double>> prod_buffer;
  thread_local std::vector<std::vector<Complex>> hat_buffer;
  if (prod_buffer.size() != 6 || prod_buffer[0].size() != total) {
    prod_buffer.assign(6, std::vector<double>(total));
    hat_buffer.assign(6, std::vector<Complex>(total));
  }
  auto& prod = prod_buffer;
  auto& hat = hat_buffer;
  for (int p = 0; p < 6; ++p) {
    const auto a = u.component(pairs[p][0]);
    const auto b = u.component(pairs[p][1]);
    auto& dst = prod[p];
    for (std::size_t i = 0; i < total; ++i) dst[i] = a[i] * b[i];
  }
  for (int p = 0; p < 6; p += 2) forward_real_pair(grid, prod[p], prod[p + 1], hat[p], hat[p + 1]);

  // Index of the product u_i u_j in `hat`.
  constexpr int slot[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
  SpectralVectorField out(grid);
  const auto k = axis_wavenumbers(grid);
  const double kd = grid.dealias_radius();
  const int n = grid.n;
#pragma omp parallel for schedule(static)
  for (int i0 = 0; i0 < n; ++i0) {
    for (int i1 = 0; i1 < n; ++i1) {
      for (int i2 = 0; i2 < n; ++i2) {
        const double kv[3] = {k[i0], k[i1], k[i2]};
        const double k2 = kv[0] * kv[0] + kv[1] * kv[1] + kv[2] * kv[2];
        if (!in_closed_ball(k2, kd)) continue;
        const std::size_t idx = grid.flat(i0, i1, i2);
        for (int c = 0; c < 3; ++c) {
          Complex s{};
          for (int d = 0; d < 3; ++d) s += kv[d] * hat[slot[c][d]][idx];
          out.at(c, idx) = Complex(-s.imag(), s.real());  // i * s
        }
      }
    }
  }
  return out;
}

void project_truncate(SpectralVectorField& s, double radius) {
  const GridSpec& grid = s.grid();
  const auto k = axis_wavenumbers(grid);
  const int n = grid.n;
#pragma omp parallel for schedule(static)
  for (int i0 = 0; i0 < n; ++i0) {
    for (int i1 = 0; i1 < n; ++i1) {
      for (int i2 = 0; i2 < n; ++i2) {
        const std::size_t idx = grid.flat(i0, i1, i2);
        const double kv[3] = {k[i0], k[i1], k[i2]};
        const double k2 = kv[0] * kv[0] + kv[1] * kv[1] + kv[2] * kv[2];
        const bool drop = k2 == 0.0 || grid.is_nyquist(i0) || grid.is_nyquist(i1) ||
                          grid.is_nyquist(i2) || !in_closed_ball(k2, radius);
        if (drop) {
          for (int c = 0; c < 3; ++c) s.at(c, idx) = Complex{};
          continue;
        }
        const Complex kdotu = kv[0] * s.at(0, idx) + kv[1] * s.at(1, idx) + kv[2] * s.at(2, idx);
        for (int c = 0; c < 3; ++c) s.at(c, idx) -= kdotu * (kv[c] / k2);
      }
    }
  }
  s.set_divergence_free(true);
}

}  // namespace detail

SpectralVectorField forward_transform(const PhysicalVectorField& p) {
  const GridSpec& grid = p.grid();
  SpectralVectorField out(grid);
  for (int j = 0; j < 3; ++j) {
    if (p.component(j).size() != grid.size()) {
      throw InvalidArgument("forward_transform: component shape does not match grid");
    }
  }
  detail::forward_real_pair(grid, p.component(0), p.component(1), out.component(0), out.component(1));
  detail::forward_real_pair(grid, p.component(2), {}, out.component(2), {});
  return out;
}

HermitianDefect hermitian_defect(const SpectralVectorField& s) {
  const GridSpec& grid = s.grid();
  HermitianDefect worst;
  const int n = grid.n;
  for (int i0 = 0; i0 < n; ++i0) {
    for (int i1 = 0; i1 < n; ++i1) {
      for (int i2 = 0; i2 < n; ++i2) {
        const std::size_t idx = grid.flat(i0, i1, i2);
        const std::size_t mir = grid.flat(grid.mirror(i0), grid.mirror(i1), grid.mirror(i2));
        for (int j = 0; j < 3; ++j) {
          const double d = std::norm(s.at(j, idx) - std::conj(s.at(j, mir)));
          if (d > worst.magnitude) {
            worst.magnitude = d;
            worst.component = j;
            worst.mode = {grid.mode(i0), grid.mode(i1), grid.mode(i2)};
          }
        }
      }
    }
  }
  worst.magnitude = std::sqrt(worst.magnitude);
  return worst;
}

PhysicalVectorField inverse_transform(const SpectralVectorField& s) {
  double scale_sq = 1.0;
  for (int j = 0; j < 3; ++j)
    for (const auto& c : s.component(j)) scale_sq = std::max(scale_sq, std::norm(c));
  const double scale = std::sqrt(scale_sq);
  const HermitianDefect defect = hermitian_defect(s);
  if (defect.magnitude > 1e-10 * scale) {
    std::ostringstream msg;
    msg << "inverse_transform: Hermitian symmetry broken by " << defect.magnitude << " at component "
        << defect.component << ", mode (" << defect.mode[0] << ", " << defect.mode[1] << ", "
        << defect.mode[2] << ")";
    throw InvalidArgument(msg.str());
  }
  return detail::inverse_unchecked(s);
}

namespace {

// Applies `keep(k2)` modewise; modes failing it are zeroed.
template <class Keep>
SpectralVectorField mask(const SpectralVectorField& s, Keep keep) {
  SpectralVectorField out = s;
  const GridSpec& grid = s.grid();
  const auto k = detail::axis_wavenumbers(grid);
  const int n = grid.n;
  for (int i0 = 0; i0 < n; ++i0)
    for (int i1 = 0; i1 < n; ++i1)
      for (int i2 = 0; i2 < n; ++i2) {
        const double k2 = k[i0] * k[i0] + k[i1] * k[i1] + k[i2] * k[i2];
        if (keep(k2)) continue;
        const std::size_t idx = grid.flat(i0, i1, i2);
        for (int j = 0; j < 3; ++j) out.at(j, idx) = Complex{};
      }
  return out;
}

// Sum over modes of weight(k2) * |u_k|^2.
template <class Weight>
double weighted_sum(const SpectralVectorField& s, Weight weight) {
  const GridSpec& grid = s.grid();
  const auto k = detail::axis_wavenumbers(grid);
  const int n = grid.n;
  double sum = 0.0;
  for (int i0 = 0; i0 < n; ++i0)
    for (int i1 = 0; i1 < n; ++i1)
      for (int i2 = 0; i2 < n; ++i2) {
        const std::size_t idx = grid.flat(i0, i1, i2);
        const double e = std::norm(s.at(0, idx)) + std::norm(s.at(1, idx)) + std::norm(s.at(2, idx));
        if (e == 0.0) continue;
        sum += weight(k[i0] * k[i0] + k[i1] * k[i1] + k[i2] * k[i2]) * e;
      }
  return sum;
}

}  // namespace

SpectralVectorField friedrichs_cutoff(const SpectralVectorField& s, double radius) {
  if (radius < 0.0) throw InvalidArgument("friedrichs_cutoff: radius must be non-negative");
  return mask(s, [radius](double k2) { return in_closed_ball(k2, radius); });
}

SpectralVectorField leray_project(const SpectralVectorField& s) {
  SpectralVectorField out = s;
  detail::project_truncate(out, std::numeric_limits<double>::infinity());
  return out;
}

double divergence_residual(const SpectralVectorField& s) {
  const GridSpec& grid = s.grid();
  const auto k = detail::axis_wavenumbers(grid);
  const int n = grid.n;
  double worst = 0.0;
  for (int i0 = 0; i0 < n; ++i0)
    for (int i1 = 0; i1 < n; ++i1)
      for (int i2 = 0; i2 < n; ++i2) {
        const std::size_t idx = grid.flat(i0, i1, i2);
        const double kv[3] = {k[i0], k[i1], k[i2]};
        const double kk = std::sqrt(kv[0] * kv[0] + kv[1] * kv[1] + kv[2] * kv[2]);
        const double uu = std::sqrt(std::norm(s.at(0, idx)) + std::norm(s.at(1, idx)) + std::norm(s.at(2, idx)));
        if (kk == 0.0 || uu == 0.0) continue;
        const Complex div = kv[0] * s.at(0, idx) + kv[1] * s.at(1, idx) + kv[2] * s.at(2, idx);
        worst = std::max(worst, std::abs(div) / (kk * uu));
      }
  return worst;
}

double gradient_norm_sq(const SpectralVectorField& s) {
  return weighted_sum(s, [](double k2) { return k2; });
}

double sobolev_norm(const SpectralVectorField& s, double sigma, bool homogeneous) {
  if (homogeneous) {
    return std::sqrt(weighted_sum(s, [sigma](double k2) { return k2 == 0.0 ? 0.0 : std::pow(k2, sigma); }));
  }
  return std::sqrt(weighted_sum(s, [sigma](double k2) { return std::pow(1.0 + k2, sigma); }));
}

SpectralVectorField low_pass(const SpectralVectorField& s, double delta) {
  if (!(delta > 0.0)) throw InvalidArgument("low_pass: delta must be positive");
  return mask(s, [delta](double k2) { return in_closed_ball(k2, delta); });
}

SpectralVectorField high_pass(const SpectralVectorField& s, double delta) {
  if (!(delta > 0.0)) throw InvalidArgument("high_pass: delta must be positive");
  return mask(s, [delta](double k2) { return !in_closed_ball(k2, delta); });
}

SpectralVectorField nonlinear_term(const SpectralVectorField& s, double radius) {
  SpectralVectorField out = detail::advection_divergence(detail::dealiased_physical(s));
  detail::project_truncate(out, radius);
  return out;
}

SpectralVectorField taylor_green(const GridSpec& grid, double amplitude) {
  grid.validate();
  SpectralVectorField u(grid);
  const int n = grid.n;
  if (n >= 4) {
    for (int s0 : {-1, 1})
      for (int s1 : {-1, 1})
        for (int s2 : {-1, 1}) {
          const std::size_t idx = grid.flat((s0 + n) % n, (s1 + n) % n, (s2 + n) % n);
          // sin(x) = (e^{ix} - e^{-ix}) / 2i and cos(x) = (e^{ix} + e^{-ix}) / 2.
          u.at(0, idx) = Complex(0.0, -amplitude * s0 / 8.0);
          u.at(1, idx) = Complex(0.0, amplitude * s1 / 8.0);
        }
  }
  u = friedrichs_cutoff(u, grid.dealias_radius());
  u.set_divergence_free(true);
  return u;
}

SpectralVectorField random_divfree_field(const GridSpec& grid, double spectrum_slope, double k_peak,
                                         std::uint64_t seed, double norm) {
  grid.validate();
  if (!(k_peak > 0.0)) throw InvalidArgument("random_divfree_field: k_peak must be positive");
  if (!(norm >= 0.0)) throw InvalidArgument("random_divfree_field: norm must be non-negative");
  SpectralVectorField u(grid);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto k = detail::axis_wavenumbers(grid);
  const int n = grid.n;
  for (int i0 = 0; i0 < n; ++i0)
    for (int i1 = 0; i1 < n; ++i1)
      for (int i2 = 0; i2 < n; ++i2) {
        const std::size_t idx = grid.flat(i0, i1, i2);
        const std::size_t mir = grid.flat(grid.mirror(i0), grid.mirror(i1), grid.mirror(i2));
        if (mir <= idx) continue;  // self-conjugate modes stay zero; partners filled below
        if (grid.is_nyquist(i0) || grid.is_nyquist(i1) || grid.is_nyquist(i2)) continue;
        const double k2 = k[i0] * k[i0] + k[i1] * k[i1] + k[i2] * k[i2];
        const double envelope = std::pow(std::sqrt(k2), spectrum_slope) * std::exp(-k2 / (k_peak * k_peak));
        for (int j = 0; j < 3; ++j) {
          const double re = normal(rng);
          const double im = normal(rng);
          const Complex c = envelope * Complex(re, im);
          u.at(j, idx) = c;
          u.at(j, mir) = std::conj(c);
        }
      }
  detail::project_truncate(u, grid.dealias_radius());
  const double current = l2_norm(u);
  if (current == 0.0) {
    if (norm == 0.0) return u;
    throw InvalidArgument("random_divfree_field: no modes inside the dealias ball");
  }
  u *= norm / current;
  u.set_divergence_free(true);
  return u;
}

}  // namespace ednse
