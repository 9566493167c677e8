// Copyright the ednse authors.
// SPDX-License-Identifier: Apache-2.0

#include "ednse/field.hpp"

#include <algorithm>
#include <cmath>

#include "ednse/error.hpp"

namespace ednse {

namespace {

void require_same_grid(const GridSpec& a, const GridSpec& b) {
  if (!(a == b)) throw InvalidArgument("field arithmetic on mismatched grids");
}

}  // namespace

SpectralVectorField::SpectralVectorField(const GridSpec& grid) : grid_(grid) {
  grid_.validate();
  for (auto& c : coeffs_) c.assign(grid_.size(), Complex{});
}

SpectralVectorField& SpectralVectorField::operator+=(const SpectralVectorField& other) {
  return axpy(1.0, other);
}

SpectralVectorField& SpectralVectorField::operator-=(const SpectralVectorField& other) {
  return axpy(-1.0, other);
}

SpectralVectorField& SpectralVectorField::operator*=(double s) {
  for (auto& c : coeffs_)
    for (auto& v : c) v *= s;
  return *this;
}

SpectralVectorField& SpectralVectorField::axpy(double s, const SpectralVectorField& other) {
  require_same_grid(grid_, other.grid_);
  for (int j = 0; j < 3; ++j) {
    auto& dst = coeffs_[j];
    const auto& src = other.coeffs_[j];
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += s * src[i];
  }
  divergence_free_ = divergence_free_ && other.divergence_free_;
  return *this;
}

SpectralVectorField operator+(SpectralVectorField a, const SpectralVectorField& b) { return a += b; }
SpectralVectorField operator-(SpectralVectorField a, const SpectralVectorField& b) { return a -= b; }
SpectralVectorField operator*(double s, SpectralVectorField a) { return a *= s; }

PhysicalVectorField::PhysicalVectorField(const GridSpec& grid) : grid_(grid) {
  grid_.validate();
  for (auto& c : values_) c.assign(grid_.size(), 0.0);
}

double PhysicalVectorField::max_speed() const {
  double m = 0.0;
  for (std::size_t i = 0; i < grid_.size(); ++i) m = std::max(m, speed_sq(i));
  return std::sqrt(m);
}

double inner_product(const SpectralVectorField& u, const SpectralVectorField& v) {
  require_same_grid(u.grid(), v.grid());
  double sum = 0.0;
  for (int j = 0; j < 3; ++j) {
    const auto a = u.component(j);
    const auto b = v.component(j);
    for (std::size_t i = 0; i < a.size(); ++i) sum += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
  }
  return sum;
}

double l2_norm_sq(const SpectralVectorField& u) {
  double sum = 0.0;
  for (int j = 0; j < 3; ++j)
    for (const auto& c : u.component(j)) sum += std::norm(c);
  return sum;
}

double l2_norm(const SpectralVectorField& u) { return std::sqrt(l2_norm_sq(u)); }

SpectralVectorField resample(const SpectralVectorField& u, const GridSpec& target) {
  const GridSpec& src = u.grid();
  if (src.box_length != target.box_length) {
    throw InvalidArgument("resample: box lengths differ");
  }
  SpectralVectorField out(target);
  const int ns = src.n;
  const int nt = target.n;
  auto target_index = [&](int i) -> int {
    if (src.is_nyquist(i)) return -1;
    const int m = src.mode(i);
    if (m >= nt / 2 || m <= -nt / 2) return -1;
    return m >= 0 ? m : m + nt;
  };
  for (int i0 = 0; i0 < ns; ++i0) {
    const int t0 = target_index(i0);
    if (t0 < 0) continue;
    for (int i1 = 0; i1 < ns; ++i1) {
      const int t1 = target_index(i1);
      if (t1 < 0) continue;
      for (int i2 = 0; i2 < ns; ++i2) {
        const int t2 = target_index(i2);
        if (t2 < 0) continue;
        for (int j = 0; j < 3; ++j) out.at(j, target.flat(t0, t1, t2)) = u.at(j, src.flat(i0, i1, i2));
      }
    }
  }
  out.set_divergence_free(u.divergence_free());
  return out;
}

}  // namespace ednse
