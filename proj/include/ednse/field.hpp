// Copyright the ednse authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef EDNSE_FIELD_HPP
#define EDNSE_FIELD_HPP

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "ednse/grid.hpp"

namespace ednse {

using Complex = std::complex<double>;

/// Velocity field given by its Fourier coefficients on the full wavevector
/// lattice. Coefficients use the normalization u(x) = sum_k u_k e^{i k.x},
/// so grid averages of |u|^2 equal sums of |u_k|^2.
class SpectralVectorField {
 public:
  SpectralVectorField() = default;
  explicit SpectralVectorField(const GridSpec& grid);

  const GridSpec& grid() const { return grid_; }

  std::span<Complex> component(int j) { return coeffs_[j]; }
  std::span<const Complex> component(int j) const { return coeffs_[j]; }
  Complex& at(int j, std::size_t idx) { return coeffs_[j][idx]; }
  const Complex& at(int j, std::size_t idx) const { return coeffs_[j][idx]; }

  /// Set by operators whose output is known to satisfy k.u_k = 0.
  bool divergence_free() const { return divergence_free_; }
  void set_divergence_free(bool flag) { divergence_free_ = flag; }

  SpectralVectorField& operator+=(const SpectralVectorField& other);
  SpectralVectorField& operator-=(const SpectralVectorField& other);
  SpectralVectorField& operator*=(double s);
  /// this += s * other
  SpectralVectorField& axpy(double s, const SpectralVectorField& other);

  bool operator==(const SpectralVectorField& other) const {
    return grid_ == other.grid_ && coeffs_ == other.coeffs_;
  }

 private:
  GridSpec grid_{};
  std::array<std::vector<Complex>, 3> coeffs_;
  bool divergence_free_ = false;
};

SpectralVectorField operator+(SpectralVectorField a, const SpectralVectorField& b);
SpectralVectorField operator-(SpectralVectorField a, const SpectralVectorField& b);
SpectralVectorField operator*(double s, SpectralVectorField a);

/// Velocity values on the n^3 collocation grid x = (L/n) i.
class PhysicalVectorField {
 public:
  PhysicalVectorField() = default;
  explicit PhysicalVectorField(const GridSpec& grid);

  const GridSpec& grid() const { return grid_; }
  std::span<double> component(int j) { return values_[j]; }
  std::span<const double> component(int j) const { return values_[j]; }
  double& at(int j, std::size_t idx) { return values_[j][idx]; }
  double at(int j, std::size_t idx) const { return values_[j][idx]; }

  double speed_sq(std::size_t idx) const {
    return values_[0][idx] * values_[0][idx] + values_[1][idx] * values_[1][idx] +
           values_[2][idx] * values_[2][idx];
  }
  double max_speed() const;

 private:
  GridSpec grid_{};
  std::array<std::vector<double>, 3> values_;
};

/// Real inner product <u, v> as a grid average (Parseval form).
double inner_product(const SpectralVectorField& u, const SpectralVectorField& v);
double l2_norm_sq(const SpectralVectorField& u);
double l2_norm(const SpectralVectorField& u);

/// Copy the modes of `u` onto another lattice with the same box length,
/// dropping modes that do not exist there.
SpectralVectorField resample(const SpectralVectorField& u, const GridSpec& target);

}  // namespace ednse

#endif  // EDNSE_FIELD_HPP
