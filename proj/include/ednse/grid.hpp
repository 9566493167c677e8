// Copyright the ednse authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef EDNSE_GRID_HPP
#define EDNSE_GRID_HPP

#include <array>
#include <cstddef>
#include <numbers>

namespace ednse {

/// Periodic box [0, L)^3 sampled with n points per axis. The wavevector
/// lattice is (2 pi / L) m with -n/2 <= m_i < n/2.
struct GridSpec {
  int n = 32;
  double box_length = 2.0 * std::numbers::pi;
  double dealias_fraction = 2.0 / 3.0;

  /// Throws InvalidArgument unless n is even and positive, L > 0 and the
  /// dealias fraction lies in (0, 1].
  void validate() const;

  std::size_t size() const {
    return static_cast<std::size_t>(n) * static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  }
  std::size_t flat(int i0, int i1, int i2) const {
    return (static_cast<std::size_t>(i0) * n + static_cast<std::size_t>(i1)) * n + static_cast<std::size_t>(i2);
  }
  std::array<int, 3> unflat(std::size_t idx) const {
    const int i2 = static_cast<int>(idx % n);
    const int i1 = static_cast<int>((idx / n) % n);
    const int i0 = static_cast<int>(idx / (static_cast<std::size_t>(n) * n));
    return {i0, i1, i2};
  }

  double k_unit() const { return 2.0 * std::numbers::pi / box_length; }
  /// Signed lattice integer for storage index i.
  int mode(int i) const { return i < n / 2 ? i : i - n; }
  double wavenumber(int i) const { return k_unit() * mode(i); }
  /// Storage index of -m for storage index i.
  int mirror(int i) const { return i == 0 ? 0 : n - i; }
  bool is_nyquist(int i) const { return i == n / 2; }

  /// Radius of the ball kept by quadratic dealiasing.
  double dealias_radius() const { return dealias_fraction * (n / 2) * k_unit(); }
  /// Largest |k| on the lattice (the corner -n/2 in every axis).
  double max_wavenumber() const;
  double spacing() const { return box_length / n; }

  bool operator==(const GridSpec&) const = default;
};

/// Closed-ball membership |k|^2 <= R^2, with a relative tie tolerance so that
/// lattice points lying on the sphere are retained deterministically.
inline bool in_closed_ball(double k2, double radius) {
  return k2 <= radius * radius * (1.0 + 1e-12);
}

}  // namespace ednse

#endif  // EDNSE_GRID_HPP
