// Copyright the ednse authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef EDNSE_SRC_PSEUDO_HPP
#define EDNSE_SRC_PSEUDO_HPP

#include <vector>

#include "ednse/field.hpp"

namespace ednse::detail {

/// Wavenumbers k_i for storage indices 0..n-1 along one axis.
std::vector<double> axis_wavenumbers(const GridSpec& grid);

/// inverse_transform without the Hermitian symmetry check.
PhysicalVectorField inverse_unchecked(const SpectralVectorField& s);

/// Collocation values of u after masking to the dealias ball.
PhysicalVectorField dealiased_physical(const SpectralVectorField& u);

/// div(u (x) u) in spectral space from collocation values, masked to the
/// dealias ball. Not projected.
SpectralVectorField advection_divergence(const PhysicalVectorField& u);

/// In place: Leray projection followed by the closed-ball cutoff at `radius`.
void project_truncate(SpectralVectorField& s, double radius);

}  // namespace ednse::detail

#endif  // EDNSE_SRC_PSEUDO_HPP
