// Copyright the ednse authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef EDNSE_SPECTRAL_HPP
#define EDNSE_SPECTRAL_HPP

#include <cstdint>

#include "ednse/field.hpp"

namespace ednse {

// Transforms ----------------------------------------------------------------

/// Forward DFT normalized by 1/n^3, so a constant field maps to its value at
/// k = 0 and inverse_transform(forward_transform(p)) == p to roundoff.
SpectralVectorField forward_transform(const PhysicalVectorField& p);

/// Throws InvalidArgument naming the worst mode when u_k and conj(u_{-k})
/// differ by more than 1e-10 * max(1, max |u_k|).
PhysicalVectorField inverse_transform(const SpectralVectorField& s);

struct HermitianDefect {
  double magnitude = 0.0;
  int component = 0;
  std::array<int, 3> mode{0, 0, 0};
};
HermitianDefect hermitian_defect(const SpectralVectorField& s);

// Fourier multipliers ---------------------------------------------------------

/// J_R: zero every mode with |k| > R (closed ball kept).
SpectralVectorField friedrichs_cutoff(const SpectralVectorField& s, double radius);

/// Leray projector u_k - (k.u_k) k / |k|^2. The k = 0 mode and the unpaired
/// Nyquist planes (m_i = -n/2) are mapped to zero.
SpectralVectorField leray_project(const SpectralVectorField& s);

/// max over nonzero modes of |k.u_k| / (|k| |u_k|).
double divergence_residual(const SpectralVectorField& s);

/// Discrete ||grad u||^2 = sum |k|^2 |u_k|^2.
double gradient_norm_sq(const SpectralVectorField& s);

/// Homogeneous: (sum_{k!=0} |k|^{2 sigma} |u_k|^2)^{1/2}.
/// Inhomogeneous: (sum (1 + |k|^2)^sigma |u_k|^2)^{1/2}.
double sobolev_norm(const SpectralVectorField& s, double sigma, bool homogeneous);

/// Exact spectral split at |k| <= delta (closed ball); requires delta > 0.
SpectralVectorField low_pass(const SpectralVectorField& s, double delta);
SpectralVectorField high_pass(const SpectralVectorField& s, double delta);

// Nonlinearity ------------------------------------------------------------------

/// J_R P div(u (x) u), evaluated pseudo-spectrally from the six distinct
/// products u_i u_j. The input is masked to the dealias ball before the
/// products are formed and the output is masked again, which removes all
/// quadratic aliasing.
SpectralVectorField nonlinear_term(const SpectralVectorField& s, double radius);

// Initial data --------------------------------------------------------------------

/// A (sin x1 cos x2 cos x3, -cos x1 sin x2 cos x3, 0) with x scaled by 2 pi / L,
/// truncated to the dealias ball.
SpectralVectorField taylor_green(const GridSpec& grid, double amplitude);

/// Random-phase divergence-free field with envelope |k|^slope exp(-|k|^2/k_peak^2),
/// truncated to the dealias ball and scaled so that ||u||_{L^2} == norm.
SpectralVectorField random_divfree_field(const GridSpec& grid, double spectrum_slope, double k_peak,
                                         std::uint64_t seed, double norm);

// Threading -------------------------------------------------------------------------

/// Threads used by transforms and modewise loops. Results are bitwise
/// reproducible for a fixed count.
void set_thread_count(int threads);
int thread_count();

}  // namespace ednse

#endif  // EDNSE_SPECTRAL_HPP
