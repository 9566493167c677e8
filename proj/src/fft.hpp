// Copyright the ednse authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef EDNSE_SRC_FFT_HPP
#define EDNSE_SRC_FFT_HPP

#include <span>

#include "ednse/field.hpp"

namespace ednse::detail {

/// Forward transforms of up to two real arrays with one complex FFT
/// (a + i b), split afterwards with the Hermitian symmetry of each part.
/// Output is normalized by 1/n^3. `b`/`out_b` may be empty.
void forward_real_pair(const GridSpec& grid, std::span<const double> a, std::span<const double> b,
                       std::span<Complex> out_a, std::span<Complex> out_b);

/// Inverse transforms of up to two Hermitian spectra with one complex FFT
/// (A + i B); the real part is a, the imaginary part is b.
void inverse_real_pair(const GridSpec& grid, std::span<const Complex> a, std::span<const Complex> b,
                       std::span<double> out_a, std::span<double> out_b);

}  // namespace ednse::detail

#endif  // EDNSE_SRC_FFT_HPP
