#pragma once

#include <cstddef>
#include <span>

#include "maxtrunc/grid.hpp"

namespace maxtrunc::grid {

/// True when every axis satisfies eta h N = 1 for a power of two N that is at
/// least the sample count and the frequency count; grid_fourier then uses FFT.
bool fft_compatible(const GridSpec& x, const GridSpec& xi);

/// Frequency grid with eta = 1 / (N h), N the smallest power of two >= n * pad,
/// centered so that it starts at -(N/2) eta.
GridSpec frequency_grid_for(const GridSpec& x, std::size_t pad = 1);

/// Riemann sum sum_x f(x) e^{-2 pi i x . xi} prod_j h_j at every node of `xi`.
/// Uses FFT with origin phase corrections when fft_compatible, otherwise a
/// separable direct transform.
GridSignal grid_fourier(const GridSignal& f, const GridSpec& xi);

/// Same sum via the separable direct transform, regardless of compatibility.
GridSignal grid_fourier_direct(const GridSignal& f, const GridSpec& xi);

/// Same sum at one frequency.
cdouble fourier_at(const GridSignal& f, std::span<const double> xi);

}  // namespace maxtrunc::grid
