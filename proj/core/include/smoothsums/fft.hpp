#pragma once

// Discrete Fourier transforms of exact arbitrary length:
//   dft(a, sign)[k] = sum_n a[n] e(sign * nk / N),  e(x) = exp(2*pi*i*x).
// Power-of-two lengths use an iterative radix-2 transform; every other
// length goes through Bluestein's chirp-z reduction, so the index
// semantics over Z/N are exact for prime N (no zero-padding of the data).

#include <complex>
#include <cstdint>
#include <vector>

namespace smoothsums {

using Complex = std::complex<double>;

// In-place radix-2 transform; a.size() must be a power of two.
void fft_pow2(std::vector<Complex>& a, int sign);

// Arbitrary-length DFT. Plans (chirp tables and the transformed chirp
// filter) are cached per length behind a mutex.
std::vector<Complex> dft(const std::vector<Complex>& a, int sign);

} // namespace smoothsums
