#pragma once

#include <cstddef>

#include "histomark/image.hpp"

// Deliberately plain reimplementations used to check the library. They
// share no code with it.
namespace oracle {

/// Direct 2-D convolution with the sampled Gaussian exp(-(x^2+y^2)/(2 s^2))
/// normalized over its (2r+1)^2 support, r = ceil(3s), and edge-repeating
/// symmetric extension computed by repeated folding.
histomark::Plane gaussian_filter(const histomark::Plane& in, double sigma);

/// Minimum n >= 0 with (a+n)/(b-n) >= p/q (bit 1) or (b+n)/(a-n) >= p/q
/// (bit 0), decided in integer arithmetic. A zero denominator counts as
/// satisfied.
std::size_t min_moves(std::size_t a, std::size_t b, int bit, long p, long q);

/// Kahan-compensated mean.
double mean(const histomark::Plane& in);

}  // namespace oracle
