#pragma once

#include <vector>

#include "histomark/image.hpp"

namespace histomark {

/// Sampled, normalized Gaussian of radius ceil(3*sigma). The 2-D kernel is
/// the outer product of `taps` with itself, which equals the normalized
/// 2-D sampled Gaussian exactly.
struct GaussianKernel {
    double sigma = 1.0;
    int radius = 3;
    std::vector<double> taps;  // 2*radius+1 entries, sum 1

    int size() const noexcept { return 2 * radius + 1; }
    double weight(int dx, int dy) const noexcept { return taps[dx + radius] * taps[dy + radius]; }
    /// Row-major (2r+1)^2 weights.
    std::vector<double> weights2d() const;
};

GaussianKernel make_kernel(double sigma);

/// Half-sample symmetric reflection (... b a | a b c ... z | z y ...).
/// This extension preserves the plane's sum under any normalized
/// symmetric kernel, so filtering keeps the mean intact.
int reflect_index(int i, int n) noexcept;

/// Separable convolution, rows split across OpenMP threads.
Plane filter(const Plane& plane, const GaussianKernel& kernel);
Plane filter(const Plane& plane, double sigma);

/// Direct 2-D convolution in one thread. Slow; kept as the reference the
/// parallel path is tested and benchmarked against.
Plane filter_reference(const Plane& plane, const GaussianKernel& kernel);

struct Decomposition {
    Plane low;   // G * I
    Plane high;  // I - G * I
};

Decomposition decompose(const GrayImage& image, double sigma);

}  // namespace histomark
