#include "histomark/gaussian.hpp"

#include <cmath>
#include <string>

#include "histomark/error.hpp"

namespace histomark {

std::vector<double> GaussianKernel::weights2d() const {
    const int n = size();
    std::vector<double> w(static_cast<std::size_t>(n) * n);
    for (int dy = -radius; dy <= radius; ++dy)
        for (int dx = -radius; dx <= radius; ++dx)
            w[static_cast<std::size_t>(dy + radius) * n + (dx + radius)] = weight(dx, dy);
    return w;
}

GaussianKernel make_kernel(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma) || sigma > 64.0)
        throw Error(ErrorCode::InvalidArgument, "sigma must be in (0, 64], got " + std::to_string(sigma));
    GaussianKernel k;
    k.sigma = sigma;
    k.radius = static_cast<int>(std::ceil(3.0 * sigma));
    k.taps.resize(static_cast<std::size_t>(k.size()));
    double sum = 0.0;
    for (int i = -k.radius; i <= k.radius; ++i) {
        const double v = std::exp(-(i * i) / (2.0 * sigma * sigma));
        k.taps[static_cast<std::size_t>(i + k.radius)] = v;
        sum += v;
    }
    for (double& t : k.taps) t /= sum;
    return k;
}

int reflect_index(int i, int n) noexcept {
    const int period = 2 * n;
    int m = i % period;
    if (m < 0) m += period;
    return m < n ? m : period - 1 - m;
}

Plane filter(const Plane& plane, const GaussianKernel& kernel) {
    const int w = plane.width();
    const int h = plane.height();
    const int r = kernel.radius;
    const double* taps = kernel.taps.data() + r;  // taps[-r..r]

    // Vertical pass.
    Plane tmp(w, h);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) {
        double* out = tmp.row(y);
        for (int x = 0; x < w; ++x) out[x] = 0.0;
        for (int k = -r; k <= r; ++k) {
            const double* in = plane.row(reflect_index(y + k, h));
            const double t = taps[k];
            for (int x = 0; x < w; ++x) out[x] += t * in[x];
        }
    }

    // Horizontal pass over a reflected copy of each row.
    Plane out(w, h);
#pragma omp parallel
    {
        std::vector<double> pad(static_cast<std::size_t>(w + 2 * r));
#pragma omp for schedule(static)
        for (int y = 0; y < h; ++y) {
            const double* in = tmp.row(y);
            for (int i = -r; i < w + r; ++i) pad[static_cast<std::size_t>(i + r)] = in[reflect_index(i, w)];
            double* o = out.row(y);
            for (int x = 0; x < w; ++x) {
                const double* p = pad.data() + x + r;
                double s = 0.0;
                for (int k = -r; k <= r; ++k) s += taps[k] * p[k];
                o[x] = s;
            }
        }
    }
    return out;
}

Plane filter(const Plane& plane, double sigma) { return filter(plane, make_kernel(sigma)); }

Plane filter_reference(const Plane& plane, const GaussianKernel& kernel) {
    const int w = plane.width();
    const int h = plane.height();
    const int r = kernel.radius;
    const std::vector<double> wt = kernel.weights2d();
    const int n = kernel.size();
    Plane out(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double s = 0.0;
            for (int dy = -r; dy <= r; ++dy)
                for (int dx = -r; dx <= r; ++dx)
                    s += wt[static_cast<std::size_t>(dy + r) * n + (dx + r)] *
                         plane.at(reflect_index(x + dx, w), reflect_index(y + dy, h));
            out.at(x, y) = s;
        }
    return out;
}

Decomposition decompose(const GrayImage& image, double sigma) {
    Decomposition d;
    d.low = filter(image.plane(), sigma);
    d.high = Plane(image.width(), image.height());
    auto src = image.plane().values();
    auto lo = d.low.values();
    auto hi = d.high.values();
    for (std::size_t i = 0; i < src.size(); ++i) hi[i] = src[i] - lo[i];
    return d;
}

}  // namespace histomark
