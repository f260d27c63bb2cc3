#include "histomark/metrics.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "histomark/error.hpp"

namespace histomark {

QualityReport psnr(const GrayImage& reference, const GrayImage& test) {
    if (!reference.plane().same_shape(test.plane()))
        throw Error(ErrorCode::InvalidArgument, "psnr: image dimensions differ");
    auto a = reference.plane().values();
    auto b = test.plane().values();
    long double se = 0.0L, shift = 0.0L;
    double max_abs = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = b[i] - a[i];
        se += static_cast<long double>(d) * d;
        shift += d;
        max_abs = std::max(max_abs, std::abs(d));
    }
    const auto n = static_cast<long double>(a.size());
    QualityReport q;
    q.mse = static_cast<double>(se / n);
    q.mean_shift = static_cast<double>(shift / n);
    q.max_abs_diff = max_abs;
    const double peak = reference.max_value();
    q.psnr_db = q.mse == 0.0 ? std::numeric_limits<double>::infinity() : 10.0 * std::log10(peak * peak / q.mse);
    return q;
}

namespace {

void check_lengths(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    if (a.size() != b.size() || a.empty())
        throw Error(ErrorCode::InvalidArgument, "bit sequences must be non-empty and of equal length");
}

}  // namespace

double ber(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    check_lengths(a, b);
    std::size_t diff = 0;
    for (std::size_t i = 0; i < a.size(); ++i) diff += (a[i] != b[i]);
    return static_cast<double>(diff) / static_cast<double>(a.size());
}

double normalized_correlation(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    check_lengths(a, b);
    long sum = 0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += (a[i] == b[i]) ? 1 : -1;
    return static_cast<double>(sum) / static_cast<double>(a.size());
}

int capacity(double mean_q, double lambda_p, double bin_width_m, int group_size_g) {
    if (!(mean_q > 0.0) || !(lambda_p > 0.0 && lambda_p < 1.0) || !(bin_width_m > 0.0) || group_size_g <= 0)
        throw Error(ErrorCode::InvalidArgument, "capacity: arguments out of range");
    return static_cast<int>(std::floor(2.0 * lambda_p * mean_q / (bin_width_m * group_size_g) + 1e-9));
}

int max_capacity(int bit_depth, double bin_width_m, int group_size_g) {
    if (bit_depth < 1 || bit_depth > 16 || !(bin_width_m > 0.0) || group_size_g <= 0)
        throw Error(ErrorCode::InvalidArgument, "max_capacity: arguments out of range");
    return static_cast<int>(std::floor(std::ldexp(1.0, bit_depth) / (bin_width_m * group_size_g) + 1e-9));
}

}  // namespace histomark
