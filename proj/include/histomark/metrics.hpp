#pragma once

#include <span>

#include "histomark/image.hpp"
#include "histomark/keystream.hpp"

namespace histomark {

struct QualityReport {
    double mse = 0.0;
    double psnr_db = 0.0;       // +inf when mse == 0
    double max_abs_diff = 0.0;
    double mean_shift = 0.0;    // mean(test) - mean(reference)
};

/// PSNR = 10*log10(MAX^2 / MSE), MAX = 2^D - 1 of the reference.
QualityReport psnr(const GrayImage& reference, const GrayImage& test);

/// Fraction of positions where the sequences differ.
double ber(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

/// Mean of (+1 if equal else -1); equals 1 - 2*ber.
double normalized_correlation(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

/// floor(2*P*Q / (M*G)); P in (0,1), the other arguments positive.
int capacity(double mean_q, double lambda_p, double bin_width_m, int group_size_g);

/// floor(2^D / (M*G)): bits when the bin range spans the whole depth.
int max_capacity(int bit_depth, double bin_width_m, int group_size_g);

}  // namespace histomark
