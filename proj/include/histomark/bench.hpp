#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "histomark/attacks.hpp"
#include "histomark/codec.hpp"

namespace histomark {

struct BenchRow {
    std::string image;
    AttackSpec attack;
    double psnr_db = 0.0;  // attacked vs watermarked
    double correlation = 0.0;
    double ber = 0.0;
    double best_mean = 0.0;
    bool detected = false;
};

struct ImageSummary {
    std::string image;
    bool embedded = false;
    std::string error;  // set when embedding failed
    double psnr_db = 0.0;
    double mean_shift = 0.0;
    double max_abs_diff = 0.0;
    double d_gau = 0.0;
    std::size_t pixels_moved = 0;
    double clean_correlation = 0.0;
    double seconds = 0.0;  // wall clock, JSON only
};

struct AttackAggregate {
    std::string attack;
    int trials = 0;
    int detected = 0;
    double detection_rate = 0.0;
    double mean_correlation = 0.0;
    double min_psnr_db = 0.0;
};

struct BenchReport {
    EmbedParams params;
    std::vector<ImageSummary> images;
    std::vector<BenchRow> rows;
    std::vector<AttackAggregate> per_attack;
    int trials = 0;
    int detected = 0;
};

/// .pgm and .png files directly inside `dir`, sorted by file name.
std::vector<std::filesystem::path> list_corpus(const std::filesystem::path& dir);

/// Aggregates in first-seen attack order, derived from rows alone.
std::vector<AttackAggregate> aggregate(const std::vector<BenchRow>& rows);

BenchReport run_bench(const std::vector<std::filesystem::path>& images, const WatermarkKey& key,
                      const EmbedParams& params, const std::vector<AttackSpec>& suite);

/// Byte-stable: fixed column order, fixed precision, no timings.
std::string bench_csv(const BenchReport& report);
std::string bench_json(const BenchReport& report);

/// Writes <prefix>.csv and <prefix>.json after re-deriving the aggregates
/// from the rows; throws if they disagree.
void write_bench(const BenchReport& report, const std::filesystem::path& prefix);

}  // namespace histomark
