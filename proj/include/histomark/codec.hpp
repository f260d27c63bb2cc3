#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "histomark/histogram.hpp"
#include "histomark/image.hpp"
#include "histomark/keystream.hpp"

namespace histomark {

struct EmbedParams {
    double sigma = 1.0;
    double lambda = 0.6;
    double bin_width = 2.0;  // M
    double threshold = 1.5;  // T
    double mu = 0.75;        // clamp margin for moved pixels
    int payload_bits = 16;   // L_w
    std::uint64_t rng_seed = 1;
    double search_halfwidth = 0.0;
    double search_step = 0.005;
    double detect_threshold = 0.75;
    /// Off: keep only the bin moves (plus the mu clamp) with no filtered
    /// domain compensation. Used to measure the raw compensation error.
    bool post_process = true;

    /// Throws InvalidArgument naming the first violated bound.
    void validate() const;
};

/// Everything the extractor needs besides the key. Persisted next to the
/// watermarked image as name=value lines.
struct EmbedSidecar {
    static constexpr int kVersion = 1;

    int version = kVersion;
    EmbedParams params;
    Nonce nonce{};
    double embed_mean = 0.0;  // mean of G*I at embed time
    int bin_count = 0;
    int group_offset = 0;     // first bin of group 1
    int width = 0;
    int height = 0;
    int bit_depth = 8;

    HistogramSpec histogram_spec() const;
};

std::string serialize_sidecar(const EmbedSidecar& sidecar);
/// Throws SidecarVersion on a version mismatch, Format on malformed text.
EmbedSidecar parse_sidecar(std::string_view text);
void save_sidecar(const EmbedSidecar& sidecar, const std::filesystem::path& path);
EmbedSidecar load_sidecar(const std::filesystem::path& path);

struct GroupStat {
    int bit = 0;
    std::size_t a = 0, b = 0;                // cover low plane
    std::size_t a_marked = 0, b_marked = 0;  // after the initial moves
    std::size_t a_final = 0, b_final = 0;    // G * watermarked, embed binning
    std::size_t moved = 0;
};

struct EmbedResult {
    GrayImage watermarked;
    EmbedSidecar sidecar;
    BitSequence pn;
    double psnr_db = 0.0;
    double mean_shift = 0.0;
    double max_abs_diff = 0.0;
    std::size_t pixels_moved = 0;
    /// max |G*(I_w - I) - (marked_low - low)| - M
    double d_gau = 0.0;
    int rounds = 0;
    bool retried = false;
    std::vector<GroupStat> groups;
    std::vector<std::string> warnings;
    Plane marked_low;  // low plane right after the initial moves and clamp
};

struct DetectionReport {
    BitSequence decoded;
    BitSequence expected;
    double correlation = 0.0;
    double ber = 0.0;
    double best_mean = 0.0;
    bool detected = false;
};

/// Smallest n moving pixels across the group boundary so that a/b >= T
/// (bit 1, donors from b) or b/a >= T (bit 0, donors from a).
std::size_t move_count(std::size_t a, std::size_t b, int bit, double threshold);

/// Computes the binning and group window embed() would use, without
/// marking anything. Throws Capacity when fewer than L_w groups fit.
EmbedSidecar plan_sidecar(const GrayImage& cover, const Nonce& nonce, const EmbedParams& params);

EmbedResult embed(const GrayImage& cover, const WatermarkKey& key, const Nonce& nonce, const EmbedParams& params);

/// Bit g is 1 when bin a of group g holds at least as many pixels as bin b.
BitSequence decode_plane(const Plane& low, const HistogramSpec& spec, int group_offset, int payload_bits);

DetectionReport extract(const GrayImage& image, const WatermarkKey& key, const EmbedSidecar& sidecar);

/// Default nonce: FNV-1a 64 of the quantized pixel values.
Nonce nonce_for_image(const GrayImage& image);

}  // namespace histomark
