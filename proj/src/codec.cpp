#include "histomark/codec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "histomark/error.hpp"
#include "histomark/gaussian.hpp"
#include "histomark/metrics.hpp"

namespace histomark {

namespace {

// Compensation loop tuning. Margins keep filtered values away from bin edges
// so that rounding and mild resampling do not push pixels across. Unmoved
// pixels next to a depleted bin are the usual culprits, hence their margin.
constexpr int kRounds = 6;
constexpr int kLandweberIters = 30;
constexpr double kStep = 1.0;
constexpr double kMovedMargin = 0.25;
constexpr double kMaxChange = 3.0;
// Every group in the chosen window should hold at least this fraction of
// the pixels; otherwise a bit rides on a handful of samples.
constexpr double kMinGroupFraction = 0.001;
// Average pixels per used bin below which bins are expected to be sparse
// enough to go empty.
constexpr std::size_t kMinPixelsPerBin = 16;

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

void require(bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

std::vector<std::size_t> counts_from_map(const std::vector<int>& idx, int bins) {
    std::vector<std::size_t> c(static_cast<std::size_t>(bins), 0);
    for (int k : idx)
        if (k >= 0) ++c[static_cast<std::size_t>(k)];
    return c;
}

int choose_group_offset(const std::vector<std::size_t>& counts, const HistogramSpec& spec, int groups,
                        std::size_t pixels) {
    const int last = spec.bin_count - 2 * groups;
    const double centre_bin = (spec.mean - spec.lo) / spec.bin_width;
    const int centred = static_cast<int>(std::lround(centre_bin)) - groups;
    auto min_pop = [&](int off) {
        std::size_t m = std::numeric_limits<std::size_t>::max();
        for (int g = 0; g < groups; ++g)
            m = std::min(m, counts[static_cast<std::size_t>(off + 2 * g)] + counts[static_cast<std::size_t>(off + 2 * g + 1)]);
        return m;
    };

    std::vector<int> order(static_cast<std::size_t>(last + 1));
    for (int i = 0; i <= last; ++i) order[static_cast<std::size_t>(i)] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return std::abs(x - centred) < std::abs(y - centred); });
    const double floor_pop = kMinGroupFraction * static_cast<double>(pixels);
    for (int off : order)
        if (static_cast<double>(min_pop(off)) >= floor_pop) return off;

    // Nothing clears the floor: take the best-populated window.
    int best = order.front();
    for (int off : order) {
        const auto p = min_pop(off);
        const auto bp = min_pop(best);
        if (p > bp || (p == bp && std::abs(off + groups - centre_bin) < std::abs(best + groups - centre_bin)))
            best = off;
    }
    return best;
}

// Count of same-bin pixels in the (2r+1)^2 window around i.
int purity(const std::vector<int>& idx, int w, int h, std::size_t i, int bin, int r) {
    const int x = static_cast<int>(i % static_cast<std::size_t>(w));
    const int y = static_cast<int>(i / static_cast<std::size_t>(w));
    int n = 0;
    for (int dy = -r; dy <= r; ++dy) {
        const std::size_t row = static_cast<std::size_t>(reflect_index(y + dy, h)) * static_cast<std::size_t>(w);
        for (int dx = -r; dx <= r; ++dx) n += idx[row + static_cast<std::size_t>(reflect_index(x + dx, w))] == bin;
    }
    return n;
}

struct Tuning {
    double mu;
    double unmoved_margin;
    int rounds;
};

struct Attempt {
    Plane delta;       // E: change applied to the cover
    Plane marked_low;  // low + initial moves
    std::vector<std::size_t> moved_per_group;
    std::size_t moved = 0;
    int rounds = 0;
    std::vector<std::string> warnings;
};

Attempt run_embedding(const Plane& low, const GaussianKernel& kernel, const HistogramSpec& spec, int offset,
                      const BitSequence& bits, const EmbedParams& p, const Tuning& tune) {
    const double mu = tune.mu;
    const int w = low.width();
    const int h = low.height();
    const std::size_t n = low.size();
    const int groups = static_cast<int>(bits.size());
    const int pr = static_cast<int>(std::ceil(2.0 * p.sigma));
    const double cap = std::max(kMaxChange, p.bin_width + mu);

    Attempt at;
    at.delta = Plane(w, h);
    at.moved_per_group.assign(static_cast<std::size_t>(groups), 0);
    std::vector<int> target(n, -1);
    std::vector<char> moved(n, 0);
    auto E = at.delta.values();

    const std::vector<int> idx0 = bin_map(low, spec);
    for (std::size_t i = 0; i < n; ++i)
        if (idx0[i] >= offset && idx0[i] < offset + 2 * groups) target[i] = idx0[i];

    // Donors of equal purity are taken in raster order from a seeded start,
    // which keeps them contiguous. Scattered single-pixel moves would be
    // erased by the low-pass filter.
    const std::size_t start = static_cast<std::size_t>(splitmix64(p.rng_seed) % n);
    auto tie = [&](std::size_t i) { return i >= start ? i - start : i + n - start; };

    for (int round = 0; round < tune.rounds; ++round) {
        Plane F = low;
        if (round > 0) {
            const Plane fe = filter(at.delta, kernel);
            for (std::size_t i = 0; i < n; ++i) F[i] += fe[i];
        }
        const std::vector<int> idx = round == 0 ? idx0 : bin_map(F, spec);
        const auto counts = counts_from_map(idx, spec.bin_count);
        bool changed = false;

        for (int g = 0; g < groups; ++g) {
            const int ka = offset + 2 * g;
            const int bit = bits[static_cast<std::size_t>(g)];
            const std::size_t a = counts[static_cast<std::size_t>(ka)];
            const std::size_t b = counts[static_cast<std::size_t>(ka + 1)];
            const std::size_t need = move_count(a, b, bit, p.threshold);
            if (need == 0) continue;
            const int src = bit == 1 ? ka + 1 : ka;
            const int dst = bit == 1 ? ka : ka + 1;

            std::vector<std::pair<int, std::size_t>> cand;
            for (std::size_t i = 0; i < n; ++i)
                if (idx[i] == src && target[i] == src) cand.emplace_back(purity(idx, w, h, i, src, pr), i);
            std::sort(cand.begin(), cand.end(), [&](const auto& x, const auto& y) {
                if (x.first != y.first) return x.first > y.first;
                return tie(x.second) < tie(y.second);
            });
            if (cand.size() < need)
                at.warnings.push_back("round " + std::to_string(round) + ", group " + std::to_string(g + 1) + ": needed " +
                                      std::to_string(need) + " donors, found " + std::to_string(cand.size()));
            const std::size_t take = std::min(need, cand.size());
            const double shift = bit == 1 ? -p.bin_width : p.bin_width;
            const double lo = spec.bin_lo(dst) + mu;
            const double hi = spec.bin_hi(dst) - mu;
            for (std::size_t j = 0; j < take; ++j) {
                const std::size_t i = cand[j].second;
                target[i] = dst;
                moved[i] = 1;
                E[i] += std::clamp(F[i] + shift, lo, hi) - F[i];
            }
            at.moved_per_group[static_cast<std::size_t>(g)] += take;
            at.moved += take;
            changed = changed || take > 0;
        }
        at.rounds = round + 1;

        if (round == 0) {
            at.marked_low = low;
            for (std::size_t i = 0; i < n; ++i) at.marked_low[i] += E[i];
        }
        if (!p.post_process) break;
        if (!changed && round > 0) break;

        for (auto& e : E) e = std::clamp(e, -cap, cap);

        // Projected Landweber: pull G*(I+E) into each pixel's target bin.
        std::vector<double> tlo(n, -std::numeric_limits<double>::infinity());
        std::vector<double> thi(n, std::numeric_limits<double>::infinity());
        for (std::size_t i = 0; i < n; ++i) {
            if (target[i] < 0) continue;
            const double m = moved[i] ? kMovedMargin : tune.unmoved_margin;
            tlo[i] = spec.bin_lo(target[i]) + m;
            thi[i] = spec.bin_hi(target[i]) - 1e-9 - m;
        }
        Plane resid(w, h);
        for (int it = 0; it < kLandweberIters; ++it) {
            const Plane fe = filter(at.delta, kernel);
            for (std::size_t i = 0; i < n; ++i) {
                const double f = low[i] + fe[i];
                resid[i] = std::clamp(f, tlo[i], thi[i]) - f;
            }
            const Plane step = filter(resid, kernel);
            for (std::size_t i = 0; i < n; ++i) E[i] = std::clamp(E[i] + kStep * step[i], -cap, cap);
        }
    }
    return at;
}

}  // namespace

void EmbedParams::validate() const {
    require(sigma > 0.0 && sigma <= 64.0 && std::isfinite(sigma), "sigma must be in (0, 64]");
    require(lambda > 0.0 && lambda < 1.0, "lambda must be in (0, 1)");
    require(bin_width > 0.0 && std::isfinite(bin_width), "bin width M must be positive");
    require(threshold > 1.0 && std::isfinite(threshold), "threshold T must exceed 1");
    require(mu > 0.0 && mu < bin_width / 2.0, "mu must be in (0, M/2)");
    require(payload_bits >= 1 && payload_bits <= 1024, "payload length must be in [1, 1024]");
    require(search_halfwidth >= 0.0 && search_halfwidth <= 0.2, "search half-width must be in [0, 0.2]");
    require(search_step > 0.0 && std::isfinite(search_step), "search step must be positive");
    require(detect_threshold > 0.0 && detect_threshold < 1.0, "detection threshold must be in (0, 1)");
}

HistogramSpec EmbedSidecar::histogram_spec() const {
    HistogramSpec s = HistogramSpec::from_mean(embed_mean, params.lambda, params.bin_width);
    s.bin_count = bin_count;
    return s;
}

std::size_t move_count(std::size_t a, std::size_t b, int bit, double threshold) {
    // a' / b' >= T  <=>  n >= (T*b - a) / (1 + T); the mirror case for bit 0.
    // The tolerance lets exact rational boundaries (T = 1.1) count as met.
    const double have = static_cast<double>(bit == 1 ? a : b);
    const double give = static_cast<double>(bit == 1 ? b : a);
    const double x = (threshold * give - have) / (1.0 + threshold);
    if (x <= 1e-9) return 0;
    const auto n = static_cast<std::size_t>(std::ceil(x - 1e-9));
    return std::min(n, bit == 1 ? b : a);
}

EmbedSidecar plan_sidecar(const GrayImage& cover, const Nonce& nonce, const EmbedParams& params) {
    params.validate();
    if (cover.width() < 8 || cover.height() < 8)
        throw Error(ErrorCode::InvalidArgument, "image must be at least 8x8");
    const Plane low = filter(cover.plane(), params.sigma);
    EmbedSidecar sc;
    sc.params = params;
    sc.nonce = nonce;
    sc.embed_mean = compute_mean(low);
    sc.width = cover.width();
    sc.height = cover.height();
    sc.bit_depth = cover.bit_depth();
    const HistogramSpec spec = HistogramSpec::from_mean(sc.embed_mean, params.lambda, params.bin_width);
    sc.bin_count = spec.bin_count;
    if (spec.bin_count / 2 < params.payload_bits)
        throw Error(ErrorCode::Capacity, "capacity " + std::to_string(spec.bin_count / 2) + " bits < payload " +
                                             std::to_string(params.payload_bits) + " (mean " +
                                             std::to_string(sc.embed_mean) + ")");
    const auto used_bins = static_cast<std::size_t>(2 * params.payload_bits);
    if (low.size() < used_bins * kMinPixelsPerBin)
        throw Error(ErrorCode::Capacity, std::to_string(low.size()) + " pixels cannot populate " +
                                             std::to_string(used_bins) + " bins (need " +
                                             std::to_string(used_bins * kMinPixelsPerBin) + ")");
    sc.group_offset = choose_group_offset(bin_counts(low, spec), spec, params.payload_bits, low.size());
    return sc;
}

EmbedResult embed(const GrayImage& cover, const WatermarkKey& key, const Nonce& nonce, const EmbedParams& params) {
    EmbedSidecar sc = plan_sidecar(cover, nonce, params);
    const GaussianKernel kernel = make_kernel(params.sigma);
    const Plane low = filter(cover.plane(), kernel);
    const HistogramSpec spec = sc.histogram_spec();
    const BitSequence bits = derive_pn(key, nonce, params.payload_bits);
    const auto base = bin_counts(low, spec);
    const int off = sc.group_offset;

    for (int g = 0; g < params.payload_bits; ++g)
        if (base[static_cast<std::size_t>(off + 2 * g)] + base[static_cast<std::size_t>(off + 2 * g + 1)] == 0)
            throw Error(ErrorCode::DegenerateGroup, "group " + std::to_string(g + 1) + " holds no pixels");

    auto finish = [&](const Attempt& at) {
        Plane raw = cover.plane();
        for (std::size_t i = 0; i < raw.size(); ++i) raw[i] += at.delta[i];
        return quantize(raw, cover.bit_depth());
    };

    Attempt at = run_embedding(low, kernel, spec, off, bits, params, {params.mu, 0.3, kRounds});
    GrayImage marked = finish(at);
    bool retried = false;
    if (params.post_process && extract(marked, key, sc).ber != 0.0) {
        const double mu2 = std::min(2.0 * params.mu, 0.45 * params.bin_width);
        at = run_embedding(low, kernel, spec, off, bits, params, {mu2, 0.5, 2 * kRounds});
        marked = finish(at);
        retried = true;
        if (extract(marked, key, sc).ber != 0.0)
            throw Error(ErrorCode::SelfCheck, "embedded payload does not read back after retry");
    }

    EmbedResult r;
    r.sidecar = sc;
    r.pn = bits;
    r.rounds = at.rounds;
    r.retried = retried;
    r.pixels_moved = at.moved;
    r.warnings = std::move(at.warnings);
    const QualityReport q = psnr(cover, marked);
    r.psnr_db = q.psnr_db;
    r.mean_shift = q.mean_shift;
    r.max_abs_diff = q.max_abs_diff;

    Plane diff = marked.plane();
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= cover.plane()[i];
    const Plane fdiff = filter(diff, kernel);
    double worst = 0.0;
    for (std::size_t i = 0; i < diff.size(); ++i)
        worst = std::max(worst, std::abs(fdiff[i] - (at.marked_low[i] - low[i])));
    r.d_gau = worst - params.bin_width;

    const auto mk = bin_counts(at.marked_low, spec);
    const auto fin = bin_counts(filter(marked.plane(), kernel), spec);
    for (int g = 0; g < params.payload_bits; ++g) {
        const auto ka = static_cast<std::size_t>(off + 2 * g);
        GroupStat s;
        s.bit = bits[static_cast<std::size_t>(g)];
        s.a = base[ka];
        s.b = base[ka + 1];
        s.a_marked = mk[ka];
        s.b_marked = mk[ka + 1];
        s.a_final = fin[ka];
        s.b_final = fin[ka + 1];
        s.moved = at.moved_per_group[static_cast<std::size_t>(g)];
        r.groups.push_back(s);
    }
    r.marked_low = std::move(at.marked_low);
    r.watermarked = std::move(marked);
    return r;
}

BitSequence decode_plane(const Plane& low, const HistogramSpec& spec, int group_offset, int payload_bits) {
    if (group_offset < 0 || group_offset + 2 * payload_bits > spec.bin_count)
        throw Error(ErrorCode::InvalidArgument, "group window exceeds the histogram");
    const auto c = bin_counts(low, spec);
    BitSequence bits(static_cast<std::size_t>(payload_bits));
    for (int g = 0; g < payload_bits; ++g) {
        const auto ka = static_cast<std::size_t>(group_offset + 2 * g);
        bits[static_cast<std::size_t>(g)] = c[ka] >= c[ka + 1] ? 1 : 0;
    }
    return bits;
}

DetectionReport extract(const GrayImage& image, const WatermarkKey& key, const EmbedSidecar& sidecar) {
    const EmbedParams& p = sidecar.params;
    p.validate();
    if (image.width() < 8 || image.height() < 8)
        throw Error(ErrorCode::InvalidArgument, "image must be at least 8x8");
    const Plane low = filter(image.plane(), p.sigma);
    const double mean = compute_mean(low);
    const HistogramSpec base = sidecar.histogram_spec();

    std::vector<double> candidates;
    const int steps = static_cast<int>(std::floor(p.search_halfwidth / p.search_step + 1e-9));
    for (int j = -steps; j <= steps; ++j) candidates.push_back(mean * (1.0 + j * p.search_step));
    candidates.push_back(sidecar.embed_mean);

    DetectionReport rep;
    rep.expected = derive_pn(key, sidecar.nonce, p.payload_bits);
    bool have = false;
    for (double m : candidates) {
        if (!(m > 0.0) || !(base.mean > 0.0)) continue;
        const BitSequence bits = decode_plane(low, base.rescaled(m), sidecar.group_offset, p.payload_bits);
        const double c = normalized_correlation(bits, rep.expected);
        const bool better = !have || c > rep.correlation ||
                            (c == rep.correlation && std::abs(m - mean) < std::abs(rep.best_mean - mean));
        if (better) {
            have = true;
            rep.correlation = c;
            rep.best_mean = m;
            rep.decoded = bits;
        }
    }
    if (!have) throw Error(ErrorCode::InvalidArgument, "histogram range is degenerate at every candidate mean");
    rep.ber = ber(rep.decoded, rep.expected);
    rep.detected = rep.correlation >= p.detect_threshold;
    return rep;
}

Nonce nonce_for_image(const GrayImage& image) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&](std::uint64_t v, int bytes) {
        for (int i = 0; i < bytes; ++i) {
            h ^= (v >> (8 * i)) & 0xFF;
            h *= 0x100000001b3ull;
        }
    };
    mix(static_cast<std::uint64_t>(image.width()), 4);
    mix(static_cast<std::uint64_t>(image.height()), 4);
    for (double v : image.plane().values()) mix(static_cast<std::uint64_t>(std::llround(v)), 2);
    Nonce n{};
    for (std::size_t i = 0; i < 8; ++i) n[i] = static_cast<std::uint8_t>(h >> (56 - 8 * i));
    return n;
}

}  // namespace histomark
