#include "histomark/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>

#include <json.hpp>

#include "histomark/error.hpp"
#include "histomark/image_io.hpp"
#include "histomark/metrics.hpp"
#include "histomark/report_json.hpp"

namespace histomark {

namespace {

std::string fixed(double v, int digits = 6) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

bool same_aggregates(const std::vector<AttackAggregate>& a, const std::vector<AttackAggregate>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].attack != b[i].attack || a[i].trials != b[i].trials || a[i].detected != b[i].detected)
            return false;
    return true;
}

}  // namespace

std::vector<std::filesystem::path> list_corpus(const std::filesystem::path& dir) {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec)) throw Error(ErrorCode::Io, "not a directory: " + dir.string());
    std::vector<std::filesystem::path> out;
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
        if (!e.is_regular_file()) continue;
        std::string ext = e.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
        if (ext == ".pgm" || ext == ".png") out.push_back(e.path());
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.filename() < y.filename(); });
    return out;
}

std::vector<AttackAggregate> aggregate(const std::vector<BenchRow>& rows) {
    std::vector<AttackAggregate> out;
    std::map<std::string, std::size_t> slot;
    for (const auto& r : rows) {
        const std::string name = to_string(r.attack);
        auto [it, fresh] = slot.try_emplace(name, out.size());
        if (fresh) {
            out.push_back({});
            out.back().attack = name;
            out.back().min_psnr_db = std::numeric_limits<double>::infinity();
        }
        AttackAggregate& a = out[it->second];
        ++a.trials;
        a.detected += r.detected ? 1 : 0;
        a.mean_correlation += r.correlation;
        a.min_psnr_db = std::min(a.min_psnr_db, r.psnr_db);
    }
    for (auto& a : out) {
        a.detection_rate = static_cast<double>(a.detected) / a.trials;
        a.mean_correlation /= a.trials;
    }
    return out;
}

BenchReport run_bench(const std::vector<std::filesystem::path>& images, const WatermarkKey& key,
                      const EmbedParams& params, const std::vector<AttackSpec>& suite) {
    params.validate();
    for (const auto& s : suite) validate(s);
    BenchReport rep;
    rep.params = params;
    for (const auto& path : images) {
        ImageSummary sum;
        sum.image = path.filename().string();
        const auto t0 = std::chrono::steady_clock::now();
        const GrayImage cover = load_image(path);
        EmbedResult er;
        try {
            er = embed(cover, key, nonce_for_image(cover), params);
        } catch (const Error& e) {
            sum.error = std::string(to_string(e.code())) + ": " + e.what();
            rep.images.push_back(sum);
            continue;
        }
        sum.embedded = true;
        sum.psnr_db = er.psnr_db;
        sum.mean_shift = er.mean_shift;
        sum.max_abs_diff = er.max_abs_diff;
        sum.d_gau = er.d_gau;
        sum.pixels_moved = er.pixels_moved;
        sum.clean_correlation = extract(er.watermarked, key, er.sidecar).correlation;
        for (const auto& spec : suite) {
            const GrayImage attacked = apply_attack(er.watermarked, spec);
            const DetectionReport d = extract(attacked, key, er.sidecar);
            BenchRow row;
            row.image = sum.image;
            row.attack = spec;
            row.psnr_db = psnr(er.watermarked, attacked).psnr_db;
            row.correlation = d.correlation;
            row.ber = d.ber;
            row.best_mean = d.best_mean;
            row.detected = d.detected;
            rep.rows.push_back(row);
        }
        sum.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        rep.images.push_back(sum);
    }
    rep.per_attack = aggregate(rep.rows);
    rep.trials = static_cast<int>(rep.rows.size());
    for (const auto& r : rep.rows) rep.detected += r.detected ? 1 : 0;
    return rep;
}

std::string bench_csv(const BenchReport& report) {
    std::string s = "image,attack,kind,magnitude,seed,psnr_db,correlation,ber,best_mean,detected\n";
    for (const auto& r : report.rows) {
        char mag[40];
        std::snprintf(mag, sizeof mag, "%.6g", r.attack.magnitude);
        s += r.image + ',' + to_string(r.attack) + ',' + kind_name(r.attack.kind) + ',' + mag + ',' +
             std::to_string(r.attack.seed) + ',' + fixed(r.psnr_db, 4) + ',' + fixed(r.correlation, 6) + ',' +
             fixed(r.ber, 6) + ',' + fixed(r.best_mean, 6) + ',' + (r.detected ? "1" : "0") + '\n';
    }
    return s;
}

std::string bench_json(const BenchReport& report) { return to_json(report).dump(2) + "\n"; }

void write_bench(const BenchReport& report, const std::filesystem::path& prefix) {
    if (!same_aggregates(aggregate(report.rows), report.per_attack))
        throw Error(ErrorCode::InvalidArgument, "bench aggregates do not match their rows");
    auto write = [](const std::filesystem::path& p, const std::string& text) {
        std::ofstream out(p, std::ios::binary);
        if (!out) throw Error(ErrorCode::Io, "cannot write " + p.string());
        out << text;
        if (!out) throw Error(ErrorCode::Io, "write failed: " + p.string());
    };
    write(prefix.string() + ".csv", bench_csv(report));
    write(prefix.string() + ".json", bench_json(report));
}

}  // namespace histomark
