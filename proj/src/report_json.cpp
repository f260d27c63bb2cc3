#include "histomark/report_json.hpp"

#include <cmath>
#include <limits>

namespace histomark {

namespace {

using nlohmann::json;

json real(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string bit_string(const BitSequence& bits) {
    std::string s;
    for (auto b : bits) s.push_back(b ? '1' : '0');
    return s;
}

json header(const char* kind) { return json{{"kind", kind}, {"schema_version", kReportSchemaVersion}}; }

}  // namespace

json to_json(const EmbedParams& p) {
    return json{{"sigma", p.sigma},
                {"lambda", p.lambda},
                {"bin_width", p.bin_width},
                {"threshold", p.threshold},
                {"mu", p.mu},
                {"payload_bits", p.payload_bits},
                {"rng_seed", p.rng_seed},
                {"search_halfwidth", p.search_halfwidth},
                {"search_step", p.search_step},
                {"detect_threshold", p.detect_threshold}};
}

json to_json(const QualityReport& q) {
    json j = header("quality");
    j["mse"] = q.mse;
    j["psnr_db"] = real(q.psnr_db);
    j["max_abs_diff"] = q.max_abs_diff;
    j["mean_shift"] = q.mean_shift;
    return j;
}

json to_json(const DetectionReport& d, const std::string& image) {
    json j = header("detection");
    j["image"] = image;
    j["decoded"] = bit_string(d.decoded);
    j["expected"] = bit_string(d.expected);
    j["correlation"] = d.correlation;
    j["ber"] = d.ber;
    j["best_mean"] = d.best_mean;
    j["detected"] = d.detected;
    return j;
}

json to_json(const EmbedResult& r, const std::string& input, const std::string& output) {
    json j = header("embed");
    j["input"] = input;
    j["output"] = output;
    j["params"] = to_json(r.sidecar.params);
    j["nonce"] = to_hex(r.sidecar.nonce.data(), r.sidecar.nonce.size());
    j["embed_mean"] = r.sidecar.embed_mean;
    j["bin_count"] = r.sidecar.bin_count;
    j["group_offset"] = r.sidecar.group_offset;
    j["psnr_db"] = real(r.psnr_db);
    j["mean_shift"] = r.mean_shift;
    j["max_abs_diff"] = r.max_abs_diff;
    j["pixels_moved"] = r.pixels_moved;
    j["d_gau"] = r.d_gau;
    j["rounds"] = r.rounds;
    j["retried"] = r.retried;
    j["warnings"] = r.warnings;
    json groups = json::array();
    for (const auto& g : r.groups)
        groups.push_back({{"bit", g.bit},
                          {"a", g.a},
                          {"b", g.b},
                          {"a_marked", g.a_marked},
                          {"b_marked", g.b_marked},
                          {"a_final", g.a_final},
                          {"b_final", g.b_final},
                          {"moved", g.moved}});
    j["groups"] = groups;
    return j;
}

json to_json(const BenchReport& rep) {
    json j = header("bench");
    j["params"] = to_json(rep.params);
    json images = json::array();
    double psnr_sum = 0.0, psnr_min = std::numeric_limits<double>::infinity();
    int embedded = 0;
    for (const auto& s : rep.images) {
        json i{{"image", s.image}, {"embedded", s.embedded}};
        if (!s.embedded) {
            i["error"] = s.error;
        } else {
            i["psnr_db"] = real(s.psnr_db);
            i["mean_shift"] = s.mean_shift;
            i["max_abs_diff"] = s.max_abs_diff;
            i["d_gau"] = s.d_gau;
            i["pixels_moved"] = s.pixels_moved;
            i["clean_correlation"] = s.clean_correlation;
            i["seconds"] = s.seconds;
            psnr_sum += s.psnr_db;
            psnr_min = std::min(psnr_min, s.psnr_db);
            ++embedded;
        }
        images.push_back(i);
    }
    j["images"] = images;
    json rows = json::array();
    for (const auto& r : rep.rows)
        rows.push_back({{"image", r.image},
                        {"attack", to_string(r.attack)},
                        {"kind", kind_name(r.attack.kind)},
                        {"magnitude", r.attack.magnitude},
                        {"seed", r.attack.seed},
                        {"psnr_db", real(r.psnr_db)},
                        {"correlation", r.correlation},
                        {"ber", r.ber},
                        {"best_mean", r.best_mean},
                        {"detected", r.detected}});
    j["rows"] = rows;
    json per = json::array();
    for (const auto& a : rep.per_attack)
        per.push_back({{"attack", a.attack},
                       {"trials", a.trials},
                       {"detected", a.detected},
                       {"detection_rate", a.detection_rate},
                       {"mean_correlation", a.mean_correlation},
                       {"min_psnr_db", real(a.min_psnr_db)}});
    j["per_attack"] = per;
    j["totals"] = {{"images", rep.images.size()},
                   {"embedded", embedded},
                   {"trials", rep.trials},
                   {"detected", rep.detected},
                   {"detection_rate", rep.trials ? static_cast<double>(rep.detected) / rep.trials : 0.0},
                   {"mean_embed_psnr_db", embedded ? real(psnr_sum / embedded) : json(nullptr)},
                   {"min_embed_psnr_db", embedded ? real(psnr_min) : json(nullptr)}};
    return j;
}

json attack_json(const AttackSpec& spec, const std::string& input, const std::string& output,
                 const QualityReport& q) {
    json j = header("attack");
    j["input"] = input;
    j["output"] = output;
    j["attack"] = to_string(spec);
    j["psnr_db"] = real(q.psnr_db);
    return j;
}

}  // namespace histomark
