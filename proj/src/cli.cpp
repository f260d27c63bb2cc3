#include "histomark/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "histomark/attacks.hpp"
#include "histomark/bench.hpp"
#include "histomark/codec.hpp"
#include "histomark/error.hpp"
#include "histomark/image_io.hpp"
#include "histomark/metrics.hpp"
#include "histomark/report_json.hpp"

namespace histomark {

namespace {

int exit_for(ErrorCode c) {
    switch (c) {
        case ErrorCode::Capacity:
        case ErrorCode::DegenerateGroup: return kExitCapacity;
        case ErrorCode::SelfCheck: return kExitSelfCheck;
        case ErrorCode::SidecarVersion: return kExitSidecarVersion;
        case ErrorCode::BadAttackSpec: return kExitBadAttack;
        default: return kExitIo;
    }
}

struct KeyOptions {
    std::string hex;
    std::string file;

    WatermarkKey load() const {
        std::string text = hex;
        if (!file.empty()) {
            std::ifstream in(file);
            if (!in) throw Error(ErrorCode::Io, "cannot open key file " + file);
            std::stringstream s;
            s << in.rdbuf();
            text = s.str();
            text.erase(std::remove_if(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); }),
                       text.end());
        }
        if (text.empty()) throw Error(ErrorCode::InvalidArgument, "a key is required (--key or --key-file)");
        return WatermarkKey::from_hex(text);
    }
};

void add_key(CLI::App* cmd, KeyOptions& k) {
    auto* a = cmd->add_option("--key", k.hex, "128-bit key as 32 hex digits");
    auto* b = cmd->add_option("--key-file", k.file, "File holding the key as 32 hex digits");
    a->excludes(b);
}

// Flags bound to optionals so that extract can tell "given" from "default".
struct ParamOptions {
    std::optional<double> sigma, lambda, bin_width, threshold, mu, search_halfwidth, search_step, detect_threshold;
    std::optional<int> payload;
    std::optional<std::uint64_t> seed;

    void add_embedding(CLI::App* cmd) {
        cmd->add_option("--sigma", sigma, "Gaussian low-pass sigma");
        cmd->add_option("--lambda", lambda, "Histogram range half-width as a fraction of the mean");
        cmd->add_option("--bin-width", bin_width, "Bin width M in gray levels");
        cmd->add_option("--threshold", threshold, "Group ratio threshold T");
        cmd->add_option("--mu", mu, "Clamp margin for moved pixels");
        cmd->add_option("--payload", payload, "Payload length in bits");
        cmd->add_option("--seed", seed, "Donor tie-break seed (HISTOMARK_SEED overrides)");
    }
    void add_detection(CLI::App* cmd) {
        cmd->add_option("--search-halfwidth", search_halfwidth, "Mean search half-width (relative)");
        cmd->add_option("--search-step", search_step, "Mean search step (relative)");
        cmd->add_option("--detect-threshold", detect_threshold, "Correlation needed to report detection");
    }

    void apply(EmbedParams& p) const {
        if (sigma) p.sigma = *sigma;
        if (lambda) p.lambda = *lambda;
        if (bin_width) p.bin_width = *bin_width;
        if (threshold) p.threshold = *threshold;
        if (mu) p.mu = *mu;
        if (payload) p.payload_bits = *payload;
        if (seed) p.rng_seed = *seed;
        if (search_halfwidth) p.search_halfwidth = *search_halfwidth;
        if (search_step) p.search_step = *search_step;
        if (detect_threshold) p.detect_threshold = *detect_threshold;
        if (const char* env = std::getenv("HISTOMARK_SEED"); env && *env) {
            char* end = nullptr;
            const unsigned long long v = std::strtoull(env, &end, 10);
            if (*end != '\0') throw Error(ErrorCode::InvalidArgument, "HISTOMARK_SEED is not an unsigned integer");
            p.rng_seed = v;
        }
        p.validate();
    }
};

std::string sidecar_path_for(const std::string& image) { return image + ".wmmeta"; }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Histogram-shape watermarking: embed, extract, attack, benchmark"};
    app.require_subcommand(1);

    KeyOptions key;
    ParamOptions po;
    std::string in_path, out_path, ref_path, sidecar_path, nonce_hex, corpus_dir, spec_text;
    std::vector<std::string> extra_attacks;
    bool no_default_suite = false;

    auto* cmd_embed = app.add_subcommand("embed", "Embed a key-derived mark; writes OUT and OUT.wmmeta");
    cmd_embed->add_option("input", in_path, "Cover image (.pgm or .png)")->required();
    cmd_embed->add_option("output", out_path, "Watermarked image (.pgm or .png)")->required();
    cmd_embed->add_option("--nonce", nonce_hex, "Public 8-byte salt as 16 hex digits (default: hash of the image)");
    add_key(cmd_embed, key);
    po.add_embedding(cmd_embed);
    po.add_detection(cmd_embed);

    auto* cmd_extract = app.add_subcommand("extract", "Blind extraction; exit 4 when the mark is not detected");
    cmd_extract->add_option("input", in_path, "Image to test")->required();
    cmd_extract->add_option("--sidecar", sidecar_path, "Sidecar file (default: INPUT.wmmeta)");
    add_key(cmd_extract, key);
    po.add_detection(cmd_extract);

    auto* cmd_attack = app.add_subcommand("attack", "Apply one attack");
    cmd_attack->add_option("input", in_path, "Input image")->required();
    cmd_attack->add_option("output", out_path, "Attacked image")->required();
    cmd_attack->add_option("--spec", spec_text, "kind:magnitude[:seed]")->required();

    auto* cmd_bench = app.add_subcommand("bench", "Embed, attack and extract over a corpus directory");
    cmd_bench->add_option("corpus", corpus_dir, "Directory of .pgm/.png images")->required();
    cmd_bench->add_option("--out", out_path, "Output prefix; writes PREFIX.csv and PREFIX.json")->required();
    cmd_bench->add_option("--attack", extra_attacks, "Additional attack spec (repeatable)");
    cmd_bench->add_flag("--no-default-suite", no_default_suite, "Run only the --attack specs");
    add_key(cmd_bench, key);
    po.add_embedding(cmd_bench);
    po.add_detection(cmd_bench);

    auto* cmd_psnr = app.add_subcommand("psnr", "Compare two images");
    cmd_psnr->add_option("reference", ref_path, "Reference image")->required();
    cmd_psnr->add_option("test", in_path, "Test image")->required();

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    }

    try {
        if (cmd_embed->parsed()) {
            EmbedParams p;
            po.apply(p);
            const GrayImage cover = load_image(in_path);
            const Nonce nonce = nonce_hex.empty() ? nonce_for_image(cover) : nonce_from_hex(nonce_hex);
            const EmbedResult r = embed(cover, key.load(), nonce, p);
            save_image(r.watermarked, out_path);
            save_sidecar(r.sidecar, sidecar_path_for(out_path));
            for (const auto& w : r.warnings) err << "warning: " << w << "\n";
            out << to_json(r, in_path, out_path).dump(2) << "\n";
            return kExitOk;
        }
        if (cmd_extract->parsed()) {
            EmbedSidecar sc = load_sidecar(sidecar_path.empty() ? sidecar_path_for(in_path) : sidecar_path);
            if (po.search_halfwidth) sc.params.search_halfwidth = *po.search_halfwidth;
            if (po.search_step) sc.params.search_step = *po.search_step;
            if (po.detect_threshold) sc.params.detect_threshold = *po.detect_threshold;
            const DetectionReport d = extract(load_image(in_path), key.load(), sc);
            out << to_json(d, in_path).dump(2) << "\n";
            return d.detected ? kExitOk : kExitNotDetected;
        }
        if (cmd_attack->parsed()) {
            const AttackSpec spec = parse_attack_spec(spec_text);
            const GrayImage img = load_image(in_path);
            const GrayImage att = apply_attack(img, spec);
            save_image(att, out_path);
            out << attack_json(spec, in_path, out_path, psnr(img, att)).dump(2) << "\n";
            return kExitOk;
        }
        if (cmd_bench->parsed()) {
            EmbedParams p;
            po.apply(p);
            std::vector<AttackSpec> suite;
            if (!no_default_suite) suite = attack_suite_default();
            for (const auto& s : extra_attacks) suite.push_back(parse_attack_spec(s));
            const BenchReport rep = run_bench(list_corpus(corpus_dir), key.load(), p, suite);
            write_bench(rep, out_path);
            const auto j = to_json(rep);
            auto summary = j["totals"];
            summary["kind"] = "bench_totals";
            summary["schema_version"] = j["schema_version"];
            summary["csv"] = out_path + ".csv";
            summary["json"] = out_path + ".json";
            out << summary.dump(2) << "\n";
            return kExitOk;
        }
        if (cmd_psnr->parsed()) {
            out << to_json(psnr(load_image(ref_path), load_image(in_path))).dump(2) << "\n";
            return kExitOk;
        }
    } catch (const Error& e) {
        err << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
        return exit_for(e.code());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitIo;
}

}  // namespace histomark
