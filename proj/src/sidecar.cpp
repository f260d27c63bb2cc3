#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "histomark/codec.hpp"
#include "histomark/error.hpp"

namespace histomark {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

class Fields {
public:
    explicit Fields(std::map<std::string, std::string> kv) : kv_(std::move(kv)) {}

    const std::string& raw(const std::string& key) const {
        auto it = kv_.find(key);
        if (it == kv_.end()) throw Error(ErrorCode::Format, "sidecar: missing field '" + key + "'");
        return it->second;
    }

    double real(const std::string& key) const {
        const std::string& s = raw(key);
        char* end = nullptr;
        errno = 0;
        const double v = std::strtod(s.c_str(), &end);
        if (s.empty() || *end != '\0' || errno == ERANGE || !std::isfinite(v))
            throw Error(ErrorCode::Format, "sidecar: field '" + key + "' is not a number");
        return v;
    }

    long long integer(const std::string& key) const {
        const std::string& s = raw(key);
        char* end = nullptr;
        errno = 0;
        const long long v = std::strtoll(s.c_str(), &end, 10);
        if (s.empty() || *end != '\0' || errno == ERANGE)
            throw Error(ErrorCode::Format, "sidecar: field '" + key + "' is not an integer");
        return v;
    }

    std::uint64_t unsigned64(const std::string& key) const {
        const std::string& s = raw(key);
        char* end = nullptr;
        errno = 0;
        const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
        if (s.empty() || s[0] == '-' || *end != '\0' || errno == ERANGE)
            throw Error(ErrorCode::Format, "sidecar: field '" + key + "' is not an unsigned integer");
        return v;
    }

private:
    std::map<std::string, std::string> kv_;
};

}  // namespace

std::string serialize_sidecar(const EmbedSidecar& sc) {
    const EmbedParams& p = sc.params;
    std::ostringstream o;
    o << "version=" << sc.version << '\n'
      << "sigma=" << fmt_double(p.sigma) << '\n'
      << "lambda=" << fmt_double(p.lambda) << '\n'
      << "bin_width=" << fmt_double(p.bin_width) << '\n'
      << "threshold=" << fmt_double(p.threshold) << '\n'
      << "mu=" << fmt_double(p.mu) << '\n'
      << "payload_bits=" << p.payload_bits << '\n'
      << "rng_seed=" << p.rng_seed << '\n'
      << "search_halfwidth=" << fmt_double(p.search_halfwidth) << '\n'
      << "search_step=" << fmt_double(p.search_step) << '\n'
      << "detect_threshold=" << fmt_double(p.detect_threshold) << '\n'
      << "nonce=" << to_hex(sc.nonce.data(), sc.nonce.size()) << '\n'
      << "embed_mean=" << fmt_double(sc.embed_mean) << '\n'
      << "bin_count=" << sc.bin_count << '\n'
      << "group_offset=" << sc.group_offset << '\n'
      << "width=" << sc.width << '\n'
      << "height=" << sc.height << '\n'
      << "bit_depth=" << sc.bit_depth << '\n';
    return o.str();
}

EmbedSidecar parse_sidecar(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::map<std::string, std::string> kv;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw Error(ErrorCode::Format, "sidecar: expected name=value, got '" + line + "'");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (first) {
            if (key != "version") throw Error(ErrorCode::Format, "sidecar: first line must be the version");
            if (val != std::to_string(EmbedSidecar::kVersion))
                throw Error(ErrorCode::SidecarVersion, "sidecar version " + val + " is not supported (expected " +
                                                           std::to_string(EmbedSidecar::kVersion) + ")");
            first = false;
        }
        kv[std::move(key)] = std::move(val);
    }
    if (first) throw Error(ErrorCode::Format, "sidecar is empty");

    const Fields f(std::move(kv));
    EmbedSidecar sc;
    EmbedParams& p = sc.params;
    p.sigma = f.real("sigma");
    p.lambda = f.real("lambda");
    p.bin_width = f.real("bin_width");
    p.threshold = f.real("threshold");
    p.mu = f.real("mu");
    p.payload_bits = static_cast<int>(f.integer("payload_bits"));
    p.rng_seed = f.unsigned64("rng_seed");
    p.search_halfwidth = f.real("search_halfwidth");
    p.search_step = f.real("search_step");
    p.detect_threshold = f.real("detect_threshold");
    try {
        sc.nonce = nonce_from_hex(f.raw("nonce"));
    } catch (const Error& e) {
        throw Error(ErrorCode::Format, std::string("sidecar: ") + e.what());
    }
    sc.embed_mean = f.real("embed_mean");
    sc.bin_count = static_cast<int>(f.integer("bin_count"));
    sc.group_offset = static_cast<int>(f.integer("group_offset"));
    sc.width = static_cast<int>(f.integer("width"));
    sc.height = static_cast<int>(f.integer("height"));
    sc.bit_depth = static_cast<int>(f.integer("bit_depth"));

    try {
        p.validate();
    } catch (const Error& e) {
        throw Error(ErrorCode::Format, std::string("sidecar: ") + e.what());
    }
    if (!(sc.embed_mean > 0.0) || sc.bin_count < 2 * p.payload_bits || sc.group_offset < 0 ||
        sc.group_offset + 2 * p.payload_bits > sc.bin_count)
        throw Error(ErrorCode::Format, "sidecar: histogram window fields are inconsistent");
    return sc;
}

void save_sidecar(const EmbedSidecar& sidecar, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
    out << serialize_sidecar(sidecar);
    if (!out) throw Error(ErrorCode::Io, "write failed: " + path.string());
}

EmbedSidecar load_sidecar(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open sidecar " + path.string());
    std::ostringstream s;
    s << in.rdbuf();
    return parse_sidecar(s.str());
}

}  // namespace histomark
