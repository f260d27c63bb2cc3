#include "histomark/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "histomark/error.hpp"

namespace histomark {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

// --- PGM -------------------------------------------------------------------

// Reads one whitespace-delimited header token, skipping '#' comments.
std::string pgm_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {}
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty()) return tok;
            continue;
        }
        tok.push_back(static_cast<char>(c));
    }
    return tok;
}

int pgm_int(std::istream& in, const char* what) {
    const std::string tok = pgm_token(in);
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](unsigned char c) { return std::isdigit(c); }))
        throw Error(ErrorCode::Format, std::string("PGM header: bad ") + what + " '" + tok + "'");
    try {
        return std::stoi(tok);
    } catch (const std::exception&) {
        throw Error(ErrorCode::Format, std::string("PGM header: ") + what + " out of range");
    }
}

GrayImage load_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
    if (pgm_token(in) != "P5") throw Error(ErrorCode::Format, path.string() + ": not a binary PGM (P5)");
    const int w = pgm_int(in, "width");
    const int h = pgm_int(in, "height");
    const int maxval = pgm_int(in, "maxval");
    if (w <= 0 || h <= 0) throw Error(ErrorCode::Format, path.string() + ": zero-sized PGM");
    if (maxval < 1 || maxval > 65535)
        throw Error(ErrorCode::Format, path.string() + ": unsupported maxval " + std::to_string(maxval));
    // pgm_token consumed exactly one whitespace byte after maxval.
    const int depth = maxval > 255 ? 16 : 8;
    const std::size_t n = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
    const std::size_t bytes = n * (depth == 16 ? 2 : 1);
    std::vector<unsigned char> raw(bytes);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(bytes));
    if (static_cast<std::size_t>(in.gcount()) != bytes) throw Error(ErrorCode::Format, path.string() + ": truncated PGM data");

    GrayImage img(w, h, depth);
    auto px = img.plane().values();
    for (std::size_t i = 0; i < n; ++i) {
        const int v = depth == 16 ? (raw[2 * i] << 8) | raw[2 * i + 1] : raw[i];
        if (v > maxval) throw Error(ErrorCode::Format, path.string() + ": sample exceeds maxval");
        px[i] = v;
    }
    return img;
}

void save_pgm(const GrayImage& img, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
    const bool wide = img.bit_depth() == 16;
    out << "P5\n" << img.width() << ' ' << img.height() << '\n' << (wide ? 65535 : 255) << '\n';
    auto px = img.plane().values();
    std::vector<unsigned char> raw;
    raw.reserve(px.size() * (wide ? 2 : 1));
    for (double d : px) {
        const auto v = static_cast<unsigned>(std::clamp(std::lround(d), 0L, static_cast<long>(img.max_value())));
        if (wide) raw.push_back(static_cast<unsigned char>(v >> 8));
        raw.push_back(static_cast<unsigned char>(v & 0xFF));
    }
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!out) throw Error(ErrorCode::Io, "write failed: " + path.string());
}

// --- PNG -------------------------------------------------------------------

struct FileCloser {
    void operator()(std::FILE* f) const noexcept { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

[[noreturn]] void png_fail(png_structp png, png_const_charp msg) {
    // Stash the message where the setjmp handler can find it.
    auto* err = static_cast<std::string*>(png_get_error_ptr(png));
    if (err) *err = msg;
    png_longjmp(png, 1);
}

void png_warn(png_structp, png_const_charp) {}

GrayImage load_png(const std::filesystem::path& path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) throw Error(ErrorCode::Io, "cannot open " + path.string());
    unsigned char sig[8];
    if (std::fread(sig, 1, 8, fp.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0)
        throw Error(ErrorCode::Format, path.string() + ": not a PNG file");

    std::string err;
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &err, png_fail, png_warn);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw Error(ErrorCode::Io, "libpng initialisation failed");
    }

    // Everything below may longjmp, so keep non-trivial locals out of scope.
    std::vector<unsigned char> buf;
    std::vector<png_bytep> rows;
    png_uint_32 w = 0, h = 0;
    int depth = 0, channels = 0;
    std::size_t stride = 0;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw Error(ErrorCode::Format, path.string() + ": " + (err.empty() ? "corrupt PNG" : err));
    }
    png_init_io(png, fp.get());
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);

    const int color = png_get_color_type(png, info);
    if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color == PNG_COLOR_TYPE_GRAY && png_get_bit_depth(png, info) < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    png_set_strip_alpha(png);
    png_read_update_info(png, info);

    w = png_get_image_width(png, info);
    h = png_get_image_height(png, info);
    depth = png_get_bit_depth(png, info);
    channels = png_get_channels(png, info);
    stride = png_get_rowbytes(png, info);
    buf.resize(stride * h);
    rows.resize(h);
    for (png_uint_32 y = 0; y < h; ++y) rows[y] = buf.data() + y * stride;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    if (depth != 8 && depth != 16) throw Error(ErrorCode::Format, path.string() + ": unsupported PNG bit depth");
    if (channels != 1 && channels != 3) throw Error(ErrorCode::Format, path.string() + ": unsupported PNG channel layout");

    GrayImage img(static_cast<int>(w), static_cast<int>(h), depth);
    const int bps = depth / 8;
    for (png_uint_32 y = 0; y < h; ++y) {
        const unsigned char* r = buf.data() + y * stride;
        for (png_uint_32 x = 0; x < w; ++x) {
            auto sample = [&](int c) {
                const unsigned char* p = r + (x * channels + c) * bps;
                return bps == 2 ? (p[0] << 8) | p[1] : p[0];
            };
            const int v = channels == 1 ? sample(0) : luma_bt601(sample(0), sample(1), sample(2));
            img.set(static_cast<int>(x), static_cast<int>(y), v);
        }
    }
    return img;
}

void save_png(const GrayImage& img, const std::filesystem::path& path) {
    if (img.bit_depth() != 8) throw Error(ErrorCode::InvalidArgument, "PNG output supports 8-bit images only");
    const int w = img.width();
    const int h = img.height();
    std::vector<unsigned char> buf(static_cast<std::size_t>(w) * h);
    auto px = img.plane().values();
    for (std::size_t i = 0; i < buf.size(); ++i)
        buf[i] = static_cast<unsigned char>(std::clamp(std::lround(px[i]), 0L, 255L));

    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) throw Error(ErrorCode::Io, "cannot write " + path.string());
    std::string err;
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &err, png_fail, png_warn);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        throw Error(ErrorCode::Io, "libpng initialisation failed");
    }
    std::vector<png_bytep> rows(static_cast<std::size_t>(h));
    for (int y = 0; y < h; ++y) rows[static_cast<std::size_t>(y)] = buf.data() + static_cast<std::size_t>(y) * w;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw Error(ErrorCode::Io, path.string() + ": " + (err.empty() ? "PNG write failed" : err));
    }
    png_init_io(png, fp.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(w), static_cast<png_uint_32>(h), 8, PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

}  // namespace

ImageFormat format_from_path(const std::filesystem::path& path) {
    const std::string ext = lower(path.extension().string());
    if (ext == ".pgm") return ImageFormat::Pgm;
    if (ext == ".png") return ImageFormat::Png;
    throw Error(ErrorCode::Format, "unrecognised image extension '" + ext + "' (expected .pgm or .png)");
}

GrayImage load_image(const std::filesystem::path& path, ImageFormat format) {
    return format == ImageFormat::Pgm ? load_pgm(path) : load_png(path);
}

GrayImage load_image(const std::filesystem::path& path) { return load_image(path, format_from_path(path)); }

void save_image(const GrayImage& image, const std::filesystem::path& path, ImageFormat format) {
    if (format == ImageFormat::Pgm)
        save_pgm(image, path);
    else
        save_png(image, path);
}

void save_image(const GrayImage& image, const std::filesystem::path& path) {
    save_image(image, path, format_from_path(path));
}

}  // namespace histomark
