#include "histomark/keystream.hpp"

#include <cctype>
#include <string>

#include "histomark/error.hpp"

namespace histomark {

namespace {

constexpr std::uint8_t kSbox[256] = {
    0x63, 0x7c, 0x77, 0x7b, 0xf2, 0x6b, 0x6f, 0xc5, 0x30, 0x01, 0x67, 0x2b, 0xfe, 0xd7, 0xab, 0x76,
    0xca, 0x82, 0xc9, 0x7d, 0xfa, 0x59, 0x47, 0xf0, 0xad, 0xd4, 0xa2, 0xaf, 0x9c, 0xa4, 0x72, 0xc0,
    0xb7, 0xfd, 0x93, 0x26, 0x36, 0x3f, 0xf7, 0xcc, 0x34, 0xa5, 0xe5, 0xf1, 0x71, 0xd8, 0x31, 0x15,
    0x04, 0xc7, 0x23, 0xc3, 0x18, 0x96, 0x05, 0x9a, 0x07, 0x12, 0x80, 0xe2, 0xeb, 0x27, 0xb2, 0x75,
    0x09, 0x83, 0x2c, 0x1a, 0x1b, 0x6e, 0x5a, 0xa0, 0x52, 0x3b, 0xd6, 0xb3, 0x29, 0xe3, 0x2f, 0x84,
    0x53, 0xd1, 0x00, 0xed, 0x20, 0xfc, 0xb1, 0x5b, 0x6a, 0xcb, 0xbe, 0x39, 0x4a, 0x4c, 0x58, 0xcf,
    0xd0, 0xef, 0xaa, 0xfb, 0x43, 0x4d, 0x33, 0x85, 0x45, 0xf9, 0x02, 0x7f, 0x50, 0x3c, 0x9f, 0xa8,
    0x51, 0xa3, 0x40, 0x8f, 0x92, 0x9d, 0x38, 0xf5, 0xbc, 0xb6, 0xda, 0x21, 0x10, 0xff, 0xf3, 0xd2,
    0xcd, 0x0c, 0x13, 0xec, 0x5f, 0x97, 0x44, 0x17, 0xc4, 0xa7, 0x7e, 0x3d, 0x64, 0x5d, 0x19, 0x73,
    0x60, 0x81, 0x4f, 0xdc, 0x22, 0x2a, 0x90, 0x88, 0x46, 0xee, 0xb8, 0x14, 0xde, 0x5e, 0x0b, 0xdb,
    0xe0, 0x32, 0x3a, 0x0a, 0x49, 0x06, 0x24, 0x5c, 0xc2, 0xd3, 0xac, 0x62, 0x91, 0x95, 0xe4, 0x79,
    0xe7, 0xc8, 0x37, 0x6d, 0x8d, 0xd5, 0x4e, 0xa9, 0x6c, 0x56, 0xf4, 0xea, 0x65, 0x7a, 0xae, 0x08,
    0xba, 0x78, 0x25, 0x2e, 0x1c, 0xa6, 0xb4, 0xc6, 0xe8, 0xdd, 0x74, 0x1f, 0x4b, 0xbd, 0x8b, 0x8a,
    0x70, 0x3e, 0xb5, 0x66, 0x48, 0x03, 0xf6, 0x0e, 0x61, 0x35, 0x57, 0xb9, 0x86, 0xc1, 0x1d, 0x9e,
    0xe1, 0xf8, 0x98, 0x11, 0x69, 0xd9, 0x8e, 0x94, 0x9b, 0x1e, 0x87, 0xe9, 0xce, 0x55, 0x28, 0xdf,
    0x8c, 0xa1, 0x89, 0x0d, 0xbf, 0xe6, 0x42, 0x68, 0x41, 0x99, 0x2d, 0x0f, 0xb0, 0x54, 0xbb, 0x16,
};

constexpr std::uint8_t xtime(std::uint8_t b) noexcept {
    return static_cast<std::uint8_t>((b << 1) ^ ((b & 0x80) ? 0x1b : 0x00));
}

int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1;
}

template <std::size_t N>
std::array<std::uint8_t, N> parse_hex(std::string_view hex, const char* what) {
    if (hex.size() != 2 * N)
        throw Error(ErrorCode::InvalidArgument,
                    std::string(what) + " must be " + std::to_string(2 * N) + " hex digits, got " +
                        std::to_string(hex.size()));
    std::array<std::uint8_t, N> out{};
    for (std::size_t i = 0; i < N; ++i) {
        const int hi = hex_nibble(hex[2 * i]);
        const int lo = hex_nibble(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) throw Error(ErrorCode::InvalidArgument, std::string(what) + " contains a non-hex digit");
        out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return out;
}

}  // namespace

std::string to_hex(const std::uint8_t* data, std::size_t n) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string s;
    s.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        s.push_back(digits[data[i] >> 4]);
        s.push_back(digits[data[i] & 0xF]);
    }
    return s;
}

WatermarkKey WatermarkKey::from_hex(std::string_view hex) { return WatermarkKey{parse_hex<16>(hex, "key")}; }

std::string WatermarkKey::to_hex() const { return histomark::to_hex(bytes.data(), bytes.size()); }

Nonce nonce_from_hex(std::string_view hex) { return parse_hex<8>(hex, "nonce"); }

Aes128::Aes128(const Block& key) {
    // Key expansion, FIPS-197 5.2, with Nk = 4 and 44 words.
    std::uint8_t w[176];
    for (int i = 0; i < 16; ++i) w[i] = key[static_cast<std::size_t>(i)];
    std::uint8_t rcon = 0x01;
    for (int i = 4; i < 44; ++i) {
        std::uint8_t t[4] = {w[4 * (i - 1)], w[4 * (i - 1) + 1], w[4 * (i - 1) + 2], w[4 * (i - 1) + 3]};
        if (i % 4 == 0) {
            const std::uint8_t t0 = t[0];
            t[0] = static_cast<std::uint8_t>(kSbox[t[1]] ^ rcon);
            t[1] = kSbox[t[2]];
            t[2] = kSbox[t[3]];
            t[3] = kSbox[t0];
            rcon = xtime(rcon);
        }
        for (int j = 0; j < 4; ++j) w[4 * i + j] = static_cast<std::uint8_t>(w[4 * (i - 4) + j] ^ t[j]);
    }
    for (int r = 0; r < 11; ++r)
        for (int j = 0; j < 16; ++j) round_keys_[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] = w[16 * r + j];
}

Block Aes128::encrypt(const Block& plaintext) const {
    // State is column-major: s[4*c + r].
    Block s = plaintext;
    auto add_round_key = [&](int r) {
        for (std::size_t i = 0; i < 16; ++i) s[i] ^= round_keys_[static_cast<std::size_t>(r)][i];
    };
    add_round_key(0);
    for (int round = 1; round <= 10; ++round) {
        for (auto& b : s) b = kSbox[b];
        // ShiftRows: row r rotates left by r columns.
        Block t = s;
        for (int c = 0; c < 4; ++c)
            for (int r = 1; r < 4; ++r) s[static_cast<std::size_t>(4 * c + r)] = t[static_cast<std::size_t>(4 * ((c + r) % 4) + r)];
        if (round != 10) {
            for (int c = 0; c < 4; ++c) {
                std::uint8_t* col = s.data() + 4 * c;
                const std::uint8_t a0 = col[0], a1 = col[1], a2 = col[2], a3 = col[3];
                const std::uint8_t all = static_cast<std::uint8_t>(a0 ^ a1 ^ a2 ^ a3);
                col[0] = static_cast<std::uint8_t>(a0 ^ all ^ xtime(static_cast<std::uint8_t>(a0 ^ a1)));
                col[1] = static_cast<std::uint8_t>(a1 ^ all ^ xtime(static_cast<std::uint8_t>(a1 ^ a2)));
                col[2] = static_cast<std::uint8_t>(a2 ^ all ^ xtime(static_cast<std::uint8_t>(a2 ^ a3)));
                col[3] = static_cast<std::uint8_t>(a3 ^ all ^ xtime(static_cast<std::uint8_t>(a3 ^ a0)));
            }
        }
        add_round_key(round);
    }
    return s;
}

Block aes128_encrypt_block(const Block& key, const Block& plaintext) { return Aes128(key).encrypt(plaintext); }

BitSequence derive_pn(const WatermarkKey& key, const Nonce& nonce, int length) {
    if (length < 1 || length > 1024)
        throw Error(ErrorCode::InvalidArgument, "payload length must be in [1, 1024], got " + std::to_string(length));
    const Aes128 aes(key.bytes);
    BitSequence bits;
    bits.reserve(static_cast<std::size_t>(length));
    for (std::uint64_t counter = 0; static_cast<int>(bits.size()) < length; ++counter) {
        Block ctr{};
        for (std::size_t i = 0; i < 8; ++i) ctr[i] = nonce[i];
        for (std::size_t i = 0; i < 8; ++i) ctr[8 + i] = static_cast<std::uint8_t>(counter >> (56 - 8 * i));
        const Block ks = aes.encrypt(ctr);
        for (std::size_t i = 0; i < 128 && static_cast<int>(bits.size()) < length; ++i)
            bits.push_back(static_cast<std::uint8_t>((ks[i / 8] >> (7 - i % 8)) & 1u));
    }
    return bits;
}

}  // namespace histomark
