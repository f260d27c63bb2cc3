#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace histomark {

using Block = std::array<std::uint8_t, 16>;
using Nonce = std::array<std::uint8_t, 8>;

/// 128-bit secret key.
struct WatermarkKey {
    Block bytes{};

    /// Exactly 32 hex digits, either case. Throws InvalidArgument.
    static WatermarkKey from_hex(std::string_view hex);
    std::string to_hex() const;
    bool operator==(const WatermarkKey&) const = default;
};

using BitSequence = std::vector<std::uint8_t>;  // entries are 0 or 1

/// AES-128 with a precomputed key schedule.
class Aes128 {
public:
    explicit Aes128(const Block& key);
    Block encrypt(const Block& plaintext) const;

private:
    std::array<std::array<std::uint8_t, 16>, 11> round_keys_{};
};

Block aes128_encrypt_block(const Block& key, const Block& plaintext);

/// Keystream of AES-128-CTR over counter blocks nonce || be64(counter),
/// counter starting at 0, read MSB-first. `length` in [1, 1024].
BitSequence derive_pn(const WatermarkKey& key, const Nonce& nonce, int length);

Nonce nonce_from_hex(std::string_view hex);
std::string to_hex(const std::uint8_t* data, std::size_t n);

}  // namespace histomark
