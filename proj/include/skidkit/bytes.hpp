#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace skidkit {

using Bytes16 = std::array<std::uint8_t, 16>;
using Bytes32 = std::array<std::uint8_t, 32>;

inline std::uint32_t read_be32(const std::uint8_t* p) {
    return (std::uint32_t(p[0]) << 24) | (std::uint32_t(p[1]) << 16) |
           (std::uint32_t(p[2]) << 8) | std::uint32_t(p[3]);
}

inline void write_be32(std::uint8_t* p, std::uint32_t v) {
    p[0] = std::uint8_t(v >> 24);
    p[1] = std::uint8_t(v >> 16);
    p[2] = std::uint8_t(v >> 8);
    p[3] = std::uint8_t(v);
}

/// Equality without data-dependent early exit, for MAC comparison.
inline bool constant_time_equal(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    if (a.size() != b.size()) return false;
    std::uint8_t acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc |= std::uint8_t(a[i] ^ b[i]);
    return acc == 0;
}

inline std::string to_hex(std::span<const std::uint8_t> data) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(data.size() * 2);
    for (std::uint8_t b : data) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0x0F]);
    }
    return out;
}

inline std::optional<std::uint8_t> hex_nibble(char c) {
    if (c >= '0' && c <= '9') return std::uint8_t(c - '0');
    if (c >= 'a' && c <= 'f') return std::uint8_t(c - 'a' + 10);
    if (c >= 'A' && c <= 'F') return std::uint8_t(c - 'A' + 10);
    return std::nullopt;
}

template <std::size_t N>
std::optional<std::array<std::uint8_t, N>> from_hex(std::string_view hex) {
    if (hex.size() != N * 2) return std::nullopt;
    std::array<std::uint8_t, N> out{};
    for (std::size_t i = 0; i < N; ++i) {
        auto hi = hex_nibble(hex[2 * i]);
        auto lo = hex_nibble(hex[2 * i + 1]);
        if (!hi || !lo) return std::nullopt;
        out[i] = std::uint8_t((*hi << 4) | *lo);
    }
    return out;
}

/// Formats 16 bytes as a lowercase 8-4-4-4-12 UUID string, byte 0 first
/// (big-endian network order throughout).
inline std::string format_uuid(const Bytes16& bytes) {
    std::string hex = to_hex(bytes);
    std::string out;
    out.reserve(36);
    out.append(hex, 0, 8);
    out.push_back('-');
    out.append(hex, 8, 4);
    out.push_back('-');
    out.append(hex, 12, 4);
    out.push_back('-');
    out.append(hex, 16, 4);
    out.push_back('-');
    out.append(hex, 20, 12);
    return out;
}

/// Accepts mixed-case UUID strings with or without dashes.
inline std::optional<Bytes16> parse_uuid(std::string_view text) {
    std::string hex;
    hex.reserve(32);
    if (text.size() == 36) {
        if (text[8] != '-' || text[13] != '-' || text[18] != '-' || text[23] != '-')
            return std::nullopt;
        for (std::size_t i = 0; i < 36; ++i)
            if (i != 8 && i != 13 && i != 18 && i != 23) hex.push_back(text[i]);
    } else if (text.size() == 32) {
        hex.assign(text);
    } else {
        return std::nullopt;
    }
    return from_hex<16>(hex);
}

}  // namespace skidkit
