#pragma once

// Plaintext 128-bit SKEID: big-endian byte layout, sign-toggled SKID
// upper half, version/variant markers, entity type, and a 4-byte
// truncated BLAKE3 keyed MAC.

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "skidkit/blake3.hpp"
#include "skidkit/bytes.hpp"
#include "skidkit/errors.hpp"
#include "skidkit/skid.hpp"

namespace skidkit {

inline constexpr std::uint8_t kVersionMarker = 0x8D;   // byte 6
inline constexpr std::uint8_t kDefaultVariant = 0x8D;  // byte 8
inline constexpr std::uint8_t kMaxVariant = 0xBF;
inline constexpr std::uint32_t kSignToggle = 0x80000000u;

struct MacKey {
    Bytes32 bytes{};
};

struct AesKey {
    Bytes32 bytes{};
};

class Skeid {
public:
    Skeid() = default;
    explicit Skeid(const Bytes16& bytes) : bytes_(bytes) {}

    const Bytes16& bytes() const { return bytes_; }
    Bytes16& bytes() { return bytes_; }

    std::uint8_t epoch_index() const { return bytes_[0]; }
    std::uint8_t entity_type() const { return bytes_[7]; }
    std::uint8_t variant_byte() const { return bytes_[8]; }

    std::string to_string() const { return format_uuid(bytes_); }

    static std::optional<Skeid> from_string(std::string_view uuid) {
        auto bytes = parse_uuid(uuid);
        if (!bytes) return std::nullopt;
        return Skeid(*bytes);
    }

    bool operator==(const Skeid&) const = default;

private:
    Bytes16 bytes_{};
};

struct ParsedSkeid {
    Skid skid;
    std::uint8_t epoch_index = 0;
    std::uint8_t entity_type = 0;
    std::uint8_t variant_byte = 0;
    bool secure_origin = false;
};

/// MAC over the full 16-byte buffer with positions 12-15 zeroed first.
/// The epoch byte participates, so epoch tampering breaks the MAC too.
inline std::array<std::uint8_t, 4> compute_mac(const Bytes16& buffer, const MacKey& key) {
    Bytes16 cleared = buffer;
    cleared[12] = cleared[13] = cleared[14] = cleared[15] = 0;
    const Bytes32 digest = blake3::keyed_hash(key.bytes, cleared);
    return {digest[0], digest[1], digest[2], digest[3]};
}

inline bool verify_mac(const Skeid& skeid, const MacKey& key) {
    const auto expected = compute_mac(skeid.bytes(), key);
    return constant_time_equal({skeid.bytes().data() + 12, 4}, expected);
}

inline Skeid build_skeid(Skid skid, std::uint8_t epoch_index, std::uint8_t entity_type,
                         std::uint8_t variant_byte, const MacKey& mac_key) {
    if (variant_byte < kDefaultVariant || variant_byte > kMaxVariant)
        throw InvalidVariantError("variant byte outside 0x8D..0xBF");
    Bytes16 b{};
    b[0] = epoch_index;
    const std::uint32_t upper = std::uint32_t(skid.bits() >> 32) ^ kSignToggle;
    write_be32(b.data() + 1, upper);
    const std::uint32_t lower = std::uint32_t(skid.bits() & 0xFFFFFFFFu);
    std::uint8_t lower_be[4];
    write_be32(lower_be, lower);
    b[5] = lower_be[0];
    b[6] = kVersionMarker;
    b[7] = entity_type;
    b[8] = variant_byte;
    b[9] = lower_be[1];
    b[10] = lower_be[2];
    b[11] = lower_be[3];
    const auto mac = compute_mac(b, mac_key);
    b[12] = mac[0];
    b[13] = mac[1];
    b[14] = mac[2];
    b[15] = mac[3];
    return Skeid(b);
}

inline Skeid build_skeid(Skid skid, std::uint8_t epoch_index, std::uint8_t entity_type,
                         const MacKey& mac_key) {
    return build_skeid(skid, epoch_index, entity_type, kDefaultVariant, mac_key);
}

inline Skid extract_skid(const Skeid& skeid) {
    const Bytes16& b = skeid.bytes();
    if (b[6] != kVersionMarker)
        throw MalformedLayoutError("version marker missing at byte 6");
    const std::uint32_t upper = read_be32(b.data() + 1) ^ kSignToggle;
    const std::uint32_t lower = (std::uint32_t(b[5]) << 24) | (std::uint32_t(b[9]) << 16) |
                                (std::uint32_t(b[10]) << 8) | std::uint32_t(b[11]);
    return Skid(std::int64_t((std::uint64_t(upper) << 32) | lower));
}

inline ParsedSkeid parse_skeid_fields(const Skeid& skeid, bool secure_origin) {
    return ParsedSkeid{extract_skid(skeid), skeid.epoch_index(), skeid.entity_type(),
                       skeid.variant_byte(), secure_origin};
}

}  // namespace skidkit
