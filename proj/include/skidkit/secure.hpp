#pragma once

// Secure SKEID: single-block AES-256 ciphertext of a plaintext SKEID,
// plus the collision guard, backward verification, and the
// auto-detection parse state machine.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "skidkit/aes256.hpp"
#include "skidkit/bytes.hpp"
#include "skidkit/errors.hpp"
#include "skidkit/skeid.hpp"

namespace skidkit {

class SecureSkeid {
public:
    SecureSkeid() = default;
    explicit SecureSkeid(const Bytes16& bytes) : bytes_(bytes) {}

    const Bytes16& bytes() const { return bytes_; }
    std::string to_string() const { return format_uuid(bytes_); }

    static std::optional<SecureSkeid> from_string(std::string_view uuid) {
        auto bytes = parse_uuid(uuid);
        if (!bytes) return std::nullopt;
        return SecureSkeid(*bytes);
    }

    bool operator==(const SecureSkeid&) const = default;

private:
    Bytes16 bytes_{};
};

enum class InvalidReason {
    NoMarkers,
    MacFailure,
    VariantBelowDefault,
    BackwardVerificationFailed,
    NoKeyMatched,
};

inline const char* to_string(InvalidReason reason) {
    switch (reason) {
        case InvalidReason::NoMarkers: return "NoMarkers";
        case InvalidReason::MacFailure: return "MacFailure";
        case InvalidReason::VariantBelowDefault: return "VariantBelowDefault";
        case InvalidReason::BackwardVerificationFailed: return "BackwardVerificationFailed";
        case InvalidReason::NoKeyMatched: return "NoKeyMatched";
    }
    return "Unknown";
}

struct ParseOutcome {
    enum class Kind { Plain, Secure, Invalid };

    Kind kind = Kind::Invalid;
    ParsedSkeid parsed{};
    InvalidReason reason = InvalidReason::NoMarkers;
    // populated when both the plaintext and the decryption path failed
    std::optional<InvalidReason> plaintext_sub_reason;
    std::optional<InvalidReason> secure_sub_reason;

    bool valid() const { return kind != Kind::Invalid; }

    static ParseOutcome plain(ParsedSkeid parsed) {
        return ParseOutcome{Kind::Plain, parsed, InvalidReason::NoMarkers, {}, {}};
    }
    static ParseOutcome secure(ParsedSkeid parsed) {
        return ParseOutcome{Kind::Secure, parsed, InvalidReason::NoMarkers, {}, {}};
    }
    static ParseOutcome invalid(InvalidReason reason) {
        return ParseOutcome{Kind::Invalid, {}, reason, {}, {}};
    }
};

/// True iff the ciphertext would be misclassified as a valid plaintext
/// SKEID: exact markers at bytes 6 and 8 plus a verifying MAC.
inline bool collision_predicate(const Bytes16& ciphertext, const MacKey& mac_key) {
    if (ciphertext[6] != kVersionMarker || ciphertext[8] != kDefaultVariant) return false;
    return verify_mac(Skeid(ciphertext), mac_key);
}

/// Ties one (MAC key, AES key) pair to the secure-tier operations. The
/// collision predicate is injectable because a genuine 2^-48 collision
/// cannot be provoked at desk scale; production wiring keeps the default.
class SecureCodec {
public:
    using Predicate = std::function<bool(const Bytes16& ciphertext)>;

    SecureCodec(MacKey mac_key, AesKey aes_key)
        : mac_key_(mac_key), aes_key_(aes_key), cipher_(aes_key.bytes) {
        predicate_ = [this](const Bytes16& ct) { return collision_predicate(ct, mac_key_); };
    }

    SecureCodec(MacKey mac_key, AesKey aes_key, Predicate predicate)
        : mac_key_(mac_key), aes_key_(aes_key), cipher_(aes_key.bytes),
          predicate_(std::move(predicate)) {}

    const MacKey& mac_key() const { return mac_key_; }
    const AesKey& aes_key() const { return aes_key_; }

    SecureSkeid encrypt(const Skeid& skeid) const {
        return SecureSkeid(cipher_.encrypt_block(skeid.bytes()));
    }

    Skeid decrypt(const SecureSkeid& secure) const {
        return Skeid(cipher_.decrypt_block(secure.bytes()));
    }

    /// Escalates the variant byte 0x8D..0xBF until the ciphertext stops
    /// colliding with the plaintext parse path. Bounded at 51 attempts;
    /// exhaustion (probability ~2^-(48*51)) is a distinct fatal error.
    SecureSkeid to_secure(Skid skid, std::uint8_t epoch_index, std::uint8_t entity_type) const {
        for (std::uint32_t variant = kDefaultVariant; variant <= kMaxVariant; ++variant) {
            const Skeid plaintext =
                build_skeid(skid, epoch_index, entity_type, std::uint8_t(variant), mac_key_);
            const SecureSkeid ciphertext = encrypt(plaintext);
            if (!predicate_(ciphertext.bytes())) return ciphertext;
        }
        throw CollisionGuardExhaustedError("all 51 variant attempts collided");
    }

    /// Single backward step: rebuild with variant V-1, encrypt, and
    /// check the collision that would have forced the escalation.
    bool backward_verify(const Skeid& decrypted) const {
        const std::uint8_t variant = decrypted.variant_byte();
        const Skeid previous = build_skeid(extract_skid(decrypted), decrypted.epoch_index(),
                                           decrypted.entity_type(), std::uint8_t(variant - 1),
                                           mac_key_);
        return predicate_(encrypt(previous).bytes());
    }

    /// Decryption path only (auto-detection steps 4-8).
    ParseOutcome to_plain(const SecureSkeid& secure) const {
        const Skeid plaintext = decrypt(secure);
        const Bytes16& p = plaintext.bytes();
        if (p[6] != kVersionMarker || (p[8] & 0xC0) != 0x80)
            return ParseOutcome::invalid(InvalidReason::NoMarkers);
        const std::uint8_t variant = p[8];
        if (variant < kDefaultVariant)
            return ParseOutcome::invalid(InvalidReason::VariantBelowDefault);
        if (variant > kDefaultVariant && !backward_verify(plaintext))
            return ParseOutcome::invalid(InvalidReason::BackwardVerificationFailed);
        if (!verify_mac(plaintext, mac_key_))
            return ParseOutcome::invalid(InvalidReason::MacFailure);
        return ParseOutcome::secure(parse_skeid_fields(plaintext, /*secure_origin=*/true));
    }

    /// Full auto-detection: plaintext attempt on exact markers, then the
    /// decryption path. Total over arbitrary 16-byte input.
    ParseOutcome parse_auto(const Bytes16& candidate) const {
        bool plaintext_attempted = false;
        if (candidate[6] == kVersionMarker && candidate[8] == kDefaultVariant) {
            const Skeid skeid(candidate);
            if (verify_mac(skeid, mac_key_))
                return ParseOutcome::plain(parse_skeid_fields(skeid, /*secure_origin=*/false));
            plaintext_attempted = true;
        }
        ParseOutcome secure_outcome = to_plain(SecureSkeid(candidate));
        if (secure_outcome.valid() || !plaintext_attempted) return secure_outcome;
        // exact markers matched but both paths failed: no key matched;
        // keep the per-path reasons for diagnostics
        ParseOutcome outcome = ParseOutcome::invalid(InvalidReason::NoKeyMatched);
        outcome.plaintext_sub_reason = InvalidReason::MacFailure;
        outcome.secure_sub_reason = secure_outcome.reason;
        return outcome;
    }

private:
    MacKey mac_key_;
    AesKey aes_key_;
    Aes256 cipher_;
    Predicate predicate_;
};

}  // namespace skidkit
