#pragma once

// Deterministic cross-implementation test vectors: fixed identifier
// inputs, their plaintext SKEID bytes, and the AES-256 ciphertext under
// keys derived from a caller-supplied master secret.

#include <array>
#include <cstdint>
#include <sstream>
#include <string>

#include "skidkit/keyring.hpp"
#include "skidkit/secure.hpp"
#include "skidkit/skeid.hpp"

namespace skidkit {

struct VectorInput {
    std::uint64_t skid_bits;
    std::uint8_t epoch_index;
    std::uint8_t entity_type;
};

inline constexpr std::array<VectorInput, 8> kVectorInputs = {{
    {0x8BEBC20012040005ull, 0x00, 0x0A},
    {0x8000000000000000ull, 0x00, 0x00},
    {0x7FFFFFFFFFFFFFFFull, 0xFF, 0xFF},
    {0x0000000000000000ull, 0x01, 0x10},
    {0x123456789ABCDEF0ull, 0x05, 0x2A},
    {0xFEDCBA9876543210ull, 0x80, 0x7F},
    {0x0123456789ABCDEFull, 0x10, 0x01},
    {0xCAFEBABE8BADF00Dull, 0x22, 0x33},
}};

/// One line per input: `<skid-hex> <epoch> <entity> <plaintext-hex32>
/// <ciphertext-hex32>`, all lowercase hex.
inline std::string emit_vectors(const Bytes32& master_secret) {
    auto [mac_key, aes_key] = derive_keys(master_secret);
    Aes256 cipher(aes_key.bytes);
    std::ostringstream out;
    for (const VectorInput& input : kVectorInputs) {
        const Skid skid(std::int64_t(input.skid_bits));
        const Skeid plaintext =
            build_skeid(skid, input.epoch_index, input.entity_type, mac_key);
        const Bytes16 ciphertext = cipher.encrypt_block(plaintext.bytes());
        std::uint8_t skid_be[8];
        for (int i = 0; i < 8; ++i) skid_be[i] = std::uint8_t(input.skid_bits >> (56 - 8 * i));
        out << to_hex({skid_be, 8}) << ' ' << to_hex({&input.epoch_index, 1}) << ' '
            << to_hex({&input.entity_type, 1}) << ' ' << to_hex(plaintext.bytes()) << ' '
            << to_hex(ciphertext) << '\n';
    }
    return out.str();
}

}  // namespace skidkit
