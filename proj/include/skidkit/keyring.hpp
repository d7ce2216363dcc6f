#pragma once

// Key material lifecycle: MAC/AES key derivation from a 32-byte master
// secret, and an ordered key ring (newest first, exactly one default)
// that drives parse fallback after rotation.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "skidkit/blake3.hpp"
#include "skidkit/bytes.hpp"
#include "skidkit/errors.hpp"
#include "skidkit/secure.hpp"

namespace skidkit {

// Fixed derivation labels; part of the external interface, never change.
inline constexpr std::string_view kMacKeyContext = "skid-kit 2025 mac v1";
inline constexpr std::string_view kAesKeyContext = "skid-kit 2025 aes v1";

/// Derives the independent MAC and AES keys from one master secret via
/// BLAKE3 key-derivation mode with distinct context strings.
inline std::pair<MacKey, AesKey> derive_keys(std::span<const std::uint8_t> master_secret) {
    if (master_secret.size() != 32)
        throw BadSecretLengthError("master secret must be exactly 32 bytes");
    MacKey mac{blake3::derive_key(kMacKeyContext, master_secret)};
    AesKey aes{blake3::derive_key(kAesKeyContext, master_secret)};
    return {mac, aes};
}

struct KeyEntry {
    std::string id;
    Bytes32 secret{};
    MacKey mac_key{};
    AesKey aes_key{};
    std::string created_at;  // RFC 3339
    bool compromised = false;

    static KeyEntry from_secret(std::string id, const Bytes32& secret, std::string created_at,
                                bool compromised = false) {
        auto [mac, aes] = derive_keys(secret);
        return KeyEntry{std::move(id), secret, mac, aes, std::move(created_at), compromised};
    }
};

/// Immutable after construction; rotation produces a new ring value.
class KeyRing {
public:
    KeyRing(std::vector<KeyEntry> entries, std::string default_id)
        : entries_(std::move(entries)), default_id_(std::move(default_id)) {
        if (entries_.empty()) throw EmptyRingError("key ring has no entries");
        if (!find(default_id_)) throw SkidError("default key id not present in ring");
        for (std::size_t i = 0; i < entries_.size(); ++i)
            for (std::size_t j = i + 1; j < entries_.size(); ++j)
                if (entries_[i].id == entries_[j].id)
                    throw DuplicateKeyIdError("duplicate key id: " + entries_[i].id);
    }

    static KeyRing single(std::string id, const Bytes32& secret, std::string created_at = "") {
        std::vector<KeyEntry> entries;
        entries.push_back(KeyEntry::from_secret(id, secret, std::move(created_at)));
        return KeyRing(std::move(entries), std::move(id));
    }

    const std::vector<KeyEntry>& entries() const { return entries_; }
    const std::string& default_id() const { return default_id_; }

    const KeyEntry& default_entry() const { return *find(default_id_); }

    const KeyEntry* find(const std::string& id) const {
        auto it = std::find_if(entries_.begin(), entries_.end(),
                               [&](const KeyEntry& e) { return e.id == id; });
        return it == entries_.end() ? nullptr : &*it;
    }

    /// Key pair for new identifier generation. Old data must stay
    /// readable, so compromised entries still serve parse fallback, but
    /// generating with a compromised default is refused.
    const KeyEntry& generation_entry() const {
        const KeyEntry& entry = default_entry();
        if (entry.compromised)
            throw CompromisedKeyError("default key is marked compromised; rotate first");
        return entry;
    }

    /// New entry prepended (newest first) and made default.
    KeyRing rotate(std::string id, const Bytes32& secret, std::string created_at = "") const {
        if (find(id)) throw DuplicateKeyIdError("duplicate key id: " + id);
        std::vector<KeyEntry> entries;
        entries.reserve(entries_.size() + 1);
        entries.push_back(KeyEntry::from_secret(id, secret, std::move(created_at)));
        entries.insert(entries.end(), entries_.begin(), entries_.end());
        return KeyRing(std::move(entries), std::move(id));
    }

    KeyRing mark_compromised(const std::string& id) const {
        std::vector<KeyEntry> entries = entries_;
        auto it = std::find_if(entries.begin(), entries.end(),
                               [&](const KeyEntry& e) { return e.id == id; });
        if (it == entries.end()) throw SkidError("unknown key id: " + id);
        it->compromised = true;
        return KeyRing(std::move(entries), default_id_);
    }

    struct FallbackResult {
        ParseOutcome outcome;
        std::string key_id;  // resolving key, empty when Invalid
    };

    /// Default entry first, then remaining entries newest-first; first
    /// non-Invalid outcome wins and is tagged with the resolving key id.
    FallbackResult parse_with_fallback(const Bytes16& candidate) const {
        {
            SecureCodec codec(default_entry().mac_key, default_entry().aes_key);
            ParseOutcome outcome = codec.parse_auto(candidate);
            if (outcome.valid()) return {outcome, default_id_};
        }
        for (const KeyEntry& entry : entries_) {
            if (entry.id == default_id_) continue;
            SecureCodec codec(entry.mac_key, entry.aes_key);
            ParseOutcome outcome = codec.parse_auto(candidate);
            if (outcome.valid()) return {outcome, entry.id};
        }
        return {ParseOutcome::invalid(InvalidReason::NoKeyMatched), ""};
    }

    // File format: {"version":1,"default":"id","keys":[{"id","secret",
    // "createdAt","compromised"}]}, secrets hex-encoded, entry order
    // preserved (newest first).
    nlohmann::json to_json() const {
        nlohmann::json keys = nlohmann::json::array();
        for (const KeyEntry& e : entries_) {
            keys.push_back({{"id", e.id},
                            {"secret", to_hex(e.secret)},
                            {"createdAt", e.created_at},
                            {"compromised", e.compromised}});
        }
        return {{"version", 1}, {"default", default_id_}, {"keys", keys}};
    }

    static KeyRing from_json(const nlohmann::json& doc) {
        if (!doc.contains("version") || doc["version"].get<int>() != 1)
            throw SkidError("unsupported keyring version");
        std::vector<KeyEntry> entries;
        for (const auto& k : doc.at("keys")) {
            auto secret = from_hex<32>(k.at("secret").get<std::string>());
            if (!secret) throw BadSecretLengthError("secret must be 64 hex characters");
            entries.push_back(KeyEntry::from_secret(
                k.at("id").get<std::string>(), *secret,
                k.value("createdAt", std::string{}), k.value("compromised", false)));
        }
        return KeyRing(std::move(entries), doc.at("default").get<std::string>());
    }

    void save_file(const std::string& path) const {
        std::ofstream out(path);
        if (!out) throw SkidError("cannot write keyring file: " + path);
        out << to_json().dump(2) << '\n';
    }

    static KeyRing load_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw SkidError("cannot read keyring file: " + path);
        nlohmann::json doc;
        in >> doc;
        return from_json(doc);
    }

private:
    std::vector<KeyEntry> entries_;
    std::string default_id_;
};

}  // namespace skidkit
