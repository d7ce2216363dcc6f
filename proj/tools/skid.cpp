// Command-line surface for the three-tier identifier library:
// generation, inspection, tier conversion, key management, test-vector
// emission, and benchmarks.

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/rand.h>

#include "skidkit/skidkit.hpp"

namespace {

using namespace skidkit;

constexpr int kExitInvalid = 1;
constexpr int kExitConfig = 2;
constexpr int kExitCriticalDrift = 3;
constexpr int kExitExhausted = 4;

std::string now_rfc3339() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Bytes32 random_secret() {
    Bytes32 secret;
    if (RAND_bytes(secret.data(), int(secret.size())) != 1)
        throw SkidError("OS entropy source unavailable");
    return secret;
}

std::optional<std::int64_t> parse_int64(const std::string& text) {
    try {
        std::size_t pos = 0;
        std::int64_t value;
        if (text.starts_with("0x") || text.starts_with("0X")) {
            value = std::int64_t(std::stoull(text.substr(2), &pos, 16));
            pos += 2;
        } else if (text.starts_with("-")) {
            value = std::stoll(text, &pos, 10);
        } else {
            value = std::int64_t(std::stoull(text, &pos, 10));
        }
        if (pos != text.size()) return std::nullopt;
        return value;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

// "--test-clock start_ms,step_ms": scripted clock advancing step_ms per
// read, for deterministic drift and saturation scenarios in CI.
ClockFn make_clock(const std::string& test_clock) {
    if (test_clock.empty()) return system_clock_now;
    const auto comma = test_clock.find(',');
    const auto start = parse_int64(test_clock.substr(0, comma));
    const auto step = comma == std::string::npos
                          ? std::optional<std::int64_t>(0)
                          : parse_int64(test_clock.substr(comma + 1));
    if (!start || !step) throw CLI::ValidationError("--test-clock expects start_ms[,step_ms]");
    auto reads = std::make_shared<std::int64_t>(0);
    return [start = *start, step = *step, reads]() { return start + (*reads)++ * step; };
}

KeyRing load_ring(std::string path) {
    if (path.empty()) {
        if (const char* env = std::getenv("SKID_KEYRING")) path = env;
    }
    if (path.empty())
        throw CLI::ValidationError("no keyring: pass --keyring or set SKID_KEYRING");
    return KeyRing::load_file(path);
}

std::string skid_hex(Skid skid) {
    char buf[19];
    std::snprintf(buf, sizeof(buf), "0x%016llX", (unsigned long long)skid.bits());
    return buf;
}

void print_fields(const SkidFields& f, nlohmann::json* json) {
    if (json) {
        (*json)["firstHalf"] = f.first_half;
        (*json)["timestamp32"] = f.timestamp32;
        (*json)["appId"] = f.app_id;
        (*json)["appInstanceId"] = f.app_instance_id;
        (*json)["sequenceId"] = f.sequence_id;
        return;
    }
    std::cout << "  half:       " << (f.first_half ? "first" : "second") << '\n'
              << "  timestamp:  " << f.timestamp32 << " ticks\n"
              << "  app:        " << int(f.app_id) << '\n'
              << "  instance:   " << int(f.app_instance_id) << '\n'
              << "  sequence:   " << f.sequence_id << '\n';
}

int cmd_gen(const std::string& tier, std::uint8_t app, std::uint8_t instance,
            std::uint8_t entity, std::uint8_t epoch, std::uint64_t count,
            const std::string& keyring_path, const std::string& format,
            double freeze_threshold_secs, const std::string& test_clock) {
    SkidGenerator generator({epoch, app, instance}, make_clock(test_clock),
                            std::int64_t(freeze_threshold_secs * 1000));
    std::optional<KeyRing> ring;
    std::optional<SecureCodec> codec;
    if (tier != "skid") {
        ring = load_ring(keyring_path);
        const KeyEntry& key = ring->generation_entry();
        codec.emplace(key.mac_key, key.aes_key);
    }
    for (std::uint64_t i = 0; i < count; ++i) {
        const Skid skid = generator.next(entity);
        nlohmann::json line;
        if (tier == "skid") {
            if (format == "json") {
                line = {{"tier", "skid"}, {"decimal", skid.value()}, {"hex", skid_hex(skid)}};
            } else {
                std::cout << skid.value() << ' ' << skid_hex(skid) << '\n';
                continue;
            }
        } else if (tier == "skeid") {
            const Skeid skeid = build_skeid(skid, epoch, entity, codec->mac_key());
            if (format == "json") {
                line = {{"tier", "skeid"}, {"uuid", skeid.to_string()}};
            } else {
                std::cout << skeid.to_string() << '\n';
                continue;
            }
        } else {
            const SecureSkeid secure = codec->to_secure(skid, epoch, entity);
            if (format == "json") {
                line = {{"tier", "secure"}, {"uuid", secure.to_string()}};
            } else {
                std::cout << secure.to_string() << '\n';
                continue;
            }
        }
        std::cout << line.dump() << '\n';
    }
    return 0;
}

int cmd_inspect(const std::string& value, const std::string& keyring_path,
                const std::string& format) {
    nlohmann::json json;
    nlohmann::json* jp = format == "json" ? &json : nullptr;
    if (auto as_int = parse_int64(value)) {
        const Skid skid(*as_int);
        if (jp) {
            json["kind"] = "skid";
            json["decimal"] = skid.value();
            json["hex"] = skid_hex(skid);
            print_fields(unpack(skid), jp);
            std::cout << json.dump() << '\n';
        } else {
            std::cout << "skid " << skid.value() << " (" << skid_hex(skid) << ")\n";
            print_fields(unpack(skid), nullptr);
        }
        return 0;
    }
    const auto bytes = parse_uuid(value);
    if (!bytes) {
        std::cerr << "error: not a 64-bit integer or UUID string\n";
        return kExitConfig;
    }
    const Skeid skeid(*bytes);
    const bool markers = (*bytes)[6] == kVersionMarker && (*bytes)[8] == kDefaultVariant;
    std::string verified = "no keyring";
    std::string key_id;
    if (!keyring_path.empty() || std::getenv("SKID_KEYRING")) {
        const KeyRing ring = load_ring(keyring_path);
        const auto result = ring.parse_with_fallback(*bytes);
        verified = result.outcome.valid() ? "valid" : to_string(result.outcome.reason);
        key_id = result.key_id;
    }
    if (jp) {
        json["kind"] = "uuid";
        json["uuid"] = format_uuid(*bytes);
        json["plainMarkers"] = markers;
        json["epoch"] = skeid.epoch_index();
        json["entityType"] = skeid.entity_type();
        json["variant"] = skeid.variant_byte();
        json["verification"] = verified;
        if (!key_id.empty()) json["keyId"] = key_id;
        if (markers) {
            json["skidHex"] = skid_hex(extract_skid(skeid));
            print_fields(unpack(extract_skid(skeid)), jp);
        }
        std::cout << json.dump() << '\n';
        return 0;
    }
    std::cout << "uuid " << format_uuid(*bytes) << '\n'
              << "  plain markers: " << (markers ? "yes" : "no") << '\n'
              << "  verification:  " << verified
              << (key_id.empty() ? "" : " (key " + key_id + ")") << '\n';
    if (markers) {
        std::cout << "  epoch:      " << int(skeid.epoch_index()) << '\n'
                  << "  entity:     " << int(skeid.entity_type()) << '\n'
                  << "  skid:       " << skid_hex(extract_skid(skeid)) << '\n';
        print_fields(unpack(extract_skid(skeid)), nullptr);
    }
    return 0;
}

int cmd_convert(const std::string& skid_text, std::uint8_t entity, std::uint8_t epoch,
                std::uint8_t variant, const std::string& keyring_path, bool secure_tier) {
    const auto value = parse_int64(skid_text);
    if (!value) {
        std::cerr << "error: --skid expects a 64-bit integer (decimal or 0x hex)\n";
        return kExitConfig;
    }
    const KeyRing ring = load_ring(keyring_path);
    const KeyEntry& key = ring.generation_entry();
    if (secure_tier) {
        SecureCodec codec(key.mac_key, key.aes_key);
        std::cout << codec.to_secure(Skid(*value), epoch, entity).to_string() << '\n';
    } else {
        std::cout << build_skeid(Skid(*value), epoch, entity, variant, key.mac_key).to_string()
                  << '\n';
    }
    return 0;
}

int cmd_parse(const std::string& uuid, const std::string& keyring_path,
              const std::string& format) {
    const auto bytes = parse_uuid(uuid);
    if (!bytes) {
        std::cerr << "error: malformed UUID string\n";
        return kExitConfig;
    }
    const KeyRing ring = load_ring(keyring_path);
    const auto result = ring.parse_with_fallback(*bytes);
    if (format == "json") {
        nlohmann::json json;
        json["valid"] = result.outcome.valid();
        if (result.outcome.valid()) {
            const ParsedSkeid& p = result.outcome.parsed;
            json["tier"] = result.outcome.kind == ParseOutcome::Kind::Secure ? "secure" : "skeid";
            json["secureOrigin"] = p.secure_origin;
            json["epoch"] = p.epoch_index;
            json["entityType"] = p.entity_type;
            json["variant"] = p.variant_byte;
            json["keyId"] = result.key_id;
            json["skidHex"] = skid_hex(p.skid);
            json["skidDecimal"] = p.skid.value();
            print_fields(unpack(p.skid), &json);
        } else {
            json["reason"] = to_string(result.outcome.reason);
        }
        std::cout << json.dump() << '\n';
        return result.outcome.valid() ? 0 : kExitInvalid;
    }
    if (!result.outcome.valid()) {
        std::cout << "invalid: " << to_string(result.outcome.reason) << '\n';
        return kExitInvalid;
    }
    const ParsedSkeid& p = result.outcome.parsed;
    std::cout << "tier:         "
              << (result.outcome.kind == ParseOutcome::Kind::Secure ? "secure" : "skeid") << '\n'
              << "secureOrigin: " << (p.secure_origin ? "true" : "false") << '\n'
              << "epoch:        " << int(p.epoch_index) << '\n'
              << "entityType:   " << int(p.entity_type) << '\n'
              << "variant:      0x" << to_hex({&p.variant_byte, 1}) << '\n'
              << "keyId:        " << result.key_id << '\n'
              << "skid:         " << p.skid.value() << " (" << skid_hex(p.skid) << ")\n";
    print_fields(unpack(p.skid), nullptr);
    return 0;
}

int cmd_bench(bool saturate, const std::string& format) {
    const auto run = [&](bool sat) {
        auto results = run_benchmarks(sat);
        if (format == "json") {
            nlohmann::json json;
            json["mode"] = sat ? "saturated" : "normal";
            for (const auto& r : results) json["means_ns"][r.name] = r.mean_ns;
            std::cout << json.dump() << '\n';
        } else {
            std::printf("%s mode (allocations: n/a, native stack/heap)\n",
                        sat ? "saturated" : "normal");
            for (const auto& r : results)
                std::printf("  %-14s %10.1f ns/op  (%llu ops)\n", r.name.c_str(), r.mean_ns,
                            (unsigned long long)r.ops);
        }
    };
    run(false);
    if (saturate) run(true);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Three-tier sortable identifiers: 64-bit SKIDs, MAC-verified SKEIDs, "
                 "AES-encrypted Secure SKEIDs"};
    app.require_subcommand(1);

    std::string tier = "skid", keyring_path, format = "text", test_clock;
    int appid = 0, instance = 0, entity = 0, epoch = 0, variant = kDefaultVariant;
    std::uint64_t count = 1;
    double freeze_secs = 5.0;
    std::string value_arg, skid_arg, out_path = "keyring.json", key_hex, key_id;
    bool saturate = false;

    auto* gen = app.add_subcommand("gen", "generate identifiers");
    gen->add_option("--tier", tier)->check(CLI::IsMember({"skid", "skeid", "secure"}));
    gen->add_option("--app", appid)->check(CLI::Range(0, 127));
    gen->add_option("--instance", instance)->check(CLI::Range(0, 63));
    gen->add_option("--entity", entity)->check(CLI::Range(0, 255));
    gen->add_option("--epoch", epoch)->check(CLI::Range(0, 255));
    gen->add_option("--count", count);
    gen->add_option("--keyring", keyring_path);
    gen->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
    gen->add_option("--freeze-threshold-secs", freeze_secs);
    gen->add_option("--test-clock", test_clock)->group("");  // hidden

    auto* inspect = app.add_subcommand("inspect", "decode a SKID integer or UUID string");
    inspect->add_option("value", value_arg)->required();
    inspect->add_option("--keyring", keyring_path);
    inspect->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto* skeid_cmd = app.add_subcommand("skeid", "build a plaintext SKEID from a SKID");
    skeid_cmd->add_option("--skid", skid_arg)->required();
    skeid_cmd->add_option("--entity", entity)->check(CLI::Range(0, 255));
    skeid_cmd->add_option("--epoch", epoch)->check(CLI::Range(0, 255));
    skeid_cmd->add_option("--variant", variant)->check(CLI::Range(0x8D, 0xBF));
    skeid_cmd->add_option("--keyring", keyring_path);

    auto* secure_cmd = app.add_subcommand("secure", "build a Secure SKEID from a SKID");
    secure_cmd->add_option("--skid", skid_arg)->required();
    secure_cmd->add_option("--entity", entity)->check(CLI::Range(0, 255));
    secure_cmd->add_option("--epoch", epoch)->check(CLI::Range(0, 255));
    secure_cmd->add_option("--keyring", keyring_path);

    auto* parse = app.add_subcommand("parse", "auto-detect and verify a UUID string");
    parse->add_option("uuid", value_arg)->required();
    parse->add_option("--keyring", keyring_path);
    parse->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto* keygen = app.add_subcommand("keygen", "create a keyring with a fresh random key");
    keygen->add_option("--out", out_path);
    keygen->add_option("--id", key_id);

    auto* rotate = app.add_subcommand("rotate", "prepend a fresh default key to a keyring");
    rotate->add_option("--keyring", keyring_path)->required();
    rotate->add_option("--id", key_id);

    auto* vectors = app.add_subcommand("vectors", "emit deterministic cross-impl test vectors");
    vectors->add_option("--key", key_hex, "master secret, 64 hex chars (default all-zero)");

    auto* bench = app.add_subcommand("bench", "micro-benchmarks over a scripted clock");
    bench->add_flag("--saturate", saturate, "also run at 3x the per-tick sequence cap");
    bench->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (gen->parsed())
            return cmd_gen(tier, std::uint8_t(appid), std::uint8_t(instance), std::uint8_t(entity),
                           std::uint8_t(epoch), count, keyring_path, format,
                           freeze_secs, test_clock);
        if (inspect->parsed()) return cmd_inspect(value_arg, keyring_path, format);
        if (skeid_cmd->parsed())
            return cmd_convert(skid_arg, std::uint8_t(entity), std::uint8_t(epoch),
                               std::uint8_t(variant), keyring_path, false);
        if (secure_cmd->parsed())
            return cmd_convert(skid_arg, std::uint8_t(entity), std::uint8_t(epoch),
                               kDefaultVariant, keyring_path, true);
        if (parse->parsed()) return cmd_parse(value_arg, keyring_path, format);
        if (keygen->parsed()) {
            const std::string id = key_id.empty() ? "k-" + now_rfc3339() : key_id;
            KeyRing::single(id, random_secret(), now_rfc3339()).save_file(out_path);
            std::cout << "wrote " << out_path << " (default key " << id << ")\n";
            return 0;
        }
        if (rotate->parsed()) {
            const KeyRing ring = KeyRing::load_file(keyring_path);
            const std::string id = key_id.empty() ? "k-" + now_rfc3339() : key_id;
            ring.rotate(id, random_secret(), now_rfc3339()).save_file(keyring_path);
            std::cout << "rotated " << keyring_path << " (new default key " << id << ")\n";
            return 0;
        }
        if (vectors->parsed()) {
            Bytes32 secret{};
            if (!key_hex.empty()) {
                const auto parsed_secret = from_hex<32>(key_hex);
                if (!parsed_secret) {
                    std::cerr << "error: --key expects 64 hex characters\n";
                    return kExitConfig;
                }
                secret = *parsed_secret;
            }
            std::cout << emit_vectors(secret);
            return 0;
        }
        if (bench->parsed()) return cmd_bench(saturate, format);
    } catch (const CriticalClockDriftError& e) {
        std::cerr << "critical clock drift: " << e.what() << '\n';
        return kExitCriticalDrift;
    } catch (const CollisionGuardExhaustedError& e) {
        std::cerr << "collision guard exhausted: " << e.what() << '\n';
        return kExitExhausted;
    } catch (const EpochExhaustedError& e) {
        std::cerr << "epoch exhausted: " << e.what() << '\n';
        return kExitExhausted;
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return 0;
}
