#pragma once

// 64-bit SKID: sign/epoch-half bit, 32-bit tick timestamp, 7-bit app id,
// 6-bit instance id, 18-bit sequence. Signed ordering equals
// chronological ordering because the first epoch half is negative.

#include <array>
#include <chrono>
#include <compare>
#include <cstdint>
#include <thread>

#include "skidkit/clock.hpp"
#include "skidkit/errors.hpp"
#include "skidkit/sequence.hpp"

namespace skidkit {

inline constexpr std::uint32_t kMaxAppId = 127;
inline constexpr std::uint32_t kMaxAppInstanceId = 63;

struct SkidFields {
    bool first_half = false;  // sign bit set when true
    std::uint32_t timestamp32 = 0;
    std::uint8_t app_id = 0;
    std::uint8_t app_instance_id = 0;
    std::uint32_t sequence_id = 0;

    bool operator==(const SkidFields&) const = default;
};

class Skid {
public:
    Skid() = default;
    explicit constexpr Skid(std::int64_t value) : value_(value) {}

    constexpr std::int64_t value() const { return value_; }
    constexpr std::uint64_t bits() const { return std::uint64_t(value_); }

    auto operator<=>(const Skid&) const = default;

private:
    std::int64_t value_ = 0;
};

/// Bit layout: [63]=sign, [62..31]=timestamp, [30..24]=app id,
/// [23..18]=instance id, [17..0]=sequence. Validation precedes assembly
/// so out-of-range topology can never bleed into neighboring fields.
inline Skid pack(const SkidFields& fields) {
    if (fields.app_id > kMaxAppId)
        throw FieldOutOfRangeError("appId", fields.app_id);
    if (fields.app_instance_id > kMaxAppInstanceId)
        throw FieldOutOfRangeError("appInstanceId", fields.app_instance_id);
    if (fields.sequence_id > kMaxSequence)
        throw FieldOutOfRangeError("sequenceId", fields.sequence_id);
    std::uint64_t bits = 0;
    if (fields.first_half) bits |= std::uint64_t(1) << 63;
    bits |= std::uint64_t(fields.timestamp32) << 31;
    bits |= std::uint64_t(fields.app_id) << 24;
    bits |= std::uint64_t(fields.app_instance_id) << 18;
    bits |= std::uint64_t(fields.sequence_id);
    return Skid(std::int64_t(bits));
}

inline SkidFields unpack(Skid skid) {
    const std::uint64_t bits = skid.bits();
    SkidFields fields;
    fields.first_half = (bits >> 63) != 0;
    fields.timestamp32 = std::uint32_t((bits >> 31) & 0xFFFFFFFFu);
    fields.app_id = std::uint8_t((bits >> 24) & 0x7Fu);
    fields.app_instance_id = std::uint8_t((bits >> 18) & 0x3Fu);
    fields.sequence_id = std::uint32_t(bits & 0x3FFFFu);
    return fields;
}

struct GeneratorIdentity {
    std::uint8_t epoch_index = 0;
    std::uint8_t app_id = 0;
    std::uint8_t app_instance_id = 0;
};

/// One generator slot in the topology: an epoch, an (app, instance)
/// pair, and an independent sequence scope per entity type.
class SkidGenerator {
public:
    using WaitFn = std::function<void()>;

    SkidGenerator(GeneratorIdentity identity, ClockFn clock = system_clock_now,
                  std::int64_t freeze_threshold_millis = 5000,
                  WaitFn wait = default_wait)
        : identity_(identity),
          ticks_(EpochConfig{identity.epoch_index}, std::move(clock), freeze_threshold_millis),
          wait_(std::move(wait)) {
        if (identity.app_id > kMaxAppId)
            throw FieldOutOfRangeError("appId", identity.app_id);
        if (identity.app_instance_id > kMaxAppInstanceId)
            throw FieldOutOfRangeError("appInstanceId", identity.app_instance_id);
    }

    /// Non-blocking: nullopt signals backpressure (per-tick sequence
    /// space spent). Throws CriticalClockDriftError / EpochExhaustedError.
    std::optional<Skid> try_next(std::uint8_t entity_type) {
        const auto obs = ticks_.observe();
        const auto seq = scopes_[entity_type].try_next(obs.stamp.ticks);
        if (!seq) return std::nullopt;
        return pack({obs.stamp.half == EpochHalf::First, obs.stamp.timestamp32,
                     identity_.app_id, identity_.app_instance_id, *seq});
    }

    /// Blocking: waits out backpressure until the tick advances.
    Skid next(std::uint8_t entity_type) {
        for (;;) {
            if (auto skid = try_next(entity_type)) return *skid;
            wait_();
        }
    }

    const GeneratorIdentity& identity() const { return identity_; }
    TickSource& ticks() { return ticks_; }

private:
    static void default_wait() {
        std::this_thread::sleep_for(std::chrono::milliseconds(1));
    }

    GeneratorIdentity identity_;
    TickSource ticks_;
    std::array<SequenceScope, 256> scopes_;
    WaitFn wait_;
};

}  // namespace skidkit
