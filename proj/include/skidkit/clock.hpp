#pragma once

// Epoch-relative 250 ms tick clock with dual-threshold clock-drift
// protection. The wall clock is injectable so drift scenarios and tick
// saturation are testable with a scripted clock.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <utility>

#include "skidkit/errors.hpp"

namespace skidkit {

/// Milliseconds since the Unix epoch (UTC, leap-second-free civil time).
using UnixMillis = std::int64_t;

using ClockFn = std::function<UnixMillis()>;

inline UnixMillis system_clock_now() {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::system_clock::now().time_since_epoch())
        .count();
}

inline constexpr std::int64_t kTickMillis = 250;
inline constexpr std::uint64_t kTicksPerEpoch = std::uint64_t(1) << 33;
inline constexpr std::uint64_t kTicksPerHalf = std::uint64_t(1) << 32;

struct EpochConfig {
    std::uint8_t epoch_index = 0;

    /// 2025-01-01T00:00:00Z.
    static constexpr std::int64_t kBaseUnixSeconds = 1735689600;
    static constexpr std::int64_t kWindowSeconds = std::int64_t(1) << 31;

    std::int64_t start_unix_seconds() const {
        return kBaseUnixSeconds + std::int64_t(epoch_index) * kWindowSeconds;
    }

    std::int64_t end_unix_seconds() const { return start_unix_seconds() + kWindowSeconds; }

    UnixMillis start_unix_millis() const { return start_unix_seconds() * 1000; }
};

/// Start and end instants (Unix seconds) of one 2^31-second epoch window.
inline std::pair<std::int64_t, std::int64_t> epoch_bounds(std::uint8_t epoch_index) {
    EpochConfig cfg{epoch_index};
    return {cfg.start_unix_seconds(), cfg.end_unix_seconds()};
}

enum class EpochHalf { First, Second };

struct TickStamp {
    EpochHalf half;
    std::uint32_t timestamp32;
    std::uint64_t ticks;  // full 33-bit elapsed tick count
};

inline TickStamp decompose_ticks(std::uint64_t elapsed_ticks) {
    return TickStamp{
        elapsed_ticks < kTicksPerHalf ? EpochHalf::First : EpochHalf::Second,
        std::uint32_t(elapsed_ticks & 0xFFFFFFFFu),
        elapsed_ticks,
    };
}

enum class DriftVerdict { Proceed, Frozen, Critical };

struct TickState {
    std::atomic<std::uint64_t> last_observed_tick{0};
    std::atomic<bool> frozen{false};
    std::int64_t freeze_threshold_millis = 5000;
};

/// Classifies the wall clock against the last observed tick. Frozen holds
/// the tick constant until the wall clock catches up; Critical is a
/// verdict, not an exception, so the embedding process decides how to
/// shut down.
inline DriftVerdict observe_drift(UnixMillis now, const EpochConfig& epoch, TickState& state) {
    const UnixMillis last_ms =
        epoch.start_unix_millis() +
        std::int64_t(state.last_observed_tick.load(std::memory_order_acquire)) * kTickMillis;
    if (now >= last_ms) {
        state.frozen.store(false, std::memory_order_release);
        return DriftVerdict::Proceed;
    }
    const std::int64_t backward_jump = last_ms - now;
    if (backward_jump <= state.freeze_threshold_millis) {
        state.frozen.store(true, std::memory_order_release);
        return DriftVerdict::Frozen;
    }
    return DriftVerdict::Critical;
}

/// Current epoch half and 32-bit timestamp. Never moves backwards: the
/// observed tick is the max of the wall-clock tick and every tick seen
/// before (the frozen state simply re-reads that max).
inline TickStamp current_tick(UnixMillis now, const EpochConfig& epoch, TickState& state) {
    std::uint64_t ticks;
    if (state.frozen.load(std::memory_order_acquire)) {
        ticks = state.last_observed_tick.load(std::memory_order_acquire);
    } else {
        const std::int64_t elapsed_ms = now - epoch.start_unix_millis();
        if (elapsed_ms < 0) throw EpochNotStartedError("wall clock precedes epoch start");
        ticks = std::uint64_t(elapsed_ms / kTickMillis);
        // fetch-max keeps the tick monotone under concurrent readers
        std::uint64_t prev = state.last_observed_tick.load(std::memory_order_relaxed);
        while (prev < ticks &&
               !state.last_observed_tick.compare_exchange_weak(prev, ticks,
                                                               std::memory_order_acq_rel)) {
        }
        if (prev > ticks) ticks = prev;
    }
    if (ticks >= kTicksPerEpoch) throw EpochExhaustedError("elapsed ticks exceed epoch range");
    return decompose_ticks(ticks);
}

/// Convenience wrapper binding an epoch, a drift state, and a clock.
class TickSource {
public:
    TickSource(EpochConfig epoch, ClockFn clock = system_clock_now,
               std::int64_t freeze_threshold_millis = 5000)
        : epoch_(epoch), clock_(std::move(clock)) {
        state_.freeze_threshold_millis = freeze_threshold_millis;
    }

    struct Observation {
        DriftVerdict verdict;
        TickStamp stamp;
    };

    /// Drift check plus tick read in one call. Throws
    /// CriticalClockDriftError on a Critical verdict.
    Observation observe() {
        const UnixMillis now = clock_();
        const DriftVerdict verdict = observe_drift(now, epoch_, state_);
        if (verdict == DriftVerdict::Critical)
            throw CriticalClockDriftError("backward clock jump beyond freeze threshold");
        return Observation{verdict, current_tick(now, epoch_, state_)};
    }

    DriftVerdict check_drift() { return observe_drift(clock_(), epoch_, state_); }

    const EpochConfig& epoch() const { return epoch_; }
    TickState& state() { return state_; }

private:
    EpochConfig epoch_;
    ClockFn clock_;
    TickState state_;
};

}  // namespace skidkit
