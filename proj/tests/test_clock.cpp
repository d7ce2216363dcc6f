#include <catch_amalgamated.hpp>

#include <cstdint>
#include <random>

#include "skidkit/clock.hpp"
#include "support.hpp"

using namespace skidkit;
using testsupport::CivilDate;
using testsupport::ManualClock;
using testsupport::civil_from_unix_seconds;

TEST_CASE("epoch 0x00 spans 2025-01-01 to 2093-01-19") {
    const auto [start, end] = epoch_bounds(0x00);
    CHECK(start == 1735689600);
    CHECK(civil_from_unix_seconds(start) == CivilDate{2025, 1, 1});
    CHECK(start % 86400 == 0);
    CHECK(civil_from_unix_seconds(end) == CivilDate{2093, 1, 19});
    // the 2^31-second window lands mid-day: 03:14:08
    CHECK(end % 86400 == 3 * 3600 + 14 * 60 + 8);
}

TEST_CASE("epoch 0xFF covers years 19378 to 19446") {
    const auto [start, end] = epoch_bounds(0xFF);
    CHECK(civil_from_unix_seconds(start).year == 19378);
    CHECK(civil_from_unix_seconds(end).year == 19446);
}

TEST_CASE("epoch windows are contiguous and total about 17421 years") {
    for (int i = 0; i < 255; ++i)
        CHECK(epoch_bounds(std::uint8_t(i)).second == epoch_bounds(std::uint8_t(i + 1)).first);
    const double total_seconds = 256.0 * double(std::int64_t(1) << 31);
    const double years = total_seconds / (365.2425 * 86400.0);
    CHECK(std::abs(years - 17421.0) <= 1.0);
}

TEST_CASE("current_tick decomposes elapsed time into half and timestamp32") {
    const EpochConfig epoch{0};
    const UnixMillis start = epoch.start_unix_millis();

    SECTION("epoch start is tick zero, first half") {
        TickState state;
        const TickStamp stamp = current_tick(start, epoch, state);
        CHECK(stamp.half == EpochHalf::First);
        CHECK(stamp.timestamp32 == 0);
        CHECK(stamp.ticks == 0);
    }

    SECTION("100,000,000 s in is tick 400,000,000, still first half") {
        TickState state;
        const TickStamp stamp = current_tick(start + 100'000'000'000, epoch, state);
        CHECK(stamp.half == EpochHalf::First);
        CHECK(stamp.timestamp32 == 400'000'000u);
    }

    SECTION("tick 2^32 crosses into the second half with timestamp 0") {
        TickState state;
        const UnixMillis half_ms = start + (std::int64_t(1) << 32) * kTickMillis;
        const TickStamp stamp = current_tick(half_ms, epoch, state);
        CHECK(stamp.half == EpochHalf::Second);
        CHECK(stamp.timestamp32 == 0);
        CHECK(stamp.ticks == kTicksPerHalf);
        // one tick before the boundary is still the first half
        TickState fresh;
        const TickStamp before = current_tick(half_ms - kTickMillis, epoch, fresh);
        CHECK(before.half == EpochHalf::First);
        CHECK(before.timestamp32 == 0xFFFFFFFFu);
    }

    SECTION("past the 2^33 tick range the epoch is exhausted") {
        TickState state;
        const UnixMillis end_ms = start + std::int64_t(EpochConfig::kWindowSeconds) * 1000;
        CHECK_THROWS_AS(current_tick(end_ms, epoch, state), EpochExhaustedError);
    }

    SECTION("before the epoch start the clock is rejected") {
        TickState state;
        CHECK_THROWS_AS(current_tick(start - 1, epoch, state), EpochNotStartedError);
    }
}

TEST_CASE("decompose_ticks round-trips random elapsed tick counts") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 100000; ++i) {
        const std::uint64_t ticks = rng() & (kTicksPerEpoch - 1);
        const TickStamp stamp = decompose_ticks(ticks);
        const std::uint64_t rebuilt =
            (stamp.half == EpochHalf::Second ? kTicksPerHalf : 0) + stamp.timestamp32;
        CHECK(rebuilt == ticks);
    }
}

TEST_CASE("drift verdicts follow the dual threshold") {
    const EpochConfig epoch{0};
    const UnixMillis start = epoch.start_unix_millis();
    TickState state;
    state.last_observed_tick.store(4000);  // last observation at start + 1000 s
    const UnixMillis last = start + 4000 * kTickMillis;

    CHECK(observe_drift(last, epoch, state) == DriftVerdict::Proceed);
    CHECK(observe_drift(last + 250, epoch, state) == DriftVerdict::Proceed);
    CHECK(observe_drift(last - 2000, epoch, state) == DriftVerdict::Frozen);
    CHECK(observe_drift(last - 5000, epoch, state) == DriftVerdict::Frozen);  // boundary inclusive
    CHECK(observe_drift(last - 5001, epoch, state) == DriftVerdict::Critical);
    CHECK(observe_drift(last - 10000, epoch, state) == DriftVerdict::Critical);
}

TEST_CASE("frozen state holds the last tick until the clock catches up") {
    const EpochConfig epoch{0};
    const UnixMillis start = epoch.start_unix_millis();
    ManualClock clock(start + 4000 * kTickMillis);
    TickSource source(epoch, clock.fn());

    auto obs = source.observe();
    CHECK(obs.verdict == DriftVerdict::Proceed);
    CHECK(obs.stamp.ticks == 4000);

    clock.advance(-2000);  // within the freeze threshold
    obs = source.observe();
    CHECK(obs.verdict == DriftVerdict::Frozen);
    CHECK(obs.stamp.ticks == 4000);  // tick held, not regressed

    clock.advance(-500);  // still frozen, still held
    obs = source.observe();
    CHECK(obs.verdict == DriftVerdict::Frozen);
    CHECK(obs.stamp.ticks == 4000);

    clock.set(start + 4001 * kTickMillis);  // caught up
    obs = source.observe();
    CHECK(obs.verdict == DriftVerdict::Proceed);
    CHECK(obs.stamp.ticks == 4001);
}

TEST_CASE("critical drift raises through the tick source") {
    const EpochConfig epoch{0};
    const UnixMillis start = epoch.start_unix_millis();
    ManualClock clock(start + 4000 * kTickMillis);
    TickSource source(epoch, clock.fn());
    (void)source.observe();

    clock.advance(-10000);
    CHECK_THROWS_AS(source.observe(), CriticalClockDriftError);
}

TEST_CASE("custom freeze threshold widens the frozen band") {
    const EpochConfig epoch{0};
    const UnixMillis start = epoch.start_unix_millis();
    ManualClock clock(start + 4000 * kTickMillis);
    TickSource source(epoch, clock.fn(), /*freeze_threshold_millis=*/20000);
    (void)source.observe();

    clock.advance(-10000);
    CHECK(source.observe().verdict == DriftVerdict::Frozen);
}

TEST_CASE("observed ticks never move backwards within the threshold") {
    const EpochConfig epoch{0};
    const UnixMillis start = epoch.start_unix_millis();
    ManualClock clock(start);
    TickSource source(epoch, clock.fn());

    std::mt19937_64 rng(7);
    std::uint64_t last = 0;
    std::int64_t now = 0;
    std::int64_t high_water = 0;
    for (int i = 0; i < 10000; ++i) {
        // wobble between -4 s and +6 s, net forward, never more than
        // 4 s behind the furthest point seen (stays inside the freeze band)
        now += std::int64_t(rng() % 10001) - 4000;
        if (now < high_water - 4000) now = high_water - 4000;
        if (now < 0) now = 0;
        if (now > high_water) high_water = now;
        clock.set(start + now);
        const auto obs = source.observe();
        CHECK(obs.stamp.ticks >= last);
        last = obs.stamp.ticks;
    }
}
