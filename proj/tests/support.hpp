#pragma once

// Shared test helpers: a scripted clock and an independent civil-calendar
// oracle (days-from-civil algorithm, no <chrono> calendar dependency).

#include <atomic>
#include <cstdint>
#include <memory>

#include "skidkit/clock.hpp"

namespace testsupport {

struct ManualClock {
    explicit ManualClock(std::int64_t start_ms)
        : now(std::make_shared<std::atomic<std::int64_t>>(start_ms)) {}

    skidkit::ClockFn fn() const {
        auto ptr = now;
        return [ptr]() { return ptr->load(); };
    }

    void set(std::int64_t ms) { now->store(ms); }
    void advance(std::int64_t ms) { now->fetch_add(ms); }
    std::int64_t value() const { return now->load(); }

    std::shared_ptr<std::atomic<std::int64_t>> now;
};

struct CivilDate {
    std::int64_t year;
    unsigned month;
    unsigned day;
    bool operator==(const CivilDate&) const = default;
};

// Proleptic Gregorian conversion (Howard Hinnant's algorithm).
inline CivilDate civil_from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const std::uint64_t doe = std::uint64_t(z - era * 146097);
    const std::uint64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = std::int64_t(yoe) + era * 400;
    const std::uint64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const std::uint64_t mp = (5 * doy + 2) / 153;
    const unsigned d = unsigned(doy - (153 * mp + 2) / 5 + 1);
    const unsigned m = unsigned(mp < 10 ? mp + 3 : mp - 9);
    return CivilDate{y + (m <= 2), m, d};
}

inline CivilDate civil_from_unix_seconds(std::int64_t seconds) {
    std::int64_t days = seconds / 86400;
    if (seconds % 86400 < 0) --days;
    return civil_from_days(days);
}

}  // namespace testsupport
