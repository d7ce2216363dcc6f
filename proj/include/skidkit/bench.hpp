#pragma once

// In-process micro-benchmarks over a scripted clock. The clock advances
// one tick per fixed number of reads, so the non-saturated profile never
// trips backpressure while the saturated profile (3x the per-tick cap)
// spends two-thirds of its generation calls waiting.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "skidkit/keyring.hpp"
#include "skidkit/secure.hpp"
#include "skidkit/skid.hpp"

namespace skidkit {

struct BenchResult {
    std::string name;
    double mean_ns = 0.0;
    std::uint64_t ops = 0;
};

namespace detail {

// fn must return a byte derived from its result so the work cannot be
// optimized away
template <typename Fn>
BenchResult time_loop(std::string name, std::uint64_t ops, Fn&& fn) {
    using Clock = std::chrono::steady_clock;
    std::uint8_t acc = 0;
    const auto start = Clock::now();
    for (std::uint64_t i = 0; i < ops; ++i) acc ^= fn();
    const auto elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(
        Clock::now() - start);
    static volatile std::uint8_t sink;
    sink = acc;
    return BenchResult{std::move(name), double(elapsed.count()) / double(ops), ops};
}

// Best-of-segments flavor for stateless parse/convert benches: the
// fastest segment wins, filtering scheduler and frequency-scaling noise.
// Not used for generation benches, where tick state must span the run.
template <typename Fn>
BenchResult time_loop_best(std::string name, std::uint64_t ops, Fn&& fn) {
    constexpr std::uint64_t kSegments = 8;
    const std::uint64_t per_segment = ops / kSegments;
    double best_mean = 0.0;
    std::uint64_t total = 0;
    for (std::uint64_t s = 0; s < kSegments; ++s) {
        const BenchResult segment = time_loop(name, per_segment, fn);
        if (s == 0 || segment.mean_ns < best_mean) best_mean = segment.mean_ns;
        total += segment.ops;
    }
    return BenchResult{std::move(name), best_mean, total};
}

}  // namespace detail

/// Runs all benches and returns mean ns/op per operation. `saturate`
/// switches generation benches to 3x the per-tick sequence cap;
/// parse/convert benches never generate and are unaffected.
inline std::vector<BenchResult> run_benchmarks(bool saturate, const Bytes32& master_secret = {}) {
    auto [mac_key, aes_key] = derive_keys(master_secret);
    SecureCodec codec(mac_key, aes_key);

    // scripted clock: one 250 ms tick per `reads_per_tick` clock reads
    const std::uint64_t reads_per_tick = saturate ? kSequencesPerTick * 3 : kSequencesPerTick;
    auto reads = std::make_shared<std::atomic<std::uint64_t>>(0);
    const std::int64_t epoch_start = EpochConfig{}.start_unix_millis();
    ClockFn clock = [reads, reads_per_tick, epoch_start]() {
        const std::uint64_t n = reads->fetch_add(1, std::memory_order_relaxed);
        return epoch_start + std::int64_t(n / reads_per_tick) * kTickMillis;
    };
    // backpressure wait burns a little real time before the retry
    SkidGenerator::WaitFn wait = [] {
        const auto until = std::chrono::steady_clock::now() + std::chrono::microseconds(2);
        while (std::chrono::steady_clock::now() < until) {
        }
    };
    SkidGenerator generator({0, 18, 1}, clock, 5000, wait);

    const std::uint64_t gen_ops = saturate ? kSequencesPerTick * 3 : kSequencesPerTick;
    std::vector<BenchResult> results;
    results.push_back(detail::time_loop("skid_gen", gen_ops, [&] {
        return std::uint8_t(generator.next(10).bits());
    }));

    SkidGenerator skeid_gen({0, 18, 1}, clock, 5000, wait);
    results.push_back(detail::time_loop("skeid_gen", gen_ops, [&] {
        return build_skeid(skeid_gen.next(10), 0, 10, mac_key).bytes()[15];
    }));

    SkidGenerator secure_gen({0, 18, 1}, clock, 5000, wait);
    results.push_back(detail::time_loop("secure_gen", gen_ops, [&] {
        return codec.to_secure(secure_gen.next(10), 0, 10).bytes()[15];
    }));

    // parse/convert fixtures generated outside the timed loops
    const Skid fixed_skid(std::int64_t(0x8BEBC20012040005ull));
    const Skeid plain = build_skeid(fixed_skid, 0, 10, mac_key);
    const SecureSkeid secure = codec.to_secure(fixed_skid, 0, 10);
    const std::uint64_t parse_ops = 1 << 16;

    results.push_back(detail::time_loop_best("parse_plain", parse_ops, [&] {
        return std::uint8_t(codec.parse_auto(plain.bytes()).parsed.entity_type);
    }));
    results.push_back(detail::time_loop_best("parse_secure", parse_ops, [&] {
        return std::uint8_t(codec.parse_auto(secure.bytes()).parsed.entity_type);
    }));
    results.push_back(detail::time_loop_best("to_plain", parse_ops, [&] {
        return std::uint8_t(codec.to_plain(secure).parsed.entity_type);
    }));
    results.push_back(detail::time_loop_best("to_secure", parse_ops, [&] {
        return codec.to_secure(fixed_skid, 0, 10).bytes()[15];
    }));
    return results;
}

}  // namespace skidkit
