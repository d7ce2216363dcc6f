#pragma once

// Per-entity-type, per-instance sequence counter scoped to one 250 ms
// tick. Lock-free: the whole scope is a single 64-bit word holding
// (tick << 19 | issued-count), advanced with CAS.

#include <atomic>
#include <cstdint>
#include <optional>

#include "skidkit/errors.hpp"

namespace skidkit {

inline constexpr std::uint32_t kSequenceBits = 18;
inline constexpr std::uint32_t kMaxSequence = (std::uint32_t(1) << kSequenceBits) - 1;
inline constexpr std::uint32_t kSequencesPerTick = std::uint32_t(1) << kSequenceBits;

class SequenceScope {
public:
    /// Issues the next sequence value for `tick`, or nullopt when the
    /// 2^18 per-tick space is spent (backpressure: wait for the next
    /// tick and retry). Linearizable; concurrent callers never receive
    /// duplicates. Throws TickRegressionError when `tick` precedes the
    /// scope's current tick.
    std::optional<std::uint32_t> try_next(std::uint64_t tick) {
        std::uint64_t cur = state_.load(std::memory_order_relaxed);
        for (;;) {
            const std::uint64_t cur_tick = cur >> kCountBits;
            const std::uint64_t issued = cur & kCountMask;
            if (tick < cur_tick)
                throw TickRegressionError("sequence tick moved backwards");
            if (tick > cur_tick) {
                // new tick: counter resets, first value is 0
                const std::uint64_t next = (tick << kCountBits) | 1;
                if (state_.compare_exchange_weak(cur, next, std::memory_order_acq_rel))
                    return 0;
                continue;
            }
            if (issued > kMaxSequence) return std::nullopt;
            if (state_.compare_exchange_weak(cur, cur + 1, std::memory_order_acq_rel))
                return std::uint32_t(issued);
        }
    }

    std::uint64_t current_tick() const {
        return state_.load(std::memory_order_acquire) >> kCountBits;
    }

private:
    // issued-count needs 19 bits so the exhausted state (2^18) is
    // representable; tick occupies the upper bits (33 needed, 45 free)
    static constexpr std::uint32_t kCountBits = kSequenceBits + 1;
    static constexpr std::uint64_t kCountMask = (std::uint64_t(1) << kCountBits) - 1;

    std::atomic<std::uint64_t> state_{0};
};

/// Blocking flavor: re-reads the tick via `tick_fn` and retries with
/// `wait_fn` between attempts until a value is issued.
template <typename TickFn, typename WaitFn>
std::uint32_t next_sequence_blocking(SequenceScope& scope, TickFn&& tick_fn, WaitFn&& wait_fn) {
    for (;;) {
        if (auto seq = scope.try_next(tick_fn())) return *seq;
        wait_fn();
    }
}

}  // namespace skidkit
