#pragma once

// Portable BLAKE3 (hash, keyed hash, and derive-key modes) with fixed
// 32-byte output. Follows the tree structure from the BLAKE3 paper; no
// SIMD, which is plenty for the short inputs this library hashes.

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <span>
#include <string_view>

#include "skidkit/bytes.hpp"

namespace skidkit::blake3 {

namespace detail {

inline constexpr std::size_t kBlockLen = 64;
inline constexpr std::size_t kChunkLen = 1024;

inline constexpr std::uint32_t kIv[8] = {
    0x6A09E667, 0xBB67AE85, 0x3C6EF372, 0xA54FF53A,
    0x510E527F, 0x9B05688C, 0x1F83D9AB, 0x5BE0CD19,
};

inline constexpr std::size_t kMsgPermutation[16] = {
    2, 6, 3, 10, 7, 0, 4, 13, 1, 11, 12, 5, 9, 14, 15, 8,
};

enum Flag : std::uint32_t {
    kChunkStart = 1 << 0,
    kChunkEnd = 1 << 1,
    kParent = 1 << 2,
    kRoot = 1 << 3,
    kKeyedHash = 1 << 4,
    kDeriveKeyContext = 1 << 5,
    kDeriveKeyMaterial = 1 << 6,
};

inline void g(std::uint32_t* state, std::size_t a, std::size_t b, std::size_t c,
              std::size_t d, std::uint32_t mx, std::uint32_t my) {
    state[a] = state[a] + state[b] + mx;
    state[d] = std::rotr(state[d] ^ state[a], 16);
    state[c] = state[c] + state[d];
    state[b] = std::rotr(state[b] ^ state[c], 12);
    state[a] = state[a] + state[b] + my;
    state[d] = std::rotr(state[d] ^ state[a], 8);
    state[c] = state[c] + state[d];
    state[b] = std::rotr(state[b] ^ state[c], 7);
}

inline void round_fn(std::uint32_t* state, const std::uint32_t* m) {
    g(state, 0, 4, 8, 12, m[0], m[1]);
    g(state, 1, 5, 9, 13, m[2], m[3]);
    g(state, 2, 6, 10, 14, m[4], m[5]);
    g(state, 3, 7, 11, 15, m[6], m[7]);
    g(state, 0, 5, 10, 15, m[8], m[9]);
    g(state, 1, 6, 11, 12, m[10], m[11]);
    g(state, 2, 7, 8, 13, m[12], m[13]);
    g(state, 3, 4, 9, 14, m[14], m[15]);
}

inline void compress(const std::uint32_t cv[8], const std::uint32_t block_words[16],
                     std::uint64_t counter, std::uint32_t block_len, std::uint32_t flags,
                     std::uint32_t out[16]) {
    std::uint32_t state[16] = {
        cv[0], cv[1], cv[2], cv[3],
        cv[4], cv[5], cv[6], cv[7],
        kIv[0], kIv[1], kIv[2], kIv[3],
        std::uint32_t(counter), std::uint32_t(counter >> 32), block_len, flags,
    };
    std::uint32_t block[16];
    std::memcpy(block, block_words, sizeof(block));
    for (int r = 0; r < 7; ++r) {
        round_fn(state, block);
        if (r < 6) {
            std::uint32_t permuted[16];
            for (std::size_t i = 0; i < 16; ++i) permuted[i] = block[kMsgPermutation[i]];
            std::memcpy(block, permuted, sizeof(block));
        }
    }
    for (std::size_t i = 0; i < 8; ++i) {
        state[i] ^= state[i + 8];
        state[i + 8] ^= cv[i];
    }
    std::memcpy(out, state, 16 * sizeof(std::uint32_t));
}

inline void words_from_le_bytes(const std::uint8_t* bytes, std::size_t n_words,
                                std::uint32_t* words) {
    for (std::size_t i = 0; i < n_words; ++i) {
        const std::uint8_t* p = bytes + 4 * i;
        words[i] = std::uint32_t(p[0]) | (std::uint32_t(p[1]) << 8) |
                   (std::uint32_t(p[2]) << 16) | (std::uint32_t(p[3]) << 24);
    }
}

// Deferred compression of the final node so the root flag can be applied.
struct Output {
    std::uint32_t input_cv[8];
    std::uint32_t block_words[16];
    std::uint64_t counter;
    std::uint32_t block_len;
    std::uint32_t flags;

    void chaining_value(std::uint32_t out[8]) const {
        std::uint32_t wide[16];
        compress(input_cv, block_words, counter, block_len, flags, wide);
        std::memcpy(out, wide, 8 * sizeof(std::uint32_t));
    }

    Bytes32 root_bytes() const {
        std::uint32_t wide[16];
        compress(input_cv, block_words, 0, block_len, flags | kRoot, wide);
        Bytes32 out;
        for (std::size_t i = 0; i < 8; ++i) {
            out[4 * i + 0] = std::uint8_t(wide[i]);
            out[4 * i + 1] = std::uint8_t(wide[i] >> 8);
            out[4 * i + 2] = std::uint8_t(wide[i] >> 16);
            out[4 * i + 3] = std::uint8_t(wide[i] >> 24);
        }
        return out;
    }
};

struct ChunkState {
    std::uint32_t cv[8];
    std::uint64_t chunk_counter = 0;
    std::uint8_t block[kBlockLen] = {};
    std::uint8_t block_len = 0;
    std::uint8_t blocks_compressed = 0;
    std::uint32_t flags = 0;

    void reset(const std::uint32_t key_words[8], std::uint64_t counter) {
        std::memcpy(cv, key_words, sizeof(cv));
        chunk_counter = counter;
        block_len = 0;
        blocks_compressed = 0;
        std::memset(block, 0, sizeof(block));
    }

    std::size_t len() const {
        return kBlockLen * blocks_compressed + block_len;
    }

    std::uint32_t start_flag() const {
        return blocks_compressed == 0 ? std::uint32_t(kChunkStart) : 0;
    }

    void update(const std::uint8_t* input, std::size_t input_len) {
        while (input_len > 0) {
            if (block_len == kBlockLen) {
                std::uint32_t block_words[16];
                words_from_le_bytes(block, 16, block_words);
                std::uint32_t out[16];
                compress(cv, block_words, chunk_counter, kBlockLen, flags | start_flag(), out);
                std::memcpy(cv, out, sizeof(cv));
                ++blocks_compressed;
                block_len = 0;
                std::memset(block, 0, sizeof(block));
            }
            std::size_t take = std::min(std::size_t(kBlockLen - block_len), input_len);
            std::memcpy(block + block_len, input, take);
            block_len = std::uint8_t(block_len + take);
            input += take;
            input_len -= take;
        }
    }

    Output output() const {
        Output out;
        std::memcpy(out.input_cv, cv, sizeof(cv));
        words_from_le_bytes(block, 16, out.block_words);
        out.counter = chunk_counter;
        out.block_len = block_len;
        out.flags = flags | start_flag() | kChunkEnd;
        return out;
    }
};

inline Output parent_output(const std::uint32_t left_cv[8], const std::uint32_t right_cv[8],
                            const std::uint32_t key_words[8], std::uint32_t flags) {
    Output out;
    std::memcpy(out.input_cv, key_words, 8 * sizeof(std::uint32_t));
    std::memcpy(out.block_words, left_cv, 8 * sizeof(std::uint32_t));
    std::memcpy(out.block_words + 8, right_cv, 8 * sizeof(std::uint32_t));
    out.counter = 0;
    out.block_len = kBlockLen;
    out.flags = kParent | flags;
    return out;
}

class Hasher {
public:
    Hasher() { init(kIv, 0); }

    explicit Hasher(const Bytes32& key, std::uint32_t flags = kKeyedHash) {
        std::uint32_t key_words[8];
        words_from_le_bytes(key.data(), 8, key_words);
        init(key_words, flags);
    }

    static Hasher for_derive_key_context() {
        Hasher h;
        h.init(kIv, kDeriveKeyContext);
        return h;
    }

    void update(std::span<const std::uint8_t> input) {
        const std::uint8_t* data = input.data();
        std::size_t len = input.size();
        while (len > 0) {
            if (chunk_.len() == kChunkLen) {
                std::uint32_t chunk_cv[8];
                chunk_.output().chaining_value(chunk_cv);
                std::uint64_t total_chunks = chunk_.chunk_counter + 1;
                add_chunk_chaining_value(chunk_cv, total_chunks);
                chunk_.reset(key_words_, total_chunks);
            }
            std::size_t want = kChunkLen - chunk_.len();
            std::size_t take = std::min(want, len);
            chunk_.update(data, take);
            data += take;
            len -= take;
        }
    }

    Bytes32 finalize() const {
        Output out = chunk_.output();
        for (std::size_t remaining = stack_len_; remaining > 0; --remaining) {
            std::uint32_t right_cv[8];
            out.chaining_value(right_cv);
            out = parent_output(cv_stack_[remaining - 1].data(), right_cv, key_words_, flags_);
        }
        return out.root_bytes();
    }

private:
    void init(const std::uint32_t key_words[8], std::uint32_t flags) {
        std::memcpy(key_words_, key_words, sizeof(key_words_));
        flags_ = flags;
        stack_len_ = 0;
        chunk_.flags = flags;
        chunk_.reset(key_words_, 0);
    }

    void add_chunk_chaining_value(std::uint32_t new_cv[8], std::uint64_t total_chunks) {
        // Merge completed subtrees; one trailing zero bit in total_chunks
        // per stack entry to pop.
        while ((total_chunks & 1) == 0) {
            std::uint32_t parent_cv[8];
            parent_output(cv_stack_[stack_len_ - 1].data(), new_cv, key_words_, flags_)
                .chaining_value(parent_cv);
            --stack_len_;
            std::memcpy(new_cv, parent_cv, sizeof(parent_cv));
            total_chunks >>= 1;
        }
        std::memcpy(cv_stack_[stack_len_].data(), new_cv, 8 * sizeof(std::uint32_t));
        ++stack_len_;
    }

    std::uint32_t key_words_[8];
    std::uint32_t flags_ = 0;
    ChunkState chunk_;
    std::array<std::array<std::uint32_t, 8>, 54> cv_stack_;
    std::size_t stack_len_ = 0;
};

}  // namespace detail

inline Bytes32 hash(std::span<const std::uint8_t> input) {
    detail::Hasher h;
    h.update(input);
    return h.finalize();
}

inline Bytes32 keyed_hash(const Bytes32& key, std::span<const std::uint8_t> input) {
    detail::Hasher h(key);
    h.update(input);
    return h.finalize();
}

inline Bytes32 derive_key(std::string_view context, std::span<const std::uint8_t> material) {
    detail::Hasher context_hasher = detail::Hasher::for_derive_key_context();
    context_hasher.update({reinterpret_cast<const std::uint8_t*>(context.data()), context.size()});
    Bytes32 context_key = context_hasher.finalize();
    detail::Hasher h(context_key, detail::kDeriveKeyMaterial);
    h.update(material);
    return h.finalize();
}

}  // namespace skidkit::blake3
