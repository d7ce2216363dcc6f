#pragma once

// Single-block AES-256, no padding, no IV. The whole identifier fits in
// one 16-byte block, so this is raw ECB of exactly one block. Backed by
// OpenSSL EVP.

#include <memory>
#include <stdexcept>

#include <openssl/evp.h>

#include "skidkit/bytes.hpp"

namespace skidkit {

class Aes256Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Aes256 {
public:
    explicit Aes256(const Bytes32& key) : key_(key) {}

    Bytes16 encrypt_block(const Bytes16& plaintext) const {
        return transform(plaintext, /*encrypt=*/true);
    }

    Bytes16 decrypt_block(const Bytes16& ciphertext) const {
        return transform(ciphertext, /*encrypt=*/false);
    }

private:
    Bytes16 transform(const Bytes16& input, bool encrypt) const {
        struct CtxDeleter {
            void operator()(EVP_CIPHER_CTX* ctx) const { EVP_CIPHER_CTX_free(ctx); }
        };
        std::unique_ptr<EVP_CIPHER_CTX, CtxDeleter> ctx(EVP_CIPHER_CTX_new());
        if (!ctx) throw Aes256Error("EVP_CIPHER_CTX_new failed");
        if (EVP_CipherInit_ex(ctx.get(), EVP_aes_256_ecb(), nullptr, key_.data(), nullptr,
                              encrypt ? 1 : 0) != 1)
            throw Aes256Error("EVP_CipherInit_ex failed");
        EVP_CIPHER_CTX_set_padding(ctx.get(), 0);
        Bytes16 out;
        int out_len = 0;
        if (EVP_CipherUpdate(ctx.get(), out.data(), &out_len, input.data(),
                             int(input.size())) != 1 ||
            out_len != int(out.size()))
            throw Aes256Error("EVP_CipherUpdate failed");
        int final_len = 0;
        std::uint8_t tail[16];
        if (EVP_CipherFinal_ex(ctx.get(), tail, &final_len) != 1 || final_len != 0)
            throw Aes256Error("EVP_CipherFinal_ex failed");
        return out;
    }

    Bytes32 key_;
};

}  // namespace skidkit
