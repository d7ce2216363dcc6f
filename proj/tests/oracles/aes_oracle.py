#!/usr/bin/env python3
"""Appends the AES-256 single-block ciphertext column to the plaintext
vector lines produced by blake3_oracle, using the independently derived
AES key. Also checks the FIPS-197 appendix C.3 vector first."""

import sys

from cryptography.hazmat.primitives.ciphers import Cipher, algorithms, modes


def encrypt_block(key: bytes, block: bytes) -> bytes:
    assert len(key) == 32 and len(block) == 16
    enc = Cipher(algorithms.AES(key), modes.ECB()).encryptor()
    return enc.update(block) + enc.finalize()


def main() -> None:
    fips_key = bytes(range(32))
    fips_pt = bytes.fromhex("00112233445566778899aabbccddeeff")
    assert encrypt_block(fips_key, fips_pt).hex() == "8ea2b7ca516745bfeafc49904b496089"

    aes_key = None
    for line in sys.stdin:
        parts = line.split()
        if line.startswith("derive_zero 'skid-kit 2025 aes v1'"):
            aes_key = bytes.fromhex(parts[-1])
        elif parts and parts[0] == "plain":
            assert aes_key is not None, "derived AES key must precede plain lines"
            _, skid, epoch, entity, pt_hex = parts
            ct = encrypt_block(aes_key, bytes.fromhex(pt_hex))
            print(f"{skid} {epoch} {entity} {pt_hex} {ct.hex()}")


if __name__ == "__main__":
    main()
