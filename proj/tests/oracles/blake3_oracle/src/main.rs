// Emits every BLAKE3-derived constant pinned in the C++ test suite:
// digest tables over the i % 251 byte pattern, derived MAC/AES keys,
// walkthrough MAC bytes, and the plaintext identifier vector lines.

const LENS: [usize; 14] = [0, 1, 3, 63, 64, 65, 127, 128, 1023, 1024, 1025, 2048, 3072, 4096];

fn pattern(len: usize) -> Vec<u8> {
    (0..len).map(|i| (i % 251) as u8).collect()
}

fn build_plain(skid: u64, epoch: u8, entity: u8, variant: u8, mac_key: &[u8; 32]) -> [u8; 16] {
    let mut b = [0u8; 16];
    b[0] = epoch;
    let upper = ((skid >> 32) as u32) ^ 0x8000_0000;
    b[1..5].copy_from_slice(&upper.to_be_bytes());
    let lower_be = ((skid & 0xFFFF_FFFF) as u32).to_be_bytes();
    b[5] = lower_be[0];
    b[6] = 0x8D;
    b[7] = entity;
    b[8] = variant;
    b[9..12].copy_from_slice(&lower_be[1..4]);
    let mac = blake3::keyed_hash(mac_key, &b);
    b[12..16].copy_from_slice(&mac.as_bytes()[0..4]);
    b
}

fn main() {
    let zero_key = [0u8; 32];
    let mut pat_key = [0u8; 32];
    for (i, b) in pat_key.iter_mut().enumerate() {
        *b = i as u8;
    }

    for len in LENS {
        let input = pattern(len);
        println!("hash {} {}", len, blake3::hash(&input).to_hex());
        println!("keyed_zero {} {}", len, blake3::keyed_hash(&zero_key, &input).to_hex());
        println!("keyed_pat {} {}", len, blake3::keyed_hash(&pat_key, &input).to_hex());
    }

    for ctx in ["skid-kit 2025 mac v1", "skid-kit 2025 aes v1"] {
        println!("derive_zero '{}' {}", ctx, hex::encode(blake3::derive_key(ctx, &zero_key)));
        println!("derive_pat '{}' {}", ctx, hex::encode(blake3::derive_key(ctx, &pat_key)));
    }

    // walkthrough MAC under the raw zero key and the derived key
    let derived_mac = blake3::derive_key("skid-kit 2025 mac v1", &zero_key);
    let wt = build_plain(0x8BEBC20012040005, 0x00, 0x0A, 0x8D, &zero_key);
    println!("mac_wt_zero_key {}", hex::encode(&blake3::keyed_hash(&zero_key, &{
        let mut cleared = wt;
        cleared[12..16].fill(0);
        cleared
    }).as_bytes()[..]));
    println!("skeid_wt_full {}", hex::encode(build_plain(0x8BEBC20012040005, 0x00, 0x0A, 0x8D, &derived_mac)));

    // plaintext vector lines; aes_oracle.py appends the ciphertext column
    let entries: [(u64, u8, u8); 8] = [
        (0x8BEBC20012040005, 0x00, 0x0A),
        (0x8000000000000000, 0x00, 0x00),
        (0x7FFFFFFFFFFFFFFF, 0xFF, 0xFF),
        (0x0000000000000000, 0x01, 0x10),
        (0x123456789ABCDEF0, 0x05, 0x2A),
        (0xFEDCBA9876543210, 0x80, 0x7F),
        (0x0123456789ABCDEF, 0x10, 0x01),
        (0xCAFEBABE8BADF00D, 0x22, 0x33),
    ];
    for (skid, epoch, entity) in entries {
        println!(
            "plain {:016x} {:02x} {:02x} {}",
            skid,
            epoch,
            entity,
            hex::encode(build_plain(skid, epoch, entity, 0x8D, &derived_mac))
        );
    }
}
