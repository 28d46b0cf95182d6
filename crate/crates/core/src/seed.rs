//! Deterministic seed derivation.
//!
//! Every randomized stage derives its own seed from a master seed and a
//! small tuple of tags. Independent tasks (Monte-Carlo replicas, Gram
//! entries, training iterations) get distinct streams so any execution
//! order reproduces the sequential result.

/// SplitMix64 finalizer; good avalanche for cheap seed mixing.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives a child seed from `master` and an arbitrary list of tag words.
pub fn split_seed(master: u64, tags: &[u64]) -> u64 {
    let mut acc = splitmix64(master);
    for &t in tags {
        acc = splitmix64(acc ^ t.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    }
    acc
}

/// Tags a stage by name; stable across platforms (byte-wise FNV-1a).
pub fn stage_tag(name: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}
