use std::hash::Hasher;

use fnv::FnvHasher;

/// 64-bit FNV-1a over the little-endian bytes of `words`.
pub fn fnv1a_words(words: &[u64]) -> u64 {
    let mut hasher = FnvHasher::default();
    for w in words {
        hasher.write(&w.to_le_bytes());
    }
    hasher.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_reference_fnv1a() {
        // FNV-1a 64 offset basis for empty input
        assert_eq!(fnv1a_words(&[]), 0xcbf2_9ce4_8422_2325);
        // FNV-1a of eight zero bytes, computed by the textbook loop
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for _ in 0..8 {
            h ^= 0;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
        assert_eq!(fnv1a_words(&[0]), h);
    }
}
