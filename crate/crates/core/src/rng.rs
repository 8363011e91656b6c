//! Deterministic pseudo-randomness.
//!
//! Every random draw in this crate goes through [`SplitMix64`], a fixed 64-bit
//! generator with published reference constants. Golden values recorded in the
//! test suite (graph edge sets, noise trajectories) can therefore be reproduced
//! bit-for-bit from any language with 64-bit integer arithmetic.

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    /// Independent stream for `index` under a base `seed`.
    ///
    /// The child state is the mixed image of `seed ^ f(index)`, not a shifted
    /// copy of the parent stream, so sibling streams are pairwise decorrelated
    /// and the construction is independent of any draw order. Parallel
    /// consumers (noise trials, sweep cells) rely on that.
    pub fn derive(seed: u64, index: u64) -> Self {
        let mut mixer = Self::new(seed ^ index.wrapping_mul(0xA24B_AED4_963E_E407));
        let state = mixer.next_u64();
        Self { state }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` with 53 significant bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `0..bound`. Modulo bias is below 2^-59 for the bounds used
    /// here (never above 15), far under anything observable.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_reference_outputs() {
        // First three outputs of the reference implementation per seed.
        let cases: [(u64, [u64; 3]); 3] = [
            (0, [0xe220a8397b1dcdaf, 0x6e789e6aa1b965f4, 0x06c45d188009454f]),
            (1, [0x910a2dec89025cc1, 0xbeeb8da1658eec67, 0xf893a2eefb32555e]),
            (
                0xDEADBEEF,
                [0x4adfb90f68c9eb9b, 0xde586a3141a10922, 0x021fbc2f8e1cfc1d],
            ),
        ];
        for (seed, expect) in cases {
            let mut rng = SplitMix64::new(seed);
            for e in expect {
                assert_eq!(rng.next_u64(), e);
            }
        }
    }

    #[test]
    fn f64_is_in_unit_interval() {
        let mut rng = SplitMix64::new(42);
        for _ in 0..10_000 {
            let x = rng.next_f64();
            assert!((0.0..1.0).contains(&x));
        }
    }

    #[test]
    fn derived_streams_differ_from_parent_and_siblings() {
        let take = |mut r: SplitMix64| -> Vec<u64> { (0..8).map(|_| r.next_u64()).collect() };
        let parent = take(SplitMix64::new(7));
        let c0 = take(SplitMix64::derive(7, 0));
        let c1 = take(SplitMix64::derive(7, 1));
        assert_ne!(parent, c0);
        assert_ne!(c0, c1);
        // No shift-by-k aliasing between siblings.
        assert_ne!(c0[1..], c1[..7]);
        assert_ne!(c1[1..], c0[..7]);
    }

    #[test]
    fn derive_is_reproducible() {
        let a: Vec<u64> = (0..4).map(|i| SplitMix64::derive(99, i).next_u64()).collect();
        let b: Vec<u64> = (0..4).map(|i| SplitMix64::derive(99, i).next_u64()).collect();
        assert_eq!(a, b);
    }
}
