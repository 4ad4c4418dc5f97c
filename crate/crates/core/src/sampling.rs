//! Counter-based deterministic pseudo-random generator for sampled checks.
//!
//! Each output is a pure function of (seed, counter), so identical seeds
//! reproduce identical sample sets on any platform and any worker count,
//! without storing triple lists.

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Debug, Clone)]
pub struct CounterRng {
    seed: u64,
    counter: u64,
}

impl CounterRng {
    pub fn new(seed: u64) -> Self {
        CounterRng { seed, counter: 0 }
    }

    pub fn next_u64(&mut self) -> u64 {
        let v = splitmix64(self.seed.wrapping_add(GOLDEN.wrapping_mul(self.counter)));
        self.counter += 1;
        v
    }

    /// Uniform in [lo, hi] inclusive. Bias is negligible for the range sizes
    /// drawn here (all far below 2^32).
    pub fn gen_range(&mut self, lo: u64, hi: u64) -> u64 {
        debug_assert!(lo <= hi);
        lo + self.next_u64() % (hi - lo + 1)
    }
}
