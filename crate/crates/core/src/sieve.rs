//! Segmented odd-only bit sieve with O(1) prime counting, single-pass batch
//! queries, fast range iteration in both directions, and a binary cache.
//!
//! Storage: bit i of the grid represents the odd number 2i+1; a set bit means
//! prime. The prime 2 is handled arithmetically. Segments are sieved
//! independently (and in parallel) from one shared base-prime list, so the
//! grid is identical for every worker count.

use crate::error::{Error, Result};
use rayon::prelude::*;
use std::io::{Read, Write};
use std::path::Path;

/// Odd entries per segment: 2^20 odds = 2 MiB of numbers, 128 KiB of bits.
pub const SEGMENT_ODDS: usize = 1 << 20;
/// Odd entries per rank block (sub-segment cumulative counts).
const BLOCK_ODDS: usize = 1 << 12;
const WORD_BITS: usize = 64;

/// Hard cap on table construction.
pub const MAX_SIEVE_LIMIT: u64 = 2_000_000_000;

/// Immutable sieve product answering pi(x), batched pi, progression counts,
/// and prime iteration up to `limit`.
pub struct PrimeTable {
    limit: u64,
    words: Vec<u64>,
    /// odd primes strictly below segment s (prefix sums at segment bounds)
    seg_counts: Vec<u64>,
    /// odd primes in blocks of the same segment before this block
    block_counts: Vec<u32>,
}

impl PrimeTable {
    /// Sieve all primes up to `limit` (inclusive). Construction is parallel
    /// over segments with deterministic output.
    pub fn build(limit: u64) -> Result<Self> {
        Self::build_with_max(limit, MAX_SIEVE_LIMIT)
    }

    pub fn build_with_max(limit: u64, max: u64) -> Result<Self> {
        if limit < 2 {
            return Err(Error::SieveLimitTooSmall { requested: limit });
        }
        if limit > max {
            return Err(Error::SieveLimitTooLarge {
                requested: limit,
                max,
            });
        }
        let n_odds = ((limit - 1) / 2 + 1) as usize; // indices i with 2i+1 <= limit
        let n_words = n_odds.div_ceil(WORD_BITS);
        let mut words = vec![!0u64; n_words];

        let base = base_primes(isqrt(limit));

        let seg_words = SEGMENT_ODDS / WORD_BITS;
        words
            .par_chunks_mut(seg_words)
            .enumerate()
            .for_each(|(seg, chunk)| {
                sieve_segment(seg, chunk, &base, n_odds);
            });

        // clear index 0 (the number 1) and tail bits beyond n_odds
        words[0] &= !1u64;
        let tail = n_odds % WORD_BITS;
        if tail != 0 {
            *words.last_mut().unwrap() &= (1u64 << tail) - 1;
        }

        let mut table = PrimeTable {
            limit,
            words,
            seg_counts: Vec::new(),
            block_counts: Vec::new(),
        };
        table.build_ranks();
        Ok(table)
    }

    fn build_ranks(&mut self) {
        let n_words = self.words.len();
        let n_blocks = n_words.div_ceil(BLOCK_ODDS / WORD_BITS);
        let block_words = BLOCK_ODDS / WORD_BITS;
        let blocks_per_seg = SEGMENT_ODDS / BLOCK_ODDS;
        let n_segs = n_words.div_ceil(SEGMENT_ODDS / WORD_BITS);
        let mut seg_counts = Vec::with_capacity(n_segs + 1);
        let mut block_counts = Vec::with_capacity(n_blocks);
        let mut total = 0u64;
        let mut in_seg = 0u32;
        seg_counts.push(0);
        for b in 0..n_blocks {
            if b % blocks_per_seg == 0 && b != 0 {
                seg_counts.push(total);
                in_seg = 0;
            }
            block_counts.push(in_seg);
            let lo = b * block_words;
            let hi = ((b + 1) * block_words).min(n_words);
            let c: u32 = self.words[lo..hi].iter().map(|w| w.count_ones()).sum();
            in_seg += c;
            total += c as u64;
        }
        seg_counts.push(total);
        self.seg_counts = seg_counts;
        self.block_counts = block_counts;
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Number of odd primes with odd-index <= idx, via segment + block ranks
    /// plus a partial word scan.
    fn rank_odds_upto(&self, idx: usize) -> u64 {
        let seg = idx / SEGMENT_ODDS;
        let block = idx / BLOCK_ODDS;
        let mut count = self.seg_counts[seg] + self.block_counts[block] as u64;
        let word_lo = block * (BLOCK_ODDS / WORD_BITS);
        let word_hi = idx / WORD_BITS;
        for w in &self.words[word_lo..word_hi] {
            count += w.count_ones() as u64;
        }
        let bit = idx % WORD_BITS;
        let mask = if bit == 63 { !0u64 } else { (1u64 << (bit + 1)) - 1 };
        count + (self.words[word_hi] & mask).count_ones() as u64
    }

    /// pi(x), the number of primes not exceeding x.
    pub fn pi(&self, x: u64) -> Result<u64> {
        if x > self.limit {
            return Err(Error::QueryOutOfRange {
                x,
                limit: self.limit,
            });
        }
        Ok(self.pi_unchecked(x))
    }

    fn pi_unchecked(&self, x: u64) -> u64 {
        if x < 2 {
            return 0;
        }
        if x == 2 {
            return 1;
        }
        1 + self.rank_odds_upto(((x - 1) / 2) as usize)
    }

    /// Answer a sorted batch of queries in one pass over storage.
    pub fn pi_batch(&self, queries: &[u64]) -> Result<Vec<u64>> {
        if queries.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::UnsortedQueries);
        }
        if let Some(&last) = queries.last() {
            if last > self.limit {
                return Err(Error::QueryOutOfRange {
                    x: last,
                    limit: self.limit,
                });
            }
        }
        let mut out = Vec::with_capacity(queries.len());
        let mut word_pos = 0usize; // fully-counted words
        let mut running = 0u64;
        for &x in queries {
            if x < 2 {
                out.push(0);
                continue;
            }
            if x == 2 {
                out.push(1);
                continue;
            }
            let idx = ((x - 1) / 2) as usize;
            let target_word = idx / WORD_BITS;
            while word_pos < target_word {
                running += self.words[word_pos].count_ones() as u64;
                word_pos += 1;
            }
            let bit = idx % WORD_BITS;
            let mask = if bit == 63 { !0u64 } else { (1u64 << (bit + 1)) - 1 };
            let partial = (self.words[target_word] & mask).count_ones() as u64;
            out.push(1 + running + partial);
        }
        Ok(out)
    }

    /// True iff n is prime (n <= limit).
    pub fn is_prime(&self, n: u64) -> bool {
        assert!(n <= self.limit, "{n} exceeds table limit {}", self.limit);
        if n == 2 {
            return true;
        }
        if n < 2 || n % 2 == 0 {
            return false;
        }
        let idx = ((n - 1) / 2) as usize;
        self.words[idx / WORD_BITS] >> (idx % WORD_BITS) & 1 == 1
    }

    /// Visit primes in (lo, hi] ascending while `f` returns true. Returns
    /// false iff the visit was cut short by `f`.
    pub fn for_primes_in(&self, lo: u64, hi: u64, mut f: impl FnMut(u64) -> bool) -> bool {
        assert!(hi <= self.limit, "range end {hi} exceeds table limit {}", self.limit);
        if hi < 2 || hi <= lo {
            return true;
        }
        if lo < 2 && !f(2) {
            return false;
        }
        // odd candidates in (lo, hi]: indices [start, end]
        let start_n = (lo + 1).max(3) | 1; // smallest odd > lo, at least 3
        if start_n > hi {
            return true;
        }
        let start = ((start_n - 1) / 2) as usize;
        let end = ((hi - 1) / 2) as usize;
        let (sw, ew) = (start / WORD_BITS, end / WORD_BITS);
        let mut w = self.words[sw] & (!0u64 << (start % WORD_BITS));
        if sw == ew {
            w &= end_mask(end);
        }
        let mut word_idx = sw;
        loop {
            while w != 0 {
                let bit = w.trailing_zeros() as usize;
                let n = 2 * (word_idx * WORD_BITS + bit) as u64 + 1;
                if !f(n) {
                    return false;
                }
                w &= w - 1;
            }
            word_idx += 1;
            if word_idx > ew {
                return true;
            }
            w = self.words[word_idx];
            if word_idx == ew {
                w &= end_mask(end);
            }
        }
    }

    /// Visit primes in (lo, hi] descending while `f` returns true. Returns
    /// false iff the visit was cut short by `f`.
    pub fn for_primes_in_rev(&self, lo: u64, hi: u64, mut f: impl FnMut(u64) -> bool) -> bool {
        assert!(hi <= self.limit, "range end {hi} exceeds table limit {}", self.limit);
        if hi < 2 || hi <= lo {
            return true;
        }
        let visit_two = lo < 2;
        if hi >= 3 {
            let start_n = (lo + 1).max(3) | 1;
            if start_n <= hi {
                let start = ((start_n - 1) / 2) as usize;
                let end = ((hi - 1) / 2) as usize;
                let (sw, ew) = (start / WORD_BITS, end / WORD_BITS);
                let mut w = self.words[ew] & end_mask(end);
                if sw == ew {
                    w &= !0u64 << (start % WORD_BITS);
                }
                let mut word_idx = ew;
                loop {
                    while w != 0 {
                        let bit = 63 - w.leading_zeros() as usize;
                        let n = 2 * (word_idx * WORD_BITS + bit) as u64 + 1;
                        if !f(n) {
                            return false;
                        }
                        w &= !(1u64 << bit);
                    }
                    if word_idx == sw {
                        break;
                    }
                    word_idx -= 1;
                    w = self.words[word_idx];
                    if word_idx == sw {
                        w &= !0u64 << (start % WORD_BITS);
                    }
                }
            }
        }
        if visit_two && !f(2) {
            return false;
        }
        true
    }

    /// #{p prime : x1 < p <= x2, p ≡ l (mod k)}.
    pub fn pi_progression_interval(&self, x1: u64, x2: u64, k: u64, l: i64) -> Result<u64> {
        if x1 > x2 {
            return Err(Error::BadInterval { x1, x2 });
        }
        if x2 > self.limit {
            return Err(Error::QueryOutOfRange {
                x: x2,
                limit: self.limit,
            });
        }
        if k == 0 {
            return Err(Error::InvalidParams {
                reason: "progression modulus k must be >= 1".into(),
            });
        }
        if k == 1 {
            return Ok(self.pi_unchecked(x2) - self.pi_unchecked(x1));
        }
        let l_norm = l.rem_euclid(k as i64) as u64;
        let mut count = 0u64;
        self.for_primes_in(x1, x2, |p| {
            if p % k == l_norm {
                count += 1;
            }
            true
        });
        Ok(count)
    }

    /// Write the sieve cache: magic "ELSP", version u16, limit u64, raw bit
    /// grid, all little-endian.
    pub fn write_cache(&self, path: &Path) -> Result<()> {
        let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
        f.write_all(b"ELSP")?;
        f.write_all(&1u16.to_le_bytes())?;
        f.write_all(&self.limit.to_le_bytes())?;
        for w in &self.words {
            f.write_all(&w.to_le_bytes())?;
        }
        f.flush()?;
        Ok(())
    }

    /// Load a cache written by `write_cache`. The cache is invalid if its
    /// limit differs from the request.
    pub fn load_cache(path: &Path, expected_limit: u64) -> Result<Self> {
        let mut f = std::io::BufReader::new(std::fs::File::open(path)?);
        let mut magic = [0u8; 4];
        f.read_exact(&mut magic)
            .map_err(|_| Error::CacheInvalid { reason: "truncated header".into() })?;
        if &magic != b"ELSP" {
            return Err(Error::CacheInvalid {
                reason: format!("bad magic {magic:?}"),
            });
        }
        let mut v = [0u8; 2];
        f.read_exact(&mut v)
            .map_err(|_| Error::CacheInvalid { reason: "truncated version".into() })?;
        let version = u16::from_le_bytes(v);
        if version != 1 {
            return Err(Error::CacheInvalid {
                reason: format!("unsupported version {version}"),
            });
        }
        let mut lim = [0u8; 8];
        f.read_exact(&mut lim)
            .map_err(|_| Error::CacheInvalid { reason: "truncated limit".into() })?;
        let limit = u64::from_le_bytes(lim);
        if limit != expected_limit {
            return Err(Error::CacheInvalid {
                reason: format!("cache limit {limit} != requested {expected_limit}"),
            });
        }
        let n_odds = ((limit - 1) / 2 + 1) as usize;
        let n_words = n_odds.div_ceil(WORD_BITS);
        let mut bytes = vec![0u8; n_words * 8];
        f.read_exact(&mut bytes)
            .map_err(|_| Error::CacheInvalid { reason: "truncated bit grid".into() })?;
        let mut rest = [0u8; 1];
        if f.read(&mut rest)? != 0 {
            return Err(Error::CacheInvalid {
                reason: "trailing bytes after bit grid".into(),
            });
        }
        let words: Vec<u64> = bytes
            .chunks_exact(8)
            .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
            .collect();
        let mut table = PrimeTable {
            limit,
            words,
            seg_counts: Vec::new(),
            block_counts: Vec::new(),
        };
        table.build_ranks();
        Ok(table)
    }
}

#[inline]
fn end_mask(end_idx: usize) -> u64 {
    let bit = end_idx % WORD_BITS;
    if bit == 63 {
        !0u64
    } else {
        (1u64 << (bit + 1)) - 1
    }
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Odd base primes up to `bound` by a plain byte sieve.
fn base_primes(bound: u64) -> Vec<u64> {
    if bound < 3 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for p in (3..=n).step_by(2) {
        if !composite[p] {
            out.push(p as u64);
            let mut m = p * p;
            while m <= n {
                composite[m] = true;
                m += 2 * p;
            }
        }
    }
    out
}

/// Mark odd composites of one segment. `chunk` covers odd indices
/// [seg·SEGMENT_ODDS, seg·SEGMENT_ODDS + chunk.len()·64).
fn sieve_segment(seg: usize, chunk: &mut [u64], base: &[u64], n_odds: usize) {
    let seg_start = seg * SEGMENT_ODDS; // global odd index of bit 0
    let seg_len = (chunk.len() * WORD_BITS).min(n_odds - seg_start);
    let low = 2 * seg_start as u64 + 1;
    let high = 2 * (seg_start + seg_len - 1) as u64 + 1;
    for &p in base {
        let p2 = p * p;
        if p2 > high {
            break;
        }
        // first odd multiple of p in [low, high], at least p^2
        let mut m = if p2 >= low {
            p2
        } else {
            let mut m = low.div_ceil(p) * p;
            if m % 2 == 0 {
                m += p;
            }
            m
        };
        if m > high {
            continue;
        }
        // odd multiples step 2p in value = step p in odd-index space
        let mut i = ((m - 1) / 2) as usize - seg_start;
        let step = p as usize;
        while i < seg_len {
            chunk[i / WORD_BITS] &= !(1u64 << (i % WORD_BITS));
            i += step;
        }
    }
}
