//! Exact elementary number-theoretic primitives: gcd, modular inverse,
//! factorization, totient, distinct-prime counts, and exact coprime counting
//! in arithmetic progressions via inclusion-exclusion.

use crate::error::{Error, Result};

/// Greatest common divisor. Rejects (0, 0), which has no well-defined gcd.
pub fn gcd(u: u64, v: u64) -> Result<u64> {
    if u == 0 && v == 0 {
        return Err(Error::GcdBothZero);
    }
    Ok(gcd_unchecked(u, v))
}

/// Euclid's algorithm; gcd(0, n) = n by convention. Internal hot path.
pub(crate) fn gcd_unchecked(mut u: u64, mut v: u64) -> u64 {
    while v != 0 {
        let t = u % v;
        u = v;
        v = t;
    }
    u
}

/// Multiplicative inverse of `b` modulo `a`, normalized into [1, a-1].
///
/// Requires a >= 2 and gcd(a, b) = 1.
pub fn mod_inverse(b: u64, a: u64) -> Result<u64> {
    if a < 2 {
        return Err(Error::InvalidParams {
            reason: format!("modulus must be >= 2, got {a}"),
        });
    }
    let b0 = b % a;
    let g = gcd_unchecked(b0, a);
    if g != 1 {
        return Err(Error::NotInvertible { b, a, g });
    }
    // extended Euclid on (b0, a), tracking only the coefficient of b0
    let (mut r0, mut r1) = (b0 as i128, a as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1);
    let inv = s0.rem_euclid(a as i128) as u64;
    debug_assert!(inv >= 1 && inv < a);
    Ok(inv)
}

/// Prime factorization of a positive integer, primes ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    value: u64,
    prime_powers: Vec<(u64, u32)>,
}

impl Factorization {
    /// Factor `n >= 1` by trial division with a 2/3/5 wheel. All inputs in
    /// this artifact's sweeps are small (~1e5), so nothing fancier is needed.
    pub fn of(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParams {
                reason: "cannot factor 0".into(),
            });
        }
        let mut m = n;
        let mut prime_powers = Vec::new();
        for p in [2u64, 3, 5] {
            if m % p == 0 {
                let mut e = 0;
                while m % p == 0 {
                    m /= p;
                    e += 1;
                }
                prime_powers.push((p, e));
            }
        }
        // increments cycling through residues coprime to 30
        const WHEEL: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];
        let mut p = 7u64;
        let mut w = 0usize;
        while p * p <= m {
            if m % p == 0 {
                let mut e = 0;
                while m % p == 0 {
                    m /= p;
                    e += 1;
                }
                prime_powers.push((p, e));
            }
            p += WHEEL[w];
            w = (w + 1) % WHEEL.len();
        }
        if m > 1 {
            prime_powers.push((m, 1));
        }
        debug_assert!(prime_powers.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert_eq!(
            prime_powers
                .iter()
                .fold(1u128, |acc, &(p, e)| acc * (p as u128).pow(e)),
            n as u128
        );
        Ok(Factorization {
            value: n,
            prime_powers,
        })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn prime_powers(&self) -> &[(u64, u32)] {
        &self.prime_powers
    }

    /// Number of distinct prime divisors; 0 for n = 1.
    pub fn omega(&self) -> u32 {
        self.prime_powers.len() as u32
    }

    /// Euler totient from the factorization.
    pub fn euler_phi(&self) -> u64 {
        let mut phi = self.value;
        for &(p, _) in &self.prime_powers {
            phi -= phi / p;
        }
        phi
    }

    /// Count of 1 <= y <= x coprime to `value`, by inclusion-exclusion over
    /// squarefree divisors.
    pub fn coprime_upto(&self, x: u64) -> u64 {
        let k = self.prime_powers.len();
        let mut total: i64 = 0;
        for mask in 0u32..(1 << k) {
            let mut d = 1u64;
            for (i, &(p, _)) in self.prime_powers.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    d *= p;
                }
            }
            let term = (x / d) as i64;
            total += if mask.count_ones() % 2 == 0 { term } else { -term };
        }
        total as u64
    }
}

/// Euler totient φ(m).
pub fn euler_phi(m: u64) -> Result<u64> {
    Ok(Factorization::of(m)?.euler_phi())
}

/// ω(m), the number of distinct prime divisors; ω(1) = 0.
pub fn omega(m: u64) -> Result<u32> {
    Ok(Factorization::of(m)?.omega())
}

/// Result of an exact coprime count over an arithmetic progression.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoprimeCount {
    /// Exact #{1 <= n <= x : gcd(nk + l, m) = 1}.
    pub count: u64,
    /// count - φ(m)·x/m, with x the real argument. Bounded by 2^ω(m).
    pub deviation: f64,
}

/// Exact count of n in [1, x] with gcd(nk + l, m) = 1, requiring gcd(m, k) = 1.
///
/// x is real and floored once at entry. Computed by inclusion-exclusion over
/// the squarefree divisors of m: for each divisor d the n with d | nk + l form
/// one residue class mod d because k is invertible mod d.
pub fn coprime_count(x: f64, m: u64, k: i64, l: i64) -> Result<CoprimeCount> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::BadReal { what: "x", value: x });
    }
    if m == 0 {
        return Err(Error::InvalidParams {
            reason: "modulus m must be >= 1".into(),
        });
    }
    let n_max = x.floor() as u64;
    let g = gcd_unchecked(m, (k.rem_euclid(m as i64)) as u64);
    if g != 1 {
        return Err(Error::NotCoprime { m, k, g });
    }
    let fac = Factorization::of(m)?;
    let kp = fac.prime_powers();
    let mut count: i128 = 0;
    for mask in 0u32..(1 << kp.len()) {
        let mut d = 1u64;
        for (i, &(p, _)) in kp.iter().enumerate() {
            if mask >> i & 1 == 1 {
                d *= p;
            }
        }
        let in_class = if d == 1 {
            n_max
        } else {
            // solve n·k ≡ -l (mod d); k invertible since gcd(m,k)=1
            let kd = (k.rem_euclid(d as i64)) as u64;
            let ld = (l.rem_euclid(d as i64)) as u64;
            let kinv = mod_inverse(kd, d)?;
            let r = (kinv as u128 * ((d - ld) % d) as u128 % d as u128) as u64;
            if r == 0 {
                n_max / d
            } else if r <= n_max {
                (n_max - r) / d + 1
            } else {
                0
            }
        };
        if mask.count_ones() % 2 == 0 {
            count += in_class as i128;
        } else {
            count -= in_class as i128;
        }
    }
    debug_assert!(count >= 0);
    let count = count as u64;
    let deviation = count as f64 - fac.euler_phi() as f64 * x / m as f64;
    Ok(CoprimeCount { count, deviation })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(3, 5).unwrap(), 1);
        assert_eq!(gcd(12, 18).unwrap(), 6);
        assert_eq!(gcd(660, 60_000).unwrap(), 60);
        assert_eq!(gcd(0, 7).unwrap(), 7);
        assert_eq!(gcd(5, 3).unwrap(), gcd(3, 5).unwrap());
        assert!(matches!(gcd(0, 0), Err(Error::GcdBothZero)));
    }

    #[test]
    fn mod_inverse_examples() {
        assert_eq!(mod_inverse(3, 5).unwrap(), 2);
        assert_eq!(mod_inverse(1, 7).unwrap(), 1);
        assert_eq!(mod_inverse(7, 4).unwrap(), 3);
        assert!(mod_inverse(2, 4).is_err());
        assert!(mod_inverse(5, 1).is_err());
    }

    #[test]
    fn mod_inverse_is_inverse() {
        for a in 2u64..200 {
            for b in 1..a {
                if gcd_unchecked(a, b) == 1 {
                    let inv = mod_inverse(b, a).unwrap();
                    assert_eq!(inv * b % a, 1, "a={a} b={b}");
                    assert!((1..a).contains(&inv));
                }
            }
        }
    }

    #[test]
    fn phi_omega_examples() {
        assert_eq!(euler_phi(1).unwrap(), 1);
        assert_eq!(euler_phi(12).unwrap(), 4);
        assert_eq!(euler_phi(660).unwrap(), 160);
        assert_eq!(omega(1).unwrap(), 0);
        assert_eq!(omega(12).unwrap(), 2);
        assert_eq!(omega(30030).unwrap(), 6);
    }

    #[test]
    fn phi_matches_gcd_count() {
        for m in 1u64..=10_000 {
            let by_fact = euler_phi(m).unwrap();
            let by_gcd = (1..=m).filter(|&n| gcd_unchecked(n, m) == 1).count() as u64;
            assert_eq!(by_fact, by_gcd, "m={m}");
        }
    }

    #[test]
    fn coprime_count_examples() {
        // {1, 5, 7} are the n <= 10 with gcd(n, 6) = 1
        assert_eq!(coprime_count(10.0, 6, 1, 0).unwrap().count, 3);
        // everything is coprime to 1
        assert_eq!(coprime_count(37.9, 1, 4, -3).unwrap().count, 37);
        // 2n+1 is always odd, hence coprime to 4
        assert_eq!(coprime_count(8.0, 4, 2, 1).unwrap().count, 8);
        assert!(coprime_count(10.0, 6, 3, 1).is_err());
        assert!(coprime_count(-1.0, 6, 1, 0).is_err());
    }

    #[test]
    fn coprime_count_matches_naive_loop() {
        // exact agreement with direct enumeration on a dense small grid
        for m in 1u64..=60 {
            for k in -5i64..=5 {
                if gcd_unchecked(m, k.rem_euclid(m as i64) as u64) != 1 {
                    continue;
                }
                for l in -5i64..=5 {
                    for x in [0u64, 1, 7, 50, 199] {
                        let got = coprime_count(x as f64, m, k, l).unwrap().count;
                        let naive = (1..=x as i64)
                            .filter(|&n| gcd_unchecked((n * k + l).unsigned_abs() % m, m) == 1)
                            .count() as u64;
                        assert_eq!(got, naive, "m={m} k={k} l={l} x={x}");
                    }
                }
            }
        }
    }

    #[test]
    fn coprime_count_naive_larger_moduli() {
        // spec grid corner: m up to 200, x up to 500
        for m in [97u64, 128, 150, 179, 200] {
            for (k, l) in [(1i64, 0i64), (-4, 3), (3, -5), (5, 5)] {
                if gcd_unchecked(m, k.rem_euclid(m as i64) as u64) != 1 {
                    continue;
                }
                let x = 500u64;
                let got = coprime_count(x as f64, m, k, l).unwrap().count;
                let naive = (1..=x as i64)
                    .filter(|&n| gcd_unchecked((n * k + l).unsigned_abs() % m, m) == 1)
                    .count() as u64;
                assert_eq!(got, naive, "m={m} k={k} l={l}");
            }
        }
    }

    #[test]
    fn deviation_bounded_by_two_pow_omega() {
        // |count − φ(m)x/m| <= 2^ω(m) on seeded random admissible samples
        let mut rng = crate::sampling::CounterRng::new(0x5eed_2024);
        let mut tested = 0u32;
        while tested < 10_000 {
            let m = rng.gen_range(1, 10_000);
            let k = rng.gen_range(0, 40) as i64 - 20;
            let l = rng.gen_range(0, 40) as i64 - 20;
            let x = rng.gen_range(0, 5_000) as f64 + (rng.gen_range(0, 100) as f64) / 100.0;
            if gcd_unchecked(m, k.rem_euclid(m as i64) as u64) != 1 {
                continue;
            }
            let cc = coprime_count(x, m, k, l).unwrap();
            let bound = 2f64.powi(omega(m).unwrap() as i32);
            assert!(
                cc.deviation.abs() <= bound + 1e-9,
                "m={m} k={k} l={l} x={x}: dev {} > bound {}",
                cc.deviation,
                bound
            );
            tested += 1;
        }
    }

    #[test]
    fn ratio_inequality_sampled_range() {
        // 2^ω(a)/φ(a) < 0.00556112 sampled over (6e4, 7e4]
        for a in 60_001u64..=70_000 {
            let f = Factorization::of(a).unwrap();
            let ratio = 2f64.powi(f.omega() as i32) / f.euler_phi() as f64;
            assert!(ratio < 0.00556112, "a={a} ratio={ratio}");
        }
    }

    #[test]
    fn coprime_upto_matches_loop() {
        for a in 1u64..=300 {
            let f = Factorization::of(a).unwrap();
            for x in [0u64, 1, 13, 100] {
                let naive = (1..=x).filter(|&y| gcd_unchecked(y, a) == 1).count() as u64;
                assert_eq!(f.coprime_upto(x), naive, "a={a} x={x}");
            }
        }
    }
}
