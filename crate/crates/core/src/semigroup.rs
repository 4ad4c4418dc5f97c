//! l-numerical semigroup structure over two coprime generators a < b:
//! representation counts r(n), the l-Frobenius number, l-genus, l-gaps,
//! l-Apery sets, exact decompositions, and the symmetry biconditional.

use crate::arith::{gcd_unchecked, mod_inverse};
use crate::error::{Error, Result};
use serde::Serialize;

/// Default cap on gap enumeration (refused above, never truncated).
pub const DEFAULT_GAP_LIMIT: u64 = 100_000_000;

/// Validated triple (l, a, b) with gcd(a,b) = 1 and 1 < a < b, plus derived
/// quantities. Construction checks that (l+1)ab fits in 64 bits so every
/// downstream formula is overflow-free.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SemigroupParams {
    ell: u64,
    a: u64,
    b: u64,
    #[serde(rename = "g")]
    frobenius: u64,
    genus: u64,
    #[serde(skip)]
    lab: u64,
    #[serde(skip)]
    a_inv_mod_b: u64,
    #[serde(skip)]
    b_inv_mod_a: u64,
}

impl SemigroupParams {
    pub fn new(ell: u64, a: u64, b: u64) -> Result<Self> {
        if a < 2 {
            return Err(Error::InvalidParams {
                reason: format!("a must be >= 2, got {a}"),
            });
        }
        if b <= a {
            return Err(Error::InvalidParams {
                reason: format!("generators must satisfy a < b, got a={a}, b={b}"),
            });
        }
        let g = gcd_unchecked(a, b);
        if g != 1 {
            return Err(Error::InvalidParams {
                reason: format!("generators must be coprime, gcd({a}, {b}) = {g}"),
            });
        }
        let lp1 = ell
            .checked_add(1)
            .ok_or(Error::Overflow { what: "l + 1" })?;
        let lp1_ab = (lp1 as u128) * (a as u128) * (b as u128);
        if lp1_ab > u64::MAX as u128 {
            return Err(Error::Overflow { what: "(l+1)·a·b" });
        }
        let lp1_ab = lp1_ab as u64;
        // g = (l+1)ab - a - b; positive because a >= 2, b >= 3
        let frobenius = lp1_ab - a - b;
        // genus = ((2l+1)ab - a - b + 1) / 2, always an exact integer
        let two_lp1_ab = (2 * ell + 1) as u128 * a as u128 * b as u128;
        if two_lp1_ab > u64::MAX as u128 {
            return Err(Error::Overflow { what: "(2l+1)·a·b" });
        }
        let genus_num = two_lp1_ab as u64 - a - b + 1;
        debug_assert_eq!(genus_num % 2, 0);
        Ok(SemigroupParams {
            ell,
            a,
            b,
            frobenius,
            genus: genus_num / 2,
            lab: lp1_ab - a * b,
            a_inv_mod_b: mod_inverse(a, b)?,
            b_inv_mod_a: mod_inverse(b, a)?,
        })
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }
    pub fn a(&self) -> u64 {
        self.a
    }
    pub fn b(&self) -> u64 {
        self.b
    }

    /// The l-Frobenius number (l+1)ab - a - b: the largest integer with at
    /// most l representations.
    pub fn frobenius(&self) -> u64 {
        self.frobenius
    }

    /// The l-genus ((2l+1)ab - a - b + 1)/2 = |gaps|.
    pub fn genus(&self) -> u64 {
        self.genus
    }

    /// l·a·b, the smallest element with exactly l+1 representations.
    pub fn lab(&self) -> u64 {
        self.lab
    }

    /// b^{-1} mod a, normalized into [1, a-1].
    pub fn b_inverse_mod_a(&self) -> u64 {
        self.b_inv_mod_a
    }

    /// Exact denumerant r(n) = #{(x,y) >= 0 : ax + by = n} in O(1) via the
    /// two-fractional-part closed form
    ///   r(n) = n/(ab) - {a^{-1}n/b} - {b^{-1}n/a} + 1,
    /// evaluated in exact integer arithmetic.
    pub fn denumerant(&self, n: u64) -> u64 {
        let a = self.a as u128;
        let b = self.b as u128;
        let n = n as u128;
        let m1 = (self.a_inv_mod_b as u128 * n) % b; // b·{a^{-1}n/b} = b·frac numerator
        let m2 = (self.b_inv_mod_a as u128 * n) % a;
        let num = n as i128 - (a * m1) as i128 - (b * m2) as i128;
        let ab = (a * b) as i128;
        debug_assert_eq!(num.rem_euclid(ab), 0);
        let r = num.div_euclid(ab) + 1;
        debug_assert!(r >= 0);
        r as u64
    }

    /// Membership in S_l(a,b): r(n) >= l+1, decided in O(1).
    ///
    /// For n >= l·a·b this tests representability of n - l·a·b (each shift by
    /// ab adds exactly one representation); below l·a·b no integer has more
    /// than l representations.
    pub fn is_member(&self, n: u64) -> bool {
        if n < self.lab {
            return false;
        }
        let m = n - self.lab;
        let y0 = (self.b_inv_mod_a as u128 * m as u128 % self.a as u128) as u64;
        m >= self.b * y0
    }

    /// The scan criterion used by prime counting: for q in (l·a·b, g], q is a
    /// member iff q >= l·a·b + b·y with y = b^{-1}q mod a in [0, a-1].
    #[inline]
    pub fn member_above_lab(&self, q: u64) -> bool {
        debug_assert!(q >= self.lab);
        let y = (self.b_inv_mod_a as u128 * q as u128 % self.a as u128) as u64;
        q >= self.lab + self.b * y
    }
}

/// r(n) together with the explicit witnesses, ordered by increasing y.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepresentationProfile {
    pub n: u64,
    pub count: u64,
    pub witnesses: Vec<(u64, u64)>,
}

/// Brute-force representation profile: iterate y from 0 to n/b and test
/// divisibility. The O(1) closed form must and does agree (see tests).
pub fn count_representations(n: u64, a: u64, b: u64) -> Result<RepresentationProfile> {
    validate_pair(a, b)?;
    let mut witnesses = Vec::new();
    for y in 0..=n / b {
        let rem = n - b * y;
        if rem % a == 0 {
            witnesses.push((rem / a, y));
        }
    }
    Ok(RepresentationProfile {
        n,
        count: witnesses.len() as u64,
        witnesses,
    })
}

/// O(1) denumerant for a free-standing coprime pair.
pub fn denumerant(n: u64, a: u64, b: u64) -> Result<u64> {
    validate_pair(a, b)?;
    let (lo, hi) = (a.min(b), a.max(b));
    if lo == 1 {
        return Ok(n / hi + 1);
    }
    let p = SemigroupParams::new(0, lo, hi)?;
    Ok(p.denumerant(n))
}

fn validate_pair(a: u64, b: u64) -> Result<()> {
    if a == 0 || b == 0 || a == b {
        return Err(Error::InvalidParams {
            reason: format!("generators must be distinct and positive, got a={a}, b={b}"),
        });
    }
    let g = gcd_unchecked(a, b);
    if g != 1 {
        return Err(Error::InvalidParams {
            reason: format!("generators must be coprime, gcd({a}, {b}) = {g}"),
        });
    }
    Ok(())
}

/// The l-Frobenius number (l+1)ab - a - b.
pub fn frobenius(p: &SemigroupParams) -> u64 {
    p.frobenius()
}

/// The l-genus ((2l+1)ab - a - b + 1)/2.
pub fn genus(p: &SemigroupParams) -> u64 {
    p.genus()
}

/// Membership test r(n) >= l+1.
pub fn is_member(n: u64, p: &SemigroupParams) -> bool {
    p.is_member(n)
}

/// All n <= g with r(n) <= l, ascending. Refuses (never truncates) when g
/// exceeds `limit`.
pub fn gaps_with_limit(p: &SemigroupParams, limit: u64) -> Result<Vec<u64>> {
    let g = p.frobenius();
    if g > limit {
        return Err(Error::GapLimitExceeded { g, limit });
    }
    let ell = p.ell();
    let mut out = Vec::with_capacity(p.genus() as usize);
    for n in 0..=g {
        if p.denumerant(n) <= ell {
            out.push(n);
        }
    }
    Ok(out)
}

/// Gaps under the default enumeration limit.
pub fn gaps(p: &SemigroupParams) -> Result<Vec<u64>> {
    gaps_with_limit(p, DEFAULT_GAP_LIMIT)
}

/// The l-Apery set {b(l·a + v) : 0 <= v <= a-1}, in order of v.
pub fn apery_set(p: &SemigroupParams) -> Vec<u64> {
    let (ell, a, b) = (p.ell(), p.a(), p.b());
    (0..a).map(|v| b * (ell * a + v)).collect()
}

/// If r(n) is exactly l+1, the pair (x0, y0) with n = l·a·b + a·x0 + b·y0,
/// 0 <= x0 <= b-1, 0 <= y0 <= a-1; absent otherwise.
pub fn decompose_exact(n: u64, p: &SemigroupParams) -> Option<(u64, u64)> {
    if p.denumerant(n) != p.ell() + 1 {
        return None;
    }
    debug_assert!(n >= p.lab());
    let m = n - p.lab();
    let y0 = (p.b_inverse_mod_a() as u128 * m as u128 % p.a() as u128) as u64;
    debug_assert!(m >= p.b() * y0);
    let x0 = (m - p.b() * y0) / p.a();
    debug_assert!(x0 <= p.b() - 1 && y0 <= p.a() - 1);
    Some((x0, y0))
}

/// Truth value of the biconditional [r(n) = l+1 exactly] <=> [r(g-n) = 0],
/// for 0 <= n <= g. Holds for every such n; callers assert it.
pub fn symmetry_equiv(n: u64, p: &SemigroupParams) -> Result<bool> {
    let g = p.frobenius();
    if n > g {
        return Err(Error::InvalidParams {
            reason: format!("n = {n} exceeds the l-Frobenius number {g}"),
        });
    }
    let lhs = p.denumerant(n) == p.ell() + 1;
    let rhs = p.denumerant(g - n) == 0;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(ell: u64, a: u64, b: u64) -> SemigroupParams {
        SemigroupParams::new(ell, a, b).unwrap()
    }

    /// Brute-force largest non-member / gap list, independent of the closed
    /// forms (counts representations by double loop).
    fn brute_r(n: u64, a: u64, b: u64) -> u64 {
        let mut c = 0;
        for y in 0..=n / b {
            if (n - b * y) % a == 0 {
                c += 1;
            }
        }
        c
    }

    #[test]
    fn params_validation() {
        assert!(SemigroupParams::new(1, 4, 6).is_err());
        assert!(SemigroupParams::new(1, 3, 3).is_err());
        assert!(SemigroupParams::new(1, 5, 3).is_err());
        assert!(SemigroupParams::new(1, 1, 3).is_err());
        assert!(SemigroupParams::new(u64::MAX / 2, 1_000_000, 1_000_001).is_err());
    }

    #[test]
    fn frobenius_examples() {
        assert_eq!(params(1, 2, 3).frobenius(), 7);
        assert_eq!(params(2, 3, 4).frobenius(), 29);
        assert_eq!(params(0, 3, 5).frobenius(), 7);
        // brute-force oracle: largest n with r(n) = 0 for l = 0
        let largest_gap = (0..=100).filter(|&n| brute_r(n, 3, 5) == 0).max();
        assert_eq!(largest_gap, Some(7));
    }

    #[test]
    fn genus_examples() {
        assert_eq!(params(0, 3, 5).genus(), 4);
        assert_eq!(params(1, 2, 3).genus(), 7);
        assert_eq!(params(0, 2, 3).genus(), 1);
    }

    #[test]
    fn representation_examples() {
        let r = count_representations(7, 2, 3).unwrap();
        assert_eq!(r.count, 1);
        assert_eq!(r.witnesses, vec![(2, 1)]);
        let r = count_representations(6, 2, 3).unwrap();
        assert_eq!(r.count, 2);
        assert_eq!(r.witnesses, vec![(3, 0), (0, 2)]);
        assert_eq!(count_representations(1, 2, 3).unwrap().count, 0);
        assert_eq!(count_representations(0, 2, 3).unwrap().count, 1);
    }

    #[test]
    fn membership_examples() {
        let p = params(1, 2, 3);
        assert!(!p.is_member(7));
        assert!(p.is_member(8)); // (4,0), (1,2)
        assert!(p.is_member(p.frobenius() + 1));
    }

    #[test]
    fn gaps_examples() {
        assert_eq!(gaps(&params(0, 3, 5)).unwrap(), vec![1, 2, 4, 7]);
        // 0 is a gap for l >= 1 since r(0) = 1
        assert_eq!(gaps(&params(1, 2, 3)).unwrap(), vec![0, 1, 2, 3, 4, 5, 7]);
        assert_eq!(gaps(&params(0, 2, 3)).unwrap(), vec![1]);
        let p = params(1, 100_000, 2_000_003);
        assert!(matches!(
            gaps(&p),
            Err(Error::GapLimitExceeded { .. })
        ));
    }

    #[test]
    fn apery_examples() {
        assert_eq!(apery_set(&params(1, 3, 5)), vec![15, 20, 25]);
        assert_eq!(apery_set(&params(0, 3, 5)), vec![0, 5, 10]);
        assert_eq!(apery_set(&params(2, 3, 4)), vec![24, 28, 32]);
        // spot-check the defining properties at (2,3,4)
        let p = params(2, 3, 4);
        assert!(p.denumerant(24) >= 3);
        assert!(p.denumerant(24 - 3) <= 2);
    }

    #[test]
    fn decompose_examples() {
        let p = params(1, 2, 3);
        assert_eq!(decompose_exact(8, &p), Some((1, 0)));
        assert_eq!(decompose_exact(9, &p), Some((0, 1)));
        assert_eq!(decompose_exact(7, &p), None);
    }

    #[test]
    fn symmetry_examples() {
        let p = params(1, 3, 5);
        for n in 0..=p.frobenius() {
            assert!(symmetry_equiv(n, &p).unwrap(), "n={n}");
        }
        // Sylvester's statement is the l = 0 instance
        let p0 = params(0, 3, 5);
        for n in 0..=p0.frobenius() {
            assert!(symmetry_equiv(n, &p0).unwrap(), "n={n}");
        }
        assert!(symmetry_equiv(p.frobenius() + 1, &p).is_err());
    }

    #[test]
    fn denumerant_matches_brute_small_grid() {
        for a in 2u64..=12 {
            for b in (a + 1)..=13 {
                if gcd_unchecked(a, b) != 1 {
                    continue;
                }
                let p = params(0, a, b);
                for n in 0..=3 * a * b {
                    assert_eq!(p.denumerant(n), brute_r(n, a, b), "n={n} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn membership_matches_brute() {
        for (ell, a, b) in [(0u64, 3u64, 5u64), (1, 2, 3), (2, 3, 4), (3, 5, 7), (1, 4, 9)] {
            let p = params(ell, a, b);
            for n in 0..=p.frobenius() + 2 * a * b {
                assert_eq!(p.is_member(n), brute_r(n, a, b) >= ell + 1, "n={n}");
            }
        }
    }

    #[test]
    fn gap_structure_small_grid() {
        // max(gaps) = frobenius and |gaps| = genus on a reduced grid
        for ell in 0..=3u64 {
            for a in 2u64..=10 {
                for b in (a + 1)..=12 {
                    if gcd_unchecked(a, b) != 1 {
                        continue;
                    }
                    let p = params(ell, a, b);
                    let gs = gaps(&p).unwrap();
                    assert_eq!(gs.len() as u64, p.genus(), "({ell},{a},{b})");
                    assert_eq!(*gs.last().unwrap(), p.frobenius(), "({ell},{a},{b})");
                }
            }
        }
    }
}

#[cfg(test)]
mod prop_tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(512))]

        /// Fast denumerant equals brute enumeration on random inputs.
        #[test]
        fn denumerant_matches_brute(n in 0u64..100_000, a in 2u64..100, off in 1u64..100) {
            let b = a + off;
            prop_assume!(gcd_unchecked(a, b) == 1);
            let p = SemigroupParams::new(0, a, b).unwrap();
            let brute = count_representations(n, a, b).unwrap().count;
            prop_assert_eq!(p.denumerant(n), brute);
        }

        /// Shift-by-ab adds exactly one representation.
        #[test]
        fn shift_adds_one(n in 0u64..50_000, a in 2u64..60, off in 1u64..60) {
            let b = a + off;
            prop_assume!(gcd_unchecked(a, b) == 1);
            let p = SemigroupParams::new(0, a, b).unwrap();
            prop_assert_eq!(p.denumerant(n + a * b), p.denumerant(n) + 1);
        }

        /// Everything above the l-Frobenius number is a member.
        #[test]
        fn above_frobenius_is_member(ell in 0u64..4, a in 2u64..40, off in 1u64..40, k in 1u64..200) {
            let b = a + off;
            prop_assume!(gcd_unchecked(a, b) == 1);
            let p = SemigroupParams::new(ell, a, b).unwrap();
            prop_assume!(k <= 2 * a * b);
            prop_assert!(p.is_member(p.frobenius() + k));
        }
    }
}
