//! Spot checks of the quoted analytic prime-counting inequalities against
//! exact sieve counts: the pi-vs-Li error bound, the Brun-Titchmarsh interval
//! bound, the two-sided progression bound, and the elementary pi(x) > x/log x
//! floor. Samples that violate a precondition are reported as skipped.

use crate::error::{Error, Result};
use crate::quadrature::li;
use crate::report::{CheckReport, MinSlack, ScanMode, Witness};
use crate::sieve::PrimeTable;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnalyticLemma {
    /// |pi(x) - Li(x)| < 0.0008375·x/log^2 x, for x >= 1474279333.
    PiLiGap,
    /// pi(x+y;k,l) - pi(x;k,l) < 2y/(phi(k)·log(y/k)), for 1 <= k < y.
    BrunTitchmarsh,
    /// x/(phi(m)·log x) < pi(x;m,l) < same·(1 + 5/(2 log x)),
    /// for gcd(m,l) = 1, 1 <= m <= 1200, x >= 50m^2.
    ProgressionTwoSided,
    /// pi(x) > x/log x for x >= 17.
    PiLower,
}

impl AnalyticLemma {
    pub fn id(&self) -> &'static str {
        match self {
            AnalyticLemma::PiLiGap => "pi-li-gap",
            AnalyticLemma::BrunTitchmarsh => "brun-titchmarsh",
            AnalyticLemma::ProgressionTwoSided => "progression-two-sided",
            AnalyticLemma::PiLower => "pi-lower",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "pi-li-gap" => Some(AnalyticLemma::PiLiGap),
            "brun-titchmarsh" => Some(AnalyticLemma::BrunTitchmarsh),
            "progression-two-sided" => Some(AnalyticLemma::ProgressionTwoSided),
            "pi-lower" => Some(AnalyticLemma::PiLower),
            _ => None,
        }
    }

    pub fn all() -> &'static [AnalyticLemma] {
        &[
            AnalyticLemma::PiLiGap,
            AnalyticLemma::BrunTitchmarsh,
            AnalyticLemma::ProgressionTwoSided,
            AnalyticLemma::PiLower,
        ]
    }
}

/// One sample point for a lemma check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LemmaSample {
    PiLiGap { x: u64 },
    BrunTitchmarsh { x: u64, y: u64, k: u64, l: i64 },
    ProgressionTwoSided { m: u64, l: i64, x: u64 },
    PiLower { x: u64 },
}

impl LemmaSample {
    fn args(&self) -> Vec<i64> {
        match *self {
            LemmaSample::PiLiGap { x } => vec![x as i64],
            LemmaSample::BrunTitchmarsh { x, y, k, l } => vec![x as i64, y as i64, k as i64, l],
            LemmaSample::ProgressionTwoSided { m, l, x } => vec![m as i64, l, x as i64],
            LemmaSample::PiLower { x } => vec![x as i64],
        }
    }

    fn lemma(&self) -> AnalyticLemma {
        match self {
            LemmaSample::PiLiGap { .. } => AnalyticLemma::PiLiGap,
            LemmaSample::BrunTitchmarsh { .. } => AnalyticLemma::BrunTitchmarsh,
            LemmaSample::ProgressionTwoSided { .. } => AnalyticLemma::ProgressionTwoSided,
            LemmaSample::PiLower { .. } => AnalyticLemma::PiLower,
        }
    }
}

enum Outcome {
    Pass(Witness),
    Fail(Witness),
    Skip(String, Vec<i64>),
}

fn check_sample(t: &PrimeTable, s: &LemmaSample) -> Result<Outcome> {
    let args = s.args();
    Ok(match *s {
        LemmaSample::PiLiGap { x } => {
            if x < 1_474_279_333 {
                return Ok(Outcome::Skip(
                    format!("x = {x} below the bound's validity threshold 1474279333"),
                    args,
                ));
            }
            let pi_x = t.pi(x)? as f64;
            let li_x = li(x as f64)?;
            let lhs = (pi_x - li_x).abs();
            let rhs = 0.0008375 * x as f64 / (x as f64).ln().powi(2);
            let w = Witness {
                args,
                observed: lhs,
                bound: rhs,
                slack: rhs - lhs,
                note: None,
            };
            if lhs < rhs {
                Outcome::Pass(w)
            } else {
                Outcome::Fail(w)
            }
        }
        LemmaSample::BrunTitchmarsh { x, y, k, l } => {
            if k < 1 || k >= y {
                return Ok(Outcome::Skip(format!("requires 1 <= k < y, got k={k}, y={y}"), args));
            }
            let count = t.pi_progression_interval(x, x + y, k, l)? as f64;
            let phi_k = crate::arith::euler_phi(k)? as f64;
            let rhs = 2.0 * y as f64 / (phi_k * (y as f64 / k as f64).ln());
            let w = Witness {
                args,
                observed: count,
                bound: rhs,
                slack: rhs - count,
                note: None,
            };
            if count < rhs {
                Outcome::Pass(w)
            } else {
                Outcome::Fail(w)
            }
        }
        LemmaSample::ProgressionTwoSided { m, l, x } => {
            if m < 1 || m > 1200 {
                return Ok(Outcome::Skip(format!("requires 1 <= m <= 1200, got {m}"), args));
            }
            if x < 50 * m * m {
                return Ok(Outcome::Skip(
                    format!("requires x >= 50m^2 = {}, got {x}", 50 * m * m),
                    args,
                ));
            }
            let g = crate::arith::gcd(m, l.unsigned_abs() % m.max(1))?;
            if m > 1 && g != 1 {
                return Ok(Outcome::Skip(format!("requires gcd(m,l)=1, gcd = {g}"), args));
            }
            let count = t.pi_progression_interval(0, x, m, l)? as f64;
            let phi_m = crate::arith::euler_phi(m)? as f64;
            let base = x as f64 / (phi_m * (x as f64).ln());
            let upper = base * (1.0 + 5.0 / (2.0 * (x as f64).ln()));
            let lower_ok = base < count;
            let upper_ok = count < upper;
            let w = Witness {
                args,
                observed: count,
                bound: base,
                slack: (count - base).min(upper - count),
                note: Some(format!("lower {base:.6}, upper {upper:.6}")),
            };
            if lower_ok && upper_ok {
                Outcome::Pass(w)
            } else {
                Outcome::Fail(w)
            }
        }
        LemmaSample::PiLower { x } => {
            if x < 17 {
                return Ok(Outcome::Skip(format!("requires x >= 17, got {x}"), args));
            }
            let count = t.pi(x)? as f64;
            let rhs = x as f64 / (x as f64).ln();
            let w = Witness {
                args,
                observed: count,
                bound: rhs,
                slack: count - rhs,
                note: None,
            };
            if count > rhs {
                Outcome::Pass(w)
            } else {
                Outcome::Fail(w)
            }
        }
    })
}

/// Run one lemma's inequality over the given samples. Overall pass iff every
/// in-range sample satisfies it; precondition violations are skipped.
pub fn check_analytic_lemma(
    t: &PrimeTable,
    lemma: AnalyticLemma,
    samples: &[LemmaSample],
) -> Result<CheckReport> {
    let start = Instant::now();
    let mut passed = 0;
    let mut failed = 0;
    let mut skipped = 0;
    let mut failures = Vec::new();
    let mut min_slack = MinSlack::new(5);
    for s in samples {
        if s.lemma() != lemma {
            return Err(Error::InvalidParams {
                reason: format!("sample {:?} does not belong to lemma {}", s, lemma.id()),
            });
        }
        match check_sample(t, s)? {
            Outcome::Pass(w) => {
                passed += 1;
                min_slack.push(w);
            }
            Outcome::Fail(w) => {
                failed += 1;
                failures.push(w);
            }
            Outcome::Skip(reason, args) => {
                skipped += 1;
                min_slack.push(Witness {
                    args,
                    observed: f64::NAN,
                    bound: f64::NAN,
                    slack: f64::INFINITY,
                    note: Some(format!("skipped: {reason}")),
                });
            }
        }
    }
    Ok(CheckReport {
        check_id: lemma.id().to_string(),
        grid: format!("{} samples", samples.len()),
        mode: ScanMode::Exact,
        exhaustive: true,
        sampled_fraction: None,
        total: samples.len() as u64,
        passed,
        failed,
        skipped,
        failures,
        minimal_slack: min_slack.into_vec(),
        wall_ms: start.elapsed().as_millis() as u64,
    })
}

/// Built-in sample set per lemma, clipped to the table limit.
pub fn default_samples(lemma: AnalyticLemma, limit: u64) -> Vec<LemmaSample> {
    match lemma {
        AnalyticLemma::PiLiGap => [1_474_279_333u64, 1_500_000_000, 1_555_555_555, 1_572_000_000]
            .into_iter()
            .map(|x| LemmaSample::PiLiGap { x: x.min(limit) })
            .collect(),
        AnalyticLemma::BrunTitchmarsh => {
            let mut v = vec![
                LemmaSample::BrunTitchmarsh { x: 100, y: 50, k: 3, l: 1 },
                LemmaSample::BrunTitchmarsh { x: 0, y: 1000, k: 7, l: 3 },
                LemmaSample::BrunTitchmarsh { x: 10_000, y: 5_000, k: 12, l: 5 },
            ];
            if limit >= 2_000_000 {
                v.push(LemmaSample::BrunTitchmarsh { x: 1_000_000, y: 1_000_000, k: 11, l: -2 });
            }
            v
        }
        AnalyticLemma::ProgressionTwoSided => {
            let mut v = vec![
                LemmaSample::ProgressionTwoSided { m: 3, l: 1, x: 450 },
                LemmaSample::ProgressionTwoSided { m: 4, l: 3, x: 10_000 },
            ];
            if limit >= 500_000 {
                v.push(LemmaSample::ProgressionTwoSided { m: 30, l: 7, x: 500_000 });
            }
            if limit >= 72_000_000 {
                v.push(LemmaSample::ProgressionTwoSided { m: 1200, l: -1, x: 72_000_000 });
            }
            v
        }
        AnalyticLemma::PiLower => [17u64, 100, 1_000, 65_536, 1_000_000, 10_000_000]
            .into_iter()
            .filter(|&x| x <= limit)
            .collect::<Vec<_>>()
            .into_iter()
            .map(|x| LemmaSample::PiLower { x })
            .collect(),
    }
}
