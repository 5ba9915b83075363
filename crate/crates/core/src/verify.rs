//! Certify the vanishing set of a design's moments up to a degree bound.

use serde::{Deserialize, Deserializer, Serialize};

use crate::construct::StrengthSpec;
use crate::design::Design;
use crate::error::{Error, Result};
use crate::moments::{self, Rational};

/// How one degree was classified against the zero tolerance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MomentClass {
    #[serde(rename = "ZERO")]
    Zero,
    #[serde(rename = "NONZERO")]
    NonZero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeRecord {
    pub k: u32,
    pub magnitude: f64,
    pub class: MomentClass,
}

/// Outcome of checking a claimed vanishing set against computed moments:
/// PASS iff the degrees classified as zero are exactly the claimed ones.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub k_max: u32,
    pub zero_tol: f64,
    pub claimed: Vec<u32>,
    pub verdict: Verdict,
    pub max_zero_residual: f64,
    /// Infinite when no degree was classified nonzero; serialized as null.
    #[serde(deserialize_with = "null_as_infinity")]
    pub min_nonzero_margin: f64,
    pub degrees: Vec<DegreeRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub claimed_but_nonzero: Vec<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub unclaimed_but_zero: Vec<u32>,
}

fn null_as_infinity<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<VerificationReport> {
        Ok(serde_json::from_str(text)?)
    }

    /// One `k,magnitude,class` row per degree.
    pub fn to_csv(&self) -> String {
        use std::fmt::Write;
        let mut out = String::from("k,magnitude,class\n");
        for rec in &self.degrees {
            let class = match rec.class {
                MomentClass::Zero => "ZERO",
                MomentClass::NonZero => "NONZERO",
            };
            let _ = writeln!(out, "{},{:e},{}", rec.k, rec.magnitude, class);
        }
        out
    }
}

/// Classify every degree up to `k_max` and compare the zero set against
/// the claim.
pub fn verify(
    design: &Design,
    claimed: &StrengthSpec,
    k_max: u32,
    zero_tol: f64,
) -> Result<VerificationReport> {
    if k_max < claimed.max_degree() {
        return Err(Error::Bound { k_max, max_claimed: claimed.max_degree() });
    }
    if !zero_tol.is_finite() || zero_tol <= 0.0 {
        return Err(Error::InvalidConfig(format!(
            "zero tolerance must be positive and finite, got {zero_tol}"
        )));
    }
    let mut degrees = Vec::with_capacity(k_max as usize);
    let mut max_zero_residual: f64 = 0.0;
    let mut min_nonzero_margin = f64::INFINITY;
    let mut claimed_but_nonzero = Vec::new();
    let mut unclaimed_but_zero = Vec::new();
    for k in 1..=k_max {
        let magnitude = design.moment(k).magnitude();
        let class = if magnitude <= zero_tol { MomentClass::Zero } else { MomentClass::NonZero };
        match class {
            MomentClass::Zero => {
                max_zero_residual = max_zero_residual.max(magnitude);
                if !claimed.contains(k) {
                    unclaimed_but_zero.push(k);
                }
            }
            MomentClass::NonZero => {
                min_nonzero_margin = min_nonzero_margin.min(magnitude);
                if claimed.contains(k) {
                    claimed_but_nonzero.push(k);
                }
            }
        }
        degrees.push(DegreeRecord { k, magnitude, class });
    }
    let verdict = if claimed_but_nonzero.is_empty() && unclaimed_but_zero.is_empty() {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(VerificationReport {
        k_max,
        zero_tol,
        claimed: claimed.degrees().to_vec(),
        verdict,
        max_zero_residual,
        min_nonzero_margin,
        degrees,
        claimed_but_nonzero,
        unclaimed_but_zero,
    })
}

/// Degrees up to the bound whose moment magnitude stays within the zero
/// tolerance. Says nothing about degrees beyond `k_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundedStrength {
    pub k_max: u32,
    pub zero_tol: f64,
    pub degrees: Vec<u32>,
}

impl BoundedStrength {
    pub fn contains(&self, k: u32) -> bool {
        self.degrees.binary_search(&k).is_ok()
    }
}

pub fn strength_within_bound(design: &Design, k_max: u32, zero_tol: f64) -> BoundedStrength {
    let degrees =
        (1..=k_max).filter(|&k| design.moment(k).magnitude() <= zero_tol).collect();
    BoundedStrength { k_max, zero_tol, degrees }
}

const CROSS_CHECK_K_MAX: u32 = 100;
const CROSS_CHECK_TOL: f64 = 1e-10;

/// Check a single-block design's geometric moments against the analytic
/// family its trace claims to have sampled. Requires a one-step trace.
pub fn cross_check(design: &Design) -> Result<bool> {
    let trace =
        design.trace().ok_or_else(|| Error::Trace("design carries no construction trace".into()))?;
    let [step] = trace.steps.as_slice() else {
        return Err(Error::Trace(format!(
            "analytic cross-check needs exactly one construction step, found {}",
            trace.steps.len()
        )));
    };
    for k in 1..=CROSS_CHECK_K_MAX {
        let analytic = moments::eval(Rational::new(k, step.degree)?, step.x)?;
        let m = design.moment(k);
        if (m.re - analytic).hypot(m.im) > CROSS_CHECK_TOL {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{construct_singleton, regular_ngon, StrengthSpec};
    use crate::design::{ConstructionTrace, TraceStep};

    #[test]
    fn five_gon_strength_within_bound() {
        let d = regular_ngon(5, 0.0).unwrap();
        let bounded = strength_within_bound(&d, 12, 5.0 * 1e-10);
        assert_eq!(bounded.degrees, [1, 2, 3, 4, 6, 7, 8, 9, 11, 12]);
        assert!(bounded.contains(6) && !bounded.contains(5));
    }

    #[test]
    fn verdict_fails_on_unclaimed_zero() {
        // the square also kills degrees 1 and 3, so claiming {1, 2} fails
        let d = regular_ngon(4, 0.0).unwrap();
        let claimed = StrengthSpec::new([1, 2]).unwrap();
        let report = verify(&d, &claimed, 12, 4.0 * 1e-10).unwrap();
        assert!(!report.passed());
        assert_eq!(report.unclaimed_but_zero, [3, 5, 6, 7, 9, 10, 11]);
        assert!(report.claimed_but_nonzero.is_empty());
    }

    #[test]
    fn verdict_fails_on_claimed_nonzero() {
        let d = regular_ngon(4, 0.0).unwrap();
        let claimed = StrengthSpec::new([1, 2, 3, 4, 5, 6, 7]).unwrap();
        let report = verify(&d, &claimed, 7, 4.0 * 1e-10).unwrap();
        assert!(!report.passed());
        assert_eq!(report.claimed_but_nonzero, [4]);
    }

    #[test]
    fn verify_passes_an_honest_claim() {
        let d = regular_ngon(4, 0.0).unwrap();
        let claimed = StrengthSpec::new([1, 2, 3, 5, 6, 7]).unwrap();
        let report = verify(&d, &claimed, 7, 4.0 * 1e-10).unwrap();
        assert!(report.passed());
        assert!(report.max_zero_residual <= 4.0 * 1e-10);
        assert!((report.min_nonzero_margin - 4.0).abs() < 1e-12);
        assert_eq!(report.degrees.len(), 7);
    }

    #[test]
    fn verify_rejects_low_bound_and_bad_tolerance() {
        let d = regular_ngon(4, 0.0).unwrap();
        let claimed = StrengthSpec::new([9]).unwrap();
        assert!(matches!(
            verify(&d, &claimed, 7, 1e-10),
            Err(Error::Bound { k_max: 7, max_claimed: 9 })
        ));
        let claimed = StrengthSpec::new([1]).unwrap();
        assert!(verify(&d, &claimed, 7, 0.0).is_err());
    }

    #[test]
    fn cross_check_accepts_honest_trace_and_rejects_forged_one() {
        let x = -0.6;
        let block = construct_singleton(3, x, 1e-9).unwrap();
        let honest = block.clone().with_trace(ConstructionTrace {
            seed: 0,
            steps: vec![TraceStep { degree: 3, x }],
            config: None,
        });
        assert!(cross_check(&honest).unwrap());
        let forged = block.clone().with_trace(ConstructionTrace {
            seed: 0,
            steps: vec![TraceStep { degree: 3, x: -0.3 }],
            config: None,
        });
        assert!(!cross_check(&forged).unwrap());
        assert!(cross_check(&block).is_err());
        let two_steps = block.with_trace(ConstructionTrace {
            seed: 0,
            steps: vec![TraceStep { degree: 3, x }, TraceStep { degree: 5, x }],
            config: None,
        });
        assert!(matches!(cross_check(&two_steps), Err(Error::Trace(_))));
    }

    #[test]
    fn report_round_trips_through_json_and_csv() {
        let d = regular_ngon(4, 0.0).unwrap();
        let claimed = StrengthSpec::new([1, 2, 3]).unwrap();
        let report = verify(&d, &claimed, 5, 4.0 * 1e-10).unwrap();
        let back = VerificationReport::from_json(&report.to_json()).unwrap();
        assert_eq!(report, back);
        let json = report.to_json();
        assert!(json.contains("\"verdict\":\"FAIL\""), "{json}");
        assert!(json.contains("\"class\":\"NONZERO\""), "{json}");
        let csv = report.to_csv();
        assert_eq!(csv.lines().next().unwrap(), "k,magnitude,class");
        assert_eq!(csv.lines().count(), 6);
        assert!(csv.lines().nth(4).unwrap().starts_with("4,4"));
    }
}
