//! Constructions with prescribed vanishing moments.
//!
//! The building block is a 5-point set whose k-th moment equals the moment
//! function of order k/t evaluated at a free parameter x. Order t/t = 1
//! vanishes identically, so degree t always dies; a rejection-sampled x
//! keeps every other order within the degree bound away from zero. One
//! such block per target degree, multiplied together pointwise, yields a
//! set whose vanishing degrees within the bound are exactly the targets.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use rand_chacha::ChaCha8Rng;
use rand_core::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::design::{ConstructionTrace, Design, TraceStep, DEFAULT_SEPARATION};
use crate::error::{Error, Result};
use crate::moments;
use crate::point::UnitPoint;

/// Fallback degree bound when ten times the largest target is smaller.
pub const K_MAX_FLOOR: u32 = 200;

/// Target degrees: a non-empty set of distinct positive integers, kept
/// sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrengthSpec {
    degrees: Vec<u32>,
}

impl StrengthSpec {
    pub fn new(degrees: impl IntoIterator<Item = u32>) -> Result<StrengthSpec> {
        let mut degrees: Vec<u32> = degrees.into_iter().collect();
        degrees.sort_unstable();
        if degrees.is_empty() {
            return Err(Error::InvalidStrength("at least one degree is required".into()));
        }
        if degrees[0] == 0 {
            return Err(Error::InvalidStrength("degrees must be positive".into()));
        }
        if let Some(pair) = degrees.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidStrength(format!("degree {} appears twice", pair[0])));
        }
        Ok(StrengthSpec { degrees })
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn max_degree(&self) -> u32 {
        *self.degrees.last().expect("spec is non-empty")
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn contains(&self, k: u32) -> bool {
        self.degrees.binary_search(&k).is_ok()
    }
}

impl fmt::Display for StrengthSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.degrees.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for StrengthSpec {
    type Err = Error;

    /// Accepts a comma-separated list such as `"1,3,4,15"`.
    fn from_str(s: &str) -> Result<StrengthSpec> {
        let degrees: Vec<u32> = s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse()
                    .map_err(|_| Error::InvalidStrength(format!("cannot parse degree {part:?}")))
            })
            .collect::<Result<_>>()?;
        StrengthSpec::new(degrees)
    }
}

/// Knobs for the rejection-sampling parameter search.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Degrees up to this bound are certified.
    pub k_max: u32,
    /// Margin every non-target order must clear.
    pub margin_min: f64,
    /// Pairwise separation required of constructed point sets.
    pub separation: f64,
    /// Candidates drawn before the search gives up.
    pub max_retries: u32,
    pub seed: u64,
    /// Distance kept from the parameter interval's endpoints and from the
    /// degenerate center point.
    pub domain_shrink: f64,
}

impl SearchConfig {
    /// Defaults with the degree bound at `max(200, 10·max T)`.
    pub fn for_strength(spec: &StrengthSpec, seed: u64) -> SearchConfig {
        SearchConfig {
            k_max: spec.max_degree().saturating_mul(10).max(K_MAX_FLOOR),
            margin_min: 1e-6,
            separation: DEFAULT_SEPARATION,
            max_retries: 10_000,
            seed,
            domain_shrink: 1e-3,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k_max == 0 {
            return Err(Error::InvalidConfig("k_max must be positive".into()));
        }
        if !self.margin_min.is_finite() || self.margin_min <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "margin_min must be positive and finite, got {}",
                self.margin_min
            )));
        }
        if !self.separation.is_finite() || self.separation <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "separation must be positive and finite, got {}",
                self.separation
            )));
        }
        if self.max_retries == 0 {
            return Err(Error::InvalidConfig("max_retries must be positive".into()));
        }
        // 0.375 collapses both halves of the sampling domain to a point
        if !(self.domain_shrink > 0.0 && self.domain_shrink < 0.375) {
            return Err(Error::InvalidConfig(format!(
                "domain_shrink must lie in (0, 0.375), got {}",
                self.domain_shrink
            )));
        }
        Ok(())
    }

    /// Sampling domain `(-1+ε, -1/4-ε) ∪ (-1/4+ε, 1/2-ε)`: the parameter
    /// interval with its endpoints and degenerate center excluded.
    fn sample_domain(&self) -> SampleDomain {
        let e = self.domain_shrink;
        SampleDomain { a_lo: -1.0 + e, a_hi: -0.25 - e, b_lo: -0.25 + e, b_hi: 0.5 - e }
    }
}

struct SampleDomain {
    a_lo: f64,
    a_hi: f64,
    b_lo: f64,
    b_hi: f64,
}

impl SampleDomain {
    fn draw(&self, rng: &mut ChaCha8Rng) -> f64 {
        let len_a = self.a_hi - self.a_lo;
        let len_b = self.b_hi - self.b_lo;
        let u = unit_f64(rng.next_u64()) * (len_a + len_b);
        if u < len_a {
            self.a_lo + u
        } else {
            self.b_lo + (u - len_a)
        }
    }
}

/// Uniform in [0, 1) from the top 53 bits.
fn unit_f64(bits: u64) -> f64 {
    (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// The 5-point set `{1, e^{±i·arccos(x)/t}, e^{±i·arccos(-x-1/2)/t}}`.
///
/// Its k-th moment equals the moment function of order k/t at x, so degree
/// t (order 1) always vanishes. Fails with `Degenerate` when the five
/// points do not stay `separation` apart, which happens near x = -1/4
/// (the two arccos branches meet) and toward the interval's endpoints.
pub fn construct_singleton(t: u32, x: f64, separation: f64) -> Result<Design> {
    if t == 0 {
        return Err(Error::Domain("degree must be positive".into()));
    }
    moments::check_domain(x)?;
    let tf = f64::from(t);
    let a = x.acos() / tf;
    let b = (-x - 0.5).acos() / tf;
    Design::from_angles(&[0.0, a, -a, b, -b], separation)
}

/// Rejection-sample a parameter for degree `t`: every non-target order
/// within the bound must clear `cfg.margin_min`, the 5-point set must be
/// non-degenerate, and, when a partial product is given, multiplying into
/// it must stay collision-free. Deterministic in `cfg.seed`; the first
/// acceptable candidate wins.
pub fn search_parameter(t: u32, cfg: &SearchConfig, context: Option<&Design>) -> Result<f64> {
    cfg.validate()?;
    if t == 0 || t > cfg.k_max {
        return Err(Error::InvalidConfig(format!(
            "degree {t} must lie in 1..={}",
            cfg.k_max
        )));
    }
    let domain = cfg.sample_domain();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.max_retries {
        let x = domain.draw(&mut rng);
        if !moments::margin_at_least(t, x, cfg.k_max, cfg.margin_min)? {
            continue;
        }
        let block = match construct_singleton(t, x, cfg.separation) {
            Ok(d) => d,
            Err(Error::Degenerate { .. }) => continue,
            Err(e) => return Err(e),
        };
        if let Some(partial) = context {
            match partial.product(&block, cfg.separation) {
                Ok(_) => {}
                Err(Error::Collision { .. }) => continue,
                Err(e) => return Err(e),
            }
        }
        return Ok(x);
    }
    Err(Error::SearchExhausted { degree: t, attempts: cfg.max_retries })
}

/// Build a design whose vanishing degrees within `cfg.k_max` are exactly
/// the target set, one 5-point block per degree, processed ascending.
/// The result carries a trace from which it can be replayed bit for bit.
pub fn construct_design(spec: &StrengthSpec, cfg: &SearchConfig) -> Result<Design> {
    construct_design_ordered(spec.degrees(), cfg)
}

/// Same construction with the target degrees processed in the given order.
pub fn construct_design_ordered(degrees: &[u32], cfg: &SearchConfig) -> Result<Design> {
    let spec = StrengthSpec::new(degrees.iter().copied())?;
    cfg.validate()?;
    if cfg.k_max < spec.max_degree() {
        return Err(Error::Bound { k_max: cfg.k_max, max_claimed: spec.max_degree() });
    }
    let mut steps = Vec::with_capacity(degrees.len());
    let mut design: Option<Design> = None;
    for &t in degrees {
        let x = search_parameter(t, cfg, design.as_ref())?;
        let block = construct_singleton(t, x, cfg.separation)?;
        design = Some(match design {
            None => block,
            Some(partial) => partial.product(&block, cfg.separation)?,
        });
        steps.push(TraceStep { degree: t, x });
    }
    let design = design.expect("spec is non-empty");
    Ok(design.with_trace(ConstructionTrace { seed: cfg.seed, steps, config: Some(cfg.clone()) }))
}

/// Rebuild a design from its recorded construction steps.
pub fn replay_trace(trace: &ConstructionTrace) -> Result<Design> {
    if trace.steps.is_empty() {
        return Err(Error::Trace("trace has no steps".into()));
    }
    let separation = trace.config.as_ref().map_or(DEFAULT_SEPARATION, |c| c.separation);
    let mut design: Option<Design> = None;
    for step in &trace.steps {
        let block = construct_singleton(step.degree, step.x, separation)?;
        design = Some(match design {
            None => block,
            Some(partial) => partial.product(&block, separation)?,
        });
    }
    Ok(design.expect("trace is non-empty").with_trace(trace.clone()))
}

/// The n-th roots of unity rotated by `offset`.
pub fn regular_ngon(n: u32, offset: f64) -> Result<Design> {
    if n == 0 {
        return Err(Error::EmptyDesign);
    }
    let points =
        (0..n).map(|j| UnitPoint::new(offset + TAU * f64::from(j) / f64::from(n))).collect();
    Design::try_new(points, DEFAULT_SEPARATION)
}

/// Two antipodal pairs `{1, -1, e^{iθ}, -e^{iθ}}`; degenerate when θ is
/// close to a multiple of π.
pub fn antipodal_pairs(theta: f64, separation: f64) -> Result<Design> {
    use std::f64::consts::PI;
    Design::from_angles(&[0.0, PI, theta, theta + PI], separation)
}
