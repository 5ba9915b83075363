//! The one-parameter moment family behind the 5-point construction and
//! tools for locating its zeros.
//!
//! For a parameter `x` in `(-1, 1/2)` the family is
//!
//! ```text
//! f_r(x) = 1 + 2 cos(r·arccos x) + 2 cos(r·arccos(-x - 1/2))
//! ```
//!
//! which equals the r-th moment of the 5-point set built from `x` when
//! `r = k/t` (see `construct`). `f_1` vanishes identically; every other
//! order has finitely many zeros.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A positive rational order, kept in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rational {
    num: u32,
    den: u32,
}

impl Rational {
    pub fn new(num: u32, den: u32) -> Result<Rational> {
        if num == 0 || den == 0 {
            return Err(Error::Domain(format!("order {num}/{den} must be positive")));
        }
        let g = gcd(num, den);
        Ok(Rational { num: num / g, den: den / g })
    }

    pub fn integer(k: u32) -> Rational {
        assert!(k >= 1, "integer order must be positive");
        Rational { num: k, den: 1 }
    }

    pub fn num(self) -> u32 {
        self.num
    }

    pub fn den(self) -> u32 {
        self.den
    }

    pub fn is_one(self) -> bool {
        self.num == 1 && self.den == 1
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `"3"` or `"3/2"`.
    fn from_str(s: &str) -> Result<Rational> {
        let bad = |_| Error::Domain(format!("cannot parse order from {s:?}"));
        match s.split_once('/') {
            None => Rational::new(s.trim().parse().map_err(bad)?, 1),
            Some((n, d)) => {
                Rational::new(n.trim().parse().map_err(bad)?, d.trim().parse().map_err(bad)?)
            }
        }
    }
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn check_domain(x: f64) -> Result<()> {
    if !x.is_finite() || x <= -1.0 || x >= 0.5 {
        return Err(Error::Domain(format!("parameter {x} lies outside (-1, 1/2)")));
    }
    Ok(())
}

/// Evaluate the moment function of order `r` at `x`.
///
/// The order is applied as `num·arccos(·)/den` so the rational never gets
/// rounded to a float itself.
pub fn eval(r: Rational, x: f64) -> Result<f64> {
    check_domain(x)?;
    let num = f64::from(r.num);
    let den = f64::from(r.den);
    let a = x.acos();
    let b = (-x - 0.5).acos();
    Ok(1.0 + 2.0 * (num * a / den).cos() + 2.0 * (num * b / den).cos())
}

/// Trig-free oracle for integer orders, via the Chebyshev identity
/// `cos(k·arccos u) = T_k(u)` and the three-term recurrence.
pub fn eval_chebyshev(k: u32, x: f64) -> Result<f64> {
    check_domain(x)?;
    Ok(1.0 + 2.0 * chebyshev_t(k, x) + 2.0 * chebyshev_t(k, -x - 0.5))
}

fn chebyshev_t(k: u32, u: f64) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let (mut prev, mut cur) = (1.0, u);
    for _ in 1..k {
        (prev, cur) = (cur, 2.0 * u * cur - prev);
    }
    cur
}

/// Smallest `|f_{k/t}(x)|` over degrees `k ≤ k_max`, `k ≠ t`: how far the
/// parameter stays from producing an unwanted vanishing moment.
pub fn margin(t: u32, x: f64, k_max: u32) -> Result<f64> {
    if t == 0 {
        return Err(Error::Domain("degree must be positive".into()));
    }
    check_domain(x)?;
    let mut min = f64::INFINITY;
    for k in 1..=k_max {
        if k == t {
            continue;
        }
        min = min.min(eval(Rational::new(k, t)?, x)?.abs());
    }
    Ok(min)
}

/// Early-exit variant for the rejection sampler: true iff no order within
/// the bound dips below `threshold`.
pub(crate) fn margin_at_least(t: u32, x: f64, k_max: u32, threshold: f64) -> Result<bool> {
    for k in 1..=k_max {
        if k == t {
            continue;
        }
        if eval(Rational::new(k, t)?, x)?.abs() < threshold {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Grid values at or below this magnitude everywhere mean the order is
/// reported identically zero.
const IDENTICALLY_ZERO_TOL: f64 = 1e-12;
/// Width to which each sign-change bracket is bisected.
const BRACKET_WIDTH: f64 = 1e-12;
/// Residual every refined zero must reach (or the bracket hits the
/// floating-point floor first).
const ZERO_RESIDUAL: f64 = 1e-10;

/// Zeros of one order of the moment family, located by sign-change
/// bracketing on a uniform grid.
///
/// A grid only witnesses sign changes: a zero the function touches without
/// crossing, or a pair of zeros inside one grid cell, will not be reported.
/// The orders this crate cares about have simple, well-separated zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroScanResult {
    pub r: Rational,
    pub lo: f64,
    pub hi: f64,
    pub grid_step: f64,
    /// Refined brackets, one per zero, with a sign change across each.
    pub brackets: Vec<(f64, f64)>,
    /// Bracket midpoints, in increasing order.
    pub zeros: Vec<f64>,
    pub identically_zero: bool,
}

impl ZeroScanResult {
    /// One `r_num,r_den,lo,hi,zero` row per zero; a single row with
    /// `IDENTICALLY_ZERO` in the zero column when the whole grid vanishes.
    pub fn to_csv(&self) -> String {
        use fmt::Write;
        let mut out = String::from("r_num,r_den,lo,hi,zero\n");
        if self.identically_zero {
            let _ = writeln!(
                out,
                "{},{},{},{},IDENTICALLY_ZERO",
                self.r.num, self.r.den, self.lo, self.hi
            );
        } else {
            for z in &self.zeros {
                let _ = writeln!(out, "{},{},{},{},{}", self.r.num, self.r.den, self.lo, self.hi, z);
            }
        }
        out
    }
}

/// Scan `[lo, hi] ⊂ (-1, 1/2)` with `steps` uniform grid cells and bisect
/// every sign change down to a residual of `1e-10`.
pub fn scan_zeros(r: Rational, lo: f64, hi: f64, steps: u32) -> Result<ZeroScanResult> {
    if !lo.is_finite() || !hi.is_finite() || lo <= -1.0 || hi >= 0.5 || lo >= hi {
        return Err(Error::Domain(format!(
            "scan interval [{lo}, {hi}] must satisfy -1 < lo < hi < 1/2"
        )));
    }
    if steps < 2 {
        return Err(Error::Domain("a scan needs at least 2 grid cells".into()));
    }
    let n = steps as usize;
    let span = hi - lo;
    let grid: Vec<f64> =
        (0..=n).map(|i| if i == n { hi } else { lo + span * i as f64 / n as f64 }).collect();
    let values: Vec<f64> = grid.iter().map(|&x| eval(r, x)).collect::<Result<_>>()?;

    let mut result = ZeroScanResult {
        r,
        lo,
        hi,
        grid_step: span / n as f64,
        brackets: Vec::new(),
        zeros: Vec::new(),
        identically_zero: false,
    };
    if values.iter().all(|v| v.abs() <= IDENTICALLY_ZERO_TOL) {
        result.identically_zero = true;
        return Ok(result);
    }
    for i in 0..n {
        if values[i] == 0.0 {
            result.brackets.push((grid[i], grid[i]));
            result.zeros.push(grid[i]);
        } else if values[i] * values[i + 1] < 0.0 {
            let (zero, b_lo, b_hi) = bisect(r, grid[i], grid[i + 1], values[i])?;
            result.brackets.push((b_lo, b_hi));
            result.zeros.push(zero);
        }
    }
    if values[n] == 0.0 {
        result.brackets.push((grid[n], grid[n]));
        result.zeros.push(grid[n]);
    }
    Ok(result)
}

/// Bisect a sign-change bracket until it is narrower than `BRACKET_WIDTH`
/// and the midpoint residual reaches `ZERO_RESIDUAL`, or the bracket can no
/// longer be split in floating point.
fn bisect(r: Rational, mut lo: f64, mut hi: f64, mut f_lo: f64) -> Result<(f64, f64, f64)> {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = eval(r, mid)?;
        if f_mid == 0.0 {
            return Ok((mid, lo, hi));
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
        if hi - lo <= BRACKET_WIDTH && f_mid.abs() <= ZERO_RESIDUAL {
            break;
        }
    }
    Ok((0.5 * (lo + hi), lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQRT5: f64 = 2.23606797749979;

    #[test]
    fn rational_reduces_and_parses() {
        let r = Rational::new(6, 4).unwrap();
        assert_eq!((r.num(), r.den()), (3, 2));
        assert_eq!("3/2".parse::<Rational>().unwrap(), r);
        assert_eq!("7".parse::<Rational>().unwrap(), Rational::integer(7));
        assert_eq!(Rational::new(5, 5).unwrap().to_string(), "1/1");
        assert!(Rational::new(5, 5).unwrap().is_one());
        assert!("0/3".parse::<Rational>().is_err());
        assert!("-2".parse::<Rational>().is_err());
        assert!("a/b".parse::<Rational>().is_err());
    }

    #[test]
    fn order_one_vanishes_identically() {
        for i in 0..10_000 {
            let x = -0.99 + 1.48 * i as f64 / 9_999.0;
            assert!(eval(Rational::integer(1), x).unwrap().abs() <= 1e-12, "x = {x}");
        }
    }

    #[test]
    fn eval_matches_hand_values() {
        // x = 0: 1 + 2cos(π) + 2cos(4π/3) = 1 - 2 - 1 = -2
        assert!((eval(Rational::integer(2), 0.0).unwrap() + 2.0).abs() < 1e-14);
        // x = -1/2: 1 + 2cos(4π/3) + 2cos(π) = 1 - 1 - 2 = -2
        assert!((eval(Rational::integer(2), -0.5).unwrap() + 2.0).abs() < 1e-14);
        // x = 0: 1 + 2cos(3π/2) + 2cos(2π) = 1 + 0 + 2 = 3
        assert!((eval(Rational::integer(3), 0.0).unwrap() - 3.0).abs() < 1e-14);
        // half-integer order at x = 0: 1 + 2cos(π/4) + 2cos(π/3) = 2 + √2
        let v = eval(Rational::new(1, 2).unwrap(), 0.0).unwrap();
        assert!((v - (2.0 + std::f64::consts::SQRT_2)).abs() < 1e-14);
    }

    #[test]
    fn eval_rejects_out_of_domain() {
        assert!(eval(Rational::integer(2), -1.0).is_err());
        assert!(eval(Rational::integer(2), 0.5).is_err());
        assert!(eval(Rational::integer(2), f64::NAN).is_err());
    }

    #[test]
    fn quadratic_order_roots() {
        // f_2(x) = 8x² + 4x - 2, roots (-1 ± √5)/4
        for x in [-0.9, -0.3, 0.0, 0.2, 0.49] {
            let poly = 8.0 * x * x + 4.0 * x - 2.0;
            assert!((eval(Rational::integer(2), x).unwrap() - poly).abs() < 1e-13, "x = {x}");
        }
        for root in [(-1.0 - SQRT5) / 4.0, (-1.0 + SQRT5) / 4.0] {
            assert!(eval(Rational::integer(2), root).unwrap().abs() < 1e-14);
        }
    }

    #[test]
    fn chebyshev_oracle_agrees_with_trig_form() {
        for k in 1..=64u32 {
            for i in 0..1_000 {
                let x = -0.99 + 1.48 * i as f64 / 999.0;
                let trig = eval(Rational::integer(k), x).unwrap();
                let cheb = eval_chebyshev(k, x).unwrap();
                assert!((trig - cheb).abs() <= 1e-10, "k = {k}, x = {x}");
            }
        }
    }

    #[test]
    fn margin_hand_values() {
        // t = 1: only k = 2 and 3 contribute; f_2(0) = -2, f_3(0) = 3
        assert!((margin(1, 0.0, 3).unwrap() - 2.0).abs() < 1e-14);
        // at a root of f_2 the margin collapses
        assert!(margin(1, (-1.0 + SQRT5) / 4.0, 2).unwrap() < 1e-10);
        // t = 2, k_max = 2 skips k = t entirely; only f_{1/2}(0) = 2 + √2 remains
        let m = margin(2, 0.0, 2).unwrap();
        assert!((m - (2.0 + std::f64::consts::SQRT_2)).abs() < 1e-14);
        assert!(margin_at_least(2, 0.0, 2, 3.0).unwrap());
        assert!(!margin_at_least(2, 0.0, 2, 4.0).unwrap());
    }

    #[test]
    fn scan_finds_both_quadratic_roots() {
        let scan = scan_zeros(Rational::integer(2), -0.99, 0.49, 100_000).unwrap();
        assert!(!scan.identically_zero);
        assert_eq!(scan.zeros.len(), 2);
        assert!((scan.zeros[0] - (-1.0 - SQRT5) / 4.0).abs() <= 1e-9);
        assert!((scan.zeros[1] - (-1.0 + SQRT5) / 4.0).abs() <= 1e-9);
        for (&z, &(b_lo, b_hi)) in scan.zeros.iter().zip(&scan.brackets) {
            assert!(b_lo <= z && z <= b_hi);
            assert!(b_hi - b_lo <= 1e-11);
            assert!(eval(scan.r, z).unwrap().abs() <= 1e-10);
            let (f_lo, f_hi) = (eval(scan.r, b_lo).unwrap(), eval(scan.r, b_hi).unwrap());
            assert!(f_lo * f_hi <= 0.0);
        }
    }

    #[test]
    fn scan_reports_identically_zero_order() {
        let scan = scan_zeros(Rational::integer(1), -0.99, 0.49, 1_000).unwrap();
        assert!(scan.identically_zero);
        assert!(scan.zeros.is_empty());
        let csv = scan.to_csv();
        assert_eq!(csv.lines().next().unwrap(), "r_num,r_den,lo,hi,zero");
        assert_eq!(csv.lines().nth(1).unwrap(), "1,1,-0.99,0.49,IDENTICALLY_ZERO");
        assert_eq!(csv.lines().count(), 2);
    }

    #[test]
    fn scan_cubic_order_matches_quadratic_roots() {
        // f_3(x) = 3 - 6x - 12x² shares its roots with f_2
        let scan = scan_zeros(Rational::integer(3), -0.99, 0.49, 100_000).unwrap();
        assert_eq!(scan.zeros.len(), 2);
        assert!((scan.zeros[0] - (-1.0 - SQRT5) / 4.0).abs() <= 1e-9);
        assert!((scan.zeros[1] - (-1.0 + SQRT5) / 4.0).abs() <= 1e-9);
    }

    #[test]
    fn scan_rejects_bad_intervals() {
        let r = Rational::integer(2);
        assert!(scan_zeros(r, -1.0, 0.4, 100).is_err());
        assert!(scan_zeros(r, -0.9, 0.5, 100).is_err());
        assert!(scan_zeros(r, 0.3, 0.1, 100).is_err());
        assert!(scan_zeros(r, 0.1, 0.3, 1).is_err());
    }
}
