use std::f64::consts::TAU;

use crate::construct::SearchConfig;
use crate::error::{Error, Result};
use crate::point::UnitPoint;

/// Default pairwise separation threshold, in radians.
pub const DEFAULT_SEPARATION: f64 = 1e-9;

/// Value of the k-th complex moment of a point set: the sum of the k-th
/// powers of its points.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Moment {
    pub re: f64,
    pub im: f64,
}

impl Moment {
    pub fn magnitude(self) -> f64 {
        self.re.hypot(self.im)
    }
}

impl std::ops::Sub for Moment {
    type Output = Moment;

    fn sub(self, rhs: Moment) -> Moment {
        Moment { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl std::ops::Mul for Moment {
    type Output = Moment;

    fn mul(self, rhs: Moment) -> Moment {
        Moment {
            re: self.re * rhs.re - self.im * rhs.im,
            im: self.re * rhs.im + self.im * rhs.re,
        }
    }
}

/// One accepted step of the inductive construction: the degree it handles
/// and the parameter the search settled on.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceStep {
    pub degree: u32,
    pub x: f64,
}

/// Reproducibility record carried by constructed designs: replaying the
/// steps in order rebuilds the same point set bit for bit.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstructionTrace {
    pub seed: u64,
    pub steps: Vec<TraceStep>,
    pub config: Option<SearchConfig>,
}

/// A finite set of pairwise-separated points on the unit circle.
#[derive(Clone, Debug, PartialEq)]
pub struct Design {
    points: Vec<UnitPoint>,
    separation: f64,
    trace: Option<ConstructionTrace>,
}

impl Design {
    /// Validates that the set is non-empty, all angles are finite, and no
    /// two points sit closer than `separation` on the circle.
    pub fn try_new(points: Vec<UnitPoint>, separation: f64) -> Result<Design> {
        if points.is_empty() {
            return Err(Error::EmptyDesign);
        }
        if !separation.is_finite() || separation <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "separation threshold must be positive and finite, got {separation}"
            )));
        }
        if let Some(p) = points.iter().find(|p| !p.angle().is_finite()) {
            return Err(Error::Domain(format!("non-finite angle {}", p.angle())));
        }
        let design = Design { points, separation, trace: None };
        if design.points.len() >= 2 {
            let min_dist = design.min_separation()?;
            if min_dist < separation {
                return Err(Error::Degenerate { min_dist, required: separation });
            }
        }
        Ok(design)
    }

    pub fn from_angles(angles: &[f64], separation: f64) -> Result<Design> {
        Design::try_new(angles.iter().copied().map(UnitPoint::new).collect(), separation)
    }

    pub(crate) fn with_trace(mut self, trace: ConstructionTrace) -> Design {
        self.trace = Some(trace);
        self
    }

    pub fn points(&self) -> &[UnitPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn separation(&self) -> f64 {
        self.separation
    }

    pub fn trace(&self) -> Option<&ConstructionTrace> {
        self.trace.as_ref()
    }

    /// Sum of the k-th powers of the points, by direct summation.
    pub fn moment(&self, k: u32) -> Moment {
        let kf = f64::from(k);
        let (mut re, mut im) = (0.0, 0.0);
        for p in &self.points {
            let (s, c) = (kf * p.angle()).sin_cos();
            re += c;
            im += s;
        }
        Moment { re, im }
    }

    /// Smallest pairwise circular distance. With the angles sorted, only
    /// adjacent gaps and the wrap-around gap can attain the minimum.
    pub fn min_separation(&self) -> Result<f64> {
        if self.points.len() < 2 {
            return Err(Error::Singleton);
        }
        let mut angles: Vec<f64> = self.points.iter().map(|p| p.angle()).collect();
        angles.sort_by(f64::total_cmp);
        let mut min = TAU - (angles[angles.len() - 1] - angles[0]);
        for pair in angles.windows(2) {
            min = min.min(pair[1] - pair[0]);
        }
        Ok(min)
    }

    /// Pairwise products of the two point sets (angle sums mod 2π), sorted
    /// by angle. Fails with `Collision` when any two products land closer
    /// than `separation`.
    pub fn product(&self, other: &Design, separation: f64) -> Result<Design> {
        let mut points = Vec::with_capacity(self.points.len() * other.points.len());
        for a in &self.points {
            for b in &other.points {
                points.push(a.rotate(*b));
            }
        }
        points.sort_by(|p, q| f64::total_cmp(&p.angle(), &q.angle()));
        match Design::try_new(points, separation) {
            Err(Error::Degenerate { min_dist, required }) => {
                Err(Error::Collision { min_dist, required })
            }
            result => result,
        }
    }

    /// True when every point's conjugate lies within `tol` (circularly) of
    /// some point of the set.
    pub fn is_conjugate_closed(&self, tol: f64) -> bool {
        let mut angles: Vec<f64> = self.points.iter().map(|p| p.angle()).collect();
        angles.sort_by(f64::total_cmp);
        let n = angles.len();
        self.points.iter().all(|p| {
            let target = p.conjugate().angle();
            match angles.binary_search_by(|a| f64::total_cmp(a, &target)) {
                Ok(_) => true,
                Err(i) => {
                    // nearest candidates are the sorted neighbors, wrapping around
                    let lower = angles[(i + n - 1) % n];
                    let upper = angles[i % n];
                    circular(lower, target) < tol || circular(upper, target) < tol
                }
            }
        })
    }
}

fn circular(a: f64, b: f64) -> f64 {
    let d = (a - b).abs();
    d.min(TAU - d)
}
