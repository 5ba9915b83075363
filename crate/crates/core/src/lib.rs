//! Finite point sets on the unit circle with a prescribed set of vanishing
//! moments.
//!
//! The k-th moment of a finite set X on the unit circle is the sum of the
//! k-th powers of its points. For any finite set T of positive integers
//! this crate builds an X, with 5 points per element of T, whose moments
//! vanish exactly at the degrees in T (certified numerically up to a
//! configurable degree bound), and it verifies such claims for arbitrary
//! designs loaded from disk.
//!
//! ```
//! use tdesign_core::{construct, verify, SearchConfig, StrengthSpec};
//!
//! let targets = StrengthSpec::new([2, 5]).unwrap();
//! let cfg = SearchConfig::for_strength(&targets, 42);
//! let design = construct::construct_design(&targets, &cfg).unwrap();
//! assert_eq!(design.len(), 25);
//!
//! let tol = 1e-10 * design.len() as f64;
//! let report = verify::verify(&design, &targets, cfg.k_max, tol).unwrap();
//! assert!(report.passed());
//! ```

pub mod construct;
pub mod design;
pub mod error;
mod json;
pub mod moments;
pub mod point;
pub mod verify;

pub use construct::{SearchConfig, StrengthSpec, K_MAX_FLOOR};
pub use design::{ConstructionTrace, Design, Moment, TraceStep, DEFAULT_SEPARATION};
pub use error::{Error, Result};
pub use moments::{Rational, ZeroScanResult};
pub use point::UnitPoint;
pub use verify::{BoundedStrength, DegreeRecord, MomentClass, Verdict, VerificationReport};
