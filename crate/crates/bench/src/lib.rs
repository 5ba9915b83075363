//! Deterministic fixtures shared by the benchmark suite.

use tdesign_core::{construct, Design, SearchConfig, StrengthSpec};

/// Builds the seeded design whose vanishing moments are exactly `degrees`.
pub fn fixture(degrees: &[u32], seed: u64) -> Design {
    let spec = StrengthSpec::new(degrees.to_vec()).expect("valid degrees");
    let cfg = SearchConfig::for_strength(&spec, seed);
    construct::construct_design(&spec, &cfg).expect("construction succeeds")
}
