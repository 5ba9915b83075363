//! Design file serialization. Floats are written with 17 significant
//! digits so a reload reproduces every value bit for bit.

use serde::Deserialize;

use crate::construct::SearchConfig;
use crate::design::{ConstructionTrace, Design, TraceStep};
use crate::error::Result;
use crate::point::UnitPoint;

fn push_f64(out: &mut String, x: f64) {
    use std::fmt::Write;
    let _ = write!(out, "{x:.16e}");
}

impl Design {
    pub fn to_json(&self) -> String {
        let mut out = String::with_capacity(128 * self.len());
        out.push_str("{\"points\":[");
        for (i, p) in self.points().iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str("{\"angle\":");
            push_f64(&mut out, p.angle());
            out.push_str(",\"re\":");
            push_f64(&mut out, p.re());
            out.push_str(",\"im\":");
            push_f64(&mut out, p.im());
            out.push('}');
        }
        out.push_str("],\"separation\":");
        push_f64(&mut out, self.separation());
        out.push_str(",\"trace\":");
        match self.trace() {
            None => out.push_str("null"),
            Some(trace) => {
                use std::fmt::Write;
                let _ = write!(out, "{{\"seed\":{},\"steps\":[", trace.seed);
                for (i, step) in trace.steps.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    let _ = write!(out, "{{\"t\":{},\"x\":", step.degree);
                    push_f64(&mut out, step.x);
                    out.push('}');
                }
                out.push_str("],\"config\":");
                match &trace.config {
                    None => out.push_str("null"),
                    Some(cfg) => {
                        let _ = write!(
                            out,
                            "{{\"k_max\":{},\"margin_min\":",
                            cfg.k_max
                        );
                        push_f64(&mut out, cfg.margin_min);
                        out.push_str(",\"separation\":");
                        push_f64(&mut out, cfg.separation);
                        let _ = write!(
                            out,
                            ",\"max_retries\":{},\"seed\":{},\"domain_shrink\":",
                            cfg.max_retries, cfg.seed
                        );
                        push_f64(&mut out, cfg.domain_shrink);
                        out.push('}');
                    }
                }
                out.push('}');
            }
        }
        out.push('}');
        out
    }

    pub fn from_json(text: &str) -> Result<Design> {
        let file: DesignFile = serde_json::from_str(text)?;
        let points = file.points.iter().map(|p| UnitPoint::new(p.angle)).collect();
        let mut design = Design::try_new(points, file.separation)?;
        if let Some(trace) = file.trace {
            design = design.with_trace(ConstructionTrace {
                seed: trace.seed,
                steps: trace
                    .steps
                    .into_iter()
                    .map(|s| TraceStep { degree: s.t, x: s.x })
                    .collect(),
                config: trace.config,
            });
        }
        Ok(design)
    }
}

#[derive(Deserialize)]
struct DesignFile {
    points: Vec<PointRecord>,
    separation: f64,
    #[serde(default)]
    trace: Option<TraceRecord>,
}

// re and im are redundant with the angle; ignore them on input
#[derive(Deserialize)]
struct PointRecord {
    angle: f64,
}

#[derive(Deserialize)]
struct TraceRecord {
    seed: u64,
    steps: Vec<StepRecord>,
    #[serde(default)]
    config: Option<SearchConfig>,
}

#[derive(Deserialize)]
struct StepRecord {
    t: u32,
    x: f64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{construct_singleton, regular_ngon};
    use crate::error::Error;

    #[test]
    fn float_formatting_is_17_significant_digits() {
        let mut s = String::new();
        push_f64(&mut s, 1e-9);
        assert_eq!(s, "1.0000000000000001e-9");
        assert_eq!(s.parse::<f64>().unwrap().to_bits(), 1e-9f64.to_bits());
        s.clear();
        push_f64(&mut s, std::f64::consts::PI);
        assert_eq!(s, "3.1415926535897931e0");
        assert_eq!("3.1415926535897931e0".parse::<f64>().unwrap(), std::f64::consts::PI);
    }

    #[test]
    fn design_round_trips_bit_for_bit() {
        let d = construct_singleton(3, -0.62, 1e-9).unwrap();
        let back = Design::from_json(&d.to_json()).unwrap();
        assert_eq!(d.len(), back.len());
        for (a, b) in d.points().iter().zip(back.points()) {
            assert_eq!(a.angle().to_bits(), b.angle().to_bits());
        }
        assert_eq!(d.separation(), back.separation());
        assert!(back.trace().is_none());
    }

    #[test]
    fn trace_survives_the_round_trip() {
        use crate::construct::{construct_design, SearchConfig, StrengthSpec};
        let spec = StrengthSpec::new([2]).unwrap();
        let cfg = SearchConfig::for_strength(&spec, 9);
        let d = construct_design(&spec, &cfg).unwrap();
        let back = Design::from_json(&d.to_json()).unwrap();
        let (t1, t2) = (d.trace().unwrap(), back.trace().unwrap());
        assert_eq!(t1.seed, t2.seed);
        assert_eq!(t1.steps, t2.steps);
        assert_eq!(t1.config, t2.config);
    }

    #[test]
    fn output_is_plain_json_for_generic_readers() {
        let d = regular_ngon(3, 0.0).unwrap();
        let text = d.to_json();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["points"].as_array().unwrap().len(), 3);
        assert!(value["trace"].is_null());
        assert!((value["points"][1]["re"].as_f64().unwrap() + 0.5).abs() < 1e-15);
    }

    #[test]
    fn malformed_input_is_rejected() {
        assert!(matches!(Design::from_json("not json"), Err(Error::Json(_))));
        assert!(Design::from_json("{\"points\":[],\"separation\":1e-9,\"trace\":null}").is_err());
        let coincident = r#"{"points":[{"angle":1.0},{"angle":1.0}],"separation":1e-9,"trace":null}"#;
        assert!(matches!(Design::from_json(coincident), Err(Error::Degenerate { .. })));
    }
}
