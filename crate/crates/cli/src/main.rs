use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use tdesign_core::{
    construct, moments, verify, Design, Error, Rational, SearchConfig, StrengthSpec,
    DEFAULT_SEPARATION, K_MAX_FLOOR,
};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CONSTRUCTION: u8 = 3;

#[derive(Parser)]
#[command(
    name = "tdesign",
    version,
    about = "Construct and verify point sets on the unit circle with prescribed vanishing moments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a design whose moments vanish exactly at the given degrees
    Construct {
        /// Comma-separated target degrees, e.g. "2,5"
        #[arg(long)]
        strength: String,
        /// Seed for the deterministic parameter search
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Degree bound for certification [default: max(200, 10 * max degree)]
        #[arg(long)]
        kmax: Option<u32>,
        /// Margin every non-target degree must clear [default: 1e-6]
        #[arg(long)]
        margin: Option<f64>,
        /// Pairwise separation threshold in radians [default: 1e-9]
        #[arg(long)]
        sep: Option<f64>,
        /// Write the design JSON here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a design file's moments against a claimed strength set
    Verify {
        /// Design JSON file
        #[arg(long = "in")]
        input: PathBuf,
        /// Claimed degrees [default: derived from the file's trace]
        #[arg(long)]
        claimed: Option<String>,
        /// Degree bound [default: max(200, 10 * max claimed degree)]
        #[arg(long)]
        kmax: Option<u32>,
        /// Zero classification tolerance [default: 1e-10 * point count]
        #[arg(long = "zero-tol")]
        zero_tol: Option<f64>,
        /// Report format on stdout
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
    },
    /// Print the complex moments of a design file over a degree range
    Moments {
        /// Design JSON file
        #[arg(long = "in")]
        input: PathBuf,
        /// Inclusive degree range, e.g. "1..50"
        #[arg(long)]
        krange: String,
    },
    /// Locate zeros of one order of the moment family inside (-1, 1/2)
    Scan {
        /// Order as an integer or a fraction, e.g. "3" or "3/2"
        #[arg(long)]
        r: String,
        /// Lower end of the scan interval
        #[arg(long, default_value_t = -0.99, allow_negative_numbers = true)]
        lo: f64,
        /// Upper end of the scan interval
        #[arg(long, default_value_t = 0.49, allow_negative_numbers = true)]
        hi: f64,
        /// Grid cells between lo and hi
        #[arg(long, default_value_t = 100_000)]
        steps: u32,
        /// Write the CSV here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit a reference design: a regular n-gon or two antipodal pairs
    Group {
        /// Regular n-gon (the n-th roots of unity)
        #[arg(long)]
        ngon: Option<u32>,
        /// Antipodal pairs {1, -1, e^{iθ}, -e^{iθ}} at this θ in radians
        #[arg(long, allow_negative_numbers = true)]
        antipodal: Option<f64>,
        /// Write the design JSON here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Csv,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let code = match cli.command {
        Command::Construct { strength, seed, kmax, margin, sep, out } => {
            cmd_construct(&strength, seed, kmax, margin, sep, out.as_deref())
        }
        Command::Verify { input, claimed, kmax, zero_tol, format } => {
            cmd_verify(&input, claimed.as_deref(), kmax, zero_tol, format)
        }
        Command::Moments { input, krange } => cmd_moments(&input, &krange),
        Command::Scan { r, lo, hi, steps, out } => cmd_scan(&r, lo, hi, steps, out.as_deref()),
        Command::Group { ngon, antipodal, out } => cmd_group(ngon, antipodal, out.as_deref()),
    };
    ExitCode::from(code)
}

/// println that tolerates a closed pipe instead of panicking.
fn out_line(text: impl Display) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout(), "{text}");
}

fn out_text(text: impl Display) {
    use std::io::Write;
    let _ = write!(std::io::stdout(), "{text}");
}

fn err_line(text: impl Display) {
    use std::io::Write;
    let _ = writeln!(std::io::stderr(), "{text}");
}

fn usage(message: impl Display) -> u8 {
    err_line(format!("error: {message}"));
    EXIT_USAGE
}

fn write_or_print(text: &str, out: Option<&Path>) -> Result<(), u8> {
    match out {
        Some(path) => fs::write(path, format!("{text}\n"))
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            out_line(text);
            Ok(())
        }
    }
}

fn load_design(path: &Path) -> Result<Design, u8> {
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    Design::from_json(&text).map_err(|e| usage(e))
}

fn cmd_construct(
    strength: &str,
    seed: u64,
    kmax: Option<u32>,
    margin: Option<f64>,
    sep: Option<f64>,
    out: Option<&Path>,
) -> u8 {
    let spec: StrengthSpec = match strength.parse() {
        Ok(spec) => spec,
        Err(e) => return usage(e),
    };
    let mut cfg = SearchConfig::for_strength(&spec, seed);
    if let Some(k) = kmax {
        cfg.k_max = k;
    }
    if let Some(m) = margin {
        cfg.margin_min = m;
    }
    if let Some(s) = sep {
        cfg.separation = s;
    }
    let design = match construct::construct_design(&spec, &cfg) {
        Ok(design) => design,
        Err(e @ (Error::Bound { .. } | Error::InvalidConfig(_) | Error::InvalidStrength(_))) => {
            return usage(e)
        }
        Err(e) => {
            err_line(format!("error: {e}"));
            return EXIT_CONSTRUCTION;
        }
    };
    let report =
        match verify::verify(&design, &spec, cfg.k_max, 1e-10 * design.len() as f64) {
            Ok(report) => report,
            Err(e) => return usage(e),
        };
    let summary = format!(
        "points={} verdict={} min_nonzero_margin={:e} max_zero_residual={:e}",
        design.len(),
        if report.passed() { "PASS" } else { "FAIL" },
        report.min_nonzero_margin,
        report.max_zero_residual,
    );
    match out {
        Some(path) => {
            if let Err(code) = write_or_print(&design.to_json(), Some(path)) {
                return code;
            }
            out_line(&summary);
        }
        None => {
            out_line(design.to_json());
            err_line(&summary);
        }
    }
    if report.passed() {
        0
    } else {
        err_line("error: constructed design failed its own verification");
        EXIT_FAIL
    }
}

fn cmd_verify(
    input: &Path,
    claimed: Option<&str>,
    kmax: Option<u32>,
    zero_tol: Option<f64>,
    format: ReportFormat,
) -> u8 {
    let design = match load_design(input) {
        Ok(design) => design,
        Err(code) => return code,
    };
    let spec = match claimed {
        Some(text) => match text.parse::<StrengthSpec>() {
            Ok(spec) => spec,
            Err(e) => return usage(e),
        },
        None => {
            let Some(trace) = design.trace() else {
                return usage("the file carries no construction trace; pass --claimed");
            };
            let degrees: std::collections::BTreeSet<u32> =
                trace.steps.iter().map(|s| s.degree).collect();
            match StrengthSpec::new(degrees) {
                Ok(spec) => spec,
                Err(e) => return usage(e),
            }
        }
    };
    let k_max = kmax.unwrap_or_else(|| spec.max_degree().saturating_mul(10).max(K_MAX_FLOOR));
    let zero_tol = zero_tol.unwrap_or(1e-10 * design.len() as f64);
    let report = match verify::verify(&design, &spec, k_max, zero_tol) {
        Ok(report) => report,
        Err(e) => return usage(e),
    };
    match format {
        ReportFormat::Json => out_line(report.to_json()),
        ReportFormat::Csv => out_text(&report.to_csv()),
    }
    if report.passed() {
        0
    } else {
        EXIT_FAIL
    }
}

fn cmd_moments(input: &Path, krange: &str) -> u8 {
    let Some((lo, hi)) = krange.split_once("..") else {
        return usage(format!("cannot parse degree range {krange:?}, expected e.g. 1..50"));
    };
    let (Ok(lo), Ok(hi)) = (lo.trim().parse::<u32>(), hi.trim().parse::<u32>()) else {
        return usage(format!("cannot parse degree range {krange:?}, expected e.g. 1..50"));
    };
    if lo < 1 || lo > hi {
        return usage(format!("degree range {krange:?} must satisfy 1 <= lo <= hi"));
    }
    let design = match load_design(input) {
        Ok(design) => design,
        Err(code) => return code,
    };
    let mut out = String::from("k,re,im,magnitude\n");
    for k in lo..=hi {
        let m = design.moment(k);
        out.push_str(&format!("{},{:e},{:e},{:e}\n", k, m.re, m.im, m.magnitude()));
    }
    out_text(&out);
    0
}

fn cmd_scan(r: &str, lo: f64, hi: f64, steps: u32, out: Option<&Path>) -> u8 {
    let r: Rational = match r.parse() {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    let scan = match moments::scan_zeros(r, lo, hi, steps) {
        Ok(scan) => scan,
        Err(e) => return usage(e),
    };
    let csv = scan.to_csv();
    match write_or_print(csv.trim_end_matches('\n'), out) {
        Ok(()) => 0,
        Err(code) => code,
    }
}

fn cmd_group(ngon: Option<u32>, antipodal: Option<f64>, out: Option<&Path>) -> u8 {
    let design = match (ngon, antipodal) {
        (Some(n), None) => {
            if n == 0 {
                return usage("--ngon needs n >= 1");
            }
            match construct::regular_ngon(n, 0.0) {
                Ok(design) => design,
                Err(e) => {
                    err_line(format!("error: {e}"));
                    return EXIT_CONSTRUCTION;
                }
            }
        }
        (None, Some(theta)) => match construct::antipodal_pairs(theta, DEFAULT_SEPARATION) {
            Ok(design) => design,
            Err(e @ Error::Domain(_)) => return usage(e),
            Err(e) => {
                err_line(format!("error: {e}"));
                return EXIT_CONSTRUCTION;
            }
        },
        _ => return usage("pass exactly one of --ngon or --antipodal"),
    };
    match write_or_print(&design.to_json(), out) {
        Ok(()) => 0,
        Err(code) => code,
    }
}
