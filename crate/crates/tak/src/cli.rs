//! Command-line front end: compute one polynomial, solve one exceptional
//! system, run the verification census, or print a classical Alexander
//! polynomial. Exit codes: 0 success/verified, 1 mathematical failure,
//! 2 usage error.

use crate::knots::KnotPresentation;
use crate::representations::Representation;
use crate::solver::{census, solve, theorem_count, Family, Mode};
use crate::twisted_alexander::twisted_alexander;
use crate::{Complex64, Error, Result, Tolerances};
use clap::{Args, Parser, Subcommand};
use num_traits::ToPrimitive;
use std::io::Write;

#[derive(Parser)]
#[command(name = "tak", version, about = "Twisted Alexander polynomials of 2-bridge and twist knots")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// Zero/cleaning threshold (relative)
    #[arg(long)]
    tolerance: Option<f64>,
    /// |leading - 1| bound for monicity
    #[arg(long)]
    monic_tolerance: Option<f64>,
    /// Seed for any randomized sampling (accepted for reproducibility)
    #[arg(long)]
    seed: Option<u64>,
    /// Write output to this file instead of stdout
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Twisted Alexander polynomial of one knot at one representation
    Compute {
        /// Knot spec: b:p,m or twist:m
        #[arg(long)]
        knot: String,
        /// tr(a) = tr(b), complex literal a+bi
        #[arg(long)]
        x: String,
        /// tr(ab)
        #[arg(long)]
        z: Option<String>,
        /// tr(ab^-1)
        #[arg(long)]
        y: Option<String>,
        #[arg(long, default_value = "json")]
        format: String,
        #[command(flatten)]
        common: Common,
    },
    /// Enumerate the exceptional representations of one family member
    Solve {
        /// b3, twist-even, or twist-odd
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: i64,
        /// deficient or monic
        #[arg(long)]
        mode: String,
        #[arg(long, default_value = "json")]
        format: String,
        #[command(flatten)]
        common: Common,
    },
    /// Census: compare solver counts against the published formulas
    Verify {
        /// b3, twist-even, twist-odd, or all
        #[arg(long)]
        family: String,
        /// Single n or range A..B
        #[arg(long)]
        n: Option<String>,
        /// Alias for --n with a range
        #[arg(long)]
        n_range: Option<String>,
        /// Restrict to one mode (default: both)
        #[arg(long)]
        mode: Option<String>,
        #[arg(long, default_value = "csv")]
        format: String,
        #[command(flatten)]
        common: Common,
    },
    /// Classical Alexander polynomial and fiberedness verdict
    Alexander {
        #[arg(long)]
        knot: String,
        #[arg(long, default_value = "text")]
        format: String,
        #[command(flatten)]
        common: Common,
    },
}

/// Parse a complex literal: a+bi, a-bi, a, bi, i, -i.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let bad = || Error::InvalidInput(format!("cannot parse complex literal {s:?}"));
    let t: String = s.trim().chars().filter(|c| !c.is_whitespace()).collect();
    if let Some(body) = t.strip_suffix(['i', 'I']) {
        let bytes = body.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            let c = bytes[k] as char;
            if (c == '+' || c == '-') && !matches!(bytes[k - 1] as char, 'e' | 'E') {
                split = Some(k);
                break;
            }
        }
        let imag = |part: &str| -> Result<f64> {
            match part {
                "" | "+" => Ok(1.0),
                "-" => Ok(-1.0),
                _ => part.parse().map_err(|_| bad()),
            }
        };
        match split {
            Some(k) => {
                let re: f64 = body[..k].parse().map_err(|_| bad())?;
                Ok(Complex64::new(re, imag(&body[k..])?))
            }
            None => Ok(Complex64::new(0.0, imag(body)?)),
        }
    } else {
        t.parse::<f64>()
            .map(|re| Complex64::new(re, 0.0))
            .map_err(|_| bad())
    }
}

/// 12 significant digits, lowercase e notation (byte-stable).
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.11e}")
}

pub fn fmt_complex(c: Complex64) -> String {
    if c.im >= 0.0 {
        format!("{}+{}i", fmt_f64(c.re), fmt_f64(c.im))
    } else {
        format!("{}-{}i", fmt_f64(c.re), fmt_f64(-c.im))
    }
}

fn parse_n_range(s: &str) -> Result<(i64, i64)> {
    let bad = || Error::InvalidInput(format!("cannot parse n or n-range {s:?}"));
    if let Some((a, b)) = s.split_once("..") {
        let lo: i64 = a.trim().parse().map_err(|_| bad())?;
        let hi: i64 = b.trim().parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(Error::InvalidInput(format!("empty n-range {s:?}")));
        }
        Ok((lo, hi))
    } else {
        let n: i64 = s.trim().parse().map_err(|_| bad())?;
        Ok((n, n))
    }
}

fn tolerances(common: &Common) -> Result<Tolerances> {
    let mut tol = Tolerances::default();
    if let Some(v) = common.tolerance {
        if v.is_nan() || v <= 0.0 {
            return Err(Error::InvalidInput("tolerance must be positive".into()));
        }
        tol.zero = v;
    }
    if let Some(v) = common.monic_tolerance {
        if v.is_nan() || v <= 0.0 {
            return Err(Error::InvalidInput("monic tolerance must be positive".into()));
        }
        tol.monic = v;
    }
    Ok(tol)
}

fn emit(common: &Common, text: &str) -> std::io::Result<()> {
    match &common.out {
        Some(path) => std::fs::write(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidKnot(_) | Error::InvalidInput(_) => 2,
        _ => 1,
    }
}

fn check_format(format: &str, allowed: &[&str]) -> Result<()> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "unknown format {format:?} (expected one of {allowed:?})"
        )))
    }
}

fn cmd_compute(
    knot: &str,
    x: &str,
    z: Option<&str>,
    y: Option<&str>,
    format: &str,
    common: &Common,
) -> Result<String> {
    check_format(format, &["json", "text"])?;
    let tol = tolerances(common)?;
    let pres = KnotPresentation::parse(knot)?;
    let x = parse_complex(x)?;
    let rep = match (z, y) {
        (Some(z), None) => Representation::from_xz(x, parse_complex(z)?),
        (None, Some(y)) => Representation::from_xy(x, parse_complex(y)?),
        _ => Err(Error::InvalidInput(
            "exactly one of --z or --y is required".into(),
        )),
    }?;
    let report = twisted_alexander(&pres, &rep, &tol)?;
    Ok(match format {
        "json" => format!("{}\n", report.to_json()),
        _ => {
            let mut s = String::new();
            s += &format!("knot: {}\n", report.knot);
            s += &format!("x: {}\n", fmt_complex(report.x));
            s += &format!(
                "{}: {}\n",
                report.coord.key(),
                fmt_complex(report.coord.value())
            );
            for (e, c) in report.delta.iter() {
                s += &format!("delta[t^{e}]: {}\n", fmt_complex(c));
            }
            s += &format!("span: {}\n", report.span);
            s += &format!("leading: {}\n", fmt_complex(report.leading));
            s += &format!("trailing: {}\n", fmt_complex(report.trailing));
            s += &format!("monic: {}\n", report.monic);
            s += &match report.deficient {
                Some(d) => format!("deficient: {d}\n"),
                None => "deficient: unknown\n".to_string(),
            };
            if let Some(g) = report.genus_bound {
                s += &format!("genus_bound: {g}\n");
            }
            s += &format!(
                "division_remainder: {}\n",
                fmt_f64(report.division_remainder)
            );
            s += &format!("relator_residual: {}\n", fmt_f64(report.relator_residual));
            s
        }
    })
}

fn cmd_solve(
    family: &str,
    n: i64,
    mode: &str,
    format: &str,
    common: &Common,
) -> Result<(String, bool)> {
    check_format(format, &["json", "csv", "text"])?;
    let tol = tolerances(common)?;
    let families = Family::parse(family)?;
    if families.len() != 1 {
        return Err(Error::InvalidInput(
            "solve needs a single family, not `all`".into(),
        ));
    }
    let fam = families[0];
    let mode = Mode::parse(mode)?;
    let witnesses = solve(fam, n, mode, &tol)?;
    let ok = witnesses.iter().all(|w| w.verified);
    let text = match format {
        "json" => {
            let v = serde_json::json!({
                "family": fam.label(),
                "n": n,
                "mode": mode.label(),
                "found": witnesses.len(),
                "theorem": theorem_count(fam, n, mode),
                "witnesses": witnesses.iter().map(|w| w.to_json()).collect::<Vec<_>>(),
            });
            format!("{v}\n")
        }
        "csv" => {
            let mut s = String::from("family,n,mode,x_re,x_im,coord,coord_re,coord_im,span,verified\n");
            for w in &witnesses {
                s += &format!(
                    "{},{},{},{},{},{},{},{},{},{}\n",
                    fam.label(),
                    n,
                    mode.label(),
                    fmt_f64(w.x.re),
                    fmt_f64(w.x.im),
                    w.coord.key(),
                    fmt_f64(w.coord.value().re),
                    fmt_f64(w.coord.value().im),
                    w.report.span,
                    w.verified
                );
            }
            s
        }
        _ => {
            let mut s = format!(
                "{} n={} {}: {} witnesses (theorem: {})\n",
                fam.label(),
                n,
                mode.label(),
                witnesses.len(),
                theorem_count(fam, n, mode)
            );
            for w in &witnesses {
                s += &format!(
                    "  x = {}  {} = {}  span {}  riley {}  boundary {}  {}\n",
                    fmt_complex(w.x),
                    w.coord.key(),
                    fmt_complex(w.coord.value()),
                    w.report.span,
                    fmt_f64(w.riley_residual),
                    fmt_f64(w.boundary_deviation),
                    if w.verified { "verified" } else { "UNVERIFIED" }
                );
            }
            s
        }
    };
    Ok((text, ok))
}

fn cmd_verify(
    family: &str,
    n: Option<&str>,
    n_range: Option<&str>,
    mode: Option<&str>,
    format: &str,
    common: &Common,
) -> Result<(String, bool)> {
    check_format(format, &["json", "csv", "text"])?;
    let tol = tolerances(common)?;
    let families = Family::parse(family)?;
    let range = match (n, n_range) {
        (Some(s), None) | (None, Some(s)) => parse_n_range(s)?,
        (None, None) => {
            return Err(Error::InvalidInput("--n or --n-range is required".into()))
        }
        _ => {
            return Err(Error::InvalidInput(
                "give only one of --n and --n-range".into(),
            ))
        }
    };
    let modes = match mode {
        Some(m) => vec![Mode::parse(m)?],
        None => vec![Mode::Deficient, Mode::Monic],
    };
    let results = census(&families, range, &modes, &tol)?;
    let ok = results.iter().all(|r| r.passes());
    let text = match format {
        "json" => {
            let v: Vec<_> = results.iter().map(|r| r.to_json(false)).collect();
            format!("{}\n", serde_json::Value::Array(v))
        }
        "csv" => {
            let mut s = String::from("family,n,mode,found,theorem,verified\n");
            for r in &results {
                s += &r.csv_row();
                s.push('\n');
            }
            s
        }
        _ => {
            let mut s = String::new();
            for r in &results {
                s += &format!(
                    "{:<10} n={:<2} {:<9} found {:<3} theorem {:<3} {}\n",
                    r.family.label(),
                    r.n,
                    r.mode.label(),
                    r.found,
                    r.theorem,
                    if r.passes() { "ok" } else { "MISMATCH" }
                );
            }
            s += &format!("verified: {}\n", ok);
            s
        }
    };
    Ok((text, ok))
}

fn cmd_alexander(knot: &str, format: &str, _common: &Common) -> Result<String> {
    check_format(format, &["json", "text"])?;
    let pres = KnotPresentation::parse(knot)?;
    let alex = pres.classical_alexander();
    let coeffs: Vec<i64> = alex
        .coeffs()
        .iter()
        .map(|c| c.to_i64().unwrap_or(i64::MAX))
        .collect();
    let leading = coeffs.last().copied().unwrap_or(0);
    Ok(match format {
        "json" => {
            let v = serde_json::json!({
                "knot": pres.label(),
                "coeffs": coeffs,
                "leading": leading,
                "fibered": pres.fibered(),
            });
            format!("{v}\n")
        }
        _ => {
            let fib = match pres.fibered() {
                Some(true) => "fibered",
                Some(false) => "non-fibered",
                None => "fiberedness unknown",
            };
            format!(
                "knot: {}\nalexander: {:?}\nleading: {}\nverdict: {}\n",
                pres.label(),
                coeffs,
                leading,
                fib
            )
        }
    })
}

fn configure_threads() {
    if let Ok(v) = std::env::var("TAK_THREADS") {
        if let Ok(k) = v.parse::<usize>() {
            if k >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
            }
        }
    }
}

/// Entry point; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.exit_code() == 0 { 0 } else { 2 };
            let _ = e.print();
            return code;
        }
    };
    configure_threads();
    let outcome: Result<(String, i32, Common)> = match cli.cmd {
        Cmd::Compute {
            knot,
            x,
            z,
            y,
            format,
            common,
        } => cmd_compute(&knot, &x, z.as_deref(), y.as_deref(), &format, &common)
            .map(|t| (t, 0, common)),
        Cmd::Solve {
            family,
            n,
            mode,
            format,
            common,
        } => cmd_solve(&family, n, &mode, &format, &common)
            .map(|(t, ok)| (t, if ok { 0 } else { 1 }, common)),
        Cmd::Verify {
            family,
            n,
            n_range,
            mode,
            format,
            common,
        } => cmd_verify(
            &family,
            n.as_deref(),
            n_range.as_deref(),
            mode.as_deref(),
            &format,
            &common,
        )
        .map(|(t, ok)| (t, if ok { 0 } else { 1 }, common)),
        Cmd::Alexander { knot, format, common } => {
            cmd_alexander(&knot, &format, &common).map(|t| (t, 0, common))
        }
    };
    match outcome {
        Ok((text, code, common)) => {
            if emit(&common, &text).is_err() {
                eprintln!("error: could not write output");
                return 1;
            }
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
