//! `grobound`: exact Bell polynomials, series inversion, special-function
//! evaluation, concept coefficients, correlation-matrix probes, Monte-Carlo
//! oracles and the bound pipeline, behind one multiplexed command line.
//!
//! Exit codes: 0 success, 1 domain errors, 2 convergence or diagnostic
//! failures (the math said no), 64 usage errors.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use num_rational::BigRational;

use grobound_core::concepts::{self, ConceptSpec};
use grobound_core::corr::{self, AnyMatrix, EntryMap};
use grobound_core::oracle;
use grobound_core::pipeline;
use grobound_core::series::{invert_series, invert_symbolic, AnySeries, SYMBOLIC_ORDER_CAP};
use grobound_core::special;
use grobound_core::{bell, Error};

const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "grobound",
    about = "Upper bounds on the Grothendieck constant from concept functions",
    long_about = None,
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integer partitions and ordinary partial Bell polynomials
    Bell(BellArgs),
    /// Truncated power-series operations
    #[command(subcommand)]
    Series(SeriesCmd),
    /// Special-function evaluation (17 significant digits)
    #[command(subcommand)]
    Special(SpecialCmd),
    /// Concept coefficient tables
    #[command(subcommand)]
    Concept(ConceptCmd),
    /// Correlation-matrix operations and probes
    #[command(subcommand)]
    Matrix(MatrixCmd),
    /// Monte-Carlo estimators for the closed-form identities
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Run the bound workflow for a concept
    Bound(BoundArgs),
}

#[derive(Args)]
struct BellArgs {
    n: usize,
    k: usize,
    /// Print the symbolic polynomial instead of the partition list
    #[arg(long, conflicts_with = "at")]
    symbolic: bool,
    /// Evaluate at exact rational arguments `x1,x2,...` ("p/q" or integers)
    #[arg(long)]
    at: Option<String>,
}

#[derive(Subcommand)]
enum SeriesCmd {
    /// Invert a series given as JSON {"order": N, "kind": ..., "coeffs": [...]}
    Invert {
        /// Path of the series file
        #[arg(long)]
        coeffs: String,
        /// Output truncation order
        #[arg(long)]
        order: usize,
        /// Require exact rational arithmetic
        #[arg(long)]
        exact: bool,
    },
    /// Print the symbolic polynomial beta_n * alpha_1^(2n-1)
    Symbolic {
        n: usize,
    },
}

#[derive(Subcommand)]
enum SpecialCmd {
    /// Gauss hypergeometric 2F1(a, b, c; z)
    #[command(name = "2f1")]
    TwoFOne { a: f64, b: f64, c: f64, z: f64 },
    /// Generalized 3F2(a1, a2, a3; b1, b2; z)
    #[command(name = "3f2")]
    ThreeFTwo {
        a1: f64,
        a2: f64,
        a3: f64,
        b1: f64,
        b2: f64,
        z: f64,
    },
    /// Closed form of the normalized sphere moment E[<X/|X|,Y/|Y|>^m]
    Moment { d: u32, m: u32, rho: f64 },
}

#[derive(Subcommand)]
enum ConceptCmd {
    /// Hermite-Fourier coefficients alpha_0 ..= alpha_N
    Alphas {
        /// `sign` or `threshold:p`
        #[arg(long)]
        kind: String,
        #[arg(long)]
        order: usize,
        /// Emit the full JSON record instead of a table
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum MatrixCmd {
    /// Apply a map entrywise to random correlation matrices and report the
    /// worst minimum eigenvalue
    CcpProbe {
        /// `arcsin`, `sin`, `identity` or `series:FILE`
        #[arg(long = "fn")]
        map: String,
        /// Sizes as `2..8` or a comma list
        #[arg(long, default_value = "2..8")]
        sizes: String,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Validate a matrix file (JSON, or CSV with --csv) as a correlation matrix
    Check {
        #[arg(long)]
        file: String,
        /// Treat the file as CSV (real entries)
        #[arg(long)]
        csv: bool,
    },
    /// Emit a random Gram correlation matrix
    Random {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// CSV instead of JSON
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Args, Clone)]
struct OracleCommon {
    /// Sample count; scientific notation like 1e6 is accepted
    #[arg(long, default_value = "1e6", value_parser = parse_count)]
    n: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum OracleCmd {
    /// E[sign(X) sign(Y)] against (2/pi) arcsin(rho)
    SignIdentity {
        #[arg(long)]
        rho: f64,
        #[command(flatten)]
        common: OracleCommon,
    },
    /// E[b_p(X) b_p(Y)] against the tetrachoric series
    Threshold {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        rho: f64,
        #[command(flatten)]
        common: OracleCommon,
    },
    /// Normalized sphere moment against its closed form
    Moment {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        rho: f64,
        #[command(flatten)]
        common: OracleCommon,
    },
    /// Complex sign correlation against the Haagerup closed form
    Haagerup {
        /// Complex correlation like `0.3+0.2i`
        #[arg(long, value_parser = parse_complex)]
        z: Complex64,
        #[command(flatten)]
        common: OracleCommon,
    },
}

#[derive(Args)]
struct BoundArgs {
    /// `sign` or `threshold:p`
    #[arg(long)]
    concept: String,
    /// Truncation order (default: 41 for sign, 60 otherwise)
    #[arg(long)]
    order: Option<usize>,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Write the JSON report to a path, or `-` for stdout
    #[arg(long)]
    json: Option<String>,
    /// Write the (order, root, bound) trace as CSV
    #[arg(long)]
    csv: Option<String>,
}

fn parse_count(text: &str) -> Result<u64, String> {
    let v: f64 = text.parse().map_err(|e| format!("bad count {text:?}: {e}"))?;
    if !(v.is_finite() && v >= 1.0 && v <= 1e15) {
        return Err(format!("count {text:?} out of range"));
    }
    Ok(v.round() as u64)
}

fn parse_complex(text: &str) -> Result<Complex64, String> {
    let t = text.trim().replace(' ', "");
    if let Ok(re) = t.parse::<f64>() {
        return Ok(Complex64::new(re, 0.0));
    }
    let body = t
        .strip_suffix('i')
        .ok_or_else(|| format!("cannot parse complex number {text:?}"))?;
    // split at the sign of the imaginary part (skip a leading sign)
    for (idx, ch) in body.char_indices().skip(1) {
        if (ch == '+' || ch == '-') && !matches!(&body[idx - 1..idx], "e" | "E") {
            let re: f64 = body[..idx]
                .parse()
                .map_err(|e| format!("bad real part in {text:?}: {e}"))?;
            let imtext = &body[idx..];
            let im: f64 = if imtext == "+" {
                1.0
            } else if imtext == "-" {
                -1.0
            } else {
                imtext
                    .parse()
                    .map_err(|e| format!("bad imaginary part in {text:?}: {e}"))?
            };
            return Ok(Complex64::new(re, im));
        }
    }
    // pure imaginary
    let im: f64 = if body.is_empty() || body == "+" {
        1.0
    } else if body == "-" {
        -1.0
    } else {
        body.parse()
            .map_err(|e| format!("bad imaginary part in {text:?}: {e}"))?
    };
    Ok(Complex64::new(0.0, im))
}

fn parse_concept(text: &str) -> Result<ConceptSpec, Error> {
    if text == "sign" {
        return Ok(ConceptSpec::sign());
    }
    if let Some(p) = text.strip_prefix("threshold:") {
        let p: f64 = p
            .parse()
            .map_err(|e| Error::Domain(format!("bad threshold level {p:?}: {e}")))?;
        return ConceptSpec::threshold(p);
    }
    Err(Error::Domain(format!(
        "unknown concept {text:?}; expected `sign` or `threshold:p`"
    )))
}

fn parse_sizes(text: &str) -> Result<Vec<usize>, Error> {
    let bad = |t: &str| Error::Domain(format!("bad sizes {t:?}; expected `2..8` or `2,3,4`"));
    if let Some((lo, hi)) = text.split_once("..") {
        let lo: usize = lo.trim().parse().map_err(|_| bad(text))?;
        let hi: usize = hi.trim().parse().map_err(|_| bad(text))?;
        if lo == 0 || hi < lo {
            return Err(bad(text));
        }
        return Ok((lo..=hi).collect());
    }
    let sizes: Result<Vec<usize>, _> = text.split(',').map(|t| t.trim().parse()).collect();
    let sizes = sizes.map_err(|_| bad(text))?;
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(bad(text));
    }
    Ok(sizes)
}

fn parse_map(text: &str) -> Result<EntryMap, Error> {
    match text {
        "arcsin" => Ok(EntryMap::GrothendieckArcsin),
        "sin" => Ok(EntryMap::SinHalfPi),
        "identity" => Ok(EntryMap::Identity),
        other => {
            if let Some(path) = other.strip_prefix("series:") {
                let body = std::fs::read_to_string(path)?;
                let series = match AnySeries::from_json(&body)? {
                    AnySeries::Float(s) => s,
                    AnySeries::Rational(s) => s.to_float(),
                };
                Ok(EntryMap::Series(series))
            } else {
                Err(Error::Domain(format!(
                    "unknown map {other:?}; expected arcsin, sin, identity or series:FILE"
                )))
            }
        }
    }
}

fn parse_rationals(text: &str) -> Result<Vec<BigRational>, Error> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<BigRational>()
                .map_err(|e| Error::Domain(format!("bad rational {t:?}: {e}")))
        })
        .collect()
}

/// 17 significant digits, the full information content of an f64.
fn sig17(v: f64) -> String {
    format!("{v:.16e}")
}

fn run_bell(args: &BellArgs) -> Result<(), Error> {
    if args.symbolic {
        let poly = bell::bell_symbolic(args.n, args.k)?;
        println!("{poly}");
        return Ok(());
    }
    if let Some(at) = &args.at {
        let xs = parse_rationals(at)?;
        let value = bell::bell_ordinary(args.n, args.k, &xs)?;
        println!("{value}");
        return Ok(());
    }
    for nu in bell::partitions(args.n, args.k)? {
        let parts: Vec<String> = nu
            .multiplicities()
            .iter()
            .map(|m| m.to_string())
            .collect();
        println!("{}", parts.join(","));
    }
    Ok(())
}

fn run_series(cmd: &SeriesCmd) -> Result<(), Error> {
    match cmd {
        SeriesCmd::Invert {
            coeffs,
            order,
            exact,
        } => {
            let body = std::fs::read_to_string(coeffs)?;
            let series = AnySeries::from_json(&body)?;
            let inverse = match (series, exact) {
                (AnySeries::Rational(s), _) => {
                    AnySeries::Rational(invert_series(&s, *order)?)
                }
                (AnySeries::Float(_), true) => {
                    return Err(Error::Domain(
                        "--exact needs a rational-kind series file".into(),
                    ))
                }
                (AnySeries::Float(s), false) => AnySeries::Float(invert_series(&s, *order)?),
            };
            println!("{}", inverse.to_json());
            Ok(())
        }
        SeriesCmd::Symbolic { n } => {
            if *n > SYMBOLIC_ORDER_CAP {
                return Err(Error::SizeOverCap {
                    n: *n,
                    cap: SYMBOLIC_ORDER_CAP,
                });
            }
            println!("{}", invert_symbolic(*n)?.format_with("a"));
            Ok(())
        }
    }
}

fn run_special(cmd: &SpecialCmd) -> Result<(), Error> {
    let v = match cmd {
        SpecialCmd::TwoFOne { a, b, c, z } => special::hyp2f1(*a, *b, *c, *z)?,
        SpecialCmd::ThreeFTwo {
            a1,
            a2,
            a3,
            b1,
            b2,
            z,
        } => special::hyp3f2(*a1, *a2, *a3, *b1, *b2, *z)?,
        SpecialCmd::Moment { d, m, rho } => special::moment_closed_form(*d, *m, *rho)?,
    };
    println!("{}", sig17(v));
    Ok(())
}

fn run_concept(cmd: &ConceptCmd) -> Result<(), Error> {
    match cmd {
        ConceptCmd::Alphas { kind, order, json } => {
            let concept = parse_concept(kind)?;
            let alpha = concepts::alpha_coeffs(&concept, *order)?;
            if *json {
                println!("{}", serde_json::to_string_pretty(&alpha)?);
            } else {
                println!("alpha_0 = {}", sig17(alpha.alpha0));
                for n in 1..=alpha.order {
                    println!("alpha_{n} = {}", sig17(alpha.alpha_n(n)));
                }
                println!("total = {}", sig17(alpha.total()));
            }
            Ok(())
        }
    }
}

fn run_matrix(cmd: &MatrixCmd) -> Result<(), Error> {
    match cmd {
        MatrixCmd::CcpProbe {
            map,
            sizes,
            trials,
            seed,
        } => {
            let map = parse_map(map)?;
            let sizes = parse_sizes(sizes)?;
            let report = corr::ccp_probe(&map, &sizes, *trials, *seed, corr::DEFAULT_PSD_TOL)?;
            println!("{}", serde_json::to_string_pretty(&report)?);
            if report.violations > 0 {
                return Err(Error::Domain(format!(
                    "{} violations found (worst min eigenvalue {})",
                    report.violations, report.worst_min_eig
                )));
            }
            Ok(())
        }
        MatrixCmd::Check { file, csv } => {
            let body = std::fs::read_to_string(file)?;
            let matrix = if *csv {
                AnyMatrix::from_csv(&body)?
            } else {
                AnyMatrix::from_json(&body)?
            };
            let (valid, min_eig, size) = match matrix {
                AnyMatrix::Real(m) => {
                    let size = m.nrows();
                    match corr::CorrMatrix::new(m) {
                        Ok(c) => (true, c.min_eigenvalue(), size),
                        Err(Error::NotPsd { min_eig, .. }) => (false, min_eig, size),
                        Err(e) => return Err(e),
                    }
                }
                AnyMatrix::Complex(m) => {
                    let size = m.nrows();
                    match corr::CorrMatrix::new(m) {
                        Ok(c) => (true, c.min_eigenvalue(), size),
                        Err(Error::NotPsd { min_eig, .. }) => (false, min_eig, size),
                        Err(e) => return Err(e),
                    }
                }
            };
            println!(
                "{}",
                serde_json::json!({
                    "size": size,
                    "valid_correlation": valid,
                    "min_eigenvalue": min_eig,
                })
            );
            if valid {
                Ok(())
            } else {
                Err(Error::Domain("matrix is not a correlation matrix".into()))
            }
        }
        MatrixCmd::Random { k, rank, seed, csv } => {
            let m = corr::random_correlation(*k, *rank, *seed)?;
            let any = AnyMatrix::Real(m.into_matrix());
            if *csv {
                print!("{}", any.to_csv()?);
            } else {
                let mut value: serde_json::Value = serde_json::from_str(&any.to_json())?;
                value["seed"] = serde_json::json!(seed);
                value["rank"] = serde_json::json!(rank);
                println!("{}", serde_json::to_string_pretty(&value)?);
            }
            Ok(())
        }
    }
}

fn oracle_json(
    label: &str,
    est: &oracle::McEstimate,
    closed_form: f64,
    extra: &[(&str, serde_json::Value)],
) -> serde_json::Value {
    let mut obj = serde_json::json!({
        "estimator": label,
        "mean": est.mean,
        "std_error": est.std_error,
        "n": est.n_samples,
        "seed": est.seed,
        "closed_form": closed_form,
        "z_score": est.z_score(closed_form),
    });
    for (k, v) in extra {
        obj[*k] = v.clone();
    }
    obj
}

fn run_oracle(cmd: &OracleCmd) -> Result<(), Error> {
    let value = match cmd {
        OracleCmd::SignIdentity { rho, common } => {
            let est = oracle::mc_sign_identity(*rho, common.n, common.seed)?;
            let cf = special::grothendieck_h(*rho);
            oracle_json(
                "sign-identity",
                &est,
                cf,
                &[("rho", serde_json::json!(rho))],
            )
        }
        OracleCmd::Threshold { p, rho, common } => {
            let est = oracle::mc_threshold(*p, *rho, common.n, common.seed)?;
            let cf = concepts::h_p_eval(*p, *rho, 10_000)?;
            oracle_json(
                "threshold",
                &est,
                cf,
                &[
                    ("p", serde_json::json!(p)),
                    ("rho", serde_json::json!(rho)),
                ],
            )
        }
        OracleCmd::Moment { d, m, rho, common } => {
            let est = oracle::mc_moment(*d, *m, *rho, common.n, common.seed)?;
            let cf = special::moment_closed_form(*d as u32, *m, *rho)?;
            oracle_json(
                "moment",
                &est,
                cf,
                &[
                    ("d", serde_json::json!(d)),
                    ("m", serde_json::json!(m)),
                    ("rho", serde_json::json!(rho)),
                ],
            )
        }
        OracleCmd::Haagerup { z, common } => {
            let est = oracle::mc_haagerup(*z, common.n, common.seed)?;
            let cf = oracle::haagerup_closed_form(*z)?;
            serde_json::json!({
                "estimator": "haagerup",
                "z": [z.re, z.im],
                "mean": [est.mean_re, est.mean_im],
                "std_error": [est.std_error_re, est.std_error_im],
                "n": est.n_samples,
                "seed": est.seed,
                "closed_form": [cf.re, cf.im],
                "z_score": est.z_score(cf),
            })
        }
    };
    println!("{}", serde_json::to_string_pretty(&value)?);
    Ok(())
}

fn run_bound(args: &BoundArgs) -> Result<(), Error> {
    let concept = parse_concept(&args.concept)?;
    let order = args.order.unwrap_or_else(|| pipeline::default_order(&concept));
    let report = pipeline::compute_upper_bound(&concept, order, args.tol)?;

    if let Some(path) = &args.csv {
        let mut csv = String::from("order,root,bound\n");
        for p in &report.roots {
            let _ = writeln!(csv, "{},{},{}", p.order, p.root, p.bound);
        }
        std::fs::write(path, csv)?;
    }
    match args.json.as_deref() {
        Some("-") => println!("{}", serde_json::to_string_pretty(&report)?),
        Some(path) => std::fs::write(path, serde_json::to_string_pretty(&report)?)?,
        None => {
            println!("concept:    {}", args.concept);
            println!("order:      {order}");
            println!("arithmetic: {}", report.arithmetic);
            println!("normalized: {}", report.normalized);
            println!("l1 partial: {}", sig17(report.l1_partial));
            match (report.r_star, report.bound) {
                (Some(r), Some(b)) => {
                    println!("r:          {}", sig17(r));
                    println!("bound:      {}", sig17(b));
                }
                _ => println!("bound:      none (no root of f = 1 inside (0, 1))"),
            }
            println!("note:       {}", report.tail_note);
        }
    }

    if !report.condition_flags.pi1_satisfied {
        return Err(Error::NoRootInUnitInterval {
            f_at_one: report.l1_partial,
        });
    }
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<(), Error> {
    match &cli.command {
        Command::Bell(args) => run_bell(args),
        Command::Series(cmd) => run_series(cmd),
        Command::Special(cmd) => run_special(cmd),
        Command::Concept(cmd) => run_concept(cmd),
        Command::Matrix(cmd) => run_matrix(cmd),
        Command::Oracle(cmd) => run_oracle(cmd),
        Command::Bound(args) => run_bound(args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
