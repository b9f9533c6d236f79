//! Command line front end: every subsystem of the library behind one binary
//! with deterministic plain, JSON, and CSV output. All numeric inputs are
//! parsed exactly (fractions or expansion syntax) and all printed decimals
//! are truncations of exact enclosures.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use bifdict::binary::BinaryExpansion;
use bifdict::cascades::{xi_eval, CfCascade, PeriodicWindow};
use bifdict::cf::ContinuedFraction;
use bifdict::enclosure::{decimal_string, Enclosure};
use bifdict::error::Error;
use bifdict::gaps::{
    bisect_enumerate, dyadic_interval, quadratic_interval, BisectSpace, DyadicGap, IntervalGap,
    QuadraticGap,
};
use bifdict::lamination::{is_minor_leaf, Leaf};
use bifdict::matching::{matching_test_points, verify_matching};
use bifdict::membership::{classify_e_point, e_member, gamma_member, lambda_member, ECriterion, EPointClass};
use bifdict::minkowski::{phi, phi_inv};
use bifdict::spectra::dimension_report;
use bifdict::surd::ExactNumber;
use bifdict::univoque::{is_admissible, is_admissible_to_depth, univoque_q, SequenceSource};

#[derive(Parser)]
#[command(name = "bifdict", version, about = "Exact arithmetic on the bifurcation sets of alpha-continued fractions and unimodal kneading sequences")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Output::Plain)]
    output: Output,
    /// Decimal digits printed for approximations of exact values.
    #[arg(long, global = true, default_value_t = 30)]
    precision: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Plain,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Space {
    /// The kneading set side (binary expansions).
    Lambda,
    /// The continued fraction side.
    E,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Side {
    Cf,
    Binary,
}

#[derive(Subcommand)]
enum Command {
    /// Membership and topological classification of one value.
    Classify {
        /// A continued fraction `[0;2,(1)]`, a binary expansion `0.1(10)`,
        /// or a fraction `p/q` (which then needs --side).
        #[arg(long)]
        x: String,
        /// How to read a fraction input.
        #[arg(long, value_enum)]
        side: Option<Side>,
    },
    /// The orientation-reversing correspondence (continued fraction side to
    /// kneading side), or its inverse with --inverse.
    Phi {
        #[arg(long)]
        x: String,
        #[arg(long, default_value_t = false)]
        inverse: bool,
    },
    /// The gap interval attached to a pseudocenter.
    Interval {
        /// Rational pseudocenter; dyadic for the kneading side.
        #[arg(long)]
        pseudocenter: String,
        #[arg(long, value_enum)]
        space: Space,
    },
    /// Bisection enumeration of all gaps through a generation depth.
    Bisect {
        #[arg(long, value_enum)]
        space: Space,
        #[arg(long)]
        depth: usize,
    },
    /// Orbit-collision verification over a maximal interval.
    Matching {
        /// Pseudocenter of the interval.
        #[arg(long)]
        r: String,
        /// Parameter to test; defaults to three interior sample points.
        #[arg(long)]
        alpha: Option<String>,
        /// Guard on the total number of orbit steps.
        #[arg(long, default_value_t = 200)]
        max_steps: u64,
    },
    /// Period-doubling cascade: a binary window (--eta) or a continued
    /// fraction cascade (--r).
    Cascade {
        /// Window word, e.g. "11"; the empty string is the first window.
        #[arg(long)]
        eta: Option<String>,
        /// Maximal pseudocenter for the continued fraction side.
        #[arg(long)]
        r: Option<String>,
        #[arg(long, default_value_t = 5)]
        levels: u32,
    },
    /// The lacunary product over powers z^(2^k).
    Xi {
        #[arg(long)]
        z: String,
        /// Enclosure width target, e.g. 1e-12 or 1/1000000.
        #[arg(long, default_value = "1e-12")]
        target_error: String,
    },
    /// Dimension table of the run-constrained self-similar sets.
    Dimension {
        #[arg(long)]
        k: Option<u32>,
        /// Emit all rows 2..=k_max.
        #[arg(long)]
        k_max: Option<u32>,
    },
    /// Expansion base q in (1, 2] of an admissible digit sequence.
    Univoque {
        /// A binary expansion, a fraction, or "thue-morse".
        #[arg(long)]
        seq: String,
        /// Decimal digits of q to certify.
        #[arg(long, default_value_t = 12)]
        prec: u32,
    },
    /// Real minor leaves with angle denominators up to a bound.
    Rays {
        #[arg(long)]
        denominator_max: i64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(text) => {
            println!("{text}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Parse(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Input parsing
// ---------------------------------------------------------------------------

fn parse_fraction(s: &str) -> Result<BigRational, Error> {
    let bad = || Error::Parse(format!("invalid fraction '{s}'"));
    match s.split_once('/') {
        Some((num, den)) => {
            let n: BigInt = num.trim().parse().map_err(|_| bad())?;
            let d: BigInt = den.trim().parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(Error::Parse(format!("zero denominator in '{s}'")));
            }
            Ok(BigRational::new(n, d))
        }
        None => {
            let n: BigInt = s.trim().parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(n))
        }
    }
}

fn parse_cf_value(s: &str) -> Result<ContinuedFraction, Error> {
    if s.trim_start().starts_with('[') {
        s.parse()
    } else {
        ContinuedFraction::from_rational(&parse_fraction(s)?)
    }
}

fn parse_binary_value(s: &str) -> Result<BinaryExpansion, Error> {
    let t = s.trim();
    if t.starts_with("0.") || t.starts_with('.') {
        t.parse()
    } else {
        BinaryExpansion::from_rational(&parse_fraction(t)?)
    }
}

/// Accepts `1e-12` or an exact fraction.
fn parse_tolerance(s: &str) -> Result<BigRational, Error> {
    let t = s.trim();
    if let Some(exp) = t.strip_prefix("1e-") {
        let digits: u32 = exp
            .parse()
            .map_err(|_| Error::Parse(format!("invalid tolerance '{s}'")))?;
        return Ok(BigRational::new(BigInt::one(), BigInt::from(10).pow(digits)));
    }
    let v = parse_fraction(t)?;
    if v <= BigRational::from_integer(BigInt::from(0)) {
        return Err(Error::Parse(format!("tolerance must be positive, got '{s}'")));
    }
    Ok(v)
}

// ---------------------------------------------------------------------------
// Rendering helpers
// ---------------------------------------------------------------------------

fn pow10(digits: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10).pow(digits as u32))
}

/// Decimal digits of the value of a continued fraction, pinned through a
/// convergent enclosure when the value is irrational.
fn cf_decimal(c: &ContinuedFraction, digits: usize) -> String {
    let mut eps = pow10(digits + 4);
    loop {
        if let Some(s) = c.value_enclosure(&eps).pinned_decimal(digits) {
            return s;
        }
        eps = eps / BigRational::from_integer(BigInt::from(100_000));
    }
}

fn enclosure_decimals(e: &Enclosure, digits: usize) -> (String, String) {
    (decimal_string(e.lo(), digits), decimal_string(e.hi(), digits))
}

#[derive(Serialize)]
struct GapRecord {
    kind: &'static str,
    depth: usize,
    pseudocenter: String,
    left: String,
    right: String,
    left_value_decimal: String,
    right_value_decimal: String,
}

impl GapRecord {
    fn of_dyadic(g: &DyadicGap, digits: usize) -> Self {
        GapRecord {
            kind: "dyadic",
            depth: g.depth,
            pseudocenter: g.pseudocenter.to_string(),
            left: g.left.to_string(),
            right: g.right.to_string(),
            left_value_decimal: decimal_string(&g.left.value(), digits),
            right_value_decimal: decimal_string(&g.right.value(), digits),
        }
    }

    fn of_quadratic(g: &QuadraticGap, digits: usize) -> Self {
        GapRecord {
            kind: "quadratic",
            depth: g.depth,
            pseudocenter: g.pseudocenter.to_string(),
            left: g.left.to_string(),
            right: g.right.to_string(),
            left_value_decimal: cf_decimal(&g.left, digits),
            right_value_decimal: cf_decimal(&g.right, digits),
        }
    }

    fn of(gap: &IntervalGap, digits: usize) -> Self {
        match gap {
            IntervalGap::Dyadic(g) => Self::of_dyadic(g, digits),
            IntervalGap::Quadratic(g) => Self::of_quadratic(g, digits),
        }
    }

    fn plain(&self) -> String {
        format!(
            "{} depth={} pseudocenter={} ({}, {}) = ({}, {})",
            self.kind,
            self.depth,
            self.pseudocenter,
            self.left,
            self.right,
            self.left_value_decimal,
            self.right_value_decimal
        )
    }

    fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.kind,
            self.depth,
            self.pseudocenter,
            self.left,
            self.right,
            self.left_value_decimal,
            self.right_value_decimal
        )
    }
}

const GAP_CSV_HEADER: &str =
    "kind,depth,pseudocenter,left,right,left_value_decimal,right_value_decimal";

fn json<T: Serialize>(value: &T) -> Result<String, Error> {
    serde_json::to_string_pretty(value).map_err(|e| Error::Domain(format!("serialization: {e}")))
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

fn run(cli: &Cli) -> Result<String, Error> {
    let digits = cli.precision;
    match &cli.command {
        Command::Classify { x, side } => run_classify(x, *side, cli.output, digits),
        Command::Phi { x, inverse } => run_phi(x, *inverse, cli.output, digits),
        Command::Interval { pseudocenter, space } => {
            run_interval(pseudocenter, *space, cli.output, digits)
        }
        Command::Bisect { space, depth } => run_bisect(*space, *depth, cli.output, digits),
        Command::Matching { r, alpha, max_steps } => {
            run_matching(r, alpha.as_deref(), *max_steps, cli.output)
        }
        Command::Cascade { eta, r, levels } => {
            run_cascade(eta.as_deref(), r.as_deref(), *levels, cli.output, digits)
        }
        Command::Xi { z, target_error } => run_xi(z, target_error, cli.output, digits),
        Command::Dimension { k, k_max } => run_dimension(*k, *k_max, cli.output, digits),
        Command::Univoque { seq, prec } => run_univoque(seq, *prec, cli.output, digits),
        Command::Rays { denominator_max } => run_rays(*denominator_max, cli.output, digits),
    }
}

#[derive(Serialize)]
struct ClassifyReport {
    input: String,
    side: &'static str,
    expansion: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<String>,
    decimal: String,
    purely_periodic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda_member: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    gamma_member: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    e_member_gauss: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    e_member_farey: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    e_member_psi1: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    classification: Option<&'static str>,
}

fn run_classify(
    input: &str,
    side: Option<Side>,
    output: Output,
    digits: usize,
) -> Result<String, Error> {
    let t = input.trim();
    let side = match side {
        Some(s) => s,
        None if t.starts_with('[') => Side::Cf,
        None if t.starts_with("0.") || t.starts_with('.') => Side::Binary,
        None => {
            return Err(Error::Parse(format!(
                "fraction input '{input}' needs --side cf or --side binary"
            )))
        }
    };
    let report = match side {
        Side::Cf => {
            let x = parse_cf_value(t)?;
            let member = e_member(&x, ECriterion::Gauss);
            let classification = if x.is_purely_periodic() && member {
                Some(match classify_e_point(&x).expect("member") {
                    EPointClass::Isolated => "isolated",
                    EPointClass::Limit => "limit",
                })
            } else {
                None
            };
            ClassifyReport {
                input: input.to_string(),
                side: "cf",
                expansion: x.to_string(),
                value: match x.value() {
                    ExactNumber::Rational(v) => Some(v.to_string()),
                    ExactNumber::Quadratic(s) => Some(s.to_string()),
                },
                decimal: cf_decimal(&x, digits),
                purely_periodic: x.is_purely_periodic(),
                lambda_member: None,
                gamma_member: None,
                e_member_gauss: Some(member),
                e_member_farey: Some(e_member(&x, ECriterion::Farey)),
                e_member_psi1: Some(e_member(&x, ECriterion::Psi1)),
                classification,
            }
        }
        Side::Binary => {
            let b = parse_binary_value(t)?;
            ClassifyReport {
                input: input.to_string(),
                side: "binary",
                expansion: b.to_string(),
                value: Some(b.value().to_string()),
                decimal: decimal_string(&b.value(), digits),
                purely_periodic: b.is_purely_periodic(),
                lambda_member: Some(lambda_member(&b)),
                gamma_member: Some(gamma_member(&b)),
                e_member_gauss: None,
                e_member_farey: None,
                e_member_psi1: None,
                classification: None,
            }
        }
    };
    match output {
        Output::Json => json(&report),
        _ => {
            let mut lines = vec![
                format!("expansion: {}", report.expansion),
                format!("value: {}", report.value.as_deref().unwrap_or("-")),
                format!("decimal: {}", report.decimal),
                format!("purely_periodic: {}", report.purely_periodic),
            ];
            if let Some(v) = report.lambda_member {
                lines.push(format!("lambda_member: {v}"));
            }
            if let Some(v) = report.gamma_member {
                lines.push(format!("gamma_member: {v}"));
            }
            if let Some(v) = report.e_member_gauss {
                lines.push(format!("e_member: {v}"));
            }
            if let Some(c) = report.classification {
                lines.push(format!("classification: {c}"));
            }
            Ok(lines.join("\n"))
        }
    }
}

#[derive(Serialize)]
struct PhiReport {
    input: String,
    image_expansion: String,
    image_value: String,
    image_decimal: String,
}

fn run_phi(x: &str, inverse: bool, output: Output, digits: usize) -> Result<String, Error> {
    let report = if inverse {
        let b = parse_binary_value(x)?;
        let c = phi_inv(&b)?;
        let value = match c.value() {
            ExactNumber::Rational(v) => v.to_string(),
            ExactNumber::Quadratic(s) => s.to_string(),
        };
        PhiReport {
            input: x.to_string(),
            image_expansion: c.to_string(),
            image_value: value,
            image_decimal: cf_decimal(&c, digits),
        }
    } else {
        let c = parse_cf_value(x)?;
        let b = phi(&c);
        PhiReport {
            input: x.to_string(),
            image_expansion: b.to_string(),
            image_value: b.value().to_string(),
            image_decimal: decimal_string(&b.value(), digits),
        }
    };
    match output {
        Output::Json => json(&report),
        _ => {
            if inverse {
                Ok(report.image_expansion)
            } else {
                Ok(report.image_value)
            }
        }
    }
}

fn run_interval(
    pseudocenter: &str,
    space: Space,
    output: Output,
    digits: usize,
) -> Result<String, Error> {
    let r = parse_fraction(pseudocenter)?;
    let record = match space {
        Space::E => GapRecord::of_quadratic(&quadratic_interval(&r)?, digits),
        Space::Lambda => GapRecord::of_dyadic(&dyadic_interval(&r)?, digits),
    };
    match output {
        Output::Json => json(&record),
        Output::Csv => Ok(format!("{GAP_CSV_HEADER}\n{}", record.csv())),
        Output::Plain => Ok(record.plain()),
    }
}

fn run_bisect(space: Space, depth: usize, output: Output, digits: usize) -> Result<String, Error> {
    if depth == 0 {
        return Err(Error::Domain("bisection depth must be at least 1".into()));
    }
    if depth > 16 {
        return Err(Error::Domain(format!(
            "bisection depth {depth} would enumerate 2^{depth} components; limit is 16"
        )));
    }
    let gaps = bisect_enumerate(
        match space {
            Space::Lambda => BisectSpace::Lambda,
            Space::E => BisectSpace::E,
        },
        depth,
    );
    let records: Vec<GapRecord> = gaps.iter().map(|g| GapRecord::of(g, digits)).collect();
    match output {
        Output::Json => json(&records),
        Output::Csv => {
            let mut out = vec![GAP_CSV_HEADER.to_string()];
            out.extend(records.iter().map(GapRecord::csv));
            Ok(out.join("\n"))
        }
        Output::Plain => Ok(records.iter().map(GapRecord::plain).collect::<Vec<_>>().join("\n")),
    }
}

#[derive(Serialize)]
struct MatchingRow {
    r: String,
    alpha: String,
    n: u64,
    m: u64,
    holds: bool,
    orbit_lengths: [u64; 2],
}

fn run_matching(
    r: &str,
    alpha: Option<&str>,
    max_steps: u64,
    output: Output,
) -> Result<String, Error> {
    let r = parse_fraction(r)?;
    let alphas = match alpha {
        Some(a) => vec![parse_fraction(a)?],
        None => matching_test_points(&r)?,
    };
    let mut rows = Vec::new();
    for alpha in alphas {
        let report = verify_matching(&r, &alpha)?;
        if report.n + report.m + 2 > max_steps {
            return Err(Error::Domain(format!(
                "collision exponents ({}, {}) exceed --max-steps {max_steps}",
                report.n, report.m
            )));
        }
        rows.push(MatchingRow {
            r: r.to_string(),
            alpha: alpha.to_string(),
            n: report.n,
            m: report.m,
            holds: report.holds,
            orbit_lengths: [report.steps.0, report.steps.1],
        });
    }
    match output {
        Output::Json => json(&rows),
        _ => Ok(rows
            .iter()
            .map(|row| {
                format!(
                    "r={} alpha={} N={} M={} holds={} steps=({}, {})",
                    row.r, row.alpha, row.n, row.m, row.holds, row.orbit_lengths[0],
                    row.orbit_lengths[1]
                )
            })
            .collect::<Vec<_>>()
            .join("\n")),
    }
}

#[derive(Serialize)]
struct WindowRow {
    j: u32,
    tau: String,
    d: String,
    tau_decimal: String,
    d_decimal: String,
}

#[derive(Serialize)]
struct WindowReport {
    eta: String,
    rows: Vec<WindowRow>,
    tau_infinity_low: String,
    tau_infinity_high: String,
}

#[derive(Serialize)]
struct CascadeRow {
    n: u32,
    alpha: String,
    alpha_decimal: String,
}

#[derive(Serialize)]
struct CascadeReport {
    r: String,
    s0: Vec<u64>,
    s1: Vec<u64>,
    rows: Vec<CascadeRow>,
    limit_expansion_prefix: String,
    alpha_infinity_low: String,
    alpha_infinity_high: String,
}

fn run_cascade(
    eta: Option<&str>,
    r: Option<&str>,
    levels: u32,
    output: Output,
    digits: usize,
) -> Result<String, Error> {
    if levels > 10 {
        return Err(Error::Domain(format!(
            "cascade level {levels} doubles the data {levels} times; limit is 10"
        )));
    }
    match (eta, r) {
        (Some(word), None) => {
            let eta: Result<Vec<bool>, Error> = word
                .chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(Error::Parse(format!("invalid window word '{word}'"))),
                })
                .collect();
            let window = PeriodicWindow::new(eta?)?;
            let rows: Vec<WindowRow> = (0..=levels)
                .map(|j| WindowRow {
                    j,
                    tau: window.tau(j).to_string(),
                    d: window.pseudocenter(j).to_string(),
                    tau_decimal: decimal_string(&window.tau(j), digits),
                    d_decimal: decimal_string(&window.pseudocenter(j), digits),
                })
                .collect();
            let limit = window.tau_infinity(&pow10(digits + 4));
            let (lo, hi) = enclosure_decimals(&limit, digits);
            let report = WindowReport {
                eta: word.to_string(),
                rows,
                tau_infinity_low: lo,
                tau_infinity_high: hi,
            };
            match output {
                Output::Json => json(&report),
                Output::Csv => {
                    let mut out = vec!["j,tau,d,tau_decimal,d_decimal".to_string()];
                    out.extend(report.rows.iter().map(|row| {
                        format!(
                            "{},{},{},{},{}",
                            row.j, row.tau, row.d, row.tau_decimal, row.d_decimal
                        )
                    }));
                    out.push(format!(
                        "infinity,,,{},{}",
                        report.tau_infinity_low, report.tau_infinity_high
                    ));
                    Ok(out.join("\n"))
                }
                Output::Plain => {
                    let mut out: Vec<String> = report
                        .rows
                        .iter()
                        .map(|row| {
                            format!(
                                "j={} tau={} d={} tau~{} d~{}",
                                row.j, row.tau, row.d, row.tau_decimal, row.d_decimal
                            )
                        })
                        .collect();
                    out.push(format!(
                        "tau_infinity in [{}, {}]",
                        report.tau_infinity_low, report.tau_infinity_high
                    ));
                    Ok(out.join("\n"))
                }
            }
        }
        (None, Some(r)) => {
            let r = parse_fraction(r)?;
            let cascade = CfCascade::new(&r)?;
            let rows: Vec<CascadeRow> = (0..=levels)
                .map(|n| {
                    let alpha = cascade.alpha(n);
                    let alpha_decimal = cf_decimal(&alpha, digits);
                    CascadeRow { n, alpha: alpha.to_string(), alpha_decimal }
                })
                .collect();
            let limit = cascade.alpha_infinity(&pow10(digits + 4));
            let (lo, hi) = enclosure_decimals(&limit, digits);
            let prefix = cascade
                .limit_quotients(16)
                .iter()
                .map(|a| a.to_string())
                .collect::<Vec<_>>()
                .join(",");
            let report = CascadeReport {
                r: r.to_string(),
                s0: cascade.s0().to_vec(),
                s1: cascade.s1().to_vec(),
                rows,
                limit_expansion_prefix: format!("[0;{prefix},...]"),
                alpha_infinity_low: lo,
                alpha_infinity_high: hi,
            };
            match output {
                Output::Json => json(&report),
                Output::Csv => {
                    let mut out = vec!["n,alpha,alpha_decimal".to_string()];
                    out.extend(
                        report
                            .rows
                            .iter()
                            .map(|row| format!("{},{},{}", row.n, row.alpha, row.alpha_decimal)),
                    );
                    out.push(format!(
                        "infinity,{},{}",
                        report.alpha_infinity_low, report.alpha_infinity_high
                    ));
                    Ok(out.join("\n"))
                }
                Output::Plain => {
                    let mut out: Vec<String> = report
                        .rows
                        .iter()
                        .map(|row| format!("n={} alpha={} ~ {}", row.n, row.alpha, row.alpha_decimal))
                        .collect();
                    out.push(format!("limit expansion: {}", report.limit_expansion_prefix));
                    out.push(format!(
                        "alpha_infinity in [{}, {}]",
                        report.alpha_infinity_low, report.alpha_infinity_high
                    ));
                    Ok(out.join("\n"))
                }
            }
        }
        _ => Err(Error::Parse("cascade needs exactly one of --eta or --r".into())),
    }
}

#[derive(Serialize)]
struct XiReport {
    z: String,
    low: String,
    high: String,
    low_decimal: String,
    high_decimal: String,
}

fn run_xi(z: &str, target_error: &str, output: Output, digits: usize) -> Result<String, Error> {
    let z = parse_fraction(z)?;
    let eps = parse_tolerance(target_error)?;
    let e = xi_eval(&z, &eps)?;
    let (lo, hi) = enclosure_decimals(&e, digits);
    let report = XiReport {
        z: z.to_string(),
        low: e.lo().to_string(),
        high: e.hi().to_string(),
        low_decimal: lo,
        high_decimal: hi,
    };
    match output {
        Output::Json => json(&report),
        _ => Ok(format!("Xi({}) in [{}, {}]", report.z, report.low_decimal, report.high_decimal)),
    }
}

#[derive(Serialize)]
struct DimensionRow {
    k: u32,
    lambda: String,
    dim_ck: String,
    sandwich_low: String,
    sandwich_high: String,
    e_reference: String,
}

fn run_dimension(
    k: Option<u32>,
    k_max: Option<u32>,
    output: Output,
    digits: usize,
) -> Result<String, Error> {
    let range: Vec<u32> = match (k, k_max) {
        (Some(k), None) => vec![k],
        (None, Some(maxk)) => (2..=maxk).collect(),
        _ => return Err(Error::Parse("dimension needs exactly one of --k or --k-max".into())),
    };
    let eps = pow10(digits + 4);
    let mut rows = Vec::new();
    for k in range {
        let report = dimension_report(k, &eps)?;
        rows.push(DimensionRow {
            k,
            lambda: decimal_string(&report.lambda.midpoint(), digits),
            dim_ck: decimal_string(&report.dim_ck.midpoint(), digits),
            sandwich_low: decimal_string(&report.sandwich_low.midpoint(), digits),
            sandwich_high: decimal_string(&report.sandwich_high.midpoint(), digits),
            e_reference: format!("{:.12}", report.e_reference),
        });
    }
    match output {
        Output::Json => json(&rows),
        _ => {
            // The table is the CSV of the interface contract in both plain
            // and csv modes.
            let mut out = vec!["K,lambda_K,dim_CK,sandwich_low,sandwich_high,e_reference".to_string()];
            out.extend(rows.iter().map(|r| {
                format!(
                    "{},{},{},{},{},{}",
                    r.k, r.lambda, r.dim_ck, r.sandwich_low, r.sandwich_high, r.e_reference
                )
            }));
            Ok(out.join("\n"))
        }
    }
}

#[derive(Serialize)]
struct UnivoqueReport {
    admissible: bool,
    q_low: String,
    q_high: String,
    depth: u64,
}

fn run_univoque(seq: &str, prec: u32, output: Output, digits: usize) -> Result<String, Error> {
    let source = if seq.trim() == "thue-morse" {
        SequenceSource::ShiftedThueMorse
    } else {
        SequenceSource::Expansion(parse_binary_value(seq)?)
    };
    let admissible = match &source {
        SequenceSource::Expansion(b) => is_admissible(b),
        SequenceSource::ShiftedThueMorse => is_admissible_to_depth(&source, 128),
    };
    let width = BigRational::new(BigInt::one(), BigInt::from(10).pow(prec));
    let (enclosure, depth) = univoque_q(&source, &width)?;
    let (lo, hi) = enclosure_decimals(&enclosure, digits);
    let report = UnivoqueReport { admissible, q_low: lo, q_high: hi, depth };
    match output {
        Output::Json => json(&report),
        _ => Ok(format!(
            "admissible={} q in [{}, {}] depth={}",
            report.admissible, report.q_low, report.q_high, report.depth
        )),
    }
}

#[derive(Serialize)]
struct RayRow {
    angle_a: String,
    angle_b: String,
    period: usize,
    lambda_point: String,
    e_parameter: String,
    e_parameter_decimal: String,
}

fn run_rays(denominator_max: i64, output: Output, digits: usize) -> Result<String, Error> {
    if !(1..=256).contains(&denominator_max) {
        return Err(Error::Domain("denominator bound must lie in 1..=256".into()));
    }
    let mut rows = Vec::new();
    for den in 1..=denominator_max {
        for num in 0..=den / 2 {
            let theta = BigRational::new(BigInt::from(num), BigInt::from(den));
            if theta.denom() != &BigInt::from(den) && !(num == 0 && den == 1) {
                continue; // only reduced fractions, each angle once
            }
            let leaf = Leaf::new(&theta, &(BigRational::one() - &theta));
            if !is_minor_leaf(&leaf) {
                continue;
            }
            let doubled = &theta * BigRational::from_integer(BigInt::from(2));
            let lambda_point = BinaryExpansion::from_rational(&doubled)?;
            let e_param = phi_inv(&lambda_point);
            let (a, b) = leaf.endpoints();
            let (e_parameter, e_parameter_decimal) = match e_param {
                Ok(c) => {
                    let decimal = cf_decimal(&c, digits);
                    (c.to_string(), decimal)
                }
                // The kneading point 0 is the one value without a partner.
                Err(_) => ("-".to_string(), "-".to_string()),
            };
            rows.push(RayRow {
                angle_a: a.to_string(),
                angle_b: b.to_string(),
                period: leaf_cycle_length(&leaf),
                lambda_point: doubled.to_string(),
                e_parameter,
                e_parameter_decimal,
            });
        }
    }
    match output {
        Output::Json => json(&rows),
        _ => {
            let mut out =
                vec!["angle_a,angle_b,period,lambda_point,e_parameter,e_parameter_decimal".to_string()];
            out.extend(rows.iter().map(|r| {
                format!(
                    "{},{},{},{},{},{}",
                    r.angle_a, r.angle_b, r.period, r.lambda_point, r.e_parameter,
                    r.e_parameter_decimal
                )
            }));
            Ok(out.join("\n"))
        }
    }
}

/// Eventual cycle length of a leaf orbit under angle doubling.
fn leaf_cycle_length(leaf: &Leaf) -> usize {
    let mut orbit = vec![leaf.clone()];
    loop {
        let next = orbit.last().unwrap().image();
        if let Some(pos) = orbit.iter().position(|l| l == &next) {
            return orbit.len() - pos;
        }
        orbit.push(next);
    }
}
