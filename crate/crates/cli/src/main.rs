//! `wss`: periods, Wall-Sun-Sun tests, check-polynomial constructions and
//! the weight data of the attached cyclic codes.
//!
//! Exit status: 0 success, 1 usage or precondition error, 2 verification
//! failure, 3 a published claim was found not to hold.

mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use output::{emit, Format};
use wss_codes::codes::{
    classify, closed_form_distribution, p_submodule_distribution, weight_distribution_enumerate, CyclicCode,
    WeightDistribution, DEFAULT_BUDGET,
};
use wss_codes::inverse::{construct, Case, InverseCertificate};
use wss_codes::modnum::{is_prime, legendre};
use wss_codes::pell::{fundamental_unit_with_bound, recurrence_from_unit, DEFAULT_PELL_BOUND};
use wss_codes::quadpoly::{signed_squarefree, DoubleRootReport, MonicQuadratic};
use wss_codes::recurrence::{
    alpha_cross_check, fibonacci_prationality, period, period_by_iteration, q5_alpha_evaluation, wss_test,
    RecurrenceSpec, ASSUMPTION_NOTE,
};
use wss_codes::tables::{run_table, HarnessOptions, Verdict};
use wss_codes::Error;

#[derive(Parser)]
#[command(name = "wss", version, about = "Wall-Sun-Sun primes, Hensel lifts and two-dimensional cyclic codes")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Maximum `m^2 n` cell visits for one exhaustive enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    /// Largest `b` tried when solving `x^2 - d y^2 = ±4`.
    #[arg(long, global = true, default_value_t = DEFAULT_PELL_BOUND)]
    pell_bound: u64,
    #[command(subcommand)]
    command: Command,
}

/// A recurrence `F_{n+2} = -A F_{n+1} - B F_n`, given directly, by trace
/// and norm, or as the fundamental unit of `Q(√d)`.
#[derive(Args, Debug)]
struct SpecArgs {
    #[arg(long = "A", allow_negative_numbers = true, requires = "b", conflicts_with_all = ["trace", "d"])]
    a: Option<i64>,
    #[arg(long = "B", allow_negative_numbers = true)]
    b: Option<i64>,
    #[arg(long, allow_negative_numbers = true, requires = "norm", conflicts_with = "d")]
    trace: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    norm: Option<i64>,
    #[arg(long)]
    d: Option<u64>,
}

impl SpecArgs {
    fn resolve(&self, pell_bound: u64) -> Result<(RecurrenceSpec, Option<u64>), Error> {
        match (self.a, self.b, self.trace, self.norm, self.d) {
            (Some(a), Some(b), None, None, None) => Ok((RecurrenceSpec::new(a, b), None)),
            (None, None, Some(t), Some(n), None) => Ok((RecurrenceSpec::from_trace_norm(t, n), None)),
            (None, None, None, None, Some(d)) => {
                Ok((recurrence_from_unit(&fundamental_unit_with_bound(d, pell_bound)?), Some(d)))
            }
            _ => Err(Error::InvalidArgument("give exactly one of --A/--B, --trace/--norm or --d".into())),
        }
    }
}

/// A check polynomial, either `"x^2+29x+19 (mod 49)"` or the bare
/// polynomial with `--modulus`.
#[derive(Args, Debug)]
struct CheckArgs {
    #[arg(long, allow_hyphen_values = true)]
    check: String,
    #[arg(long)]
    modulus: Option<u64>,
    /// Code length; defaults to the order of the check polynomial.
    #[arg(long)]
    length: Option<u64>,
}

impl CheckArgs {
    fn code(&self) -> Result<CyclicCode, Error> {
        let h = match self.modulus {
            Some(m) => MonicQuadratic::parse_with_modulus(&self.check, m)?,
            None => self.check.parse()?,
        };
        match self.length {
            Some(n) => CyclicCode::with_length(&h, n),
            None => CyclicCode::from_check(&h),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WeightMethod {
    Auto,
    Enumerate,
    Formula,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum RationalityMethod {
    Period,
    Fibonacci,
    Alpha,
}

#[derive(Subcommand)]
enum Command {
    /// Least period of the recurrence from the state (0, 1).
    Period {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        modulus: u64,
        /// Step the sequence instead of using the matrix order.
        #[arg(long)]
        iterate: bool,
    },
    /// Periods modulo p and p^2.
    Wss {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        p: u64,
    },
    /// Build a recurrence for which p is Wall-Sun-Sun.
    Construct {
        #[arg(long)]
        p: u64,
        #[arg(long = "case")]
        case: Case,
        /// Target period; defaults to p - 1, p or 2p + 2 by case.
        #[arg(long)]
        order: Option<u64>,
        /// Integer pair (A, B) to use instead of the canonical lift.
        #[arg(long = "lift-A", allow_negative_numbers = true, requires = "lift_b")]
        lift_a: Option<i64>,
        #[arg(long = "lift-B", allow_negative_numbers = true)]
        lift_b: Option<i64>,
    },
    /// Weight distribution of the code with a given check polynomial.
    Weights {
        #[command(flatten)]
        check: CheckArgs,
        #[arg(long, value_enum, default_value = "auto")]
        method: WeightMethod,
    },
    /// MDS / NMDS / repetition classification of a code.
    Classify {
        #[command(flatten)]
        check: CheckArgs,
    },
    /// Recompute a published table row by row.
    Table {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
        id: u8,
    },
    /// p-rationality of Q(√d) by several criteria, compared.
    Prationality {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        p: u64,
        /// Repeat to compare; defaults to every method that applies.
        #[arg(long, value_enum)]
        method: Vec<RationalityMethod>,
    },
    /// The harmonic-sum congruence for Q(√5) against the period test.
    Alpha {
        #[arg(long, conflicts_with = "limit")]
        p: Option<u64>,
        #[arg(long, default_value_t = 10_000)]
        limit: u64,
    },
    /// Lifts of (x - 1)^2 that divide x^p - 1 modulo p^2.
    DoubleRoot {
        #[arg(long)]
        p: u64,
    },
}

enum Failure {
    Usage(String),
    Verification(String),
    Discrepancy,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Verification(_) | Error::DichotomyViolation { .. } => Failure::Verification(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

#[derive(Serialize)]
struct PeriodRecord {
    #[serde(rename = "A")]
    a: i64,
    #[serde(rename = "B")]
    b: i64,
    modulus: u64,
    period: u64,
}

#[derive(Serialize)]
struct WssRecord {
    p: u64,
    d: i128,
    #[serde(rename = "A")]
    a: i64,
    #[serde(rename = "B")]
    b: i64,
    k_p: u64,
    k_p2: u64,
    is_wss: bool,
    assumption_note: String,
}

#[derive(Serialize)]
struct CertificateRecord {
    p: u64,
    case: String,
    #[serde(rename = "D")]
    order: u64,
    h: String,
    #[serde(rename = "H")]
    lifted: String,
    #[serde(rename = "A")]
    a: i64,
    #[serde(rename = "B")]
    b: i64,
    delta: i128,
    d: i128,
    k_p: u64,
    k_p2: u64,
}

impl From<&InverseCertificate> for CertificateRecord {
    fn from(c: &InverseCertificate) -> Self {
        Self {
            p: c.p,
            case: c.case.to_string(),
            order: c.order,
            h: c.h.to_string(),
            lifted: c.lifted.to_string(),
            a: c.a,
            b: c.b,
            delta: c.delta,
            d: c.d,
            k_p: c.k_p,
            k_p2: c.k_p2,
        }
    }
}

#[derive(Serialize)]
struct WeightsRecord {
    check: String,
    n: u64,
    modulus: u64,
    method: String,
    distribution: String,
    pless: bool,
}

#[derive(Serialize)]
struct ClassifyRecord {
    check: String,
    n: u64,
    modulus: u64,
    distribution: String,
    min_distance: u64,
    label: String,
    is_mds: bool,
    is_amds: bool,
    is_nmds: bool,
    dual_distance: String,
    is_projective: bool,
    repetition: u64,
    quotient: String,
    quotient_verified: Option<bool>,
    weight_gap_law: bool,
    extremal_nmds: bool,
}

#[derive(Serialize)]
struct RationalityRecord {
    d: u64,
    p: u64,
    method: RationalityMethod,
    p_rational: bool,
    detail: String,
    agrees: bool,
}

#[derive(Serialize)]
struct AlphaRecord {
    p: u64,
    lhs: u64,
    rhs: u64,
    congruence_holds: bool,
    k_p: u64,
    k_p2: u64,
    agrees: bool,
}

#[derive(Serialize)]
struct DoubleRootRecord {
    p: u64,
    lifts: String,
    lift_exists: bool,
    square_is_lift: bool,
    square_remainder: String,
}

fn weights(code: &CyclicCode, method: WeightMethod, budget: u128) -> Result<(WeightDistribution, String), Failure> {
    match method {
        WeightMethod::Enumerate => Ok((weight_distribution_enumerate(code, budget)?, "enumerate".into())),
        WeightMethod::Formula => Ok((closed_form_distribution(code)?, "formula".into())),
        WeightMethod::Auto => match weight_distribution_enumerate(code, budget) {
            Ok(wd) => Ok((wd, "enumerate".into())),
            Err(Error::BudgetExceeded { .. }) => {
                let formula = closed_form_distribution(code)?;
                if code.is_over_field() {
                    return Ok((formula, "formula".into()));
                }
                let sub = p_submodule_distribution(code, budget)?;
                let reduced = weights(&code.reduce_mod_p()?, WeightMethod::Auto, budget)?.0;
                if sub != reduced {
                    return Err(Failure::Verification(format!("pC has weights {sub}, the code mod p has {reduced}")));
                }
                Ok((formula, "formula+pC".into()))
            }
            Err(e) => Err(e.into()),
        },
    }
}

fn rationality(
    d: u64,
    p: u64,
    methods: &[RationalityMethod],
    pell_bound: u64,
) -> Result<Vec<RationalityRecord>, Failure> {
    let mut methods = methods.to_vec();
    if methods.is_empty() {
        methods = vec![RationalityMethod::Period, RationalityMethod::Fibonacci];
        if d == 5 && p % 5 == 1 {
            methods.push(RationalityMethod::Alpha);
        }
    }
    methods.sort();
    methods.dedup();
    let mut records = Vec::new();
    for method in methods {
        let (p_rational, detail) = match method {
            RationalityMethod::Period => {
                let spec = recurrence_from_unit(&fundamental_unit_with_bound(d, pell_bound)?);
                let r = wss_test(&spec, p)?;
                (!r.is_wss, format!("k(p)={} k(p^2)={}", r.kp, r.kp2))
            }
            RationalityMethod::Fibonacci => {
                let r = fibonacci_prationality(d, p, pell_bound)?;
                (r.p_rational, format!("F_{} mod p^2 = {}", r.index, r.term_mod_p2))
            }
            RationalityMethod::Alpha => {
                if d != 5 || !is_prime(p) || p % 5 != 1 {
                    return Err(Failure::Usage("the alpha criterion needs d = 5 and a prime p ≡ 1 (mod 5)".into()));
                }
                let e = q5_alpha_evaluation(p)?;
                (!e.congruence_holds, format!("lhs={} rhs={}", e.lhs, e.rhs))
            }
        };
        records.push(RationalityRecord { d, p, method, p_rational, detail, agrees: true });
    }
    let first = records[0].p_rational;
    let unanimous = records.iter().all(|r| r.p_rational == first);
    for r in &mut records {
        r.agrees = unanimous;
    }
    Ok(records)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let format = cli.format;
    match cli.command {
        Command::Period { spec, modulus, iterate } => {
            let (spec, _) = spec.resolve(cli.pell_bound)?;
            let k = if iterate { period_by_iteration(&spec, modulus)? } else { period(&spec, modulus)? };
            if format == Format::Text {
                println!("{k}");
            } else {
                emit(format, &[PeriodRecord { a: spec.a, b: spec.b, modulus, period: k }])?;
            }
        }
        Command::Wss { spec: args, p } => {
            let (spec, d) = args.resolve(cli.pell_bound)?;
            let r = wss_test(&spec, p)?;
            let d = match d {
                Some(d) => d as i128,
                None => signed_squarefree(spec.discriminant())?,
            };
            emit(
                format,
                &[WssRecord {
                    p,
                    d,
                    a: spec.a,
                    b: spec.b,
                    k_p: r.kp,
                    k_p2: r.kp2,
                    is_wss: r.is_wss,
                    assumption_note: ASSUMPTION_NOTE.into(),
                }],
            )?;
        }
        Command::Construct { p, case, order, lift_a, lift_b } => {
            let lift = lift_a.zip(lift_b);
            let cert = construct(p, case, order, lift)?;
            emit(format, &[CertificateRecord::from(&cert)])?;
        }
        Command::Weights { check, method } => {
            let code = check.code()?;
            let (wd, method) = weights(&code, method, cli.budget)?;
            let pless = wd.satisfies_pless();
            emit(
                format,
                &[WeightsRecord {
                    check: code.check().to_string(),
                    n: code.length(),
                    modulus: code.modulus(),
                    method,
                    distribution: wd.to_string(),
                    pless,
                }],
            )?;
            if !pless {
                return Err(Failure::Verification("the distribution violates the power-moment identities".into()));
            }
        }
        Command::Classify { check } => {
            let code = check.code()?;
            let (wd, _) = weights(&code, WeightMethod::Enumerate, cli.budget)?;
            let r = classify(&code, &wd)?;
            let quotient = r.quotient_params.map(|(n, k, d)| format!("[{n},{k},{d}]")).unwrap_or_default();
            emit(
                format,
                &[ClassifyRecord {
                    check: code.check().to_string(),
                    n: r.n,
                    modulus: r.modulus,
                    distribution: wd.to_string(),
                    min_distance: r.min_distance,
                    label: r.label,
                    is_mds: r.is_mds,
                    is_amds: r.is_amds,
                    is_nmds: r.is_nmds,
                    dual_distance: format!("{:?}", r.dual_distance),
                    is_projective: r.is_projective,
                    repetition: r.repetition_factor,
                    quotient,
                    quotient_verified: r.quotient_verified,
                    weight_gap_law: r.weight_gap_law,
                    extremal_nmds: r.is_extremal_nmds,
                }],
            )?;
        }
        Command::Table { id } => {
            let opts = HarnessOptions { budget: cli.budget, pell_bound: cli.pell_bound };
            let rows = run_table(id, &opts)?;
            let records: Vec<_> = rows.iter().map(|r| r.record()).collect();
            emit(format, &records)?;
            let failed: Vec<_> = rows.iter().filter(|r| r.verdict() == Verdict::Fail).collect();
            for row in &failed {
                eprintln!("row (n={}, d={}, p={}):", row.n, row.d, row.p);
                for c in row.checks.iter().filter(|c| c.verdict == Verdict::Fail) {
                    eprintln!("  {}: expected {}, computed {}", c.field, c.expected, c.computed);
                }
            }
            eprintln!("table {id}: {} rows, {} failed", rows.len(), failed.len());
            if !failed.is_empty() {
                return Err(Failure::Verification(format!("{} rows of table {id} failed", failed.len())));
            }
        }
        Command::Prationality { d, p, method } => {
            if legendre(i64::try_from(d % p.max(1)).unwrap_or(0), p).is_err() {
                return Err(Failure::Usage(format!("p = {p} must be an odd prime")));
            }
            let records = rationality(d, p, &method, cli.pell_bound)?;
            emit(format, &records)?;
            if !records.iter().all(|r| r.agrees) {
                eprintln!("the criteria disagree for d = {d}, p = {p}");
                return Err(Failure::Discrepancy);
            }
        }
        Command::Alpha { p, limit } => {
            let records: Vec<AlphaRecord> = match p {
                Some(p) => {
                    let e = q5_alpha_evaluation(p)?;
                    let r = wss_test(&RecurrenceSpec::fibonacci(), p)?;
                    vec![AlphaRecord {
                        p,
                        lhs: e.lhs,
                        rhs: e.rhs,
                        congruence_holds: e.congruence_holds,
                        k_p: r.kp,
                        k_p2: r.kp2,
                        agrees: e.congruence_holds == r.is_wss,
                    }]
                }
                None => {
                    let report = alpha_cross_check(limit)?;
                    eprintln!(
                        "{} primes p ≡ 1 (mod 5) up to {limit}, {} disagreements",
                        report.primes_checked,
                        report.disagreements.len()
                    );
                    report
                        .disagreements
                        .iter()
                        .map(|x| -> Result<AlphaRecord, Failure> {
                            let e = q5_alpha_evaluation(x.p)?;
                            Ok(AlphaRecord {
                                p: x.p,
                                lhs: e.lhs,
                                rhs: e.rhs,
                                congruence_holds: x.congruence_holds,
                                k_p: x.kp,
                                k_p2: x.kp2,
                                agrees: false,
                            })
                        })
                        .collect::<Result<_, _>>()?
                }
            };
            emit(format, &records)?;
            if records.iter().any(|r| !r.agrees) {
                return Err(Failure::Discrepancy);
            }
        }
        Command::DoubleRoot { p } => {
            let r = DoubleRootReport::compute(p)?;
            let lifts: Vec<String> = r.lifts.iter().map(|h| h.polynomial_string()).collect();
            emit(
                format,
                &[DoubleRootRecord {
                    p,
                    lifts: lifts.join(";"),
                    lift_exists: r.lift_exists,
                    square_is_lift: r.square_is_lift,
                    square_remainder: format!("{}+{}x", r.square_remainder.0, r.square_remainder.1),
                }],
            )?;
            if !r.conjecture_holds() {
                eprintln!("(x-1)^2 does not divide x^{p}-1 modulo {}", p * p);
                return Err(Failure::Discrepancy);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Discrepancy) => ExitCode::from(3),
    }
}
