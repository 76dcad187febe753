//! `epseq`: exact computation of the epsilon sequence, its p-adic
//! structure, and the A_n-type count bounds, with machine-readable output.
//!
//! Exit codes: 0 on success, 1 when a verification check fails (or the
//! table's internal cross-method comparison does), 2 on usage errors.

mod output;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use epseq::epsilon::{
    composition_sum, composition_sum_table, recursion_table, series_table, SumStrategy,
};
use epseq::exact::Rational;
use epseq::gauge::{an_type_lower_bound, d_prime, dp_bounds, log_identity_check};
use epseq::padic::vp_rational;
use epseq::primes::{factor_rational_with, is_prime_u64, DEFAULT_SEED, DEFAULT_TRIAL_BOUND};
use epseq::BigInt;

use output::{emit_json, Format, Row};
use verify::Suite;

/// Largest order accepted for the composition-sum method: the partition
/// count grows superpolynomially past this.
const COMPSUM_LIMIT: usize = 60;

#[derive(Parser)]
#[command(
    name = "epseq",
    version,
    about = "Exact epsilon-sequence computation and verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Recur,
    Series,
    Compsum,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Jsonl,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Jsonl => Format::Jsonl,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Emit l, eps_l and its prime factorization for l = 0..=max
    Table {
        #[arg(long, default_value_t = 50)]
        max: usize,
        #[arg(long, value_enum, default_value_t = Method::Series)]
        method: Method,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
        #[arg(long = "trial-bound", default_value_t = DEFAULT_TRIAL_BOUND)]
        trial_bound: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Print a single eps_l as a canonical rational
    Value {
        #[arg(long)]
        l: usize,
        #[arg(long, value_enum, default_value_t = Method::Series)]
        method: Method,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// p-adic valuation of eps_l (one l, or all l up to --max)
    Valuation {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        max: Option<usize>,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Factor eps_l, or an explicit rational given as n/d
    Factor {
        #[arg(long)]
        l: Option<usize>,
        /// A rational literal like -23/226800 (alternative to --l)
        rational: Option<String>,
        #[arg(long = "trial-bound", default_value_t = DEFAULT_TRIAL_BOUND)]
        trial_bound: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Run a verification suite; exit 0 only if every check passes
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 50)]
        max: usize,
        /// Restrict the vp suite to one odd prime
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long = "fail-fast")]
        fail_fast: bool,
    },
    /// d'_p(k): longest prefix of eps_i * k staying p-locally integral
    Dprime {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: i64,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Bounds on d_p(k) together with the scanned d'_p(k)
    Bounds {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: i64,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Lower bound for the number of A_n-types of SU(2) gauge groups
    Antypes {
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        max: Option<u64>,
        /// Also evaluate the logarithm identity at each n
        #[arg(long = "log-check")]
        log_check: bool,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => ExitCode::from(code),
    }
}

fn usage(message: &str) -> u8 {
    eprintln!("error: {message}");
    2
}

fn require_prime(p: u64) -> Result<(), u8> {
    if is_prime_u64(p) {
        Ok(())
    } else {
        Err(usage(&format!("--p must be prime, got {p}")))
    }
}

fn require_nonzero_k(k: i64) -> Result<(), u8> {
    if k != 0 {
        Ok(())
    } else {
        Err(usage("--k must be nonzero: d_p(0) = infinity"))
    }
}

fn run(cli: Cli) -> Result<(), u8> {
    match cli.command {
        Command::Table {
            max,
            method,
            format,
            trial_bound,
            seed,
        } => table(max, method, format.into(), trial_bound, seed),
        Command::Value { l, method, format } => value(l, method, format.into()),
        Command::Valuation { p, l, max, format } => valuation(p, l, max, format.into()),
        Command::Factor {
            l,
            rational,
            trial_bound,
            seed,
            format,
        } => factor(l, rational, trial_bound, seed, format.into()),
        Command::Verify {
            suite,
            max,
            p,
            tolerance,
            seed,
            fail_fast,
        } => {
            if let Some(p) = p {
                require_prime(p)?;
                if p == 2 {
                    return Err(usage(
                        "the vp suite covers odd primes; use --suite v2 for p = 2",
                    ));
                }
            }
            let report = verify::run(suite, max, p, tolerance, seed, fail_fast);
            println!("verify: {} passed, {} failed", report.passed, report.failed);
            if report.failed == 0 {
                Ok(())
            } else {
                Err(1)
            }
        }
        Command::Dprime { p, k, format } => {
            require_prime(p)?;
            require_nonzero_k(k)?;
            let d = d_prime(p, &BigInt::from(k));
            match format.into() {
                Format::Text => println!("{d}"),
                Format::Jsonl => {
                    #[derive(Serialize)]
                    struct DprimeRecord {
                        p: u64,
                        k: i64,
                        d_prime: u64,
                    }
                    emit_json(&DprimeRecord { p, k, d_prime: d });
                }
            }
            Ok(())
        }
        Command::Bounds { p, k, format } => {
            require_prime(p)?;
            require_nonzero_k(k)?;
            let report = dp_bounds(p, &BigInt::from(k));
            match format.into() {
                Format::Text => {
                    println!(
                        "lower={} upper={}",
                        report.lower_bound_dp, report.upper_bound_dp
                    )
                }
                Format::Jsonl => {
                    #[derive(Serialize)]
                    struct BoundsRecord {
                        p: u64,
                        k: i64,
                        vpk: i64,
                        d_prime_scanned: u64,
                        d_prime_closed_form: i64,
                        lower_bound_dp: i64,
                        upper_bound_dp: i64,
                    }
                    emit_json(&BoundsRecord {
                        p,
                        k,
                        vpk: report.vpk,
                        d_prime_scanned: report.d_prime_scanned,
                        d_prime_closed_form: report.d_prime_closed_form,
                        lower_bound_dp: report.lower_bound_dp,
                        upper_bound_dp: report.upper_bound_dp,
                    });
                }
            }
            Ok(())
        }
        Command::Antypes {
            n,
            max,
            log_check,
            tolerance,
            format,
        } => antypes(n, max, log_check, tolerance, format.into()),
    }
}

fn build_table(max: usize, method: Method) -> Vec<Rational> {
    match method {
        Method::Series => series_table(max).values().to_vec(),
        Method::Recur => recursion_table(max).values().to_vec(),
        Method::Compsum => composition_sum_table(max, SumStrategy::Partitions)
            .values()
            .to_vec(),
    }
}

fn table(
    max: usize,
    method: Method,
    format: Format,
    trial_bound: u64,
    seed: u64,
) -> Result<(), u8> {
    if method == Method::Compsum && max > COMPSUM_LIMIT {
        return Err(usage(&format!(
            "--method compsum is limited to --max <= {COMPSUM_LIMIT}"
        )));
    }
    let values = build_table(max, method);
    // every emission is cross-checked against an independent method
    let cross = match method {
        Method::Series => build_table(max, Method::Recur),
        _ => build_table(max, Method::Series),
    };
    if values != cross {
        let l = values
            .iter()
            .zip(&cross)
            .position(|(a, b)| a != b)
            .unwrap_or(0);
        eprintln!("cross-method mismatch at l = {l}: the two derivations disagree");
        return Err(1);
    }
    for (l, value) in values.iter().enumerate() {
        let report = factor_rational_with(value, trial_bound, seed);
        let row = Row::new(l, value, &report);
        match format {
            Format::Text => println!("{}", row.text(&report)),
            Format::Jsonl => emit_json(&row),
        }
    }
    Ok(())
}

fn value(l: usize, method: Method, format: Format) -> Result<(), u8> {
    if method == Method::Compsum && l > COMPSUM_LIMIT {
        return Err(usage(&format!(
            "--method compsum is limited to --l <= {COMPSUM_LIMIT}"
        )));
    }
    let value = match method {
        Method::Series => series_table(l).get(l).clone(),
        Method::Recur => recursion_table(l).get(l).clone(),
        Method::Compsum if l == 0 => Rational::one(),
        Method::Compsum => composition_sum(l, SumStrategy::Partitions),
    };
    match format {
        Format::Text => println!("{value}"),
        Format::Jsonl => {
            #[derive(Serialize)]
            struct ValueRecord {
                l: usize,
                epsilon: String,
            }
            emit_json(&ValueRecord {
                l,
                epsilon: value.to_string(),
            });
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct ValuationRecord {
    p: u64,
    l: usize,
    valuation: i64,
}

fn valuation(p: u64, l: Option<usize>, max: Option<usize>, format: Format) -> Result<(), u8> {
    require_prime(p)?;
    let one_valuation = |l: usize| {
        vp_rational(p, &epseq::epsilon::epsilon(l))
            .finite()
            .expect("epsilon values are nonzero")
    };
    match (l, max) {
        (Some(l), None) => {
            let v = one_valuation(l);
            match format {
                Format::Text => println!("{v}"),
                Format::Jsonl => emit_json(&ValuationRecord { p, l, valuation: v }),
            }
            Ok(())
        }
        (None, Some(max)) => {
            for l in 0..=max {
                let v = one_valuation(l);
                match format {
                    Format::Text => println!("{l}  {v}"),
                    Format::Jsonl => emit_json(&ValuationRecord { p, l, valuation: v }),
                }
            }
            Ok(())
        }
        _ => Err(usage("pass exactly one of --l or --max")),
    }
}

fn factor(
    l: Option<usize>,
    rational: Option<String>,
    trial_bound: u64,
    seed: u64,
    format: Format,
) -> Result<(), u8> {
    let value = match (l, rational) {
        (Some(l), None) => epseq::epsilon::epsilon(l),
        (None, Some(text)) => match text.parse::<Rational>() {
            Ok(q) if !q.is_zero() => q,
            Ok(_) => return Err(usage("cannot factor zero")),
            Err(e) => return Err(usage(&format!("bad rational literal {text:?}: {e}"))),
        },
        _ => return Err(usage("pass exactly one of --l or a rational literal")),
    };
    let report = factor_rational_with(&value, trial_bound, seed);
    match format {
        Format::Text => println!("{report}"),
        Format::Jsonl => {
            let mut row = Row::new(l.unwrap_or(0), &value, &report);
            match l {
                Some(_) => emit_json(&row),
                None => {
                    // positional input: emit the value without an order field
                    #[derive(Serialize)]
                    struct FactorRecordOut {
                        value: String,
                        sign: i32,
                        factors: Vec<output::FactorRecord>,
                        #[serde(skip_serializing_if = "Option::is_none")]
                        residue: Option<output::ResidueRecord>,
                    }
                    emit_json(&FactorRecordOut {
                        value: row.epsilon,
                        sign: row.sign,
                        factors: std::mem::take(&mut row.factors),
                        residue: row.residue.take(),
                    });
                }
            }
        }
    }
    Ok(())
}

fn antypes(
    n: Option<u64>,
    max: Option<u64>,
    log_check: bool,
    tolerance: f64,
    format: Format,
) -> Result<(), u8> {
    #[derive(Serialize)]
    struct LogCheckRecord {
        lhs: f64,
        rhs: f64,
        abs_diff: f64,
        tolerance: f64,
        passes: bool,
    }
    #[derive(Serialize)]
    struct AntypesRecord {
        n: u64,
        lower_bound: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        log_check: Option<LogCheckRecord>,
    }

    let range = match (n, max) {
        (Some(n), None) if n >= 1 => n..=n,
        (None, Some(max)) if max >= 1 => 1..=max,
        _ => return Err(usage("pass exactly one of --n or --max (at least 1)")),
    };
    let single = n.is_some();
    let mut all_pass = true;
    for n in range {
        let bound = an_type_lower_bound(n);
        let check = log_check.then(|| log_identity_check(n, tolerance));
        if let Some(check) = &check {
            all_pass &= check.passes();
        }
        match format {
            Format::Text => {
                let prefix = if single {
                    String::new()
                } else {
                    format!("{n}  ")
                };
                match &check {
                    None => println!("{prefix}{bound}"),
                    Some(c) => println!(
                        "{prefix}{bound}  log-check {} (|diff| = {:.3e})",
                        if c.passes() { "ok" } else { "FAILED" },
                        c.abs_diff
                    ),
                }
            }
            Format::Jsonl => emit_json(&AntypesRecord {
                n,
                lower_bound: bound.to_string(),
                log_check: check.map(|c| LogCheckRecord {
                    lhs: c.lhs,
                    rhs: c.rhs,
                    abs_diff: c.abs_diff,
                    tolerance: c.tolerance,
                    passes: c.passes(),
                }),
            }),
        }
    }
    if all_pass {
        Ok(())
    } else {
        Err(1)
    }
}
