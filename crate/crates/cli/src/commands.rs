use std::fmt;
use std::time::Instant;

use kronrec::kronecker::{eval_substitution, eval_substitution_unchecked};
use kronrec::roots::{self, ConjectureReport, Outcome, ScanConfig};
use kronrec::sequences::{self, synth_formula_with};
use kronrec::term::eval_formula;
use kronrec::{
    BaseStrategy, CRecurrence, ExponentConvention, MonicModulus, Poly, SequenceError,
    SubstitutionParams,
};
use num_bigint::BigInt;
use rayon::prelude::*;

use crate::args::{GlobalOpts, IndexRange, Suite};
use crate::report::{self, BenchRecord, ConjectureSummary, ScanRecord, TermRecord};

/// Usage or precondition failure; maps to exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<std::io::Error> for UsageError {
    fn from(e: std::io::Error) -> Self {
        UsageError(format!("output failed: {e}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    Mismatch,
}

type CmdResult = Result<Verdict, UsageError>;

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn verdict(records: &[TermRecord]) -> Verdict {
    if records.iter().all(|r| r.matched) {
        Verdict::Ok
    } else {
        Verdict::Mismatch
    }
}

fn require_positive(range: IndexRange, what: &str) -> Result<(), UsageError> {
    if range.lo == 0 {
        return Err(UsageError(format!(
            "the {what} formula is valid for n > 0 (n = 0 makes the final modulus zero)"
        )));
    }
    Ok(())
}

pub fn pell(opts: &GlobalOpts, range: IndexRange) -> CmdResult {
    require_positive(range, "Pell")?;
    let oracle = sequences::oracle_prefix(&CRecurrence::pell(), range.hi as usize + 1);
    let records: Vec<TermRecord> = range
        .iter()
        .into_par_iter()
        .map(|n| {
            let start = Instant::now();
            let value = sequences::pell(n).expect("n >= 1");
            let elapsed = elapsed_ms(start);
            term_record(n, value, oracle[n as usize].clone(), elapsed)
        })
        .collect();
    report::emit(opts.json, &records)?;
    Ok(verdict(&records))
}

pub fn cbc(opts: &GlobalOpts, range: IndexRange) -> CmdResult {
    require_positive(range, "central binomial")?;
    let records: Vec<TermRecord> = range
        .iter()
        .into_par_iter()
        .map(|n| {
            let start = Instant::now();
            let value = sequences::central_binomial(n).expect("n >= 1");
            let elapsed = elapsed_ms(start);
            let oracle = sequences::binomial_oracle(2 * n, n).expect("n <= 2n");
            term_record(n, value, oracle, elapsed)
        })
        .collect();
    report::emit(opts.json, &records)?;
    Ok(verdict(&records))
}

fn term_record(n: u64, value: BigInt, oracle: BigInt, elapsed_ms: f64) -> TermRecord {
    TermRecord {
        n,
        term: None,
        base: None,
        exponent: None,
        matched: value == oracle,
        value: value.to_string(),
        oracle: oracle.to_string(),
        elapsed_ms,
    }
}

fn sequence_error(e: &SequenceError) -> UsageError {
    let kind = match e {
        SequenceError::MalformedRecurrence { .. } => "MalformedRecurrence",
        SequenceError::UnsupportedInitials => "UnsupportedInitials",
        SequenceError::UnsupportedCoefficients => "UnsupportedCoefficients",
        SequenceError::DegenerateModulus { .. } => "DegenerateModulus",
        SequenceError::InvalidArgument(_) => "InvalidArgument",
    };
    UsageError(format!("{kind}: {e}"))
}

pub fn seq(
    opts: &GlobalOpts,
    coeffs: &[i64],
    initials: Option<&[i64]>,
    range: IndexRange,
    strategy: BaseStrategy,
    convention: ExponentConvention,
) -> CmdResult {
    let to_big = |v: &[i64]| v.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>();
    let rec = CRecurrence::from_high_to_low(&to_big(coeffs), initials.map(to_big))
        .map_err(|e| sequence_error(&e))?;
    // Fail fast on the first index so a bad recurrence reports once.
    synth_formula_with(&rec, range.lo, strategy, convention).map_err(|e| sequence_error(&e))?;

    let results: Vec<Result<TermRecord, SequenceError>> = range
        .iter()
        .into_par_iter()
        .map(|n| {
            let start = Instant::now();
            let formula = synth_formula_with(&rec, n, strategy, convention)?;
            let value = eval_formula(&formula.term).expect("synthesized moduli are nonzero");
            let elapsed = elapsed_ms(start);
            // The formula reproduces the term at index `exponent`.
            let oracle = sequences::oracle_term(&rec, formula.exponent);
            Ok(TermRecord {
                n,
                term: Some(formula.term.to_string()),
                base: Some(formula.base.to_string()),
                exponent: Some(formula.exponent),
                matched: value == oracle,
                value: value.to_string(),
                oracle: oracle.to_string(),
                elapsed_ms: elapsed,
            })
        })
        .collect();
    let records = results
        .into_iter()
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| sequence_error(&e))?;

    if opts.json {
        report::emit(true, &records)?;
    } else {
        println!("recurrence: {rec}");
        if convention == ExponentConvention::NMinusOne {
            println!(
                "note: exponent n-1 reproduces A(n-1) (one-based indexing); \
                 with zero-based indexing the matching exponent is n"
            );
        }
        for r in &records {
            println!("n = {}: {}", r.n, r.term.as_deref().unwrap_or_default());
        }
        report::emit(false, &records)?;
    }
    Ok(verdict(&records))
}

pub fn root(opts: &GlobalOpts, a: u64, n: u32, k_min: u64, k_max: u64, c: &[i64]) -> CmdResult {
    if a <= 1 {
        return Err(UsageError(format!(
            "a = {a}: the root formula requires a > 1"
        )));
    }
    let base = ScanConfig {
        a,
        n,
        k_min,
        k_max,
        c_values: c.to_vec(),
        precision: opts.precision,
        digit_budget: opts.budget,
    };
    if n == 0 || k_min < 2 || k_min > k_max {
        return Err(UsageError("need n >= 1 and 2 <= k_min <= k_max".into()));
    }
    if let Some(bad) = c.iter().find(|&&c| c < -1) {
        return Err(UsageError(format!(
            "c = {bad}: offsets must be at least -1"
        )));
    }
    if let Some(k) =
        (k_min..=k_max).find(|&k| roots::root_modulus_digits_estimate(n, k) > opts.budget)
    {
        let err = roots::RootError::BudgetExceeded {
            k,
            n,
            digits: roots::root_modulus_digits_estimate(n, k),
            budget: opts.budget,
        };
        return Err(UsageError(err.to_string()));
    }

    let per_k: Vec<Result<Vec<ScanRecord>, roots::RootError>> = (k_min..=k_max)
        .into_par_iter()
        .map(|k| {
            let start = Instant::now();
            let recs = roots::convergence_scan(&ScanConfig {
                k_min: k,
                k_max: k,
                ..base.clone()
            })?;
            let elapsed = elapsed_ms(start);
            Ok(recs
                .into_iter()
                .map(|r| ScanRecord {
                    a: r.a,
                    n: r.n,
                    k: Some(r.k),
                    c: r.c,
                    variant: r.variant.to_string(),
                    value_decimal: Some(r.value_decimal),
                    error_decimal: Some(r.error_decimal),
                    expected: None,
                    matched: None,
                    skipped_reason: None,
                    modulus_digits: r.modulus_digits,
                    elapsed_ms: elapsed,
                })
                .collect())
        })
        .collect();
    let mut records = Vec::new();
    for r in per_k {
        records.extend(r.map_err(|e| UsageError(e.to_string()))?);
    }
    report::emit(opts.json, &records)?;
    Ok(Verdict::Ok)
}

pub fn conjecture(opts: &GlobalOpts, a_max: u64) -> CmdResult {
    let start = Instant::now();
    let report: ConjectureReport =
        roots::conjecture_scan(a_max, opts.budget).map_err(|e| UsageError(e.to_string()))?;
    let elapsed = elapsed_ms(start) / report.records.len().max(1) as f64;
    let records: Vec<ScanRecord> = report
        .records
        .iter()
        .map(|r| {
            let (matched, skipped_reason) = match &r.outcome {
                Outcome::Match => (Some(true), None),
                Outcome::Mismatch => (Some(false), None),
                Outcome::Skipped(reason) => (None, Some(reason.to_string())),
            };
            ScanRecord {
                a: r.a,
                n: r.n,
                k: None,
                c: None,
                variant: "conjecture".into(),
                value_decimal: r.conjectured.as_ref().map(ToString::to_string),
                error_decimal: None,
                expected: Some(r.expected.to_string()),
                matched,
                skipped_reason,
                modulus_digits: r.modulus_digits,
                elapsed_ms: elapsed,
            }
        })
        .collect();
    let summary = ConjectureSummary {
        matches: report.matches,
        mismatches: report.mismatches,
        skipped: report.skipped,
        max_modulus_digits: report.max_modulus_digits,
    };
    report::emit(opts.json, &records)?;
    if opts.json {
        println!("{}", serde_json::json!({ "summary": summary }));
    } else {
        println!(
            "summary: {} match, {} mismatch, {} skipped, max modulus digits {}",
            summary.matches, summary.mismatches, summary.skipped, summary.max_modulus_digits
        );
    }
    // Mismatches are findings about a conjecture, not failures.
    Ok(Verdict::Ok)
}

fn median_ms(reps: u32, mut f: impl FnMut()) -> f64 {
    let mut times: Vec<f64> = (0..reps)
        .map(|_| {
            let start = Instant::now();
            f();
            elapsed_ms(start)
        })
        .collect();
    times.sort_by(f64::total_cmp);
    let mid = times.len() / 2;
    if times.len().is_multiple_of(2) {
        (times[mid - 1] + times[mid]) / 2.0
    } else {
        times[mid]
    }
}

pub fn bench(opts: &GlobalOpts, suite: Suite, n: u64, reps: u32) -> CmdResult {
    if reps == 0 {
        return Err(UsageError("repetitions must be at least 1".into()));
    }
    let record = |suite: &str, op: &str, median| BenchRecord {
        suite: suite.into(),
        n,
        operation: op.into(),
        repetitions: reps,
        median_ms: median,
    };
    let records = match suite {
        Suite::Pell => {
            let rec = CRecurrence::pell();
            vec![
                record(
                    "pell",
                    "formula",
                    median_ms(reps, || {
                        std::hint::black_box(sequences::pell(n).expect("n >= 1"));
                    }),
                ),
                record(
                    "pell",
                    "oracle",
                    median_ms(reps, || {
                        std::hint::black_box(sequences::oracle_term(&rec, n));
                    }),
                ),
            ]
        }
        Suite::Cbc => vec![
            record(
                "cbc",
                "formula",
                median_ms(reps, || {
                    std::hint::black_box(sequences::central_binomial(n).expect("n >= 1"));
                }),
            ),
            record(
                "cbc",
                "oracle",
                median_ms(reps, || {
                    std::hint::black_box(sequences::binomial_oracle(2 * n, n).expect("n <= 2n"));
                }),
            ),
        ],
        Suite::Substitution => {
            if n < 2 {
                return Err(UsageError("substitution suite needs n >= 2".into()));
            }
            // Pell instance: (x+1)^(n-1) in Z[x]/(x^2 - 2) at base 3^n, b = 1.
            let f = Poly::from_i64s(&[1, 1]);
            let m = MonicModulus::from_monic(&Poly::from_i64s(&[-2, 0, 1])).expect("monic");
            let params = SubstitutionParams::new(3, n, 1).with_power(n - 1);
            eval_substitution(&f, &m, &params).map_err(|e| UsageError(e.to_string()))?;
            vec![
                record(
                    "substitution",
                    "checked",
                    median_ms(reps, || {
                        std::hint::black_box(eval_substitution(&f, &m, &params).expect("verified"));
                    }),
                ),
                record(
                    "substitution",
                    "unchecked",
                    median_ms(reps, || {
                        std::hint::black_box(
                            eval_substitution_unchecked(&f, &m, &params).expect("nonzero moduli"),
                        );
                    }),
                ),
            ]
        }
    };
    report::emit(opts.json, &records)?;
    Ok(Verdict::Ok)
}
