//! Real n-th roots as limits of quotient-ring power ratios.
//!
//! In `Z[x]/(x^n - a)` the ratio `f_{k+1}(1) / f_k(1)` with `f_k = (x+1)^k`
//! tends to `a^(1/n) + 1`. Kronecker substitution at `X = k^(kn)` turns the
//! ring powers into modular exponentiations modulo `X^n - a = k^(kn^2) - a`.
//! A fixed choice of parameters gives a conjectured closed form for
//! `floor(a^(1/n))`, which [`conjecture_scan`] checks against an exact
//! binary-search root.
//!
//! All error measurement is exact: the reference value of `a^(1/n)` to `P`
//! digits is `floor_root(a * 10^(nP), n) / 10^P`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::arith::{
    canonical_mod, decimal_digits, estimated_power_digits, format_fixed, mod_pow, pow,
};
use crate::polyring::{MonicModulus, Poly};

/// Exact ratio of arbitrary-precision integers, kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Default number of decimal digits for error reporting.
pub const DEFAULT_PRECISION: u32 = 30;
/// Default cap on the decimal size of the modulus `k^(kn^2) - a`.
pub const DEFAULT_DIGIT_BUDGET: u64 = 500_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("modulus k^(kn^2) - a is not positive")]
    ModulusNotPositive,
    #[error("zero denominator in the root quotient")]
    ZeroDenominator,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("{a} is a perfect {n}-th power ({root}^{n})")]
    PerfectPower { a: u64, n: u32, root: BigUint },
    #[error(
        "modulus for k = {k}, n = {n} needs about {digits} digits, over the budget of {budget}"
    )]
    BudgetExceeded {
        k: u64,
        n: u32,
        digits: u64,
        budget: u64,
    },
}

/// `f_{k+1}(1) / f_k(1) - 1` with `f_k = (x+1)^k` in `Z[x]/(x^n - a)`,
/// computed by ring powering.
pub fn root_approximant(a: u64, n: u32, k: u64) -> Result<Rational, RootError> {
    if a == 0 || n == 0 || k == 0 {
        return Err(RootError::InvalidArgument(
            "a, n and k must be positive".into(),
        ));
    }
    let m = MonicModulus::new(Poly::constant(BigInt::from(a)), n as usize).expect("n >= 1");
    let x1 = Poly::from_i64s(&[1, 1]);
    let fk = m.pow(&x1, k);
    let fk1 = m.reduce(&(&fk * &x1));
    let one = BigInt::one();
    Ok(Rational::new(fk1.eval_at(&one), fk.eval_at(&one)) - Rational::one())
}

/// Numerator and denominator residues of the integer root quotient
/// `((X+1)^(K+1) mod (X^n - a)) / ((X+1)^K mod (X^n - a))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootResidues {
    pub base: BigInt,
    pub modulus: BigInt,
    pub numerator: BigInt,
    pub denominator: BigInt,
}

impl RootResidues {
    fn compute(a: &BigInt, n: u32, base: BigInt, power: u64) -> Result<Self, RootError> {
        let modulus = pow(&base, n as u64) - a;
        if !modulus.is_positive() {
            return Err(RootError::ModulusNotPositive);
        }
        let shifted = &base + 1;
        let denominator = mod_pow(&shifted, &BigUint::from(power), &modulus);
        let numerator = canonical_mod(&(&denominator * &shifted), &modulus);
        Ok(RootResidues {
            base,
            modulus,
            numerator,
            denominator,
        })
    }

    /// `N / D - 1`.
    pub fn quotient(&self) -> Result<Rational, RootError> {
        if self.denominator.is_zero() {
            return Err(RootError::ZeroDenominator);
        }
        Ok(Rational::new(self.numerator.clone(), self.denominator.clone()) - Rational::one())
    }

    /// Both residues further reduced modulo `X - c`, then `N' / D' - 1`.
    pub fn reduced_quotient(&self, c: i64) -> Result<Rational, RootError> {
        let second = &self.base - c;
        if second <= BigInt::one() {
            return Err(RootError::InvalidArgument(format!(
                "second modulus X - c must exceed 1 (c = {c})"
            )));
        }
        let num = canonical_mod(&self.numerator, &second);
        let den = canonical_mod(&self.denominator, &second);
        if den.is_zero() {
            return Err(RootError::InvalidArgument(
                "reduced denominator is zero".into(),
            ));
        }
        Ok(Rational::new(num, den) - Rational::one())
    }
}

/// Residues for base `X = k^(kn)` and power `K = kn`.
pub fn root_arith_residues(a: u64, n: u32, k: u64) -> Result<RootResidues, RootError> {
    if a <= 1 {
        return Err(RootError::InvalidArgument("a must exceed 1".into()));
    }
    if n == 0 {
        return Err(RootError::InvalidArgument("n must be positive".into()));
    }
    if k < 2 {
        return Err(RootError::InvalidArgument("k must be at least 2".into()));
    }
    let kn = k * n as u64;
    let base = pow(&BigInt::from(k), kn);
    RootResidues::compute(&BigInt::from(a), n, base, kn)
}

/// `((k^(kn)+1)^(kn+1) mod (k^(kn^2) - a)) / ((k^(kn)+1)^(kn) mod (k^(kn^2) - a)) - 1`.
pub fn root_arith(a: u64, n: u32, k: u64) -> Result<Rational, RootError> {
    root_arith_residues(a, n, k)?.quotient()
}

/// [`root_arith`] with both residues further reduced modulo `k^(kn) - c`.
pub fn root_arith_reduced(a: u64, n: u32, k: u64, c: i64) -> Result<Rational, RootError> {
    if c < -1 {
        return Err(RootError::InvalidArgument(format!(
            "c must be at least -1 (got {c})"
        )));
    }
    root_arith_residues(a, n, k)?.reduced_quotient(c)
}

/// The unique `r` with `r^n <= a < (r+1)^n`, by binary search on exact powers.
pub fn exact_floor_root(a: &BigUint, n: u32) -> BigUint {
    assert!(n >= 1, "exact_floor_root: n must be positive");
    if n == 1 || a.is_zero() {
        return a.clone();
    }
    // 2^(floor(bits/n) + 1) > a^(1/n)
    let mut lo = BigUint::zero();
    let mut hi = BigUint::one() << (a.bits() / n as u64 + 1);
    // invariant: lo^n <= a < hi^n
    while &hi - &lo > BigUint::one() {
        let mid = (&lo + &hi) >> 1u32;
        if Pow::pow(&mid, n) <= *a {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

fn floor_log2(a: u64) -> u32 {
    63 - a.leading_zeros()
}

/// Largest degree `n` covered by the conjecture for a given `a`:
/// `floor(log2 a) + 1`.
pub fn conjecture_max_degree(a: u64) -> u32 {
    floor_log2(a) + 1
}

/// Estimated decimal digits of the conjecture modulus `a^(2an^2) - a`.
pub fn conjecture_modulus_digits_estimate(a: u64, n: u32) -> u64 {
    estimated_power_digits(a, 2 * a * (n as u64) * (n as u64)) as u64
}

/// Conjectured closed form for `floor(a^(1/n))`:
/// `floor(N / D - 1)` with `X = a^(2an)`, `N = (X+1)^(2an+1) mod (X^n - a)`,
/// `D = (X+1)^(2an) mod (X^n - a)`.
pub fn conjecture_floor_root(a: u64, n: u32) -> Result<BigInt, RootError> {
    check_conjecture_hypotheses(a, n)?;
    conjecture_residues(a, n)?.floor_value()
}

fn check_conjecture_hypotheses(a: u64, n: u32) -> Result<(), RootError> {
    if a <= 2 {
        return Err(RootError::PreconditionViolated(format!(
            "a = {a} must exceed 2"
        )));
    }
    if n <= 1 {
        return Err(RootError::PreconditionViolated(format!(
            "n = {n} must exceed 1"
        )));
    }
    let max = conjecture_max_degree(a);
    if n > max {
        return Err(RootError::PreconditionViolated(format!(
            "n = {n} exceeds floor(log2 {a}) + 1 = {max}"
        )));
    }
    let root = exact_floor_root(&BigUint::from(a), n);
    if Pow::pow(&root, n) == BigUint::from(a) {
        return Err(RootError::PerfectPower { a, n, root });
    }
    Ok(())
}

fn conjecture_residues(a: u64, n: u32) -> Result<RootResidues, RootError> {
    let power = 2 * a * n as u64;
    let base = pow(&BigInt::from(a), power);
    RootResidues::compute(&BigInt::from(a), n, base, power)
}

impl RootResidues {
    /// `floor((N - D) / D)`, i.e. the exact floor of `N / D - 1`.
    fn floor_value(&self) -> Result<BigInt, RootError> {
        if self.denominator.is_zero() {
            return Err(RootError::ZeroDenominator);
        }
        Ok((&self.numerator - &self.denominator).div_floor(&self.denominator))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    Unreduced,
    Reduced,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Unreduced => "unreduced",
            Variant::Reduced => "reduced",
        })
    }
}

/// One observation of a root-convergence scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergenceRecord {
    pub a: u64,
    pub n: u32,
    pub k: u64,
    /// `None` for the unreduced variant.
    pub c: Option<i64>,
    pub variant: Variant,
    pub approximant: Rational,
    /// `approximant - reference`, exact.
    pub error: Rational,
    pub value_decimal: String,
    pub error_decimal: String,
    pub modulus_digits: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanConfig {
    pub a: u64,
    pub n: u32,
    pub k_min: u64,
    pub k_max: u64,
    pub c_values: Vec<i64>,
    pub precision: u32,
    pub digit_budget: u64,
}

impl ScanConfig {
    pub fn new(a: u64, n: u32, k_min: u64, k_max: u64) -> Self {
        ScanConfig {
            a,
            n,
            k_min,
            k_max,
            c_values: Vec::new(),
            precision: DEFAULT_PRECISION,
            digit_budget: DEFAULT_DIGIT_BUDGET,
        }
    }
}

/// Estimated decimal digits of `k^(kn^2)`.
pub fn root_modulus_digits_estimate(n: u32, k: u64) -> u64 {
    estimated_power_digits(k, k * (n as u64) * (n as u64)) as u64
}

/// Largest `k >= 2` whose modulus fits the digit budget, if any.
pub fn max_k_within_budget(n: u32, budget: u64) -> Option<u64> {
    if root_modulus_digits_estimate(n, 2) > budget {
        return None;
    }
    let (mut lo, mut hi) = (2u64, 4u64);
    while root_modulus_digits_estimate(n, hi) <= budget {
        lo = hi;
        hi *= 2;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if root_modulus_digits_estimate(n, mid) <= budget {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(lo)
}

/// `floor(a^(1/n) * 10^P)`.
pub fn reference_root_scaled(a: u64, n: u32, precision: u32) -> BigInt {
    let scaled = BigUint::from(a) * Pow::pow(BigUint::from(10u32), n as u64 * precision as u64);
    BigInt::from(exact_floor_root(&scaled, n))
}

fn scale(q: &Rational, precision: u32) -> BigInt {
    let factor = Pow::pow(BigInt::from(10), precision);
    (q * Rational::from_integer(factor)).round().to_integer()
}

/// Evaluates both the unreduced quotient and each reduced variant for every
/// `k` in range. Records come back sorted by `k`, then unreduced before
/// reduced, then by `c` in the given order.
pub fn convergence_scan(cfg: &ScanConfig) -> Result<Vec<ConvergenceRecord>, RootError> {
    if cfg.a <= 1 {
        return Err(RootError::InvalidArgument("a must exceed 1".into()));
    }
    if cfg.n == 0 || cfg.k_min < 2 || cfg.k_min > cfg.k_max {
        return Err(RootError::InvalidArgument(
            "need n >= 1 and 2 <= k_min <= k_max".into(),
        ));
    }
    if let Some(&c) = cfg.c_values.iter().find(|&&c| c < -1) {
        return Err(RootError::InvalidArgument(format!(
            "c must be at least -1 (got {c})"
        )));
    }
    for k in cfg.k_min..=cfg.k_max {
        let digits = root_modulus_digits_estimate(cfg.n, k);
        if digits > cfg.digit_budget {
            return Err(RootError::BudgetExceeded {
                k,
                n: cfg.n,
                digits,
                budget: cfg.digit_budget,
            });
        }
    }
    let reference = Rational::new(
        reference_root_scaled(cfg.a, cfg.n, cfg.precision),
        Pow::pow(BigInt::from(10), cfg.precision),
    );
    let per_k: Vec<Result<Vec<ConvergenceRecord>, RootError>> = (cfg.k_min..=cfg.k_max)
        .into_par_iter()
        .map(|k| scan_one(cfg, k, &reference))
        .collect();
    let mut out = Vec::new();
    for r in per_k {
        out.extend(r?);
    }
    Ok(out)
}

fn scan_one(
    cfg: &ScanConfig,
    k: u64,
    reference: &Rational,
) -> Result<Vec<ConvergenceRecord>, RootError> {
    let residues = root_arith_residues(cfg.a, cfg.n, k)?;
    let modulus_digits = decimal_digits(&residues.modulus);
    let record = |variant, c, approximant: Rational| {
        let error = &approximant - reference;
        ConvergenceRecord {
            a: cfg.a,
            n: cfg.n,
            k,
            c,
            variant,
            value_decimal: format_fixed(&scale(&approximant, cfg.precision), cfg.precision),
            error_decimal: format_fixed(&scale(&error, cfg.precision), cfg.precision),
            approximant,
            error,
            modulus_digits,
        }
    };
    let mut out = vec![record(Variant::Unreduced, None, residues.quotient()?)];
    for &c in &cfg.c_values {
        out.push(record(
            Variant::Reduced,
            Some(c),
            residues.reduced_quotient(c)?,
        ));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SkipReason {
    PerfectPower,
    BudgetExceeded,
    ZeroDenominator,
}

impl fmt::Display for SkipReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SkipReason::PerfectPower => "perfect_power",
            SkipReason::BudgetExceeded => "budget_exceeded",
            SkipReason::ZeroDenominator => "zero_denominator",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Match,
    Mismatch,
    Skipped(SkipReason),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureRecord {
    pub a: u64,
    pub n: u32,
    /// Exact `floor(a^(1/n))`.
    pub expected: BigInt,
    /// Value of the conjectured closed form, when it was computed.
    pub conjectured: Option<BigInt>,
    pub outcome: Outcome,
    /// Exact digit count when computed, otherwise the estimate.
    pub modulus_digits: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConjectureReport {
    pub records: Vec<ConjectureRecord>,
    pub matches: usize,
    pub mismatches: usize,
    pub skipped: usize,
    pub max_modulus_digits: u64,
}

/// Every `(a, n)` with `3 <= a <= a_max` and `1 < n <= floor(log2 a) + 1`,
/// perfect powers included.
pub fn conjecture_pairs(a_max: u64) -> Vec<(u64, u32)> {
    (3..=a_max)
        .flat_map(|a| (2..=conjecture_max_degree(a)).map(move |n| (a, n)))
        .collect()
}

/// Compares the conjectured closed form against [`exact_floor_root`] for
/// every pair from [`conjecture_pairs`]. Mismatches are recorded, never
/// raised.
pub fn conjecture_scan(a_max: u64, digit_budget: u64) -> Result<ConjectureReport, RootError> {
    if a_max < 3 {
        return Err(RootError::InvalidArgument(
            "a_max must be at least 3".into(),
        ));
    }
    let records: Vec<ConjectureRecord> = conjecture_pairs(a_max)
        .into_par_iter()
        .map(|(a, n)| conjecture_record(a, n, digit_budget))
        .collect();
    let mut report = ConjectureReport::default();
    for r in &records {
        match r.outcome {
            Outcome::Match => report.matches += 1,
            Outcome::Mismatch => report.mismatches += 1,
            Outcome::Skipped(_) => report.skipped += 1,
        }
        if r.conjectured.is_some() {
            report.max_modulus_digits = report.max_modulus_digits.max(r.modulus_digits);
        }
    }
    report.records = records;
    Ok(report)
}

fn conjecture_record(a: u64, n: u32, digit_budget: u64) -> ConjectureRecord {
    let expected = BigInt::from(exact_floor_root(&BigUint::from(a), n));
    let estimate = conjecture_modulus_digits_estimate(a, n);
    let skipped = |reason, digits| ConjectureRecord {
        a,
        n,
        expected: expected.clone(),
        conjectured: None,
        outcome: Outcome::Skipped(reason),
        modulus_digits: digits,
    };
    if Pow::pow(&expected, n) == BigInt::from(a) {
        return skipped(SkipReason::PerfectPower, estimate);
    }
    if estimate > digit_budget {
        return skipped(SkipReason::BudgetExceeded, estimate);
    }
    let residues = conjecture_residues(a, n).expect("a^(2an^2) > a for a > 2");
    let digits = decimal_digits(&residues.modulus);
    match residues.floor_value() {
        Ok(v) => ConjectureRecord {
            a,
            n,
            outcome: if v == expected {
                Outcome::Match
            } else {
                Outcome::Mismatch
            },
            conjectured: Some(v),
            expected,
            modulus_digits: digits,
        },
        Err(_) => skipped(SkipReason::ZeroDenominator, digits),
    }
}
