//! C-recursive sequences, computed three independent ways: by iterating the
//! recurrence, by powering `x` in `Z[x]/(x^d - g(x))` and evaluating at 1,
//! and by a synthesized arithmetic term
//! `((b^E mod (b^d - g(b))) mod (b - 1))`.
//!
//! Also hosts the closed forms for the Pell numbers and the central binomial
//! coefficients, both evaluated with fused modular exponentiation.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{canonical_mod, mod_pow, pow};
use crate::polyring::{MonicModulus, Poly};
use crate::term::{pow_mod_term, ArithmeticTerm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("recurrence needs d >= 1 and exactly d initial values (got {coeffs} coefficients, {initials} initials)")]
    MalformedRecurrence { coeffs: usize, initials: usize },
    #[error("all initial values must equal 1")]
    UnsupportedInitials,
    #[error("coefficients must be non-negative and not all zero")]
    UnsupportedCoefficients,
    #[error("degenerate modulus for base {base}")]
    DegenerateModulus { base: BigInt },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Order-`d` recurrence `A(n) = c_{d-1} A(n-1) + ... + c_0 A(n-d)` with
/// initial values `A(0), ..., A(d-1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CRecurrence {
    /// `c_0, ..., c_{d-1}` (the weight of `A(n-d)` comes first).
    coeffs: Vec<BigInt>,
    initials: Vec<BigInt>,
}

impl CRecurrence {
    pub fn new(coeffs: Vec<BigInt>, initials: Vec<BigInt>) -> Result<Self, SequenceError> {
        if coeffs.is_empty() || coeffs.len() != initials.len() {
            return Err(SequenceError::MalformedRecurrence {
                coeffs: coeffs.len(),
                initials: initials.len(),
            });
        }
        Ok(CRecurrence { coeffs, initials })
    }

    /// Recurrence with `A(0) = ... = A(d-1) = 1`; `coeffs` are `c_0..c_{d-1}`.
    pub fn all_ones(coeffs: Vec<BigInt>) -> Result<Self, SequenceError> {
        let d = coeffs.len();
        CRecurrence::new(coeffs, vec![BigInt::one(); d])
    }

    /// Coefficients listed high-to-low, `c_{d-1}, ..., c_0`, the order they
    /// appear in `A(n) = c_{d-1} A(n-1) + ... + c_0 A(n-d)`.
    pub fn from_high_to_low(
        coeffs: &[BigInt],
        initials: Option<Vec<BigInt>>,
    ) -> Result<Self, SequenceError> {
        let coeffs: Vec<BigInt> = coeffs.iter().rev().cloned().collect();
        match initials {
            Some(init) => CRecurrence::new(coeffs, init),
            None => CRecurrence::all_ones(coeffs),
        }
    }

    /// `P_n = 2 P_{n-1} + P_{n-2}`, `P_0 = 0`, `P_1 = 1`.
    pub fn pell() -> Self {
        CRecurrence::new(
            vec![BigInt::one(), BigInt::from(2)],
            vec![BigInt::zero(), BigInt::one()],
        )
        .expect("well-formed")
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn initials(&self) -> &[BigInt] {
        &self.initials
    }

    pub fn has_unit_initials(&self) -> bool {
        self.initials.iter().all(One::is_one)
    }

    /// `g(x) = c_{d-1} x^{d-1} + ... + c_0`.
    pub fn characteristic_body(&self) -> Poly {
        Poly::new(self.coeffs.clone())
    }

    /// `x^d - g(x)`.
    pub fn modulus(&self) -> MonicModulus {
        MonicModulus::new(self.characteristic_body(), self.order()).expect("deg g < d")
    }
}

impl fmt::Display for CRecurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A(n) =")?;
        let d = self.order();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            let sep = if i + 1 == d { " " } else { " + " };
            write!(f, "{sep}{c}*A(n-{})", d - i)?;
        }
        let init: Vec<String> = self.initials.iter().map(ToString::to_string).collect();
        write!(f, "; A(0..{}) = [{}]", d, init.join(", "))
    }
}

/// `A(n)` by direct iteration of the recurrence.
pub fn oracle_term(rec: &CRecurrence, n: u64) -> BigInt {
    let d = rec.order();
    if (n as usize) < d {
        return rec.initials[n as usize].clone();
    }
    let mut window: VecDeque<BigInt> = rec.initials.iter().cloned().collect();
    for _ in d as u64..=n {
        // window holds A(m-d), ..., A(m-1), aligned with c_0, ..., c_{d-1}.
        let next = window
            .iter()
            .zip(&rec.coeffs)
            .fold(BigInt::zero(), |acc, (a, c)| acc + a * c);
        window.pop_front();
        window.push_back(next);
    }
    window.pop_back().expect("d >= 1")
}

/// First `count` terms `A(0), ..., A(count-1)`.
pub fn oracle_prefix(rec: &CRecurrence, count: usize) -> Vec<BigInt> {
    let d = rec.order();
    let mut out: Vec<BigInt> = rec.initials.iter().take(count).cloned().collect();
    while out.len() < count {
        let m = out.len();
        let next = (0..d).fold(BigInt::zero(), |acc, j| {
            acc + &rec.coeffs[j] * &out[m - d + j]
        });
        out.push(next);
    }
    out
}

/// `A(n)` as `(x^n mod (x^d - g(x)))` evaluated at `x = 1`; needs all-ones
/// initials.
pub fn ring_term(rec: &CRecurrence, n: u64) -> Result<BigInt, SequenceError> {
    if !rec.has_unit_initials() {
        return Err(SequenceError::UnsupportedInitials);
    }
    let r = rec.modulus().pow(&Poly::x(), n);
    Ok(r.eval_at(&BigInt::one()))
}

/// How the substitution base `b` of a synthesized formula is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseStrategy {
    /// `b = A + max_j c_j + 1`, with `A` the target term from the oracle.
    OracleMinimal,
    /// `b` = the smallest power of two above `S^E + S` with `S = sum_j c_j`;
    /// no sequence term is computed.
    AprioriBound,
}

/// Which exponent of `b` a synthesized formula uses for index `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ExponentConvention {
    /// `b^n`; the formula yields `A(n)` with zero-based indexing.
    #[default]
    N,
    /// `b^(n-1)`; the formula yields `A(n-1)`, i.e. `n` is a one-based index.
    NMinusOne,
}

impl ExponentConvention {
    /// The exponent `E` used for index `n`, which is also the zero-based index
    /// of the term the formula reproduces.
    pub fn exponent(self, n: u64) -> u64 {
        match self {
            ExponentConvention::N => n,
            ExponentConvention::NMinusOne => n - 1,
        }
    }
}

/// A synthesized closed form together with the choices behind it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Formula {
    pub term: ArithmeticTerm,
    pub base: BigInt,
    pub exponent: u64,
}

/// Builds `((b^E mod (b^d - g(b))) mod (b - 1))` for the all-ones recurrence
/// `rec` at index `n`, with the default exponent convention.
pub fn synth_formula(
    rec: &CRecurrence,
    n: u64,
    strategy: BaseStrategy,
) -> Result<ArithmeticTerm, SequenceError> {
    synth_formula_with(rec, n, strategy, ExponentConvention::default()).map(|f| f.term)
}

pub fn synth_formula_with(
    rec: &CRecurrence,
    n: u64,
    strategy: BaseStrategy,
    convention: ExponentConvention,
) -> Result<Formula, SequenceError> {
    if n == 0 {
        return Err(SequenceError::InvalidArgument(
            "n must be at least 1".into(),
        ));
    }
    if !rec.has_unit_initials() {
        return Err(SequenceError::UnsupportedInitials);
    }
    if rec.coeffs.iter().any(Signed::is_negative) || rec.coeffs.iter().all(Zero::is_zero) {
        return Err(SequenceError::UnsupportedCoefficients);
    }
    let e = convention.exponent(n);
    let max_c = rec.coeffs.iter().max().expect("d >= 1").clone();
    let base = match strategy {
        // r = x^E mod (x^d - g) has non-negative coefficients summing to A(E),
        // so b > A(E) + max c_j keeps every digit of r(b) + g(b) below b and
        // A(E) below b - 1.
        BaseStrategy::OracleMinimal => oracle_term(rec, e) + &max_c + 1,
        BaseStrategy::AprioriBound => {
            let s: BigInt = rec.coeffs.iter().sum();
            // A(E) <= S^E for all-ones initials.
            let bound = pow(&s, e) + &s;
            next_power_of_two_above(&bound)
        }
    };
    let d = rec.order();
    let modulus_value = pow(&base, d as u64) - rec.characteristic_body().eval_at(&base);
    if base <= BigInt::from(2) || modulus_value <= BigInt::one() {
        return Err(SequenceError::DegenerateModulus { base });
    }
    let g_at_b = rec.characteristic_body().eval_at(&base);
    let term = ArithmeticTerm::modulo(
        pow_mod_term(
            base.clone(),
            BigUint::from(e),
            ArithmeticTerm::sub(
                ArithmeticTerm::pow(
                    ArithmeticTerm::Int(base.clone()),
                    ArithmeticTerm::int(d as u64),
                ),
                ArithmeticTerm::Int(g_at_b),
            ),
        ),
        ArithmeticTerm::sub(ArithmeticTerm::Int(base.clone()), ArithmeticTerm::int(1)),
    );
    Ok(Formula {
        term,
        base,
        exponent: e,
    })
}

fn next_power_of_two_above(v: &BigInt) -> BigInt {
    if v.is_negative() {
        return BigInt::one();
    }
    BigInt::one() << v.bits()
}

/// `P_n = ((3^n + 1)^(n-1) mod (9^n - 2)) mod (3^n - 1)` for `n >= 1`.
pub fn pell(n: u64) -> Result<BigInt, SequenceError> {
    if n == 0 {
        return Err(SequenceError::InvalidArgument(
            "the Pell formula is valid for n > 0 (final modulus 3^0 - 1 = 0)".into(),
        ));
    }
    let x = pow(&BigInt::from(3), n);
    let inner = &x * &x - 2;
    let r = mod_pow(&(&x + 1), &BigUint::from(n - 1), &inner);
    Ok(canonical_mod(&r, &(x - 1)))
}

/// The Pell closed form as an arithmetic term.
pub fn pell_term(n: u64) -> Result<ArithmeticTerm, SequenceError> {
    if n == 0 {
        return Err(SequenceError::InvalidArgument(
            "n must be at least 1".into(),
        ));
    }
    use ArithmeticTerm as T;
    let three_n = || T::pow(T::int(3), T::int(n));
    Ok(T::modulo(
        T::modulo(
            T::pow(T::add(three_n(), T::int(1)), T::int(n - 1)),
            T::sub(T::pow(T::int(9), T::int(n)), T::int(2)),
        ),
        T::sub(three_n(), T::int(1)),
    ))
}

/// `sum_{k=0}^{n} C(n,k) 2^floor(k/2)`, which equals `P_{n+1}`.
pub fn pell_binomial_sum(n: u64) -> BigInt {
    let mut binom = BigInt::one();
    let mut sum = BigInt::zero();
    for k in 0..=n {
        sum += &binom << (k / 2);
        binom = binom * (n - k) / (k + 1);
    }
    sum
}

/// `C(2n, n) = ((4^n + 1)^(2n) mod (4^(n(n+1)) + 1)) mod (4^n - 1)` for `n >= 1`.
pub fn central_binomial(n: u64) -> Result<BigInt, SequenceError> {
    if n == 0 {
        return Err(SequenceError::InvalidArgument(
            "the central binomial formula is valid for n > 0 (final modulus 4^0 - 1 = 0)".into(),
        ));
    }
    let x = BigInt::one() << (2 * n);
    let inner = pow(&x, n + 1) + 1;
    let r = mod_pow(&(&x + 1), &BigUint::from(2 * n), &inner);
    Ok(canonical_mod(&r, &(x - 1)))
}

/// The central binomial closed form as an arithmetic term.
pub fn central_binomial_term(n: u64) -> Result<ArithmeticTerm, SequenceError> {
    if n == 0 {
        return Err(SequenceError::InvalidArgument(
            "n must be at least 1".into(),
        ));
    }
    use ArithmeticTerm as T;
    let four_n = || T::pow(T::int(4), T::int(n));
    Ok(T::modulo(
        T::modulo(
            T::pow(T::add(four_n(), T::int(1)), T::int(2 * n)),
            T::add(T::pow(T::int(4), T::int(n * (n + 1))), T::int(1)),
        ),
        T::sub(four_n(), T::int(1)),
    ))
}

/// Exact `C(n, k)` by the multiplicative formula.
pub fn binomial_oracle(n: u64, k: u64) -> Result<BigInt, SequenceError> {
    if k > n {
        return Err(SequenceError::InvalidArgument(format!(
            "k = {k} exceeds n = {n}"
        )));
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        // acc = C(n, i) * (n - i) / (i + 1) is exact at every step.
        acc = acc * (n - i) / (i + 1);
    }
    Ok(acc)
}
