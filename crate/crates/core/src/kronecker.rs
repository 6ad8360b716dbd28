//! Kronecker substitution: polynomials as integers in a large base.
//!
//! Evaluating a polynomial at an integer base larger than all of its
//! coefficients packs the coefficients into non-overlapping digits. Applied to
//! every polynomial in a quotient-ring computation, the ring arithmetic
//! becomes plain integer modular arithmetic: `f(x)^e mod (x^d - body(x))`
//! evaluated at `b` equals
//! `(f(X)^e mod (X^d - body(X))) mod (X - b)` for a suitable base `X`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{canonical_mod, mod_pow, pow};
use crate::polyring::{MonicModulus, Poly};

/// A hypothesis of the substitution identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hypothesis {
    /// `f` must be non-constant.
    NonConstant,
    /// `gamma`, `k`, `b` must all be at least 1.
    PositiveParameters,
    /// `k >= deg(modulus)`.
    ExponentCoversDegree,
    /// `gamma^k > |r(b)|`.
    BaseExceedsValue,
    /// `gamma^k != b`, so the final modulus is nonzero.
    NonZeroFinalModulus,
    /// `r(b) mod (gamma^k - b) != 0`.
    NonZeroResidue,
    /// `0 <= r(X) < X^d - body(X)` with `X = gamma^k`: the first reduction
    /// returns `r(X)` itself.
    ExactInnerResidue,
    /// `0 <= r(b) < gamma^k - b`: the final reduction returns `r(b)` itself.
    ExactOuterResidue,
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Hypothesis::NonConstant => "f must be non-constant",
            Hypothesis::PositiveParameters => "gamma, k and b must be positive",
            Hypothesis::ExponentCoversDegree => "k must be at least the modulus degree",
            Hypothesis::BaseExceedsValue => "gamma^k must exceed |r(b)|",
            Hypothesis::NonZeroFinalModulus => "gamma^k must differ from b",
            Hypothesis::NonZeroResidue => "r(b) must be nonzero modulo gamma^k - b",
            Hypothesis::ExactInnerResidue => {
                "r(gamma^k) must lie in [0, gamma^(kd) - body(gamma^k))"
            }
            Hypothesis::ExactOuterResidue => "r(b) must lie in [0, gamma^k - b)",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KroneckerError {
    #[error("coefficient {coeff} at x^{index} is outside [0, {base})")]
    CoefficientOutOfRange {
        index: usize,
        coeff: BigInt,
        base: BigInt,
    },
    #[error("invalid base {0}")]
    InvalidBase(BigInt),
    #[error("negative value {0} cannot be decoded")]
    NegativeValue(BigInt),
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(&'static str),
    #[error("coefficient index {index} exceeds degree {degree}")]
    IndexOutOfRange { index: usize, degree: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(Hypothesis),
    #[error("zero modulus in integer-side evaluation")]
    ZeroModulus,
    #[error("substitution gave {integer_side}, ring side gave {ring_side}")]
    TheoremMismatch {
        ring_side: BigInt,
        integer_side: BigInt,
    },
}

/// `p(base)`, requiring every coefficient in `[0, base)` so the digits of the
/// result in radix `base` are exactly the coefficients.
pub fn kron_encode(p: &Poly, base: &BigInt) -> Result<BigInt, KroneckerError> {
    if !base.is_positive() {
        return Err(KroneckerError::InvalidBase(base.clone()));
    }
    if let Some((index, coeff)) = p
        .coeffs()
        .iter()
        .enumerate()
        .find(|(_, c)| c.is_negative() || *c >= base)
    {
        return Err(KroneckerError::CoefficientOutOfRange {
            index,
            coeff: coeff.clone(),
            base: base.clone(),
        });
    }
    Ok(p.eval_at(base))
}

/// Radix-`base` digit expansion of `v` as a polynomial.
pub fn kron_decode(v: &BigInt, base: &BigInt) -> Result<Poly, KroneckerError> {
    if *base < BigInt::from(2) {
        return Err(KroneckerError::InvalidBase(base.clone()));
    }
    if v.is_negative() {
        return Err(KroneckerError::NegativeValue(v.clone()));
    }
    let mut digits = Vec::new();
    let mut rest = v.clone();
    while !rest.is_zero() {
        let (q, r) = rest.div_rem(base);
        digits.push(r);
        rest = q;
    }
    Ok(Poly::new(digits))
}

/// Reads `[x^k] f` from integer evaluations alone:
/// `floor(f(f(b)) / f(b)^k) mod f(b)`.
///
/// Requires `f(b)` to exceed every coefficient of `f`, otherwise the base-`f(b)`
/// digits of `f(f(b))` overlap and the result is meaningless.
pub fn extract_coeff(f: &Poly, k: usize, b: &BigInt) -> Result<BigInt, KroneckerError> {
    let degree = match f.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(KroneckerError::InvalidPolynomial("f must be non-constant")),
    };
    if !f.has_nonnegative_coeffs() {
        return Err(KroneckerError::InvalidPolynomial(
            "f must have non-negative coefficients",
        ));
    }
    if !b.is_positive() {
        return Err(KroneckerError::InvalidBase(b.clone()));
    }
    if k > degree {
        return Err(KroneckerError::IndexOutOfRange { index: k, degree });
    }
    let fb = f.eval_at(b);
    if fb.is_zero() || fb <= f.max_abs_coeff() {
        return Err(KroneckerError::InvalidBase(b.clone()));
    }
    let ffb = f.eval_at(&fb);
    let shifted = ffb / pow(&fb, k as u64);
    Ok(canonical_mod(&shifted, &fb))
}

/// Parameters of one substitution instance.
///
/// The base is `gamma^k` and `b` is the evaluation point. `power` is the
/// exponent applied to `f`; the identity as usually stated ties it to `k`,
/// while the Pell and central binomial applications pick it independently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubstitutionParams {
    pub gamma: BigInt,
    pub k: u64,
    pub b: BigInt,
    pub power: u64,
}

impl SubstitutionParams {
    /// `power = k`.
    pub fn new(gamma: impl Into<BigInt>, k: u64, b: impl Into<BigInt>) -> Self {
        SubstitutionParams {
            gamma: gamma.into(),
            k,
            b: b.into(),
            power: k,
        }
    }

    pub fn with_power(mut self, power: u64) -> Self {
        self.power = power;
        self
    }

    /// The substitution base `gamma^k`.
    pub fn base(&self) -> BigInt {
        pow(&self.gamma, self.k)
    }
}

/// Integer-only side of the identity:
/// `(f(X)^e mod (X^d - body(X))) mod (X - b)` with `X = gamma^k`, `e = power`.
///
/// No hypothesis is checked; use [`eval_substitution`] for a verified value.
pub fn eval_substitution_unchecked(
    f: &Poly,
    m: &MonicModulus,
    params: &SubstitutionParams,
) -> Result<BigInt, KroneckerError> {
    let base = params.base();
    let inner_modulus = m.eval_at(&base);
    let outer_modulus = &base - &params.b;
    if inner_modulus.is_zero() || outer_modulus.is_zero() {
        return Err(KroneckerError::ZeroModulus);
    }
    let inner = mod_pow(
        &f.eval_at(&base),
        &BigUint::from(params.power),
        &inner_modulus,
    );
    Ok(canonical_mod(&inner, &outer_modulus))
}

/// Evaluates the substitution identity after checking all of its hypotheses,
/// and confirms the result against the ring-side value `r(b)` where
/// `r = f^power mod (x^d - body(x))`.
///
/// Besides the stated hypotheses this also requires both integer reductions
/// to be exact (see [`Hypothesis::ExactInnerResidue`] and
/// [`Hypothesis::ExactOuterResidue`]): canonical residues only reproduce
/// `r(X)` and `r(b)` when those already lie in range.
pub fn eval_substitution(
    f: &Poly,
    m: &MonicModulus,
    params: &SubstitutionParams,
) -> Result<BigInt, KroneckerError> {
    let ring_side = check_hypotheses(f, m, params)?;
    let integer_side = eval_substitution_unchecked(f, m, params)?;
    if integer_side != ring_side {
        return Err(KroneckerError::TheoremMismatch {
            ring_side,
            integer_side,
        });
    }
    Ok(integer_side)
}

/// Returns `r(b)` when every hypothesis holds, otherwise the first one that
/// fails.
pub fn check_hypotheses(
    f: &Poly,
    m: &MonicModulus,
    params: &SubstitutionParams,
) -> Result<BigInt, KroneckerError> {
    use Hypothesis::*;
    let fail = |h| Err(KroneckerError::PreconditionViolated(h));

    if f.is_constant() {
        return fail(NonConstant);
    }
    if !params.gamma.is_positive() || params.k == 0 || !params.b.is_positive() {
        return fail(PositiveParameters);
    }
    if params.k < m.degree() as u64 {
        return fail(ExponentCoversDegree);
    }
    let r = m.pow(f, params.power);
    let rb = r.eval_at(&params.b);
    let base = params.base();
    if base <= rb.abs() {
        return fail(BaseExceedsValue);
    }
    let outer_modulus = &base - &params.b;
    if outer_modulus.is_zero() {
        return fail(NonZeroFinalModulus);
    }
    if canonical_mod(&rb, &outer_modulus).is_zero() {
        return fail(NonZeroResidue);
    }
    let inner_modulus = m.eval_at(&base);
    let r_base = r.eval_at(&base);
    if r_base.is_negative() || r_base >= inner_modulus {
        return fail(ExactInnerResidue);
    }
    if rb.is_negative() || rb >= outer_modulus {
        return fail(ExactOuterResidue);
    }
    Ok(rb)
}

/// Smallest base `B >= 2` that losslessly encodes every coefficient of `p`.
pub fn minimal_base(p: &Poly) -> BigInt {
    std::cmp::max(p.max_abs_coeff() + BigInt::one(), BigInt::from(2))
}
