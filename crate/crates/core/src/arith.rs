//! Integer helpers shared across modules.
//!
//! Every `mod` in this crate returns the canonical residue: a value in
//! `[0, |m|)` regardless of the signs of the operands.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};

/// Canonical residue of `v` modulo `m`, in `[0, |m|)`.
///
/// Panics if `m` is zero.
pub fn canonical_mod(v: &BigInt, m: &BigInt) -> BigInt {
    assert!(!m.is_zero(), "canonical_mod: zero modulus");
    v.mod_floor(&m.abs())
}

/// `base^exp mod m` as a canonical residue in `[0, |m|)`, never materializing
/// `base^exp`.
///
/// Panics if `m` is zero.
pub fn mod_pow(base: &BigInt, exp: &BigUint, m: &BigInt) -> BigInt {
    assert!(!m.is_zero(), "mod_pow: zero modulus");
    let m = m.abs();
    if m.is_one() {
        return BigInt::zero();
    }
    // BigInt::modpow already floors toward the modulus sign; m > 0 here.
    base.modpow(&BigInt::from(exp.clone()), &m)
}

/// `base^exp` with a machine exponent.
pub fn pow(base: &BigInt, exp: u64) -> BigInt {
    if exp <= u32::MAX as u64 {
        Pow::pow(base, exp as u32)
    } else {
        // Only reachable for trivially sized bases in practice.
        let mut acc = BigInt::one();
        let mut sq = base.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc *= &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }
}

/// Number of decimal digits of `|v|` (zero has one digit).
pub fn decimal_digits(v: &BigInt) -> u64 {
    let mag = v.magnitude();
    if mag.is_zero() {
        return 1;
    }
    // bits * log10(2) is within one of the true digit count.
    let estimate = ((mag.bits() - 1) as f64 * std::f64::consts::LOG10_2).floor() as u64;
    let ten = BigUint::from(10u32);
    let mut digits = estimate + 1;
    let mut bound = Pow::pow(&ten, digits as u32);
    while *mag >= bound {
        bound *= &ten;
        digits += 1;
    }
    digits
}

/// Estimated decimal digit count of `base^exp`, for budget checks before
/// anything is computed.
pub fn estimated_power_digits(base: u64, exp: u64) -> f64 {
    if base <= 1 {
        return 1.0;
    }
    exp as f64 * (base as f64).log10() + 1.0
}

/// Renders `scaled / 10^precision` as an exact fixed-point decimal string.
pub fn format_fixed(scaled: &BigInt, precision: u32) -> String {
    let digits = scaled.magnitude().to_str_radix(10);
    let sign = if scaled.sign() == Sign::Minus {
        "-"
    } else {
        ""
    };
    let p = precision as usize;
    if p == 0 {
        return format!("{sign}{digits}");
    }
    let padded = if digits.len() <= p {
        format!("{}{}", "0".repeat(p + 1 - digits.len()), digits)
    } else {
        digits
    };
    let (int_part, frac_part) = padded.split_at(padded.len() - p);
    format!("{sign}{int_part}.{frac_part}")
}
