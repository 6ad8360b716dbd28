//! Dense integer polynomials and arithmetic in quotient rings `Z[x]/(m(x))`
//! for monic `m`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("modulus degree must be at least 1")]
    ZeroDegreeModulus,
    #[error("modulus body has degree {body} but must be below {degree}")]
    BodyDegreeTooLarge { body: usize, degree: usize },
    #[error("polynomial is not monic (leading coefficient {0})")]
    NotMonic(BigInt),
}

/// Univariate polynomial with arbitrary-precision integer coefficients.
///
/// `coeffs[i]` is the coefficient of `x^i`. The highest stored coefficient is
/// always nonzero; the zero polynomial stores nothing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigInt::one())
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Poly::monomial(BigInt::one(), 1)
    }

    pub fn constant(c: BigInt) -> Self {
        Poly::new(vec![c])
    }

    /// `c * x^degree`.
    pub fn monomial(c: BigInt, degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = c;
        Poly::new(coeffs)
    }

    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = Poly { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True for the zero polynomial and nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i`; zero beyond the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Horner evaluation `p(b)`.
    pub fn eval_at(&self, b: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * b + c)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        Poly::new(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::new(coeffs)
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for Poly {
            type Output = Poly;

            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

/// The monic modulus `x^d - body(x)` with `deg(body) < d`.
///
/// The quotient ring `Z[x]/(x^d - body(x))` identifies `x^d` with `body(x)`,
/// so every element has a unique representative of degree below `d` with
/// integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonicModulus {
    body: Poly,
    degree: usize,
}

impl MonicModulus {
    pub fn new(body: Poly, degree: usize) -> Result<Self, PolyError> {
        if degree == 0 {
            return Err(PolyError::ZeroDegreeModulus);
        }
        if let Some(bd) = body.degree() {
            if bd >= degree {
                return Err(PolyError::BodyDegreeTooLarge { body: bd, degree });
            }
        }
        Ok(MonicModulus { body, degree })
    }

    /// Reads a full monic polynomial `x^d + ...` as a modulus.
    pub fn from_monic(p: &Poly) -> Result<Self, PolyError> {
        let degree = p.degree().ok_or(PolyError::ZeroDegreeModulus)?;
        let lead = p.leading_coeff().expect("nonzero polynomial");
        if !lead.is_one() {
            return Err(PolyError::NotMonic(lead.clone()));
        }
        let body = -&Poly::new(p.coeffs[..degree].to_vec());
        MonicModulus::new(body, degree)
    }

    pub fn body(&self) -> &Poly {
        &self.body
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The full modulus polynomial `x^d - body(x)`.
    pub fn to_poly(&self) -> Poly {
        &Poly::monomial(BigInt::one(), self.degree) - &self.body
    }

    /// The integer `b^d - body(b)`.
    pub fn eval_at(&self, b: &BigInt) -> BigInt {
        crate::arith::pow(b, self.degree as u64) - self.body.eval_at(b)
    }

    /// Remainder of `p` modulo `x^d - body(x)`, by substituting `x^d = body(x)`
    /// from the top degree down.
    pub fn reduce(&self, p: &Poly) -> Poly {
        let d = self.degree;
        if p.coeffs.len() <= d {
            return p.clone();
        }
        let mut coeffs = p.coeffs.clone();
        for top in (d..coeffs.len()).rev() {
            if coeffs[top].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut coeffs[top]);
            // x^top = x^(top-d) * body(x)
            for (j, bj) in self.body.coeffs.iter().enumerate() {
                coeffs[top - d + j] += &c * bj;
            }
        }
        coeffs.truncate(d);
        Poly::new(coeffs)
    }

    /// `base^e` in the quotient ring, by square-and-multiply with a reduction
    /// after every product.
    pub fn pow(&self, base: &Poly, e: u64) -> Poly {
        let mut acc = self.reduce(&Poly::one());
        let mut sq = self.reduce(base);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.reduce(&(&acc * &sq));
            }
            e >>= 1;
            if e > 0 {
                sq = self.reduce(&(&sq * &sq));
            }
        }
        acc
    }
}

impl fmt::Display for MonicModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}
