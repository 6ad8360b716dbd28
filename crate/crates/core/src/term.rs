//! Arithmetic terms: fixed-shape integer expressions built from constants,
//! `+`, `-`, `^`, `mod` and floor division.
//!
//! The canonical text form parenthesizes every binary node, e.g.
//! `(((3 ^ 5) + 1) mod ((9 ^ 5) - 2))`, and parses back to the identical tree.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::arith::{canonical_mod, mod_pow};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("division by zero at node {path}")]
    DivisionByZero { path: String },
    #[error("negative exponent at node {path}")]
    NegativeExponent { path: String },
    #[error("exponent too large to materialize at node {path}")]
    ExponentTooLarge { path: String },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Pow,
    Mod,
    FloorDiv,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Pow => "^",
            BinOp::Mod => "mod",
            BinOp::FloorDiv => "div",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ArithmeticTerm {
    Int(BigInt),
    Binary(BinOp, Box<ArithmeticTerm>, Box<ArithmeticTerm>),
}

impl ArithmeticTerm {
    pub fn int(v: impl Into<BigInt>) -> Self {
        ArithmeticTerm::Int(v.into())
    }

    fn binary(op: BinOp, l: ArithmeticTerm, r: ArithmeticTerm) -> Self {
        ArithmeticTerm::Binary(op, Box::new(l), Box::new(r))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(l: ArithmeticTerm, r: ArithmeticTerm) -> Self {
        Self::binary(BinOp::Add, l, r)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(l: ArithmeticTerm, r: ArithmeticTerm) -> Self {
        Self::binary(BinOp::Sub, l, r)
    }

    pub fn pow(base: ArithmeticTerm, exp: ArithmeticTerm) -> Self {
        Self::binary(BinOp::Pow, base, exp)
    }

    pub fn modulo(value: ArithmeticTerm, modulus: ArithmeticTerm) -> Self {
        Self::binary(BinOp::Mod, value, modulus)
    }

    pub fn floor_div(num: ArithmeticTerm, den: ArithmeticTerm) -> Self {
        Self::binary(BinOp::FloorDiv, num, den)
    }

    /// Exact bottom-up evaluation. A `Pow` directly under a `Mod` is evaluated
    /// as a modular exponentiation, so terms like `(b^E mod M)` stay feasible
    /// for huge `E`.
    pub fn eval(&self) -> Result<BigInt, TermError> {
        self.eval_at(&mut Vec::new())
    }

    fn eval_at(&self, path: &mut Vec<usize>) -> Result<BigInt, TermError> {
        let (op, l, r) = match self {
            ArithmeticTerm::Int(v) => return Ok(v.clone()),
            ArithmeticTerm::Binary(op, l, r) => (*op, l, r),
        };
        if op == BinOp::Mod {
            if let ArithmeticTerm::Binary(BinOp::Pow, base, exp) = l.as_ref() {
                let m = child(r, 1, path)?;
                path.push(0);
                let b = child(base, 0, path)?;
                let e = child(exp, 1, path)?;
                if e.is_negative() {
                    return Err(TermError::NegativeExponent {
                        path: render_path(path),
                    });
                }
                path.pop();
                if m.is_zero() {
                    return Err(TermError::DivisionByZero {
                        path: render_path(path),
                    });
                }
                let e = e.to_biguint().expect("non-negative");
                return Ok(mod_pow(&b, &e, &m));
            }
        }
        let lv = child(l, 0, path)?;
        let rv = child(r, 1, path)?;
        match op {
            BinOp::Add => Ok(lv + rv),
            BinOp::Sub => Ok(lv - rv),
            BinOp::Mod => {
                if rv.is_zero() {
                    return Err(TermError::DivisionByZero {
                        path: render_path(path),
                    });
                }
                Ok(canonical_mod(&lv, &rv))
            }
            BinOp::FloorDiv => {
                if rv.is_zero() {
                    return Err(TermError::DivisionByZero {
                        path: render_path(path),
                    });
                }
                Ok(lv.div_floor(&rv))
            }
            BinOp::Pow => {
                if rv.is_negative() {
                    return Err(TermError::NegativeExponent {
                        path: render_path(path),
                    });
                }
                power(&lv, &rv).ok_or_else(|| TermError::ExponentTooLarge {
                    path: render_path(path),
                })
            }
        }
    }
}

fn child(t: &ArithmeticTerm, idx: usize, path: &mut Vec<usize>) -> Result<BigInt, TermError> {
    path.push(idx);
    let v = t.eval_at(path)?;
    path.pop();
    Ok(v)
}

fn power(base: &BigInt, exp: &BigInt) -> Option<BigInt> {
    if exp.is_zero() {
        return Some(BigInt::one());
    }
    if base.is_zero() || base.is_one() {
        return Some(base.clone());
    }
    if *base == -BigInt::one() {
        return Some(if exp.is_even() {
            BigInt::one()
        } else {
            -BigInt::one()
        });
    }
    let e = exp.to_u32()?;
    Some(num_traits::Pow::pow(base, e))
}

fn render_path(path: &[usize]) -> String {
    let mut s = String::from("root");
    for i in path {
        s.push('.');
        s.push_str(&i.to_string());
    }
    s
}

/// Evaluates `t`; see [`ArithmeticTerm::eval`].
pub fn eval_formula(t: &ArithmeticTerm) -> Result<BigInt, TermError> {
    t.eval()
}

impl fmt::Display for ArithmeticTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArithmeticTerm::Int(v) => write!(f, "{v}"),
            ArithmeticTerm::Binary(op, l, r) => write!(f, "({l} {} {r})", op.symbol()),
        }
    }
}

impl FromStr for ArithmeticTerm {
    type Err = TermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        let t = p.operand()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(t)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> TermError {
        TermError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        if self.src[self.pos..].starts_with(tok.as_bytes()) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn operand(&mut self) -> Result<ArithmeticTerm, TermError> {
        self.skip_ws();
        if self.eat("(") {
            let l = self.operand()?;
            self.skip_ws();
            let op = self.op()?;
            let r = self.operand()?;
            self.skip_ws();
            if !self.eat(")") {
                return Err(self.error("expected ')'"));
            }
            return Ok(ArithmeticTerm::binary(op, l, r));
        }
        self.integer()
    }

    fn op(&mut self) -> Result<BinOp, TermError> {
        for op in [
            BinOp::Add,
            BinOp::Sub,
            BinOp::Pow,
            BinOp::Mod,
            BinOp::FloorDiv,
        ] {
            if self.eat(op.symbol()) {
                return Ok(op);
            }
        }
        Err(self.error("expected operator"))
    }

    fn integer(&mut self) -> Result<ArithmeticTerm, TermError> {
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            self.pos = start;
            return Err(self.error("expected integer or '('"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        Ok(ArithmeticTerm::Int(text.parse().expect("validated digits")))
    }
}

/// `b^e mod m` for machine-sized pieces.
pub(crate) fn pow_mod_term(b: BigInt, e: impl Into<BigUint>, m: ArithmeticTerm) -> ArithmeticTerm {
    ArithmeticTerm::modulo(
        ArithmeticTerm::pow(
            ArithmeticTerm::Int(b),
            ArithmeticTerm::Int(BigInt::from(e.into())),
        ),
        m,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type T = ArithmeticTerm;

    #[test]
    fn eval_examples() {
        let t = T::modulo(T::pow(T::int(3), T::int(4)), T::int(10));
        assert_eq!(t.eval().unwrap(), BigInt::from(1));
        assert_eq!(
            T::floor_div(T::int(7), T::int(2)).eval().unwrap(),
            BigInt::from(3)
        );
        assert_eq!(
            T::floor_div(T::int(-7), T::int(2)).eval().unwrap(),
            BigInt::from(-4)
        );
        assert_eq!(
            T::modulo(T::int(-7), T::int(3)).eval().unwrap(),
            BigInt::from(2)
        );
        assert_eq!(
            T::sub(T::int(2), T::int(5)).eval().unwrap(),
            BigInt::from(-3)
        );
    }

    #[test]
    fn fused_pow_handles_huge_exponents() {
        // 2^(10^30) mod 1000 without materializing the power.
        let huge = T::pow(T::int(10), T::int(30));
        let t = T::modulo(T::pow(T::int(2), huge), T::int(1000));
        let expected = BigInt::from(2).modpow(
            &num_traits::Pow::pow(BigInt::from(10), 30u32),
            &BigInt::from(1000),
        );
        assert_eq!(t.eval().unwrap(), expected);
    }

    #[test]
    fn division_by_zero_reports_path() {
        let t = T::add(
            T::int(1),
            T::floor_div(T::int(4), T::sub(T::int(2), T::int(2))),
        );
        assert_eq!(
            t.eval(),
            Err(TermError::DivisionByZero {
                path: "root.1".into()
            })
        );
        let t = T::modulo(T::pow(T::int(2), T::int(3)), T::int(0));
        assert_eq!(
            t.eval(),
            Err(TermError::DivisionByZero {
                path: "root".into()
            })
        );
    }

    #[test]
    fn negative_and_oversized_exponents() {
        let t = T::pow(T::int(2), T::int(-1));
        assert!(matches!(t.eval(), Err(TermError::NegativeExponent { .. })));
        let t = T::modulo(T::pow(T::int(2), T::int(-1)), T::int(5));
        assert_eq!(
            t.eval(),
            Err(TermError::NegativeExponent {
                path: "root.0".into()
            })
        );
        let t = T::pow(T::int(2), T::pow(T::int(10), T::int(20)));
        assert!(matches!(t.eval(), Err(TermError::ExponentTooLarge { .. })));
        let t = T::pow(T::int(-1), T::pow(T::int(10), T::int(20)));
        assert_eq!(t.eval().unwrap(), BigInt::one());
    }

    #[test]
    fn canonical_text() {
        let t = T::modulo(
            T::modulo(
                T::pow(T::int(5), T::int(10)),
                T::sub(T::pow(T::int(5), T::int(2)), T::int(6)),
            ),
            T::sub(T::int(5), T::int(1)),
        );
        let s = t.to_string();
        assert_eq!(s, "(((5 ^ 10) mod ((5 ^ 2) - 6)) mod (5 - 1))");
        assert_eq!(s.parse::<T>().unwrap(), t);
        assert_eq!(
            "(-3 - -4)".parse::<T>().unwrap().eval().unwrap(),
            BigInt::one()
        );
        assert_eq!(
            "( 7   div 2 )".parse::<T>().unwrap(),
            T::floor_div(T::int(7), T::int(2))
        );
    }

    #[test]
    fn parse_errors() {
        assert!(matches!("(1 +".parse::<T>(), Err(TermError::Parse { .. })));
        assert!(matches!(
            "(1 * 2)".parse::<T>(),
            Err(TermError::Parse { pos: 3, .. })
        ));
        assert!(matches!("1 2".parse::<T>(), Err(TermError::Parse { .. })));
        assert!(matches!("".parse::<T>(), Err(TermError::Parse { .. })));
        assert!(matches!("-".parse::<T>(), Err(TermError::Parse { .. })));
    }

    fn arb_term() -> impl Strategy<Value = ArithmeticTerm> {
        let leaf = any::<i64>().prop_map(T::int);
        leaf.prop_recursive(5, 40, 2, |inner| {
            (
                prop_oneof![
                    Just(BinOp::Add),
                    Just(BinOp::Sub),
                    Just(BinOp::Pow),
                    Just(BinOp::Mod),
                    Just(BinOp::FloorDiv)
                ],
                inner.clone(),
                inner,
            )
                .prop_map(|(op, l, r)| ArithmeticTerm::binary(op, l, r))
        })
    }

    proptest! {
        #[test]
        fn text_round_trip(t in arb_term()) {
            prop_assert_eq!(t.to_string().parse::<T>().unwrap(), t);
        }

        #[test]
        fn mod_results_are_canonical(v in any::<i64>(), m in prop_oneof![i64::MIN..0, 1..i64::MAX]) {
            let r = T::modulo(T::int(v), T::int(m)).eval().unwrap();
            prop_assert!(!r.is_negative() && r < BigInt::from(m).abs());
        }
    }
}
