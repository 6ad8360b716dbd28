//! Arithmetic-term formulas for C-recursive integer sequences.
//!
//! Sequence terms are computed three ways: by iterating the recurrence, by
//! powering `x` in the quotient ring `Z[x]/(x^d - g(x))`, and by a single
//! closed-form integer expression obtained from Kronecker substitution
//! (evaluating every polynomial at a large integer base). The same machinery
//! gives closed forms for the Pell numbers and central binomial coefficients,
//! and limit formulas for real n-th roots.
//!
//! - [`polyring`]: dense integer polynomials and quotient-ring powering.
//! - [`kronecker`]: integer encoding of polynomials and the substitution harness.
//! - [`sequences`]: recurrences, formula synthesis, Pell and central binomial forms.
//! - [`term`]: arithmetic-term expression trees with a canonical text form.
//! - [`roots`]: n-th root approximants and the floor-root conjecture scanner.

pub mod arith;
pub mod kronecker;
pub mod polyring;
pub mod roots;
pub mod sequences;
pub mod term;

pub use kronecker::{KroneckerError, SubstitutionParams};
pub use polyring::{MonicModulus, Poly, PolyError};
pub use roots::{ConvergenceRecord, Rational, RootError};
pub use sequences::{BaseStrategy, CRecurrence, ExponentConvention, SequenceError};
pub use term::{ArithmeticTerm, TermError};
