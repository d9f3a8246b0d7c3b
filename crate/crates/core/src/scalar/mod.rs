//! Exact coefficient arithmetic: big rationals, Laurent polynomials in
//! `q^(1/2)`, `t^(1/2)`, and their fraction field.

mod laurent;
mod qt;
mod zpoly;

pub use laurent::{Exp2, QtLaurent};
pub use num_rational::BigRational;
pub use qt::{QtScalar, QtSum};

use crate::error::Result;

/// `a / b`, reporting division by zero.
pub fn qt_div(a: &QtScalar, b: &QtScalar) -> Result<QtScalar> {
    a.checked_div(b)
}

/// Evaluates `a` at `(q_val, t_val)`.
pub fn qt_substitute(a: &QtScalar, q_val: &QtScalar, t_val: &QtScalar) -> Result<QtScalar> {
    a.substitute(q_val, t_val)
}

/// `Some(p)` when `a` reduces to a polynomial `p` with exponents in `(1/2)Z>=0`.
pub fn qt_is_polynomial(a: &QtScalar) -> Option<QtLaurent> {
    a.as_polynomial()
}
