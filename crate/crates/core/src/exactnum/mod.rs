//! Exact scalars, dense linear algebra and truncated power series.

pub mod cyclotomic;
pub mod field;
pub mod matrix;
pub mod series;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, CycNumber};
pub use field::{format_rational, parse_rational, rat, Field, Rational};
pub use matrix::{subsets, EchelonBasis, Matrix};
pub use series::{char_det_series, CharDetSeries, Series};

use crate::error::Result;

/// Field operation selector for [`cyc_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked binary arithmetic in a cyclotomic field.
pub fn cyc_arith(a: &CycNumber, b: &CycNumber, op: ArithOp) -> Result<CycNumber> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
        ArithOp::Div => a.checked_div(b),
    }
}
