//! Scalars: p-adic numbers with explicit precision, and the quadratic
//! extension generated by a root of `X² − a_p X + p`.

mod quadext;
mod scalar;

pub use quadext::{quadext_arith, quadext_conj, QuadExtScalar, QuadOp};
pub use scalar::{
    padic_arith, padic_from_rational, padic_valuation, ArithOp, PadicScalar, PrecRepr, ScalarRepr,
};
