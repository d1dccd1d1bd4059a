//! Exact polynomials and rational functions over the rationals.

mod parse;
mod poly;
mod rf;
mod series;
mod var;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

pub use parse::parse_expr;
pub use poly::{Monomial, Polynomial};
pub use rf::{ArithOp, RationalFunction};
pub use series::{rf_series, PowerSeries};
pub use var::{Var, VarTable};

pub type Q = BigRational;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ExprError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable '{name}' at {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("division by the zero polynomial at {pos}")]
    ZeroDivisorAt { pos: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes after substitution")]
    DenominatorVanishes,
    #[error("unbound variable in evaluation")]
    Unbound,
    #[error("expression is not univariate in the series variable")]
    NotUnivariate,
    #[error("denominator has zero constant term; no series at 0")]
    NoSeriesAtZero,
}

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn rf_arith(a: &RationalFunction, b: &RationalFunction, op: ArithOp) -> Result<RationalFunction, ExprError> {
    a.arith(b, op)
}

pub fn rf_equal(a: &RationalFunction, b: &RationalFunction) -> bool {
    a.equals(b)
}

pub fn rf_diff(a: &RationalFunction, v: Var) -> RationalFunction {
    a.diff(v)
}

pub fn rf_subst(a: &RationalFunction, bindings: &HashMap<Var, RationalFunction>) -> Result<RationalFunction, ExprError> {
    a.subst(bindings)
}

/// Parse with every identifier in `names` registered.
pub fn parse_with(text: &str, names: &[&str]) -> Result<RationalFunction, ExprError> {
    parse_expr(text, &VarTable::from_names(names.iter().copied()))
}
