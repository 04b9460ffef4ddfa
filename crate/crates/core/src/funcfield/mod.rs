//! Exact arithmetic in F_q, A = F_q[T], L = F_q(t), places and heights.

mod fq;
mod height;
mod parse;
mod place;
mod poly;
mod ratfunc;

pub use fq::{prime_power, Elem, Fq};
pub use height::{height, product_formula_check, weighted_height, WeightedPoint};
pub use parse::{parse_expr, parse_place, parse_poly, parse_ratfunc, Expr, ExprOps, RatFuncOps};
pub use place::{enumerate_places, log_abs, support, support_of, valuation, LogValue, Place};
pub use poly::Poly;
pub use ratfunc::RatFunc;

/// log+ of a log value.
pub fn log_plus(x: LogValue) -> LogValue {
    x.max(LogValue::from_integer(0))
}
