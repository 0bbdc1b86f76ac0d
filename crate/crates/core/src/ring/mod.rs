//! Exact coefficient arithmetic and the weighted polynomial ring.

pub mod gauss;
mod parse;
pub mod poly;
pub mod time_arg;

pub use gauss::{fmt_rational, parse_rational, rat, rat_int, GaussRat, Rational};
pub use poly::{Bank, Monomial, Parity, Poly, Var};
pub use time_arg::{apply_schur_diff, substitute, tilde, TimeArgument};
