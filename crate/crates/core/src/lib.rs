//! Exact polynomial tau-functions of the KP and BKP hierarchies.
//!
//! Polynomials have Gaussian-rational coefficients and live in two banks of
//! time variables, `t` and `y`. BKP tau-functions are Pfaffians of
//! Schur-function building blocks; their KP squares are larger Pfaffians of
//! the same data. Both can be checked against the bilinear identities
//! ([`hierarchy`]) and recomputed from scratch as fermionic vacuum
//! expectation values ([`fock`]).

pub mod error;
pub mod fock;
pub mod hierarchy;
pub mod io;
pub mod linalg;
pub mod ring;
pub mod sample;
pub mod schur;
pub mod tau;

pub use error::{Error, ParseError, Result};
pub use hierarchy::{bkp_defect, kp_defect, miwa_expand, DefectReport, MiwaExpansion};
pub use linalg::{
    block_pfaffian, caianiello_expand, caianiello_sign, determinant, pfaffian, RectMatrix, UpperTriMatrix,
};
pub use ring::{
    apply_schur_diff, fmt_rational, parse_rational, rat, rat_int, substitute, tilde, Bank, GaussRat, Monomial, Parity,
    Poly, Rational, TimeArgument, Var,
};
pub use schur::{
    character_check, elem_schur, elem_schur_table, q_schur, schur_lambda, ExtendedStrictPartition, FrobeniusCoords,
    Partition,
};
pub use tau::{
    chi_bar, chi_pm, constants_to_series, kdv_half, kdv_tau, series_to_constants, tau_bkp, tau_kp_square, CoeffSeries,
    PlusMinus, SignConvention, TauSpec,
};
