//! Exact arithmetic for Drinfeld modular forms of rank >= 2.
//!
//! The library computes t-expansions of the standard generators (the
//! coefficient forms g_i, the discriminant, the rank-normalized cusp form
//! h, Eisenstein series, and para-Eisenstein series) with coefficients in
//! a graded polynomial ring attached to the boundary of the moduli space;
//! applies degeneracy Hecke operators in rank 2; counts sublattices; and
//! bounds coefficient growth at the infinite place, both symbolically and
//! through certified Laurent-series numerics.
//!
//! Everything is exact: field elements are table-driven finite-field
//! codes, coefficients are multivariate polynomials or rational functions
//! over F_q(T), and floating point never appears.  Numerical evaluation
//! at the infinite place carries an absolute precision certificate.

pub mod error;
pub mod expand;
pub mod field;
pub mod goss;
pub mod graded;
pub mod growth;
pub mod hecke;
pub mod laurent;
pub mod poly;
pub mod skew;
pub mod texp;

pub use error::{Error, Result};
