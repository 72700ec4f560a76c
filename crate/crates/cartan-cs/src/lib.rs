//! Discrete-series representations of U(2,2) on the Cartan domain D₄.
//!
//! The analytic model lives in [`basis`] and [`generators`]: holomorphic
//! polynomials on 2×2 complex matrices with `σ⁰ − Z†Z > 0`, the Bergman
//! kernel `det(σ⁰ − Z†Z')^{−λ}`, coherent states and the sixteen u(2,2)
//! generators as differential operators. The oscillator model lives in
//! [`fock`]: two-, four- and eight-mode boson realizations of the same
//! algebra. Every closed form in one model has a numerical counterpart in the
//! other.

#![allow(
    clippy::needless_range_loop,
    clippy::len_without_is_empty,
    clippy::suspicious_arithmetic_impl,
    clippy::neg_cmp_op_on_partial_ord
)]

pub mod algebra;
pub mod basis;
pub mod cli;
mod combinatorics;
pub mod error;
pub mod fock;
pub mod generators;
pub mod json;
pub mod polynomial;
pub mod wigner;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;

pub use algebra::{CartanPoint, ComplexMatrix2, ComplexMatrix4, GroupElement, TubePoint};
pub use basis::BasisIndex;
pub use fock::{FockVector, QuadraticOperator};
pub use polynomial::Polynomial;
pub use wigner::{SpinLabel, WignerMatrix};
