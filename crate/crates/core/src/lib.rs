//! Discrete analytic function theory on the integer lattice `Z + iZ`.
//!
//! The crate provides, in exact Gaussian-rational arithmetic:
//!
//! * the Ferrand analyticity test, difference operators and the discrete
//!   path integral ([`lattice`]);
//! * the antiderivative operator `Z` and the basis polynomials `z^(n)`
//!   together with the convolution ring of discrete analytic polynomials
//!   ([`basis`]);
//! * the Hardy space of the right half-lattice with its reproducing kernel
//!   and the unitary coefficient map onto the disk Hardy space ([`hardy`]);
//! * Schur-class certification, Blaschke factors and the solver for the
//!   homogeneous interpolation problem on lattice rectangles ([`schur`]).
//!
//! Floating point appears only in certified evaluation paths: every float
//! result carries an explicit absolute error bound ([`hardy::EvalBound`]).

pub mod basis;
pub mod error;
pub mod exact;
pub mod formats;
pub mod hardy;
pub mod lattice;
pub mod poly;
pub mod schur;

pub use error::{Error, Result};
pub use exact::{ComplexFloat, GaussianRational, Rational};
pub use lattice::{LatticeFunction, LatticePath, LatticePoint, Window};
