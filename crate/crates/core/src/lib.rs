//! Exact computations for hypersurface singularities.
//!
//! The crate is organised by capability:
//!
//! - [`algebra`]: sparse multivariate polynomials over the rationals, with a
//!   text parser and canonical printer.
//! - [`exponents`]: minimal exponents, microlocal V-filtration and
//!   Brieskorn-lattice valuations of monomials, and the k-du Bois /
//!   k-rational classifier.
//! - [`milnor`]: Brieskorn-Pham spectra, Milnor numbers, reduced
//!   Bernstein-Sato roots and Jacobian-ideal inclusion checks.
//! - [`blowup`]: point blow-up charts, exceptional multiplicities and
//!   proper transforms.
//! - [`families`]: explicit polynomial families, singular-point tests and
//!   chart restrictions.
//! - [`sweep`]: exhaustive and seeded sweeps over the above.
//! - [`cli`]: the `singulex` command-line front end.
//!
//! Each capability has a runnable program under `examples/`.

pub mod algebra;
pub mod blowup;
pub mod cli;
pub mod exponents;
pub mod families;
pub mod milnor;
pub mod reference;
pub mod sweep;

pub use algebra::{parse_polynomial, Context, ContextSpec, ExponentVector, Rational, SparsePolynomial, Substitution};
pub use exponents::{BrieskornPham, ExponentValue};
