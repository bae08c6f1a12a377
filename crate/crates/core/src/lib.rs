//! Coadjoint invariants of algebraic Lie algebras in exact rational arithmetic.
//!
//! The crate computes the index, the Cartan-Duflo rank and the unipotent
//! defect of generic coadjoint stabilizers, decides quasi-reductivity, and
//! checks the closed-form index/defect formulas for flag stabilizers of
//! alternating forms and for parabolic subalgebras of `so(q)` against a
//! direct linear-algebra computation.
//!
//! Module map:
//! - [`exactlin`]: rationals, dense matrices, polynomials, Pfaffians, generic rank.
//! - [`liealg`]: Lie algebras from structure constants or matrices, Kirillov form.
//! - [`jordan`]: Jordan-Chevalley decomposition and the defect / rank analysis.
//! - [`classical`]: `so`, `sp`, `gl`, flags, flag stabilizers, parabolics, examples.
//! - [`formulas`]: closed-form index/defect formulas and Dynkin-subset classifiers.
//! - [`census`]: formula-versus-oracle enumeration of standard parabolics.

pub mod census;
pub mod classical;
pub mod error;
pub mod exactlin;
pub mod formulas;
pub mod jordan;
pub mod liealg;

pub use error::{Error, Result};
pub use exactlin::{Rat, RatMatrix};
pub use liealg::{LieAlgebra, LinearForm, SampleConfig};
