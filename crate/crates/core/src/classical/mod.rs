//! Classical algebras and their subalgebras: `so`, `sp`, `gl` in fixed
//! bases, flags and bilinear forms, stabilizers of flags for alternating
//! forms, standard parabolics of `so(q)`, and a zoo of small examples.

mod algebras;
mod forms;
mod zoo;

pub use algebras::{
    flag_from_roots, flag_stabilizer_sp, gl_algebra, invariant_matrices, parabolic_from_roots, parabolic_so,
    so_algebra, sp_algebra, symplectic_gram, HyperbolicBasis,
};
pub use forms::{
    generic_alternating_form, is_generic_form, sample_generic_alternating_form, standard_alternating_gram, BilForm,
    Flag, FormKind,
};
pub use zoo::{bh5, borel_sl2, borel_sl3, f_algebra, ghat, heisenberg, sp_heisenberg, sp_k_heisenberg, zoo, ZOO_NAMES};

/// Standard parabolics are indexed by root subsets.
pub type ParabolicSpec = crate::formulas::RootSubset;
