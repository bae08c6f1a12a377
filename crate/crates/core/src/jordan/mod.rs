//! Jordan-Chevalley decomposition and the coadjoint analysis built on it:
//! unipotent defect, Cartan-Duflo rank, reductive type, quasi-reductivity.
//!
//! Every test runs in the algebra's own matrix realization, which must be
//! algebraic for the answers to be meaningful.

mod analysis;
mod decomposition;
pub mod poly;

pub use analysis::{
    analyze, analyze_exact, defect, generic_defect, is_quasi_reductive, is_reductive_type, rank_cd,
    stabilizer_shape, stabilizer_unipotent_radical, unipotent_center_dim, AnalysisReport, Method,
    SamplingInfo, StabilizerShape,
};
pub use decomposition::{
    is_nilpotent, jordan_chevalley, minimal_polynomial, nilpotent_subspace, nilpotent_subspace_jordan, JordanPair,
    NilpotentSubspace,
};
