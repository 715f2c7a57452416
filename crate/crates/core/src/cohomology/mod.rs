//! Exact cohomology: split bundles on the projective line and on a nodal
//! curve, Chevalley-Eilenberg complexes, and Čech double complexes of a
//! complex of sheaves.

pub mod leaf;
pub mod lie;
pub mod p1;

pub use leaf::{
    column_cohomology, hypercohomology_all, leaf_complex_hypercohomology, les_terms, total_coboundary,
    verify_obstruction_cocycle, CechLeafData, ObstructionCheck, ObstructionTriple,
};
pub use lie::{ce_differential, lie_subalgebra_obstruction, CeComplex, FinLieData, LieAlgebra, LieObstruction};
pub use p1::{cohomology_snc_curve, h_p1, GradedBundleP1, LineCohomology, SNCCurveBundle};
