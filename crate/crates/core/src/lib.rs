//! Exact jet-level computations for foliations on normal-crossing germs.
//!
//! Everything is generic over a [`Field`] of coefficients; the aliases below
//! fix the exact rationals used throughout the examples and tests.

pub mod cohomology;
pub mod error;
pub mod foliation;
pub mod gallery;
pub mod jet;
pub mod linalg;
pub mod logcalc;
pub mod monoid;
pub mod parse;
pub mod scalar;
pub mod semistability;

pub use cohomology::{
    ce_differential, cohomology_snc_curve, h_p1, leaf_complex_hypercohomology, lie_subalgebra_obstruction,
    verify_obstruction_cocycle, CechLeafData, FinLieData, GradedBundleP1, LieAlgebra, SNCCurveBundle,
};
pub use error::{Error, Result};
pub use foliation::{
    check_gluing_cocycle, involutivity_check, pushout_membership, restrict_foliation, vanishing_divisor,
    Decision, FoliationGerm, SNCGlueData, SurfaceForm,
};
pub use jet::{GermContext, Jet, Poly, UnitJet, DEFAULT_ORDER};
pub use linalg::Matrix;
pub use logcalc::{in_relative_tangent, JetCheck, LogDerivation, LogOneForm};
pub use monoid::{diagonal_hom, FGMonoid, MonoidConfig, MonoidHom};
pub use semistability::{
    check_holonomy_compatibility, check_normal_degrees, cs_index_paper, cs_index_surface, find_flat_unit, nabla,
    HolonomyData, T1Section,
};
pub use scalar::{Field, GaussRat, Rat};

pub type RatJet = Jet<Rat>;
pub type RatUnit = UnitJet<Rat>;
pub type RatDerivation = LogDerivation<Rat>;
pub type RatForm = LogOneForm<Rat>;
pub type RatMatrix = Matrix<Rat>;
pub type RatBundle = SNCCurveBundle<Rat>;
pub type RatLeafData = CechLeafData<Rat>;
