//! Standard configurations used by the acceptance suite, the CLI self-test
//! and the integration tests.

use crate::cohomology::{GradedBundleP1, SNCCurveBundle};
use crate::error::Result;
use crate::foliation::{FoliationGerm, SNCGlueData, SurfaceForm};
use crate::jet::{GermContext, Jet};
use crate::linalg::Matrix;
use crate::logcalc::LogDerivation;
use crate::scalar::Field;

/// On `{x y = 0}` in three-space: `l2 x d/dx + l1 y d/dy + z d/dz`, which
/// restricts to `l1 y d/dy + z d/dz` on `{x = 0}` and `l2 x d/dx + z d/dz`
/// on `{y = 0}`.
pub fn two_plane_field<F: Field>(l1: F, l2: F, order: u32) -> Result<LogDerivation<F>> {
    let ctx = GermContext::normal_crossing(3, 2, order)?;
    LogDerivation::new(
        ctx,
        vec![Jet::constant(ctx, l2), Jet::constant(ctx, l1)],
        vec![Jet::var(ctx, 2)],
    )
}

pub fn two_plane_foliation<F: Field>(l1: F, l2: F, order: u32) -> Result<FoliationGerm<F>> {
    FoliationGerm::new(vec![two_plane_field(l1, l2, order)?], 1)
}

/// `Q dy - P dz` for `P d/dy + Q d/dz = lambda y d/dy + z d/dz`.
pub fn linear_surface_form<F: Field>(lambda: F, order: u32) -> Result<SurfaceForm<F>> {
    let ctx = GermContext::smooth(2, 0, order)?;
    let p = Jet::var(ctx, 0).scale(&lambda);
    let q = Jet::var(ctx, 1);
    SurfaceForm::annihilating(&p, &q)
}

/// Generators on the three components of `{x y z = 0}`, each a log field on
/// a plane with two boundary lines. On `X_3` the second coefficient is
/// `lambda`, which makes the identification scalars multiply to `lambda`
/// around the triple point.
pub fn triple_point_generators<F: Field>(lambda: F, order: u32) -> Result<Vec<LogDerivation<F>>> {
    let ctx = GermContext::normal_crossing(3, 3, order)?;
    let comp = ctx.restricted(0)?;
    let k = |v: i64| Jet::constant(comp, F::from_i64(v));
    Ok(vec![
        LogDerivation::new(comp, vec![k(1), k(-1)], vec![])?,
        LogDerivation::new(comp, vec![k(1), k(-1)], vec![])?,
        LogDerivation::new(comp, vec![k(1), Jet::constant(comp, lambda)], vec![])?,
    ])
}

pub fn triple_point_glue<F: Field>(lambda: F, order: u32) -> Result<SNCGlueData<F>> {
    SNCGlueData::from_generators(&triple_point_generators(lambda, order)?)
}

/// `O(1) + O(1-n) + O(1+n)` on both lines of the nodal curve, identity glue.
pub fn hirzebruch_bundle<F: Field>(n: i64) -> SNCCurveBundle<F> {
    let side = GradedBundleP1::new(vec![1, 1 - n, 1 + n]);
    SNCCurveBundle::identity(side.clone(), side).expect("rank 3 identity glue")
}

/// `O(-2) + O(n-2) + O(-n-2)` on both lines with the inverse-transpose glue of
/// [`hirzebruch_bundle`].
pub fn hirzebruch_dual<F: Field>(n: i64) -> SNCCurveBundle<F> {
    let side = GradedBundleP1::new(vec![-2, n - 2, -n - 2]);
    SNCCurveBundle::new(side.clone(), side, Matrix::identity(3)).expect("rank 3 identity glue")
}
