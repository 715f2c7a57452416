//! The connection on `T^1`, flat units, Camacho-Sad indices and the
//! holonomy and normal-degree gluing conditions.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::foliation::{involutivity_check, Decision, FoliationGerm, SurfaceForm};
use crate::jet::{degree, GermContext, Jet};
use crate::linalg::Matrix;
use crate::logcalc::{LogDerivation, LogOneForm};
use crate::scalar::Field;

/// A class in `O / (xhat_1, .., xhat_r)`, where `xhat_i` is the product of
/// the crossing coordinates other than `x_i`. Stored as the representative
/// with every monomial divisible by some `xhat_i` removed.
#[derive(Clone, Debug, PartialEq)]
pub struct T1Section<F: Field> {
    g: Jet<F>,
}

/// Whether the monomial lies in the ideal `(xhat_1, .., xhat_r)`.
fn in_t1_ideal(r: usize, e: &[u32]) -> bool {
    e[..r].iter().filter(|&&k| k >= 1).count() + 1 >= r
}

fn reduce_t1<F: Field>(g: &Jet<F>) -> Jet<F> {
    let r = g.context().r();
    let mut out = Jet::from_terms(
        g.context(),
        g.terms()
            .iter()
            .filter(|(e, _)| !in_t1_ideal(r, e))
            .map(|(e, c)| (e.clone(), c.clone())),
    );
    out = out.truncate(g.precision());
    out
}

impl<F: Field> T1Section<F> {
    pub fn new(g: Jet<F>) -> Result<Self> {
        if !g.context().is_crossing() {
            return Err(Error::InvalidContext("T^1 sections live on a crossing germ".into()));
        }
        Ok(T1Section { g: reduce_t1(&g) })
    }

    pub fn one(ctx: GermContext) -> Result<Self> {
        Self::new(Jet::one(ctx))
    }

    pub fn context(&self) -> GermContext {
        self.g.context()
    }

    pub fn jet(&self) -> &Jet<F> {
        &self.g
    }

    pub fn is_zero(&self) -> bool {
        self.g.is_zero()
    }

    pub fn agrees_with(&self, other: &Self) -> bool {
        self.g.agrees_with(&other.g)
    }

    pub fn mul_function(&self, f: &Jet<F>) -> Self {
        T1Section { g: reduce_t1(&(f * &self.g)) }
    }

    pub fn add(&self, other: &Self) -> Self {
        T1Section { g: &self.g + &other.g }
    }

    /// Monomials surviving in the quotient, through total degree `d`.
    pub fn basis_monomials(ctx: GermContext, d: u32) -> Vec<Vec<u32>> {
        ctx.monomials_up_to(d)
            .into_iter()
            .filter(|e| !in_t1_ideal(ctx.r(), e))
            .collect()
    }
}

/// `nabla_v g = v(g) - (sum_i b_i) g` on `T^1`.
pub fn nabla<F: Field>(v: &LogDerivation<F>, g: &T1Section<F>) -> Result<T1Section<F>> {
    if v.context() != g.context() {
        return Err(Error::ContextMismatch("field and section live in different germs".into()));
    }
    let out = &v.apply(g.jet())? - &(&v.log_trace() * g.jet());
    T1Section::new(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct FlatUnitReport<F: Field> {
    pub decision: Decision,
    /// Highest degree of the equations checked, or the failing degree.
    pub order: u32,
    /// A flat section with value 1 at the origin, when one exists.
    pub unit: Option<T1Section<F>>,
    pub failing_degree: Option<u32>,
    /// Whether the flat unit is determined by the equations through `order`.
    pub unique: bool,
}

struct FlatSystem<F> {
    matrix: Matrix<F>,
    rhs: Vec<F>,
    unknowns: Vec<Vec<u32>>,
}

/// Equations of degree `<= d` of `nabla_v g = 0` for all generators, with
/// unknown coefficients of `g` in degrees `1..=d+1` and `g(0) = 1`.
fn flat_system<F: Field>(gens: &[LogDerivation<F>], d: u32) -> Result<FlatSystem<F>> {
    let ctx = gens[0].context();
    let top = (d + 1).min(ctx.order());
    let unknowns: Vec<Vec<u32>> = T1Section::<F>::basis_monomials(ctx, top)
        .into_iter()
        .filter(|e| degree(e) > 0)
        .collect();
    let eqs = T1Section::<F>::basis_monomials(ctx, d);
    let row_of: HashMap<&Vec<u32>, usize> = eqs.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let m = eqs.len();
    let mut matrix = Matrix::zeros(gens.len() * m, unknowns.len());
    let mut rhs = vec![F::zero(); gens.len() * m];
    for (k, v) in gens.iter().enumerate() {
        let image = |e: &Vec<u32>| -> Result<Jet<F>> {
            let s = T1Section::new(Jet::monomial(ctx, e.clone(), F::one()))?;
            Ok(nabla(v, &s)?.g)
        };
        for (col, e) in unknowns.iter().enumerate() {
            for (t, c) in image(e)?.terms() {
                if degree(t) <= d {
                    matrix[(k * m + row_of[t], col)] = c.clone();
                }
            }
        }
        for (t, c) in image(&vec![0; ctx.n()])?.terms() {
            if degree(t) <= d {
                rhs[k * m + row_of[t]] = -c.clone();
            }
        }
    }
    Ok(FlatSystem { matrix, rhs, unknowns })
}

/// Solve `nabla_v g = 0` for every generator `v` with `g(0) = 1`, degree by
/// degree up to `order - 1` (the last degree at which the equations are
/// fully known).
pub fn find_flat_unit<F: Field>(f: &FoliationGerm<F>, order: u32) -> Result<FlatUnitReport<F>> {
    let f = f.with_order(order)?;
    let ctx = f.context();
    if !ctx.is_crossing() {
        return Err(Error::InvalidContext("flat units are sought on a crossing germ".into()));
    }
    if f.generators().len() > 1 {
        let inv = involutivity_check(&f, order)?;
        if inv.decision == Decision::Fails {
            return Err(Error::Invalid("the foliation is not involutive".into()));
        }
    }
    let gens = f.generators();
    let prec = gens.iter().map(|g| g.precision()).min().unwrap_or(0).min(ctx.order() as i32);
    if prec < 1 {
        return Err(Error::Inconclusive {
            order: ctx.order(),
            reason: "truncation order too low for the flatness equations".into(),
        });
    }
    let top = (prec - 1) as u32;
    for d in 0..=top {
        let sys = flat_system(gens, d)?;
        let Some(x) = sys.matrix.solve(&sys.rhs) else {
            return Ok(FlatUnitReport {
                decision: Decision::Fails,
                order: d,
                unit: None,
                failing_degree: Some(d),
                unique: true,
            });
        };
        if d == top {
            let kernel = sys.matrix.kernel();
            let unique = kernel.iter().all(|k| {
                sys.unknowns
                    .iter()
                    .zip(k)
                    .all(|(e, c)| degree(e) > top || c.is_zero())
            });
            let mut terms: Vec<(Vec<u32>, F)> = vec![(vec![0; ctx.n()], F::one())];
            terms.extend(sys.unknowns.iter().cloned().zip(x));
            let g = Jet::from_terms(ctx, terms).truncate(top as i32);
            return Ok(FlatUnitReport {
                decision: Decision::Holds,
                order: top,
                unit: Some(T1Section::new(g)?),
                failing_degree: None,
                unique,
            });
        }
    }
    unreachable!("the loop returns at the top degree")
}

/// Breakdown of a Camacho-Sad index computed from a log 1-form.
#[derive(Clone, Debug, PartialEq)]
pub struct CsIndex<F> {
    pub value: F,
    /// `sum_{k != i,j} (a_k(0) - a_i(0)) / (a_j(0) - a_i(0))`
    pub dlog_part: F,
    /// Residue of the regular part along `D_ij` when it is a curve.
    pub regular_residue: F,
}

/// Residue at `t = 0` of `num / den` for one-variable jets.
fn laurent_residue<F: Field>(num: &Jet<F>, den: &Jet<F>) -> Result<F> {
    let v = den.valuation().ok_or_else(|| Error::Inconclusive {
        order: den.context().order(),
        reason: "denominator vanishes to the truncation order".into(),
    })?;
    if v == 0 {
        return Ok(F::zero());
    }
    // den = t^v w with w a unit; residue = coefficient of t^{v-1} in num / w
    let ctx = den.context();
    let known = den.precision() - v as i32;
    if known < v as i32 - 1 || num.precision() < v as i32 - 1 {
        return Err(Error::Inconclusive {
            order: ctx.order(),
            reason: format!("residue needs degree {} beyond the known terms", v - 1),
        });
    }
    let w: Vec<F> = (0..v).map(|k| den.coeff(&[v + k])).collect();
    // series inverse of w through degree v-1
    let mut inv = vec![F::zero(); v as usize];
    inv[0] = w[0].inv().ok_or(Error::NotAUnit)?;
    for k in 1..v as usize {
        let mut s = F::zero();
        for i in 1..=k {
            s = s + w[i].clone() * inv[k - i].clone();
        }
        inv[k] = -(s * inv[0].clone());
    }
    let target = (v - 1) as usize;
    let mut res = F::zero();
    for i in 0..=target {
        res = res + num.coeff(&[i as u32]) * inv[target - i].clone();
    }
    Ok(res)
}

/// Camacho-Sad index of `F_i` along `D_ij` from a log 1-form defining the
/// foliation (1-based `i`, `j`).
pub fn cs_index_paper<F: Field>(omega: &LogOneForm<F>, i: usize, j: usize) -> Result<CsIndex<F>> {
    let ctx = omega.context();
    let r = ctx.r();
    for k in [i, j] {
        if k == 0 || k > r {
            return Err(Error::IndexOutOfRange {
                index: k,
                range: format!("1..={r}"),
            });
        }
    }
    if i == j {
        return Err(Error::Invalid("the double stratum needs two distinct components".into()));
    }
    let a: Vec<F> = omega.dlog_coeffs().iter().map(|c| c.constant_term()).collect();
    let (ai, aj) = (a[i - 1].clone(), a[j - 1].clone());
    let denom = (aj.clone() - ai.clone()).inv().ok_or(Error::Resonance { i, j })?;
    let mut dlog_part = F::zero();
    for (k, ak) in a.iter().enumerate() {
        if k + 1 != i && k + 1 != j {
            dlog_part = dlog_part + (ak.clone() - ai.clone()) * denom.clone();
        }
    }
    let mut regular_residue = F::zero();
    if ctx.n() == 3 && r == 2 {
        // D_ij is the curve of the smooth coordinate; residue of eta / (a_j - a_i)
        let restrict = |g: &Jet<F>| -> Result<Jet<F>> { g.restrict(0)?.restrict(0) };
        let unit = restrict(&(&omega.dlog_coeffs()[j - 1] - &omega.dlog_coeffs()[i - 1]))?;
        let eta = restrict(&omega.regular_coeffs()[0])?;
        regular_residue = laurent_residue(&eta, &unit)?;
    }
    Ok(CsIndex {
        value: dlog_part.clone() + regular_residue.clone(),
        dlog_part,
        regular_residue,
    })
}

/// Classical Camacho-Sad index of `{y = 0}` for `omega = A dy + B dz`:
/// `-Res_{z=0} (B/y)(0,z) / A(0,z) dz`.
pub fn cs_index_surface<F: Field>(omega: &SurfaceForm<F>) -> Result<F> {
    let (a0, _) = omega.on_curve()?;
    let ctx = omega.context();
    let curve = ctx.restricted(0)?;
    let b1 = Jet::from_terms(
        curve,
        omega
            .b
            .terms()
            .iter()
            .filter(|(e, _)| e[0] == 1)
            .map(|(e, c)| (vec![e[1]], c.clone())),
    )
    .truncate(omega.b.precision() - 1);
    Ok(-laurent_residue(&b1, &a0)?)
}

/// The surface form annihilating a field on a two-dimensional germ. With a
/// log coordinate `y` (`r = 1`) the field is `b y d/dy + a d/dz`.
pub fn surface_form_of<F: Field>(v: &LogDerivation<F>) -> Result<SurfaceForm<F>> {
    let ctx = v.context();
    if ctx.n() != 2 || ctx.is_crossing() {
        return Err(Error::InvalidContext("expected a smooth surface germ".into()));
    }
    let (p, q) = match ctx.r() {
        0 => (v.slot(0).clone(), v.slot(1).clone()),
        1 => (&Jet::var(ctx, 0) * v.slot(0), v.slot(1).clone()),
        _ => return Err(Error::InvalidContext("at most one log coordinate on a surface".into())),
    };
    let smooth = GermContext::smooth(2, 0, ctx.order())?;
    SurfaceForm::annihilating(&p.recontext(smooth)?, &q.recontext(smooth)?)
}

#[derive(Clone, Debug, PartialEq)]
pub struct HolonomyData<F> {
    values: Vec<F>,
}

impl<F: Field> HolonomyData<F> {
    pub fn new(values: Vec<F>) -> Result<Self> {
        if let Some(k) = values.iter().position(|v| v.is_zero()) {
            return Err(Error::Invalid(format!("holonomy value {} is zero", k + 1)));
        }
        Ok(HolonomyData { values })
    }

    pub fn values(&self) -> &[F] {
        &self.values
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HolonomyReport<F> {
    pub holds: bool,
    /// `h1[k] * h2[k]` per generator.
    pub products: Vec<F>,
}

/// The two linear holonomies must be mutually inverse on every generator.
pub fn check_holonomy_compatibility<F: Field>(h1: &HolonomyData<F>, h2: &HolonomyData<F>) -> Result<HolonomyReport<F>> {
    if h1.values.len() != h2.values.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} holonomy values against {}",
            h1.values.len(),
            h2.values.len()
        )));
    }
    let products: Vec<F> = h1
        .values
        .iter()
        .zip(&h2.values)
        .map(|(a, b)| a.clone() * b.clone())
        .collect();
    Ok(HolonomyReport {
        holds: products.iter().all(|p| p.is_one()),
        products,
    })
}

/// Normal bundles of the double curve in the two components must have
/// opposite degrees.
pub fn check_normal_degrees(d1: i64, d2: i64) -> bool {
    d1 + d2 == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio, Rat};

    fn ctx() -> GermContext {
        GermContext::normal_crossing(3, 2, 6).unwrap()
    }

    fn baby(l1: i64, l2: i64) -> LogDerivation<Rat> {
        let c = ctx();
        LogDerivation::new(
            c,
            vec![Jet::constant(c, int(l2)), Jet::constant(c, int(l1))],
            vec![Jet::var(c, 2)],
        )
        .unwrap()
    }

    #[test]
    fn nabla_examples() {
        let c = ctx();
        let one = T1Section::<Rat>::one(c).unwrap();
        let transverse = LogDerivation::new(
            c,
            vec![Jet::constant(c, int(1)), Jet::constant(c, int(-1))],
            vec![Jet::zero(c)],
        )
        .unwrap();
        assert!(nabla(&transverse, &one).unwrap().is_zero());
        let n = nabla(&baby(2, 5), &one).unwrap();
        assert_eq!(n.jet().constant_term(), int(-7));
        let e1 = LogDerivation::basis(c, 0);
        assert_eq!(nabla(&e1, &one).unwrap().jet().constant_term(), int(-1));
    }

    #[test]
    fn t1_quotient_for_three_components() {
        let c = GermContext::normal_crossing(4, 3, 4).unwrap();
        let x1 = Jet::<Rat>::var(c, 0);
        let x2 = Jet::var(c, 1);
        let z = Jet::var(c, 3);
        assert!(!T1Section::new(&x1 + &z).unwrap().is_zero());
        assert!(T1Section::new(&x1 * &x2).unwrap().is_zero());
        let r1 = GermContext::normal_crossing(2, 1, 4).unwrap();
        assert!(T1Section::<Rat>::one(r1).unwrap().is_zero());
    }

    #[test]
    fn baby_flat_units() {
        let f = FoliationGerm::new(vec![baby(1, -1)], 1).unwrap();
        let rep = find_flat_unit(&f, 6).unwrap();
        assert_eq!(rep.decision, Decision::Holds);
        assert!(rep.unique);
        assert_eq!(rep.unit.unwrap().jet(), &Jet::one(ctx()).truncate(5));
        let f = FoliationGerm::new(vec![baby(1, 0)], 1).unwrap();
        let rep = find_flat_unit(&f, 6).unwrap();
        assert_eq!(rep.decision, Decision::Fails);
        assert_eq!(rep.failing_degree, Some(0));
    }

    #[test]
    fn transverse_rulings_admit_one() {
        let c = ctx();
        let v = LogDerivation::new(
            c,
            vec![Jet::constant(c, int::<Rat>(1)), Jet::constant(c, int(-1))],
            vec![Jet::zero(c)],
        )
        .unwrap();
        let rep = find_flat_unit(&FoliationGerm::new(vec![v], 1).unwrap(), 6).unwrap();
        assert_eq!(rep.decision, Decision::Holds);
        assert!(!rep.unique);
        assert_eq!(rep.unit.unwrap().jet().terms().len(), 1);
    }

    #[test]
    fn paper_cs_indices() {
        let c = GermContext::normal_crossing(4, 4, 3).unwrap();
        let a: [Rat; 4] = [int(1), int(3), int(-2), ratio(1, 2)];
        let omega = LogOneForm::new(c, a.iter().map(|v| Jet::constant(c, v.clone())).collect(), vec![]).unwrap();
        let cs12 = cs_index_paper(&omega, 1, 2).unwrap().value;
        let cs21 = cs_index_paper(&omega, 2, 1).unwrap().value;
        // (a3-a1)/(a2-a1) + (a4-a1)/(a2-a1) = -3/2 - 1/4
        assert_eq!(cs12, ratio(-7, 4));
        assert_eq!(cs12 + cs21, int(2));
        let c2 = ctx();
        let w = LogOneForm::new(
            c2,
            vec![Jet::constant(c2, int::<Rat>(1)), Jet::constant(c2, int(-1))],
            vec![Jet::var(c2, 2)],
        )
        .unwrap();
        assert_eq!(cs_index_paper(&w, 1, 2).unwrap().value, int(0));
        let flat = LogOneForm::new(c2, vec![Jet::constant(c2, int::<Rat>(2)); 2], vec![Jet::zero(c2)]).unwrap();
        assert_eq!(cs_index_paper(&flat, 1, 2).unwrap_err(), Error::Resonance { i: 1, j: 2 });
    }

    fn surface(a: &[(u32, u32, Rat)], b: &[(u32, u32, Rat)]) -> SurfaceForm<Rat> {
        let s = GermContext::smooth(2, 0, 6).unwrap();
        let mk = |t: &[(u32, u32, Rat)]| Jet::from_terms(s, t.iter().map(|(i, j, c)| (vec![*i, *j], c.clone())));
        SurfaceForm::new(mk(a), mk(b)).unwrap()
    }

    #[test]
    fn surface_cs_examples() {
        let lam = ratio::<Rat>(5, 3);
        let w = surface(&[(0, 1, int(1))], &[(1, 0, -lam.clone())]);
        assert_eq!(cs_index_surface(&w).unwrap(), lam);
        let w = surface(&[(0, 1, int(1))], &[(1, 0, int(1))]);
        assert_eq!(cs_index_surface(&w).unwrap(), int(-1));
        let w = surface(&[(0, 0, int(1))], &[]);
        assert_eq!(cs_index_surface(&w).unwrap(), int(0));
        // z^2 dy + y (1 + z) dz: -Res (1+z)/z^2 = -1
        let w = surface(&[(0, 2, int(1))], &[(1, 0, int(1)), (1, 1, int(1))]);
        assert_eq!(cs_index_surface(&w).unwrap(), int(-1));
    }

    #[test]
    fn surface_form_from_component_field() {
        let comps = crate::foliation::restrict_to_components(&baby(3, -3)).unwrap();
        let w = surface_form_of(&comps[0]).unwrap();
        assert_eq!(cs_index_surface(&w).unwrap(), int(3));
        let w = surface_form_of(&comps[1]).unwrap();
        assert_eq!(cs_index_surface(&w).unwrap(), int(-3));
    }

    #[test]
    fn holonomy_and_degrees() {
        let h = |v: Vec<Rat>| HolonomyData::new(v).unwrap();
        assert!(check_holonomy_compatibility(&h(vec![int(2)]), &h(vec![ratio(1, 2)])).unwrap().holds);
        assert!(!check_holonomy_compatibility(&h(vec![int(2)]), &h(vec![int(2)])).unwrap().holds);
        assert!(check_holonomy_compatibility(&h(vec![int(3), ratio(1, 5)]), &h(vec![ratio(1, 3), int(5)]))
            .unwrap()
            .holds);
        assert!(check_holonomy_compatibility(&h(vec![int(3)]), &h(vec![])).is_err());
        assert!(HolonomyData::new(vec![int::<Rat>(0)]).is_err());
        assert!(check_normal_degrees(1, -1));
        assert!(check_normal_degrees(0, 0));
        assert!(!check_normal_degrees(2, -1));
    }
}
