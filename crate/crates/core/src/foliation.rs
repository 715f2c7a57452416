//! Foliations as submodules of the log tangent module, their restrictions to
//! the components, and gluing along double and triple strata.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::jet::{degree, GermContext, Jet};
use crate::linalg::{span_rank, Matrix};
use crate::logcalc::LogDerivation;
use crate::scalar::Field;

/// Outcome of a jet-level decision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Decision {
    Holds,
    Fails,
    /// Consistent up to the order checked, but the data is degenerate enough
    /// that higher orders could still matter.
    Inconclusive,
}

impl Decision {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Decision::Holds
        } else {
            Decision::Fails
        }
    }

    pub fn holds(self) -> bool {
        self == Decision::Holds
    }
}

#[derive(Clone, PartialEq)]
pub struct FoliationGerm<F> {
    ctx: GermContext,
    generators: Vec<LogDerivation<F>>,
    declared_rank: usize,
}

impl<F: Field> FoliationGerm<F> {
    pub fn new(generators: Vec<LogDerivation<F>>, declared_rank: usize) -> Result<Self> {
        let Some(first) = generators.first() else {
            return Err(Error::Invalid("a foliation needs at least one generator".into()));
        };
        let ctx = first.context();
        if generators.iter().any(|g| g.context() != ctx) {
            return Err(Error::ContextMismatch("generators live in different germs".into()));
        }
        if declared_rank == 0 {
            return Err(Error::Invalid("declared rank must be positive".into()));
        }
        let f = FoliationGerm {
            ctx,
            generators,
            declared_rank,
        };
        let rank = f.origin_rank();
        if rank > declared_rank {
            return Err(Error::Invalid(format!(
                "generators span rank {rank} at the origin, more than the declared rank {declared_rank}"
            )));
        }
        Ok(f)
    }

    pub fn context(&self) -> GermContext {
        self.ctx
    }

    pub fn generators(&self) -> &[LogDerivation<F>] {
        &self.generators
    }

    pub fn declared_rank(&self) -> usize {
        self.declared_rank
    }

    /// Rank of the matrix of generator values at the origin.
    pub fn origin_rank(&self) -> usize {
        let rows: Vec<Vec<F>> = self.generators.iter().map(|g| g.value_at_origin()).collect();
        span_rank(self.ctx.n(), &rows)
    }

    /// Indices of generators vanishing at the origin.
    pub fn degenerate_generators(&self) -> Vec<usize> {
        self.generators
            .iter()
            .enumerate()
            .filter(|(_, g)| g.value_at_origin().iter().all(|c| c.is_zero()))
            .map(|(k, _)| k)
            .collect()
    }

    /// Whether the generator values at the origin are independent.
    pub fn is_regular(&self) -> bool {
        self.origin_rank() == self.generators.len()
    }

    pub fn with_order(&self, order: u32) -> Result<Self> {
        let ctx = self.ctx.with_order(order.min(self.ctx.order()));
        Ok(FoliationGerm {
            ctx,
            generators: self
                .generators
                .iter()
                .map(|g| g.recontext(ctx))
                .collect::<Result<_>>()?,
            declared_rank: self.declared_rank,
        })
    }

    pub fn contains(&self, v: &LogDerivation<F>) -> Result<Combination<F>> {
        let d = v.precision().min(self.generators.iter().map(|g| g.precision()).min().unwrap_or(0));
        solve_combination(&self.generators, v, d)
    }
}

impl<F: std::fmt::Display> std::fmt::Debug for FoliationGerm<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FoliationGerm")
            .field("generators", &self.generators)
            .field("declared_rank", &self.declared_rank)
            .finish()
    }
}

/// Result of solving `sum f_k g_k = w` for jets `f_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Combination<F: Field> {
    /// Coefficient jets when a solution exists through `checked_degree`.
    pub coefficients: Option<Vec<Jet<F>>>,
    /// First total degree at which the truncated system is inconsistent.
    pub failing_degree: Option<u32>,
    /// Highest total degree included in the check (`-1` if none).
    pub checked_degree: i32,
}

impl<F: Field> Combination<F> {
    pub fn is_member(&self) -> bool {
        self.coefficients.is_some()
    }
}

struct CombinationSystem<F> {
    matrix: Matrix<F>,
    rhs: Vec<F>,
    monomials: Vec<Vec<u32>>,
}

fn combination_system<F: Field>(
    gens: &[LogDerivation<F>],
    target: &LogDerivation<F>,
    max_degree: u32,
) -> CombinationSystem<F> {
    let ctx = target.context();
    let n = ctx.n();
    let monomials = ctx.monomials_up_to(max_degree);
    let index: HashMap<&Vec<u32>, usize> = monomials.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let m = monomials.len();
    let mut matrix = Matrix::zeros(n * m, gens.len() * m);
    for (k, g) in gens.iter().enumerate() {
        for (mi, mono) in monomials.iter().enumerate() {
            let x = Jet::monomial(ctx, mono.clone(), F::one());
            for s in 0..n {
                let prod = &x * g.slot(s);
                for (e, c) in prod.terms() {
                    if degree(e) <= max_degree {
                        matrix[(s * m + index[e], k * m + mi)] = c.clone();
                    }
                }
            }
        }
    }
    let mut rhs = vec![F::zero(); n * m];
    for s in 0..n {
        for (e, c) in target.slot(s).terms() {
            if degree(e) <= max_degree {
                rhs[s * m + index[e]] = c.clone();
            }
        }
    }
    CombinationSystem { matrix, rhs, monomials }
}

/// Solve `sum_k f_k g_k = target` through total degree `max_degree` by an
/// exact linear solve on coefficients. When the full system is inconsistent
/// the first failing degree is located.
pub fn solve_combination<F: Field>(
    gens: &[LogDerivation<F>],
    target: &LogDerivation<F>,
    max_degree: i32,
) -> Result<Combination<F>> {
    let ctx = target.context();
    if gens.iter().any(|g| g.context() != ctx) {
        return Err(Error::ContextMismatch("generators and target in different germs".into()));
    }
    if max_degree < 0 {
        return Ok(Combination {
            coefficients: Some(vec![Jet::zero(ctx).truncate(-1); gens.len()]),
            failing_degree: None,
            checked_degree: -1,
        });
    }
    let top = (max_degree as u32).min(ctx.order());
    let sys = combination_system(gens, target, top);
    if let Some(x) = sys.matrix.solve(&sys.rhs) {
        let m = sys.monomials.len();
        let coefficients = (0..gens.len())
            .map(|k| {
                Jet::from_terms(
                    ctx,
                    sys.monomials
                        .iter()
                        .enumerate()
                        .map(|(mi, e)| (e.clone(), x[k * m + mi].clone())),
                )
                .truncate(top as i32)
            })
            .collect();
        return Ok(Combination {
            coefficients: Some(coefficients),
            failing_degree: None,
            checked_degree: top as i32,
        });
    }
    let mut failing = top;
    for d in 0..top {
        let sys = combination_system(gens, target, d);
        if sys.matrix.solve(&sys.rhs).is_none() {
            failing = d;
            break;
        }
    }
    Ok(Combination {
        coefficients: None,
        failing_degree: Some(failing),
        checked_degree: top as i32,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutivityReport {
    pub decision: Decision,
    pub order: u32,
    /// `(i, j, degree)`: the bracket of generators `i` and `j` leaves the
    /// foliation at the given degree.
    pub failure: Option<(usize, usize, u32)>,
}

/// Whether every bracket of generators lies in the span of the generators,
/// checked through the precision of each bracket (at most `order`).
pub fn involutivity_check<F: Field>(f: &FoliationGerm<F>, order: u32) -> Result<InvolutivityReport> {
    let f = f.with_order(order)?;
    let gens = f.generators();
    let mut checked = f.context().order() as i32;
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let br = gens[i].lie_bracket(&gens[j])?;
            let comb = f.contains(&br)?;
            checked = checked.min(comb.checked_degree);
            if let Some(d) = comb.failing_degree {
                return Ok(InvolutivityReport {
                    decision: Decision::Fails,
                    order: d,
                    failure: Some((i, j, d)),
                });
            }
        }
    }
    if checked < 0 {
        return Err(Error::Inconclusive {
            order: f.context().order(),
            reason: "truncation too low to see any bracket coefficient".into(),
        });
    }
    let decision = if gens.len() > 1 && !f.is_regular() {
        Decision::Inconclusive
    } else {
        Decision::Holds
    };
    Ok(InvolutivityReport {
        decision,
        order: checked as u32,
        failure: None,
    })
}

#[derive(Clone, Debug)]
pub struct RestrictedFoliation<F: Field> {
    pub foliation: FoliationGerm<F>,
    /// Generators (by original index) that vanish identically on the
    /// component and were dropped.
    pub dead: Vec<usize>,
}

/// Restriction of `f` to the component `X_i = {x_i = 0}` (1-based `i`).
pub fn restrict_foliation<F: Field>(f: &FoliationGerm<F>, i: usize) -> Result<RestrictedFoliation<F>> {
    let r = f.context().r();
    if i == 0 || i > r {
        return Err(Error::IndexOutOfRange {
            index: i,
            range: format!("1..={r}"),
        });
    }
    let mut gens = Vec::new();
    let mut dead = Vec::new();
    for (k, g) in f.generators().iter().enumerate() {
        let h = g.restrict(i - 1)?;
        if h.is_zero() {
            dead.push(k);
        } else {
            gens.push(h);
        }
    }
    if gens.is_empty() {
        return Err(Error::Invalid(format!("every generator vanishes on component {i}")));
    }
    let rank = f.declared_rank().min(gens.len());
    Ok(RestrictedFoliation {
        foliation: FoliationGerm::new(gens, rank)?,
        dead,
    })
}

/// Local index on `X_i` of the global coordinate `g` (both 0-based, `g != i`).
fn local_index(i: usize, g: usize) -> usize {
    if g < i {
        g
    } else {
        g - 1
    }
}

/// Restriction of a field on `X_i` to the double stratum `D_ij` (0-based).
pub fn restrict_to_double<F: Field>(field: &LogDerivation<F>, i: usize, j: usize) -> Result<LogDerivation<F>> {
    field.restrict(local_index(i, j))
}

/// The scalar `c` with `e_i|_{D_ij} = c * e_j|_{D_ij}` for generators
/// `e_i` on `X_i` and `e_j` on `X_j` (0-based component indices).
pub fn glue_scalar<F: Field>(ei: &LogDerivation<F>, i: usize, ej: &LogDerivation<F>, j: usize) -> Result<F> {
    let a = restrict_to_double(ei, i, j)?;
    let b = restrict_to_double(ej, j, i)?;
    if a.context() != b.context() {
        return Err(Error::ContextMismatch(format!("restrictions to D_{}{} differ in shape", i + 1, j + 1)));
    }
    let mut scalar: Option<F> = None;
    for k in 0..a.context().n() {
        for (e, cb) in b.slot(k).terms() {
            let ca = a.slot(k).coeff(e);
            let c = ca / cb.clone();
            match &scalar {
                None => scalar = Some(c),
                Some(s) if *s == c => {}
                Some(_) => {
                    return Err(Error::Invalid(format!(
                        "restrictions to D_{}{} are not proportional by a constant",
                        i + 1,
                        j + 1
                    )))
                }
            }
        }
    }
    let s = scalar.ok_or_else(|| {
        Error::Invalid(format!("generator of component {} vanishes on D_{}{}", j + 1, i + 1, j + 1))
    })?;
    if s.is_zero() || !a.agrees_with(&b.scale(&s)) {
        return Err(Error::Invalid(format!(
            "restrictions to D_{}{} are not proportional by a nonzero constant",
            i + 1,
            j + 1
        )));
    }
    Ok(s)
}

/// Scalar identifications along double strata, with optional explicit
/// scalars on triple strata. Components are numbered from 1.
#[derive(Clone, Debug, PartialEq)]
pub struct SNCGlueData<F> {
    pub components: usize,
    /// `(i, j) -> phi_ij` with `i < j`; `phi_ji = phi_ij^{-1}`.
    pub double: BTreeMap<(usize, usize), F>,
    pub triple: Vec<TripleStratum<F>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TripleStratum<F> {
    pub indices: (usize, usize, usize),
    /// `(phi_ij, phi_jk, phi_ki)`; looked up from the double strata if absent.
    pub scalars: Option<[F; 3]>,
}

impl<F: Field> SNCGlueData<F> {
    pub fn new(components: usize) -> Self {
        SNCGlueData {
            components,
            double: BTreeMap::new(),
            triple: Vec::new(),
        }
    }

    /// Record `phi_ij`; stored normalized to `i < j`.
    pub fn set_double(&mut self, i: usize, j: usize, phi: F) -> Result<()> {
        self.check_index(i)?;
        self.check_index(j)?;
        if i == j {
            return Err(Error::Invalid(format!("double stratum ({i},{j}) needs distinct components")));
        }
        let inv = phi
            .inv()
            .ok_or_else(|| Error::Invalid(format!("identification scalar on D_{i}{j} is zero")))?;
        if i < j {
            self.double.insert((i, j), phi);
        } else {
            self.double.insert((j, i), inv);
        }
        Ok(())
    }

    pub fn add_triple(&mut self, i: usize, j: usize, k: usize, scalars: Option<[F; 3]>) -> Result<()> {
        for c in [i, j, k] {
            self.check_index(c)?;
        }
        if i == j || j == k || i == k {
            return Err(Error::Invalid(format!("triple stratum ({i},{j},{k}) needs distinct components")));
        }
        if let Some(s) = &scalars {
            if s.iter().any(|c| c.is_zero()) {
                return Err(Error::Invalid(format!("zero identification scalar on triple ({i},{j},{k})")));
            }
        }
        self.triple.push(TripleStratum {
            indices: (i, j, k),
            scalars,
        });
        Ok(())
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.components {
            Err(Error::IndexOutOfRange {
                index: i,
                range: format!("1..={}", self.components),
            })
        } else {
            Ok(())
        }
    }

    /// `phi_ij` for either orientation.
    pub fn phi(&self, i: usize, j: usize) -> Result<F> {
        if i < j {
            self.double.get(&(i, j)).cloned()
        } else {
            self.double.get(&(j, i)).and_then(|c| c.inv())
        }
        .ok_or_else(|| Error::MissingStratum(format!("no identification scalar on D_{i}{j}")))
    }

    /// Build glue data from one generator per component by restricting to
    /// every double stratum. All pairs of components meet, and every triple
    /// of components is a triple stratum.
    pub fn from_generators(gens: &[LogDerivation<F>]) -> Result<Self> {
        let mut g = SNCGlueData::new(gens.len());
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                let s = glue_scalar(&gens[i], i, &gens[j], j)?;
                g.set_double(i + 1, j + 1, s)?;
            }
        }
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                for k in j + 1..gens.len() {
                    g.add_triple(i + 1, j + 1, k + 1, None)?;
                }
            }
        }
        Ok(g)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CocycleFailure<F> {
    pub triple: (usize, usize, usize),
    pub product: F,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CocycleCertificate<F> {
    pub holds: bool,
    /// Product `phi_ij phi_jk phi_ki` for every triple stratum, in order.
    pub products: Vec<((usize, usize, usize), F)>,
    pub failures: Vec<CocycleFailure<F>>,
}

/// Around every triple stratum the three identification scalars must
/// multiply to one.
pub fn check_gluing_cocycle<F: Field>(glue: &SNCGlueData<F>) -> Result<CocycleCertificate<F>> {
    let mut products = Vec::new();
    let mut failures = Vec::new();
    for t in &glue.triple {
        let (i, j, k) = t.indices;
        let [a, b, c] = match &t.scalars {
            Some(s) => s.clone(),
            None => [glue.phi(i, j)?, glue.phi(j, k)?, glue.phi(k, i)?],
        };
        let p = a * b * c;
        if !p.is_one() {
            failures.push(CocycleFailure {
                triple: t.indices,
                product: p.clone(),
            });
        }
        products.push((t.indices, p));
    }
    Ok(CocycleCertificate {
        holds: failures.is_empty(),
        products,
        failures,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct PushoutReport<F: Field> {
    pub decision: Decision,
    pub order: u32,
    /// Per component: coefficients of the field in terms of the component
    /// generators, when it is a member.
    pub coefficients: Vec<Option<Vec<Jet<F>>>>,
    /// Components (1-based) where membership fails, with the failing degree.
    pub failures: Vec<(usize, u32)>,
}

/// Restrictions of a field on the crossing germ to each component.
pub fn restrict_to_components<F: Field>(v: &LogDerivation<F>) -> Result<Vec<LogDerivation<F>>> {
    (0..v.context().r()).map(|i| v.restrict(i)).collect()
}

/// Whether the field given by its component restrictions `fields[i]` lies
/// in the pushout of the component foliations.
pub fn pushout_membership<F: Field>(
    fields: &[LogDerivation<F>],
    foliations: &[FoliationGerm<F>],
) -> Result<PushoutReport<F>> {
    if fields.len() != foliations.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} component fields for {} component foliations",
            fields.len(),
            foliations.len()
        )));
    }
    for i in 0..fields.len() {
        for j in i + 1..fields.len() {
            let a = restrict_to_double(&fields[i], i, j)?;
            let b = restrict_to_double(&fields[j], j, i)?;
            if a.context() != b.context() || !a.agrees_with(&b) {
                return Err(Error::InconsistentRestriction((i + 1, j + 1)));
            }
        }
    }
    let mut coefficients = Vec::new();
    let mut failures = Vec::new();
    let mut order = u32::MAX;
    for (i, (v, f)) in fields.iter().zip(foliations).enumerate() {
        let comb = f.contains(v)?;
        order = order.min(comb.checked_degree.max(0) as u32);
        if let Some(d) = comb.failing_degree {
            failures.push((i + 1, d));
        }
        coefficients.push(comb.coefficients);
    }
    let decision = if !failures.is_empty() {
        Decision::Fails
    } else if foliations.iter().any(|f| f.generators().len() > 1 && !f.is_regular()) {
        Decision::Inconclusive
    } else {
        Decision::Holds
    };
    Ok(PushoutReport {
        decision,
        order: if order == u32::MAX { 0 } else { order },
        coefficients,
        failures,
    })
}

/// A 1-form `A dy + B dz` on a smooth surface germ with coordinates
/// `(y, z)`; the curve of interest is `{y = 0}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceForm<F: Field> {
    pub a: Jet<F>,
    pub b: Jet<F>,
}

impl<F: Field> SurfaceForm<F> {
    pub fn new(a: Jet<F>, b: Jet<F>) -> Result<Self> {
        let ctx = a.context();
        if ctx.n() != 2 || b.context() != ctx || ctx.is_crossing() {
            return Err(Error::InvalidContext("surface forms need a smooth germ in two variables".into()));
        }
        Ok(SurfaceForm { a, b })
    }

    /// The form `Q dy - P dz` annihilating `P d/dy + Q d/dz`.
    pub fn annihilating(p: &Jet<F>, q: &Jet<F>) -> Result<Self> {
        Self::new(q.clone(), p.neg())
    }

    pub fn context(&self) -> GermContext {
        self.a.context()
    }

    /// `A(0, z)` and `B(0, z)`, after checking that `{y = 0}` is invariant.
    pub fn on_curve(&self) -> Result<(Jet<F>, Jet<F>)> {
        let a0 = self.a.restrict(0)?;
        let b0 = self.b.restrict(0)?;
        if !b0.is_zero() {
            return Err(Error::NotInvariant(format!("B(0,z) = {} is not zero", b0)));
        }
        Ok((a0, b0))
    }
}

/// Vanishing order at `z = 0` of `A(0, z)`, the multiplicity of the origin
/// in the zero divisor of the normal part of the foliation along `{y = 0}`.
pub fn vanishing_divisor<F: Field>(omega: &SurfaceForm<F>) -> Result<u32> {
    let (a0, _) = omega.on_curve()?;
    a0.valuation().ok_or_else(|| Error::Inconclusive {
        order: omega.context().order(),
        reason: "A(0,z) vanishes to the truncation order".into(),
    })
}

/// A unit `u` with `q = u * p` in one variable, found by solving the
/// triangular system on coefficients. Known through degree
/// `order - valuation(p)`.
pub fn unit_quotient<F: Field>(p: &Jet<F>, q: &Jet<F>) -> Result<Option<Jet<F>>> {
    let ctx = p.context();
    if ctx.n() != 1 || q.context() != ctx {
        return Err(Error::InvalidContext("unit quotients are taken in one variable".into()));
    }
    let Some(v) = p.valuation() else {
        return Ok(None);
    };
    let d = ctx.order() as usize;
    // q_k = sum_{i+j=k} u_i p_j for k <= d, unknowns u_0..u_{d-v}
    let known = d - v as usize;
    let mut m = Matrix::zeros(d + 1, known + 1);
    for k in 0..=d {
        for i in 0..=k.min(known) {
            m[(k, i)] = p.coeff(&[(k - i) as u32]);
        }
    }
    let rhs: Vec<F> = (0..=d).map(|k| q.coeff(&[k as u32])).collect();
    let Some(u) = m.solve(&rhs) else {
        return Ok(None);
    };
    if u[0].is_zero() {
        return Ok(None);
    }
    let unit = Jet::from_terms(ctx, u.into_iter().enumerate().map(|(i, c)| (vec![i as u32], c)));
    Ok(Some(unit.truncate(known as i32)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio, Rat};

    fn c(ctx: GermContext, v: i64) -> Jet<Rat> {
        Jet::constant(ctx, int(v))
    }

    fn field(ctx: GermContext, slots: Vec<Jet<Rat>>) -> LogDerivation<Rat> {
        let r = ctx.r();
        LogDerivation::new(ctx, slots[..r].to_vec(), slots[r..].to_vec()).unwrap()
    }

    #[test]
    fn commuting_eulers_are_involutive() {
        let ctx = GermContext::normal_crossing(3, 2, 6).unwrap();
        let f = FoliationGerm::new(
            vec![LogDerivation::<Rat>::basis(ctx, 0), LogDerivation::basis(ctx, 1)],
            2,
        )
        .unwrap();
        let rep = involutivity_check(&f, 6).unwrap();
        assert_eq!(rep.decision, Decision::Holds);
    }

    #[test]
    fn rank_one_is_involutive() {
        let ctx = GermContext::normal_crossing(3, 2, 6).unwrap();
        let z = Jet::var(ctx, 2);
        let v = field(ctx, vec![c(ctx, 2), &z * &z, z.clone()]);
        let f = FoliationGerm::new(vec![v], 1).unwrap();
        assert_eq!(involutivity_check(&f, 6).unwrap().decision, Decision::Holds);
    }

    #[test]
    fn dy_and_y_dz_are_not_involutive() {
        let ctx = GermContext::normal_crossing(3, 1, 6).unwrap();
        let y = Jet::var(ctx, 1);
        let dy = LogDerivation::basis(ctx, 1);
        let ydz = field(ctx, vec![c(ctx, 0), c(ctx, 0), y]);
        let f = FoliationGerm::new(vec![dy, ydz], 2).unwrap();
        let rep = involutivity_check(&f, 6).unwrap();
        assert_eq!(rep.decision, Decision::Fails);
        assert_eq!(rep.failure, Some((0, 1, 0)));
    }

    fn baby(l1: i64, l2: i64) -> LogDerivation<Rat> {
        let ctx = GermContext::normal_crossing(3, 2, 6).unwrap();
        field(ctx, vec![c(ctx, l2), c(ctx, l1), Jet::var(ctx, 2)])
    }

    #[test]
    fn restriction_of_baby_field() {
        let f = FoliationGerm::new(vec![baby(3, -3)], 1).unwrap();
        let res = restrict_foliation(&f, 1).unwrap();
        let g = &res.foliation.generators()[0];
        assert_eq!(g.log_coeffs()[0].constant_term(), int(3));
        assert_eq!(g.smooth_coeffs()[0], Jet::var(g.context(), 1));
        assert!(res.dead.is_empty());
    }

    #[test]
    fn restriction_of_transverse_field_and_dead_generators() {
        let ctx = GermContext::normal_crossing(3, 2, 6).unwrap();
        let v = field(ctx, vec![c(ctx, 1), c(ctx, -1), c(ctx, 0)]);
        let x1 = Jet::var(ctx, 0);
        let dead = field(ctx, vec![c(ctx, 0), c(ctx, 0), x1]);
        let f = FoliationGerm::new(vec![v, dead], 2).unwrap();
        let res = restrict_foliation(&f, 1).unwrap();
        assert_eq!(res.dead, vec![1]);
        let g = &res.foliation.generators()[0];
        assert_eq!(g.log_coeffs()[0].constant_term(), int(-1));
        assert!(restrict_foliation(&f, 3).is_err());
    }

    fn triple_generators(lambda: Rat) -> Vec<LogDerivation<Rat>> {
        let ctx = GermContext::normal_crossing(3, 3, 4).unwrap();
        let comp = ctx.restricted(0).unwrap();
        let k = |v: i64| Jet::constant(comp, int(v));
        // X1 coords (y, z), X2 coords (x, z), X3 coords (x, y)
        let e1 = LogDerivation::new(comp, vec![k(1), k(-1)], vec![]).unwrap();
        let e2 = LogDerivation::new(comp, vec![k(1), k(-1)], vec![]).unwrap();
        let e3 = LogDerivation::new(comp, vec![k(1), Jet::constant(comp, lambda)], vec![]).unwrap();
        vec![e1, e2, e3]
    }

    #[test]
    fn triple_point_cocycle() {
        let ok = SNCGlueData::from_generators(&triple_generators(int(1))).unwrap();
        assert!(check_gluing_cocycle(&ok).unwrap().holds);
        let bad = SNCGlueData::from_generators(&triple_generators(int(2))).unwrap();
        let cert = check_gluing_cocycle(&bad).unwrap();
        assert!(!cert.holds);
        assert_eq!(cert.failures[0].product, int(2));
        assert_eq!(bad.phi(1, 2).unwrap(), int(1));
        assert_eq!(bad.phi(3, 1).unwrap(), int(2));
    }

    #[test]
    fn explicit_scalars_and_missing_strata() {
        let mut g = SNCGlueData::<Rat>::new(3);
        g.add_triple(1, 2, 3, Some([int(1), int(1), ratio(1, 2)])).unwrap();
        let cert = check_gluing_cocycle(&g).unwrap();
        assert_eq!(cert.failures[0].product, ratio(1, 2));
        let mut h = SNCGlueData::<Rat>::new(3);
        h.set_double(1, 2, int(1)).unwrap();
        h.add_triple(1, 2, 3, None).unwrap();
        assert!(matches!(check_gluing_cocycle(&h), Err(Error::MissingStratum(_))));
        let mut two = SNCGlueData::<Rat>::new(2);
        two.set_double(2, 1, int(5)).unwrap();
        assert_eq!(two.phi(1, 2).unwrap(), ratio(1, 5));
        assert!(check_gluing_cocycle(&two).unwrap().holds);
    }

    fn component_foliations(l1: i64, l2: i64) -> Vec<FoliationGerm<Rat>> {
        let comps = restrict_to_components(&baby(l1, l2)).unwrap();
        comps.into_iter().map(|v| FoliationGerm::new(vec![v], 1).unwrap()).collect()
    }

    #[test]
    fn pushout_of_baby_example() {
        let v = baby(2, -2);
        let fields = restrict_to_components(&v).unwrap();
        let rep = pushout_membership(&fields, &component_foliations(2, -2)).unwrap();
        assert_eq!(rep.decision, Decision::Holds);
    }

    #[test]
    fn pushout_of_transverse_rulings() {
        let ctx = GermContext::normal_crossing(3, 2, 6).unwrap();
        let v = field(ctx, vec![c(ctx, 1), c(ctx, -1), c(ctx, 0)]);
        let fields = restrict_to_components(&v).unwrap();
        let fols: Vec<_> = fields
            .iter()
            .map(|f| FoliationGerm::new(vec![LogDerivation::basis(f.context(), 0)], 1).unwrap())
            .collect();
        let rep = pushout_membership(&fields, &fols).unwrap();
        assert_eq!(rep.decision, Decision::Holds);
    }

    #[test]
    fn dz_is_not_in_level_foliations() {
        let ctx = GermContext::normal_crossing(3, 2, 6).unwrap();
        let dz = LogDerivation::<Rat>::basis(ctx, 2);
        let fields = restrict_to_components(&dz).unwrap();
        let fols: Vec<_> = fields
            .iter()
            .map(|f| FoliationGerm::new(vec![LogDerivation::basis(f.context(), 0)], 1).unwrap())
            .collect();
        let rep = pushout_membership(&fields, &fols).unwrap();
        assert_eq!(rep.decision, Decision::Fails);
        assert_eq!(rep.failures, vec![(1, 0), (2, 0)]);
    }

    #[test]
    fn inconsistent_component_fields() {
        let ctx = GermContext::normal_crossing(3, 2, 6).unwrap();
        let mut fields = restrict_to_components(&LogDerivation::<Rat>::basis(ctx, 2)).unwrap();
        fields[1] = fields[1].scale(&int(2));
        let fols = component_foliations(1, -1);
        assert_eq!(
            pushout_membership(&fields, &fols).unwrap_err(),
            Error::InconsistentRestriction((1, 2))
        );
    }

    fn surface(a: &[(u32, u32, i64)], b: &[(u32, u32, i64)]) -> SurfaceForm<Rat> {
        let ctx = GermContext::smooth(2, 0, 6).unwrap();
        let mk = |t: &[(u32, u32, i64)]| Jet::from_terms(ctx, t.iter().map(|&(i, j, c)| (vec![i, j], int(c))));
        SurfaceForm::new(mk(a), mk(b)).unwrap()
    }

    #[test]
    fn vanishing_orders() {
        assert_eq!(vanishing_divisor(&surface(&[(0, 1, 1)], &[(1, 0, -3)])).unwrap(), 1);
        assert_eq!(vanishing_divisor(&surface(&[(0, 0, 1)], &[])).unwrap(), 0);
        assert_eq!(vanishing_divisor(&surface(&[(0, 2, 1)], &[(1, 0, -1)])).unwrap(), 2);
        assert!(matches!(
            vanishing_divisor(&surface(&[(0, 0, 1)], &[(0, 1, 1)])),
            Err(Error::NotInvariant(_))
        ));
        assert!(matches!(
            vanishing_divisor(&surface(&[(1, 0, 1)], &[])),
            Err(Error::Inconclusive { .. })
        ));
    }

    #[test]
    fn unit_quotients() {
        let ctx = GermContext::smooth(1, 0, 5).unwrap();
        let z = Jet::<Rat>::var(ctx, 0);
        let p = &z * &z;
        let q = &(&z * &z) + &(&z * &(&z * &z));
        let u = unit_quotient(&p, &q).unwrap().unwrap();
        assert_eq!(u.constant_term(), int(1));
        assert!(unit_quotient(&p, &(&z * &(&z * &z))).unwrap().is_none());
        assert!(unit_quotient(&p, &z).unwrap().is_none());
    }
}
