//! Log derivations and log 1-forms on the semistable local model.
//!
//! A log derivation is stored in the basis `x_1 d/dx_1, .., x_r d/dx_r,
//! d/dx_{r+1}, .., d/dx_n` of the log tangent module. Its monoid part is
//! never stored: on the chart `e_i -> x_i / u_i` it is recovered as
//! `delta(e_i) = b_i - v(u_i)/u_i`, see [`LogDerivation::delta`].

use std::fmt;

use crate::error::{Error, Result};
use crate::jet::{GermContext, Jet, Poly, UnitJet};
use crate::scalar::Field;

#[derive(Clone, PartialEq)]
pub struct LogDerivation<F> {
    ctx: GermContext,
    /// coefficients of `x_i d/dx_i`, `i < r`
    b: Vec<Jet<F>>,
    /// coefficients of `d/dx_j`, `j >= r`
    a: Vec<Jet<F>>,
}

/// Outcome of a jet-level identity check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JetCheck {
    pub holds: bool,
    /// Highest total degree at which the identity was checked.
    pub order: i32,
}

impl<F: Field> LogDerivation<F> {
    pub fn new(ctx: GermContext, b: Vec<Jet<F>>, a: Vec<Jet<F>>) -> Result<Self> {
        if b.len() != ctx.r() || a.len() != ctx.n() - ctx.r() {
            return Err(Error::ShapeMismatch(format!(
                "log derivation needs {} log and {} smooth coefficients, got {} and {}",
                ctx.r(),
                ctx.n() - ctx.r(),
                b.len(),
                a.len()
            )));
        }
        if let Some(j) = b.iter().chain(&a).find(|j| j.context() != ctx) {
            return Err(Error::ContextMismatch(format!(
                "coefficient lives in {:?}, derivation in {ctx:?}",
                j.context()
            )));
        }
        Ok(LogDerivation { ctx, b, a })
    }

    pub fn zero(ctx: GermContext) -> Self {
        LogDerivation {
            ctx,
            b: vec![Jet::zero(ctx); ctx.r()],
            a: vec![Jet::zero(ctx); ctx.n() - ctx.r()],
        }
    }

    /// The `k`-th basis field (0-based): `x_k d/dx_k` for `k < r`, else
    /// `d/dx_k`.
    pub fn basis(ctx: GermContext, k: usize) -> Self {
        let mut d = Self::zero(ctx);
        *d.slot_mut(k) = Jet::one(ctx);
        d
    }

    /// From the coefficients `c_k` of `d/dx_k` of an ordinary vector field.
    /// For log coordinates `c_k` must be divisible by `x_k`.
    pub fn from_vector_field(ctx: GermContext, coeffs: &[Poly<F>]) -> Result<Self> {
        if coeffs.len() != ctx.n() {
            return Err(Error::ShapeMismatch(format!(
                "expected {} coefficients, got {}",
                ctx.n(),
                coeffs.len()
            )));
        }
        let mut b = Vec::with_capacity(ctx.r());
        let mut a = Vec::with_capacity(ctx.n() - ctx.r());
        for (k, c) in coeffs.iter().enumerate() {
            let jet = Jet::normal_form(c, ctx)?;
            if k < ctx.r() {
                let mut q = Poly::zero(ctx.n());
                for (e, v) in c.terms() {
                    let mut e2 = e.clone();
                    if e2[k] == 0 {
                        if ctx.kills(e) || jet.coeff(e).is_zero() {
                            continue;
                        }
                        return Err(Error::Invalid(format!(
                            "coefficient of d/dx{} is not divisible by x{}; the field does not preserve the divisor",
                            k + 1,
                            k + 1
                        )));
                    }
                    e2[k] -= 1;
                    q.add_term(e2, v.clone());
                }
                b.push(Jet::normal_form(&q, ctx)?);
            } else {
                a.push(jet);
            }
        }
        Self::new(ctx, b, a)
    }

    pub fn context(&self) -> GermContext {
        self.ctx
    }

    pub fn log_coeffs(&self) -> &[Jet<F>] {
        &self.b
    }

    pub fn smooth_coeffs(&self) -> &[Jet<F>] {
        &self.a
    }

    /// Coefficient of the `k`-th basis field.
    pub fn slot(&self, k: usize) -> &Jet<F> {
        if k < self.ctx.r() {
            &self.b[k]
        } else {
            &self.a[k - self.ctx.r()]
        }
    }

    fn slot_mut(&mut self, k: usize) -> &mut Jet<F> {
        let r = self.ctx.r();
        if k < r {
            &mut self.b[k]
        } else {
            &mut self.a[k - r]
        }
    }

    pub fn slots(&self) -> impl Iterator<Item = &Jet<F>> {
        self.b.iter().chain(&self.a)
    }

    pub fn precision(&self) -> i32 {
        self.slots()
            .map(|j| j.precision())
            .min()
            .unwrap_or(self.ctx.order() as i32)
    }

    pub fn is_zero(&self) -> bool {
        self.slots().all(|j| j.is_zero())
    }

    pub fn truncate(&self, prec: i32) -> Self {
        LogDerivation {
            ctx: self.ctx,
            b: self.b.iter().map(|j| j.truncate(prec)).collect(),
            a: self.a.iter().map(|j| j.truncate(prec)).collect(),
        }
    }

    pub fn agrees_with(&self, other: &Self) -> bool {
        self.slots().zip(other.slots()).all(|(x, y)| x.agrees_with(y))
    }

    /// Values of all basis coefficients at the origin.
    pub fn value_at_origin(&self) -> Vec<F> {
        self.slots().map(|j| j.constant_term()).collect()
    }

    /// `sum_i b_i`
    pub fn log_trace(&self) -> Jet<F> {
        self.b.iter().fold(Jet::zero(self.ctx), |acc, j| &acc + j)
    }

    /// The underlying derivation applied to a function.
    pub fn apply(&self, f: &Jet<F>) -> Result<Jet<F>> {
        if f.context() != self.ctx {
            return Err(Error::ContextMismatch("function and field live in different germs".into()));
        }
        let r = self.ctx.r();
        let mut acc = Jet::zero(self.ctx);
        for (i, bi) in self.b.iter().enumerate() {
            if !bi.is_zero() {
                acc = &acc + &(bi * &f.euler(i));
            }
        }
        for (j, aj) in self.a.iter().enumerate() {
            if !aj.is_zero() {
                acc = &acc + &(aj * &f.partial(r + j)?);
            }
        }
        Ok(acc)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch("derivations in different germs".into()));
        }
        Ok(LogDerivation {
            ctx: self.ctx,
            b: self.b.iter().zip(&other.b).map(|(x, y)| x + y).collect(),
            a: self.a.iter().zip(&other.a).map(|(x, y)| x + y).collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&(-F::one())))
    }

    pub fn scale(&self, s: &F) -> Self {
        LogDerivation {
            ctx: self.ctx,
            b: self.b.iter().map(|j| j.scale(s)).collect(),
            a: self.a.iter().map(|j| j.scale(s)).collect(),
        }
    }

    /// `f * theta`
    pub fn mul_function(&self, f: &Jet<F>) -> Result<Self> {
        if f.context() != self.ctx {
            return Err(Error::ContextMismatch("function and field live in different germs".into()));
        }
        Ok(LogDerivation {
            ctx: self.ctx,
            b: self.b.iter().map(|j| f * j).collect(),
            a: self.a.iter().map(|j| f * j).collect(),
        })
    }

    /// `([v_1, v_2], v_1 delta_2 - v_2 delta_1)` in the log basis. The basis
    /// fields commute, so the bracket acts slot by slot.
    pub fn lie_bracket(&self, other: &Self) -> Result<Self> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch("bracket of derivations in different germs".into()));
        }
        let mut out = Self::zero(self.ctx);
        for k in 0..self.ctx.n() {
            let s = &self.apply(other.slot(k))? - &other.apply(self.slot(k))?;
            *out.slot_mut(k) = s;
        }
        Ok(out)
    }

    /// `delta(e_i) = b_i - v(u_i) / u_i` on the chart `e_i -> x_i / u_i`.
    pub fn delta(&self, units: &[UnitJet<F>]) -> Result<Vec<Jet<F>>> {
        if units.len() != self.ctx.r() {
            return Err(Error::ShapeMismatch(format!(
                "expected {} chart units, got {}",
                self.ctx.r(),
                units.len()
            )));
        }
        self.b
            .iter()
            .zip(units)
            .map(|(bi, u)| {
                let vu = self.apply(u.jet())?;
                Ok(bi - &(&vu * u.invert().jet()))
            })
            .collect()
    }

    /// Restriction to the hyperplane `{x_k = 0}` of a log coordinate
    /// (0-based `k < r`): the `x_k d/dx_k` slot is dropped and every other
    /// coefficient is restricted.
    pub fn restrict(&self, k: usize) -> Result<Self> {
        if k >= self.ctx.r() {
            return Err(Error::IndexOutOfRange {
                index: k + 1,
                range: format!("1..={}", self.ctx.r()),
            });
        }
        let ctx = self.ctx.restricted(k)?;
        let b = self
            .b
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .map(|(_, j)| j.restrict(k))
            .collect::<Result<Vec<_>>>()?;
        let a = self
            .a
            .iter()
            .map(|j| j.restrict(k))
            .collect::<Result<Vec<_>>>()?;
        LogDerivation::new(ctx, b, a)
    }

    /// Same field with coefficients moved to an equal-shape context
    /// (changing only the truncation order or the crossing flag).
    pub fn recontext(&self, ctx: GermContext) -> Result<Self> {
        if ctx.n() != self.ctx.n() || ctx.r() != self.ctx.r() {
            return Err(Error::ContextMismatch("shape differs".into()));
        }
        LogDerivation::new(
            ctx,
            self.b.iter().map(|j| j.recontext(ctx)).collect::<Result<_>>()?,
            self.a.iter().map(|j| j.recontext(ctx)).collect::<Result<_>>()?,
        )
    }

    pub fn display_with(&self, names: &[String]) -> String {
        let name = |i: usize| names.get(i).cloned().unwrap_or_else(|| format!("x{}", i + 1));
        let mut parts = Vec::new();
        for k in 0..self.ctx.n() {
            let c = self.slot(k);
            if c.is_zero() {
                continue;
            }
            let basis = if k < self.ctx.r() {
                format!("{}*d{}", name(k), name(k))
            } else {
                format!("d{}", name(k))
            };
            parts.push(format!("({})*{}", c.display_with(names), basis));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl<F: fmt::Display> fmt::Debug for LogDerivation<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LogDerivation(b: {:?}, a: {:?})", self.b, self.a)
    }
}

/// `v(u) - (sum_i b_i) u = 0`: membership in the tangent sheaf relative to
/// the standard log point, for the chart with total unit `u`.
pub fn in_relative_tangent<F: Field>(theta: &LogDerivation<F>, u: &UnitJet<F>) -> Result<JetCheck> {
    let lhs = &theta.apply(u.jet())? - &(&theta.log_trace() * u.jet());
    Ok(JetCheck {
        holds: lhs.is_zero(),
        order: lhs.precision(),
    })
}

/// A log 1-form `sum a_i dx_i/x_i + sum c_j dx_j`.
///
/// The coefficients are stored as given, i.e. as an absolute log form. In the
/// relative module the relation `sum dx_i/x_i = du/u` identifies forms; use
/// [`LogOneForm::canonical`] to compare relative classes.
#[derive(Clone, PartialEq)]
pub struct LogOneForm<F> {
    ctx: GermContext,
    dlog: Vec<Jet<F>>,
    regular: Vec<Jet<F>>,
}

impl<F: Field> LogOneForm<F> {
    pub fn new(ctx: GermContext, dlog: Vec<Jet<F>>, regular: Vec<Jet<F>>) -> Result<Self> {
        if dlog.len() != ctx.r() || regular.len() != ctx.n() - ctx.r() {
            return Err(Error::ShapeMismatch(format!(
                "log form needs {} dlog and {} regular coefficients",
                ctx.r(),
                ctx.n() - ctx.r()
            )));
        }
        if dlog.iter().chain(&regular).any(|j| j.context() != ctx) {
            return Err(Error::ContextMismatch("form coefficient in another germ".into()));
        }
        Ok(LogOneForm { ctx, dlog, regular })
    }

    pub fn context(&self) -> GermContext {
        self.ctx
    }

    pub fn dlog_coeffs(&self) -> &[Jet<F>] {
        &self.dlog
    }

    pub fn regular_coeffs(&self) -> &[Jet<F>] {
        &self.regular
    }

    /// `<omega, theta> = sum a_i b_i + sum c_j a_j`.
    pub fn contract(&self, theta: &LogDerivation<F>) -> Result<Jet<F>> {
        if theta.context() != self.ctx {
            return Err(Error::ContextMismatch("form and field live in different germs".into()));
        }
        let mut acc = Jet::zero(self.ctx);
        for (w, t) in self.dlog.iter().zip(theta.log_coeffs()) {
            acc = &acc + &(w * t);
        }
        for (w, t) in self.regular.iter().zip(theta.smooth_coeffs()) {
            acc = &acc + &(w * t);
        }
        Ok(acc)
    }

    /// Representative with vanishing last dlog coefficient, obtained by
    /// subtracting a multiple of `sum dx_i/x_i - du/u`. Identity on smooth
    /// germs, where there is no relation.
    pub fn canonical(&self, u: &UnitJet<F>) -> Result<Self> {
        if !self.ctx.is_crossing() {
            return Ok(self.clone());
        }
        let r = self.ctx.r();
        let uinv = u.invert();
        let rel_dlog: Vec<Jet<F>> = (0..r)
            .map(|i| &Jet::one(self.ctx) - &(&u.jet().euler(i) * uinv.jet()))
            .collect();
        let rel_reg: Vec<Jet<F>> = (r..self.ctx.n())
            .map(|j| Ok(-&(&u.jet().partial(j)? * uinv.jet())))
            .collect::<Result<_>>()?;
        let pivot = UnitJet::new(rel_dlog[r - 1].clone())?;
        let f = &self.dlog[r - 1] * pivot.invert().jet();
        let dlog = self
            .dlog
            .iter()
            .zip(&rel_dlog)
            .map(|(a, rel)| a - &(&f * rel))
            .collect();
        let regular = self
            .regular
            .iter()
            .zip(&rel_reg)
            .map(|(c, rel)| c - &(&f * rel))
            .collect();
        LogOneForm::new(self.ctx, dlog, regular)
    }

    /// Equality as classes of relative log forms.
    pub fn equivalent(&self, other: &Self, u: &UnitJet<F>) -> Result<bool> {
        let a = self.canonical(u)?;
        let b = other.canonical(u)?;
        Ok(a.dlog.iter().chain(&a.regular).zip(b.dlog.iter().chain(&b.regular)).all(|(x, y)| x.agrees_with(y)))
    }
}

impl<F: fmt::Display> fmt::Debug for LogOneForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LogOneForm(dlog: {:?}, regular: {:?})", self.dlog, self.regular)
    }
}
