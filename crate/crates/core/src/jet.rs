//! Truncated jets on a normal-crossing germ.
//!
//! The ring is `F[x_1, .., x_n] / (x_1 ... x_r)` truncated at a total
//! degree. A [`Jet`] additionally records its *precision*: the largest total
//! degree up to which its coefficients are known exactly. Differentiation by
//! a smooth coordinate lowers the precision by one, and every binary
//! operation takes the minimum, so results never claim more than they know.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Field;

pub type Exponent = Vec<u32>;

/// Coordinates `x_1..x_n` of a germ; the first `r` are the log
/// coordinates. On a normal-crossing germ the ring carries the relation
/// `x_1 ... x_r = 0`; on a smooth germ the first `r` coordinates only cut
/// out a simple normal crossing divisor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GermContext {
    n: usize,
    r: usize,
    order: u32,
    crossing: bool,
}

pub const DEFAULT_ORDER: u32 = 6;

impl GermContext {
    pub fn normal_crossing(n: usize, r: usize, order: u32) -> Result<Self> {
        if r == 0 || r > n {
            return Err(Error::InvalidContext(format!("need 1 <= r <= n, got n={n}, r={r}")));
        }
        if order == 0 {
            return Err(Error::InvalidContext("truncation order must be >= 1".into()));
        }
        Ok(GermContext {
            n,
            r,
            order,
            crossing: true,
        })
    }

    /// A smooth germ whose first `r` coordinates define the log divisor.
    pub fn smooth(n: usize, r: usize, order: u32) -> Result<Self> {
        if r > n {
            return Err(Error::InvalidContext(format!("need r <= n, got n={n}, r={r}")));
        }
        if order == 0 {
            return Err(Error::InvalidContext("truncation order must be >= 1".into()));
        }
        Ok(GermContext {
            n,
            r,
            order,
            crossing: false,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_crossing(&self) -> bool {
        self.crossing
    }

    pub fn with_order(&self, order: u32) -> Self {
        GermContext { order, ..*self }
    }

    /// Whether the monomial vanishes in the ring (divisible by `x_1..x_r`).
    pub fn kills(&self, e: &[u32]) -> bool {
        self.crossing && e[..self.r].iter().all(|&k| k >= 1)
    }

    /// Context of the hyperplane `{x_i = 0}` (0-based `i`).
    pub fn restricted(&self, i: usize) -> Result<Self> {
        if i >= self.n {
            return Err(Error::IndexOutOfRange {
                index: i + 1,
                range: format!("1..={}", self.n),
            });
        }
        if i < self.r {
            Ok(GermContext {
                n: self.n - 1,
                r: self.r - 1,
                order: self.order,
                crossing: false,
            })
        } else {
            let crossing = self.crossing && self.r >= 1;
            Ok(GermContext {
                n: self.n - 1,
                r: self.r,
                order: self.order,
                crossing,
            })
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ContextMismatch(format!("{self:?} vs {other:?}")))
        }
    }

    /// All surviving monomials of total degree exactly `d`.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Exponent> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.n];
        fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Exponent>) {
            if pos + 1 == cur.len() {
                cur[pos] = left;
                out.push(cur.clone());
                cur[pos] = 0;
                return;
            }
            for k in (0..=left).rev() {
                cur[pos] = k;
                rec(pos + 1, left - k, cur, out);
            }
            cur[pos] = 0;
        }
        if self.n == 0 {
            if d == 0 {
                out.push(Vec::new());
            }
            return out;
        }
        rec(0, d, &mut cur, &mut out);
        out.retain(|e| !self.kills(e));
        out
    }

    /// All surviving monomials of total degree `<= d`, by increasing degree.
    pub fn monomials_up_to(&self, d: u32) -> Vec<Exponent> {
        (0..=d).flat_map(|k| self.monomials_of_degree(k)).collect()
    }
}

pub fn degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

/// An untruncated sparse polynomial, as produced by the parser.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<F> {
    nvars: usize,
    terms: BTreeMap<Exponent, F>,
}

impl<F: Field> Poly<F> {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, F::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, F> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: Exponent, c: F) {
        add_into(&mut self.terms, e, c);
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::constant(self.nvars, F::one());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// The constant value if this polynomial has no variable terms.
    pub fn as_constant(&self) -> Option<F> {
        match self.terms.len() {
            0 => Some(F::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&k| k == 0).then(|| c.clone())
            }
            _ => None,
        }
    }
}

fn add_into<F: Field>(terms: &mut BTreeMap<Exponent, F>, e: Exponent, c: F) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(&e) {
        Some(v) => {
            let s = v.clone() + c;
            if s.is_zero() {
                terms.remove(&e);
            } else {
                *v = s;
            }
        }
        None => {
            terms.insert(e, c);
        }
    }
}

/// A truncated element of the germ ring.
#[derive(Clone, PartialEq)]
pub struct Jet<F> {
    ctx: GermContext,
    /// Coefficients are exact for total degree `<= prec`; `-1` means
    /// nothing is known.
    prec: i32,
    terms: BTreeMap<Exponent, F>,
}

impl<F: Field> Jet<F> {
    pub fn zero(ctx: GermContext) -> Self {
        Jet {
            ctx,
            prec: ctx.order as i32,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: GermContext, c: F) -> Self {
        let mut j = Self::zero(ctx);
        add_into(&mut j.terms, vec![0; ctx.n], c);
        j
    }

    pub fn one(ctx: GermContext) -> Self {
        Self::constant(ctx, F::one())
    }

    /// The coordinate `x_{i+1}` (0-based `i`).
    pub fn var(ctx: GermContext, i: usize) -> Self {
        let mut e = vec![0; ctx.n];
        e[i] = 1;
        Self::monomial(ctx, e, F::one())
    }

    pub fn monomial(ctx: GermContext, e: Exponent, c: F) -> Self {
        Self::from_terms(ctx, [(e, c)])
    }

    /// Normal form of a list of terms: drops monomials divisible by
    /// `x_1..x_r` and monomials above the truncation order.
    pub fn from_terms(ctx: GermContext, terms: impl IntoIterator<Item = (Exponent, F)>) -> Self {
        let mut j = Self::zero(ctx);
        for (e, c) in terms {
            assert_eq!(e.len(), ctx.n, "exponent length must equal n");
            if degree(&e) <= ctx.order && !ctx.kills(&e) {
                add_into(&mut j.terms, e, c);
            }
        }
        j
    }

    pub fn normal_form(raw: &Poly<F>, ctx: GermContext) -> Result<Self> {
        if raw.nvars != ctx.n {
            return Err(Error::ContextMismatch(format!(
                "polynomial has {} variables, germ has {}",
                raw.nvars, ctx.n
            )));
        }
        Ok(Self::from_terms(ctx, raw.terms.clone()))
    }

    pub fn context(&self) -> GermContext {
        self.ctx
    }

    pub fn precision(&self) -> i32 {
        self.prec
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, F> {
        &self.terms
    }

    pub fn coeff(&self, e: &[u32]) -> F {
        self.terms.get(e).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> F {
        self.coeff(&vec![0; self.ctx.n])
    }

    /// Lowest total degree carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<u32> {
        self.terms.keys().map(|e| degree(e)).min()
    }

    /// Drop everything above total degree `prec`.
    pub fn truncate(&self, prec: i32) -> Self {
        let prec = prec.min(self.prec);
        Jet {
            ctx: self.ctx,
            prec,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| (degree(e) as i32) <= prec)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Equality of the parts both operands know.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let p = self.prec.min(other.prec);
        self.ctx == other.ctx && self.truncate(p).terms == other.truncate(p).terms
    }

    pub fn homogeneous_part(&self, d: u32) -> Self {
        Jet {
            ctx: self.ctx,
            prec: self.prec,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| degree(e) == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.ctx.check_same(&other.ctx)?;
        let prec = self.prec.min(other.prec);
        let mut terms = BTreeMap::new();
        for (e, c) in self.terms.iter().chain(&other.terms) {
            if degree(e) as i32 <= prec {
                add_into(&mut terms, e.clone(), c.clone());
            }
        }
        Ok(Jet {
            ctx: self.ctx,
            prec,
            terms,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.ctx.check_same(&other.ctx)?;
        let prec = self.prec.min(other.prec);
        let mut terms = BTreeMap::new();
        for (ea, ca) in &self.terms {
            let da = degree(ea) as i32;
            if da > prec {
                continue;
            }
            for (eb, cb) in &other.terms {
                if da + degree(eb) as i32 > prec {
                    continue;
                }
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                if !self.ctx.kills(&e) {
                    add_into(&mut terms, e, ca.clone() * cb.clone());
                }
            }
        }
        Ok(Jet {
            ctx: self.ctx,
            prec,
            terms,
        })
    }

    pub fn neg(&self) -> Self {
        Jet {
            ctx: self.ctx,
            prec: self.prec,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        if s.is_zero() {
            return Jet {
                terms: BTreeMap::new(),
                ..self.clone()
            };
        }
        Jet {
            ctx: self.ctx,
            prec: self.prec,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.clone() * s.clone()))
                .collect(),
        }
    }

    /// `x_i * d/dx_i`, well defined on the crossing ring for every `i`.
    pub fn euler(&self, i: usize) -> Self {
        Jet {
            ctx: self.ctx,
            prec: self.prec,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[i] > 0)
                .map(|(e, c)| (e.clone(), c.clone() * F::from_i64(e[i] as i64)))
                .collect(),
        }
    }

    /// `d/dx_i`. On a crossing germ only the smooth coordinates (`i >= r`)
    /// give a derivation of the ring.
    pub fn partial(&self, i: usize) -> Result<Self> {
        if self.ctx.crossing && i < self.ctx.r {
            return Err(Error::Invalid(format!(
                "d/dx{} does not preserve the crossing ideal; use x{}*d/dx{}",
                i + 1,
                i + 1,
                i + 1
            )));
        }
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            add_into(&mut terms, e2, c.clone() * F::from_i64(e[i] as i64));
        }
        Ok(Jet {
            ctx: self.ctx,
            prec: self.prec - 1,
            terms,
        })
    }

    /// Divide by `x_i` when every monomial is divisible by it.
    pub fn divide_by_var(&self, i: usize) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                return None;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            terms.insert(e2, c.clone());
        }
        Some(Jet {
            ctx: self.ctx,
            prec: self.prec - 1,
            terms,
        })
    }

    /// Substitute `x_i = 0` and drop the coordinate.
    pub fn restrict(&self, i: usize) -> Result<Self> {
        let ctx = self.ctx.restricted(i)?;
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[i] == 0)
            .map(|(e, c)| {
                let mut e2 = e.clone();
                e2.remove(i);
                (e2, c.clone())
            });
        let mut j = Self::from_terms(ctx, terms);
        j.prec = self.prec;
        Ok(j)
    }

    /// Restriction to the component `X_i = {x_i = 0}`, `i` 1-based.
    pub fn restrict_to_component(&self, i: usize) -> Result<Self> {
        if i == 0 || i > self.ctx.r {
            return Err(Error::IndexOutOfRange {
                index: i,
                range: format!("1..={}", self.ctx.r),
            });
        }
        self.restrict(i - 1)
    }

    /// Same coefficients, seen in another context with the same `n`.
    pub fn recontext(&self, ctx: GermContext) -> Result<Self> {
        if ctx.n != self.ctx.n {
            return Err(Error::ContextMismatch("number of variables differs".into()));
        }
        let mut j = Self::from_terms(ctx, self.terms.clone());
        j.prec = self.prec.min(ctx.order as i32);
        Ok(j)
    }

    pub fn is_unit(&self) -> bool {
        !self.constant_term().is_zero()
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| {
                    let name = names.get(i).cloned().unwrap_or_else(|| format!("x{}", i + 1));
                    if p == 1 {
                        name
                    } else {
                        format!("{name}^{p}")
                    }
                })
                .collect();
            let cs = c.to_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) if !rest.contains(['+', '-']) => (true, rest.to_string()),
                _ => (false, cs.clone()),
            };
            let term = if mono.is_empty() {
                mag
            } else if mag == "1" {
                mono.join("*")
            } else if mag.contains(['+', '-']) {
                format!("({mag})*{}", mono.join("*"))
            } else {
                format!("{mag}*{}", mono.join("*"))
            };
            match (k, neg) {
                (0, true) => out.push_str(&format!("-{term}")),
                (0, false) => out.push_str(&term),
                (_, true) => out.push_str(&format!(" - {term}")),
                (_, false) => out.push_str(&format!(" + {term}")),
            }
        }
        out
    }
}

impl<F: Field> fmt::Display for Jet<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&[]))
    }
}

impl<F: fmt::Display> fmt::Debug for Jet<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Jet(")?;
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*x^{e:?}")?;
        }
        write!(f, " + O(deg {}))", self.prec + 1)
    }
}

macro_rules! jet_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl<F: Field> std::ops::$tr<&Jet<F>> for &Jet<F> {
            type Output = Jet<F>;
            fn $method(self, rhs: &Jet<F>) -> Jet<F> {
                self.$inner(rhs).expect("jet operands live in different germs")
            }
        }
        impl<F: Field> std::ops::$tr<Jet<F>> for Jet<F> {
            type Output = Jet<F>;
            fn $method(self, rhs: Jet<F>) -> Jet<F> {
                self.$inner(&rhs).expect("jet operands live in different germs")
            }
        }
    };
}

jet_binop!(Add, add, try_add);
jet_binop!(Sub, sub, try_sub);
jet_binop!(Mul, mul, try_mul);

impl<F: Field> std::ops::Neg for &Jet<F> {
    type Output = Jet<F>;
    fn neg(self) -> Jet<F> {
        Jet::neg(self)
    }
}

/// A jet with nonzero constant term.
#[derive(Clone, PartialEq)]
pub struct UnitJet<F>(Jet<F>);

impl<F: fmt::Display> fmt::Debug for UnitJet<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UnitJet({:?})", self.0)
    }
}

impl<F: Field> UnitJet<F> {
    pub fn new(j: Jet<F>) -> Result<Self> {
        if j.is_unit() {
            Ok(UnitJet(j))
        } else {
            Err(Error::NotAUnit)
        }
    }

    pub fn one(ctx: GermContext) -> Self {
        UnitJet(Jet::one(ctx))
    }

    pub fn jet(&self) -> &Jet<F> {
        &self.0
    }

    pub fn into_jet(self) -> Jet<F> {
        self.0
    }

    /// `u^{-1}` to the precision of `u`, by Newton-free recursion on the
    /// homogeneous parts: `w_0 = 1/u_0`, `w_d = -w_0 * sum_{k>=1} u_k w_{d-k}`.
    pub fn invert(&self) -> UnitJet<F> {
        let u = &self.0;
        let ctx = u.ctx;
        let prec = u.prec.max(0) as u32;
        let u0_inv = u.constant_term().inv().expect("unit has nonzero constant term");
        let parts: Vec<Jet<F>> = (0..=prec).map(|d| u.homogeneous_part(d)).collect();
        let mut w_parts: Vec<Jet<F>> = vec![Jet::constant(ctx, u0_inv.clone())];
        for d in 1..=prec {
            let mut acc = Jet::zero(ctx);
            for k in 1..=d {
                let prod = &parts[k as usize] * &w_parts[(d - k) as usize];
                acc = &acc + &prod.homogeneous_part(d);
            }
            w_parts.push(acc.scale(&(-u0_inv.clone())));
        }
        let mut w = Jet::zero(ctx);
        for p in w_parts {
            w = &w + &p;
        }
        w.prec = u.prec;
        UnitJet(w.truncate(u.prec))
    }

    pub fn restrict_to_component(&self, i: usize) -> Result<Self> {
        UnitJet::new(self.0.restrict_to_component(i)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio, Rat};

    fn ctx(n: usize, r: usize, order: u32) -> GermContext {
        GermContext::normal_crossing(n, r, order).unwrap()
    }

    fn x(c: GermContext, i: usize) -> Jet<Rat> {
        Jet::var(c, i)
    }

    #[test]
    fn crossing_generator_dies() {
        let c = ctx(3, 2, 4);
        let one = Jet::<Rat>::one(c);
        let prod = &(&x(c, 0) * &x(c, 1)) * &(&one + &x(c, 0));
        assert!(prod.is_zero());
    }

    #[test]
    fn normal_form_keeps_normal_polys() {
        let c = ctx(2, 2, 3);
        let mut raw = Poly::<Rat>::zero(2);
        raw.add_term(vec![2, 0], int(1));
        raw.add_term(vec![0, 1], int(1));
        let j = Jet::normal_form(&raw, c).unwrap();
        assert_eq!(j.terms().len(), 2);
        assert_eq!(Jet::normal_form(&Poly::<Rat>::zero(2), c).unwrap(), Jet::zero(c));
    }

    #[test]
    fn product_of_units_drops_cross_term() {
        let c = ctx(2, 2, 3);
        let one = Jet::<Rat>::one(c);
        let p = &(&one + &x(c, 0)) * &(&one + &x(c, 1));
        assert_eq!(p, &(&one + &x(c, 0)) + &x(c, 1));
    }

    #[test]
    fn smooth_coordinate_product() {
        let c = ctx(3, 2, 2);
        let one = Jet::<Rat>::one(c);
        let z = x(c, 2);
        let p = &(&one + &z) * &(&one - &z);
        assert_eq!(p, &one - &(&z * &z));
    }

    #[test]
    fn invert_geometric_series() {
        let c = ctx(3, 2, 3);
        let one = Jet::<Rat>::one(c);
        let z = x(c, 2);
        let u = UnitJet::new(&one + &z).unwrap();
        let w = u.invert();
        let z2 = &z * &z;
        let expect = &(&(&one - &z) + &z2) - &(&z2 * &z);
        assert_eq!(w.jet(), &expect);
        let two = UnitJet::new(Jet::constant(c, int::<Rat>(2))).unwrap();
        assert_eq!(two.invert().jet(), &Jet::constant(c, ratio(1, 2)));
        assert_eq!(UnitJet::one(c).invert(), UnitJet::<Rat>::one(c));
        assert!(UnitJet::new(z).is_err());
    }

    #[test]
    fn restriction_examples() {
        let c = ctx(3, 2, 4);
        let one = Jet::<Rat>::one(c);
        let r = (&x(c, 0) + &x(c, 1)).restrict_to_component(1).unwrap();
        assert_eq!(r, Jet::var(r.context(), 0));
        let u = &one + &(&x(c, 0) * &x(c, 2));
        assert_eq!(u.restrict_to_component(1).unwrap(), Jet::one(r.context()));
        let v = UnitJet::new(&one + &x(c, 0)).unwrap();
        assert_eq!(v.restrict_to_component(1).unwrap().jet(), &Jet::one(r.context()));
        assert_eq!(r.context().n(), 2);
        assert_eq!(r.context().r(), 1);
        assert!(x(c, 0).restrict_to_component(3).is_err());
        assert!(x(c, 0).restrict_to_component(0).is_err());
    }

    #[test]
    fn partial_lowers_precision() {
        let c = ctx(3, 2, 4);
        let z = x(c, 2);
        let d = (&z * &z).partial(2).unwrap();
        assert_eq!(d.precision(), 3);
        assert_eq!(d, z.scale(&int(2)).truncate(3));
        assert!(z.partial(0).is_err());
    }

    #[test]
    fn monomial_enumeration_respects_relation() {
        let c = ctx(2, 2, 3);
        let m = c.monomials_up_to(3);
        // 1, x, y, x^2, y^2, x^3, y^3
        assert_eq!(m.len(), 7);
    }

    #[test]
    fn mismatched_contexts() {
        let a = Jet::<Rat>::one(ctx(2, 1, 3));
        let b = Jet::<Rat>::one(ctx(2, 2, 3));
        assert!(matches!(a.try_mul(&b), Err(Error::ContextMismatch(_))));
    }
}
