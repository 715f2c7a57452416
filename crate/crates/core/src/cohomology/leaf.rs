//! Čech double complexes of a complex of sheaves on a finite cover, their
//! hypercohomology, and the degree-2 obstruction equations.
//!
//! `C^{p,q}` collects the degree-`q` sections over the `(p+1)`-fold
//! intersections. The Čech differential is
//! `(δ̂c)_τ = Σ_i (-1)^i c_{τ∖τ_i}|_τ`, the vertical one is the sheaf
//! differential `δ` applied on each intersection, and the total differential
//! is `D = δ̂ + (-1)^p δ`.

use std::collections::BTreeMap;

use rand::Rng;

use super::p1::{overlap_range, GradedBundleP1};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Field;

/// Finite Čech data for a complex of sheaves `L^0 -> L^1 -> ...`.
#[derive(Clone, Debug)]
pub struct CechLeafData<F: Field> {
    opens: usize,
    simplices: Vec<Vec<usize>>,
    index: BTreeMap<Vec<usize>, usize>,
    columns: usize,
    dims: Vec<Vec<usize>>,
    restriction: BTreeMap<(usize, usize), Vec<Matrix<F>>>,
    ce: Vec<Vec<Matrix<F>>>,
}

fn faces_closure(opens: usize, maximal: &[Vec<usize>]) -> Result<Vec<Vec<usize>>> {
    let mut all = std::collections::BTreeSet::new();
    for s in maximal {
        let mut s = s.clone();
        s.sort_unstable();
        s.dedup();
        if s.is_empty() {
            return Err(Error::Invalid("empty simplex in the nerve".into()));
        }
        if let Some(&v) = s.iter().find(|&&v| v >= opens) {
            return Err(Error::IndexOutOfRange {
                index: v,
                range: format!("0..{opens}"),
            });
        }
        let k = s.len();
        for mask in 1u64..(1u64 << k) {
            all.insert((0..k).filter(|b| mask >> b & 1 == 1).map(|b| s[b]).collect::<Vec<_>>());
        }
    }
    for v in 0..opens {
        all.insert(vec![v]);
    }
    let mut out: Vec<Vec<usize>> = all.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

fn sign<F: Field>(k: usize) -> F {
    if k.is_multiple_of(2) {
        F::one()
    } else {
        -F::one()
    }
}

impl<F: Field> CechLeafData<F> {
    /// Build from a nerve (given by its maximal simplices; all faces are
    /// added), the number of sheaves in the complex, and callbacks giving
    /// section dimensions, restriction maps along codimension-one faces and
    /// the sheaf differential `q -> q+1` on each intersection.
    pub fn new(
        opens: usize,
        maximal: &[Vec<usize>],
        columns: usize,
        mut dim: impl FnMut(&[usize], usize) -> usize,
        mut restriction: impl FnMut(&[usize], &[usize], usize) -> Matrix<F>,
        mut ce: impl FnMut(&[usize], usize) -> Matrix<F>,
    ) -> Result<Self> {
        let simplices = faces_closure(opens, maximal)?;
        let index: BTreeMap<Vec<usize>, usize> = simplices.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let dims: Vec<Vec<usize>> = simplices.iter().map(|s| (0..columns).map(|q| dim(s, q)).collect()).collect();
        let mut res = BTreeMap::new();
        for (ti, t) in simplices.iter().enumerate() {
            if t.len() < 2 {
                continue;
            }
            for drop in 0..t.len() {
                let mut f = t.clone();
                f.remove(drop);
                let fi = index[&f];
                let mut per_q = Vec::with_capacity(columns);
                for q in 0..columns {
                    let m = restriction(&f, t, q);
                    if m.rows() != dims[ti][q] || m.cols() != dims[fi][q] {
                        return Err(Error::ShapeMismatch(format!(
                            "restriction {f:?} -> {t:?} in degree {q} is {}x{}, expected {}x{}",
                            m.rows(),
                            m.cols(),
                            dims[ti][q],
                            dims[fi][q]
                        )));
                    }
                    per_q.push(m);
                }
                res.insert((fi, ti), per_q);
            }
        }
        let mut diffs = Vec::with_capacity(simplices.len());
        for (si, s) in simplices.iter().enumerate() {
            let mut per_q = Vec::new();
            for q in 0..columns.saturating_sub(1) {
                let m = ce(s, q);
                if m.rows() != dims[si][q + 1] || m.cols() != dims[si][q] {
                    return Err(Error::ShapeMismatch(format!(
                        "differential on {s:?} in degree {q} is {}x{}, expected {}x{}",
                        m.rows(),
                        m.cols(),
                        dims[si][q + 1],
                        dims[si][q]
                    )));
                }
                per_q.push(m);
            }
            diffs.push(per_q);
        }
        Ok(CechLeafData {
            opens,
            simplices,
            index,
            columns,
            dims,
            restriction: res,
            ce: diffs,
        })
    }

    pub fn opens(&self) -> usize {
        self.opens
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    /// Largest Čech degree present.
    pub fn max_cech_degree(&self) -> usize {
        self.simplices.iter().map(Vec::len).max().unwrap_or(1) - 1
    }

    pub fn max_total_degree(&self) -> usize {
        self.max_cech_degree() + self.columns.saturating_sub(1)
    }

    fn level(&self, p: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.simplices.len()).filter(move |&i| self.simplices[i].len() == p + 1)
    }

    fn section_dim(&self, s: usize, q: usize) -> usize {
        if q < self.columns {
            self.dims[s][q]
        } else {
            0
        }
    }

    /// Section dimension over an intersection, 0 outside the complex.
    pub fn sections(&self, simplex: &[usize], q: usize) -> usize {
        self.index.get(simplex).map_or(0, |&s| self.section_dim(s, q))
    }

    pub fn dim(&self, p: usize, q: usize) -> usize {
        self.level(p).map(|s| self.section_dim(s, q)).sum()
    }

    fn offsets(&self, p: usize, q: usize) -> BTreeMap<usize, usize> {
        let mut at = 0;
        let mut out = BTreeMap::new();
        for s in self.level(p) {
            out.insert(s, at);
            at += self.section_dim(s, q);
        }
        out
    }

    /// `δ̂ : C^{p,q} -> C^{p+1,q}`.
    pub fn cech(&self, p: usize, q: usize) -> Matrix<F> {
        let mut m = Matrix::zeros(self.dim(p + 1, q), self.dim(p, q));
        if q >= self.columns {
            return m;
        }
        let src = self.offsets(p, q);
        let dst = self.offsets(p + 1, q);
        for (&t, &row) in &dst {
            let tv = &self.simplices[t];
            for drop in 0..tv.len() {
                let mut f = tv.clone();
                f.remove(drop);
                let fi = self.index[&f];
                let block = self.restriction[&(fi, t)][q].scale(&sign(drop));
                m.set_block(row, src[&fi], &block);
            }
        }
        m
    }

    /// `δ : C^{p,q} -> C^{p,q+1}`, block diagonal over the intersections.
    pub fn ce(&self, p: usize, q: usize) -> Matrix<F> {
        let mut m = Matrix::zeros(self.dim(p, q + 1), self.dim(p, q));
        if q + 1 >= self.columns {
            return m;
        }
        let src = self.offsets(p, q);
        let dst = self.offsets(p, q + 1);
        for (&s, &col) in &src {
            m.set_block(dst[&s], col, &self.ce[s][q]);
        }
        m
    }

    /// Bidegrees `(p, q)` of total degree `n`, in increasing `p`.
    pub fn bidegrees(&self, n: usize) -> Vec<(usize, usize)> {
        (0..=n.min(self.max_cech_degree()))
            .map(|p| (p, n - p))
            .filter(|&(_, q)| q < self.columns)
            .collect()
    }

    pub fn total_dim(&self, n: usize) -> usize {
        self.bidegrees(n).iter().map(|&(p, q)| self.dim(p, q)).sum()
    }

    /// `D : Tot^n -> Tot^{n+1}` with blocks ordered as in [`Self::bidegrees`].
    pub fn total(&self, n: usize) -> Matrix<F> {
        let src = self.bidegrees(n);
        let dst = self.bidegrees(n + 1);
        let place = |list: &[(usize, usize)], pq: (usize, usize)| -> Option<usize> {
            let mut at = 0;
            for &b in list {
                if b == pq {
                    return Some(at);
                }
                at += self.dim(b.0, b.1);
            }
            None
        };
        let mut m = Matrix::zeros(self.total_dim(n + 1), self.total_dim(n));
        for &(p, q) in &src {
            let col = place(&src, (p, q)).expect("listed");
            if let Some(row) = place(&dst, (p + 1, q)) {
                m.set_block(row, col, &self.cech(p, q));
            }
            if let Some(row) = place(&dst, (p, q + 1)) {
                m.set_block(row, col, &self.ce(p, q).scale(&sign(p)));
            }
        }
        m
    }

    /// Check `δ̂² = 0`, `δ² = 0` and that restriction commutes with `δ`.
    pub fn validate(&self) -> Result<()> {
        for p in 0..=self.max_cech_degree() {
            for q in 0..self.columns {
                if !self.cech(p + 1, q).mul(&self.cech(p, q)).is_zero() {
                    return Err(Error::InvariantViolation(format!("Čech differential squares to nonzero at ({p}, {q})")));
                }
            }
        }
        for (s, per_q) in self.ce.iter().enumerate() {
            for q in 1..per_q.len() {
                if !per_q[q].mul(&per_q[q - 1]).is_zero() {
                    return Err(Error::InvariantViolation(format!(
                        "sheaf differential squares to nonzero on {:?} in degree {}",
                        self.simplices[s],
                        q - 1
                    )));
                }
            }
        }
        for (&(f, t), per_q) in &self.restriction {
            for q in 0..self.columns.saturating_sub(1) {
                let a = per_q[q + 1].mul(&self.ce[f][q]);
                let b = self.ce[t][q].mul(&per_q[q]);
                if a != b {
                    return Err(Error::InvariantViolation(format!(
                        "restriction {:?} -> {:?} does not commute with the differential in degree {q}",
                        self.simplices[f], self.simplices[t]
                    )));
                }
            }
        }
        Ok(())
    }

    /// The full Čech complex of a complex of split bundles on the projective
    /// line with the two standard charts. `maps[q]` is the bundle map
    /// `columns[q] -> columns[q+1]`, a matrix (target rank x source rank) of
    /// polynomials in `t` given by coefficient lists; entry `(r, c)` must have
    /// degree at most `e_r - d_c`.
    pub fn p1(columns: &[GradedBundleP1], maps: &[Vec<Vec<Vec<F>>>]) -> Result<Self> {
        if maps.len() + 1 != columns.len().max(1) {
            return Err(Error::DimensionMismatch(format!(
                "{} bundles need {} maps, got {}",
                columns.len(),
                columns.len().saturating_sub(1),
                maps.len()
            )));
        }
        for (q, m) in maps.iter().enumerate() {
            let (src, dst) = (&columns[q].degrees, &columns[q + 1].degrees);
            if m.len() != dst.len() || m.iter().any(|row| row.len() != src.len()) {
                return Err(Error::ShapeMismatch(format!(
                    "map {q} must be {}x{} polynomials",
                    dst.len(),
                    src.len()
                )));
            }
            for (r, row) in m.iter().enumerate() {
                for (c, poly) in row.iter().enumerate() {
                    let top = poly.iter().rposition(|x| !x.is_zero());
                    if let Some(top) = top {
                        if (top as i64) > dst[r] - src[c] {
                            return Err(Error::Invalid(format!(
                                "map {q} entry ({r}, {c}) has degree {top} > {}",
                                dst[r] - src[c]
                            )));
                        }
                    }
                }
            }
        }
        // windows large enough that every column computes its true cohomology
        // and every map stays inside the next window
        let mut windows = Vec::with_capacity(columns.len());
        let mut w = columns
            .iter()
            .flat_map(|c| c.degrees.iter().copied())
            .max()
            .unwrap_or(0)
            .max(0) as usize;
        for q in 0..columns.len() {
            windows.push(w);
            if q < maps.len() {
                let shift = maps[q]
                    .iter()
                    .enumerate()
                    .flat_map(|(r, row)| {
                        row.iter()
                            .enumerate()
                            .filter(|(_, p)| p.iter().any(|x| !x.is_zero()))
                            .map(move |(c, _)| (r, c))
                    })
                    .map(|(r, c)| (columns[q + 1].degrees[r] - columns[q].degrees[c]).max(0) as usize)
                    .max()
                    .unwrap_or(0);
                w += shift;
            }
        }
        let layout = P1Layout { columns, windows };
        let dims = |s: &[usize], q: usize| layout.dim(s, q);
        let restriction = |f: &[usize], t: &[usize], q: usize| layout.restriction(f, t, q);
        let ce = |s: &[usize], q: usize| layout.map(s, q, &maps[q]);
        CechLeafData::new(2, &[vec![0, 1]], columns.len(), dims, restriction, ce)
    }

    /// A complex of constant sheaves `F^{n_0} -> F^{n_1} -> ...` on the full
    /// nerve of `opens` opens, written in a random frame on every
    /// intersection. Restrictions are invertible, so every cochain entry
    /// reaches the next Čech degree.
    pub fn twisted_constant(opens: usize, column_dims: &[usize], rng: &mut impl Rng) -> Result<Self> {
        if opens == 0 {
            return Err(Error::Invalid("the cover needs at least one open".into()));
        }
        let columns = column_dims.len();
        // ranks of a standard complex: J_q sends the last r_q basis vectors
        // to the first r_q
        let mut ranks = Vec::with_capacity(columns.saturating_sub(1));
        let mut used_in = 0;
        for q in 0..columns.saturating_sub(1) {
            let room = column_dims[q]
                .saturating_sub(used_in)
                .min(column_dims[q + 1]);
            let r = rng.gen_range(0..=room);
            ranks.push(r);
            used_in = r;
        }
        let standard: Vec<Matrix<F>> = (0..columns.saturating_sub(1))
            .map(|q| {
                let (n0, n1, r) = (column_dims[q], column_dims[q + 1], ranks[q]);
                let mut j = Matrix::zeros(n1, n0);
                for k in 0..r {
                    j[(k, n0 - r + k)] = F::one();
                }
                j
            })
            .collect();
        let all: Vec<usize> = (0..opens).collect();
        let simplices = faces_closure(opens, std::slice::from_ref(&all))?;
        let mut frames: BTreeMap<Vec<usize>, Vec<(Matrix<F>, Matrix<F>)>> = BTreeMap::new();
        for s in &simplices {
            let per_q = column_dims
                .iter()
                .map(|&n| {
                    let a = random_invertible::<F>(n, rng);
                    let inv = a.inverse().expect("unipotent product is invertible");
                    (a, inv)
                })
                .collect();
            frames.insert(s.clone(), per_q);
        }
        let dims = |_: &[usize], q: usize| column_dims[q];
        let restriction = |f: &[usize], t: &[usize], q: usize| frames[t][q].0.mul(&frames[f][q].1);
        let ce = |s: &[usize], q: usize| frames[s][q + 1].0.mul(&standard[q]).mul(&frames[s][q].1);
        CechLeafData::new(opens, &[all], columns, dims, restriction, ce)
    }
}

/// A random `L U` with unit diagonals and small integer entries.
fn random_invertible<F: Field>(n: usize, rng: &mut impl Rng) -> Matrix<F> {
    let mut l = Matrix::identity(n);
    let mut u = Matrix::identity(n);
    for r in 0..n {
        for c in 0..r {
            l[(r, c)] = F::from_i64(rng.gen_range(-2..=2));
            u[(c, r)] = F::from_i64(rng.gen_range(-2..=2));
        }
    }
    l.mul(&u)
}

struct P1Layout<'a> {
    columns: &'a [GradedBundleP1],
    windows: Vec<usize>,
}

impl P1Layout<'_> {
    fn ranges(&self, s: &[usize], q: usize) -> Vec<(i64, i64)> {
        let w = self.windows[q];
        self.columns[q]
            .degrees
            .iter()
            .map(|&d| if s.len() == 2 { overlap_range(d, w) } else { (0, w as i64) })
            .collect()
    }

    fn dim(&self, s: &[usize], q: usize) -> usize {
        self.ranges(s, q).iter().map(|(lo, hi)| (hi - lo + 1) as usize).sum()
    }

    fn offset(&self, s: &[usize], q: usize, summand: usize) -> usize {
        self.ranges(s, q)[..summand].iter().map(|(lo, hi)| (hi - lo + 1) as usize).sum()
    }

    /// Position of the Laurent/chart monomial `e` of a summand, if kept.
    fn slot(&self, s: &[usize], q: usize, summand: usize, e: i64) -> Option<usize> {
        let (lo, hi) = self.ranges(s, q)[summand];
        (lo..=hi).contains(&e).then(|| self.offset(s, q, summand) + (e - lo) as usize)
    }

    fn restriction<F: Field>(&self, f: &[usize], t: &[usize], q: usize) -> Matrix<F> {
        let mut m = Matrix::zeros(self.dim(t, q), self.dim(f, q));
        for (k, &d) in self.columns[q].degrees.iter().enumerate() {
            for j in 0..=self.windows[q] as i64 {
                let target = if f == [0] { j } else { d - j };
                let row = self.slot(t, q, k, target).expect("window covers the overlap");
                let col = self.slot(f, q, k, j).expect("chart monomial");
                m[(row, col)] = F::one();
            }
        }
        m
    }

    fn map<F: Field>(&self, s: &[usize], q: usize, map: &[Vec<Vec<F>>]) -> Matrix<F> {
        let src = &self.columns[q].degrees;
        let dst = &self.columns[q + 1].degrees;
        let mut m = Matrix::<F>::zeros(self.dim(s, q + 1), self.dim(s, q));
        for (r, row) in map.iter().enumerate() {
            for (c, poly) in row.iter().enumerate() {
                let (lo, hi) = self.ranges(s, q)[c];
                for e in lo..=hi {
                    let col = self.slot(s, q, c, e).expect("in range");
                    for (i, coeff) in poly.iter().enumerate() {
                        if coeff.is_zero() {
                            continue;
                        }
                        let i = i as i64;
                        // on the s-chart, s^e of O(d_c) is t^{d_c - e}; times t^i it
                        // is s^{e_r - d_c - i + e} of O(e_r)
                        let target = if s == [1] { dst[r] - src[c] - i + e } else { e + i };
                        let row_at = self.slot(s, q + 1, r, target).expect("window covers the image");
                        m[(row_at, col)] = m[(row_at, col)].clone() + coeff.clone();
                    }
                }
            }
        }
        m
    }
}

fn kernel_dim<F: Field>(m: &Matrix<F>) -> usize {
    m.cols() - m.rank()
}

fn incoming_rank<F: Field>(data: &CechLeafData<F>, n: usize) -> usize {
    if n == 0 {
        0
    } else {
        data.total(n - 1).rank()
    }
}

/// `dim ℍ^n` for every total degree `n` in which the complex lives.
pub fn hypercohomology_all<F: Field>(data: &CechLeafData<F>) -> Result<Vec<usize>> {
    data.validate()?;
    Ok((0..=data.max_total_degree())
        .map(|n| kernel_dim(&data.total(n)) - incoming_rank(data, n))
        .collect())
}

/// `(dim ℍ^0, dim ℍ^1, dim ℍ^2)`.
pub fn leaf_complex_hypercohomology<F: Field>(data: &CechLeafData<F>) -> Result<[usize; 3]> {
    data.validate()?;
    let mut out = [0; 3];
    for (n, slot) in out.iter_mut().enumerate() {
        *slot = kernel_dim(&data.total(n)) - incoming_rank(data, n);
    }
    Ok(out)
}

/// Čech cohomology dimensions `H^p` of the single sheaf in degree `q`.
pub fn column_cohomology<F: Field>(data: &CechLeafData<F>, q: usize) -> Vec<usize> {
    (0..=data.max_cech_degree())
        .map(|p| {
            let image = if p == 0 { 0 } else { data.cech(p - 1, q).rank() };
            kernel_dim(&data.cech(p, q)) - image
        })
        .collect()
}

/// Terms of the long exact sequence of a two-term complex `L^0 -> L^1`:
/// `(dim coker(H^0(L^0) -> H^0(L^1)), dim ker(H^1(L^0) -> H^1(L^1)))`.
pub fn les_terms<F: Field>(data: &CechLeafData<F>) -> (usize, usize) {
    let z0: Vec<Vec<F>> = data.cech(0, 0).kernel();
    let d0 = data.ce(0, 0);
    let images: Vec<Vec<F>> = z0.iter().map(|z| d0.mul_vec(z)).collect();
    let h0_target = kernel_dim(&data.cech(0, 1));
    let coker = h0_target - crate::linalg::span_rank(data.dim(0, 1), &images);

    let z1 = data.cech(1, 0).kernel();
    let b1_target = data.cech(0, 1);
    let b1_rank = b1_target.rank();
    let d1 = data.ce(1, 0);
    // dim {z in Z^1 : δz in B^1} via the rank of [δ(Z^1) | B^1]
    let mut combined: Vec<Vec<F>> = z1.iter().map(|z| d1.mul_vec(z)).collect();
    combined.extend((0..b1_target.cols()).map(|c| b1_target.column(c)));
    let joint = crate::linalg::span_rank(data.dim(1, 1), &combined);
    let preimage = z1.len() - (joint - b1_rank);
    let b1_source = data.cech(0, 0).rank();
    (coker, preimage - b1_source)
}

/// The three layers of a degree-2 total cochain.
#[derive(Clone, Debug, PartialEq)]
pub struct ObstructionTriple<F> {
    /// `C^{2,0}`.
    pub theta: Vec<F>,
    /// `C^{1,1}`.
    pub g: Vec<F>,
    /// `C^{0,2}`.
    pub b: Vec<F>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ObstructionCheck<F> {
    /// `δ̂θ = 0`, `δ̂ḡ = -δθ`, `δ̂b̄ = δḡ`, `δb̄ = 0`.
    pub equations: [bool; 4],
    /// `(ρ, h̄)` in `C^{1,0}` and `C^{0,1}` with `D(ρ, h̄)` the triple.
    pub primitive: Option<(Vec<F>, Vec<F>)>,
}

impl<F> ObstructionCheck<F> {
    pub fn is_cocycle(&self) -> bool {
        self.equations.iter().all(|&e| e)
    }

    pub fn is_coboundary(&self) -> bool {
        self.primitive.is_some()
    }
}

fn check_len(name: &str, got: usize, expected: usize) -> Result<()> {
    if got == expected {
        Ok(())
    } else {
        Err(Error::ShapeMismatch(format!("{name} has {got} entries, expected {expected}")))
    }
}

fn is_zero_vec<F: Field>(v: &[F]) -> bool {
    v.iter().all(F::is_zero)
}

fn sub<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

fn add<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

/// `D(ρ, h̄) = (δ̂ρ, δ̂h̄ - δρ, δh̄)`.
pub fn total_coboundary<F: Field>(data: &CechLeafData<F>, rho: &[F], h: &[F]) -> Result<ObstructionTriple<F>> {
    check_len("ρ", rho.len(), data.dim(1, 0))?;
    check_len("h̄", h.len(), data.dim(0, 1))?;
    Ok(ObstructionTriple {
        theta: data.cech(1, 0).mul_vec(rho),
        g: sub(&data.cech(0, 1).mul_vec(h), &data.ce(1, 0).mul_vec(rho)),
        b: data.ce(0, 1).mul_vec(h),
    })
}

/// Check the four cocycle equations and decide whether the triple is a total
/// coboundary.
pub fn verify_obstruction_cocycle<F: Field>(
    data: &CechLeafData<F>,
    triple: &ObstructionTriple<F>,
) -> Result<ObstructionCheck<F>> {
    data.validate()?;
    let ObstructionTriple { theta, g, b } = triple;
    check_len("θ", theta.len(), data.dim(2, 0))?;
    check_len("ḡ", g.len(), data.dim(1, 1))?;
    check_len("b̄", b.len(), data.dim(0, 2))?;
    let equations = [
        is_zero_vec(&data.cech(2, 0).mul_vec(theta)),
        is_zero_vec(&add(&data.cech(1, 1).mul_vec(g), &data.ce(2, 0).mul_vec(theta))),
        is_zero_vec(&sub(&data.cech(0, 2).mul_vec(b), &data.ce(1, 1).mul_vec(g))),
        is_zero_vec(&data.ce(0, 2).mul_vec(b)),
    ];
    // one linear solve for D(ρ, h̄) = (θ, ḡ, b̄)
    let (n_rho, n_h) = (data.dim(1, 0), data.dim(0, 1));
    let (n_t, n_g, n_b) = (theta.len(), g.len(), b.len());
    let mut system = Matrix::zeros(n_t + n_g + n_b, n_rho + n_h);
    system.set_block(0, 0, &data.cech(1, 0));
    system.set_block(n_t, 0, &data.ce(1, 0).scale(&-F::one()));
    system.set_block(n_t, n_rho, &data.cech(0, 1));
    system.set_block(n_t + n_g, n_rho, &data.ce(0, 1));
    let mut rhs = theta.clone();
    rhs.extend(g.iter().cloned());
    rhs.extend(b.iter().cloned());
    let primitive = system.solve(&rhs).map(|mut x| {
        let h = x.split_off(n_rho);
        (x, h)
    });
    Ok(ObstructionCheck { equations, primitive })
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::scalar::{int, Rat};

    fn bundles(cols: &[&[i64]]) -> Vec<GradedBundleP1> {
        cols.iter().map(|c| GradedBundleP1::new(c.to_vec())).collect()
    }

    fn poly(cs: &[i64]) -> Vec<Rat> {
        cs.iter().map(|&c| int(c)).collect()
    }

    #[test]
    fn full_tangent_of_the_line() {
        let one = CechLeafData::<Rat>::p1(&bundles(&[&[2]]), &[]).unwrap();
        assert_eq!(leaf_complex_hypercohomology(&one).unwrap(), [3, 0, 0]);
        let two = CechLeafData::<Rat>::p1(&bundles(&[&[2], &[]]), &[vec![]]).unwrap();
        assert_eq!(leaf_complex_hypercohomology(&two).unwrap(), [3, 0, 0]);
    }

    #[test]
    fn zero_complex() {
        let z = CechLeafData::<Rat>::p1(&bundles(&[&[], &[]]), &[vec![]]).unwrap();
        assert_eq!(leaf_complex_hypercohomology(&z).unwrap(), [0, 0, 0]);
    }

    #[test]
    fn identity_is_acyclic() {
        for d in [-3, 0, 2] {
            let data = CechLeafData::<Rat>::p1(&bundles(&[&[d], &[d]]), &[vec![vec![poly(&[1])]]]).unwrap();
            assert_eq!(hypercohomology_all(&data).unwrap(), vec![0, 0, 0]);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let base = CechLeafData::<Rat>::twisted_constant(3, &[2], &mut rng).unwrap();
        assert_eq!(leaf_complex_hypercohomology(&base).unwrap(), [2, 0, 0]);
    }

    #[test]
    fn multiplication_by_t() {
        // O -> O(1) by t: the cokernel is the skyscraper at t = 0
        let data = CechLeafData::<Rat>::p1(&bundles(&[&[0], &[1]]), &[vec![vec![poly(&[0, 1])]]]).unwrap();
        assert_eq!(hypercohomology_all(&data).unwrap(), vec![0, 1, 0]);
        assert_eq!(les_terms(&data), (1, 0));
    }

    #[test]
    fn p1_rejects_bad_maps() {
        let cols = bundles(&[&[1], &[0]]);
        assert!(CechLeafData::<Rat>::p1(&cols, &[vec![vec![poly(&[1])]]]).is_err());
        assert!(CechLeafData::<Rat>::p1(&cols, &[]).is_err());
        let cols = bundles(&[&[0], &[0], &[0]]);
        let id = vec![vec![poly(&[1])]];
        let data = CechLeafData::<Rat>::p1(&cols, &[id.clone(), id]).unwrap();
        assert!(matches!(data.validate(), Err(Error::InvariantViolation(_))));
        assert!(leaf_complex_hypercohomology(&data).is_err());
    }

    #[test]
    fn differentials_square_to_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let data = CechLeafData::<Rat>::twisted_constant(4, &[2, 3, 2], &mut rng).unwrap();
        data.validate().unwrap();
        for n in 0..data.max_total_degree() {
            assert!(data.total(n + 1).mul(&data.total(n)).is_zero());
        }
    }

    #[test]
    fn euler_characteristic_matches_columns() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let data = CechLeafData::<Rat>::twisted_constant(3, &[3, 2, 1], &mut rng).unwrap();
        let h = hypercohomology_all(&data).unwrap();
        let total: i64 = h.iter().enumerate().map(|(n, &d)| if n % 2 == 0 { d as i64 } else { -(d as i64) }).sum();
        let cols: i64 = (0..data.columns())
            .map(|q| {
                let chi: i64 = column_cohomology(&data, q)
                    .iter()
                    .enumerate()
                    .map(|(p, &d)| if p % 2 == 0 { d as i64 } else { -(d as i64) })
                    .sum();
                if q % 2 == 0 {
                    chi
                } else {
                    -chi
                }
            })
            .sum();
        assert_eq!(total, cols);
    }

    #[test]
    fn zero_triple_is_a_coboundary() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let data = CechLeafData::<Rat>::twisted_constant(4, &[1, 2, 1], &mut rng).unwrap();
        let triple = ObstructionTriple {
            theta: vec![int(0); data.dim(2, 0)],
            g: vec![int(0); data.dim(1, 1)],
            b: vec![int(0); data.dim(0, 2)],
        };
        let check = verify_obstruction_cocycle(&data, &triple).unwrap();
        assert!(check.is_cocycle());
        let (rho, h) = check.primitive.unwrap();
        assert!(is_zero_vec(&rho) && is_zero_vec(&h));
    }

    #[test]
    fn coboundary_round_trip_and_perturbation() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let data = CechLeafData::<Rat>::twisted_constant(4, &[2, 2, 2], &mut rng).unwrap();
        let rho: Vec<Rat> = (0..data.dim(1, 0)).map(|_| int(rng.gen_range(-3..=3))).collect();
        let h: Vec<Rat> = (0..data.dim(0, 1)).map(|_| int(rng.gen_range(-3..=3))).collect();
        let triple = total_coboundary(&data, &rho, &h).unwrap();
        let check = verify_obstruction_cocycle(&data, &triple).unwrap();
        assert!(check.is_cocycle() && check.is_coboundary());
        let (r2, h2) = check.primitive.unwrap();
        assert_eq!(total_coboundary(&data, &r2, &h2).unwrap(), triple);
        let mut bad = triple.clone();
        bad.b[0] = bad.b[0].clone() + int::<Rat>(1);
        let check = verify_obstruction_cocycle(&data, &bad).unwrap();
        assert!(!check.equations[2] || !check.equations[3]);
        assert!(!check.is_coboundary());
    }

    #[test]
    fn wrong_lengths_are_shape_errors() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let data = CechLeafData::<Rat>::twisted_constant(3, &[1, 1, 1], &mut rng).unwrap();
        let triple = ObstructionTriple {
            theta: vec![int(0)],
            g: vec![],
            b: vec![],
        };
        assert!(matches!(verify_obstruction_cocycle(&data, &triple), Err(Error::ShapeMismatch(_))));
    }
}
