//! Finitely generated submonoids of integer lattices.
//!
//! A monoid is stored by a list of generators in `Z^k`; being a submonoid of
//! a lattice it is integral automatically. Saturation is computed by bounded
//! enumeration: the saturation of `M` is generated by the generators of `M`
//! together with the lattice points (of `Z^k` or of `gp(M)`, see
//! [`SaturationLattice`]) inside the zonotope
//! `{ sum t_i g_i : 0 <= t_i <= 1 }`, so it suffices to enumerate the
//! bounding box of that zonotope.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{Field, Rat};

/// Lattice in which saturation takes place.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SaturationLattice {
    /// `{x in Z^k : m x in M for some m >= 1}`: all ambient lattice points
    /// of the cone.
    #[default]
    Ambient,
    /// `{x in gp(M) : m x in M for some m >= 1}`: keeps the group of `M`.
    Group,
}

/// Bounds for the brute-force enumerations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MonoidConfig {
    /// Candidate points are enumerated in `[-box_bound, box_bound]^k`.
    pub box_bound: i64,
    /// Partial sums explored by membership searches stay in this box.
    pub search_radius: i64,
    pub lattice: SaturationLattice,
}

impl Default for MonoidConfig {
    fn default() -> Self {
        MonoidConfig {
            box_bound: 10,
            search_radius: 20,
            lattice: SaturationLattice::Ambient,
        }
    }
}

impl MonoidConfig {
    pub fn in_group(self) -> Self {
        MonoidConfig {
            lattice: SaturationLattice::Group,
            ..self
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FGMonoid {
    ambient_rank: usize,
    generators: Vec<Vec<i64>>,
}

/// Certificate that `multiplier * point` is a nonnegative integer
/// combination of the original generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturationWitness {
    pub point: Vec<i64>,
    pub multiplier: i64,
    pub coefficients: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct Saturation {
    pub monoid: FGMonoid,
    pub witnesses: Vec<SaturationWitness>,
}

impl FGMonoid {
    pub fn new(ambient_rank: usize, generators: Vec<Vec<i64>>) -> Result<Self> {
        if ambient_rank == 0 {
            return Err(Error::Invalid("ambient rank must be positive".into()));
        }
        if let Some(g) = generators.iter().find(|g| g.len() != ambient_rank) {
            return Err(Error::DimensionMismatch(format!(
                "generator {g:?} does not have length {ambient_rank}"
            )));
        }
        let mut gens: Vec<Vec<i64>> = Vec::new();
        for g in generators {
            if g.iter().any(|&x| x != 0) && !gens.contains(&g) {
                gens.push(g);
            }
        }
        Ok(FGMonoid {
            ambient_rank,
            generators: gens,
        })
    }

    /// The free monoid `N^r` with its standard basis.
    pub fn free(rank: usize) -> Self {
        let gens = (0..rank)
            .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
            .collect();
        FGMonoid {
            ambient_rank: rank,
            generators: gens,
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    /// Hermite basis of the group generated by the monoid.
    pub fn grothendieck_group(&self) -> Vec<Vec<i64>> {
        hermite_basis(self.ambient_rank, &self.generators)
    }

    /// Whether `x` lies in the group generated by the monoid.
    pub fn group_contains(&self, x: &[i64]) -> bool {
        lattice_contains(&self.grothendieck_group(), x)
    }

    /// Nonnegative integer coefficients expressing `x`, found by a bounded
    /// breadth-first search over partial sums.
    pub fn membership(&self, x: &[i64], config: &MonoidConfig) -> Option<Vec<i64>> {
        bfs_membership(&self.generators, x, config.search_radius)
    }

    pub fn contains(&self, x: &[i64], config: &MonoidConfig) -> bool {
        self.membership(x, config).is_some()
    }

    /// Two monoids are equal when each generator set lies in the other.
    pub fn same_monoid(&self, other: &FGMonoid, config: &MonoidConfig) -> bool {
        self.ambient_rank == other.ambient_rank
            && other.generators.iter().all(|g| self.contains(g, config))
            && self.generators.iter().all(|g| other.contains(g, config))
    }

    /// Rational cone coefficients `t >= 0` with `sum t_i g_i = x`, if any.
    pub fn cone_coefficients(&self, x: &[i64]) -> Option<Vec<Rat>> {
        cone_coefficients(self.ambient_rank, &self.generators, x)
    }

    pub fn saturate(&self, config: &MonoidConfig) -> Result<Saturation> {
        let k = self.ambient_rank;
        let mut lo = vec![0i64; k];
        let mut hi = vec![0i64; k];
        for g in &self.generators {
            for c in 0..k {
                if g[c] < 0 {
                    lo[c] += g[c];
                } else {
                    hi[c] += g[c];
                }
            }
        }
        let b = config.box_bound;
        if lo.iter().any(|&v| v < -b) || hi.iter().any(|&v| v > b) {
            return Err(Error::ResourceBound(format!(
                "saturation needs the box [{lo:?}, {hi:?}], larger than the bound {b}"
            )));
        }
        let hermite = self.grothendieck_group();

        let mut candidates = Vec::new();
        for_each_point(&lo, &hi, |p| {
            let in_lattice = match config.lattice {
                SaturationLattice::Ambient => true,
                SaturationLattice::Group => lattice_contains(&hermite, p),
            };
            if p.iter().all(|&v| v == 0) || !in_lattice {
                return;
            }
            if let Some(t) = self.cone_coefficients(p) {
                candidates.push((p.to_vec(), t));
            }
        });
        candidates.sort_by_key(|(p, _)| (p.iter().map(|v| v.abs()).sum::<i64>(), p.clone()));

        let radius = config.box_bound.max(config.search_radius);
        let mut kept: Vec<(Vec<i64>, Vec<Rat>)> = Vec::new();
        let mut reach = reachable_set(&[], k, radius);
        for (p, t) in candidates {
            if !reach.contains(&p) {
                kept.push((p, t));
                let gens: Vec<Vec<i64>> = kept.iter().map(|(p, _)| p.clone()).collect();
                reach = reachable_set(&gens, k, radius);
            }
        }
        // drop anything the remaining generators already produce
        let mut idx = kept.len();
        while idx > 0 {
            idx -= 1;
            let others: Vec<Vec<i64>> = kept
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != idx)
                .map(|(_, (p, _))| p.clone())
                .collect();
            if reachable_set(&others, k, radius).contains(&kept[idx].0) {
                kept.remove(idx);
            }
        }

        let witnesses = kept
            .iter()
            .map(|(p, t)| integral_witness(p, t))
            .collect();
        let monoid = FGMonoid::new(k, kept.into_iter().map(|(p, _)| p).collect())?;
        Ok(Saturation { monoid, witnesses })
    }

    pub fn is_saturated(&self, config: &MonoidConfig) -> Result<bool> {
        let sat = self.saturate(config)?;
        Ok(sat.monoid.generators.iter().all(|g| self.contains(g, config)))
    }
}

/// A homomorphism between ambient lattices carrying one monoid into another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidHom {
    source: FGMonoid,
    target: FGMonoid,
    /// `target.ambient_rank x source.ambient_rank`
    matrix: Vec<Vec<i64>>,
    /// For each source generator, coefficients of its image in the target.
    witnesses: Vec<Vec<i64>>,
}

impl MonoidHom {
    pub fn new(
        source: FGMonoid,
        target: FGMonoid,
        matrix: Vec<Vec<i64>>,
        config: &MonoidConfig,
    ) -> Result<Self> {
        if matrix.len() != target.ambient_rank
            || matrix.iter().any(|row| row.len() != source.ambient_rank)
        {
            return Err(Error::ShapeMismatch(format!(
                "hom matrix must be {}x{}",
                target.ambient_rank, source.ambient_rank
            )));
        }
        let mut witnesses = Vec::new();
        for g in &source.generators {
            let img = apply_matrix(&matrix, g);
            let w = target.membership(&img, config).ok_or_else(|| {
                Error::Invalid(format!("image {img:?} of generator {g:?} is not in the target"))
            })?;
            witnesses.push(w);
        }
        Ok(MonoidHom {
            source,
            target,
            matrix,
            witnesses,
        })
    }

    pub fn source(&self) -> &FGMonoid {
        &self.source
    }

    pub fn target(&self) -> &FGMonoid {
        &self.target
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn witnesses(&self) -> &[Vec<i64>] {
        &self.witnesses
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        apply_matrix(&self.matrix, x)
    }
}

/// `N -> N^r`, `1 -> (1, ..., 1)`.
pub fn diagonal_hom(r: usize) -> Result<MonoidHom> {
    if r == 0 {
        return Err(Error::Invalid("diagonal map needs r >= 1".into()));
    }
    let matrix = vec![vec![1]; r];
    MonoidHom::new(
        FGMonoid::free(1),
        FGMonoid::free(r),
        matrix,
        &MonoidConfig::default(),
    )
}

fn apply_matrix(matrix: &[Vec<i64>], x: &[i64]) -> Vec<i64> {
    matrix
        .iter()
        .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
        .collect()
}

/// Row-style Hermite normal form of the lattice spanned by `vectors`:
/// echelon rows with positive pivots and entries above each pivot reduced
/// into `[0, pivot)`.
pub fn hermite_basis(k: usize, vectors: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut rows: Vec<Vec<i64>> = vectors.to_vec();
    let mut prow = 0;
    let mut pivots = Vec::new();
    for col in 0..k {
        loop {
            let nonzero: Vec<usize> = (prow..rows.len()).filter(|&r| rows[r][col] != 0).collect();
            if nonzero.len() <= 1 {
                break;
            }
            let min = *nonzero.iter().min_by_key(|&&r| rows[r][col].abs()).unwrap();
            for &r in &nonzero {
                if r == min {
                    continue;
                }
                let q = rows[r][col].div_euclid(rows[min][col]);
                for c in 0..k {
                    rows[r][c] -= q * rows[min][c];
                }
            }
        }
        let Some(sel) = (prow..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(prow, sel);
        if rows[prow][col] < 0 {
            for c in 0..k {
                rows[prow][c] = -rows[prow][c];
            }
        }
        let p = rows[prow][col];
        for r in 0..prow {
            let q = rows[r][col].div_euclid(p);
            if q != 0 {
                for c in 0..k {
                    rows[r][c] -= q * rows[prow][c];
                }
            }
        }
        pivots.push(col);
        prow += 1;
    }
    rows.truncate(prow);
    rows
}

/// Membership of `x` in the lattice with Hermite basis `basis`.
pub fn lattice_contains(basis: &[Vec<i64>], x: &[i64]) -> bool {
    let mut rest = x.to_vec();
    for row in basis {
        let Some(pc) = row.iter().position(|&v| v != 0) else {
            continue;
        };
        if rest[..pc].iter().any(|&v| v != 0) {
            return false;
        }
        if rest[pc] % row[pc] != 0 {
            return false;
        }
        let q = rest[pc] / row[pc];
        for (r, b) in rest.iter_mut().zip(row) {
            *r -= q * b;
        }
    }
    rest.iter().all(|&v| v == 0)
}

fn for_each_point(lo: &[i64], hi: &[i64], mut f: impl FnMut(&[i64])) {
    let k = lo.len();
    let mut p = lo.to_vec();
    loop {
        f(&p);
        let mut c = 0;
        loop {
            if c == k {
                return;
            }
            if p[c] < hi[c] {
                p[c] += 1;
                break;
            }
            p[c] = lo[c];
            c += 1;
        }
    }
}

/// Carathéodory: `x` is in the cone iff it is a nonnegative combination of
/// some linearly independent subset of the generators.
fn cone_coefficients(k: usize, gens: &[Vec<i64>], x: &[i64]) -> Option<Vec<Rat>> {
    let m = gens.len();
    if x.iter().all(|&v| v == 0) {
        return Some(vec![Rat::zero(); m]);
    }
    let to_rat = |v: i64| Rat::from_i64(v);
    let max_size = k.min(m);
    let mut subset: Vec<usize> = Vec::new();
    fn recurse(
        start: usize,
        max_size: usize,
        subset: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
        m: usize,
    ) -> bool {
        if !subset.is_empty() && visit(subset) {
            return true;
        }
        if subset.len() == max_size {
            return false;
        }
        for i in start..m {
            subset.push(i);
            if recurse(i + 1, max_size, subset, visit, m) {
                return true;
            }
            subset.pop();
        }
        false
    }
    let mut found = None;
    let rhs: Vec<Rat> = x.iter().map(|&v| to_rat(v)).collect();
    let mut visit = |s: &[usize]| -> bool {
        let a = Matrix::from_fn(k, s.len(), |r, c| to_rat(gens[s[c]][r]));
        if a.rank() < s.len() {
            return false;
        }
        match a.solve(&rhs) {
            Some(t) if t.iter().all(|v| !v.is_negative()) => {
                let mut full = vec![Rat::zero(); m];
                for (i, &gi) in s.iter().enumerate() {
                    full[gi] = t[i].clone();
                }
                found = Some(full);
                true
            }
            _ => false,
        }
    };
    recurse(0, max_size, &mut subset, &mut visit, m);
    found
}

fn integral_witness(point: &[i64], t: &[Rat]) -> SaturationWitness {
    let mut den = BigInt::one();
    for v in t {
        den = den.lcm(v.denom());
    }
    let multiplier = den.to_i64().expect("desk-scale denominators fit in i64");
    let coefficients = t
        .iter()
        .map(|v| {
            (v * Rat::from_integer(den.clone()))
                .to_integer()
                .to_i64()
                .expect("desk-scale coefficients fit in i64")
        })
        .collect();
    SaturationWitness {
        point: point.to_vec(),
        multiplier,
        coefficients,
    }
}

fn reachable_set(gens: &[Vec<i64>], k: usize, radius: i64) -> HashSet<Vec<i64>> {
    let origin = vec![0i64; k];
    let mut seen = HashSet::new();
    seen.insert(origin.clone());
    let mut queue = VecDeque::from([origin]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q: Vec<i64> = p.iter().zip(g).map(|(a, b)| a + b).collect();
            if q.iter().all(|v| v.abs() <= radius) && seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen
}

fn bfs_membership(gens: &[Vec<i64>], x: &[i64], radius: i64) -> Option<Vec<i64>> {
    let k = x.len();
    let radius = radius.max(x.iter().map(|v| v.abs()).max().unwrap_or(0));
    let origin = vec![0i64; k];
    let mut parent: std::collections::HashMap<Vec<i64>, Option<(Vec<i64>, usize)>> =
        std::collections::HashMap::new();
    parent.insert(origin.clone(), None);
    let mut queue = VecDeque::from([origin]);
    while let Some(p) = queue.pop_front() {
        if p == x {
            let mut coeffs = vec![0i64; gens.len()];
            let mut cur = p;
            while let Some(Some((prev, gi))) = parent.get(&cur).cloned() {
                coeffs[gi] += 1;
                cur = prev;
            }
            return Some(coeffs);
        }
        for (gi, g) in gens.iter().enumerate() {
            let q: Vec<i64> = p.iter().zip(g).map(|(a, b)| a + b).collect();
            if q.iter().all(|v| v.abs() <= radius) && !parent.contains_key(&q) {
                parent.insert(q.clone(), Some((p.clone(), gi)));
                queue.push_back(q);
            }
        }
    }
    None
}
