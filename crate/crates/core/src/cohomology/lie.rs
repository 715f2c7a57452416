//! Finite-dimensional Lie algebras, their Chevalley-Eilenberg complexes and
//! first-order deformations of a subalgebra.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Field;

/// Structure constants `c[i][j][k]`: the `e_k` coefficient of `[e_i, e_j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra<F> {
    dim: usize,
    c: Vec<F>,
}

fn check_antisymmetric<F: Field>(dim: usize, c: &[F], what: &str) -> Result<()> {
    if c.len() != dim * dim * dim {
        return Err(Error::ShapeMismatch(format!(
            "{what}: expected {} structure constants, got {}",
            dim * dim * dim,
            c.len()
        )));
    }
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let a = &c[(i * dim + j) * dim + k];
                let b = &c[(j * dim + i) * dim + k];
                if a.clone() + b.clone() != F::zero() {
                    return Err(Error::Invalid(format!("{what}: not antisymmetric at ({i},{j},{k})")));
                }
            }
        }
    }
    Ok(())
}

impl<F: Field> LieAlgebra<F> {
    pub fn new(dim: usize, c: Vec<F>) -> Result<Self> {
        check_antisymmetric(dim, &c, "structure constants")?;
        let g = LieAlgebra { dim, c };
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let (x, y, z) = (g.unit(i), g.unit(j), g.unit(k));
                    if !g.jacobiator(&x, &y, &z).iter().all(F::is_zero) {
                        return Err(Error::Invalid(format!("Jacobi identity fails on (e{i}, e{j}, e{k})")));
                    }
                }
            }
        }
        Ok(g)
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra {
            dim,
            c: vec![F::zero(); dim * dim * dim],
        }
    }

    /// Brackets `[e_i, e_j] = v` for `i != j`; the rest follow by antisymmetry
    /// or vanish.
    pub fn from_brackets(dim: usize, brackets: &[(usize, usize, Vec<F>)]) -> Result<Self> {
        let mut c = vec![F::zero(); dim * dim * dim];
        for (i, j, v) in brackets {
            let (i, j) = (*i, *j);
            if i >= dim || j >= dim || v.len() != dim {
                return Err(Error::ShapeMismatch(format!("bracket [e{i}, e{j}] does not fit dimension {dim}")));
            }
            if i == j {
                return Err(Error::Invalid(format!("[e{i}, e{i}] must vanish")));
            }
            for k in 0..dim {
                c[(i * dim + j) * dim + k] = v[k].clone();
                c[(j * dim + i) * dim + k] = -v[k].clone();
            }
        }
        Self::new(dim, c)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn structure_constants(&self) -> &[F] {
        &self.c
    }

    pub fn unit(&self, i: usize) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim];
        v[i] = F::one();
        v
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &[F] {
        let s = (i * self.dim + j) * self.dim;
        &self.c[s..s + self.dim]
    }

    pub fn bracket(&self, x: &[F], y: &[F]) -> Vec<F> {
        bilinear(self.dim, &self.c, x, y)
    }

    /// `[x,[y,z]] + [y,[z,x]] + [z,[x,y]]`.
    pub fn jacobiator(&self, x: &[F], y: &[F], z: &[F]) -> Vec<F> {
        let a = self.bracket(x, &self.bracket(y, z));
        let b = self.bracket(y, &self.bracket(z, x));
        let c = self.bracket(z, &self.bracket(x, y));
        (0..self.dim).map(|k| a[k].clone() + b[k].clone() + c[k].clone()).collect()
    }

    /// Matrix of `ad(x)`.
    pub fn ad(&self, x: &[F]) -> Matrix<F> {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.bracket(x, &self.unit(j));
            for (k, v) in col.into_iter().enumerate() {
                m[(k, j)] = v;
            }
        }
        m
    }
}

fn bilinear<F: Field>(dim: usize, c: &[F], x: &[F], y: &[F]) -> Vec<F> {
    let mut out = vec![F::zero(); dim];
    for i in 0..dim {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..dim {
            if y[j].is_zero() {
                continue;
            }
            let s = x[i].clone() * y[j].clone();
            let base = (i * dim + j) * dim;
            for k in 0..dim {
                if !c[base + k].is_zero() {
                    out[k] = out[k].clone() + s.clone() * c[base + k].clone();
                }
            }
        }
    }
    out
}

/// Increasing `k`-subsets of `0..m` in lexicographic order.
pub fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= m {
        rec(0, m, k, &mut Vec::new(), &mut out);
    }
    out
}

/// The Chevalley-Eilenberg complex of a Lie algebra `L` with coefficients in
/// a module `V`, given by the action matrices of the basis of `L`.
///
/// A `k`-cochain is stored as `C(m,k)` blocks of length `dim V`, one per
/// increasing index tuple.
#[derive(Clone, Debug)]
pub struct CeComplex<F: Field> {
    algebra: LieAlgebra<F>,
    action: Vec<Matrix<F>>,
    module_dim: usize,
}

impl<F: Field> CeComplex<F> {
    pub fn new(algebra: LieAlgebra<F>, module_dim: usize, action: Vec<Matrix<F>>) -> Result<Self> {
        let m = algebra.dim();
        if action.len() != m {
            return Err(Error::DimensionMismatch(format!(
                "{} action matrices for an algebra of dimension {m}",
                action.len()
            )));
        }
        if action.iter().any(|a| a.rows() != module_dim || a.cols() != module_dim) {
            return Err(Error::ShapeMismatch(format!("action matrices must be {module_dim}x{module_dim}")));
        }
        for i in 0..m {
            for j in 0..m {
                let commutator = action[i].mul(&action[j]).add(&action[j].mul(&action[i]).scale(&-F::one()));
                let mut image = Matrix::zeros(module_dim, module_dim);
                for (k, c) in algebra.basis_bracket(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        image = image.add(&action[k].scale(c));
                    }
                }
                if commutator != image {
                    return Err(Error::Invalid(format!("action is not a representation on (e{i}, e{j})")));
                }
            }
        }
        Ok(CeComplex {
            algebra,
            action,
            module_dim,
        })
    }

    /// Trivial action on `F^module_dim`.
    pub fn trivial(algebra: LieAlgebra<F>, module_dim: usize) -> Self {
        let m = algebra.dim();
        CeComplex {
            algebra,
            action: vec![Matrix::zeros(module_dim, module_dim); m],
            module_dim,
        }
    }

    /// The adjoint module.
    pub fn adjoint(algebra: LieAlgebra<F>) -> Self {
        let action = (0..algebra.dim()).map(|i| algebra.ad(&algebra.unit(i))).collect();
        let module_dim = algebra.dim();
        CeComplex {
            algebra,
            action,
            module_dim,
        }
    }

    pub fn algebra(&self) -> &LieAlgebra<F> {
        &self.algebra
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    pub fn action(&self, i: usize) -> &Matrix<F> {
        &self.action[i]
    }

    pub fn cochain_dim(&self, k: usize) -> usize {
        subsets(self.algebra.dim(), k).len() * self.module_dim
    }

    /// Matrix of `δ : C^k -> C^{k+1}`,
    /// `(δφ)(v_1..v_{k+1}) = Σ_i (-1)^{i+1} v_i φ(..v̂_i..)
    ///   + Σ_{i<j} (-1)^{i+j} φ([v_i,v_j], ..v̂_i..v̂_j..)`.
    pub fn differential(&self, k: usize) -> Matrix<F> {
        let m = self.algebra.dim();
        let v = self.module_dim;
        let src = subsets(m, k);
        let dst = subsets(m, k + 1);
        let pos = |s: &[usize]| src.binary_search_by(|t| t.as_slice().cmp(s)).expect("subset is listed");
        let mut d = Matrix::<F>::zeros(dst.len() * v, src.len() * v);
        for (row, s) in dst.iter().enumerate() {
            for i in 0..s.len() {
                let sign = if i % 2 == 0 { F::one() } else { -F::one() };
                let mut rest = s.clone();
                rest.remove(i);
                let col = pos(&rest);
                let a = &self.action[s[i]];
                for r in 0..v {
                    for c in 0..v {
                        if !a[(r, c)].is_zero() {
                            let t = d[(row * v + r, col * v + c)].clone() + sign.clone() * a[(r, c)].clone();
                            d[(row * v + r, col * v + c)] = t;
                        }
                    }
                }
            }
            for i in 0..s.len() {
                for j in i + 1..s.len() {
                    // (-1)^{(i+1)+(j+1)} with 1-based positions
                    let sign_ij = if (i + j) % 2 == 0 { F::one() } else { -F::one() };
                    let rest: Vec<usize> = s.iter().enumerate().filter(|&(p, _)| p != i && p != j).map(|(_, &x)| x).collect();
                    for (l, c) in self.algebra.basis_bracket(s[i], s[j]).iter().enumerate() {
                        if c.is_zero() || rest.contains(&l) {
                            continue;
                        }
                        let at = rest.iter().filter(|&&x| x < l).count();
                        let mut t = rest.clone();
                        t.insert(at, l);
                        let mut coeff = sign_ij.clone() * c.clone();
                        if at % 2 == 1 {
                            coeff = -coeff;
                        }
                        let col = pos(&t);
                        for r in 0..v {
                            let e = d[(row * v + r, col * v + r)].clone() + coeff.clone();
                            d[(row * v + r, col * v + r)] = e;
                        }
                    }
                }
            }
        }
        d
    }

    /// `dim H^k`.
    pub fn cohomology_dim(&self, k: usize) -> usize {
        let out = self.differential(k);
        let kernel = out.cols() - out.rank();
        let image = if k == 0 { 0 } else { self.differential(k - 1).rank() };
        kernel - image
    }
}

/// Apply the Chevalley-Eilenberg differential to a `k`-cochain.
pub fn ce_differential<F: Field>(complex: &CeComplex<F>, k: usize, phi: &[F]) -> Result<Vec<F>> {
    let expected = complex.cochain_dim(k);
    if phi.len() != expected {
        return Err(Error::DimensionMismatch(format!(
            "{k}-cochain has {} entries, expected {expected}",
            phi.len()
        )));
    }
    Ok(complex.differential(k).mul_vec(phi))
}

/// A subalgebra `H` of `G` together with a first-order deformation over the
/// dual numbers: `[x,y]' = [x,y] + ε μ(x,y)` on `G` and a lifted inclusion
/// `f'(h_a) = h_a + ε φ_a`.
#[derive(Clone, Debug)]
pub struct FinLieData<F: Field> {
    algebra: LieAlgebra<F>,
    subalgebra: Vec<Vec<F>>,
    bracket_perturbation: Vec<F>,
    inclusion_perturbation: Vec<Vec<F>>,
    basis: Matrix<F>,
    coords: Matrix<F>,
}

impl<F: Field> FinLieData<F> {
    pub fn new(
        algebra: LieAlgebra<F>,
        subalgebra: Vec<Vec<F>>,
        bracket_perturbation: Vec<F>,
        inclusion_perturbation: Vec<Vec<F>>,
    ) -> Result<Self> {
        let m = algebra.dim();
        if subalgebra.iter().any(|h| h.len() != m) {
            return Err(Error::ShapeMismatch(format!("subalgebra vectors must have length {m}")));
        }
        if inclusion_perturbation.len() != subalgebra.len() || inclusion_perturbation.iter().any(|p| p.len() != m) {
            return Err(Error::ShapeMismatch("one inclusion perturbation vector per subalgebra generator".into()));
        }
        check_antisymmetric(m, &bracket_perturbation, "bracket perturbation")?;
        let h = subalgebra.len();
        if crate::linalg::span_rank(m, &subalgebra) != h {
            return Err(Error::Invalid("subalgebra basis is not linearly independent".into()));
        }
        // complete the subalgebra basis by unit vectors
        let mut cols = subalgebra.clone();
        for k in 0..m {
            let mut trial = cols.clone();
            trial.push(algebra.unit(k));
            if crate::linalg::span_rank(m, &trial) == trial.len() {
                cols = trial;
            }
        }
        let basis = Matrix::from_rows(m, cols).transpose();
        let coords = basis.inverse().expect("completed basis is invertible");
        let data = FinLieData {
            algebra,
            subalgebra,
            bracket_perturbation,
            inclusion_perturbation,
            basis,
            coords,
        };
        for a in 0..h {
            for b in 0..h {
                let x = data.coordinates(&data.algebra.bracket(&data.subalgebra[a], &data.subalgebra[b]));
                if x[h..].iter().any(|c| !c.is_zero()) {
                    return Err(Error::Invalid(format!("subalgebra is not closed: [h{a}, h{b}] leaves it")));
                }
            }
        }
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    let (x, y, z) = (data.algebra.unit(i), data.algebra.unit(j), data.algebra.unit(k));
                    if !data.first_order_jacobiator(&x, &y, &z).iter().all(F::is_zero) {
                        return Err(Error::Invalid(format!(
                            "perturbed bracket violates Jacobi to first order on (e{i}, e{j}, e{k})"
                        )));
                    }
                }
            }
        }
        Ok(data)
    }

    /// Unperturbed data: `μ = 0`, `φ = 0`.
    pub fn rigid(algebra: LieAlgebra<F>, subalgebra: Vec<Vec<F>>) -> Result<Self> {
        let m = algebra.dim();
        let h = subalgebra.len();
        Self::new(algebra, subalgebra, vec![F::zero(); m * m * m], vec![vec![F::zero(); m]; h])
    }

    pub fn algebra(&self) -> &LieAlgebra<F> {
        &self.algebra
    }

    pub fn subalgebra(&self) -> &[Vec<F>] {
        &self.subalgebra
    }

    pub fn inclusion_perturbation(&self) -> &[Vec<F>] {
        &self.inclusion_perturbation
    }

    pub fn quotient_dim(&self) -> usize {
        self.algebra.dim() - self.subalgebra.len()
    }

    /// Replace the inclusion perturbation.
    pub fn with_inclusion(&self, inclusion_perturbation: Vec<Vec<F>>) -> Result<Self> {
        Self::new(
            self.algebra.clone(),
            self.subalgebra.clone(),
            self.bracket_perturbation.clone(),
            inclusion_perturbation,
        )
    }

    fn perturbation(&self, x: &[F], y: &[F]) -> Vec<F> {
        bilinear(self.algebra.dim(), &self.bracket_perturbation, x, y)
    }

    fn first_order_jacobiator(&self, x: &[F], y: &[F], z: &[F]) -> Vec<F> {
        let g = &self.algebra;
        let mut out = vec![F::zero(); g.dim()];
        for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
            let t1 = g.bracket(a, &self.perturbation(b, c));
            let t2 = self.perturbation(a, &g.bracket(b, c));
            for k in 0..out.len() {
                out[k] = out[k].clone() + t1[k].clone() + t2[k].clone();
            }
        }
        out
    }

    /// Coordinates in the basis `(h_1..h_s, w_1..w_t)`.
    fn coordinates(&self, x: &[F]) -> Vec<F> {
        self.coords.mul_vec(x)
    }

    fn project(&self, x: &[F]) -> Vec<F> {
        self.coordinates(x).split_off(self.subalgebra.len())
    }

    fn lift(&self, v: &[F]) -> Vec<F> {
        let h = self.subalgebra.len();
        let mut full = vec![F::zero(); h];
        full.extend_from_slice(v);
        self.basis.mul_vec(&full)
    }

    /// `H` in its own basis acting on `G/H`.
    pub fn quotient_complex(&self) -> CeComplex<F> {
        let h = self.subalgebra.len();
        let t = self.quotient_dim();
        let mut brackets = Vec::new();
        for a in 0..h {
            for b in a + 1..h {
                let x = self.coordinates(&self.algebra.bracket(&self.subalgebra[a], &self.subalgebra[b]));
                brackets.push((a, b, x[..h].to_vec()));
            }
        }
        let sub = LieAlgebra::from_brackets(h, &brackets).expect("a subalgebra is a Lie algebra");
        let action = (0..h)
            .map(|a| {
                let mut m = Matrix::zeros(t, t);
                for l in 0..t {
                    let w = self.lift(&unit_vec(t, l));
                    let img = self.project(&self.algebra.bracket(&self.subalgebra[a], &w));
                    for (r, v) in img.into_iter().enumerate() {
                        m[(r, l)] = v;
                    }
                }
                m
            })
            .collect();
        CeComplex::new(sub, t, action).expect("the quotient is an H-module")
    }

    /// `b̄(h_a, h_b)`, the image in `G/H` of `[f'(h_a), f'(h_b)]' - f'([h_a, h_b])`
    /// divided by `ε`, as a 2-cochain.
    pub fn obstruction_cochain(&self) -> Vec<F> {
        let h = self.subalgebra.len();
        let m = self.algebra.dim();
        let g = &self.algebra;
        let mut out = Vec::new();
        for pair in subsets(h, 2) {
            let (a, b) = (pair[0], pair[1]);
            let (ha, hb) = (&self.subalgebra[a], &self.subalgebra[b]);
            let (pa, pb) = (&self.inclusion_perturbation[a], &self.inclusion_perturbation[b]);
            let mut x = self.perturbation(ha, hb);
            let t1 = g.bracket(ha, pb);
            let t2 = g.bracket(pa, hb);
            let hab = self.coordinates(&g.bracket(ha, hb));
            for k in 0..m {
                x[k] = x[k].clone() + t1[k].clone() + t2[k].clone();
            }
            for (c, coeff) in hab[..h].iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                for k in 0..m {
                    x[k] = x[k].clone() - coeff.clone() * self.inclusion_perturbation[c][k].clone();
                }
            }
            out.extend(self.project(&x));
        }
        out
    }
}

fn unit_vec<F: Field>(n: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); n];
    v[i] = F::one();
    v
}

/// Outcome of the subalgebra deformation problem.
#[derive(Clone, Debug, PartialEq)]
pub struct LieObstruction<F> {
    /// `b̄` as a 2-cochain of `H` with values in `G/H`.
    pub cocycle: Vec<F>,
    pub class_is_zero: bool,
    /// `h̄` with `δh̄ = b̄`, when the class vanishes.
    pub corrector: Option<Vec<F>>,
    /// `φ - lift(h̄)`, an inclusion perturbation with vanishing `b̄`.
    pub corrected_inclusion: Option<Vec<Vec<F>>>,
}

/// Decide whether `H` extends to a subalgebra of the deformed `G`.
pub fn lie_subalgebra_obstruction<F: Field>(data: &FinLieData<F>) -> Result<LieObstruction<F>> {
    let complex = data.quotient_complex();
    let b = data.obstruction_cochain();
    if !complex.differential(2).mul_vec(&b).iter().all(F::is_zero) {
        return Err(Error::InvariantViolation("obstruction cochain is not a cocycle".into()));
    }
    let corrector = complex.differential(1).solve(&b);
    let corrected_inclusion = corrector.as_ref().map(|hbar| {
        let t = data.quotient_dim();
        (0..data.subalgebra.len())
            .map(|a| {
                let lifted = data.lift(&hbar[a * t..(a + 1) * t]);
                data.inclusion_perturbation[a]
                    .iter()
                    .zip(lifted)
                    .map(|(p, l)| p.clone() - l)
                    .collect()
            })
            .collect()
    });
    Ok(LieObstruction {
        cocycle: b,
        class_is_zero: corrector.is_some(),
        corrector,
        corrected_inclusion,
    })
}

#[cfg(test)]
mod tests {
    use num_traits::Zero;

    use super::*;
    use crate::scalar::{int, Rat};

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| int(x)).collect()
    }

    fn sl2() -> LieAlgebra<Rat> {
        // e, f, h with [e,f] = h, [h,e] = 2e, [h,f] = -2f
        LieAlgebra::from_brackets(3, &[(0, 1, v(&[0, 0, 1])), (2, 0, v(&[2, 0, 0])), (2, 1, v(&[0, -2, 0]))]).unwrap()
    }

    fn affine() -> LieAlgebra<Rat> {
        LieAlgebra::from_brackets(2, &[(0, 1, v(&[0, 1]))]).unwrap()
    }

    #[test]
    fn jacobi_is_enforced() {
        assert!(LieAlgebra::<Rat>::from_brackets(3, &[(0, 1, v(&[0, 0, 1])), (1, 2, v(&[0, 1, 0]))]).is_err());
        assert!(LieAlgebra::<Rat>::new(1, v(&[1])).is_err());
    }

    #[test]
    fn subsets_are_lexicographic() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(subsets(2, 3).len(), 0);
    }

    #[test]
    fn differential_squares_to_zero() {
        let c = CeComplex::adjoint(sl2());
        for k in 0..3 {
            assert!(c.differential(k + 1).mul(&c.differential(k)).is_zero());
        }
        // Whitehead: H^1 and H^2 of a semisimple algebra vanish
        assert_eq!(c.cohomology_dim(0), 0);
        assert_eq!(c.cohomology_dim(1), 0);
        assert_eq!(c.cohomology_dim(2), 0);
    }

    #[test]
    fn trivial_coefficients_on_sl2() {
        let c = CeComplex::trivial(sl2(), 1);
        assert_eq!(c.cohomology_dim(0), 1);
        assert_eq!(c.cohomology_dim(1), 0);
        assert_eq!(c.cohomology_dim(3), 1);
    }

    #[test]
    fn differential_examples() {
        let c = CeComplex::trivial(LieAlgebra::<Rat>::abelian(2), 2);
        assert_eq!(ce_differential(&c, 1, &vec![int(0); 4]).unwrap(), vec![int(0); 2]);
        assert_eq!(ce_differential(&c, 1, &v(&[3, -1, 2, 5])).unwrap(), vec![int(0); 2]);
        let rank1 = CeComplex::trivial(LieAlgebra::<Rat>::abelian(1), 3);
        assert!(ce_differential(&rank1, 1, &v(&[1, 2, 3])).unwrap().is_empty());
        assert!(matches!(ce_differential(&c, 1, &v(&[1])), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn one_cochain_formula() {
        // (δφ)(e, f) = ρ(e) φ(f) - ρ(f) φ(e) - φ([e, f]) on the adjoint module
        let g = affine();
        let c = CeComplex::adjoint(g.clone());
        let phi = v(&[2, 3, -1, 5]);
        let got = ce_differential(&c, 1, &phi).unwrap();
        let pe = &phi[0..2];
        let pf = &phi[2..4];
        let lhs = g.bracket(&g.unit(0), pf);
        let rhs = g.bracket(&g.unit(1), pe);
        let bracket = g.basis_bracket(0, 1);
        let phi_bracket: Vec<Rat> = (0..2).map(|k| bracket[0].clone() * pe[k].clone() + bracket[1].clone() * pf[k].clone()).collect();
        let expect: Vec<Rat> = (0..2).map(|k| lhs[k].clone() - rhs[k].clone() - phi_bracket[k].clone()).collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn representation_is_checked() {
        let bad = vec![Matrix::identity(1), Matrix::identity(1)];
        assert!(CeComplex::new(affine(), 1, bad).is_err());
        // the character e -> 1, f -> 0 is a representation
        let ok = vec![Matrix::identity(1), Matrix::zeros(1, 1)];
        assert!(CeComplex::new(affine(), 1, ok).is_ok());
    }

    #[test]
    fn whole_algebra_has_no_obstruction() {
        let g = sl2();
        let data = FinLieData::new(
            g.clone(),
            (0..3).map(|i| g.unit(i)).collect(),
            vec![int(0); 27],
            vec![v(&[1, 0, 0]), v(&[0, 2, 0]), v(&[0, 0, 3])],
        )
        .unwrap();
        let o = lie_subalgebra_obstruction(&data).unwrap();
        assert!(o.class_is_zero);
        assert!(o.cocycle.is_empty());
    }

    #[test]
    fn abelian_rigid_is_unobstructed() {
        let g = LieAlgebra::<Rat>::abelian(3);
        let data = FinLieData::rigid(g.clone(), vec![g.unit(0), g.unit(1)]).unwrap();
        let o = lie_subalgebra_obstruction(&data).unwrap();
        assert!(o.class_is_zero);
        assert_eq!(o.cocycle, vec![int(0)]);
    }

    #[test]
    fn rank_one_subalgebra_always_extends() {
        let g = affine();
        let data = FinLieData::new(g.clone(), vec![g.unit(0)], vec![int(0); 8], vec![g.unit(1)]).unwrap();
        let o = lie_subalgebra_obstruction(&data).unwrap();
        assert!(o.class_is_zero);
        assert!(o.cocycle.is_empty());
    }

    #[test]
    fn perturbed_abelian_bracket_obstructs() {
        // μ(e1, e2) = e3 leaves <e1, e2> no longer closed
        let g = LieAlgebra::<Rat>::abelian(3);
        let idx = |i: usize, j: usize, k: usize| (i * 3 + j) * 3 + k;
        let mut mu = vec![int(0); 27];
        mu[idx(0, 1, 2)] = int(1);
        mu[idx(1, 0, 2)] = int(-1);
        let data = FinLieData::new(g.clone(), vec![g.unit(0), g.unit(1)], mu, vec![v(&[0, 0, 0]); 2]).unwrap();
        let o = lie_subalgebra_obstruction(&data).unwrap();
        assert_eq!(o.cocycle, vec![int(1)]);
        assert!(!o.class_is_zero);
        assert!(o.corrector.is_none());
    }

    #[test]
    fn corrector_kills_the_cocycle() {
        // in sl2, deform the bracket along the coboundary of a derivation-like map
        // and perturb the inclusion of the Borel <e, h>
        let g = sl2();
        let h = vec![g.unit(0), g.unit(2)];
        let data = FinLieData::new(g.clone(), h, vec![int(0); 27], vec![v(&[0, 1, 0]), v(&[0, 3, 0])]).unwrap();
        let o = lie_subalgebra_obstruction(&data).unwrap();
        assert!(o.cocycle.iter().any(|x| !x.is_zero()));
        assert!(o.class_is_zero);
        let fixed = data.with_inclusion(o.corrected_inclusion.unwrap()).unwrap();
        assert!(fixed.obstruction_cochain().iter().all(Rat::is_zero));
    }

    #[test]
    fn invalid_data_is_rejected() {
        let g = affine();
        // <f> plus e is not independent
        assert!(FinLieData::rigid(g.clone(), vec![g.unit(1), g.unit(1)]).is_err());
        let g3 = LieAlgebra::<Rat>::from_brackets(3, &[(0, 1, v(&[0, 0, 1]))]).unwrap();
        // <e0, e1> is not closed in the Heisenberg algebra
        assert!(FinLieData::rigid(g3, vec![v(&[1, 0, 0]), v(&[0, 1, 0])]).is_err());
    }
}
