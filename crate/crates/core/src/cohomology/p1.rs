//! Čech cohomology of split bundles on the projective line and on two lines
//! meeting in a node.
//!
//! The line is covered by `U0 = {t != inf}` and `U1 = {s = 1/t != inf}`. A
//! section of `O(d)` is `f0(t)` on `U0` and `f1(s)` on `U1` with
//! `f0 = t^d f1(1/t)` on the overlap, so `s^k` corresponds to `t^(d-k)`.
//! Section spaces are truncated to monomial windows `0 <= k <= W`.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Field;

/// Dimensions `(h0, h1)` together with the window that produced them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LineCohomology {
    pub h0: usize,
    pub h1: usize,
    pub window: usize,
}

/// Laurent exponents on the overlap used for `O(d)` with window `w`.
pub fn overlap_range(d: i64, w: usize) -> (i64, i64) {
    let w = w as i64;
    ((d - w).min(0), w.max(d))
}

/// The Čech differential `C^0 -> C^1` of `O(d)` truncated at window `w`.
/// Columns: `t^0..t^w` on `U0`, then `s^0..s^w` on `U1`. Rows: Laurent
/// exponents of [`overlap_range`].
pub fn cech_matrix<F: Field>(d: i64, w: usize) -> Matrix<F> {
    let (lo, hi) = overlap_range(d, w);
    let rows = (hi - lo + 1) as usize;
    let mut m = Matrix::zeros(rows, 2 * (w + 1));
    for k in 0..=w {
        m[((k as i64 - lo) as usize, k)] = F::one();
        m[((d - k as i64 - lo) as usize, w + 1 + k)] = -F::one();
    }
    m
}

fn window_dims(d: i64, w: usize) -> (usize, usize) {
    let m = cech_matrix::<crate::scalar::Rat>(d, w);
    let rank = m.rank();
    (m.cols() - rank, m.rows() - rank)
}

/// `(h0, h1)` of `O(d)`, enlarging the window until the answer has been the
/// same for three consecutive windows.
pub fn h_p1(d: i64) -> LineCohomology {
    let mut w = 0;
    let mut last = window_dims(d, w);
    let mut stable = 0;
    loop {
        w += 1;
        let cur = window_dims(d, w);
        if cur == last {
            stable += 1;
            if stable == 2 {
                return LineCohomology {
                    h0: cur.0,
                    h1: cur.1,
                    window: w,
                };
            }
        } else {
            stable = 0;
            last = cur;
        }
    }
}

/// A split bundle `O(d_1) + .. + O(d_m)` on the projective line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBundleP1 {
    pub degrees: Vec<i64>,
}

impl GradedBundleP1 {
    pub fn new(degrees: Vec<i64>) -> Self {
        GradedBundleP1 { degrees }
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn cohomology(&self) -> (usize, usize) {
        self.degrees.iter().fold((0, 0), |(a, b), &d| {
            let c = h_p1(d);
            (a + c.h0, b + c.h1)
        })
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees.iter().map(|d| d + 1).sum()
    }

    /// `E^v (x) O(-1)`: the degrees `-d-1`.
    pub fn serre_twist(&self) -> Self {
        GradedBundleP1::new(self.degrees.iter().map(|d| -d - 1).collect())
    }
}

/// Two lines glued at a node `p` (the point `t = 0` on both), with fibres
/// identified by `glue: E1_p -> E2_p`.
#[derive(Clone, Debug, PartialEq)]
pub struct SNCCurveBundle<F: Field> {
    pub left: GradedBundleP1,
    pub right: GradedBundleP1,
    pub glue: Matrix<F>,
}

impl<F: Field> SNCCurveBundle<F> {
    pub fn new(left: GradedBundleP1, right: GradedBundleP1, glue: Matrix<F>) -> Result<Self> {
        if left.rank() != right.rank() {
            return Err(Error::DimensionMismatch(format!(
                "left rank {} differs from right rank {}",
                left.rank(),
                right.rank()
            )));
        }
        if glue.rows() != left.rank() || glue.cols() != left.rank() {
            return Err(Error::ShapeMismatch(format!(
                "glue must be {0}x{0}, got {1}x{2}",
                left.rank(),
                glue.rows(),
                glue.cols()
            )));
        }
        if glue.inverse().is_none() {
            return Err(Error::Invalid("glue matrix is not invertible".into()));
        }
        Ok(SNCCurveBundle { left, right, glue })
    }

    /// Identity glue between the two sides.
    pub fn identity(left: GradedBundleP1, right: GradedBundleP1) -> Result<Self> {
        let n = left.rank();
        Self::new(left, right, Matrix::identity(n))
    }

    pub fn rank(&self) -> usize {
        self.left.rank()
    }

    /// `E^v (x) omega_C`: degrees `-d-1` on each side, glued by the inverse
    /// transpose.
    pub fn serre_dual(&self) -> Self {
        let inv = self.glue.inverse().expect("glue is invertible");
        SNCCurveBundle {
            left: self.left.serre_twist(),
            right: self.right.serre_twist(),
            glue: inv.transpose(),
        }
    }
}

/// `(h0, h1)` of a bundle on the nodal curve from
/// `0 -> H0(E) -> H0(E1) + H0(E2) -> E_p -> H1(E) -> H1(E1) + H1(E2) -> 0`.
/// The middle map is `(s1, s2) -> glue s1(p) - s2(p)`.
pub fn cohomology_snc_curve<F: Field>(e: &SNCCurveBundle<F>) -> (usize, usize) {
    let rank = e.rank();
    // global sections with nonzero value at p: the constant monomial of each
    // summand of nonnegative degree
    let left_at_p: Vec<usize> = (0..rank).filter(|&k| e.left.degrees[k] >= 0).collect();
    let right_at_p: Vec<usize> = (0..rank).filter(|&k| e.right.degrees[k] >= 0).collect();
    let mut phi = Matrix::zeros(rank, left_at_p.len() + right_at_p.len());
    for (c, &k) in left_at_p.iter().enumerate() {
        for r in 0..rank {
            phi[(r, c)] = e.glue[(r, k)].clone();
        }
    }
    for (c, &k) in right_at_p.iter().enumerate() {
        phi[(k, left_at_p.len() + c)] = -F::one();
    }
    let rank_phi = phi.rank();
    let (a0, a1) = e.left.cohomology();
    let (b0, b1) = e.right.cohomology();
    (a0 + b0 - rank_phi, rank - rank_phi + a1 + b1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Rat};

    #[test]
    fn line_examples() {
        let c = h_p1(0);
        assert_eq!((c.h0, c.h1), (1, 0));
        let c = h_p1(3);
        assert_eq!((c.h0, c.h1), (4, 0));
        let c = h_p1(-2);
        assert_eq!((c.h0, c.h1), (0, 1));
        assert!(h_p1(5).window >= 5);
    }

    #[test]
    fn small_windows_undercount() {
        assert_eq!(window_dims(3, 2), (2, 0));
        assert_eq!(window_dims(3, 3), (4, 0));
    }

    fn bundle(l: &[i64], r: &[i64]) -> SNCCurveBundle<Rat> {
        SNCCurveBundle::identity(GradedBundleP1::new(l.to_vec()), GradedBundleP1::new(r.to_vec())).unwrap()
    }

    #[test]
    fn nodal_examples() {
        assert_eq!(cohomology_snc_curve(&bundle(&[0], &[0])), (1, 0));
        assert_eq!(cohomology_snc_curve(&bundle(&[1, 1, 1], &[1, 1, 1])).1, 0);
        assert_eq!(cohomology_snc_curve(&bundle(&[1, -1, 3], &[1, -1, 3])).1, 1);
    }

    #[test]
    fn glue_changes_sections() {
        let left = GradedBundleP1::new(vec![0, -1]);
        let id = SNCCurveBundle::<Rat>::identity(left.clone(), left.clone()).unwrap();
        assert_eq!(cohomology_snc_curve(&id), (1, 1));
        // the swap sends the left constant into the O(-1) fibre
        let swap = Matrix::from_rows(2, vec![vec![int::<Rat>(0), int(1)], vec![int(1), int(0)]]);
        let e = SNCCurveBundle::new(left.clone(), left, swap).unwrap();
        assert_eq!(cohomology_snc_curve(&e), (0, 0));
    }

    #[test]
    fn bad_glue_rejected() {
        let l = GradedBundleP1::new(vec![0, 0]);
        let singular = Matrix::from_rows(2, vec![vec![int(1), int(1)], vec![int(1), int(1)]]);
        assert!(SNCCurveBundle::<Rat>::new(l.clone(), l.clone(), singular).is_err());
        assert!(SNCCurveBundle::<Rat>::new(l, GradedBundleP1::new(vec![0]), Matrix::identity(2)).is_err());
    }
}
