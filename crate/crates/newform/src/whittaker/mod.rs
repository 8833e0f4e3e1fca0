//! Whittaker newforms: closed forms for `GL_1` and `GL_2`, the Jacquet
//! integral, propagation to `GL_2` and `GL_3`, and convolution-section
//! residuals.

pub mod gl2;
pub mod induced;
pub mod pieri;
pub mod propagate;
pub mod units;

pub use gl2::{
    canonical_constant, whittaker_dual_spherical, whittaker_gl2, whittaker_gl2_closed, whittaker_gl2_jacquet,
    whittaker_gl2_on_torus,
};
pub use induced::InducedNewform;
pub use pieri::pieri_residual;
pub use propagate::{whittaker_propagate, PropagateOptions};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::conventions::chi_power;
use crate::error::{Error, Result};
use crate::repcore::{ComponentKind, LocalField, Repr};

/// A diagonal element of `GL_n(F)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TorusPoint {
    pub field: LocalField,
    pub entries: Vec<Complex64>,
}

impl TorusPoint {
    pub fn new(field: LocalField, entries: Vec<Complex64>) -> Result<Self> {
        if entries.iter().any(|z| z.norm() == 0.0) {
            return Err(Error::Domain("torus entries must be nonzero".into()));
        }
        if field == LocalField::Real && entries.iter().any(|z| z.im != 0.0) {
            return Err(Error::Domain("real torus entries must be real".into()));
        }
        Ok(Self { field, entries })
    }

    pub fn to_group(&self) -> GroupPoint {
        GroupPoint {
            field: self.field,
            matrix: DMatrix::from_diagonal(&nalgebra::DVector::from_vec(self.entries.clone())),
        }
    }
}

/// `g = u a k` with `u` unipotent upper triangular, `a` positive diagonal
/// and `k` in `K_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Iwasawa {
    pub u: DMatrix<Complex64>,
    pub a: Vec<f64>,
    pub k: DMatrix<Complex64>,
}

impl Iwasawa {
    pub fn reconstruct(&self) -> DMatrix<Complex64> {
        let n = self.a.len();
        let a = DMatrix::from_fn(
            n,
            n,
            |i, j| if i == j { Complex64::new(self.a[i], 0.0) } else { Complex64::new(0.0, 0.0) },
        );
        &self.u * a * &self.k
    }
}

/// An element of `GL_n(F)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupPoint {
    pub field: LocalField,
    pub matrix: DMatrix<Complex64>,
}

impl GroupPoint {
    pub fn new(field: LocalField, matrix: DMatrix<Complex64>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Domain("group element must be square".into()));
        }
        if field == LocalField::Real && matrix.iter().any(|z| z.im != 0.0) {
            return Err(Error::Domain("real group element has complex entries".into()));
        }
        if matrix.determinant().norm() == 0.0 {
            return Err(Error::Domain("group element is singular".into()));
        }
        Ok(Self { field, matrix })
    }

    pub fn from_real(rows: &[&[f64]]) -> Result<Self> {
        let n = rows.len();
        let m = DMatrix::from_fn(n, n, |i, j| Complex64::new(rows[i][j], 0.0));
        Self::new(LocalField::Real, m)
    }

    pub fn identity(field: LocalField, n: usize) -> Self {
        Self { field, matrix: DMatrix::identity(n, n) }
    }

    pub fn diag(field: LocalField, entries: &[Complex64]) -> Result<Self> {
        Ok(TorusPoint::new(field, entries.to_vec())?.to_group())
    }

    pub fn n(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn det(&self) -> Complex64 {
        self.matrix.determinant()
    }

    pub fn mul(&self, other: &GroupPoint) -> GroupPoint {
        GroupPoint { field: self.field, matrix: &self.matrix * &other.matrix }
    }

    /// `diag(g, 1)`.
    pub fn embed(&self) -> GroupPoint {
        let n = self.n();
        let mut m = DMatrix::identity(n + 1, n + 1);
        m.view_mut((0, 0), (n, n)).copy_from(&self.matrix);
        GroupPoint { field: self.field, matrix: m }
    }

    /// Iwasawa decomposition by Gram-Schmidt on the rows of `g`, last row
    /// first: row `i` is `a_i k_i + sum_{j > i} u_ij a_j k_j`.
    pub fn iwasawa(&self) -> Iwasawa {
        let n = self.n();
        let zero = Complex64::new(0.0, 0.0);
        let mut k = DMatrix::from_element(n, n, zero);
        let mut u = DMatrix::identity(n, n);
        let mut a = vec![0.0; n];
        for i in (0..n).rev() {
            let mut r: Vec<Complex64> = (0..n).map(|c| self.matrix[(i, c)]).collect();
            // two passes of modified Gram-Schmidt
            for _ in 0..2 {
                for j in i + 1..n {
                    let c: Complex64 = (0..n).map(|m| r[m] * k[(j, m)].conj()).sum();
                    for m in 0..n {
                        r[m] -= c * k[(j, m)];
                    }
                    u[(i, j)] += c;
                }
            }
            let norm = r.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            a[i] = norm;
            for m in 0..n {
                k[(i, m)] = r[m] / norm;
            }
        }
        // The first row loses relative accuracy when the rows of g are nearly
        // parallel; a_1 is recovered from |det g| instead.
        let det = self.matrix.determinant();
        a[0] = det.norm() / a[1..].iter().product::<f64>();
        if n == 2 {
            let zeta = det / det.norm();
            k[(0, 0)] = zeta * k[(1, 1)].conj();
            k[(0, 1)] = -zeta * k[(1, 0)].conj();
        }
        for i in 0..n {
            for j in i + 1..n {
                u[(i, j)] /= a[j];
            }
        }
        Iwasawa { u, a, k }
    }
}

/// `W°(x) = chi^kappa(x) |x|^t` for a character of `F^x`.
pub fn whittaker_gl1(rep: &Repr, x: Complex64) -> Result<Complex64> {
    if rep.rank() != 1 {
        return Err(Error::UnsupportedRank("GL_1 Whittaker function needs n = 1".into()));
    }
    if x.norm() == 0.0 {
        return Err(Error::Domain("x must be nonzero".into()));
    }
    let c = &rep.components()[0];
    debug_assert_eq!(c.kind(), ComponentKind::Character);
    let abs = crate::conventions::Conventions::new(rep.field()).abs(x);
    Ok(chi_power(rep.field(), c.kappa(), x) * Complex64::new(abs, 0.0).powc(c.t()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iwasawa_reconstructs() {
        let g = GroupPoint::from_real(&[&[0.3, -1.2, 0.5], &[2.0, 0.1, -0.4], &[0.7, 0.9, 1.1]]).unwrap();
        let iw = g.iwasawa();
        assert!((iw.reconstruct() - &g.matrix).norm() < 1e-12);
        assert!(iw.a.iter().all(|&x| x > 0.0));
        let kk = &iw.k * iw.k.adjoint();
        assert!((kk - DMatrix::<Complex64>::identity(3, 3)).norm() < 1e-12);
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let m = DMatrix::from_row_slice(2, 2, &[c(0.3, 1.0), c(-0.5, 0.2), c(1.5, -0.7), c(0.4, 0.4)]);
        let g = GroupPoint::new(LocalField::Complex, m).unwrap();
        let iw = g.iwasawa();
        assert!((iw.reconstruct() - &g.matrix).norm() < 1e-12);
        for i in 0..2 {
            for j in 0..i {
                assert_eq!(iw.u[(i, j)], c(0.0, 0.0));
            }
            assert!((iw.u[(i, i)] - 1.0).norm() < 1e-14);
        }
    }

    #[test]
    fn gl1_examples() {
        let rep: Repr = "R: chi^0 t=0".parse().unwrap();
        assert_eq!(whittaker_gl1(&rep, Complex64::new(3.0, 0.0)).unwrap(), Complex64::new(1.0, 0.0));
        let rep: Repr = "R: chi^1 t=0.5".parse().unwrap();
        let w = whittaker_gl1(&rep, Complex64::new(-2.0, 0.0)).unwrap();
        assert!((w + 2f64.powf(0.5)).norm() < 1e-14);
        let rep: Repr = "C: chi^1 t=0.25".parse().unwrap();
        let i = Complex64::new(0.0, 1.0);
        assert!((whittaker_gl1(&rep, i).unwrap() - i).norm() < 1e-14);
        assert!(whittaker_gl1(&rep, Complex64::new(0.0, 0.0)).is_err());
    }
}
