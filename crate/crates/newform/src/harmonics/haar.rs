//! Haar-distributed elements of `U(n)` and `O(n)`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::repcore::GroupKind;

/// An element of `U(n)` or `O(n)`, stored as a complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CompactGroupElement {
    pub group: GroupKind,
    pub matrix: DMatrix<Complex64>,
}

impl CompactGroupElement {
    pub fn n(&self) -> usize {
        self.matrix.nrows()
    }

    /// `max |k k^* - 1|`.
    pub fn unitarity_residual(&self) -> f64 {
        let n = self.n();
        let prod = &self.matrix * self.matrix.adjoint();
        let id = DMatrix::<Complex64>::identity(n, n);
        (prod - id).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Row vector `x k`.
    pub fn act_row(&self, x: &[Complex64]) -> Vec<Complex64> {
        let n = self.n();
        (0..n).map(|j| (0..n).map(|i| x[i] * self.matrix[(i, j)]).sum()).collect()
    }

    /// `e_n k^{-1}`, the conjugate of the last column.
    pub fn last_row_of_inverse(&self) -> Vec<Complex64> {
        let n = self.n();
        (0..n).map(|j| self.matrix[(j, n - 1)].conj()).collect()
    }
}

/// Haar sample: QR of a Gaussian matrix with the phases of `diag R`
/// moved into `Q`.
pub fn haar_sample<R: Rng + ?Sized>(group: GroupKind, n: usize, rng: &mut R) -> CompactGroupElement {
    let mut g = DMatrix::<Complex64>::zeros(n, n);
    for z in g.iter_mut() {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = match group {
            GroupKind::Unitary => rng.sample(StandardNormal),
            GroupKind::Orthogonal => 0.0,
        };
        *z = Complex64::new(re, im);
    }
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    if group == GroupKind::Orthogonal {
        for z in q.iter_mut() {
            z.im = 0.0;
        }
    }
    CompactGroupElement { group, matrix: q }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::quad::seeded_rng;

    #[test]
    fn samples_are_unitary() {
        let mut rng = seeded_rng(3);
        for n in 1..=5 {
            for g in [GroupKind::Unitary, GroupKind::Orthogonal] {
                let k = haar_sample(g, n, &mut rng);
                assert!(k.unitarity_residual() < 1e-12);
            }
        }
    }

    #[test]
    fn o1_is_plus_minus_one() {
        let mut rng = seeded_rng(11);
        let mut plus: i32 = 0;
        for _ in 0..2000 {
            let k = haar_sample(GroupKind::Orthogonal, 1, &mut rng);
            let v = k.matrix[(0, 0)].re;
            assert!((v.abs() - 1.0).abs() < 1e-15);
            if v > 0.0 {
                plus += 1;
            }
        }
        assert!((plus - 1000).abs() < 150);
    }
}
