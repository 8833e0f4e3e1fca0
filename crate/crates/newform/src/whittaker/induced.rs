//! The newform `f°` in the induced model.

use num_complex::Complex64;

use crate::conventions::Conventions;
use crate::error::{Error, Result};
use crate::harmonics::{zonal_product, NumPoly};
use crate::repcore::{ComponentKind, Repr};
use crate::whittaker::gl2::{block_constant, canonical_constant};
use crate::whittaker::GroupPoint;

/// `f°(u a k) = delta^{1/2}(a) chi(a) c° prod c_j° conj(P°(conj(k_{., n})))`.
#[derive(Debug, Clone)]
pub struct InducedNewform {
    rep: Repr,
    constant: Complex64,
    zonal: NumPoly,
}

impl InducedNewform {
    pub fn new(rep: &Repr) -> Result<Self> {
        let mut constant = canonical_constant(rep)?;
        for c in rep.components() {
            constant *= block_constant(c)?;
        }
        Ok(Self { rep: rep.clone(), constant, zonal: zonal_product(rep).compile() })
    }

    pub fn rep(&self) -> &Repr {
        &self.rep
    }

    /// `c° prod_j c_j°`.
    pub fn constant(&self) -> Complex64 {
        self.constant
    }

    /// `f°(k)`, read off from the last column of `k`.
    pub fn on_k(&self, last_column: &[Complex64]) -> Complex64 {
        let x: Vec<Complex64> = last_column.iter().map(|z| z.conj()).collect();
        self.constant * self.zonal.eval_unchecked(&x).conj()
    }

    pub fn eval(&self, g: &GroupPoint) -> Result<Complex64> {
        let n = self.rep.rank();
        if g.n() != n || g.field != self.rep.field() {
            return Err(Error::Mismatch("group point does not match the representation".into()));
        }
        let iw = g.iwasawa();
        let conv = Conventions::new(g.field);
        let abs = |j: usize| conv.abs(Complex64::new(iw.a[j], 0.0));
        let mut value = Complex64::new(1.0, 0.0);
        for (j, _) in iw.a.iter().enumerate() {
            let e = (n as f64 - 2.0 * j as f64 - 1.0) / 2.0;
            value *= abs(j).powf(e);
        }
        for (c, &off) in self.rep.components().iter().zip(&self.rep.block_offsets()) {
            match c.kind() {
                ComponentKind::Character => value *= Complex64::new(abs(off), 0.0).powc(c.t()),
                ComponentKind::DiscreteSeries => {
                    let h = (c.kappa() - 1) as f64 / 2.0;
                    value *= Complex64::new(abs(off), 0.0).powc(c.t() + h);
                    value *= Complex64::new(abs(off + 1), 0.0).powc(c.t() - h);
                }
            }
        }
        let col: Vec<Complex64> = (0..n).map(|i| iw.k[(i, n - 1)]).collect();
        Ok(value * self.on_k(&col))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repcore::LocalField;
    use nalgebra::DMatrix;

    #[test]
    fn left_equivariance() {
        let rep: Repr = "R: chi^1 t=0.3 ; chi^0 t=-0.2 ; chi^1 t=0.1".parse().unwrap();
        let f = InducedNewform::new(&rep).unwrap();
        let g = GroupPoint::from_real(&[&[0.3, -1.2, 0.5], &[2.0, 0.1, -0.4], &[0.7, 0.9, 1.1]]).unwrap();
        let b = GroupPoint::from_real(&[&[2.0, 0.7, -1.0], &[0.0, 0.5, 3.0], &[0.0, 0.0, 1.5]]).unwrap();
        // delta^{1/2} chi for b = diag(2, .5, 1.5) times unipotent
        let want = 2f64.powf(1.0 + 0.3) * 0.5f64.powf(-0.2) * 1.5f64.powf(-1.0 + 0.1);
        let lhs = f.eval(&b.mul(&g)).unwrap();
        let rhs = f.eval(&g).unwrap() * want;
        assert!((lhs - rhs).norm() < 1e-12 * rhs.norm(), "{lhs} {rhs}");
    }

    #[test]
    fn right_k1_invariance_complex() {
        let rep: Repr = "C: chi^1 t=0.2 ; chi^-1 t=0".parse().unwrap();
        let f = InducedNewform::new(&rep).unwrap();
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let g = GroupPoint::new(
            LocalField::Complex,
            DMatrix::from_row_slice(2, 2, &[c(0.3, 1.0), c(-0.5, 0.2), c(1.5, -0.7), c(0.4, 0.4)]),
        )
        .unwrap();
        let k1 = GroupPoint::diag(LocalField::Complex, &[Complex64::from_polar(1.0, 0.7), c(1.0, 0.0)]).unwrap();
        let a = f.eval(&g).unwrap();
        let b = f.eval(&g.mul(&k1)).unwrap();
        assert!((a - b).norm() < 1e-12 * a.norm());
    }
}
