//! Conductor exponent, newform K-type, oldform dimensions, epsilon factor,
//! Howe degree, Vogan norm and automorphic induction.
//!
//! Everything here depends only on the `kappa` data of a representation.

use num_bigint::BigUint;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harmonics::dims::{binomial, dim_harmonics, Degrees};
use crate::repcore::{Component, ComponentKind, GroupKind, HighestWeight, LocalField, Repr};

/// `c(pi) = sum c(pi_j)`.
pub fn conductor_exponent(rep: &Repr) -> u64 {
    rep.components().iter().map(Component::conductor).sum()
}

/// Highest weight of the newform K-type.
pub fn newform_ktype(rep: &Repr) -> HighestWeight {
    let n = rep.rank();
    let mut mu = vec![0i64; n];
    match rep.field() {
        LocalField::Complex => {
            let pos: i64 = rep.components().iter().map(|c| c.kappa().max(0)).sum();
            let neg: i64 = rep.components().iter().map(|c| c.kappa().min(0)).sum();
            if n == 1 {
                mu[0] = pos + neg;
            } else {
                mu[0] = pos;
                mu[n - 1] = neg;
            }
            HighestWeight::unitary(mu).expect("newform weight is dominant")
        }
        LocalField::Real => {
            mu[0] = conductor_exponent(rep) as i64;
            HighestWeight::orthogonal(mu).expect("single-row weight is valid")
        }
    }
}

/// `dim tau°`.
pub fn newform_dim(rep: &Repr) -> BigUint {
    let mu = newform_ktype(rep);
    let n = mu.n();
    let e = mu.entries();
    if n == 1 {
        return BigUint::from(1u32);
    }
    let degrees = match rep.field() {
        LocalField::Complex => Degrees::Complex(e[0] as u32, (-e[n - 1]) as u32),
        LocalField::Real => Degrees::Real(e[0] as u32),
    };
    dim_harmonics(rep.field(), n, degrees).expect("newform degrees are admissible")
}

/// Dimension of the `K_{n-1}`-fixed vectors in K-types of Howe degree `m`.
pub fn oldform_dim(rep: &Repr, m: u64) -> Result<BigUint> {
    let n = rep.rank();
    if n < 2 {
        return Err(Error::UnsupportedRank("oldform spaces are defined for n >= 2; see oldform_dim_rank_one".into()));
    }
    let c = conductor_exponent(rep);
    if m < c || (m - c) % 2 == 1 {
        return Ok(BigUint::from(0u32));
    }
    Ok(binomial((m - c) / 2 + n as u64 - 2, n as u64 - 2))
}

/// Rank-one convention: 1 at `m = c(pi)`, 0 elsewhere.
pub fn oldform_dim_rank_one(rep: &Repr, m: u64) -> Result<BigUint> {
    if rep.rank() != 1 {
        return Err(Error::UnsupportedRank(format!("expected n = 1, got {}", rep.rank())));
    }
    Ok(BigUint::from(u32::from(m == conductor_exponent(rep))))
}

/// `oldform_dim` for `n >= 2`, the rank-one convention otherwise.
pub fn oldform_dim_any(rep: &Repr, m: u64) -> BigUint {
    if rep.rank() == 1 {
        oldform_dim_rank_one(rep, m).expect("rank one")
    } else {
        oldform_dim(rep, m).expect("rank at least two")
    }
}

/// `epsilon(s, pi, psi) = i^power`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EpsilonFactor {
    power_of_i: u8,
}

impl EpsilonFactor {
    pub fn from_power(power: i64) -> Self {
        Self { power_of_i: power.rem_euclid(4) as u8 }
    }

    pub fn power_of_i(self) -> u8 {
        self.power_of_i
    }

    pub fn value(self) -> Complex64 {
        match self.power_of_i {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }
}

impl std::ops::Mul for EpsilonFactor {
    type Output = EpsilonFactor;
    fn mul(self, rhs: Self) -> Self {
        Self::from_power(i64::from(self.power_of_i) + i64::from(rhs.power_of_i))
    }
}

impl std::fmt::Display for EpsilonFactor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self.power_of_i {
            0 => "1",
            1 => "i",
            2 => "-1",
            _ => "-i",
        };
        f.write_str(s)
    }
}

pub fn epsilon_factor(rep: &Repr) -> EpsilonFactor {
    EpsilonFactor::from_power(-(conductor_exponent(rep) as i64))
}

/// `sum |mu_j|` for `U(n)`, `sum mu_j` for `O(n)`.
pub fn howe_degree(w: &HighestWeight) -> u64 {
    match w.group() {
        GroupKind::Unitary => w.entries().iter().map(|x| x.unsigned_abs()).sum(),
        GroupKind::Orthogonal => w.entries().iter().map(|&x| x as u64).sum(),
    }
}

/// Squared Vogan norm.
pub fn vogan_norm_sq(w: &HighestWeight) -> i64 {
    let n = w.n() as i64;
    let mu = w.entries();
    match w.group() {
        GroupKind::Unitary => mu
            .iter()
            .enumerate()
            .map(|(j, &m)| {
                let v = m + n + 1 - 2 * (j as i64 + 1);
                v * v
            })
            .sum(),
        GroupKind::Orthogonal => {
            let (m, _) = w.orthogonal_shape().expect("validated orthogonal weight");
            let head: i64 = (1..=m as i64)
                .map(|j| {
                    let v = mu[j as usize - 1] + n - 2 * j;
                    v * v
                })
                .sum();
            let tail: i64 = (m as i64 + 1..=n / 2)
                .map(|j| {
                    let v = n - 2 * j;
                    v * v
                })
                .sum();
            head + tail
        }
    }
}

/// Automorphic induction from `GL_n(C)` to `GL_{2n}(R)`.
pub fn automorphic_induction(rep: &Repr) -> Result<Repr> {
    if rep.field() != LocalField::Complex {
        return Err(Error::Domain("automorphic induction starts from a representation over C".into()));
    }
    let mut out = Vec::new();
    for c in rep.components() {
        debug_assert_eq!(c.kind(), ComponentKind::Character);
        if c.kappa() == 0 {
            out.push(Component::character(LocalField::Real, 0, c.t())?);
            out.push(Component::character(LocalField::Real, 1, c.t())?);
        } else {
            out.push(Component::discrete(LocalField::Real, c.kappa().abs() + 1, c.t())?);
        }
    }
    Repr::new(LocalField::Real, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rep(s: &str) -> Repr {
        s.parse().unwrap()
    }

    #[test]
    fn conductor_examples() {
        assert_eq!(conductor_exponent(&rep("R: chi^1 t=0.3i ; chi^1 t=-0.3i")), 2);
        assert_eq!(conductor_exponent(&rep("R: D^7 t=0")), 7);
        assert_eq!(conductor_exponent(&rep("C: chi^2 t=0 ; chi^-1 t=0 ; chi^0 t=0")), 3);
    }

    #[test]
    fn ktype_examples() {
        let w = newform_ktype(&rep("C: chi^2 t=0 ; chi^-1 t=0 ; chi^0 t=0"));
        assert_eq!(w.entries(), &[2, 0, -1]);
        let w = newform_ktype(&rep("R: D^3 t=0 ; chi^1 t=0"));
        assert_eq!(w.entries(), &[4, 0, 0]);
        let w = newform_ktype(&rep("R: chi^0 t=0 ; chi^0 t=1"));
        assert_eq!(w.entries(), &[0, 0]);
    }

    #[test]
    fn oldform_examples() {
        let r = rep("R: D^3 t=0 ; chi^0 t=0");
        assert_eq!(oldform_dim(&r, 7).unwrap(), BigUint::from(3u32));
        assert_eq!(oldform_dim(&r, 3).unwrap(), BigUint::from(1u32));
        assert_eq!(oldform_dim(&r, 4).unwrap(), BigUint::from(0u32));
        assert_eq!(oldform_dim(&r, 1).unwrap(), BigUint::from(0u32));
        assert!(matches!(oldform_dim(&rep("R: chi^1 t=0"), 1), Err(Error::UnsupportedRank(_))));
        assert_eq!(oldform_dim_rank_one(&rep("C: chi^-2 t=0"), 2).unwrap(), BigUint::from(1u32));
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(epsilon_factor(&rep("R: chi^1 t=0 ; chi^1 t=0")).value(), Complex64::new(-1.0, 0.0));
        assert_eq!(epsilon_factor(&rep("R: chi^0 t=0")).value(), Complex64::new(1.0, 0.0));
        assert_eq!(epsilon_factor(&rep("R: D^3 t=0")).to_string(), "i");
    }

    #[test]
    fn howe_and_vogan() {
        assert_eq!(howe_degree(&HighestWeight::unitary(vec![2, 0, -1]).unwrap()), 3);
        assert_eq!(howe_degree(&HighestWeight::orthogonal(vec![4, 0, 0]).unwrap()), 4);
        assert_eq!(vogan_norm_sq(&HighestWeight::unitary(vec![0]).unwrap()), 0);
        assert_eq!(vogan_norm_sq(&HighestWeight::unitary(vec![1, 0]).unwrap()), 5);
        for p in 0..6 {
            assert_eq!(vogan_norm_sq(&HighestWeight::orthogonal(vec![p, 0]).unwrap()), p * p);
        }
    }

    #[test]
    fn induction_examples() {
        let ai = automorphic_induction(&rep("C: chi^0 t=0.25")).unwrap();
        assert_eq!(ai.to_string(), "R: chi^0 t=0.25 ; chi^1 t=0.25");
        let ai = automorphic_induction(&rep("C: chi^2 t=0.25")).unwrap();
        assert_eq!(ai.to_string(), "R: D^3 t=0.25");
        let ai = automorphic_induction(&rep("C: chi^-4 t=0")).unwrap();
        assert_eq!(ai.to_string(), "R: D^5 t=0");
        assert!(automorphic_induction(&rep("R: chi^0 t=0")).is_err());
    }

    #[test]
    fn dims_of_newform_types() {
        assert_eq!(newform_dim(&rep("R: D^3 t=0")), BigUint::from(2u32));
        assert_eq!(newform_dim(&rep("C: chi^1 t=0 ; chi^-1 t=0")), BigUint::from(3u32));
        assert_eq!(newform_dim(&rep("C: chi^1 t=0")), BigUint::from(1u32));
    }
}
