//! Test-side oracles shared by the integration tests.

#![allow(dead_code)]

use std::f64::consts::PI;

use newform::{Component, LocalField, Repr};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `ln Gamma` by upward recurrence to `Re z >= 15` and the Stirling series.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    let mut z = z;
    let mut shift = c(0.0, 0.0);
    while z.re < 15.0 {
        shift += z.ln();
        z += 1.0;
    }
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    // B_{2k} / (2k (2k-1))
    let coeffs = [1.0 / 12.0, -1.0 / 360.0, 1.0 / 1260.0, -1.0 / 1680.0, 1.0 / 1188.0, -691.0 / 360360.0];
    let mut series = c(0.0, 0.0);
    let mut pow = inv;
    for a in coeffs {
        series += a * pow;
        pow *= inv2;
    }
    (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + series - shift
}

pub fn gamma(z: Complex64) -> Complex64 {
    ln_gamma(z).exp()
}

pub fn zeta_r(s: Complex64) -> Complex64 {
    c(PI, 0.0).powc(-s / 2.0) * gamma(s / 2.0)
}

pub fn zeta_c(s: Complex64) -> Complex64 {
    2.0 * c(2.0 * PI, 0.0).powc(-s) * gamma(s)
}

/// L-factor of a single block from the Langlands parameters.
pub fn oracle_block_l(comp: &Component, s: Complex64) -> Complex64 {
    let z = s + comp.t();
    match comp.field() {
        LocalField::Complex => zeta_c(z + comp.kappa().abs() as f64 / 2.0),
        LocalField::Real if comp.is_character() => zeta_r(z + comp.kappa() as f64),
        LocalField::Real => zeta_c(z + (comp.kappa() - 1) as f64 / 2.0),
    }
}

pub fn oracle_l(rep: &Repr, s: Complex64) -> Complex64 {
    rep.components().iter().map(|b| oracle_block_l(b, s)).product()
}

/// `L(s, pi x pi')` for spherical `pi'`.
pub fn oracle_rs_l(rep: &Repr, sph: &Repr, s: Complex64) -> Complex64 {
    sph.components().iter().map(|b| oracle_l(rep, s + b.t())).product()
}

/// `i^{-c}`.
pub fn i_pow_neg(c: u64) -> Complex64 {
    [(1.0, 0.0), (0.0, -1.0), (-1.0, 0.0), (0.0, 1.0)].map(|(re, im)| Complex64::new(re, im))[(c % 4) as usize]
}

/// A random isobaric sum of rank `n`, in Langlands order.
pub fn random_repr<R: Rng>(rng: &mut R, field: LocalField, n: usize) -> Repr {
    let mut comps = Vec::new();
    let mut left = n;
    while left > 0 {
        let t = c(rng.random_range(-0.5..0.5), rng.random_range(-2.0..2.0));
        let comp = match field {
            LocalField::Real if left >= 2 && rng.random_bool(0.4) => {
                left -= 2;
                Component::discrete(field, rng.random_range(2..=7), t).unwrap()
            }
            LocalField::Real => {
                left -= 1;
                Component::character(field, rng.random_range(0..=1), t).unwrap()
            }
            LocalField::Complex => {
                left -= 1;
                Component::character(field, rng.random_range(-5..=5), t).unwrap()
            }
        };
        comps.push(comp);
    }
    Repr::new(field, comps).unwrap().canonicalize()
}

/// Rank of a rational matrix by exact Gaussian elimination.
pub fn exact_rank(mut a: Vec<Vec<BigRational>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(rank, piv);
        let p = a[rank][col].clone();
        for r in 0..rows {
            if r != rank && !a[r][col].is_zero() {
                let f = a[r][col].clone() / p.clone();
                for k in col..cols {
                    let v = a[rank][k].clone() * f.clone();
                    a[r][k] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `C(n, k)` by Pascal's triangle.
pub fn pascal(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut row = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = vec![BigInt::one(); row.len() + 1];
        for j in 1..row.len() {
            next[j] = &row[j - 1] + &row[j];
        }
        row = next;
    }
    row[k].clone()
}
