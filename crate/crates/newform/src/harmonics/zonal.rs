//! Zonal harmonics `P°`, their products along a block decomposition, and
//! bases of harmonic spaces.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::harmonics::dims::{binomial, validate, Degrees};
use crate::harmonics::poly::{coeff_int, i_pow, rat, Coeff, Poly};
use crate::repcore::{ComponentKind, LocalField, Repr};

fn big(n: num_bigint::BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn factorial(n: u64) -> BigRational {
    (1..=n).fold(BigRational::one(), |acc, k| acc * rat(k as i64, 1))
}

/// `|x_1|^2 + ... + |x_{n-1}|^2` as a polynomial in `n` variables.
fn head_norm(field: LocalField, n: usize) -> Poly {
    (0..n - 1).fold(Poly::zero(field, n), |acc, j| acc.add(&Poly::var(field, n, j).mul(&Poly::conj_var(field, n, j))))
}

/// The zonal harmonic `P°` in `H_p(R^n)` or `H_{p,q}(C^n)`.
pub fn zonal(field: LocalField, n: usize, degrees: Degrees) -> Result<Poly> {
    validate(field, n, degrees)?;
    let last = Poly::var(field, n, n - 1);
    let last_bar = Poly::conj_var(field, n, n - 1);
    match degrees {
        Degrees::Real(p) => {
            if n == 1 {
                return Ok(last.pow(p));
            }
            let head = head_norm(field, n);
            let mut out = Poly::zero(field, n);
            // Gamma((n-1)/2) / Gamma((n-1)/2 + nu/2) = 1 / prod_{j < nu/2} ((n-1)/2 + j)
            let mut gamma_ratio = BigRational::one();
            for nu in (0..=p).step_by(2) {
                if nu > 0 {
                    let j = i64::from(nu / 2 - 1);
                    gamma_ratio /= rat(n as i64 - 1 + 2 * j, 2);
                }
                let num = factorial(u64::from(p)) * gamma_ratio.clone();
                let den = rat(1i64 << nu, 1) * factorial(u64::from(nu / 2)) * factorial(u64::from(p - nu));
                let c = i_pow(i64::from(nu)) * Complex::new(num / den, BigRational::zero());
                out = out.add(&head.pow(nu / 2).mul(&last.pow(p - nu)).scale(&c));
            }
            Ok(out)
        }
        Degrees::Complex(p, q) => {
            if n == 1 {
                return Ok(last.pow(p).mul(&last_bar.pow(q)));
            }
            let head = head_norm(field, n);
            let mut out = Poly::zero(field, n);
            for nu in 0..=p.min(q) {
                let (p64, q64, nu64, m) = (u64::from(p), u64::from(q), u64::from(nu), n as u64);
                let mut c = big(binomial(p64, nu64)) * big(binomial(q64, nu64)) / big(binomial(nu64 + m - 2, m - 2));
                if nu % 2 == 1 {
                    c = -c;
                }
                let term = head.pow(nu).mul(&last.pow(p - nu)).mul(&last_bar.pow(q - nu));
                out = out.add(&term.scale(&Complex::new(c, BigRational::zero())));
            }
            Ok(out)
        }
    }
}

/// Embed a polynomial in `m` variables into `n` variables at `offset`.
fn embed(p: &Poly, n: usize, offset: usize) -> Poly {
    let m = p.n();
    let mut out = Poly::zero(p.field(), n);
    for (e, c) in p.terms() {
        let mut f = match p.field() {
            LocalField::Real => vec![0; n],
            LocalField::Complex => vec![0; 2 * n],
        };
        for j in 0..m {
            f[offset + j] = e[j];
            if p.field() == LocalField::Complex {
                f[n + offset + j] = e[m + j];
            }
        }
        out.add_term(f, c.clone());
    }
    out
}

/// `P°_{(n_1..n_r)}(x) = prod_j P_j°(x_j)` where `x_j` is the last
/// coordinate of block `j` (characters) or its last two coordinates
/// (discrete series).
pub fn zonal_product(rep: &Repr) -> Poly {
    let field = rep.field();
    let n = rep.rank();
    let mut out = Poly::one(field, n);
    for (c, &off) in rep.components().iter().zip(&rep.block_offsets()) {
        let factor = match (field, c.kind()) {
            (LocalField::Complex, _) => {
                let k = c.kappa();
                let d = if k >= 0 { Degrees::Complex(k as u32, 0) } else { Degrees::Complex(0, (-k) as u32) };
                zonal(field, 1, d).expect("rank-one degrees")
            }
            (LocalField::Real, ComponentKind::Character) => {
                zonal(field, 1, Degrees::Real(c.kappa() as u32)).expect("kappa in {0,1}")
            }
            (LocalField::Real, ComponentKind::DiscreteSeries) => {
                zonal(field, 2, Degrees::Real(c.kappa() as u32)).expect("any degree at n = 2")
            }
        };
        out = out.mul(&embed(&factor, n, off));
    }
    out
}

/// Homogeneous monomials of the given (bi)degree in `n` variables, as
/// exponent vectors.
pub fn monomials(field: LocalField, n: usize, degrees: Degrees) -> Vec<Vec<u32>> {
    fn compositions(n: usize, total: u32) -> Vec<Vec<u32>> {
        if n == 0 {
            return if total == 0 { vec![vec![]] } else { vec![] };
        }
        let mut out = Vec::new();
        for first in (0..=total).rev() {
            for mut rest in compositions(n - 1, total - first) {
                let mut v = vec![first];
                v.append(&mut rest);
                out.push(v);
            }
        }
        out
    }
    match (field, degrees) {
        (LocalField::Real, Degrees::Real(p)) => compositions(n, p),
        (LocalField::Complex, Degrees::Complex(p, q)) => {
            let mut out = Vec::new();
            for a in compositions(n, p) {
                for b in compositions(n, q) {
                    let mut e = a.clone();
                    e.extend_from_slice(&b);
                    out.push(e);
                }
            }
            out
        }
        _ => Vec::new(),
    }
}

/// A basis of the harmonic space, from the exact kernel of the Laplacian
/// on homogeneous polynomials.
pub fn harmonic_basis(field: LocalField, n: usize, degrees: Degrees) -> Result<Vec<Poly>> {
    validate(field, n, degrees)?;
    let source = monomials(field, n, degrees);
    if field == LocalField::Real && n == 1 {
        return Ok(vec![zonal(field, n, degrees)?]);
    }
    let images: Vec<Poly> = source
        .iter()
        .map(|e| {
            let mut p = Poly::zero(field, n);
            p.add_term(e.clone(), coeff_int(1));
            p.laplacian()
        })
        .collect();
    let mut rows: Vec<Vec<u32>> = images.iter().flat_map(|p| p.terms().keys().cloned()).collect();
    rows.sort();
    rows.dedup();
    // Matrix with one row per target monomial, one column per source.
    let mut a: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            images.iter().map(|p| p.terms().get(r).map(|c| c.re.clone()).unwrap_or_else(BigRational::zero)).collect()
        })
        .collect();
    let cols = source.len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(pr) = (row..a.len()).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(row, pr);
        let inv = BigRational::one() / a[row][col].clone();
        for x in a[row].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for r in 0..a.len() {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..cols {
                    let v = a[row][c].clone() * f.clone();
                    a[r][c] = a[r][c].clone() - v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &fcol in &free {
        let mut p = Poly::zero(field, n);
        p.add_term(source[fcol].clone(), coeff_int(1));
        for (r, &pc) in pivots.iter().enumerate() {
            let v = -a[r][fcol].clone();
            if !v.is_zero() {
                p.add_term(source[pc].clone(), Coeff::new(v, BigRational::zero()));
            }
        }
        basis.push(p);
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn examples() {
        let p = zonal(LocalField::Complex, 2, Degrees::Complex(1, 1)).unwrap();
        assert_eq!(p.to_string(), "z2*zb2 - z1*zb1");
        let p = zonal(LocalField::Real, 2, Degrees::Real(2)).unwrap();
        assert_eq!(p.to_string(), "x2^2 - x1^2");
        let p = zonal(LocalField::Real, 1, Degrees::Real(1)).unwrap();
        assert_eq!(p.to_string(), "x1");
    }

    #[test]
    fn products() {
        let r: Repr = "C: chi^1 t=0 ; chi^-1 t=0".parse().unwrap();
        assert_eq!(zonal_product(&r).to_string(), "z1*zb2");
        let r: Repr = "R: chi^0 t=0 ; chi^1 t=0".parse().unwrap();
        assert_eq!(zonal_product(&r).to_string(), "x2");
        let r: Repr = "R: chi^0 t=0 ; chi^0 t=1".parse().unwrap();
        assert_eq!(zonal_product(&r).to_string(), "1");
    }

    #[test]
    fn zonal_at_e_n() {
        for n in 1..=4 {
            let mut e = vec![Complex64::new(0.0, 0.0); n];
            e[n - 1] = Complex64::new(1.0, 0.0);
            for p in 0..=4 {
                if n > 1 || p <= 1 {
                    let z = zonal(LocalField::Real, n, Degrees::Real(p)).unwrap();
                    assert!((z.eval(&e).unwrap() - 1.0).norm() < 1e-14);
                    assert!(z.is_harmonic());
                }
            }
        }
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(harmonic_basis(LocalField::Real, 3, Degrees::Real(2)).unwrap().len(), 5);
        assert_eq!(harmonic_basis(LocalField::Complex, 2, Degrees::Complex(1, 1)).unwrap().len(), 3);
        for b in harmonic_basis(LocalField::Complex, 2, Degrees::Complex(2, 1)).unwrap() {
            assert!(b.is_harmonic());
        }
    }
}
