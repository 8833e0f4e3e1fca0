//! Exact polynomials in `x_1..x_n` (over `R`) or `z_1..z_n, conj z_1..conj z_n`
//! (over `C`) with Gaussian-rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::harmonics::dims::Degrees;
use crate::repcore::LocalField;

/// Gaussian rational.
pub type Coeff = Complex<BigRational>;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn coeff(re: BigRational, im: BigRational) -> Coeff {
    Complex::new(re, im)
}

pub fn coeff_int(n: i64) -> Coeff {
    Complex::new(rat(n, 1), BigRational::zero())
}

/// `i^k`.
pub fn i_pow(k: i64) -> Coeff {
    match k.rem_euclid(4) {
        0 => coeff_int(1),
        1 => coeff(BigRational::zero(), BigRational::one()),
        2 => coeff_int(-1),
        _ => coeff(BigRational::zero(), -BigRational::one()),
    }
}

fn coeff_to_f64(c: &Coeff) -> Complex64 {
    Complex64::new(c.re.to_f64().unwrap_or(f64::NAN), c.im.to_f64().unwrap_or(f64::NAN))
}

/// A polynomial over `field` in `n` variables (plus their conjugates over `C`).
///
/// Exponent vectors have length `n` over `R` and `2n` over `C`, the second
/// half holding the exponents of the conjugate variables.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    field: LocalField,
    n: usize,
    terms: BTreeMap<Vec<u32>, Coeff>,
}

impl Poly {
    pub fn zero(field: LocalField, n: usize) -> Self {
        Self { field, n, terms: BTreeMap::new() }
    }

    pub fn constant(field: LocalField, n: usize, c: Coeff) -> Self {
        let mut p = Self::zero(field, n);
        p.add_term(vec![0; p.width()], c);
        p
    }

    pub fn one(field: LocalField, n: usize) -> Self {
        Self::constant(field, n, coeff_int(1))
    }

    /// `x_j` (0-based `j`).
    pub fn var(field: LocalField, n: usize, j: usize) -> Self {
        let mut p = Self::zero(field, n);
        let mut e = vec![0; p.width()];
        e[j] = 1;
        p.add_term(e, coeff_int(1));
        p
    }

    /// `conj z_j` (0-based `j`); over `R` this is `x_j`.
    pub fn conj_var(field: LocalField, n: usize, j: usize) -> Self {
        match field {
            LocalField::Real => Self::var(field, n, j),
            LocalField::Complex => {
                let mut p = Self::zero(field, n);
                let mut e = vec![0; 2 * n];
                e[n + j] = 1;
                p.add_term(e, coeff_int(1));
                p
            }
        }
    }

    pub fn field(&self) -> LocalField {
        self.field
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Coeff> {
        &self.terms
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn width(&self) -> usize {
        match self.field {
            LocalField::Real => self.n,
            LocalField::Complex => 2 * self.n,
        }
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Coeff) {
        assert_eq!(exps.len(), self.width(), "exponent vector length");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn compatible(&self, other: &Poly) {
        assert!(self.field == other.field && self.n == other.n, "polynomials over different spaces");
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.compatible(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Coeff) -> Poly {
        let mut out = Poly::zero(self.field, self.n);
        for (e, d) in &self.terms {
            out.add_term(e.clone(), d.clone() * c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.compatible(other);
        let mut out = Poly::zero(self.field, self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.clone() * c2.clone());
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one(self.field, self.n);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Coefficient-wise conjugate, so that `P.conj()(z) = conj(P(z))`.
    pub fn conj(&self) -> Poly {
        let mut out = Poly::zero(self.field, self.n);
        for (e, c) in &self.terms {
            let e = match self.field {
                LocalField::Real => e.clone(),
                LocalField::Complex => {
                    let mut f = e[self.n..].to_vec();
                    f.extend_from_slice(&e[..self.n]);
                    f
                }
            };
            out.add_term(e, c.conj());
        }
        out
    }

    /// Degree of a monomial: `p` over `R`, `(p, q)` over `C`.
    fn monomial_degrees(&self, e: &[u32]) -> Degrees {
        match self.field {
            LocalField::Real => Degrees::Real(e.iter().sum()),
            LocalField::Complex => Degrees::Complex(e[..self.n].iter().sum(), e[self.n..].iter().sum()),
        }
    }

    /// Common (bi)degree of all monomials, if homogeneous. The zero
    /// polynomial has no degree.
    pub fn degrees(&self) -> Option<Degrees> {
        let mut it = self.terms.keys().map(|e| self.monomial_degrees(e));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// `sum d^2/dx_j^2` over `R`, `4 sum d^2/(dz_j d conj z_j)` over `C`.
    pub fn laplacian(&self) -> Poly {
        let mut out = Poly::zero(self.field, self.n);
        for (e, c) in &self.terms {
            for j in 0..self.n {
                match self.field {
                    LocalField::Real => {
                        let a = e[j];
                        if a >= 2 {
                            let mut f = e.clone();
                            f[j] -= 2;
                            out.add_term(f, c.clone() * coeff_int(i64::from(a) * i64::from(a - 1)));
                        }
                    }
                    LocalField::Complex => {
                        let (a, b) = (e[j], e[self.n + j]);
                        if a >= 1 && b >= 1 {
                            let mut f = e.clone();
                            f[j] -= 1;
                            f[self.n + j] -= 1;
                            out.add_term(f, c.clone() * coeff_int(4 * i64::from(a) * i64::from(b)));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn is_harmonic(&self) -> bool {
        self.laplacian().is_zero()
    }

    /// Floating-point copy for repeated evaluation.
    pub fn compile(&self) -> NumPoly {
        NumPoly {
            field: self.field,
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), coeff_to_f64(c))).collect(),
        }
    }

    /// Evaluate at `point`; over `C` the conjugate variables are taken
    /// from the point itself.
    pub fn eval(&self, point: &[Complex64]) -> Result<Complex64> {
        self.compile().eval(point)
    }
}

/// A [`Poly`] with `f64` coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct NumPoly {
    field: LocalField,
    n: usize,
    terms: Vec<(Vec<u32>, Complex64)>,
}

impl NumPoly {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn eval(&self, point: &[Complex64]) -> Result<Complex64> {
        if point.len() != self.n {
            return Err(Error::Domain(format!("point has {} coordinates, polynomial has {}", point.len(), self.n)));
        }
        Ok(self.eval_unchecked(point))
    }

    /// Evaluation without the length check.
    pub fn eval_unchecked(&self, point: &[Complex64]) -> Complex64 {
        let mut total = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut m = *c;
            for (j, z) in point.iter().enumerate() {
                if e[j] > 0 {
                    m *= z.powu(e[j]);
                }
                if self.field == LocalField::Complex && e[self.n + j] > 0 {
                    m *= z.conj().powu(e[self.n + j]);
                }
            }
            total += m;
        }
        total
    }

    /// Evaluate with real coordinates.
    pub fn eval_real(&self, point: &[f64]) -> Complex64 {
        let z: Vec<Complex64> = point.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        self.eval_unchecked(&z)
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Text form of a Gaussian rational, with a flag telling whether it is
/// negative real (so the caller can fold the sign into the separator).
fn fmt_coeff(c: &Coeff) -> (String, bool) {
    if c.im.is_zero() {
        (fmt_rational(&c.re.abs()), c.re.is_negative())
    } else if c.re.is_zero() {
        let s = if c.im.abs().is_one() { "i".to_string() } else { format!("{}i", fmt_rational(&c.im.abs())) };
        (s, c.im.is_negative())
    } else {
        let sign = if c.im.is_negative() { "-" } else { "+" };
        (format!("({} {} {}i)", fmt_rational(&c.re), sign, fmt_rational(&c.im.abs())), false)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let names: Vec<String> = match self.field {
            LocalField::Real => (1..=self.n).map(|j| format!("x{j}")).collect(),
            LocalField::Complex => {
                (1..=self.n).map(|j| format!("z{j}")).chain((1..=self.n).map(|j| format!("zb{j}"))).collect()
            }
        };
        // Highest power of the last variable first, which puts the `e_n`
        // term at the front.
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| b.iter().rev().cmp(a.iter().rev()));
        for (idx, e) in keys.into_iter().enumerate() {
            let (cs, neg) = fmt_coeff(&self.terms[e]);
            let mono: Vec<String> = e
                .iter()
                .zip(&names)
                .filter(|(&a, _)| a > 0)
                .map(|(&a, v)| if a == 1 { v.clone() } else { format!("{v}^{a}") })
                .collect();
            let sep = match (idx, neg) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            f.write_str(sep)?;
            if mono.is_empty() {
                f.write_str(&cs)?;
            } else {
                if cs != "1" {
                    write!(f, "{cs}*")?;
                }
                f.write_str(&mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laplacian_examples() {
        let x1 = Poly::var(LocalField::Real, 2, 0);
        let x2 = Poly::var(LocalField::Real, 2, 1);
        let p = x1.pow(2).add(&x2.pow(2).scale(&coeff_int(-1)));
        assert!(p.is_harmonic());
        assert_eq!(x1.pow(2).laplacian(), Poly::constant(LocalField::Real, 2, coeff_int(2)));
        let z = Poly::var(LocalField::Complex, 1, 0);
        let zb = Poly::conj_var(LocalField::Complex, 1, 0);
        assert_eq!(z.mul(&zb).laplacian(), Poly::constant(LocalField::Complex, 1, coeff_int(4)));
    }

    #[test]
    fn display_and_eval() {
        let x1 = Poly::var(LocalField::Real, 2, 0);
        let x2 = Poly::var(LocalField::Real, 2, 1);
        let p = x2.pow(2).add(&x1.pow(2).scale(&coeff_int(-1)));
        assert_eq!(p.to_string(), "x2^2 - x1^2");
        let one = Complex64::new(1.0, 0.0);
        assert_eq!(p.eval(&[one, one]).unwrap(), Complex64::new(0.0, 0.0));
        assert!(p.eval(&[one]).is_err());
    }

    #[test]
    fn conj_of_complex_poly() {
        let z = Poly::var(LocalField::Complex, 1, 0).scale(&i_pow(1));
        let w = Complex64::new(0.3, -1.2);
        let a = z.conj().eval(&[w]).unwrap();
        let b = z.eval(&[w]).unwrap().conj();
        assert!((a - b).norm() < 1e-15);
    }
}
