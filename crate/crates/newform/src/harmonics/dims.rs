//! Dimensions of spaces of homogeneous harmonic polynomials.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::repcore::LocalField;

/// Degree data: `p` over `R`, bidegree `(p, q)` over `C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Degrees {
    Real(u32),
    Complex(u32, u32),
}

impl Degrees {
    pub fn total(self) -> u32 {
        match self {
            Degrees::Real(p) => p,
            Degrees::Complex(p, q) => p + q,
        }
    }

    pub fn field(self) -> LocalField {
        match self {
            Degrees::Real(_) => LocalField::Real,
            Degrees::Complex(..) => LocalField::Complex,
        }
    }
}

/// `C(n, k)` exactly; zero for `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Check that `degrees` is admissible for `field` and `n`.
pub fn validate(field: LocalField, n: usize, degrees: Degrees) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    match (field, degrees) {
        (LocalField::Real, Degrees::Real(p)) => {
            if n == 1 && p > 1 {
                return Err(Error::Domain(format!("H_{p}(R^1) is not a K-type; need p <= 1")));
            }
            Ok(())
        }
        (LocalField::Complex, Degrees::Complex(p, q)) => {
            if n == 1 && p > 0 && q > 0 {
                return Err(Error::Domain("over C with n = 1 one of p, q must vanish".into()));
            }
            Ok(())
        }
        _ => Err(Error::Mismatch("degrees do not match the field".into())),
    }
}

/// `dim H_p(R^n)` or `dim H_{p,q}(C^n)`.
pub fn dim_harmonics(field: LocalField, n: usize, degrees: Degrees) -> Result<BigUint> {
    validate(field, n, degrees)?;
    if n == 1 {
        return Ok(BigUint::one());
    }
    let m = n as u64;
    Ok(match degrees {
        Degrees::Real(p) => {
            let p = u64::from(p);
            if n == 2 {
                return Ok(BigUint::from(if p == 0 { 1u32 } else { 2 }));
            }
            let num = BigUint::from(2 * p + m - 2) * binomial(p + m - 2, m - 2);
            let (q, r) = num.div_rem(&BigUint::from(p + m - 2));
            debug_assert!(r.is_zero());
            q
        }
        Degrees::Complex(p, q) => {
            let (p, q) = (u64::from(p), u64::from(q));
            let num = BigUint::from(p + q + m - 1) * binomial(p + m - 2, m - 2) * binomial(q + m - 2, m - 2);
            let (d, r) = num.div_rem(&BigUint::from(m - 1));
            debug_assert!(r.is_zero());
            d
        }
    })
}

/// Weyl dimension of the `U(n)` representation of highest weight `mu`.
pub fn weyl_dim_unitary(mu: &[i64]) -> BigUint {
    let n = mu.len();
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..n {
        for j in i + 1..n {
            num *= (mu[i] - mu[j] + (j - i) as i64) as u64;
            den *= (j - i) as u64;
        }
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(dim_harmonics(LocalField::Complex, 2, Degrees::Complex(1, 1)).unwrap(), BigUint::from(3u32));
        assert_eq!(dim_harmonics(LocalField::Real, 3, Degrees::Real(2)).unwrap(), BigUint::from(5u32));
        assert_eq!(dim_harmonics(LocalField::Real, 5, Degrees::Real(0)).unwrap(), BigUint::from(1u32));
        assert_eq!(dim_harmonics(LocalField::Complex, 4, Degrees::Complex(0, 0)).unwrap(), BigUint::from(1u32));
        assert!(dim_harmonics(LocalField::Real, 1, Degrees::Real(2)).is_err());
        assert!(dim_harmonics(LocalField::Complex, 1, Degrees::Complex(1, 1)).is_err());
        assert!(dim_harmonics(LocalField::Real, 2, Degrees::Complex(1, 1)).is_err());
    }

    #[test]
    fn weyl_dims() {
        assert_eq!(weyl_dim_unitary(&[1, 0]), BigUint::from(2u32));
        assert_eq!(weyl_dim_unitary(&[1, 0, -1]), BigUint::from(8u32));
        assert_eq!(weyl_dim_unitary(&[2, 0, 0]), BigUint::from(6u32));
    }
}
