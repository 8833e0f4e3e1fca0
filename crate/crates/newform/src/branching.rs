//! Branching multiplicities for `U(n)` and `O(n)`.
//!
//! `restrict_u` and `restrict_o` enumerate interlacing patterns one level
//! down; `mult_chain` iterates them to compute
//! `dim Hom_K(tau, pi|_K)` for an isobaric sum `pi`.

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harmonics::dims::binomial;
use crate::invariants::howe_degree;
use crate::repcore::{ComponentKind, GroupKind, HighestWeight, LocalField, Repr};

/// One irreducible constituent of a restriction.
///
/// `lambda` is the `U(1)` or `O(1)` weight for the one-step restrictions
/// and `lambda_1` of the `O(2)` weight `(lambda_1, 0)` for `restrict_o2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BranchTerm {
    pub sub_weight: HighestWeight,
    pub lambda: i64,
    pub multiplicity: u64,
}

/// All `nu` with `mu_1 >= nu_1 >= mu_2 >= ... >= nu_{n-1} >= mu_n`.
fn interlacing(mu: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for j in 0..mu.len() - 1 {
        let (hi, lo) = (mu[j], mu[j + 1]);
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (lo..=hi).rev().map(move |v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out
}

/// `U(n) -> U(n-1) x U(1)`.
pub fn restrict_u(mu: &HighestWeight) -> Result<Vec<BranchTerm>> {
    if mu.group() != GroupKind::Unitary {
        return Err(Error::Mismatch("restrict_u needs a U(n) weight".into()));
    }
    if mu.n() < 2 {
        return Err(Error::UnsupportedRank("restriction needs n >= 2".into()));
    }
    let total: i64 = mu.entries().iter().sum();
    Ok(interlacing(mu.entries())
        .into_iter()
        .map(|nu| {
            let lambda = total - nu.iter().sum::<i64>();
            BranchTerm {
                sub_weight: HighestWeight::unitary(nu).expect("interlacing is dominant"),
                lambda,
                multiplicity: 1,
            }
        })
        .collect())
}

/// `O(n) -> O(n-1) x O(1)`.
pub fn restrict_o(mu: &HighestWeight) -> Result<Vec<BranchTerm>> {
    if mu.group() != GroupKind::Orthogonal {
        return Err(Error::Mismatch("restrict_o needs an O(n) weight".into()));
    }
    if mu.n() < 2 {
        return Err(Error::UnsupportedRank("restriction needs n >= 2".into()));
    }
    let total: i64 = mu.entries().iter().sum();
    Ok(interlacing(mu.entries())
        .into_iter()
        .filter_map(|nu| {
            let lambda = (total - nu.iter().sum::<i64>()).rem_euclid(2);
            HighestWeight::orthogonal(nu).ok().map(|w| BranchTerm { sub_weight: w, lambda, multiplicity: 1 })
        })
        .collect())
}

/// `O(n) -> O(n-2) x O(2)` for `mu = (mu_1, 0, ..., 0)`, `n >= 3`.
pub fn restrict_o2(mu: &HighestWeight) -> Result<Vec<BranchTerm>> {
    if mu.group() != GroupKind::Orthogonal {
        return Err(Error::Mismatch("restrict_o2 needs an O(n) weight".into()));
    }
    if mu.n() < 3 {
        return Err(Error::UnsupportedRank("restriction to O(n-2) x O(2) needs n >= 3".into()));
    }
    if !mu.is_single_row() {
        return Err(Error::UnsupportedShape(format!("{mu} is not of the form (p,0,...,0)")));
    }
    let m = mu.entries()[0];
    let mut out = Vec::new();
    for l1 in 0..=m {
        for nu1 in (0..=m - l1).rev().step_by(2) {
            if let Ok(w) = HighestWeight::single_row(mu.n() - 2, nu1) {
                out.push(BranchTerm { sub_weight: w, lambda: l1, multiplicity: 1 });
            }
        }
    }
    Ok(out)
}

/// `dim Hom_{K_n}(tau, pi|_{K_n})`.
pub fn mult_chain(rep: &Repr, tau: &HighestWeight) -> Result<u64> {
    if rep.field().group() != tau.group() {
        return Err(Error::Mismatch("weight group does not match the field of the representation".into()));
    }
    if rep.rank() != tau.n() {
        return Err(Error::Mismatch(format!("rank {} vs weight length {}", rep.rank(), tau.n())));
    }
    let blocks: Vec<(ComponentKind, i64)> = rep.components().iter().map(|c| (c.kind(), c.kappa())).collect();
    match rep.field() {
        LocalField::Complex => Ok(chain_u(tau.entries(), &blocks)),
        LocalField::Real => chain_o(tau, &blocks),
    }
}

fn chain_u(mu: &[i64], blocks: &[(ComponentKind, i64)]) -> u64 {
    let kappa = blocks.last().expect("nonempty").1;
    if mu.len() == 1 {
        return u64::from(mu[0] == kappa);
    }
    let total: i64 = mu.iter().sum();
    interlacing(mu)
        .into_iter()
        .filter(|nu| total - nu.iter().sum::<i64>() == kappa)
        .map(|nu| chain_u(&nu, &blocks[..blocks.len() - 1]))
        .sum()
}

fn chain_o(mu: &HighestWeight, blocks: &[(ComponentKind, i64)]) -> Result<u64> {
    let (kind, kappa) = *blocks.last().expect("nonempty");
    let k = mu.n();
    let e = mu.entries();
    match kind {
        ComponentKind::Character => {
            if k == 1 {
                return Ok(u64::from(e[0] == kappa));
            }
            let mut total = 0;
            for term in restrict_o(mu)? {
                if term.lambda == kappa {
                    total += chain_o(&term.sub_weight, &blocks[..blocks.len() - 1])?;
                }
            }
            Ok(total)
        }
        ComponentKind::DiscreteSeries => {
            if k == 2 {
                let ok = e[1] == 0 && e[0] >= kappa && (e[0] - kappa) % 2 == 0;
                return Ok(u64::from(ok));
            }
            let mut total = 0;
            for term in restrict_o2(mu)? {
                if term.lambda >= kappa && (term.lambda - kappa) % 2 == 0 {
                    total += chain_o(&term.sub_weight, &blocks[..blocks.len() - 1])?;
                }
            }
            Ok(total)
        }
    }
}

/// Whether `tau|_{K_{n-1}}` contains the trivial representation, with its
/// multiplicity.
pub fn trivial_on_restriction(tau: &HighestWeight) -> (bool, u64) {
    let e = tau.entries();
    let n = e.len();
    if n == 1 {
        return (true, 1);
    }
    let ok = match tau.group() {
        GroupKind::Unitary => e[0] >= 0 && e[1..n - 1].iter().all(|&x| x == 0) && e[n - 1] <= 0,
        GroupKind::Orthogonal => e[0] >= 0 && e[1..].iter().all(|&x| x == 0),
    };
    (ok, u64::from(ok))
}

/// Weights of Howe degree `m` whose restriction to `K_{n-1}` contains the
/// trivial representation.
pub fn spherical_ktypes_of_degree(field: LocalField, n: usize, m: u64) -> Vec<HighestWeight> {
    let m = m as i64;
    match field {
        LocalField::Complex if n == 1 => {
            vec![HighestWeight::unitary(vec![m]).unwrap(), HighestWeight::unitary(vec![-m]).unwrap()]
                .into_iter()
                .take(if m == 0 { 1 } else { 2 })
                .collect()
        }
        LocalField::Complex => (0..=m)
            .map(|a| {
                let mut mu = vec![0; n];
                mu[0] = a;
                mu[n - 1] = -(m - a);
                HighestWeight::unitary(mu).unwrap()
            })
            .collect(),
        LocalField::Real => HighestWeight::single_row(n, m).into_iter().collect(),
    }
}

/// Both sides of `sum_{j<=k} C(j+m, m) C(k-j+n, n) = C(k+m+n+1, m+n+1)`.
pub fn binom_identity(k: u64, m: u64, n: u64) -> (BigUint, BigUint) {
    let mut lhs = BigUint::zero();
    for j in 0..=k {
        lhs += binomial(j + m, m) * binomial(k - j + n, n);
    }
    (lhs, binomial(k + m + n + 1, m + n + 1))
}

/// `(tau, dim Hom_K(tau, pi))` for every `K_{n-1}`-spherical `tau` of
/// degree at most `max_degree`.
pub fn multiplicity_table(rep: &Repr, max_degree: u64) -> Result<Vec<(HighestWeight, u64)>> {
    let mut out = Vec::new();
    for m in 0..=max_degree {
        for tau in spherical_ktypes_of_degree(rep.field(), rep.rank(), m) {
            debug_assert_eq!(howe_degree(&tau), m);
            let mult = mult_chain(rep, &tau)?;
            out.push((tau, mult));
        }
    }
    Ok(out)
}
