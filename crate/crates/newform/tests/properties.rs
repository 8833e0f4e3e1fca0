mod common;

use common::{c, gamma, i_pow_neg, oracle_l, oracle_rs_l, pascal, random_repr};
use newform::branching::{binom_identity, mult_chain, spherical_ktypes_of_degree};
use newform::harmonics::{dim_harmonics, harmonic_basis, Degrees};
use newform::invariants::{automorphic_induction, conductor_exponent, epsilon_factor, oldform_dim_any};
use newform::special::{gamma_complex, l_factor, QuadratureSpec};
use newform::whittaker::gl2::central_character;
use newform::whittaker::{whittaker_gl2_closed, whittaker_gl2_jacquet, whittaker_gl2_on_torus, GroupPoint};
use newform::zetaintegrals::rs_21;
use newform::{LocalField, Repr};
use num_bigint::BigUint;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn field_of(real: bool) -> LocalField {
    if real {
        LocalField::Real
    } else {
        LocalField::Complex
    }
}

fn repr_from(seed: u64, real: bool, n: usize) -> Repr {
    random_repr(&mut ChaCha8Rng::seed_from_u64(seed), field_of(real), n)
}

/// `K_nu(x) = int_0^inf exp(-x cosh u) cosh(nu u) du` by the trapezoid rule.
fn bessel_k_oracle(nu: Complex64, x: f64) -> Complex64 {
    let h = 1.0 / 64.0;
    let mut sum = 0.5 * (-x).exp() * c(1.0, 0.0);
    let mut u: f64 = h;
    loop {
        let damp = (-x * u.cosh()).exp();
        if damp < 1e-300 {
            break;
        }
        sum += damp * (nu * u).cosh();
        u += h;
    }
    sum * h
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn display_round_trips(seed: u64, real: bool, n in 1usize..=5) {
        let r = repr_from(seed, real, n);
        let back: Repr = r.to_string().parse().unwrap();
        prop_assert_eq!(back, r);
    }

    #[test]
    fn oldforms_match_branching(seed: u64, real: bool, n in 1usize..=4, extra in 0u64..=8) {
        let r = repr_from(seed, real, n);
        let m = conductor_exponent(&r) + extra;
        let mut sum = 0u64;
        for tau in spherical_ktypes_of_degree(r.field(), r.rank(), m) {
            sum += mult_chain(&r, &tau).unwrap();
        }
        prop_assert_eq!(oldform_dim_any(&r, m), BigUint::from(sum));
    }

    #[test]
    fn nothing_below_the_conductor(seed: u64, real: bool, n in 1usize..=4) {
        let r = repr_from(seed, real, n);
        for m in 0..conductor_exponent(&r) {
            for tau in spherical_ktypes_of_degree(r.field(), r.rank(), m) {
                prop_assert_eq!(mult_chain(&r, &tau).unwrap(), 0);
            }
        }
    }

    #[test]
    fn epsilon_is_multiplicative(a: u64, b: u64, real: bool, n in 1usize..=3, m in 1usize..=3) {
        let (p, q) = (repr_from(a, real, n), repr_from(b, real, m));
        let sum = p.concat(&q).unwrap();
        prop_assert_eq!(epsilon_factor(&sum), epsilon_factor(&p) * epsilon_factor(&q));
        prop_assert_eq!(epsilon_factor(&p).value(), i_pow_neg(conductor_exponent(&p)));
    }

    #[test]
    fn induction_raises_conductor_by_n(seed: u64, n in 1usize..=5) {
        let r = repr_from(seed, false, n);
        let ai = automorphic_induction(&r).unwrap();
        prop_assert_eq!(conductor_exponent(&ai), conductor_exponent(&r) + n as u64);
    }

    #[test]
    fn contragredient_keeps_conductor(seed: u64, real: bool, n in 1usize..=5) {
        let r = repr_from(seed, real, n);
        prop_assert_eq!(conductor_exponent(&r.contragredient()), conductor_exponent(&r));
    }

    #[test]
    fn binomial_convolution(k in 0u64..60, m in 0u64..60, n in 0u64..60) {
        let (lhs, rhs) = binom_identity(k, m, n);
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(rhs.to_string(), pascal((k + m + n + 1) as usize, (m + n + 1) as usize).to_string());
    }

    #[test]
    fn gamma_matches_stirling(re in -4.5f64..12.0, im in -8.0f64..8.0) {
        let z = c(re, im);
        prop_assume!((z - z.re.round()).norm() > 1e-3 || z.re > 0.5);
        let got = gamma_complex(z).unwrap();
        prop_assert!(rel(got, gamma(z)) < 1e-11, "{} vs {}", got, gamma(z));
    }

    #[test]
    fn l_factor_matches_oracle(seed: u64, real: bool, n in 1usize..=4, re in 1.0f64..3.0, im in -2.0f64..2.0) {
        let r = repr_from(seed, real, n);
        let s = c(re, im);
        prop_assert!(rel(l_factor(&r, s).unwrap(), oracle_l(&r, s)) < 1e-10);
    }

    #[test]
    fn central_character_on_torus(seed: u64, real: bool, y in 0.1f64..3.0, z in 0.2f64..4.0, arg in -3.0f64..3.0) {
        let r = repr_from(seed, real, 2);
        let z = if real { c(if arg < 0.0 { -z } else { z }, 0.0) } else { Complex64::from_polar(z, arg) };
        let y = c(y, 0.0);
        let lhs = whittaker_gl2_on_torus(&r, z * y, z).unwrap();
        let rhs = central_character(&r, z) * whittaker_gl2_closed(&r, y).unwrap();
        prop_assert!(rel(lhs, rhs) < 1e-12);
    }

    #[test]
    fn spherical_closed_form_is_k_bessel(t1 in -0.5f64..0.5, t2 in -0.5f64..0.5, im in -2.0f64..2.0, y in 0.05f64..3.0) {
        let (a, b) = (c(t1, im), c(t2, -im));
        let r = Repr::spherical(LocalField::Real, &[a, b]).unwrap();
        let got = whittaker_gl2_closed(&r, c(y, 0.0)).unwrap();
        let want = 2.0 * c(y, 0.0).powc((a + b + 1.0) / 2.0) * bessel_k_oracle((a - b) / 2.0, 2.0 * std::f64::consts::PI * y);
        prop_assert!(rel(got, want) < 1e-10, "{} vs {}", got, want);
    }

    #[test]
    fn harmonic_basis_has_the_right_size(real: bool, n in 2usize..=4, p in 0u32..=3, q in 0u32..=3) {
        let (field, d) = if real { (LocalField::Real, Degrees::Real(p + q)) } else { (LocalField::Complex, Degrees::Complex(p, q)) };
        prop_assume!(n * field.degree() as usize <= 6);
        let basis = harmonic_basis(field, n, d).unwrap();
        prop_assert!(basis.iter().all(|b| b.is_harmonic()));
        prop_assert_eq!(BigUint::from(basis.len()), dim_harmonics(field, n, d).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn rs_21_ratio_is_flat(seed: u64, real: bool, tp in -0.3f64..0.3) {
        let r = repr_from(seed, real, 2);
        prop_assume!(r.components().iter().all(|b| b.t().re.abs() < 0.45));
        let sph = Repr::spherical(r.field(), &[c(tp, 0.0)]).unwrap();
        for s in newform::zetaintegrals::verify::default_s_grid() {
            let psi = rs_21(&r, &sph, s, &QuadratureSpec::de(1e-11)).unwrap();
            let dev = (psi.value / oracle_rs_l(&r, &sph, s) - 1.0).norm();
            prop_assert!(dev < 1e-5, "{} at {}: {:.3e}", r, s, dev);
        }
    }

    #[test]
    fn jacquet_matches_closed_form(seed: u64, real: bool, y in 0.1f64..2.5, flip: bool) {
        let r = repr_from(seed, real, 2);
        let gap = r.components()[0].t().re - r.components().last().unwrap().t().re;
        prop_assume!(r.components().len() == 1 || gap > 0.05);
        let y = if flip && real { -y } else { y };
        let g = GroupPoint::diag(r.field(), &[c(y, 0.0), c(1.0, 0.0)]).unwrap();
        let lhs = whittaker_gl2_jacquet(&r, &g, &QuadratureSpec::de(1e-10)).unwrap();
        let rhs = whittaker_gl2_closed(&r, c(y, 0.0)).unwrap();
        prop_assert!((lhs.value - rhs).norm() <= 1e-6 * rhs.norm() + lhs.error, "{}: {} vs {}", r, lhs.value, rhs);
    }
}
