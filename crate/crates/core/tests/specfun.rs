mod common;

use common::{rel, semi_infinite};
use num_complex::Complex64;
use prodspec::quad::QuadConfig;
use prodspec::specfun::{
    laguerre_monic, ln_factorial, ln_gamma, log_gamma, meijer_g, meijer_g_m0, meijer_g_m0_family, reciprocal_gamma,
    ContourConfig, MeijerGParams,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn weight_family_matches_generic_contour() {
    let cfg = ContourConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for _ in 0..20 {
        let m = rng.random_range(2..=4);
        let b: Vec<i64> = (0..m).map(|_| rng.random_range(0..=6)).collect();
        let x = 10f64.powf(rng.random_range(-2.0..1.5));
        let generic = meijer_g(&MeijerGParams::new(m, 0, vec![], b.clone()).unwrap(), x, &cfg).unwrap();
        let family = meijer_g_m0(&b, x, &cfg).unwrap();
        assert!(rel(family, generic) < 1e-10, "b={b:?} x={x}: {family} vs {generic}");
    }
}

#[test]
fn family_members_match_single_evaluations() {
    let cfg = ContourConfig::default();
    let fam = meijer_g_m0_family(&[2, 1], 0, 4, 3.3, &cfg).unwrap();
    for (k, v) in fam.iter().enumerate() {
        assert!(rel(*v, meijer_g_m0(&[2, 1, k as i64], 3.3, &cfg).unwrap()) < 1e-12);
    }
}

#[test]
fn coincident_parameters_grow_logarithmically() {
    // G^{2,0}_{0,2}(−; 0, 0 | x) = 2 K₀(2√x) ~ −ln x − 2γ_E as x → 0
    let cfg = ContourConfig::default();
    let euler = 0.577_215_664_901_532_9;
    for x in [1e-6, 1e-8, 1e-10] {
        let g = meijer_g_m0(&[0, 0], x, &cfg).unwrap();
        let lead = -f64::ln(x) - 2.0 * euler;
        assert!((g - lead).abs() < 20.0 * x * x.ln().abs(), "x={x}: {g} vs {lead}");
    }
}

#[test]
fn two_factor_weight_is_a_bessel_function() {
    // G^{2,0}_{0,2}(−; 0, 1 | x) = 2 √x K₁(2√x); at x = 1, 2 K₁(2)
    let g = meijer_g_m0(&[0, 1], 1.0, &ContourConfig::default()).unwrap();
    assert!(rel(g, 2.0 * 0.139_865_881_816_522_4) < 1e-12);
}

#[test]
fn laguerre_orthogonality() {
    // ∫ t^ν e^{−t} L̃_k L̃_l dt = k! (k+ν)! δ_kl for monic polynomials
    let cfg = QuadConfig { abs_tol: 1e-9, rel_tol: 1e-12, ..QuadConfig::default() };
    for nu in [0u32, 3] {
        for k in 0..=4u32 {
            for l in 0..=4u32 {
                let v = semi_infinite(
                    |t| Ok((nu as f64 * t.ln() - t).exp() * laguerre_monic(k, nu, t) * laguerre_monic(l, nu, t)),
                    4.0 + nu as f64,
                    &cfg,
                )
                .unwrap();
                let norm = (ln_factorial(k) + ln_factorial(k + nu)).exp();
                let target = if k == l { norm } else { 0.0 };
                assert!((v - target).abs() < 1e-9 * norm, "nu={nu} k={k} l={l}: {v}");
            }
        }
    }
}

#[test]
fn gamma_examples() {
    assert!((ln_gamma(5.0) - 24f64.ln()).abs() < 1e-13);
    assert!((ln_gamma(0.5) - 0.5 * std::f64::consts::PI.ln()).abs() < 1e-13);
    let z = log_gamma(Complex64::new(1.0, 1.0)).unwrap();
    assert!((z.re + 0.650_923_199_301_856_8).abs() < 1e-12);
    assert!((z.im + 0.301_640_320_467_533_2).abs() < 1e-12);
    assert!(log_gamma(Complex64::new(-2.0, 0.0)).is_err());
    for n in 0..5 {
        assert_eq!(reciprocal_gamma(-(n as f64)), 0.0);
    }
    assert!(rel(reciprocal_gamma(4.0), 1.0 / 6.0) < 1e-14);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn shift_identity(b in proptest::collection::vec(0i64..5, 1..4), rho in -2i64..3, x in 0.05f64..20.0) {
        let cfg = ContourConfig::default();
        let p = MeijerGParams::new(b.len(), 0, vec![], b).unwrap();
        let lhs = x.powi(rho as i32) * meijer_g(&p, x, &cfg).unwrap();
        let rhs = meijer_g(&p.shifted(rho), x, &cfg).unwrap();
        prop_assert!(rel(lhs, rhs) < 1e-10, "{lhs} vs {rhs}");
    }

    #[test]
    fn weight_class_is_symmetric_in_lower_parameters(b in proptest::collection::vec(0i64..5, 2..4), x in 0.1f64..10.0) {
        let cfg = ContourConfig::default();
        let mut r = b.clone();
        r.reverse();
        prop_assert!(rel(meijer_g_m0(&b, x, &cfg).unwrap(), meijer_g_m0(&r, x, &cfg).unwrap()) < 1e-10);
    }

    #[test]
    fn weight_class_is_positive(b in proptest::collection::vec(0i64..6, 1..5), x in 1e-3f64..50.0) {
        prop_assert!(meijer_g_m0(&b, x, &ContourConfig::default()).unwrap() > 0.0);
    }

    #[test]
    fn gamma_recurrence(x in 0.1f64..50.0) {
        prop_assert!((ln_gamma(x + 1.0) - ln_gamma(x) - x.ln()).abs() < 1e-12 * (1.0 + ln_gamma(x + 1.0).abs()));
    }
}
