use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use splinewave::poly::{
    autocorrelation_series, cosine_to_poly, eval_cosine_series, poly_to_cosine, ratio,
};
use splinewave::{
    dwt_periodic, enumerate_solutions, idwt_periodic, laurent_symbol, lorentz_q, make_filter_pair,
    refinement_mask, spectral_factor, Branch, RationalPoly,
};

fn rational_poly(max_deg: usize) -> impl Strategy<Value = RationalPoly> {
    prop::collection::vec((-50i64..50, 1i64..17), 0..=max_deg + 1)
        .prop_map(|cs| RationalPoly::new(cs.into_iter().map(|(n, d)| ratio(n, d)).collect()))
}

proptest! {
    #[test]
    fn cosine_round_trip(p in rational_poly(12)) {
        prop_assert_eq!(cosine_to_poly(&poly_to_cosine(&p)), p);
    }

    #[test]
    fn mul_agrees_with_pointwise_product(p in rational_poly(8), q in rational_poly(8), seed in any::<u64>()) {
        let prod = &p * &q;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..100 {
            let x: f64 = rng.gen_range(-1.0..=1.0);
            let want = p.eval(x) * q.eval(x);
            let got = prod.eval(x);
            let scale = p.to_f64().iter().map(|c| c.abs()).sum::<f64>()
                * q.to_f64().iter().map(|c| c.abs()).sum::<f64>();
            prop_assert!((got - want).abs() <= 1e-12 * scale.max(1e-300), "{} vs {}", got, want);
        }
    }

    #[test]
    fn reflect_is_involution(p in rational_poly(10), num in -20i64..20, den in 1i64..9) {
        prop_assert_eq!(p.reflect().reflect(), p.clone());
        let x = ratio(num, den);
        prop_assert_eq!(p.reflect().eval_exact(&x), p.eval_exact(&-x));
    }

    #[test]
    fn autocorrelation_series_is_squared_modulus(
        a in prop::collection::vec(-3.0f64..3.0, 1..=8),
        xi in 0.0f64..(4.0 * PI),
    ) {
        let z = Complex64::from_polar(1.0, -xi / 2.0);
        let s: Complex64 = a.iter().enumerate().map(|(k, &ak)| z.powi(k as i32 + 1) * ak).sum();
        let series = autocorrelation_series(&a);
        let scale: f64 = a.iter().map(|x| x.abs()).sum::<f64>().powi(2).max(1.0);
        prop_assert!((eval_cosine_series(&series, xi) - s.norm_sqr()).abs() <= 1e-12 * scale);
    }

    #[test]
    fn perfect_reconstruction(n in 1usize..=6, seed in any::<u64>(), levels in 1usize..=3) {
        let l = laurent_symbol(&lorentz_q(n).unwrap());
        let pair = make_filter_pair(&refinement_mask(&spectral_factor(&l, &Branch::Paper).unwrap()).unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x: Vec<f64> = (0..256).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let pyr = dwt_periodic(&x, &pair, levels).unwrap();
        prop_assert_eq!(pyr.coefficient_count(), 256);
        let back = idwt_periodic(&pyr, &pair).unwrap();
        let sup = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for (a, b) in x.iter().zip(&back) {
            prop_assert!((a - b).abs() <= 1e-8 * sup);
        }
    }
}

#[test]
fn spectrum_and_normalization_every_branch() {
    for n in 2..=12 {
        let q = lorentz_q(n).unwrap();
        let l = laurent_symbol(&q);
        let q_at_minus_one = q.eval(-1.0);
        for s in enumerate_solutions(&l).unwrap() {
            assert!(
                s.spectrum_residual(&l, 1001) <= 1e-8 * q_at_minus_one,
                "n = {n}"
            );
            assert!((s.sum_a() - 1.0).abs() <= 1e-10);
            assert!((s.sum_a_sq() - l.c0()).abs() <= 1e-9);
            let mask = refinement_mask(&s).unwrap();
            assert!((mask.sum() - 2.0).abs() <= 1e-12);
            assert!(mask.orthonormality_residual() <= 1e-9);
            assert!(mask.qmf_residual(2001) <= 1e-10);
            let floor = (PI / 4.0).cos().powi(n as i32) - 1e-9;
            assert!(mask.min_abs_symbol(1001) >= floor);
        }
    }
}

#[test]
fn filter_pair_identities() {
    for n in 1..=6 {
        let l = laurent_symbol(&lorentz_q(n).unwrap());
        let pair = make_filter_pair(
            &refinement_mask(&spectral_factor(&l, &Branch::Paper).unwrap()).unwrap(),
        )
        .unwrap();
        let sum: f64 = pair.h.iter().sum();
        let energy: f64 = pair.h.iter().map(|v| v * v).sum();
        let dot: f64 = pair.h.iter().zip(&pair.g).map(|(a, b)| a * b).sum();
        assert!((sum - 2f64.sqrt()).abs() <= 1e-10);
        assert!((energy - 1.0).abs() <= 1e-10);
        assert!(dot.abs() <= 1e-10);
        assert!(pair.cross_residual() <= 1e-9);
    }
}

#[test]
fn parseval_on_long_signal() {
    let l = laurent_symbol(&lorentz_q(3).unwrap());
    let pair =
        make_filter_pair(&refinement_mask(&spectral_factor(&l, &Branch::Paper).unwrap()).unwrap())
            .unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let x: Vec<f64> = (0..1024).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let pyr = dwt_periodic(&x, &pair, 3).unwrap();
    let e: f64 = x.iter().map(|v| v * v).sum();
    assert!((pyr.energy().sqrt() - e.sqrt()).abs() <= 1e-9 * e.sqrt());
}
