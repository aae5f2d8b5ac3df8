use klts_core::constitutive::{conductive_entropy_production, fourier_flux};
use klts_core::tensor::{pull_back, push_forward, Configuration, Tensor2, TwoPointMap, Variance};
use klts_core::weak_forms::linearization_table;
use klts_core::{Mat2, Mat3, Vec3};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn mat3(range: f64) -> impl Strategy<Value = Mat3> {
    prop::array::uniform3(prop::array::uniform3(-range..range)).prop_map(Mat3)
}

fn near_identity() -> impl Strategy<Value = Mat3> {
    mat3(0.3).prop_map(|m| Mat3::IDENTITY + m)
}

proptest! {
    #[test]
    fn push_then_pull_is_identity(f in near_identity(), c in mat3(2.0), v in 0usize..4) {
        let map = TwoPointMap::new(f, Configuration::Reference, Configuration::Current).unwrap();
        let t = Tensor2::new(c, Variance::ALL[v], Configuration::Reference).unwrap();
        let back = pull_back(&push_forward(&t, &map).unwrap(), &map).unwrap();
        let err = (*back.components() - c).max_abs();
        prop_assert!(err <= 1e-12 * (1.0 + c.max_abs()), "{}", err);
    }

    #[test]
    fn conduction_dissipates_for_psd_conductivity(l in mat3(1.0), g in prop::array::uniform3(-5.0..5.0f64), t in 10.0..2000.0f64) {
        let k = l * l.transpose();
        let grad = Vec3(g);
        let gamma = conductive_entropy_production(&fourier_flux(&k, &grad), &grad, t).unwrap();
        prop_assert!(gamma >= -1e-15, "{}", gamma);
    }

    #[test]
    fn jacobian_derivative_is_half_j_inverse(a in 0.5..2.0f64, b in -0.3..0.3f64, d in 0.5..2.0f64) {
        let c = Mat2::new(a, b, b, d);
        let table = linearization_table(&c, &Mat2::new(0.5, 0.1, 0.1, -0.4)).unwrap();
        let expected = c.try_inverse().unwrap() * (0.5 * c.det().sqrt());
        prop_assert!((table.dj_dc - expected).max_abs() < 1e-14);
    }
}

#[test]
fn seeded_skew_conductivity_is_invisible() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let w: [f64; 3] = rng.gen();
        let skew = Mat3([[0.0, w[2], -w[1]], [-w[2], 0.0, w[0]], [w[1], -w[0], 0.0]]);
        let grad = Vec3(rng.gen::<[f64; 3]>());
        let t = rng.gen_range(100.0..600.0);
        let sym = conductive_entropy_production(&fourier_flux(&Mat3::IDENTITY, &grad), &grad, t).unwrap();
        let with = conductive_entropy_production(&fourier_flux(&(Mat3::IDENTITY + skew), &grad), &grad, t).unwrap();
        assert!((sym - with).abs() <= 1e-14 * sym.abs().max(1e-300) + 1e-18);
    }
}
