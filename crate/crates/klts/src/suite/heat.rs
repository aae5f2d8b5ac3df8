use klts_core::constitutive::{conductive_entropy_production, fourier_flux};
use klts_core::{Mat3, Vec3};

use super::{relative, Ctx, Property};
use crate::report::Record;
use crate::sample::{psd3, skew3, sym3, uniform, vec3, SampleRng};

pub const SKEW: Property = Property {
    name: "conduction_skew_invariance",
    anchor: "a skew part of the conductivity does not change gamma_con",
    tolerance: 1e-14,
};
pub const NONNEGATIVE: Property = Property {
    name: "conduction_nonnegative",
    anchor: "gamma_con = -q . grad T / T^2 >= 0 for positive semidefinite k",
    tolerance: 1e-15,
};
pub const SPOT: Property = Property {
    name: "conduction_spot_value",
    anchor: "k = I, |grad T| = 1, T = 300 gives gamma_con = 1/90000",
    tolerance: 1e-14,
};

fn gamma(k: &Mat3, g: &Vec3, temperature: f64) -> klts_core::Result<f64> {
    conductive_entropy_production(&fourier_flux(k, g), g, temperature)
}

pub fn run(ctx: &Ctx, rng: &mut SampleRng) -> Vec<Record> {
    let n = ctx.cfg.samples.conductivity_states;
    let skew = ctx.check(&SKEW, |t| {
        for _ in 0..n {
            let k = sym3(rng, 1.0);
            let w = skew3(rng, 1.0);
            let g = vec3(rng, 10.0);
            let temp = uniform(rng, 50.0, 1000.0);
            let scale = (k.norm() + w.norm()) * g.dot(&g) / (temp * temp);
            t.observe(relative((gamma(&(k + w), &g, temp)? - gamma(&k, &g, temp)?).abs(), scale));
        }
        Ok(())
    });
    let nonnegative = ctx.check(&NONNEGATIVE, |t| {
        for i in 0..n {
            // Every fourth state is rank one, `k = a aᵀ`.
            let k = if i % 4 == 0 {
                let a = vec3(rng, 1.0);
                a.outer(&a)
            } else {
                psd3(rng, 1.0)
            };
            let g = vec3(rng, 10.0);
            let temp = uniform(rng, 50.0, 1000.0);
            t.observe((-gamma(&k, &g, temp)?).max(0.0));
        }
        Ok(())
    });
    let spot = ctx.check(&SPOT, |t| {
        for axis in 0..3 {
            let value = gamma(&Mat3::IDENTITY, &Vec3::unit(axis), 300.0)?;
            t.observe(relative((value - 1.0 / 90000.0).abs(), 1.0 / 90000.0));
        }
        Ok(())
    });
    vec![skew, nonnegative, spot]
}
