use klts_core::tensor::Configuration::{Current, Intermediate, Reference};
use klts_core::tensor::TwoPointMap;
use klts_core::volume::hencky_additivity_check;
use klts_core::Mat3;

use super::{Ctx, Property};
use crate::report::Record;
use crate::sample::{near_identity, rotation, uniform, SampleRng};

pub const HENCKY_LOG: Property = Property {
    name: "hencky_coaxial_log",
    anchor: "logarithmic strain is additive for coaxial stretches, E(F2 F1) = E(F1) + E(F2)",
    tolerance: 1e-10,
};
pub const HENCKY_QUADRATIC: Property = Property {
    name: "hencky_quadratic_composition",
    anchor: "Green-Lagrange strain composes as E = F1^T E2 F1 + E1 and is not additive",
    tolerance: 1e-12,
};

/// Smallest additive defect expected of a generic pair in the quadratic
/// measure.
const NON_ADDITIVE_FLOOR: f64 = 1e-6;

fn coaxial(q: &Mat3, rng: &mut SampleRng) -> Mat3 {
    let d = Mat3::diag(uniform(rng, 0.5, 2.0), uniform(rng, 0.5, 2.0), uniform(rng, 0.5, 2.0));
    *q * d * q.transpose()
}

pub fn run(ctx: &Ctx, rng: &mut SampleRng) -> Vec<Record> {
    let n = ctx.cfg.samples.stress_states;
    let log = ctx.check(&HENCKY_LOG, |t| {
        for _ in 0..n {
            let q = rotation(rng);
            let f1 = TwoPointMap::new(coaxial(&q, rng), Reference, Intermediate)?;
            let f2 = TwoPointMap::new(coaxial(&q, rng), Intermediate, Current)?;
            t.observe(hencky_additivity_check(&f1, &f2, 0.0)?.additive_defect_norm());
        }
        Ok(())
    });
    let quadratic = ctx.check(&HENCKY_QUADRATIC, |t| {
        for _ in 0..n {
            let f1 = TwoPointMap::new(near_identity(rng, 0.3), Reference, Intermediate)?;
            let f2 = TwoPointMap::new(near_identity(rng, 0.3), Intermediate, Current)?;
            let report = hencky_additivity_check(&f1, &f2, 2.0)?;
            t.observe(report.composition_defect);
            let defect = report.additive_defect_norm();
            t.require(defect > NON_ADDITIVE_FLOOR, || format!("quadratic strain looked additive ({defect:e})"));
        }
        Ok(())
    });
    vec![log, quadratic]
}
