use std::time::Instant;

use klts_core::tensor::{pull_back, push_forward, Configuration, Tensor2, TwoPointMap, Variance};

use super::{Ctx, Property};
use crate::report::Record;
use crate::sample::{mat3, near_identity, SampleRng};

pub const ROUND_TRIP: Property = Property {
    name: "push_pull_round_trip",
    anchor: "push-forward and pull-back of second-order tensors, all four variances",
    tolerance: 1e-12,
};

/// Wall-clock budget of the round-trip batch.
pub const ROUND_TRIP_BUDGET_S: f64 = 1.0;

pub fn run(ctx: &Ctx, rng: &mut SampleRng) -> Vec<Record> {
    vec![ctx.check(&ROUND_TRIP, |t| {
        let start = Instant::now();
        for _ in 0..ctx.cfg.samples.round_trips {
            let f = near_identity(rng, 0.3);
            let c = mat3(rng, 2.0);
            let map = TwoPointMap::new(f, Configuration::Reference, Configuration::Current)?;
            for v in Variance::ALL {
                let r = Tensor2::new(c, v, Configuration::Reference)?;
                let back = pull_back(&push_forward(&r, &map)?, &map)?;
                let s = Tensor2::new(c, v, Configuration::Current)?;
                let forth = push_forward(&pull_back(&s, &map)?, &map)?;
                t.observe((*back.components() - c).max_abs().max((*forth.components() - c).max_abs()));
            }
        }
        let elapsed = start.elapsed().as_secs_f64();
        t.require(elapsed < ROUND_TRIP_BUDGET_S, || format!("round trips took {elapsed:.3} s"));
        Ok(())
    })]
}
