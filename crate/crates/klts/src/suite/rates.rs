use klts_core::surface::{frame, PerturbedSurface, SurfaceChart};
use klts_core::surface_kinematics::surface_rates;
use klts_core::tensor::Configuration::Current;

use super::{relative, Ctx, Property};
use crate::fd::try_central6;
use crate::report::Record;
use crate::sample::{point_in, surface_chart, surface_field, SampleRng};

pub const METRIC: Property = Property {
    name: "rate_metric",
    anchor: "metric rate a_dot = w_ab + w_ba against d/de a(x + e v)",
    tolerance: 1e-6,
};
pub const CURVATURE: Property = Property {
    name: "rate_curvature",
    anchor: "curvature rate b_dot against d/de b(x + e v)",
    tolerance: 1e-6,
};
pub const NORMAL: Property = Property {
    name: "rate_normal",
    anchor: "normal rate n_dot = -(w_a . n) a^a against d/de n(x + e v)",
    tolerance: 1e-6,
};

/// Relative errors `(ȧ, ḃ, ṅ)` at one point.
fn errors(chart: &dyn SurfaceChart, velocity: &klts_core::surface::PolynomialSurface, xi: &[f64; 2], h: f64) -> klts_core::Result<[f64; 3]> {
    let rates = surface_rates(chart, velocity, xi, 1.0, 0.0)?;
    let at = |e: f64| {
        frame(
            &PerturbedSurface {
                chart,
                field: velocity,
                epsilon: e,
            },
            xi,
            Current,
        )
    };
    let a = try_central6(|e| at(e).map(|f| f.metric), h)?;
    let b = try_central6(|e| at(e).map(|f| f.curvature), h)?;
    let n = try_central6(|e| at(e).map(|f| f.normal), h)?;
    Ok([
        relative((a - rates.a_dot).max_abs(), rates.a_dot.max_abs()),
        relative((b - rates.b_dot).max_abs(), rates.b_dot.max_abs()),
        relative((n - rates.n_dot).max_abs(), rates.n_dot.max_abs()),
    ])
}

pub fn run(ctx: &Ctx, rng: &mut SampleRng) -> Vec<Record> {
    let s = ctx.cfg.samples;
    let h = ctx.stencil();
    let mut all = Vec::new();
    let mut failure = None;
    for k in 0..s.velocity_fields {
        let chart = surface_chart(rng, ctx.amp(), k);
        let v = surface_field(rng, 1.0, chart.domain());
        for _ in 0..s.points_per_chart {
            let xi = point_in(rng, &chart.domain(), 0.05);
            match errors(&chart, &v, &xi, h) {
                Ok(e) => all.push(e),
                Err(e) => failure = failure.or(Some(e)),
            }
        }
    }
    [METRIC, CURVATURE, NORMAL]
        .iter()
        .enumerate()
        .map(|(i, p)| {
            ctx.check(p, |t| {
                if let Some(e) = failure {
                    return Err(e);
                }
                for e in &all {
                    t.observe(e[i]);
                }
                Ok(())
            })
        })
        .collect()
}
