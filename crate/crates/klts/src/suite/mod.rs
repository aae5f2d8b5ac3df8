//! Seeded property suite behind `klts verify`.
//!
//! Properties are grouped; each group draws from its own ChaCha8 stream and
//! runs sequentially, while groups run in parallel. Records are collected in
//! group order, so the report does not depend on the thread count.

mod geometry;
mod heat;
mod linearization;
mod rates;
mod strain;
mod tensor;
mod thermoelastic;
mod weak;

use std::time::Instant;

use rayon::prelude::*;

use crate::config::ScenarioConfig;
use crate::report::{Record, VerificationReport};
use crate::sample::{stream, SampleRng};

/// A verified relation with its default tolerance.
#[derive(Debug, Clone, Copy)]
pub struct Property {
    pub name: &'static str,
    pub anchor: &'static str,
    pub tolerance: f64,
}

/// Running maximum of per-sample errors.
#[derive(Debug, Default)]
pub struct Tally {
    samples: usize,
    max: f64,
    violation: Option<String>,
}

impl Tally {
    /// Non-finite errors count as unbounded.
    pub fn observe(&mut self, error: f64) {
        self.samples += 1;
        self.max = if error.is_nan() { f64::INFINITY } else { self.max.max(error.abs()) };
    }

    /// Marks the property failed regardless of the error bound.
    pub fn require(&mut self, ok: bool, message: impl FnOnce() -> String) {
        if !ok && self.violation.is_none() {
            self.violation = Some(message());
        }
    }
}

pub struct Ctx<'a> {
    pub cfg: &'a ScenarioConfig,
    pub timings: bool,
}

impl Ctx<'_> {
    pub fn tolerance(&self, p: &Property) -> f64 {
        self.cfg.tolerances.get(p.name).copied().unwrap_or(p.tolerance)
    }

    pub fn amp(&self) -> f64 {
        self.cfg.charts.perturbation
    }

    pub fn stencil(&self) -> f64 {
        self.cfg.numerics.stencil_step
    }

    /// Runs `body`, turning kernel errors into failed records.
    pub fn check(&self, p: &Property, body: impl FnOnce(&mut Tally) -> klts_core::Result<()>) -> Record {
        let start = Instant::now();
        let mut tally = Tally::default();
        let outcome = body(&mut tally);
        let elapsed = start.elapsed().as_secs_f64() * 1e3;
        let tolerance = self.tolerance(p);
        let (max_error, error) = match outcome {
            Err(e) => (None, Some(e.to_string())),
            Ok(()) if tally.max.is_finite() => (Some(tally.max), tally.violation),
            Ok(()) => (None, Some(tally.violation.unwrap_or_else(|| "non-finite error".into()))),
        };
        Record {
            name: p.name.to_string(),
            anchor: p.anchor.to_string(),
            samples: tally.samples,
            pass: error.is_none() && max_error.is_some_and(|m| m <= tolerance),
            max_error,
            tolerance,
            error,
            runtime_ms: self.timings.then_some(elapsed),
        }
    }
}

type Group = fn(&Ctx, &mut SampleRng) -> Vec<Record>;

/// Groups with their stream ids; ids are part of the reproducibility
/// contract and never reused.
const GROUPS: [(u64, Group); 8] = [
    (0, tensor::run),
    (1, geometry::run),
    (2, thermoelastic::run),
    (3, linearization::run),
    (4, rates::run),
    (5, weak::run),
    (6, strain::run),
    (7, heat::run),
];

pub const DETERMINISM: Property = Property {
    name: "determinism",
    anchor: "identical config and seed give byte-identical records",
    tolerance: 0.0,
};

/// Every record name the suite can emit, in report order.
pub const RECORD_NAMES: &[&str] = &[
    tensor::ROUND_TRIP.name,
    geometry::RICCI_VOLUME.name,
    geometry::RICCI_SURFACE.name,
    geometry::GAUSS_WEINGARTEN.name,
    geometry::SPHERE_MEAN.name,
    geometry::SPHERE_GAUSS.name,
    thermoelastic::ZERO_STRESS_VOLUME.name,
    thermoelastic::ZERO_STRESS_SHELL.name,
    thermoelastic::STRESS_VOLUME.name,
    thermoelastic::STRESS_SHELL_SIGMA.name,
    thermoelastic::STRESS_SHELL_MU.name,
    linearization::ENTRIES[0].name,
    linearization::ENTRIES[1].name,
    linearization::ENTRIES[2].name,
    linearization::ENTRIES[3].name,
    linearization::ENTRIES[4].name,
    linearization::ENTRIES[5].name,
    linearization::ENTRIES[6].name,
    linearization::ENTRIES[7].name,
    rates::METRIC.name,
    rates::CURVATURE.name,
    rates::NORMAL.name,
    weak::RIGID_VOLUME_TRANSLATION.name,
    weak::RIGID_VOLUME_ROTATION.name,
    weak::RIGID_SHELL_TRANSLATION.name,
    weak::RIGID_SHELL_ROTATION.name,
    weak::ENERGY_VOLUME.name,
    weak::ENERGY_SHELL.name,
    weak::DIVERGENCE_VOLUME.name,
    weak::THERMAL_VOLUME.name,
    weak::THERMAL_SHELL.name,
    weak::QUADRATURE.name,
    weak::BALANCE.name,
    strain::HENCKY_LOG.name,
    strain::HENCKY_QUADRATIC.name,
    heat::SKEW.name,
    heat::NONNEGATIVE.name,
    heat::SPOT.name,
    DETERMINISM.name,
];

/// All group records for `seed`, in group order.
pub fn records(cfg: &ScenarioConfig, seed: u64, timings: bool) -> Vec<Record> {
    let ctx = Ctx { cfg, timings };
    GROUPS
        .par_iter()
        .map(|(id, group)| group(&ctx, &mut stream(seed, *id)))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn without_runtime(records: &[Record]) -> Vec<Record> {
    records
        .iter()
        .cloned()
        .map(|mut r| {
            r.runtime_ms = None;
            r
        })
        .collect()
}

/// Full suite, including a second pass that checks the records repeat.
pub fn verify(cfg: &ScenarioConfig, seed: u64, timings: bool) -> VerificationReport {
    let ctx = Ctx { cfg, timings };
    let mut first = Vec::new();
    let determinism = ctx.check(&DETERMINISM, |t| {
        first = records(cfg, seed, timings);
        let second = records(cfg, seed, false);
        let a = serde_json::to_string(&without_runtime(&first)).unwrap_or_default();
        let b = serde_json::to_string(&second).unwrap_or_default();
        t.observe(if a == b && !a.is_empty() { 0.0 } else { 1.0 });
        Ok(())
    });
    first.push(determinism);
    VerificationReport::new(cfg.name.clone(), seed, first)
}

/// Thread pool capped by `KLTS_THREADS` when set to a positive integer.
pub fn thread_pool() -> rayon::ThreadPool {
    let threads = std::env::var("KLTS_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or(0);
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
}

/// Relative error `‖a − b‖ / ‖a‖` in the max norm, with a floor on `‖a‖`.
pub(crate) fn relative(diff: f64, scale: f64) -> f64 {
    diff / scale.max(f64::MIN_POSITIVE)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique() {
        let mut names = RECORD_NAMES.to_vec();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), RECORD_NAMES.len());
    }

    #[test]
    fn tally_treats_nan_as_failure() {
        let ctx = Ctx {
            cfg: &ScenarioConfig::default(),
            timings: false,
        };
        let p = Property {
            name: "t",
            anchor: "a",
            tolerance: 1.0,
        };
        let r = ctx.check(&p, |t| {
            t.observe(f64::NAN);
            Ok(())
        });
        assert!(!r.pass);
        assert_eq!(r.max_error, None);
        let r = ctx.check(&p, |_| Err(klts_core::Error::NonFinite));
        assert!(!r.pass && r.error.is_some());
    }
}
