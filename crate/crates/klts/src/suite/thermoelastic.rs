use klts_core::constitutive::{
    energy_density, shell_energy_density, shell_response, thermal_deformation, volume_response, ShellKinematicInput,
    ShellThermalModel, ThermalExpansionModel,
};
use klts_core::surface::{frame, MappedSurface, PerturbedSurface, SurfaceChart};
use klts_core::tensor::Configuration::{Current, Reference};
use klts_core::tensor::TwoPointMap;
use klts_core::{Mat2, Mat3, Vec3};

use super::{relative, Ctx, Property};
use crate::fd::{central, central4};
use crate::report::Record;
use crate::sample::{near_identity, point_in, surface_chart, surface_field, sym3, uniform, SampleRng};

pub const ZERO_STRESS_VOLUME: Property = Property {
    name: "zero_stress_volume",
    anchor: "pure thermal expansion F = F_T is stress free in the volume law",
    tolerance: 1e-12,
};
pub const ZERO_STRESS_SHELL: Property = Property {
    name: "zero_stress_shell",
    anchor: "pure thermal expansion of the mid-surface gives sigma = 0 and mu = 0",
    tolerance: 1e-12,
};
pub const STRESS_VOLUME: Property = Property {
    name: "stress_energy_volume",
    anchor: "S = 2 d(rho0 psi)/dC against a finite difference of the energy",
    tolerance: 1e-6,
};
pub const STRESS_SHELL_SIGMA: Property = Property {
    name: "stress_energy_shell_sigma",
    anchor: "shell sigma = 2 d(rho0 psi)/da against a finite difference of the energy",
    tolerance: 1e-6,
};
pub const STRESS_SHELL_MU: Property = Property {
    name: "stress_energy_shell_mu",
    anchor: "shell mu = -d(rho0 psi)/db against a finite difference of the energy",
    tolerance: 1e-6,
};

/// `½ h (E_ij + E_ji)`
fn sym3_unit(i: usize, j: usize, h: f64) -> Mat3 {
    let mut e = Mat3::ZERO;
    e[(i, j)] += 0.5 * h;
    e[(j, i)] += 0.5 * h;
    e
}

fn sym2_unit(i: usize, j: usize, h: f64) -> Mat2 {
    let mut e = Mat2::ZERO;
    e[(i, j)] += 0.5 * h;
    e[(j, i)] += 0.5 * h;
    e
}

/// Temperatures `θ₀ + k ΔT_max / n`, `k = 0..=n`.
fn sweep(theta0: f64, delta: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..=n).map(move |k| theta0 + delta * k as f64 / n as f64)
}

/// Random anisotropic expansion with `|α_ij| ≤ 2e-5`.
fn anisotropic(rng: &mut SampleRng) -> Mat3 {
    sym3(rng, 1e-5) + Mat3::IDENTITY * 1e-5
}

fn zero_stress_volume(ctx: &Ctx, rng: &mut SampleRng) -> Record {
    let cfg = ctx.cfg;
    let params = cfg.volume_material.params();
    ctx.check(&ZERO_STRESS_VOLUME, |t| {
        let theta0 = cfg.thermal.theta0;
        let models = [cfg.thermal.volume_model()?, ThermalExpansionModel::new(anisotropic(rng), theta0)?];
        let heat = cfg.heat.params();
        for model in &models {
            for temp in sweep(theta0, cfg.scenario.delta_t_max, cfg.samples.sweep_steps) {
                let f_t = thermal_deformation(model, temp)?;
                let f = TwoPointMap::new(*f_t.matrix(), Reference, Current)?;
                let r = volume_response(&f, model, temp, &params, &Vec3::ZERO, &heat)?;
                t.observe(r.s.max_abs() / params.shear_modulus(temp));
            }
        }
        Ok(())
    })
}

fn zero_stress_shell(ctx: &Ctx, rng: &mut SampleRng) -> Record {
    let cfg = ctx.cfg;
    let params = cfg.shell_material.params();
    let scale = cfg.shell_material.scale();
    ctx.check(&ZERO_STRESS_SHELL, |t| {
        let theta0 = cfg.thermal.theta0;
        let models = [
            cfg.thermal.shell_model()?,
            ShellThermalModel::new(anisotropic(rng), cfg.thermal.alpha3, theta0)?,
        ];
        for (k, model) in models.iter().enumerate() {
            let chart = surface_chart(rng, ctx.amp(), k);
            let xi = point_in(rng, &chart.domain(), 0.05);
            let reference = frame(&chart, &xi, Reference)?;
            for temp in sweep(theta0, cfg.scenario.delta_t_max, cfg.samples.sweep_steps) {
                let expanded = MappedSurface {
                    inner: &chart,
                    map: model.expansion().stretch(temp)?,
                    offset: Vec3::ZERO,
                };
                let current = frame(&expanded, &xi, Current)?;
                let input = ShellKinematicInput::from_frames(&reference, &current, model, temp)?;
                let r = shell_response(&input, temp, &params)?;
                t.observe(r.sigma.max_abs().max(r.mu.max_abs()) / scale);
            }
        }
        Ok(())
    })
}

fn temperature(ctx: &Ctx, rng: &mut SampleRng) -> f64 {
    let theta0 = ctx.cfg.thermal.theta0;
    theta0 + uniform(rng, -0.25, 0.5) * theta0.min(200.0)
}

fn stress_volume(ctx: &Ctx, rng: &mut SampleRng) -> Record {
    let cfg = ctx.cfg;
    let params = cfg.volume_material.params();
    ctx.check(&STRESS_VOLUME, |t| {
        let model = cfg.thermal.volume_model()?;
        let heat = cfg.heat.params();
        for _ in 0..cfg.samples.stress_states {
            let f = TwoPointMap::new(near_identity(rng, 0.3), Reference, Current)?;
            let temp = temperature(ctx, rng);
            let r = volume_response(&f, &model, temp, &params, &Vec3::ZERO, &heat)?;
            let f_t = model.stretch(temp)?;
            let c = f.transpose() * *f.matrix();
            let h = cfg.numerics.tensor_step * c.norm().max(1.0);
            let mut worst: f64 = 0.0;
            for i in 0..3 {
                for j in 0..3 {
                    let w = |e: f64| energy_density(&(c + sym3_unit(i, j, e)), &f_t, temp, &params).unwrap_or(f64::NAN);
                    worst = worst.max((2.0 * central(w, h) - r.s[(i, j)]).abs());
                }
            }
            t.observe(relative(worst, r.s.max_abs().max(1e-3 * params.shear_modulus(temp))));
        }
        Ok(())
    })
}

/// Per-state relative errors `(σ, μ)` of the shell law.
fn shell_errors(ctx: &Ctx, rng: &mut SampleRng) -> klts_core::Result<Vec<(f64, f64)>> {
    let cfg = ctx.cfg;
    let params = cfg.shell_material.params();
    let floor = 1e-3 * cfg.shell_material.scale();
    let model = cfg.thermal.shell_model()?;
    let mut out = Vec::with_capacity(cfg.samples.stress_states);
    for k in 0..cfg.samples.stress_states {
        let chart = surface_chart(rng, ctx.amp(), k);
        let field = surface_field(rng, 0.5 * ctx.amp(), chart.domain());
        let current = MappedSurface {
            inner: PerturbedSurface {
                chart: &chart,
                field: &field,
                epsilon: 1.0,
            },
            map: near_identity(rng, 0.5 * ctx.amp()),
            offset: Vec3::ZERO,
        };
        let xi = point_in(rng, &chart.domain(), 0.05);
        let temp = temperature(ctx, rng);
        let input = ShellKinematicInput::from_frames(&frame(&chart, &xi, Reference)?, &frame(&current, &xi, Current)?, &model, temp)?;
        let r = shell_response(&input, temp, &params)?;
        let h_a = cfg.numerics.tensor_step * input.metric.norm().max(1.0);
        let h_b = cfg.numerics.tensor_step * input.curvature.norm().max(1.0);
        let (mut ws, mut wm): (f64, f64) = (0.0, 0.0);
        for i in 0..2 {
            for j in 0..2 {
                let da = |e: f64| {
                    let mut p = input;
                    p.metric = p.metric + sym2_unit(i, j, e);
                    shell_energy_density(&p, temp, &params).unwrap_or(f64::NAN)
                };
                let db = |e: f64| {
                    let mut p = input;
                    p.curvature = p.curvature + sym2_unit(i, j, e);
                    shell_energy_density(&p, temp, &params).unwrap_or(f64::NAN)
                };
                ws = ws.max((2.0 * central4(da, h_a) - r.sigma[(i, j)]).abs());
                wm = wm.max((-central4(db, h_b) - r.mu[(i, j)]).abs());
            }
        }
        out.push((relative(ws, r.sigma.max_abs().max(floor)), relative(wm, r.mu.max_abs().max(floor))));
    }
    Ok(out)
}

fn stress_shell(ctx: &Ctx, rng: &mut SampleRng) -> (Record, Record) {
    let errors = shell_errors(ctx, rng);
    let record = |p: &Property, pick: fn(&(f64, f64)) -> f64| {
        ctx.check(p, |t| {
            for e in errors.as_ref().map_err(|e| *e)? {
                t.observe(pick(e));
            }
            Ok(())
        })
    };
    (record(&STRESS_SHELL_SIGMA, |e| e.0), record(&STRESS_SHELL_MU, |e| e.1))
}

pub fn run(ctx: &Ctx, rng: &mut SampleRng) -> Vec<Record> {
    let zv = zero_stress_volume(ctx, rng);
    let zs = zero_stress_shell(ctx, rng);
    let sv = stress_volume(ctx, rng);
    let (ss, sm) = stress_shell(ctx, rng);
    vec![zv, zs, sv, ss, sm]
}
