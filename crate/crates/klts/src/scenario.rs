//! Named benchmark scenarios. Each writes `NAME.csv` (one row per sample
//! point) and `NAME.json` (summary with pass/fail checks) into a directory.

use std::fs;
use std::path::{Path, PathBuf};

use klts_core::constitutive::{
    conductive_entropy_production, fourier_flux, shell_response, thermal_deformation, volume_response,
    ShellKinematicInput,
};
use klts_core::domain::ParamBox;
use klts_core::surface::{frame, MappedSurface, MongePatch, Plane, Sphere};
use klts_core::tensor::Configuration::{Current, Intermediate, Reference};
use klts_core::tensor::TwoPointMap;
use klts_core::volume::hencky_additivity_check;
use klts_core::{Mat3, Vec3};
use serde::Serialize;

use crate::config::ScenarioConfig;
use crate::error::CliError;
use crate::fd::FdSurface;
use crate::sample::{near_identity, rotation, stream, uniform, SampleRng};

pub const SCENARIOS: [&str; 5] = [
    "thermal-expansion-zero-stress",
    "sphere-curvature",
    "plate-bending-moment",
    "heated-patch-entropy",
    "hencky-additivity",
];

/// Stream ids of scenario samples; disjoint from the property groups.
const STREAM_BASE: u64 = 100;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub max_error: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    fn new(name: &str, errors: impl IntoIterator<Item = f64>, tolerance: f64) -> Self {
        let mut max = Some(0.0f64);
        for e in errors {
            max = match max {
                Some(m) if e.is_finite() => Some(m.max(e.abs())),
                _ => None,
            };
        }
        Check {
            name: name.into(),
            max_error: max,
            tolerance,
            pass: max.is_some_and(|m| m <= tolerance),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioSummary {
    pub scenario: String,
    pub config: String,
    pub seed: u64,
    pub rows: usize,
    pub checks: Vec<Check>,
    pub pass: bool,
    pub csv: PathBuf,
}

struct Output {
    rows: usize,
    checks: Vec<Check>,
}

pub fn csv_writer(path: &Path) -> Result<csv::Writer<fs::File>, CliError> {
    let file = fs::File::create(path).map_err(CliError::io(path))?;
    Ok(csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(file))
}

fn write_rows<R: Serialize>(path: &Path, rows: &[R]) -> Result<(), CliError> {
    let mut w = csv_writer(path)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush().map_err(CliError::io(path))?;
    Ok(())
}

/// Runs scenario `name`, writing its CSV and JSON summary into `out`.
pub fn run(name: &str, cfg: &ScenarioConfig, seed: u64, out: &Path) -> Result<ScenarioSummary, CliError> {
    let Some(index) = SCENARIOS.iter().position(|s| *s == name) else {
        return Err(CliError::UnknownScenario {
            name: name.into(),
            known: SCENARIOS.join(", "),
        });
    };
    fs::create_dir_all(out).map_err(CliError::io(out))?;
    let csv = out.join(format!("{name}.csv"));
    let mut rng = stream(seed, STREAM_BASE + index as u64);
    let output = match index {
        0 => zero_stress(cfg, &csv)?,
        1 => sphere_curvature(cfg, &csv)?,
        2 => plate_bending(cfg, &csv)?,
        3 => heated_patch(cfg, &csv)?,
        _ => hencky(cfg, &mut rng, &csv)?,
    };
    let summary = ScenarioSummary {
        scenario: name.into(),
        config: cfg.name.clone(),
        seed,
        rows: output.rows,
        pass: output.checks.iter().all(|c| c.pass),
        checks: output.checks,
        csv: PathBuf::from(format!("{name}.csv")),
    };
    let json = out.join(format!("{name}.json"));
    let mut text = serde_json::to_string_pretty(&summary)?;
    text.push('\n');
    fs::write(&json, text).map_err(CliError::io(&json))?;
    Ok(summary)
}

#[derive(Serialize)]
struct ZeroStressRow {
    body: &'static str,
    delta_t: f64,
    temperature: f64,
    /// `max |S_ij| / μ₀` or `max(|σ|, |μ|) / scale`
    relative_stress: f64,
}

fn zero_stress(cfg: &ScenarioConfig, csv: &Path) -> Result<Output, CliError> {
    let sc = &cfg.scenario;
    let theta0 = cfg.thermal.theta0;
    let vparams = cfg.volume_material.params();
    let sparams = cfg.shell_material.params();
    let vmodel = cfg.thermal.volume_model()?;
    let smodel = cfg.thermal.shell_model()?;
    let heat = cfg.heat.params();
    let sphere = Sphere::new(cfg.charts.sphere_radius);
    let xi = sphere.domain.center();
    let reference = frame(&sphere, &xi, Reference)?;
    let mut rows = Vec::new();
    for k in 0..=sc.steps {
        let delta_t = sc.delta_t_max * k as f64 / sc.steps as f64;
        let temperature = theta0 + delta_t;
        let f_t = thermal_deformation(&vmodel, temperature)?;
        let f = TwoPointMap::new(*f_t.matrix(), Reference, Current)?;
        let r = volume_response(&f, &vmodel, temperature, &vparams, &Vec3::ZERO, &heat)?;
        rows.push(ZeroStressRow {
            body: "volume",
            delta_t,
            temperature,
            relative_stress: r.s.max_abs() / vparams.mu0,
        });
        let expanded = MappedSurface {
            inner: &sphere,
            map: smodel.expansion().stretch(temperature)?,
            offset: Vec3::ZERO,
        };
        let current = frame(&expanded, &xi, Current)?;
        let input = ShellKinematicInput::from_frames(&reference, &current, &smodel, temperature)?;
        let s = shell_response(&input, temperature, &sparams)?;
        rows.push(ZeroStressRow {
            body: "shell",
            delta_t,
            temperature,
            relative_stress: s.sigma.max_abs().max(s.mu.max_abs()) / cfg.shell_material.scale(),
        });
    }
    write_rows(csv, &rows)?;
    let of = |body: &'static str| rows.iter().filter(move |r| r.body == body).map(|r| r.relative_stress);
    Ok(Output {
        rows: rows.len(),
        checks: vec![
            Check::new("volume_stress_over_mu0", of("volume"), 1e-12),
            Check::new("shell_stress_over_scale", of("shell"), 1e-12),
        ],
    })
}

#[derive(Serialize)]
struct SphereRow {
    radius: f64,
    mean_curvature_abs: f64,
    gauss_curvature: f64,
    expected_mean: f64,
    expected_gauss: f64,
}

fn sphere_curvature(cfg: &ScenarioConfig, csv: &Path) -> Result<Output, CliError> {
    let mut rows = Vec::new();
    for &radius in &cfg.scenario.sphere_radii {
        let chart = FdSurface {
            chart: Sphere::new(radius),
            step: cfg.numerics.stencil_step,
        };
        let f = frame(&chart, &[1.1, 0.3], Current)?;
        rows.push(SphereRow {
            radius,
            mean_curvature_abs: f.mean_curvature.abs(),
            gauss_curvature: f.gauss_curvature,
            expected_mean: 1.0 / radius,
            expected_gauss: 1.0 / (radius * radius),
        });
    }
    write_rows(csv, &rows)?;
    Ok(Output {
        rows: rows.len(),
        checks: vec![
            Check::new("mean_curvature", rows.iter().map(|r| r.mean_curvature_abs - r.expected_mean), 1e-8),
            Check::new("gauss_curvature", rows.iter().map(|r| r.gauss_curvature - r.expected_gauss), 1e-8),
        ],
    })
}

#[derive(Serialize)]
struct BendingRow {
    kappa_11: f64,
    curvature_11: f64,
    moment_11: f64,
    mu_11: f64,
    expected_mu_11: f64,
}

/// Flat plate bent into `z = ½ κ x²`, evaluated at the origin at `T = θ₀`.
fn plate_bending(cfg: &ScenarioConfig, csv: &Path) -> Result<Output, CliError> {
    let domain = ParamBox::new([-1.0, -1.0], [1.0, 1.0]);
    let params = cfg.shell_material.params();
    let model = cfg.thermal.shell_model()?;
    let temperature = cfg.thermal.theta0;
    let xi = [0.0, 0.0];
    let reference = frame(&Plane::xy(domain), &xi, Reference)?;
    let mut rows = Vec::new();
    for &kappa in &cfg.scenario.bending_curvatures {
        let bent = MongePatch {
            terms: vec![(2, 0, 0.5 * kappa)],
            domain,
        };
        let current = frame(&bent, &xi, Current)?;
        let input = ShellKinematicInput::from_frames(&reference, &current, &model, temperature)?;
        let r = shell_response(&input, temperature, &params)?;
        rows.push(BendingRow {
            kappa_11: kappa,
            curvature_11: input.curvature[(0, 0)],
            moment_11: r.moment[(0, 0)],
            mu_11: r.mu[(0, 0)],
            expected_mu_11: -2.0 * params.c3 * kappa,
        });
    }
    write_rows(csv, &rows)?;
    let scale = params.c3.max(f64::MIN_POSITIVE);
    Ok(Output {
        rows: rows.len(),
        checks: vec![Check::new(
            "mu_11_linear_bending_law",
            rows.iter().map(|r| (r.mu_11 - r.expected_mu_11) / scale),
            1e-12,
        )],
    })
}

#[derive(Serialize)]
struct PatchRow {
    x: f64,
    y: f64,
    temperature: f64,
    gamma_con: f64,
}

/// Affine temperature on the unit square, `T = T₀ + g · x`.
fn heated_patch(cfg: &ScenarioConfig, csv: &Path) -> Result<Output, CliError> {
    let sc = &cfg.scenario;
    let k = cfg.heat.params().conductivity;
    let g = Vec3::new(sc.patch_gradient[0], sc.patch_gradient[1], 0.0);
    let n = sc.patch_grid;
    let mut rows = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (i as f64 / (n - 1) as f64, j as f64 / (n - 1) as f64);
            let temperature = sc.patch_temperature + g[0] * x + g[1] * y;
            let gamma_con = conductive_entropy_production(&fourier_flux(&k, &g), &g, temperature)?;
            rows.push(PatchRow {
                x,
                y,
                temperature,
                gamma_con,
            });
        }
    }
    write_rows(csv, &rows)?;
    Ok(Output {
        rows: rows.len(),
        checks: vec![Check::new(
            "gamma_con_nonnegative",
            rows.iter().map(|r| (-r.gamma_con).max(0.0)),
            1e-15,
        )],
    })
}

#[derive(Serialize)]
struct HenckyRow {
    order: f64,
    pair: &'static str,
    additive_defect: Option<f64>,
    composition_defect: Option<f64>,
    error: Option<String>,
}

fn hencky(cfg: &ScenarioConfig, rng: &mut SampleRng, csv: &Path) -> Result<Output, CliError> {
    let coaxial = |rng: &mut SampleRng, q: &Mat3| {
        let d = Mat3::diag(uniform(rng, 0.5, 2.0), uniform(rng, 0.5, 2.0), uniform(rng, 0.5, 2.0));
        *q * d * q.transpose()
    };
    let q = rotation(rng);
    let pairs = [
        ("coaxial", coaxial(rng, &q), coaxial(rng, &q)),
        ("generic", near_identity(rng, 0.3), near_identity(rng, 0.3)),
    ];
    let mut rows = Vec::new();
    for &order in &cfg.scenario.hencky_orders {
        for (pair, a, b) in &pairs {
            let f1 = TwoPointMap::new(*a, Reference, Intermediate)?;
            let f2 = TwoPointMap::new(*b, Intermediate, Current)?;
            rows.push(match hencky_additivity_check(&f1, &f2, order) {
                Ok(r) => HenckyRow {
                    order,
                    pair,
                    additive_defect: Some(r.additive_defect_norm()),
                    composition_defect: r.composition.map(|_| r.composition_defect),
                    error: None,
                },
                Err(e) => HenckyRow {
                    order,
                    pair,
                    additive_defect: None,
                    composition_defect: None,
                    error: Some(e.to_string()),
                },
            });
        }
    }
    write_rows(csv, &rows)?;
    let pick = |pair: &'static str, order: f64| rows.iter().filter(move |r| r.pair == pair && r.order == order);
    let mut checks = Vec::new();
    if cfg.scenario.hencky_orders.contains(&0.0) {
        checks.push(Check::new(
            "coaxial_log_additive",
            pick("coaxial", 0.0).map(|r| r.additive_defect.unwrap_or(f64::NAN)),
            1e-10,
        ));
    }
    if cfg.scenario.hencky_orders.contains(&2.0) {
        checks.push(Check::new(
            "quadratic_composition",
            pick("generic", 2.0).map(|r| r.composition_defect.unwrap_or(f64::NAN)),
            1e-12,
        ));
    }
    Ok(Output {
        rows: rows.len(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_name_is_reported_with_catalog() {
        let dir = tempfile::tempdir().unwrap();
        let err = run("nope", &ScenarioConfig::default(), 1, dir.path()).unwrap_err();
        assert!(err.to_string().contains("sphere-curvature"));
    }

    #[test]
    fn every_scenario_passes_on_defaults() {
        let dir = tempfile::tempdir().unwrap();
        for name in SCENARIOS {
            let s = run(name, &ScenarioConfig::default(), 42, dir.path()).unwrap();
            assert!(s.pass, "{name}: {:?}", s.checks);
            assert!(dir.path().join(format!("{name}.csv")).exists());
        }
    }

    #[test]
    fn bending_moment_follows_linear_law() {
        let mut cfg = ScenarioConfig::default();
        cfg.shell_material.c3 = 0.5;
        cfg.scenario.bending_curvatures = vec![0.2];
        let dir = tempfile::tempdir().unwrap();
        run("plate-bending-moment", &cfg, 1, dir.path()).unwrap();
        let text = fs::read_to_string(dir.path().join("plate-bending-moment.csv")).unwrap();
        let row: Vec<f64> = text.lines().nth(1).unwrap().split(',').map(|v| v.parse().unwrap()).collect();
        assert!((row[2] - 0.2).abs() < 1e-14, "{text}");
        assert!((row[3] + 0.2).abs() < 1e-14);
    }
}
