//! JSON scenario configuration.
//!
//! Every block has defaults, so `{}` plus a seed is a complete config. Unknown
//! keys are rejected so that typos surface as `ConfigInvalid` instead of being
//! silently ignored.

use std::collections::BTreeMap;
use std::path::Path;

use klts_core::constitutive::{
    HeatLawParams, ShellThermalModel, SurfaceMaterialParams, ThermalExpansionModel, VolumeMaterialParams,
};
use klts_core::weak_forms::MAX_ORDER;
use klts_core::Mat3;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub name: String,
    /// Mandatory for randomized suites unless `--seed` is given.
    #[serde(default)]
    pub seed: Option<u64>,
    pub volume_material: VolumeMaterial,
    pub shell_material: ShellMaterial,
    pub thermal: ThermalBlock,
    pub heat: HeatBlock,
    pub charts: ChartBlock,
    pub numerics: Numerics,
    pub samples: Samples,
    /// Per-property tolerance overrides keyed by record name.
    pub tolerances: BTreeMap<String, f64>,
    pub scenario: ScenarioBlock,
    pub table: TableBlock,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            name: "default".into(),
            seed: Some(DEFAULT_SEED),
            volume_material: VolumeMaterial::default(),
            shell_material: ShellMaterial::default(),
            thermal: ThermalBlock::default(),
            heat: HeatBlock::default(),
            charts: ChartBlock::default(),
            numerics: Numerics::default(),
            samples: Samples::default(),
            tolerances: BTreeMap::new(),
            scenario: ScenarioBlock::default(),
            table: TableBlock::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VolumeMaterial {
    pub mu0: f64,
    pub lambda: f64,
    pub c1: f64,
    pub c2: f64,
    pub t_ref: f64,
    pub t0: f64,
    pub rho0: f64,
}

impl Default for VolumeMaterial {
    fn default() -> Self {
        VolumeMaterial {
            mu0: 80.0e9,
            lambda: 120.0e9,
            c1: 3.5e6,
            c2: 1e-4,
            t_ref: 293.15,
            t0: 300.0,
            rho0: 7800.0,
        }
    }
}

impl VolumeMaterial {
    pub fn params(&self) -> VolumeMaterialParams {
        VolumeMaterialParams {
            mu0: self.mu0,
            lambda: self.lambda,
            c1: self.c1,
            c2: self.c2,
            t_ref: self.t_ref,
            t0: self.t0,
            rho0: self.rho0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ShellMaterial {
    pub bulk: f64,
    pub shear: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub t_ref: f64,
    pub t0: f64,
    pub rho0: f64,
    pub thickness: f64,
}

impl Default for ShellMaterial {
    fn default() -> Self {
        ShellMaterial {
            bulk: 5.0,
            shear: 2.0,
            c1: 0.3,
            c2: 2e-3,
            c3: 0.5,
            t_ref: 300.0,
            t0: 300.0,
            rho0: 1.5,
            thickness: 0.01,
        }
    }
}

impl ShellMaterial {
    pub fn params(&self) -> SurfaceMaterialParams {
        SurfaceMaterialParams {
            bulk: self.bulk,
            shear: self.shear,
            c1: self.c1,
            c2: self.c2,
            c3: self.c3,
            t_ref: self.t_ref,
            t0: self.t0,
            rho0: self.rho0,
            thickness: self.thickness,
        }
    }

    /// Stress scale for zero-stress tolerances.
    pub fn scale(&self) -> f64 {
        self.bulk.abs().max(self.shear.abs()).max(self.c3.abs())
    }
}

/// Thermal expansion; `alpha` is either a scalar (isotropic) or a symmetric
/// 3×3 matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ThermalBlock {
    pub alpha: Expansion,
    pub alpha3: f64,
    pub theta0: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Expansion {
    Isotropic(f64),
    Tensor([[f64; 3]; 3]),
}

impl Expansion {
    pub fn matrix(&self) -> Mat3 {
        match *self {
            Expansion::Isotropic(a) => Mat3::IDENTITY * a,
            Expansion::Tensor(m) => Mat3(m),
        }
    }
}

impl Default for ThermalBlock {
    fn default() -> Self {
        ThermalBlock {
            alpha: Expansion::Isotropic(1e-3),
            alpha3: 1e-3,
            theta0: 300.0,
        }
    }
}

impl ThermalBlock {
    pub fn volume_model(&self) -> klts_core::Result<ThermalExpansionModel> {
        ThermalExpansionModel::new(self.alpha.matrix(), self.theta0)
    }

    pub fn shell_model(&self) -> klts_core::Result<ShellThermalModel> {
        ShellThermalModel::new(self.alpha.matrix(), self.alpha3, self.theta0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HeatBlock {
    pub conductivity: [[f64; 3]; 3],
    pub emissivity: f64,
    pub geometry_factor: f64,
    pub radiation_temperature: f64,
    pub transfer_coefficient: f64,
    pub environment_temperature: f64,
}

impl Default for HeatBlock {
    fn default() -> Self {
        let d = HeatLawParams::default();
        HeatBlock {
            conductivity: d.conductivity.0,
            emissivity: d.emissivity,
            geometry_factor: d.geometry_factor,
            radiation_temperature: d.radiation_temperature,
            transfer_coefficient: d.transfer_coefficient,
            environment_temperature: d.environment_temperature,
        }
    }
}

impl HeatBlock {
    pub fn params(&self) -> HeatLawParams {
        HeatLawParams {
            conductivity: Mat3(self.conductivity),
            emissivity: self.emissivity,
            geometry_factor: self.geometry_factor,
            radiation_temperature: self.radiation_temperature,
            transfer_coefficient: self.transfer_coefficient,
            environment_temperature: self.environment_temperature,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ChartBlock {
    /// Sphere used by the curvature spot checks.
    pub sphere_radius: f64,
    /// Amplitude of random perturbations of the identity in random charts.
    pub perturbation: f64,
}

impl Default for ChartBlock {
    fn default() -> Self {
        ChartBlock {
            sphere_radius: 2.0,
            perturbation: 0.2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Numerics {
    pub quadrature_order: usize,
    /// Central-difference step in chart parameters.
    pub parametric_step: f64,
    /// Relative central-difference step for tensor components, scaled by
    /// `max(1, ‖C‖)`.
    pub tensor_step: f64,
    /// Step of the higher-order stencils (time rates, geometry, FD charts).
    pub stencil_step: f64,
    /// `ε` step of the 6th-order energy-variation oracle.
    pub variation_step: f64,
}

impl Default for Numerics {
    fn default() -> Self {
        Numerics {
            quadrature_order: klts_core::weak_forms::DEFAULT_ORDER,
            parametric_step: 1e-5,
            tensor_step: 1e-6,
            stencil_step: 1e-3,
            variation_step: 1e-4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Samples {
    pub round_trips: usize,
    pub charts: usize,
    pub points_per_chart: usize,
    pub stress_states: usize,
    pub table_pairs: usize,
    pub velocity_fields: usize,
    pub conductivity_states: usize,
    pub sweep_steps: usize,
    pub weak_form_states: usize,
}

impl Default for Samples {
    fn default() -> Self {
        Samples {
            round_trips: 200,
            charts: 20,
            points_per_chart: 10,
            stress_states: 50,
            table_pairs: 50,
            velocity_fields: 20,
            conductivity_states: 10_000,
            sweep_steps: 20,
            weak_form_states: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioBlock {
    pub delta_t_max: f64,
    pub steps: usize,
    pub sphere_radii: Vec<f64>,
    /// Imposed `κ₁₁` values for the bending scenario.
    pub bending_curvatures: Vec<f64>,
    /// Grid points per side of the heated patch.
    pub patch_grid: usize,
    /// Temperature at the patch centre and its linear gradient.
    pub patch_temperature: f64,
    pub patch_gradient: [f64; 2],
    /// Seth-Hill orders swept by the additivity scenario.
    pub hencky_orders: Vec<f64>,
}

impl Default for ScenarioBlock {
    fn default() -> Self {
        ScenarioBlock {
            delta_t_max: 200.0,
            steps: 20,
            sphere_radii: vec![0.5, 1.0, 2.0, 4.0],
            bending_curvatures: vec![0.05, 0.1, 0.2, 0.4],
            patch_grid: 11,
            patch_temperature: 350.0,
            patch_gradient: [40.0, -25.0],
            hencky_orders: vec![-2.0, -1.0, 0.0, 0.5, 1.0, 2.0],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableKind {
    /// Surface linearization entries per `(C, b^♭◁)` state.
    Linearization,
    /// Volume stress `S(T)` along a temperature sweep at fixed `F`.
    VolumeResponse,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableState {
    pub c: [[f64; 2]; 2],
    pub b: [[f64; 2]; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TableBlock {
    pub kind: TableKind,
    pub states: Vec<TableState>,
    /// Extra seeded random states appended after `states`.
    pub random_states: usize,
    /// Temperature at which `F = F_T(T)` for the response sweep.
    pub compatibility_temperature: f64,
    pub temperature_start: f64,
    pub temperature_end: f64,
    pub temperature_steps: usize,
}

impl Default for TableBlock {
    fn default() -> Self {
        TableBlock {
            kind: TableKind::Linearization,
            states: vec![TableState {
                c: [[1.0, 0.0], [0.0, 1.0]],
                b: [[0.0, 0.0], [0.0, 0.0]],
            }],
            random_states: 0,
            compatibility_temperature: 350.0,
            temperature_start: 300.0,
            temperature_end: 400.0,
            temperature_steps: 21,
        }
    }
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let cfg: ScenarioConfig =
            serde_json::from_str(text).map_err(|e| CliError::ConfigInvalid(format!("parse error: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text)
    }

    /// Seed from the command line, else from the config.
    pub fn resolve_seed(&self, cli: Option<u64>) -> Result<u64, CliError> {
        cli.or(self.seed)
            .ok_or_else(|| CliError::ConfigInvalid("a seed is required (config `seed` or `--seed`)".into()))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |what: String| Err(CliError::ConfigInvalid(what));
        self.volume_material.params().validate().map_err(|e| CliError::ConfigInvalid(format!("volume_material: {e}")))?;
        self.shell_material.params().validate().map_err(|e| CliError::ConfigInvalid(format!("shell_material: {e}")))?;
        self.thermal.shell_model().map_err(|e| CliError::ConfigInvalid(format!("thermal: {e}")))?;
        self.heat.params().validate().map_err(|e| CliError::ConfigInvalid(format!("heat: {e}")))?;
        let n = &self.numerics;
        if n.quadrature_order == 0 || n.quadrature_order > MAX_ORDER {
            return bad(format!("numerics.quadrature_order must lie in 1..={MAX_ORDER}"));
        }
        for (name, v) in [
            ("parametric_step", n.parametric_step),
            ("tensor_step", n.tensor_step),
            ("stencil_step", n.stencil_step),
            ("variation_step", n.variation_step),
            ("charts.sphere_radius", self.charts.sphere_radius),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return bad(format!("{name} must be positive"));
            }
        }
        if !(self.charts.perturbation >= 0.0 && self.charts.perturbation < 0.5) {
            return bad("charts.perturbation must lie in [0, 0.5)".into());
        }
        let s = &self.samples;
        let counts = [
            s.round_trips,
            s.charts,
            s.points_per_chart,
            s.stress_states,
            s.table_pairs,
            s.velocity_fields,
            s.conductivity_states,
            s.sweep_steps,
            s.weak_form_states,
        ];
        if counts.contains(&0) {
            return bad("sample counts must be positive".into());
        }
        for (name, tol) in &self.tolerances {
            if !crate::suite::RECORD_NAMES.contains(&name.as_str()) {
                return bad(format!("tolerances: unknown property `{name}`"));
            }
            if !(*tol >= 0.0 && tol.is_finite()) {
                return bad(format!("tolerances.{name} must be a finite non-negative number"));
            }
        }
        let sc = &self.scenario;
        if sc.steps < 2 || sc.patch_grid < 2 {
            return bad("scenario.steps and scenario.patch_grid must be at least 2".into());
        }
        if sc.sphere_radii.iter().any(|r| !(*r > 0.0)) {
            return bad("scenario.sphere_radii must be positive".into());
        }
        if !(self.thermal.theta0 - sc.delta_t_max.abs() > 0.0) {
            return bad("scenario.delta_t_max would drive the temperature non-positive".into());
        }
        let t = &self.table;
        if t.temperature_steps < 2 || !(t.temperature_start > 0.0 && t.temperature_end > 0.0) {
            return bad("table temperature sweep must have >= 2 positive steps".into());
        }
        if !(t.compatibility_temperature > 0.0) {
            return bad("table.compatibility_temperature must be positive".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_object_needs_a_seed() {
        let cfg = ScenarioConfig::from_json("{}").unwrap();
        assert_eq!(cfg.seed, None);
        assert!(cfg.resolve_seed(None).is_err());
        assert_eq!(cfg.resolve_seed(Some(7)).unwrap(), 7);
        assert_eq!(ScenarioConfig::default().resolve_seed(None).unwrap(), DEFAULT_SEED);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let err = ScenarioConfig::from_json(r#"{"seed": 1, "sead": 2}"#).unwrap_err();
        assert!(matches!(err, CliError::ConfigInvalid(_)));
        let err = ScenarioConfig::from_json(r#"{"tolerances": {"nope": 1e-3}}"#).unwrap_err();
        assert!(err.to_string().contains("nope"));
    }

    #[test]
    fn scalar_and_tensor_expansion_parse() {
        let cfg = ScenarioConfig::from_json(r#"{"thermal": {"alpha": 2e-5}}"#).unwrap();
        assert_eq!(cfg.thermal.alpha.matrix(), Mat3::IDENTITY * 2e-5);
        let cfg = ScenarioConfig::from_json(
            r#"{"thermal": {"alpha": [[1e-5,0,0],[0,2e-5,0],[0,0,3e-5]]}}"#,
        )
        .unwrap();
        assert_eq!(cfg.thermal.alpha.matrix()[(2, 2)], 3e-5);
    }

    #[test]
    fn invalid_material_is_config_error() {
        let err = ScenarioConfig::from_json(r#"{"volume_material": {"mu0": -1}}"#).unwrap_err();
        assert!(err.to_string().contains("volume_material"));
    }

    #[test]
    fn default_round_trips_through_json() {
        let cfg = ScenarioConfig::default();
        let text = serde_json::to_string(&cfg).unwrap();
        assert_eq!(ScenarioConfig::from_json(&text).unwrap(), cfg);
    }
}
