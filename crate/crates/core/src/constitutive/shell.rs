use super::thermal::{require_spd_2, ShellThermalModel};
use super::volume::{thermal_energy_density, thermal_energy_slope};
use crate::error::{check_temperature, Error, Result};
use crate::linalg::{Mat2, Mat3, Vec3};
use crate::math;
use crate::surface::SurfacePointFrame;

/// Kirchhoff-Love shell law, per unit reference area:
/// `ρ₀ψ = K/4 (J² − 1 − 2 ln J) + μ_s/2 (tr C_se / J − 2) + c₃ κ:κ + ρ₀ψ_T`
/// with `J = J_se = sqrt(det a / det a_T)` and `tr C_se = a_Tᵅᵝ a_αβ`.
///
/// `μ_s(T) = μ_s0 exp(−c₂ (T − T_ref))`; `c₂ = 0` gives a constant modulus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceMaterialParams {
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

impl SurfaceMaterialParams {
    pub fn validate(&self) -> Result<()> {
        let all = [
            self.bulk,
            self.shear,
            self.c1,
            self.c2,
            self.c3,
            self.t_ref,
            self.t0,
            self.rho0,
            self.thickness,
        ];
        if all.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        if !(self.bulk > 0.0) {
            return Err(Error::InvalidParameter("surface bulk modulus must be positive"));
        }
        if !(self.shear > 0.0) {
            return Err(Error::InvalidParameter("surface shear modulus must be positive"));
        }
        if !(self.rho0 > 0.0) {
            return Err(Error::InvalidParameter("surface density must be positive"));
        }
        if !(self.thickness > 0.0) {
            return Err(Error::InvalidParameter("thickness must be positive"));
        }
        check_temperature(self.t0)
    }

    pub fn shear_modulus(&self, temperature: f64) -> f64 {
        self.shear * math::exp(-self.c2 * (temperature - self.t_ref))
    }
}

/// Surface kinematics in the reference parametrization: every 2×2 entry is
/// a covariant component pair `(α, β)` of the chart `ξᵅ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShellKinematicInput {
    /// `A_αβ`
    pub reference_metric: Mat2,
    /// `a_αβ`
    pub metric: Mat2,
    /// `b_αβ`
    pub curvature: Mat2,
    /// `a_Tαβ`
    pub intermediate_metric: Mat2,
    /// `∂a_Tαβ/∂T`
    pub intermediate_metric_rate: Mat2,
    /// `b_Tαβ`
    pub intermediate_curvature: Mat2,
    /// `∂b_Tαβ/∂T`
    pub intermediate_curvature_rate: Mat2,
}

impl ShellKinematicInput {
    pub fn from_frames(
        reference: &SurfacePointFrame,
        current: &SurfacePointFrame,
        model: &ShellThermalModel,
        temperature: f64,
    ) -> Result<Self> {
        check_temperature(temperature)?;
        Ok(ShellKinematicInput {
            reference_metric: reference.metric,
            metric: current.metric,
            curvature: current.curvature,
            intermediate_metric: model.intermediate_metric(reference, temperature)?,
            intermediate_metric_rate: model.intermediate_metric_rate(reference, temperature)?,
            intermediate_curvature: model.intermediate_curvature(reference, temperature)?,
            intermediate_curvature_rate: model.intermediate_curvature_rate(reference, temperature)?,
        })
    }

    /// `κ_αβ = b_αβ − b_Tαβ`
    pub fn kappa(&self) -> Mat2 {
        self.curvature - self.intermediate_curvature
    }
}

fn contra(a_inv: &Mat2, t: &Mat2) -> Mat2 {
    *a_inv * *t * *a_inv
}

struct Invariants {
    a_inv: Mat2,
    at_inv: Mat2,
    j: f64,
    tr: f64,
}

fn invariants(input: &ShellKinematicInput) -> Result<Invariants> {
    require_spd_2(&input.metric)?;
    require_spd_2(&input.intermediate_metric)?;
    require_spd_2(&input.reference_metric)?;
    let a_inv = input.metric.try_inverse()?;
    let at_inv = input.intermediate_metric.try_inverse()?;
    Ok(Invariants {
        a_inv,
        at_inv,
        j: math::sqrt(input.metric.det() / input.intermediate_metric.det()),
        tr: at_inv.ddot(&input.metric),
    })
}

/// `ρ₀ψ` per unit reference area.
pub fn shell_energy_density(input: &ShellKinematicInput, temperature: f64, params: &SurfaceMaterialParams) -> Result<f64> {
    check_temperature(temperature)?;
    let inv = invariants(input)?;
    let ref_inv = input.reference_metric.try_inverse()?;
    let kappa = input.kappa();
    let mu = params.shear_modulus(temperature);
    let j = inv.j;
    Ok(0.25 * params.bulk * (j * j - 1.0 - 2.0 * math::ln(j))
        + 0.5 * mu * (inv.tr / j - 2.0)
        + params.c3 * contra(&ref_inv, &kappa).ddot(&kappa)
        + thermal_energy_density(params.c1, params.t0, temperature))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShellResponse {
    pub psi: f64,
    /// `ρ₀ψ` per unit reference area.
    pub energy_density: f64,
    pub entropy: f64,
    /// `σᵅᵝ` of `σ^♯◁ = σᵅᵝ A_α ⊗ A_β`, per unit reference area (equal to
    /// the Kirchhoff components `τᵅᵝ`).
    pub sigma: Mat2,
    /// `μᵅᵝ = −Mᵅᵝ` of `μ^♯◁`.
    pub mu: Mat2,
    pub moment: Mat2,
    /// `Nᵅᵝ = σᵅᵝ + b^β_γ Mᵞᵅ`
    pub membrane: Mat2,
    /// `J_se = sqrt(det a / det a_T)`
    pub j_se: f64,
    /// `J_s = sqrt(det a / det A)`
    pub j_s: f64,
    /// `∂(ρ₀ψ)/∂a_T : ∂a_T/∂T`, the `H_s` contribution to `−ρ₀ s`.
    pub thermal_metric_power: f64,
}

impl ShellResponse {
    /// Cauchy components `σᵅᵝ / J_s`.
    pub fn cauchy(&self) -> Mat2 {
        self.sigma * (1.0 / self.j_s)
    }

    pub fn sigma_back(&self, reference: &SurfacePointFrame) -> Mat3 {
        reference.assemble_contra(&self.sigma)
    }

    pub fn mu_back(&self, reference: &SurfacePointFrame) -> Mat3 {
        reference.assemble_contra(&self.mu)
    }

    /// `σᵅᵝ` recovered from the resultants, `Nᵅᵝ − b^β_γ Mᵞᵅ`.
    pub fn sigma_from_resultants(&self, curvature_mixed: &Mat2) -> Mat2 {
        membrane_to_sigma(&self.membrane, &self.moment, curvature_mixed)
    }
}

/// `b^β_γ Mᵞᵅ` stored at `(α, β)`.
fn curvature_moment(moment: &Mat2, curvature_mixed: &Mat2) -> Mat2 {
    Mat2::from_fn(|a, b| (0..2).map(|g| curvature_mixed[(b, g)] * moment[(g, a)]).sum())
}

pub fn membrane_to_sigma(membrane: &Mat2, moment: &Mat2, curvature_mixed: &Mat2) -> Mat2 {
    *membrane - curvature_moment(moment, curvature_mixed)
}

/// Stress, moment and entropy of the shell law.
pub fn shell_response(input: &ShellKinematicInput, temperature: f64, params: &SurfaceMaterialParams) -> Result<ShellResponse> {
    check_temperature(temperature)?;
    params.validate()?;
    let inv = invariants(input)?;
    let ref_inv = input.reference_metric.try_inverse()?;
    let (j, tr) = (inv.j, inv.tr);
    let k = params.bulk;
    let mu_s = params.shear_modulus(temperature);

    let sigma = inv.a_inv * (0.5 * k * (j * j - 1.0) - 0.5 * mu_s * tr / j) + inv.at_inv * (mu_s / j);
    let moment = contra(&ref_inv, &input.kappa()) * (2.0 * params.c3);

    let dw_dat = inv.at_inv * (-0.25 * k * (j * j - 1.0) + 0.25 * mu_s * tr / j)
        - contra(&inv.at_inv, &input.metric) * (0.5 * mu_s / j);
    let thermal_metric_power = dw_dat.ddot(&input.intermediate_metric_rate);
    let explicit = -params.c2 * mu_s * 0.5 * (tr / j - 2.0) + thermal_energy_slope(params.c1, params.t0, temperature);
    let dw_dt = thermal_metric_power - moment.ddot(&input.intermediate_curvature_rate) + explicit;

    let energy_density = shell_energy_density(input, temperature, params)?;
    let curvature_mixed = inv.a_inv * input.curvature;
    Ok(ShellResponse {
        psi: energy_density / params.rho0,
        energy_density,
        entropy: -dw_dt / params.rho0,
        sigma,
        mu: -moment,
        moment,
        membrane: sigma + curvature_moment(&moment, &curvature_mixed),
        j_se: j,
        j_s: math::sqrt(input.metric.det() / input.reference_metric.det()),
        thermal_metric_power,
    })
}

/// `Sᵅ = −Mᵝᵅ;β` from `M` and its partials `dm[γ] = Mᵅᵝ,γ`.
pub fn transverse_shear(frame: &SurfacePointFrame, moment: &Mat2, dm: &[Mat2; 2]) -> [f64; 2] {
    let g = &frame.christoffel;
    core::array::from_fn(|a| {
        let mut div = 0.0;
        for b in 0..2 {
            div += dm[b][(b, a)];
            for c in 0..2 {
                div += g[b][c][b] * moment[(c, a)] + g[a][c][b] * moment[(b, c)];
            }
        }
        -div
    })
}

/// `σ_KL = Nᵅᵝ a_α ⊗ a_β + Sᵅ a_α ⊗ n`
pub fn kirchhoff_love_stress(frame: &SurfacePointFrame, membrane: &Mat2, shear: &[f64; 2]) -> Mat3 {
    frame.assemble_contra(membrane)
        + frame.tangents[0].outer(&frame.normal) * shear[0]
        + frame.tangents[1].outer(&frame.normal) * shear[1]
}

/// Boundary moments `(m_ν, m_τ) = (Mᵅᵝ ν_α τ_β, −Mᵅᵝ ν_α ν_β)` for an
/// in-plane unit edge normal `ν`, with `τ = n × ν`.
pub fn boundary_moments(frame: &SurfacePointFrame, moment: &Mat2, nu: &Vec3) -> Result<(f64, f64)> {
    if math::abs(nu.norm() - 1.0) > 1e-12 || math::abs(nu.dot(&frame.normal)) > 1e-12 {
        return Err(Error::InvalidParameter("edge normal must be a unit tangent vector"));
    }
    let tau = frame.normal.cross(nu);
    let nu_c = [nu.dot(&frame.tangents[0]), nu.dot(&frame.tangents[1])];
    let tau_c = [tau.dot(&frame.tangents[0]), tau.dot(&frame.tangents[1])];
    let mut m_nu = 0.0;
    let mut m_tau = 0.0;
    for a in 0..2 {
        for b in 0..2 {
            m_nu += moment[(a, b)] * nu_c[a] * tau_c[b];
            m_tau -= moment[(a, b)] * nu_c[a] * nu_c[b];
        }
    }
    Ok((m_nu, m_tau))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{frame, MappedSurface, Sphere};
    use crate::tensor::Configuration::{Current, Reference};

    pub(crate) fn params() -> SurfaceMaterialParams {
        SurfaceMaterialParams {
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

    fn model() -> ShellThermalModel {
        let a = Mat3([[1.5e-3, 3e-4, 0.0], [3e-4, 1e-3, 2e-4], [0.0, 2e-4, 6e-4]]);
        ShellThermalModel::new(a, 8e-4, 300.0).unwrap()
    }

    fn deformed() -> MappedSurface<Sphere> {
        MappedSurface {
            inner: Sphere::new(2.0),
            map: Mat3([[1.1, 0.1, 0.0], [-0.05, 0.9, 0.2], [0.0, 0.1, 1.2]]),
            offset: Vec3::ZERO,
        }
    }

    fn state(t: f64) -> (SurfacePointFrame, SurfacePointFrame, ShellKinematicInput) {
        let xi = [1.0, 0.5];
        let r = frame(&Sphere::new(2.0), &xi, Reference).unwrap();
        let c = frame(&deformed(), &xi, Current).unwrap();
        let input = ShellKinematicInput::from_frames(&r, &c, &model(), t).unwrap();
        (r, c, input)
    }

    #[test]
    fn reference_state_is_stress_free() {
        let xi = [1.0, 0.5];
        let r = frame(&Sphere::new(2.0), &xi, Reference).unwrap();
        let m = ShellThermalModel::isotropic(1e-3, 300.0).unwrap();
        let input = ShellKinematicInput::from_frames(&r, &r, &m, 300.0).unwrap();
        let s = shell_response(&input, 300.0, &params()).unwrap();
        assert!(s.sigma.max_abs() < 1e-14);
        assert_eq!(s.mu, Mat2::ZERO);
    }

    #[test]
    fn unit_half_c3_gives_negative_kappa() {
        let (r, _, input) = state(310.0);
        let s = shell_response(&input, 310.0, &params()).unwrap();
        let ai = r.metric_inv;
        let kappa_sharp = ai * input.kappa() * ai;
        assert!((s.mu + kappa_sharp).max_abs() < 1e-15);
    }

    #[test]
    fn stress_and_moment_match_fd() {
        let t = 330.0;
        let (_, _, input) = state(t);
        let s = shell_response(&input, t, &params()).unwrap();
        let h = 1e-6;
        let energy = |i: &ShellKinematicInput| shell_energy_density(i, t, &params()).unwrap();
        let sym = |a: usize, b: usize| {
            let mut e = Mat2::ZERO;
            e[(a, b)] += 0.5 * h;
            e[(b, a)] += 0.5 * h;
            e
        };
        let fd_sigma = Mat2::from_fn(|a, b| {
            let mut p = input;
            let mut m = input;
            p.metric = p.metric + sym(a, b);
            m.metric = m.metric - sym(a, b);
            (energy(&p) - energy(&m)) / h
        });
        let fd_mu = Mat2::from_fn(|a, b| {
            let mut p = input;
            let mut m = input;
            p.curvature = p.curvature + sym(a, b);
            m.curvature = m.curvature - sym(a, b);
            -(energy(&p) - energy(&m)) / (2.0 * h)
        });
        assert!((fd_sigma - s.sigma).max_abs() / s.sigma.max_abs() < 1e-6);
        assert!((fd_mu - s.mu).max_abs() / s.mu.max_abs() < 1e-6);
    }

    #[test]
    fn entropy_is_total_temperature_derivative() {
        let t = 330.0;
        let (r, c, input) = state(t);
        let s = shell_response(&input, t, &params()).unwrap();
        let h = 1e-2;
        let w = |tt: f64| {
            let i = ShellKinematicInput::from_frames(&r, &c, &model(), tt).unwrap();
            shell_energy_density(&i, tt, &params()).unwrap()
        };
        let fd = -(w(t + h) - w(t - h)) / (2.0 * h) / params().rho0;
        assert!((fd - s.entropy).abs() / s.entropy.abs() < 1e-6, "{} {}", fd, s.entropy);
    }

    #[test]
    fn resultants_round_trip_to_symmetric_sigma() {
        let (_, c, input) = state(320.0);
        let s = shell_response(&input, 320.0, &params()).unwrap();
        let back = s.sigma_from_resultants(&c.curvature_mixed);
        assert!((back - s.sigma).max_abs() < 1e-12 * s.sigma.max_abs());
        assert!((back - back.transpose()).max_abs() < 1e-12 * s.sigma.max_abs());
        assert!((s.moment - s.moment.transpose()).max_abs() < 1e-14);
    }

    #[test]
    fn boundary_moment_components() {
        let (_, c, _) = state(300.0);
        let m = Mat2::new(1.0, 0.2, 0.2, 0.5);
        let nu = c.duals[0].normalized().unwrap();
        let (m_nu, m_tau) = boundary_moments(&c, &m, &nu).unwrap();
        let tau = c.normal.cross(&nu);
        let m3 = c.assemble_contra(&m);
        assert!((m_nu - nu.dot(&(m3 * tau))).abs() < 1e-13);
        assert!((m_tau + nu.dot(&(m3 * nu))).abs() < 1e-13);
    }

    #[test]
    fn rejects_bad_temperature() {
        let (_, _, input) = state(300.0);
        assert!(matches!(
            shell_response(&input, -5.0, &params()),
            Err(Error::NonpositiveTemperature { .. })
        ));
    }
}
