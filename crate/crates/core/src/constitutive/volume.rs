use super::heat::{fourier_flux, HeatLawParams};
use super::thermal::{require_spd_3, ThermalExpansionModel};
use crate::error::{check_temperature, Error, Result};
use crate::linalg::{Mat3, Vec3};
use crate::math;
use crate::tensor::TwoPointMap;

/// Neo-Hookean volume law with temperature-dependent shear modulus
/// `μ(T) = μ₀ exp(−c₂ (T − T_ref))` and thermal part
/// `ρ₀ψ_T = c₁ [(T − T₀) − T ln(T/T₀)]`.
///
/// `c₁` carries energy-density units (J/(m³·K)), so `ρ₀ψ` is an energy per
/// reference volume.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolumeMaterialParams {
    pub mu0: f64,
    pub lambda: f64,
    pub c1: f64,
    pub c2: f64,
    pub t_ref: f64,
    pub t0: f64,
    pub rho0: f64,
}

impl VolumeMaterialParams {
    pub fn validate(&self) -> Result<()> {
        let all = [self.mu0, self.lambda, self.c1, self.c2, self.t_ref, self.t0, self.rho0];
        if all.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        if !(self.mu0 > 0.0) {
            return Err(Error::InvalidParameter("mu0 must be positive"));
        }
        if !(self.rho0 > 0.0) {
            return Err(Error::InvalidParameter("rho0 must be positive"));
        }
        check_temperature(self.t0)
    }

    pub fn shear_modulus(&self, temperature: f64) -> f64 {
        self.mu0 * math::exp(-self.c2 * (temperature - self.t_ref))
    }
}

/// `ρ₀ψ_T(T)` shared by the volume and shell laws.
pub(crate) fn thermal_energy_density(c1: f64, t0: f64, temperature: f64) -> f64 {
    c1 * ((temperature - t0) - temperature * math::ln(temperature / t0))
}

/// `∂(ρ₀ψ_T)/∂T = −c₁ ln(T/T₀)`
pub(crate) fn thermal_energy_slope(c1: f64, t0: f64, temperature: f64) -> f64 {
    -c1 * math::ln(temperature / t0)
}

/// `ρ₀ψ(C_e, T)`; `J_e = sqrt(det C_e)`.
pub fn elastic_energy_density(c_e: &Mat3, temperature: f64, params: &VolumeMaterialParams) -> Result<f64> {
    let det = c_e.det();
    if !(det > 0.0) {
        return Err(Error::NotSpd { min_eigenvalue: det });
    }
    let ln_je = 0.5 * math::ln(det);
    let mu = params.shear_modulus(temperature);
    Ok(0.5 * mu * (c_e.trace() - 3.0) - mu * ln_je + 0.5 * params.lambda * ln_je * ln_je)
}

/// Total `ρ₀ψ` from `C` and a thermal stretch `F_T`, with
/// `C_e = F_T⁻ᵀ C F_T⁻¹`.
pub fn energy_density(c: &Mat3, f_t: &Mat3, temperature: f64, params: &VolumeMaterialParams) -> Result<f64> {
    check_temperature(temperature)?;
    let fti = f_t.try_inverse()?;
    let c_e = fti.transpose() * *c * fti;
    Ok(elastic_energy_density(&c_e, temperature, params)? + thermal_energy_density(params.c1, params.t0, temperature))
}

/// `2 ∂(ρ₀ψ)/∂C_e = μ (1 − C_e⁻¹) + λ ln J_e C_e⁻¹`
pub fn elastic_stress_intermediate(c_e: &Mat3, temperature: f64, params: &VolumeMaterialParams) -> Result<Mat3> {
    let inv = c_e.try_inverse()?;
    let ln_je = 0.5 * math::ln(c_e.det());
    let mu = params.shear_modulus(temperature);
    Ok((Mat3::IDENTITY - inv) * mu + inv * (params.lambda * ln_je))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolumeResponse {
    /// Per-mass Helmholtz energy.
    pub psi: f64,
    /// Per-mass entropy.
    pub entropy: f64,
    /// Per-mass internal energy `u = ψ + T s`.
    pub internal_energy: f64,
    /// Second Piola-Kirchhoff stress.
    pub s: Mat3,
    /// First Piola-Kirchhoff stress `F S`.
    pub p: Mat3,
    /// Cauchy stress `F S Fᵀ / J`.
    pub sigma: Mat3,
    /// Mandel-type intermediate stress `F_T S F_Tᵀ / J_T`.
    pub s_t: Mat3,
    /// `H = F_T,T⁻ᵀ C F_T⁻¹`, so that `∂C_e/∂T = H + Hᵀ`.
    pub h: Mat3,
    pub c_e: Mat3,
    pub j: f64,
    pub j_t: f64,
    pub j_e: f64,
    /// Fourier heat flux `q = −k grad T`.
    pub heat_flux: Vec3,
    /// `γ_con = −q · grad T / T²`
    pub gamma_con: f64,
}

/// Full volume response at a material point.
///
/// `f` is the total deformation gradient, `grad_t` the spatial temperature
/// gradient fed to the Fourier law of `heat`.
pub fn volume_response(
    f: &TwoPointMap,
    model: &ThermalExpansionModel,
    temperature: f64,
    params: &VolumeMaterialParams,
    grad_t: &Vec3,
    heat: &HeatLawParams,
) -> Result<VolumeResponse> {
    check_temperature(temperature)?;
    params.validate()?;
    f.require_orientation()?;
    let fm = *f.matrix();
    let c = fm.transpose() * fm;
    require_spd_3(&c)?;
    let f_t = model.stretch(temperature)?;
    let f_t_dt = model.stretch_derivative(temperature)?;
    let fti = f_t.try_inverse()?;
    let c_e = fti.transpose() * c * fti;
    let two_dpsi = elastic_stress_intermediate(&c_e, temperature, params)?;
    let s = fti * two_dpsi * fti.transpose();
    let j = f.det();
    let j_t = f_t.det();
    let j_e = math::sqrt(c_e.det());

    // (F_T⁻ᵀ),T = −F_T⁻ᵀ F_T,Tᵀ F_T⁻ᵀ
    let fti_t_dt = -(fti.transpose() * f_t_dt.transpose() * fti.transpose());
    let h = fti_t_dt * c * fti;
    let mu = params.shear_modulus(temperature);
    let ln_je = math::ln(j_e);
    let explicit = -params.c2 * mu * (0.5 * (c_e.trace() - 3.0) - ln_je)
        + thermal_energy_slope(params.c1, params.t0, temperature);
    let rho0_s = -explicit - 0.5 * two_dpsi.ddot(&(h + h.transpose()));

    let w = elastic_energy_density(&c_e, temperature, params)? + thermal_energy_density(params.c1, params.t0, temperature);
    let psi = w / params.rho0;
    let entropy = rho0_s / params.rho0;
    let q = fourier_flux(&heat.conductivity, grad_t);
    Ok(VolumeResponse {
        psi,
        entropy,
        internal_energy: psi + temperature * entropy,
        s,
        p: fm * s,
        sigma: fm * s * fm.transpose() * (1.0 / j),
        s_t: f_t * s * f_t.transpose() * (1.0 / j_t),
        h,
        c_e,
        j,
        j_t,
        j_e,
        heat_flux: q,
        gamma_con: -q.dot(grad_t) / (temperature * temperature),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::Configuration::{Current, Reference};

    fn params() -> VolumeMaterialParams {
        VolumeMaterialParams {
            mu0: 80.0,
            lambda: 120.0,
            c1: 2.5,
            c2: 1e-3,
            t_ref: 293.0,
            t0: 300.0,
            rho0: 1.2,
        }
    }

    fn model() -> ThermalExpansionModel {
        let a = Mat3([[1.2e-3, 2e-4, 0.0], [2e-4, 8e-4, -1e-4], [0.0, -1e-4, 5e-4]]);
        ThermalExpansionModel::new(a, 300.0).unwrap()
    }

    fn map(m: Mat3) -> TwoPointMap {
        TwoPointMap::new(m, Reference, Current).unwrap()
    }

    fn sample_f() -> Mat3 {
        Mat3([[1.1, 0.2, -0.05], [0.03, 0.95, 0.1], [-0.1, 0.05, 1.2]])
    }

    #[test]
    fn pure_thermal_deformation_is_stress_free() {
        let m = model();
        for k in 0..20 {
            let t = 250.0 + 10.0 * k as f64;
            let f = map(m.stretch(t).unwrap());
            let r = volume_response(&f, &m, t, &params(), &Vec3::ZERO, &HeatLawParams::default()).unwrap();
            assert!(r.s.norm() <= 1e-12 * params().mu0, "{}", r.s.norm());
        }
    }

    #[test]
    fn reference_state_has_zero_entropy() {
        let m = ThermalExpansionModel::isotropic(0.0, 300.0).unwrap();
        let r = volume_response(&map(Mat3::IDENTITY), &m, 300.0, &params(), &Vec3::ZERO, &HeatLawParams::default()).unwrap();
        assert_eq!(r.entropy, 0.0);
        assert!(r.s.max_abs() < 1e-15);
    }

    #[test]
    fn stress_matches_fd_of_energy() {
        let m = model();
        let t = 340.0;
        let fm = sample_f();
        let c = fm.transpose() * fm;
        let r = volume_response(&map(fm), &m, t, &params(), &Vec3::ZERO, &HeatLawParams::default()).unwrap();
        let f_t = m.stretch(t).unwrap();
        let h = 1e-6;
        let fd = Mat3::from_fn(|i, j| {
            let mut e = Mat3::ZERO;
            e[(i, j)] += 0.5 * h;
            e[(j, i)] += 0.5 * h;
            let wp = energy_density(&(c + e), &f_t, t, &params()).unwrap();
            let wm = energy_density(&(c - e), &f_t, t, &params()).unwrap();
            2.0 * (wp - wm) / (2.0 * h)
        });
        assert!((fd - r.s).max_abs() / r.s.max_abs() < 1e-6);
    }

    #[test]
    fn entropy_is_total_temperature_derivative() {
        let m = model();
        let t = 340.0;
        let fm = sample_f();
        let c = fm.transpose() * fm;
        let r = volume_response(&map(fm), &m, t, &params(), &Vec3::ZERO, &HeatLawParams::default()).unwrap();
        let h = 1e-3;
        let w = |t: f64| energy_density(&c, &m.stretch(t).unwrap(), t, &params()).unwrap();
        let fd = -(w(t + h) - w(t - h)) / (2.0 * h) / params().rho0;
        assert!((fd - r.entropy).abs() / r.entropy.abs() < 1e-6);
    }

    #[test]
    fn mandel_stress_and_symmetric_cauchy() {
        let m = model();
        let t = 320.0;
        let r = volume_response(&map(sample_f()), &m, t, &params(), &Vec3::ZERO, &HeatLawParams::default()).unwrap();
        let direct = elastic_stress_intermediate(&r.c_e, t, &params()).unwrap() * (1.0 / r.j_t);
        assert!((direct - r.s_t).max_abs() < 1e-12 * direct.max_abs());
        assert!((r.sigma - r.sigma.transpose()).max_abs() < 1e-13);
    }

    #[test]
    fn frame_indifference() {
        let m = model();
        let t = 320.0;
        let (c, s) = (math::cos(0.7), math::sin(0.7));
        let rot = Mat3([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]]);
        let h = HeatLawParams::default();
        let a = volume_response(&map(sample_f()), &m, t, &params(), &Vec3::ZERO, &h).unwrap();
        let b = volume_response(&map(rot * sample_f()), &m, t, &params(), &Vec3::ZERO, &h).unwrap();
        assert!((a.psi - b.psi).abs() < 1e-12 * a.psi.abs().max(1.0));
        assert!((rot * a.sigma * rot.transpose() - b.sigma).max_abs() < 1e-12 * a.sigma.max_abs());
    }

    #[test]
    fn nonpositive_temperature_is_rejected() {
        let r = volume_response(&map(Mat3::IDENTITY), &model(), 0.0, &params(), &Vec3::ZERO, &HeatLawParams::default());
        assert!(matches!(r, Err(Error::NonpositiveTemperature { .. })));
    }
}
