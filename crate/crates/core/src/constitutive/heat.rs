use crate::eigen::SymmetricEigen;
use crate::error::{check_temperature, Error, Result};
use crate::linalg::{Mat3, Vec3};

/// Stefan-Boltzmann constant [W/(m²K⁴)].
pub const STEFAN_BOLTZMANN: f64 = 5.670374419e-8;

/// Relative tolerance on negative eigenvalues of `sym(k)`.
const PSD_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeatLawParams {
    /// Conductivity `k`; only `sym(k)` must be positive semidefinite.
    pub conductivity: Mat3,
    pub emissivity: f64,
    pub geometry_factor: f64,
    /// Temperature of the radiation source seen by the surface.
    pub radiation_temperature: f64,
    pub transfer_coefficient: f64,
    pub environment_temperature: f64,
}

impl Default for HeatLawParams {
    fn default() -> Self {
        HeatLawParams {
            conductivity: Mat3::IDENTITY,
            emissivity: 0.0,
            geometry_factor: 1.0,
            radiation_temperature: 300.0,
            transfer_coefficient: 0.0,
            environment_temperature: 300.0,
        }
    }
}

impl HeatLawParams {
    pub fn validate(&self) -> Result<()> {
        let scalars = [
            self.emissivity,
            self.geometry_factor,
            self.radiation_temperature,
            self.transfer_coefficient,
            self.environment_temperature,
        ];
        if !self.conductivity.is_finite() || scalars.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        if !(0.0..=1.0).contains(&self.emissivity) {
            return Err(Error::InvalidParameter("emissivity must lie in [0, 1]"));
        }
        let eig = SymmetricEigen::new(&self.conductivity);
        if eig.min_value() < -PSD_TOLERANCE * eig.values[0].max(1.0) {
            return Err(Error::InvalidParameter("sym(k) must be positive semidefinite"));
        }
        check_temperature(self.radiation_temperature)?;
        check_temperature(self.environment_temperature)
    }
}

/// `q = −k grad T`
pub fn fourier_flux(k: &Mat3, grad_t: &Vec3) -> Vec3 {
    -(*k * *grad_t)
}

/// `q_r · ν = −εσ_SB T_s⁴ + F_geo εσ_SB T_rad⁴`
pub fn radiation_flux(params: &HeatLawParams, surface_temperature: f64) -> Result<f64> {
    check_temperature(surface_temperature)?;
    let es = params.emissivity * STEFAN_BOLTZMANN;
    let tr = params.radiation_temperature;
    let ts = surface_temperature;
    Ok(-es * ts * ts * ts * ts + params.geometry_factor * es * tr * tr * tr * tr)
}

/// `q_h · ν = −h (T − T_env)`
pub fn convection_flux(params: &HeatLawParams, temperature: f64) -> Result<f64> {
    check_temperature(temperature)?;
    Ok(-params.transfer_coefficient * (temperature - params.environment_temperature))
}

/// Pointwise data for the entropy production rates; all quantities are
/// spatial (current configuration).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyState {
    pub density: f64,
    pub entropy_rate: f64,
    pub heat_source: f64,
    pub heat_flux_divergence: f64,
    pub temperature: f64,
    pub heat_flux: Vec3,
    pub grad_t: Vec3,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyProduction {
    /// `γ_loc = ρṡ − ρr/T + div q / T`
    pub local: f64,
    /// `γ_con = −q · grad T / T²`
    pub conductive: f64,
}

pub fn entropy_production(state: &EntropyState) -> Result<EntropyProduction> {
    let t = state.temperature;
    check_temperature(t)?;
    Ok(EntropyProduction {
        local: state.density * state.entropy_rate - state.density * state.heat_source / t + state.heat_flux_divergence / t,
        conductive: conductive_entropy_production(&state.heat_flux, &state.grad_t, t)?,
    })
}

pub fn conductive_entropy_production(q: &Vec3, grad_t: &Vec3, temperature: f64) -> Result<f64> {
    check_temperature(temperature)?;
    Ok(-q.dot(grad_t) / (temperature * temperature))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_gradient_gives_zero_flux() {
        let k = Mat3([[2.0, 0.3, 0.0], [0.1, 1.0, 0.0], [0.0, 0.0, 4.0]]);
        assert_eq!(fourier_flux(&k, &Vec3::ZERO), Vec3::ZERO);
    }

    #[test]
    fn equilibrium_radiation_vanishes() {
        let p = HeatLawParams {
            emissivity: 0.8,
            radiation_temperature: 350.0,
            ..Default::default()
        };
        assert!(radiation_flux(&p, 350.0).unwrap().abs() < 1e-12);
        assert!(radiation_flux(&p, 400.0).unwrap() < 0.0);
    }

    #[test]
    fn convection_sign() {
        let p = HeatLawParams {
            transfer_coefficient: 10.0,
            environment_temperature: 290.0,
            ..Default::default()
        };
        assert_eq!(convection_flux(&p, 300.0).unwrap(), -100.0);
        assert!(convection_flux(&p, -1.0).is_err());
    }

    #[test]
    fn conductive_spot_value() {
        let g = Vec3::new(1.0, 0.0, 0.0);
        let q = fourier_flux(&Mat3::IDENTITY, &g);
        let gamma = conductive_entropy_production(&q, &g, 300.0).unwrap();
        assert!((gamma - 1.0 / 90000.0).abs() < 1e-20);
    }

    #[test]
    fn skew_conductivity_does_not_produce_entropy() {
        let ks = Mat3([[2.0, 0.3, 0.1], [0.3, 1.0, 0.2], [0.1, 0.2, 4.0]]);
        let kw = Mat3([[0.0, 5.0, -2.0], [-5.0, 0.0, 1.5], [2.0, -1.5, 0.0]]);
        let g = Vec3::new(3.0, -1.0, 2.0);
        let a = conductive_entropy_production(&fourier_flux(&ks, &g), &g, 310.0).unwrap();
        let b = conductive_entropy_production(&fourier_flux(&(ks + kw), &g), &g, 310.0).unwrap();
        assert!((a - b).abs() <= 1e-14 * a.abs());
    }

    #[test]
    fn local_production_formula() {
        let s = EntropyState {
            density: 2.0,
            entropy_rate: 0.5,
            heat_source: 30.0,
            heat_flux_divergence: 60.0,
            temperature: 300.0,
            heat_flux: Vec3::ZERO,
            grad_t: Vec3::ZERO,
        };
        let p = entropy_production(&s).unwrap();
        assert!((p.local - 1.0).abs() < 1e-15);
        assert_eq!(p.conductive, 0.0);
    }

    #[test]
    fn indefinite_conductivity_is_rejected() {
        let p = HeatLawParams {
            conductivity: Mat3::diag(1.0, -0.5, 1.0),
            ..Default::default()
        };
        assert!(p.validate().is_err());
        assert!(HeatLawParams::default().validate().is_ok());
    }
}
