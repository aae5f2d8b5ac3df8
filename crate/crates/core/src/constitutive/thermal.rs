use crate::eigen::{sym_exp, SymmetricEigen};
use crate::error::{Error, Result};
use crate::linalg::{Mat2, Mat3, Vec3};
use crate::math;
use crate::surface::SurfacePointFrame;
use crate::tensor::{Configuration, TwoPointMap};

const SYMMETRY_TOLERANCE: f64 = 1e-12;

/// Relative temperature step for FD derivatives in `T`.
pub const TEMPERATURE_FD_STEP: f64 = 1e-5;

fn check_symmetric(alpha: &Mat3) -> Result<()> {
    if !alpha.is_finite() {
        return Err(Error::NonFinite);
    }
    if !alpha.is_symmetric(SYMMETRY_TOLERANCE * alpha.max_abs().max(1.0)) {
        return Err(Error::InvalidParameter("expansion tensor must be symmetric"));
    }
    Ok(())
}

/// Exponential thermal expansion `F_T = exp(α (θ − θ₀))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalExpansionModel {
    alpha: Mat3,
    theta0: f64,
}

impl ThermalExpansionModel {
    pub fn new(alpha: Mat3, theta0: f64) -> Result<Self> {
        check_symmetric(&alpha)?;
        if !(theta0 > 0.0) {
            return Err(Error::NonpositiveTemperature { temperature: theta0 });
        }
        Ok(ThermalExpansionModel { alpha: alpha.sym(), theta0 })
    }

    pub fn isotropic(alpha: f64, theta0: f64) -> Result<Self> {
        Self::new(Mat3::IDENTITY * alpha, theta0)
    }

    pub fn alpha(&self) -> &Mat3 {
        &self.alpha
    }

    pub fn theta0(&self) -> f64 {
        self.theta0
    }

    /// Spectral exponential of the symmetric `α ΔT`; SPD by construction.
    pub fn stretch(&self, temperature: f64) -> Result<Mat3> {
        if !temperature.is_finite() {
            return Err(Error::NonFinite);
        }
        let f = sym_exp(&(self.alpha * (temperature - self.theta0)));
        if !f.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(f)
    }

    /// `F_T,T = α F_T`
    pub fn stretch_derivative(&self, temperature: f64) -> Result<Mat3> {
        Ok(self.alpha * self.stretch(temperature)?)
    }
}

/// Reference → intermediate map `F_T(T)`.
pub fn thermal_deformation(model: &ThermalExpansionModel, temperature: f64) -> Result<TwoPointMap> {
    TwoPointMap::new(model.stretch(temperature)?, Configuration::Reference, Configuration::Intermediate)
}

/// `Ḟ_T = Ṫ α F_T`
pub fn thermal_rate(model: &ThermalExpansionModel, temperature: f64, temperature_rate: f64) -> Result<Mat3> {
    Ok(model.stretch_derivative(temperature)? * temperature_rate)
}

/// Central FD in `T` for user-supplied thermal maps without a closed form.
pub fn fd_temperature_derivative(
    map: impl Fn(f64) -> Result<Mat3>,
    temperature: f64,
    step: f64,
) -> Result<Mat3> {
    if !(step > 0.0) {
        return Err(Error::InvalidParameter("FD step must be positive"));
    }
    let plus = map(temperature + step)?;
    let minus = map(temperature - step)?;
    Ok((plus - minus) * (0.5 / step))
}

/// Shell thermal law: a uniform ambient stretch `Φ = exp(α ΔT)` acting on
/// the reference mid-surface, with a separate thickness law
/// `λ_T3 = exp(α₃ ΔT)`.
///
/// The intermediate surface is `X_T = Φ X`, so `a_Tα = Φ A_α` and
/// `b_Tαβ = Φ A_α,β · n_T`. In-plane expansion is the projection of `α`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShellThermalModel {
    expansion: ThermalExpansionModel,
    alpha3: f64,
}

impl ShellThermalModel {
    pub fn new(alpha: Mat3, alpha3: f64, theta0: f64) -> Result<Self> {
        if !alpha3.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(ShellThermalModel {
            expansion: ThermalExpansionModel::new(alpha, theta0)?,
            alpha3,
        })
    }

    pub fn isotropic(alpha: f64, theta0: f64) -> Result<Self> {
        Self::new(Mat3::IDENTITY * alpha, alpha, theta0)
    }

    pub fn expansion(&self) -> &ThermalExpansionModel {
        &self.expansion
    }

    pub fn theta0(&self) -> f64 {
        self.expansion.theta0
    }

    pub fn lambda_t3(&self, temperature: f64) -> f64 {
        math::exp(self.alpha3 * (temperature - self.expansion.theta0))
    }

    pub fn intermediate_tangents(&self, reference: &SurfacePointFrame, temperature: f64) -> Result<[Vec3; 2]> {
        let phi = self.expansion.stretch(temperature)?;
        Ok([phi * reference.tangents[0], phi * reference.tangents[1]])
    }

    /// `a_Tαβ = A_α · Φ² A_β`
    pub fn intermediate_metric(&self, reference: &SurfacePointFrame, temperature: f64) -> Result<Mat2> {
        let t = self.intermediate_tangents(reference, temperature)?;
        Ok(Mat2::from_fn(|a, b| t[a].dot(&t[b])))
    }

    /// `∂a_Tαβ/∂T = A_α · 2αΦ² A_β`, using that `α` and `Φ` commute.
    pub fn intermediate_metric_rate(&self, reference: &SurfacePointFrame, temperature: f64) -> Result<Mat2> {
        let phi = self.expansion.stretch(temperature)?;
        let m = self.expansion.alpha * phi * phi * 2.0;
        let t = &reference.tangents;
        Ok(Mat2::from_fn(|a, b| t[a].dot(&(m * t[b]))))
    }

    pub fn intermediate_normal(&self, reference: &SurfacePointFrame, temperature: f64) -> Result<Vec3> {
        let t = self.intermediate_tangents(reference, temperature)?;
        t[0].cross(&t[1]).normalized().ok_or(Error::DegenerateTangents)
    }

    /// `b_Tαβ = Φ A_α,β · n_T`
    pub fn intermediate_curvature(&self, reference: &SurfacePointFrame, temperature: f64) -> Result<Mat2> {
        let phi = self.expansion.stretch(temperature)?;
        let n_t = self.intermediate_normal(reference, temperature)?;
        Ok(Mat2::from_fn(|a, b| (phi * reference.second[a][b]).dot(&n_t)))
    }

    /// Central FD in `T` of [`Self::intermediate_curvature`], step
    /// `TEMPERATURE_FD_STEP · θ₀`.
    pub fn intermediate_curvature_rate(&self, reference: &SurfacePointFrame, temperature: f64) -> Result<Mat2> {
        let h = TEMPERATURE_FD_STEP * self.expansion.theta0;
        let plus = self.intermediate_curvature(reference, temperature + h)?;
        let minus = self.intermediate_curvature(reference, temperature - h)?;
        Ok((plus - minus) * (0.5 / h))
    }

    /// `F̂_T = Φ I + λ_T3 n_T ⊗ N`
    pub fn thermal_map(&self, reference: &SurfacePointFrame, temperature: f64) -> Result<Mat3> {
        let phi = self.expansion.stretch(temperature)?;
        let n0 = reference.normal;
        let n_t = self.intermediate_normal(reference, temperature)?;
        Ok(phi * reference.projector() + n_t.outer(&n0) * self.lambda_t3(temperature))
    }
}

/// Smallest eigenvalue of the symmetric part of a 2×2 matrix.
pub(crate) fn min_eigenvalue_2(m: &Mat2) -> f64 {
    let s = m.sym();
    let mean = 0.5 * (s[(0, 0)] + s[(1, 1)]);
    let half = 0.5 * (s[(0, 0)] - s[(1, 1)]);
    mean - math::hypot(half, s[(0, 1)])
}

pub(crate) fn require_spd_2(m: &Mat2) -> Result<()> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let min = min_eigenvalue_2(m);
    if min > 0.0 {
        Ok(())
    } else {
        Err(Error::NotSpd { min_eigenvalue: min })
    }
}

pub(crate) fn require_spd_3(m: &Mat3) -> Result<()> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let e = SymmetricEigen::new(m);
    if e.min_value() > 0.0 {
        Ok(())
    } else {
        Err(Error::NotSpd { min_eigenvalue: e.min_value() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{frame, Sphere};
    use crate::tensor::Configuration::Reference;

    fn aniso() -> Mat3 {
        Mat3([[2e-3, 4e-4, -1e-4], [4e-4, 1e-3, 3e-4], [-1e-4, 3e-4, 5e-4]])
    }

    #[test]
    fn identity_at_reference_temperature() {
        let m = ThermalExpansionModel::new(aniso(), 300.0).unwrap();
        let f = thermal_deformation(&m, 300.0).unwrap();
        assert!((*f.matrix() - Mat3::IDENTITY).max_abs() < 1e-15);
    }

    #[test]
    fn isotropic_reduces_to_scalar_exponential() {
        let m = ThermalExpansionModel::isotropic(1e-3, 300.0).unwrap();
        let f = m.stretch(400.0).unwrap();
        assert!((f - Mat3::IDENTITY * 1.1051709180756477).max_abs() < 1e-10);
    }

    #[test]
    fn rate_matches_time_fd() {
        let m = ThermalExpansionModel::new(aniso(), 300.0).unwrap();
        let temp = |t: f64| 300.0 + 40.0 * t + 5.0 * t * t;
        let t0 = 0.7;
        let rate = thermal_rate(&m, temp(t0), 40.0 + 10.0 * t0).unwrap();
        let fd = fd_temperature_derivative(|t| m.stretch(temp(t)), t0, 1e-5).unwrap();
        assert!((rate - fd).max_abs() / rate.max_abs() < 1e-6);
        let f = m.stretch(temp(t0)).unwrap();
        assert!((*m.alpha() * f - f * *m.alpha()).max_abs() < 1e-15);
    }

    #[test]
    fn asymmetric_alpha_is_rejected() {
        let mut a = aniso();
        a[(0, 1)] += 1e-3;
        assert!(ThermalExpansionModel::new(a, 300.0).is_err());
    }

    #[test]
    fn shell_metric_rate_matches_fd() {
        let sphere = Sphere::new(2.0);
        let r = frame(&sphere, &[1.1, 0.4], Reference).unwrap();
        let m = ShellThermalModel::new(aniso(), 1e-3, 300.0).unwrap();
        let rate = m.intermediate_metric_rate(&r, 350.0).unwrap();
        let h = 1e-3;
        let fd = (m.intermediate_metric(&r, 350.0 + h).unwrap() - m.intermediate_metric(&r, 350.0 - h).unwrap()) * (0.5 / h);
        assert!((rate - fd).max_abs() < 1e-9 * rate.max_abs());
    }

    #[test]
    fn isotropic_shell_curvature_scales_inversely() {
        let sphere = Sphere::new(2.0);
        let r = frame(&sphere, &[1.1, 0.4], Reference).unwrap();
        let m = ShellThermalModel::isotropic(1e-3, 300.0).unwrap();
        let s = math::exp(0.1);
        let b_t = m.intermediate_curvature(&r, 400.0).unwrap();
        assert!((b_t - r.curvature * s).max_abs() < 1e-12);
        let f = m.thermal_map(&r, 400.0).unwrap();
        assert!((f - Mat3::IDENTITY * s).max_abs() < 1e-12);
    }
}
