use crate::error::{Error, Result};
use crate::linalg::{Mat3, Vec3};
use crate::math;
use crate::tensor::TwoPointMap;

const UNIT_TOLERANCE: f64 = 1e-12;

/// Preferred material direction carried from the reference to the
/// intermediate configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StructuralTensor {
    pub y0: Vec3,
    pub y_t: Vec3,
    /// `L₀ = y₀ ⊗ y₀`
    pub l0: Mat3,
    /// `L_T = y_T ⊗ y_T`
    pub l_t: Mat3,
    /// `F_T L₀ F_Tᵀ`
    pub l0_contra: Mat3,
    /// `F_T⁻ᵀ L₀ F_T⁻¹`
    pub l0_co: Mat3,
    /// `F_T L₀ F_T⁻¹`
    pub l0_mixed: Mat3,
}

pub fn structural_update(y0: &Vec3, f_t: &TwoPointMap) -> Result<StructuralTensor> {
    if !y0.is_finite() {
        return Err(Error::NonFinite);
    }
    if math::abs(y0.norm() - 1.0) > UNIT_TOLERANCE {
        return Err(Error::InvalidParameter("structural direction must be a unit vector"));
    }
    f_t.require_orientation()?;
    let f = *f_t.matrix();
    let fi = *f_t.inverse();
    let y_t = (f * *y0).normalized().ok_or(Error::NonFinite)?;
    let l0 = y0.outer(y0);
    Ok(StructuralTensor {
        y0: *y0,
        y_t,
        l0,
        l_t: y_t.outer(&y_t),
        l0_contra: f * l0 * f.transpose(),
        l0_co: fi.transpose() * l0 * fi,
        l0_mixed: f * l0 * fi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::Configuration::{Intermediate, Reference};

    fn map(m: Mat3) -> TwoPointMap {
        TwoPointMap::new(m, Reference, Intermediate).unwrap()
    }

    #[test]
    fn identity_keeps_direction() {
        let y = Vec3::new(0.6, 0.8, 0.0);
        let s = structural_update(&y, &map(Mat3::IDENTITY)).unwrap();
        assert_eq!(s.y_t, y);
        assert!((s.l_t - s.l0).max_abs() < 1e-15);
        assert!((s.l0 * s.l0 - s.l0).max_abs() < 1e-15);
    }

    #[test]
    fn stretch_along_direction_renormalizes() {
        let s = structural_update(&Vec3::unit(0), &map(Mat3::diag(2.0, 1.0, 1.0))).unwrap();
        assert_eq!(s.y_t, Vec3::unit(0));
        assert_eq!(s.l0_contra[(0, 0)], 4.0);
        assert_eq!(s.l0_co[(0, 0)], 0.25);
        assert_eq!(s.l0_mixed[(0, 0)], 1.0);
    }

    #[test]
    fn inverted_map_is_rejected() {
        let r = structural_update(&Vec3::unit(2), &map(Mat3::diag(1.0, 1.0, -1.0)));
        assert!(matches!(r, Err(Error::NegativeJacobian { .. })));
        assert!(structural_update(&Vec3::new(1.0, 1.0, 0.0), &map(Mat3::IDENTITY)).is_err());
    }
}
