use super::VolumeChart;
use crate::error::{Error, Result};
use crate::linalg::{Mat3, Vec3};
use crate::math;
use crate::tensor::{axial_vector_of, Configuration, Tensor2, Tolerances, TwoPointMap, Variance};

use Configuration::{Current, Intermediate, Reference};

/// `F = g_i ⊗ Gⁱ` at `xi`.
///
/// Errors with `SingularMetric` for a degenerate triad and `NegativeJacobian`
/// when `det F ≤ 0`.
pub fn deformation_gradient(
    reference: &(impl VolumeChart + ?Sized),
    current: &(impl VolumeChart + ?Sized),
    xi: &[f64; 3],
) -> Result<TwoPointMap> {
    if !reference.domain().contains(xi) || !current.domain().contains(xi) {
        return Err(Error::InvalidParameter("point outside the chart domain"));
    }
    let big = reference.basis(xi, Reference)?;
    let small = current.basis(xi, Current)?;
    let f = small.tangent_matrix() * big.dual_matrix().transpose();
    let map = TwoPointMap::new(f, Reference, Current)?;
    map.require_orientation()?;
    Ok(map)
}

/// Deformation gradient, its thermo-elastic split and the derived
/// right Cauchy-Green family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolumeState {
    pub f: TwoPointMap,
    pub f_t: TwoPointMap,
    pub f_e: TwoPointMap,
    /// `C = FᵀF` (♭, reference)
    pub c: Tensor2,
    /// `C_T = F_TᵀF_T` (♭, reference)
    pub c_t: Tensor2,
    /// `C_e = F_eᵀF_e` (♭, intermediate)
    pub c_e: Tensor2,
    pub j: f64,
    pub j_t: f64,
}

impl VolumeState {
    pub fn j_e(&self) -> f64 {
        self.f_e.det()
    }

    /// `‖C − F_Tᵀ C_e F_T‖ / ‖C‖`
    pub fn split_defect(&self) -> f64 {
        let ft = self.f_t.matrix();
        let back = ft.transpose() * *self.c_e.components() * *ft;
        (*self.c.components() - back).norm() / self.c.components().norm()
    }
}

/// `F_e = F F_T⁻¹` with `C`, `C_e`, `C_T`, `J`, `J_T`.
pub fn thermo_split(f: &TwoPointMap, f_t: &TwoPointMap) -> Result<VolumeState> {
    f_t.require_orientation()?;
    f.require_orientation()?;
    if f.domain() != Reference || f_t.domain() != Reference {
        return Err(Error::ConfigurationMismatch {
            expected: Reference,
            found: if f.domain() != Reference { f.domain() } else { f_t.domain() },
        });
    }
    let fe = *f.matrix() * *f_t.inverse();
    let f_e = TwoPointMap::new(fe, Intermediate, f.codomain())?;
    let fm = *f.matrix();
    let ftm = *f_t.matrix();
    Ok(VolumeState {
        f: *f,
        f_t: *f_t,
        f_e,
        c: Tensor2::new(fm.transpose() * fm, Variance::Co, Reference)?,
        c_t: Tensor2::new(ftm.transpose() * ftm, Variance::Co, Reference)?,
        c_e: Tensor2::new(fe.transpose() * fe, Variance::Co, Intermediate)?,
        j: f.det(),
        j_t: f_t.det(),
    })
}

/// Spatial velocity gradient and its parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VelocityGradient {
    /// `l = Ḟ F⁻¹`
    pub l: Tensor2,
    pub d: Tensor2,
    pub w: Tensor2,
    /// `w̄ = ½ 𝔈:wᵀ`
    pub w_axial: Vec3,
    /// `l_e = Ḟ_e F_e⁻¹`
    pub l_e: Tensor2,
    /// `l_T = Ḟ_T F_T⁻¹` (intermediate)
    pub l_t: Tensor2,
}

impl VelocityGradient {
    /// `‖l − l_e − F_e l_T F_e⁻¹‖`
    pub fn split_defect(&self, f_e: &TwoPointMap) -> f64 {
        let pushed = *f_e.matrix() * *self.l_t.components() * *f_e.inverse();
        (*self.l.components() - *self.l_e.components() - pushed).max_abs()
    }
}

/// Rates supplied by the caller; no time stepping happens here.
pub fn velocity_gradient(f: &TwoPointMap, f_dot: &Mat3, f_t: &TwoPointMap, f_t_dot: &Mat3) -> Result<VelocityGradient> {
    f.require_orientation()?;
    f_t.require_orientation()?;
    let fe = *f.matrix() * *f_t.inverse();
    // Ḟ = Ḟ_e F_T + F_e Ḟ_T
    let fe_dot = (*f_dot - fe * *f_t_dot) * *f_t.inverse();
    let fe_inv = *f_t.matrix() * *f.inverse();
    let l = *f_dot * *f.inverse();
    let d = l.sym();
    let w = l.skew();
    let tol = Tolerances {
        symmetry: 1e-10,
        ..Tolerances::default()
    };
    let mixed = |m: Mat3, c| Tensor2::new(m, Variance::MixedUpDown, c);
    Ok(VelocityGradient {
        l: mixed(l, Current)?,
        d: mixed(d, Current)?,
        w: mixed(w, Current)?,
        w_axial: axial_vector_of(&w, &tol)?,
        l_e: mixed(fe_dot * fe_inv, Current)?,
        l_t: mixed(*f_t_dot * *f_t.inverse(), Intermediate)?,
    })
}

/// Nanson's formula `ν ds = J F⁻ᵀ 𝒱 dS`.
pub fn nanson(f: &TwoPointMap, normal: &Vec3, ds: f64) -> Result<Vec3> {
    f.require_orientation()?;
    if math::abs(normal.norm() - 1.0) > 1e-12 {
        return Err(Error::InvalidParameter("reference normal must be a unit vector"));
    }
    Ok(f.inverse_transpose() * *normal * (f.det() * ds))
}

/// `[F y1, F y2, F y3] / [y1, y2, y3]` for non-coplanar probes.
pub fn jacobian_from_probes(f: &Mat3, probes: &[Vec3; 3]) -> Result<f64> {
    let triple = |a: &Vec3, b: &Vec3, c: &Vec3| a.cross(b).dot(c);
    let den = triple(&probes[0], &probes[1], &probes[2]);
    let scale = probes[0].norm() * probes[1].norm() * probes[2].norm();
    if !(math::abs(den) > 1e-12 * scale) {
        return Err(Error::DegenerateProbes);
    }
    let mapped = probes.map(|y| *f * y);
    Ok(triple(&mapped[0], &mapped[1], &mapped[2]) / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Cuboid;
    use crate::volume::{CartesianChart, MappedChart};

    fn cube() -> CartesianChart {
        CartesianChart {
            domain: Cuboid::new([-1.0; 3], [1.0; 3]),
        }
    }

    #[test]
    fn identical_charts_give_identity() {
        let f = deformation_gradient(&cube(), &cube(), &[0.2, -0.1, 0.5]).unwrap();
        assert_eq!(*f.matrix(), Mat3::IDENTITY);
        assert_eq!(f.det(), 1.0);
    }

    #[test]
    fn uniform_stretch() {
        let cur = MappedChart {
            inner: cube(),
            map: Mat3::IDENTITY * 2.0,
            offset: Vec3::ZERO,
        };
        let f = deformation_gradient(&cube(), &cur, &[0.0; 3]).unwrap();
        assert_eq!(*f.matrix(), Mat3::IDENTITY * 2.0);
        assert_eq!(f.det(), 8.0);
    }

    #[test]
    fn inverted_chart_has_negative_jacobian() {
        let cur = MappedChart {
            inner: cube(),
            map: Mat3::diag(-1.0, 1.0, 1.0),
            offset: Vec3::ZERO,
        };
        assert!(matches!(
            deformation_gradient(&cube(), &cur, &[0.0; 3]),
            Err(Error::NegativeJacobian { .. })
        ));
    }

    #[test]
    fn pure_thermal_scaling_compresses_elastic_state() {
        let f = TwoPointMap::identity(Reference, Current);
        let f_t = TwoPointMap::new(Mat3::IDENTITY * 2.0, Reference, Intermediate).unwrap();
        let s = thermo_split(&f, &f_t).unwrap();
        assert_eq!(*s.c_e.components(), Mat3::IDENTITY * 0.25);
        assert_eq!(s.j_t, 8.0);
    }

    #[test]
    fn rigid_spin() {
        let f = TwoPointMap::identity(Reference, Current);
        let f_t = TwoPointMap::identity(Reference, Intermediate);
        let s = Mat3([[0.0, -0.3, 0.2], [0.3, 0.0, -0.1], [-0.2, 0.1, 0.0]]);
        let v = velocity_gradient(&f, &s, &f_t, &Mat3::ZERO).unwrap();
        assert_eq!(*v.d.components(), Mat3::ZERO);
        assert_eq!(*v.w.components(), s);
        assert_eq!(v.w_axial, Vec3::new(0.1, 0.2, 0.3));
    }

    #[test]
    fn nanson_isotropic() {
        let f = TwoPointMap::new(Mat3::IDENTITY * 2.0, Reference, Current).unwrap();
        let n = nanson(&f, &Vec3::unit(1), 1.0).unwrap();
        assert!((n.norm() - 4.0).abs() < 1e-14);
    }
}
