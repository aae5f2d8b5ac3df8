use super::SurfaceChart;
use crate::error::{Error, Result};
use crate::linalg::{Mat2, Mat3, Vec3};
use crate::math;
use crate::tensor::{surface_projector, Configuration};

/// Negative discriminants above this are rounding noise and clamp to zero.
pub const DISCRIMINANT_GUARD: f64 = 1e-12;

/// Tangent frame, metrics, normal and curvature at one surface point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfacePointFrame {
    pub configuration: Configuration,
    /// `a_α`
    pub tangents: [Vec3; 2],
    /// `aᵅ`
    pub duals: [Vec3; 2],
    /// `a_αβ`
    pub metric: Mat2,
    /// `aᵅᵝ`
    pub metric_inv: Mat2,
    /// `n = a₁×a₂ / ‖a₁×a₂‖`
    pub normal: Vec3,
    /// `b_αβ = n·a_α,β`
    pub curvature: Mat2,
    /// `bᵅᵝ`
    pub curvature_contra: Mat2,
    /// `bᵅ_β = aᵅᵞ b_γβ`, stored `[α][β]`.
    pub curvature_mixed: Mat2,
    pub mean_curvature: f64,
    pub gauss_curvature: f64,
    /// Principal curvatures, descending.
    pub principal: [f64; 2],
    /// `Γᵞ_αβ = a_α,β·aᵞ`, stored `[γ][α][β]`.
    pub christoffel: [[[f64; 2]; 2]; 2],
    /// `a_α,β`
    pub second: [[Vec3; 2]; 2],
}

/// Frame of `chart` at `xi`.
///
/// Errors with `DegenerateTangents` when `a₁ × a₂` vanishes and with
/// `ComplexPrincipalCurvatures` when the curvature eigenproblem has a
/// discriminant below `-1e-12`.
pub fn frame(chart: &(impl SurfaceChart + ?Sized), xi: &[f64; 2], configuration: Configuration) -> Result<SurfacePointFrame> {
    frame_from_derivatives(chart.tangents(xi), chart.second_derivatives(xi), configuration)
}

pub fn frame_from_derivatives(
    tangents: [Vec3; 2],
    second: [[Vec3; 2]; 2],
    configuration: Configuration,
) -> Result<SurfacePointFrame> {
    let [a1, a2] = tangents;
    let cross = a1.cross(&a2);
    let area = cross.norm();
    if !(area > 1e-12 * a1.norm() * a2.norm()) {
        return Err(Error::DegenerateTangents);
    }
    let normal = cross * (1.0 / area);
    let metric = Mat2::from_fn(|a, b| tangents[a].dot(&tangents[b]));
    let metric_inv = metric.try_inverse().map_err(|_| Error::DegenerateTangents)?;
    let duals = [
        a1 * metric_inv[(0, 0)] + a2 * metric_inv[(0, 1)],
        a1 * metric_inv[(1, 0)] + a2 * metric_inv[(1, 1)],
    ];
    let curvature = Mat2::from_fn(|a, b| 0.5 * (second[a][b].dot(&normal) + second[b][a].dot(&normal)));
    let curvature_mixed = metric_inv * curvature;
    let curvature_contra = curvature_mixed * metric_inv;
    let mean_curvature = 0.5 * curvature_mixed.trace();
    let gauss_curvature = curvature.det() / metric.det();
    let principal = principal_curvatures(&curvature, &metric_inv)?;
    let christoffel =
        core::array::from_fn(|g| core::array::from_fn(|a| core::array::from_fn(|b| second[a][b].dot(&duals[g]))));
    Ok(SurfacePointFrame {
        configuration,
        tangents,
        duals,
        metric,
        metric_inv,
        normal,
        curvature,
        curvature_contra,
        curvature_mixed,
        mean_curvature,
        gauss_curvature,
        principal,
        christoffel,
        second,
    })
}

/// Eigenvalues of `[b_αγ aᵞᵝ]`.
pub fn principal_curvatures(curvature: &Mat2, metric_inv: &Mat2) -> Result<[f64; 2]> {
    let m = *curvature * *metric_inv;
    let half_trace = 0.5 * m.trace();
    let discriminant = half_trace * half_trace - m.det();
    if discriminant < -DISCRIMINANT_GUARD {
        return Err(Error::ComplexPrincipalCurvatures { discriminant });
    }
    let root = math::sqrt(f64::max(discriminant, 0.0));
    Ok([half_trace + root, half_trace - root])
}

impl SurfacePointFrame {
    /// Weingarten: `n,α = −bᵝ_α a_β`.
    pub fn normal_derivatives(&self) -> [Vec3; 2] {
        core::array::from_fn(|a| {
            -(self.tangents[0] * self.curvature_mixed[(0, a)] + self.tangents[1] * self.curvature_mixed[(1, a)])
        })
    }

    /// Largest `|a_α,β − Γᵞ_αβ a_γ − b_αβ n|`.
    pub fn gauss_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for a in 0..2 {
            for b in 0..2 {
                let mut r = self.second[a][b] - self.normal * self.curvature[(a, b)];
                for g in 0..2 {
                    r -= self.tangents[g] * self.christoffel[g][a][b];
                }
                worst = worst.max(r.max_abs());
            }
        }
        worst
    }

    /// Surface identity `i = a_α ⊗ aᵅ`.
    pub fn identity(&self) -> Mat3 {
        self.tangents[0].outer(&self.duals[0]) + self.tangents[1].outer(&self.duals[1])
    }

    pub fn projector(&self) -> Mat3 {
        surface_projector(&self.normal)
    }

    /// `sqrt(det a_αβ)`
    pub fn area_factor(&self) -> f64 {
        math::sqrt(self.metric.det())
    }

    /// `Σ Tᵅᵝ a_α ⊗ a_β`
    pub fn assemble_contra(&self, t: &Mat2) -> Mat3 {
        self.assemble(t, &self.tangents)
    }

    /// `Σ T_αβ aᵅ ⊗ aᵝ`
    pub fn assemble_co(&self, t: &Mat2) -> Mat3 {
        self.assemble(t, &self.duals)
    }

    fn assemble(&self, t: &Mat2, basis: &[Vec3; 2]) -> Mat3 {
        let mut out = Mat3::ZERO;
        for a in 0..2 {
            for b in 0..2 {
                out += basis[a].outer(&basis[b]) * t[(a, b)];
            }
        }
        out
    }

    /// `T_αβ = a_α · T a_β`
    pub fn co_components(&self, t: &Mat3) -> Mat2 {
        Mat2::from_fn(|a, b| self.tangents[a].dot(&(*t * self.tangents[b])))
    }

    /// `Tᵅᵝ = aᵅ · T aᵝ`
    pub fn contra_components(&self, t: &Mat3) -> Mat2 {
        Mat2::from_fn(|a, b| self.duals[a].dot(&(*t * self.duals[b])))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Rect;
    use crate::surface::{Cylinder, Plane, Sphere};

    const C: Configuration = Configuration::Current;

    #[test]
    fn plane_is_flat() {
        let f = frame(&Plane::xy(Rect::new([-1.0; 2], [1.0; 2])), &[0.3, 0.1], C).unwrap();
        assert_eq!(f.curvature, Mat2::ZERO);
        assert_eq!(f.mean_curvature, 0.0);
        assert_eq!(f.gauss_curvature, 0.0);
        assert_eq!(f.normal, Vec3::unit(2));
    }

    #[test]
    fn sphere_curvatures() {
        let f = frame(&Sphere::new(2.0), &[1.1, 0.4], C).unwrap();
        assert!((f.mean_curvature.abs() - 0.5).abs() < 1e-14);
        assert!((f.gauss_curvature - 0.25).abs() < 1e-14);
        assert!((f.principal[0].abs() - 0.5).abs() < 1e-7);
        assert!(f.gauss_residual() < 1e-14);
    }

    #[test]
    fn cylinder_curvatures() {
        let c = Cylinder {
            radius: 1.0,
            domain: Rect::new([-3.0, -1.0], [3.0, 1.0]),
        };
        let f = frame(&c, &[0.7, 0.2], C).unwrap();
        assert!(f.gauss_curvature.abs() < 1e-15);
        assert!((f.mean_curvature.abs() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn parallel_tangents_are_degenerate() {
        let p = Plane {
            origin: Vec3::ZERO,
            u: Vec3::unit(0),
            v: Vec3::unit(0) * 2.0,
            domain: Rect::new([-1.0; 2], [1.0; 2]),
        };
        assert_eq!(frame(&p, &[0.0, 0.0], C), Err(Error::DegenerateTangents));
    }
}
