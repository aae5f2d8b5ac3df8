use crate::error::{Error, Result};
use crate::linalg::{Mat3, Vec3};
use crate::math;

const PROBE_TOLERANCE: f64 = 1e-12;

/// Probe vectors for a surface determinant: `y1`, `y2` span the domain
/// plane, `y3` is its unit normal, `y4` the unit normal of the image plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceProbes {
    pub y1: Vec3,
    pub y2: Vec3,
    pub y3: Vec3,
    pub y4: Vec3,
}

impl SurfaceProbes {
    pub fn new(y1: Vec3, y2: Vec3, y3: Vec3, y4: Vec3) -> Result<Self> {
        let unit = |v: &Vec3| math::abs(v.norm() - 1.0) <= 1e-10;
        if !unit(&y3) || !unit(&y4) {
            return Err(Error::DegenerateProbes);
        }
        let area = y1.cross(&y2).norm();
        let scale = y1.norm() * y2.norm();
        if !(area > PROBE_TOLERANCE * scale) {
            return Err(Error::DegenerateProbes);
        }
        if math::abs(y1.dot(&y3)) > 1e-10 * y1.norm() || math::abs(y2.dot(&y3)) > 1e-10 * y2.norm() {
            return Err(Error::DegenerateProbes);
        }
        Ok(SurfaceProbes { y1, y2, y3, y4 })
    }

    /// Orthonormal in-plane probes derived from the domain normal.
    pub fn from_normals(domain_normal: &Vec3, codomain_normal: &Vec3) -> Result<Self> {
        let (y1, y2) = tangent_pair(domain_normal).ok_or(Error::DegenerateProbes)?;
        SurfaceProbes::new(y1, y2, *domain_normal, *codomain_normal)
    }
}

/// Two orthonormal vectors spanning the plane normal to `n`.
pub(crate) fn tangent_pair(n: &Vec3) -> Option<(Vec3, Vec3)> {
    let n = n.normalized()?;
    let pick = if math::abs(n[0]) < 0.6 { Vec3::unit(0) } else { Vec3::unit(1) };
    let y1 = (pick - n * pick.dot(&n)).normalized()?;
    Some((y1, n.cross(&y1)))
}

/// `[(T y1)×(T y2)]·y4 / [(y1×y2)·y3]`
pub fn surface_det(t: &Mat3, probes: &SurfaceProbes) -> f64 {
    let num = (*t * probes.y1).cross(&(*t * probes.y2)).dot(&probes.y4);
    let den = probes.y1.cross(&probes.y2).dot(&probes.y3);
    num / den
}

pub fn surface_det_with_normals(t: &Mat3, domain_normal: &Vec3, codomain_normal: &Vec3) -> Result<f64> {
    Ok(surface_det(t, &SurfaceProbes::from_normals(domain_normal, codomain_normal)?))
}

/// In-plane projector `1 − n⊗n`.
pub fn surface_projector(n: &Vec3) -> Mat3 {
    Mat3::IDENTITY - n.outer(n)
}

/// Largest component of `T` along the normals, i.e. how far `T` is from
/// satisfying `T·n₀ = 0` and `n·T = 0`.
pub fn normal_leakage(t: &Mat3, domain_normal: &Vec3, codomain_normal: &Vec3) -> f64 {
    let right = (*t * *domain_normal).max_abs();
    let left = (t.transpose() * *codomain_normal).max_abs();
    f64::max(right, left)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surface_identity_has_unit_determinant() {
        let n = Vec3::new(1.0, 2.0, -0.5).normalized().unwrap();
        let i = surface_projector(&n);
        assert!(math::abs(surface_det_with_normals(&i, &n, &n).unwrap() - 1.0) < 1e-14);
    }

    #[test]
    fn isotropic_stretch_scales_area() {
        let n = Vec3::unit(2);
        let t = surface_projector(&n) * 3.0;
        assert!(math::abs(surface_det_with_normals(&t, &n, &n).unwrap() - 9.0) < 1e-13);
    }

    #[test]
    fn parallel_probes_are_degenerate() {
        let n = Vec3::unit(2);
        let y = Vec3::unit(0);
        assert_eq!(SurfaceProbes::new(y, y * 2.0, n, n), Err(Error::DegenerateProbes));
    }

    #[test]
    fn probe_choice_does_not_matter() {
        let n = Vec3::unit(2);
        let p = surface_projector(&n);
        let t = p * Mat3([[1.3, 0.2, 0.5], [-0.4, 0.9, 0.1], [0.7, 0.3, 2.0]]) * p;
        let a = SurfaceProbes::new(Vec3::unit(0), Vec3::unit(1), n, n).unwrap();
        let b = SurfaceProbes::new(Vec3::new(2.0, 1.0, 0.0), Vec3::new(-0.3, 0.8, 0.0), n, n).unwrap();
        assert!(math::abs(surface_det(&t, &a) - surface_det(&t, &b)) < 1e-14);
    }
}
