use super::Configuration;
use crate::error::Result;
use crate::linalg::{Mat3, Vec3};
use crate::math;

/// Covariant tangents, their duals and both metrics at a material point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisTriad {
    pub configuration: Configuration,
    /// `G_i`
    pub covariant: [Vec3; 3],
    /// `G^i`
    pub contravariant: [Vec3; 3],
    /// `[G_ij]`
    pub metric_co: Mat3,
    /// `[G^ij] = [G_ij]^-1`
    pub metric_contra: Mat3,
    /// `det [G_ij]`
    pub metric_det: f64,
}

/// Builds the dual basis from three tangent vectors.
///
/// Fails with `SingularMetric` when `det[G_ij]` falls below the scaled
/// singularity threshold.
pub fn build_basis(tangents: [Vec3; 3], configuration: Configuration) -> Result<BasisTriad> {
    let metric_co = Mat3::from_fn(|i, j| tangents[i].dot(&tangents[j]));
    let metric_contra = metric_co.try_inverse()?;
    let metric_contra = metric_contra.sym();
    let mut contravariant = [Vec3::ZERO; 3];
    for (i, dual) in contravariant.iter_mut().enumerate() {
        for (j, t) in tangents.iter().enumerate() {
            *dual += *t * metric_contra[(i, j)];
        }
    }
    Ok(BasisTriad {
        configuration,
        covariant: tangents,
        contravariant,
        metric_co,
        metric_contra,
        metric_det: metric_co.det(),
    })
}

impl BasisTriad {
    pub fn cartesian(configuration: Configuration) -> Self {
        let e = [Vec3::unit(0), Vec3::unit(1), Vec3::unit(2)];
        BasisTriad {
            configuration,
            covariant: e,
            contravariant: e,
            metric_co: Mat3::IDENTITY,
            metric_contra: Mat3::IDENTITY,
            metric_det: 1.0,
        }
    }

    /// Signed volume of the tangent triad, `[G_1 G_2 G_3]`.
    pub fn volume(&self) -> f64 {
        self.covariant[0].cross(&self.covariant[1]).dot(&self.covariant[2])
    }

    /// `sqrt(det[G_ij])`
    pub fn volume_factor(&self) -> f64 {
        math::sqrt(self.metric_det)
    }

    /// Largest deviation of `G_i · G^j` from `δ_i^j`.
    pub fn duality_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let delta = if i == j { 1.0 } else { 0.0 };
                worst = worst.max(math::abs(self.covariant[i].dot(&self.contravariant[j]) - delta));
            }
        }
        worst
    }

    /// Matrix with the covariant tangents as columns.
    pub fn tangent_matrix(&self) -> Mat3 {
        Mat3::from_cols(&self.covariant)
    }

    /// Matrix with the dual vectors as columns.
    pub fn dual_matrix(&self) -> Mat3 {
        Mat3::from_cols(&self.contravariant)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn cartesian_tangents_give_identity_metric() {
        let b = build_basis(
            [Vec3::unit(0), Vec3::unit(1), Vec3::unit(2)],
            Configuration::Reference,
        )
        .unwrap();
        assert_eq!(b.metric_co, Mat3::IDENTITY);
        assert_eq!(b.contravariant, b.covariant);
    }

    #[test]
    fn scaled_first_tangent() {
        let b = build_basis(
            [Vec3::unit(0) * 2.0, Vec3::unit(1), Vec3::unit(2)],
            Configuration::Reference,
        )
        .unwrap();
        assert_eq!(b.contravariant[0], Vec3::new(0.5, 0.0, 0.0));
        assert_eq!(b.metric_det, 4.0);
    }

    #[test]
    fn coplanar_tangents_are_singular() {
        let r = build_basis(
            [Vec3::unit(0), Vec3::unit(1), Vec3::new(1.0, 1.0, 0.0)],
            Configuration::Reference,
        );
        assert!(matches!(r, Err(Error::SingularMetric { .. })));
    }
}
