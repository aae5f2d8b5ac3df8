use super::{Configuration, Tensor2, Tolerances, Variance};
use crate::error::{Error, Result};
use crate::linalg::{Mat3, Vec3};

/// Totally antisymmetric permutation tensor `𝔈` in a right-handed
/// orthonormal frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PermutationTensor;

impl PermutationTensor {
    /// `𝔈_ijk`: +1 for even, −1 for odd permutations of (0,1,2), else 0.
    pub const fn get(i: usize, j: usize, k: usize) -> f64 {
        match (i, j, k) {
            (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
            (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
            _ => 0.0,
        }
    }

    /// `(𝔈:A)_i = 𝔈_ijk A_jk`
    pub fn contract(a: &Mat3) -> Vec3 {
        let mut out = Vec3::ZERO;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    out[i] += Self::get(i, j, k) * a[(j, k)];
                }
            }
        }
        out
    }

    /// `(w·𝔈)_jk = w_i 𝔈_ijk`
    pub fn left_dot(w: &Vec3) -> Mat3 {
        Mat3::from_fn(|j, k| (0..3).map(|i| w[i] * Self::get(i, j, k)).sum())
    }
}

/// Axial vector `w̄ = ½ 𝔈:wᵀ` of a skew tensor, so that `W v = w̄ × v`.
///
/// Fails with `NotSkew` when `‖sym W‖` exceeds the symmetry tolerance scaled
/// by `max(1, ‖W‖)`.
pub fn axial_vector(w: &Tensor2) -> Result<Vec3> {
    axial_vector_of(w.components(), &Tolerances::default())
}

pub fn axial_vector_of(w: &Mat3, tol: &Tolerances) -> Result<Vec3> {
    let symmetric_norm = w.sym().norm();
    if symmetric_norm > tol.symmetry * f64::max(1.0, w.norm()) {
        return Err(Error::NotSkew { symmetric_norm });
    }
    Ok(PermutationTensor::contract(&w.transpose()) * 0.5)
}

/// Skew tensor `w` with `wᵀ = w̄·𝔈`.
pub fn spin_from_axial(axial: &Vec3, configuration: Configuration) -> Result<Tensor2> {
    let w = PermutationTensor::left_dot(axial).transpose();
    Tensor2::new(w, Variance::MixedUpDown, configuration)
}

#[cfg(test)]
mod tests {
    use super::*;

    const C: Configuration = Configuration::Current;

    #[test]
    fn zero_spin_has_zero_axial_vector() {
        let w = Tensor2::new(Mat3::ZERO, Variance::MixedUpDown, C).unwrap();
        assert_eq!(axial_vector(&w).unwrap(), Vec3::ZERO);
    }

    #[test]
    fn spin_of_e3_rotates_like_cross_product() {
        let w = spin_from_axial(&Vec3::unit(2), C).unwrap();
        let m = w.components();
        assert_eq!(m[(0, 1)], -1.0);
        assert_eq!(m[(1, 0)], 1.0);
        for i in 0..3 {
            let e = Vec3::unit(i);
            assert_eq!(*m * e, Vec3::unit(2).cross(&e));
        }
    }

    #[test]
    fn contraction_with_dyad_is_cross_product() {
        let u = Vec3::new(0.3, -1.2, 2.0);
        let v = Vec3::new(1.5, 0.4, -0.7);
        let d = PermutationTensor::contract(&u.outer(&v)) - u.cross(&v);
        assert!(d.max_abs() < 1e-15);
    }

    #[test]
    fn symmetric_input_is_rejected() {
        let w = Tensor2::new(Mat3::IDENTITY, Variance::MixedUpDown, C).unwrap();
        assert!(matches!(axial_vector(&w), Err(Error::NotSkew { .. })));
    }
}
