//! Symmetric 3×3 eigendecomposition (cyclic Jacobi) and spectral tensor functions.

use crate::error::{Error, Result};
use crate::linalg::Mat3;
use crate::math;

/// Off-diagonal convergence threshold, relative to the Frobenius norm.
pub const JACOBI_TOLERANCE: f64 = 1e-14;
pub const JACOBI_MAX_SWEEPS: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricEigen {
    /// Eigenvalues in descending order.
    pub values: [f64; 3],
    /// Orthonormal eigenvectors stored as columns, matching `values`.
    pub vectors: Mat3,
}

impl SymmetricEigen {
    /// Decomposes the symmetric part of `m`.
    pub fn new(m: &Mat3) -> Self {
        let mut a = m.sym();
        let mut v = Mat3::IDENTITY;
        let scale = a.norm();
        for _ in 0..JACOBI_MAX_SWEEPS {
            let off = math::sqrt(2.0 * (a[(0, 1)] * a[(0, 1)] + a[(0, 2)] * a[(0, 2)] + a[(1, 2)] * a[(1, 2)]));
            if off <= JACOBI_TOLERANCE * scale || off == 0.0 {
                break;
            }
            for (p, q) in [(0, 1), (0, 2), (1, 2)] {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let sign = if theta < 0.0 { -1.0 } else { 1.0 };
                let t = sign / (math::abs(theta) + math::sqrt(theta * theta + 1.0));
                let c = 1.0 / math::sqrt(t * t + 1.0);
                let s = t * c;
                let mut rot = Mat3::IDENTITY;
                rot[(p, p)] = c;
                rot[(q, q)] = c;
                rot[(p, q)] = s;
                rot[(q, p)] = -s;
                a = rot.transpose() * a * rot;
                // the rotation zeroes (p,q) analytically
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                v = v * rot;
            }
        }
        let mut order = [0usize, 1, 2];
        // stable sort: ties keep first-index order
        order.sort_by(|&i, &j| a[(j, j)].partial_cmp(&a[(i, i)]).unwrap_or(core::cmp::Ordering::Equal));
        let values = [a[(order[0], order[0])], a[(order[1], order[1])], a[(order[2], order[2])]];
        let vectors = Mat3::from_cols(&[v.col(order[0]), v.col(order[1]), v.col(order[2])]);
        SymmetricEigen { values, vectors }
    }

    /// Spectral tensor function `Σ f(λ_k) v_k ⊗ v_k`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Mat3 {
        let mut out = Mat3::ZERO;
        for k in 0..3 {
            let vk = self.vectors.col(k);
            out += vk.outer(&vk) * f(self.values[k]);
        }
        out
    }

    pub fn min_value(&self) -> f64 {
        self.values[2]
    }
}

/// Errors with `NotSpd` unless every eigenvalue is strictly positive.
pub fn require_spd(m: &Mat3) -> Result<SymmetricEigen> {
    let eig = SymmetricEigen::new(m);
    if eig.min_value() > 0.0 && eig.values.iter().all(|x| x.is_finite()) {
        Ok(eig)
    } else {
        Err(Error::NotSpd {
            min_eigenvalue: eig.min_value(),
        })
    }
}

pub fn sym_exp(m: &Mat3) -> Mat3 {
    SymmetricEigen::new(m).map(math::exp)
}

pub fn sym_log(m: &Mat3) -> Result<Mat3> {
    Ok(require_spd(m)?.map(math::ln))
}

pub fn sym_pow(m: &Mat3, p: f64) -> Result<Mat3> {
    Ok(require_spd(m)?.map(|x| math::powf(x, p)))
}

pub fn sym_sqrt(m: &Mat3) -> Result<Mat3> {
    Ok(require_spd(m)?.map(math::sqrt))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Vec3;

    #[test]
    fn diagonal_values_sorted_descending() {
        let e = SymmetricEigen::new(&Mat3::diag(1.0, 3.0, 2.0));
        assert_eq!(e.values, [3.0, 2.0, 1.0]);
    }

    #[test]
    fn reconstructs_dense_symmetric() {
        let m = Mat3([[4.0, 1.0, -2.0], [1.0, 2.0, 0.5], [-2.0, 0.5, 3.0]]);
        let e = SymmetricEigen::new(&m);
        let back = e.map(|x| x);
        assert!((back - m).max_abs() < 1e-13);
        let vtv = e.vectors.transpose() * e.vectors;
        assert!((vtv - Mat3::IDENTITY).max_abs() < 1e-14);
        assert!(e.values[0] >= e.values[1] && e.values[1] >= e.values[2]);
    }

    #[test]
    fn log_of_exp_round_trip() {
        let m = Mat3([[0.3, 0.1, 0.0], [0.1, -0.2, 0.05], [0.0, 0.05, 0.1]]);
        let back = sym_log(&sym_exp(&m)).unwrap();
        assert!((back - m).max_abs() < 1e-14);
    }

    #[test]
    fn repeated_eigenvalues() {
        let n = Vec3::new(1.0, 2.0, 2.0) * (1.0 / 3.0);
        let m = Mat3::IDENTITY * 2.0 + n.outer(&n);
        let e = SymmetricEigen::new(&m);
        assert!((e.values[0] - 3.0).abs() < 1e-14);
        assert!((e.values[1] - 2.0).abs() < 1e-14);
        assert!((e.values[2] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn indefinite_is_not_spd() {
        assert!(matches!(
            sym_log(&Mat3::diag(1.0, -1.0, 2.0)),
            Err(Error::NotSpd { .. })
        ));
    }
}
