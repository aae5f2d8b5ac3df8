use super::VolumeChart;
use crate::error::Result;
use crate::linalg::{Mat3, Vec3};
use crate::tensor::{BasisTriad, Configuration};

/// Christoffel symbols of the second kind `Γᵏᵢⱼ = g_i,j · gᵏ` at a point,
/// stored as `gamma[k][i][j]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChristoffelField {
    pub gamma: [[[f64; 3]; 3]; 3],
    pub configuration: Configuration,
}

impl ChristoffelField {
    pub fn get(&self, k: usize, i: usize, j: usize) -> f64 {
        self.gamma[k][i][j]
    }

    /// Largest `|Γᵏᵢⱼ − Γᵏⱼᵢ|`.
    pub fn asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    worst = worst.max(crate::math::abs(self.gamma[k][i][j] - self.gamma[k][j][i]));
                }
            }
        }
        worst
    }
}

pub fn christoffel_from_basis(basis: &BasisTriad, second: &[[Vec3; 3]; 3]) -> ChristoffelField {
    let gamma = core::array::from_fn(|k| {
        core::array::from_fn(|i| core::array::from_fn(|j| second[i][j].dot(&basis.contravariant[k])))
    });
    ChristoffelField {
        gamma,
        configuration: basis.configuration,
    }
}

pub fn christoffel(
    chart: &(impl VolumeChart + ?Sized),
    xi: &[f64; 3],
    configuration: Configuration,
) -> Result<ChristoffelField> {
    let basis = chart.basis(xi, configuration)?;
    Ok(christoffel_from_basis(&basis, &chart.second_derivatives(xi)))
}

/// `u^i|j = u^i,j + Γ^i_kj u^k`; `du[i][j] = u^i,j`. Result indexed `[i][j]`.
pub fn covariant_derivative_contra(u: &[f64; 3], du: &Mat3, g: &ChristoffelField) -> Mat3 {
    Mat3::from_fn(|i, j| du[(i, j)] + (0..3).map(|k| g.gamma[i][k][j] * u[k]).sum::<f64>())
}

/// `u_i|j = u_i,j − Γ^k_ij u_k`
pub fn covariant_derivative_co(u: &[f64; 3], du: &Mat3, g: &ChristoffelField) -> Mat3 {
    Mat3::from_fn(|i, j| du[(i, j)] - (0..3).map(|k| g.gamma[k][i][j] * u[k]).sum::<f64>())
}

/// `T_ij|k = T_ij,k − Γ^m_ik T_mj − Γ^m_jk T_im`; `dt[k]` holds `T_ij,k`.
/// Result indexed `[k]` then `(i, j)`.
pub fn covariant_derivative_co2(t: &Mat3, dt: &[Mat3; 3], g: &ChristoffelField) -> [Mat3; 3] {
    core::array::from_fn(|k| {
        Mat3::from_fn(|i, j| {
            let mut s = dt[k][(i, j)];
            for m in 0..3 {
                s -= g.gamma[m][i][k] * t[(m, j)] + g.gamma[m][j][k] * t[(i, m)];
            }
            s
        })
    })
}

/// `T^ij|k = T^ij,k + Γ^i_mk T^mj + Γ^j_mk T^im`.
pub fn covariant_derivative_contra2(t: &Mat3, dt: &[Mat3; 3], g: &ChristoffelField) -> [Mat3; 3] {
    core::array::from_fn(|k| {
        Mat3::from_fn(|i, j| {
            let mut s = dt[k][(i, j)];
            for m in 0..3 {
                s += g.gamma[i][m][k] * t[(m, j)] + g.gamma[j][m][k] * t[(i, m)];
            }
            s
        })
    })
}

/// Covariant derivative of the tangent vectors, `g_i|j = g_i,j − Γᵏᵢⱼ g_k`,
/// given `dg[i][j] = g_i,j`.
pub fn tangent_covariant_derivative(basis: &BasisTriad, dg: &[[Vec3; 3]; 3], g: &ChristoffelField) -> [[Vec3; 3]; 3] {
    core::array::from_fn(|i| {
        core::array::from_fn(|j| {
            let mut v = dg[i][j];
            for k in 0..3 {
                v -= basis.covariant[k] * g.gamma[k][i][j];
            }
            v
        })
    })
}

/// Covariant derivative of the duals, `gⁱ|j = gⁱ,j + Γⁱₖⱼ gᵏ`,
/// given `dg[i][j] = gⁱ,j`.
pub fn dual_covariant_derivative(basis: &BasisTriad, dg: &[[Vec3; 3]; 3], g: &ChristoffelField) -> [[Vec3; 3]; 3] {
    core::array::from_fn(|i| {
        core::array::from_fn(|j| {
            let mut v = dg[i][j];
            for k in 0..3 {
                v += basis.contravariant[k] * g.gamma[i][k][j];
            }
            v
        })
    })
}
