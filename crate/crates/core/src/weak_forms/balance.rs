use crate::constitutive::{membrane_to_sigma, transverse_shear};
use crate::linalg::{Mat2, Mat3, Vec3};
use crate::surface::SurfacePointFrame;
use crate::tensor::PermutationTensor;

/// Pointwise fields entering the local balance laws (current configuration).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BalanceFields {
    pub reference_density: f64,
    pub density: f64,
    pub jacobian: f64,
    pub sigma: Mat3,
    /// `div σᵀ`
    pub div_sigma_t: Vec3,
    pub body_force: Vec3,
    pub acceleration: Vec3,
    /// `div μ̄ᵀ` of a couple-stress field; zero for non-polar media.
    pub div_couple_stress_t: Vec3,
    pub body_couple: Vec3,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BalanceReport {
    /// `ρ₀ − J ρ`
    pub mass: f64,
    /// `div σᵀ + ρ f − ρ v̇`
    pub linear_momentum: Vec3,
    /// `div μ̄ᵀ + ρ c + 𝔈 : σ`
    pub angular_momentum: Vec3,
}

pub fn balance_diagnostics(fields: &BalanceFields) -> BalanceReport {
    let rho = fields.density;
    BalanceReport {
        mass: fields.reference_density - fields.jacobian * rho,
        linear_momentum: fields.div_sigma_t + fields.body_force * rho - fields.acceleration * rho,
        angular_momentum: fields.div_couple_stress_t + fields.body_couple * rho + PermutationTensor::contract(&fields.sigma),
    }
}

/// Residuals of the shell resultant relations at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShellResultantReport {
    /// `|σ¹² − σ²¹|` of `σᵅᵝ = Nᵅᵝ − b^β_γ Mᵞᵅ`
    pub sigma_asymmetry: f64,
    /// `Sᵅ + Mᵝᵅ;β`
    pub shear: [f64; 2],
}

/// `dm[γ] = Mᵅᵝ,γ`.
pub fn shell_resultant_diagnostics(
    frame: &SurfacePointFrame,
    membrane: &Mat2,
    moment: &Mat2,
    dm: &[Mat2; 2],
    shear: &[f64; 2],
) -> ShellResultantReport {
    let sigma = membrane_to_sigma(membrane, moment, &frame.curvature_mixed);
    let expected = transverse_shear(frame, moment, dm);
    ShellResultantReport {
        sigma_asymmetry: crate::math::abs(sigma[(0, 1)] - sigma[(1, 0)]),
        shear: [shear[0] - expected[0], shear[1] - expected[1]],
    }
}

/// `div Aᵀ` (`∂A_ji/∂x_j`) of a spatial tensor field by a 4th-order
/// central stencil.
pub fn divergence_transpose_fd(field: impl Fn(&Vec3) -> Mat3, x: &Vec3, h: f64) -> Vec3 {
    let mut out = Vec3::ZERO;
    for j in 0..3 {
        let e = Vec3::unit(j) * h;
        let d = (field(&(*x - e * 2.0)) - field(&(*x - e)) * 8.0 + field(&(*x + e)) * 8.0 - field(&(*x + e * 2.0)))
            * (1.0 / (12.0 * h));
        for i in 0..3 {
            out[i] += d[(j, i)];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fields(sigma: Mat3) -> BalanceFields {
        BalanceFields {
            reference_density: 2.0,
            density: 1.6,
            jacobian: 1.25,
            sigma,
            div_sigma_t: Vec3::ZERO,
            body_force: Vec3::ZERO,
            acceleration: Vec3::ZERO,
            div_couple_stress_t: Vec3::ZERO,
            body_couple: Vec3::ZERO,
        }
    }

    #[test]
    fn symmetric_stress_balances_angular_momentum() {
        let s = Mat3([[1.0, 2.0, 3.0], [2.0, 4.0, 5.0], [3.0, 5.0, 6.0]]);
        let r = balance_diagnostics(&fields(s));
        assert_eq!(r.angular_momentum, Vec3::ZERO);
        assert_eq!(r.mass, 0.0);
    }

    #[test]
    fn skew_stress_is_reported() {
        let mut s = Mat3::ZERO;
        s[(0, 1)] = 1.0;
        let r = balance_diagnostics(&fields(s));
        assert_eq!(r.angular_momentum, Vec3::new(0.0, 0.0, 1.0));
    }

    #[test]
    fn manufactured_equilibrium() {
        // σ = [[x², xy, 0], [xy, y², 0], [0, 0, z]] has div σ = (3x, 3y, 1)
        let sigma = |p: &Vec3| Mat3([[p[0] * p[0], p[0] * p[1], 0.0], [p[0] * p[1], p[1] * p[1], 0.0], [0.0, 0.0, p[2]]]);
        let x = Vec3::new(0.3, -0.7, 1.1);
        let rho = 1.6;
        let div = divergence_transpose_fd(sigma, &x, 1e-3);
        let f = BalanceFields {
            sigma: sigma(&x),
            div_sigma_t: div,
            body_force: -Vec3::new(3.0 * x[0], 3.0 * x[1], 1.0) * (1.0 / rho),
            ..fields(Mat3::ZERO)
        };
        assert!(balance_diagnostics(&f).linear_momentum.max_abs() < 1e-8);
    }
}
