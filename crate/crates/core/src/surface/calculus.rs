use super::{SurfaceField, SurfacePointFrame};
use crate::linalg::{Mat2, Mat3, Vec3};

/// `∇ₛΦ = Φ,α aᵅ` from the parametric derivatives `Φ,α`.
pub fn surface_gradient_scalar(frame: &SurfacePointFrame, d: &[f64; 2]) -> Vec3 {
    frame.duals[0] * d[0] + frame.duals[1] * d[1]
}

/// `∇ₛu = u,α ⊗ aᵅ` for an ambient vector field.
pub fn surface_gradient_vector(frame: &SurfacePointFrame, du: &[Vec3; 2]) -> Mat3 {
    du[0].outer(&frame.duals[0]) + du[1].outer(&frame.duals[1])
}

/// `divₛu = u,α · aᵅ`
pub fn surface_divergence(frame: &SurfacePointFrame, du: &[Vec3; 2]) -> f64 {
    du[0].dot(&frame.duals[0]) + du[1].dot(&frame.duals[1])
}

/// `uᵅ;β = uᵅ,β + uᵞ Γᵅ_γβ`; `du[(α, β)] = uᵅ,β`.
pub fn covariant_derivative_contra(frame: &SurfacePointFrame, u: &[f64; 2], du: &Mat2) -> Mat2 {
    let g = &frame.christoffel;
    Mat2::from_fn(|a, b| du[(a, b)] + u[0] * g[a][0][b] + u[1] * g[a][1][b])
}

/// `u_α;β = u_α,β − Γᵞ_αβ u_γ`
pub fn covariant_derivative_co(frame: &SurfacePointFrame, u: &[f64; 2], du: &Mat2) -> Mat2 {
    let g = &frame.christoffel;
    Mat2::from_fn(|a, b| du[(a, b)] - g[0][a][b] * u[0] - g[1][a][b] * u[1])
}

/// `uᵅ;α`
pub fn covariant_divergence(frame: &SurfacePointFrame, u: &[f64; 2], du: &Mat2) -> f64 {
    covariant_derivative_contra(frame, u, du).trace()
}

/// `T_αβ;γ = T_αβ,γ − Γᵟ_αγ T_δβ − Γᵟ_βγ T_αδ`; `dt[γ] = T_αβ,γ`.
pub fn covariant_derivative_co2(frame: &SurfacePointFrame, t: &Mat2, dt: &[Mat2; 2]) -> [Mat2; 2] {
    let g = &frame.christoffel;
    core::array::from_fn(|c| {
        Mat2::from_fn(|a, b| {
            let mut s = dt[c][(a, b)];
            for d in 0..2 {
                s -= g[d][a][c] * t[(d, b)] + g[d][b][c] * t[(a, d)];
            }
            s
        })
    })
}

/// Exact parametric derivatives of the metric, `a_αβ,γ = a_α,γ·a_β + a_α·a_β,γ`.
pub fn metric_derivatives(frame: &SurfacePointFrame) -> [Mat2; 2] {
    core::array::from_fn(|c| {
        Mat2::from_fn(|a, b| frame.second[a][c].dot(&frame.tangents[b]) + frame.tangents[a].dot(&frame.second[b][c]))
    })
}

/// Tangential components `uᵅ = u·aᵅ` of a field and their parametric
/// derivatives `uᵅ,β = u,β·aᵅ + u·aᵅ,β`, with `aᵅ,β = −Γᵅ_βγ aᵞ + bᵅ_β n`.
pub fn tangential_components(frame: &SurfacePointFrame, field: &(impl SurfaceField + ?Sized), xi: &[f64; 2]) -> ([f64; 2], Mat2) {
    let u = field.value(xi);
    let du = field.gradient(xi);
    let g = &frame.christoffel;
    let comps = [u.dot(&frame.duals[0]), u.dot(&frame.duals[1])];
    let d = Mat2::from_fn(|a, b| {
        let mut dual_b = frame.normal * frame.curvature_mixed[(a, b)];
        for c in 0..2 {
            dual_b -= frame.duals[c] * g[a][b][c];
        }
        du[b].dot(&frame.duals[a]) + u.dot(&dual_b)
    });
    (comps, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Rect;
    use crate::surface::{frame, Plane};
    use crate::tensor::Configuration;

    #[test]
    fn gradient_of_first_coordinate_on_plane() {
        let f = frame(&Plane::xy(Rect::new([-1.0; 2], [1.0; 2])), &[0.2, 0.3], Configuration::Reference).unwrap();
        assert_eq!(surface_gradient_scalar(&f, &[0.0, 0.0]), Vec3::ZERO);
        assert_eq!(surface_gradient_scalar(&f, &[1.0, 0.0]), Vec3::unit(0));
    }
}
