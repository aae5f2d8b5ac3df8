use crate::error::Result;
use crate::linalg::{Mat2, Mat3, Vec3};
use crate::surface::{frame, SurfaceChart, SurfaceField};
use crate::tensor::Configuration;

/// Material rates of the mid-surface geometry for a velocity field `v(ξ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceRates {
    /// `vᵅ = v·aᵅ`
    pub v_tangential: [f64; 2],
    /// `v·n`
    pub v_normal: f64,
    /// `w_αβ = v,α·a_β`
    pub w: Mat2,
    /// `w_αᵝ = v,α·aᵝ`, stored `[α][β]`.
    pub w_mixed: Mat2,
    /// `w_α = v,α·n`
    pub w_normal: [f64; 2],
    /// `ȧ_αβ = w_αβ + w_βα`
    pub a_dot: Mat2,
    /// `ḃ_αβ = w_αγ bᵞ_β + w_α;β`
    pub b_dot: Mat2,
    /// `ṅ = −w_α aᵅ`
    pub n_dot: Vec3,
    /// `w_αβ aᵝ⊗aᵅ − n⊗ṅ + ṅ⊗n + (λ̇₃/λ₃) n⊗n`
    pub l_s: Mat3,
}

/// Rates at `xi` on `chart` moving with `velocity`.
pub fn surface_rates(
    chart: &(impl SurfaceChart + ?Sized),
    velocity: &(impl SurfaceField + ?Sized),
    xi: &[f64; 2],
    lambda3: f64,
    lambda3_dot: f64,
) -> Result<SurfaceRates> {
    let fr = frame(chart, xi, Configuration::Current)?;
    let v = velocity.value(xi);
    let dv = velocity.gradient(xi);
    let ddv = velocity.hessian(xi);
    let n = fr.normal;
    let dn = fr.normal_derivatives();
    let w = Mat2::from_fn(|a, b| dv[a].dot(&fr.tangents[b]));
    let w_mixed = Mat2::from_fn(|a, b| dv[a].dot(&fr.duals[b]));
    let w_normal = [dv[0].dot(&n), dv[1].dot(&n)];
    let g = &fr.christoffel;
    // w_α;β = v,αβ·n + v,α·n,β − Γᵞ_αβ v,γ·n
    let w_semi = Mat2::from_fn(|a, b| {
        ddv[a][b].dot(&n) + dv[a].dot(&dn[b]) - g[0][a][b] * w_normal[0] - g[1][a][b] * w_normal[1]
    });
    let b_dot = Mat2::from_fn(|a, b| {
        w[(a, 0)] * fr.curvature_mixed[(0, b)] + w[(a, 1)] * fr.curvature_mixed[(1, b)] + w_semi[(a, b)]
    });
    let n_dot = -(fr.duals[0] * w_normal[0] + fr.duals[1] * w_normal[1]);
    let mut l_s = -n.outer(&n_dot) + n_dot.outer(&n) + n.outer(&n) * (lambda3_dot / lambda3);
    for a in 0..2 {
        for b in 0..2 {
            l_s += fr.duals[b].outer(&fr.duals[a]) * w[(a, b)];
        }
    }
    Ok(SurfaceRates {
        v_tangential: [v.dot(&fr.duals[0]), v.dot(&fr.duals[1])],
        v_normal: v.dot(&n),
        w,
        w_mixed,
        w_normal,
        a_dot: w + w.transpose(),
        b_dot,
        n_dot,
        l_s,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{PolynomialSurface, Sphere};

    #[test]
    fn rigid_translation_has_no_rates() {
        let s = Sphere::new(2.0);
        let v = PolynomialSurface::constant(Vec3::new(1.0, -2.0, 0.5), s.domain);
        let r = surface_rates(&s, &v, &[1.0, 0.2], 1.0, 0.0).unwrap();
        assert_eq!(r.a_dot, Mat2::ZERO);
        assert!(r.b_dot.max_abs() < 1e-15);
        assert_eq!(r.n_dot, Vec3::ZERO);
    }
}
