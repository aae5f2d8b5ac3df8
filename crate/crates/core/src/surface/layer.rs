use super::SurfacePointFrame;
use crate::error::{Error, Result};
use crate::linalg::{Mat2, Vec3};

/// Geometry of the shell layer at thickness coordinate `ξ`, with
/// `x̂ = x + ξ λ₃ n` and gradients of `λ₃` neglected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShellLayerFrame {
    pub xi: f64,
    pub lambda3: f64,
    /// `ĝ_α = a_α − ξ λ₃ bᵞ_α a_γ`
    pub tangents: [Vec3; 2],
    /// `ĝ_α · ĝ_β`
    pub metric_exact: Mat2,
    /// `a_αβ − 2 ξ λ₃ b_αβ`
    pub metric_first_order: Mat2,
}

impl ShellLayerFrame {
    /// `‖ĝ_αβ − (a_αβ − 2ξλ₃ b_αβ)‖`, which is `O(ξ²)`.
    pub fn first_order_defect(&self) -> f64 {
        (self.metric_exact - self.metric_first_order).norm()
    }
}

pub fn layer_frame(mid: &SurfacePointFrame, xi: f64, lambda3: f64) -> Result<ShellLayerFrame> {
    if !(lambda3 > 0.0) || !xi.is_finite() {
        return Err(Error::InvalidParameter("layer requires finite xi and lambda3 > 0"));
    }
    let s = xi * lambda3;
    let tangents = core::array::from_fn(|a| {
        mid.tangents[a] - (mid.tangents[0] * mid.curvature_mixed[(0, a)] + mid.tangents[1] * mid.curvature_mixed[(1, a)]) * s
    });
    let metric_exact = Mat2::from_fn(|a, b| tangents[a].dot(&tangents[b]));
    Ok(ShellLayerFrame {
        xi,
        lambda3,
        tangents,
        metric_exact,
        metric_first_order: mid.metric - mid.curvature * (2.0 * s),
    })
}

/// Current thickness `t = λ₃ t₀`.
pub fn layer_thickness(t0: f64, lambda3: f64) -> f64 {
    lambda3 * t0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Rect;
    use crate::surface::{frame, Plane, Sphere};
    use crate::tensor::Configuration;

    #[test]
    fn mid_layer_is_mid_surface() {
        let f = frame(&Sphere::new(2.0), &[1.0, 0.5], Configuration::Reference).unwrap();
        let l = layer_frame(&f, 0.0, 1.0).unwrap();
        assert_eq!(l.tangents, f.tangents);
        assert_eq!(l.metric_first_order, f.metric);
    }

    #[test]
    fn plane_layers_share_the_metric() {
        let f = frame(&Plane::xy(Rect::new([-1.0; 2], [1.0; 2])), &[0.0, 0.0], Configuration::Reference).unwrap();
        let l = layer_frame(&f, 0.05, 1.2).unwrap();
        assert_eq!(l.metric_exact, f.metric);
    }

    #[test]
    fn first_order_metric_defect_is_quadratic() {
        let f = frame(&Sphere::new(2.0), &[1.0, 0.5], Configuration::Reference).unwrap();
        let d1 = layer_frame(&f, 0.01, 1.0).unwrap().first_order_defect();
        let d2 = layer_frame(&f, 0.005, 1.0).unwrap().first_order_defect();
        let ratio = d1 / d2;
        assert!((3.5..=4.5).contains(&ratio), "ratio {ratio}");
    }
}
