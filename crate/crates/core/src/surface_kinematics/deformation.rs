use crate::error::{Error, Result};
use crate::linalg::{Mat2, Mat3, Vec3};
use crate::surface::SurfacePointFrame;
use crate::tensor::{surface_det_with_normals, surface_projector};

/// Total surface deformation with its thermo-elastic split.
///
/// Ambient tensors are 3×3 Cartesian matrices; 2×2 quantities are
/// covariant components in the reference co-basis `Aᵅ ⊗ Aᵝ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceDeformationState {
    pub reference: SurfacePointFrame,
    pub current: SurfacePointFrame,
    /// `F_s = a_α ⊗ Aᵅ`
    pub f_s: Mat3,
    /// `F̂ = F_s + λ₃ n ⊗ N`
    pub f_hat: Mat3,
    pub lambda3: f64,
    pub lambda_t3: f64,
    pub lambda_e3: f64,
    /// Unit normal of the intermediate surface.
    pub n_t: Vec3,
    /// `F_sT = a_Tα ⊗ Aᵅ`
    pub f_st: Mat3,
    /// `F̂_T = F_sT + λ_T3 n_T ⊗ N`
    pub f_hat_t: Mat3,
    /// `F_se = a_α ⊗ a_Tᵅ`
    pub f_se: Mat3,
    /// `F̂_e = F_se + λ_e3 n ⊗ n_T`
    pub f_hat_e: Mat3,
    pub c_s: Mat3,
    pub c_st: Mat3,
    pub c_se: Mat3,
    pub c_hat: Mat3,
    pub c_hat_t: Mat3,
    pub c_hat_e: Mat3,
    /// `J_s = det_s F_s`
    pub j_s: f64,
    pub j_st: f64,
    /// `b_αβ`
    pub curvature: Mat2,
    /// `b_Tαβ`
    pub curvature_t: Mat2,
    /// `κ_αβ = b_αβ − b_Tαβ`
    pub kappa: Mat2,
}

fn dyads(a: &[Vec3; 2], b: &[Vec3; 2]) -> Mat3 {
    a[0].outer(&b[0]) + a[1].outer(&b[1])
}

/// Total deformation between two frames at the same `ξᵅ`; the thermal part
/// is the identity until [`thermo_split_surface`] is applied.
pub fn surface_deformation(reference: &SurfacePointFrame, current: &SurfacePointFrame, lambda3: f64) -> Result<SurfaceDeformationState> {
    if !(lambda3 > 0.0) {
        return Err(Error::InvalidParameter("lambda3 must be positive"));
    }
    let f_s = dyads(&current.tangents, &reference.duals);
    let n0 = reference.normal;
    let n = current.normal;
    let f_hat = f_s + n.outer(&n0) * lambda3;
    let j_s = surface_det_with_normals(&f_s, &n0, &n)?;
    if !(j_s > 0.0) {
        return Err(Error::NegativeJacobian { det: j_s });
    }
    let c_s = f_s.transpose() * f_s;
    let identity_s = surface_projector(&n0);
    let mut state = SurfaceDeformationState {
        reference: *reference,
        current: *current,
        f_s,
        f_hat,
        lambda3,
        lambda_t3: 1.0,
        lambda_e3: lambda3,
        n_t: n0,
        f_st: identity_s,
        f_hat_t: Mat3::IDENTITY,
        f_se: f_s,
        f_hat_e: f_hat,
        c_s,
        c_st: identity_s,
        c_se: c_s,
        c_hat: c_s + n0.outer(&n0) * (lambda3 * lambda3),
        c_hat_t: Mat3::IDENTITY,
        c_hat_e: Mat3::ZERO,
        j_s,
        j_st: 1.0,
        curvature: current.curvature,
        curvature_t: reference.curvature,
        kappa: current.curvature - reference.curvature,
    };
    state.c_hat_e = state.c_se + n0.outer(&n0) * (lambda3 * lambda3);
    Ok(state)
}

/// Completes the split from a thermal map `F̂_T` and the intermediate
/// covariant curvature `b_Tαβ`.
///
/// Fails with `MalformedThermalMap` when `F̂_T N` is not normal to the
/// intermediate tangents `F̂_T A_α`.
pub fn thermo_split_surface(state: &SurfaceDeformationState, f_hat_t: &Mat3, curvature_t: &Mat2) -> Result<SurfaceDeformationState> {
    let r = &state.reference;
    let n0 = r.normal;
    let a_t = [*f_hat_t * r.tangents[0], *f_hat_t * r.tangents[1]];
    let cross = a_t[0].cross(&a_t[1]);
    let area = cross.norm();
    if !(area > 0.0) {
        return Err(Error::DegenerateTangents);
    }
    let n_t = cross * (1.0 / area);
    let image = *f_hat_t * n0;
    let lambda_t3 = image.dot(&n_t);
    let in_plane_norm = (image - n_t * lambda_t3).norm();
    if in_plane_norm > 1e-12 * image.norm() || !(lambda_t3 > 0.0) {
        return Err(Error::MalformedThermalMap { in_plane_norm });
    }
    let f_st = dyads(&a_t, &r.duals);
    let metric_t = Mat2::from_fn(|a, b| a_t[a].dot(&a_t[b]));
    let metric_t_inv = metric_t.try_inverse()?;
    let duals_t = [
        a_t[0] * metric_t_inv[(0, 0)] + a_t[1] * metric_t_inv[(0, 1)],
        a_t[0] * metric_t_inv[(1, 0)] + a_t[1] * metric_t_inv[(1, 1)],
    ];
    let n = state.current.normal;
    let lambda_e3 = state.lambda3 / lambda_t3;
    let f_se = dyads(&state.current.tangents, &duals_t);
    let f_hat_e = f_se + n.outer(&n_t) * lambda_e3;
    let c_st = f_st.transpose() * f_st;
    let c_se = f_se.transpose() * f_se;
    let j_st = surface_det_with_normals(&f_st, &n0, &n_t)?;
    if !(j_st > 0.0) {
        return Err(Error::NegativeJacobian { det: j_st });
    }
    Ok(SurfaceDeformationState {
        lambda_t3,
        lambda_e3,
        n_t,
        f_st,
        f_hat_t: f_st + n_t.outer(&n0) * lambda_t3,
        f_se,
        f_hat_e,
        c_st,
        c_se,
        c_hat_t: c_st + n0.outer(&n0) * (lambda_t3 * lambda_t3),
        c_hat_e: c_se + n_t.outer(&n_t) * (lambda_e3 * lambda_e3),
        j_st,
        curvature_t: *curvature_t,
        kappa: state.curvature - *curvature_t,
        ..*state
    })
}

/// Convenience wrapper taking the intermediate frame of a chart-backed
/// intermediate surface.
pub fn split_with_intermediate(
    state: &SurfaceDeformationState,
    intermediate: &SurfacePointFrame,
    lambda_t3: f64,
) -> Result<SurfaceDeformationState> {
    let r = &state.reference;
    let f_hat_t = dyads(&intermediate.tangents, &r.duals) + intermediate.normal.outer(&r.normal) * lambda_t3;
    thermo_split_surface(state, &f_hat_t, &intermediate.curvature)
}

/// `κ = F_sᵀ b F_s − F_sTᵀ b_T F_sT`, returned as components in `Aᵅ ⊗ Aᵝ`.
pub fn curvature_change(
    reference: &SurfacePointFrame,
    current: &SurfacePointFrame,
    intermediate: &SurfacePointFrame,
    f_s: &Mat3,
    f_st: &Mat3,
) -> Mat2 {
    let b = current.assemble_co(&current.curvature);
    let b_t = intermediate.assemble_co(&intermediate.curvature);
    let kappa = f_s.transpose() * b * *f_s - f_st.transpose() * b_t * *f_st;
    reference.co_components(&kappa)
}

/// Intermediate curvature from the derivatives of `F_sT = Φ I` for a
/// uniform ambient expansion map `Φ`:
/// `b_Tαβ = (F_sT,β A_α + F_sT A_α,β) · n_T` with `I,β = −(N,β ⊗ N + N ⊗ N,β)`.
pub fn intermediate_curvature_from_map(reference: &SurfacePointFrame, phi: &Mat3, n_t: &Vec3) -> Mat2 {
    let n0 = reference.normal;
    let dn = reference.normal_derivatives();
    let identity = surface_projector(&n0);
    Mat2::from_fn(|a, b| {
        let d_identity = -(dn[b].outer(&n0) + n0.outer(&dn[b]));
        let d_a = *phi * d_identity * reference.tangents[a] + *phi * identity * reference.second[a][b];
        d_a.dot(n_t)
    })
}

impl SurfaceDeformationState {
    /// `‖F̂ − F̂_e F̂_T‖`
    pub fn split_defect(&self) -> f64 {
        (self.f_hat - self.f_hat_e * self.f_hat_t).max_abs()
    }

    /// `‖Ĉ − F̂_Tᵀ Ĉ_e F̂_T‖`
    pub fn cauchy_green_defect(&self) -> f64 {
        (self.c_hat - self.f_hat_t.transpose() * self.c_hat_e * self.f_hat_t).max_abs()
    }

    /// `C_se` components in the intermediate co-basis, `a_αβ` seen from
    /// `a_Tᵅ`: equal to `(F_sT⁻ᵀ C_s F_sT⁻¹)` restricted to the plane.
    pub fn elastic_metric_components(&self) -> Mat2 {
        let a_t = [self.f_st * self.reference.tangents[0], self.f_st * self.reference.tangents[1]];
        Mat2::from_fn(|a, b| a_t[a].dot(&(self.c_se * a_t[b])))
    }

    /// Intermediate tangents `a_Tα = F_sT A_α`.
    pub fn intermediate_tangents(&self) -> [Vec3; 2] {
        [self.f_st * self.reference.tangents[0], self.f_st * self.reference.tangents[1]]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{frame, MappedSurface, Sphere};
    use crate::tensor::Configuration::{Current, Intermediate, Reference};

    #[test]
    fn identical_frames() {
        let f = frame(&Sphere::new(2.0), &[1.0, 0.3], Reference).unwrap();
        let s = surface_deformation(&f, &f, 1.0).unwrap();
        assert!((s.f_hat - Mat3::IDENTITY).max_abs() < 1e-15);
        assert!((s.j_s - 1.0).abs() < 1e-14);
        assert_eq!(s.kappa, Mat2::ZERO);
    }

    #[test]
    fn in_plane_stretch() {
        let sphere = Sphere::new(2.0);
        let big = MappedSurface {
            inner: sphere,
            map: Mat3::IDENTITY * 3.0,
            offset: Vec3::ZERO,
        };
        let r = frame(&sphere, &[1.0, 0.3], Reference).unwrap();
        let c = frame(&big, &[1.0, 0.3], Current).unwrap();
        let s = surface_deformation(&r, &c, 1.0).unwrap();
        assert!((s.j_s - 9.0).abs() < 1e-12);
    }

    #[test]
    fn thermal_scaling_leaves_no_elastic_strain() {
        let sphere = Sphere::new(2.0);
        let beta = 1.05;
        let grown = MappedSurface {
            inner: sphere,
            map: Mat3::IDENTITY * beta,
            offset: Vec3::ZERO,
        };
        let xi = [0.9, -0.4];
        let r = frame(&sphere, &xi, Reference).unwrap();
        let c = frame(&grown, &xi, Current).unwrap();
        let i = frame(&grown, &xi, Intermediate).unwrap();
        let s = surface_deformation(&r, &c, 1.0).unwrap();
        let s = split_with_intermediate(&s, &i, 1.0).unwrap();
        let p = surface_projector(&s.n_t);
        assert!((s.c_se - p).max_abs() < 1e-12);
        assert!(s.kappa.max_abs() < 1e-12);
        assert!(s.split_defect() < 1e-12);
    }

    #[test]
    fn tilted_normal_image_is_rejected() {
        let f = frame(&Sphere::new(2.0), &[1.0, 0.3], Reference).unwrap();
        let s = surface_deformation(&f, &f, 1.0).unwrap();
        let shear = Mat3::IDENTITY + f.tangents[0].outer(&f.normal) * 0.1;
        assert!(matches!(
            thermo_split_surface(&s, &shear, &f.curvature),
            Err(Error::MalformedThermalMap { .. })
        ));
    }
}
