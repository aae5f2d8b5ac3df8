use crate::linalg::{Mat2, Vec3};
use crate::surface::{SurfaceChart, SurfaceField, SurfacePointFrame};
use crate::volume::{VolumeChart, VolumeField};

/// Scalar field on a parametric domain with its parametric gradient.
pub trait ScalarField<const N: usize> {
    fn value(&self, xi: &[f64; N]) -> f64;
    fn gradient(&self, xi: &[f64; N]) -> [f64; N];
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantScalar(pub f64);

impl<const N: usize> ScalarField<N> for ConstantScalar {
    fn value(&self, _: &[f64; N]) -> f64 {
        self.0
    }
    fn gradient(&self, _: &[f64; N]) -> [f64; N] {
        [0.0; N]
    }
}

/// Scalar field from a pair of closures.
pub struct FnScalar<F, G> {
    pub value: F,
    pub gradient: G,
}

impl<const N: usize, F, G> ScalarField<N> for FnScalar<F, G>
where
    F: Fn(&[f64; N]) -> f64,
    G: Fn(&[f64; N]) -> [f64; N],
{
    fn value(&self, xi: &[f64; N]) -> f64 {
        (self.value)(xi)
    }
    fn gradient(&self, xi: &[f64; N]) -> [f64; N] {
        (self.gradient)(xi)
    }
}

/// `c + g · x(ξ)` for a chart `x`, a field that is affine in space.
pub struct AffineInSpace<'a, C: ?Sized> {
    pub chart: &'a C,
    pub constant: f64,
    pub slope: Vec3,
}

impl<C: VolumeChart + ?Sized> ScalarField<3> for AffineInSpace<'_, C> {
    fn value(&self, xi: &[f64; 3]) -> f64 {
        self.constant + self.slope.dot(&self.chart.position(xi))
    }
    fn gradient(&self, xi: &[f64; 3]) -> [f64; 3] {
        self.chart.tangents(xi).map(|g| self.slope.dot(&g))
    }
}

impl<C: SurfaceChart + ?Sized> ScalarField<2> for AffineInSpace<'_, C> {
    fn value(&self, xi: &[f64; 2]) -> f64 {
        self.constant + self.slope.dot(&self.chart.position(xi))
    }
    fn gradient(&self, xi: &[f64; 2]) -> [f64; 2] {
        self.chart.tangents(xi).map(|g| self.slope.dot(&g))
    }
}

/// Uniform translation `δx = c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Translation(pub Vec3);

impl VolumeField for Translation {
    fn value(&self, _: &[f64; 3]) -> Vec3 {
        self.0
    }
    fn gradient(&self, _: &[f64; 3]) -> [Vec3; 3] {
        [Vec3::ZERO; 3]
    }
    fn hessian(&self, _: &[f64; 3]) -> [[Vec3; 3]; 3] {
        [[Vec3::ZERO; 3]; 3]
    }
}

impl SurfaceField for Translation {
    fn value(&self, _: &[f64; 2]) -> Vec3 {
        self.0
    }
    fn gradient(&self, _: &[f64; 2]) -> [Vec3; 2] {
        [Vec3::ZERO; 2]
    }
    fn hessian(&self, _: &[f64; 2]) -> [[Vec3; 2]; 2] {
        [[Vec3::ZERO; 2]; 2]
    }
}

/// Infinitesimal rigid rotation `δx = ω × x(ξ)` about the origin.
pub struct Rotation<'a, C: ?Sized> {
    pub chart: &'a C,
    pub omega: Vec3,
}

impl<C: VolumeChart + ?Sized> VolumeField for Rotation<'_, C> {
    fn value(&self, xi: &[f64; 3]) -> Vec3 {
        self.omega.cross(&self.chart.position(xi))
    }
    fn gradient(&self, xi: &[f64; 3]) -> [Vec3; 3] {
        self.chart.tangents(xi).map(|g| self.omega.cross(&g))
    }
    fn hessian(&self, xi: &[f64; 3]) -> [[Vec3; 3]; 3] {
        self.chart.second_derivatives(xi).map(|r| r.map(|d| self.omega.cross(&d)))
    }
}

impl<C: SurfaceChart + ?Sized> SurfaceField for Rotation<'_, C> {
    fn value(&self, xi: &[f64; 2]) -> Vec3 {
        self.omega.cross(&self.chart.position(xi))
    }
    fn gradient(&self, xi: &[f64; 2]) -> [Vec3; 2] {
        self.chart.tangents(xi).map(|g| self.omega.cross(&g))
    }
    fn hessian(&self, xi: &[f64; 2]) -> [[Vec3; 2]; 2] {
        self.chart.second_derivatives(xi).map(|r| r.map(|d| self.omega.cross(&d)))
    }
}

/// Variation of the surface objects induced by `δx` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShellVariation {
    pub delta_x: Vec3,
    /// `δa_α = δx,α`
    pub delta_tangents: [Vec3; 2],
    /// `δn = −(n · δa_α) aᵅ`
    pub delta_normal: Vec3,
    /// `δa_αβ = δa_α · a_β + a_α · δa_β`, the components of `δC`.
    pub delta_metric: Mat2,
    /// `δb_αβ = (δx,αβ − Γᵞ_αβ δx,γ) · n`, the components of `δb^♭◁`.
    pub delta_curvature: Mat2,
}

/// Variations of `C` and `b^♭◁` from a test field on the current surface.
pub fn shell_variations(frame: &SurfacePointFrame, field: &(impl SurfaceField + ?Sized), xi: &[f64; 2]) -> ShellVariation {
    let d = field.gradient(xi);
    let dd = field.hessian(xi);
    let n = frame.normal;
    let a = &frame.tangents;
    let g = &frame.christoffel;
    let delta_normal = -(frame.duals[0] * n.dot(&d[0]) + frame.duals[1] * n.dot(&d[1]));
    ShellVariation {
        delta_x: field.value(xi),
        delta_tangents: d,
        delta_normal,
        delta_metric: Mat2::from_fn(|i, j| d[i].dot(&a[j]) + a[i].dot(&d[j])),
        delta_curvature: Mat2::from_fn(|i, j| (dd[i][j] - d[0] * g[0][i][j] - d[1] * g[1][i][j]).dot(&n)),
    }
}
