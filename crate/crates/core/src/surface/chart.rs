use alloc::vec::Vec;

use crate::domain::Rect;
use crate::linalg::{Mat3, Vec3};
use crate::math;

/// Map `ξᵅ ↦ x(ξᵅ)` with exact first and second parametric derivatives.
pub trait SurfaceChart {
    fn position(&self, xi: &[f64; 2]) -> Vec3;
    /// `a_α = x,α`
    fn tangents(&self, xi: &[f64; 2]) -> [Vec3; 2];
    /// `a_α,β`, symmetric in `α, β`.
    fn second_derivatives(&self, xi: &[f64; 2]) -> [[Vec3; 2]; 2];
    fn domain(&self) -> Rect;
}

impl<T: SurfaceChart + ?Sized> SurfaceChart for &T {
    fn position(&self, xi: &[f64; 2]) -> Vec3 {
        (**self).position(xi)
    }
    fn tangents(&self, xi: &[f64; 2]) -> [Vec3; 2] {
        (**self).tangents(xi)
    }
    fn second_derivatives(&self, xi: &[f64; 2]) -> [[Vec3; 2]; 2] {
        (**self).second_derivatives(xi)
    }
    fn domain(&self) -> Rect {
        (**self).domain()
    }
}

impl<T: SurfaceChart + ?Sized> SurfaceChart for alloc::boxed::Box<T> {
    fn position(&self, xi: &[f64; 2]) -> Vec3 {
        (**self).position(xi)
    }
    fn tangents(&self, xi: &[f64; 2]) -> [Vec3; 2] {
        (**self).tangents(xi)
    }
    fn second_derivatives(&self, xi: &[f64; 2]) -> [[Vec3; 2]; 2] {
        (**self).second_derivatives(xi)
    }
    fn domain(&self) -> Rect {
        (**self).domain()
    }
}

/// `x = o + ξ¹ u + ξ² v`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Plane {
    pub origin: Vec3,
    pub u: Vec3,
    pub v: Vec3,
    pub domain: Rect,
}

impl Plane {
    /// The `x-y` plane with `x = (ξ¹, ξ², 0)`.
    pub fn xy(domain: Rect) -> Self {
        Plane {
            origin: Vec3::ZERO,
            u: Vec3::unit(0),
            v: Vec3::unit(1),
            domain,
        }
    }
}

impl SurfaceChart for Plane {
    fn position(&self, xi: &[f64; 2]) -> Vec3 {
        self.origin + self.u * xi[0] + self.v * xi[1]
    }
    fn tangents(&self, _: &[f64; 2]) -> [Vec3; 2] {
        [self.u, self.v]
    }
    fn second_derivatives(&self, _: &[f64; 2]) -> [[Vec3; 2]; 2] {
        [[Vec3::ZERO; 2]; 2]
    }
    fn domain(&self) -> Rect {
        self.domain
    }
}

/// `x = (R cos ξ¹, R sin ξ¹, ξ²)`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cylinder {
    pub radius: f64,
    pub domain: Rect,
}

impl SurfaceChart for Cylinder {
    fn position(&self, xi: &[f64; 2]) -> Vec3 {
        Vec3::new(self.radius * math::cos(xi[0]), self.radius * math::sin(xi[0]), xi[1])
    }
    fn tangents(&self, xi: &[f64; 2]) -> [Vec3; 2] {
        let (c, s) = (math::cos(xi[0]), math::sin(xi[0]));
        [Vec3::new(-self.radius * s, self.radius * c, 0.0), Vec3::unit(2)]
    }
    fn second_derivatives(&self, xi: &[f64; 2]) -> [[Vec3; 2]; 2] {
        let (c, s) = (math::cos(xi[0]), math::sin(xi[0]));
        let mut d = [[Vec3::ZERO; 2]; 2];
        d[0][0] = Vec3::new(-self.radius * c, -self.radius * s, 0.0);
        d
    }
    fn domain(&self) -> Rect {
        self.domain
    }
}

/// `x = R (sin θ cos φ, sin θ sin φ, cos θ)` with `ξ = (θ, φ)`; the normal
/// `a₁×a₂` points outward.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sphere {
    pub radius: f64,
    pub domain: Rect,
}

impl Sphere {
    /// Chart covering the sphere away from its poles.
    pub fn new(radius: f64) -> Self {
        Sphere {
            radius,
            domain: Rect::new([0.2, -3.0], [core::f64::consts::PI - 0.2, 3.0]),
        }
    }
}

impl SurfaceChart for Sphere {
    fn position(&self, xi: &[f64; 2]) -> Vec3 {
        let (st, ct) = (math::sin(xi[0]), math::cos(xi[0]));
        let (sp, cp) = (math::sin(xi[1]), math::cos(xi[1]));
        Vec3::new(st * cp, st * sp, ct) * self.radius
    }
    fn tangents(&self, xi: &[f64; 2]) -> [Vec3; 2] {
        let (st, ct) = (math::sin(xi[0]), math::cos(xi[0]));
        let (sp, cp) = (math::sin(xi[1]), math::cos(xi[1]));
        [
            Vec3::new(ct * cp, ct * sp, -st) * self.radius,
            Vec3::new(-st * sp, st * cp, 0.0) * self.radius,
        ]
    }
    fn second_derivatives(&self, xi: &[f64; 2]) -> [[Vec3; 2]; 2] {
        let (st, ct) = (math::sin(xi[0]), math::cos(xi[0]));
        let (sp, cp) = (math::sin(xi[1]), math::cos(xi[1]));
        let r = self.radius;
        let tt = Vec3::new(-st * cp, -st * sp, -ct) * r;
        let tp = Vec3::new(-ct * sp, ct * cp, 0.0) * r;
        let pp = Vec3::new(-st * cp, -st * sp, 0.0) * r;
        [[tt, tp], [tp, pp]]
    }
    fn domain(&self) -> Rect {
        self.domain
    }
}

/// `x = ((R + r cos v) cos u, (R + r cos v) sin u, r sin v)` with `ξ = (u, v)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Torus {
    pub major: f64,
    pub minor: f64,
    pub domain: Rect,
}

impl SurfaceChart for Torus {
    fn position(&self, xi: &[f64; 2]) -> Vec3 {
        let (su, cu) = (math::sin(xi[0]), math::cos(xi[0]));
        let (sv, cv) = (math::sin(xi[1]), math::cos(xi[1]));
        let rho = self.major + self.minor * cv;
        Vec3::new(rho * cu, rho * su, self.minor * sv)
    }
    fn tangents(&self, xi: &[f64; 2]) -> [Vec3; 2] {
        let (su, cu) = (math::sin(xi[0]), math::cos(xi[0]));
        let (sv, cv) = (math::sin(xi[1]), math::cos(xi[1]));
        let rho = self.major + self.minor * cv;
        let r = self.minor;
        [
            Vec3::new(-rho * su, rho * cu, 0.0),
            Vec3::new(-r * sv * cu, -r * sv * su, r * cv),
        ]
    }
    fn second_derivatives(&self, xi: &[f64; 2]) -> [[Vec3; 2]; 2] {
        let (su, cu) = (math::sin(xi[0]), math::cos(xi[0]));
        let (sv, cv) = (math::sin(xi[1]), math::cos(xi[1]));
        let rho = self.major + self.minor * cv;
        let r = self.minor;
        let uu = Vec3::new(-rho * cu, -rho * su, 0.0);
        let uv = Vec3::new(r * sv * su, -r * sv * cu, 0.0);
        let vv = Vec3::new(-r * cv * cu, -r * cv * su, -r * sv);
        [[uu, uv], [uv, vv]]
    }
    fn domain(&self) -> Rect {
        self.domain
    }
}

/// Height field `x = (ξ¹, ξ², Σ c_pq (ξ¹)^p (ξ²)^q)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MongePatch {
    /// Terms `(p, q, c_pq)`.
    pub terms: Vec<(u32, u32, f64)>,
    pub domain: Rect,
}

/// `d^k/dx^k x^p`
fn monomial(x: f64, p: u32, k: u32) -> f64 {
    if k > p {
        return 0.0;
    }
    let mut coeff = 1.0;
    for i in 0..k {
        coeff *= (p - i) as f64;
    }
    let mut v = 1.0;
    for _ in 0..(p - k) {
        v *= x;
    }
    coeff * v
}

impl MongePatch {
    /// `∂^{i+j} h / ∂x^i ∂y^j`
    fn height(&self, xi: &[f64; 2], i: u32, j: u32) -> f64 {
        self.terms
            .iter()
            .map(|&(p, q, c)| c * monomial(xi[0], p, i) * monomial(xi[1], q, j))
            .sum()
    }
}

impl SurfaceChart for MongePatch {
    fn position(&self, xi: &[f64; 2]) -> Vec3 {
        Vec3::new(xi[0], xi[1], self.height(xi, 0, 0))
    }
    fn tangents(&self, xi: &[f64; 2]) -> [Vec3; 2] {
        [
            Vec3::new(1.0, 0.0, self.height(xi, 1, 0)),
            Vec3::new(0.0, 1.0, self.height(xi, 0, 1)),
        ]
    }
    fn second_derivatives(&self, xi: &[f64; 2]) -> [[Vec3; 2]; 2] {
        let xy = Vec3::new(0.0, 0.0, self.height(xi, 1, 1));
        [
            [Vec3::new(0.0, 0.0, self.height(xi, 2, 0)), xy],
            [xy, Vec3::new(0.0, 0.0, self.height(xi, 0, 2))],
        ]
    }
    fn domain(&self) -> Rect {
        self.domain
    }
}

/// Cubic vector polynomial
/// `x = c + A_α ξᵅ + Q_αβ ξᵅ ξᵝ + K_αβγ ξᵅ ξᵝ ξᵞ`; doubles as a
/// [`SurfaceField`].
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialSurface {
    pub offset: Vec3,
    pub linear: [Vec3; 2],
    pub quadratic: [[Vec3; 2]; 2],
    pub cubic: [[[Vec3; 2]; 2]; 2],
    pub domain: Rect,
}

impl PolynomialSurface {
    pub fn constant(value: Vec3, domain: Rect) -> Self {
        PolynomialSurface {
            offset: value,
            linear: [Vec3::ZERO; 2],
            quadratic: [[Vec3::ZERO; 2]; 2],
            cubic: [[[Vec3::ZERO; 2]; 2]; 2],
            domain,
        }
    }
}

impl SurfaceChart for PolynomialSurface {
    fn position(&self, xi: &[f64; 2]) -> Vec3 {
        let mut x = self.offset;
        for a in 0..2 {
            x += self.linear[a] * xi[a];
            for b in 0..2 {
                x += self.quadratic[a][b] * (xi[a] * xi[b]);
                for c in 0..2 {
                    x += self.cubic[a][b][c] * (xi[a] * xi[b] * xi[c]);
                }
            }
        }
        x
    }
    fn tangents(&self, xi: &[f64; 2]) -> [Vec3; 2] {
        core::array::from_fn(|m| {
            let mut t = self.linear[m];
            for a in 0..2 {
                t += (self.quadratic[m][a] + self.quadratic[a][m]) * xi[a];
                for b in 0..2 {
                    let k = &self.cubic;
                    t += (k[m][a][b] + k[a][m][b] + k[a][b][m]) * (xi[a] * xi[b]);
                }
            }
            t
        })
    }
    fn second_derivatives(&self, xi: &[f64; 2]) -> [[Vec3; 2]; 2] {
        core::array::from_fn(|m| {
            core::array::from_fn(|n| {
                let k = &self.cubic;
                let mut d = self.quadratic[m][n] + self.quadratic[n][m];
                for a in 0..2 {
                    d += (k[m][n][a] + k[m][a][n] + k[n][m][a] + k[a][m][n] + k[n][a][m] + k[a][n][m]) * xi[a];
                }
                d
            })
        })
    }
    fn domain(&self) -> Rect {
        self.domain
    }
}

/// `x = M X(ξ) + c`
#[derive(Debug, Clone, PartialEq)]
pub struct MappedSurface<C> {
    pub inner: C,
    pub map: Mat3,
    pub offset: Vec3,
}

impl<C: SurfaceChart> SurfaceChart for MappedSurface<C> {
    fn position(&self, xi: &[f64; 2]) -> Vec3 {
        self.map * self.inner.position(xi) + self.offset
    }
    fn tangents(&self, xi: &[f64; 2]) -> [Vec3; 2] {
        self.inner.tangents(xi).map(|t| self.map * t)
    }
    fn second_derivatives(&self, xi: &[f64; 2]) -> [[Vec3; 2]; 2] {
        self.inner.second_derivatives(xi).map(|r| r.map(|d| self.map * d))
    }
    fn domain(&self) -> Rect {
        self.inner.domain()
    }
}

/// Ambient vector field over a surface parameter domain with exact
/// derivatives (velocities, virtual displacements).
pub trait SurfaceField {
    fn value(&self, xi: &[f64; 2]) -> Vec3;
    fn gradient(&self, xi: &[f64; 2]) -> [Vec3; 2];
    fn hessian(&self, xi: &[f64; 2]) -> [[Vec3; 2]; 2];
}

impl SurfaceField for PolynomialSurface {
    fn value(&self, xi: &[f64; 2]) -> Vec3 {
        self.position(xi)
    }
    fn gradient(&self, xi: &[f64; 2]) -> [Vec3; 2] {
        self.tangents(xi)
    }
    fn hessian(&self, xi: &[f64; 2]) -> [[Vec3; 2]; 2] {
        self.second_derivatives(xi)
    }
}

/// `v = s·x(ξ)`; on a sphere centred at the origin this is a uniform normal
/// velocity `s R n`.
pub struct PositionField<'a, C: ?Sized> {
    pub chart: &'a C,
    pub scale: f64,
}

impl<C: SurfaceChart + ?Sized> SurfaceField for PositionField<'_, C> {
    fn value(&self, xi: &[f64; 2]) -> Vec3 {
        self.chart.position(xi) * self.scale
    }
    fn gradient(&self, xi: &[f64; 2]) -> [Vec3; 2] {
        self.chart.tangents(xi).map(|t| t * self.scale)
    }
    fn hessian(&self, xi: &[f64; 2]) -> [[Vec3; 2]; 2] {
        self.chart.second_derivatives(xi).map(|r| r.map(|d| d * self.scale))
    }
}

/// Chart displaced by a field: `x(ξ) + ε u(ξ)`.
pub struct PerturbedSurface<'a, C: ?Sized, U: ?Sized> {
    pub chart: &'a C,
    pub field: &'a U,
    pub epsilon: f64,
}

impl<C: SurfaceChart + ?Sized, U: SurfaceField + ?Sized> SurfaceChart for PerturbedSurface<'_, C, U> {
    fn position(&self, xi: &[f64; 2]) -> Vec3 {
        self.chart.position(xi) + self.field.value(xi) * self.epsilon
    }
    fn tangents(&self, xi: &[f64; 2]) -> [Vec3; 2] {
        let (t, d) = (self.chart.tangents(xi), self.field.gradient(xi));
        core::array::from_fn(|a| t[a] + d[a] * self.epsilon)
    }
    fn second_derivatives(&self, xi: &[f64; 2]) -> [[Vec3; 2]; 2] {
        let (t, d) = (self.chart.second_derivatives(xi), self.field.hessian(xi));
        core::array::from_fn(|a| core::array::from_fn(|b| t[a][b] + d[a][b] * self.epsilon))
    }
    fn domain(&self) -> Rect {
        self.chart.domain()
    }
}
