use crate::domain::Cuboid;
use crate::error::Result;
use crate::linalg::{Mat3, Vec3};
use crate::math;
use crate::tensor::{build_basis, BasisTriad, Configuration};

/// Map `ξ ↦ x(ξ)` with exact first and second parametric derivatives.
pub trait VolumeChart {
    fn position(&self, xi: &[f64; 3]) -> Vec3;
    /// `x,i`
    fn tangents(&self, xi: &[f64; 3]) -> [Vec3; 3];
    /// `x,ij`, symmetric in `i, j`.
    fn second_derivatives(&self, xi: &[f64; 3]) -> [[Vec3; 3]; 3];
    fn domain(&self) -> Cuboid;

    fn basis(&self, xi: &[f64; 3], configuration: Configuration) -> Result<BasisTriad> {
        build_basis(self.tangents(xi), configuration)
    }
}

impl<T: VolumeChart + ?Sized> VolumeChart for &T {
    fn position(&self, xi: &[f64; 3]) -> Vec3 {
        (**self).position(xi)
    }
    fn tangents(&self, xi: &[f64; 3]) -> [Vec3; 3] {
        (**self).tangents(xi)
    }
    fn second_derivatives(&self, xi: &[f64; 3]) -> [[Vec3; 3]; 3] {
        (**self).second_derivatives(xi)
    }
    fn domain(&self) -> Cuboid {
        (**self).domain()
    }
}

impl<T: VolumeChart + ?Sized> VolumeChart for alloc::boxed::Box<T> {
    fn position(&self, xi: &[f64; 3]) -> Vec3 {
        (**self).position(xi)
    }
    fn tangents(&self, xi: &[f64; 3]) -> [Vec3; 3] {
        (**self).tangents(xi)
    }
    fn second_derivatives(&self, xi: &[f64; 3]) -> [[Vec3; 3]; 3] {
        (**self).second_derivatives(xi)
    }
    fn domain(&self) -> Cuboid {
        (**self).domain()
    }
}

/// `x = ξ`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CartesianChart {
    pub domain: Cuboid,
}

impl VolumeChart for CartesianChart {
    fn position(&self, xi: &[f64; 3]) -> Vec3 {
        Vec3(*xi)
    }
    fn tangents(&self, _: &[f64; 3]) -> [Vec3; 3] {
        [Vec3::unit(0), Vec3::unit(1), Vec3::unit(2)]
    }
    fn second_derivatives(&self, _: &[f64; 3]) -> [[Vec3; 3]; 3] {
        [[Vec3::ZERO; 3]; 3]
    }
    fn domain(&self) -> Cuboid {
        self.domain
    }
}

/// `x = (r cos θ, r sin θ, z)` with `ξ = (r, θ, z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CylindricalChart {
    pub domain: Cuboid,
}

impl VolumeChart for CylindricalChart {
    fn position(&self, xi: &[f64; 3]) -> Vec3 {
        let (r, t, z) = (xi[0], xi[1], xi[2]);
        Vec3::new(r * math::cos(t), r * math::sin(t), z)
    }
    fn tangents(&self, xi: &[f64; 3]) -> [Vec3; 3] {
        let (r, t) = (xi[0], xi[1]);
        let (c, s) = (math::cos(t), math::sin(t));
        [Vec3::new(c, s, 0.0), Vec3::new(-r * s, r * c, 0.0), Vec3::unit(2)]
    }
    fn second_derivatives(&self, xi: &[f64; 3]) -> [[Vec3; 3]; 3] {
        let (r, t) = (xi[0], xi[1]);
        let (c, s) = (math::cos(t), math::sin(t));
        let mut d = [[Vec3::ZERO; 3]; 3];
        d[0][1] = Vec3::new(-s, c, 0.0);
        d[1][0] = d[0][1];
        d[1][1] = Vec3::new(-r * c, -r * s, 0.0);
        d
    }
    fn domain(&self) -> Cuboid {
        self.domain
    }
}

/// Cubic polynomial map
/// `x_i = c_i + A_ij ξ_j + Q_ijk ξ_j ξ_k + K_ijkl ξ_j ξ_k ξ_l`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialChart {
    pub offset: Vec3,
    pub linear: Mat3,
    pub quadratic: [[[f64; 3]; 3]; 3],
    pub cubic: [[[[f64; 3]; 3]; 3]; 3],
    pub domain: Cuboid,
}

impl PolynomialChart {
    pub fn affine(linear: Mat3, offset: Vec3, domain: Cuboid) -> Self {
        PolynomialChart {
            offset,
            linear,
            quadratic: [[[0.0; 3]; 3]; 3],
            cubic: [[[[0.0; 3]; 3]; 3]; 3],
            domain,
        }
    }
}

impl VolumeChart for PolynomialChart {
    fn position(&self, xi: &[f64; 3]) -> Vec3 {
        let mut x = self.offset + self.linear * Vec3(*xi);
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    x[i] += self.quadratic[i][j][k] * xi[j] * xi[k];
                    for l in 0..3 {
                        x[i] += self.cubic[i][j][k][l] * xi[j] * xi[k] * xi[l];
                    }
                }
            }
        }
        x
    }

    fn tangents(&self, xi: &[f64; 3]) -> [Vec3; 3] {
        core::array::from_fn(|m| {
            let mut t = self.linear.col(m);
            for i in 0..3 {
                for a in 0..3 {
                    t[i] += (self.quadratic[i][m][a] + self.quadratic[i][a][m]) * xi[a];
                    for b in 0..3 {
                        let k = &self.cubic[i];
                        t[i] += (k[m][a][b] + k[a][m][b] + k[a][b][m]) * xi[a] * xi[b];
                    }
                }
            }
            t
        })
    }

    fn second_derivatives(&self, xi: &[f64; 3]) -> [[Vec3; 3]; 3] {
        core::array::from_fn(|m| {
            core::array::from_fn(|n| {
                let mut d = Vec3::ZERO;
                for i in 0..3 {
                    d[i] = self.quadratic[i][m][n] + self.quadratic[i][n][m];
                    let k = &self.cubic[i];
                    for a in 0..3 {
                        d[i] += (k[m][n][a] + k[m][a][n] + k[n][m][a] + k[a][m][n] + k[n][a][m] + k[a][n][m])
                            * xi[a];
                    }
                }
                d
            })
        })
    }

    fn domain(&self) -> Cuboid {
        self.domain
    }
}

/// `x = M X(ξ) + c` for an inner chart `X`.
#[derive(Debug, Clone, PartialEq)]
pub struct MappedChart<C> {
    pub inner: C,
    pub map: Mat3,
    pub offset: Vec3,
}

impl<C: VolumeChart> VolumeChart for MappedChart<C> {
    fn position(&self, xi: &[f64; 3]) -> Vec3 {
        self.map * self.inner.position(xi) + self.offset
    }
    fn tangents(&self, xi: &[f64; 3]) -> [Vec3; 3] {
        self.inner.tangents(xi).map(|t| self.map * t)
    }
    fn second_derivatives(&self, xi: &[f64; 3]) -> [[Vec3; 3]; 3] {
        self.inner.second_derivatives(xi).map(|row| row.map(|d| self.map * d))
    }
    fn domain(&self) -> Cuboid {
        self.inner.domain()
    }
}

/// Vector field on a parametric box with exact derivatives, used for
/// velocities and virtual displacements.
pub trait VolumeField {
    fn value(&self, xi: &[f64; 3]) -> Vec3;
    /// `u,i`
    fn gradient(&self, xi: &[f64; 3]) -> [Vec3; 3];
    /// `u,ij`
    fn hessian(&self, xi: &[f64; 3]) -> [[Vec3; 3]; 3];
}

impl VolumeField for PolynomialChart {
    fn value(&self, xi: &[f64; 3]) -> Vec3 {
        self.position(xi)
    }
    fn gradient(&self, xi: &[f64; 3]) -> [Vec3; 3] {
        self.tangents(xi)
    }
    fn hessian(&self, xi: &[f64; 3]) -> [[Vec3; 3]; 3] {
        self.second_derivatives(xi)
    }
}

/// Chart displaced by a field: `x(ξ) + ε u(ξ)`.
pub struct PerturbedChart<'a, C: ?Sized, U: ?Sized> {
    pub chart: &'a C,
    pub field: &'a U,
    pub epsilon: f64,
}

impl<C: VolumeChart + ?Sized, U: VolumeField + ?Sized> VolumeChart for PerturbedChart<'_, C, U> {
    fn position(&self, xi: &[f64; 3]) -> Vec3 {
        self.chart.position(xi) + self.field.value(xi) * self.epsilon
    }
    fn tangents(&self, xi: &[f64; 3]) -> [Vec3; 3] {
        let t = self.chart.tangents(xi);
        let d = self.field.gradient(xi);
        core::array::from_fn(|i| t[i] + d[i] * self.epsilon)
    }
    fn second_derivatives(&self, xi: &[f64; 3]) -> [[Vec3; 3]; 3] {
        let t = self.chart.second_derivatives(xi);
        let d = self.field.hessian(xi);
        core::array::from_fn(|i| core::array::from_fn(|j| t[i][j] + d[i][j] * self.epsilon))
    }
    fn domain(&self) -> Cuboid {
        self.chart.domain()
    }
}
