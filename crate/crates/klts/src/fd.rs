//! Finite-difference oracles.

use std::ops::{Add, Mul, Sub};

use klts_core::domain::ParamBox;
use klts_core::surface::SurfaceChart;
use klts_core::Vec3;

pub trait Linear: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {}
impl<T: Copy + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T>> Linear for T {}

/// `(f(h) − f(−h)) / 2h`
pub fn central<T: Linear>(f: impl Fn(f64) -> T, h: f64) -> T {
    (f(h) - f(-h)) * (0.5 / h)
}

/// Fourth-order first derivative at `0`.
pub fn central4<T: Linear>(f: impl Fn(f64) -> T, h: f64) -> T {
    (f(-2.0 * h) - f(2.0 * h) + (f(h) - f(-h)) * 8.0) * (1.0 / (12.0 * h))
}

/// Sixth-order first derivative at `0`.
pub fn central6<T: Linear>(f: impl Fn(f64) -> T, h: f64) -> T {
    let one = f(h) - f(-h);
    let two = f(2.0 * h) - f(-2.0 * h);
    let three = f(3.0 * h) - f(-3.0 * h);
    (one * 45.0 - two * 9.0 + three) * (1.0 / (60.0 * h))
}

/// [`central4`] for fallible evaluations.
pub fn try_central4<T: Linear, E>(f: impl Fn(f64) -> Result<T, E>, h: f64) -> Result<T, E> {
    let (m2, m1, p1, p2) = (f(-2.0 * h)?, f(-h)?, f(h)?, f(2.0 * h)?);
    Ok((m2 - p2 + (p1 - m1) * 8.0) * (1.0 / (12.0 * h)))
}

/// [`central6`] for fallible evaluations.
pub fn try_central6<T: Linear, E>(f: impl Fn(f64) -> Result<T, E>, h: f64) -> Result<T, E> {
    let one = f(h)? - f(-h)?;
    let two = f(2.0 * h)? - f(-2.0 * h)?;
    let three = f(3.0 * h)? - f(-3.0 * h)?;
    Ok((one * 45.0 - two * 9.0 + three) * (1.0 / (60.0 * h)))
}

/// Fourth-order second derivative at `0`.
pub fn second4<T: Linear>(f: impl Fn(f64) -> T, h: f64) -> T {
    let edge = f(2.0 * h) + f(-2.0 * h);
    let near = f(h) + f(-h);
    (near * 16.0 - edge - f(0.0) * 30.0) * (1.0 / (12.0 * h * h))
}

pub fn shifted<const N: usize>(xi: &[f64; N], axis: usize, by: f64) -> [f64; N] {
    let mut p = *xi;
    p[axis] += by;
    p
}

/// Surface chart whose derivatives come from 4th-order stencils of the
/// wrapped chart's positions only.
pub struct FdSurface<C> {
    pub chart: C,
    pub step: f64,
}

impl<C: SurfaceChart> SurfaceChart for FdSurface<C> {
    fn position(&self, xi: &[f64; 2]) -> Vec3 {
        self.chart.position(xi)
    }
    fn tangents(&self, xi: &[f64; 2]) -> [Vec3; 2] {
        std::array::from_fn(|a| central4(|e| self.chart.position(&shifted(xi, a, e)), self.step))
    }
    fn second_derivatives(&self, xi: &[f64; 2]) -> [[Vec3; 2]; 2] {
        let h = self.step;
        let pure = |a: usize| second4(|e| self.chart.position(&shifted(xi, a, e)), h);
        let mixed = central4(
            |e| central4(|f| self.chart.position(&shifted(&shifted(xi, 0, f), 1, e)), h),
            h,
        );
        [[pure(0), mixed], [mixed, pure(1)]]
    }
    fn domain(&self) -> ParamBox<2> {
        self.chart.domain()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stencils_are_exact_on_quartics() {
        let f = |x: f64| 1.0 + 2.0 * x - x * x + 0.5 * x.powi(3) + 0.25 * x.powi(4);
        let at = |x0: f64| move |e: f64| f(x0 + e);
        let d = central4(at(0.3), 0.1);
        assert!((d - (2.0 - 0.6 + 1.5 * 0.09 + 0.027)).abs() < 1e-13);
        let d6 = central6(|e: f64| (0.3 + e).powi(6), 0.1);
        assert!((d6 - 6.0 * 0.3f64.powi(5)).abs() < 1e-13);
        let dd = second4(at(0.3), 0.1);
        assert!((dd - (-2.0 + 3.0 * 0.3 + 3.0 * 0.09)).abs() < 1e-11);
        assert!((central(|e| 3.0 * e, 0.5) - 3.0).abs() < 1e-15);
    }
}
