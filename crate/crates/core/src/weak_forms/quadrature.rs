use alloc::vec::Vec;

use crate::domain::ParamBox;
use crate::error::{Error, Result};
use crate::math;

pub const DEFAULT_ORDER: usize = 8;
pub const MAX_ORDER: usize = 64;

/// Gauss-Legendre nodes and weights on `[-1, 1]`; `n` points integrate
/// polynomials of degree `2n − 1` exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_ORDER {
            return Err(Error::InvalidParameter("quadrature order must lie in 1..=64"));
        }
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        let nf = n as f64;
        for i in 0..n {
            let mut x = math::cos(core::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5));
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if math::abs(dx) <= 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            dp = if d != 0.0 { d } else { dp };
            nodes.push(x);
            weights.push(2.0 / ((1.0 - x * x) * dp * dp));
        }
        // ascending nodes
        nodes.reverse();
        weights.reverse();
        Ok(GaussLegendre { nodes, weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes and weights mapped to `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes.iter().zip(&self.weights).map(move |(x, w)| (mid + half * x, half * w))
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let d = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, d)
}

/// Deterministic pairwise summation.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        n if n <= 8 => values.iter().sum(),
        n => {
            let (a, b) = values.split_at(n / 2);
            pairwise_sum(a) + pairwise_sum(b)
        }
    }
}

/// Tensor-product Gauss-Legendre rule on a parametric box.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule<const N: usize> {
    pub points: Vec<[f64; N]>,
    pub weights: Vec<f64>,
    pub domain: ParamBox<N>,
    /// Points per axis.
    pub order: usize,
    line: GaussLegendre,
}

impl<const N: usize> QuadratureRule<N> {
    pub fn gauss(domain: ParamBox<N>, order: usize) -> Result<Self> {
        if (0..N).any(|i| !(domain.extent(i) > 0.0)) {
            return Err(Error::InvalidParameter("quadrature domain must have positive extent"));
        }
        let line = GaussLegendre::new(order)?;
        let (points, weights) = tensor_points(&line, &domain, None);
        Ok(QuadratureRule {
            points,
            weights,
            domain,
            order,
            line,
        })
    }

    /// Polynomial degree integrated exactly along each axis.
    pub fn exactness(&self) -> usize {
        2 * self.order - 1
    }

    pub fn check_domain(&self, domain: &ParamBox<N>) -> Result<()> {
        if self.domain == *domain {
            Ok(())
        } else {
            Err(Error::QuadratureDomainMismatch)
        }
    }

    pub fn integrate(&self, mut f: impl FnMut(&[f64; N]) -> f64) -> f64 {
        let terms: Vec<f64> = self.points.iter().zip(&self.weights).map(|(p, w)| w * f(p)).collect();
        pairwise_sum(&terms)
    }

    /// Points and weights on the face `ξ^axis = lo` (`upper = false`) or
    /// `hi`; weights are the `N − 1` dimensional parametric measure.
    pub fn face(&self, axis: usize, upper: bool) -> (Vec<[f64; N]>, Vec<f64>) {
        let value = if upper { self.domain.hi[axis] } else { self.domain.lo[axis] };
        tensor_points(&self.line, &self.domain, Some((axis, value)))
    }
}

fn tensor_points<const N: usize>(
    line: &GaussLegendre,
    domain: &ParamBox<N>,
    fixed: Option<(usize, f64)>,
) -> (Vec<[f64; N]>, Vec<f64>) {
    let axes: Vec<Vec<(f64, f64)>> = (0..N)
        .map(|i| match fixed {
            Some((axis, v)) if axis == i => alloc::vec![(v, 1.0)],
            _ => line.mapped(domain.lo[i], domain.hi[i]).collect(),
        })
        .collect();
    let mut points = Vec::new();
    let mut weights = Vec::new();
    let mut idx = [0usize; N];
    loop {
        points.push(core::array::from_fn(|i| axes[i][idx[i]].0));
        weights.push((0..N).map(|i| axes[i][idx[i]].1).product());
        let mut k = N;
        loop {
            if k == 0 {
                return (points, weights);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < axes[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{Cuboid, Rect};

    #[test]
    fn weights_sum_to_two() {
        for n in 1..=20 {
            let g = GaussLegendre::new(n).unwrap();
            let s: f64 = g.weights.iter().sum();
            assert!((s - 2.0).abs() < 1e-14, "n = {n}");
            assert!(g.weights.iter().all(|w| *w > 0.0));
        }
    }

    #[test]
    fn exact_for_degree_two_n_minus_one() {
        for n in 1..=12 {
            let g = GaussLegendre::new(n).unwrap();
            for deg in 0..(2 * n) {
                let q: f64 = g.nodes.iter().zip(&g.weights).map(|(x, w)| w * x.powi(deg as i32)).sum();
                let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
                assert!((q - exact).abs() < 1e-13, "n={n} deg={deg}");
            }
        }
    }

    #[test]
    fn box_rule_integrates_polynomials() {
        let d = Cuboid::new([0.0, -1.0, 1.0], [1.0, 2.0, 3.0]);
        let rule = QuadratureRule::gauss(d, 4).unwrap();
        let v = rule.integrate(|x| x[0].powi(7) * x[1] * x[1] * x[2].powi(3));
        let exact = (1.0 / 8.0) * ((8.0 + 1.0) / 3.0) * ((81.0 - 1.0) / 4.0);
        assert!((v - exact).abs() < 1e-12 * exact);
        assert!((rule.integrate(|_| 1.0) - d.measure()).abs() < 1e-13);
    }

    #[test]
    fn faces_measure_the_boundary() {
        let d = Rect::new([0.0, 0.0], [2.0, 3.0]);
        let rule = QuadratureRule::gauss(d, 3).unwrap();
        let (p, w) = rule.face(0, true);
        assert!(p.iter().all(|x| x[0] == 2.0));
        assert!((w.iter().sum::<f64>() - 3.0).abs() < 1e-14);
        assert!(rule.check_domain(&Rect::new([0.0, 0.0], [2.0, 3.5])).is_err());
    }

    #[test]
    fn pairwise_sum_matches_naive() {
        let v: Vec<f64> = (0..1000).map(|i| 1.0 / (i as f64 + 1.0)).collect();
        assert!((pairwise_sum(&v) - v.iter().sum::<f64>()).abs() < 1e-12);
    }
}
