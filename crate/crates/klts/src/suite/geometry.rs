use klts_core::domain::ParamBox;
use klts_core::surface::{frame, Sphere, SurfaceChart};
use klts_core::tensor::Configuration::Current;
use klts_core::volume::{christoffel_from_basis, covariant_derivative_co2, covariant_derivative_contra2, dual_covariant_derivative, tangent_covariant_derivative, VolumeChart};
use klts_core::{Mat2, Mat3, Vec3};

use super::{Ctx, Property};
use crate::fd::{central6, shifted, FdSurface};
use crate::report::Record;
use crate::sample::{point_in, surface_chart, volume_chart, SampleRng};

pub const RICCI_VOLUME: Property = Property {
    name: "ricci_volume",
    anchor: "Ricci's theorem: covariant derivatives of metric, tangent and dual bases vanish",
    tolerance: 1e-10,
};
pub const RICCI_SURFACE: Property = Property {
    name: "ricci_surface",
    anchor: "surface Ricci identities: a_ab;c = 0 and tangential parts of a_a;b, a^a;b vanish",
    tolerance: 1e-10,
};
pub const GAUSS_WEINGARTEN: Property = Property {
    name: "gauss_weingarten",
    anchor: "Gauss formula a_a,b = G^c_ab a_c + b_ab n and Weingarten n,a = -b^b_a a_b",
    tolerance: 1e-10,
};
pub const SPHERE_MEAN: Property = Property {
    name: "sphere_mean_curvature",
    anchor: "mean curvature of a sphere, |H| = 1/R, on a finite-difference chart",
    tolerance: 1e-8,
};
pub const SPHERE_GAUSS: Property = Property {
    name: "sphere_gauss_curvature",
    anchor: "Gaussian curvature of a sphere, 1/R^2, on a finite-difference chart",
    tolerance: 1e-8,
};

fn duals3(t: &[Vec3; 3]) -> [Vec3; 3] {
    match Mat3::from_cols(t).try_inverse() {
        Ok(m) => [m.row(0), m.row(1), m.row(2)],
        Err(_) => [Vec3::new(f64::NAN, f64::NAN, f64::NAN); 3],
    }
}

fn gram3(t: &[Vec3; 3]) -> Mat3 {
    Mat3::from_fn(|i, j| t[i].dot(&t[j]))
}

fn gram2(t: &[Vec3; 2]) -> Mat2 {
    Mat2::from_fn(|i, j| t[i].dot(&t[j]))
}

fn duals2(t: &[Vec3; 2]) -> [Vec3; 2] {
    match gram2(t).try_inverse() {
        Ok(gi) => std::array::from_fn(|a| t[0] * gi[(a, 0)] + t[1] * gi[(a, 1)]),
        Err(_) => [Vec3::new(f64::NAN, f64::NAN, f64::NAN); 2],
    }
}

fn normal(t: &[Vec3; 2]) -> Vec3 {
    t[0].cross(&t[1]).normalized().unwrap_or(Vec3::new(f64::NAN, f64::NAN, f64::NAN))
}

fn max3(m: &[Mat3; 3]) -> f64 {
    m.iter().map(Mat3::max_abs).fold(0.0, f64::max)
}

fn ricci_volume_at(chart: &dyn VolumeChart, xi: &[f64; 3], h: f64) -> klts_core::Result<f64> {
    let basis = chart.basis(xi, Current)?;
    let g = christoffel_from_basis(&basis, &chart.second_derivatives(xi));
    let along = |j: usize, e: f64| chart.tangents(&shifted(xi, j, e));
    let dt: [[Vec3; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| central6(|e| along(j, e)[i], h)));
    let dd: [[Vec3; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| central6(|e| duals3(&along(j, e))[i], h)));
    let dm: [Mat3; 3] = std::array::from_fn(|k| central6(|e| gram3(&along(k, e)), h));
    let dmi: [Mat3; 3] = std::array::from_fn(|k| {
        central6(|e| gram3(&along(k, e)).try_inverse().unwrap_or(Mat3::IDENTITY * f64::NAN), h)
    });
    let tangent = tangent_covariant_derivative(&basis, &dt, &g);
    let dual = dual_covariant_derivative(&basis, &dd, &g);
    let worst_vec = |v: &[[Vec3; 3]; 3]| v.iter().flatten().map(Vec3::max_abs).fold(0.0, f64::max);
    Ok(worst_vec(&tangent)
        .max(worst_vec(&dual))
        .max(max3(&covariant_derivative_co2(&basis.metric_co, &dm, &g)))
        .max(max3(&covariant_derivative_contra2(&basis.metric_contra, &dmi, &g))))
}

fn ricci_surface_at(chart: &dyn SurfaceChart, xi: &[f64; 2], h: f64) -> klts_core::Result<f64> {
    let f = frame(chart, xi, Current)?;
    let along = |c: usize, e: f64| chart.tangents(&shifted(xi, c, e));
    let dm: [Mat2; 2] = std::array::from_fn(|c| central6(|e| gram2(&along(c, e)), h));
    let metric = klts_core::surface::covariant_derivative_co2(&f, &f.metric, &dm);
    let mut worst = metric[0].max_abs().max(metric[1].max_abs());
    let tangential = |v: Vec3| (v - f.normal * v.dot(&f.normal)).max_abs();
    let g = &f.christoffel;
    for a in 0..2 {
        for b in 0..2 {
            let da = central6(|e| along(b, e)[a], h);
            let dd = central6(|e| duals2(&along(b, e))[a], h);
            let mut t = da;
            let mut d = dd;
            for c in 0..2 {
                t -= f.tangents[c] * g[c][a][b];
                d += f.duals[c] * g[a][c][b];
            }
            worst = worst.max(tangential(t)).max(tangential(d));
        }
    }
    Ok(worst)
}

fn gauss_weingarten_at(chart: &dyn SurfaceChart, xi: &[f64; 2], h: f64) -> klts_core::Result<f64> {
    let f = frame(chart, xi, Current)?;
    let along = |c: usize, e: f64| chart.tangents(&shifted(xi, c, e));
    let dn = f.normal_derivatives();
    let mut worst: f64 = 0.0;
    for a in 0..2 {
        let fd_n = central6(|e| normal(&along(a, e)), h);
        worst = worst.max((fd_n - dn[a]).max_abs());
        for b in 0..2 {
            let mut r = central6(|e| along(b, e)[a], h) - f.normal * f.curvature[(a, b)];
            for c in 0..2 {
                r -= f.tangents[c] * f.christoffel[c][a][b];
            }
            worst = worst.max(r.max_abs());
        }
    }
    Ok(worst)
}

pub fn run(ctx: &Ctx, rng: &mut SampleRng) -> Vec<Record> {
    let s = ctx.cfg.samples;
    let h = ctx.stencil();
    let amp = ctx.amp();
    let ricci_v = ctx.check(&RICCI_VOLUME, |t| {
        for k in 0..s.charts {
            let chart = volume_chart(rng, amp, k);
            for _ in 0..s.points_per_chart {
                let xi = point_in(rng, &chart.domain(), 0.05);
                t.observe(ricci_volume_at(&chart, &xi, h)?);
            }
        }
        Ok(())
    });
    let ricci_s = ctx.check(&RICCI_SURFACE, |t| {
        for k in 0..s.charts {
            let chart = surface_chart(rng, amp, k);
            for _ in 0..s.points_per_chart {
                let xi = point_in(rng, &chart.domain(), 0.05);
                t.observe(ricci_surface_at(&chart, &xi, h)?);
            }
        }
        Ok(())
    });
    let gw = ctx.check(&GAUSS_WEINGARTEN, |t| {
        for k in 0..s.charts {
            let chart = surface_chart(rng, amp, k);
            for _ in 0..s.points_per_chart {
                let xi = point_in(rng, &chart.domain(), 0.05);
                t.observe(gauss_weingarten_at(&chart, &xi, h)?);
            }
        }
        Ok(())
    });
    let r = ctx.cfg.charts.sphere_radius;
    let sphere = FdSurface {
        chart: Sphere {
            radius: r,
            domain: ParamBox::new([0.3, -3.0], [std::f64::consts::PI - 0.3, 3.0]),
        },
        step: h,
    };
    let points: Vec<[f64; 2]> = (0..s.points_per_chart * 2).map(|_| point_in(rng, &sphere.domain(), 0.0)).collect();
    let mean = ctx.check(&SPHERE_MEAN, |t| {
        for xi in &points {
            t.observe(frame(&sphere, xi, Current)?.mean_curvature.abs() - 1.0 / r);
        }
        Ok(())
    });
    let gauss = ctx.check(&SPHERE_GAUSS, |t| {
        for xi in &points {
            t.observe(frame(&sphere, xi, Current)?.gauss_curvature - 1.0 / (r * r));
        }
        Ok(())
    });
    vec![ricci_v, ricci_s, gw, mean, gauss]
}
