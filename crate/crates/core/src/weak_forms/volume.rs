use alloc::vec;
use alloc::vec::Vec;

use super::breakdown::ResidualBreakdown;
use super::quadrature::{pairwise_sum, QuadratureRule};
use super::variation::ScalarField;
use crate::error::{check_temperature, Error, Result};
use crate::linalg::{Mat3, Vec3};
use crate::tensor::TwoPointMap;
use crate::volume::{deformation_gradient, VolumeChart, VolumeField};

/// Kinematics handed to a stress provider at a quadrature point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointKinematics {
    pub xi: [f64; 3],
    pub position: Vec3,
    pub f: TwoPointMap,
}

/// Inertia, body force and traction data; `None` entries vanish.
#[derive(Clone, Copy, Default)]
pub struct VolumeLoads<'a> {
    /// Reference density `ρ₀`.
    pub density: f64,
    pub acceleration: Option<&'a dyn Fn(&[f64; 3]) -> Vec3>,
    /// Body force per unit mass.
    pub body_force: Option<&'a dyn Fn(&[f64; 3]) -> Vec3>,
    /// Traction per unit current area given the outward unit normal.
    pub traction: Option<&'a dyn Fn(&[f64; 3], &Vec3) -> Vec3>,
}

fn check_charts(reference: &dyn VolumeChart, current: &dyn VolumeChart, rule: &QuadratureRule<3>) -> Result<()> {
    rule.check_domain(&reference.domain())?;
    rule.check_domain(&current.domain())
}

fn det3(t: &[Vec3; 3]) -> f64 {
    t[0].cross(&t[1]).dot(&t[2])
}

fn duals(t: &[Vec3; 3]) -> Result<[Vec3; 3]> {
    let m = Mat3::from_cols(t).try_inverse()?;
    Ok([m.row(0), m.row(1), m.row(2)])
}

/// Oriented area vector `n da / dξ dξ` of a face of the parameter box.
fn face_area_vector(t: &[Vec3; 3], axis: usize, upper: bool) -> Vec3 {
    let v = t[(axis + 1) % 3].cross(&t[(axis + 2) % 3]);
    if upper {
        v
    } else {
        -v
    }
}

/// Mechanical weak form of a volume:
/// `G_int = ∫ grad δx : σ dv`, `G_in = ∫ ρ δx · v̇ dv`,
/// `G_ext = ∫ ρ δx · f dv + ∮ δx · t da`.
///
/// `stress` returns the Cauchy stress at a point.
pub fn assemble_volume_mechanical(
    reference: &dyn VolumeChart,
    current: &dyn VolumeChart,
    test: &dyn VolumeField,
    stress: &dyn Fn(&PointKinematics) -> Result<Mat3>,
    loads: &VolumeLoads,
    rule: &QuadratureRule<3>,
) -> Result<ResidualBreakdown> {
    check_charts(reference, current, rule)?;
    let n = rule.points.len();
    let mut internal = Vec::with_capacity(n);
    let mut inertial = Vec::with_capacity(n);
    let mut body = Vec::with_capacity(n);
    for (xi, w) in rule.points.iter().zip(&rule.weights) {
        let f = deformation_gradient(reference, current, xi)?;
        let g = current.tangents(xi);
        let dv = det3(&g) * w;
        let dv0 = det3(&reference.tangents(xi)) * w;
        let gd = duals(&g)?;
        let d = test.gradient(xi);
        let grad = d[0].outer(&gd[0]) + d[1].outer(&gd[1]) + d[2].outer(&gd[2]);
        let kin = PointKinematics {
            xi: *xi,
            position: current.position(xi),
            f,
        };
        let sigma = stress(&kin)?;
        if !sigma.is_finite() {
            return Err(Error::NonFinite);
        }
        internal.push(grad.ddot(&sigma) * dv);
        let dx = test.value(xi);
        inertial.push(loads.acceleration.map_or(0.0, |a| loads.density * dx.dot(&a(xi)) * dv0));
        body.push(loads.body_force.map_or(0.0, |b| loads.density * dx.dot(&b(xi)) * dv0));
    }
    let mut boundary = Vec::new();
    if let Some(traction) = loads.traction {
        for axis in 0..3 {
            for upper in [false, true] {
                let (points, weights) = rule.face(axis, upper);
                for (xi, w) in points.iter().zip(&weights) {
                    let area = face_area_vector(&current.tangents(xi), axis, upper);
                    let da = area.norm();
                    let nu = area * (1.0 / da);
                    boundary.push(test.value(xi).dot(&traction(xi, &nu)) * da * w);
                }
            }
        }
    }
    let g_int = pairwise_sum(&internal);
    let g_in = pairwise_sum(&inertial);
    let g_body = pairwise_sum(&body);
    let g_traction = pairwise_sum(&boundary);
    Ok(ResidualBreakdown {
        g_in,
        g_int,
        g_ext: g_body + g_traction,
        terms: vec![("inertia", g_in), ("stress_power", g_int), ("body", g_body), ("traction", g_traction)],
    })
}

/// Thermal data for the volume energy weak form.
#[derive(Clone, Copy)]
pub struct VolumeThermalInput<'a> {
    pub temperature: &'a dyn ScalarField<3>,
    pub test: &'a dyn ScalarField<3>,
    pub conductivity: Mat3,
    /// Reference density `ρ₀`.
    pub density: f64,
    /// `ṡ` per unit mass.
    pub entropy_rate: Option<&'a dyn Fn(&[f64; 3]) -> f64>,
    /// `r` per unit mass.
    pub heat_source: Option<&'a dyn Fn(&[f64; 3]) -> f64>,
    /// Prescribed `q · ν`; the Fourier flux is used when absent.
    pub boundary_flux: Option<&'a dyn Fn(&[f64; 3], &Vec3) -> f64>,
}

fn spatial_gradient(d: &[f64; 3], gd: &[Vec3; 3]) -> Vec3 {
    gd[0] * d[0] + gd[1] * d[1] + gd[2] * d[2]
}

/// Energy weak form
/// `∫ δθ ρ T ṡ dv = ∫ grad δθ · q dv + ∫ δθ ρ r dv − ∮ δθ q · ν da`
/// with `q = −k grad T`.
pub fn assemble_volume_thermal(
    reference: &dyn VolumeChart,
    current: &dyn VolumeChart,
    input: &VolumeThermalInput,
    rule: &QuadratureRule<3>,
) -> Result<ResidualBreakdown> {
    check_charts(reference, current, rule)?;
    let k = input.conductivity;
    let mut entropy = Vec::new();
    let mut conduction = Vec::new();
    let mut source = Vec::new();
    for (xi, w) in rule.points.iter().zip(&rule.weights) {
        let t = input.temperature.value(xi);
        check_temperature(t)?;
        let g = current.tangents(xi);
        let gd = duals(&g)?;
        let dv = det3(&g) * w;
        let dv0 = det3(&reference.tangents(xi)) * w;
        let q = -(k * spatial_gradient(&input.temperature.gradient(xi), &gd));
        let dtheta = input.test.value(xi);
        conduction.push(spatial_gradient(&input.test.gradient(xi), &gd).dot(&q) * dv);
        entropy.push(input.entropy_rate.map_or(0.0, |s| dtheta * input.density * t * s(xi) * dv0));
        source.push(input.heat_source.map_or(0.0, |r| dtheta * input.density * r(xi) * dv0));
    }
    let mut boundary = Vec::new();
    for axis in 0..3 {
        for upper in [false, true] {
            let (points, weights) = rule.face(axis, upper);
            for (xi, w) in points.iter().zip(&weights) {
                let t = input.temperature.value(xi);
                check_temperature(t)?;
                let g = current.tangents(xi);
                let area = face_area_vector(&g, axis, upper);
                let da = area.norm();
                let nu = area * (1.0 / da);
                let qn = match input.boundary_flux {
                    Some(flux) => flux(xi, &nu),
                    None => -(k * spatial_gradient(&input.temperature.gradient(xi), &duals(&g)?)).dot(&nu),
                };
                boundary.push(input.test.value(xi) * qn * da * w);
            }
        }
    }
    let g_entropy = pairwise_sum(&entropy);
    let g_conduction = pairwise_sum(&conduction);
    let g_source = pairwise_sum(&source);
    let g_boundary = pairwise_sum(&boundary);
    Ok(ResidualBreakdown {
        g_in: g_entropy,
        g_int: -g_conduction,
        g_ext: g_source - g_boundary,
        terms: vec![
            ("entropy_rate", g_entropy),
            ("conduction", g_conduction),
            ("source", g_source),
            ("boundary_flux", g_boundary),
        ],
    })
}

/// `ε`-derivative of `∫ W dV` along `x + ε δx`, by a 6th-order central
/// stencil; used as the virtual-work oracle.
pub fn energy_variation_fd(
    reference: &dyn VolumeChart,
    current: &dyn VolumeChart,
    test: &dyn VolumeField,
    energy_density: &dyn Fn(&PointKinematics) -> Result<f64>,
    rule: &QuadratureRule<3>,
    step: f64,
) -> Result<f64> {
    check_charts(reference, current, rule)?;
    let total = |eps: f64| -> Result<f64> {
        let perturbed = crate::volume::PerturbedChart {
            chart: current,
            field: test,
            epsilon: eps,
        };
        let mut terms = Vec::with_capacity(rule.points.len());
        for (xi, w) in rule.points.iter().zip(&rule.weights) {
            let f = deformation_gradient(reference, &perturbed, xi)?;
            let kin = PointKinematics {
                xi: *xi,
                position: perturbed.position(xi),
                f,
            };
            terms.push(energy_density(&kin)? * det3(&reference.tangents(xi)) * w);
        }
        Ok(pairwise_sum(&terms))
    };
    let h = step;
    let one = total(h)? - total(-h)?;
    let two = total(2.0 * h)? - total(-2.0 * h)?;
    let three = total(3.0 * h)? - total(-3.0 * h)?;
    Ok((45.0 * one - 9.0 * two + three) / (60.0 * h))
}
