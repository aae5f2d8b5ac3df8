use alloc::vec;
use alloc::vec::Vec;

use super::breakdown::ResidualBreakdown;
use super::quadrature::{pairwise_sum, QuadratureRule};
use super::variation::{shell_variations, ScalarField};
use crate::constitutive::{shell_energy_density, shell_response, ShellKinematicInput, ShellThermalModel, SurfaceMaterialParams};
use crate::error::{check_temperature, Error, Result};
use crate::linalg::{Mat2, Mat3, Vec3};
use crate::surface::{frame, PerturbedSurface, SurfaceChart, SurfaceField, SurfacePointFrame};
use crate::tensor::Configuration::{Current, Reference};

/// Reference and current frames at one quadrature point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShellPointState {
    pub xi: [f64; 2],
    pub reference: SurfacePointFrame,
    pub current: SurfacePointFrame,
}

/// Returns `(σᵅᵝ, μᵅᵝ)` per unit reference area.
pub type ShellMaterial<'a> = dyn Fn(&ShellPointState) -> Result<(Mat2, Mat2)> + 'a;

/// Inertia, body force and edge data; `None` entries vanish.
#[derive(Clone, Copy, Default)]
pub struct ShellLoads<'a> {
    /// Reference areal density `ρ₀`.
    pub density: f64,
    pub acceleration: Option<&'a dyn Fn(&[f64; 2]) -> Vec3>,
    /// Body force per unit mass.
    pub body_force: Option<&'a dyn Fn(&[f64; 2]) -> Vec3>,
    /// Edge traction per unit current length given the outward edge normal.
    pub edge_traction: Option<&'a dyn Fn(&[f64; 2], &Vec3) -> Vec3>,
    /// Moment tensor `μ` on the edge given the outward edge normal.
    pub edge_moment: Option<&'a dyn Fn(&[f64; 2], &Vec3) -> Mat3>,
}

/// Adapter evaluating the thermoelastic shell law with a temperature field.
pub fn thermoelastic_shell<'a>(
    params: &'a SurfaceMaterialParams,
    model: &'a ShellThermalModel,
    temperature: &'a dyn ScalarField<2>,
) -> impl Fn(&ShellPointState) -> Result<(Mat2, Mat2)> + 'a {
    move |p: &ShellPointState| {
        let t = temperature.value(&p.xi);
        let input = ShellKinematicInput::from_frames(&p.reference, &p.current, model, t)?;
        let r = shell_response(&input, t, params)?;
        Ok((r.sigma, r.mu))
    }
}

/// Energy density `ρ₀ψ` per reference area of the thermoelastic shell law.
pub fn thermoelastic_shell_energy<'a>(
    params: &'a SurfaceMaterialParams,
    model: &'a ShellThermalModel,
    temperature: &'a dyn ScalarField<2>,
) -> impl Fn(&ShellPointState) -> Result<f64> + 'a {
    move |p: &ShellPointState| {
        let t = temperature.value(&p.xi);
        let input = ShellKinematicInput::from_frames(&p.reference, &p.current, model, t)?;
        shell_energy_density(&input, t, params)
    }
}

fn check_charts(reference: &dyn SurfaceChart, current: &dyn SurfaceChart, rule: &QuadratureRule<2>) -> Result<()> {
    rule.check_domain(&reference.domain())?;
    rule.check_domain(&current.domain())
}

/// Edge element: outward unit normal `ν = ±aᵅ/‖aᵅ‖` on `ξᵅ = const` and
/// the length factor `‖a_β‖`.
fn edge_geometry(f: &SurfacePointFrame, axis: usize, upper: bool) -> (Vec3, f64) {
    let dual = f.duals[axis];
    let sign = if upper { 1.0 } else { -1.0 };
    (dual * (sign / dual.norm()), f.tangents[1 - axis].norm())
}

/// Edge quadrature: `(ξ, w)` on the four edges with `(axis, upper)` tags.
fn edges(rule: &QuadratureRule<2>) -> Vec<(usize, bool, [f64; 2], f64)> {
    let mut out = Vec::new();
    for axis in 0..2 {
        for upper in [false, true] {
            let (points, weights) = rule.face(axis, upper);
            for (p, w) in points.into_iter().zip(weights) {
                out.push((axis, upper, p, w));
            }
        }
    }
    out
}

/// Shell mechanical weak form with
/// `G_int = ∫ (½ σ^♯◁ : δC − μ^♯◁ : δb^♭◁) dA` and
/// `G_ext = ∫ ρ δx · f dA + ∮ δx · t dl + ∮ δn · μᵀν dl`.
pub fn assemble_shell_mechanical(
    reference: &dyn SurfaceChart,
    current: &dyn SurfaceChart,
    test: &dyn SurfaceField,
    material: &ShellMaterial,
    loads: &ShellLoads,
    rule: &QuadratureRule<2>,
) -> Result<ResidualBreakdown> {
    check_charts(reference, current, rule)?;
    let n = rule.points.len();
    let mut membrane = Vec::with_capacity(n);
    let mut bending = Vec::with_capacity(n);
    let mut inertial = Vec::with_capacity(n);
    let mut body = Vec::with_capacity(n);
    for (xi, w) in rule.points.iter().zip(&rule.weights) {
        let state = ShellPointState {
            xi: *xi,
            reference: frame(reference, xi, Reference)?,
            current: frame(current, xi, Current)?,
        };
        let (sigma, mu) = material(&state)?;
        if !sigma.is_finite() || !mu.is_finite() {
            return Err(Error::NonFinite);
        }
        let var = shell_variations(&state.current, test, xi);
        let da0 = state.reference.area_factor() * w;
        membrane.push(0.5 * sigma.ddot(&var.delta_metric) * da0);
        bending.push(-mu.ddot(&var.delta_curvature) * da0);
        inertial.push(loads.acceleration.map_or(0.0, |a| loads.density * var.delta_x.dot(&a(xi)) * da0));
        body.push(loads.body_force.map_or(0.0, |b| loads.density * var.delta_x.dot(&b(xi)) * da0));
    }
    let mut traction = Vec::new();
    let mut moment = Vec::new();
    if loads.edge_traction.is_some() || loads.edge_moment.is_some() {
        for (axis, upper, xi, w) in edges(rule) {
            let f = frame(current, &xi, Current)?;
            let (nu, dl) = edge_geometry(&f, axis, upper);
            let var = shell_variations(&f, test, &xi);
            if let Some(t) = loads.edge_traction {
                traction.push(var.delta_x.dot(&t(&xi, &nu)) * dl * w);
            }
            if let Some(m) = loads.edge_moment {
                let mu = m(&xi, &nu);
                moment.push(var.delta_normal.dot(&(mu.transpose() * nu)) * dl * w);
            }
        }
    }
    let g_membrane = pairwise_sum(&membrane);
    let g_bending = pairwise_sum(&bending);
    let g_in = pairwise_sum(&inertial);
    let g_body = pairwise_sum(&body);
    let g_traction = pairwise_sum(&traction);
    let g_moment = pairwise_sum(&moment);
    Ok(ResidualBreakdown {
        g_in,
        g_int: g_membrane + g_bending,
        g_ext: g_body + g_traction + g_moment,
        terms: vec![
            ("inertia", g_in),
            ("membrane", g_membrane),
            ("bending", g_bending),
            ("body", g_body),
            ("traction", g_traction),
            ("moment", g_moment),
        ],
    })
}

/// In-plane thermal data for the shell energy weak form.
#[derive(Clone, Copy)]
pub struct ShellThermalInput<'a> {
    pub temperature: &'a dyn ScalarField<2>,
    pub test: &'a dyn ScalarField<2>,
    /// Ambient conductivity; the flux is projected onto the tangent plane.
    pub conductivity: Mat3,
    /// Reference areal density `ρ₀`.
    pub density: f64,
    pub entropy_rate: Option<&'a dyn Fn(&[f64; 2]) -> f64>,
    pub heat_source: Option<&'a dyn Fn(&[f64; 2]) -> f64>,
    /// Prescribed edge flux `q · ν`; the Fourier flux is used when absent.
    pub boundary_flux: Option<&'a dyn Fn(&[f64; 2], &Vec3) -> f64>,
}

fn surface_gradient(f: &SurfacePointFrame, d: &[f64; 2]) -> Vec3 {
    f.duals[0] * d[0] + f.duals[1] * d[1]
}

fn in_plane_flux(f: &SurfacePointFrame, k: &Mat3, grad_t: &Vec3) -> Vec3 {
    -(f.projector() * (*k * *grad_t))
}

/// In-plane shell energy weak form
/// `∫ δθ ρ T ṡ da = ∫ grad_s δθ · q da + ∫ δθ ρ r da − ∮ δθ q · ν dl`.
pub fn assemble_shell_thermal(
    reference: &dyn SurfaceChart,
    current: &dyn SurfaceChart,
    input: &ShellThermalInput,
    rule: &QuadratureRule<2>,
) -> Result<ResidualBreakdown> {
    check_charts(reference, current, rule)?;
    let k = input.conductivity;
    let mut entropy = Vec::new();
    let mut conduction = Vec::new();
    let mut source = Vec::new();
    for (xi, w) in rule.points.iter().zip(&rule.weights) {
        let t = input.temperature.value(xi);
        check_temperature(t)?;
        let f = frame(current, xi, Current)?;
        let r = frame(reference, xi, Reference)?;
        let da = f.area_factor() * w;
        let da0 = r.area_factor() * w;
        let q = in_plane_flux(&f, &k, &surface_gradient(&f, &input.temperature.gradient(xi)));
        let dtheta = input.test.value(xi);
        conduction.push(surface_gradient(&f, &input.test.gradient(xi)).dot(&q) * da);
        entropy.push(input.entropy_rate.map_or(0.0, |s| dtheta * input.density * t * s(xi) * da0));
        source.push(input.heat_source.map_or(0.0, |h| dtheta * input.density * h(xi) * da0));
    }
    let mut boundary = Vec::new();
    for (axis, upper, xi, w) in edges(rule) {
        let t = input.temperature.value(&xi);
        check_temperature(t)?;
        let f = frame(current, &xi, Current)?;
        let (nu, dl) = edge_geometry(&f, axis, upper);
        let qn = match input.boundary_flux {
            Some(flux) => flux(&xi, &nu),
            None => in_plane_flux(&f, &k, &surface_gradient(&f, &input.temperature.gradient(&xi))).dot(&nu),
        };
        boundary.push(input.test.value(&xi) * qn * dl * w);
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

/// `ε`-derivative of `∫ W dA` along `x + ε δx` by a 6th-order central
/// stencil.
pub fn shell_energy_variation_fd(
    reference: &dyn SurfaceChart,
    current: &dyn SurfaceChart,
    test: &dyn SurfaceField,
    energy_density: &dyn Fn(&ShellPointState) -> Result<f64>,
    rule: &QuadratureRule<2>,
    step: f64,
) -> Result<f64> {
    check_charts(reference, current, rule)?;
    let total = |eps: f64| -> Result<f64> {
        let perturbed = PerturbedSurface {
            chart: current,
            field: test,
            epsilon: eps,
        };
        let mut terms = Vec::with_capacity(rule.points.len());
        for (xi, w) in rule.points.iter().zip(&rule.weights) {
            let state = ShellPointState {
                xi: *xi,
                reference: frame(reference, xi, Reference)?,
                current: frame(&perturbed, xi, Current)?,
            };
            terms.push(energy_density(&state)? * state.reference.area_factor() * w);
        }
        Ok(pairwise_sum(&terms))
    };
    let h = step;
    let one = total(h)? - total(-h)?;
    let two = total(2.0 * h)? - total(-2.0 * h)?;
    let three = total(3.0 * h)? - total(-3.0 * h)?;
    Ok((45.0 * one - 9.0 * two + three) / (60.0 * h))
}

/// Scale for rigid-variation checks: `Σ |σ| + |μ| dA` over the rule.
pub fn shell_stress_scale(
    reference: &dyn SurfaceChart,
    current: &dyn SurfaceChart,
    material: &ShellMaterial,
    rule: &QuadratureRule<2>,
) -> Result<f64> {
    let mut terms = Vec::with_capacity(rule.points.len());
    for (xi, w) in rule.points.iter().zip(&rule.weights) {
        let state = ShellPointState {
            xi: *xi,
            reference: frame(reference, xi, Reference)?,
            current: frame(current, xi, Current)?,
        };
        let (s, m) = material(&state)?;
        terms.push((s.norm() + m.norm()) * state.reference.area_factor() * w);
    }
    Ok(pairwise_sum(&terms))
}
