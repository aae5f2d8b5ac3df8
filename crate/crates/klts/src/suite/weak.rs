use klts_core::constitutive::volume_response;
use klts_core::domain::ParamBox;
use klts_core::surface::{MappedSurface, Plane, SurfaceChart};
use klts_core::volume::{deformation_gradient, PolynomialChart, VolumeChart};
use klts_core::weak_forms::{
    assemble_shell_mechanical, assemble_shell_thermal, assemble_volume_mechanical, assemble_volume_thermal,
    balance_diagnostics, divergence_transpose_fd, energy_variation_fd, shell_energy_variation_fd, shell_stress_scale,
    thermoelastic_shell, thermoelastic_shell_energy, AffineInSpace, BalanceFields, PointKinematics, QuadratureRule,
    Rotation, ShellLoads, ShellThermalInput, Translation, VolumeLoads, VolumeThermalInput,
};
use klts_core::{Mat3, Vec3};

use super::{relative, Ctx, Property, Tally};
use crate::report::Record;
use crate::sample::{
    near_identity, polynomial_chart, psd3, surface_chart, surface_field, sym3, uniform, unit_cube, vec3,
    SampleRng,
};

pub const RIGID_VOLUME_TRANSLATION: Property = Property {
    name: "rigid_volume_translation",
    anchor: "internal virtual work of a volume vanishes for a rigid translation",
    tolerance: 1e-10,
};
pub const RIGID_VOLUME_ROTATION: Property = Property {
    name: "rigid_volume_rotation",
    anchor: "internal virtual work of a volume vanishes for an infinitesimal rigid rotation",
    tolerance: 1e-10,
};
pub const RIGID_SHELL_TRANSLATION: Property = Property {
    name: "rigid_shell_translation",
    anchor: "shell internal virtual work vanishes for a rigid translation",
    tolerance: 1e-10,
};
pub const RIGID_SHELL_ROTATION: Property = Property {
    name: "rigid_shell_rotation",
    anchor: "shell internal virtual work vanishes for an infinitesimal rigid rotation",
    tolerance: 1e-10,
};
pub const ENERGY_VOLUME: Property = Property {
    name: "energy_consistency_volume",
    anchor: "G_int of a volume equals the first variation of the stored energy",
    tolerance: 1e-6,
};
pub const ENERGY_SHELL: Property = Property {
    name: "energy_consistency_shell",
    anchor: "shell G_int equals the first variation of the stored energy",
    tolerance: 1e-6,
};
pub const DIVERGENCE_VOLUME: Property = Property {
    name: "weak_form_divergence_closure",
    anchor: "manufactured stress with t = sigma nu and rho0 f = -J div sigma closes the mechanical weak form",
    tolerance: 1e-8,
};
pub const THERMAL_VOLUME: Property = Property {
    name: "weak_form_thermal_volume",
    anchor: "affine temperature in a curved body balances conduction against boundary flux",
    tolerance: 1e-8,
};
pub const THERMAL_SHELL: Property = Property {
    name: "weak_form_thermal_shell",
    anchor: "affine temperature on a plane gives conduction -(P b) . k (P a) |A| and a balanced residual",
    tolerance: 1e-8,
};
pub const QUADRATURE: Property = Property {
    name: "quadrature_exactness",
    anchor: "tensor Gauss-Legendre with p points is exact for degree 2p - 1 per variable",
    tolerance: 1e-12,
};
pub const BALANCE: Property = Property {
    name: "local_linear_momentum",
    anchor: "div sigma^T + rho f - rho a = 0 for a manufactured stress field",
    tolerance: 1e-8,
};

/// Symmetric stress `σ(x) = A + Bₖ xₖ + Qₖₗ xₖ xₗ` with exact `div σ`.
struct ManufacturedStress {
    a: Mat3,
    b: [Mat3; 3],
    q: [[Mat3; 3]; 3],
}

impl ManufacturedStress {
    fn random(rng: &mut SampleRng) -> Self {
        let a = sym3(rng, 1.0);
        let b = std::array::from_fn(|_| sym3(rng, 1.0));
        let mut q = [[Mat3::ZERO; 3]; 3];
        for k in 0..3 {
            for l in k..3 {
                let m = sym3(rng, 0.5);
                q[k][l] = m;
                q[l][k] = m;
            }
        }
        ManufacturedStress { a, b, q }
    }

    fn at(&self, x: &Vec3) -> Mat3 {
        let mut s = self.a;
        for k in 0..3 {
            s += self.b[k] * x[k];
            for l in 0..3 {
                s += self.q[k][l] * (x[k] * x[l]);
            }
        }
        s
    }

    /// `(div σ)_i = ∂σ_ij/∂x_j`
    fn divergence(&self, x: &Vec3) -> Vec3 {
        let mut d = Vec3::ZERO;
        for i in 0..3 {
            for j in 0..3 {
                d[i] += self.b[j][(i, j)];
                for l in 0..3 {
                    d[i] += 2.0 * self.q[j][l][(i, j)] * x[l];
                }
            }
        }
        d
    }
}

fn identity_body() -> PolynomialChart {
    PolynomialChart::affine(Mat3::IDENTITY, Vec3::ZERO, unit_cube())
}

fn volume_rule(ctx: &Ctx) -> klts_core::Result<QuadratureRule<3>> {
    QuadratureRule::gauss(unit_cube(), ctx.cfg.numerics.quadrature_order)
}

/// Observes `|r|` of each sampled state into one of two tallies.
fn split(ctx: &Ctx, pair: [&Property; 2], values: &klts_core::Result<Vec<[f64; 2]>>) -> [Record; 2] {
    [0, 1].map(|i| {
        ctx.check(pair[i], |t: &mut Tally| {
            for v in values.as_ref().map_err(|e| *e)? {
                t.observe(v[i]);
            }
            Ok(())
        })
    })
}

/// `[translation, rotation]` errors `|G_int| / Σ‖σ‖ J w` per volume state.
fn rigid_volume(ctx: &Ctx, rng: &mut SampleRng) -> klts_core::Result<Vec<[f64; 2]>> {
    let cfg = ctx.cfg;
    let params = cfg.volume_material.params();
    let model = cfg.thermal.volume_model()?;
    let heat = cfg.heat.params();
    let rule = volume_rule(ctx)?;
    let reference = identity_body();
    let mut out = Vec::new();
    for _ in 0..cfg.samples.weak_form_states {
        let current = polynomial_chart(rng, ctx.amp());
        let temp = cfg.thermal.theta0 + uniform(rng, 0.0, 50.0);
        let stress = |k: &PointKinematics| Ok(volume_response(&k.f, &model, temp, &params, &Vec3::ZERO, &heat)?.sigma);
        let mut scale = 0.0;
        for (xi, w) in rule.points.iter().zip(&rule.weights) {
            let f = deformation_gradient(&reference, &current, xi)?;
            let k = PointKinematics {
                xi: *xi,
                position: current.position(xi),
                f,
            };
            scale += stress(&k)?.norm() * f.det() * w;
        }
        let loads = VolumeLoads::default();
        let shift = Translation(vec3(rng, 1.0));
        let spin = Rotation {
            chart: &current,
            omega: vec3(rng, 1.0),
        };
        let t = assemble_volume_mechanical(&reference, &current, &shift, &stress, &loads, &rule)?;
        let r = assemble_volume_mechanical(&reference, &current, &spin, &stress, &loads, &rule)?;
        out.push([relative(t.g_int.abs(), scale), relative(r.g_int.abs(), scale)]);
    }
    Ok(out)
}

/// `[translation, rotation]` errors per shell state.
fn rigid_shell(ctx: &Ctx, rng: &mut SampleRng) -> klts_core::Result<Vec<[f64; 2]>> {
    let cfg = ctx.cfg;
    let params = cfg.shell_material.params();
    let model = cfg.thermal.shell_model()?;
    let mut out = Vec::new();
    for k in 0..cfg.samples.weak_form_states {
        let reference = surface_chart(rng, ctx.amp(), k);
        let current = MappedSurface {
            inner: &reference,
            map: near_identity(rng, ctx.amp()),
            offset: vec3(rng, 0.5),
        };
        let rule = QuadratureRule::gauss(reference.domain(), cfg.numerics.quadrature_order)?;
        let temperature = AffineInSpace {
            chart: &reference,
            constant: cfg.thermal.theta0 + uniform(rng, 0.0, 50.0),
            slope: vec3(rng, 5.0),
        };
        let material = thermoelastic_shell(&params, &model, &temperature);
        let scale = shell_stress_scale(&reference, &current, &material, &rule)?;
        let loads = ShellLoads::default();
        let shift = Translation(vec3(rng, 1.0));
        let spin = Rotation {
            chart: &current,
            omega: vec3(rng, 1.0),
        };
        let t = assemble_shell_mechanical(&reference, &current, &shift, &material, &loads, &rule)?;
        let r = assemble_shell_mechanical(&reference, &current, &spin, &material, &loads, &rule)?;
        out.push([relative(t.g_int.abs(), scale), relative(r.g_int.abs(), scale)]);
    }
    Ok(out)
}

fn energy_volume(ctx: &Ctx, rng: &mut SampleRng, t: &mut Tally) -> klts_core::Result<()> {
    let cfg = ctx.cfg;
    let params = cfg.volume_material.params();
    let model = cfg.thermal.volume_model()?;
    let heat = cfg.heat.params();
    let rule = volume_rule(ctx)?;
    let reference = identity_body();
    for _ in 0..cfg.samples.weak_form_states {
        let current = polynomial_chart(rng, ctx.amp());
        let test = polynomial_chart(rng, 1.0);
        let temp = cfg.thermal.theta0 + uniform(rng, 0.0, 50.0);
        let response = |k: &PointKinematics| volume_response(&k.f, &model, temp, &params, &Vec3::ZERO, &heat);
        let stress = |k: &PointKinematics| Ok(response(k)?.sigma);
        let energy = |k: &PointKinematics| Ok(response(k)?.psi * params.rho0);
        let g = assemble_volume_mechanical(&reference, &current, &test, &stress, &VolumeLoads::default(), &rule)?;
        let fd = energy_variation_fd(&reference, &current, &test, &energy, &rule, ctx.cfg.numerics.variation_step)?;
        t.observe(relative((g.g_int - fd).abs(), g.g_int.abs()));
    }
    Ok(())
}

fn energy_shell(ctx: &Ctx, rng: &mut SampleRng, t: &mut Tally) -> klts_core::Result<()> {
    let cfg = ctx.cfg;
    let params = cfg.shell_material.params();
    let model = cfg.thermal.shell_model()?;
    for k in 0..cfg.samples.weak_form_states {
        let reference = surface_chart(rng, ctx.amp(), k);
        let current = MappedSurface {
            inner: &reference,
            map: near_identity(rng, ctx.amp()),
            offset: Vec3::ZERO,
        };
        let test = surface_field(rng, 1.0, reference.domain());
        let rule = QuadratureRule::gauss(reference.domain(), cfg.numerics.quadrature_order)?;
        let temperature = AffineInSpace {
            chart: &reference,
            constant: cfg.thermal.theta0 + uniform(rng, 0.0, 50.0),
            slope: vec3(rng, 5.0),
        };
        let material = thermoelastic_shell(&params, &model, &temperature);
        let energy = thermoelastic_shell_energy(&params, &model, &temperature);
        let g = assemble_shell_mechanical(&reference, &current, &test, &material, &ShellLoads::default(), &rule)?;
        let fd = shell_energy_variation_fd(&reference, &current, &test, &energy, &rule, ctx.cfg.numerics.variation_step)?;
        t.observe(relative((g.g_int - fd).abs(), g.g_int.abs()));
    }
    Ok(())
}

fn divergence_volume(ctx: &Ctx, rng: &mut SampleRng, t: &mut Tally) -> klts_core::Result<()> {
    let rule = volume_rule(ctx)?;
    let reference = identity_body();
    let rho0 = ctx.cfg.volume_material.rho0;
    for _ in 0..ctx.cfg.samples.weak_form_states {
        let current = polynomial_chart(rng, ctx.amp());
        let test = polynomial_chart(rng, 1.0);
        let sigma = ManufacturedStress::random(rng);
        let stress = |k: &PointKinematics| Ok(sigma.at(&k.position));
        let body_force = |xi: &[f64; 3]| {
            let j = deformation_gradient(&reference, &current, xi).map_or(f64::NAN, |f| f.det());
            sigma.divergence(&current.position(xi)) * (-j / rho0)
        };
        let traction = |xi: &[f64; 3], nu: &Vec3| sigma.at(&current.position(xi)) * *nu;
        let loads = VolumeLoads {
            density: rho0,
            body_force: Some(&body_force),
            traction: Some(&traction),
            ..VolumeLoads::default()
        };
        let r = assemble_volume_mechanical(&reference, &current, &test, &stress, &loads, &rule)?;
        t.observe(relative(r.residual().abs(), r.g_int.abs().max(1.0)));
    }
    Ok(())
}

fn thermal_volume(ctx: &Ctx, rng: &mut SampleRng, t: &mut Tally) -> klts_core::Result<()> {
    let rule = volume_rule(ctx)?;
    let reference = identity_body();
    for _ in 0..ctx.cfg.samples.weak_form_states {
        let current = polynomial_chart(rng, ctx.amp());
        let temperature = AffineInSpace {
            chart: &current,
            constant: ctx.cfg.thermal.theta0,
            slope: vec3(rng, 10.0),
        };
        let test = AffineInSpace {
            chart: &current,
            constant: uniform(rng, -1.0, 1.0),
            slope: vec3(rng, 1.0),
        };
        let input = VolumeThermalInput {
            temperature: &temperature,
            test: &test,
            conductivity: psd3(rng, 1.0) + Mat3::IDENTITY * 0.1,
            density: ctx.cfg.volume_material.rho0,
            entropy_rate: None,
            heat_source: None,
            boundary_flux: None,
        };
        let r = assemble_volume_thermal(&reference, &current, &input, &rule)?;
        let conduction = r.term("conduction").unwrap_or(f64::NAN);
        t.observe(relative(r.residual().abs(), conduction.abs().max(1.0)));
    }
    Ok(())
}

fn thermal_shell(ctx: &Ctx, rng: &mut SampleRng, t: &mut Tally) -> klts_core::Result<()> {
    let domain = ParamBox::new([0.0, 0.0], [1.0, 1.0]);
    let rule = QuadratureRule::gauss(domain, ctx.cfg.numerics.quadrature_order)?;
    for _ in 0..ctx.cfg.samples.weak_form_states {
        let plane = Plane {
            origin: vec3(rng, 1.0),
            u: Vec3::unit(0) + vec3(rng, 0.3),
            v: Vec3::unit(1) + vec3(rng, 0.3),
            domain,
        };
        let (a, b) = (vec3(rng, 10.0), vec3(rng, 1.0));
        let k = psd3(rng, 1.0) + Mat3::IDENTITY * 0.1;
        let temperature = AffineInSpace {
            chart: &plane,
            constant: ctx.cfg.thermal.theta0,
            slope: a,
        };
        let test = AffineInSpace {
            chart: &plane,
            constant: uniform(rng, -1.0, 1.0),
            slope: b,
        };
        let input = ShellThermalInput {
            temperature: &temperature,
            test: &test,
            conductivity: k,
            density: ctx.cfg.shell_material.rho0,
            entropy_rate: None,
            heat_source: None,
            boundary_flux: None,
        };
        let r = assemble_shell_thermal(&plane, &plane, &input, &rule)?;
        let n = plane.u.cross(&plane.v);
        let area = n.norm();
        let n = n * (1.0 / area);
        let project = |x: Vec3| x - n * n.dot(&x);
        let expected = -project(b).dot(&(k * project(a))) * area;
        let conduction = r.term("conduction").unwrap_or(f64::NAN);
        let scale = expected.abs().max(1.0);
        t.observe(relative((conduction - expected).abs(), scale).max(relative(r.residual().abs(), scale)));
    }
    Ok(())
}

/// `∫ x^e dx` and `∫ |x|^e dx` over `[lo, hi]`.
fn monomial_integrals(lo: f64, hi: f64, e: i32) -> (f64, f64) {
    let p = |x: f64| x.powi(e + 1) / (e + 1) as f64;
    let exact = p(hi) - p(lo);
    let bound = if lo < 0.0 && hi > 0.0 {
        (p(hi.abs()) + p(lo.abs())).abs()
    } else {
        exact.abs()
    };
    (exact, bound)
}

fn quadrature_box<const N: usize>(ctx: &Ctx, rng: &mut SampleRng, t: &mut Tally) -> klts_core::Result<()> {
    let order = ctx.cfg.numerics.quadrature_order;
    let lo: [f64; N] = std::array::from_fn(|_| uniform(rng, -1.0, 0.0));
    let hi: [f64; N] = std::array::from_fn(|i| uniform(rng, lo[i] + 0.5, 1.0));
    let rule = QuadratureRule::gauss(ParamBox::new(lo, hi), order)?;
    let top = 2 * order as i32 - 1;
    let terms: Vec<(f64, [i32; N])> = (0..8)
        .map(|m| {
            // The first term attains the top degree in every variable.
            let e = std::array::from_fn(|_| if m == 0 { top } else { rng_exponent(rng, top) });
            (uniform(rng, -1.0, 1.0), e)
        })
        .collect();
    let (mut exact, mut bound) = (0.0, 0.0);
    for (c, e) in &terms {
        let (mut x, mut b) = (*c, c.abs());
        for i in 0..N {
            let (xi, bi) = monomial_integrals(lo[i], hi[i], e[i]);
            x *= xi;
            b *= bi;
        }
        exact += x;
        bound += b;
    }
    let numeric = rule.integrate(|p| {
        terms
            .iter()
            .map(|(c, e)| c * (0..N).map(|i| p[i].powi(e[i])).product::<f64>())
            .sum()
    });
    t.observe(relative((numeric - exact).abs(), bound));
    Ok(())
}

fn rng_exponent(rng: &mut SampleRng, top: i32) -> i32 {
    (uniform(rng, 0.0, top as f64 + 1.0) as i32).min(top)
}

fn balance(ctx: &Ctx, rng: &mut SampleRng, t: &mut Tally) -> klts_core::Result<()> {
    let h = ctx.stencil();
    for _ in 0..ctx.cfg.samples.weak_form_states * 10 {
        let sigma = ManufacturedStress::random(rng);
        let x = vec3(rng, 1.0);
        let rho = uniform(rng, 0.5, 2.0);
        let acceleration = vec3(rng, 1.0);
        let div = sigma.divergence(&x);
        let report = balance_diagnostics(&BalanceFields {
            reference_density: rho,
            density: rho,
            jacobian: 1.0,
            sigma: sigma.at(&x),
            div_sigma_t: divergence_transpose_fd(|y| sigma.at(y), &x, h),
            body_force: acceleration - div * (1.0 / rho),
            acceleration,
            div_couple_stress_t: Vec3::ZERO,
            body_couple: Vec3::ZERO,
        });
        t.observe(relative(report.linear_momentum.max_abs(), div.max_abs().max(1.0)));
    }
    Ok(())
}

pub fn run(ctx: &Ctx, rng: &mut SampleRng) -> Vec<Record> {
    let rv = rigid_volume(ctx, rng);
    let [vt, vr] = split(ctx, [&RIGID_VOLUME_TRANSLATION, &RIGID_VOLUME_ROTATION], &rv);
    let rs = rigid_shell(ctx, rng);
    let [st, sr] = split(ctx, [&RIGID_SHELL_TRANSLATION, &RIGID_SHELL_ROTATION], &rs);
    let mut out = vec![vt, vr, st, sr];
    out.push(ctx.check(&ENERGY_VOLUME, |t| energy_volume(ctx, rng, t)));
    out.push(ctx.check(&ENERGY_SHELL, |t| energy_shell(ctx, rng, t)));
    out.push(ctx.check(&DIVERGENCE_VOLUME, |t| divergence_volume(ctx, rng, t)));
    out.push(ctx.check(&THERMAL_VOLUME, |t| thermal_volume(ctx, rng, t)));
    out.push(ctx.check(&THERMAL_SHELL, |t| thermal_shell(ctx, rng, t)));
    out.push(ctx.check(&QUADRATURE, |t| {
        for _ in 0..ctx.cfg.samples.weak_form_states {
            quadrature_box::<2>(ctx, rng, t)?;
            quadrature_box::<3>(ctx, rng, t)?;
        }
        Ok(())
    }));
    out.push(ctx.check(&BALANCE, |t| balance(ctx, rng, t)));
    out
}
