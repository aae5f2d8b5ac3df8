use klts_core::constitutive::{
    volume_response, HeatLawParams, ShellThermalModel, SurfaceMaterialParams, ThermalExpansionModel,
    VolumeMaterialParams,
};
use klts_core::domain::ParamBox;
use klts_core::surface::{MappedSurface, Plane, Sphere};
use klts_core::volume::PolynomialChart;
use klts_core::weak_forms::{
    assemble_shell_mechanical, assemble_shell_thermal, assemble_volume_mechanical, assemble_volume_thermal,
    energy_variation_fd, shell_energy_variation_fd, shell_stress_scale, thermoelastic_shell,
    thermoelastic_shell_energy, AffineInSpace, ConstantScalar, PointKinematics, QuadratureRule, Rotation,
    ShellLoads, ShellThermalInput, Translation, VolumeLoads, VolumeThermalInput,
};
use klts_core::{Mat3, Result, Vec3};

const RIGID_TOL: f64 = 1e-10;

fn cube() -> ParamBox<3> {
    ParamBox::new([0.0; 3], [1.0; 3])
}

fn reference_body() -> PolynomialChart {
    PolynomialChart::affine(Mat3::IDENTITY, Vec3::ZERO, cube())
}

fn deformed_body() -> PolynomialChart {
    let mut c = PolynomialChart::affine(
        Mat3([[1.1, 0.05, 0.0], [-0.02, 0.95, 0.1], [0.03, 0.0, 1.05]]),
        Vec3::new(0.2, -0.1, 0.3),
        cube(),
    );
    c.quadratic[0][1][1] = 0.04;
    c.quadratic[1][0][2] = 0.03;
    c.quadratic[1][2][0] = 0.03;
    c.quadratic[2][2][2] = -0.05;
    c
}

fn volume_params() -> VolumeMaterialParams {
    VolumeMaterialParams {
        mu0: 80.0,
        lambda: 120.0,
        c1: 2.5,
        c2: 1e-3,
        t_ref: 293.0,
        t0: 300.0,
        rho0: 1.2,
    }
}

const T_VOLUME: f64 = 340.0;

fn volume_model() -> ThermalExpansionModel {
    ThermalExpansionModel::isotropic(1.2e-4, 300.0).unwrap()
}

fn volume_stress(k: &PointKinematics) -> Result<Mat3> {
    let r = volume_response(
        &k.f,
        &volume_model(),
        T_VOLUME,
        &volume_params(),
        &Vec3::ZERO,
        &HeatLawParams::default(),
    )?;
    Ok(r.sigma)
}

fn volume_energy(k: &PointKinematics) -> Result<f64> {
    let r = volume_response(
        &k.f,
        &volume_model(),
        T_VOLUME,
        &volume_params(),
        &Vec3::ZERO,
        &HeatLawParams::default(),
    )?;
    Ok(r.psi * volume_params().rho0)
}

fn stress_scale(rule: &QuadratureRule<3>) -> f64 {
    let body = deformed_body();
    let reference = reference_body();
    rule.points
        .iter()
        .zip(&rule.weights)
        .map(|(xi, w)| {
            let f = klts_core::volume::deformation_gradient(&reference, &body, xi).unwrap();
            let k = PointKinematics {
                xi: *xi,
                position: Vec3::ZERO,
                f,
            };
            volume_stress(&k).unwrap().norm() * f.det() * w
        })
        .sum()
}

#[test]
fn volume_rigid_variations_do_no_internal_work() {
    let rule = QuadratureRule::gauss(cube(), 6).unwrap();
    let (reference, current) = (reference_body(), deformed_body());
    let scale = stress_scale(&rule);
    assert!(scale > 1.0);
    let loads = VolumeLoads::default();
    let t = assemble_volume_mechanical(
        &reference,
        &current,
        &Translation(Vec3::new(0.3, -1.0, 0.7)),
        &volume_stress,
        &loads,
        &rule,
    )
    .unwrap();
    assert_eq!(t.g_int, 0.0);
    let rot = Rotation {
        chart: &current,
        omega: Vec3::new(0.4, 0.9, -0.6),
    };
    let r = assemble_volume_mechanical(&reference, &current, &rot, &volume_stress, &loads, &rule).unwrap();
    assert!(r.g_int.abs() <= RIGID_TOL * scale, "{} vs {}", r.g_int, scale);
}

#[test]
fn volume_internal_work_matches_energy_variation() {
    let rule = QuadratureRule::gauss(cube(), 6).unwrap();
    let (reference, current) = (reference_body(), deformed_body());
    let mut test = PolynomialChart::affine(
        Mat3([[0.2, -0.1, 0.3], [0.05, 0.4, -0.2], [0.1, 0.0, -0.3]]),
        Vec3::new(0.1, 0.2, -0.1),
        cube(),
    );
    test.quadratic[2][0][1] = 0.3;
    test.quadratic[2][1][0] = 0.3;
    test.quadratic[0][2][2] = -0.2;
    let g = assemble_volume_mechanical(&reference, &current, &test, &volume_stress, &VolumeLoads::default(), &rule)
        .unwrap();
    let fd = energy_variation_fd(&reference, &current, &test, &volume_energy, &rule, 1e-3).unwrap();
    assert!(g.g_int.abs() > 1.0);
    assert!((g.g_int - fd).abs() <= 1e-6 * g.g_int.abs().max(1.0), "{} vs {fd}", g.g_int);
}

/// `σ(x)` polynomial, `t = σν` on the boundary and `ρ f = −div σ` in the
/// interior give a vanishing residual by the divergence theorem.
#[test]
fn manufactured_stress_closes_the_residual() {
    let rule = QuadratureRule::gauss(cube(), 6).unwrap();
    let body = reference_body();
    let sigma = |x: &Vec3| {
        Mat3([
            [1.0 + x[0] * x[1], 0.3 * x[2], -0.2 * x[0]],
            [0.3 * x[2], 2.0 - x[1] * x[1], 0.5 * x[0] * x[2]],
            [-0.2 * x[0], 0.5 * x[0] * x[2], x[2]],
        ])
    };
    let div = |x: &Vec3| Vec3::new(x[1], 0.5 * x[0] - 2.0 * x[1], 0.8);
    let rho0 = 2.0;
    let stress = |k: &PointKinematics| Ok(sigma(&k.position));
    let body_force = |xi: &[f64; 3]| -(div(&Vec3(*xi)) * (1.0 / rho0));
    let traction = |xi: &[f64; 3], nu: &Vec3| sigma(&Vec3(*xi)) * *nu;
    let loads = VolumeLoads {
        density: rho0,
        body_force: Some(&body_force),
        traction: Some(&traction),
        ..VolumeLoads::default()
    };
    let mut test = PolynomialChart::affine(
        Mat3([[0.4, 0.1, 0.0], [0.0, -0.3, 0.2], [0.1, 0.2, 0.5]]),
        Vec3::new(0.1, 0.0, 0.2),
        cube(),
    );
    test.quadratic[0][1][2] = 0.2;
    test.quadratic[1][0][0] = -0.3;
    let r = assemble_volume_mechanical(&body, &body, &test, &stress, &loads, &rule).unwrap();
    assert!(r.g_int.abs() > 0.1);
    assert!(r.residual().abs() <= 1e-8, "{}", r.residual());
}

#[test]
fn linear_temperature_conduction_equals_boundary_flux() {
    let rule = QuadratureRule::gauss(cube(), 4).unwrap();
    let body = reference_body();
    let a = Vec3::new(0.5, -1.0, 2.0);
    let b = Vec3::new(1.0, 0.3, -0.4);
    let temperature = AffineInSpace {
        chart: &body,
        constant: 300.0,
        slope: a,
    };
    let test = AffineInSpace {
        chart: &body,
        constant: 0.7,
        slope: b,
    };
    let input = VolumeThermalInput {
        temperature: &temperature,
        test: &test,
        conductivity: Mat3::IDENTITY,
        density: 1.0,
        entropy_rate: None,
        heat_source: None,
        boundary_flux: None,
    };
    let r = assemble_volume_thermal(&body, &body, &input, &rule).unwrap();
    let conduction = r.term("conduction").unwrap();
    assert!((conduction + a.dot(&b)).abs() < 1e-12);
    assert!(r.residual().abs() <= 1e-8, "{}", r.residual());
}

#[test]
fn uniform_temperature_has_no_conduction() {
    let rule = QuadratureRule::gauss(cube(), 3).unwrap();
    let (reference, current) = (reference_body(), deformed_body());
    let test = AffineInSpace {
        chart: &current,
        constant: 1.0,
        slope: Vec3::new(0.2, 0.1, 0.4),
    };
    let input = VolumeThermalInput {
        temperature: &ConstantScalar(310.0),
        test: &test,
        conductivity: Mat3::IDENTITY * 3.0,
        density: 1.0,
        entropy_rate: None,
        heat_source: None,
        boundary_flux: None,
    };
    let r = assemble_volume_thermal(&reference, &current, &input, &rule).unwrap();
    assert_eq!(r.residual(), 0.0);
}

fn patch() -> Sphere {
    Sphere {
        radius: 2.0,
        domain: ParamBox::new([0.8, -0.5], [1.6, 0.5]),
    }
}

fn deformed_patch() -> MappedSurface<Sphere> {
    MappedSurface {
        inner: patch(),
        map: Mat3([[1.1, 0.1, 0.0], [-0.05, 0.9, 0.2], [0.0, 0.1, 1.2]]),
        offset: Vec3::new(0.1, 0.0, -0.2),
    }
}

fn shell_params() -> SurfaceMaterialParams {
    SurfaceMaterialParams {
        bulk: 5.0,
        shear: 2.0,
        c1: 0.3,
        c2: 2e-3,
        c3: 0.5,
        t_ref: 300.0,
        t0: 300.0,
        rho0: 1.5,
        thickness: 0.01,
    }
}

fn shell_model() -> ShellThermalModel {
    ShellThermalModel::isotropic(2e-4, 300.0).unwrap()
}

#[test]
fn shell_rigid_variations_do_no_internal_work() {
    let rule = QuadratureRule::gauss(patch().domain, 6).unwrap();
    let (reference, current) = (patch(), deformed_patch());
    let (params, model) = (shell_params(), shell_model());
    let temperature = AffineInSpace {
        chart: &reference,
        constant: 320.0,
        slope: Vec3::new(5.0, -3.0, 2.0),
    };
    let material = thermoelastic_shell(&params, &model, &temperature);
    let scale = shell_stress_scale(&reference, &current, &material, &rule).unwrap();
    assert!(scale > 0.1);
    let loads = ShellLoads::default();
    let t = assemble_shell_mechanical(
        &reference,
        &current,
        &Translation(Vec3::new(1.0, -2.0, 0.5)),
        &material,
        &loads,
        &rule,
    )
    .unwrap();
    assert!(t.g_int.abs() <= RIGID_TOL * scale, "{}", t.g_int);
    let rot = Rotation {
        chart: &current,
        omega: Vec3::new(-0.3, 0.8, 0.5),
    };
    let r = assemble_shell_mechanical(&reference, &current, &rot, &material, &loads, &rule).unwrap();
    assert!(r.g_int.abs() <= RIGID_TOL * scale, "{} vs {scale}", r.g_int);
}

#[test]
fn shell_internal_work_matches_energy_variation() {
    let rule = QuadratureRule::gauss(patch().domain, 6).unwrap();
    let (reference, current) = (patch(), deformed_patch());
    let (params, model) = (shell_params(), shell_model());
    let temperature = ConstantScalar(330.0);
    let material = thermoelastic_shell(&params, &model, &temperature);
    let energy = thermoelastic_shell_energy(&params, &model, &temperature);
    let mut test = klts_core::surface::PolynomialSurface::constant(Vec3::new(0.1, -0.2, 0.05), patch().domain);
    test.linear = [Vec3::new(0.3, 0.1, -0.2), Vec3::new(-0.1, 0.4, 0.2)];
    test.quadratic[0][1] = Vec3::new(0.2, -0.3, 0.1);
    test.quadratic[1][0] = test.quadratic[0][1];
    test.quadratic[1][1] = Vec3::new(0.05, 0.1, -0.4);
    let g = assemble_shell_mechanical(&reference, &current, &test, &material, &ShellLoads::default(), &rule).unwrap();
    let fd = shell_energy_variation_fd(&reference, &current, &test, &energy, &rule, 1e-3).unwrap();
    assert!(g.term("bending").unwrap().abs() > 1e-3);
    assert!((g.g_int - fd).abs() <= 1e-6 * g.g_int.abs().max(1.0), "{} vs {fd}", g.g_int);
}

#[test]
fn flat_patch_linear_temperature_is_balanced() {
    let domain = ParamBox::new([0.0, 0.0], [2.0, 1.0]);
    let plane = Plane::xy(domain);
    let rule = QuadratureRule::gauss(domain, 4).unwrap();
    let a = Vec3::new(1.5, -0.5, 0.0);
    let b = Vec3::new(0.2, 1.0, 0.0);
    let temperature = AffineInSpace {
        chart: &plane,
        constant: 290.0,
        slope: a,
    };
    let test = AffineInSpace {
        chart: &plane,
        constant: -0.4,
        slope: b,
    };
    let input = ShellThermalInput {
        temperature: &temperature,
        test: &test,
        conductivity: Mat3::IDENTITY,
        density: 1.0,
        entropy_rate: None,
        heat_source: None,
        boundary_flux: None,
    };
    let r = assemble_shell_thermal(&plane, &plane, &input, &rule).unwrap();
    assert!((r.term("conduction").unwrap() + 2.0 * a.dot(&b)).abs() < 1e-12);
    assert!(r.residual().abs() <= 1e-8, "{}", r.residual());
}
