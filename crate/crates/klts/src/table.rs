//! Plot-ready CSV tables: surface linearization entries per state, or the
//! volume stress along a temperature sweep.

use std::path::Path;

use klts_core::constitutive::{thermal_deformation, volume_response};
use klts_core::tensor::Configuration::{Current, Reference};
use klts_core::tensor::{Tensor4, TwoPointMap};
use klts_core::weak_forms::{linearization_table, LinearizationTable};
use klts_core::{Mat2, Mat3, Vec3};

use crate::config::{ScenarioConfig, TableKind};
use crate::error::CliError;
use crate::sample::{spd2, stream, sym2_regular};
use crate::scenario::csv_writer;

/// Stream id of random table states.
const TABLE_STREAM: u64 = 200;

const PAIRS: [(usize, usize); 4] = [(0, 0), (0, 1), (1, 0), (1, 1)];

fn num(x: f64) -> String {
    format!("{x:?}")
}

fn mat2_header(out: &mut Vec<String>, name: &str) {
    out.extend(PAIRS.iter().map(|(i, j)| format!("{name}_{}{}", i + 1, j + 1)));
}

fn mat4_header(out: &mut Vec<String>, name: &str) {
    for (i, j) in PAIRS {
        for (k, l) in PAIRS {
            out.push(format!("{name}_{}{}{}{}", i + 1, j + 1, k + 1, l + 1));
        }
    }
}

fn mat2_cells(out: &mut Vec<String>, m: Option<&Mat2>) {
    out.extend(PAIRS.iter().map(|&p| m.map_or(String::new(), |m| num(m[p]))));
}

/// `∂A_ij/∂C_kl` over the in-plane block.
fn mat4_cells(out: &mut Vec<String>, entry: &Tensor4) {
    let d = LinearizationTable::derivative(entry);
    for (i, j) in PAIRS {
        for (k, l) in PAIRS {
            out.push(num(d.get(i, j, k, l)));
        }
    }
}

pub fn linearization_header() -> Vec<String> {
    let mut h = vec!["state".to_string(), "source".to_string()];
    mat2_header(&mut h, "c");
    mat2_header(&mut h, "b");
    h.extend(["j", "mean_curvature", "gauss_curvature", "curvature_det"].map(String::from));
    mat2_header(&mut h, "b_sharp");
    mat2_header(&mut h, "dj_dc");
    mat4_header(&mut h, "dcinv_dc");
    mat2_header(&mut h, "dh_dc");
    mat2_header(&mut h, "dh_db");
    mat2_header(&mut h, "dkappa_dc");
    mat2_header(&mut h, "dkappa_db");
    mat4_header(&mut h, "dbsharp_dc");
    mat4_header(&mut h, "dbsharp_db");
    h
}

fn linearization_row(index: usize, source: &str, c: &Mat2, b: &Mat2) -> Result<Vec<String>, CliError> {
    let t = linearization_table(c, b)?;
    let mut r = vec![index.to_string(), source.to_string()];
    mat2_cells(&mut r, Some(c));
    mat2_cells(&mut r, Some(b));
    r.extend([t.j, t.mean_curvature, t.gauss_curvature, t.curvature_det].map(num));
    mat2_cells(&mut r, Some(&t.b_sharp));
    mat2_cells(&mut r, Some(&t.dj_dc));
    mat4_cells(&mut r, &t.dcinv_dc);
    mat2_cells(&mut r, Some(&t.dh_dc));
    mat2_cells(&mut r, Some(&t.dh_db));
    mat2_cells(&mut r, Some(&t.dkappa_dc));
    // Blank on a flat spot, where `(b^♭◁)⁻¹` does not exist.
    mat2_cells(&mut r, t.dkappa_db.as_ref());
    mat4_cells(&mut r, &t.dbsharp_dc);
    mat4_cells(&mut r, &t.dbsharp_db);
    Ok(r)
}

fn linearization_rows(cfg: &ScenarioConfig, seed: Option<u64>) -> Result<Vec<Vec<String>>, CliError> {
    let t = &cfg.table;
    let mut rows = Vec::new();
    for (i, s) in t.states.iter().enumerate() {
        let c = Mat2::new(s.c[0][0], s.c[0][1], s.c[1][0], s.c[1][1]);
        let b = Mat2::new(s.b[0][0], s.b[0][1], s.b[1][0], s.b[1][1]);
        rows.push(linearization_row(i, "given", &c, &b)?);
    }
    if t.random_states > 0 {
        let mut rng = stream(cfg.resolve_seed(seed)?, TABLE_STREAM);
        for k in 0..t.random_states {
            let (c, b) = (spd2(&mut rng), sym2_regular(&mut rng, 0.05));
            rows.push(linearization_row(t.states.len() + k, "random", &c, &b)?);
        }
    }
    Ok(rows)
}

const AXES: [&str; 3] = ["1", "2", "3"];

pub fn volume_response_header() -> Vec<String> {
    let mut h = vec!["temperature".to_string()];
    for prefix in ["s", "sigma"] {
        for i in AXES {
            for j in AXES {
                h.push(format!("{prefix}_{i}{j}"));
            }
        }
    }
    h.extend(["s_max_abs", "psi", "entropy"].map(String::from));
    h
}

/// `S(T)` at the fixed `F = F_T(T_c)`, which vanishes at `T = T_c`.
fn volume_response_rows(cfg: &ScenarioConfig) -> Result<Vec<Vec<String>>, CliError> {
    let t = &cfg.table;
    let model = cfg.thermal.volume_model()?;
    let params = cfg.volume_material.params();
    let heat = cfg.heat.params();
    let f_t = thermal_deformation(&model, t.compatibility_temperature)?;
    let f = TwoPointMap::new(*f_t.matrix(), Reference, Current)?;
    let n = t.temperature_steps - 1;
    let mut rows = Vec::new();
    for k in 0..=n {
        let temperature = t.temperature_start + (t.temperature_end - t.temperature_start) * k as f64 / n as f64;
        let r = volume_response(&f, &model, temperature, &params, &Vec3::ZERO, &heat)?;
        let mut row = vec![num(temperature)];
        for m in [&r.s, &r.sigma] {
            row.extend((0..9).map(|q| num(m[(q / 3, q % 3)])));
        }
        row.extend([Mat3::max_abs(&r.s), r.psi, r.entropy].map(num));
        rows.push(row);
    }
    Ok(rows)
}

/// Writes the configured table to `out`; returns the number of data rows.
pub fn write(cfg: &ScenarioConfig, seed: Option<u64>, out: &Path) -> Result<usize, CliError> {
    let (header, rows) = match cfg.table.kind {
        TableKind::Linearization => (linearization_header(), linearization_rows(cfg, seed)?),
        TableKind::VolumeResponse => (volume_response_header(), volume_response_rows(cfg)?),
    };
    let mut w = csv_writer(out)?;
    w.write_record(&header)?;
    for r in &rows {
        w.write_record(r)?;
    }
    w.flush().map_err(CliError::io(out))?;
    Ok(rows.len())
}
