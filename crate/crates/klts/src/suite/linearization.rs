use klts_core::weak_forms::{linearization_table, LinearizationTable};
use klts_core::Mat2;

use super::{relative, Ctx, Property};
use crate::fd::central4;
use crate::report::Record;
use crate::sample::{spd2, sym2_regular, SampleRng};

const fn entry(name: &'static str, anchor: &'static str) -> Property {
    Property {
        name,
        anchor,
        tolerance: 1e-6,
    }
}

/// Derivative entries of the surface linearization table, in report order.
pub const ENTRIES: [Property; 8] = [
    entry("linearization.dj_dc", "dJ/dC = (J/2) C^-1"),
    entry("linearization.dcinv_dc", "dC^-1/dC = -1/2 (C^-1 (x) C^-1 + C^-1 [x] C^-1)"),
    entry("linearization.dh_dc", "dH/dC = -1/2 b^sharp"),
    entry("linearization.dh_db", "dH/db = 1/2 C^-1"),
    entry("linearization.dkappa_dc", "dK/dC = -K C^-1"),
    entry("linearization.dkappa_db", "dK/db = K b^-1"),
    entry("linearization.dbsharp_dc", "db^sharp/dC = -1/2 (C^-1 (x) b^sharp + C^-1 [x] b^sharp + b^sharp (x) C^-1 + b^sharp [x] C^-1)"),
    entry("linearization.dbsharp_db", "db^sharp/db = 1/2 (C^-1 (x) C^-1 + C^-1 [x] C^-1)"),
];

/// Values differentiated by the oracle, formed without the table.
fn inv(c: &Mat2) -> Mat2 {
    c.try_inverse().unwrap_or(Mat2::IDENTITY * f64::NAN)
}
fn jac(c: &Mat2) -> f64 {
    c.det().sqrt()
}
fn mean(c: &Mat2, b: &Mat2) -> f64 {
    0.5 * b.ddot(&inv(c))
}
fn gauss(c: &Mat2, b: &Mat2) -> f64 {
    b.det() / c.det()
}
fn sharp(c: &Mat2, b: &Mat2) -> Mat2 {
    let ci = inv(c);
    ci * *b * ci
}

fn unit(k: usize, l: usize) -> Mat2 {
    let mut e = Mat2::ZERO;
    e[(k, l)] += 0.5;
    e[(l, k)] += 0.5;
    e
}

/// Running `(max |fd − exact|, max |exact|)` of one entry.
#[derive(Clone, Copy, Default)]
struct Gap(f64, f64);

impl Gap {
    fn add(&mut self, diff: f64, exact: f64) {
        self.0 = self.0.max(diff.abs());
        self.1 = self.1.max(exact.abs());
    }
}

/// Relative error of each entry at one `(C, b)` pair, in [`ENTRIES`] order.
fn errors(c: &Mat2, b: &Mat2, h: f64) -> klts_core::Result<[f64; 8]> {
    let t = linearization_table(c, b)?;
    let dkappa_db = t.kappa_curvature_derivative()?;
    let mut gaps = [Gap::default(); 8];
    for k in 0..2 {
        for l in 0..2 {
            let dir = unit(k, l);
            let pc = |e: f64| *c + dir * e;
            let pb = |e: f64| *b + dir * e;
            let scalars = [
                (0, central4(|e| jac(&pc(e)), h), t.dj_dc[(k, l)]),
                (2, central4(|e| mean(&pc(e), b), h), t.dh_dc[(k, l)]),
                (3, central4(|e| mean(c, &pb(e)), h), t.dh_db[(k, l)]),
                (4, central4(|e| gauss(&pc(e), b), h), t.dkappa_dc[(k, l)]),
                (5, central4(|e| gauss(c, &pb(e)), h), dkappa_db[(k, l)]),
            ];
            for (slot, fd, exact) in scalars {
                gaps[slot].add(fd - exact, exact);
            }
            let tensors = [
                (1, central4(|e| inv(&pc(e)), h), LinearizationTable::directional(&t.dcinv_dc, &dir)),
                (6, central4(|e| sharp(&pc(e), b), h), LinearizationTable::directional(&t.dbsharp_dc, &dir)),
                (7, central4(|e| sharp(c, &pb(e)), h), LinearizationTable::directional(&t.dbsharp_db, &dir)),
            ];
            for (slot, fd, exact) in tensors {
                gaps[slot].add((fd - exact).max_abs(), exact.max_abs());
            }
        }
    }
    Ok(gaps.map(|g| relative(g.0, g.1)))
}

pub fn run(ctx: &Ctx, rng: &mut SampleRng) -> Vec<Record> {
    let h = ctx.stencil();
    let pairs: Vec<(Mat2, Mat2)> = (0..ctx.cfg.samples.table_pairs).map(|_| (spd2(rng), sym2_regular(rng, 0.05))).collect();
    let all: klts_core::Result<Vec<[f64; 8]>> = pairs.iter().map(|(c, b)| errors(c, b, h)).collect();
    ENTRIES
        .iter()
        .enumerate()
        .map(|(i, p)| {
            ctx.check(p, |t| {
                for e in all.as_ref().map_err(|e| *e)? {
                    t.observe(e[i]);
                }
                Ok(())
            })
        })
        .collect()
}
