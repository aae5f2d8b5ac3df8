use crate::eigen::{require_spd, sym_pow};
use crate::error::{Error, Result};
use crate::linalg::Mat3;
use crate::math;
use crate::tensor::{Tensor2, TwoPointMap, Variance};

/// Orders with `|n|` below this use the logarithmic branch.
pub const LOG_BRANCH_THRESHOLD: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrainFrame {
    /// `E⁽ⁿ⁾` from `U`
    Lagrangian,
    /// `e⁽ⁿ⁾` from `V`
    Eulerian,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SethHillStrain {
    pub order: f64,
    pub value: Tensor2,
    pub frame: StrainFrame,
}

/// `(c^{n/2} − 1)/n` evaluated without cancellation, `½ ln c` near `n = 0`.
fn seth_hill_scalar(c: f64, n: f64) -> f64 {
    let half_log = 0.5 * math::ln(c);
    if math::abs(n) < LOG_BRANCH_THRESHOLD {
        half_log
    } else {
        math::expm1(n * half_log) / n
    }
}

/// Strain of order `n` from the stretch tensor of `F`.
pub fn seth_hill(f: &TwoPointMap, n: f64, frame: StrainFrame) -> Result<SethHillStrain> {
    let fm = *f.matrix();
    let (stretch_sq, config) = match frame {
        StrainFrame::Lagrangian => (fm.transpose() * fm, f.domain()),
        StrainFrame::Eulerian => (fm * fm.transpose(), f.codomain()),
    };
    let eig = require_spd(&stretch_sq)?;
    let value = eig.map(|c| seth_hill_scalar(c, n));
    Ok(SethHillStrain {
        order: n,
        value: Tensor2::new(value, Variance::Co, config)?,
        frame,
    })
}

/// Outcome of composing two deformations `F = F₂ F₁` in a Seth–Hill measure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HenckyReport {
    pub order: f64,
    /// `E⁽ⁿ⁾(F₂F₁) − E₁⁽ⁿ⁾ − E₂⁽ⁿ⁾`
    pub additive_defect: Mat3,
    /// `(F₁ᵀ)^{n/2} E₂⁽ⁿ⁾ F₁^{n/2} + E₁⁽ⁿ⁾`; absent for `n = 0`.
    pub composition: Option<Mat3>,
    /// `‖E⁽ⁿ⁾(F₂F₁) − composition‖`; zero for `n = 0`.
    pub composition_defect: f64,
}

impl HenckyReport {
    pub fn additive_defect_norm(&self) -> f64 {
        self.additive_defect.norm()
    }
}

/// `M^{p}` for integer `p` (any invertible `M`) or real `p` (SPD `M`).
fn matrix_power(m: &Mat3, p: f64) -> Result<Mat3> {
    let rounded = libm::round(p);
    if math::abs(p - rounded) < 1e-14 && math::abs(rounded) <= 64.0 {
        let base = if rounded < 0.0 { m.try_inverse()? } else { *m };
        let mut out = Mat3::IDENTITY;
        for _ in 0..(math::abs(rounded) as usize) {
            out = out * base;
        }
        return Ok(out);
    }
    if !m.is_symmetric(1e-12 * m.norm()) {
        return Err(Error::InvalidParameter("fractional power of a non-symmetric map"));
    }
    sym_pow(m, p)
}

/// Compares `E⁽ⁿ⁾(F₂F₁)` against plain addition and against the
/// composition rule.
pub fn hencky_additivity_check(f1: &TwoPointMap, f2: &TwoPointMap, n: f64) -> Result<HenckyReport> {
    let total = f2.compose(f1)?;
    let e = *seth_hill(&total, n, StrainFrame::Lagrangian)?.value.components();
    let e1 = *seth_hill(f1, n, StrainFrame::Lagrangian)?.value.components();
    let e2 = *seth_hill(f2, n, StrainFrame::Lagrangian)?.value.components();
    let additive_defect = e - e1 - e2;
    if math::abs(n) < LOG_BRANCH_THRESHOLD {
        return Ok(HenckyReport {
            order: n,
            additive_defect,
            composition: None,
            composition_defect: 0.0,
        });
    }
    let p = matrix_power(f1.matrix(), 0.5 * n)?;
    let composition = p.transpose() * e2 * p + e1;
    Ok(HenckyReport {
        order: n,
        additive_defect,
        composition: Some(composition),
        composition_defect: (e - composition).norm(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::Configuration::{Current, Intermediate, Reference};

    fn stretch(a: f64) -> TwoPointMap {
        TwoPointMap::new(Mat3::diag(a, 1.0, 1.0), Reference, Current).unwrap()
    }

    #[test]
    fn identity_has_zero_strain() {
        let f = TwoPointMap::identity(Reference, Current);
        for n in [-2.0, 0.0, 0.5, 2.0] {
            assert_eq!(*seth_hill(&f, n, StrainFrame::Lagrangian).unwrap().value.components(), Mat3::ZERO);
        }
    }

    #[test]
    fn diagonal_values() {
        let e0 = seth_hill(&stretch(2.0), 0.0, StrainFrame::Lagrangian).unwrap();
        assert!((e0.value.components()[(0, 0)] - core::f64::consts::LN_2).abs() < 1e-10);
        let e2 = seth_hill(&stretch(2.0), 2.0, StrainFrame::Eulerian).unwrap();
        assert!((e2.value.components()[(0, 0)] - 1.5).abs() < 1e-14);
    }

    #[test]
    fn coaxial_logs_add() {
        let f1 = TwoPointMap::new(Mat3::diag(2.0, 1.0, 1.0), Reference, Intermediate).unwrap();
        let f2 = TwoPointMap::new(Mat3::diag(3.0, 1.0, 1.0), Intermediate, Current).unwrap();
        let r = hencky_additivity_check(&f1, &f2, 0.0).unwrap();
        assert!(r.additive_defect_norm() < 1e-12);
        let r = hencky_additivity_check(&f1, &f2, 2.0).unwrap();
        assert!(r.composition_defect < 1e-12);
        assert!((r.additive_defect[(0, 0)] - 12.0).abs() < 1e-12);
    }
}
