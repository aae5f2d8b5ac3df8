use crate::constitutive::{require_spd_2, ShellKinematicInput};
use crate::error::{Error, Result};
use crate::linalg::{Mat2, Mat3};
use crate::math;
use crate::tensor::{matrix_product, rearrange, Configuration, Product, Rearrangement, Tensor4};

/// Smallest `|det b^♭◁|` for which `(b^♭◁)⁻¹` is formed.
pub const CURVATURE_DET_GUARD: f64 = 1e-10;

/// Tensorial derivatives of `J`, `C⁻¹`, `H`, `κ` and `b^♯◁` with respect to
/// the surface `C` and `b^♭◁`.
///
/// Inputs are 2×2 components in an orthonormal reference frame, embedded
/// into 3×3 blocks for the fourth-order entries. Fourth-order entries are
/// stored in the `⊗`/`⊠` layout; [`LinearizationTable::derivative`] turns
/// them into `∂A_ij/∂C_kl`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearizationTable {
    pub j: f64,
    /// `H = ½ b^♭◁ : C⁻¹`
    pub mean_curvature: f64,
    /// `κ = det b^♭◁ det C⁻¹`
    pub gauss_curvature: f64,
    /// `det b^♭◁`
    pub curvature_det: f64,
    /// `b^♯◁ = C⁻¹ b^♭◁ C⁻¹`
    pub b_sharp: Mat2,
    /// `∂J/∂C = (J/2) C⁻¹`
    pub dj_dc: Mat2,
    /// `∂C⁻¹/⊕∂C = −½ (C⁻¹ ⊗ C⁻¹ + C⁻¹ ⊠ C⁻¹)`
    pub dcinv_dc: Tensor4,
    /// `∂H/∂C = −½ b^♯◁`
    pub dh_dc: Mat2,
    /// `∂H/∂b^♭◁ = ½ C⁻¹`
    pub dh_db: Mat2,
    /// `∂κ/∂C = −κ C⁻¹`
    pub dkappa_dc: Mat2,
    /// `∂κ/∂b^♭◁ = κ (b^♭◁)⁻¹`; `None` when `|det b^♭◁|` is below
    /// [`CURVATURE_DET_GUARD`].
    pub dkappa_db: Option<Mat2>,
    /// `∂b^♯◁/⊕∂C = −½ (C⁻¹ ⊗ b^♯◁ + C⁻¹ ⊠ b^♯◁ + b^♯◁ ⊗ C⁻¹ + b^♯◁ ⊠ C⁻¹)`
    pub dbsharp_dc: Tensor4,
    /// `∂b^♯◁/⊕∂b^♭◁ = ½ (C⁻¹ ⊗ C⁻¹ + C⁻¹ ⊠ C⁻¹)`
    pub dbsharp_db: Tensor4,
}

fn pair(a: &Mat3, b: &Mat3) -> Tensor4 {
    let outer = matrix_product(a, b, Product::Outer);
    let boxed = matrix_product(a, b, Product::Boxtimes);
    Tensor4::from_fn(Configuration::Reference, |i, j, k, l| outer.get(i, j, k, l) + boxed.get(i, j, k, l))
}

pub fn linearization_table(c: &Mat2, b: &Mat2) -> Result<LinearizationTable> {
    if !c.is_finite() || !b.is_finite() {
        return Err(Error::NonFinite);
    }
    require_spd_2(c)?;
    let det_b = b.det();
    let ci = c.try_inverse()?;
    let j = math::sqrt(c.det());
    let b_sharp = ci * *b * ci;
    let kappa = det_b * ci.det();
    let ci3 = ci.embed();
    let bs3 = b_sharp.embed();
    let cc = pair(&ci3, &ci3);
    let cb = pair(&ci3, &bs3);
    let bc = pair(&bs3, &ci3);
    Ok(LinearizationTable {
        j,
        mean_curvature: 0.5 * b.ddot(&ci),
        gauss_curvature: kappa,
        curvature_det: det_b,
        b_sharp,
        dj_dc: ci * (0.5 * j),
        dcinv_dc: cc.scale(-0.5),
        dh_dc: b_sharp * -0.5,
        dh_db: ci * 0.5,
        dkappa_dc: ci * -kappa,
        dkappa_db: if math::abs(det_b) < CURVATURE_DET_GUARD {
            None
        } else {
            Some(b.try_inverse()? * kappa)
        },
        dbsharp_dc: Tensor4::from_fn(Configuration::Reference, |i, jj, k, l| {
            -0.5 * (cb.get(i, jj, k, l) + bc.get(i, jj, k, l))
        }),
        dbsharp_db: cc.scale(0.5),
    })
}

impl LinearizationTable {
    /// `∂κ/∂b^♭◁`, or `SingularCurvature` on a flat spot.
    pub fn kappa_curvature_derivative(&self) -> Result<Mat2> {
        self.dkappa_db.ok_or(Error::SingularCurvature {
            det: self.curvature_det,
        })
    }

    /// Table for the pulled-back `C` and `b^♭◁` of a shell state.
    pub fn from_input(input: &ShellKinematicInput) -> Result<Self> {
        linearization_table(&input.metric, &input.curvature)
    }

    /// `∂A_ij/∂C_kl` from an entry stored in the `⊗`/`⊠` layout.
    pub fn derivative(entry: &Tensor4) -> Tensor4 {
        rearrange(entry, Rearrangement::R)
    }

    /// Directional derivative `(∂A/∂C) : δC` of a fourth-order entry.
    pub fn directional(entry: &Tensor4, delta: &Mat2) -> Mat2 {
        Mat2::from_upper_left(&Self::derivative(entry).ddot(&delta.embed()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c() -> Mat2 {
        Mat2::new(1.3, 0.2, 0.2, 0.8)
    }

    fn b() -> Mat2 {
        Mat2::new(0.4, -0.1, -0.1, 0.7)
    }

    fn sym(i: usize, j: usize, h: f64) -> Mat2 {
        let mut e = Mat2::ZERO;
        e[(i, j)] += 0.5 * h;
        e[(j, i)] += 0.5 * h;
        e
    }

    #[test]
    fn identity_metric_gives_half_identity() {
        let t = linearization_table(&Mat2::IDENTITY, &(Mat2::IDENTITY * 0.3)).unwrap();
        assert_eq!(t.dj_dc, Mat2::IDENTITY * 0.5);
        assert_eq!(t.dh_db, Mat2::IDENTITY * 0.5);
        assert!((t.dh_dc + Mat2::IDENTITY * 0.15).max_abs() < 1e-16);
    }

    #[test]
    fn inverse_derivative_layout_is_exact() {
        let t = linearization_table(&c(), &b()).unwrap();
        let ci = c().try_inverse().unwrap();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        let expected = -0.5 * (ci[(i, j)] * ci[(k, l)] + ci[(i, k)] * ci[(j, l)]);
                        assert_eq!(t.dcinv_dc.get(i, j, k, l), expected);
                    }
                }
            }
        }
    }

    #[test]
    fn entries_match_fd() {
        let t = linearization_table(&c(), &b()).unwrap();
        let h = 1e-6;
        let scalar = |c: &Mat2, b: &Mat2| {
            let ci = c.try_inverse().unwrap();
            (math::sqrt(c.det()), 0.5 * b.ddot(&ci), b.det() * ci.det(), ci * *b * ci, ci)
        };
        for i in 0..2 {
            for j in 0..2 {
                let e = sym(i, j, h);
                let (jp, hp, kp, bp, cip) = scalar(&(c() + e), &b());
                let (jm, hm, km, bm, cim) = scalar(&(c() - e), &b());
                let fd = |p: f64, m: f64| (p - m) / (2.0 * h);
                assert!((fd(jp, jm) - t.dj_dc.sym()[(i, j)]).abs() < 1e-8);
                assert!((fd(hp, hm) - t.dh_dc[(i, j)]).abs() < 1e-8);
                assert!((fd(kp, km) - t.dkappa_dc[(i, j)]).abs() < 1e-8);
                let dir_b = LinearizationTable::directional(&t.dbsharp_dc, &sym(i, j, 1.0));
                assert!(((bp - bm) * (0.5 / h) - dir_b).max_abs() < 1e-8);
                let dir_c = LinearizationTable::directional(&t.dcinv_dc, &sym(i, j, 1.0));
                assert!(((cip - cim) * (0.5 / h) - dir_c).max_abs() < 1e-8);
                let (_, hp, kp, bp, _) = scalar(&c(), &(b() + e));
                let (_, hm, km, bm, _) = scalar(&c(), &(b() - e));
                assert!((fd(hp, hm) - t.dh_db[(i, j)]).abs() < 1e-8);
                assert!((fd(kp, km) - t.kappa_curvature_derivative().unwrap()[(i, j)]).abs() < 1e-8);
                let dir = LinearizationTable::directional(&t.dbsharp_db, &sym(i, j, 1.0));
                assert!(((bp - bm) * (0.5 / h) - dir).max_abs() < 1e-8);
            }
        }
    }

    #[test]
    fn flat_curvature_is_singular() {
        let t = linearization_table(&c(), &Mat2::new(1.0, 0.0, 0.0, 0.0)).unwrap();
        assert!(t.dkappa_db.is_none());
        assert!(matches!(t.kappa_curvature_derivative(), Err(Error::SingularCurvature { .. })));
        assert_eq!(t.gauss_curvature, 0.0);
        assert!(matches!(
            linearization_table(&Mat2::new(1.0, 2.0, 2.0, 1.0), &b()),
            Err(Error::NotSpd { .. })
        ));
    }
}
