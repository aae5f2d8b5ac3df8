use super::{BasisTriad, Configuration, Variance};
use crate::error::{Error, Result};
use crate::linalg::Mat3;

/// Second-order tensor value: component matrix plus immutable variance and
/// configuration tags.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tensor2 {
    components: Mat3,
    variance: Variance,
    configuration: Configuration,
}

impl Tensor2 {
    pub fn new(components: Mat3, variance: Variance, configuration: Configuration) -> Result<Self> {
        if !components.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(Tensor2 {
            components,
            variance,
            configuration,
        })
    }

    pub fn identity(variance: Variance, configuration: Configuration) -> Self {
        Tensor2 {
            components: Mat3::IDENTITY,
            variance,
            configuration,
        }
    }

    pub fn components(&self) -> &Mat3 {
        &self.components
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn configuration(&self) -> Configuration {
        self.configuration
    }

    /// Assembles the Cartesian matrix `Σ U^{..} (basis ⊗ basis)` from
    /// curvilinear components held in `self`.
    pub fn to_ambient(&self, basis: &BasisTriad) -> Result<Mat3> {
        self.check_configuration(basis.configuration)?;
        let g = basis.tangent_matrix();
        let d = basis.dual_matrix();
        let u = self.components;
        Ok(match self.variance {
            Variance::Contra => g * u * g.transpose(),
            Variance::Co => d * u * d.transpose(),
            Variance::MixedUpDown => g * u * d.transpose(),
            Variance::MixedDownUp => d * u * g.transpose(),
        })
    }

    /// Extracts curvilinear components of a Cartesian matrix, e.g.
    /// `U^{ij} = G^i · U G^j` for [`Variance::Contra`].
    pub fn from_ambient(
        ambient: &Mat3,
        basis: &BasisTriad,
        variance: Variance,
    ) -> Result<Tensor2> {
        let g = basis.tangent_matrix();
        let d = basis.dual_matrix();
        let comps = match variance {
            Variance::Contra => d.transpose() * *ambient * d,
            Variance::Co => g.transpose() * *ambient * g,
            Variance::MixedUpDown => d.transpose() * *ambient * g,
            Variance::MixedDownUp => g.transpose() * *ambient * d,
        };
        Tensor2::new(comps, variance, basis.configuration)
    }

    pub fn add(&self, other: &Tensor2) -> Result<Tensor2> {
        self.check_compatible(other)?;
        Tensor2::new(self.components + other.components, self.variance, self.configuration)
    }

    pub fn sub(&self, other: &Tensor2) -> Result<Tensor2> {
        self.check_compatible(other)?;
        Tensor2::new(self.components - other.components, self.variance, self.configuration)
    }

    pub fn scale(&self, s: f64) -> Result<Tensor2> {
        Tensor2::new(self.components * s, self.variance, self.configuration)
    }

    pub(crate) fn check_configuration(&self, expected: Configuration) -> Result<()> {
        if self.configuration != expected {
            return Err(Error::ConfigurationMismatch {
                expected,
                found: self.configuration,
            });
        }
        Ok(())
    }

    pub(crate) fn check_compatible(&self, other: &Tensor2) -> Result<()> {
        if self.variance != other.variance {
            return Err(Error::VarianceMismatch {
                left: self.variance,
                right: other.variance,
            });
        }
        other.check_configuration(self.configuration)
    }
}

/// Re-expresses the components of `t` in another variance using the
/// metrics of `basis`.
pub fn transform_variance(t: &Tensor2, basis: &BasisTriad, target: Variance) -> Result<Tensor2> {
    let ambient = t.to_ambient(basis)?;
    Tensor2::from_ambient(&ambient, basis, target)
}

/// Invertible map between two configurations (F, F_T, F_e, ...), with its
/// inverse and determinant cached.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoPointMap {
    matrix: Mat3,
    inverse: Mat3,
    det: f64,
    domain: Configuration,
    codomain: Configuration,
}

impl TwoPointMap {
    pub fn new(matrix: Mat3, domain: Configuration, codomain: Configuration) -> Result<Self> {
        let inverse = matrix.try_inverse()?;
        Ok(TwoPointMap {
            matrix,
            inverse,
            det: matrix.det(),
            domain,
            codomain,
        })
    }

    pub fn identity(domain: Configuration, codomain: Configuration) -> Self {
        TwoPointMap {
            matrix: Mat3::IDENTITY,
            inverse: Mat3::IDENTITY,
            det: 1.0,
            domain,
            codomain,
        }
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.matrix
    }

    pub fn inverse(&self) -> &Mat3 {
        &self.inverse
    }

    pub fn transpose(&self) -> Mat3 {
        self.matrix.transpose()
    }

    pub fn inverse_transpose(&self) -> Mat3 {
        self.inverse.transpose()
    }

    pub fn det(&self) -> f64 {
        self.det
    }

    pub fn domain(&self) -> Configuration {
        self.domain
    }

    pub fn codomain(&self) -> Configuration {
        self.codomain
    }

    /// Errors unless `det > 0`.
    pub fn require_orientation(&self) -> Result<()> {
        if self.det > 0.0 {
            Ok(())
        } else {
            Err(Error::NegativeJacobian { det: self.det })
        }
    }

    /// `self ∘ inner`; `inner` must land where `self` starts.
    pub fn compose(&self, inner: &TwoPointMap) -> Result<TwoPointMap> {
        if inner.codomain != self.domain {
            return Err(Error::ConfigurationMismatch {
                expected: self.domain,
                found: inner.codomain,
            });
        }
        TwoPointMap::new(self.matrix * inner.matrix, inner.domain, self.codomain)
    }

    /// Inverse map with swapped configuration tags.
    pub fn inverted(&self) -> TwoPointMap {
        TwoPointMap {
            matrix: self.inverse,
            inverse: self.matrix,
            det: 1.0 / self.det,
            domain: self.codomain,
            codomain: self.domain,
        }
    }
}

/// Push-forward by a two-point map; the rule depends on the variance:
/// ♯ `F T Fᵀ`, ♭ `F⁻ᵀ T F⁻¹`, \ `F T F⁻¹`, / `F⁻ᵀ T Fᵀ`.
pub fn push_forward(t: &Tensor2, map: &TwoPointMap) -> Result<Tensor2> {
    t.check_configuration(map.domain)?;
    let f = map.matrix;
    let fi = map.inverse;
    let c = t.components;
    let out = match t.variance {
        Variance::Contra => f * c * f.transpose(),
        Variance::Co => fi.transpose() * c * fi,
        Variance::MixedUpDown => f * c * fi,
        Variance::MixedDownUp => fi.transpose() * c * f.transpose(),
    };
    Tensor2::new(out, t.variance, map.codomain)
}

/// Pull-back by a two-point map, inverse of [`push_forward`] for each variance:
/// ♯ `F⁻¹ T F⁻ᵀ`, ♭ `Fᵀ T F`, \ `F⁻¹ T F`, / `Fᵀ T F⁻ᵀ`.
pub fn pull_back(t: &Tensor2, map: &TwoPointMap) -> Result<Tensor2> {
    t.check_configuration(map.codomain)?;
    let f = map.matrix;
    let fi = map.inverse;
    let c = t.components;
    let out = match t.variance {
        Variance::Contra => fi * c * fi.transpose(),
        Variance::Co => f.transpose() * c * f,
        Variance::MixedUpDown => fi * c * f,
        Variance::MixedDownUp => f.transpose() * c * fi.transpose(),
    };
    Tensor2::new(out, t.variance, map.domain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::build_basis;
    use crate::linalg::Vec3;

    const R: Configuration = Configuration::Reference;
    const C: Configuration = Configuration::Current;

    fn sample() -> Mat3 {
        Mat3([[1.0, 2.0, -0.5], [0.3, -1.0, 4.0], [2.5, 0.1, 0.7]])
    }

    #[test]
    fn identity_map_leaves_every_variance_unchanged() {
        let f = TwoPointMap::identity(R, C);
        for v in Variance::ALL {
            let t = Tensor2::new(sample(), v, R).unwrap();
            let p = push_forward(&t, &f).unwrap();
            assert_eq!(p.components(), t.components());
            assert_eq!(p.configuration(), C);
        }
    }

    #[test]
    fn mixed_push_of_identity_is_identity() {
        let f = TwoPointMap::new(sample(), R, C).unwrap();
        let one = Tensor2::identity(Variance::MixedUpDown, R);
        let p = push_forward(&one, &f).unwrap();
        assert!((*p.components() - Mat3::IDENTITY).max_abs() < 1e-14);
    }

    #[test]
    fn wrong_configuration_is_rejected() {
        let f = TwoPointMap::identity(R, C);
        let t = Tensor2::new(sample(), Variance::Co, C).unwrap();
        assert!(matches!(
            push_forward(&t, &f),
            Err(Error::ConfigurationMismatch { .. })
        ));
        let t = Tensor2::new(sample(), Variance::Co, R).unwrap();
        assert!(pull_back(&t, &f).is_err());
    }

    #[test]
    fn cartesian_basis_transform_is_identity() {
        let b = BasisTriad::cartesian(R);
        let t = Tensor2::new(sample(), Variance::Contra, R).unwrap();
        for v in Variance::ALL {
            assert_eq!(transform_variance(&t, &b, v).unwrap().components(), &sample());
        }
    }

    #[test]
    fn lowering_contravariant_metric_gives_covariant_metric() {
        let b = build_basis(
            [
                Vec3::new(1.0, 0.2, 0.0),
                Vec3::new(0.1, 2.0, 0.3),
                Vec3::new(0.0, -0.4, 1.5),
            ],
            R,
        )
        .unwrap();
        let contra = Tensor2::new(b.metric_contra, Variance::Contra, R).unwrap();
        let co = transform_variance(&contra, &b, Variance::Co).unwrap();
        assert!((*co.components() - b.metric_co).max_abs() < 1e-13);
    }

    #[test]
    fn mixing_variances_is_an_error() {
        let a = Tensor2::new(sample(), Variance::Co, R).unwrap();
        let b = Tensor2::new(sample(), Variance::Contra, R).unwrap();
        assert!(matches!(a.add(&b), Err(Error::VarianceMismatch { .. })));
    }

    #[test]
    fn composition_checks_configurations() {
        let ft = TwoPointMap::new(Mat3::diag(2.0, 1.0, 1.0), R, Configuration::Intermediate).unwrap();
        let fe = TwoPointMap::new(sample(), Configuration::Intermediate, C).unwrap();
        let f = fe.compose(&ft).unwrap();
        assert_eq!(f.domain(), R);
        assert!(ft.compose(&fe).is_err());
    }
}
