use core::fmt;

use crate::tensor::{Configuration, Variance};

/// Failure modes shared by every kernel in the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Error {
    /// A metric or two-point map is numerically singular.
    SingularMetric { det: f64, threshold: f64 },
    /// Operands live in different configurations.
    ConfigurationMismatch {
        expected: Configuration,
        found: Configuration,
    },
    /// Binary operation on tensors carrying different variance tags.
    VarianceMismatch { left: Variance, right: Variance },
    /// Tensor handed to an axial-vector extraction has a symmetric part.
    NotSkew { symmetric_norm: f64 },
    /// Probe vectors for a surface determinant are parallel or out of plane.
    DegenerateProbes,
    /// A deformation map has non-positive determinant.
    NegativeJacobian { det: f64 },
    /// A tensor expected to be symmetric positive definite is not.
    NotSpd { min_eigenvalue: f64 },
    /// Surface tangent vectors are parallel (chart not regular).
    DegenerateTangents,
    /// Thermal surface map maps the reference normal with an in-plane part.
    MalformedThermalMap { in_plane_norm: f64 },
    /// Absolute temperature is zero or negative.
    NonpositiveTemperature { temperature: f64 },
    /// Curvature tensor is (near) singular where its inverse is needed.
    SingularCurvature { det: f64 },
    /// Quadrature rule was built for a different parametric domain.
    QuadratureDomainMismatch,
    /// Principal curvature computation met a complex eigenvalue pair.
    ComplexPrincipalCurvatures { discriminant: f64 },
    /// A value that must be finite is NaN or infinite.
    NonFinite,
    /// A parameter is outside its admissible range.
    InvalidParameter(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::SingularMetric { det, threshold } => {
                write!(f, "singular metric or map: |det| = {det:e} below {threshold:e}")
            }
            Error::ConfigurationMismatch { expected, found } => {
                write!(f, "configuration mismatch: expected {expected:?}, found {found:?}")
            }
            Error::VarianceMismatch { left, right } => {
                write!(f, "variance mismatch: {left:?} vs {right:?}")
            }
            Error::NotSkew { symmetric_norm } => {
                write!(f, "tensor is not skew: symmetric part norm {symmetric_norm:e}")
            }
            Error::DegenerateProbes => f.write_str("surface determinant probes are degenerate"),
            Error::NegativeJacobian { det } => write!(f, "non-positive Jacobian {det:e}"),
            Error::NotSpd { min_eigenvalue } => {
                write!(f, "tensor not positive definite (min eigenvalue {min_eigenvalue:e})")
            }
            Error::DegenerateTangents => f.write_str("surface tangents are degenerate"),
            Error::MalformedThermalMap { in_plane_norm } => write!(
                f,
                "thermal map sends the reference normal to a vector with in-plane part {in_plane_norm:e}"
            ),
            Error::NonpositiveTemperature { temperature } => {
                write!(f, "non-positive absolute temperature {temperature}")
            }
            Error::SingularCurvature { det } => {
                write!(f, "curvature tensor singular: |det| = {det:e}")
            }
            Error::QuadratureDomainMismatch => {
                f.write_str("quadrature rule domain does not match the chart domain")
            }
            Error::ComplexPrincipalCurvatures { discriminant } => {
                write!(f, "complex principal curvatures (discriminant {discriminant:e})")
            }
            Error::NonFinite => f.write_str("non-finite value"),
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn check_temperature(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::NonpositiveTemperature { temperature: t })
    }
}
