//! Curvilinear volume charts and finite-strain kinematics.

mod chart;
mod christoffel;
mod kinematics;
mod strain;

pub use chart::{
    CartesianChart, CylindricalChart, MappedChart, PerturbedChart, PolynomialChart, VolumeChart, VolumeField,
};
pub use christoffel::{
    christoffel, christoffel_from_basis, covariant_derivative_co, covariant_derivative_co2,
    covariant_derivative_contra, covariant_derivative_contra2, dual_covariant_derivative,
    tangent_covariant_derivative, ChristoffelField,
};
pub use kinematics::{
    deformation_gradient, jacobian_from_probes, nanson, thermo_split, velocity_gradient, VelocityGradient,
    VolumeState,
};
pub use strain::{
    hencky_additivity_check, seth_hill, HenckyReport, SethHillStrain, StrainFrame, LOG_BRANCH_THRESHOLD,
};
