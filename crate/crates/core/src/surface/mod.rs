//! Parametric surfaces: frames, curvature, shell layers and surface calculus.

mod calculus;
mod chart;
mod frame;
mod layer;

pub use calculus::{
    covariant_derivative_co, covariant_derivative_co2, covariant_derivative_contra, covariant_divergence,
    metric_derivatives, surface_divergence, surface_gradient_scalar, surface_gradient_vector,
    tangential_components,
};
pub use chart::{
    Cylinder, MappedSurface, MongePatch, PerturbedSurface, Plane, PolynomialSurface, PositionField, Sphere,
    SurfaceChart, SurfaceField, Torus,
};
pub use frame::{frame, frame_from_derivatives, principal_curvatures, SurfacePointFrame, DISCRIMINANT_GUARD};
pub use layer::{layer_frame, layer_thickness, ShellLayerFrame};
