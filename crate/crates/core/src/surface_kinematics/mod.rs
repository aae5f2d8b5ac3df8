//! Surface deformation, its thermo-elastic split, curvature change and
//! mid-surface rates.

mod deformation;
mod rates;

pub use deformation::{
    curvature_change, intermediate_curvature_from_map, split_with_intermediate, surface_deformation,
    thermo_split_surface, SurfaceDeformationState,
};
pub use rates::{surface_rates, SurfaceRates};
