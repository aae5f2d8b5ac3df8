//! Thermal expansion, Helmholtz energies with their stress/entropy
//! relations, shell resultants, heat-flux laws, entropy production and
//! structural tensors.

mod heat;
mod shell;
mod structural;
mod thermal;
mod volume;

pub use heat::{
    conductive_entropy_production, convection_flux, entropy_production, fourier_flux, radiation_flux,
    EntropyProduction, EntropyState, HeatLawParams, STEFAN_BOLTZMANN,
};
pub use shell::{
    boundary_moments, kirchhoff_love_stress, membrane_to_sigma, shell_energy_density, shell_response,
    transverse_shear, ShellKinematicInput, ShellResponse, SurfaceMaterialParams,
};
pub(crate) use thermal::require_spd_2;
pub use structural::{structural_update, StructuralTensor};
pub use thermal::{
    fd_temperature_derivative, thermal_deformation, thermal_rate, ShellThermalModel, ThermalExpansionModel,
    TEMPERATURE_FD_STEP,
};
pub use volume::{
    elastic_energy_density, elastic_stress_intermediate, energy_density, volume_response, VolumeMaterialParams,
    VolumeResponse,
};
