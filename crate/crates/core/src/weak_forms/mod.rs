//! Quadrature evaluation of the volume and shell weak forms, variations of
//! the surface objects, the surface linearization table and local balance
//! residuals.
//!
//! Weak forms are evaluated for prescribed fields and test functions; no
//! global system is assembled.

mod balance;
mod breakdown;
mod linearization;
mod quadrature;
mod shell;
mod variation;
mod volume;

pub use balance::{
    balance_diagnostics, divergence_transpose_fd, shell_resultant_diagnostics, BalanceFields, BalanceReport,
    ShellResultantReport,
};
pub use breakdown::ResidualBreakdown;
pub use linearization::{linearization_table, LinearizationTable, CURVATURE_DET_GUARD};
pub use quadrature::{pairwise_sum, GaussLegendre, QuadratureRule, DEFAULT_ORDER, MAX_ORDER};
pub use shell::{
    assemble_shell_mechanical, assemble_shell_thermal, shell_energy_variation_fd, shell_stress_scale,
    thermoelastic_shell, thermoelastic_shell_energy, ShellLoads, ShellMaterial, ShellPointState, ShellThermalInput,
};
pub use variation::{
    shell_variations, AffineInSpace, ConstantScalar, FnScalar, Rotation, ScalarField, ShellVariation, Translation,
};
pub use volume::{
    assemble_volume_mechanical, assemble_volume_thermal, energy_variation_fd, PointKinematics, VolumeLoads,
    VolumeThermalInput,
};
