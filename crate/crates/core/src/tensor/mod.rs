//! Variance-aware curvilinear tensor algebra.
//!
//! Tensors carry a [`Variance`] tag (♯, ♭, \, /) and a [`Configuration`] tag.
//! Component matrices are Cartesian unless a [`BasisTriad`] is used to
//! extract or assemble curvilinear components.

mod basis;
mod permutation;
mod surface;
mod tensor2;
mod tensor4;

pub use basis::{build_basis, BasisTriad};
pub use permutation::{axial_vector, axial_vector_of, spin_from_axial, PermutationTensor};
pub use surface::{
    normal_leakage, surface_det, surface_det_with_normals, surface_projector, SurfaceProbes,
};
pub use tensor2::{pull_back, push_forward, transform_variance, Tensor2, TwoPointMap};
pub use tensor4::{matrix_product, rearrange, tensor_product, Product, Rearrangement, Tensor4};

/// Index placement of a second-order tensor's components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variance {
    /// `U^{ij} G_i ⊗ G_j`
    Contra,
    /// `U_{ij} G^i ⊗ G^j`
    Co,
    /// `U^i_j G_i ⊗ G^j`
    MixedUpDown,
    /// `U_i^j G^i ⊗ G_j`
    MixedDownUp,
}

impl Variance {
    pub const ALL: [Variance; 4] = [
        Variance::Contra,
        Variance::Co,
        Variance::MixedUpDown,
        Variance::MixedDownUp,
    ];
}

/// Placement of the body a tensor lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Configuration {
    Reference,
    Intermediate,
    Current,
}

/// Absolute/relative tolerances used by consistency checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Absolute tolerance for O(1)-conditioned identities.
    pub absolute: f64,
    /// Relative tolerance elsewhere.
    pub relative: f64,
    /// Skew/symmetry checks (e.g. `axial_vector`).
    pub symmetry: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            absolute: 1e-12,
            relative: 1e-12,
            symmetry: 1e-12,
        }
    }
}

impl Tolerances {
    /// `|a - b| <= absolute + relative·max(|a|, |b|)`
    pub fn close(&self, a: f64, b: f64) -> bool {
        let d = crate::math::abs(a - b);
        d <= self.absolute + self.relative * f64::max(crate::math::abs(a), crate::math::abs(b))
    }
}
