//! Curvilinear thermoelastic kernels for volumes and Kirchhoff-Love shells.
//!
//! The crate is `no_std` (with `alloc`). Every operation is a pure function
//! over immutable values, so evaluation at many material points can be
//! parallelised freely by the caller.
#![no_std]

extern crate alloc;

pub mod constitutive;
pub mod domain;
pub mod eigen;
pub mod error;
pub mod linalg;
pub mod math;
pub mod surface;
pub mod surface_kinematics;
pub mod tensor;
pub mod volume;
pub mod weak_forms;

pub use error::{Error, Result};
pub use linalg::{Mat2, Mat3, Vec3};
