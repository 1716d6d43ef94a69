//! Timelike general rotational surfaces in Minkowski 4-space: invariants,
//! special families and numerical verification.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > t)` also rejects NaN

pub mod error;
pub mod expr;
pub mod families;
pub mod invariants;
pub mod jet;
pub mod meridian;
pub mod minkowski;
pub mod surface;
pub mod verify;

pub use error::{Error, Result};
pub use expr::{parse_meridian, Expr};
pub use families::{
    class_residual, integrate_special, minimal_meridian, pnmc_meridian, Integration, IvpConfig, MinimalParams,
    SpecialClass,
};
pub use invariants::{invariant_sample, InvariantSample};
pub use jet::Jet2;
pub use meridian::{Meridian, Node};
pub use minkowski::Vec4;
pub use surface::{SurfaceSpec, SurfaceType};
pub use verify::{fd_convergence, run_suite, CheckReport, VerifyParams};
