//! Exact slope stability for orientations of the A_n quiver.
//!
//! The crate builds the intrinsic weight system of an orientation, checks that
//! the stable thin representations are exactly the indecomposable intervals,
//! describes the cone of all stabilising weight systems, and evaluates the
//! determinantal semi-invariants attached to intervals over small prime fields.
//! All arithmetic is exact; slopes are only ever compared, never divided out.

pub mod cone;
pub mod error;
pub mod ff;
pub mod fourier_motzkin;
pub mod oracle;
pub mod quiver;
pub mod semiinvariants;
pub mod stability;
pub mod sweep;
pub mod weights;

pub use cone::{ConeDescription, LinearForm};
pub use error::{Error, Result};
pub use quiver::{
    DimensionVector, Direction, Interval, QuiverAn, VertexContext, VertexSet, VertexType,
};
pub use weights::WeightSystem;
