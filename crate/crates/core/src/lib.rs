//! Index theory for families of Dirac operators on flat tori, at desk scale.
//!
//! The crate computes exact spectra of twisted Dirac operators, spectral
//! flow along paths of twists, the index bundle of the chiral family over
//! the torus of flat connections, the characteristic-class formulas that
//! predict these numbers, and the twisted de Rham complex attached to a
//! triple cup product.

pub mod bar_homology;
pub mod char_classes;
pub mod cli;
pub mod clifford;
pub mod error;
pub mod exact;
pub mod family_index;
pub mod spectral_flow;
pub mod torus_dirac;
pub mod verify;

pub use error::{Error, Result};
