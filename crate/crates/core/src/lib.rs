//! Fermat–Torricelli points and loci in polygonal Minkowski planes.
//!
//! Exact rational arithmetic throughout the polygonal path; a separate
//! floating-point path handles smooth `L_p` norms.

pub mod angle;
pub mod cancel;
pub mod cert;
pub mod classify;
pub mod engine;
mod error;
pub mod geom;
pub mod lp;
pub mod norm;
pub mod oracle;
pub mod problem;
pub mod render;
pub mod scenes;
pub mod scalar;

pub use error::{Error, Result, ThreeFaceClause};
