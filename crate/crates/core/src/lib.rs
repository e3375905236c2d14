//! Toric surfaces over Moufang loops.
//!
//! * [`loops`]: exact loop models and identity checkers.
//! * [`term`]: free inversion-loop terms, a rewriting prover and evaluation.
//! * [`toric`]: elementary `SL2(Z)` matrices and Fulton cycles.
//! * [`lifting`]: pseudoreflections, nice cycles and mock liftings.
//! * [`atlas`]: chart gluing, cocycle verification and point counts.

pub mod atlas;
pub mod error;
pub mod lifting;
pub mod loops;
pub mod term;
pub mod toric;

pub use error::{Error, Result};
