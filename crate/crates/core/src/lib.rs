//! Tail bounds for the supremum of normed sums `S(n)/(√n·v(n))` of centered
//! random fields in Lebesgue–Riesz, mixed-norm and continuous-Lebesgue
//! spaces, together with the Monte Carlo machinery used to check them.

pub mod bounds;
pub mod constants;
pub mod entropy;
pub mod envelope;
pub mod error;
pub mod grid;
pub mod partition;
mod search;
pub mod simulate;

pub use error::{Error, Result};
