//! Exact and numerical tools for the quadratic-type functional equation
//!
//! ```text
//! f(x+y+2cz) + f(x+y-2cz) + c^2 f(2x) + c^2 f(2y)
//!     = 2 [ f(x+y) + c^2 f(x+z) + c^2 f(x-z) + c^2 f(y+z) + c^2 f(y-z) ]
//! ```
//!
//! and its Hyers-Ulam-Rassias stability.
//!
//! * [`exact`]: rational arithmetic, polynomials and linear algebra.
//! * [`funceq`]: residuals, solution spaces and the catalogue of algebraic
//!   identities behind the stability argument.
//! * [`fixpoint`]: the weighted sup distance, the map `T` and its iteration.
//! * [`stability`]: control functions, bounds and end-to-end experiments.
//! * [`cli`]: the `quadstab` command line.

pub mod cli;
pub mod error;
pub mod exact;
pub mod fixpoint;
pub mod funceq;
pub mod stability;
pub mod tolerance;

pub use error::{Error, Result};
