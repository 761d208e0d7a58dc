//! Numerical tolerances shared by the iteration, the report verdicts and the
//! acceptance checks.

/// Stop iterating once `d(T^n f, T^(n+1) f)` drops to this.
pub const CONVERGENCE: f64 = 1e-10;
/// Slack for pointwise inequalities between floating point quantities.
pub const VERIFICATION: f64 = 1e-9;
/// Largest residual of the limit `Q` that still counts as a solution.
pub const QUADRATICITY: f64 = 1e-7;
/// Relative slack between the observed contraction rate and `L`.
pub const RATE_RELATIVE: f64 = 0.05;
/// Relative agreement between two closed forms of the same bound.
pub const FORMULA_RELATIVE: f64 = 1e-12;
