//! The fixed point alternative on sampled function tables.
//!
//! Functions vanishing at the origin are compared with the weighted distance
//! `d(g, h) = sup |g - h| / psi`, which may be infinite. The map
//! `T g(x) = 2^(-2j) g(2^j x)` is a strict contraction for that distance
//! whenever `psi(2^j x) <= L 2^(2j) psi(x)` with `L < 1`, and its iterates
//! converge to the unique fixed point at finite distance from the start.
//!
//! Iterates are never resampled: `(T^n f)(x) = 2^(-2nj) f(2^(nj) x)` is
//! evaluated directly from the base function.

mod grid;
mod metric;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use grid::GridSpec;
pub use metric::{gen_metric, GenMetricValue};

use crate::error::{Error, Result};
use crate::funceq::{FunctionExpr, RealFn, Table};
use crate::tolerance;

/// The sign `j` in `T g(x) = 2^(-2j) g(2^j x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i32", into = "i32")]
pub enum Branch {
    /// `j = +1`: look at `f` far from the origin.
    Dilate,
    /// `j = -1`: look at `f` close to the origin.
    Contract,
}

impl Branch {
    pub fn from_sign(j: i32) -> Result<Self> {
        match j {
            1 => Ok(Self::Dilate),
            -1 => Ok(Self::Contract),
            other => Err(Error::Config(format!("branch must be +1 or -1, got {other}"))),
        }
    }

    pub fn sign(self) -> i32 {
        match self {
            Self::Dilate => 1,
            Self::Contract => -1,
        }
    }

    /// `2^j`.
    pub fn factor(self) -> f64 {
        2f64.powi(self.sign())
    }
}

impl TryFrom<i32> for Branch {
    type Error = Error;
    fn try_from(j: i32) -> Result<Self> {
        Self::from_sign(j)
    }
}

impl From<Branch> for i32 {
    fn from(b: Branch) -> i32 {
        b.sign()
    }
}

/// `T^n f`, evaluated lazily.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationState {
    base: Arc<FunctionExpr>,
    branch: Branch,
    n: u32,
}

impl IterationState {
    pub fn new(base: FunctionExpr, branch: Branch) -> Self {
        Self {
            base: Arc::new(base),
            branch,
            n: 0,
        }
    }

    pub fn base(&self) -> &FunctionExpr {
        &self.base
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// One more application of `T`.
    pub fn apply_t(&self) -> Self {
        Self {
            base: Arc::clone(&self.base),
            branch: self.branch,
            n: self.n + 1,
        }
    }

    pub fn value(&self, x: f64) -> f64 {
        if self.n == 0 {
            return self.base.eval(x);
        }
        let s = 2f64.powi(self.n as i32 * self.branch.sign());
        self.base.eval(s * x) / (s * s)
    }
}

impl RealFn for IterationState {
    fn eval(&self, x: f64) -> f64 {
        self.value(x)
    }
}

/// Free-function form of [`IterationState::apply_t`].
pub fn apply_t(state: &IterationState) -> IterationState {
    state.apply_t()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixedPointDiagnostics {
    /// `d(T^n f, T^(n+1) f)` for `n = 0, 1, ...`.
    pub distances: Vec<GenMetricValue>,
    pub n_converged: Option<u32>,
    pub lipschitz: f64,
}

impl FixedPointDiagnostics {
    /// First index from which every successive distance is finite.
    pub fn first_finite(&self) -> Option<usize> {
        let last_inf = self.distances.iter().rposition(|d| !d.is_finite());
        match last_inf {
            None if !self.distances.is_empty() => Some(0),
            Some(i) if i + 1 < self.distances.len() => Some(i + 1),
            _ => None,
        }
    }

    /// Ratios `d_(n+1) / d_n` over consecutive finite, positive distances.
    pub fn successive_ratios(&self) -> Vec<f64> {
        self.distances
            .windows(2)
            .filter_map(|w| match (w[0], w[1]) {
                (GenMetricValue::Finite(a), GenMetricValue::Finite(b)) if a > 0.0 && b > 0.0 => {
                    Some(b / a)
                }
                _ => None,
            })
            .collect()
    }

    /// Geometric mean of the successive ratios, `None` when there are none.
    pub fn empirical_rate(&self) -> Option<f64> {
        let ratios = self.successive_ratios();
        if ratios.is_empty() {
            return None;
        }
        let log_sum: f64 = ratios.iter().map(|r| r.ln()).sum();
        Some((log_sum / ratios.len() as f64).exp())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationOptions {
    pub tol: f64,
    pub max_iter: u32,
}

impl Default for IterationOptions {
    fn default() -> Self {
        Self {
            tol: tolerance::CONVERGENCE,
            max_iter: 100,
        }
    }
}

/// The limit `Q` of the iteration: the terminal iterate, its values on the
/// grid, and the distance history.
#[derive(Debug, Clone)]
pub struct FixedPoint {
    pub state: IterationState,
    pub table: Vec<(f64, f64)>,
    pub diagnostics: FixedPointDiagnostics,
}

impl FixedPoint {
    pub fn eval(&self, x: f64) -> f64 {
        self.state.value(x)
    }

    /// Values of `Q` at arbitrary coordinates, realised from the same
    /// terminal iterate as the grid table.
    pub fn tabulate<I: IntoIterator<Item = f64>>(&self, points: I) -> Table {
        let mut table = Table::new();
        for (x, q) in &self.table {
            table.insert(*x, *q);
        }
        for x in points {
            if !table.contains(x) {
                table.insert(x, self.state.value(x));
            }
        }
        table
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContractionVerdict {
    /// `d(Tf, Tg)` on the points whose dilation stays on the grid.
    pub lhs: GenMetricValue,
    /// `L * d(f, g)` on the whole grid.
    pub rhs: GenMetricValue,
    pub holds: bool,
}

fn check_lipschitz(l: f64) -> Result<()> {
    if l > 0.0 && l < 1.0 {
        Ok(())
    } else {
        Err(Error::LipschitzOutOfRange(l))
    }
}

/// Checks `d(Tf, Tg) <= L d(f, g)` on the grid.
///
/// `Tf` is compared only at points `x` with `2^j x` on the grid, which is
/// exactly where the contraction estimate is available from grid data.
pub fn contraction_check<P: RealFn + ?Sized>(
    f: &FunctionExpr,
    g: &FunctionExpr,
    branch: Branch,
    psi: &P,
    lipschitz: f64,
    grid: &GridSpec,
) -> Result<ContractionVerdict> {
    check_lipschitz(lipschitz)?;
    let interior = grid.interior_under(branch.factor());
    if interior.is_empty() {
        return Err(Error::GridNotClosed(branch.sign()));
    }
    let inner = grid.restricted(interior);
    let tf = IterationState::new(f.clone(), branch).apply_t();
    let tg = IterationState::new(g.clone(), branch).apply_t();
    let lhs = gen_metric(&tf, &tg, psi, &inner);
    let rhs = gen_metric(f, g, psi, grid).scale(lipschitz);
    Ok(ContractionVerdict {
        lhs,
        rhs,
        holds: lhs.le_with_slack(rhs, tolerance::VERIFICATION),
    })
}

/// Iterates `T` from `f` until `d(T^n f, T^(n+1) f) <= tol` and returns
/// `T^n f` as the fixed point.
pub fn iterate_to_fixed_point<P: RealFn + ?Sized>(
    f: &FunctionExpr,
    branch: Branch,
    psi: &P,
    lipschitz: f64,
    grid: &GridSpec,
    opts: IterationOptions,
) -> Result<FixedPoint> {
    iterate_from(IterationState::new(f.clone(), branch), psi, lipschitz, grid, opts)
}

/// Same as [`iterate_to_fixed_point`] but starting from an arbitrary iterate.
pub fn iterate_from<P: RealFn + ?Sized>(
    start: IterationState,
    psi: &P,
    lipschitz: f64,
    grid: &GridSpec,
    opts: IterationOptions,
) -> Result<FixedPoint> {
    check_lipschitz(lipschitz)?;
    if opts.tol.is_nan() || opts.tol <= 0.0 || opts.max_iter < 1 {
        return Err(Error::Config(format!(
            "need tol > 0 and max_iter >= 1 (got {}, {})",
            opts.tol, opts.max_iter
        )));
    }
    let mut diagnostics = FixedPointDiagnostics {
        distances: Vec::new(),
        n_converged: None,
        lipschitz,
    };
    let mut state = start;
    for step in 0..=opts.max_iter {
        let next = state.apply_t();
        let d = gen_metric(&state, &next, psi, grid);
        diagnostics.distances.push(d);
        if d.le_with_slack(GenMetricValue::Finite(opts.tol), 0.0) {
            diagnostics.n_converged = Some(step);
            let table = grid.points().iter().map(|&x| (x, state.value(x))).collect();
            return Ok(FixedPoint {
                state,
                table,
                diagnostics,
            });
        }
        state = next;
    }
    let last = diagnostics
        .distances
        .last()
        .map(ToString::to_string)
        .unwrap_or_default();
    Err(Error::NotConverged {
        max_iter: opts.max_iter,
        last,
        diagnostics,
    })
}

/// `d(f, f*) <= d(f, Tf) / (1 - L)`.
pub fn a_priori_bound(d_f_tf: GenMetricValue, lipschitz: f64) -> Result<GenMetricValue> {
    check_lipschitz(lipschitz)?;
    Ok(d_f_tf.scale(1.0 / (1.0 - lipschitz)))
}
