//! Stability experiments: a function `f` whose residual is dominated by a
//! control `phi` is driven to the exact solution `Q` by the map `T`, and the
//! distance `|f - Q|` is checked against the bound the control implies.

mod control;
mod fit;
mod report;

pub use control::{
    bound_formulas_agree, checkpoint_constant, closed_form_bound, general_bound, lipschitz,
    lipschitz_for_power, printed_lipschitz, psi_from_phi, theoretical_bound, weight_scaling_gap,
    BranchChoice, ControlFamily, ControlFunction, Psi,
};
pub use fit::{check_hypothesis, empirical_control_fit, sample_triples, HypothesisCheck, MAX_TRIPLES};
pub use report::{IterationRecord, OutputFormat, PointRecord, ReportSummary, StabilityReport, Verdict};

use crate::error::{Error, Result};
use crate::fixpoint::{
    a_priori_bound, gen_metric, iterate_from, Branch, FixedPoint, FixedPointDiagnostics,
    GenMetricValue, GridSpec, IterationOptions, IterationState,
};
use crate::funceq::{perturbation_ceiling, residual_main, Coupling, FunctionExpr, FunctionKind, RealFn};
use crate::tolerance;

/// Where the control of an experiment comes from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ControlSpec {
    Given(ControlFunction),
    /// Smallest member of the family that dominates the sampled residuals.
    Fit(ControlFamily),
    /// `delta = eta (4 + 10c^2)` for a `quadnoise` function with amplitude `eta`.
    NoiseCeiling,
}

impl ControlSpec {
    pub fn resolve(self, f: &FunctionExpr, c: Coupling, triples: &[[f64; 3]]) -> Result<ControlFunction> {
        match self {
            Self::Given(control) => Ok(control),
            Self::Fit(family) => family.with_parameter(empirical_control_fit(f, c, family, triples)),
            Self::NoiseCeiling => match f.kind() {
                FunctionKind::QuadPlusNoise { eta, .. } => {
                    ControlFunction::constant(perturbation_ceiling(c, *eta))
                }
                _ => Err(Error::Config(
                    "an analytic noise ceiling needs a quadnoise function".into(),
                )),
            },
        }
    }
}

#[derive(Debug, Clone)]
pub struct StabilityConfig {
    pub c: Coupling,
    pub function: FunctionExpr,
    pub control: ControlSpec,
    pub branch: BranchChoice,
    pub grid: GridSpec,
    pub tol: f64,
    pub max_iter: u32,
    pub seed: u64,
}

impl StabilityConfig {
    /// Auto branch, `tol = 1e-10`, 100 iterations, seed 0.
    pub fn new(c: Coupling, function: FunctionExpr, control: ControlSpec, grid: GridSpec) -> Self {
        let defaults = IterationOptions::default();
        Self {
            c,
            function,
            control,
            branch: BranchChoice::Auto,
            grid,
            tol: defaults.tol,
            max_iter: defaults.max_iter,
            seed: 0,
        }
    }
}

fn exponent(control: &ControlFunction) -> f64 {
    match *control {
        ControlFunction::Power { p, .. } => p,
        ControlFunction::Constant { .. } => 0.0,
    }
}

/// Runs one experiment end to end.
///
/// Invalid parameters are errors. Failed checks, including
/// non-convergence, are reported through the verdict.
pub fn run_experiment(config: &StabilityConfig) -> Result<StabilityReport> {
    let c = config.c;
    let f = &config.function;
    let grid = &config.grid;
    let triples = sample_triples(grid, config.seed);

    let control = config.control.resolve(f, c, &triples)?;
    let branch = config.branch.resolve(&control)?;
    let l = lipschitz(&control, branch)?;
    let psi = control.psi();
    let hypothesis = check_hypothesis(f, c, &control, &triples);

    let start = IterationState::new(f.clone(), branch);
    let d_f_tf = gen_metric(&start, &start.apply_t(), &psi, grid);
    let checkpoint = checkpoint_constant(l, branch, c);
    let checkpoint_pass = d_f_tf.le_with_slack(GenMetricValue::Finite(checkpoint), tolerance::VERIFICATION);

    let opts = IterationOptions {
        tol: config.tol,
        max_iter: config.max_iter,
    };
    let (fixed, diagnostics) = match iterate_from(start.clone(), &psi, l, grid, opts) {
        Ok(fp) => {
            let diagnostics = fp.diagnostics.clone();
            (Some(fp), diagnostics)
        }
        Err(Error::NotConverged { diagnostics, .. }) => (None, diagnostics),
        Err(e) => return Err(e),
    };

    let empirical_lipschitz = diagnostics.empirical_rate();
    let rate_matches = empirical_lipschitz.is_none_or(|r| (r - l).abs() <= tolerance::RATE_RELATIVE * l);

    let route_constant = checkpoint / (1.0 - l);
    let mut bound_routes_agree = true;
    for &x in grid.points() {
        let bound = theoretical_bound(&control, c, branch, x)?;
        let route = route_constant * psi.eval(x);
        bound_routes_agree &= (bound - route).abs() <= tolerance::FORMULA_RELATIVE * bound.abs().max(route.abs());
    }

    let mut points = Vec::new();
    let mut quadraticity_max = None;
    let mut start_independent = None;
    if let Some(fp) = &fixed {
        let prior = a_priori_bound(d_f_tf, l)?;
        for &(x, q) in &fp.table {
            let fx = f.eval(x);
            let abs_err = (fx - q).abs();
            let bound = theoretical_bound(&control, c, branch, x)?;
            let a_priori = prior.scale(psi.eval(x));
            points.push(PointRecord {
                x,
                f: fx,
                q,
                abs_err,
                bound,
                a_priori_bound: a_priori,
                pass: abs_err <= bound + tolerance::VERIFICATION,
                a_priori_pass: GenMetricValue::Finite(abs_err).le_with_slack(a_priori, tolerance::VERIFICATION),
            });
        }
        quadraticity_max = Some(max_residual(&fp.state, c, &triples));
        start_independent = Some(independent_of_start(fp, &start, &psi, l, grid, opts));
    }
    let quadraticity_pass = quadraticity_max.is_some_and(|m| m <= tolerance::QUADRATICITY);

    let verdict = if fixed.is_none() {
        Verdict::NonConvergence
    } else if !hypothesis.pass {
        Verdict::HypothesisFailure
    } else if !checkpoint_pass {
        Verdict::CheckpointFailure
    } else if !points.iter().all(|p| p.pass) {
        Verdict::BoundFailure
    } else if !quadraticity_pass {
        Verdict::QuadraticityFailure
    } else {
        Verdict::Pass
    };

    let summary = ReportSummary {
        c,
        function: f.to_string(),
        control,
        j: branch,
        lipschitz: l,
        printed_lipschitz: printed_lipschitz(exponent(&control), branch),
        empirical_lipschitz,
        rate_matches,
        d_f_tf,
        checkpoint,
        checkpoint_pass,
        hypothesis,
        quadraticity_max,
        quadraticity_pass,
        start_independent,
        bound_routes_agree,
        iterations: diagnostics.n_converged,
        grid_points: grid.points().len(),
        tol: config.tol,
        max_iter: config.max_iter,
        seed: config.seed,
        verdict,
    };
    Ok(StabilityReport {
        summary,
        iterations: iteration_records(&diagnostics),
        points,
    })
}

fn iteration_records(diagnostics: &FixedPointDiagnostics) -> Vec<IterationRecord> {
    let mut prev: Option<GenMetricValue> = None;
    diagnostics
        .distances
        .iter()
        .enumerate()
        .map(|(n, &d)| {
            let ratio = match (prev, d) {
                (Some(GenMetricValue::Finite(a)), GenMetricValue::Finite(b)) if a > 0.0 && b > 0.0 => Some(b / a),
                _ => None,
            };
            prev = Some(d);
            IterationRecord {
                n: n as u32,
                distance: d,
                ratio,
            }
        })
        .collect()
}

/// Largest `|Delta_Q|` over the sampled triples.
fn max_residual<Q: RealFn + ?Sized>(q: &Q, c: Coupling, triples: &[[f64; 3]]) -> f64 {
    triples
        .iter()
        .map(|&[x, y, z]| residual_main(q, c, x, y, z).abs())
        .fold(0.0, f64::max)
}

/// Iterating from `Tf` instead of `f` must land on the same fixed point,
/// up to the two a-posteriori radii `tol / (1 - L)`.
fn independent_of_start<P: RealFn + ?Sized>(
    fp: &FixedPoint,
    start: &IterationState,
    psi: &P,
    l: f64,
    grid: &GridSpec,
    opts: IterationOptions,
) -> bool {
    match iterate_from(start.apply_t(), psi, l, grid, opts) {
        Ok(other) => gen_metric(&fp.state, &other.state, psi, grid).le_with_slack(
            GenMetricValue::Finite(2.0 * opts.tol / (1.0 - l)),
            tolerance::VERIFICATION,
        ),
        Err(_) => false,
    }
}

/// The branch a power exponent selects automatically.
pub fn auto_branch(p: f64) -> Branch {
    if p < 2.0 {
        Branch::Dilate
    } else {
        Branch::Contract
    }
}
