//! Bounded perturbations: f = x^2 + u with |u| <= eta has residual at most
//! eta (4 + 10c^2), and the recovered square is within delta / (9c^2).

use quadstab::fixpoint::GridSpec;
use quadstab::funceq::{Coupling, FunctionExpr};
use quadstab::stability::{run_experiment, ControlSpec, StabilityConfig};

fn main() -> quadstab::Result<()> {
    let grid = GridSpec::dyadic(0.5, -2, 5, true)?;
    for c in [2, -3, 5] {
        let coupling = Coupling::new(c)?;
        let f = FunctionExpr::quad_plus_noise(1.0, 0.05, 2024)?;
        let mut config = StabilityConfig::new(coupling, f, ControlSpec::NoiseCeiling, grid.clone());
        config.tol = 1e-12;
        let report = run_experiment(&config)?;
        let worst = report.points.iter().map(|p| p.abs_err).fold(0.0, f64::max);
        println!(
            "c = {c:>2}: delta = {:.3}, bound = {:.5}, max |f - Q| = {worst:.5}, verdict {:?}",
            report.summary.control.parameter(),
            report.points[0].bound,
            report.summary.verdict
        );
    }
    Ok(())
}
