//! Stability with a power-type control: the residual of f = x^2 + 0.1|x|^p
//! is dominated by eps(|x|^p + |y|^p + |z|^p), and the exact solution found
//! by iteration stays within the guaranteed bound.

use quadstab::fixpoint::GridSpec;
use quadstab::funceq::{Coupling, FunctionExpr};
use quadstab::stability::{run_experiment, ControlFamily, ControlSpec, StabilityConfig};

fn main() -> quadstab::Result<()> {
    let grid = GridSpec::dyadic(1.0, -3, 3, true)?;
    for p in [0.5, 1.0, 3.0] {
        let f = FunctionExpr::quad_plus_power(1.0, 0.1, p)?;
        let mut config = StabilityConfig::new(Coupling::new(2)?, f, ControlSpec::Fit(ControlFamily::power(p)?), grid.clone());
        config.tol = 1e-14;
        config.max_iter = 80;
        let report = run_experiment(&config)?;
        println!("{}", report.render());
    }
    Ok(())
}
