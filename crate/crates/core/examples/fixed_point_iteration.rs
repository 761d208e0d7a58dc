//! Runs the map T g(x) = 2^(-2j) g(2^j x) on a perturbed square and prints
//! the successive distances, which shrink by exactly L per step.

use quadstab::fixpoint::{
    a_priori_bound, contraction_check, iterate_to_fixed_point, Branch, GridSpec, IterationOptions,
};
use quadstab::funceq::FunctionExpr;
use quadstab::stability::ControlFunction;

fn main() -> quadstab::Result<()> {
    let grid = GridSpec::dyadic(1.0, -3, 3, true)?;
    let f = FunctionExpr::quad_plus_power(1.0, 0.1, 1.0)?;
    let psi = ControlFunction::power(0.8, 1.0)?.psi();
    let l = 0.5;

    let g = FunctionExpr::quad_plus_power(1.0, 0.3, 1.0)?;
    let check = contraction_check(&f, &g, Branch::Dilate, &psi, l, &grid)?;
    println!("d(Tf, Tg) = {}  <=  L d(f, g) = {}", check.lhs, check.rhs);

    let opts = IterationOptions { tol: 1e-12, max_iter: 60 };
    let fp = iterate_to_fixed_point(&f, Branch::Dilate, &psi, l, &grid, opts)?;
    for (n, d) in fp.diagnostics.distances.iter().enumerate().step_by(5) {
        println!("n = {n:>2}  d(T^n f, T^(n+1) f) = {d}");
    }
    println!("converged after {:?} steps, rate {:?}", fp.diagnostics.n_converged, fp.diagnostics.empirical_rate());
    println!("a-priori distance to the limit: {}", a_priori_bound(fp.diagnostics.distances[0], l)?);
    for (x, q) in fp.table.iter().filter(|(x, _)| *x > 0.0) {
        println!("Q({x}) = {q:.12}");
    }
    Ok(())
}
