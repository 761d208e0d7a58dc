//! The contraction constant for power-type weights. With L = 2^((p-2)j) the
//! general bound L^((j+1)/2) / (c^2 (1-L)) psi(x) reduces to the closed form
//! j eps |x|^p / (c^2 (4 - 2^p)); with 2^((p-3)j) it does not.

use quadstab::fixpoint::Branch;
use quadstab::funceq::Coupling;
use quadstab::stability::{
    auto_branch, bound_formulas_agree, closed_form_bound, general_bound, lipschitz_for_power, printed_lipschitz,
    ControlFunction,
};
use quadstab::funceq::RealFn;

fn main() -> quadstab::Result<()> {
    let c = Coupling::new(2)?;
    println!("{:>4} {:>3} {:>8} {:>8} {:>12} {:>12} {:>12}", "p", "j", "L", "2^(p-3)j", "closed", "general", "with 2^(p-3)j");
    for p in [0.0, 0.5, 1.0, 1.5, 3.0, 4.0] {
        let branch: Branch = auto_branch(p);
        let l = lipschitz_for_power(p, branch)?;
        let printed = printed_lipschitz(p, branch);
        let psi = ControlFunction::power(1.0, p)?.psi().eval(1.0);
        println!(
            "{p:>4} {:>3} {l:>8.4} {printed:>8.4} {:>12.6} {:>12.6} {:>12.6}",
            branch.sign(),
            closed_form_bound(1.0, p, branch, c, 1.0),
            general_bound(l, branch, c, psi),
            general_bound(printed, branch, c, psi),
        );
        assert!(bound_formulas_agree(p, branch, l, c));
        assert!(!bound_formulas_agree(p, branch, printed, c));
    }
    Ok(())
}
