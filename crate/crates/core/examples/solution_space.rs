//! Polynomial solutions of both equations: coefficient matching turns each
//! equation into a rational linear system whose nullspace is spanned by x^2.

use quadstab::funceq::{solution_space, EquationId};

fn main() -> quadstab::Result<()> {
    let mut equations = vec![EquationId::QuadBase];
    for c in [-3, 2, 5] {
        equations.push(EquationId::main(c)?);
    }
    for eq in equations {
        for degree in [4, 8] {
            let basis = solution_space(eq, degree)?;
            let names: Vec<String> = basis.iter().map(ToString::to_string).collect();
            println!("{eq:<10} degree <= {degree}: dimension {} basis [{}]", basis.len(), names.join(", "));
        }
    }
    Ok(())
}
