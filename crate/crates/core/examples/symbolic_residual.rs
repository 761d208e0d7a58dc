//! Expands the residual of a few polynomials exactly. Only `x^2` (and its
//! multiples) makes the residual vanish identically.

use quadstab::exact::{rat, Poly1};
use quadstab::funceq::{parse_polynomial, residual_main_exact, symbolic_residual, Coupling, EquationId};

fn main() -> quadstab::Result<()> {
    let eq = EquationId::main(2)?;
    for text in ["x^2", "x", "x^3", "3/2*x^2 - x", "x^4"] {
        let p = parse_polynomial(text)?;
        println!("f = {text:<12} residual = {}", symbolic_residual(&p, eq));
    }

    let c = Coupling::new(-3)?;
    let cube = Poly1::monomial(rat(1, 1), 3);
    let point = [rat(1, 2), rat(-2, 3), rat(5, 1)];
    println!(
        "\nf = x^3, c = {c}, at (1/2, -2/3, 5): {}",
        residual_main_exact(&cube, c, &point)
    );
    Ok(())
}
