//! The functional equations and their exact and numeric residuals.
//!
//! The base equation is `f(x+y) + f(x-y) = 2f(x) + 2f(y)`. The main equation,
//! parametrised by an integer `c` with `c != 0, +-1`, is
//!
//! ```text
//! f(x+y+2cz) + f(x+y-2cz) + c^2 f(2x) + c^2 f(2y)
//!     = 2[f(x+y) + c^2 f(x+z) + c^2 f(x-z) + c^2 f(y+z) + c^2 f(y-z)]
//! ```
//!
//! Residuals are always "left side minus right side".

mod expr;
mod form;
mod lemmas;
mod parse;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use expr::{abs_pow, unit_noise, FunctionExpr, FunctionKind, RealFn, Table};
pub use form::{FunctionalForm, WeightedTerm};
pub use lemmas::{default_sweep, verify_identity, IdentityId, IdentityVerdict};
pub use parse::{parse_function, parse_polynomial};

use crate::error::{Error, Result};
use crate::exact::{rat, Poly1, Poly3, Rational, RationalMatrix};

/// The integer `c` of the main equation; never `0`, `1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub struct Coupling(i64);

impl Coupling {
    pub fn new(c: i64) -> Result<Self> {
        if matches!(c, -1..=1) {
            Err(Error::InvalidCoupling(c))
        } else {
            Ok(Self(c))
        }
    }

    pub fn get(self) -> i64 {
        self.0
    }

    pub fn squared(self) -> f64 {
        let c = self.0 as f64;
        c * c
    }

    pub fn squared_exact(self) -> Rational {
        rat(self.0, 1) * rat(self.0, 1)
    }
}

impl TryFrom<i64> for Coupling {
    type Error = Error;
    fn try_from(c: i64) -> Result<Self> {
        Self::new(c)
    }
}

impl From<Coupling> for i64 {
    fn from(c: Coupling) -> i64 {
        c.0
    }
}

impl fmt::Display for Coupling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EquationId {
    /// `f(x+y) + f(x-y) = 2f(x) + 2f(y)`.
    QuadBase,
    /// The three-variable equation with parameter `c`.
    QuadMain(Coupling),
}

impl EquationId {
    pub fn main(c: i64) -> Result<Self> {
        Coupling::new(c).map(Self::QuadMain)
    }

    /// Left side minus right side as a weighted form.
    pub fn form(self) -> FunctionalForm {
        match self {
            EquationId::QuadBase => base_form(),
            EquationId::QuadMain(c) => main_form(c),
        }
    }
}

impl fmt::Display for EquationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EquationId::QuadBase => write!(f, "base"),
            EquationId::QuadMain(c) => write!(f, "main(c={c})"),
        }
    }
}

fn base_form() -> FunctionalForm {
    FunctionalForm::new()
        .with(1, [1, 1, 0])
        .with(1, [1, -1, 0])
        .with(-2, [1, 0, 0])
        .with(-2, [0, 1, 0])
}

fn main_form(c: Coupling) -> FunctionalForm {
    let c = c.get();
    let c2 = c * c;
    FunctionalForm::new()
        .with(1, [1, 1, 2 * c])
        .with(1, [1, 1, -2 * c])
        .with(c2, [2, 0, 0])
        .with(c2, [0, 2, 0])
        .with(-2, [1, 1, 0])
        .with(-2 * c2, [1, 0, 1])
        .with(-2 * c2, [1, 0, -1])
        .with(-2 * c2, [0, 1, 1])
        .with(-2 * c2, [0, 1, -1])
}

/// `Delta_f(x, y, z)` for the main equation.
pub fn residual_main<F: RealFn + ?Sized>(f: &F, c: Coupling, x: f64, y: f64, z: f64) -> f64 {
    main_form(c).eval(f, [x, y, z])
}

/// `f(x+y) + f(x-y) - 2f(x) - 2f(y)`.
pub fn residual_quadratic<F: RealFn + ?Sized>(f: &F, x: f64, y: f64) -> f64 {
    base_form().eval(f, [x, y, 0.0])
}

/// Main-equation residual of a polynomial at a rational point, computed
/// without rounding.
pub fn residual_main_exact(p: &Poly1, c: Coupling, point: &[Rational; 3]) -> Rational {
    main_form(c).eval_exact(p, point)
}

/// The residual of `f = p` expanded as a polynomial in `x, y, z`. It is the
/// zero polynomial iff `p` solves the equation identically.
pub fn symbolic_residual(p: &Poly1, eq: EquationId) -> Poly3 {
    eq.form().expand(p)
}

/// Basis of the polynomials of degree at most `max_degree` that solve `eq`.
///
/// The coefficients of `p` are unknowns; every monomial of the expanded
/// residual gives one linear constraint on them, and the solutions are the
/// rational nullspace of that system.
pub fn solution_space(eq: EquationId, max_degree: u32) -> Result<Vec<Poly1>> {
    if max_degree < 2 {
        return Err(Error::DegreeTooSmall(max_degree));
    }
    let columns: Vec<Poly3> = (0..=max_degree)
        .map(|d| symbolic_residual(&Poly1::monomial(rat(1, 1), d), eq))
        .collect();
    let mut monomials: Vec<[u32; 3]> = columns
        .iter()
        .flat_map(|r| r.terms().into_iter().map(|(e, _)| e))
        .collect();
    monomials.sort_unstable();
    monomials.dedup();

    let rows = monomials
        .iter()
        .map(|m| columns.iter().map(|r| r.coeff(*m)).collect())
        .collect::<Vec<Vec<Rational>>>();
    let system = if rows.is_empty() {
        RationalMatrix::zeros(0, columns.len())
    } else {
        RationalMatrix::from_rows(rows)
    };
    Ok(system
        .nullspace()
        .into_iter()
        .map(Poly1::from_coeffs)
        .collect())
}

/// `B(x, y) = (f(x+y) - f(x-y)) / 4`.
pub fn biadditive_form<F: RealFn + ?Sized>(f: &F, x: f64, y: f64) -> f64 {
    0.25 * (f.eval(x + y) - f.eval(x - y))
}

/// Exact `B(x, y)` for a polynomial.
pub fn biadditive_form_exact(p: &Poly1, x: &Rational, y: &Rational) -> Rational {
    (p.eval(&(x + y)) - p.eval(&(x - y))) / rat(4, 1)
}

/// Upper bound on `|Delta_u|` for any perturbation `|u| <= eta`: the sum of
/// absolute weights in the main equation, `4 + 10c^2`, times `eta`.
pub fn perturbation_ceiling(c: Coupling, eta: f64) -> f64 {
    let w = main_form(c).total_weight();
    crate::exact::rational_to_f64(&w) * eta
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(f: FunctionExpr) -> Poly1 {
        match f.kind() {
            FunctionKind::Polynomial(p) => p.clone(),
            _ => unreachable!(),
        }
    }

    fn mono(d: u32) -> FunctionExpr {
        FunctionExpr::polynomial(Poly1::monomial(rat(1, 1), d)).unwrap()
    }

    #[test]
    fn rejects_degenerate_coupling() {
        for c in [-1, 0, 1] {
            assert!(matches!(Coupling::new(c), Err(Error::InvalidCoupling(_))));
        }
        assert!(Coupling::new(2).is_ok());
        assert!(Coupling::new(-7).is_ok());
    }

    #[test]
    fn residual_main_examples() {
        let c2 = Coupling::new(2).unwrap();
        for c in [2, 3, -5] {
            let c = Coupling::new(c).unwrap();
            assert_eq!(residual_main(&mono(2), c, 1.0, 2.0, 3.0), 0.0);
        }
        assert_eq!(residual_main(&mono(1), c2, 1.0, 1.0, 1.0), -16.0);
        assert_eq!(residual_main(&mono(3), c2, 1.0, 1.0, 1.0), 128.0);
    }

    #[test]
    fn residual_quadratic_examples() {
        assert_eq!(residual_quadratic(&mono(2), 3.0, 5.0), 0.0);
        assert_eq!(residual_quadratic(&mono(3), 1.0, 1.0), 4.0);
        assert_eq!(residual_quadratic(&mono(1), 1.0, 2.0), -4.0);
    }

    #[test]
    fn symbolic_residual_of_cube() {
        // 4c^2 (x^3 + y^3 + 3(x + y) z^2) at c = 2
        let r = symbolic_residual(&poly(mono(3)), EquationId::main(2).unwrap());
        assert_eq!(r.to_string(), "16*x^3 + 48*x*z^2 + 16*y^3 + 48*y*z^2");
    }

    #[test]
    fn solution_space_examples() {
        let x2 = Poly1::monomial(rat(1, 1), 2);
        assert_eq!(solution_space(EquationId::QuadBase, 6).unwrap(), vec![x2.clone()]);
        assert_eq!(
            solution_space(EquationId::main(2).unwrap(), 6).unwrap(),
            vec![x2.clone()]
        );
        assert_eq!(solution_space(EquationId::main(3).unwrap(), 4).unwrap(), vec![x2]);
        assert!(matches!(
            solution_space(EquationId::QuadBase, 1),
            Err(Error::DegreeTooSmall(1))
        ));
    }

    #[test]
    fn biadditive_examples() {
        let f = mono(2);
        assert_eq!(biadditive_form(&f, 3.0, 3.0), 9.0);
        assert_eq!(biadditive_form(&f, 2.0, 3.0), 6.0);
        assert_eq!(biadditive_form(&f, 1.0, 0.0), 0.0);
    }

    #[test]
    fn ceiling_weight_matches_term_count() {
        let c = Coupling::new(2).unwrap();
        assert_eq!(perturbation_ceiling(c, 1.0), 44.0);
    }
}
