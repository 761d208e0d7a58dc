use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly1::{write_signed_term, Poly1};
use super::rational::Rational;

/// Exponent triple `(i, j, k)` of the monomial `x^i y^j z^k`.
pub type Exponents = [u32; 3];

/// Trivariate polynomial in `x, y, z` with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly3 {
    coeffs: BTreeMap<Exponents, Rational>,
}

impl Poly3 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, [0, 0, 0])
    }

    pub fn monomial(coeff: Rational, exps: Exponents) -> Self {
        let mut p = Self::zero();
        p.add_term(exps, coeff);
        p
    }

    /// The variable with index 0, 1 or 2 (x, y, z).
    pub fn var(index: usize) -> Self {
        let mut exps = [0; 3];
        exps[index] = 1;
        Self::monomial(Rational::one(), exps)
    }

    /// `a*x + b*y + c*z`.
    pub fn linear(a: &Rational, b: &Rational, c: &Rational) -> Self {
        let mut p = Self::zero();
        p.add_term([1, 0, 0], a.clone());
        p.add_term([0, 1, 0], b.clone());
        p.add_term([0, 0, 1], c.clone());
        p
    }

    fn add_term(&mut self, exps: Exponents, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(exps).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.coeffs.remove(&exps);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exps: Exponents) -> Rational {
        self.coeffs.get(&exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|e| e.iter().sum()).max()
    }

    /// Nonzero terms in graded lexicographic order with `x > y > z`,
    /// highest first.
    pub fn terms(&self) -> Vec<(Exponents, &Rational)> {
        let mut terms: Vec<_> = self.coeffs.iter().map(|(e, c)| (*e, c)).collect();
        terms.sort_by(|a, b| grlex_desc(&a.0, &b.0));
        terms
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * s)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::constant(Rational::one());
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[Rational; 3]) -> Rational {
        let mut acc = Rational::zero();
        for (exps, c) in &self.coeffs {
            let mut term = c.clone();
            for (v, e) in point.iter().zip(exps) {
                term *= num_traits::pow(v.clone(), *e as usize);
            }
            acc += term;
        }
        acc
    }

    /// Terms free of `y` and `z`, as a polynomial in `x`.
    pub fn project_x(&self) -> Poly1 {
        let mut out = Poly1::zero();
        for (exps, c) in &self.coeffs {
            if exps[1] == 0 && exps[2] == 0 {
                out = &out + &Poly1::monomial(c.clone(), exps[0]);
            }
        }
        out
    }
}

fn grlex_desc(a: &Exponents, b: &Exponents) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    db.cmp(&da).then_with(|| b.cmp(a))
}

/// Expands `p(alpha*x + beta*y + gamma*z)` exactly.
pub fn compose_affine(p: &Poly1, alpha: &Rational, beta: &Rational, gamma: &Rational) -> Poly3 {
    let Some(top) = p.degree() else {
        return Poly3::zero();
    };
    let form = Poly3::linear(alpha, beta, gamma);
    let mut acc = Poly3::zero();
    for d in (0..=top).rev() {
        acc = &(&acc * &form) + &Poly3::constant(p.coeff(d));
    }
    acc
}

impl Add for &Poly3 {
    type Output = Poly3;
    fn add(self, rhs: &Poly3) -> Poly3 {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &Poly3 {
    type Output = Poly3;
    fn sub(self, rhs: &Poly3) -> Poly3 {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Neg for &Poly3 {
    type Output = Poly3;
    fn neg(self) -> Poly3 {
        self.scale(&-Rational::one())
    }
}

impl Mul for &Poly3 {
    type Output = Poly3;
    fn mul(self, rhs: &Poly3) -> Poly3 {
        let mut out = Poly3::zero();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &rhs.coeffs {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for Poly3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (exps, c)) in self.terms().into_iter().enumerate() {
            write_signed_term(f, i == 0, c, &monomial_xyz(&exps))?;
        }
        Ok(())
    }
}

fn monomial_xyz(exps: &Exponents) -> String {
    let mut parts = Vec::new();
    for (name, e) in ["x", "y", "z"].iter().zip(exps) {
        match e {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}
