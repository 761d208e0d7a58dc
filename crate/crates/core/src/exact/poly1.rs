use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{rational_to_f64, Rational};

/// Univariate polynomial in `x` with exact rational coefficients.
///
/// Zero coefficients are never stored, so the zero polynomial has no terms and
/// two polynomials are equal iff their maps are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly1 {
    coeffs: BTreeMap<u32, Rational>,
}

impl Poly1 {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `coeff * x^degree`.
    pub fn monomial(coeff: Rational, degree: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(degree, coeff);
        p
    }

    /// Builds `sum coeffs[d] * x^d`.
    pub fn from_coeffs<I>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = Rational>,
    {
        let mut p = Self::zero();
        for (degree, c) in coeffs.into_iter().enumerate() {
            p.add_term(degree as u32, c);
        }
        p
    }

    fn add_term(&mut self, degree: u32, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(degree).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.coeffs.remove(&degree);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, degree: u32) -> Rational {
        self.coeffs.get(&degree).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero terms in increasing degree.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.coeffs.iter().map(|(d, c)| (*d, c))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(d, c)| (*d, c * s)).collect(),
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let Some(top) = self.degree() else {
            return Rational::zero();
        };
        let mut acc = Rational::zero();
        for d in (0..=top).rev() {
            acc = acc * x + self.coeff(d);
        }
        acc
    }

    /// Horner evaluation in binary64 with coefficients rounded once.
    pub fn eval_f64(&self, x: f64) -> f64 {
        let Some(top) = self.degree() else {
            return 0.0;
        };
        let mut acc = 0.0;
        for d in (0..=top).rev() {
            acc = acc * x + self.coeffs.get(&d).map(rational_to_f64).unwrap_or(0.0);
        }
        acc
    }
}

impl Add for &Poly1 {
    type Output = Poly1;
    fn add(self, rhs: &Poly1) -> Poly1 {
        let mut out = self.clone();
        for (d, c) in rhs.terms() {
            out.add_term(d, c.clone());
        }
        out
    }
}

impl Sub for &Poly1 {
    type Output = Poly1;
    fn sub(self, rhs: &Poly1) -> Poly1 {
        self + &(-rhs)
    }
}

impl Neg for &Poly1 {
    type Output = Poly1;
    fn neg(self) -> Poly1 {
        self.scale(&-Rational::one())
    }
}

/// Highest degree first, e.g. `3/2*x^2 - x + 1`.
impl fmt::Display for Poly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (d, c)) in self.coeffs.iter().rev().enumerate() {
            write_signed_term(f, i == 0, c, &monomial_x(*d))?;
        }
        Ok(())
    }
}

fn monomial_x(d: u32) -> String {
    match d {
        0 => String::new(),
        1 => "x".into(),
        _ => format!("x^{d}"),
    }
}

/// Writes one term of a sum; `monomial` is empty for constants.
pub(crate) fn write_signed_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    coeff: &Rational,
    monomial: &str,
) -> fmt::Result {
    let magnitude = coeff.abs();
    match (first, coeff.is_negative()) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    if monomial.is_empty() {
        write!(f, "{magnitude}")
    } else if magnitude.is_one() {
        write!(f, "{monomial}")
    } else {
        write!(f, "{magnitude}*{monomial}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn zero_coefficients_are_dropped() {
        let p = Poly1::from_coeffs([rat(0, 1), rat(1, 1), rat(0, 1)]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(p.terms().count(), 1);
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn display_orders_by_degree() {
        let p = Poly1::from_coeffs([rat(1, 1), rat(-1, 1), rat(3, 2)]);
        assert_eq!(p.to_string(), "3/2*x^2 - x + 1");
        assert_eq!(Poly1::zero().to_string(), "0");
        assert_eq!(Poly1::monomial(rat(-2, 1), 3).to_string(), "-2*x^3");
    }

    #[test]
    fn evaluation_agrees_exact_and_float() {
        let p = Poly1::from_coeffs([rat(0, 1), rat(-1, 1), rat(3, 2)]);
        assert_eq!(p.eval(&rat(2, 1)), rat(4, 1));
        assert_eq!(p.eval_f64(2.0), 4.0);
    }
}
