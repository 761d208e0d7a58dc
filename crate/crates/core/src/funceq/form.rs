//! Weighted sums of function values at linear forms in `(x, y, z)`.
//!
//! Both sides of every equation and identity in this crate have the shape
//! `sum_i w_i * f(alpha_i*x + beta_i*y + gamma_i*z)`, so a single
//! representation serves numeric, exact and symbolic evaluation.

use num_traits::{One, Zero};

use super::expr::RealFn;
use crate::exact::{compose_affine, rat, rational_to_f64, Poly1, Poly3, Rational};

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedTerm {
    pub weight: Rational,
    pub arg: [Rational; 3],
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct FunctionalForm {
    terms: Vec<WeightedTerm>,
}

impl FunctionalForm {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `weight * f(a*x + b*y + c*z)` for integer data.
    pub fn with(mut self, weight: i64, arg: [i64; 3]) -> Self {
        self.push(rat(weight, 1), arg.map(|v| rat(v, 1)));
        self
    }

    pub fn push(&mut self, weight: Rational, arg: [Rational; 3]) {
        if !weight.is_zero() {
            self.terms.push(WeightedTerm { weight, arg });
        }
    }

    pub fn terms(&self) -> &[WeightedTerm] {
        &self.terms
    }

    /// `self - other`.
    pub fn minus(&self, other: &FunctionalForm) -> FunctionalForm {
        let mut out = self.clone();
        for t in &other.terms {
            out.push(-t.weight.clone(), t.arg.clone());
        }
        out
    }

    pub fn scaled(&self, s: &Rational) -> FunctionalForm {
        let mut out = FunctionalForm::new();
        for t in &self.terms {
            out.push(&t.weight * s, t.arg.clone());
        }
        out
    }

    /// The argument of every term at a numeric point.
    pub fn arguments(&self, point: [f64; 3]) -> Vec<f64> {
        self.terms.iter().map(|t| linear_f64(&t.arg, point)).collect()
    }

    pub fn eval<F: RealFn + ?Sized>(&self, f: &F, point: [f64; 3]) -> f64 {
        self.eval_with_scale(f, point).0
    }

    /// Returns the value together with `sum_i |w_i * f(arg_i)|`, the natural
    /// magnitude against which rounding in the value should be judged.
    pub fn eval_with_scale<F: RealFn + ?Sized>(&self, f: &F, point: [f64; 3]) -> (f64, f64) {
        let mut value = 0.0;
        let mut scale = 0.0;
        for t in &self.terms {
            let term = rational_to_f64(&t.weight) * f.eval(linear_f64(&t.arg, point));
            value += term;
            scale += term.abs();
        }
        (value, scale)
    }

    pub fn eval_exact(&self, p: &Poly1, point: &[Rational; 3]) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, t| {
            let arg = t
                .arg
                .iter()
                .zip(point)
                .fold(Rational::zero(), |s, (coef, v)| s + coef * v);
            acc + &t.weight * p.eval(&arg)
        })
    }

    /// Expands the form with `f = p` into a polynomial in `x, y, z`.
    pub fn expand(&self, p: &Poly1) -> Poly3 {
        self.terms.iter().fold(Poly3::zero(), |acc, t| {
            let composed = compose_affine(p, &t.arg[0], &t.arg[1], &t.arg[2]);
            &acc + &composed.scale(&t.weight)
        })
    }

    /// Sum of absolute weights, the factor by which a perturbation bounded
    /// by `eta` can move the form.
    pub fn total_weight(&self) -> Rational {
        self.terms
            .iter()
            .fold(Rational::zero(), |acc, t| acc + num_traits::Signed::abs(&t.weight))
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

fn linear_f64(arg: &[Rational; 3], point: [f64; 3]) -> f64 {
    let mut acc = 0.0;
    for (coef, v) in arg.iter().zip(point) {
        if coef.is_zero() {
            continue;
        }
        if coef.is_one() {
            acc += v;
        } else {
            acc += rational_to_f64(coef) * v;
        }
    }
    acc
}
