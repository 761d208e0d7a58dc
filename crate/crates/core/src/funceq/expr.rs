use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{rational_to_f64, Poly1};

/// A real function of one real variable.
pub trait RealFn {
    fn eval(&self, x: f64) -> f64;
}

impl<F> RealFn for F
where
    F: Fn(f64) -> f64,
{
    fn eval(&self, x: f64) -> f64 {
        self(x)
    }
}

/// The variants a [`FunctionExpr`] can take.
#[derive(Debug, Clone, PartialEq)]
pub enum FunctionKind {
    /// An exact polynomial with zero constant term.
    Polynomial(Poly1),
    /// `a*x^2 + eps0*|x|^p`, with `|0|^p = 0` for every `p >= 0`.
    QuadPlusPower { a: f64, eps0: f64, p: f64 },
    /// `a*x^2 + u(x)` with `u` a keyed pseudorandom value in `[-eta, eta]`,
    /// `u(0) = 0`.
    QuadPlusNoise { a: f64, eta: f64, seed: u64 },
    /// Values on a finite set of sample coordinates.
    Table(Table),
}

/// Lookup table keyed by the exact binary64 value of the coordinate.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    values: BTreeMap<u64, f64>,
}

fn key(x: f64) -> u64 {
    // +0.0 folds -0.0 onto +0.0
    (x + 0.0).to_bits()
}

impl Table {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, x: f64, value: f64) {
        self.values.insert(key(x), value);
    }

    pub fn get(&self, x: f64) -> Option<f64> {
        if x == 0.0 {
            return Some(0.0);
        }
        self.values.get(&key(x)).copied()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.get(x).is_some()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// A univariate real function with `f(0) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionExpr {
    kind: FunctionKind,
    // binary64 coefficients of the polynomial variant, index = degree
    dense: Vec<f64>,
}

impl FunctionExpr {
    pub fn polynomial(p: Poly1) -> Result<Self> {
        if !p.coeff(0).is_zero() {
            return Err(Error::InvalidFunction(format!(
                "polynomial {p} has a nonzero constant term, so f(0) != 0"
            )));
        }
        let dense = match p.degree() {
            Some(d) => (0..=d).map(|k| rational_to_f64(&p.coeff(k))).collect(),
            None => Vec::new(),
        };
        Ok(Self {
            kind: FunctionKind::Polynomial(p),
            dense,
        })
    }

    pub fn quad_plus_power(a: f64, eps0: f64, p: f64) -> Result<Self> {
        if !a.is_finite() || !(eps0.is_finite() && eps0 >= 0.0) || !(p.is_finite() && p >= 0.0) {
            return Err(Error::InvalidFunction(format!(
                "quadpow needs finite a, eps0 >= 0 and p >= 0 (got {a}, {eps0}, {p})"
            )));
        }
        Ok(Self::from_kind(FunctionKind::QuadPlusPower { a, eps0, p }))
    }

    pub fn quad_plus_noise(a: f64, eta: f64, seed: u64) -> Result<Self> {
        if !a.is_finite() || !(eta.is_finite() && eta >= 0.0) {
            return Err(Error::InvalidFunction(format!(
                "quadnoise needs finite a and eta >= 0 (got {a}, {eta})"
            )));
        }
        Ok(Self::from_kind(FunctionKind::QuadPlusNoise { a, eta, seed }))
    }

    pub fn table(table: Table) -> Self {
        Self::from_kind(FunctionKind::Table(table))
    }

    fn from_kind(kind: FunctionKind) -> Self {
        Self {
            kind,
            dense: Vec::new(),
        }
    }

    pub fn kind(&self) -> &FunctionKind {
        &self.kind
    }

    /// Evaluates the function. Tables return NaN away from their points;
    /// use [`Table::contains`] first when that matters.
    pub fn eval(&self, x: f64) -> f64 {
        match &self.kind {
            FunctionKind::Polynomial(_) => self.dense.iter().rev().fold(0.0, |acc, c| acc * x + c),
            FunctionKind::QuadPlusPower { a, eps0, p } => a * x * x + eps0 * abs_pow(x, *p),
            FunctionKind::QuadPlusNoise { a, eta, seed } => a * x * x + eta * unit_noise(*seed, x),
            FunctionKind::Table(t) => t.get(x).unwrap_or(f64::NAN),
        }
    }

    /// Coefficient of `x^2` for the parametric quadratic variants.
    pub fn quadratic_part(&self) -> Option<f64> {
        match &self.kind {
            FunctionKind::Polynomial(p) => Some(rational_to_f64(&p.coeff(2))),
            FunctionKind::QuadPlusPower { a, .. } | FunctionKind::QuadPlusNoise { a, .. } => {
                Some(*a)
            }
            FunctionKind::Table(_) => None,
        }
    }
}

impl RealFn for FunctionExpr {
    fn eval(&self, x: f64) -> f64 {
        FunctionExpr::eval(self, x)
    }
}

impl fmt::Display for FunctionExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            FunctionKind::Polynomial(p) => write!(f, "{p}"),
            FunctionKind::QuadPlusPower { a, eps0, p } => write!(f, "quadpow({a}, {eps0}, {p})"),
            FunctionKind::QuadPlusNoise { a, eta, seed } => {
                write!(f, "quadnoise({a}, {eta}, {seed})")
            }
            FunctionKind::Table(t) => write!(f, "table({} points)", t.len()),
        }
    }
}

/// `|x|^p` with `|0|^p = 0`, including `p = 0`.
pub fn abs_pow(x: f64, p: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x.abs().powf(p)
    }
}

/// Deterministic value in `[-1, 1]` keyed by `(seed, x)`; zero at the origin.
///
/// Each call seeds a fresh ChaCha8 stream from the seed and the exact bit
/// pattern of `x`, so there is no shared generator state.
pub fn unit_noise(seed: u64, x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let mut material = [0u8; 32];
    material[..8].copy_from_slice(&seed.to_le_bytes());
    material[8..16].copy_from_slice(&key(x).to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(material);
    rng.random_range(-1.0..=1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn every_variant_vanishes_at_origin() {
        let fs = [
            FunctionExpr::polynomial(Poly1::monomial(rat(1, 1), 2)).unwrap(),
            FunctionExpr::quad_plus_power(1.0, 0.1, 0.0).unwrap(),
            FunctionExpr::quad_plus_power(2.0, 0.3, 1.5).unwrap(),
            FunctionExpr::quad_plus_noise(1.0, 0.5, 9).unwrap(),
            FunctionExpr::table(Table::new()),
        ];
        for f in &fs {
            assert_eq!(f.eval(0.0), 0.0, "{f}");
            assert_eq!(f.eval(-0.0), 0.0, "{f}");
        }
    }

    #[test]
    fn constant_term_is_rejected() {
        let p = Poly1::from_coeffs([rat(1, 1), rat(0, 1), rat(1, 1)]);
        assert!(FunctionExpr::polynomial(p).is_err());
    }

    #[test]
    fn noise_is_keyed_and_bounded() {
        let f = FunctionExpr::quad_plus_noise(0.0, 0.25, 42).unwrap();
        for i in 1..200 {
            let x = i as f64 * 0.37 - 30.0;
            let u = f.eval(x);
            assert!(u.abs() <= 0.25);
            assert_eq!(u, f.eval(x));
        }
        let g = FunctionExpr::quad_plus_noise(0.0, 0.25, 43).unwrap();
        assert_ne!(f.eval(1.0), g.eval(1.0));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(FunctionExpr::quad_plus_power(1.0, -0.1, 1.0).is_err());
        assert!(FunctionExpr::quad_plus_power(1.0, 0.1, -1.0).is_err());
        assert!(FunctionExpr::quad_plus_noise(1.0, f64::NAN, 1).is_err());
    }

    #[test]
    fn table_lookup() {
        let mut t = Table::new();
        t.insert(2.0, 4.0);
        let f = FunctionExpr::table(t);
        assert_eq!(f.eval(2.0), 4.0);
        assert!(f.eval(3.0).is_nan());
    }
}
