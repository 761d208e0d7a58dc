use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::grid::GridSpec;
use crate::funceq::RealFn;

/// A distance in `[0, inf]`. Infinity is an explicit value, never an
/// overflowed float.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GenMetricValue {
    Finite(f64),
    Infinite,
}

impl GenMetricValue {
    pub fn finite(self) -> Option<f64> {
        match self {
            Self::Finite(v) => Some(v),
            Self::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Self::Finite(_))
    }

    pub fn scale(self, factor: f64) -> Self {
        match self {
            Self::Finite(v) => Self::Finite(v * factor),
            Self::Infinite if factor == 0.0 => Self::Finite(0.0),
            Self::Infinite => Self::Infinite,
        }
    }

    /// `self <= other + slack`, with `inf <= inf`.
    pub fn le_with_slack(self, other: Self, slack: f64) -> bool {
        match (self, other) {
            (_, Self::Infinite) => true,
            (Self::Infinite, Self::Finite(_)) => false,
            (Self::Finite(a), Self::Finite(b)) => a <= b + slack,
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl PartialOrd for GenMetricValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Self::Infinite, Self::Infinite) => Some(Ordering::Equal),
            (Self::Infinite, Self::Finite(_)) => Some(Ordering::Greater),
            (Self::Finite(_), Self::Infinite) => Some(Ordering::Less),
            (Self::Finite(a), Self::Finite(b)) => a.partial_cmp(b),
        }
    }
}

impl Add for GenMetricValue {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (Self::Finite(a), Self::Finite(b)) => Self::Finite(a + b),
            _ => Self::Infinite,
        }
    }
}

impl fmt::Display for GenMetricValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(v) => write!(f, "{v}"),
            Self::Infinite => write!(f, "inf"),
        }
    }
}

// Finite values serialize as JSON numbers, infinity as the string "inf".
impl Serialize for GenMetricValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Self::Finite(v) => s.serialize_f64(*v),
            Self::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for GenMetricValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(Self::Finite(v)),
            Raw::Text(t) if t == "inf" => Ok(Self::Infinite),
            Raw::Text(t) => Err(serde::de::Error::custom(format!("bad distance '{t}'"))),
        }
    }
}

/// `sup |g(x) - h(x)| / psi(x)` over the grid, the smallest `K` with
/// `|g - h| <= K psi` on the sample. A point where `psi` vanishes but `g != h`
/// makes the distance infinite. The origin is never visited.
pub fn gen_metric<G, H, P>(g: &G, h: &H, psi: &P, grid: &GridSpec) -> GenMetricValue
where
    G: RealFn + ?Sized,
    H: RealFn + ?Sized,
    P: RealFn + ?Sized,
{
    grid.points()
        .iter()
        .map(|&x| pointwise(g.eval(x) - h.eval(x), psi.eval(x)))
        .fold(GenMetricValue::Finite(0.0), GenMetricValue::max)
}

fn pointwise(diff: f64, weight: f64) -> GenMetricValue {
    let diff = diff.abs();
    if diff == 0.0 {
        GenMetricValue::Finite(0.0)
    } else if weight <= 0.0 || !diff.is_finite() {
        GenMetricValue::Infinite
    } else {
        GenMetricValue::Finite(diff / weight)
    }
}
