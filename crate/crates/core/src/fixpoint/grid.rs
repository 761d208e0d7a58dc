use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Finite sample of nonzero coordinates standing in for the whole real line.
///
/// The origin is kept out of `points`; `includes_origin` records whether
/// callers that sample argument triples should also use `0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    points: Vec<f64>,
    includes_origin: bool,
}

impl GridSpec {
    pub const MIN_POINTS: usize = 8;

    pub fn new(mut points: Vec<f64>, includes_origin: bool) -> Result<Self> {
        if points.iter().any(|x| !x.is_finite() || *x == 0.0) {
            return Err(Error::InvalidGrid("points must be finite and nonzero".into()));
        }
        points.sort_by(f64::total_cmp);
        if points.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidGrid("points must be distinct".into()));
        }
        if points.len() < Self::MIN_POINTS {
            return Err(Error::InvalidGrid(format!(
                "need at least {} points, got {}",
                Self::MIN_POINTS,
                points.len()
            )));
        }
        if !(points[0] < 0.0 && points[points.len() - 1] > 0.0) {
            return Err(Error::InvalidGrid("points must span both signs".into()));
        }
        Ok(Self {
            points,
            includes_origin,
        })
    }

    /// `{ +-scale * 2^m : m_min <= m <= m_max }`. Every point and every
    /// dyadic dilation of it is exact in binary64.
    pub fn dyadic(scale: f64, m_min: i32, m_max: i32, includes_origin: bool) -> Result<Self> {
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::InvalidGrid(format!("scale must be positive, got {scale}")));
        }
        if m_min > m_max {
            return Err(Error::InvalidGrid(format!("m_min {m_min} > m_max {m_max}")));
        }
        let points = (m_min..=m_max)
            .flat_map(|m| {
                let x = scale * 2f64.powi(m);
                [x, -x]
            })
            .collect();
        Self::new(points, includes_origin)
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn includes_origin(&self) -> bool {
        self.includes_origin
    }

    /// Grid points, plus `0` first when the origin is included.
    pub fn sample_coordinates(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.points.len() + 1);
        if self.includes_origin {
            out.push(0.0);
        }
        out.extend_from_slice(&self.points);
        out
    }

    pub fn contains(&self, x: f64) -> bool {
        self.points
            .binary_search_by(|p| p.total_cmp(&x))
            .is_ok()
    }

    /// Points `x` with `factor * x` also on the grid.
    pub fn interior_under(&self, factor: f64) -> Vec<f64> {
        self.points
            .iter()
            .copied()
            .filter(|x| self.contains(factor * x))
            .collect()
    }

    /// Restriction to the given points (which must come from this grid).
    pub(crate) fn restricted(&self, points: Vec<f64>) -> Self {
        Self {
            points,
            includes_origin: self.includes_origin,
        }
    }
}
