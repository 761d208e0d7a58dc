use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fixpoint::Branch;
use crate::funceq::{abs_pow, Coupling, RealFn};
use crate::tolerance;

/// Dominating function for the residual: `|Delta_f(x, y, z)| <= phi(x, y, z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ControlFunction {
    /// `eps (|x|^p + |y|^p + |z|^p)`, with `|0|^p = 0`.
    Power { eps: f64, p: f64 },
    /// `phi = delta`.
    Constant { delta: f64 },
}

impl ControlFunction {
    pub fn power(eps: f64, p: f64) -> Result<Self> {
        if !(eps.is_finite() && eps >= 0.0) {
            return Err(Error::InvalidControl(format!("eps must be >= 0, got {eps}")));
        }
        check_exponent(p)?;
        Ok(Self::Power { eps, p })
    }

    pub fn constant(delta: f64) -> Result<Self> {
        if !(delta.is_finite() && delta >= 0.0) {
            return Err(Error::InvalidControl(format!("delta must be >= 0, got {delta}")));
        }
        Ok(Self::Constant { delta })
    }

    pub fn family(&self) -> ControlFamily {
        match *self {
            Self::Power { p, .. } => ControlFamily::Power { p },
            Self::Constant { .. } => ControlFamily::Constant,
        }
    }

    /// The family parameter (`eps` or `delta`).
    pub fn parameter(&self) -> f64 {
        match *self {
            Self::Power { eps, .. } => eps,
            Self::Constant { delta } => delta,
        }
    }

    pub fn phi(&self, x: f64, y: f64, z: f64) -> f64 {
        self.parameter() * self.family().unit(x, y, z)
    }

    /// `psi(x) = phi(x/2, 0, 0)`.
    pub fn psi(&self) -> Psi {
        match *self {
            Self::Power { eps, p } => Psi::Power { eps, p },
            Self::Constant { delta } => Psi::Constant { delta },
        }
    }
}

impl fmt::Display for ControlFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Power { eps, p } => write!(f, "power(eps={eps}, p={p})"),
            Self::Constant { delta } => write!(f, "constant(delta={delta})"),
        }
    }
}

fn check_exponent(p: f64) -> Result<()> {
    if !(p.is_finite() && p >= 0.0) {
        return Err(Error::InvalidControl(format!("p must be >= 0, got {p}")));
    }
    if p == 2.0 {
        return Err(Error::InvalidControl(
            "p must satisfy p != 2 (T is not a contraction for p = 2)".into(),
        ));
    }
    Ok(())
}

/// A control family with its parameter left free.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ControlFamily {
    Power { p: f64 },
    Constant,
}

impl ControlFamily {
    pub fn power(p: f64) -> Result<Self> {
        check_exponent(p)?;
        Ok(Self::Power { p })
    }

    /// The member with parameter 1.
    pub fn unit(&self, x: f64, y: f64, z: f64) -> f64 {
        match *self {
            Self::Power { p } => abs_pow(x, p) + abs_pow(y, p) + abs_pow(z, p),
            Self::Constant => 1.0,
        }
    }

    pub fn with_parameter(&self, value: f64) -> Result<ControlFunction> {
        match *self {
            Self::Power { p } => ControlFunction::power(value, p),
            Self::Constant => ControlFunction::constant(value),
        }
    }
}

/// The weight `psi(x) = phi(x/2, 0, 0)` of the distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Psi {
    Power { eps: f64, p: f64 },
    Constant { delta: f64 },
}

impl RealFn for Psi {
    fn eval(&self, x: f64) -> f64 {
        match *self {
            Self::Power { eps, p } => eps * abs_pow(x, p) / 2f64.powf(p),
            Self::Constant { delta } => delta,
        }
    }
}

/// Free-function form of [`ControlFunction::psi`].
pub fn psi_from_phi(control: &ControlFunction) -> Psi {
    control.psi()
}

/// How `j` is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BranchChoice {
    #[default]
    Auto,
    Fixed(Branch),
}

impl BranchChoice {
    /// Power controls take `j = +1` for `p < 2` and `j = -1` for `p > 2`;
    /// constant controls take `j = +1`. A fixed branch on the wrong side is
    /// rejected.
    pub fn resolve(self, control: &ControlFunction) -> Result<Branch> {
        let p = match *control {
            ControlFunction::Power { p, .. } => p,
            ControlFunction::Constant { .. } => 0.0,
        };
        let branch = match self {
            Self::Auto if p < 2.0 => Branch::Dilate,
            Self::Auto => Branch::Contract,
            Self::Fixed(b) => b,
        };
        if (p - 2.0) * f64::from(branch.sign()) >= 0.0 {
            return Err(Error::BranchMismatch { p, j: branch.sign() });
        }
        Ok(branch)
    }
}

/// `L = 2^((p-2)j)`, the smallest constant with
/// `2^(-2j) psi(2^j x) <= L psi(x)` for power-type weights.
pub fn lipschitz_for_power(p: f64, branch: Branch) -> Result<f64> {
    check_exponent(p).map_err(|_| Error::InvalidControl(format!("no Lipschitz constant for p = {p}")))?;
    let j = f64::from(branch.sign());
    if (p - 2.0) * j >= 0.0 {
        return Err(Error::BranchMismatch { p, j: branch.sign() });
    }
    Ok(2f64.powf((p - 2.0) * j))
}

/// `2^((p-3)j)`: a commonly quoted variant of the constant, which does not
/// satisfy the weight condition and is carried in reports for comparison.
pub fn printed_lipschitz(p: f64, branch: Branch) -> f64 {
    2f64.powf((p - 3.0) * f64::from(branch.sign()))
}

/// `L` for a resolved control and branch.
pub fn lipschitz(control: &ControlFunction, branch: Branch) -> Result<f64> {
    match *control {
        ControlFunction::Power { p, .. } => lipschitz_for_power(p, branch),
        ControlFunction::Constant { .. } => match branch {
            Branch::Dilate => Ok(0.25),
            Branch::Contract => Err(Error::BranchMismatch { p: 0.0, j: -1 }),
        },
    }
}

/// Largest relative gap between `2^(-2j) psi(2^j x)` and `L psi(x)` over `xs`.
pub fn weight_scaling_gap(psi: &Psi, branch: Branch, l: f64, xs: &[f64]) -> f64 {
    let s = branch.factor();
    xs.iter()
        .map(|&x| {
            let lhs = psi.eval(s * x) / (s * s);
            let rhs = l * psi.eval(x);
            let scale = lhs.abs().max(rhs.abs());
            if scale == 0.0 {
                0.0
            } else {
                (lhs - rhs).abs() / scale
            }
        })
        .fold(0.0, f64::max)
}

/// `L^((j+1)/2) / (c^2 (1 - L)) * psi_x`.
pub fn general_bound(l: f64, branch: Branch, c: Coupling, psi_x: f64) -> f64 {
    checkpoint_constant(l, branch, c) / (1.0 - l) * psi_x
}

/// `L^((j+1)/2) / c^2`, the bound on `d(f, Tf)` that the control implies.
pub fn checkpoint_constant(l: f64, branch: Branch, c: Coupling) -> f64 {
    let lead = match branch {
        Branch::Dilate => l,
        Branch::Contract => 1.0,
    };
    lead / c.squared()
}

/// `j eps |x|^p / (c^2 (4 - 2^p))`.
pub fn closed_form_bound(eps: f64, p: f64, branch: Branch, c: Coupling, x: f64) -> f64 {
    f64::from(branch.sign()) * eps * abs_pow(x, p) / (c.squared() * (4.0 - 2f64.powf(p)))
}

fn relatively_equal(a: f64, b: f64, rel: f64) -> bool {
    a == b || (a - b).abs() <= rel * a.abs().max(b.abs())
}

/// Whether the general bound with Lipschitz constant `l` reproduces the
/// closed form for a unit power control at a few sample points.
pub fn bound_formulas_agree(p: f64, branch: Branch, l: f64, c: Coupling) -> bool {
    let psi = Psi::Power { eps: 1.0, p };
    [0.25, 1.0, 3.0, 10.0].iter().all(|&x| {
        let general = general_bound(l, branch, c, psi.eval(x));
        let closed = closed_form_bound(1.0, p, branch, c, x);
        general.is_finite() && relatively_equal(general, closed, tolerance::FORMULA_RELATIVE)
    })
}

/// The bound on `|f(x) - Q(x)|` guaranteed by the control.
///
/// Power controls compute the general and the closed-form bound and fail if
/// they disagree. A constant control `delta` is treated as the power control
/// with `p = 0` and `eps = delta / 3`, which gives `delta / (9 c^2)` at every
/// point.
pub fn theoretical_bound(control: &ControlFunction, c: Coupling, branch: Branch, x: f64) -> Result<f64> {
    let (eps, p, x) = match *control {
        ControlFunction::Power { eps, p } => (eps, p, x),
        ControlFunction::Constant { delta } => {
            if branch != Branch::Dilate {
                return Err(Error::BranchMismatch { p: 0.0, j: branch.sign() });
            }
            (delta / 3.0, 0.0, 1.0)
        }
    };
    let l = lipschitz_for_power(p, branch)?;
    let general = general_bound(l, branch, c, Psi::Power { eps, p }.eval(x));
    let closed = closed_form_bound(eps, p, branch, c, x);
    if !relatively_equal(general, closed, tolerance::FORMULA_RELATIVE) {
        return Err(Error::BoundMismatch { general, closed });
    }
    Ok(general)
}
