//! Catalog of the intermediate identities in the proof that the main
//! equation and the base equation have the same solutions.
//!
//! Each identity is checked on the general solution `f(x) = a*x^2`: both sides
//! are expanded exactly and the difference must be the zero polynomial.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::form::FunctionalForm;
use crate::error::{Error, Result};
use crate::exact::{rat, Poly1, Poly3, Rational};

/// One cataloged identity together with its integer parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdentityId {
    /// `f(2x+y) + f(2x-y) = 8f(x) + 2f(y)`
    I2_1,
    /// `f(2x+y) + f(2x-y) = f(x+y) + f(x-y) + 6f(x)`
    I2_2,
    /// `f(3x+y) + f(3x-y) = f(x+y) + f(x-y) + 16f(x)`
    I2_3,
    /// `f(ax+y) + f(ax-y) = f(x+y) + f(x-y) + 2(a^2-1)f(x)`
    I2_4 { a: i64 },
    /// `f(ax+by) + f(ax-by) = b^2 f(x+y) + b^2 f(x-y) + 2(a^2-b^2)f(x)`
    I2_8 { a: i64, b: i64 },
    /// `f((a+b)x+(a-b)y) + f((a-b)x+(a+b)y) = 4b^2(f(x)+f(y)) + 2(a^2-b^2)f(x+y)`
    I2_9 { a: i64, b: i64 },
    /// `f(x+y+2abz) + f(x+y-2abz) = 2f(x+y) + 2a^2b^2(f(x+z)+f(x-z)+f(y+z)+f(y-z)) - 4a^2b^2(f(x)+f(y))`
    I2_20 { a: i64, b: i64 },
    /// `c^2[f((c+1)z) + f((c-1)z)] = 2(c^2+1)f(cz)`
    I2_21 { c: i64 },
    /// `c^2[f((c+2)z) + f((c-2)z)] = 2(c^2+4)f(cz)`
    I2_22 { c: i64 },
    /// `c^2[f((c+k)z) + f((c-k)z)] = 2(c^2+k^2)f(cz)`
    I2_23 { c: i64, k: i64 },
    /// `f(x+2cz) + f(x-2cz) = 2c^2 f(x+z) + 2c^2 f(x-z) + 4c^2 f(z) + 2(1-2c^2)f(x)`
    I2_24 { c: i64 },
    /// `(2c^2-2)f(x+z) + (2c^2-2)f(x-z) = (4c^2-4)f(x) + (4c^2-4)f(z)`
    I2_28 { c: i64 },
}

impl IdentityId {
    /// Builds an identity from its label (`"2.23"`) and whichever parameters
    /// it needs, validating the parameter constraints.
    pub fn from_label(
        label: &str,
        a: Option<i64>,
        b: Option<i64>,
        c: Option<i64>,
        k: Option<i64>,
    ) -> Result<Self> {
        let need = |v: Option<i64>, name: &str| {
            v.ok_or_else(|| Error::InvalidIdentity {
                label: label.to_string(),
                reason: format!("parameter {name} is required"),
            })
        };
        let id = match label.trim_start_matches('(').trim_end_matches(')') {
            "2.1" => Self::I2_1,
            "2.2" => Self::I2_2,
            "2.3" => Self::I2_3,
            "2.4" => Self::I2_4 { a: need(a, "a")? },
            "2.8" => Self::I2_8 { a: need(a, "a")?, b: need(b, "b")? },
            "2.9" => Self::I2_9 { a: need(a, "a")?, b: need(b, "b")? },
            "2.20" => Self::I2_20 { a: need(a, "a")?, b: need(b, "b")? },
            "2.21" => Self::I2_21 { c: need(c, "c")? },
            "2.22" => Self::I2_22 { c: need(c, "c")? },
            "2.23" => Self::I2_23 { c: need(c, "c")?, k: need(k, "k")? },
            "2.24" => Self::I2_24 { c: need(c, "c")? },
            "2.28" => Self::I2_28 { c: need(c, "c")? },
            other => {
                return Err(Error::InvalidIdentity {
                    label: other.to_string(),
                    reason: "not in the catalog".into(),
                })
            }
        };
        id.validate()?;
        Ok(id)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::I2_1 => "2.1",
            Self::I2_2 => "2.2",
            Self::I2_3 => "2.3",
            Self::I2_4 { .. } => "2.4",
            Self::I2_8 { .. } => "2.8",
            Self::I2_9 { .. } => "2.9",
            Self::I2_20 { .. } => "2.20",
            Self::I2_21 { .. } => "2.21",
            Self::I2_22 { .. } => "2.22",
            Self::I2_23 { .. } => "2.23",
            Self::I2_24 { .. } => "2.24",
            Self::I2_28 { .. } => "2.28",
        }
    }

    pub fn params(&self) -> BTreeMap<&'static str, i64> {
        let pairs: Vec<(&'static str, i64)> = match *self {
            Self::I2_1 | Self::I2_2 | Self::I2_3 => vec![],
            Self::I2_4 { a } => vec![("a", a)],
            Self::I2_8 { a, b } | Self::I2_9 { a, b } | Self::I2_20 { a, b } => {
                vec![("a", a), ("b", b)]
            }
            Self::I2_21 { c } | Self::I2_22 { c } | Self::I2_24 { c } | Self::I2_28 { c } => {
                vec![("c", c)]
            }
            Self::I2_23 { c, k } => vec![("c", c), ("k", k)],
        };
        pairs.into_iter().collect()
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |reason: &str| {
            Err(Error::InvalidIdentity {
                label: self.label().to_string(),
                reason: reason.to_string(),
            })
        };
        let admissible_c = |c: i64| !matches!(c, -1..=1);
        match *self {
            Self::I2_1 | Self::I2_2 | Self::I2_3 => Ok(()),
            Self::I2_4 { a: -1..=1 } => fail("requires a != 0, +1, -1"),
            Self::I2_4 { .. } => Ok(()),
            Self::I2_8 { a, b } | Self::I2_9 { a, b } => {
                if a == 0 || b == 0 {
                    fail("requires a != 0 and b != 0")
                } else if a == b || a == -b {
                    fail("requires a != +b and a != -b")
                } else {
                    Ok(())
                }
            }
            Self::I2_20 { a, b } => {
                if a == 0 || b == 0 {
                    fail("requires a != 0 and b != 0")
                } else if a == 1 || a == -1 {
                    fail("requires a != +1, -1")
                } else if a == b || a == -b {
                    fail("requires a != +b and a != -b")
                } else {
                    Ok(())
                }
            }
            Self::I2_23 { c, k } => {
                if !admissible_c(c) {
                    fail("requires c != 0, +1, -1")
                } else if k == 0 {
                    fail("requires k != 0")
                } else {
                    Ok(())
                }
            }
            Self::I2_21 { c } | Self::I2_22 { c } | Self::I2_24 { c } | Self::I2_28 { c } => {
                if admissible_c(c) {
                    Ok(())
                } else {
                    fail("requires c != 0, +1, -1")
                }
            }
        }
    }

    /// `(left side, right side)`.
    pub fn sides(&self) -> (FunctionalForm, FunctionalForm) {
        let f = FunctionalForm::new;
        match *self {
            Self::I2_1 => (
                f().with(1, [2, 1, 0]).with(1, [2, -1, 0]),
                f().with(8, [1, 0, 0]).with(2, [0, 1, 0]),
            ),
            Self::I2_2 => (
                f().with(1, [2, 1, 0]).with(1, [2, -1, 0]),
                f().with(1, [1, 1, 0]).with(1, [1, -1, 0]).with(6, [1, 0, 0]),
            ),
            Self::I2_3 => (
                f().with(1, [3, 1, 0]).with(1, [3, -1, 0]),
                f().with(1, [1, 1, 0]).with(1, [1, -1, 0]).with(16, [1, 0, 0]),
            ),
            Self::I2_4 { a } => (
                f().with(1, [a, 1, 0]).with(1, [a, -1, 0]),
                f().with(1, [1, 1, 0])
                    .with(1, [1, -1, 0])
                    .with(2 * (a * a - 1), [1, 0, 0]),
            ),
            Self::I2_8 { a, b } => (
                f().with(1, [a, b, 0]).with(1, [a, -b, 0]),
                f().with(b * b, [1, 1, 0])
                    .with(b * b, [1, -1, 0])
                    .with(2 * (a * a - b * b), [1, 0, 0]),
            ),
            Self::I2_9 { a, b } => (
                f().with(1, [a + b, a - b, 0]).with(1, [a - b, a + b, 0]),
                f().with(4 * b * b, [1, 0, 0])
                    .with(4 * b * b, [0, 1, 0])
                    .with(2 * (a * a - b * b), [1, 1, 0]),
            ),
            Self::I2_20 { a, b } => {
                let ab = a * b;
                let w = ab * ab;
                (
                    f().with(1, [1, 1, 2 * ab]).with(1, [1, 1, -2 * ab]),
                    f().with(2, [1, 1, 0])
                        .with(2 * w, [1, 0, 1])
                        .with(2 * w, [1, 0, -1])
                        .with(2 * w, [0, 1, 1])
                        .with(2 * w, [0, 1, -1])
                        .with(-4 * w, [1, 0, 0])
                        .with(-4 * w, [0, 1, 0]),
                )
            }
            Self::I2_21 { c } => Self::I2_23 { c, k: 1 }.sides(),
            Self::I2_22 { c } => Self::I2_23 { c, k: 2 }.sides(),
            Self::I2_23 { c, k } => (
                f().with(c * c, [0, 0, c + k]).with(c * c, [0, 0, c - k]),
                f().with(2 * (c * c + k * k), [0, 0, c]),
            ),
            Self::I2_24 { c } => {
                let c2 = c * c;
                (
                    f().with(1, [1, 0, 2 * c]).with(1, [1, 0, -2 * c]),
                    f().with(2 * c2, [1, 0, 1])
                        .with(2 * c2, [1, 0, -1])
                        .with(4 * c2, [0, 0, 1])
                        .with(2 * (1 - 2 * c2), [1, 0, 0]),
                )
            }
            Self::I2_28 { c } => {
                let c2 = c * c;
                (
                    f().with(2 * c2 - 2, [1, 0, 1]).with(2 * c2 - 2, [1, 0, -1]),
                    f().with(4 * c2 - 4, [1, 0, 0]).with(4 * c2 - 4, [0, 0, 1]),
                )
            }
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.label())?;
        let params = self.params();
        if !params.is_empty() {
            let list: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            write!(f, "[{}]", list.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityVerdict {
    pub id: String,
    pub params: BTreeMap<&'static str, i64>,
    /// Expanded left-minus-right difference for `f(x) = x^2`.
    #[serde(serialize_with = "as_string")]
    pub difference: Poly3,
    /// Scalars `a` in `f(x) = a*x^2` for which the difference was expanded.
    #[serde(skip)]
    pub scalars: Vec<Rational>,
    pub holds: bool,
}

fn as_string<S: serde::Serializer>(p: &Poly3, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(p)
}

/// Expands both sides for `f(x) = a*x^2` with `a = 1` and a few seeded random
/// rationals, and reports whether every difference vanishes.
pub fn verify_identity(id: IdentityId) -> Result<IdentityVerdict> {
    id.validate()?;
    let (lhs, rhs) = id.sides();
    let difference_form = lhs.minus(&rhs);

    let mut rng = ChaCha8Rng::seed_from_u64(0x2_0001);
    let mut scalars = vec![rat(1, 1)];
    for _ in 0..3 {
        let n = rng.random_range(-50..=50_i64);
        let d = rng.random_range(1..=17_i64);
        scalars.push(rat(if n == 0 { 1 } else { n }, d));
    }

    let mut holds = true;
    let mut unit_difference = Poly3::zero();
    for (i, a) in scalars.iter().enumerate() {
        let diff = difference_form.expand(&Poly1::monomial(a.clone(), 2));
        holds &= diff.is_zero();
        if i == 0 {
            unit_difference = diff;
        }
    }
    Ok(IdentityVerdict {
        id: id.label().to_string(),
        params: id.params(),
        difference: unit_difference,
        scalars,
        holds,
    })
}

/// Parameter sweep over the whole catalog: `a, b` in `{+-2, +-3, +-5}` with
/// `a != +-b`, `c` in `{+-2, +-3}`, and `k` in `{1..6}` plus `3c`.
pub fn default_sweep() -> Vec<IdentityId> {
    let ab = [-5, -3, -2, 2, 3, 5];
    let cs = [-3, -2, 2, 3];
    let mut ids = vec![IdentityId::I2_1, IdentityId::I2_2, IdentityId::I2_3];
    ids.extend(ab.iter().map(|&a| IdentityId::I2_4 { a }));
    for &a in &ab {
        for &b in &ab {
            if a == b || a == -b {
                continue;
            }
            ids.push(IdentityId::I2_8 { a, b });
            ids.push(IdentityId::I2_9 { a, b });
            ids.push(IdentityId::I2_20 { a, b });
        }
    }
    for &c in &cs {
        ids.push(IdentityId::I2_21 { c });
        ids.push(IdentityId::I2_22 { c });
        for k in (1..=6).chain([3 * c]) {
            ids.push(IdentityId::I2_23 { c, k });
        }
        ids.push(IdentityId::I2_24 { c });
        ids.push(IdentityId::I2_28 { c });
    }
    ids
}
