//! Closed-form point and generator counts of the classical polar spaces.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{GeomError, Result};

/// The polar spaces handled here. `Symplectic` is W(2N−1, q); the three
/// quadrics are Q⁺(2N−1, q), Q⁻(2N−1, q) and Q(2N, q).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceKind {
    Symplectic,
    Hyperbolic,
    Elliptic,
    Parabolic,
}

impl SpaceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SpaceKind::Symplectic => "symplectic",
            SpaceKind::Hyperbolic => "hyperbolic",
            SpaceKind::Elliptic => "elliptic",
            SpaceKind::Parabolic => "parabolic",
        }
    }
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SpaceKind {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "symplectic" | "w" => Ok(SpaceKind::Symplectic),
            "hyperbolic" | "quadric" | "q+" => Ok(SpaceKind::Hyperbolic),
            "elliptic" | "q-" => Ok(SpaceKind::Elliptic),
            "parabolic" | "q" => Ok(SpaceKind::Parabolic),
            other => Err(GeomError::Usage(format!(
                "unknown space kind {other:?}; expected symplectic, hyperbolic, elliptic or parabolic"
            ))),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Measure {
    Points,
    Generators,
}

fn pow(q: u64, e: u32) -> u64 {
    q.pow(e)
}

/// `Π_{i=from}^{to} (q^i + 1)`; empty products are 1.
fn product_of_q_plus_one(q: u64, from: u32, to: u32) -> u64 {
    (from..=to).map(|i| pow(q, i) + 1).product()
}

/// Number of points or generators of the rank-`n` polar space of `kind`
/// over GF(q).
pub fn expected_count(kind: SpaceKind, measure: Measure, n: u32, q: u64) -> Result<u64> {
    if q < 2 {
        return Err(GeomError::Usage(format!("field order must be ≥ 2, got {q}")));
    }
    if n < 1 {
        return Err(GeomError::Usage("rank must be at least 1".into()));
    }
    if measure == Measure::Generators && n < 2 {
        return Err(GeomError::Usage(
            "generator counts are defined for rank ≥ 2".into(),
        ));
    }
    let count = match (kind, measure) {
        (SpaceKind::Symplectic, Measure::Points) => (pow(q, 2 * n) - 1) / (q - 1),
        (SpaceKind::Symplectic, Measure::Generators) => product_of_q_plus_one(q, 1, n),
        (SpaceKind::Parabolic, Measure::Points) => (pow(q, 2 * n) - 1) / (q - 1),
        (SpaceKind::Parabolic, Measure::Generators) => product_of_q_plus_one(q, 1, n),
        (SpaceKind::Elliptic, Measure::Points) => {
            (pow(q, n - 1) - 1) * (pow(q, n) + 1) / (q - 1)
        }
        (SpaceKind::Elliptic, Measure::Generators) => product_of_q_plus_one(q, 2, n),
        (SpaceKind::Hyperbolic, Measure::Points) => {
            (pow(q, n - 1) + 1) * (pow(q, n) - 1) / (q - 1)
        }
        (SpaceKind::Hyperbolic, Measure::Generators) => 2 * product_of_q_plus_one(q, 1, n - 1),
    };
    Ok(count)
}
