use std::fmt;

use serde::Serialize;

use super::generators::GeneratorSet;
use super::search::PointGraph;
use super::Quadric;
use crate::error::{GeomError, Result};
use crate::gf2::{BinVec, PointSet};
use crate::pauli::{point_to_word, GeometryContext, PauliWord};

/// A point set of the quadric meeting every generator exactly once.
///
/// For Q⁺(7,2) it has nine points, pairwise non-perpendicular.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ovoid {
    points: Vec<BinVec>,
    set: PointSet,
}

/// Size of an ovoid of Q⁺(2N−1, 2): `2^{N−1} + 1`.
pub fn ovoid_size(ctx: &GeometryContext) -> usize {
    (1 << (ctx.n_qubits() - 1)) + 1
}

impl Ovoid {
    pub(crate) fn from_set_unchecked(ctx: &GeometryContext, set: PointSet) -> Self {
        Self {
            points: set.vectors(ctx.dim()),
            set,
        }
    }

    /// Builds an ovoid from points that are on the quadric and pairwise
    /// σ-nonorthogonal, with the ovoid cardinality.
    ///
    /// Such a set meets each generator at most once, and every point lies on
    /// the same number of generators, so counting forces exactly once.
    pub fn from_clique(ctx: &GeometryContext, points: &[BinVec]) -> Result<Self> {
        let mut set = PointSet::new();
        for &p in points {
            ctx.check(p)?;
            if ctx.quadratic_raw(p.bits()) != 0 || p.is_zero() {
                return Err(GeomError::OffQuadric(p.to_string()));
            }
            if !set.insert(p.bits()) {
                return Err(GeomError::Degenerate(format!("repeated point {p}")));
            }
        }
        if set.len() != ovoid_size(ctx) {
            return Err(GeomError::Degenerate(format!(
                "an ovoid has {} points, got {}",
                ovoid_size(ctx),
                set.len()
            )));
        }
        for a in set.iter() {
            for b in set.above(a).iter() {
                if ctx.sigma_raw(a, b) == 0 {
                    return Err(GeomError::Degenerate(format!(
                        "{} and {} are perpendicular",
                        ctx.vector(a),
                        ctx.vector(b)
                    )));
                }
            }
        }
        Ok(Self::from_set_unchecked(ctx, set))
    }

    pub fn from_words(ctx: &GeometryContext, words: &[&str]) -> Result<Self> {
        let pts = words
            .iter()
            .map(|w| ctx.parse_point(w))
            .collect::<Result<Vec<_>>>()?;
        Self::from_clique(ctx, &pts)
    }

    /// Points in canonical order.
    pub fn points(&self) -> &[BinVec] {
        &self.points
    }

    pub fn set(&self) -> PointSet {
        self.set
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: BinVec) -> bool {
        self.set.contains(p.bits())
    }

    pub fn words(&self) -> Vec<PauliWord> {
        self.points
            .iter()
            .map(|&p| point_to_word(p).expect("ovoid points are nonzero"))
            .collect()
    }

    /// Number of shared points.
    pub fn meet(&self, other: &Ovoid) -> usize {
        (self.set & other.set).len()
    }
}

impl fmt::Debug for Ovoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self.words().iter().map(ToString::to_string).collect();
        write!(f, "Ovoid[{}]", words.join(","))
    }
}

impl Serialize for Ovoid {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let words: Vec<String> = self.words().iter().map(ToString::to_string).collect();
        words.serialize(s)
    }
}

/// Checks the defining property against an explicit list of quadric
/// generators: the right cardinality and exactly one point on each generator.
pub fn is_ovoid(
    quadric: &Quadric,
    points: &[BinVec],
    gens: &GeneratorSet,
) -> Result<bool> {
    let ctx = quadric.context();
    let mut set = PointSet::new();
    for &p in points {
        ctx.check(p)?;
        if !quadric.contains(p) {
            return Err(GeomError::OffQuadric(p.to_string()));
        }
        set.insert(p.bits());
    }
    if set.len() != ovoid_size(ctx) || set.len() != points.len() {
        return Ok(false);
    }
    Ok(gens.point_sets().iter().all(|g| (*g & set).len() == 1))
}

/// Every ovoid of the quadric, as 9-cliques (for N = 4) of the graph joining
/// non-perpendicular quadric points, each confirmed with [`is_ovoid`].
pub fn enumerate_ovoids(quadric: &Quadric, gens: &GeneratorSet) -> Result<Vec<Ovoid>> {
    let ctx = quadric.context();
    let found = ovoids_within(ctx, quadric.points());
    for o in &found {
        if !is_ovoid(quadric, o.points(), gens)? {
            return Err(GeomError::Consistency(format!(
                "clique {o:?} fails the generator test"
            )));
        }
    }
    Ok(found)
}

/// Ovoid-sized sets of pairwise non-perpendicular quadric points inside
/// `region`, in canonical order.
pub fn ovoids_within(ctx: &GeometryContext, region: PointSet) -> Vec<Ovoid> {
    let region = region & ctx.quadric_points();
    let graph = PointGraph::new(1 << ctx.dim(), &region, |u, v| ctx.sigma_raw(u, v) == 1);
    graph
        .cliques(region, ovoid_size(ctx))
        .into_iter()
        .map(|s| Ovoid::from_set_unchecked(ctx, s))
        .collect()
}
