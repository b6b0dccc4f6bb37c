//! Quadrics, generators, ovoids and the subspace sections cut out by ovoid
//! points.

pub mod conwell;
pub mod counts;
pub mod generators;
pub mod gq;
pub mod ovoids;
mod search;
pub mod structure;

pub use conwell::{conwell_heptads_q5, maximal_exterior_sets};
pub use counts::{expected_count, Measure, SpaceKind};
pub use generators::{enumerate_generators, same_family, Family, GeneratorSet};
pub use ovoids::{enumerate_ovoids, is_ovoid, ovoid_size, ovoids_within, Ovoid};

use crate::gf2::{BinVec, PointSet};
use crate::pauli::GeometryContext;

/// The distinguished ovoid O* of Q⁺(7,2), row by row as printed in the
/// standard coordinates.
pub const OSTAR_WORDS: [&str; 9] = [
    "ZIIX", "IZYY", "XZXI", "ZXZZ", "XIZI", "ZZIZ", "IXXZ", "YYZX", "XXXX",
];

/// The same nine points in Edge's coordinates: the unit vectors and the
/// all-ones vector.
pub const EDGE_OVOID: [&str; 9] = [
    "10000000", "01000000", "00100000", "00010000", "00001000", "00000100", "00000010",
    "00000001", "11111111",
];

/// O* built from [`OSTAR_WORDS`].
pub fn ovoid_star() -> Ovoid {
    let ctx = GeometryContext::new(4).expect("four qubits");
    Ovoid::from_words(&ctx, &OSTAR_WORDS).expect("O* is an ovoid")
}

/// The quadric of symmetric elements, `x₁x_{N+1} + … + x_N x_{2N} = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quadric {
    kind: SpaceKind,
    ctx: GeometryContext,
    points: PointSet,
}

impl Quadric {
    pub fn hyperbolic(ctx: GeometryContext) -> Self {
        Self {
            kind: SpaceKind::Hyperbolic,
            points: ctx.quadric_points(),
            ctx,
        }
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn context(&self) -> &GeometryContext {
        &self.ctx
    }

    pub fn points(&self) -> PointSet {
        self.points
    }

    pub fn point_list(&self) -> Vec<BinVec> {
        self.points.vectors(self.ctx.dim())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: BinVec) -> bool {
        p.dim() == self.ctx.dim() && self.points.contains(p.bits())
    }

    pub fn off_points(&self) -> PointSet {
        self.ctx.off_quadric_points()
    }
}
