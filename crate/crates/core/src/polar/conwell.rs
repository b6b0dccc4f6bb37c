//! Maximal exterior sets of the quadric: off-quadric point sets all of
//! whose connecting lines miss the quadric.

use super::search::PointGraph;
use crate::error::{GeomError, Result};
use crate::gf2::PointSet;
use crate::pauli::GeometryContext;

/// Off-quadric sets of size `2^N − 1` in which every connecting line is
/// skew to the quadric, in canonical order.
///
/// Two off-quadric points `a, b` span a line missing the quadric iff
/// `Q(a + b) = 1`, i.e. iff `σ(a, b) = 1`.
pub fn maximal_exterior_sets(ctx: &GeometryContext) -> Vec<PointSet> {
    let off = ctx.off_quadric_points();
    let graph = PointGraph::new(1 << ctx.dim(), &off, |u, v| {
        ctx.quadratic_raw(u ^ v) == 1
    });
    graph.cliques(off, (1 << ctx.n_qubits()) - 1)
}

/// The Conwell heptads of Q⁺(5,2).
pub fn conwell_heptads_q5(ctx: &GeometryContext) -> Result<Vec<PointSet>> {
    if ctx.n_qubits() != 3 {
        return Err(GeomError::Usage(format!(
            "Conwell heptads live in PG(5,2); got {} qubits",
            ctx.n_qubits()
        )));
    }
    Ok(maximal_exterior_sets(ctx))
}
