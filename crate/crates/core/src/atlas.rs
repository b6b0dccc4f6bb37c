//! Process-wide cache of the expensive enumerations. Everything is computed
//! at most once and then shared read-only.

use std::sync::OnceLock;

use crate::error::{GeomError, Result};
use crate::pauli::GeometryContext;
use crate::polar::{
    enumerate_generators, enumerate_ovoids, GeneratorSet, Ovoid, Quadric, SpaceKind,
};

static SYMPLECTIC: [OnceLock<GeneratorSet>; 3] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];
static HYPERBOLIC: [OnceLock<GeneratorSet>; 3] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];
static OVOIDS: OnceLock<Vec<Ovoid>> = OnceLock::new();

/// Generators of W(2N−1, 2) or of the quadric, for N = 2, 3, 4.
pub fn generators(ctx: &GeometryContext, kind: SpaceKind) -> Result<&'static GeneratorSet> {
    let slot = match kind {
        SpaceKind::Symplectic => &SYMPLECTIC,
        SpaceKind::Hyperbolic => &HYPERBOLIC,
        other => {
            return Err(GeomError::Usage(format!(
                "no generator cache for {other} spaces"
            )))
        }
    };
    let cell = &slot[ctx.n_qubits() - 2];
    if let Some(g) = cell.get() {
        return Ok(g);
    }
    let computed = enumerate_generators(ctx, kind)?;
    Ok(cell.get_or_init(|| computed))
}

/// All ovoids of Q⁺(7,2) in canonical order.
pub fn ovoids() -> Result<&'static [Ovoid]> {
    if let Some(o) = OVOIDS.get() {
        return Ok(o);
    }
    let ctx = GeometryContext::new(4)?;
    let gens = generators(&ctx, SpaceKind::Hyperbolic)?;
    let computed = enumerate_ovoids(&Quadric::hyperbolic(ctx), gens)?;
    Ok(OVOIDS.get_or_init(|| computed))
}
