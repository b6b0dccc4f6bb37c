use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use super::counts::SpaceKind;
use crate::error::{GeomError, Result};
use crate::gf2::{Flat, PointSet};
use crate::pauli::GeometryContext;

/// One of the two classes of generators of a hyperbolic quadric.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    First,
    Second,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::First => "first",
            Family::Second => "second",
        }
    }
}

/// Maximal totally isotropic (symplectic) or totally singular (quadric)
/// subspaces, in canonical order.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    space_kind: SpaceKind,
    n_qubits: usize,
    generators: Vec<Flat>,
    point_sets: Vec<PointSet>,
    families: Option<Vec<Family>>,
}

impl GeneratorSet {
    pub fn space_kind(&self) -> SpaceKind {
        self.space_kind
    }

    pub fn generators(&self) -> &[Flat] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Point sets of the generators, parallel to [`Self::generators`].
    pub fn point_sets(&self) -> &[PointSet] {
        &self.point_sets
    }

    pub fn families(&self) -> Option<&[Family]> {
        self.families.as_deref()
    }

    pub fn family_sizes(&self) -> Option<(usize, usize)> {
        self.families.as_ref().map(|f| {
            let first = f.iter().filter(|&&x| x == Family::First).count();
            (first, f.len() - first)
        })
    }

    /// Whether the labels agree with the intersection rule on every pair of
    /// generators (quadric case only).
    pub fn families_consistent(&self) -> bool {
        let Some(families) = &self.families else {
            return false;
        };
        let n = self.n_qubits;
        (0..self.len()).into_par_iter().all(|i| {
            (i + 1..self.len()).all(|j| {
                let same = families[i] == families[j];
                same == same_family(n, &self.point_sets[i], &self.point_sets[j])
            })
        })
    }
}

/// Two generators of Q⁺(2N−1, 2) (vector dimension N) lie in the same family
/// iff `N − dim(A ∩ B)` is even.
pub fn same_family(n_qubits: usize, a: &PointSet, b: &PointSet) -> bool {
    let common = (*a & *b).len();
    let rank = (common + 1).trailing_zeros() as usize;
    (n_qubits - rank) % 2 == 0
}

/// All generators of W(2N−1, 2) (`Symplectic`) or of the quadric of
/// symmetric elements (`Hyperbolic`).
///
/// Depth-first: a flat is extended by any admissible point larger than the
/// last basis point chosen and outside the current span; admissible means
/// orthogonal to the whole flat (and on the quadric in the singular case).
/// Duplicates coming from different bases collapse on the echelon form.
pub fn enumerate_generators(ctx: &GeometryContext, kind: SpaceKind) -> Result<GeneratorSet> {
    let allowed = match kind {
        SpaceKind::Symplectic => (1..=ctx.point_count() as u16).collect::<PointSet>(),
        SpaceKind::Hyperbolic => ctx.quadric_points(),
        other => {
            return Err(GeomError::Usage(format!(
                "generator enumeration supports symplectic and hyperbolic spaces, not {other}"
            )))
        }
    };
    let perps: Vec<PointSet> = (0..=ctx.point_count() as u16)
        .map(|p| ctx.perp(p))
        .collect();
    let target = ctx.n_qubits();
    let roots: Vec<u16> = allowed.iter().collect();
    let found: BTreeSet<Flat> = roots
        .par_iter()
        .map(|&p| {
            let mut out = BTreeSet::new();
            let mut flat = Flat::empty(ctx.dim());
            flat.absorb(p);
            let cand = allowed & perps[p as usize];
            extend(&perps, &flat, p, cand, target, &mut out);
            out
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    let generators: Vec<Flat> = found.into_iter().collect();
    let point_sets: Vec<PointSet> = generators.iter().map(Flat::point_set).collect();
    let families = (kind == SpaceKind::Hyperbolic && !point_sets.is_empty()).then(|| {
        point_sets
            .iter()
            .map(|g| {
                if same_family(ctx.n_qubits(), &point_sets[0], g) {
                    Family::First
                } else {
                    Family::Second
                }
            })
            .collect()
    });
    Ok(GeneratorSet {
        space_kind: kind,
        n_qubits: ctx.n_qubits(),
        generators,
        point_sets,
        families,
    })
}

fn extend(
    perps: &[PointSet],
    flat: &Flat,
    last: u16,
    candidates: PointSet,
    target: usize,
    out: &mut BTreeSet<Flat>,
) {
    if flat.rank() == target {
        out.insert(flat.clone());
        return;
    }
    let fresh = candidates.above(last).minus(flat.point_set());
    for p in fresh.iter() {
        let mut next = flat.clone();
        next.absorb(p);
        extend(perps, &next, p, candidates & perps[p as usize], target, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polar::counts::{expected_count, Measure};

    #[test]
    fn small_generator_counts() {
        for n in 2..=3 {
            let ctx = GeometryContext::new(n).unwrap();
            let w = enumerate_generators(&ctx, SpaceKind::Symplectic).unwrap();
            let q = enumerate_generators(&ctx, SpaceKind::Hyperbolic).unwrap();
            let nn = n as u32;
            assert_eq!(
                w.len() as u64,
                expected_count(SpaceKind::Symplectic, Measure::Generators, nn, 2).unwrap()
            );
            assert_eq!(
                q.len() as u64,
                expected_count(SpaceKind::Hyperbolic, Measure::Generators, nn, 2).unwrap()
            );
            let half = q.len() / 2;
            assert_eq!(q.family_sizes(), Some((half, half)));
            assert!(q.families_consistent());
            assert!(w.families().is_none());
        }
    }

    #[test]
    fn generators_are_isotropic_and_maximal() {
        let ctx = GeometryContext::new(3).unwrap();
        let w = enumerate_generators(&ctx, SpaceKind::Symplectic).unwrap();
        for g in w.generators() {
            assert_eq!(g.proj_dim(), 2);
            let pts = g.point_set();
            for a in pts.iter() {
                for b in pts.iter() {
                    assert_eq!(ctx.sigma_raw(a, b), 0);
                }
            }
        }
    }

    #[test]
    fn rejects_unsupported_kind() {
        let ctx = GeometryContext::new(2).unwrap();
        assert!(enumerate_generators(&ctx, SpaceKind::Elliptic).is_err());
    }
}
