//! Generalized quadrangle checks on explicit point/line incidence.

use serde::Serialize;

use crate::gf2::{line_through, BinVec, Line, PointSet};
use crate::pauli::GeometryContext;

/// Outcome of checking a point/line structure against the GQ axioms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GqReport {
    pub points: usize,
    pub lines: usize,
    /// `(s, t)` when every line has `s + 1` points and every point lies on
    /// `t + 1` lines.
    pub order: Option<(usize, usize)>,
    pub two_lines_meet_at_most_once: bool,
    /// For every antiflag `(p, L)` exactly one line through `p` meets `L`.
    pub one_or_all: bool,
}

impl GqReport {
    pub fn is_gq(&self, s: usize, t: usize) -> bool {
        self.order == Some((s, t)) && self.two_lines_meet_at_most_once && self.one_or_all
    }
}

/// `lines` are arbitrary point triples (or larger blocks), not necessarily
/// projective lines.
pub fn check_gq(points: PointSet, lines: &[Vec<BinVec>]) -> GqReport {
    let pts: Vec<u16> = points.iter().collect();
    let on: Vec<PointSet> = lines
        .iter()
        .map(|l| l.iter().map(|p| p.bits()).collect())
        .collect();
    let degree = |p: u16| on.iter().filter(|l| l.contains(p)).count();
    let line_sizes: Vec<usize> = on.iter().map(PointSet::len).collect();
    let degrees: Vec<usize> = pts.iter().map(|&p| degree(p)).collect();
    let inside = on.iter().all(|l| l.is_subset(&points));
    let order = match (line_sizes.first(), degrees.first()) {
        (Some(&s1), Some(&t1))
            if inside
                && s1 > 0
                && t1 > 0
                && line_sizes.iter().all(|&x| x == s1)
                && degrees.iter().all(|&x| x == t1) =>
        {
            Some((s1 - 1, t1 - 1))
        }
        _ => None,
    };
    let mut meet_once = true;
    for i in 0..on.len() {
        for j in i + 1..on.len() {
            if (on[i] & on[j]).len() > 1 {
                meet_once = false;
            }
        }
    }
    let mut one_or_all = true;
    'outer: for l in &on {
        for &p in &pts {
            if l.contains(p) {
                continue;
            }
            let meeting = on
                .iter()
                .filter(|m| m.contains(p) && !(**m & *l).is_empty())
                .count();
            if meeting != 1 {
                one_or_all = false;
                break 'outer;
            }
        }
    }
    GqReport {
        points: pts.len(),
        lines: lines.len(),
        order,
        two_lines_meet_at_most_once: meet_once,
        one_or_all,
    }
}

/// Projective lines of PG(2N−1, 2) all of whose points lie in `set`.
pub fn collinear_triples(ctx: &GeometryContext, set: PointSet) -> Vec<Line> {
    let mut out = Vec::new();
    for a in set.iter() {
        for b in set.above(a).iter() {
            let c = a ^ b;
            if c > b && set.contains(c) {
                out.push(line_through(ctx.vector(a), ctx.vector(b)).expect("distinct points"));
            }
        }
    }
    out.sort_unstable();
    out
}

/// Triples of `set` that are pairwise commuting (σ = 0), as abstract lines.
/// The third element need not be the sum of the other two.
pub fn commuting_triples(ctx: &GeometryContext, set: PointSet) -> Vec<Vec<BinVec>> {
    let mut out = Vec::new();
    for a in set.iter() {
        for b in set.above(a).iter() {
            if ctx.sigma_raw(a, b) != 0 {
                continue;
            }
            for c in set.above(b).iter() {
                if ctx.sigma_raw(a, c) == 0 && ctx.sigma_raw(b, c) == 0 {
                    out.push(vec![ctx.vector(a), ctx.vector(b), ctx.vector(c)]);
                }
            }
        }
    }
    out
}

/// Lines as point lists, for [`check_gq`].
pub fn blocks(lines: &[Line]) -> Vec<Vec<BinVec>> {
    lines.iter().map(|l| l.points().to_vec()).collect()
}
