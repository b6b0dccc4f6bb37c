//! Aggregates of conic nuclei sharing points of an ovoid.

use std::collections::BTreeMap;

use crate::error::{GeomError, Result};
use crate::gf2::{line_through, BinVec, Line, PointSet};
use crate::pauli::GeometryContext;
use crate::polar::gq::{check_gq, collinear_triples, commuting_triples, GqReport};
use crate::polar::ovoids::Ovoid;
use crate::polar::structure::{second_ovoid_on_conic, solid_extra_point, xor_sum, Conic};

/// The 28 conic nuclei on a point `p` of an ovoid with one of them singled
/// out, and the structure left on the other 27.
#[derive(Clone, Debug)]
pub struct NucleiFan {
    pub point: BinVec,
    pub nuclei: Vec<BinVec>,
    pub singled: BinVec,
    /// The two other points of the singled conic.
    pub pair: [BinVec; 2],
    /// Nuclei of the other conics through `pair[0]`, resp. `pair[1]`,
    /// indexed by the third ovoid point so that `sixes[0][i]` and
    /// `sixes[1][i]` are associated.
    pub sixes: [Vec<BinVec>; 2],
    pub fifteen: Vec<BinVec>,
    /// The lines `{sixes[0][i], sixes[1][i]}` and their common point.
    pub pairing_lines: Vec<Line>,
    pub concurrence: Option<BinVec>,
    /// Third points of the 30 lines `{sixes[0][i], sixes[1][j]}`, `i ≠ j`.
    pub cross_points: Vec<BinVec>,
    /// How often each cross point occurs.
    pub cross_multiplicity: BTreeMap<usize, usize>,
    pub cross_lines: Vec<Line>,
    /// Lines of the 15 cross points plus the double-six as pairwise
    /// commuting triples, and their quadrangle check.
    pub gq_lines: Vec<Vec<BinVec>>,
    pub gq: GqReport,
    /// The same check with projective lines only.
    pub collinear_gq: GqReport,
}

impl NucleiFan {
    /// The 15 + 6 + 6 split and concurrence at `p + singled`.
    pub fn split_holds(&self, ctx: &GeometryContext) -> bool {
        let all: PointSet = self.nuclei.iter().copied().collect();
        let fifteen: PointSet = self.fifteen.iter().copied().collect();
        let a: PointSet = self.sixes[0].iter().copied().collect();
        let b: PointSet = self.sixes[1].iter().copied().collect();
        all.len() == 28
            && self.nuclei.iter().all(|n| ctx.quadratic_raw(n.bits()) == 1)
            && fifteen.len() == 15
            && a.len() == 6
            && b.len() == 6
            && (fifteen | a | b).len() == 27
            && !(fifteen | a | b).contains(self.singled.bits())
            && self.concurrence == Some(self.point + self.singled)
    }
}

/// The concurrence point of lines all sharing one point, if any.
fn common_point(lines: &[Line]) -> Option<BinVec> {
    let first = lines.first()?;
    first
        .points()
        .into_iter()
        .find(|&p| lines.iter().all(|l| l.contains(p)))
}

pub fn nuclei_fan(
    ctx: &GeometryContext,
    o: &Ovoid,
    p: BinVec,
    singled: BinVec,
) -> Result<NucleiFan> {
    if !o.contains(p) {
        return Err(GeomError::Usage(format!("{p} is not on the ovoid")));
    }
    let others: Vec<BinVec> = o.points().iter().copied().filter(|&x| x != p).collect();
    let mut conics = Vec::new();
    for i in 0..others.len() {
        for j in i + 1..others.len() {
            conics.push(Conic::new(ctx, o, &[p, others[i], others[j]])?);
        }
    }
    let nuclei: Vec<BinVec> = conics.iter().map(|c| c.nucleus).collect();
    let chosen = conics.iter().find(|c| c.nucleus == singled).ok_or_else(|| {
        GeomError::Usage(format!("{singled} is not the nucleus of a conic through {p}"))
    })?;
    let pair: Vec<BinVec> = chosen.triple.iter().copied().filter(|&x| x != p).collect();
    let pair = [pair[0], pair[1]];
    let rest: Vec<BinVec> = others
        .iter()
        .copied()
        .filter(|x| !pair.contains(x))
        .collect();
    let nucleus_of = |a: BinVec, b: BinVec| {
        conics
            .iter()
            .find(|c| c.triple.contains(&a) && c.triple.contains(&b))
            .map(|c| c.nucleus)
            .expect("every pair with p spans a conic")
    };
    let sixes = [
        rest.iter().map(|&y| nucleus_of(pair[0], y)).collect::<Vec<_>>(),
        rest.iter().map(|&y| nucleus_of(pair[1], y)).collect::<Vec<_>>(),
    ];
    let mut fifteen = Vec::new();
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            fifteen.push(nucleus_of(rest[i], rest[j]));
        }
    }
    fifteen.sort_unstable();
    let pairing_lines = (0..rest.len())
        .map(|i| line_through(sixes[0][i], sixes[1][i]))
        .collect::<Result<Vec<_>>>()?;
    let concurrence = common_point(&pairing_lines);
    let mut cross_lines = Vec::new();
    let mut counts: BTreeMap<BinVec, usize> = BTreeMap::new();
    for i in 0..rest.len() {
        for j in 0..rest.len() {
            if i != j {
                let l = line_through(sixes[0][i], sixes[1][j])?;
                *counts.entry(sixes[0][i] + sixes[1][j]).or_default() += 1;
                cross_lines.push(l);
            }
        }
    }
    cross_lines.sort_unstable();
    let mut cross_multiplicity = BTreeMap::new();
    for &m in counts.values() {
        *cross_multiplicity.entry(m).or_default() += 1;
    }
    let cross_points: Vec<BinVec> = counts.into_keys().collect();
    let structure: PointSet = cross_points
        .iter()
        .chain(&sixes[0])
        .chain(&sixes[1])
        .copied()
        .collect();
    let gq_lines = commuting_triples(ctx, structure);
    let gq = check_gq(structure, &gq_lines);
    let collinear: Vec<Vec<BinVec>> = collinear_triples(ctx, structure)
        .iter()
        .map(|l| l.points().to_vec())
        .collect();
    let collinear_gq = check_gq(structure, &collinear);
    Ok(NucleiFan {
        point: p,
        nuclei,
        singled,
        pair,
        sixes,
        fifteen,
        pairing_lines,
        concurrence,
        cross_points,
        cross_multiplicity,
        cross_lines,
        gq_lines,
        gq,
        collinear_gq,
    })
}

/// Nuclei of the seven conics through two ovoid points, the 21 third points
/// of the lines they span, and the 35 sums of three of them.
#[derive(Clone, Debug)]
pub struct HeptadAnalogue {
    pub pair: [BinVec; 2],
    pub heptad: Vec<BinVec>,
    pub lines: Vec<Line>,
    pub third_points: Vec<BinVec>,
    pub triple_nuclei: Vec<BinVec>,
}

impl HeptadAnalogue {
    /// Heptad and third points are 28 distinct skew points, and the triple
    /// sums are 35 distinct symmetric points.
    pub fn holds(&self, ctx: &GeometryContext) -> bool {
        let skew: PointSet = self
            .heptad
            .iter()
            .chain(&self.third_points)
            .copied()
            .collect();
        let sym: PointSet = self.triple_nuclei.iter().copied().collect();
        self.heptad.len() == 7
            && self.lines.len() == 21
            && skew.len() == 28
            && skew.iter().all(|x| ctx.quadratic_raw(x) == 1)
            && sym.len() == 35
            && sym.iter().all(|x| ctx.quadratic_raw(x) == 0)
    }
}

pub fn heptad_analogue_data(
    ctx: &GeometryContext,
    o: &Ovoid,
    p1: BinVec,
    p2: BinVec,
) -> Result<HeptadAnalogue> {
    if p1 == p2 || !o.contains(p1) || !o.contains(p2) {
        return Err(GeomError::Usage(
            "a heptad needs two distinct points of the ovoid".into(),
        ));
    }
    let heptad = o
        .points()
        .iter()
        .filter(|&&x| x != p1 && x != p2)
        .map(|&x| Conic::new(ctx, o, &[p1, p2, x]).map(|c| c.nucleus))
        .collect::<Result<Vec<_>>>()?;
    let mut lines = Vec::new();
    let mut third_points = Vec::new();
    let mut triple_nuclei = Vec::new();
    for i in 0..7 {
        for j in i + 1..7 {
            lines.push(line_through(heptad[i], heptad[j])?);
            third_points.push(heptad[i] + heptad[j]);
            for k in j + 1..7 {
                triple_nuclei.push(heptad[i] + heptad[j] + heptad[k]);
            }
        }
    }
    lines.sort_unstable();
    third_points.sort_unstable();
    triple_nuclei.sort_unstable();
    Ok(HeptadAnalogue {
        pair: [p1, p2],
        heptad,
        lines,
        third_points,
        triple_nuclei,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HeptadFamilyShape {
    Triangle,
    Quadrangle,
}

/// Heptads of a triangle or quadrangle of pairs.
#[derive(Clone, Debug)]
pub struct HeptadFamily {
    pub shape: HeptadFamilyShape,
    pub pairs: Vec<[BinVec; 2]>,
    pub heptads: Vec<PointSet>,
    /// Triangle: the three heptads of the same pairs in the other ovoid
    /// through the triangle.
    pub second_heptads: Vec<PointSet>,
    /// Points common to all heptads (both sets in the triangle case).
    pub common: PointSet,
    /// Quadrangle: `|H_i ∩ H_j|` for the pairs `(0,1), (1,2), (2,3), (3,0)`
    /// then `(0,2), (1,3)`.
    pub meets: Vec<usize>,
    /// Quadrangle: lines joining each shared point to its vertex.
    pub pairing_lines: Vec<Line>,
    pub concurrence: Option<BinVec>,
    pub solid_point: Option<BinVec>,
}

impl HeptadFamily {
    pub fn holds(&self) -> bool {
        match self.shape {
            HeptadFamilyShape::Triangle => {
                self.heptads.len() == 3 && self.second_heptads.len() == 3 && self.common.len() == 1
            }
            HeptadFamilyShape::Quadrangle => {
                self.meets == [1, 1, 1, 1, 0, 0]
                    && self.pairing_lines.len() == 4
                    && self.concurrence.is_some()
                    && self.concurrence == self.solid_point
            }
        }
    }
}

fn heptad_set(ctx: &GeometryContext, o: &Ovoid, pair: [BinVec; 2]) -> Result<PointSet> {
    Ok(heptad_analogue_data(ctx, o, pair[0], pair[1])?
        .heptad
        .into_iter()
        .collect())
}

/// Orders the pairs of a 4-cycle consecutively; `None` if they do not form
/// one.
fn as_cycle(pairs: &[[BinVec; 2]]) -> Option<Vec<BinVec>> {
    let mut cycle = vec![pairs[0][0], pairs[0][1]];
    let mut used = vec![false; pairs.len()];
    used[0] = true;
    while cycle.len() <= pairs.len() {
        let last = *cycle.last()?;
        let (k, next) = pairs.iter().enumerate().find_map(|(k, e)| {
            if used[k] {
                None
            } else if e[0] == last {
                Some((k, e[1]))
            } else if e[1] == last {
                Some((k, e[0]))
            } else {
                None
            }
        })?;
        used[k] = true;
        cycle.push(next);
    }
    (cycle.first() == cycle.last()).then(|| {
        cycle.pop();
        cycle
    })
}

pub fn heptad_family_data(
    ctx: &GeometryContext,
    o: &Ovoid,
    pairs: &[[BinVec; 2]],
) -> Result<HeptadFamily> {
    let shape_error = || {
        GeomError::Usage(
            "the pairs must form a triangle (3 pairs) or a quadrangle (4 pairs) on ovoid points"
                .into(),
        )
    };
    if pairs.iter().any(|[a, b]| a == b || !o.contains(*a) || !o.contains(*b)) {
        return Err(shape_error());
    }
    let vertices: PointSet = pairs.iter().flatten().copied().collect();
    let cycle = match pairs.len() {
        3 | 4 if vertices.len() == pairs.len() => as_cycle(pairs).ok_or_else(shape_error)?,
        _ => return Err(shape_error()),
    };
    let heptads = pairs
        .iter()
        .map(|&pair| heptad_set(ctx, o, pair))
        .collect::<Result<Vec<_>>>()?;
    if pairs.len() == 3 {
        let second = second_ovoid_on_conic(ctx, o, &cycle)?.second;
        let second_heptads = pairs
            .iter()
            .map(|&pair| heptad_set(ctx, &second, pair))
            .collect::<Result<Vec<_>>>()?;
        let common = heptads
            .iter()
            .chain(&second_heptads)
            .fold(heptads[0], |acc, h| acc & *h);
        return Ok(HeptadFamily {
            shape: HeptadFamilyShape::Triangle,
            pairs: pairs.to_vec(),
            heptads,
            second_heptads,
            common,
            meets: Vec::new(),
            pairing_lines: Vec::new(),
            concurrence: None,
            solid_point: None,
        });
    }
    let edge_heptad = |u: BinVec, v: BinVec| -> Result<PointSet> { heptad_set(ctx, o, [u, v]) };
    let ordered: Vec<PointSet> = (0..4)
        .map(|i| edge_heptad(cycle[i], cycle[(i + 1) % 4]))
        .collect::<Result<_>>()?;
    let meets: Vec<usize> = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)]
        .iter()
        .map(|&(i, j)| (ordered[i] & ordered[j]).len())
        .collect();
    let mut pairing_lines = Vec::new();
    for i in 0..4 {
        let shared = ordered[i] & ordered[(i + 1) % 4];
        let Some(s) = shared.first() else { continue };
        // the vertex outside the two edges sharing this point
        let opposite = cycle[(i + 3) % 4];
        pairing_lines.push(line_through(ctx.vector(s), opposite)?);
    }
    pairing_lines.sort_unstable();
    let concurrence = if pairing_lines.len() == 4 {
        common_point(&pairing_lines)
    } else {
        None
    };
    let solid_point = Some(solid_extra_point(ctx, o, &cycle)?);
    debug_assert_eq!(solid_point, Some(xor_sum(&cycle)));
    let common = heptads.iter().fold(heptads[0], |acc, h| acc & *h);
    Ok(HeptadFamily {
        shape: HeptadFamilyShape::Quadrangle,
        pairs: pairs.to_vec(),
        heptads: ordered,
        second_heptads: Vec::new(),
        common,
        meets,
        pairing_lines,
        concurrence,
        solid_point,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polar::ovoid_star;

    fn ctx() -> GeometryContext {
        GeometryContext::new(4).unwrap()
    }

    fn p(s: &str) -> BinVec {
        ctx().parse_point(s).unwrap()
    }

    #[test]
    fn fan_of_the_figure() {
        let ctx = ctx();
        let fan = nuclei_fan(&ctx, &ovoid_star(), p("XXXX"), p("ZYII")).unwrap();
        assert!(fan.split_holds(&ctx));
        assert_eq!(fan.concurrence, Some(p("YZXX")));
        let pair: PointSet = fan.pair.iter().copied().collect();
        assert_eq!(pair, [p("ZIIX"), p("XZXI")].into_iter().collect());
        assert_eq!(fan.cross_points.len(), 15);
        assert_eq!(fan.cross_multiplicity, BTreeMap::from([(2, 15)]));
        assert!(fan.cross_points.iter().all(|c| ctx.quadratic_raw(c.bits()) == 0));
        assert!(fan.gq.is_gq(2, 4));
        assert_eq!(fan.gq.lines, 45);
        assert_eq!(fan.collinear_gq.lines, 30);
    }

    #[test]
    fn fan_rejects_foreign_nucleus() {
        let ctx = ctx();
        let o = ovoid_star();
        // nucleus of a conic avoiding XXXX
        let n = p("ZIIX") + p("IZYY") + p("XZXI");
        assert!(matches!(
            nuclei_fan(&ctx, &o, p("XXXX"), n),
            Err(GeomError::Usage(_))
        ));
    }

    #[test]
    fn heptad_of_the_figure() {
        let ctx = ctx();
        let h = heptad_analogue_data(&ctx, &ovoid_star(), p("ZZIZ"), p("IXXZ")).unwrap();
        assert!(h.holds(&ctx));
    }

    #[test]
    fn triangle_and_quadrangle() {
        let ctx = ctx();
        let o = ovoid_star();
        let [a, b, c, d] = [p("ZIIX"), p("IZYY"), p("XZXI"), p("ZXZZ")];
        let tri = heptad_family_data(&ctx, &o, &[[a, b], [b, c], [c, a]]).unwrap();
        assert!(tri.holds());
        assert_eq!(tri.common.first(), Some((a + b + c).bits()));
        let quad = heptad_family_data(&ctx, &o, &[[a, b], [c, d], [b, c], [d, a]]).unwrap();
        assert!(quad.holds(), "{quad:?}");
        assert_eq!(quad.concurrence, Some(a + b + c + d));
        assert!(heptad_family_data(&ctx, &o, &[[a, b], [b, c]]).is_err());
        assert!(heptad_family_data(&ctx, &o, &[[a, b], [c, d], [a, c], [b, d]]).is_ok());
        assert!(heptad_family_data(&ctx, &o, &[[a, b], [a, c], [a, d], [b, c]]).is_err());
    }
}
