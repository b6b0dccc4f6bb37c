//! Sections of the quadric by subspaces spanned by ovoid points, and the
//! conic, axis and tetrad structure of a single ovoid.
//!
//! Everything here assumes an ovoid of Q⁺(7,2); the helpers only rely on
//! the ovoid points being pairwise non-perpendicular quadric points, so a
//! sum of `k` of them has `Q = C(k,2) mod 2`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::ovoids::{ovoids_within, Ovoid};
use crate::error::{GeomError, Result};
use crate::gf2::{line_through, span_raw, BinVec, Flat, Line, PointSet};
use crate::pauli::GeometryContext;

fn sum(points: &[BinVec]) -> BinVec {
    points
        .iter()
        .skip(1)
        .fold(points[0], |acc, &p| acc + p)
}

/// Checks that `subset` consists of `k` distinct points of `o`.
fn subset_of(o: &Ovoid, subset: &[BinVec], k: usize, what: &str) -> Result<PointSet> {
    let set: PointSet = subset.iter().copied().collect();
    if subset.len() != k || set.len() != k {
        return Err(GeomError::Usage(format!(
            "a {what} needs {k} distinct ovoid points, got {}",
            subset.len()
        )));
    }
    if let Some(p) = subset.iter().find(|p| !o.contains(**p)) {
        return Err(GeomError::Usage(format!("{p} is not a point of the ovoid")));
    }
    Ok(set)
}

fn complement(ctx: &GeometryContext, o: &Ovoid, set: PointSet) -> Vec<BinVec> {
    o.set().minus(set).vectors(ctx.dim())
}

fn span_points(points: &[BinVec]) -> Flat {
    span_raw(points[0].dim(), points.iter().map(|p| p.bits()))
}

/// Quadric points of the subspace spanned by `points`.
pub fn section(ctx: &GeometryContext, points: &[BinVec]) -> PointSet {
    span_points(points).point_set() & ctx.quadric_points()
}

/// Third points of the 36 secants `{a, b, a+b}`, sorted.
pub fn secant_third_points(o: &Ovoid) -> Vec<BinVec> {
    let pts = o.points();
    let mut out = Vec::with_capacity(pts.len() * (pts.len() - 1) / 2);
    for (i, &a) in pts.iter().enumerate() {
        for &b in &pts[i + 1..] {
            out.push(a + b);
        }
    }
    out.sort_unstable();
    out
}

/// Three ovoid points, the plane they span and its nucleus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conic {
    pub triple: [BinVec; 3],
    pub nucleus: BinVec,
    #[serde(skip)]
    pub plane: Flat,
}

impl Conic {
    /// Validates that the plane meets the quadric only in the triple and
    /// that the nucleus is off the quadric.
    pub fn new(ctx: &GeometryContext, o: &Ovoid, triple: &[BinVec]) -> Result<Self> {
        let set = subset_of(o, triple, 3, "conic")?;
        let plane = span_points(triple);
        if (plane.point_set() & ctx.quadric_points()) != set {
            return Err(GeomError::Consistency(format!(
                "plane of {triple:?} meets the quadric outside the triple"
            )));
        }
        let nucleus = sum(triple);
        if ctx.quadratic_raw(nucleus.bits()) != 1 {
            return Err(GeomError::Consistency(format!(
                "nucleus {nucleus} lies on the quadric"
            )));
        }
        let mut t = [triple[0], triple[1], triple[2]];
        t.sort_unstable();
        Ok(Self {
            triple: t,
            nucleus,
            plane,
        })
    }

    /// The unique line of the plane with no quadric point.
    pub fn polar_line(&self, ctx: &GeometryContext) -> Result<Line> {
        let pts = self.plane.points();
        let mut found = Vec::new();
        for (i, &a) in pts.iter().enumerate() {
            for &b in &pts[i + 1..] {
                let c = a + b;
                if c > b
                    && [a, b, c]
                        .iter()
                        .all(|p| ctx.quadratic_raw(p.bits()) == 1)
                {
                    found.push(line_through(a, b)?);
                }
            }
        }
        match found.as_slice() {
            [line] => Ok(*line),
            _ => Err(GeomError::Consistency(format!(
                "plane of {:?} has {} quadric-free lines",
                self.triple,
                found.len()
            ))),
        }
    }
}

/// All `C(9,3)` conics of the ovoid in canonical triple order.
pub fn conics_of(ctx: &GeometryContext, o: &Ovoid) -> Result<Vec<Conic>> {
    let pts = o.points();
    let mut out = Vec::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            for k in j + 1..pts.len() {
                out.push(Conic::new(ctx, o, &[pts[i], pts[j], pts[k]])?);
            }
        }
    }
    Ok(out)
}

/// A partition of an ovoid into three triples, stored canonically.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct Partition {
    triples: [[BinVec; 3]; 3],
}

impl Partition {
    pub fn new(o: &Ovoid, triples: [[BinVec; 3]; 3]) -> Result<Self> {
        let all: Vec<BinVec> = triples.iter().flatten().copied().collect();
        let set: PointSet = all.iter().copied().collect();
        if set.len() != 9 || set != o.set() {
            return Err(GeomError::Usage(
                "a partition must split the nine ovoid points into three disjoint triples".into(),
            ));
        }
        let mut t = triples;
        for triple in t.iter_mut() {
            triple.sort_unstable();
        }
        t.sort_unstable();
        Ok(Self { triples: t })
    }

    /// Parses `"a,b,c;d,e,f;g,h,i"` (words or coordinates).
    pub fn parse(ctx: &GeometryContext, o: &Ovoid, text: &str) -> Result<Self> {
        let groups: Vec<Vec<BinVec>> = text
            .split(';')
            .map(|g| g.split(',').map(|t| ctx.parse_point(t)).collect())
            .collect::<Result<_>>()?;
        if groups.len() != 3 || groups.iter().any(|g| g.len() != 3) {
            return Err(GeomError::Usage(format!(
                "partition {text:?} must be three ';'-separated triples"
            )));
        }
        let t = |g: &Vec<BinVec>| [g[0], g[1], g[2]];
        Self::new(o, [t(&groups[0]), t(&groups[1]), t(&groups[2])])
    }

    pub fn triples(&self) -> &[[BinVec; 3]; 3] {
        &self.triples
    }
}

/// The 280 partitions of a nine-point ovoid into triples.
pub fn partitions(o: &Ovoid) -> Vec<Partition> {
    let pts = o.points();
    assert_eq!(pts.len(), 9, "partitions are defined for nine-point ovoids");
    let mut out = Vec::with_capacity(280);
    let first = pts[0];
    let rest: Vec<BinVec> = pts[1..].to_vec();
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            let t1 = [first, rest[i], rest[j]];
            let left: Vec<BinVec> = rest
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i && *k != j)
                .map(|(_, &p)| p)
                .collect();
            let second = left[0];
            for a in 1..left.len() {
                for b in a + 1..left.len() {
                    let t2 = [second, left[a], left[b]];
                    let t3: Vec<BinVec> = left
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| *k != 0 && *k != a && *k != b)
                        .map(|(_, &p)| p)
                        .collect();
                    out.push(Partition {
                        triples: [t1, t2, [t3[0], t3[1], t3[2]]],
                    });
                }
            }
        }
    }
    out
}

/// The line carrying the nuclei of the partition's three conics.
pub fn axis_of_partition(ctx: &GeometryContext, o: &Ovoid, partition: &Partition) -> Result<Line> {
    let nuclei: Vec<BinVec> = partition
        .triples
        .iter()
        .map(|t| Conic::new(ctx, o, t).map(|c| c.nucleus))
        .collect::<Result<_>>()?;
    let axis = Line::new(nuclei[0], nuclei[1], nuclei[2])
        .map_err(|_| GeomError::Consistency(format!("nuclei {nuclei:?} are not collinear")))?;
    if axis
        .points()
        .iter()
        .any(|p| ctx.quadratic_raw(p.bits()) == 0)
    {
        return Err(GeomError::Consistency(format!("axis {axis:?} meets the quadric")));
    }
    Ok(axis)
}

/// Axis plus the quadric-free line of each of the three Fano planes.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Tetrad {
    pub axis: Line,
    pub plane_lines: [Line; 3],
}

impl Tetrad {
    /// The four lines in canonical order.
    pub fn lines(&self) -> [Line; 4] {
        let mut l = [
            self.axis,
            self.plane_lines[0],
            self.plane_lines[1],
            self.plane_lines[2],
        ];
        l.sort_unstable();
        l
    }

    pub fn points(&self) -> PointSet {
        self.lines()
            .iter()
            .flat_map(|l| l.points())
            .collect()
    }

    /// Sorted list of the sorted three-point line keys.
    pub fn key(&self) -> String {
        self.lines()
            .iter()
            .map(Line::key)
            .collect::<Vec<_>>()
            .join(";")
    }

    /// Canonical identity of the line set, independent of which line is the axis.
    pub fn line_set(&self) -> [Line; 4] {
        self.lines()
    }
}

pub fn tetrad_of_partition(
    ctx: &GeometryContext,
    o: &Ovoid,
    partition: &Partition,
) -> Result<Tetrad> {
    let axis = axis_of_partition(ctx, o, partition)?;
    let mut plane_lines = [axis; 3];
    for (slot, t) in plane_lines.iter_mut().zip(&partition.triples) {
        *slot = Conic::new(ctx, o, t)?.polar_line(ctx)?;
    }
    let tetrad = Tetrad { axis, plane_lines };
    let lines = tetrad.lines();
    for i in 0..4 {
        for j in i + 1..4 {
            if lines[i].meets(&lines[j]) {
                return Err(GeomError::Consistency("tetrad lines meet".into()));
            }
        }
    }
    let pts = tetrad.points();
    if pts.len() != 12 || span_raw(ctx.dim(), pts.iter()).rank() != ctx.dim() {
        return Err(GeomError::Consistency(
            "tetrad does not span the ambient space".into(),
        ));
    }
    Ok(tetrad)
}

/// Global tetrad census: raw (ovoid, partition) count and the number of
/// distinct tetrads with their multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TetradCensus {
    pub raw: usize,
    pub distinct: usize,
    /// multiplicity → number of tetrads with it
    pub multiplicities: BTreeMap<usize, usize>,
}

pub fn tetrads_of_all(
    ctx: &GeometryContext,
    ovoids: &[Ovoid],
) -> Result<(Vec<[Line; 4]>, TetradCensus)> {
    let per_ovoid: Vec<Vec<[Line; 4]>> = ovoids
        .par_iter()
        .map(|o| {
            partitions(o)
                .iter()
                .map(|p| tetrad_of_partition(ctx, o, p).map(|t| t.line_set()))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut counts: BTreeMap<[Line; 4], usize> = BTreeMap::new();
    let mut raw = 0;
    for t in per_ovoid.into_iter().flatten() {
        raw += 1;
        *counts.entry(t).or_default() += 1;
    }
    let mut multiplicities = BTreeMap::new();
    for &m in counts.values() {
        *multiplicities.entry(m).or_default() += 1;
    }
    let census = TetradCensus {
        raw,
        distinct: counts.len(),
        multiplicities,
    };
    Ok((counts.into_keys().collect(), census))
}

/// The ovoid sharing a conic with `o`, and the six lines through the
/// conic's nucleus pairing the non-shared points.
#[derive(Clone, Debug)]
pub struct ConicPair {
    pub conic: Conic,
    pub second: Ovoid,
    pub pairing_lines: Vec<Line>,
}

/// The second ovoid through a conic: each ovoid point `x` off the conic is
/// replaced by `x + n`, the third point of its line through the nucleus `n`.
pub fn second_ovoid_on_conic(
    ctx: &GeometryContext,
    o: &Ovoid,
    triple: &[BinVec],
) -> Result<ConicPair> {
    let conic = Conic::new(ctx, o, triple)?;
    let n = conic.nucleus;
    let tset: PointSet = triple.iter().copied().collect();
    let mut pts: Vec<BinVec> = triple.to_vec();
    let mut pairing_lines = Vec::new();
    for x in complement(ctx, o, tset) {
        pts.push(x + n);
        pairing_lines.push(line_through(x, x + n)?);
    }
    let second = Ovoid::from_clique(ctx, &pts)
        .map_err(|e| GeomError::Consistency(format!("reflected set is not an ovoid: {e}")))?;
    if second.meet(o) != 3 {
        return Err(GeomError::Consistency(
            "second ovoid shares more than the conic".into(),
        ));
    }
    pairing_lines.sort_unstable();
    Ok(ConicPair {
        conic,
        second,
        pairing_lines,
    })
}

/// Three pairwise disjoint ovoids on the partition's triples, and the
/// second split of their 27-point union into three ovoids (containing `o`).
#[derive(Clone, Debug)]
pub struct SixOvoidFamily {
    pub partition: Partition,
    /// `first_triad[i]` is the second ovoid on triple `i`.
    pub first_triad: [Ovoid; 3],
    /// `o` first, then the other two in canonical order.
    pub second_triad: [Ovoid; 3],
    pub union: PointSet,
    /// Ovoids contained in the union.
    pub ovoids_in_union: usize,
    /// Number of ways to split the union into three disjoint ovoids.
    pub splits: usize,
    /// Axis of each member with respect to the triples it shares with the
    /// other triad; first triad then second.
    pub axes: [Line; 6],
    pub axis: Line,
}

impl SixOvoidFamily {
    pub fn members(&self) -> Vec<&Ovoid> {
        self.first_triad.iter().chain(&self.second_triad).collect()
    }

    pub fn common_axis(&self) -> bool {
        self.axes.iter().all(|&a| a == self.axis)
    }
}

fn axis_against(ctx: &GeometryContext, x: &Ovoid, others: &[Ovoid; 3]) -> Result<Line> {
    let mut triples = [[x.points()[0]; 3]; 3];
    for (slot, other) in triples.iter_mut().zip(others) {
        let common = (x.set() & other.set()).vectors(ctx.dim());
        if common.len() != 3 {
            return Err(GeomError::Consistency(format!(
                "members of opposite triads share {} points",
                common.len()
            )));
        }
        *slot = [common[0], common[1], common[2]];
    }
    axis_of_partition(ctx, x, &Partition::new(x, triples)?)
}

pub fn six_ovoid_family(
    ctx: &GeometryContext,
    o: &Ovoid,
    partition: &Partition,
) -> Result<SixOvoidFamily> {
    let axis = axis_of_partition(ctx, o, partition)?;
    let firsts: Vec<Ovoid> = partition
        .triples
        .iter()
        .map(|t| second_ovoid_on_conic(ctx, o, t).map(|c| c.second))
        .collect::<Result<_>>()?;
    let union = firsts[0].set() | firsts[1].set() | firsts[2].set();
    if union.len() != 27 {
        return Err(GeomError::Consistency(
            "second ovoids of a partition are not disjoint".into(),
        ));
    }
    let inside = ovoids_within(ctx, union);
    let mut splits = Vec::new();
    for i in 0..inside.len() {
        for j in i + 1..inside.len() {
            if inside[i].meet(&inside[j]) != 0 {
                continue;
            }
            for k in j + 1..inside.len() {
                if inside[k].meet(&inside[i]) == 0 && inside[k].meet(&inside[j]) == 0 {
                    splits.push([i, j, k]);
                }
            }
        }
    }
    let with_o = splits
        .iter()
        .find(|s| s.iter().any(|&i| inside[i] == *o))
        .ok_or_else(|| GeomError::Consistency("no split of the union contains o".into()))?;
    let mut others: Vec<Ovoid> = with_o
        .iter()
        .map(|&i| inside[i].clone())
        .filter(|x| x != o)
        .collect();
    others.sort();
    let first_triad = [firsts[0].clone(), firsts[1].clone(), firsts[2].clone()];
    let second_triad = [o.clone(), others[0].clone(), others[1].clone()];
    let mut axes = [axis; 6];
    for (i, x) in first_triad.iter().enumerate() {
        axes[i] = axis_against(ctx, x, &second_triad)?;
    }
    for (i, x) in second_triad.iter().enumerate() {
        axes[3 + i] = axis_against(ctx, x, &first_triad)?;
    }
    Ok(SixOvoidFamily {
        partition: *partition,
        first_triad,
        second_triad,
        union,
        ovoids_in_union: inside.len(),
        splits: splits.len(),
        axes,
        axis,
    })
}

/// Per-ovoid count of points commuting (σ = 0) with `w`.
pub fn commutation_profile(ctx: &GeometryContext, w: BinVec, family: &[&Ovoid]) -> Vec<usize> {
    family
        .iter()
        .map(|o| {
            o.points()
                .iter()
                .filter(|x| ctx.sigma_raw(w.bits(), x.bits()) == 0)
                .count()
        })
        .collect()
}

/// Profiles of every element off the family's union, split by class:
/// distinct symmetric profiles and the skew 6-tuple histogram.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ProfileCensus {
    pub symmetric: BTreeMap<Vec<usize>, usize>,
    pub skew: BTreeMap<Vec<usize>, usize>,
}

pub fn profile_census(ctx: &GeometryContext, family: &SixOvoidFamily) -> ProfileCensus {
    let members = family.members();
    let mut census = ProfileCensus::default();
    for p in ctx.points() {
        if family.union.contains(p.bits()) {
            continue;
        }
        let profile = commutation_profile(ctx, p, &members);
        let bucket = if ctx.quadratic_raw(p.bits()) == 0 {
            &mut census.symmetric
        } else {
            &mut census.skew
        };
        *bucket.entry(profile).or_default() += 1;
    }
    census
}

/// The fifth quadric point of the solid spanned by four ovoid points.
///
/// Also checks the section is an elliptic quadric: five points, no three
/// of them collinear.
pub fn solid_extra_point(ctx: &GeometryContext, o: &Ovoid, quad: &[BinVec]) -> Result<BinVec> {
    let set = subset_of(o, quad, 4, "solid")?;
    let sec = section(ctx, quad);
    let extra = sec.minus(set);
    if sec.len() != 5 || extra.len() != 1 {
        return Err(GeomError::Consistency(format!(
            "solid meets the quadric in {} points",
            sec.len()
        )));
    }
    for a in sec.iter() {
        for b in sec.above(a).iter() {
            if sec.contains(a ^ b) {
                return Err(GeomError::Consistency(
                    "solid section contains a quadric line".into(),
                ));
            }
        }
    }
    Ok(ctx.vector(extra.first().expect("one point")))
}

/// All `C(8,4)/2 = 35` splits of `o \ {p}` into two quadruples; each is
/// returned as the quadruple holding the smallest remaining point.
pub fn point_splits(ctx: &GeometryContext, o: &Ovoid, p: BinVec) -> Result<Vec<[BinVec; 4]>> {
    subset_of(o, &[p], 1, "point")?;
    let mut rest = o.set();
    rest.remove(p.bits());
    let rest = rest.vectors(ctx.dim());
    let mut out = Vec::new();
    for i in 1..rest.len() {
        for j in i + 1..rest.len() {
            for k in j + 1..rest.len() {
                out.push([rest[0], rest[i], rest[j], rest[k]]);
            }
        }
    }
    Ok(out)
}

/// The 1+4+4 construction around a point of the ovoid.
#[derive(Clone, Debug)]
pub struct PointSplit {
    pub point: BinVec,
    pub quads: [[BinVec; 4]; 2],
    /// Fifth quadric point of each quadruple's solid.
    pub extras: [BinVec; 2],
    /// `{point, extras[0], extras[1]}`.
    pub line: Line,
    /// The eight on-quadric lines joining an extra point to the points of
    /// the opposite quadruple.
    pub joining_lines: Vec<Line>,
    /// The ovoid formed by `point` and the eight third points.
    pub second: Ovoid,
}

pub fn point_partition_line(
    ctx: &GeometryContext,
    o: &Ovoid,
    p: BinVec,
    quad: &[BinVec],
) -> Result<PointSplit> {
    subset_of(o, &[p], 1, "point")?;
    let qa = subset_of(o, quad, 4, "quadruple")?;
    if qa.contains(p.bits()) {
        return Err(GeomError::Usage(
            "the quadruple must avoid the selected point".into(),
        ));
    }
    let mut rest = o.set().minus(qa);
    rest.remove(p.bits());
    let quad_b = rest.vectors(ctx.dim());
    let mut quad_a = quad.to_vec();
    quad_a.sort_unstable();
    let ea = solid_extra_point(ctx, o, &quad_a)?;
    let eb = solid_extra_point(ctx, o, &quad_b)?;
    let line = Line::new(p, ea, eb)
        .map_err(|_| GeomError::Consistency("extra points not collinear with p".into()))?;
    let mut joining_lines = Vec::new();
    let mut second_pts = vec![p];
    for (extra, opposite) in [(ea, &quad_b), (eb, &quad_a)] {
        for &x in opposite.iter() {
            let l = line_through(extra, x)?;
            if l.points().iter().any(|q| ctx.quadratic_raw(q.bits()) != 0) {
                return Err(GeomError::Consistency(format!(
                    "line {extra}–{x} leaves the quadric"
                )));
            }
            joining_lines.push(l);
            second_pts.push(extra + x);
        }
    }
    let second = Ovoid::from_clique(ctx, &second_pts)
        .map_err(|e| GeomError::Consistency(format!("1+4+4 set is not an ovoid: {e}")))?;
    joining_lines.sort_unstable();
    let arr = |v: &[BinVec]| [v[0], v[1], v[2], v[3]];
    Ok(PointSplit {
        point: p,
        quads: [arr(&quad_a), arr(&quad_b)],
        extras: [ea, eb],
        line,
        joining_lines,
        second,
    })
}

/// How the other ovoids through `p` meet `o`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionCensus {
    /// Ovoids through `p`, `o` included.
    pub through_point: usize,
    pub only_point: usize,
    pub conic: usize,
    pub other: usize,
}

pub fn ovoid_intersection_census(all: &[Ovoid], o: &Ovoid, p: BinVec) -> Result<IntersectionCensus> {
    if !o.contains(p) {
        return Err(GeomError::Usage(format!("{p} is not on the reference ovoid")));
    }
    let mut census = IntersectionCensus {
        through_point: 0,
        only_point: 0,
        conic: 0,
        other: 0,
    };
    for x in all.iter().filter(|x| x.contains(p)) {
        census.through_point += 1;
        if x == o {
            continue;
        }
        match x.meet(o) {
            1 => census.only_point += 1,
            3 => census.conic += 1,
            _ => census.other += 1,
        }
    }
    Ok(census)
}

/// Histogram of `|A ∩ B|` over all unordered pairs of distinct ovoids.
pub fn pairwise_intersection_histogram(all: &[Ovoid]) -> BTreeMap<usize, u64> {
    let hist = (0..all.len())
        .into_par_iter()
        .map(|i| {
            let mut h = [0u64; 10];
            for j in i + 1..all.len() {
                h[all[i].meet(&all[j])] += 1;
            }
            h
        })
        .reduce(|| [0u64; 10], |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        });
    hist.iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(k, &c)| (k, c))
        .collect()
}

/// Section of the quadric by the 4-space of five ovoid points: a cone of
/// five lines through one vertex.
#[derive(Clone, Debug)]
pub struct PentadCone {
    pub pentad: Vec<BinVec>,
    pub points: Vec<BinVec>,
    pub vertex: BinVec,
    /// `{a, e_a, vertex}` where `e_a` is the extra point of `pentad \ {a}`.
    pub lines: Vec<Line>,
}

pub fn pentad_intersection(ctx: &GeometryContext, o: &Ovoid, pentad: &[BinVec]) -> Result<PentadCone> {
    let set = subset_of(o, pentad, 5, "pentad")?;
    let sec = section(ctx, pentad);
    let vertex = solid_extra_point(ctx, o, &complement(ctx, o, set))?;
    let mut lines = Vec::new();
    let mut covered = PointSet::new();
    covered.insert(vertex.bits());
    for &a in pentad {
        let quartet: Vec<BinVec> = pentad.iter().copied().filter(|&x| x != a).collect();
        let e = solid_extra_point(ctx, o, &quartet)?;
        let l = Line::new(a, e, vertex).map_err(|_| {
            GeomError::Consistency(format!("line through {a} and {e} misses the vertex"))
        })?;
        if l.points().iter().any(|q| !sec.contains(q.bits())) {
            return Err(GeomError::Consistency("cone line leaves the quadric".into()));
        }
        covered.insert(a.bits());
        covered.insert(e.bits());
        lines.push(l);
    }
    if covered != sec {
        return Err(GeomError::Consistency(
            "cone lines do not exhaust the section".into(),
        ));
    }
    lines.sort_unstable();
    let mut p = pentad.to_vec();
    p.sort_unstable();
    Ok(PentadCone {
        pentad: p,
        points: sec.vectors(ctx.dim()),
        vertex,
        lines,
    })
}

/// All quadric lines inside a point set.
pub fn quadric_lines_within(ctx: &GeometryContext, set: PointSet) -> Vec<Line> {
    let mut lines = Vec::new();
    for a in set.iter() {
        for b in set.above(a).iter() {
            let c = a ^ b;
            if c > b && set.contains(c) {
                lines.push(
                    line_through(ctx.vector(a), ctx.vector(b)).expect("distinct nonzero points"),
                );
            }
        }
    }
    lines
}

/// Section by the 5-space of six ovoid points: an elliptic quadric
/// Q⁻(5,2) with its double-six.
#[derive(Clone, Debug)]
pub struct SextetSection {
    pub sextet: Vec<BinVec>,
    pub points: Vec<BinVec>,
    pub lines: Vec<Line>,
    /// `(s, v_s)`: a sextet point and the vertex of the pentad cone of the
    /// other five.
    pub double_six: Vec<(BinVec, BinVec)>,
    pub remaining: Vec<BinVec>,
    /// Nucleus of the conic on the three complementary ovoid points.
    pub centre: BinVec,
    pub pairing_lines: Vec<Line>,
}

impl SextetSection {
    pub fn point_degrees(&self) -> BTreeMap<usize, usize> {
        let mut deg: BTreeMap<BinVec, usize> = self.points.iter().map(|&p| (p, 0)).collect();
        for l in &self.lines {
            for p in l.points() {
                *deg.get_mut(&p).expect("line inside section") += 1;
            }
        }
        let mut hist = BTreeMap::new();
        for d in deg.values() {
            *hist.entry(*d).or_default() += 1;
        }
        hist
    }
}

pub fn sextet_intersection(ctx: &GeometryContext, o: &Ovoid, sextet: &[BinVec]) -> Result<SextetSection> {
    let set = subset_of(o, sextet, 6, "sextet")?;
    let sec = section(ctx, sextet);
    let triple = complement(ctx, o, set);
    let centre = Conic::new(ctx, o, &triple)?.nucleus;
    let mut s = sextet.to_vec();
    s.sort_unstable();
    let mut double_six = Vec::new();
    let mut pairing_lines = Vec::new();
    let mut six = set;
    for &x in &s {
        let pentad: Vec<BinVec> = s.iter().copied().filter(|&y| y != x).collect();
        let cone = pentad_intersection(ctx, o, &pentad)?;
        let v = cone.vertex;
        if !sec.contains(v.bits()) {
            return Err(GeomError::Consistency("cone vertex outside the section".into()));
        }
        let l = Line::new(x, v, centre).map_err(|_| {
            GeomError::Consistency(format!("pairing line {x}–{v} misses the conic nucleus"))
        })?;
        double_six.push((x, v));
        pairing_lines.push(l);
        six.insert(v.bits());
    }
    pairing_lines.sort_unstable();
    Ok(SextetSection {
        sextet: s,
        points: sec.vectors(ctx.dim()),
        lines: quadric_lines_within(ctx, sec),
        double_six,
        remaining: sec.minus(six).vectors(ctx.dim()),
        centre,
        pairing_lines,
    })
}

/// Section by the hyperplane-in-PG(7,2) spanned by seven ovoid points: a
/// parabolic quadric Q(6,2) and its nucleus.
#[derive(Clone, Debug)]
pub struct HeptadSection {
    pub heptad: Vec<BinVec>,
    pub points: Vec<BinVec>,
    /// The radical of σ restricted to the spanned PG(6,2).
    pub nucleus: BinVec,
    pub complement: [BinVec; 2],
}

pub fn heptad_intersection(ctx: &GeometryContext, o: &Ovoid, heptad: &[BinVec]) -> Result<HeptadSection> {
    let set = subset_of(o, heptad, 7, "heptad")?;
    let space = span_points(heptad);
    let sec = space.point_set() & ctx.quadric_points();
    let radical: Vec<u16> = space
        .point_set()
        .iter()
        .filter(|&r| space.basis_raw().iter().all(|&b| ctx.sigma_raw(r, b) == 0))
        .collect();
    let [nucleus] = radical.as_slice() else {
        return Err(GeomError::Consistency(format!(
            "restricted form has a radical of {} points",
            radical.len()
        )));
    };
    let comp = complement(ctx, o, set);
    let mut h = heptad.to_vec();
    h.sort_unstable();
    Ok(HeptadSection {
        heptad: h,
        points: sec.vectors(ctx.dim()),
        nucleus: ctx.vector(*nucleus),
        complement: [comp[0], comp[1]],
    })
}

/// `k`-subsets of the ovoid, canonical order.
pub fn subsets(o: &Ovoid, k: usize) -> Vec<Vec<BinVec>> {
    fn rec(pts: &[BinVec], k: usize, start: usize, cur: &mut Vec<BinVec>, out: &mut Vec<Vec<BinVec>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..pts.len() {
            cur.push(pts[i]);
            rec(pts, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(o.points(), k, 0, &mut Vec::new(), &mut out);
    out
}

/// Coordinatewise sum of a nonempty point list.
pub fn xor_sum(points: &[BinVec]) -> BinVec {
    sum(points)
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

    fn pts(words: &[&str]) -> Vec<BinVec> {
        words.iter().map(|w| p(w)).collect()
    }

    #[test]
    fn secants_of_ostar() {
        let o = ovoid_star();
        let sec = secant_third_points(&o);
        assert_eq!(sec.len(), 36);
        let distinct: PointSet = sec.iter().copied().collect();
        assert_eq!(distinct.len(), 36);
        assert!(sec.iter().all(|s| ctx().quadratic_raw(s.bits()) == 1));
        assert!(distinct.contains(p("YXXI").bits()));
        assert_eq!(p("ZIIX") + p("XXXX"), p("YXXI"));
    }

    #[test]
    fn conics_and_nuclei_of_ostar() {
        let ctx = ctx();
        let o = ovoid_star();
        let conics = conics_of(&ctx, &o).unwrap();
        assert_eq!(conics.len(), 84);
        let nuclei: PointSet = conics.iter().map(|c| c.nucleus).collect();
        assert_eq!(nuclei.len(), 84);
        let secants: PointSet = secant_third_points(&o).into_iter().collect();
        assert!((nuclei & secants).is_empty());
        assert_eq!(nuclei | secants, ctx.off_quadric_points());
        let c = Conic::new(&ctx, &o, &pts(&["ZXZZ", "XIZI", "XXXX"])).unwrap();
        assert_eq!(c.nucleus, p("ZXZZ") + p("XIZI") + p("XXXX"));
    }

    #[test]
    fn axes_and_tetrads_of_ostar() {
        let ctx = ctx();
        let o = ovoid_star();
        let parts = partitions(&o);
        assert_eq!(parts.len(), 280);
        let distinct: std::collections::BTreeSet<_> = parts.iter().collect();
        assert_eq!(distinct.len(), 280);
        for part in &parts {
            let axis = axis_of_partition(&ctx, &o, part).unwrap();
            assert!(axis.points().iter().all(|q| ctx.quadratic_raw(q.bits()) == 1));
            let t = tetrad_of_partition(&ctx, &o, part).unwrap();
            assert_eq!(t.points().len(), 12);
        }
    }

    #[test]
    fn partition_parsing() {
        let ctx = ctx();
        let o = ovoid_star();
        let part = Partition::parse(&ctx, &o, "ZIIX,IZYY,XZXI;ZXZZ,XIZI,ZZIZ;IXXZ,YYZX,XXXX").unwrap();
        assert!(partitions(&o).contains(&part));
        assert!(Partition::parse(&ctx, &o, "ZIIX,IZYY,XZXI;ZXZZ,XIZI,ZZIZ").is_err());
        assert!(Partition::parse(&ctx, &o, "ZIIX,IZYY,XZXI;ZIIX,XIZI,ZZIZ;IXXZ,YYZX,XXXX").is_err());
    }

    #[test]
    fn second_ovoid_and_double_six() {
        let ctx = ctx();
        let o = ovoid_star();
        let pair = second_ovoid_on_conic(&ctx, &o, &pts(&["XXXX", "ZIIX", "XZXI"])).unwrap();
        assert_eq!(pair.conic.nucleus, p("ZYII"));
        assert_eq!(pair.second.meet(&o), 3);
        assert_eq!(pair.pairing_lines.len(), 6);
        assert!(pair.pairing_lines.iter().all(|l| l.contains(p("ZYII"))));
        assert_eq!((pair.second.set() | o.set()).len(), 15);
    }

    #[test]
    fn solids_cover_the_rest_of_the_quadric() {
        let ctx = ctx();
        let o = ovoid_star();
        let extras: Vec<BinVec> = subsets(&o, 4)
            .iter()
            .map(|q| solid_extra_point(&ctx, &o, q).unwrap())
            .collect();
        assert_eq!(extras.len(), 126);
        let set: PointSet = extras.iter().copied().collect();
        assert_eq!(set.len(), 126);
        assert_eq!(set, ctx.quadric_points().minus(o.set()));
        // the extra point is the sum of the quadruple
        for q in subsets(&o, 4) {
            assert_eq!(solid_extra_point(&ctx, &o, &q).unwrap(), xor_sum(&q));
        }
    }

    #[test]
    fn point_split_figure_instance() {
        let ctx = ctx();
        let o = ovoid_star();
        let xxxx = p("XXXX");
        let splits = point_splits(&ctx, &o, xxxx).unwrap();
        assert_eq!(splits.len(), 35);
        let mut found = false;
        for q in &splits {
            let s = point_partition_line(&ctx, &o, xxxx, q).unwrap();
            assert_eq!(s.second.meet(&o), 1);
            assert!(s.line.contains(xxxx));
            let extras: PointSet = s.extras.iter().copied().collect();
            if extras == pts(&["XXII", "IIXX"]).into_iter().collect() {
                found = true;
            }
        }
        assert!(found);
    }

    #[test]
    fn higher_sections_of_ostar() {
        let ctx = ctx();
        let o = ovoid_star();
        for pentad in subsets(&o, 5) {
            let cone = pentad_intersection(&ctx, &o, &pentad).unwrap();
            assert_eq!(cone.points.len(), 11);
            assert_eq!(cone.lines.len(), 5);
        }
        let sextet = o.set().minus(pts(&["XXXX", "ZIIX", "XZXI"]).into_iter().collect());
        let sec = sextet_intersection(&ctx, &o, &sextet.vectors(8)).unwrap();
        assert_eq!(sec.points.len(), 27);
        assert_eq!(sec.lines.len(), 45);
        assert_eq!(sec.centre, p("ZYII"));
        assert_eq!(sec.remaining.len(), 15);
        assert_eq!(sec.point_degrees(), BTreeMap::from([(5, 27)]));
        for heptad in subsets(&o, 7) {
            let h = heptad_intersection(&ctx, &o, &heptad).unwrap();
            assert_eq!(h.points.len(), 63);
            assert_eq!(h.nucleus, h.complement[0] + h.complement[1]);
        }
    }

    #[test]
    fn bad_subsets_are_usage_errors() {
        let ctx = ctx();
        let o = ovoid_star();
        assert!(matches!(
            solid_extra_point(&ctx, &o, &pts(&["XXXX", "ZIIX", "XZXI"])),
            Err(GeomError::Usage(_))
        ));
        assert!(matches!(
            solid_extra_point(&ctx, &o, &pts(&["XXXX", "ZIIX", "XZXI", "XXII"])),
            Err(GeomError::Usage(_))
        ));
        assert!(pentad_intersection(&ctx, &o, &pts(&["XXXX"])).is_err());
    }
}
