//! The count table run by `verify`: every row compares a computed value
//! against a closed form or a published constant.

use std::collections::BTreeMap;
use std::fmt::{Display, Write as _};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::atlas;
use crate::config::{heptad_analogue_data, heptad_family_data, nuclei_fan};
use crate::error::{GeomError, Result};
use crate::gf2::{edge_to_standard, BinVec, PointSet};
use crate::oracle::{cross_check, ProductCoverage};
use crate::pauli::{point_to_word, GeometryContext};
use crate::polar::gq::check_gq;
use crate::polar::structure::{
    conics_of, heptad_intersection, ovoid_intersection_census, pairwise_intersection_histogram,
    partitions, pentad_intersection, secant_third_points, sextet_intersection, six_ovoid_family,
    solid_extra_point, subsets, tetrad_of_partition, tetrads_of_all,
};
use crate::polar::{
    conwell_heptads_q5, expected_count, is_ovoid, ovoid_star, Measure, Quadric, SpaceKind,
    EDGE_OVOID, OSTAR_WORDS,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

impl std::str::FromStr for Level {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Level::Quick),
            "full" => Ok(Level::Full),
            other => Err(GeomError::Usage(format!(
                "unknown level {other:?}; expected quick or full"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRow {
    pub check: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ms: Option<u128>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub n_qubits: usize,
    pub rows: Vec<CheckRow>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    /// Copy with timings removed, for comparing runs.
    pub fn without_timings(&self) -> Self {
        let mut r = self.clone();
        for row in &mut r.rows {
            row.ms = None;
        }
        r
    }

    pub fn to_text(&self, timings: bool) -> String {
        let w0 = self.rows.iter().map(|r| r.check.len()).max().unwrap_or(5).max(5);
        let w1 = self.rows.iter().map(|r| r.expected.len()).max().unwrap_or(8).max(8);
        let w2 = self.rows.iter().map(|r| r.computed.len()).max().unwrap_or(8).max(8);
        let mut out = String::new();
        let _ = write!(out, "{:<w0$} | {:<w1$} | {:<w2$} | status", "check", "expected", "computed");
        if timings {
            out.push_str(" | ms");
        }
        out.push('\n');
        for r in &self.rows {
            let status = if r.pass { "pass" } else { "FAIL" };
            let _ = write!(out, "{:<w0$} | {:<w1$} | {:<w2$} | {status:<6}", r.check, r.expected, r.computed);
            if let (true, Some(ms)) = (timings, r.ms) {
                let _ = write!(out, " | {ms}");
            }
            out.truncate(out.trim_end().len());
            out.push('\n');
        }
        let passed = self.rows.iter().filter(|r| r.pass).count();
        let _ = writeln!(
            out,
            "N={}: {passed}/{} checks passed: {}",
            self.n_qubits,
            self.rows.len(),
            if self.passed() { "PASS" } else { "FAIL" }
        );
        out
    }

    pub fn to_json(&self, timings: bool) -> String {
        let r = if timings { self.clone() } else { self.without_timings() };
        serde_json::to_string_pretty(&r).expect("report serializes")
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub level: Level,
    pub product: ProductCoverage,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            level: Level::Quick,
            product: ProductCoverage::default(),
        }
    }
}

struct Rows(Vec<CheckRow>);

impl Rows {
    fn check<E: Display, C: Display>(
        &mut self,
        name: &str,
        expected: E,
        compute: impl FnOnce() -> Result<C>,
    ) {
        let start = Instant::now();
        let expected = expected.to_string();
        let computed = match compute() {
            Ok(c) => c.to_string(),
            Err(e) => format!("error: {e}"),
        };
        self.0.push(CheckRow {
            check: name.to_string(),
            pass: computed == expected,
            expected,
            computed,
            ms: Some(start.elapsed().as_millis()),
        });
    }
}

fn count(kind: SpaceKind, measure: Measure, n: usize) -> Result<u64> {
    expected_count(kind, measure, n as u32, 2)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn run(n: usize, options: VerifyOptions) -> Result<VerificationReport> {
    let ctx = GeometryContext::new(n)?;
    let mut rows = Rows(Vec::new());
    common_checks(&ctx, options, &mut rows);
    match n {
        2 => {}
        3 => three_qubit_checks(&ctx, &mut rows),
        _ => four_qubit_checks(&ctx, options, &mut rows),
    }
    Ok(VerificationReport {
        n_qubits: n,
        rows: rows.0,
    })
}

fn common_checks(ctx: &GeometryContext, options: VerifyOptions, rows: &mut Rows) {
    let n = ctx.n_qubits();
    let pg = (1u64 << ctx.dim()) - 1;
    rows.check("points of PG(2N-1,2)", pg, || Ok(ctx.point_count()));
    let q_pts = count(SpaceKind::Hyperbolic, Measure::Points, n).unwrap_or(0);
    rows.check("symmetric elements (quadric points)", q_pts, || {
        Ok(ctx.quadric_points().len())
    });
    rows.check("skew elements (off-quadric points)", pg - q_pts, || {
        Ok(ctx.off_quadric_points().len())
    });
    rows.check("quadric membership iff even Y-count", ctx.point_count(), || {
        Ok(ctx
            .words()
            .iter()
            .zip(ctx.points())
            .filter(|(w, p)| (w.y_count() % 2 == 0) == (ctx.quadratic_raw(p.bits()) == 0))
            .count())
    });
    let agreement = cross_check(ctx, options.product);
    let words = ctx.point_count();
    rows.check("oracle: symmetry", format!("0/{words}"), || {
        Ok(format!(
            "{}/{}",
            agreement.symmetry_mismatches, agreement.symmetry_checked
        ))
    });
    rows.check(
        "oracle: commutation",
        format!("0/{}", words * (words - 1) / 2),
        || {
            Ok(format!(
                "{}/{}",
                agreement.commutation_mismatches, agreement.commutation_checked
            ))
        },
    );
    let products = match options.product {
        ProductCoverage::Exhaustive => words * words,
        ProductCoverage::Sampled { pairs, .. } => pairs,
    };
    rows.check("oracle: products", format!("0/{products}"), || {
        Ok(format!(
            "{}/{}",
            agreement.product_mismatches + agreement.homomorphism_failures,
            agreement.product_checked
        ))
    });
    for kind in [SpaceKind::Symplectic, SpaceKind::Hyperbolic] {
        let expected = count(kind, Measure::Generators, n).unwrap_or(0);
        rows.check(&format!("generators of {}", kind_label(kind, n)), expected, || {
            Ok(atlas::generators(ctx, kind)?.len())
        });
    }
    let gen_points = (1u64 << n) - 1;
    rows.check("points per generator", gen_points, || {
        let g = atlas::generators(ctx, SpaceKind::Symplectic)?;
        let sizes: PointSet = g.point_sets().iter().map(|s| s.len() as u16).collect();
        match sizes.len() {
            1 => Ok(sizes.first().unwrap_or(0).to_string()),
            _ => Ok(format!("{sizes:?}")),
        }
    });
    let half = count(SpaceKind::Hyperbolic, Measure::Generators, n).unwrap_or(0) / 2;
    rows.check("quadric generator families", format!("{half}+{half}"), || {
        let g = atlas::generators(ctx, SpaceKind::Hyperbolic)?;
        let (a, b) = g.family_sizes().unwrap_or((0, 0));
        Ok(format!("{a}+{b}"))
    });
    rows.check("family rule holds on all pairs", "yes", || {
        Ok(yes(atlas::generators(ctx, SpaceKind::Hyperbolic)?.families_consistent()))
    });
}

fn kind_label(kind: SpaceKind, n: usize) -> String {
    match kind {
        SpaceKind::Symplectic => format!("W({},2)", 2 * n - 1),
        _ => format!("Q+({},2)", 2 * n - 1),
    }
}

fn three_qubit_checks(ctx: &GeometryContext, rows: &mut Rows) {
    // eight heptads, any two sharing one point
    let heptads = conwell_heptads_q5(ctx);
    rows.check("Conwell heptads", 8, || Ok(heptads.as_ref().map_err(Clone::clone)?.len()));
    rows.check("Conwell heptads pairwise meet", "1", || {
        let h = heptads.as_ref().map_err(Clone::clone)?;
        let mut meets = PointSet::new();
        for i in 0..h.len() {
            for j in i + 1..h.len() {
                meets.insert((h[i] & h[j]).len() as u16);
            }
        }
        Ok(meets.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(","))
    });
}

fn four_qubit_checks(ctx: &GeometryContext, options: VerifyOptions, rows: &mut Rows) {
    let o = ovoid_star();
    let quadric = Quadric::hyperbolic(*ctx);
    rows.check("edge rows map onto O*", 9, || {
        let mut hits = 0;
        for (y, w) in EDGE_OVOID.iter().zip(OSTAR_WORDS) {
            let y: BinVec = y.parse()?;
            hits += usize::from(point_to_word(edge_to_standard(y)?)?.to_string() == w);
        }
        Ok(hits)
    });
    rows.check("edge transform is a bijection", 256, || {
        let mut image = PointSet::new();
        for b in 0..256u16 {
            image.insert(edge_to_standard(BinVec::new(b, 8)?)?.bits());
        }
        Ok(image.len())
    });
    rows.check("O* is an ovoid", "yes", || {
        let gens = atlas::generators(ctx, SpaceKind::Hyperbolic)?;
        Ok(yes(is_ovoid(&quadric, o.points(), gens)?))
    });
    rows.check("ovoids of Q+(7,2)", 960, || Ok(atlas::ovoids()?.len()));
    rows.check("ovoids through every point", "64", || {
        let all = atlas::ovoids()?;
        let per: PointSet = ctx
            .quadric_points()
            .iter()
            .map(|p| all.iter().filter(|o| o.set().contains(p)).count() as u16)
            .collect();
        Ok(per.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
    });
    rows.check("random non-clique 9-sets fail the ovoid test", 1000, || {
        let gens = atlas::generators(ctx, SpaceKind::Hyperbolic)?;
        let pts = quadric.point_list();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut rejected = 0;
        let mut tried = 0;
        while tried < 1000 {
            let sample: Vec<BinVec> = pts.choose_multiple(&mut rng, 9).copied().collect();
            let clique = sample
                .iter()
                .enumerate()
                .all(|(i, a)| sample[i + 1..].iter().all(|b| ctx.sigma_raw(a.bits(), b.bits()) == 1));
            if clique {
                continue;
            }
            tried += 1;
            rejected += usize::from(!is_ovoid(&quadric, &sample, gens)?);
        }
        Ok(rejected)
    });
    rows.check("secants + nuclei = off-quadric (O* and 3 others)", "4/4", || {
        let all = atlas::ovoids()?;
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut sample = vec![o.clone()];
        sample.extend(all.choose_multiple(&mut rng, 3).cloned());
        let mut good = 0;
        for x in &sample {
            let sec: PointSet = secant_third_points(x).into_iter().collect();
            let nuc: PointSet = conics_of(ctx, x)?.iter().map(|c| c.nucleus).collect();
            good += usize::from(
                sec.len() == 36
                    && nuc.len() == 84
                    && (sec & nuc).is_empty()
                    && (sec | nuc) == ctx.off_quadric_points(),
            );
        }
        Ok(format!("{good}/{}", sample.len()))
    });
    rows.check("partitions of O* with a valid axis and tetrad", 280, || {
        let mut good = 0;
        for p in partitions(&o) {
            tetrad_of_partition(ctx, &o, &p)?;
            good += 1;
        }
        Ok(good)
    });
    rows.check("solid extra points = quadric minus O*", 126, || {
        let mut extras = PointSet::new();
        for q in subsets(&o, 4) {
            extras.insert(solid_extra_point(ctx, &o, &q)?.bits());
        }
        if extras != ctx.quadric_points().minus(o.set()) {
            return Err(GeomError::Consistency("extra points miss the quadric".into()));
        }
        Ok(extras.len())
    });
    rows.check("pentad cones (11 points, 5 lines)", 126, || {
        let mut good = 0;
        for p in subsets(&o, 5) {
            let c = pentad_intersection(ctx, &o, &p)?;
            good += usize::from(c.points.len() == 11 && c.lines.len() == 5);
        }
        Ok(good)
    });
    rows.check("sextet sections (27 points, 45 lines, GQ(2,4))", 84, || {
        let mut good = 0;
        for s in subsets(&o, 6) {
            let sec = sextet_intersection(ctx, &o, &s)?;
            let set: PointSet = sec.points.iter().copied().collect();
            let blocks: Vec<Vec<BinVec>> = sec.lines.iter().map(|l| l.points().to_vec()).collect();
            good += usize::from(
                sec.points.len() == 27 && sec.lines.len() == 45 && check_gq(set, &blocks).is_gq(2, 4),
            );
        }
        Ok(good)
    });
    rows.check("heptad sections (63 points, nucleus = pair sum)", 36, || {
        let mut good = 0;
        for h in subsets(&o, 7) {
            let sec = heptad_intersection(ctx, &o, &h)?;
            good += usize::from(
                sec.points.len() == 63 && sec.nucleus == sec.complement[0] + sec.complement[1],
            );
        }
        Ok(good)
    });
    rows.check("nucleus for the sextet off XXXX, ZIIX, XZXI", "ZYII", || {
        let sextet: Vec<BinVec> = ["IZYY", "ZXZZ", "XIZI", "ZZIZ", "IXXZ", "YYZX"]
            .iter()
            .map(|w| ctx.parse_point(w))
            .collect::<Result<_>>()?;
        Ok(point_to_word(sextet_intersection(ctx, &o, &sextet)?.centre)?.to_string())
    });
    rows.check("nuclei fans (15+6+6, concurrence, GQ(2,4))", 252, || {
        let mut good = 0;
        for &p in o.points() {
            let others: Vec<BinVec> = o.points().iter().copied().filter(|&x| x != p).collect();
            for i in 0..8 {
                for j in i + 1..8 {
                    let fan = nuclei_fan(ctx, &o, p, p + others[i] + others[j])?;
                    good += usize::from(fan.split_holds(ctx) && fan.gq.is_gq(2, 4));
                }
            }
        }
        Ok(good)
    });
    rows.check("concurrence for XXXX and ZYII", "YZXX", || {
        let fan = nuclei_fan(ctx, &o, ctx.parse_point("XXXX")?, ctx.parse_point("ZYII")?)?;
        let c = fan
            .concurrence
            .ok_or_else(|| GeomError::Consistency("no concurrence".into()))?;
        Ok(point_to_word(c)?.to_string())
    });
    rows.check("heptad analogues (21 skew lines, 35 symmetric)", 36, || {
        let pts = o.points();
        let mut good = 0;
        for i in 0..9 {
            for j in i + 1..9 {
                good += usize::from(heptad_analogue_data(ctx, &o, pts[i], pts[j])?.holds(ctx));
            }
        }
        Ok(good)
    });
    rows.check("triangle heptad families (3+3 on one point)", 84, || {
        let mut good = 0;
        for t in subsets(&o, 3) {
            let pairs = [[t[0], t[1]], [t[1], t[2]], [t[2], t[0]]];
            good += usize::from(heptad_family_data(ctx, &o, &pairs)?.holds());
        }
        Ok(good)
    });
    rows.check("quadrangle heptad families (concurrent at solid point)", 378, || {
        let mut good = 0;
        for q in subsets(&o, 4) {
            for [a, b, c, d] in [
                [q[0], q[1], q[2], q[3]],
                [q[0], q[1], q[3], q[2]],
                [q[0], q[2], q[1], q[3]],
            ] {
                let pairs = [[a, b], [b, c], [c, d], [d, a]];
                good += usize::from(heptad_family_data(ctx, &o, &pairs)?.holds());
            }
        }
        Ok(good)
    });
    rows.check("six-ovoid families (two splits, common axis)", 280, || {
        let good: usize = partitions(&o)
            .par_iter()
            .map(|p| {
                six_ovoid_family(ctx, &o, p)
                    .map(|f| usize::from(f.splits == 2 && f.common_axis()))
                    .unwrap_or(0)
            })
            .sum();
        Ok(good)
    });
    let part = partitions(&o)[0];
    rows.check("symmetric commutation profile", "5,5,5,5,5,5", || {
        let fam = six_ovoid_family(ctx, &o, &part)?;
        let census = crate::polar::structure::profile_census(ctx, &fam);
        Ok(census
            .symmetric
            .keys()
            .map(|k| k.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join(" "))
    });
    rows.check("skew commutation counts", "3,7", || {
        let fam = six_ovoid_family(ctx, &o, &part)?;
        let census = crate::polar::structure::profile_census(ctx, &fam);
        let entries: PointSet = census.skew.keys().flatten().map(|&c| c as u16).collect();
        Ok(entries.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
    });
    rows.check("ovoids through a point of O*: only-point + conic", "35+28", || {
        let all = atlas::ovoids()?;
        let mut seen = BTreeMap::new();
        for &p in o.points() {
            let c = ovoid_intersection_census(all, &o, p)?;
            *seen.entry(format!("{}+{}", c.only_point, c.conic)).or_insert(0) += 1;
        }
        Ok(seen.into_keys().collect::<Vec<_>>().join(" "))
    });
    if options.level == Level::Full {
        rows.check("pairwise ovoid intersections", "0,1,3", || {
            let hist = pairwise_intersection_histogram(atlas::ovoids()?);
            Ok(hist.keys().map(ToString::to_string).collect::<Vec<_>>().join(","))
        });
        rows.check("tetrads: raw / distinct / multiplicity", "268800/11200/24", || {
            let (_, c) = tetrads_of_all(ctx, atlas::ovoids()?)?;
            let mult = c
                .multiplicities
                .keys()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",");
            Ok(format!("{}/{}/{mult}", c.raw, c.distinct))
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_qubits_pass() {
        let r = run(2, VerifyOptions::default()).unwrap();
        assert!(r.passed(), "{}", r.to_text(true));
        assert!(r.rows.iter().any(|row| row.expected == "9"));
    }

    #[test]
    fn text_has_header_and_summary() {
        let r = run(2, VerifyOptions::default()).unwrap();
        let text = r.to_text(false);
        assert!(text.starts_with("check"));
        assert!(text.trim_end().ends_with("PASS"));
        assert!(!r.to_json(false).contains("\"ms\""));
        assert!(r.to_json(true).contains("\"ms\""));
    }

    #[test]
    fn level_parsing() {
        assert_eq!("full".parse::<Level>().unwrap(), Level::Full);
        assert!("slow".parse::<Level>().is_err());
    }
}
