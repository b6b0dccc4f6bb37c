use serde_json::json;

use super::aggregates::{heptad_analogue_data, heptad_family_data, nuclei_fan, HeptadFamilyShape};
use super::{check_ctx, word, words, ConfigReport, ReportBuilder};
use crate::atlas;
use crate::error::{GeomError, Result};
use crate::gf2::{line_through, BinVec, Line};
use crate::pauli::GeometryContext;
use crate::polar::ovoids::Ovoid;
use crate::polar::ovoid_star;
use crate::polar::structure::{
    axis_of_partition, commutation_profile, pentad_intersection, point_partition_line,
    point_splits, profile_census, second_ovoid_on_conic, secant_third_points,
    sextet_intersection, six_ovoid_family, tetrad_of_partition, Conic, Partition,
};

pub const FIGURE_NAMES: [&str; 14] = [
    "fig1",
    "fig2",
    "fig3",
    "fig4",
    "fig5",
    "fig6",
    "fig7",
    "fig8",
    "fig9",
    "fig10",
    "fig11",
    "heptad-analogue",
    "heptad-family",
    "split63",
];

fn tag(line: &Line) -> Vec<String> {
    words(&line.points())
}

pub fn fig_secants(ctx: &GeometryContext, o: &Ovoid) -> Result<ConfigReport> {
    check_ctx(ctx)?;
    let mut r = ReportBuilder::new("fig1");
    r.points(o.points(), "ovoid");
    r.points(&secant_third_points(o), "secant");
    let pts = o.points();
    for (i, &a) in pts.iter().enumerate() {
        for &b in &pts[i + 1..] {
            r.line(&line_through(a, b)?);
        }
    }
    r.finish()
}

pub fn fig_conic_partition(
    ctx: &GeometryContext,
    o: &Ovoid,
    partition: &Partition,
) -> Result<ConfigReport> {
    check_ctx(ctx)?;
    let mut r = ReportBuilder::new("fig2");
    r.points(o.points(), "ovoid");
    let axis = axis_of_partition(ctx, o, partition)?;
    let tetrad = tetrad_of_partition(ctx, o, partition)?;
    for t in partition.triples() {
        let c = Conic::new(ctx, o, t)?;
        r.point(c.nucleus, "nucleus");
        r.annotate(&format!("conic {}", words(t).join(" ")), word(c.nucleus));
    }
    r.points(&axis.points(), "axis");
    for l in tetrad.plane_lines {
        r.points(&l.points(), "tetrad");
        r.line(&l);
    }
    r.line(&axis);
    r.annotate("axis", tag(&axis));
    r.annotate(
        "tetrad",
        tetrad.lines().iter().map(tag).collect::<Vec<_>>(),
    );
    r.finish()
}

pub fn fig_two_ovoids_conic(
    ctx: &GeometryContext,
    o: &Ovoid,
    triple: &[BinVec],
) -> Result<ConfigReport> {
    check_ctx(ctx)?;
    let pair = second_ovoid_on_conic(ctx, o, triple)?;
    let mut r = ReportBuilder::new("fig3");
    r.points(triple, "conic");
    r.points(o.points(), "first");
    r.points(pair.second.points(), "second");
    r.point(pair.conic.nucleus, "nucleus");
    for l in &pair.pairing_lines {
        r.line(l);
    }
    r.annotate("nucleus", word(pair.conic.nucleus));
    r.annotate("second_ovoid", &pair.second);
    r.annotate("fano_plane", words(&pair.conic.plane.points()));
    let double_six: Vec<BinVec> = (o.set() ^ pair.second.set()).vectors(ctx.dim());
    r.annotate("double_six", words(&double_six));
    r.finish()
}

pub fn fig_six_ovoids(
    ctx: &GeometryContext,
    o: &Ovoid,
    partition: &Partition,
) -> Result<ConfigReport> {
    check_ctx(ctx)?;
    let fam = six_ovoid_family(ctx, o, partition)?;
    let mut r = ReportBuilder::new("fig4");
    for (i, x) in fam.first_triad.iter().enumerate() {
        r.points(x.points(), &format!("A{i}"));
    }
    for (i, x) in fam.second_triad.iter().enumerate() {
        r.points(x.points(), &format!("B{i}"));
    }
    r.points(&fam.axis.points(), "axis");
    r.line(&fam.axis);
    r.annotate("axis", tag(&fam.axis));
    r.annotate("common_axis", fam.common_axis());
    r.annotate("splits_of_union", fam.splits);
    r.annotate("ovoids_in_union", fam.ovoids_in_union);
    r.annotate("first_triad", &fam.first_triad);
    r.annotate("second_triad", &fam.second_triad);
    r.finish()
}

/// Commutation pattern of one element against the six-ovoid family, with
/// the profile census of every element off the 27 points.
pub fn fig_commutation(
    ctx: &GeometryContext,
    o: &Ovoid,
    partition: &Partition,
    element: Option<BinVec>,
) -> Result<ConfigReport> {
    check_ctx(ctx)?;
    let fam = six_ovoid_family(ctx, o, partition)?;
    let element = match element {
        Some(e) if fam.union.contains(e.bits()) => {
            return Err(GeomError::Usage(format!(
                "{} lies in the 27-point set",
                word(e)
            )))
        }
        Some(e) => e,
        None => ctx
            .quadric_points()
            .minus(fam.union)
            .first()
            .map(|b| ctx.vector(b))
            .expect("quadric points off the union"),
    };
    let members = fam.members();
    let mut r = ReportBuilder::new("fig5");
    r.point(element, "centre");
    for x in fam.union.vectors(ctx.dim()) {
        let role = if ctx.sigma_raw(x.bits(), element.bits()) == 0 {
            "commuting"
        } else {
            "anticommuting"
        };
        r.point(x, role);
    }
    let census = profile_census(ctx, &fam);
    let fmt = |m: &std::collections::BTreeMap<Vec<usize>, usize>| {
        m.iter()
            .map(|(k, v)| json!({"profile": k, "elements": v}))
            .collect::<Vec<_>>()
    };
    r.annotate("centre", word(element));
    r.annotate("profile", commutation_profile(ctx, element, &members));
    r.annotate("symmetric_profiles", fmt(&census.symmetric));
    r.annotate("skew_profiles", fmt(&census.skew));
    r.finish()
}

pub fn fig_two_ovoids_point(
    ctx: &GeometryContext,
    o: &Ovoid,
    p: BinVec,
    quad: &[BinVec],
) -> Result<ConfigReport> {
    check_ctx(ctx)?;
    let split = point_partition_line(ctx, o, p, quad)?;
    let mut r = ReportBuilder::new("fig6");
    r.point(p, "common");
    r.points(&split.quads[0], "quad-a");
    r.points(&split.quads[1], "quad-b");
    r.point(split.extras[0], "extra-a");
    r.point(split.extras[1], "extra-b");
    r.points(split.second.points(), "second");
    r.line(&split.line);
    for l in &split.joining_lines {
        r.line(l);
    }
    r.annotate("line", tag(&split.line));
    r.annotate("extras", words(&split.extras));
    r.annotate("second_ovoid", &split.second);
    r.finish()
}

pub fn fig_pentad(ctx: &GeometryContext, o: &Ovoid, pentad: &[BinVec]) -> Result<ConfigReport> {
    check_ctx(ctx)?;
    let cone = pentad_intersection(ctx, o, pentad)?;
    let mut r = ReportBuilder::new("fig7");
    r.points(&cone.pentad, "pentad");
    r.point(cone.vertex, "vertex");
    for &x in &cone.points {
        if !cone.pentad.contains(&x) && x != cone.vertex {
            r.point(x, "extra");
        }
    }
    for l in &cone.lines {
        r.line(l);
    }
    r.annotate("vertex", word(cone.vertex));
    r.finish()
}

pub fn fig_sextet(ctx: &GeometryContext, o: &Ovoid, sextet: &[BinVec]) -> Result<ConfigReport> {
    check_ctx(ctx)?;
    let sec = sextet_intersection(ctx, o, sextet)?;
    let mut r = ReportBuilder::new("fig8");
    r.points(&sec.sextet, "sextet");
    for (_, v) in &sec.double_six {
        r.point(*v, "concurrence");
    }
    r.points(&sec.remaining, "fifteen");
    r.point(sec.centre, "nucleus");
    for l in sec.lines.iter().chain(&sec.pairing_lines) {
        r.line(l);
    }
    r.annotate("nucleus", word(sec.centre));
    r.annotate("quadric_lines", sec.lines.len());
    r.annotate(
        "double_six",
        sec.double_six
            .iter()
            .map(|&(s, v)| [word(s), word(v)])
            .collect::<Vec<_>>(),
    );
    r.finish()
}

pub fn fig_nuclei_fan(
    ctx: &GeometryContext,
    o: &Ovoid,
    p: BinVec,
    singled: BinVec,
) -> Result<ConfigReport> {
    check_ctx(ctx)?;
    let fan = nuclei_fan(ctx, o, p, singled)?;
    let mut r = ReportBuilder::new("fig9");
    r.point(p, "common");
    r.points(&fan.pair, "pair");
    r.point(singled, "singled");
    r.points(&fan.sixes[0], "six-a");
    r.points(&fan.sixes[1], "six-b");
    r.points(&fan.fifteen, "fifteen");
    if let Some(c) = fan.concurrence {
        r.point(c, "concurrence");
        r.line(&line_through(p, singled)?);
        r.annotate("concurrence", word(c));
    }
    r.points(&fan.cross_points, "cross");
    for l in fan.pairing_lines.iter().chain(&fan.cross_lines) {
        r.line(l);
    }
    r.annotate("split_holds", fan.split_holds(ctx));
    r.annotate("gq", &fan.gq);
    r.annotate(
        "gq_lines",
        fan.gq_lines.iter().map(|l| words(l)).collect::<Vec<_>>(),
    );
    r.annotate("projective_lines_in_structure", fan.collinear_gq.lines);
    r.finish()
}

pub fn heptad_analogue(
    ctx: &GeometryContext,
    o: &Ovoid,
    p1: BinVec,
    p2: BinVec,
) -> Result<ConfigReport> {
    check_ctx(ctx)?;
    let h = heptad_analogue_data(ctx, o, p1, p2)?;
    let mut r = ReportBuilder::new("heptad-analogue");
    r.points(&h.pair, "pair");
    r.points(&h.heptad, "heptad");
    r.points(&h.third_points, "third");
    r.points(&h.triple_nuclei, "triple-nucleus");
    for l in &h.lines {
        r.line(l);
    }
    r.annotate("holds", h.holds(ctx));
    r.finish()
}

/// The 35 sums of three heptad nuclei.
pub fn fig_triple_nuclei(
    ctx: &GeometryContext,
    o: &Ovoid,
    p1: BinVec,
    p2: BinVec,
) -> Result<ConfigReport> {
    check_ctx(ctx)?;
    let h = heptad_analogue_data(ctx, o, p1, p2)?;
    let mut r = ReportBuilder::new("fig11");
    r.points(&h.heptad, "heptad");
    r.points(&h.triple_nuclei, "triple-nucleus");
    r.annotate("holds", h.holds(ctx));
    r.finish()
}

pub fn heptad_family(
    ctx: &GeometryContext,
    o: &Ovoid,
    pairs: &[[BinVec; 2]],
) -> Result<ConfigReport> {
    check_ctx(ctx)?;
    let fam = heptad_family_data(ctx, o, pairs)?;
    let mut r = ReportBuilder::new("heptad-family");
    for (i, h) in fam.heptads.iter().enumerate() {
        r.points(&h.vectors(ctx.dim()), &format!("H{i}"));
    }
    for (i, h) in fam.second_heptads.iter().enumerate() {
        r.points(&h.vectors(ctx.dim()), &format!("H'{i}"));
    }
    let shape = match fam.shape {
        HeptadFamilyShape::Triangle => "triangle",
        HeptadFamilyShape::Quadrangle => "quadrangle",
    };
    for l in &fam.pairing_lines {
        r.points(&l.points(), "pairing");
        r.line(l);
    }
    r.annotate("shape", shape);
    r.annotate("common", words(&fam.common.vectors(ctx.dim())));
    r.annotate("holds", fam.holds());
    if fam.shape == HeptadFamilyShape::Quadrangle {
        r.annotate("meets", &fam.meets);
        r.annotate("concurrence", fam.concurrence.map(word));
        r.annotate("solid_point", fam.solid_point.map(word));
    }
    r.finish()
}

/// The 64 ovoids through `p` and how they meet a reference one among them.
pub fn sixty_three_split(
    ctx: &GeometryContext,
    all: &[Ovoid],
    p: BinVec,
    reference: &Ovoid,
) -> Result<ConfigReport> {
    check_ctx(ctx)?;
    if ctx.quadratic_raw(p.bits()) != 0 {
        return Err(GeomError::OffQuadric(word(p)));
    }
    let census = crate::polar::structure::ovoid_intersection_census(all, reference, p)?;
    let through: Vec<&Ovoid> = all.iter().filter(|o| o.contains(p)).collect();
    let mut stable = true;
    for other in &through {
        let c = crate::polar::structure::ovoid_intersection_census(all, other, p)?;
        stable &= (c.only_point, c.conic) == (census.only_point, census.conic);
    }
    let mut r = ReportBuilder::new("split63");
    r.point(p, "point");
    r.points(reference.points(), "reference");
    r.annotate("ovoids_through_point", through.len());
    r.annotate("census", census);
    r.annotate("same_for_every_reference", stable);
    r.finish()
}

/// Optional overrides; anything left unset takes the figure's default.
#[derive(Clone, Debug, Default)]
pub struct FigureParams {
    /// Nine comma-separated points, or `Ostar`.
    pub ovoid: Option<String>,
    /// `a,b,c;d,e,f;g,h,i`.
    pub partition: Option<String>,
    /// Comma-separated ovoid points (triple, quadruple, pentad, sextet).
    pub subset: Option<String>,
    pub point: Option<String>,
    pub nucleus: Option<String>,
    /// `A-B` pairs separated by commas.
    pub pairs: Option<String>,
    pub element: Option<String>,
}

fn parse_list(ctx: &GeometryContext, s: &str) -> Result<Vec<BinVec>> {
    s.split(',').map(|t| ctx.parse_point(t.trim())).collect()
}

fn rows(o: &Ovoid, idx: &[usize]) -> Vec<BinVec> {
    let star = ovoid_star();
    if o == &star {
        let words = crate::polar::OSTAR_WORDS;
        let ctx = GeometryContext::new(4).expect("four qubits");
        idx.iter().map(|&i| ctx.parse_point(words[i]).expect("O* word")).collect()
    } else {
        idx.iter().map(|&i| o.points()[i]).collect()
    }
}

pub fn parse_ovoid(ctx: &GeometryContext, s: Option<&str>) -> Result<Ovoid> {
    match s {
        None => Ok(ovoid_star()),
        Some(t) if t.eq_ignore_ascii_case("ostar") => Ok(ovoid_star()),
        Some(t) => {
            let pts = parse_list(ctx, t)?;
            Ovoid::from_clique(ctx, &pts).map_err(|e| GeomError::Usage(format!("--ovoid: {e}")))
        }
    }
}

/// Builds a named configuration; defaults reproduce the printed examples.
pub fn build(name: &str, params: &FigureParams) -> Result<ConfigReport> {
    let ctx = GeometryContext::new(4)?;
    let o = parse_ovoid(&ctx, params.ovoid.as_deref())?;
    let point = |default: &str| -> Result<BinVec> {
        let s = params.point.as_deref().unwrap_or(default);
        let p = ctx.parse_point(s)?;
        Ok(p)
    };
    let subset = |default: Vec<BinVec>| -> Result<Vec<BinVec>> {
        params
            .subset
            .as_deref()
            .map_or(Ok(default), |s| parse_list(&ctx, s))
    };
    let partition = || -> Result<Partition> {
        match params.partition.as_deref() {
            Some(s) => Partition::parse(&ctx, &o, s),
            None => {
                let r = rows(&o, &[0, 1, 2, 3, 4, 5, 6, 7, 8]);
                Partition::new(&o, [[r[0], r[1], r[2]], [r[3], r[4], r[5]], [r[6], r[7], r[8]]])
            }
        }
    };
    let first_point = |default: &str| -> Result<BinVec> {
        let p = point(default)?;
        if o.contains(p) {
            Ok(p)
        } else if params.point.is_none() {
            Ok(o.points()[o.len() - 1])
        } else {
            Err(GeomError::Usage(format!("{} is not on the ovoid", word(p))))
        }
    };
    let pair = || -> Result<(BinVec, BinVec)> {
        match params.pairs.as_deref() {
            Some(s) => {
                let pp = parse_pairs(&ctx, s)?;
                match pp.as_slice() {
                    [[a, b]] => Ok((*a, *b)),
                    _ => Err(GeomError::Usage("expected a single pair A-B".into())),
                }
            }
            None => {
                let r = rows(&o, &[5, 6]);
                Ok((r[0], r[1]))
            }
        }
    };
    match name {
        "fig1" => fig_secants(&ctx, &o),
        "fig2" => fig_conic_partition(&ctx, &o, &partition()?),
        "fig3" => fig_two_ovoids_conic(&ctx, &o, &subset(rows(&o, &[8, 0, 2]))?),
        "fig4" => fig_six_ovoids(&ctx, &o, &partition()?),
        "fig5" => {
            let e = params
                .element
                .as_deref()
                .map(|s| ctx.parse_point(s))
                .transpose()?;
            fig_commutation(&ctx, &o, &partition()?, e)
        }
        "fig6" => {
            let p = first_point("XXXX")?;
            let quad = match params.subset.as_deref() {
                Some(s) => parse_list(&ctx, s)?,
                None => default_split(&ctx, &o, p)?,
            };
            fig_two_ovoids_point(&ctx, &o, p, &quad)
        }
        "fig7" => fig_pentad(&ctx, &o, &subset(rows(&o, &[0, 1, 2, 3, 4]))?),
        "fig8" => fig_sextet(&ctx, &o, &subset(rows(&o, &[1, 3, 4, 5, 6, 7]))?),
        "fig9" => {
            let p = first_point("XXXX")?;
            let singled = match params.nucleus.as_deref() {
                Some(s) => ctx.parse_point(s)?,
                None => {
                    let r = rows(&o, &[0, 2]);
                    let others: Vec<BinVec> = [r[0], r[1]].into_iter().filter(|&x| x != p).collect();
                    let extra = if others.len() == 2 {
                        others
                    } else {
                        o.points().iter().copied().filter(|&x| x != p).take(2).collect()
                    };
                    p + extra[0] + extra[1]
                }
            };
            fig_nuclei_fan(&ctx, &o, p, singled)
        }
        "fig10" | "heptad-analogue" => {
            let (a, b) = pair()?;
            let mut rep = heptad_analogue(&ctx, &o, a, b)?;
            rep.name = name.to_string();
            Ok(rep)
        }
        "fig11" => {
            let (a, b) = pair()?;
            fig_triple_nuclei(&ctx, &o, a, b)
        }
        "heptad-family" => {
            let pairs = match params.pairs.as_deref() {
                Some(s) => parse_pairs(&ctx, s)?,
                None => {
                    let r = rows(&o, &[0, 1, 2]);
                    vec![[r[0], r[1]], [r[1], r[2]], [r[2], r[0]]]
                }
            };
            heptad_family(&ctx, &o, &pairs)
        }
        "split63" => {
            let p = point("XXXX")?;
            let all = atlas::ovoids()?;
            let reference = if o.contains(p) {
                o
            } else if params.ovoid.is_some() {
                return Err(GeomError::Usage(format!(
                    "{} is not on the given ovoid",
                    word(p)
                )));
            } else {
                all.iter()
                    .find(|x| x.contains(p))
                    .cloned()
                    .ok_or_else(|| GeomError::OffQuadric(word(p)))?
            };
            sixty_three_split(&ctx, all, p, &reference)
        }
        other => Err(GeomError::Usage(format!(
            "unknown configuration {other:?}; valid names: {}",
            FIGURE_NAMES.join(", ")
        ))),
    }
}

fn parse_pairs(ctx: &GeometryContext, s: &str) -> Result<Vec<[BinVec; 2]>> {
    s.split(',')
        .map(|pair| {
            let (a, b) = pair
                .split_once('-')
                .ok_or_else(|| GeomError::Usage(format!("pair {pair:?} must look like A-B")))?;
            Ok([ctx.parse_point(a.trim())?, ctx.parse_point(b.trim())?])
        })
        .collect()
}

/// The printed split (extra points XXII and IIXX) when it exists for `p`,
/// otherwise the split whose smaller extra point comes first canonically.
fn default_split(ctx: &GeometryContext, o: &Ovoid, p: BinVec) -> Result<Vec<BinVec>> {
    let printed = [ctx.parse_point("XXII")?, ctx.parse_point("IIXX")?];
    let mut best: Option<(BinVec, Vec<BinVec>)> = None;
    for q in point_splits(ctx, o, p)? {
        let split = point_partition_line(ctx, o, p, &q)?;
        if printed.iter().all(|e| split.extras.contains(e)) {
            return Ok(q.to_vec());
        }
        let key = split.extras[0].min(split.extras[1]);
        if best.as_ref().map_or(true, |(k, _)| key < *k) {
            best = Some((key, q.to_vec()));
        }
    }
    Ok(best.expect("35 splits").1)
}
