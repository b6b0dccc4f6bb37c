//! Named configurations of group elements attached to an ovoid, as
//! exportable point/line reports.

mod aggregates;
mod figures;

pub use aggregates::{
    heptad_analogue_data, heptad_family_data, nuclei_fan, HeptadAnalogue, HeptadFamily,
    HeptadFamilyShape, NucleiFan,
};
pub use figures::{
    build, fig_commutation, fig_conic_partition, fig_nuclei_fan, fig_pentad, fig_secants,
    fig_sextet, fig_six_ovoids, fig_triple_nuclei, fig_two_ovoids_conic, fig_two_ovoids_point,
    heptad_analogue, heptad_family, parse_ovoid, sixty_three_split, FigureParams, FIGURE_NAMES,
};

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::error::{GeomError, Result};
use crate::gf2::{BinVec, Line};
use crate::pauli::{point_to_word, Class, GeometryContext, PauliWord};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConfigPoint {
    pub coords: BinVec,
    pub word: PauliWord,
    pub class: Class,
    pub role: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConfigReport {
    pub name: String,
    pub points: Vec<ConfigPoint>,
    /// Index triples into `points`; each is a projective line.
    pub lines: Vec<[usize; 3]>,
    pub annotations: BTreeMap<String, Value>,
}

impl ConfigReport {
    /// Points carrying the given role (roles of shared points are joined
    /// with `+`).
    pub fn with_role(&self, role: &str) -> Vec<&ConfigPoint> {
        self.points
            .iter()
            .filter(|p| p.role.split('+').any(|r| r == role))
            .collect()
    }

    pub fn count_class(&self, class: Class) -> usize {
        self.points.iter().filter(|p| p.class == class).count()
    }

    /// Line triples sum to zero, class tags match the words, indices are in
    /// range and no point is listed twice.
    pub fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for p in &self.points {
            if !seen.insert(p.coords) {
                return Err(GeomError::Consistency(format!("{} listed twice", p.word)));
            }
            if p.word.class() != p.class || point_to_word(p.coords)? != p.word {
                return Err(GeomError::Consistency(format!("bad tags on {}", p.word)));
            }
        }
        for l in &self.lines {
            let pts = l
                .iter()
                .map(|&i| {
                    self.points.get(i).map(|p| p.coords).ok_or_else(|| {
                        GeomError::Consistency(format!("line index {i} out of range"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Line::new(pts[0], pts[1], pts[2])?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}: {} points, {} lines", self.name, self.points.len(), self.lines.len());
        for (i, p) in self.points.iter().enumerate() {
            let _ = writeln!(out, "  {i:>3}  {}  {}  {:<5}  {}", p.word, p.coords, p.class, p.role);
        }
        for l in &self.lines {
            let w: Vec<String> = l.iter().map(|&i| self.points[i].word.to_string()).collect();
            let _ = writeln!(out, "  line {}", w.join(" "));
        }
        for (k, v) in &self.annotations {
            let _ = writeln!(out, "  {k}: {v}");
        }
        out
    }

    /// Graphviz source. Symmetric points are circles and skew points
    /// hexagons; lines are drawn as triangles of edges or, with
    /// `subdivide`, as a small node joined to its three points.
    pub fn to_dot(&self, subdivide: bool) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph \"{}\" {{", self.name);
        for (i, p) in self.points.iter().enumerate() {
            let shape = match p.class {
                Class::Symmetric => "circle",
                Class::Skew => "hexagon",
            };
            let _ = writeln!(
                out,
                "  n{i} [label=\"{}\", shape={shape}, tooltip=\"{}\"];",
                p.word, p.role
            );
        }
        if subdivide {
            for (k, l) in self.lines.iter().enumerate() {
                let _ = writeln!(out, "  l{k} [shape=point];");
                for i in l {
                    let _ = writeln!(out, "  l{k} -- n{i};");
                }
            }
        } else {
            let mut edges = BTreeSet::new();
            for &[a, b, c] in &self.lines {
                for (x, y) in [(a, b), (b, c), (a, c)] {
                    edges.insert((x.min(y), x.max(y)));
                }
            }
            for (x, y) in edges {
                let _ = writeln!(out, "  n{x} -- n{y};");
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Incrementally assembles a report, merging repeated points.
pub(crate) struct ReportBuilder {
    name: String,
    points: Vec<ConfigPoint>,
    index: HashMap<BinVec, usize>,
    lines: BTreeSet<[usize; 3]>,
    annotations: BTreeMap<String, Value>,
}

impl ReportBuilder {
    pub fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            points: Vec::new(),
            index: HashMap::new(),
            lines: BTreeSet::new(),
            annotations: BTreeMap::new(),
        }
    }

    pub fn point(&mut self, p: BinVec, role: &str) -> usize {
        if let Some(&i) = self.index.get(&p) {
            let existing = &mut self.points[i].role;
            if !existing.split('+').any(|r| r == role) {
                existing.push('+');
                existing.push_str(role);
            }
            return i;
        }
        let word = point_to_word(p).expect("configuration points are nonzero");
        self.points.push(ConfigPoint {
            coords: p,
            class: word.class(),
            word,
            role: role.to_string(),
        });
        self.index.insert(p, self.points.len() - 1);
        self.points.len() - 1
    }

    pub fn points(&mut self, pts: &[BinVec], role: &str) {
        for &p in pts {
            self.point(p, role);
        }
    }

    /// Adds a line whose points must already be present.
    pub fn line(&mut self, l: &Line) {
        let mut idx = l.points().map(|p| self.index[&p]);
        idx.sort_unstable();
        self.lines.insert(idx);
    }

    pub fn annotate(&mut self, key: &str, value: impl Serialize) {
        self.annotations.insert(
            key.to_string(),
            serde_json::to_value(value).expect("annotation serializes"),
        );
    }

    pub fn finish(self) -> Result<ConfigReport> {
        let report = ConfigReport {
            name: self.name,
            points: self.points,
            lines: self.lines.into_iter().collect(),
            annotations: self.annotations,
        };
        report.validate()?;
        Ok(report)
    }
}

pub(crate) fn words(pts: &[BinVec]) -> Vec<String> {
    pts.iter()
        .map(|&p| point_to_word(p).map(|w| w.to_string()).unwrap_or_default())
        .collect()
}

pub(crate) fn word(p: BinVec) -> String {
    point_to_word(p).map(|w| w.to_string()).unwrap_or_default()
}

pub(crate) fn check_ctx(ctx: &GeometryContext) -> Result<()> {
    if ctx.n_qubits() != 4 {
        return Err(GeomError::Usage(
            "configurations are defined for four qubits".into(),
        ));
    }
    Ok(())
}
