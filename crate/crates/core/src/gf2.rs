//! Linear and projective algebra over GF(2).
//!
//! A vector of length `dim` (at most 8) is packed into a `u16` with the
//! first coordinate `x₁` in the most significant position, so that integer
//! order on the packed value is the canonical point order used for every
//! set-valued output in this crate.

use std::fmt;
use std::ops::{Add, BitAnd, BitOr, BitXor};
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};

/// Largest ambient vector-space dimension supported (PG(7,2)).
pub const MAX_DIM: usize = 8;

/// A binary coordinate vector `(x₁, …, x_dim)`.
///
/// Ordering compares the packed integer value (x₁ most significant). Vectors
/// of different lengths are never meaningfully compared.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinVec {
    bits: u16,
    dim: u8,
}

impl BinVec {
    pub fn new(bits: u16, dim: usize) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(GeomError::Usage(format!(
                "vector length must be in 1..={MAX_DIM}, got {dim}"
            )));
        }
        if u32::from(bits) >> dim != 0 {
            return Err(GeomError::Usage(format!(
                "bit pattern {bits:#b} does not fit in {dim} coordinates"
            )));
        }
        Ok(Self::from_raw(bits, dim))
    }

    /// Packs without validation; `bits` must fit in `dim` coordinates.
    #[inline]
    pub(crate) const fn from_raw(bits: u16, dim: usize) -> Self {
        Self {
            bits,
            dim: dim as u8,
        }
    }

    pub fn zero(dim: usize) -> Self {
        Self::from_raw(0, dim)
    }

    /// Builds a vector from coordinates listed in `x₁..x_dim` order.
    pub fn from_coords(coords: &[u8]) -> Result<Self> {
        let dim = coords.len();
        let mut bits = 0u16;
        for &c in coords {
            if c > 1 {
                return Err(GeomError::Parse(format!("coordinate {c} is not 0 or 1")));
            }
            bits = (bits << 1) | u16::from(c);
        }
        Self::new(bits, dim)
    }

    /// The `dim` unit vector with a single 1 in coordinate `x_{index+1}`.
    pub fn unit(index: usize, dim: usize) -> Self {
        Self::from_raw(1 << (dim - 1 - index), dim)
    }

    #[inline]
    pub const fn bits(self) -> u16 {
        self.bits
    }

    #[inline]
    pub const fn dim(self) -> usize {
        self.dim as usize
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.bits == 0
    }

    /// Coordinate `x_{index+1}` (0-based index).
    #[inline]
    pub fn coord(self, index: usize) -> u8 {
        ((self.bits >> (self.dim() - 1 - index)) & 1) as u8
    }

    pub fn coords(self) -> Vec<u8> {
        (0..self.dim()).map(|i| self.coord(i)).collect()
    }

    pub fn weight(self) -> u32 {
        self.bits.count_ones()
    }
}

impl fmt::Display for BinVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim() {
            f.write_str(if self.coord(i) == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinVec({self})")
    }
}

impl FromStr for BinVec {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self> {
        let coords = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(GeomError::Parse(format!(
                    "invalid coordinate character {other:?} in {s:?}"
                ))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Self::from_coords(&coords)
    }
}

impl Serialize for BinVec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BinVec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Panics on a length mismatch; use [`vec_add`] for a checked sum.
impl Add for BinVec {
    type Output = BinVec;

    fn add(self, rhs: BinVec) -> BinVec {
        assert_eq!(self.dim, rhs.dim, "adding vectors of different lengths");
        BinVec::from_raw(self.bits ^ rhs.bits, self.dim())
    }
}

/// Componentwise sum mod 2. For distinct nonzero `u`, `v` this is the
/// third point of the line through them.
pub fn vec_add(u: BinVec, v: BinVec) -> Result<BinVec> {
    if u.dim != v.dim {
        return Err(GeomError::LengthMismatch {
            expected: u.dim(),
            found: v.dim(),
        });
    }
    Ok(BinVec::from_raw(u.bits ^ v.bits, u.dim()))
}

/// A projective line of PG(dim−1, 2): three distinct nonzero points summing to zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Line {
    points: [BinVec; 3],
}

impl Line {
    /// Validates that the three points form a line.
    pub fn new(a: BinVec, b: BinVec, c: BinVec) -> Result<Self> {
        let line = line_through(a, b)?;
        if line.third(a, b) != c {
            return Err(GeomError::Degenerate(format!(
                "{a}, {b}, {c} are not collinear"
            )));
        }
        Ok(line)
    }

    /// Points in canonical (ascending) order.
    pub fn points(&self) -> [BinVec; 3] {
        self.points
    }

    pub fn contains(&self, p: BinVec) -> bool {
        self.points.contains(&p)
    }

    /// The point of the line other than `a` and `b` (both assumed on it).
    pub fn third(&self, a: BinVec, b: BinVec) -> BinVec {
        a + b
    }

    pub fn meets(&self, other: &Line) -> bool {
        self.points.iter().any(|p| other.contains(*p))
    }

    /// Canonical text key, e.g. `"00000011|00000101|00000110"`.
    pub fn key(&self) -> String {
        let [a, b, c] = self.points;
        format!("{a}|{b}|{c}")
    }
}

/// The line `{p, q, p+q}`.
pub fn line_through(p: BinVec, q: BinVec) -> Result<Line> {
    let r = vec_add(p, q)?;
    if p.is_zero() || q.is_zero() {
        return Err(GeomError::Degenerate(
            "the zero vector is not a projective point".into(),
        ));
    }
    if p == q {
        return Err(GeomError::Degenerate(format!(
            "a line needs two distinct points, got {p} twice"
        )));
    }
    let mut points = [p, q, r];
    points.sort_unstable();
    Ok(Line { points })
}

/// Fixed-capacity bitset over the 256 vectors of GF(2)^≤8, indexed by the
/// packed value. Iteration is in ascending (canonical) order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PointSet {
    words: [u64; 4],
}

impl PointSet {
    pub const fn new() -> Self {
        Self { words: [0; 4] }
    }

    #[inline]
    pub fn insert(&mut self, v: u16) -> bool {
        let (w, b) = ((v >> 6) as usize, v & 63);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, v: u16) {
        self.words[(v >> 6) as usize] &= !(1u64 << (v & 63));
    }

    #[inline]
    pub fn contains(&self, v: u16) -> bool {
        self.words[(v >> 6) as usize] & (1 << (v & 63)) != 0
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    /// Smallest element, if any.
    pub fn first(&self) -> Option<u16> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| (i as u16) * 64 + w.trailing_zeros() as u16)
    }

    /// Elements strictly greater than `v`.
    pub fn above(&self, v: u16) -> PointSet {
        let mut out = *self;
        let (w, b) = ((v >> 6) as usize, v & 63);
        for word in out.words.iter_mut().take(w) {
            *word = 0;
        }
        out.words[w] &= if b == 63 { 0 } else { !0u64 << (b + 1) };
        out
    }

    pub fn iter(&self) -> PointSetIter {
        PointSetIter {
            words: self.words,
            index: 0,
        }
    }

    /// Elements as vectors of length `dim`.
    pub fn vectors(&self, dim: usize) -> Vec<BinVec> {
        self.iter().map(|v| BinVec::from_raw(v, dim)).collect()
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<u16> for PointSet {
    fn from_iter<T: IntoIterator<Item = u16>>(iter: T) -> Self {
        let mut s = PointSet::new();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl FromIterator<BinVec> for PointSet {
    fn from_iter<T: IntoIterator<Item = BinVec>>(iter: T) -> Self {
        iter.into_iter().map(BinVec::bits).collect()
    }
}

impl BitAnd for PointSet {
    type Output = PointSet;
    fn bitand(self, rhs: Self) -> Self {
        let mut out = self;
        for (a, b) in out.words.iter_mut().zip(rhs.words) {
            *a &= b;
        }
        out
    }
}

impl BitOr for PointSet {
    type Output = PointSet;
    fn bitor(self, rhs: Self) -> Self {
        let mut out = self;
        for (a, b) in out.words.iter_mut().zip(rhs.words) {
            *a |= b;
        }
        out
    }
}

impl BitXor for PointSet {
    type Output = PointSet;
    fn bitxor(self, rhs: Self) -> Self {
        let mut out = self;
        for (a, b) in out.words.iter_mut().zip(rhs.words) {
            *a ^= b;
        }
        out
    }
}

impl PointSet {
    /// Set difference `self \ other`.
    pub fn minus(self, other: PointSet) -> PointSet {
        let mut out = self;
        for (a, b) in out.words.iter_mut().zip(other.words) {
            *a &= !b;
        }
        out
    }
}

pub struct PointSetIter {
    words: [u64; 4],
    index: usize,
}

impl Iterator for PointSetIter {
    type Item = u16;

    fn next(&mut self) -> Option<u16> {
        while self.index < 4 {
            let w = self.words[self.index];
            if w != 0 {
                let b = w.trailing_zeros();
                self.words[self.index] &= w - 1;
                return Some((self.index as u16) * 64 + b as u16);
            }
            self.index += 1;
        }
        None
    }
}

/// A projective subspace stored by its reduced row-echelon basis.
///
/// Pivots are the leading (most significant) coordinates; rows are ordered by
/// pivot from `x₁` downwards and every pivot column is cleared in the other
/// rows, so two flats are equal iff their bases are equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Flat {
    dim: u8,
    basis: Vec<u16>,
}

impl Flat {
    pub fn empty(ambient_dim: usize) -> Self {
        Self {
            dim: ambient_dim as u8,
            basis: Vec::new(),
        }
    }

    /// The whole space PG(ambient_dim − 1, 2).
    pub fn full(ambient_dim: usize) -> Self {
        let mut f = Self::empty(ambient_dim);
        for i in 0..ambient_dim {
            f.absorb(1 << i);
        }
        f
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim as usize
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Projective dimension, `rank − 1` (−1 for the empty flat).
    pub fn proj_dim(&self) -> i32 {
        self.basis.len() as i32 - 1
    }

    pub fn basis(&self) -> Vec<BinVec> {
        self.basis
            .iter()
            .map(|&b| BinVec::from_raw(b, self.ambient_dim()))
            .collect()
    }

    pub(crate) fn basis_raw(&self) -> &[u16] {
        &self.basis
    }

    /// Reduces `v` against the basis; zero iff `v` lies in the span.
    fn reduce(&self, mut v: u16) -> u16 {
        for &row in &self.basis {
            let pivot = 15 - row.leading_zeros();
            if v >> pivot & 1 == 1 {
                v ^= row;
            }
        }
        v
    }

    pub fn contains_raw(&self, v: u16) -> bool {
        self.reduce(v) == 0
    }

    pub fn contains(&self, v: BinVec) -> bool {
        v.dim() == self.ambient_dim() && self.contains_raw(v.bits())
    }

    /// Adds `v` to the span, keeping the basis reduced. Returns whether the
    /// rank grew.
    pub(crate) fn absorb(&mut self, v: u16) -> bool {
        let r = self.reduce(v);
        if r == 0 {
            return false;
        }
        let pivot = 15 - r.leading_zeros();
        for row in self.basis.iter_mut() {
            if *row >> pivot & 1 == 1 {
                *row ^= r;
            }
        }
        let pos = self
            .basis
            .iter()
            .position(|&row| row.leading_zeros() > r.leading_zeros())
            .unwrap_or(self.basis.len());
        self.basis.insert(pos, r);
        true
    }

    /// All points, as a bitset.
    pub fn point_set(&self) -> PointSet {
        let mut out = PointSet::new();
        let k = self.basis.len();
        for mask in 1u32..(1 << k) {
            let mut v = 0;
            for (i, &row) in self.basis.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    v ^= row;
                }
            }
            out.insert(v);
        }
        out
    }

    /// All points in canonical order.
    pub fn points(&self) -> Vec<BinVec> {
        self.point_set().vectors(self.ambient_dim())
    }

    pub fn point_count(&self) -> usize {
        (1usize << self.rank()) - 1
    }

    pub fn intersect(&self, other: &Flat) -> Flat {
        let common = self.point_set() & other.point_set();
        let mut f = Flat::empty(self.ambient_dim());
        for v in common.iter() {
            f.absorb(v);
        }
        f
    }

    pub fn join(&self, other: &Flat) -> Flat {
        let mut f = self.clone();
        for &row in &other.basis {
            f.absorb(row);
        }
        f
    }

    pub fn is_subspace_of(&self, other: &Flat) -> bool {
        self.basis.iter().all(|&row| other.contains_raw(row))
    }

    /// Basis rows serialized as coordinate strings.
    pub fn basis_strings(&self) -> Vec<String> {
        self.basis().iter().map(ToString::to_string).collect()
    }
}

impl Serialize for Flat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.basis_strings().serialize(s)
    }
}

/// Canonical flat spanned by `points` inside GF(2)^ambient_dim.
pub fn span<I>(ambient_dim: usize, points: I) -> Result<Flat>
where
    I: IntoIterator<Item = BinVec>,
{
    let mut f = Flat::empty(ambient_dim);
    for p in points {
        if p.dim() != ambient_dim {
            return Err(GeomError::LengthMismatch {
                expected: ambient_dim,
                found: p.dim(),
            });
        }
        if p.is_zero() {
            return Err(GeomError::Degenerate(
                "the zero vector is not a projective point".into(),
            ));
        }
        f.absorb(p.bits());
    }
    Ok(f)
}

/// Span of raw packed vectors; zero entries are ignored.
pub(crate) fn span_raw(ambient_dim: usize, points: impl IntoIterator<Item = u16>) -> Flat {
    let mut f = Flat::empty(ambient_dim);
    for p in points {
        f.absorb(p);
    }
    f
}

pub fn flat_points(f: &Flat) -> Vec<BinVec> {
    f.points()
}

/// Rank of a list of packed vectors.
pub fn rank_raw(vectors: &[u16]) -> usize {
    span_raw(MAX_DIM, vectors.iter().copied()).rank()
}

/// Rows of the substitution from Edge's coordinates `y` to the standard
/// coordinates `x`: `x_i` is the sum of the listed `y_j` (1-based).
const EDGE_ROWS: [&[usize]; 8] = [
    &[1, 4, 6, 8],
    &[2, 3, 6, 8],
    &[2, 4, 5, 8],
    &[2, 4, 6, 7],
    &[3, 5, 8],
    &[4, 7, 8],
    &[2, 3, 7],
    &[1, 2, 8],
];

fn edge_apply(y: u16) -> u16 {
    let yb = BinVec::from_raw(y, 8);
    let mut x = 0u16;
    for row in EDGE_ROWS {
        let bit = row.iter().fold(0u8, |acc, &j| acc ^ yb.coord(j - 1));
        x = (x << 1) | u16::from(bit);
    }
    x
}

fn edge_tables() -> &'static ([u16; 256], [u16; 256]) {
    static TABLES: OnceLock<([u16; 256], [u16; 256])> = OnceLock::new();
    TABLES.get_or_init(|| {
        let mut fwd = [0u16; 256];
        let mut inv = [u16::MAX; 256];
        for y in 0..256u16 {
            let x = edge_apply(y);
            fwd[y as usize] = x;
            inv[x as usize] = y;
        }
        (fwd, inv)
    })
}

/// Maps a point given in Edge's coordinates (quadric `Σ_{i<j} yᵢyⱼ = 0`) to
/// the standard coordinates (quadric `x₁x₅+x₂x₆+x₃x₇+x₄x₈ = 0`).
pub fn edge_to_standard(y: BinVec) -> Result<BinVec> {
    if y.dim() != 8 {
        return Err(GeomError::LengthMismatch {
            expected: 8,
            found: y.dim(),
        });
    }
    Ok(BinVec::from_raw(edge_tables().0[y.bits() as usize], 8))
}

/// Inverse of [`edge_to_standard`].
pub fn standard_to_edge(x: BinVec) -> Result<BinVec> {
    if x.dim() != 8 {
        return Err(GeomError::LengthMismatch {
            expected: 8,
            found: x.dim(),
        });
    }
    let y = edge_tables().1[x.bits() as usize];
    if y == u16::MAX {
        return Err(GeomError::Consistency(
            "coordinate transform is not invertible".into(),
        ));
    }
    Ok(BinVec::from_raw(y, 8))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(s: &str) -> BinVec {
        s.parse().unwrap()
    }

    #[test]
    fn third_point_rule() {
        assert_eq!(
            vec_add(v("01110100"), v("11000110")).unwrap(),
            v("10110010")
        );
        let u = v("01100101");
        assert!(vec_add(u, u).unwrap().is_zero());
        assert_eq!(vec_add(u, BinVec::zero(8)).unwrap(), u);
        assert!(matches!(
            vec_add(u, v("0110")),
            Err(GeomError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn lines() {
        let l = line_through(v("01110100"), v("11000110")).unwrap();
        assert!(l.contains(v("10110010")));
        assert_eq!(l, line_through(v("11000110"), v("01110100")).unwrap());
        let e = line_through(v("10000000"), v("01000000")).unwrap();
        assert!(e.contains(v("11000000")));
        assert!(line_through(v("10000000"), v("10000000")).is_err());
        assert!(line_through(v("10000000"), v("00000000")).is_err());
        assert!(Line::new(v("1000"), v("0100"), v("0010")).is_err());
    }

    #[test]
    fn spans_and_points() {
        let p = v("10000000");
        let q = v("01000000");
        assert_eq!(span(8, [p, q]).unwrap().proj_dim(), 1);
        assert_eq!(span(8, [p, q, p + q]).unwrap().proj_dim(), 1);
        assert_eq!(span(8, []).unwrap().proj_dim(), -1);
        assert!(span(8, [BinVec::zero(8)]).is_err());
        assert_eq!(span(8, [p, q]).unwrap().points().len(), 3);
        let solid = span(8, (0..4).map(|i| BinVec::unit(i, 8))).unwrap();
        assert_eq!(solid.points().len(), 15);
        assert_eq!(Flat::full(8).points().len(), 255);
    }

    #[test]
    fn edge_transform_examples() {
        assert_eq!(edge_to_standard(v("10000000")).unwrap(), v("10000001"));
        assert_eq!(edge_to_standard(v("11111111")).unwrap(), v("00001111"));
        assert!(edge_to_standard(BinVec::zero(8)).unwrap().is_zero());
        assert!(edge_to_standard(v("101")).is_err());
    }

    #[test]
    fn edge_transform_is_bijective() {
        let images: PointSet = (0..256u16)
            .map(|y| edge_to_standard(BinVec::from_raw(y, 8)).unwrap())
            .collect();
        assert_eq!(images.len(), 256);
        for x in 0..256u16 {
            let x = BinVec::from_raw(x, 8);
            assert_eq!(edge_to_standard(standard_to_edge(x).unwrap()).unwrap(), x);
        }
    }

    #[test]
    fn group_axioms_exhaustive_dim4() {
        for a in 0..16u16 {
            for b in 0..16u16 {
                let (x, y) = (BinVec::from_raw(a, 4), BinVec::from_raw(b, 4));
                assert_eq!(x + y, y + x);
                assert!((x + x).is_zero());
                for c in 0..16u16 {
                    let z = BinVec::from_raw(c, 4);
                    assert_eq!((x + y) + z, x + (y + z));
                }
            }
        }
    }

    #[test]
    fn pointset_ops() {
        let s: PointSet = [3u16, 64, 200, 255].into_iter().collect();
        assert_eq!(s.len(), 4);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![3, 64, 200, 255]);
        assert_eq!(s.above(64).iter().collect::<Vec<_>>(), vec![200, 255]);
        assert_eq!(s.above(255).len(), 0);
        assert_eq!(s.above(63).first(), Some(64));
        assert_eq!(s.first(), Some(3));
    }

    #[test]
    fn serialization_text_form() {
        let p = v("01100101");
        assert_eq!(p.to_string(), "01100101");
        assert_eq!(serde_json::to_string(&p).unwrap(), "\"01100101\"");
        assert_eq!(p.coords(), vec![0, 1, 1, 0, 0, 1, 0, 1]);
        assert!("01a".parse::<BinVec>().is_err());
    }

    proptest! {
        #[test]
        fn addition_axioms(a in 0u16..256, b in 0u16..256, c in 0u16..256) {
            let (x, y, z) = (BinVec::from_raw(a, 8), BinVec::from_raw(b, 8), BinVec::from_raw(c, 8));
            prop_assert_eq!((x + y) + z, x + (y + z));
            prop_assert_eq!(x + y, y + x);
            prop_assert!((x + x).is_zero());
        }

        #[test]
        fn span_is_canonical(raw in proptest::collection::vec(1u16..256, 0..8), seed in any::<u64>()) {
            let pts: Vec<BinVec> = raw.iter().map(|&b| BinVec::from_raw(b, 8)).collect();
            let f = span(8, pts.iter().copied()).unwrap();
            let mut shuffled = pts.clone();
            // deterministic rotation + reversal as a permutation
            if !shuffled.is_empty() {
                let k = (seed as usize) % shuffled.len();
                shuffled.rotate_left(k);
                if seed & 1 == 1 { shuffled.reverse(); }
            }
            prop_assert_eq!(&span(8, shuffled).unwrap(), &f);
            prop_assert_eq!(&span(8, f.points()).unwrap(), &f);
            prop_assert_eq!(f.points().len(), (1usize << (f.proj_dim() + 1)) - 1);
        }
    }
}
