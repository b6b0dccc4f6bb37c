//! The dictionary between sign-free Pauli words and points of PG(2N−1, 2).
//!
//! Letter `Aᵢ` of a word occupies the coordinate pair `(xᵢ, x_{i+N})` with
//! `I ↔ (0,0)`, `X ↔ (0,1)`, `Y ↔ (1,1)`, `Z ↔ (1,0)`. Under this map the
//! alternating form `σ(x,y) = Σ xᵢy_{i+N} + x_{i+N}yᵢ` detects
//! anticommutation and `Q(x) = Σ xᵢx_{i+N}` counts Y letters mod 2, so the
//! symmetric words are exactly the points of the hyperbolic quadric `Q = 0`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::gf2::{BinVec, PointSet};

pub const MAX_QUBITS: usize = 4;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub enum Letter {
    #[default]
    I,
    X,
    Y,
    Z,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::I, Letter::X, Letter::Y, Letter::Z];

    pub fn from_char(c: char) -> Result<Self> {
        match c {
            'I' => Ok(Letter::I),
            'X' => Ok(Letter::X),
            'Y' => Ok(Letter::Y),
            'Z' => Ok(Letter::Z),
            other => Err(GeomError::Parse(format!("{other:?} is not one of I, X, Y, Z"))),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }

    /// Coordinate pair `(xᵢ, x_{i+N})`.
    pub fn coords(self) -> (u8, u8) {
        match self {
            Letter::I => (0, 0),
            Letter::X => (0, 1),
            Letter::Y => (1, 1),
            Letter::Z => (1, 0),
        }
    }

    fn from_coords(hi: u8, lo: u8) -> Self {
        match (hi, lo) {
            (0, 0) => Letter::I,
            (0, 1) => Letter::X,
            (1, 1) => Letter::Y,
            _ => Letter::Z,
        }
    }

    /// Single-qubit product with the phase dropped.
    pub fn times(self, other: Letter) -> Letter {
        use Letter::*;
        match (self, other) {
            (I, l) | (l, I) => l,
            (a, b) if a == b => I,
            (X, Y) | (Y, X) => Z,
            (Y, Z) | (Z, Y) => X,
            (Z, X) | (X, Z) => Y,
            _ => unreachable!(),
        }
    }
}

/// Whether a word squares to `+I` or to `−I`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Class {
    Symmetric,
    Skew,
}

impl Class {
    pub fn as_str(self) -> &'static str {
        match self {
            Class::Symmetric => "symmetric",
            Class::Skew => "skew",
        }
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An element of the factor group P̄_N: a tensor word over `{I, X, Y, Z}`
/// without its sign.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliWord {
    n: u8,
    letters: [Letter; MAX_QUBITS],
}

impl PauliWord {
    pub fn new(letters: &[Letter]) -> Result<Self> {
        let n = letters.len();
        if n == 0 || n > MAX_QUBITS {
            return Err(GeomError::Usage(format!(
                "words must have 1..={MAX_QUBITS} letters, got {n}"
            )));
        }
        let mut buf = [Letter::I; MAX_QUBITS];
        buf[..n].copy_from_slice(letters);
        Ok(Self {
            n: n as u8,
            letters: buf,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self::new(&vec![Letter::I; n]).expect("valid qubit count")
    }

    pub fn n_qubits(&self) -> usize {
        self.n as usize
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters[..self.n_qubits()]
    }

    pub fn is_identity(&self) -> bool {
        self.letters().iter().all(|&l| l == Letter::I)
    }

    pub fn y_count(&self) -> usize {
        self.letters().iter().filter(|&&l| l == Letter::Y).count()
    }

    /// Symmetric iff the number of Y letters is even.
    pub fn is_symmetric(&self) -> bool {
        self.y_count() % 2 == 0
    }

    pub fn class(&self) -> Class {
        if self.is_symmetric() {
            Class::Symmetric
        } else {
            Class::Skew
        }
    }

    /// Tensor notation, `I⊗Y⊗Z⊗X`.
    pub fn tensor_form(&self) -> String {
        self.letters()
            .iter()
            .map(|l| l.as_char().to_string())
            .collect::<Vec<_>>()
            .join("⊗")
    }
}

impl fmt::Display for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in self.letters() {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliWord({self})")
    }
}

impl FromStr for PauliWord {
    type Err = GeomError;

    /// Accepts `"IYZX"` and the tensor form `"I⊗Y⊗Z⊗X"`.
    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .filter(|&c| c != '⊗' && c != '*' && !c.is_whitespace())
            .map(Letter::from_char)
            .collect::<Result<Vec<_>>>()?;
        Self::new(&letters)
    }
}

impl Serialize for PauliWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The ambient data for a fixed number of qubits: PG(2N−1, 2) with its
/// symplectic form and the quadric of symmetric elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct GeometryContext {
    n: usize,
}

impl GeometryContext {
    pub fn new(n_qubits: usize) -> Result<Self> {
        if !(2..=MAX_QUBITS).contains(&n_qubits) {
            return Err(GeomError::Usage(format!(
                "number of qubits must be 2, 3 or 4, got {n_qubits}"
            )));
        }
        Ok(Self { n: n_qubits })
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    /// Vector-space dimension 2N.
    pub fn dim(&self) -> usize {
        2 * self.n
    }

    pub fn point_count(&self) -> usize {
        (1 << self.dim()) - 1
    }

    #[inline]
    fn halves(&self, v: u16) -> (u16, u16) {
        let mask = (1u16 << self.n) - 1;
        (v >> self.n, v & mask)
    }

    /// σ on packed vectors.
    #[inline]
    pub fn sigma_raw(&self, u: u16, v: u16) -> u8 {
        let (uh, ul) = self.halves(u);
        let (vh, vl) = self.halves(v);
        (((uh & vl) ^ (ul & vh)).count_ones() & 1) as u8
    }

    /// Q on packed vectors.
    #[inline]
    pub fn quadratic_raw(&self, u: u16) -> u8 {
        let (h, l) = self.halves(u);
        ((h & l).count_ones() & 1) as u8
    }

    pub fn sigma(&self, u: BinVec, v: BinVec) -> Result<u8> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.sigma_raw(u.bits(), v.bits()))
    }

    pub fn quadratic_form(&self, u: BinVec) -> Result<u8> {
        self.check(u)?;
        Ok(self.quadratic_raw(u.bits()))
    }

    pub fn check(&self, u: BinVec) -> Result<()> {
        if u.dim() != self.dim() {
            return Err(GeomError::LengthMismatch {
                expected: self.dim(),
                found: u.dim(),
            });
        }
        Ok(())
    }

    pub fn vector(&self, bits: u16) -> BinVec {
        BinVec::from_raw(bits, self.dim())
    }

    /// All nonzero points in canonical order.
    pub fn points(&self) -> impl Iterator<Item = BinVec> + '_ {
        (1..=self.point_count() as u16).map(|b| self.vector(b))
    }

    /// The points of the hyperbolic quadric `Q = 0`.
    pub fn quadric_points(&self) -> PointSet {
        (1..=self.point_count() as u16)
            .filter(|&b| self.quadratic_raw(b) == 0)
            .collect()
    }

    pub fn off_quadric_points(&self) -> PointSet {
        (1..=self.point_count() as u16)
            .filter(|&b| self.quadratic_raw(b) == 1)
            .collect()
    }

    /// Points σ-orthogonal to `p` (its perp hyperplane, `p` included).
    pub fn perp(&self, p: u16) -> PointSet {
        (1..=self.point_count() as u16)
            .filter(|&b| self.sigma_raw(p, b) == 0)
            .collect()
    }

    /// Every word of this context, identity excluded, in canonical point order.
    pub fn words(&self) -> Vec<PauliWord> {
        self.points()
            .map(|p| point_to_word(p).expect("nonzero point"))
            .collect()
    }

    pub fn word(&self, s: &str) -> Result<PauliWord> {
        let w: PauliWord = s.parse()?;
        if w.n_qubits() != self.n {
            return Err(GeomError::Usage(format!(
                "word {w} has {} letters, expected {}",
                w.n_qubits(),
                self.n
            )));
        }
        Ok(w)
    }

    /// Parses either a word (`"IYZX"`) or a coordinate string (`"01100101"`).
    pub fn parse_point(&self, s: &str) -> Result<BinVec> {
        let s = s.trim();
        let p = if s.chars().all(|c| c == '0' || c == '1') && !s.is_empty() {
            let p: BinVec = s.parse()?;
            self.check(p)?;
            p
        } else {
            word_to_point(&self.word(s)?)?
        };
        if p.is_zero() {
            return Err(GeomError::IdentityNotAPoint);
        }
        Ok(p)
    }
}

/// The point of PG(2N−1, 2) representing a non-identity word.
pub fn word_to_point(w: &PauliWord) -> Result<BinVec> {
    if w.is_identity() {
        return Err(GeomError::IdentityNotAPoint);
    }
    Ok(word_to_vector(w))
}

/// Like [`word_to_point`] but maps the identity to the zero vector.
pub fn word_to_vector(w: &PauliWord) -> BinVec {
    let n = w.n_qubits();
    let mut coords = vec![0u8; 2 * n];
    for (i, l) in w.letters().iter().enumerate() {
        let (hi, lo) = l.coords();
        coords[i] = hi;
        coords[i + n] = lo;
    }
    BinVec::from_coords(&coords).expect("2N ≤ 8 binary coordinates")
}

pub fn point_to_word(p: BinVec) -> Result<PauliWord> {
    if p.is_zero() {
        return Err(GeomError::IdentityNotAPoint);
    }
    vector_to_word(p)
}

/// Inverse of [`word_to_vector`]; the zero vector decodes to the identity.
pub fn vector_to_word(p: BinVec) -> Result<PauliWord> {
    let dim = p.dim();
    if dim % 2 != 0 || dim / 2 > MAX_QUBITS {
        return Err(GeomError::Usage(format!(
            "a {dim}-coordinate vector does not encode a Pauli word"
        )));
    }
    let n = dim / 2;
    let letters: Vec<Letter> = (0..n)
        .map(|i| Letter::from_coords(p.coord(i), p.coord(i + n)))
        .collect();
    PauliWord::new(&letters)
}

fn same_length(a: &PauliWord, b: &PauliWord) -> Result<()> {
    if a.n_qubits() != b.n_qubits() {
        return Err(GeomError::LengthMismatch {
            expected: a.n_qubits(),
            found: b.n_qubits(),
        });
    }
    Ok(())
}

/// Sign-free product, letter by letter.
pub fn word_product(a: &PauliWord, b: &PauliWord) -> Result<PauliWord> {
    same_length(a, b)?;
    let letters: Vec<Letter> = a
        .letters()
        .iter()
        .zip(b.letters())
        .map(|(&x, &y)| x.times(y))
        .collect();
    PauliWord::new(&letters)
}

/// Whether the two elements commute, decided by `σ = 0`.
pub fn commutes(a: &PauliWord, b: &PauliWord) -> Result<bool> {
    same_length(a, b)?;
    let ctx = GeometryContext { n: a.n_qubits() };
    let (u, v) = (word_to_vector(a), word_to_vector(b));
    Ok(ctx.sigma_raw(u.bits(), v.bits()) == 0)
}

pub fn is_symmetric(w: &PauliWord) -> bool {
    w.is_symmetric()
}

/// JSON shape `{word, coords, class}` used by the exporters.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct WordRecord {
    pub word: String,
    pub coords: String,
    pub class: Class,
}

impl WordRecord {
    pub fn of_point(p: BinVec) -> Result<Self> {
        let w = point_to_word(p)?;
        Ok(Self {
            word: w.to_string(),
            coords: p.to_string(),
            class: w.class(),
        })
    }
}
