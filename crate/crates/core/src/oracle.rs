//! Exact matrix realization of Pauli words as signed permutation matrices.
//!
//! This module is a ground truth for [`crate::pauli`]: it never looks at
//! coordinates or at the symplectic form, only at the 2×2 matrices
//!
//! ```text
//! I = [1 0; 0 1]   X = [0 1; 1 0]   Y = [0 -1; 1 0]   Z = [1 0; 0 -1]
//! ```
//!
//! and their Kronecker products.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{GeomError, Result};
use crate::pauli::{self, GeometryContext, Letter, PauliWord};

/// Matrix with `M[perm[j], j] = signs[j]` and zeros elsewhere.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignedPermMatrix {
    perm: Vec<u32>,
    signs: Vec<i8>,
}

impl SignedPermMatrix {
    pub fn identity(size: usize) -> Self {
        Self {
            perm: (0..size as u32).collect(),
            signs: vec![1; size],
        }
    }

    pub fn size(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[u32] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// Entry at row `i`, column `j`.
    pub fn entry(&self, i: usize, j: usize) -> i8 {
        if self.perm[j] as usize == i {
            self.signs[j]
        } else {
            0
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<i8>> {
        let n = self.size();
        (0..n)
            .map(|i| (0..n).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    fn base(letter: Letter) -> Self {
        let (perm, signs) = match letter {
            Letter::I => (vec![0, 1], vec![1, 1]),
            Letter::X => (vec![1, 0], vec![1, 1]),
            Letter::Y => (vec![1, 0], vec![1, -1]),
            Letter::Z => (vec![0, 1], vec![1, -1]),
        };
        Self { perm, signs }
    }

    pub fn kron(&self, other: &Self) -> Self {
        let nb = other.size();
        let size = self.size() * nb;
        let mut perm = Vec::with_capacity(size);
        let mut signs = Vec::with_capacity(size);
        for ja in 0..self.size() {
            for jb in 0..nb {
                perm.push(self.perm[ja] * nb as u32 + other.perm[jb]);
                signs.push(self.signs[ja] * other.signs[jb]);
            }
        }
        Self { perm, signs }
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.size(), other.size(), "size mismatch");
        let (perm, signs) = other
            .perm
            .iter()
            .zip(&other.signs)
            .map(|(&p, &s)| (self.perm[p as usize], s * self.signs[p as usize]))
            .unzip();
        Self { perm, signs }
    }

    pub fn neg(&self) -> Self {
        Self {
            perm: self.perm.clone(),
            signs: self.signs.iter().map(|s| -s).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(j, &p)| p as usize == j)
            && self.signs.iter().all(|&s| s == 1)
    }

    /// Decodes `±(A₁⊗…⊗A_N)` back to its word and sign.
    pub fn decode(&self, n_qubits: usize) -> Result<(i8, PauliWord)> {
        let size = 1usize << n_qubits;
        if self.size() != size {
            return Err(GeomError::Consistency(format!(
                "matrix of size {} is not an {n_qubits}-qubit operator",
                self.size()
            )));
        }
        let flip = self.perm[0];
        if (0..size).any(|j| self.perm[j] != j as u32 ^ flip) {
            return Err(GeomError::Consistency(
                "permutation is not a tensor of X flips".into(),
            ));
        }
        // Column j carries sign (-1)^{popcount(j & phase)} up to a global sign.
        let global = self.signs[0];
        let mut phase = 0u32;
        for k in 0..n_qubits {
            if self.signs[1 << k] != global {
                phase |= 1 << k;
            }
        }
        for j in 0..size {
            let expected = if (j as u32 & phase).count_ones() % 2 == 0 {
                global
            } else {
                -global
            };
            if self.signs[j] != expected {
                return Err(GeomError::Consistency(
                    "sign pattern is not a tensor of Z phases".into(),
                ));
            }
        }
        let letters: Vec<Letter> = (0..n_qubits)
            .map(|q| {
                let bit = n_qubits - 1 - q;
                match (flip >> bit & 1, phase >> bit & 1) {
                    (0, 0) => Letter::I,
                    (1, 0) => Letter::X,
                    (0, 1) => Letter::Z,
                    _ => Letter::Y,
                }
            })
            .collect();
        let word = PauliWord::new(&letters)?;
        // sign relative to the unsigned realization of the decoded word
        let realized = realize(&word);
        let sign = if realized.signs[0] == global { 1 } else { -1 };
        Ok((sign, word))
    }
}

/// Kronecker product of the letter matrices, first letter outermost.
pub fn realize(w: &PauliWord) -> SignedPermMatrix {
    w.letters()
        .iter()
        .fold(SignedPermMatrix::identity(1), |acc, &l| {
            acc.kron(&SignedPermMatrix::base(l))
        })
}

/// Whether the matrix squares to `+1`.
pub fn oracle_symmetric(w: &PauliWord) -> bool {
    let m = realize(w);
    m.mul(&m).is_identity()
}

pub fn oracle_commutes(a: &PauliWord, b: &PauliWord) -> Result<bool> {
    check_lengths(a, b)?;
    let (ma, mb) = (realize(a), realize(b));
    Ok(ma.mul(&mb) == mb.mul(&ma))
}

/// Matrix product with the overall sign stripped.
pub fn oracle_product(a: &PauliWord, b: &PauliWord) -> Result<PauliWord> {
    check_lengths(a, b)?;
    let prod = realize(a).mul(&realize(b));
    let (_, word) = prod.decode(a.n_qubits())?;
    Ok(word)
}

fn check_lengths(a: &PauliWord, b: &PauliWord) -> Result<()> {
    if a.n_qubits() != b.n_qubits() {
        return Err(GeomError::LengthMismatch {
            expected: a.n_qubits(),
            found: b.n_qubits(),
        });
    }
    Ok(())
}

/// How many product pairs to check and how to pick them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductCoverage {
    Exhaustive,
    Sampled { pairs: usize, seed: u64 },
}

impl Default for ProductCoverage {
    fn default() -> Self {
        ProductCoverage::Sampled {
            pairs: 100_000,
            seed: 0x5eed_0f_0a1d,
        }
    }
}

/// Tally of a cross-check between the matrix oracle and the codec.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OracleAgreement {
    pub n_qubits: usize,
    pub symmetry_checked: usize,
    pub symmetry_mismatches: usize,
    pub commutation_checked: usize,
    pub commutation_mismatches: usize,
    pub product_checked: usize,
    pub product_mismatches: usize,
    pub homomorphism_failures: usize,
}

impl OracleAgreement {
    pub fn passed(&self) -> bool {
        self.symmetry_mismatches == 0
            && self.commutation_mismatches == 0
            && self.product_mismatches == 0
            && self.homomorphism_failures == 0
    }
}

/// Compares the oracle with [`crate::pauli`] on every non-identity word
/// (symmetry), every unordered pair (commutation) and the chosen product
/// pairs.
pub fn cross_check(ctx: &GeometryContext, coverage: ProductCoverage) -> OracleAgreement {
    let words = ctx.words();
    let mats: Vec<SignedPermMatrix> = words.iter().map(realize).collect();
    let mut report = OracleAgreement {
        n_qubits: ctx.n_qubits(),
        ..Default::default()
    };
    for (w, m) in words.iter().zip(&mats) {
        report.symmetry_checked += 1;
        if m.mul(m).is_identity() != pauli::is_symmetric(w) {
            report.symmetry_mismatches += 1;
        }
    }
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            report.commutation_checked += 1;
            let matrix = mats[i].mul(&mats[j]) == mats[j].mul(&mats[i]);
            if matrix != pauli::commutes(&words[i], &words[j]).expect("same length") {
                report.commutation_mismatches += 1;
            }
        }
    }
    let check_pair = |i: usize, j: usize, report: &mut OracleAgreement| {
        report.product_checked += 1;
        let prod = mats[i].mul(&mats[j]);
        let expected = pauli::word_product(&words[i], &words[j]).expect("same length");
        match prod.decode(ctx.n_qubits()) {
            Ok((_, word)) if word == expected => {}
            _ => report.product_mismatches += 1,
        }
        let r = realize(&expected);
        if prod != r && prod != r.neg() {
            report.homomorphism_failures += 1;
        }
    };
    match coverage {
        ProductCoverage::Exhaustive => {
            for i in 0..words.len() {
                for j in 0..words.len() {
                    check_pair(i, j, &mut report);
                }
            }
        }
        ProductCoverage::Sampled { pairs, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..pairs {
                let i = rng.gen_range(0..words.len());
                let j = rng.gen_range(0..words.len());
                check_pair(i, j, &mut report);
            }
        }
    }
    report
}
