//! Defining matrices of rational K*-surfaces, their ambient toric fans and
//! fixed-point bookkeeping.

mod cone;
mod fan;
pub mod random;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::exactlin::IntMatrix;
use crate::json::{unwrap2, wrap2, JsonInt};
use crate::{Error, Result};

pub use cone::positively_spans;
pub use fan::{ambient_fan, ambient_fan_labeled, fixed_points, ConeLabel, Fan, FixedPoint, FixedPointKind, PointEnd};

/// Which of the two extra columns `v+ = e_{r+1}` and `v- = -e_{r+1}` are present.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SurfaceType {
    #[serde(rename = "ee")]
    EE,
    #[serde(rename = "pe")]
    PE,
    #[serde(rename = "ep")]
    EP,
    #[serde(rename = "pp")]
    PP,
}

impl SurfaceType {
    /// Parabolic source, i.e. the column `v+` is present.
    pub fn has_plus(self) -> bool {
        matches!(self, SurfaceType::PE | SurfaceType::PP)
    }

    /// Parabolic sink, i.e. the column `v-` is present.
    pub fn has_minus(self) -> bool {
        matches!(self, SurfaceType::EP | SurfaceType::PP)
    }

    pub fn extra_columns(self) -> usize {
        self.has_plus() as usize + self.has_minus() as usize
    }

    pub fn mirrored(self) -> Self {
        match self {
            SurfaceType::PE => SurfaceType::EP,
            SurfaceType::EP => SurfaceType::PE,
            t => t,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SurfaceType::EE => "ee",
            SurfaceType::PE => "pe",
            SurfaceType::EP => "ep",
            SurfaceType::PP => "pp",
        }
    }
}

impl fmt::Display for SurfaceType {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The data `(l_i, d_i)_{i=0..r}` of a defining matrix together with its type.
///
/// Block indices `i` run over `0..=r`; within a block, `j` is 1-based as in
/// the usual notation `v_ij`, `1 <= j <= n_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "DefiningRepr", into = "DefiningRepr")]
pub struct DefiningMatrix {
    kind: SurfaceType,
    l: Vec<Vec<BigInt>>,
    d: Vec<Vec<BigInt>>,
}

impl DefiningMatrix {
    /// Checks only the shape: at least two blocks, each nonempty, with
    /// matching `l` and `d` lengths.
    pub fn new(kind: SurfaceType, l: Vec<Vec<BigInt>>, d: Vec<Vec<BigInt>>) -> Result<Self> {
        if l.len() < 2 {
            return Err(Error::Invalid(format!("need at least two blocks, got {}", l.len())));
        }
        if l.len() != d.len() {
            return Err(Error::Invalid(format!("{} l-blocks but {} d-blocks", l.len(), d.len())));
        }
        for (i, (li, di)) in l.iter().zip(&d).enumerate() {
            if li.is_empty() {
                return Err(Error::Invalid(format!("block {i} is empty")));
            }
            if li.len() != di.len() {
                return Err(Error::Invalid(format!("block {i}: l has {} entries, d has {}", li.len(), di.len())));
            }
        }
        Ok(DefiningMatrix { kind, l, d })
    }

    pub fn from_i64(kind: SurfaceType, l: &[&[i64]], d: &[&[i64]]) -> Result<Self> {
        let big = |v: &[&[i64]]| v.iter().map(|b| b.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Self::new(kind, big(l), big(d))
    }

    pub fn kind(&self) -> SurfaceType {
        self.kind
    }

    pub fn r(&self) -> usize {
        self.l.len() - 1
    }

    pub fn block_len(&self, i: usize) -> usize {
        self.l[i].len()
    }

    pub fn block_lens(&self) -> Vec<usize> {
        self.l.iter().map(Vec::len).collect()
    }

    pub fn n(&self) -> usize {
        self.l.iter().map(Vec::len).sum()
    }

    pub fn m(&self) -> usize {
        self.kind.extra_columns()
    }

    pub fn l_blocks(&self) -> &[Vec<BigInt>] {
        &self.l
    }

    pub fn d_blocks(&self) -> &[Vec<BigInt>] {
        &self.d
    }

    /// `l_ij` with 1-based `j`.
    pub fn l(&self, i: usize, j: usize) -> &BigInt {
        &self.l[i][j - 1]
    }

    /// `d_ij` with 1-based `j`.
    pub fn d(&self, i: usize, j: usize) -> &BigInt {
        &self.d[i][j - 1]
    }

    /// Column of `v_ij` in the assembled matrix.
    pub fn column_of(&self, i: usize, j: usize) -> usize {
        self.l[..i].iter().map(Vec::len).sum::<usize>() + j - 1
    }

    pub fn plus_column(&self) -> Option<usize> {
        self.kind.has_plus().then(|| self.n())
    }

    pub fn minus_column(&self) -> Option<usize> {
        self.kind.has_minus().then(|| self.n() + self.kind.has_plus() as usize)
    }

    /// The `(r+1) x (n+m)` matrix with columns `v_ij` block by block,
    /// followed by `v+` and/or `v-`.
    pub fn assemble(&self) -> IntMatrix {
        let r = self.r();
        let mut p = IntMatrix::zeros(r + 1, self.n() + self.m());
        let mut col = 0;
        for i in 0..=r {
            for (lij, dij) in self.l[i].iter().zip(&self.d[i]) {
                if i == 0 {
                    for k in 0..r {
                        p[(k, col)] = -lij;
                    }
                } else {
                    p[(i - 1, col)] = lij.clone();
                }
                p[(r, col)] = dij.clone();
                col += 1;
            }
        }
        if let Some(c) = self.plus_column() {
            p[(r, c)] = BigInt::one();
        }
        if let Some(c) = self.minus_column() {
            p[(r, c)] = -BigInt::one();
        }
        p
    }

    /// All violated defining-matrix conditions; empty when valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for i in 0..=self.r() {
            for j in 1..=self.block_len(i) {
                let (l, d) = (self.l(i, j), self.d(i, j));
                if !l.is_positive() {
                    out.push(Violation::NonPositiveL { i, j });
                } else if !l.gcd(d).is_one() {
                    out.push(Violation::NotCoprime { i, j });
                }
            }
            for j in 1..self.block_len(i) {
                let (l1, d1, l2, d2) = (self.l(i, j), self.d(i, j), self.l(i, j + 1), self.d(i, j + 1));
                // d1/l1 > d2/l2 with positive denominators.
                if !(l1.is_positive() && l2.is_positive() && d1 * l2 > d2 * l1) {
                    out.push(Violation::SlopeOrder { i, j });
                }
            }
        }
        if !positively_spans(&self.assemble()) {
            out.push(Violation::NotSpanning);
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// The data obtained by exchanging source and sink: every block is
    /// reversed, the last row negated and `v+`, `v-` swap roles.
    pub fn mirrored(&self) -> Self {
        let l = self.l.iter().map(|b| b.iter().rev().cloned().collect()).collect();
        let d = self.d.iter().map(|b| b.iter().rev().map(|x| -x).collect()).collect();
        DefiningMatrix { kind: self.kind.mirrored(), l, d }
    }
}

/// A failed defining-matrix condition, with 1-based `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    NonPositiveL { i: usize, j: usize },
    NotCoprime { i: usize, j: usize },
    /// `d_ij / l_ij > d_i,j+1 / l_i,j+1` fails.
    SlopeOrder { i: usize, j: usize },
    NotSpanning,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        match self {
            Violation::NonPositiveL { i, j } => write!(f, "l[{i}][{j}] must be positive"),
            Violation::NotCoprime { i, j } => write!(f, "l[{i}][{j}] and d[{i}][{j}] are not coprime"),
            Violation::SlopeOrder { i, j } => {
                write!(f, "slopes in block {i} not strictly decreasing at positions {j}, {}", j + 1)
            }
            Violation::NotSpanning => f.write_str("columns do not generate the space as a convex cone"),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct DefiningRepr {
    #[serde(rename = "type")]
    kind: SurfaceType,
    l: Vec<Vec<JsonInt>>,
    d: Vec<Vec<JsonInt>>,
}

impl TryFrom<DefiningRepr> for DefiningMatrix {
    type Error = Error;

    fn try_from(r: DefiningRepr) -> Result<Self> {
        DefiningMatrix::new(r.kind, unwrap2(r.l), unwrap2(r.d))
    }
}

impl From<DefiningMatrix> for DefiningRepr {
    fn from(m: DefiningMatrix) -> Self {
        DefiningRepr { kind: m.kind, l: wrap2(&m.l), d: wrap2(&m.d) }
    }
}
