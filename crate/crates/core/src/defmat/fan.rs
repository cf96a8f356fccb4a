use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{positively_spans, DefiningMatrix};
use crate::exactlin::{rank, IntMatrix};
use crate::json::{unwrap2, wrap2, JsonInt};
use crate::{Error, Result};

/// A fan given by its rays and maximal cones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FanRepr", into = "FanRepr")]
pub struct Fan {
    dim: usize,
    rays: Vec<Vec<BigInt>>,
    max_cones: Vec<Vec<usize>>,
}

impl Fan {
    /// Checks that rays are nonzero, primitive and of equal length, that cone
    /// indices are in range and that every ray lies in some maximal cone.
    pub fn new(rays: Vec<Vec<BigInt>>, max_cones: Vec<Vec<usize>>) -> Result<Self> {
        let dim = rays.first().map(Vec::len).ok_or_else(|| Error::Invalid("fan without rays".into()))?;
        let mut used = vec![false; rays.len()];
        for (k, ray) in rays.iter().enumerate() {
            if ray.len() != dim {
                return Err(Error::Invalid(format!("ray {k} has length {}, expected {dim}", ray.len())));
            }
            let g = ray.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            if g.is_zero() {
                return Err(Error::Invalid(format!("ray {k} is zero")));
            }
            if !g.is_one() {
                return Err(Error::Invalid(format!("ray {k} is not primitive")));
            }
        }
        for (c, cone) in max_cones.iter().enumerate() {
            if cone.is_empty() {
                return Err(Error::Invalid(format!("cone {c} is empty")));
            }
            for &k in cone {
                if k >= rays.len() {
                    return Err(Error::Invalid(format!("cone {c} refers to missing ray {k}")));
                }
                used[k] = true;
            }
        }
        if let Some(k) = used.iter().position(|u| !u) {
            return Err(Error::Invalid(format!("ray {k} lies in no maximal cone")));
        }
        Ok(Fan { dim, rays, max_cones })
    }

    /// Fan whose rays are the columns of `p`.
    pub fn from_columns(p: &IntMatrix, max_cones: Vec<Vec<usize>>) -> Result<Self> {
        Fan::new(p.columns(), max_cones)
    }

    pub fn from_i64(rays: &[&[i64]], max_cones: &[&[usize]]) -> Result<Self> {
        let rays = rays.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Fan::new(rays, max_cones.iter().map(|c| c.to_vec()).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    /// The `dim x #rays` matrix with the rays as columns.
    pub fn ray_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.dim, &self.rays)
    }

    /// The rays of one maximal cone as the columns of a matrix.
    pub fn cone_matrix(&self, cone: usize) -> IntMatrix {
        self.ray_matrix().select_columns(&self.max_cones[cone])
    }

    /// Rays generate the ambient vector space linearly (no torus factor).
    pub fn spans_linearly(&self) -> bool {
        rank(&self.ray_matrix()) == self.dim
    }

    /// Rays generate the ambient vector space as a convex cone.
    pub fn spans_as_cone(&self) -> bool {
        positively_spans(&self.ray_matrix())
    }

    pub fn is_simplicial(&self) -> bool {
        (0..self.max_cones.len()).all(|c| rank(&self.cone_matrix(c)) == self.max_cones[c].len())
    }

    /// Fan of the weighted projective space `P(w_0, ..., w_d)`: rays `v_i`
    /// are the primitive solution of `sum w_i v_i = 0` chosen as the last
    /// `d` rows of a unimodular completion, cones are all `d`-subsets.
    pub fn weighted_projective(weights: &[i64]) -> Result<Self> {
        let d = weights.len().checked_sub(1).filter(|&d| d >= 1).ok_or_else(|| Error::Invalid("need at least two weights".into()))?;
        let w = IntMatrix::from_rows(&[weights]);
        let g = weights.iter().fold(0i64, |g, x| g.gcd(x));
        if g != 1 || weights.iter().any(|&x| x <= 0) {
            return Err(Error::Invalid("weights must be positive with gcd 1".into()));
        }
        let k = crate::exactlin::kernel_basis(&w);
        let p = k.transpose();
        let cones = (0..=d).map(|skip| (0..=d).filter(|&i| i != skip).collect()).collect();
        Fan::from_columns(&p, cones)
    }
}

#[derive(Serialize, Deserialize)]
struct FanRepr {
    rays: Vec<Vec<JsonInt>>,
    max_cones: Vec<Vec<usize>>,
}

impl TryFrom<FanRepr> for Fan {
    type Error = Error;

    fn try_from(f: FanRepr) -> Result<Self> {
        Fan::new(unwrap2(f.rays), f.max_cones)
    }
}

impl From<Fan> for FanRepr {
    fn from(f: Fan) -> Self {
        FanRepr { rays: wrap2(&f.rays), max_cones: f.max_cones }
    }
}

/// Name of a maximal cone of the ambient fan of a defining matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConeLabel {
    SigmaPlus,
    SigmaMinus,
    /// `cone(v_ij, v_i,j+1)` with `v_i0 = v+` and `v_i,n_i+1 = v-`, `0 <= j <= n_i`.
    Tau { i: usize, j: usize },
}

impl fmt::Display for ConeLabel {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        match self {
            ConeLabel::SigmaPlus => f.write_str("sigma+"),
            ConeLabel::SigmaMinus => f.write_str("sigma-"),
            ConeLabel::Tau { i, j } => write!(f, "tau{i}{j}"),
        }
    }
}

/// Maximal cones of the ambient fan in their standard order: the source
/// cones (`sigma+` or all `tau_i0`), the interior `tau_ij` block by block,
/// then the sink cones (`sigma-` or all `tau_in_i`).
pub fn ambient_fan_labeled(dm: &DefiningMatrix) -> (Fan, Vec<ConeLabel>) {
    let r = dm.r();
    let mut labels = Vec::new();
    if dm.kind().has_plus() {
        labels.extend((0..=r).map(|i| ConeLabel::Tau { i, j: 0 }));
    } else {
        labels.push(ConeLabel::SigmaPlus);
    }
    for i in 0..=r {
        labels.extend((1..dm.block_len(i)).map(|j| ConeLabel::Tau { i, j }));
    }
    if dm.kind().has_minus() {
        labels.extend((0..=r).map(|i| ConeLabel::Tau { i, j: dm.block_len(i) }));
    } else {
        labels.push(ConeLabel::SigmaMinus);
    }
    // Column of v_ij with v_i0 = v+ and v_i,n_i+1 = v-.
    let col = |i: usize, j: usize| -> usize {
        if j == 0 {
            dm.plus_column().expect("v+ present")
        } else if j == dm.block_len(i) + 1 {
            dm.minus_column().expect("v- present")
        } else {
            dm.column_of(i, j)
        }
    };
    let cones = labels
        .iter()
        .map(|label| match *label {
            ConeLabel::SigmaPlus => (0..=r).map(|i| col(i, 1)).collect(),
            ConeLabel::SigmaMinus => (0..=r).map(|i| col(i, dm.block_len(i))).collect(),
            ConeLabel::Tau { i, j } => vec![col(i, j), col(i, j + 1)],
        })
        .collect();
    let fan = Fan::from_columns(&dm.assemble(), cones).expect("columns of a defining matrix are primitive");
    (fan, labels)
}

pub fn ambient_fan(dm: &DefiningMatrix) -> Fan {
    ambient_fan_labeled(dm).0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PointEnd {
    Source,
    Sink,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FixedPointKind {
    EllipticPlus,
    EllipticMinus,
    /// `x_ij` with `1 <= j <= n_i - 1`.
    Hyperbolic { i: usize, j: usize },
    /// `x_i0` at the source or `x_in_i` at the sink.
    Parabolic { i: usize, end: PointEnd },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FixedPoint {
    #[serde(flatten)]
    pub kind: FixedPointKind,
    /// Index of the maximal cone in the ambient fan.
    pub cone: usize,
}

/// One fixed point per maximal cone of the ambient fan.
pub fn fixed_points(dm: &DefiningMatrix) -> Vec<FixedPoint> {
    let (_, labels) = ambient_fan_labeled(dm);
    labels
        .iter()
        .enumerate()
        .map(|(cone, label)| {
            let kind = match *label {
                ConeLabel::SigmaPlus => FixedPointKind::EllipticPlus,
                ConeLabel::SigmaMinus => FixedPointKind::EllipticMinus,
                ConeLabel::Tau { i, j: 0 } => FixedPointKind::Parabolic { i, end: PointEnd::Source },
                ConeLabel::Tau { i, j } if j == dm.block_len(i) => FixedPointKind::Parabolic { i, end: PointEnd::Sink },
                ConeLabel::Tau { i, j } => FixedPointKind::Hyperbolic { i, j },
            };
            FixedPoint { kind, cone }
        })
        .collect()
}
