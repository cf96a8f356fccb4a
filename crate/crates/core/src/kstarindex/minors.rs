//! The structured maximal minors of a defining matrix and of `P^`.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::hat::{hat_system_explicit, HatCol, HatRow, HatSystem};
use crate::defmat::DefiningMatrix;
use crate::exactlin::{gcd_all, gcd_maximal_minors, maximal_minors, IntMatrix};
use crate::{Error, Result};

/// `mu(j_0, ..., j_r) = sum_{i0} d_{i0 j_i0} prod_{i != i0} l_{i j_i}`, 1-based `j`.
pub fn mu(dm: &DefiningMatrix, js: &[usize]) -> Result<BigInt> {
    if js.len() != dm.r() + 1 {
        return Err(Error::OutOfRange(format!("expected {} indices, got {}", dm.r() + 1, js.len())));
    }
    for (i, &j) in js.iter().enumerate() {
        check_index(dm, i, j)?;
    }
    let mut sum = BigInt::zero();
    for i0 in 0..js.len() {
        let mut term = dm.d(i0, js[i0]).clone();
        for (i, &j) in js.iter().enumerate() {
            if i != i0 {
                term *= dm.l(i, j);
            }
        }
        sum += term;
    }
    Ok(sum)
}

pub fn mu_hat(dm: &DefiningMatrix) -> BigInt {
    mu(dm, &dm.block_lens()).expect("last indices are in range")
}

/// `nu(i, j, j') = l_ij d_ij' - l_ij' d_ij`, 1-based `j`, `j'`.
pub fn nu(dm: &DefiningMatrix, i: usize, j: usize, j2: usize) -> Result<BigInt> {
    if i > dm.r() {
        return Err(Error::OutOfRange(format!("block {i} of {}", dm.r() + 1)));
    }
    check_index(dm, i, j)?;
    check_index(dm, i, j2)?;
    Ok(dm.l(i, j) * dm.d(i, j2) - dm.l(i, j2) * dm.d(i, j))
}

pub fn nu_hat(dm: &DefiningMatrix, i: usize, j: usize) -> Result<BigInt> {
    if i > dm.r() {
        return Err(Error::OutOfRange(format!("block {i} of {}", dm.r() + 1)));
    }
    nu(dm, i, j, dm.block_len(i))
}

fn check_index(dm: &DefiningMatrix, i: usize, j: usize) -> Result<()> {
    if j == 0 || j > dm.block_len(i) {
        return Err(Error::OutOfRange(format!("index {j} in block {i} of length {}", dm.block_len(i))));
    }
    Ok(())
}

/// All index tuples `(j_i)` with `j_i` in `1..=n_i` for the blocks in `blocks`.
fn index_tuples(dm: &DefiningMatrix, blocks: &[usize]) -> Vec<Vec<usize>> {
    blocks.iter().map(|&i| 1..=dm.block_len(i)).multi_cartesian_product().collect()
}

/// The generating subset `M'(P)` of the maximal minors, as sorted distinct
/// nonzero values.
pub fn m_prime(dm: &DefiningMatrix) -> Vec<BigInt> {
    let r = dm.r();
    let mut out = BTreeSet::new();
    let p_type = dm.kind().has_plus() || dm.kind().has_minus();
    if !p_type {
        out.insert(mu_hat(dm).abs());
    }
    for i1 in 0..=r {
        if p_type {
            let others: Vec<usize> = (0..=r).filter(|&i| i != i1).collect();
            for js in index_tuples(dm, &others) {
                out.insert(others.iter().zip(&js).map(|(&i, &j)| dm.l(i, j)).product::<BigInt>());
            }
            continue;
        }
        for i0 in (0..=r).filter(|&i| i != i1) {
            let others: Vec<usize> = (0..=r).filter(|&i| i != i0 && i != i1).collect();
            for j0 in 1..=dm.block_len(i0) {
                let nh = nu_hat(dm, i0, j0).expect("in range").abs();
                for js in index_tuples(dm, &others) {
                    let prod: BigInt = others.iter().zip(&js).map(|(&i, &j)| dm.l(i, j)).product();
                    out.insert(&nh * prod);
                }
            }
        }
    }
    out.remove(&BigInt::zero());
    out.into_iter().collect()
}

/// Above this many subsets the full multiset `M(P^)` is not materialized.
pub const PHAT_MULTISET_LIMIT: u64 = 1 << 17;

#[derive(Clone, Debug, Serialize)]
pub struct MinorSets {
    /// Nonzero maximal minors of `P`, column subsets in lexicographic order.
    #[serde(serialize_with = "crate::json::ser::vec")]
    pub m_p: Vec<BigInt>,
    #[serde(serialize_with = "crate::json::ser::vec")]
    pub m_prime_p: Vec<BigInt>,
    #[serde(serialize_with = "crate::json::ser::int")]
    pub mu_hat: BigInt,
    /// `nu_hat[i][j - 1] = nu^(i, j)`.
    #[serde(serialize_with = "crate::json::ser::vec2")]
    pub nu_hat: Vec<Vec<BigInt>>,
    /// Nonzero maximal minors of `P^` in increasing order, unless there are
    /// more than [`PHAT_MULTISET_LIMIT`] of them.
    #[serde(serialize_with = "crate::json::ser::opt_vec")]
    pub m_phat: Option<Vec<BigInt>>,
    /// Distinct nonzero reduced minors of `P^`, increasing.
    #[serde(serialize_with = "crate::json::ser::vec")]
    pub m_red_phat: Vec<BigInt>,
    #[serde(serialize_with = "crate::json::ser::int")]
    pub gcd_m_p: BigInt,
    #[serde(serialize_with = "crate::json::ser::int")]
    pub gcd_m_prime_p: BigInt,
    /// Read off the Smith form of `P^`.
    #[serde(serialize_with = "crate::json::ser::int")]
    pub gcd_m_phat: BigInt,
    #[serde(serialize_with = "crate::json::ser::int")]
    pub gcd_m_red_phat: BigInt,
}

pub fn minor_sets(dm: &DefiningMatrix) -> MinorSets {
    let p = dm.assemble();
    let m_p: Vec<BigInt> = maximal_minors(&p).into_iter().filter(|x| !x.is_zero()).collect();
    let m_prime_p = m_prime(dm);
    let nu_hat_table = (0..=dm.r())
        .map(|i| (1..=dm.block_len(i)).map(|j| nu_hat(dm, i, j).expect("in range")).collect())
        .collect();
    let hat = hat_system_explicit(dm);
    let reduced = reduced_minors(dm, &hat);
    MinorSets {
        gcd_m_p: gcd_all(&m_p),
        gcd_m_prime_p: gcd_all(&m_prime_p),
        gcd_m_phat: gcd_maximal_minors(&hat.phat),
        gcd_m_red_phat: gcd_all(&reduced.distinct),
        m_p,
        m_prime_p,
        mu_hat: mu_hat(dm),
        nu_hat: nu_hat_table,
        m_phat: reduced.full,
        m_red_phat: reduced.distinct,
    }
}

/// Rows `e^_ij`, `u^_ij` paired up, with the column of `f^_ij`.
pub(crate) struct Pair {
    pub i: usize,
    pub j: usize,
    pub e_row: usize,
    pub u_row: usize,
    pub col: usize,
}

pub(crate) fn pairs(hat: &HatSystem) -> Vec<Pair> {
    let find_row = |want: HatRow| hat.rows.iter().position(|&x| x == want).expect("row present");
    hat.rows
        .iter()
        .filter_map(|row| match *row {
            HatRow::E(i, j) => Some(Pair {
                i,
                j,
                e_row: find_row(HatRow::E(i, j)),
                u_row: find_row(HatRow::U(i, j)),
                col: hat.cols.iter().position(|&c| c == HatCol::F(i, j)).expect("column present"),
            }),
            _ => None,
        })
        .collect()
}

/// The reduced matrix of `P^` for a row subset `a`: rows and columns of
/// pairs meeting `a` in exactly one row are removed.
pub fn reduced_submatrix(hat: &HatSystem, a: &[usize]) -> (IntMatrix, Vec<(usize, usize, bool)>) {
    let mut drop_rows = Vec::new();
    let mut drop_cols = Vec::new();
    let mut singular = Vec::new();
    for p in pairs(hat) {
        let (has_e, has_u) = (a.contains(&p.e_row), a.contains(&p.u_row));
        if has_e != has_u {
            drop_rows.push(if has_e { p.e_row } else { p.u_row });
            drop_cols.push(p.col);
            singular.push((p.i, p.j, has_e));
        }
    }
    let rows: Vec<usize> = a.iter().copied().filter(|x| !drop_rows.contains(x)).collect();
    let cols: Vec<usize> = (0..hat.phat.cols()).filter(|x| !drop_cols.contains(x)).collect();
    (hat.phat.select_rows(&rows).select_columns(&cols), singular)
}

struct Reduced {
    distinct: Vec<BigInt>,
    full: Option<Vec<BigInt>>,
}

/// Enumerates the row subsets of `P^` meeting every pair. Subsets missing
/// a pair entirely have a zero column in both the full and the reduced
/// matrix. The reduced determinant only depends on which pairs are taken
/// completely and on the remaining rows, so it is computed once per such
/// choice and multiplied out over the single-row choices.
fn reduced_minors(dm: &DefiningMatrix, hat: &HatSystem) -> Reduced {
    let pairs = pairs(hat);
    let paired: BTreeSet<usize> = pairs.iter().flat_map(|p| [p.e_row, p.u_row]).collect();
    let others: Vec<usize> = (0..hat.phat.rows()).filter(|x| !paired.contains(x)).collect();
    let size = hat.phat.cols();
    let np = pairs.len();
    let mut distinct = BTreeSet::new();
    let mut configs: Vec<(Vec<usize>, BigInt)> = Vec::new();
    for k in 0..=np {
        let Some(s) = size.checked_sub(np + k) else { break };
        if s > others.len() {
            continue;
        }
        for both in (0..np).combinations(k) {
            for extra in others.iter().copied().combinations(s) {
                let mut rows: Vec<usize> = extra.clone();
                for &b in &both {
                    rows.extend([pairs[b].e_row, pairs[b].u_row]);
                }
                rows.sort_unstable();
                let cols: Vec<usize> = (0..size)
                    .filter(|&c| pairs.iter().enumerate().all(|(b, p)| p.col != c || both.contains(&b)))
                    .collect();
                let det = hat.phat.select_rows(&rows).select_columns(&cols).determinant().abs();
                if !det.is_zero() {
                    distinct.insert(det.clone());
                    configs.push((both.clone(), det));
                }
            }
        }
    }
    let count: u64 = configs.iter().map(|(both, _)| 1u64 << (np - both.len()).min(63)).sum();
    let full = (count <= PHAT_MULTISET_LIMIT).then(|| {
        let mut all = Vec::new();
        for (both, det) in &configs {
            let singles: Vec<&Pair> = pairs.iter().enumerate().filter(|(b, _)| !both.contains(b)).map(|(_, p)| p).collect();
            let mut values = vec![det.clone()];
            for p in singles {
                let (l, d) = (dm.l(p.i, p.j).abs(), dm.d(p.i, p.j).abs());
                values = values.iter().flat_map(|v| [v * &l, v * &d]).collect();
            }
            all.extend(values.into_iter().filter(|v| !v.is_zero()));
        }
        all.sort();
        all
    });
    Reduced { distinct: distinct.into_iter().collect(), full }
}
