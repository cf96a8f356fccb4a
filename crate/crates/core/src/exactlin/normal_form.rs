use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::IntMatrix;

/// Column-style Hermite normal form together with the unimodular transform `v`
/// such that `a * v == h`.
#[derive(Clone, Debug)]
pub struct HermiteForm {
    pub h: IntMatrix,
    pub v: IntMatrix,
    /// `(row, column)` of every pivot, in increasing order.
    pub pivots: Vec<(usize, usize)>,
}

impl HermiteForm {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Column-style Hermite normal form: the canonical representative of `a`
/// under right multiplication by unimodular matrices.
///
/// The result is lower triangular in column echelon form. The `k`-th pivot
/// sits in column `k`, is positive, and every entry to the left of a pivot in
/// its row lies in `[0, pivot)`. Columns after the last pivot are zero.
pub fn hnf(a: &IntMatrix) -> IntMatrix {
    hermite(a, false).h
}

pub fn hnf_with_transform(a: &IntMatrix) -> HermiteForm {
    hermite(a, true)
}

fn hermite(a: &IntMatrix, track: bool) -> HermiteForm {
    let (rows, cols) = a.shape();
    let mut h = a.clone();
    let mut v = if track { IntMatrix::identity(cols) } else { IntMatrix::zeros(0, cols) };
    let mut pivots = Vec::new();
    let mut pc = 0;
    for i in 0..rows {
        if pc == cols {
            break;
        }
        // Gather the gcd of h[i][pc..] into column pc.
        let start = match (pc..cols).find(|&j| !h[(i, j)].is_zero()) {
            Some(j) => j,
            None => continue,
        };
        if start != pc {
            h.swap_cols(pc, start);
            if track {
                v.swap_cols(pc, start);
            }
        }
        for k in pc + 1..cols {
            if h[(i, k)].is_zero() {
                continue;
            }
            let x = h[(i, pc)].clone();
            let y = h[(i, k)].clone();
            if (&y % &x).is_zero() {
                let q = &y / &x;
                h.add_col_multiple(k, pc, &-&q);
                if track {
                    v.add_col_multiple(k, pc, &-q);
                }
                continue;
            }
            let e = x.extended_gcd(&y);
            let (s, t) = (e.x, e.y);
            let b = -(&y / &e.gcd);
            let d = &x / &e.gcd;
            h.combine_cols(pc, k, &s, &b, &t, &d);
            if track {
                v.combine_cols(pc, k, &s, &b, &t, &d);
            }
        }
        if h[(i, pc)].is_negative() {
            h.negate_col(pc);
            if track {
                v.negate_col(pc);
            }
        }
        let p = h[(i, pc)].clone();
        for k in 0..pc {
            let q = h[(i, k)].div_floor(&p);
            if !q.is_zero() {
                h.add_col_multiple(k, pc, &-&q);
                if track {
                    v.add_col_multiple(k, pc, &-q);
                }
            }
        }
        pivots.push((i, pc));
        pc += 1;
    }
    HermiteForm { h, v, pivots }
}

/// Smith normal form `u * a * v == diag(d)` with `d[0] | d[1] | ...`.
#[derive(Clone, Debug, Serialize)]
pub struct SmithForm {
    /// The `min(rows, cols)` diagonal entries, nonnegative, each dividing the next
    /// (trailing zeros last).
    #[serde(serialize_with = "crate::json::ser::vec")]
    pub d: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.d.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn diagonal_matrix(&self) -> IntMatrix {
        IntMatrix::diagonal(self.u.rows(), self.v.rows(), &self.d)
    }
}

/// Smith normal form with minimal-absolute-value pivoting.
pub fn snf(a: &IntMatrix) -> SmithForm {
    let (rows, cols) = a.shape();
    let mut m = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let k = rows.min(cols);
    for t in 0..k {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = &m[(i, j)];
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.abs() < m[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return finish(m, u, v, k);
            };
            m.swap_rows(t, bi);
            u.swap_rows(t, bi);
            m.swap_cols(t, bj);
            v.swap_cols(t, bj);

            let p = m[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if m[(i, t)].is_zero() {
                    continue;
                }
                let q = &m[(i, t)] / &p;
                m.add_row_multiple(i, t, &-&q);
                u.add_row_multiple(i, t, &-q);
                clean &= m[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if m[(t, j)].is_zero() {
                    continue;
                }
                let q = &m[(t, j)] / &p;
                m.add_col_multiple(j, t, &-&q);
                v.add_col_multiple(j, t, &-q);
                clean &= m[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&m[(i, j)] % &p).is_zero()));
            match offender {
                Some(i) => {
                    m.add_row_multiple(t, i, &BigInt::one());
                    u.add_row_multiple(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if m[(t, t)].is_negative() {
            m.negate_row(t);
            u.negate_row(t);
        }
    }
    finish(m, u, v, k)
}

fn finish(m: IntMatrix, u: IntMatrix, v: IntMatrix, k: usize) -> SmithForm {
    let d = (0..k).map(|i| m[(i, i)].abs()).collect::<Vec<_>>();
    debug_assert!(d.windows(2).all(|w| w[0].is_zero() && w[1].is_zero() || (!w[0].is_zero() && (&w[1] % &w[0]).is_zero())));
    SmithForm { d, u, v }
}
