//! Brute-force oracles on machine integers, independent of the library's
//! normal forms.

#![allow(dead_code)]

use itertools::Itertools;
use kstar::IntMatrix;
use num_traits::ToPrimitive;
use rand::Rng;

pub type Mat = Vec<Vec<i128>>;

pub fn to_i128(a: &IntMatrix) -> Mat {
    a.to_rows().iter().map(|r| r.iter().map(|x| x.to_i128().expect("small entries")).collect()).collect()
}

pub fn from_i128(m: &Mat, cols: usize) -> IntMatrix {
    IntMatrix::from_big_rows(m.iter().map(|r| r.iter().map(|&x| x.into()).collect()).collect(), cols)
}

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Fraction-free elimination.
pub fn det(m: &Mat) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a = m.clone();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

pub fn submatrix(m: &Mat, rows: &[usize], cols: &[usize]) -> Mat {
    rows.iter().map(|&i| cols.iter().map(|&j| m[i][j]).collect()).collect()
}

/// `D_k`, the gcd of all `k x k` minors, for `k = 1..=min(rows, cols)`.
pub fn determinantal_divisors(m: &Mat, rows: usize, cols: usize) -> Vec<i128> {
    (1..=rows.min(cols))
        .map(|k| {
            (0..rows)
                .combinations(k)
                .cartesian_product((0..cols).combinations(k).collect_vec())
                .fold(0, |g, (r, c)| gcd(g, det(&submatrix(m, &r, &c))))
        })
        .collect()
}

/// gcd of the minors of size `min(rows, cols)`.
pub fn maximal_minor_gcd(m: &Mat, rows: usize, cols: usize) -> i128 {
    let k = rows.min(cols);
    (0..rows)
        .combinations(k)
        .cartesian_product((0..cols).combinations(k).collect_vec())
        .fold(0, |g, (r, c)| gcd(g, det(&submatrix(m, &r, &c))))
}

/// Smith invariants from the determinantal divisors.
pub fn smith_invariants(m: &Mat, rows: usize, cols: usize) -> Vec<i128> {
    let dk = determinantal_divisors(m, rows, cols);
    let mut out = Vec::new();
    let mut prev = 1;
    for &d in &dk {
        out.push(if d == 0 { 0 } else { d / prev });
        if d == 0 {
            prev = 0;
        } else {
            prev = d;
        }
    }
    out
}

pub fn rank(m: &Mat, rows: usize, cols: usize) -> usize {
    determinantal_divisors(m, rows, cols).iter().take_while(|&&d| d != 0).count()
}

pub fn mat_mul(a: &Mat, b: &Mat, inner: usize, cols: usize) -> Mat {
    a.iter().map(|r| (0..cols).map(|j| (0..inner).map(|k| r[k] * b[k][j]).sum()).collect()).collect()
}

/// Whether the columns `v_j` (each of length `dim`) generate `R^dim` as a
/// cone: the rank is full and `-sum v_j` is a nonnegative combination of
/// some basis among the columns (Caratheodory), checked by Cramer's rule.
pub fn positively_spans(cols: &[Vec<i128>], dim: usize) -> bool {
    let m: Mat = (0..dim).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    if rank(&m, dim, cols.len()) < dim {
        return false;
    }
    let target: Vec<i128> = (0..dim).map(|i| -cols.iter().map(|c| c[i]).sum::<i128>()).collect();
    (0..cols.len()).combinations(dim).any(|basis| {
        let b: Mat = (0..dim).map(|i| basis.iter().map(|&j| cols[j][i]).collect()).collect();
        let d = det(&b);
        if d == 0 {
            return false;
        }
        (0..dim).all(|k| {
            let mut bk = b.clone();
            for i in 0..dim {
                bk[i][k] = target[i];
            }
            det(&bk) * d.signum() >= 0
        })
    })
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect()).collect();
    IntMatrix::from_rows(&data)
}

/// Transform matrices can have large entries, so this uses the library
/// determinant, which is itself checked against [`det`].
pub fn is_unimodular(m: &IntMatrix) -> bool {
    m.determinant().magnitude() == &1u32.into()
}
