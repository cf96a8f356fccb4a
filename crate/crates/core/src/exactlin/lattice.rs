use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{hnf, hnf_with_transform, snf, AbelianGroup, IntMatrix};

/// Basis of the integer kernel `{x : a x = 0}` as the columns of a
/// `cols x k` matrix, returned in column Hermite normal form.
///
/// The basis spans the kernel over `Z`, so the lattice it generates is saturated.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let h = hnf_with_transform(a);
    let rank = h.rank();
    let idx: Vec<usize> = (rank..a.cols()).collect();
    let k = h.v.select_columns(&idx);
    hnf(&k)
}

pub fn rank(a: &IntMatrix) -> usize {
    let h = hnf(a);
    (0..h.cols()).take_while(|&j| (0..h.rows()).any(|i| !h[(i, j)].is_zero())).count()
}

/// `Z^rows / im(a)`.
pub fn cokernel(a: &IntMatrix) -> AbelianGroup {
    let s = snf(a);
    AbelianGroup::from_smith(a.rows(), &s.d)
}

/// An integer solution `x` of `a x = b`, or `None` if there is none.
pub fn solve(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    assert_eq!(a.rows(), b.rows(), "solve: row mismatch");
    let s = snf(a);
    let c = &s.u * b;
    let r = s.rank();
    let mut y = IntMatrix::zeros(a.cols(), b.cols());
    for i in 0..a.rows() {
        for j in 0..b.cols() {
            let cij = &c[(i, j)];
            if i < r {
                let (q, rem) = cij.div_rem(&s.d[i]);
                if !rem.is_zero() {
                    return None;
                }
                y[(i, j)] = q;
            } else if !cij.is_zero() {
                return None;
            }
        }
    }
    Some(&s.v * &y)
}

/// Whether the columns of `a` span a saturated sublattice, i.e. every Smith
/// invariant of `a` equals one.
pub fn is_saturated(a: &IntMatrix) -> bool {
    snf(a).d.iter().all(|x| x.is_one())
}

/// All `|det|` of maximal square submatrices: column subsets of size `rows`
/// when `rows <= cols`, row subsets of size `cols` otherwise. Subsets are
/// visited in lexicographic order.
pub fn maximal_minors(a: &IntMatrix) -> Vec<BigInt> {
    let (rows, cols) = a.shape();
    if rows <= cols {
        (0..cols).combinations(rows).map(|c| a.select_columns(&c).determinant().abs()).collect()
    } else {
        (0..rows).combinations(cols).map(|c| a.select_rows(&c).determinant().abs()).collect()
    }
}

/// gcd of all maximal minors, read off the Smith form: the product of the
/// invariant factors when `a` has full rank, zero otherwise.
pub fn gcd_maximal_minors(a: &IntMatrix) -> BigInt {
    let s = snf(a);
    if s.d.iter().any(|x| x.is_zero()) {
        return BigInt::zero();
    }
    s.d.iter().product()
}

pub fn gcd_all(values: &[BigInt]) -> BigInt {
    values.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn running() -> IntMatrix {
        IntMatrix::from_rows(&[[-1, -1, 8, 0], [-1, -1, 0, 4], [-1, -2, 7, 3]])
    }

    fn running_hat() -> IntMatrix {
        IntMatrix::from_rows(&[[1, -1, 0, 0], [-1, 2, 0, 0], [0, -1, 8, 0], [0, -1, 0, 4], [0, -2, 7, 3]])
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&IntMatrix::from_rows(&[[1, 1]]));
        assert_eq!(k.shape(), (2, 1));
        assert_eq!(k.column(0), ints(&[1, -1]));
        assert_eq!(kernel_basis(&IntMatrix::identity(3)).shape(), (3, 0));
        let w = kernel_basis(&running());
        assert_eq!(w.column(0), ints(&[3, 5, 1, 2]));
    }

    #[test]
    fn cokernel_examples() {
        let g = cokernel(&running().transpose());
        assert_eq!(g.rank, 1);
        assert_eq!(g.torsion, ints(&[4]));
        assert!(cokernel(&IntMatrix::identity(4)).is_trivial());
    }

    #[test]
    fn minors_of_running_example() {
        assert_eq!(maximal_minors(&running()), ints(&[8, 4, 20, 12]));
        assert_eq!(gcd_maximal_minors(&running()), BigInt::from(4));
        assert_eq!(maximal_minors(&IntMatrix::identity(2)), ints(&[1]));
        assert_eq!(gcd_maximal_minors(&IntMatrix::identity(3)), BigInt::one());
        let mut hat = maximal_minors(&running_hat());
        hat.sort();
        assert_eq!(hat, ints(&[12, 12, 24, 28, 32]));
        assert_eq!(gcd_maximal_minors(&running_hat()), BigInt::from(4));
    }

    #[test]
    fn solve_round_trip() {
        let a = IntMatrix::from_rows(&[[2, 0], [0, 3]]);
        let b = IntMatrix::from_rows(&[[4], [9]]);
        assert_eq!(solve(&a, &b).unwrap(), IntMatrix::from_rows(&[[2], [3]]));
        assert!(solve(&a, &IntMatrix::from_rows(&[[1], [0]])).is_none());
        assert_eq!(rank(&running()), 3);
    }
}
