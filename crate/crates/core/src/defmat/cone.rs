//! Exact test whether finitely many integer vectors generate the whole space
//! as a convex cone, by Fourier–Motzkin elimination over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactlin::{rank, IntMatrix};

/// An inequality `coeffs . y >= rhs`, kept primitive over the integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Ineq {
    coeffs: Vec<BigInt>,
    rhs: BigInt,
}

impl Ineq {
    fn normalized(coeffs: Vec<BigInt>, rhs: BigInt) -> Self {
        let g = coeffs.iter().fold(rhs.abs(), |g, c| g.gcd(c));
        if g.is_zero() || g.is_one() {
            return Ineq { coeffs, rhs };
        }
        Ineq { coeffs: coeffs.into_iter().map(|c| c / &g).collect(), rhs: rhs / &g }
    }
}

/// Whether the system `a_k . y >= b_k` has a rational solution.
fn feasible(mut system: Vec<Ineq>, vars: usize) -> bool {
    for t in 0..vars {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut next = Vec::new();
        for q in system {
            match q.coeffs[t].sign() {
                num_bigint::Sign::Plus => pos.push(q),
                num_bigint::Sign::Minus => neg.push(q),
                num_bigint::Sign::NoSign => next.push(q),
            }
        }
        for p in &pos {
            for q in &neg {
                let a = -&q.coeffs[t];
                let b = &p.coeffs[t];
                let coeffs = p.coeffs.iter().zip(&q.coeffs).map(|(x, y)| &a * x + b * y).collect();
                let rhs = &a * &p.rhs + b * &q.rhs;
                next.push(Ineq::normalized(coeffs, rhs));
            }
        }
        // Inequalities without variables are decided immediately.
        let mut kept = Vec::with_capacity(next.len());
        for q in next {
            if q.coeffs.iter().all(|c| c.is_zero()) {
                if q.rhs.is_positive() {
                    return false;
                }
            } else {
                kept.push(q);
            }
        }
        kept.sort();
        kept.dedup();
        system = kept;
    }
    system.iter().all(|q| !q.rhs.is_positive())
}

/// Whether the columns of `p` generate `Q^rows` as a convex cone.
///
/// They do unless the rank is deficient or some functional `y` is
/// nonnegative on every column and positive on their sum.
pub fn positively_spans(p: &IntMatrix) -> bool {
    let dim = p.rows();
    if rank(p) < dim {
        return false;
    }
    if dim == 0 {
        return true;
    }
    let mut system: Vec<Ineq> = p.columns().into_iter().map(|c| Ineq::normalized(c, BigInt::zero())).collect();
    let sum = (0..dim).map(|i| p.row(i).iter().sum()).collect();
    system.push(Ineq::normalized(sum, BigInt::one()));
    !feasible(system, dim)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spanning_examples() {
        let p2 = IntMatrix::from_rows(&[[1, 0, -1], [0, 1, -1]]);
        assert!(positively_spans(&p2));
        let half = IntMatrix::from_rows(&[[1, 0, -1], [0, 1, 0]]);
        assert!(!positively_spans(&half));
        let flat = IntMatrix::from_rows(&[[1, -1], [0, 0]]);
        assert!(!positively_spans(&flat));
        let running = IntMatrix::from_rows(&[[-1, -1, 8, 0], [-1, -1, 0, 4], [-1, -2, 7, 3]]);
        assert!(positively_spans(&running));
    }
}
