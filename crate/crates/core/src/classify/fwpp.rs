//! Fake weighted projective planes of a given Picard index.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::defmat::Fan;
use crate::exactlin::{hnf, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FwppRecord {
    /// Order of the torsion part of the class group.
    pub n: u64,
    pub w: [u64; 3],
    pub x: u64,
    /// The normal form `[[1, x, -c], [0, n w2, -n w1]]` with `c = (w0 + x w1) / w2`.
    pub p: IntMatrix,
    #[serde(serialize_with = "crate::json::ser::vec")]
    pub canonical_key: Vec<BigInt>,
}

impl FwppRecord {
    pub fn picard_index(&self) -> u64 {
        self.n * self.n * self.w.iter().product::<u64>()
    }

    /// `n w_i`, the order of the local class group at the fixed point
    /// opposite to the `i`-th ray.
    pub fn local_orders(&self) -> [u64; 3] {
        self.w.map(|w| self.n * w)
    }

    /// The complete fan with the columns of `p` as rays.
    pub fn fan(&self) -> Fan {
        Fan::from_columns(&self.p, vec![vec![1, 2], vec![0, 2], vec![0, 1]]).expect("three primitive rays in the plane")
    }
}

/// Minimum over the six column orders of the Hermite form of the rows of `p`.
pub fn fwpp_key(p: &IntMatrix) -> Vec<BigInt> {
    (0..3)
        .permutations(3)
        .map(|s| hnf(&p.select_columns(&s).transpose()).entries().to_vec())
        .min()
        .expect("nonempty")
}

/// One record per isomorphy class of fake weighted projective planes with
/// Picard index `iota`, in increasing key order.
pub fn classify_fwpp(iota: u64) -> Vec<FwppRecord> {
    assert!(iota >= 1, "Picard index must be positive");
    let mut found: BTreeMap<Vec<BigInt>, FwppRecord> = BTreeMap::new();
    for n in (1..).take_while(|n| n * n <= iota) {
        if !iota.is_multiple_of(n * n) {
            continue;
        }
        let rest = iota / (n * n);
        for w0 in divisors(rest) {
            for w1 in divisors(rest / w0) {
                let w2 = rest / w0 / w1;
                if w0.gcd(&w1) != 1 || w0.gcd(&w2) != 1 || w1.gcd(&w2) != 1 {
                    continue;
                }
                for x in 0..n * w2 {
                    if x.gcd(&(n * w2)) != 1 || (w0 + x * w1) % w2 != 0 {
                        continue;
                    }
                    let c = (w0 + x * w1) / w2;
                    // The third ray must be primitive.
                    if c.gcd(&(n * w1)) != 1 {
                        continue;
                    }
                    let p = IntMatrix::from_rows(&[[1, x as i64, -(c as i64)], [0, (n * w2) as i64, -((n * w1) as i64)]]);
                    let key = fwpp_key(&p);
                    found.entry(key.clone()).or_insert(FwppRecord { n, w: [w0, w1, w2], x, p, canonical_key: key });
                }
            }
        }
    }
    found.into_values().collect()
}

pub(crate) fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    for d in (1..).take_while(|d| d * d <= n) {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
    }
    small.extend(large.into_iter().rev());
    small
}
