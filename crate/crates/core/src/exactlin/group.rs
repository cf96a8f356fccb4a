use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{snf, IntMatrix};
use crate::json::JsonInt;

/// A finitely generated abelian group `Z^rank x Z/t_1 x ... x Z/t_k`
/// with `t_1 | t_2 | ... | t_k` and every `t_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "GroupRepr", into = "GroupRepr")]
pub struct AbelianGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { rank, torsion: Vec::new() }
    }

    /// Normalizes an arbitrary list of cyclic orders (0 meaning `Z`) into
    /// invariant-factor form.
    pub fn from_cyclic_orders(orders: &[BigInt]) -> Self {
        let free = orders.iter().filter(|x| x.is_zero()).count();
        let finite: Vec<BigInt> = orders.iter().filter(|x| !x.is_zero()).cloned().collect();
        let n = finite.len();
        let s = snf(&IntMatrix::diagonal(n, n, &finite));
        let torsion = s.d.into_iter().filter(|x| *x > BigInt::one()).collect();
        AbelianGroup { rank: free, torsion }
    }

    /// Group from Smith invariants `d` of a presentation with `rows` generators.
    pub(crate) fn from_smith(rows: usize, d: &[BigInt]) -> Self {
        let nonzero = d.iter().filter(|x| !x.is_zero()).count();
        let torsion = d.iter().filter(|x| **x > BigInt::one()).cloned().collect();
        AbelianGroup { rank: rows - nonzero, torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion_order())
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

#[derive(Serialize, Deserialize)]
struct GroupRepr {
    rank: usize,
    torsion: Vec<JsonInt>,
}

impl From<GroupRepr> for AbelianGroup {
    fn from(g: GroupRepr) -> Self {
        let mut orders: Vec<BigInt> = g.torsion.into_iter().map(|x| x.0).collect();
        orders.extend(std::iter::repeat_n(BigInt::zero(), g.rank));
        AbelianGroup::from_cyclic_orders(&orders)
    }
}

impl From<AbelianGroup> for GroupRepr {
    fn from(g: AbelianGroup) -> Self {
        GroupRepr { rank: g.rank, torsion: g.torsion.into_iter().map(JsonInt).collect() }
    }
}
