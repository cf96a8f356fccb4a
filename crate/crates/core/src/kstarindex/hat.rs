//! The gluing maps of the ambient fan of a K*-surface in explicit bases.
//!
//! `alpha: (+)N_sigma -> N`, `beta: (+)F_sigma -> F`, their kernels `gamma`,
//! `delta` and the induced map `P^` with `gamma P^ = (+)P_sigma delta`, all
//! written down entry by entry from the defining data instead of being
//! computed by normal forms.

use std::collections::HashMap;
use std::hash::Hash;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::defmat::DefiningMatrix;
use crate::exactlin::IntMatrix;

/// Basis vectors of `(+)N_sigma`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum LocalN {
    /// `e_i^+` of `N_sigma+`, `1 <= i <= r`.
    EPlus(usize),
    UPlus,
    EMinus(usize),
    UMinus,
    /// `e_ij`, `u_ij` of `N_tau_ij`.
    E(usize, usize),
    U(usize, usize),
}

/// Basis vectors `f_ij^+`, `f_ij^-` of `(+)F_sigma`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum LocalF {
    Plus(usize, usize),
    Minus(usize, usize),
}

/// Basis vectors of the kernel lattice of `alpha`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HatRow {
    /// `e^_ij`, paired with [`HatRow::U`] of the same index.
    E(usize, usize),
    U(usize, usize),
    /// `e~_i`, `1 <= i <= r`, type ee.
    ETilde(usize),
    /// `u~`, type ee.
    UTilde,
    /// `u~_i`, `1 <= i <= r`, type pp.
    UTildeAt(usize),
    /// `e~`, type pp.
    ETildeSum,
}

/// Basis vectors of the kernel lattice of `beta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HatCol {
    /// `f^_ij`, `1 <= j <= n_i`.
    F(usize, usize),
    /// `f^_i^-`, `1 <= i <= r`, types pe and pp.
    FMinus(usize),
    /// `f^_i^+`, `1 <= i <= r`, types ep and pp.
    FPlus(usize),
}

/// The explicit matrices together with the labels of the rows and columns
/// of `P^`.
#[derive(Clone, Debug, Serialize)]
pub struct HatSystem {
    pub alpha: IntMatrix,
    pub beta: IntMatrix,
    pub p_blocks: IntMatrix,
    pub gamma: IntMatrix,
    pub delta: IntMatrix,
    pub phat: IntMatrix,
    pub rows: Vec<HatRow>,
    pub cols: Vec<HatCol>,
}

struct Basis<L> {
    labels: Vec<L>,
    index: HashMap<L, usize>,
}

impl<L: Copy + Eq + Hash + std::fmt::Debug> Basis<L> {
    fn new(labels: Vec<L>) -> Self {
        let index = labels.iter().enumerate().map(|(k, &l)| (l, k)).collect();
        Basis { labels, index }
    }

    fn len(&self) -> usize {
        self.labels.len()
    }

    fn vector(&self, terms: &[(L, BigInt)]) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.len()];
        for (l, c) in terms {
            let k = *self.index.get(l).unwrap_or_else(|| panic!("{l:?} is not a basis vector"));
            v[k] += c;
        }
        v
    }
}

type Terms<L> = Vec<(L, BigInt)>;

fn one() -> BigInt {
    BigInt::one()
}

fn scaled<L: Copy>(terms: &Terms<L>, c: &BigInt) -> Terms<L> {
    terms.iter().map(|(l, x)| (*l, x * c)).collect()
}

fn minus<L: Copy>(a: Terms<L>, b: &Terms<L>) -> Terms<L> {
    let mut out = a;
    out.extend(b.iter().map(|(l, x)| (*l, -x)));
    out
}

/// `e_i` of a full-dimensional cone basis, with `e_0 = -(e_1 + ... + e_r)`.
fn e_full(r: usize, i: usize, make: fn(usize) -> LocalN) -> Terms<LocalN> {
    if i == 0 {
        (1..=r).map(|k| (make(k), -one())).collect()
    } else {
        vec![(make(i), one())]
    }
}

pub fn hat_system_explicit(dm: &DefiningMatrix) -> HatSystem {
    let r = dm.r();
    let kind = dm.kind();
    let (has_plus, has_minus) = (kind.has_plus(), kind.has_minus());
    let nlen = |i: usize| dm.block_len(i);

    // Lattice bases, ordered cone by cone: source cones, interior, sink cones.
    let mut n_labels = Vec::new();
    let mut f_labels = Vec::new();
    if has_plus {
        for i in 0..=r {
            n_labels.extend([LocalN::E(i, 0), LocalN::U(i, 0)]);
            f_labels.extend([LocalF::Minus(i, 0), LocalF::Plus(i, 1)]);
        }
    } else {
        n_labels.extend((1..=r).map(LocalN::EPlus));
        n_labels.push(LocalN::UPlus);
        f_labels.extend((0..=r).map(|i| LocalF::Plus(i, 1)));
    }
    for i in 0..=r {
        for j in 1..nlen(i) {
            n_labels.extend([LocalN::E(i, j), LocalN::U(i, j)]);
            f_labels.extend([LocalF::Minus(i, j), LocalF::Plus(i, j + 1)]);
        }
    }
    if has_minus {
        for i in 0..=r {
            n_labels.extend([LocalN::E(i, nlen(i)), LocalN::U(i, nlen(i))]);
            f_labels.extend([LocalF::Minus(i, nlen(i)), LocalF::Plus(i, nlen(i) + 1)]);
        }
    } else {
        n_labels.extend((1..=r).map(LocalN::EMinus));
        n_labels.push(LocalN::UMinus);
        f_labels.extend((0..=r).map(|i| LocalF::Minus(i, nlen(i))));
    }
    let nb = Basis::new(n_labels);
    let fb = Basis::new(f_labels);

    // alpha: every basis vector to its image in N = Z^{r+1}.
    let rows = r + 1;
    let unit = |i: usize| -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); rows];
        if i == 0 {
            for x in v.iter_mut().take(r) {
                *x = -one();
            }
        } else {
            v[i - 1] = one();
        }
        v
    };
    let u_vec = || -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); rows];
        v[r] = one();
        v
    };
    let alpha_cols: Vec<Vec<BigInt>> = nb
        .labels
        .iter()
        .map(|l| match *l {
            LocalN::EPlus(i) | LocalN::EMinus(i) | LocalN::E(i, _) => unit(i),
            LocalN::UPlus | LocalN::UMinus | LocalN::U(..) => u_vec(),
        })
        .collect();
    let alpha = IntMatrix::from_columns(rows, &alpha_cols);

    // beta: f_ij^± to the generator of v_ij, with v_i0 = v+ and v_i,n_i+1 = v-.
    let n_cols = dm.n() + dm.m();
    let column = |i: usize, j: usize| -> usize {
        if j == 0 {
            dm.plus_column().expect("v+")
        } else if j == nlen(i) + 1 {
            dm.minus_column().expect("v-")
        } else {
            dm.column_of(i, j)
        }
    };
    let beta_cols: Vec<Vec<BigInt>> = fb
        .labels
        .iter()
        .map(|l| {
            let (LocalF::Plus(i, j) | LocalF::Minus(i, j)) = *l;
            let mut c = vec![BigInt::zero(); n_cols];
            c[column(i, j)] = one();
            c
        })
        .collect();
    let beta = IntMatrix::from_columns(n_cols, &beta_cols);

    // Node k of the chain of block i: the source basis vector for k = 0,
    // the sink one for k = n_i, the interior tau basis otherwise.
    let e_node = |i: usize, k: usize| -> Terms<LocalN> {
        if k == 0 && !has_plus {
            e_full(r, i, LocalN::EPlus)
        } else if k == nlen(i) && !has_minus {
            e_full(r, i, LocalN::EMinus)
        } else {
            vec![(LocalN::E(i, k), one())]
        }
    };
    let u_node = |i: usize, k: usize| -> Terms<LocalN> {
        if k == 0 && !has_plus {
            vec![(LocalN::UPlus, one())]
        } else if k == nlen(i) && !has_minus {
            vec![(LocalN::UMinus, one())]
        } else {
            vec![(LocalN::U(i, k), one())]
        }
    };

    // (+)P_sigma: f_ij^+ lies in the cone ending at v_ij, f_ij^- in the
    // cone starting at v_ij.
    let image_in = |i: usize, j: usize, k: usize| -> Terms<LocalN> {
        if j == 0 {
            u_node(i, k)
        } else if j == nlen(i) + 1 {
            scaled(&u_node(i, k), &-one())
        } else {
            let mut t = scaled(&e_node(i, k), dm.l(i, j));
            t.extend(scaled(&u_node(i, k), dm.d(i, j)));
            t
        }
    };
    let p_cols: Vec<Vec<BigInt>> = fb
        .labels
        .iter()
        .map(|l| match *l {
            LocalF::Plus(i, j) => nb.vector(&image_in(i, j, j - 1)),
            LocalF::Minus(i, j) => nb.vector(&image_in(i, j, j)),
        })
        .collect();
    let p_blocks = IntMatrix::from_columns(nb.len(), &p_cols);

    // Kernel bases.
    let n_prime = |i: usize| if kind.has_plus() || kind.has_minus() { nlen(i) } else { nlen(i) - 1 };
    let mut hat_rows = Vec::new();
    for i in 0..=r {
        for j in 1..=n_prime(i) {
            hat_rows.extend([HatRow::E(i, j), HatRow::U(i, j)]);
        }
    }
    match (has_plus, has_minus) {
        (false, false) => {
            hat_rows.extend((1..=r).map(HatRow::ETilde));
            hat_rows.push(HatRow::UTilde);
        }
        (true, true) => {
            hat_rows.extend((1..=r).map(HatRow::UTildeAt));
            hat_rows.push(HatRow::ETildeSum);
        }
        _ => {}
    }
    let mut hat_cols = Vec::new();
    for i in 0..=r {
        hat_cols.extend((1..=nlen(i)).map(|j| HatCol::F(i, j)));
    }
    for i in 1..=r {
        if has_plus && has_minus {
            hat_cols.extend([HatCol::FPlus(i), HatCol::FMinus(i)]);
        } else if has_plus {
            hat_cols.push(HatCol::FMinus(i));
        } else if has_minus {
            hat_cols.push(HatCol::FPlus(i));
        }
    }
    let hb = Basis::new(hat_rows);

    let gamma_cols: Vec<Vec<BigInt>> = hb
        .labels
        .iter()
        .map(|l| {
            let terms = match *l {
                HatRow::E(i, j) => minus(e_node(i, j - 1), &e_node(i, j)),
                HatRow::U(i, j) => minus(u_node(i, j - 1), &u_node(i, j)),
                HatRow::ETilde(i) => minus(e_full(r, i, LocalN::EPlus), &e_full(r, i, LocalN::EMinus)),
                HatRow::UTilde => vec![(LocalN::UPlus, one()), (LocalN::UMinus, -one())],
                HatRow::UTildeAt(i) => vec![(LocalN::U(i, nlen(i)), one()), (LocalN::U(i - 1, nlen(i - 1)), -one())],
                HatRow::ETildeSum => (0..=r).map(|i| (LocalN::E(i, 0), one())).collect(),
            };
            nb.vector(&terms)
        })
        .collect();
    let gamma = IntMatrix::from_columns(nb.len(), &gamma_cols);

    let delta_cols: Vec<Vec<BigInt>> = hat_cols
        .iter()
        .map(|c| {
            let terms = match *c {
                HatCol::F(i, j) => vec![(LocalF::Plus(i, j), one()), (LocalF::Minus(i, j), -one())],
                HatCol::FMinus(i) => vec![(LocalF::Minus(i - 1, 0), one()), (LocalF::Minus(i, 0), -one())],
                HatCol::FPlus(i) => vec![
                    (LocalF::Plus(i - 1, nlen(i - 1) + 1), one()),
                    (LocalF::Plus(i, nlen(i) + 1), -one()),
                ],
            };
            fb.vector(&terms)
        })
        .collect();
    let delta = IntMatrix::from_columns(fb.len(), &delta_cols);

    // P^ column by column.
    let u_sum = |i: usize| -> Terms<HatRow> { (1..=n_prime(i)).map(|k| (HatRow::U(i, k), one())).collect() };
    let e_tilde = |i: usize| -> Terms<HatRow> {
        if i == 0 {
            (1..=r).map(|k| (HatRow::ETilde(k), -one())).collect()
        } else {
            vec![(HatRow::ETilde(i), one())]
        }
    };
    let phat_cols: Vec<Vec<BigInt>> = hat_cols
        .iter()
        .map(|c| {
            let terms = match *c {
                HatCol::F(i, j) if j <= n_prime(i) => {
                    vec![(HatRow::E(i, j), dm.l(i, j).clone()), (HatRow::U(i, j), dm.d(i, j).clone())]
                }
                HatCol::F(i, j) => {
                    // Last column of a block for type ee.
                    let e_sum: Terms<HatRow> = (1..j).map(|k| (HatRow::E(i, k), one())).collect();
                    let mut t = scaled(&minus(e_tilde(i), &e_sum), dm.l(i, j));
                    t.extend(scaled(&minus(vec![(HatRow::UTilde, one())], &u_sum(i)), dm.d(i, j)));
                    t
                }
                HatCol::FMinus(i) if has_minus => {
                    minus(minus(u_sum(i - 1), &u_sum(i)), &vec![(HatRow::UTildeAt(i), one())])
                }
                HatCol::FMinus(i) | HatCol::FPlus(i) if !(has_plus && has_minus) => minus(u_sum(i - 1), &u_sum(i)),
                HatCol::FPlus(i) => vec![(HatRow::UTildeAt(i), one())],
                HatCol::FMinus(_) => unreachable!(),
            };
            hb.vector(&terms)
        })
        .collect();
    let phat = IntMatrix::from_columns(hb.len(), &phat_cols);

    HatSystem { alpha, beta, p_blocks, gamma, delta, phat, rows: hb.labels, cols: hat_cols }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::defmat::SurfaceType;

    fn running() -> DefiningMatrix {
        DefiningMatrix::from_i64(SurfaceType::EE, &[&[1, 1], &[8], &[4]], &[&[-1, -2], &[7], &[3]]).unwrap()
    }

    #[test]
    fn running_example_matrices() {
        let h = hat_system_explicit(&running());
        assert_eq!(
            h.alpha,
            IntMatrix::from_rows(&[[1, 0, 0, -1, 0, 1, 0, 0], [0, 1, 0, -1, 0, 0, 1, 0], [0, 0, 1, 0, 1, 0, 0, 1]])
        );
        assert_eq!(
            h.beta,
            IntMatrix::from_rows(&[
                [1, 0, 0, 1, 0, 0, 0, 0],
                [0, 0, 0, 0, 1, 1, 0, 0],
                [0, 1, 0, 0, 0, 0, 1, 0],
                [0, 0, 1, 0, 0, 0, 0, 1]
            ])
        );
        assert_eq!(
            h.gamma,
            IntMatrix::from_rows(&[
                [-1, 0, 1, 0, 0],
                [-1, 0, 0, 1, 0],
                [0, 1, 0, 0, 1],
                [-1, 0, 0, 0, 0],
                [0, -1, 0, 0, 0],
                [0, 0, -1, 0, 0],
                [0, 0, 0, -1, 0],
                [0, 0, 0, 0, -1]
            ])
        );
        assert_eq!(
            h.delta,
            IntMatrix::from_rows(&[
                [1, 0, 0, 0],
                [0, 0, 1, 0],
                [0, 0, 0, 1],
                [-1, 0, 0, 0],
                [0, 1, 0, 0],
                [0, -1, 0, 0],
                [0, 0, -1, 0],
                [0, 0, 0, -1]
            ])
        );
        assert_eq!(
            h.phat,
            IntMatrix::from_rows(&[[1, -1, 0, 0], [-1, 2, 0, 0], [0, -1, 8, 0], [0, -1, 0, 4], [0, -2, 7, 3]])
        );
    }

    #[test]
    fn defining_identities_for_every_type() {
        let l: &[&[i64]] = &[&[1, 2, 1], &[3, 2], &[5]];
        let d: &[&[i64]] = &[&[2, 1, -1], &[1, -1], &[2]];
        for kind in [SurfaceType::EE, SurfaceType::PE, SurfaceType::EP, SurfaceType::PP] {
            let dm = DefiningMatrix::from_i64(kind, l, d).unwrap();
            let h = hat_system_explicit(&dm);
            let (n, m, r) = (dm.n() as i64, dm.m() as i64, dm.r() as i64);
            assert!((&h.alpha * &h.gamma).is_zero(), "{kind}");
            assert!((&h.beta * &h.delta).is_zero(), "{kind}");
            assert_eq!(&h.gamma * &h.phat, &h.p_blocks * &h.delta, "{kind}");
            assert_eq!(h.gamma.cols() as i64, 2 * n + (m - 1) * (r + 1), "{kind}");
            assert_eq!(h.delta.cols() as i64, n + m * r, "{kind}");
        }
    }
}
