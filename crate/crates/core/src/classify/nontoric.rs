//! Non-toric log del Pezzo K*-surfaces of Picard number one with an
//! elliptic fixed point, by Picard index.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::fwpp::divisors;
use crate::defmat::{ambient_fan_labeled, ConeLabel, DefiningMatrix, SurfaceType};
use crate::exactlin::gcd_maximal_minors;
use crate::kstarindex::picard_index_formula;
use crate::toricpic::local_charts;
use crate::{Error, Result};

/// Singularity types of the elliptic fixed points: two elliptic points
/// (`eXeY`) or one elliptic point and a parabolic sink (`eXp`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum NontoricCase {
    #[serde(rename = "eAeA")]
    EAeA,
    #[serde(rename = "eAeD")]
    EAeD,
    #[serde(rename = "eAeE")]
    EAeE,
    #[serde(rename = "eDeD")]
    EDeD,
    #[serde(rename = "eDeE")]
    EDeE,
    #[serde(rename = "eEeE")]
    EEeE,
    #[serde(rename = "eDp")]
    EDp,
    #[serde(rename = "eEp")]
    EEp,
}

impl NontoricCase {
    pub const ALL: [NontoricCase; 8] = [
        NontoricCase::EAeA,
        NontoricCase::EAeD,
        NontoricCase::EAeE,
        NontoricCase::EDeD,
        NontoricCase::EDeE,
        NontoricCase::EEeE,
        NontoricCase::EDp,
        NontoricCase::EEp,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            NontoricCase::EAeA => "eAeA",
            NontoricCase::EAeD => "eAeD",
            NontoricCase::EAeE => "eAeE",
            NontoricCase::EDeD => "eDeD",
            NontoricCase::EDeE => "eDeE",
            NontoricCase::EEeE => "eEeE",
            NontoricCase::EDp => "eDp",
            NontoricCase::EEp => "eEp",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    fn elliptic_pair(a: Platonic, b: Platonic) -> Self {
        use Platonic::*;
        match (a.min(b), a.max(b)) {
            (A, A) => NontoricCase::EAeA,
            (A, D) => NontoricCase::EAeD,
            (A, E) => NontoricCase::EAeE,
            (D, D) => NontoricCase::EDeD,
            (D, E) => NontoricCase::EDeE,
            (E, E) => NontoricCase::EEeE,
            _ => unreachable!("ordered pair"),
        }
    }
}

impl fmt::Display for NontoricCase {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NontoricCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NontoricCase::ALL.into_iter().find(|c| c.as_str() == s).ok_or_else(|| Error::Invalid(format!("unknown case {s:?}")))
    }
}

/// Type of a log terminal quotient singularity, read off the exponents of
/// the elliptic fixed point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Platonic {
    A,
    D,
    E,
}

/// `None` unless the entries greater than one form a platonic tuple.
fn platonic_type(ls: &[i64]) -> Option<Platonic> {
    let mut t: Vec<i64> = ls.iter().copied().filter(|&x| x > 1).collect();
    t.sort_unstable_by(|a, b| b.cmp(a));
    match t[..] {
        [] | [_] | [_, _] => Some(Platonic::A),
        [_, 2, 2] => Some(Platonic::D),
        [p, 3, 2] if p <= 5 => Some(Platonic::E),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NontoricRecord {
    pub case: NontoricCase,
    pub dm: DefiningMatrix,
    /// Order of the torsion part of the class group.
    pub lambda: u64,
    /// Primitive positive generator of the kernel of `P`, one entry per
    /// column without the unit column.
    pub weights: Vec<u64>,
    /// Local class group orders in the cone order of the ambient fan.
    pub local_orders: Vec<u64>,
    pub picard_index: u64,
    pub canonical_key: Vec<i64>,
}

/// Candidate data before certification.
struct Candidate {
    case: NontoricCase,
    l: Vec<Vec<i64>>,
    d: Vec<Vec<i64>>,
    lambda: u64,
    weights: Vec<u64>,
    key: Vec<i64>,
}

/// One record per family of non-toric log del Pezzo K*-surfaces of Picard
/// number one with an elliptic fixed point and Picard index `iota`, sorted
/// by case and key. Every record is recomputed from its defining matrix.
pub fn classify_nontoric(iota: u64) -> Result<Vec<NontoricRecord>> {
    assert!(iota >= 1, "Picard index must be positive");
    let mut found: BTreeMap<(NontoricCase, Vec<i64>), Candidate> = BTreeMap::new();
    let mut keep = |c: Candidate| {
        found.entry((c.case, c.key.clone())).or_insert(c);
    };
    two_elliptic(iota as i64, &mut keep);
    elliptic_parabolic(iota as i64, &mut keep);
    found.into_values().map(|c| certify(iota, c)).collect()
}

/// Type ee with `n_0 = 2` and `n_i = 1` otherwise. With `a = l01`, `b = l02`
/// and weights `(w1, w2, w_i)` the kernel relations force `a w1 + b w2 =
/// l_i w_i =: ell`, and the index factors as `lambda w1 w2 M` with
/// `M = d01 b - d02 a` and `lambda ell = M prod l_i`.
fn two_elliptic(iota: i64, keep: &mut impl FnMut(Candidate)) {
    for (lambda, w1, w2, m) in factor4(iota) {
        let mut tuples: Vec<(i64, i64, Vec<i64>)> = Vec::new();
        for a in 1..=5 {
            for b in 1..=5 {
                let ell = a * w1 + b * w2;
                if (lambda * ell) % m != 0 {
                    continue;
                }
                let prod = lambda * ell / m;
                for l1 in divisors(ell as u64).into_iter().map(|x| x as i64) {
                    if l1 < 2 || prod % l1 != 0 {
                        continue;
                    }
                    let l2 = prod / l1;
                    if l2 >= 2 && ell % l2 == 0 {
                        tuples.push((a, b, vec![l1, l2]));
                    }
                }
                if a == 1 && b == 1 {
                    let divs: Vec<i64> = divisors(ell as u64).into_iter().map(|x| x as i64).filter(|&x| x >= 2).collect();
                    for (&l1, &l2) in divs.iter().cartesian_product(&divs) {
                        if prod % (l1 * l2) != 0 {
                            continue;
                        }
                        let l3 = prod / (l1 * l2);
                        if l3 >= 2 && ell % l3 == 0 {
                            tuples.push((a, b, vec![l1, l2, l3]));
                        }
                    }
                }
            }
        }
        // (a, 2, 2) and (b, 2, 2) are platonic for every a, b.
        if (4 * m) % lambda == 0 {
            let ell = 4 * m / lambda;
            for a in (1..).take_while(|a| a * w1 < ell) {
                if (ell - a * w1) % w2 == 0 {
                    tuples.push((a, (ell - a * w1) / w2, vec![2, 2]));
                }
            }
        }
        tuples.sort();
        tuples.dedup();
        for (a, b, ls) in tuples {
            solve_two_elliptic(lambda, w1, w2, m, a, b, &ls, keep);
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn solve_two_elliptic(lambda: i64, w1: i64, w2: i64, m: i64, a: i64, b: i64, ls: &[i64], keep: &mut impl FnMut(Candidate)) {
    let ell = a * w1 + b * w2;
    if ls.iter().any(|l| ell % l != 0) {
        return;
    }
    let ws: Vec<i64> = ls.iter().map(|l| ell / l).collect();
    if ws.iter().fold(w1.gcd(&w2), |g, w| g.gcd(w)) != 1 {
        return;
    }
    let (Some(ta), Some(tb)) = (platonic_type(&[&[a][..], ls].concat()), platonic_type(&[&[b][..], ls].concat())) else {
        return;
    };
    if m * ls.iter().product::<i64>() != lambda * ell {
        return;
    }
    let case = NontoricCase::elliptic_pair(ta, tb);
    for ds in ls.iter().map(|&l| units_mod(l)).multi_cartesian_product() {
        let s: i64 = ds.iter().zip(&ws).map(|(d, w)| d * w).sum();
        // Solve d01 w1 + d02 w2 = -s and d01 b - d02 a = m.
        let (n1, n2) = (m * w2 - s * a, -s * b - m * w1);
        if n1 % ell != 0 || n2 % ell != 0 {
            continue;
        }
        let (d01, d02) = (n1 / ell, n2 / ell);
        if d01.gcd(&a) != 1 || d02.gcd(&b) != 1 {
            continue;
        }
        let mut weights = vec![w1 as u64, w2 as u64];
        weights.extend(ws.iter().map(|&w| w as u64));
        keep(Candidate {
            case,
            key: key_two_elliptic([a, b], [d01, d02], ls, &ds),
            l: std::iter::once(vec![a, b]).chain(ls.iter().map(|&l| vec![l])).collect(),
            d: std::iter::once(vec![d01, d02]).chain(ds.iter().map(|&d| vec![d])).collect(),
            lambda: lambda as u64,
            weights,
        });
    }
}

/// Type ep with all `n_i = 1` and exponents `(y, 2, 2)` or `(z, 3, 2)`.
/// Primitivity of the kernel forces `ell = lcm(l_i)`, and the index is
/// `w^- prod l_i`.
fn elliptic_parabolic(iota: i64, keep: &mut impl FnMut(Candidate)) {
    let tuples = (2..=iota).map(|y| [y, 2, 2]).chain((3..=5).map(|z| [z, 3, 2]));
    for ls in tuples {
        let prod: i64 = ls.iter().product();
        if prod > iota {
            if ls[1] == 2 {
                continue;
            }
            break;
        }
        if iota % prod != 0 {
            continue;
        }
        let w_minus = iota / prod;
        let ell = ls.iter().fold(1, |acc: i64, l| acc.lcm(l));
        let case = if ls[1] == 2 { NontoricCase::EDp } else { NontoricCase::EEp };
        let orders: Vec<Vec<i64>> = ls.iter().copied().permutations(3).unique().collect();
        for order in orders {
            let ws: Vec<i64> = order.iter().map(|l| ell / l).collect();
            for ds in order[1..].iter().map(|&l| units_mod(l)).multi_cartesian_product() {
                let s: i64 = ds.iter().zip(&ws[1..]).map(|(d, w)| d * w).sum();
                if (w_minus - s) % ws[0] != 0 {
                    continue;
                }
                let d0 = (w_minus - s) / ws[0];
                if d0.gcd(&order[0]) != 1 {
                    continue;
                }
                let d: Vec<i64> = std::iter::once(d0).chain(ds).collect();
                let lambda = prod / ell;
                keep(Candidate {
                    case,
                    key: key_elliptic_parabolic(&order, &d),
                    l: order.iter().map(|&l| vec![l]).collect(),
                    d: d.iter().map(|&x| vec![x]).collect(),
                    lambda: lambda as u64,
                    weights: ws.iter().map(|&w| w as u64).collect(),
                });
            }
        }
    }
}

fn units_mod(l: i64) -> Vec<i64> {
    (0..l).filter(|d| d.gcd(&l) == 1).collect()
}

/// All `(lambda, w1, w2, m)` with product `n`.
fn factor4(n: i64) -> Vec<(i64, i64, i64, i64)> {
    let mut out = Vec::new();
    for a in divisors(n as u64) {
        for b in divisors(n as u64 / a) {
            for c in divisors(n as u64 / a / b) {
                out.push((a as i64, b as i64, c as i64, (n as u64 / a / b / c) as i64));
            }
        }
    }
    out
}

/// Reduces `d_i` into `[0, l_i)` for the one-column blocks by adding
/// multiples of their rows to the last row; block 0 absorbs the shift.
fn normalize(l0: &[i64], d0: &mut [i64], ls: &[i64], ds: &mut [i64]) {
    for (l, d) in ls.iter().zip(ds.iter_mut()) {
        let k = Integer::div_floor(d, l);
        *d -= k * l;
        for (x, y) in d0.iter_mut().zip(l0) {
            *x += k * y;
        }
    }
}

/// Lexicographic minimum of the normalized data over the source-sink swap
/// and all orders of the one-column blocks.
fn key_two_elliptic(l0: [i64; 2], d0: [i64; 2], ls: &[i64], ds: &[i64]) -> Vec<i64> {
    let mut best: Option<Vec<i64>> = None;
    for swap in [false, true] {
        let (l0, d0, ds): ([i64; 2], [i64; 2], Vec<i64>) =
            if swap { ([l0[1], l0[0]], [-d0[1], -d0[0]], ds.iter().map(|d| -d).collect()) } else { (l0, d0, ds.to_vec()) };
        for perm in (0..ls.len()).permutations(ls.len()) {
            let pl: Vec<i64> = perm.iter().map(|&p| ls[p]).collect();
            let mut pd: Vec<i64> = perm.iter().map(|&p| ds[p]).collect();
            let mut d0 = d0;
            normalize(&l0, &mut d0, &pl, &mut pd);
            let key: Vec<i64> = l0.iter().chain(&d0).chain(&pl).chain(&pd).copied().collect();
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        }
    }
    best.expect("nonempty")
}

/// Lexicographic minimum of the normalized data over all block orders; block
/// 0 absorbs the normalization of the others.
fn key_elliptic_parabolic(ls: &[i64], ds: &[i64]) -> Vec<i64> {
    (0..ls.len())
        .permutations(ls.len())
        .map(|perm| {
            let pl: Vec<i64> = perm.iter().map(|&p| ls[p]).collect();
            let mut pd: Vec<i64> = perm.iter().map(|&p| ds[p]).collect();
            let mut d0 = [pd[0]];
            normalize(&pl[..1], &mut d0, &pl[1..], &mut pd[1..]);
            pd[0] = d0[0];
            pl.into_iter().chain(pd).collect::<Vec<i64>>()
        })
        .min()
        .expect("nonempty")
}

/// Rebuilds the defining matrix and checks validity, the kernel weights, the
/// torsion order, the elliptic and parabolic local orders and the Picard
/// index against the values the search derived.
fn certify(iota: u64, c: Candidate) -> Result<NontoricRecord> {
    let kind = if c.case.index() < NontoricCase::EDp.index() { SurfaceType::EE } else { SurfaceType::EP };
    let to_big = |v: &Vec<Vec<i64>>| v.iter().map(|b| b.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let dm = DefiningMatrix::new(kind, to_big(&c.l), to_big(&c.d))?;
    let fail = |what: &str| Error::Invariant(format!("{} record {:?} at index {iota}: {what}", c.case, c.key));
    let violations = dm.validate();
    if !violations.is_empty() {
        return Err(fail(&format!("invalid defining matrix {violations:?}")));
    }
    let p = dm.assemble();
    // The unit column of type ep carries weight `w^-`.
    let w_minus = iota / c.l.iter().map(|b| b[0] as u64).product::<u64>();
    let mut w: Vec<BigInt> = c.weights.iter().map(|&x| BigInt::from(x)).collect();
    if dm.minus_column().is_some() {
        w.push(BigInt::from(w_minus));
    }
    if p.mul_vec(&w).iter().any(|x| *x != BigInt::from(0)) {
        return Err(fail("weights are not in the kernel"));
    }
    if gcd_maximal_minors(&p) != BigInt::from(c.lambda) {
        return Err(fail("torsion order differs from the factorization"));
    }
    let (fan, labels) = ambient_fan_labeled(&dm);
    let local_orders: Vec<u64> = local_charts(&fan)
        .iter()
        .map(|chart| chart.class_group().order().and_then(|o| u64::try_from(o).ok()).ok_or_else(|| fail("infinite local class group")))
        .collect::<Result<_>>()?;
    for (label, &order) in labels.iter().zip(&local_orders) {
        let expected = match (*label, kind) {
            (ConeLabel::SigmaPlus, SurfaceType::EE) => c.lambda * c.weights[1],
            (ConeLabel::SigmaMinus, _) => c.lambda * c.weights[0],
            (ConeLabel::SigmaPlus, _) => c.lambda * w_minus,
            (ConeLabel::Tau { i, .. }, SurfaceType::EP) => c.l[i][0] as u64,
            _ => continue,
        };
        if order != expected {
            return Err(fail(&format!("local order {order} at {label:?}, expected {expected}")));
        }
    }
    if picard_index_formula(&dm)? != BigInt::from(iota) {
        return Err(fail("Picard index differs"));
    }
    Ok(NontoricRecord {
        case: c.case,
        dm,
        lambda: c.lambda,
        weights: c.weights,
        local_orders,
        picard_index: iota,
        canonical_key: c.key,
    })
}
