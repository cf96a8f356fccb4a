//! Class groups, local class groups and Picard groups of toric varieties
//! given by a fan.
//!
//! The Picard group is computed along two independent routes: directly as
//! the kernel of the restriction map `K -> (+) K_sigma`, and through the
//! kernels `gamma`, `delta` of the gluing maps and the induced map `P^`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::defmat::Fan;
use crate::exactlin::{
    cokernel, hnf, is_saturated, kernel_basis, snf, solve, AbelianGroup, IntMatrix, SmithForm,
};
use crate::{Error, Result};

/// A maximal cone `sigma` with a lattice basis of `lin(sigma) ∩ N` and the
/// local generator map `P_sigma` written in that basis.
#[derive(Clone, Debug, Serialize)]
pub struct LocalChart {
    pub cone: usize,
    /// Columns form a basis of `lin(sigma) ∩ N`, in column Hermite normal form.
    pub n_sigma_basis: IntMatrix,
    /// `n_sigma_basis * p_sigma` equals the matrix of rays of `sigma`.
    pub p_sigma: IntMatrix,
}

impl LocalChart {
    pub fn new(fan: &Fan, cone: usize) -> Self {
        let rays = fan.cone_matrix(cone);
        let normals = kernel_basis(&rays.transpose());
        let n_sigma_basis = kernel_basis(&normals.transpose());
        let p_sigma = solve(&n_sigma_basis, &rays).expect("rays of a cone lie in their own span");
        LocalChart { cone, n_sigma_basis, p_sigma }
    }

    pub fn is_simplicial(&self) -> bool {
        self.p_sigma.rows() == self.p_sigma.cols()
    }

    /// `K_sigma = coker(P_sigma^*)`.
    pub fn class_group(&self) -> AbelianGroup {
        cokernel(&self.p_sigma.transpose())
    }
}

/// Everything computed about the Picard group of a toric variety.
#[derive(Clone, Debug, Serialize)]
pub struct PicardData {
    pub class_group: AbelianGroup,
    pub local_groups: Vec<AbelianGroup>,
    #[serde(serialize_with = "crate::json::ser::int")]
    pub pic_index: BigInt,
    pub pic_rank: usize,
    /// `K^ = (+) K_sigma / im(pi)`.
    pub khat: AbelianGroup,
    pub pic_torsion_free: bool,
    /// Generators of `Pic` in the coordinates of [`ClassGroupCoords`], when
    /// computed by the direct route.
    #[serde(skip_serializing_if = "Option::is_none")]
    #[serde(serialize_with = "crate::json::ser::opt_vec2")]
    pub pic_generators: Option<Vec<Vec<BigInt>>>,
}

impl PicardData {
    pub fn local_orders(&self) -> Vec<BigInt> {
        self.local_groups.iter().map(|g| g.order().expect("finite local class group")).collect()
    }

    pub fn local_order_product(&self) -> BigInt {
        self.local_orders().iter().product()
    }
}

pub fn class_group(fan: &Fan) -> Result<AbelianGroup> {
    if !fan.spans_linearly() {
        return Err(Error::DegenerateFan);
    }
    Ok(cokernel(&fan.ray_matrix().transpose()))
}

pub fn local_class_group(fan: &Fan, cone: usize) -> Result<AbelianGroup> {
    if cone >= fan.max_cones().len() {
        return Err(Error::OutOfRange(format!("cone {cone} of {}", fan.max_cones().len())));
    }
    Ok(LocalChart::new(fan, cone).class_group())
}

pub fn local_charts(fan: &Fan) -> Vec<LocalChart> {
    (0..fan.max_cones().len()).map(|c| LocalChart::new(fan, c)).collect()
}

fn checked_charts(fan: &Fan) -> Result<Vec<LocalChart>> {
    if !fan.spans_linearly() {
        return Err(Error::DegenerateFan);
    }
    let charts = local_charts(fan);
    if let Some(c) = charts.iter().find(|c| !c.is_simplicial()) {
        return Err(Error::NonSimplicial(c.cone));
    }
    Ok(charts)
}

/// Coordinates on `K = Z^n / im(P^*)`: `Z^rank` first, then one cyclic
/// factor per torsion invariant.
#[derive(Clone, Debug)]
pub struct ClassGroupCoords {
    smith: SmithForm,
    /// Positions in `U x` of the coordinates kept, free ones first.
    keep: Vec<usize>,
    /// Modulus of every kept coordinate, zero for free ones.
    moduli: Vec<BigInt>,
}

impl ClassGroupCoords {
    pub fn new(p: &IntMatrix) -> Self {
        let pt = p.transpose();
        let smith = snf(&pt);
        let n = pt.rows();
        let rank = smith.rank();
        let mut keep: Vec<usize> = (rank..n).collect();
        let mut moduli = vec![BigInt::zero(); keep.len()];
        for i in 0..rank {
            if smith.d[i] > BigInt::one() {
                keep.push(i);
                moduli.push(smith.d[i].clone());
            }
        }
        ClassGroupCoords { smith, keep, moduli }
    }

    pub fn moduli(&self) -> &[BigInt] {
        &self.moduli
    }

    /// Coordinates of the class of `x in Z^n`, torsion parts reduced.
    pub fn coords(&self, x: &[BigInt]) -> Vec<BigInt> {
        let y = self.smith.u.mul_vec(x);
        self.keep
            .iter()
            .zip(&self.moduli)
            .map(|(&k, m)| if m.is_zero() { y[k].clone() } else { y[k].mod_floor(m) })
            .collect()
    }
}

/// The restriction maps stacked into one matrix `Phi: Z^n -> Z^N` together
/// with the moduli `D` such that `(+) K_sigma = Z^N / D Z^N`.
fn restriction_map(fan: &Fan, charts: &[LocalChart]) -> (IntMatrix, Vec<BigInt>) {
    let n = fan.rays().len();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let mut moduli = Vec::new();
    for chart in charts {
        let s = snf(&chart.p_sigma.transpose());
        let cone = &fan.max_cones()[chart.cone];
        for (t, d) in s.d.iter().enumerate() {
            if d.is_one() {
                continue;
            }
            let mut row = vec![BigInt::zero(); n];
            for (j, &ray) in cone.iter().enumerate() {
                row[ray] += &s.u[(t, j)];
            }
            rows.push(row);
            moduli.push(d.clone());
        }
    }
    (IntMatrix::from_big_rows(rows, n), moduli)
}

/// The Picard group as the kernel of `pi: K -> (+) K_sigma`.
pub fn picard_direct(fan: &Fan) -> Result<PicardData> {
    let charts = checked_charts(fan)?;
    let p = fan.ray_matrix();
    let n = p.cols();
    let class_group = cokernel(&p.transpose());
    let local_groups: Vec<AbelianGroup> = charts.iter().map(LocalChart::class_group).collect();

    let (phi, moduli) = restriction_map(fan, &charts);
    let big = moduli.len();
    let dmat = IntMatrix::diagonal(big, big, &moduli);
    // K^ = (Z^N / D) / im(Phi).
    let khat = cokernel(&phi.hstack(&dmat));
    let total: BigInt = moduli.iter().product();
    let khat_order = khat.order().ok_or_else(|| Error::Invariant("K^ infinite for a simplicial fan".into()))?;
    let (pic_index, rem) = total.div_rem(&khat_order);
    if !rem.is_zero() {
        return Err(Error::Invariant("|K^| does not divide the product of local orders".into()));
    }

    // Preimage of Pic in Z^n: x with Phi x in D Z^N.
    let neg_d = IntMatrix::diagonal(big, big, &moduli.iter().map(|m| -m).collect::<Vec<_>>());
    let joint = kernel_basis(&phi.hstack(&neg_d));
    let x_part = joint.select_rows(&(0..n).collect::<Vec<_>>());
    let e_pic = nonzero_columns(&hnf(&x_part));
    if e_pic.cols() != n {
        return Err(Error::Invariant("preimage of Pic has deficient rank".into()));
    }
    let in_pic = solve(&e_pic, &p.transpose()).ok_or_else(|| Error::Invariant("im(P^*) not inside Pic".into()))?;
    let pic_torsion_free = is_saturated(&in_pic);

    let coords = ClassGroupCoords::new(&p);
    let pic_generators = pic_generators(&coords, &e_pic);

    Ok(PicardData {
        pic_rank: class_group.rank,
        class_group,
        local_groups,
        pic_index,
        khat,
        pic_torsion_free,
        pic_generators: Some(pic_generators),
    })
}

fn nonzero_columns(m: &IntMatrix) -> IntMatrix {
    let idx: Vec<usize> = (0..m.cols()).filter(|&j| (0..m.rows()).any(|i| !m[(i, j)].is_zero())).collect();
    m.select_columns(&idx)
}

/// Images of the columns of `e_pic` in `K`, Hermite reduced together with
/// the torsion relations, relation-only columns dropped.
fn pic_generators(coords: &ClassGroupCoords, e_pic: &IntMatrix) -> Vec<Vec<BigInt>> {
    let k = coords.moduli().len();
    let images: Vec<Vec<BigInt>> = e_pic.columns().iter().map(|c| coords.coords(c)).collect();
    let mut gens = IntMatrix::from_columns(k, &images);
    let rel_cols: Vec<Vec<BigInt>> = coords
        .moduli()
        .iter()
        .enumerate()
        .filter(|(_, m)| !m.is_zero())
        .map(|(i, m)| {
            let mut c = vec![BigInt::zero(); k];
            c[i] = m.clone();
            c
        })
        .collect();
    gens = gens.hstack(&IntMatrix::from_columns(k, &rel_cols));
    let h = nonzero_columns(&hnf(&gens));
    h.columns()
        .into_iter()
        .map(|c| {
            c.iter().zip(coords.moduli()).map(|(x, m)| if m.is_zero() { x.clone() } else { x.mod_floor(m) }).collect::<Vec<_>>()
        })
        .filter(|c| c.iter().any(|x| !x.is_zero()))
        .collect()
}

/// The gluing maps `alpha`, `beta`, the block diagonal `P_sigma`, the kernels
/// `gamma`, `delta` and the induced `P^` with `gamma P^ = (+)P_sigma delta`.
#[derive(Clone, Debug, Serialize)]
pub struct GluingSystem {
    pub alpha: IntMatrix,
    pub beta: IntMatrix,
    pub p_blocks: IntMatrix,
    pub gamma: IntMatrix,
    pub delta: IntMatrix,
    pub phat: IntMatrix,
}

pub fn gluing_system(fan: &Fan, charts: &[LocalChart]) -> Result<GluingSystem> {
    let dim = fan.dim();
    let n = fan.rays().len();
    let bases: Vec<IntMatrix> = charts.iter().map(|c| c.n_sigma_basis.clone()).collect();
    let alpha = bases.iter().skip(1).fold(bases[0].clone(), |acc, b| acc.hstack(b));
    debug_assert_eq!(alpha.rows(), dim);
    let mut beta_cols = Vec::new();
    for chart in charts {
        for &ray in &fan.max_cones()[chart.cone] {
            let mut c = vec![BigInt::zero(); n];
            c[ray] = BigInt::one();
            beta_cols.push(c);
        }
    }
    let beta = IntMatrix::from_columns(n, &beta_cols);
    let blocks: Vec<IntMatrix> = charts.iter().map(|c| c.p_sigma.clone()).collect();
    let p_blocks = IntMatrix::block_diagonal(&blocks);
    let gamma = kernel_basis(&alpha);
    let delta = kernel_basis(&beta);
    let phat = solve(&gamma, &(&p_blocks * &delta))
        .ok_or_else(|| Error::Invariant("(+)P_sigma delta does not factor through gamma".into()))?;
    Ok(GluingSystem { alpha, beta, p_blocks, gamma, delta, phat })
}

/// The Picard group through `P^`: `K^ = coker(P^*)` when `alpha` is
/// surjective, otherwise `K^` is taken from the direct route.
pub fn picard_via_hat(fan: &Fan) -> Result<PicardData> {
    let charts = checked_charts(fan)?;
    let class_group = cokernel(&fan.ray_matrix().transpose());
    let local_groups: Vec<AbelianGroup> = charts.iter().map(LocalChart::class_group).collect();
    let system = gluing_system(fan, &charts)?;
    let alpha_onto = cokernel(&system.alpha).is_trivial();
    let (khat, pic_torsion_free) = if alpha_onto {
        (cokernel(&system.phat.transpose()), true)
    } else {
        let direct = picard_direct(fan)?;
        (direct.khat, direct.pic_torsion_free)
    };
    let total: BigInt = local_groups.iter().map(|g| g.torsion_order()).product();
    let khat_order = khat.order().ok_or_else(|| Error::Invariant("coker(P^*) is infinite".into()))?;
    let (pic_index, rem) = total.div_rem(&khat_order);
    if !rem.is_zero() {
        return Err(Error::Invariant("|K^| does not divide the product of local orders".into()));
    }
    Ok(PicardData {
        pic_rank: class_group.rank,
        class_group,
        local_groups,
        pic_index,
        khat,
        pic_torsion_free,
        pic_generators: None,
    })
}

/// `prod |K_sigma| / |Cl^tors|` in lowest terms, as `(numerator, denominator)`.
pub fn local_order_quotient(fan: &Fan) -> Result<(BigInt, BigInt)> {
    let charts = checked_charts(fan)?;
    let num: BigInt = charts.iter().map(|c| c.class_group().torsion_order()).product();
    let den = cokernel(&fan.ray_matrix().transpose()).torsion_order();
    let g = num.gcd(&den);
    Ok((num / &g, den / g))
}
