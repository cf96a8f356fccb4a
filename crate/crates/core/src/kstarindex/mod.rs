//! Picard indices of rational projective K*-surfaces from their defining
//! data: the local-order formula, the explicit gluing matrices and the
//! maximal-minor identities behind them.

mod hat;
mod minors;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

pub use hat::{hat_system_explicit, HatCol, HatRow, HatSystem};
pub use minors::{minor_sets, m_prime, mu, mu_hat, nu, nu_hat, reduced_submatrix, MinorSets, PHAT_MULTISET_LIMIT};

use crate::defmat::{ambient_fan, DefiningMatrix};
use crate::toricpic::local_charts;
use crate::exactlin::cokernel;
use crate::{Error, Result};

/// Picard index as the product of the local class group orders over all
/// fixed points divided by the order of the torsion of the class group.
pub fn picard_index_formula(dm: &DefiningMatrix) -> Result<BigInt> {
    let fan = ambient_fan(dm);
    let mut product = BigInt::from(1);
    for chart in local_charts(&fan) {
        let order = chart.class_group().order().ok_or(Error::NonSimplicial(chart.cone))?;
        product *= order;
    }
    let torsion = cokernel(&fan.ray_matrix().transpose()).torsion_order();
    let (q, r) = product.div_rem(&torsion);
    if !r.is_zero() {
        return Err(Error::Invariant(format!("torsion order {torsion} does not divide local order product {product}")));
    }
    Ok(q)
}
