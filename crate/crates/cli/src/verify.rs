//! Randomized consistency checks: every check compares quantities computed
//! along independent routes on random valid defining matrices.

use std::collections::BTreeMap;

use kstar::defmat::random::{random_defining_matrix, RandomBounds};
use kstar::defmat::{ambient_fan, DefiningMatrix};
use kstar::exactlin::{cokernel, is_saturated};
use kstar::kstarindex::{hat_system_explicit, minor_sets, nu_hat, picard_index_formula};
use kstar::toricpic::{gluing_system, local_charts, picard_direct, picard_via_hat};
use num_bigint::BigInt;
use num_integer::Integer;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

pub const CHECKS: [&str; 8] = [
    "picard_index_routes",
    "minor_gcds",
    "pic_torsion_free",
    "index_times_khat",
    "phat_cokernel_is_torsion",
    "phat_explicit_matches_generic",
    "hat_identities",
    "nu_hat_divisibility",
];

#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct Tally {
    pub passed: u64,
    pub failed: u64,
}

#[derive(Debug, Serialize)]
pub struct FailedInstance {
    pub instance: u64,
    pub checks: Vec<String>,
    /// Replays with `kstar analyze`.
    pub defining_matrix: DefiningMatrix,
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub schema_version: u32,
    pub seed: u64,
    pub count: u64,
    pub checks: BTreeMap<&'static str, Tally>,
    pub failures: Vec<FailedInstance>,
}

impl Summary {
    pub fn failed(&self) -> usize {
        self.failures.len()
    }
}

pub fn run(count: u64, seed: u64) -> Summary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let instances: Vec<DefiningMatrix> = (0..count).map(|_| random_defining_matrix(&mut rng, RandomBounds::default())).collect();
    let results: Vec<Vec<(&'static str, bool)>> = instances.par_iter().map(check_instance).collect();
    let mut checks: BTreeMap<&'static str, Tally> = CHECKS.iter().map(|&c| (c, Tally::default())).collect();
    let mut failures = Vec::new();
    for (k, (dm, result)) in instances.into_iter().zip(results).enumerate() {
        let mut failed = Vec::new();
        for (name, ok) in result {
            let t = checks.entry(name).or_default();
            if ok {
                t.passed += 1;
            } else {
                t.failed += 1;
                failed.push(name.to_string());
            }
        }
        if !failed.is_empty() {
            failures.push(FailedInstance { instance: k as u64, checks: failed, defining_matrix: dm });
        }
    }
    Summary { schema_version: crate::SCHEMA_VERSION, seed, count, checks, failures }
}

/// Outcome of every check on one instance; an error counts as a failure of
/// the check that hit it.
pub fn check_instance(dm: &DefiningMatrix) -> Vec<(&'static str, bool)> {
    let fan = ambient_fan(dm);
    let direct = picard_direct(&fan).ok();
    let via_hat = picard_via_hat(&fan).ok();
    let formula = picard_index_formula(dm).ok();
    let hat = hat_system_explicit(dm);
    let minors = minor_sets(dm);
    let torsion = direct.as_ref().map(|d| d.class_group.torsion_order());

    let routes = match (&direct, &via_hat, &formula) {
        (Some(d), Some(h), Some(f)) => d.pic_index == h.pic_index && d.pic_index == *f,
        _ => false,
    };
    let gcds = minors.gcd_m_p == minors.gcd_m_prime_p && minors.gcd_m_p == minors.gcd_m_phat && minors.gcd_m_phat == minors.gcd_m_red_phat;
    let torsion_free = direct.as_ref().is_some_and(|d| d.pic_torsion_free);
    let khat = direct.as_ref().is_some_and(|d| {
        d.khat.order().is_some_and(|k| &d.pic_index * k == d.local_order_product())
    });
    let explicit_coker = cokernel(&hat.phat.transpose());
    let phat_torsion = torsion.as_ref().is_some_and(|t| explicit_coker.order().as_ref() == Some(t));
    let generic = gluing_system(&fan, &local_charts(&fan)).ok();
    let phat_generic = generic.as_ref().is_some_and(|g| cokernel(&g.phat.transpose()) == explicit_coker);
    let identities = (&hat.alpha * &hat.gamma).is_zero()
        && (&hat.beta * &hat.delta).is_zero()
        && &hat.gamma * &hat.phat == &hat.p_blocks * &hat.delta
        && is_saturated(&hat.gamma)
        && is_saturated(&hat.delta);
    let divisibility = (0..=dm.r()).all(|i| {
        let last = dm.l(i, dm.block_len(i));
        (1..=dm.block_len(i)).all(|j| {
            let g: BigInt = last.gcd(&nu_hat(dm, i, j).expect("in range"));
            dm.l(i, j).is_multiple_of(&g)
        })
    });
    vec![
        ("picard_index_routes", routes),
        ("minor_gcds", gcds),
        ("pic_torsion_free", torsion_free),
        ("index_times_khat", khat),
        ("phat_cokernel_is_torsion", phat_torsion),
        ("phat_explicit_matches_generic", phat_generic),
        ("hat_identities", identities),
        ("nu_hat_divisibility", divisibility),
    ]
}
