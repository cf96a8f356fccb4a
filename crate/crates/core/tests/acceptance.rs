//! Acceptance criteria, one PASS/FAIL line each. Long classification runs
//! beyond index 1000 for the non-toric engine are skipped unless
//! `--ignored`, `--include-ignored` or `KSTAR_STRETCH=1` is given.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use kstar::classify::{census, classify_fwpp_range, classify_nontoric_range, NontoricCase};
use kstar::defmat::random::{random_defining_matrix, RandomBounds};
use kstar::defmat::{ambient_fan, DefiningMatrix, Fan, SurfaceType};
use kstar::exactlin::{cokernel, hnf, hnf_with_transform, kernel_basis, maximal_minors, snf};
use kstar::kstarindex::{hat_system_explicit, minor_sets, picard_index_formula};
use kstar::toricpic::{class_group, local_order_quotient, picard_direct, picard_via_hat};
use kstar::AbelianGroup;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

struct Suite {
    failed: usize,
    stretch: bool,
}

impl Suite {
    fn criterion(&mut self, id: &str, limit: Duration, f: impl FnOnce() -> Check) {
        let start = Instant::now();
        let result = f();
        let elapsed = start.elapsed();
        let timing = format!("{:.2}s, limit {}s", elapsed.as_secs_f64(), limit.as_secs());
        match result {
            Ok(detail) if elapsed <= limit => println!("PASS {id}: {detail} ({timing})"),
            Ok(detail) => {
                self.failed += 1;
                println!("FAIL {id}: {detail}, but over the time limit ({timing})");
            }
            Err(why) => {
                self.failed += 1;
                println!("FAIL {id}: {why} ({timing})");
            }
        }
    }

    fn stretch(&mut self, id: &str, limit: Duration, f: impl FnOnce() -> Check) {
        if self.stretch {
            self.criterion(id, limit, f);
        } else {
            println!("SKIP {id}: long run, enable with --ignored or KSTAR_STRETCH=1");
        }
    }
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn set(v: &[BigInt]) -> BTreeSet<BigInt> {
    v.iter().cloned().collect()
}

fn running_example() -> DefiningMatrix {
    DefiningMatrix::from_i64(SurfaceType::EE, &[&[1, 1], &[8], &[4]], &[&[-1, -2], &[7], &[3]]).unwrap()
}

fn running_example_picard() -> Check {
    let dm = running_example();
    let fan = ambient_fan(&dm);
    let direct = picard_direct(&fan).map_err(|e| e.to_string())?;
    let via_hat = picard_via_hat(&fan).map_err(|e| e.to_string())?;
    let formula = picard_index_formula(&dm).map_err(|e| e.to_string())?;
    let cl = &direct.class_group;
    ensure(*cl == AbelianGroup { rank: 1, torsion: ints(&[4]) }, || format!("Cl = {cl}"))?;
    let mut local = direct.local_orders();
    local.sort();
    ensure(local == ints(&[1, 12, 20]), || format!("local orders {local:?}"))?;
    let sixty = BigInt::from(60);
    ensure(formula == sixty && via_hat.pic_index == sixty && direct.pic_index == sixty, || {
        format!("indices formula {formula}, via P^ {}, direct {}", via_hat.pic_index, direct.pic_index)
    })?;
    // Pic is cyclic, maps onto 15Z in the free part, and in these
    // coordinates is generated by (15, 1 mod 4).
    let gens = direct.pic_generators.clone().unwrap_or_default();
    ensure(gens == vec![ints(&[15, 1])], || format!("Pic generators {gens:?}"))?;
    Ok(format!("Cl = {cl}, local orders {{20, 12, 1}}, index 60 on three routes, Pic = Z(15, 1)"))
}

fn running_example_minors() -> Check {
    let dm = running_example();
    let m = minor_sets(&dm);
    let m_p = set(&maximal_minors(&dm.assemble()));
    ensure(m_p == set(&ints(&[12, 20, 4, 8])), || format!("M(P) = {m_p:?}"))?;
    ensure(set(&m.m_prime_p) == set(&ints(&[12, 8, 4])), || format!("M'(P) = {:?}", m.m_prime_p))?;
    ensure(set(&m.m_red_phat) == set(&ints(&[12, 28, 24, 32])), || format!("M^red(P^) = {:?}", m.m_red_phat))?;
    let four = BigInt::from(4);
    ensure(m.gcd_m_p == four && m.gcd_m_phat == four && m.gcd_m_red_phat == four && m.gcd_m_prime_p == four, || {
        format!("gcds {} {} {} {}", m.gcd_m_p, m.gcd_m_prime_p, m.gcd_m_phat, m.gcd_m_red_phat)
    })?;
    Ok("M(P) = {12, 20, 4, 8}, M'(P) = {12, 8, 4}, all gcds 4".into())
}

fn counterexamples() -> Check {
    let wps = Fan::weighted_projective(&[2, 2, 3, 5]).map_err(|e| e.to_string())?;
    let pic = picard_direct(&wps).map_err(|e| e.to_string())?;
    ensure(pic.pic_index == BigInt::from(30) && pic.local_order_product() == BigInt::from(60), || {
        format!("P(2,2,3,5): index {}, local product {}", pic.pic_index, pic.local_order_product())
    })?;
    let d8 = Fan::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 2], &[-3, -2, -2]], &[&[0, 1], &[1, 2], &[1, 3], &[0, 2, 3]])
        .map_err(|e| e.to_string())?;
    let pic = picard_direct(&d8).map_err(|e| e.to_string())?;
    let cl = class_group(&d8).map_err(|e| e.to_string())?;
    let (num, den) = local_order_quotient(&d8).map_err(|e| e.to_string())?;
    ensure(pic.pic_index == BigInt::from(2) && cl == AbelianGroup { rank: 1, torsion: ints(&[2]) }, || {
        format!("D8: index {}, Cl = {cl}", pic.pic_index)
    })?;
    ensure(!(den == BigInt::from(1) && num == pic.pic_index), || "D8 quotient equals the index".into())?;
    Ok(format!("P(2,2,3,5) index 30 with local product 60; D8 index 2, Cl = {cl}, local-order quotient {num}/{den} != 2"))
}

fn toric_counts(bounds: &[u64], expected: &[usize]) -> Check {
    let max = *bounds.last().unwrap();
    let per_index: Vec<usize> = classify_fwpp_range(1..=max).iter().map(|v| v.len()).collect();
    let counts: Vec<usize> = bounds.iter().map(|&b| per_index[..b as usize].iter().sum()).collect();
    ensure(counts == expected, || format!("counts {counts:?} at {bounds:?}, expected {expected:?}"))?;
    Ok(format!("counts {counts:?} at max index {bounds:?}"))
}

fn nontoric_counts(rows: &[(u64, [u64; 8])]) -> Check {
    let max = rows.last().unwrap().0;
    let per_index = classify_nontoric_range(1..=max).map_err(|e| e.to_string())?;
    let mut details = Vec::new();
    for (bound, expected) in rows {
        let mut counts = [0u64; 8];
        for rec in per_index[..*bound as usize].iter().flatten() {
            counts[rec.case.index()] += 1;
        }
        ensure(counts == *expected, || format!("<= {bound}: {counts:?}, expected {expected:?}"))?;
        details.push(format!("<= {bound}: {}", counts.iter().sum::<u64>()));
    }
    let names = NontoricCase::ALL.iter().map(|c| c.as_str()).collect::<Vec<_>>().join("/");
    Ok(format!("per-case rows ({names}) match, totals {}", details.join(", ")))
}

fn property_suite(count: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..count {
        let dm = random_defining_matrix(&mut rng, RandomBounds::default());
        let fail = |what: &str| format!("instance {k} {}: {what}", serde_json::to_string(&dm).unwrap());
        let fan = ambient_fan(&dm);
        let direct = picard_direct(&fan).map_err(|e| fail(&e.to_string()))?;
        let via_hat = picard_via_hat(&fan).map_err(|e| fail(&e.to_string()))?;
        let formula = picard_index_formula(&dm).map_err(|e| fail(&e.to_string()))?;
        ensure(direct.pic_index == via_hat.pic_index && direct.pic_index == formula, || fail("Picard index routes differ"))?;
        let m = minor_sets(&dm);
        let p = common::to_i128(&dm.assemble());
        let brute = BigInt::from(common::maximal_minor_gcd(&p, dm.r() + 1, dm.n() + dm.m()));
        ensure(m.gcd_m_p == brute && m.gcd_m_prime_p == brute && m.gcd_m_phat == brute, || fail("minor gcds differ"))?;
        ensure(direct.pic_torsion_free, || fail("Pic has torsion"))?;
        let khat = direct.khat.order().ok_or_else(|| fail("K^ infinite"))?;
        ensure(&direct.pic_index * khat == direct.local_order_product(), || fail("index times |K^| is not the local product"))?;
        let phat = hat_system_explicit(&dm).phat;
        ensure(cokernel(&phat.transpose()).order() == Some(direct.class_group.torsion_order()), || {
            fail("|coker P^*| differs from the torsion order")
        })?;
    }
    Ok(format!("{count} random valid defining matrices (seed {seed}), zero failures"))
}

fn weighted_projective_planes(count: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    while done < count {
        let w: [i64; 3] = std::array::from_fn(|_| rng.gen_range(1..=50));
        if w[0].gcd(&w[1]) != 1 || w[0].gcd(&w[2]) != 1 || w[1].gcd(&w[2]) != 1 {
            continue;
        }
        let fan = Fan::weighted_projective(&w).map_err(|e| e.to_string())?;
        let index = picard_direct(&fan).map_err(|e| e.to_string())?.pic_index;
        ensure(index == BigInt::from(w[0] * w[1] * w[2]), || format!("P{w:?}: index {index}"))?;
        done += 1;
    }
    Ok(format!("{count} pairwise coprime weight triples <= 50 (seed {seed})"))
}

fn exactlin_oracles(count: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..count {
        let (rows, cols) = (rng.gen_range(1..=6), rng.gen_range(1..=8));
        let a = common::random_matrix(&mut rng, rows, cols, 9);
        let fail = |what: &str| format!("case {k} {a}: {what}");
        let a128 = common::to_i128(&a);
        let s = snf(&a);
        let expected: Vec<BigInt> = common::smith_invariants(&a128, rows, cols).into_iter().map(BigInt::from).collect();
        ensure(s.d == expected, || fail("Smith invariants differ from determinantal divisors"))?;
        ensure(&(&s.u * &a) * &s.v == s.diagonal_matrix(), || fail("U A V is not diagonal"))?;
        ensure(common::is_unimodular(&s.u) && common::is_unimodular(&s.v), || fail("Smith transforms not unimodular"))?;
        let rank = common::rank(&a128, rows, cols);
        let h = hnf_with_transform(&a);
        ensure(&a * &h.v == h.h && common::is_unimodular(&h.v), || fail("Hermite transform"))?;
        ensure(h.rank() == rank, || fail("Hermite rank"))?;
        let echelon = h.pivots.iter().enumerate().all(|(c, &(i, j))| {
            j == c
                && h.h[(i, j)].is_positive()
                && (0..i).all(|r| h.h[(r, j)].is_zero())
                && (0..j).all(|l| !h.h[(i, l)].is_negative() && h.h[(i, l)] < h.h[(i, j)])
        }) && (rank..cols).all(|j| (0..rows).all(|i| h.h[(i, j)].is_zero()));
        ensure(echelon, || fail("Hermite form shape"))?;
        ensure(hnf(&h.h) == h.h, || fail("Hermite form not idempotent"))?;
        let kb = kernel_basis(&a);
        ensure(kb.cols() == cols - rank && (&a * &kb).is_zero(), || fail("kernel dimension"))?;
        if kb.cols() > 0 {
            ensure(common::maximal_minor_gcd(&common::to_i128(&kb), cols, kb.cols()) == 1, || fail("kernel not saturated"))?;
        }
    }
    Ok(format!("{count} random matrices up to 6x8 with entries <= 9 (seed {seed})"))
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    if args.iter().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let stretch = args.iter().any(|a| a == "--ignored" || a == "--include-ignored") || std::env::var("KSTAR_STRETCH").is_ok_and(|v| v == "1");
    let mut suite = Suite { failed: 0, stretch };
    let second = Duration::from_secs(1);
    let minute = Duration::from_secs(60);

    suite.criterion("1 running example", second, running_example_picard);
    suite.criterion("2 minor sets", second, running_example_minors);
    suite.criterion("3 counterexamples", second, counterexamples);
    suite.criterion("4 toric counts to 1000", 30 * second, || toric_counts(&[10, 100, 1000], &[14, 243, 4205]));
    suite.criterion("4 toric counts to 10000", 10 * minute, || toric_counts(&[10, 100, 1000, 10000], &[14, 243, 4205, 68053]));
    suite.criterion("5 non-toric counts to 1000", 10 * minute, || {
        nontoric_counts(&[
            (10, [5, 4, 10, 1, 0, 0, 1, 0]),
            (100, [260, 129, 39, 117, 4, 15, 28, 5]),
            (1000, [7425, 2209, 206, 11622, 32, 103, 521, 51]),
        ])
    });
    suite.stretch("5 non-toric counts to 10000", 60 * minute, || {
        nontoric_counts(&[(10000, [157_482, 31_561, 1011, 1_148_587, 197, 569, 7520, 506])])
    });
    suite.stretch("census to 10000", 60 * minute, || {
        let rows = census(10000).map_err(|e| e.to_string())?;
        let last = rows.last().unwrap().cumulative;
        ensure((last.toric, last.nontoric_total(), last.total()) == (68053, 1_347_433, 1_415_486), || {
            format!("toric {}, non-toric {}, total {}", last.toric, last.nontoric_total(), last.total())
        })?;
        Ok(format!("toric {} + non-toric {} = {}", last.toric, last.nontoric_total(), last.total()))
    });
    suite.criterion("6 property suites", 2 * minute, || property_suite(1000, 20_241_015));
    suite.criterion("7 weighted projective planes", 10 * second, || weighted_projective_planes(100, 7));
    suite.criterion("8 exactlin oracles", minute, || exactlin_oracles(10_000, 8));

    if suite.failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} criteria failed", suite.failed);
        ExitCode::FAILURE
    }
}
