use std::collections::BTreeSet;

use kstar::classify::{census, classify_fwpp, classify_fwpp_range, classify_nontoric, classify_nontoric_range, NontoricCase};
use kstar::defmat::SurfaceType;
use kstar::exactlin::{gcd_maximal_minors, kernel_basis};
use kstar::toricpic::{class_group, picard_direct};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

#[test]
fn toric_records_recompute_exhaustively_up_to_200() {
    for iota in 1..=200u64 {
        let recs = classify_fwpp(iota);
        let keys: BTreeSet<_> = recs.iter().map(|r| r.canonical_key.clone()).collect();
        assert_eq!(keys.len(), recs.len(), "duplicate key at {iota}");
        for rec in recs {
            let fan = rec.fan();
            let cl = class_group(&fan).unwrap();
            assert_eq!((cl.rank, cl.torsion_order()), (1, BigInt::from(rec.n)));
            assert_eq!(picard_direct(&fan).unwrap().pic_index, BigInt::from(iota));
            let c = (rec.w[0] + rec.x * rec.w[1]) / rec.w[2];
            assert_eq!((rec.w[0] + rec.x * rec.w[1]) % rec.w[2], 0);
            assert!(rec.x < rec.n * rec.w[2] && c > 0);
        }
    }
}

#[test]
fn nontoric_records_have_the_factorized_weights() {
    for iota in 1..=80u64 {
        let recs = classify_nontoric(iota).unwrap();
        let keys: BTreeSet<_> = recs.iter().map(|r| (r.case, r.canonical_key.clone())).collect();
        assert_eq!(keys.len(), recs.len(), "duplicate key at {iota}");
        for rec in &recs {
            let p = rec.dm.assemble();
            assert_eq!(gcd_maximal_minors(&p), BigInt::from(rec.lambda));
            let k = kernel_basis(&p);
            assert_eq!(k.cols(), 1);
            let mut gen: Vec<BigInt> = k.column(0).into_iter().map(|x| x.abs()).collect();
            if rec.dm.kind() == SurfaceType::EP {
                gen.pop();
            }
            let expected: Vec<BigInt> = rec.weights.iter().map(|&w| BigInt::from(w)).collect();
            assert_eq!(gen, expected);
            match rec.dm.kind() {
                SurfaceType::EE => {
                    let (w1, w2) = (rec.weights[0], rec.weights[1]);
                    let m = rec.dm.d(0, 1) * rec.dm.l(0, 2) - rec.dm.d(0, 2) * rec.dm.l(0, 1);
                    assert!(m.is_positive());
                    assert_eq!(BigInt::from(rec.lambda * w1 * w2) * m, BigInt::from(iota));
                }
                SurfaceType::EP => {
                    let prod: BigInt = rec.dm.l_blocks().iter().map(|b| b[0].clone()).product();
                    assert!((BigInt::from(iota) % prod).is_zero());
                }
                kind => panic!("unexpected type {kind:?}"),
            }
        }
        assert_eq!(classify_nontoric(iota).unwrap(), recs, "rerun differs at {iota}");
    }
}

#[test]
fn parallel_ranges_do_not_depend_on_thread_count() {
    let run = |threads| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| (classify_fwpp_range(1..=150), classify_nontoric_range(1..=150).unwrap()))
    };
    assert_eq!(run(1), run(3));
}

#[test]
fn census_is_cumulative() {
    let rows = census(30).unwrap();
    assert_eq!(rows.len(), 30);
    assert_eq!((rows[0].counts.toric, rows[0].counts.nontoric_total()), (1, 1));
    let mut total = 0;
    for row in &rows {
        total += row.counts.total();
        assert_eq!(row.cumulative.total(), total);
        assert_eq!(row.counts.toric, classify_fwpp(row.picard_index).len() as u64);
    }
    let e8 = rows[0].counts.get(NontoricCase::EAeE);
    assert_eq!(e8, 1);
}
