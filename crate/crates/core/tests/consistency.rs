use std::sync::Arc;
use std::thread;

use num_bigint::BigInt;
use num_rational::BigRational;
use repcount::engine::gl_order;
use repcount::fforacle::{enumerate_invertible, gl_size, irreducible_polys, Budget, FieldSpec};
use repcount::typecomb::count_irreducibles;
use repcount::{CountingEngine, Mode};

#[test]
fn irreducible_counts_match_enumeration() {
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let f = FieldSpec::with_order(q).unwrap();
        for i in 1..=4usize {
            if q.pow(i as u32) > 5_000 {
                continue;
            }
            let listed = irreducible_polys(&f, i).len();
            let formula = count_irreducibles(i, false).eval_int(q as i64);
            assert_eq!(
                formula,
                BigRational::from_integer(listed.into()),
                "q={q} i={i}"
            );
            if i == 1 {
                let without_t = count_irreducibles(1, true).eval_int(q as i64);
                assert_eq!(without_t, BigRational::from_integer((listed - 1).into()));
            }
        }
    }
}

#[test]
fn invertible_matrices_are_counted_by_gl_order() {
    let budget = Budget::default();
    for (n, q) in [(1, 7u64), (2, 2), (2, 3), (2, 4), (2, 5), (3, 2)] {
        let f = FieldSpec::with_order(q).unwrap();
        let listed = enumerate_invertible(n, &f, &budget).unwrap().count() as u128;
        assert_eq!(listed, gl_size(n, q as usize));
        let poly = gl_order(n).eval_int(q as i64);
        assert_eq!(poly, BigRational::from_integer(BigInt::from(listed)));
    }
}

#[test]
fn memo_does_not_change_results() {
    let memo = CountingEngine::new();
    let plain = CountingEngine::new().without_memo();
    for mode in [Mode::AllSemisimple, Mode::Mixed, Mode::ConjugacyClasses] {
        for n in 1..=3 {
            for k in 2..=3 {
                assert_eq!(
                    memo.count(n, k, mode).unwrap().poly(),
                    plain.count(n, k, mode).unwrap().poly(),
                    "{mode} n={n} k={k}"
                );
            }
        }
    }
    assert!(memo.memo_len() > 0);
    assert_eq!(plain.memo_len(), 0);
}

#[test]
fn cache_round_trip() {
    let dir = std::env::temp_dir().join(format!("repcount-cache-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("memo.json");
    let first = CountingEngine::new();
    let p = first.count(3, 3, Mode::Mixed).unwrap();
    first.save_cache(&path).unwrap();

    let second = CountingEngine::new();
    let loaded = second.load_cache(&path).unwrap();
    assert_eq!(loaded, first.memo_len());
    assert_eq!(second.count(3, 3, Mode::Mixed).unwrap().poly(), p.poly());
    assert_eq!(second.memo_len(), first.memo_len());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn missing_cache_is_empty() {
    let e = CountingEngine::new();
    assert_eq!(
        e.load_cache(std::path::Path::new("/nonexistent/memo.json"))
            .unwrap(),
        0
    );
}

#[test]
fn shared_engine_across_threads() {
    let engine = Arc::new(CountingEngine::new());
    let expected = CountingEngine::new()
        .count(4, 3, Mode::AllSemisimple)
        .unwrap();
    let handles: Vec<_> = (0..4)
        .map(|_| {
            let e = Arc::clone(&engine);
            thread::spawn(move || e.count(4, 3, Mode::AllSemisimple).unwrap())
        })
        .collect();
    for h in handles {
        assert_eq!(h.join().unwrap().poly(), expected.poly());
    }
}

#[test]
fn genus_and_prank_select_tuple_length_and_mode() {
    let e = CountingEngine::new();
    assert_eq!(
        e.hom_count(2, 1, 0).unwrap().poly(),
        e.count(2, 2, Mode::AllSemisimple).unwrap().poly()
    );
    assert_eq!(
        e.hom_count(2, 2, 1).unwrap().poly(),
        e.count(2, 4, Mode::Mixed).unwrap().poly()
    );
    assert!(e.hom_count(2, 1, 2).is_err());
}
