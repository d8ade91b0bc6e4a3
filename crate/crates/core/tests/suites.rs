//! Verification suites: tuple counts, determinism, and clean runs on every type.

use lie_fts::rootsys::DynkinType;
use lie_fts::sampling::Coverage;
use lie_fts::suite::{run_suite, Suite, SuiteReport, DEFAULT_COUNT};

fn dt(s: &str) -> DynkinType {
    s.parse().unwrap()
}

fn counts(r: &SuiteReport) -> Vec<(String, usize)> {
    r.checks.iter().map(|c| (c.check_id.clone(), c.tuples_checked)).collect()
}

fn assert_clean(r: &SuiteReport) {
    for c in &r.checks {
        assert_eq!(c.failure_count, 0, "{} {} {}: {:?}", r.suite, r.dynkin, c.check_id, c.failures);
        assert!(c.failures.is_empty());
    }
}

/// Alpha-height-1 roots of D_n in the orthonormal basis: with
/// `alpha = e2 - e3`, the alpha_2 coefficient of `v` is `v1 + v2`, and
/// `rho = e1 + e2`. These are `e1 +- e_k` and `e2 +- e_k` for `k >= 3`.
fn d_height1(n: usize) -> Vec<Vec<i32>> {
    let mut out = Vec::new();
    for i in 0..2 {
        for k in 2..n {
            for s in [1, -1] {
                let mut v = vec![0; n];
                v[i] = 1;
                v[k] = s;
                out.push(v);
            }
        }
    }
    out
}

fn dot(a: &[i32], b: &[i32]) -> i32 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Expected forms-suite counts for D_n, computed from the orthonormal model.
fn d_forms_oracle(n: usize) -> Vec<(&'static str, usize)> {
    let h1 = d_height1(n);
    let m = h1.len();
    let mut two_rho = vec![0; n];
    two_rho[0] = 2;
    two_rho[1] = 2;
    let ortho = |a: &[i32], b: &[i32]| dot(a, b) == 0;
    let ordered_pairs = (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).filter(|&(i, j)| ortho(&h1[i], &h1[j])).count();
    let mut two_rho_quads = 0;
    for a in &h1 {
        for b in &h1 {
            for c in &h1 {
                for d in &h1 {
                    let s: Vec<i32> = (0..n).map(|k| a[k] + b[k] + c[k] + d[k]).collect();
                    if s == two_rho {
                        two_rho_quads += 1;
                    }
                }
            }
        }
    }
    let mut unordered_quads = 0;
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                for d in c + 1..m {
                    let q = [a, b, c, d];
                    if (0..4).all(|i| (i + 1..4).all(|j| ortho(&h1[q[i]], &h1[q[j]]))) {
                        unordered_quads += 1;
                    }
                }
            }
        }
    }
    vec![
        ("gram-monomial", m),
        ("equal-pairs", m),
        ("rho-pairs", ordered_pairs),
        ("off-two-rho-vanishing", m.pow(4) - two_rho_quads),
        ("closed-form", two_rho_quads),
        ("pairing-sums", two_rho_quads),
        ("orthogonal-quadruples", ordered_pairs / 2 + unordered_quads),
        ("aux-product", ordered_pairs),
    ]
}

#[test]
fn d_series_forms_counts_match_orthonormal_model() {
    for n in [4, 5, 6] {
        let r = run_suite(Suite::Forms, dt(&format!("d{n}")), Coverage::Exhaustive, 1, DEFAULT_COUNT).unwrap();
        assert_eq!(r.mode, Coverage::Exhaustive);
        assert_clean(&r);
        for (id, want) in d_forms_oracle(n) {
            assert_eq!(r.check(id).unwrap().tuples_checked, want, "d{n} {id}");
        }
    }
}

#[test]
fn d4_oracle_sanity() {
    // 8 roots; 24 ordered orthogonal pairs; 216 ordered quadruples on 2 rho.
    let o = d_forms_oracle(4);
    assert_eq!(o[0].1, 8);
    assert_eq!(o[2].1, 24);
    assert_eq!(o[4].1, 216);
    assert_eq!(o[6].1, 14);
}

#[test]
fn exhaustive_counts_are_pinned() {
    let forms = |t: &str| counts(&run_suite(Suite::Forms, dt(t), Coverage::Exhaustive, 1, DEFAULT_COUNT).unwrap());
    let nums = |v: Vec<(String, usize)>| v.into_iter().map(|(_, n)| n).collect::<Vec<_>>();
    assert_eq!(nums(forms("d4")), vec![3456, 8, 8, 24, 3880, 216, 216, 14, 24]);
    assert_eq!(nums(forms("d5")), vec![11840, 12, 12, 60, 20196, 540, 540, 36, 60]);
    assert_eq!(nums(forms("e6")), vec![53568, 20, 20, 180, 158140, 1860, 1860, 120, 180]);
}

#[test]
fn fts_exhaustive_counts_follow_dimension() {
    for t in ["d4", "d5", "e6"] {
        let r = run_suite(Suite::Fts, dt(t), Coverage::Exhaustive, 1, DEFAULT_COUNT).unwrap();
        assert_clean(&r);
        let m = lie_fts::fts::FtsContext::for_type(dt(t)).unwrap().dim();
        let c = |id: &str| r.check(id).unwrap().tuples_checked;
        assert_eq!(c("fts-axiom"), DEFAULT_COUNT + m * (m - 1) / 2 * m, "{t}");
        assert_eq!(c("strictly-regular-triple"), m.pow(3), "{t}");
        assert_eq!(c("strictly-regular-quartic"), m.pow(3), "{t}");
        assert_eq!(c("golden-quartic"), 1);
        assert_eq!(c("representative-ranks"), 5);
    }
}

#[test]
fn reports_are_deterministic() {
    for suite in [Suite::Forms, Suite::Fts, Suite::Stab] {
        for t in ["d4", "e7", "f4"] {
            let a = run_suite(suite, dt(t), Coverage::sampled(11, 30), 11, 30).unwrap().to_json();
            let b = run_suite(suite, dt(t), Coverage::sampled(11, 30), 11, 30).unwrap().to_json();
            assert_eq!(a, b, "{suite} {t}");
        }
    }
}

#[test]
fn large_types_downgrade_exhaustive_requests() {
    for t in ["e7", "e8"] {
        let r = run_suite(Suite::Forms, dt(t), Coverage::Exhaustive, 3, 20).unwrap();
        assert_eq!(r.mode, Coverage::sampled(3, 20));
        assert!(r.note.as_deref().unwrap().contains("sampled"));
        assert_clean(&r);
    }
    let r = run_suite(Suite::Forms, dt("d4"), Coverage::Exhaustive, 3, 20).unwrap();
    assert!(r.note.is_none());
}

#[test]
fn every_type_passes_sampled() {
    let types = ["b4", "b5", "d4", "d5", "d6", "d7", "e6", "e7", "e8", "f4"];
    for t in types {
        for suite in [Suite::Forms, Suite::Fts, Suite::Stab] {
            let r = run_suite(suite, dt(t), Coverage::sampled(5, 20), 5, 20).unwrap();
            assert!(r.passed(), "{suite} {t}");
            assert_clean(&r);
        }
    }
}

#[test]
fn e8_forms_ten_thousand_samples() {
    let r = run_suite(Suite::Forms, dt("e8"), Coverage::sampled(1, 10_000), 1, 10_000).unwrap();
    assert_clean(&r);
    assert!(r.check("off-two-rho-vanishing").unwrap().tuples_checked <= 10_000);
}

#[test]
fn e7_fts_sampled() {
    let r = run_suite(Suite::Fts, dt("e7"), Coverage::sampled(7, 100), 7, 100).unwrap();
    assert_clean(&r);
    assert_eq!(r.check("fts-axiom").unwrap().tuples_checked, 100);
}
