mod common;

use std::sync::Arc;

use common::{brute_phi, family, naive_correlation, naive_is_ideal};
use seqspan_core::correlation::family_spectrum;
use seqspan_core::family::generate_section4_sequence;
use seqspan_core::span::{berlekamp_massey, lemma7_sum, predicted_span, rho_sum, run_index, theorem13_sum_check};
use seqspan_core::{FieldTower, LegendreSpec};

fn check_lemma2(m: u32, k: u32) {
    let params = family(m, k, Some(1), &[1]);
    let seqs = params.generate_all().unwrap();
    let spectrum = family_spectrum(&seqs).unwrap();
    let n = params.tower().n();
    let half = 1i64 << (n / 2);
    let allowed = [-1, half - 1, -half - 1];
    assert!(
        spectrum.values().all(|v| allowed.contains(&v)),
        "{:?}",
        spectrum.value_counts
    );
    assert_eq!(spectrum.r_max, (half + 1) as u64);
    let size = seqs.len() as u64;
    assert_eq!(spectrum.total(), size * size * params.period() as u64 - size);
    // spot-check a few triples against the definition
    for (h, l, tau) in [(0, 1, 0), (3, 7, 11), (size as usize - 1, 2, 100)] {
        let r = naive_correlation(&seqs[h], &seqs[l], tau);
        assert!(allowed.contains(&r));
    }
}

#[test]
fn lemma2_spectrum_n8() {
    check_lemma2(2, 2);
}

#[test]
fn lemma2_spectrum_n12() {
    check_lemma2(3, 2);
    check_lemma2(2, 3);
}

#[test]
fn ideal_members() {
    assert!(naive_is_ideal(
        &family(3, 2, Some(1), &[3]).generate_sequence(0).unwrap()
    ));
    assert!(naive_is_ideal(
        &family(2, 2, Some(1), &[1]).generate_sequence(0).unwrap()
    ));
    for (m, k) in [(3, 1), (3, 2)] {
        let tower = Arc::new(FieldTower::new(m, k).unwrap());
        for zeta in 0..2 {
            let spec = LegendreSpec::new(m, Some(3), zeta).unwrap();
            let s = generate_section4_sequence(Arc::clone(&tower), &spec).unwrap();
            assert_eq!(s.period(), (1 << (2 * m * k)) - 1);
            assert!(naive_is_ideal(&s), "m={m} k={k} zeta={zeta}");
        }
    }
}

#[test]
fn small_kasami_collapse() {
    let params = family(6, 1, Some(1), &[1]);
    let n = params.tower().n() as usize;
    let spans: Vec<usize> = (0..params.size())
        .map(|h| berlekamp_massey(&params.generate_sequence(h).unwrap()).0)
        .collect();
    assert_eq!(spans[0], n);
    assert!(spans[1..].iter().all(|&s| s == 3 * n / 2));
    assert_eq!(spans.iter().max(), Some(&(3 * n / 2)));
}

#[test]
fn subfamily_is_a_majority() {
    let params = family(3, 2, None, &[3]);
    let members = params.classify_all().unwrap().iter().filter(|c| c.in_f_prime).count() as u64 + 1;
    let half = (brute_phi(63) + brute_phi(65)) / 2;
    assert_eq!(half, 42);
    assert!(members > half);
}

#[test]
fn s0_has_the_smallest_span() {
    for params in [
        family(3, 2, None, &[3]),
        family(2, 3, None, &[1]),
        family(4, 2, None, &[1, 7]),
    ] {
        let zero = predicted_span(&params, 0).unwrap();
        for h in 1..params.size() {
            assert!(
                zero < predicted_span(&params, h).unwrap(),
                "{} h={h}",
                params.descriptor()
            );
        }
    }
}

#[test]
fn lemma7_bounds_and_growth() {
    for (m, k) in [(3, 2), (2, 3), (4, 2), (3, 3), (4, 3), (2, 5)] {
        let params = family(m, k, None, &[1]);
        let u = params.u();
        for class in params.classify_all().unwrap().iter().filter(|c| c.in_f_prime) {
            let mut previous = None;
            for t in 1..m {
                let out = lemma7_sum(t, m, k, Some(class)).unwrap();
                assert!(out.holds, "m={m} k={k} t={t} h={}", class.h);
                let sum = rho_sum(run_index(t), u, m, k, Some(class)).unwrap();
                if let Some(prev) = previous {
                    assert!(sum > (3 * k as u128 - 1) * (1 << (k - 2)) * prev);
                }
                previous = Some(sum);
            }
        }
    }
}

#[test]
fn theorem13_small() {
    let c = theorem13_sum_check(3, 2, Some(3)).unwrap();
    assert_eq!(c.span0 + c.span1, 60);
    assert!(c.sum_holds() && c.bound_holds());
    assert_eq!((c.span0, c.span1), (c.predicted0, c.predicted1));
    let c = theorem13_sum_check(3, 1, Some(3)).unwrap();
    assert_eq!(c.span0 + c.span1, 18);
    assert!(c.sum_holds() && c.bound_holds());
}

#[test]
fn example15_both_spans() {
    let c = theorem13_sum_check(7, 1, Some(3)).unwrap();
    assert_eq!(c.span1, 1232);
    assert_eq!(c.span0, 826);
    assert_eq!(c.expected_sum, 2058);
    assert_eq!(c.threshold, 1029);
    assert_eq!((c.predicted0, c.predicted1), (826, 1232));
}
