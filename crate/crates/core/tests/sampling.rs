use std::collections::HashMap;

use petaluma::sampling::{
    coupling_k, coupling_procedure, distribution_experiment, lemma_experiment, lo_brute_force, uniform_perm,
    ExperimentKind, LemmaKind, SeededStream, Verdict,
};
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Upper 0.1% point of chi-square with `df` degrees of freedom.
fn chi2_critical(df: usize) -> f64 {
    ChiSquared::new(df as f64).unwrap().inverse_cdf(0.999)
}

fn chi2<K: std::hash::Hash + Eq>(counts: &HashMap<K, u64>, cells: usize, total: u64) -> f64 {
    let e = total as f64 / cells as f64;
    let seen: f64 = counts.values().map(|&c| (c as f64 - e).powi(2) / e).sum();
    seen + (cells - counts.len()) as f64 * e
}

#[test]
fn three_petal_draws_are_uniform() {
    let mut s = SeededStream::new(41, 0);
    let mut counts: HashMap<Vec<usize>, u64> = HashMap::new();
    for _ in 0..6000 {
        *counts.entry(uniform_perm(3, &mut s).unwrap().into_inner()).or_default() += 1;
    }
    assert_eq!(counts.len(), 6);
    let sigma = (6000.0f64 * (1.0 / 6.0) * (5.0 / 6.0)).sqrt();
    for (p, &c) in &counts {
        assert!((c as f64 - 1000.0).abs() <= 3.0 * sigma, "{p:?}: {c}");
    }
}

#[test]
fn five_petal_draws_pass_chi_square() {
    let mut s = SeededStream::new(42, 3);
    let mut counts: HashMap<Vec<usize>, u64> = HashMap::new();
    for _ in 0..24_000 {
        *counts.entry(uniform_perm(5, &mut s).unwrap().into_inner()).or_default() += 1;
    }
    assert!(chi2(&counts, 120, 24_000) < chi2_critical(119));
}

#[test]
fn exhaustive_five_matches_trefoil_count() {
    let r = distribution_experiment(ExperimentKind::C2Knot { n: 2 }, 0, 0, 2, true).unwrap();
    assert_eq!(r.histogram.total, 120);
    assert_eq!((r.histogram.count(0), r.histogram.count(1)), (110, 10));
    assert!(distribution_experiment(ExperimentKind::C2Knot { n: 5 }, 0, 0, 1, true).is_err());
}

#[test]
fn same_partition_same_histogram() {
    let kind = ExperimentKind::LkLink { m: 6, n: 9 };
    let a = distribution_experiment(kind, 3000, 77, 3, false).unwrap();
    let b = distribution_experiment(kind, 3000, 77, 3, false).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.histogram.total, 3000);
    let c = distribution_experiment(kind, 3000, 78, 3, false).unwrap();
    assert_ne!(a.histogram, c.histogram);
}

#[test]
fn matching_of_four_points() {
    // of the three matchings of {1,2} and {3,4}, only one has no mixed edge
    let r = lemma_experiment(LemmaKind::Match { m: 1, n: 1 }, 30_000, 43, 2).unwrap();
    let sigma = (30_000.0f64 * (1.0 / 3.0) * (2.0 / 3.0)).sqrt();
    assert!((r.successes as f64 - 10_000.0).abs() <= 3.0 * sigma, "{}", r.successes);
    assert_eq!(r.verdict, Verdict::Vacuous);
    assert!(lemma_experiment(LemmaKind::Match { m: 0, n: 3 }, 10, 0, 1).is_err());
}

/// Largest number of subset sums in a half-open window `[s, s + w)` over
/// all sums `s`, for integer weights.
fn lo_oracle(a: &[i64]) -> u64 {
    let w = a.iter().map(|x| x.abs()).min().unwrap();
    let sums: Vec<i64> = (0..1u32 << a.len())
        .map(|mask| a.iter().enumerate().map(|(i, &x)| if mask >> i & 1 == 1 { x } else { 0 }).sum())
        .collect();
    sums.iter().map(|&s| sums.iter().filter(|&&x| s <= x && x < s + w).count() as u64).max().unwrap()
}

#[test]
fn littlewood_offord_against_oracle() {
    let mut s = SeededStream::new(44, 0);
    use rand::Rng;
    for t in 1..=10 {
        for _ in 0..5 {
            let a: Vec<i64> = (0..t).map(|_| s.rng().random_range(1..=6) * if s.rng().random_bool(0.5) { 1 } else { -1 }).collect();
            let f: Vec<f64> = a.iter().map(|&x| x as f64).collect();
            let r = lo_brute_force(&f).unwrap();
            assert_eq!(r.max_count, lo_oracle(&a), "{a:?}");
            assert!(r.max_count <= r.bound);
        }
    }
    // all weights equal attains the bound
    assert_eq!(lo_brute_force(&[1.0; 8]).unwrap().max_count, 70);
}

#[test]
fn coupling_parameters() {
    assert_eq!(coupling_k(1), 1);
    assert_eq!(coupling_k(8usize.pow(5)), 1);
    assert_eq!(coupling_k(8usize.pow(5) + 1), 2);
    assert_eq!(coupling_k(16usize.pow(5)), 2);
}

#[test]
fn coupling_degradation_small_n() {
    for n in [4, 10] {
        for seed in 0..100 {
            let tr = coupling_procedure(n, seed).unwrap();
            assert!(tr.degradation_ok && tr.degradation_7k_ok, "n {n} seed {seed}");
            assert_eq!(tr.candidates.len(), n.min(8 * tr.k));
            assert!(tr.residual.unsigned_abs() as usize <= {
                let b = tr.candidates.iter().filter(|c| c.big && c.selected).count();
                b * b.saturating_sub(1) / 2
            });
        }
    }
}

#[test]
fn coupled_permutation_stays_uniform() {
    let (n, runs) = (10usize, 1000u64);
    let p = 2 * n + 1;
    let mut first: HashMap<usize, u64> = HashMap::new();
    let mut top: HashMap<usize, u64> = HashMap::new();
    for seed in 0..runs {
        let tr = coupling_procedure(n, 1_000 + seed).unwrap();
        let h = tr.pi_final.heights();
        *first.entry(h[0]).or_default() += 1;
        *top.entry(tr.pi_final.position_of(p)).or_default() += 1;
    }
    assert!(chi2(&first, p, runs) < chi2_critical(p - 1));
    assert!(chi2(&top, p, runs) < chi2_critical(p - 1));
}
