//! The acceptance checks, shared by the `verify` subcommand and the test
//! suite. Each check is exact unless it says otherwise and reports one
//! line.

use std::time::Instant;

use rand::Rng;
use serde::Serialize;

use crate::invariants::{alexander_polynomial, casson_c2, jones_polynomial, skein_c2, Strategy};
use crate::io::{content_hash, parse_pd};
use crate::moves::{error_decomposition, smooth, swap_effect, AdjacentSwap};
use crate::petal::{petal_to_diagram, PetalPermutation, Symmetry};
use crate::petalize::{connect_sum_perms, petalize};
use crate::poly::LaurentPolynomial;
use crate::sampling::{
    all_permutations, distribution_experiment, lemma_experiment, lo_brute_force, uniform_heights, uniform_perm,
    ExperimentKind, LemmaKind, SeededStream,
};

/// PD fixtures shipped with the crate.
pub const FIXTURES: &[(&str, &str)] = &[
    ("3_1", include_str!("../fixtures/3_1.pd")),
    ("4_1", include_str!("../fixtures/4_1.pd")),
    ("5_1", include_str!("../fixtures/5_1.pd")),
    ("5_2", include_str!("../fixtures/5_2.pd")),
    ("6_1", include_str!("../fixtures/6_1.pd")),
    ("6_2", include_str!("../fixtures/6_2.pd")),
    ("6_3", include_str!("../fixtures/6_3.pd")),
    ("granny", include_str!("../fixtures/granny.pd")),
    ("square", include_str!("../fixtures/square.pd")),
    ("nugatory", include_str!("../fixtures/nugatory.pd")),
    ("unknot_descending", include_str!("../fixtures/unknot_descending.pd")),
    ("hopf", include_str!("../fixtures/hopf.pd")),
];

pub fn fixture(name: &str) -> Option<&'static str> {
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub const CHECKS: &[(u8, &str)] = &[
    (1, "exhaustive S3 is unknotted"),
    (2, "exhaustive S5 has 10 trefoils"),
    (3, "figure-eight permutation"),
    (4, "smoothing worked example"),
    (5, "swap identity"),
    (6, "disjoint swap residuals"),
    (7, "jet, full polynomial and skein agree"),
    (8, "symmetry invariance"),
    (9, "petalize corpus"),
    (10, "connected sum combiner"),
    (11, "Littlewood-Offord brute force"),
    (12, "matching and cycle lemmas"),
    (13, "linking number distribution"),
    (14, "c2 of a 41-petal knot"),
    (15, "sampling determinism"),
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl std::fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}] {:>2}. {} ({:.2} s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.seconds,
            self.detail
        )
    }
}

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn perm(h: &[usize]) -> PetalPermutation {
    PetalPermutation::new(h.to_vec()).expect("literal permutation")
}

fn delta_c2(p: &PetalPermutation) -> Result<(LaurentPolynomial, i64), String> {
    let d = petal_to_diagram(p);
    let delta = alexander_polynomial(&d).map_err(|e| format!("{p}: {e}"))?;
    let c2 = casson_c2(&d, Strategy::Jet).map_err(|e| format!("{p}: {e}"))?;
    Ok((delta, c2))
}

fn c2(p: &PetalPermutation) -> Result<i64, String> {
    casson_c2(&petal_to_diagram(p), Strategy::Jet).map_err(|e| format!("{p}: {e}"))
}

fn trefoil_poly() -> LaurentPolynomial {
    "t - 1 + t^-1".parse().expect("literal")
}

fn figure_eight_poly() -> LaurentPolynomial {
    "-t + 3 - t^-1".parse().expect("literal")
}

fn check_s3() -> Check {
    for h in all_permutations(3) {
        let p = perm(&h);
        let (delta, c) = delta_c2(&p)?;
        ensure(delta == LaurentPolynomial::one() && c == 0, || format!("{p}: Δ = {delta}, c2 = {c}"))?;
    }
    Ok("6/6 have Δ = 1, c2 = 0".into())
}

fn check_s5() -> Check {
    let mut trefoils = Vec::new();
    for h in all_permutations(5) {
        let p = perm(&h);
        match c2(&p)? {
            0 => {}
            1 => trefoils.push(p),
            v => return Err(format!("{p}: c2 = {v}")),
        }
    }
    ensure(trefoils.len() == 10, || format!("{} permutations with c2 = 1", trefoils.len()))?;
    let standard = perm(&[1, 3, 5, 2, 4]);
    ensure(trefoils.contains(&standard), || "(1,3,5,2,4) is not among them".into())?;
    let (delta, _) = delta_c2(&standard)?;
    ensure(delta == trefoil_poly(), || format!("(1,3,5,2,4) has Δ = {delta}"))?;
    Ok("10 of 120 have c2 = 1, (1,3,5,2,4) among them".into())
}

fn check_figure_eight() -> Check {
    let p = perm(&[1, 5, 3, 7, 2, 4, 6]);
    let (delta, c) = delta_c2(&p)?;
    ensure(c == -1 && delta == figure_eight_poly(), || format!("Δ = {delta}, c2 = {c}"))?;
    Ok(format!("c2 = {c}, Δ = {delta}"))
}

fn check_smoothing() -> Check {
    let s = smooth(&perm(&[2, 6, 10, 4, 9, 1, 3, 11, 8, 7, 5]), 10).map_err(|e| e.to_string())?;
    let show = |v: &[usize]| format!("({})", v.iter().map(usize::to_string).collect::<Vec<_>>().join(","));
    let (a, b) = (show(s.link.first()), show(s.link.second()));
    ensure(s.m == 2 && a == "(4,9,1,3)" && b == "(8,7,5,2,6,10)", || format!("m = {}, {a} {b}", s.m))?;
    Ok(format!("m = 2, {a} and {b}"))
}

fn swap_ok(p: &PetalPermutation, t: usize) -> Result<(), String> {
    let e = swap_effect(p, t).map_err(|e| e.to_string())?;
    ensure(e.delta_c2 == e.epsilon * e.lk, || {
        format!("{p}, t = {t}: Δc2 = {}, ε = {}, lk = {}", e.delta_c2, e.epsilon, e.lk)
    })
}

fn check_swap_identity(seed: u64) -> Check {
    let mut cases = 0;
    for h in all_permutations(5) {
        for t in 1..5 {
            swap_ok(&perm(&h), t)?;
            cases += 1;
        }
    }
    for (i, p) in [9usize, 11].into_iter().enumerate() {
        let mut s = SeededStream::new(seed, 50 + i as u64);
        for _ in 0..500 {
            let pi = uniform_perm(p, &mut s).map_err(|e| e.to_string())?;
            let t = s.rng().random_range(1..p);
            swap_ok(&pi, t)?;
            cases += 1;
        }
    }
    Ok(format!("{cases} cases exact"))
}

/// `k` random pairwise disjoint swap indices in `1..p`.
fn disjoint_swaps(p: usize, k: usize, s: &mut SeededStream) -> Vec<AdjacentSwap> {
    loop {
        let mut ts: Vec<usize> = (0..k).map(|_| s.rng().random_range(1..p)).collect();
        ts.sort_unstable();
        if ts.windows(2).all(|w| w[1] >= w[0] + 2) {
            return ts.into_iter().map(|t| AdjacentSwap { t }).collect();
        }
    }
}

fn check_residuals(seed: u64) -> Check {
    let mut worst = [0i64; 2];
    for (slot, (k, bound)) in [(2usize, 1i64), (3, 3)].into_iter().enumerate() {
        let mut s = SeededStream::new(seed, 60 + k as u64);
        for _ in 0..500 {
            let pi = uniform_perm(11, &mut s).map_err(|e| e.to_string())?;
            let swaps = disjoint_swaps(11, k, &mut s);
            let mut order: Vec<usize> = (0..k).collect();
            rand::seq::SliceRandom::shuffle(order.as_mut_slice(), s.rng());
            let r = error_decomposition(&pi, &swaps, &order).map_err(|e| e.to_string())?;
            ensure(r.residual.abs() <= bound, || format!("{pi} {swaps:?}: residual {}", r.residual))?;
            worst[slot] = worst[slot].max(r.residual.abs());
        }
    }
    Ok(format!("max |residual| {} for k = 2 (bound 1), {} for k = 3 (bound 3)", worst[0], worst[1]))
}

fn strategies_agree(p: &PetalPermutation) -> Result<(), String> {
    let d = petal_to_diagram(p);
    let jet = casson_c2(&d, Strategy::Jet).map_err(|e| e.to_string())?;
    let full = casson_c2(&d, Strategy::FullPoly).map_err(|e| e.to_string())?;
    let skein = skein_c2(&d).map_err(|e| e.to_string())?;
    ensure(jet == full && full == skein, || format!("{p}: jet {jet}, full {full}, skein {skein}"))
}

fn check_strategies(seed: u64) -> Check {
    for h in all_permutations(5) {
        strategies_agree(&perm(&h))?;
    }
    for p in [7usize, 9] {
        let mut s = SeededStream::new(seed, 70 + p as u64);
        for _ in 0..200 {
            strategies_agree(&uniform_perm(p, &mut s).map_err(|e| e.to_string())?)?;
        }
    }
    Ok("S5 and 200 each of S7, S9 agree".into())
}

fn check_symmetries(seed: u64) -> Check {
    let mut count = 0;
    for p in [5usize, 7, 9] {
        let mut s = SeededStream::new(seed, 80 + p as u64);
        for _ in 0..200 {
            let pi = uniform_perm(p, &mut s).map_err(|e| e.to_string())?;
            let base = delta_c2(&pi)?;
            let back = |sym| (1..p).fold(pi.clone(), |q, _| q.apply_symmetry(sym));
            let pos = s.rng().random_range(1..=p + 1);
            let level = s.rng().random_range(1..=p + 1);
            let variants = [
                ("rotate positions", pi.apply_symmetry(Symmetry::RotatePositions)),
                ("rotate positions back", back(Symmetry::RotatePositions)),
                ("rotate values", pi.apply_symmetry(Symmetry::RotateValues)),
                ("rotate values back", back(Symmetry::RotateValues)),
                ("reflect", pi.apply_symmetry(Symmetry::Reflect)),
                ("stabilize", pi.stabilize(pos, level).map_err(|e| e.to_string())?),
            ];
            for (name, q) in variants {
                ensure(delta_c2(&q)? == base, || format!("{name} of {pi} gives {q} with other invariants"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} transformed permutations keep (Δ, c2)"))
}

fn check_petalize() -> Check {
    let mut lengths = Vec::new();
    for name in ["3_1", "4_1", "5_1", "5_2", "6_1", "6_2", "6_3", "granny", "square"] {
        let d = parse_pd(fixture(name).expect("fixture")).map_err(|e| format!("{name}: {e}"))?;
        let q = petalize(&d).map_err(|e| format!("{name}: {e}"))?;
        let c = d.crossing_count();
        ensure(q.petals() < 2 * c, || format!("{name}: {} petals from {c} crossings", q.petals()))?;
        let delta = alexander_polynomial(&d).map_err(|e| e.to_string())?;
        let c2_in = casson_c2(&d, Strategy::FullPoly).map_err(|e| e.to_string())?;
        let (delta_out, c2_out) = delta_c2(&q)?;
        ensure(delta == delta_out && c2_in == c2_out, || format!("{name}: {delta}/{c2_in} became {delta_out}/{c2_out}"))?;
        let (j, jq) = (jones_polynomial(&d), jones_polynomial(&petal_to_diagram(&q)));
        ensure(j == jq || j == jq.mirror(), || format!("{name}: Jones {j} became {jq}"))?;
        lengths.push(format!("{name}:{}", q.petals()));
    }
    Ok(format!("petals {}", lengths.join(" ")))
}

fn check_connected_sum(seed: u64) -> Check {
    let mut pool: Vec<PetalPermutation> =
        all_permutations(5).iter().map(|h| perm(h)).filter(|p| c2(p) == Ok(1)).collect();
    pool.push(perm(&[1, 5, 3, 7, 2, 4, 6]));
    let mut s = SeededStream::new(seed, 100);
    for _ in 0..50 {
        let a = &pool[s.rng().random_range(0..pool.len())];
        let b = &pool[s.rng().random_range(0..pool.len())];
        let (da, ca) = delta_c2(a)?;
        let (db, cb) = delta_c2(b)?;
        let sum = connect_sum_perms(a, b);
        let (ds, cs) = delta_c2(&sum)?;
        ensure(cs == ca + cb && ds == &da * &db, || format!("{a} # {b} = {sum}: Δ {ds}, c2 {cs}"))?;
    }
    Ok("50 pairs: c2 additive, Δ multiplicative".into())
}

fn check_lo(seed: u64) -> Check {
    let mut s = SeededStream::new(seed, 110);
    let mut worst = 0;
    for _ in 0..100 {
        let a: Vec<f64> = (0..16).map(|_| s.rng().random_range(1.0..=5.0)).collect();
        let r = lo_brute_force(&a).map_err(|e| e.to_string())?;
        ensure(r.max_count <= 12870, || format!("{} sums in one interval", r.max_count))?;
        worst = worst.max(r.max_count);
    }
    Ok(format!("largest interval count {worst} <= 12870"))
}

fn check_lemmas(seed: u64, parts: usize) -> Check {
    let m = lemma_experiment(LemmaKind::Match { m: 400, n: 400 }, 10_000, seed, parts).map_err(|e| e.to_string())?;
    let c = lemma_experiment(LemmaKind::Cycle { big_n: 1001, k: 100 }, 10_000, seed, parts).map_err(|e| e.to_string())?;
    for r in [&m, &c] {
        ensure(r.below_bound(), || format!("{}: frequency {} with CI {:?} against {}", r.experiment, r.frequency, r.ci, r.bound))?;
    }
    Ok(format!(
        "match {:.4} (CI upper {:.4} <= {}), cycle {:.4} (CI upper {:.4} <= {})",
        m.frequency, m.ci.1, m.bound, c.frequency, c.ci.1, c.bound
    ))
}

fn check_lk(seed: u64, parts: usize) -> Check {
    let r = distribution_experiment(ExperimentKind::LkLink { m: 100, n: 100 }, 100_000, seed, parts, false)
        .map_err(|e| e.to_string())?;
    ensure(r.report.below_bound(), || format!("max pointmass CI {:?} exceeds {}", r.report.ci, r.report.bound))?;
    let h = &r.histogram;
    let n = h.total as f64;
    let mean = h.mean();
    let var = h.counts.iter().map(|(&v, &c)| (v as f64 - mean).powi(2) * c as f64).sum::<f64>() / n;
    let se = (var / n).sqrt();
    ensure(mean.abs() <= 3.0 * se, || format!("mean {mean:.3} outside 3σ = {:.3}", 3.0 * se))?;
    // Under exact symmetry c(v) | c(v) + c(-v) is Binomial(., 1/2).
    let (mut chi2, mut pairs, mut bad) = (0.0, 0usize, Vec::new());
    for (&v, &cv) in h.counts.range(1..) {
        let cm = h.count(-v);
        let z = (cv as f64 - cm as f64) / ((cv + cm) as f64).sqrt().max(1.0);
        chi2 += z * z;
        pairs += 1;
        if z.abs() > 3.0 {
            bad.push(format!("±{v}: {cv} against {cm}"));
        }
    }
    ensure(bad.is_empty(), || {
        format!("{} of {pairs} pairs beyond 3σ ({}); mean {mean:.3} (se {se:.3}), chi2 {chi2:.1} on {pairs} pairs", bad.len(), bad.join(", "))
    })?;
    Ok(format!(
        "max pointmass {:.4} (CI upper {:.4} <= 0.6), mean {mean:.3} (se {se:.3}), every ±v pair within 3σ",
        r.report.frequency, r.report.ci.1
    ))
}

fn check_large(seed: u64) -> Check {
    let mut s = SeededStream::new(seed, 140);
    let pi = PetalPermutation::new(uniform_heights(41, &mut s)).expect("odd length");
    let d = petal_to_diagram(&pi);
    let start = Instant::now();
    let c = casson_c2(&d, Strategy::Jet).map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1} s"))?;
    Ok(format!("{} crossings, c2 = {c} in {secs:.2} s", d.crossing_count()))
}

fn check_determinism(seed: u64, parts: usize) -> Check {
    let kind = ExperimentKind::C2Knot { n: 4 };
    let run = || -> Result<String, String> {
        let r = distribution_experiment(kind, 2_000, seed, parts, false).map_err(|e| e.to_string())?;
        let params = serde_json::json!({ "kind": kind, "samples": 2_000, "seed": seed, "threads": parts });
        Ok(content_hash("sample", &params, &r.histogram.to_json()))
    };
    let (a, b) = (run()?, run()?);
    ensure(a == b, || format!("hashes differ: {a} vs {b}"))?;
    Ok(format!("hash {}", &a[..16]))
}

/// Runs check `id` (1..=15).
pub fn run_check(id: u8, seed: u64, parts: usize) -> CheckOutcome {
    let start = Instant::now();
    let result = match id {
        1 => check_s3(),
        2 => check_s5(),
        3 => check_figure_eight(),
        4 => check_smoothing(),
        5 => check_swap_identity(seed),
        6 => check_residuals(seed),
        7 => check_strategies(seed),
        8 => check_symmetries(seed),
        9 => check_petalize(),
        10 => check_connected_sum(seed),
        11 => check_lo(seed),
        12 => check_lemmas(seed, parts),
        13 => check_lk(seed, parts),
        14 => check_large(seed),
        15 => check_determinism(seed, parts),
        _ => Err(format!("no check {id}")),
    };
    let name = CHECKS.iter().find(|(i, _)| *i == id).map_or("unknown", |(_, n)| n);
    let (passed, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CheckOutcome { id, name, passed, detail, seconds: start.elapsed().as_secs_f64() }
}

pub fn run_all(seed: u64, parts: usize) -> Vec<CheckOutcome> {
    CHECKS.iter().map(|&(id, _)| run_check(id, seed, parts)).collect()
}
