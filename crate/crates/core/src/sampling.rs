//! Seeded Monte Carlo experiments on uniformly random petal knots and links.
//!
//! Every experiment splits its samples into a fixed number of parts, draws
//! part `i` from substream `i` of the seed, and adds the per-part
//! histograms. Results depend only on `(seed, parts)`, not on scheduling.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::invariants::{casson_c2, linking_number, InvariantError, Strategy};
use crate::moves::{error_decomposition, perform_swaps, smooth, swap_term, AdjacentSwap, MoveError};
use crate::petal::{petal_to_diagram, LinkPetalPermutation, PetalPermutation};

/// Two-sided 99% normal quantile.
pub const Z99: f64 = 2.5758293035489004;

/// Largest knot the distribution experiment accepts.
pub const MAX_SAMPLED_PETALS: usize = 41;
/// Largest `p` for exhaustive enumeration of `S_p`.
pub const MAX_EXHAUSTIVE_PETALS: usize = 9;
pub const MAX_LO_TERMS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SamplingError {
    #[error("{what} = {got} exceeds the limit {limit}")]
    TooLarge { what: &'static str, got: usize, limit: usize },
    #[error("bad parameters: {0}")]
    ParamError(String),
    #[error("entry {0} is zero")]
    ZeroEntry(usize),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error("thread pool: {0}")]
    Threads(String),
}

/// ChaCha8 keyed by `seed`, on stream `substream`.
#[derive(Debug, Clone)]
pub struct SeededStream {
    pub seed: u64,
    pub substream: u64,
    rng: ChaCha8Rng,
}

impl SeededStream {
    pub fn new(seed: u64, substream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(substream);
        Self { seed, substream, rng }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

/// Uniform permutation of `1..=len` (Fisher–Yates).
pub fn uniform_heights(len: usize, stream: &mut SeededStream) -> Vec<usize> {
    let mut h: Vec<usize> = (1..=len).collect();
    h.shuffle(stream.rng());
    h
}

pub fn uniform_perm(p: usize, stream: &mut SeededStream) -> Result<PetalPermutation, SamplingError> {
    PetalPermutation::new(uniform_heights(p, stream)).map_err(|e| SamplingError::ParamError(e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Histogram {
    pub counts: BTreeMap<i64, u64>,
    pub total: u64,
}

impl Histogram {
    pub fn add(&mut self, v: i64) {
        *self.counts.entry(v).or_default() += 1;
        self.total += 1;
    }

    pub fn merge(mut self, other: Histogram) -> Histogram {
        for (v, c) in other.counts {
            *self.counts.entry(v).or_default() += c;
        }
        self.total += other.total;
        self
    }

    pub fn count(&self, v: i64) -> u64 {
        self.counts.get(&v).copied().unwrap_or(0)
    }

    /// Most frequent value and its count (smallest value on ties).
    pub fn mode(&self) -> Option<(i64, u64)> {
        self.counts.iter().fold(None, |best, (&v, &c)| match best {
            Some((_, bc)) if bc >= c => best,
            _ => Some((v, c)),
        })
    }

    pub fn mean(&self) -> f64 {
        if self.total == 0 {
            return 0.0;
        }
        self.counts.iter().map(|(&v, &c)| v as f64 * c as f64).sum::<f64>() / self.total as f64
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("value,count\n");
        for (v, c) in &self.counts {
            out.push_str(&format!("{v},{c}\n"));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let counts: serde_json::Map<String, serde_json::Value> =
            self.counts.iter().map(|(v, c)| (v.to_string(), serde_json::json!(c))).collect();
        serde_json::json!({ "counts": counts, "total": self.total })
    }
}

/// Wilson score interval for `successes` out of `trials`.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let phat = successes as f64 / n;
    let z2 = z * z;
    let centre = (phat + z2 / (2.0 * n)) / (1.0 + z2 / n);
    let half = z / (1.0 + z2 / n) * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt();
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Consistent,
    Vacuous,
    Violated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub experiment: String,
    pub params: serde_json::Value,
    pub successes: u64,
    pub trials: u64,
    pub frequency: f64,
    pub ci: (f64, f64),
    pub bound: f64,
    pub verdict: Verdict,
}

impl BoundReport {
    pub fn new(experiment: &str, params: serde_json::Value, successes: u64, trials: u64, bound: f64) -> Self {
        let ci = wilson_interval(successes, trials, Z99);
        let verdict = if ci.0 > bound {
            Verdict::Violated
        } else if bound >= 1.0 {
            Verdict::Vacuous
        } else {
            Verdict::Consistent
        };
        let frequency = if trials == 0 { 0.0 } else { successes as f64 / trials as f64 };
        Self { experiment: experiment.to_string(), params, successes, trials, frequency, ci, bound, verdict }
    }

    /// True when the whole confidence interval lies at or below the bound.
    pub fn below_bound(&self) -> bool {
        self.ci.1 <= self.bound
    }
}

/// Splits `samples` into `parts` near-equal counts.
pub fn partition(samples: u64, parts: usize) -> Vec<u64> {
    let parts = parts.max(1) as u64;
    (0..parts).map(|i| samples / parts + u64::from(i < samples % parts)).collect()
}

/// Runs `work(stream, count)` on every part and adds the results.
fn map_reduce<T, F, M>(samples: u64, seed: u64, parts: usize, work: F, merge: M) -> Result<T, SamplingError>
where
    T: Send + Default,
    F: Fn(&mut SeededStream, u64) -> Result<T, SamplingError> + Sync,
    M: Fn(T, T) -> T + Sync,
{
    let counts = partition(samples, parts);
    let run = |(i, &n): (usize, &u64)| work(&mut SeededStream::new(seed, i as u64), n);
    #[cfg(feature = "parallel")]
    let results: Vec<Result<T, SamplingError>> = {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(parts.max(1))
            .build()
            .map_err(|e| SamplingError::Threads(e.to_string()))?;
        pool.install(|| counts.par_iter().enumerate().map(run).collect())
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<Result<T, SamplingError>> = counts.iter().enumerate().map(run).collect();
    let mut acc = T::default();
    for r in results {
        acc = merge(acc, r?);
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExperimentKind {
    /// `c2` of `K_{2n+1}`.
    C2Knot { n: usize },
    /// `lk` of `L_{2m,2n}`.
    LkLink { m: usize, n: usize },
}

impl ExperimentKind {
    pub fn name(&self) -> &'static str {
        match self {
            Self::C2Knot { .. } => "c2_knot",
            Self::LkLink { .. } => "lk_link",
        }
    }

    /// Pointmass bound: `8 / n^0.1` for knots, `6 / sqrt(min(m, n))` for links.
    pub fn bound(&self) -> f64 {
        match *self {
            Self::C2Knot { n } => 8.0 / (n as f64).powf(0.1),
            Self::LkLink { m, n } => 6.0 / (m.min(n) as f64).sqrt(),
        }
    }

    fn params(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain enum serializes")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionResult {
    pub kind: ExperimentKind,
    pub seed: u64,
    pub parts: usize,
    pub exhaustive: bool,
    pub histogram: Histogram,
    /// Event: a sample equals the most frequent value.
    pub report: BoundReport,
}

fn knot_c2(heights: Vec<usize>) -> Result<i64, SamplingError> {
    let perm = PetalPermutation::new(heights).map_err(|e| SamplingError::ParamError(e.to_string()))?;
    Ok(casson_c2(&petal_to_diagram(&perm), Strategy::Jet)?)
}

fn link_lk(heights: Vec<usize>, m: usize, n: usize) -> Result<i64, SamplingError> {
    let link = LinkPetalPermutation::new(heights, m, n).map_err(|e| SamplingError::ParamError(e.to_string()))?;
    Ok(linking_number(&link)?)
}

/// Every permutation of `1..=p` in lexicographic order.
pub fn all_permutations(p: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (1..=p).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..p).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..p).rev().find(|&j| cur[j] > cur[i - 1]).expect("a larger entry exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
    out
}

pub fn distribution_experiment(
    kind: ExperimentKind,
    samples: u64,
    seed: u64,
    parts: usize,
    exhaustive: bool,
) -> Result<DistributionResult, SamplingError> {
    let histogram = match kind {
        ExperimentKind::C2Knot { n } => {
            let p = 2 * n + 1;
            if exhaustive {
                if p > MAX_EXHAUSTIVE_PETALS {
                    return Err(SamplingError::TooLarge { what: "p", got: p, limit: MAX_EXHAUSTIVE_PETALS });
                }
                exhaustive_c2(p, parts)?
            } else {
                if p > MAX_SAMPLED_PETALS {
                    return Err(SamplingError::TooLarge { what: "p", got: p, limit: MAX_SAMPLED_PETALS });
                }
                map_reduce(
                    samples,
                    seed,
                    parts,
                    |s, count| {
                        let mut h = Histogram::default();
                        for _ in 0..count {
                            h.add(knot_c2(uniform_heights(p, s))?);
                        }
                        Ok(h)
                    },
                    Histogram::merge,
                )?
            }
        }
        ExperimentKind::LkLink { m, n } => {
            if exhaustive {
                return Err(SamplingError::ParamError("exhaustive mode is only for knots".into()));
            }
            map_reduce(
                samples,
                seed,
                parts,
                |s, count| {
                    let mut h = Histogram::default();
                    for _ in 0..count {
                        h.add(link_lk(uniform_heights(2 * m + 2 * n, s), m, n)?);
                    }
                    Ok(h)
                },
                Histogram::merge,
            )?
        }
    };
    let (_, top) = histogram.mode().unwrap_or((0, 0));
    let mut params = kind.params();
    params["samples"] = serde_json::json!(histogram.total);
    params["seed"] = serde_json::json!(seed);
    let report = BoundReport::new(kind.name(), params, top, histogram.total, kind.bound());
    Ok(DistributionResult { kind, seed, parts, exhaustive, histogram, report })
}

fn exhaustive_c2(p: usize, parts: usize) -> Result<Histogram, SamplingError> {
    let perms = all_permutations(p);
    let chunk = perms.len().div_ceil(parts.max(1)).max(1);
    let work = |block: &[Vec<usize>]| -> Result<Histogram, SamplingError> {
        let mut h = Histogram::default();
        for perm in block {
            h.add(knot_c2(perm.clone())?);
        }
        Ok(h)
    };
    #[cfg(feature = "parallel")]
    let results: Vec<Result<Histogram, SamplingError>> = {
        use rayon::prelude::*;
        perms.par_chunks(chunk).map(work).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<Result<Histogram, SamplingError>> = perms.chunks(chunk).map(work).collect();
    results.into_iter().try_fold(Histogram::default(), |acc, h| Ok(acc.merge(h?)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "lemma", rename_all = "snake_case")]
pub enum LemmaKind {
    /// Mixed edges of a random perfect matching of `2m + 2n` points.
    Match { m: usize, n: usize },
    /// Pairs `(2i-1, 2i)`, `i <= k`, placed far apart in `π ∈ S_N`.
    Cycle { big_n: usize, k: usize },
    /// Small linking numbers among the `8k` swaps of `π ∈ S_{2n+1}`.
    Swaps { n: usize, k: usize },
}

impl LemmaKind {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Match { .. } => "match",
            Self::Cycle { .. } => "cycle",
            Self::Swaps { .. } => "swaps",
        }
    }

    pub fn bound(&self) -> f64 {
        match *self {
            Self::Match { m, n } => 20.0 / m.min(n) as f64,
            Self::Cycle { k, .. } => 24.0 / k as f64,
            Self::Swaps { n, k } => 3.0 / k as f64 + 96.0 * (k * k) as f64 / (n as f64).sqrt(),
        }
    }

    fn check(&self) -> Result<(), SamplingError> {
        let bad = |s: String| Err(SamplingError::ParamError(s));
        match *self {
            Self::Match { m, n } if m.min(n) == 0 => bad("match needs m, n >= 1".into()),
            Self::Cycle { big_n, k } if k == 0 || 2 * k > big_n => bad(format!("cycle needs 1 <= K <= N/2, got K={k}, N={big_n}")),
            Self::Swaps { n, k } if k == 0 || 8 * k > n => bad(format!("swaps needs 1 <= k <= n/8, got k={k}, n={n}")),
            _ => Ok(()),
        }
    }

    /// Whether one trial shows the unlikely event.
    fn trial(&self, s: &mut SeededStream) -> Result<bool, SamplingError> {
        match *self {
            Self::Match { m, n } => {
                let points = uniform_heights(2 * m + 2 * n, s);
                let mixed = points.chunks(2).filter(|e| (e[0] <= 2 * m) != (e[1] <= 2 * m)).count();
                Ok(2 * mixed < m.min(n))
            }
            Self::Cycle { big_n, k } => {
                let h = uniform_heights(big_n, s);
                let mut pos = vec![0usize; big_n + 1];
                for (i, &v) in h.iter().enumerate() {
                    pos[v] = i;
                }
                let far = (1..=k)
                    .filter(|&i| {
                        let d = pos[2 * i].abs_diff(pos[2 * i - 1]);
                        4 * d >= big_n && 4 * d <= 3 * big_n
                    })
                    .count();
                Ok(4 * far < k)
            }
            Self::Swaps { n, k } => {
                let perm = PetalPermutation::new(uniform_heights(2 * n + 1, s)).expect("odd length");
                let mut small = 0;
                for i in 1..=8 * k {
                    let lk = linking_number(&smooth(&perm, 2 * i - 1)?.link)?;
                    if (lk.unsigned_abs() as usize) < 2 * k * k {
                        small += 1;
                    }
                }
                Ok(small > 7 * k)
            }
        }
    }
}

pub fn lemma_experiment(which: LemmaKind, trials: u64, seed: u64, parts: usize) -> Result<BoundReport, SamplingError> {
    which.check()?;
    let hits = map_reduce(
        trials,
        seed,
        parts,
        |s, count| {
            let mut hits = 0u64;
            for _ in 0..count {
                hits += u64::from(which.trial(s)?);
            }
            Ok(hits)
        },
        |a, b| a + b,
    )?;
    let mut params = serde_json::to_value(which).expect("plain enum serializes");
    params["trials"] = serde_json::json!(trials);
    params["seed"] = serde_json::json!(seed);
    Ok(BoundReport::new(which.name(), params, hits, trials, which.bound()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LoResult {
    pub max_count: u64,
    /// `C(t, floor(t/2))`.
    pub bound: u64,
    pub interval_start: f64,
}

/// Largest number of the `2^t` subset sums of `a` inside one open interval
/// of length `min |a_i|`.
pub fn lo_brute_force(a: &[f64]) -> Result<LoResult, SamplingError> {
    let t = a.len();
    if t > MAX_LO_TERMS {
        return Err(SamplingError::TooLarge { what: "t", got: t, limit: MAX_LO_TERMS });
    }
    if let Some(i) = a.iter().position(|&x| x == 0.0) {
        return Err(SamplingError::ZeroEntry(i));
    }
    let bound = crate::util::binomial(t as u64, t as u64 / 2) as u64;
    if t == 0 {
        return Ok(LoResult { max_count: 1, bound, interval_start: -0.5 });
    }
    let width = a.iter().map(|x| x.abs()).fold(f64::INFINITY, f64::min);
    let mut sums = vec![0.0f64; 1 << t];
    for (i, &x) in a.iter().enumerate() {
        let half = 1 << i;
        for s in 0..half {
            sums[half + s] = sums[s] + x;
        }
    }
    sums.sort_by(f64::total_cmp);
    let scale = a.iter().map(|x| x.abs()).sum::<f64>().max(1.0);
    let tol = 1e-9 * scale;
    let (mut best, mut start, mut j) = (0usize, sums[0], 0usize);
    for i in 0..sums.len() {
        j = j.max(i);
        // points strictly closer than `width` to sums[i] from above fit in
        // an open interval starting just below sums[i]
        while j + 1 < sums.len() && sums[j + 1] - sums[i] < width - tol {
            j += 1;
        }
        if j + 1 - i > best {
            best = j + 1 - i;
            start = sums[i];
        }
    }
    Ok(LoResult { max_count: best as u64, bound, interval_start: start })
}

/// `k = ceil(n^(1/5) / 8)`, the least `k >= 1` with `(8k)^5 >= n`.
pub fn coupling_k(n: usize) -> usize {
    let mut k = 1usize;
    while ((8 * k) as u128).pow(5) < n as u128 {
        k += 1;
    }
    k
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateTrace {
    pub t: usize,
    pub lk: i64,
    pub big: bool,
    pub selected: bool,
    /// `lk` of the smoothing taken after the non-big swaps (big swaps only).
    pub lk_after: Option<i64>,
    pub eps: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CouplingTrace {
    pub n: usize,
    pub k: usize,
    pub seed: u64,
    pub pi: PetalPermutation,
    pub candidates: Vec<CandidateTrace>,
    /// After the selected non-big swaps.
    pub pi_prime: PetalPermutation,
    /// After all selected swaps.
    pub pi_final: PetalPermutation,
    pub c2_prime: i64,
    pub c2_final: i64,
    /// `Δc2 - Σ ε lk` over the selected big swaps, taken at `pi_prime`.
    pub residual: i64,
    /// Non-big swaps applied before the big ones.
    pub early_swaps: usize,
    /// `|lk after| >= |lk| - early_swaps` for every big swap.
    pub degradation_ok: bool,
    /// The same with the slack `7k`.
    pub degradation_7k_ok: bool,
}

/// One run of the swap coupling: draw `π ∈ S_{2n+1}`, find the big swaps
/// among `(2i-1, 2i)`, apply a random subset of the other swaps, then a
/// random subset of the big ones.
pub fn coupling_procedure(n: usize, seed: u64) -> Result<CouplingTrace, SamplingError> {
    let p = 2 * n + 1;
    if p > MAX_SAMPLED_PETALS {
        return Err(SamplingError::TooLarge { what: "p", got: p, limit: MAX_SAMPLED_PETALS });
    }
    if n == 0 {
        return Err(SamplingError::ParamError("n must be at least 1".into()));
    }
    let k = coupling_k(n);
    let count = (8 * k).min(n);
    let mut stream = SeededStream::new(seed, 0);
    let pi = uniform_perm(p, &mut stream)?;
    let mut candidates = Vec::with_capacity(count);
    for i in 1..=count {
        let term = swap_term(&pi, 2 * i - 1)?;
        let big = term.lk.unsigned_abs() as usize >= 2 * k * k;
        let selected = stream.rng().random_bool(0.5);
        candidates.push(CandidateTrace { t: 2 * i - 1, lk: term.lk, big, selected, lk_after: None, eps: term.eps });
    }
    let early: Vec<bool> = candidates.iter().map(|c| c.selected && !c.big).collect();
    let early_swaps = early.iter().filter(|&&b| b).count();
    let pi_prime = perform_swaps(&pi, &early)?;
    let mut late = Vec::new();
    for c in candidates.iter_mut().filter(|c| c.big) {
        let after = swap_term(&pi_prime, c.t)?;
        c.lk_after = Some(after.lk);
        c.eps = after.eps;
        if c.selected {
            late.push(AdjacentSwap { t: c.t });
        }
    }
    let order: Vec<usize> = (0..late.len()).collect();
    let batch = error_decomposition(&pi_prime, &late, &order)?;
    let late_mask: Vec<bool> = candidates.iter().map(|c| c.selected && c.big).collect();
    let pi_final = perform_swaps(&pi_prime, &late_mask)?;
    let c2_prime = knot_c2(pi_prime.heights().to_vec())?;
    let c2_final = knot_c2(pi_final.heights().to_vec())?;
    debug_assert_eq!(c2_final - c2_prime, batch.delta_c2);
    let degrade = |slack: i64| {
        candidates.iter().filter(|c| c.big).all(|c| c.lk_after.expect("big").abs() >= c.lk.abs() - slack)
    };
    Ok(CouplingTrace {
        n,
        k,
        seed,
        degradation_ok: degrade(early_swaps as i64),
        degradation_7k_ok: degrade(7 * k as i64),
        pi,
        candidates,
        pi_prime,
        pi_final,
        c2_prime,
        c2_final,
        residual: batch.residual,
        early_swaps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a = uniform_heights(20, &mut SeededStream::new(7, 0));
        assert_eq!(a, uniform_heights(20, &mut SeededStream::new(7, 0)));
        assert_ne!(a, uniform_heights(20, &mut SeededStream::new(7, 1)));
        assert_ne!(a, uniform_heights(20, &mut SeededStream::new(8, 0)));
    }

    #[test]
    fn wilson_brackets_the_estimate() {
        let (lo, hi) = wilson_interval(10, 100, Z99);
        assert!(lo < 0.1 && 0.1 < hi);
        assert_eq!(wilson_interval(0, 100, Z99).0, 0.0);
        assert!(wilson_interval(0, 100, Z99).1 > 0.0);
    }

    #[test]
    fn verdicts() {
        assert_eq!(BoundReport::new("x", serde_json::Value::Null, 1, 100, 0.5).verdict, Verdict::Consistent);
        assert_eq!(BoundReport::new("x", serde_json::Value::Null, 1, 100, 2.0).verdict, Verdict::Vacuous);
        assert_eq!(BoundReport::new("x", serde_json::Value::Null, 90, 100, 0.5).verdict, Verdict::Violated);
    }

    #[test]
    fn partition_sums() {
        assert_eq!(partition(10, 3), vec![4, 3, 3]);
        assert_eq!(partition(2, 4), vec![1, 1, 0, 0]);
    }

    #[test]
    fn permutations_enumerated() {
        assert_eq!(all_permutations(3).len(), 6);
        assert_eq!(all_permutations(1), vec![vec![1]]);
        let all = all_permutations(5);
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 120);
    }

    #[test]
    fn lo_small_cases() {
        assert_eq!(lo_brute_force(&[1.0, 1.0]).unwrap().max_count, 2);
        assert_eq!(lo_brute_force(&[1.0, 1.0, 1.0]).unwrap().max_count, 3);
        assert_eq!(lo_brute_force(&[1.0, -1.0, 1.0]).unwrap().max_count, 3);
        assert!(matches!(lo_brute_force(&[1.0, 0.0]), Err(SamplingError::ZeroEntry(1))));
        assert!(matches!(lo_brute_force(&[1.0; 21]), Err(SamplingError::TooLarge { .. })));
    }

    #[test]
    fn coupling_k_values() {
        assert_eq!(coupling_k(4), 1);
        assert_eq!(coupling_k(8usize.pow(5)), 1);
        assert_eq!(coupling_k(8usize.pow(5) + 1), 2);
    }
}
