//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on usage or input errors, 2 when a
//! verification (acceptance check, petalize `--verify`, violated bound)
//! fails. Malformed input never panics.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::invariants::{diagram_invariants, jones_polynomial, linking_number, perm_invariants, Strategy};
use crate::io::{load_results, parse_link, parse_pd, parse_perm, persist_result, results_path, RecordFilter, ResultRecord};
use crate::moves::{error_decomposition, smooth, swap_effect, swap_epsilon, AdjacentSwap};
use crate::petal::petal_to_diagram;
use crate::petalize::{petalize_with, CurveVariant};
use crate::sampling::{distribution_experiment, lo_brute_force, ExperimentKind, Verdict};
use crate::verify::{run_check, CHECKS};

/// Largest diagram for which Jones is computed without being asked.
const AUTO_JONES_CROSSINGS: usize = 60;
/// Largest petalize output for which the full Alexander polynomial is
/// compared; beyond it only `c2` is.
const VERIFY_DELTA_CROSSINGS: usize = 120;

#[derive(Debug, Parser)]
#[command(name = "petaluma", version, about = "Petal diagrams of knots: invariants, moves, conversion and sampling")]
pub struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Results log (newline-delimited JSON). Defaults to $PETALUMA_RESULTS,
    /// then ./petaluma-results.ndjson.
    #[arg(long, global = true, value_name = "FILE")]
    pub results: Option<PathBuf>,
    /// Do not append to the results log.
    #[arg(long, global = true)]
    pub no_save: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Alexander polynomial, c2 and optionally Jones of a petal knot.
    Invariants {
        /// Heights, e.g. "(1,3,5,2,4)".
        perm: String,
        /// jet or full_poly; defaults by petal count.
        #[arg(long)]
        strategy: Option<Strategy>,
        /// Also compute the Jones polynomial.
        #[arg(long)]
        jones: bool,
    },
    /// Linking number of a two-component petal link.
    Lk {
        /// Heights and half-counts, e.g. "(1,4,2,3; 1,1)".
        link: String,
    },
    /// Smooth the crossing of heights t and t+1.
    Smooth { perm: String, t: usize },
    /// Effect of adjacent swaps on c2, single and combined.
    SwapReport {
        perm: String,
        /// Swap positions t (heights t and t+1 exchange).
        #[arg(required = true)]
        swaps: Vec<usize>,
    },
    /// Convert a PD code into a petal permutation.
    Petalize {
        /// PD file ("-" reads standard input).
        #[arg(long)]
        pd: PathBuf,
        #[arg(long, default_value = "tree")]
        variant: CurveVariant,
        /// Check that the output has the input's invariants.
        #[arg(long)]
        verify: bool,
    },
    /// Exhaustive c2 histogram over all of S_p.
    Enumerate {
        /// Odd petal count, at most 9.
        #[arg(long)]
        p: usize,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Seeded Monte Carlo histogram with a pointmass bound report.
    Sample(SampleArgs),
    /// Run the acceptance checks.
    Verify {
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        threads: usize,
        /// Run only these check ids.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
    /// Brute-force Littlewood-Offord count for the given weights.
    Lo {
        /// Comma- or space-separated nonzero weights.
        #[arg(required = true, allow_hyphen_values = true)]
        weights: Vec<String>,
    },
    /// List records in the results log.
    Results {
        #[arg(long)]
        subcommand: Option<String>,
        /// Parameter filter, key=value (value parsed as JSON when possible).
        #[arg(long = "param", value_name = "KEY=VALUE")]
        params: Vec<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    #[value(name = "c2_knot", alias = "c2")]
    C2Knot,
    #[value(name = "lk_link", alias = "lk")]
    LkLink,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long, value_enum)]
    pub kind: KindArg,
    /// Half petal count (knots: p = 2n+1; links: second component).
    #[arg(long)]
    pub n: usize,
    /// First component half count (links only).
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, default_value_t = 10_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker count; also fixes the substream partition.
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    /// Enumerate all of S_p instead of sampling (knots, p <= 9).
    #[arg(long)]
    pub exhaustive: bool,
    /// Write the full result as JSON.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Write the histogram as `value,count` CSV.
    #[arg(long, value_name = "FILE")]
    pub csv: Option<PathBuf>,
}

/// A usage or input error; exits with 1.
#[derive(Debug)]
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

/// Output of one subcommand: text for humans, JSON payload for machines
/// and the log, and whether a verification failed.
struct Outcome {
    text: String,
    payload: Value,
    params: Value,
    save: bool,
    failed: Option<String>,
}

impl Outcome {
    fn new(text: String, params: Value, payload: Value) -> Self {
        Self { text, payload, params, save: false, failed: None }
    }
}

/// Parses `args` (including the program name) and runs the command,
/// writing to `out` and `err`. Returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let rendered = e.render().to_string();
            let _ = if code == 0 { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    match dispatch(&cli.command, cli.results.as_deref()) {
        Ok(o) => {
            let printed = if cli.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&o.payload).expect("values serialize"))
            } else {
                write!(out, "{}", o.text)
            };
            if printed.is_err() {
                return 1;
            }
            let logged = o.save || (cli.results.is_some() && !matches!(cli.command, Command::Results { .. }));
            if logged && !cli.no_save {
                let path = results_path(cli.results.as_deref());
                let rec = ResultRecord::new(name_of(&cli.command), o.params, o.payload);
                match persist_result(&path, &rec) {
                    Ok(true) => {
                        let _ = writeln!(err, "note: identical result already logged in {} (hash {})", path.display(), &rec.hash[..12]);
                    }
                    Ok(false) => {}
                    Err(e) => {
                        let _ = writeln!(err, "warning: could not write {}: {e}", path.display());
                    }
                }
            }
            match o.failed {
                Some(why) => {
                    let _ = writeln!(err, "verification failed: {why}");
                    2
                }
                None => 0,
            }
        }
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

/// Runs with the process arguments and standard streams.
pub fn run(args: impl IntoIterator<Item = OsString>) -> i32 {
    let (stdout, stderr) = (std::io::stdout(), std::io::stderr());
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

fn name_of(c: &Command) -> &'static str {
    match c {
        Command::Invariants { .. } => "invariants",
        Command::Lk { .. } => "lk",
        Command::Smooth { .. } => "smooth",
        Command::SwapReport { .. } => "swap-report",
        Command::Petalize { .. } => "petalize",
        Command::Enumerate { .. } => "enumerate",
        Command::Sample(_) => "sample",
        Command::Verify { .. } => "verify",
        Command::Lo { .. } => "lo",
        Command::Results { .. } => "results",
    }
}

fn dispatch(c: &Command, results: Option<&Path>) -> Result<Outcome, Failure> {
    match c {
        Command::Invariants { perm, strategy, jones } => cmd_invariants(perm, *strategy, *jones),
        Command::Lk { link } => cmd_lk(link),
        Command::Smooth { perm, t } => cmd_smooth(perm, *t),
        Command::SwapReport { perm, swaps } => cmd_swap_report(perm, swaps),
        Command::Petalize { pd, variant, verify } => cmd_petalize(pd, *variant, *verify),
        Command::Enumerate { p, threads } => cmd_enumerate(*p, *threads),
        Command::Sample(a) => cmd_sample(a),
        Command::Verify { seed, threads, only } => cmd_verify(*seed, *threads, only),
        Command::Lo { weights } => cmd_lo(weights),
        Command::Results { subcommand, params } => cmd_results(results, subcommand.clone(), params),
    }
}

fn cmd_invariants(text: &str, strategy: Option<Strategy>, jones: bool) -> Result<Outcome, Failure> {
    let perm = parse_perm(text)?;
    let r = perm_invariants(&perm, strategy, jones)?;
    let mut s = format!("perm: {perm}\ncrossings: {}\n", r.crossings);
    if let Some(d) = &r.delta {
        s += &format!("alexander: {d}\n");
    }
    s += &format!("c2: {}\nstrategy: {}\n", r.c2, r.strategy.name());
    if let Some(j) = &r.jones {
        s += &format!("jones: {j}\n");
    }
    let params = json!({ "perm": perm.heights(), "strategy": r.strategy.name(), "jones": jones });
    Ok(Outcome::new(s, params, r.to_json()))
}

fn cmd_lk(text: &str) -> Result<Outcome, Failure> {
    let link = parse_link(text)?;
    let lk = linking_number(&link)?;
    let params = json!({ "link": link.heights(), "m": link.m(), "n": link.n() });
    Ok(Outcome::new(format!("link: {link}\nlk: {lk}\n"), params.clone(), json!({ "link": params, "lk": lk })))
}

fn cmd_smooth(text: &str, t: usize) -> Result<Outcome, Failure> {
    let perm = parse_perm(text)?;
    let s = smooth(&perm, t)?;
    let lk = linking_number(&s.link)?;
    let eps = swap_epsilon(&perm, t)?;
    let fmt = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    let text = format!(
        "m: {}\nn: {}\nlink: ({} | {})\nmerged side: {:?}\nlk: {lk}\nepsilon: {eps}\n",
        s.m,
        s.link.n(),
        fmt(s.link.first()),
        fmt(s.link.second()),
        s.merged_side
    );
    let payload = json!({
        "m": s.m, "n": s.link.n(), "first": s.link.first(), "second": s.link.second(),
        "merged_side": format!("{:?}", s.merged_side), "lk": lk, "epsilon": eps,
    });
    Ok(Outcome::new(text, json!({ "perm": perm.heights(), "t": t }), payload))
}

fn cmd_swap_report(text: &str, swaps: &[usize]) -> Result<Outcome, Failure> {
    let perm = parse_perm(text)?;
    let mut s = String::new();
    let mut singles = Vec::new();
    for &t in swaps {
        let e = swap_effect(&perm, t)?;
        s += &format!("t = {t}: epsilon {:+}, lk {}, delta c2 {}\n", e.epsilon, e.lk, e.delta_c2);
        singles.push(json!({ "t": t, "epsilon": e.epsilon, "lk": e.lk, "delta_c2": e.delta_c2 }));
    }
    let mut payload = json!({ "perm": perm.heights(), "swaps": singles });
    if swaps.len() > 1 {
        let list: Vec<AdjacentSwap> = swaps.iter().map(|&t| AdjacentSwap { t }).collect();
        let order: Vec<usize> = (0..list.len()).collect();
        let b = error_decomposition(&perm, &list, &order)?;
        s += &format!(
            "combined: delta c2 {}, residual {} (bound {})\n",
            b.delta_c2,
            b.residual,
            b.residual_bound()
        );
        payload["combined"] = json!({ "delta_c2": b.delta_c2, "residual": b.residual, "bound": b.residual_bound() });
    }
    Ok(Outcome::new(s, json!({ "perm": perm.heights(), "swaps": swaps }), payload))
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
    }
}

fn cmd_petalize(path: &Path, variant: CurveVariant, verify: bool) -> Result<Outcome, Failure> {
    let d = parse_pd(&read_input(path)?)?;
    let r = petalize_with(&d, variant)?;
    let mut text = format!(
        "crossings: {}\npetals: {}\nperm: {}\nfactors: {}\n",
        d.crossing_count(),
        r.perm.petals(),
        r.perm,
        r.factors.len()
    );
    let mut payload = json!({
        "crossings": d.crossing_count(),
        "petals": r.perm.petals(),
        "perm": r.perm.heights(),
        "factors": serde_json::to_value(&r.factors)?,
    });
    let mut failed = None;
    if verify {
        let out = petal_to_diagram(&r.perm);
        let full = out.crossing_count() <= VERIFY_DELTA_CROSSINGS;
        let strategy = if full { Strategy::FullPoly } else { Strategy::Jet };
        let with_jones = d.crossing_count() <= AUTO_JONES_CROSSINGS && out.crossing_count() <= AUTO_JONES_CROSSINGS;
        let a = diagram_invariants(&d, Strategy::FullPoly, with_jones)?;
        let b = diagram_invariants(&out, strategy, false)?;
        let mut problems = Vec::new();
        if r.perm.petals() + 1 > 2 * d.crossing_count().max(1) {
            problems.push(format!("{} petals exceed 2c-1", r.perm.petals()));
        }
        if a.c2 != b.c2 {
            problems.push(format!("c2 {} became {}", a.c2, b.c2));
        }
        if full && a.delta != b.delta {
            problems.push("Alexander polynomial changed".to_string());
        }
        let mut jones_same = None;
        if let Some(j) = &a.jones {
            let jq = jones_polynomial(&out);
            jones_same = Some(if *j == jq { "equal" } else if *j == jq.mirror() { "mirror" } else { "different" });
            if jones_same == Some("different") {
                problems.push(format!("Jones {j} became {jq}"));
            }
        }
        text += &format!(
            "verify: c2 {} -> {}, alexander {}, jones {}: {}\n",
            a.c2,
            b.c2,
            if full { "compared" } else { "skipped (large)" },
            jones_same.unwrap_or("skipped (large)"),
            if problems.is_empty() { "ok" } else { "MISMATCH" }
        );
        payload["verify"] = json!({ "ok": problems.is_empty(), "problems": problems, "jones": jones_same });
        if !problems.is_empty() {
            failed = Some(problems.join("; "));
        }
    }
    let params = json!({ "pd": crate::io::emit_pd(&d), "variant": variant, "verify": verify });
    Ok(Outcome { failed, ..Outcome::new(text, params, payload) })
}

fn histogram_text(h: &crate::sampling::Histogram, label: &str) -> String {
    let mut s = format!("{label:>6}  count\n");
    for (v, c) in &h.counts {
        s += &format!("{v:>6}  {c}\n");
    }
    s
}

fn cmd_enumerate(p: usize, threads: usize) -> Result<Outcome, Failure> {
    if p % 2 == 0 {
        return Err(Failure(format!("p = {p} must be odd")));
    }
    let r = distribution_experiment(ExperimentKind::C2Knot { n: p / 2 }, 0, 0, threads.max(1), true)?;
    let text = format!("S_{p}: {} permutations\n{}", r.histogram.total, histogram_text(&r.histogram, "c2"));
    let payload = json!({ "p": p, "histogram": r.histogram.to_json() });
    Ok(Outcome { save: true, ..Outcome::new(text, json!({ "p": p }), payload) })
}

fn cmd_sample(a: &SampleArgs) -> Result<Outcome, Failure> {
    let kind = match a.kind {
        KindArg::C2Knot => {
            if a.m.is_some() {
                return Err(Failure("--m applies to lk_link only".into()));
            }
            ExperimentKind::C2Knot { n: a.n }
        }
        KindArg::LkLink => {
            let m = a.m.ok_or_else(|| Failure("lk_link needs --m".into()))?;
            ExperimentKind::LkLink { m, n: a.n }
        }
    };
    if a.threads == 0 {
        return Err(Failure("--threads must be at least 1".into()));
    }
    let r = distribution_experiment(kind, a.samples, a.seed, a.threads, a.exhaustive)?;
    if let Some(path) = &a.out {
        std::fs::write(path, serde_json::to_string_pretty(&r)?).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    }
    if let Some(path) = &a.csv {
        std::fs::write(path, r.histogram.to_csv()).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    }
    let rep = &r.report;
    let mode = r.histogram.mode().map(|(v, _)| v);
    let text = format!(
        "{} samples of {}\n{}mean: {:.4}\nmode: {}\npointmass: {:.5} (99% CI {:.5}..{:.5}), bound {:.5}: {:?}\n",
        r.histogram.total,
        kind.name(),
        histogram_text(&r.histogram, if matches!(kind, ExperimentKind::C2Knot { .. }) { "c2" } else { "lk" }),
        r.histogram.mean(),
        mode.map_or("-".into(), |v| v.to_string()),
        rep.frequency,
        rep.ci.0,
        rep.ci.1,
        rep.bound,
        rep.verdict
    );
    let params = json!({
        "kind": kind, "samples": a.samples, "seed": a.seed, "threads": a.threads, "exhaustive": a.exhaustive,
    });
    let payload = json!({ "histogram": r.histogram.to_json(), "report": serde_json::to_value(rep)? });
    let failed = (rep.verdict == Verdict::Violated).then(|| format!("pointmass CI lower {:.5} above bound {:.5}", rep.ci.0, rep.bound));
    Ok(Outcome { save: true, failed, ..Outcome::new(text, params, payload) })
}

fn cmd_verify(seed: u64, threads: usize, only: &[u8]) -> Result<Outcome, Failure> {
    let ids: Vec<u8> = if only.is_empty() { CHECKS.iter().map(|c| c.0).collect() } else { only.to_vec() };
    if let Some(bad) = ids.iter().find(|&&i| !CHECKS.iter().any(|c| c.0 == i)) {
        return Err(Failure(format!("no check with id {bad}")));
    }
    let outcomes: Vec<_> = ids.iter().map(|&i| run_check(i, seed, threads.max(1))).collect();
    let mut text: String = outcomes.iter().map(|o| format!("{o}\n")).collect();
    let failed: Vec<String> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id.to_string()).collect();
    text += &format!("{} of {} checks passed\n", outcomes.len() - failed.len(), outcomes.len());
    let payload = json!({
        "checks": outcomes.iter().map(|o| json!({ "id": o.id, "name": o.name, "passed": o.passed, "detail": o.detail })).collect::<Vec<_>>(),
    });
    let params = json!({ "seed": seed, "threads": threads, "only": ids });
    let failed = (!failed.is_empty()).then(|| format!("checks {} failed", failed.join(", ")));
    Ok(Outcome { failed, ..Outcome::new(text, params, payload) })
}

fn cmd_lo(words: &[String]) -> Result<Outcome, Failure> {
    let mut a = Vec::new();
    for tok in words.iter().flat_map(|w| w.split([',', ' '])).filter(|t| !t.is_empty()) {
        let x: f64 = tok.trim().parse().map_err(|_| Failure(format!("not a number: {tok:?}")))?;
        if !x.is_finite() || x == 0.0 {
            return Err(Failure(format!("weights must be finite and nonzero, got {tok}")));
        }
        a.push(x);
    }
    let r = lo_brute_force(&a)?;
    let text = format!(
        "t = {}: at most {} of {} subset sums in an open interval of length min|a_i| (bound {}), attained from {}\n",
        a.len(),
        r.max_count,
        1u64 << a.len(),
        r.bound,
        r.interval_start
    );
    let failed = (r.max_count > r.bound).then(|| format!("{} exceeds {}", r.max_count, r.bound));
    Ok(Outcome { failed, ..Outcome::new(text, json!({ "weights": a }), serde_json::to_value(&r)?) })
}

fn cmd_results(results: Option<&Path>, subcommand: Option<String>, params: &[String]) -> Result<Outcome, Failure> {
    let mut filter = RecordFilter { subcommand, params: serde_json::Map::new() };
    for kv in params {
        let (k, v) = kv.split_once('=').ok_or_else(|| Failure(format!("expected KEY=VALUE, got {kv:?}")))?;
        let v = serde_json::from_str(v).unwrap_or_else(|_| Value::String(v.to_string()));
        filter.params.insert(k.to_string(), v);
    }
    let path = results_path(results);
    let loaded = load_results(&path, &filter)?;
    let mut text = String::new();
    for r in &loaded.records {
        text += &format!("{}  {:<12} {}  {}\n", r.timestamp, r.subcommand, &r.hash[..12], r.params);
    }
    if !loaded.skipped.is_empty() {
        text += &format!("skipped corrupted lines: {:?}\n", loaded.skipped);
    }
    let payload = json!({ "records": serde_json::to_value(&loaded.records)?, "skipped": loaded.skipped });
    Ok(Outcome::new(text, json!({}), payload))
}
