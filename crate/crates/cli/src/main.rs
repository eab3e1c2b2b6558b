//! `oramsey`: build, check, extract from and search ordered Ramsey colorings.
//!
//! Exit codes: 0 success, 1 not found, 2 usage or parse error, 3 verification
//! failure, 4 extractor failure, 5 search budget exhausted.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, bail, Context};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use oramsey::construct::{verify_avoids, Construction};
use oramsey::detect::count_mono_cliques;
use oramsey::extract::{
    erdos_rado_stepdown, extract_3red_or_broom, extract_f3_or_path, extract_h3_or_path, extract_k4_or_tight_path,
    extract_square_path, Extraction, SquarePathConfig, StepDownOutcome,
};
use oramsey::search::{exact_ordered_ramsey, min_mono_k4, K4Mode, SearchConfig, SearchError, NODE_BUDGET_ENV};
use oramsey::{Certificate, CertificateRecord, Color, OrderedColoring, PatternSpec, Target, ViolationKind};

const NOT_FOUND: u8 = 1;
const USAGE: u8 = 2;
const VERIFICATION: u8 = 3;
const EXTRACT_FAILURE: u8 = 4;
const BUDGET: u8 = 5;

#[derive(Parser)]
#[command(name = "oramsey", version, about = "Ordered Ramsey colorings: constructions, detectors, extractors, search")]
struct Cli {
    /// Worker threads (default: available parallelism). Results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an explicit coloring, check what it avoids and write it out.
    Construct(ConstructArgs),
    /// Look for a monochromatic pattern or a red violation in a coloring file.
    Detect(DetectArgs),
    /// Run a certificate-producing extractor on a coloring file.
    Extract(ExtractArgs),
    /// Exact ordered Ramsey number of two patterns by exhaustive search.
    Search(SearchArgs),
    /// Check a certificate, or the absence of patterns, against a coloring file.
    Verify(VerifyArgs),
    /// Count monochromatic cliques, or minimise monochromatic K4s.
    Count(CountArgs),
    /// Write a monochromatic or seeded random coloring.
    Generate(GenerateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Block,
    EhB,
    EhC,
    Sequence,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(value_enum)]
    kind: Kind,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Distinct integers, comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    seq: Option<Vec<i64>>,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Skip the detector check; the file header is marked unverified.
    #[arg(long)]
    no_verify: bool,
}

#[derive(Args)]
#[command(group(ArgGroup::new("target").required(true).args(["pattern", "path_power", "tight_path", "clique", "broom", "violation"])))]
struct DetectArgs {
    file: PathBuf,
    /// Pattern token: path:<l>:<s>, tight:<k>:<s>, broom:<k>:<a>:<m> or clique:<k>:<s>.
    #[arg(long)]
    pattern: Option<PatternSpec>,
    /// Power and length of a path power (graphs only).
    #[arg(long, num_args = 2, value_names = ["POWER", "LEN"])]
    path_power: Option<Vec<usize>>,
    /// Tight path on this many vertices, with the file's uniformity.
    #[arg(long)]
    tight_path: Option<usize>,
    /// Clique on this many vertices, with the file's uniformity.
    #[arg(long)]
    clique: Option<usize>,
    /// Broom with this many path vertices and bristles, with the file's uniformity.
    #[arg(long, num_args = 2, value_names = ["PATH", "BRISTLES"])]
    broom: Option<Vec<usize>>,
    /// Red violation: h3, f3 or tred:<t>. Ignores --color.
    #[arg(long)]
    violation: Option<ViolationKind>,
    #[arg(long, default_value = "red")]
    color: Color,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algorithm {
    SquarePath,
    K4OrPath,
    H3OrPath,
    F3OrPath,
    #[value(name = "broom-3red")]
    Broom3red,
    Stepdown,
}

#[derive(Args)]
struct ExtractArgs {
    file: PathBuf,
    #[arg(value_enum)]
    algorithm: Algorithm,
    /// Path length (k4-or-path, h3-or-path, f3-or-path, broom-3red).
    #[arg(long)]
    n: Option<usize>,
    /// Clique-side parameter of k4-or-path.
    #[arg(long)]
    m: Option<usize>,
    /// Red square-path length.
    #[arg(long)]
    a: Option<usize>,
    /// Blue square-path length.
    #[arg(long)]
    b: Option<usize>,
    /// Sequence length for stepdown.
    #[arg(long)]
    target_len: Option<usize>,
    /// Density constant of square-path, as p/q.
    #[arg(long)]
    alpha: Option<String>,
    /// Slack of square-path, as p/q.
    #[arg(long)]
    epsilon: Option<String>,
    /// Below this many vertices per unit of max(a, b), square-path runs the exact detector.
    #[arg(long)]
    min_recursion_size: Option<usize>,
    /// Include the extractor's step log.
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    red: PatternSpec,
    #[arg(long)]
    blue: PatternSpec,
    /// DFS node limit.
    #[arg(long, env = NODE_BUDGET_ENV)]
    node_budget: Option<u64>,
    /// Wall-clock limit in seconds.
    #[arg(long)]
    time_budget: Option<u64>,
    /// Assignments enumerated before subtrees are handed to workers.
    #[arg(long)]
    split_depth: Option<usize>,
    /// Start from N = 1 instead of the explicit constructions.
    #[arg(long)]
    no_seeds: bool,
    /// Where to write the largest avoiding coloring.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
#[command(group(ArgGroup::new("check").required(true).multiple(true).args(["certificate", "red", "blue", "violation"])))]
struct VerifyArgs {
    file: PathBuf,
    /// Certificate JSON as printed by detect or extract.
    #[arg(long)]
    certificate: Option<PathBuf>,
    /// Check that no red copy of this pattern exists.
    #[arg(long)]
    red: Option<PatternSpec>,
    /// Check that no blue copy of this pattern exists.
    #[arg(long)]
    blue: Option<PatternSpec>,
    /// Check that no red violation of this kind exists.
    #[arg(long)]
    violation: Option<ViolationKind>,
}

#[derive(Args)]
#[command(group(ArgGroup::new("source").required(true).args(["file", "min_k4"])))]
struct CountArgs {
    file: Option<PathBuf>,
    /// Clique size counted in the file.
    #[arg(long, default_value_t = 3)]
    q: usize,
    /// Minimise monochromatic K4s over 2-colorings of K_N.
    #[arg(long, value_name = "N")]
    min_k4: Option<usize>,
    /// Local search instead of exhaustive enumeration.
    #[arg(long, requires = "min_k4")]
    heuristic: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 8)]
    restarts: usize,
    #[arg(long, default_value_t = 20_000)]
    iterations: usize,
    /// Where to write the minimising coloring.
    #[arg(short, long, requires = "min_k4")]
    output: Option<PathBuf>,
}

#[derive(Args)]
#[command(group(ArgGroup::new("fill_or_seed").required(true).args(["fill", "seed"])))]
struct GenerateArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    fill: Option<Color>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(short, long)]
    output: PathBuf,
}

/// Error carrying an explicit exit code.
#[derive(Debug)]
struct Exit(u8, String);

impl std::fmt::Display for Exit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.1)
    }
}

impl std::error::Error for Exit {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Exit(USAGE, msg.into()).into()
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if let Some(Exit(code, _)) = e.downcast_ref::<Exit>() {
        return *code;
    }
    match e.downcast_ref::<oramsey::Error>() {
        Some(oramsey::Error::Verification(_)) => VERIFICATION,
        _ => USAGE,
    }
}

fn print(v: &Value) {
    let text = serde_json::to_string_pretty(v).expect("json values serialize");
    // A closed pipe is not worth a panic.
    let _ = writeln!(io::stdout().lock(), "{text}");
}

fn load(path: &Path) -> anyhow::Result<OrderedColoring> {
    OrderedColoring::load(path).with_context(|| format!("reading {}", path.display()))
}

fn save(c: &OrderedColoring, path: &Path, unverified: bool) -> anyhow::Result<()> {
    c.save_marked(path, unverified).with_context(|| format!("writing {}", path.display()))
}

fn need<T>(v: Option<T>, flag: &str, what: &str) -> anyhow::Result<T> {
    v.ok_or_else(|| usage(format!("{what} needs --{flag}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = cli
        .threads
        .map_or(Ok(()), oramsey::configure_threads)
        .map_err(anyhow::Error::from)
        .and_then(|()| run(cli.command, cli.threads));
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(command: Command, threads: Option<usize>) -> anyhow::Result<u8> {
    match command {
        Command::Construct(a) => construct(a),
        Command::Detect(a) => detect_cmd(a),
        Command::Extract(a) => extract(a),
        Command::Search(a) => search(a, threads),
        Command::Verify(a) => verify(a),
        Command::Count(a) => count(a),
        Command::Generate(a) => generate(a),
    }
}

fn construct(a: ConstructArgs) -> anyhow::Result<u8> {
    let what = match a.kind {
        Kind::Block => Construction::Block { s: need(a.s, "s", "block")?, n: need(a.n, "n", "block")? },
        Kind::EhB => Construction::EhB { n: need(a.n, "n", "eh-b")? },
        Kind::EhC => Construction::EhC { n: need(a.n, "n", "eh-c")? },
        Kind::Sequence => Construction::Sequence { seq: need(a.seq, "seq", "sequence")? },
    };
    let c = what.generate()?;
    let targets = what.targets()?;
    let check = if a.no_verify { None } else { Some(verify_avoids(&c, &targets)) };
    let verified = matches!(check, Some(Ok(())));
    if let Some(path) = &a.output {
        save(&c, path, !verified)?;
    }
    let mut out = json!({
        "construction": what.to_string(),
        "k": c.uniformity(),
        "n": c.vertex_count(),
        "avoids": targets,
        "verified": verified,
        "file": a.output.as_ref().map(|p| p.display().to_string()),
    });
    if let Some(Err(e)) = &check {
        out["error"] = json!(e.to_string());
    }
    print(&out);
    Ok(match check {
        Some(Err(oramsey::Error::Verification(_))) => VERIFICATION,
        Some(Err(e)) => return Err(e.into()),
        _ => 0,
    })
}

fn detect_cmd(a: DetectArgs) -> anyhow::Result<u8> {
    let c = load(&a.file)?;
    let k = c.uniformity();
    let target = if let Some(kind) = a.violation {
        Target::violation(kind)
    } else {
        let pattern = if let Some(p) = a.pattern {
            p
        } else if let Some(v) = a.path_power {
            PatternSpec::PathPower { power: v[0], len: v[1] }
        } else if let Some(len) = a.tight_path {
            PatternSpec::tight(k, len)
        } else if let Some(len) = a.clique {
            PatternSpec::Clique { k, len }
        } else if let Some(v) = a.broom {
            PatternSpec::Broom { k, path: v[0], bristles: v[1] }
        } else {
            unreachable!("clap requires one target")
        };
        Target::pattern(pattern, a.color)
    };
    match target.find(&c)? {
        Some(cert) => {
            cert.validate(&c)?;
            let mut out = cert.to_json();
            out["found"] = json!(true);
            print(&out);
            Ok(0)
        }
        None => {
            print(&json!({ "found": false }));
            Ok(NOT_FOUND)
        }
    }
}

fn extract(a: ExtractArgs) -> anyhow::Result<u8> {
    let c = load(&a.file)?;
    let x: Extraction = match a.algorithm {
        Algorithm::SquarePath => {
            let mut cfg = SquarePathConfig::default();
            if let Some(s) = &a.alpha {
                cfg.alpha = s.parse().map_err(|e| usage(format!("--alpha {s}: {e}")))?;
            }
            if let Some(s) = &a.epsilon {
                cfg.epsilon = s.parse().map_err(|e| usage(format!("--epsilon {s}: {e}")))?;
            }
            if let Some(m) = a.min_recursion_size {
                cfg.min_recursion_size = m;
            }
            extract_square_path(&c, need(a.a, "a", "square-path")?, need(a.b, "b", "square-path")?, &cfg)?
        }
        Algorithm::K4OrPath => {
            extract_k4_or_tight_path(&c, need(a.n, "n", "k4-or-path")?, need(a.m, "m", "k4-or-path")?)?
        }
        Algorithm::H3OrPath => extract_h3_or_path(&c, need(a.n, "n", "h3-or-path")?)?,
        Algorithm::F3OrPath => extract_f3_or_path(&c, need(a.n, "n", "f3-or-path")?)?,
        Algorithm::Broom3red => extract_3red_or_broom(&c, need(a.n, "n", "broom-3red")?)?,
        Algorithm::Stepdown => {
            let out = erdos_rado_stepdown(&c, need(a.target_len, "target-len", "stepdown")?)?;
            print(&out.to_json());
            return Ok(match out {
                StepDownOutcome::PreHomogeneous(_) => 0,
                StepDownOutcome::Failure(_) => EXTRACT_FAILURE,
            });
        }
    };
    print(&x.to_json(a.trace));
    Ok(if x.outcome.is_failure() { EXTRACT_FAILURE } else { 0 })
}

fn search(a: SearchArgs, threads: Option<usize>) -> anyhow::Result<u8> {
    let mut cfg = SearchConfig { threads, seed_witnesses: !a.no_seeds, ..SearchConfig::default() };
    if let Some(n) = a.node_budget {
        cfg.node_budget = n;
    }
    if let Some(s) = a.time_budget {
        cfg.time_budget = Duration::from_secs(s);
    }
    if let Some(d) = a.split_depth {
        cfg.split_depth = d;
    }
    let file = a.output.as_ref().map(|p| p.display().to_string());
    match exact_ordered_ramsey(&a.red, &a.blue, &cfg) {
        Ok(r) => {
            if let Some(path) = &a.output {
                save(&r.witness, path, false)?;
            }
            print(&r.to_json(file.as_deref()));
            Ok(0)
        }
        Err(SearchError::Budget(b)) => {
            let written = match (&a.output, &b.witness) {
                (Some(path), Some(w)) => {
                    save(w, path, false)?;
                    file.as_deref()
                }
                _ => None,
            };
            print(&b.to_json(written));
            Ok(BUDGET)
        }
        Err(SearchError::Core(e)) => Err(e.into()),
    }
}

fn verify(a: VerifyArgs) -> anyhow::Result<u8> {
    let c = load(&a.file)?;
    let mut checks = Vec::new();
    if let Some(path) = &a.certificate {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let record: CertificateRecord =
            serde_json::from_str(&text).map_err(|e| usage(format!("{}: not a certificate: {e}", path.display())))?;
        let cert = Certificate::from_record(record)?;
        let result = cert.validate(&c);
        checks.push(json!({
            "check": format!("certificate {cert}"),
            "ok": result.is_ok(),
            "error": result.err().map(|e| e.to_string()),
        }));
    }
    let mut targets = Vec::new();
    targets.extend(a.red.map(|p| Target::pattern(p, Color::Red)));
    targets.extend(a.blue.map(|p| Target::pattern(p, Color::Blue)));
    targets.extend(a.violation.map(Target::violation));
    for t in targets {
        let found = t.find(&c)?;
        checks.push(json!({
            "check": format!("avoids {t}"),
            "ok": found.is_none(),
            "certificate": found.map(|f| f.to_json()),
        }));
    }
    let valid = checks.iter().all(|v| v["ok"] == json!(true));
    print(&json!({ "valid": valid, "checks": checks }));
    Ok(if valid { 0 } else { VERIFICATION })
}

fn count(a: CountArgs) -> anyhow::Result<u8> {
    if let Some(n) = a.min_k4 {
        let mode = if a.heuristic {
            K4Mode::Heuristic { seed: a.seed, restarts: a.restarts, iterations: a.iterations }
        } else {
            K4Mode::Exhaustive
        };
        let r = min_mono_k4(n, mode)?;
        if let Some(path) = &a.output {
            save(&r.witness, path, false)?;
        }
        print(&json!({
            "n": n,
            "mono_k4": r.count,
            "exact": r.exact,
            "witness_file": a.output.as_ref().map(|p| p.display().to_string()),
        }));
        return Ok(0);
    }
    let path = a.file.ok_or_else(|| anyhow!("count needs a file or --min-k4"))?;
    let c = load(&path)?;
    if c.uniformity() != 2 {
        bail!(usage(format!("clique counting needs a graph coloring, file has k = {}", c.uniformity())));
    }
    let (red, blue) = count_mono_cliques(&c, a.q)?;
    print(&json!({ "n": c.vertex_count(), "q": a.q, "red": red, "blue": blue, "total": red + blue }));
    Ok(0)
}

fn generate(a: GenerateArgs) -> anyhow::Result<u8> {
    let c = match (a.fill, a.seed) {
        (Some(color), _) => OrderedColoring::new(a.k, a.n, color)?,
        (None, Some(seed)) => OrderedColoring::seeded(a.k, a.n, seed)?,
        (None, None) => unreachable!("clap requires --fill or --seed"),
    };
    save(&c, &a.output, false)?;
    print(&json!({
        "k": a.k,
        "n": a.n,
        "red": c.count_red(),
        "edges": c.len(),
        "file": a.output.display().to_string(),
    }));
    Ok(0)
}
