use clap::{Parser, Subcommand};
use edgemap::bounds::{self, BoundReport};
use edgemap::constructions::{self, check_claims, Claim};
use edgemap::detect::{all_copies, find, Relation};
use edgemap::mapping::EdgeMapping;
use edgemap::oracle;
use edgemap::pattern::PatternGraph;
use edgemap::reproduce::{self, ClaimResult, Status, MANIFEST};
use edgemap::search::{compute_parameter_with, monte_carlo_w_witness, Budget, ParamName, SearchConfig};
use edgemap::{sha256_hex, Error, Result, SimpleGraph};
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

const EXIT_FAIL: u8 = 1;
const EXIT_SKIPPED: u8 = 3;
const EXIT_ERROR: u8 = 4;

#[derive(Parser)]
#[command(name = "edgemap", version, about = "Edge mappings of complete graphs: constructions, bounds and exhaustive search")]
struct Cli {
    /// Emit a JSON run record instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Omit wall-clock times so repeated runs are byte-identical.
    #[arg(long, global = true)]
    reproducible: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a named construction, write its mapping and check its claims.
    Construct {
        name: String,
        /// Construction parameters as key=value (for example k=7).
        #[arg(short, long = "param")]
        params: Vec<String>,
        /// Write the mapping file here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check avoidance claims such as free:K3 against a mapping file.
    Verify {
        mapping: PathBuf,
        #[arg(short, long = "claim", required = true)]
        claims: Vec<String>,
    },
    /// Look for a copy of a pattern in a relation.
    Detect {
        mapping: PathBuf,
        /// Family string, edge-list file, or graph6 prefixed with g6:
        pattern: String,
        /// fixed, shifted, strong-shifted, free or exclusive
        relation: String,
        /// Report every copy instead of the first.
        #[arg(long)]
        all: bool,
    },
    /// Evaluate a closed-form bound or certificate.
    Bound {
        /// w, wkk, corstar, g, m-tree, m-tree-star, m-star-tree or ex
        parameter: String,
        args: Vec<String>,
    },
    /// Compute m, mstar, g, w or z exactly at small orders.
    Compute {
        param: String,
        g: String,
        h: Option<String>,
        /// d0, d1, all or nohalf; must match the parameter except for g
        #[arg(long)]
        class: Option<String>,
        #[arg(long, default_value_t = 9)]
        nmax: usize,
        /// Total time budget in seconds.
        #[arg(long)]
        budget: Option<u64>,
        /// Seed for the randomized witness attempt (w only, with --trials).
        #[arg(long, default_value_t = reproduce::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        trials: u64,
        #[arg(long)]
        no_symmetry: bool,
        /// Write the largest witness mapping here.
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Brute-force oracles.
    Oracle {
        #[command(subcommand)]
        which: OracleCmd,
    },
    /// Run manifest entries and report PASS/FAIL/SKIPPED per claim.
    Reproduce {
        /// Manifest ids; all entries when omitted.
        ids: Vec<String>,
        #[arg(long, default_value_t = reproduce::DEFAULT_SEED)]
        seed: u64,
        /// List the manifest and exit.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// ex(n, G)
    Ex { n: usize, pattern: String },
    /// Fewest copies of H in an n-vertex graph with m edges.
    Supersat { n: usize, m: usize, pattern: String },
    /// Most copies of H through a single pair.
    Paircover { n: usize, pattern: String },
}

#[derive(Serialize)]
struct RunRecord {
    command: Vec<String>,
    config: BTreeMap<&'static str, Value>,
    seed: Option<u64>,
    outputs: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_ms: Option<u64>,
    hashes: BTreeMap<String, String>,
}

/// What a subcommand hands back: structured output, its text rendering,
/// the claim status for the exit code, and files written.
struct Output {
    value: Value,
    text: String,
    status: Status,
    seed: Option<u64>,
    artifacts: Vec<PathBuf>,
}

impl Output {
    fn plain(value: Value, text: String) -> Self {
        Output { value, text, status: Status::Pass, seed: None, artifacts: Vec::new() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let out = match run(&cli.cmd) {
        Ok(o) => o,
        Err(e) => {
            if cli.json {
                println!("{}", json!({ "error": e.to_string() }));
            } else {
                eprintln!("error: {e}");
            }
            return ExitCode::from(EXIT_ERROR);
        }
    };
    if cli.json {
        let mut hashes = BTreeMap::new();
        let body = serde_json::to_string(&out.value).expect("serializable");
        hashes.insert("outputs".to_string(), sha256_hex(body.as_bytes()));
        for p in &out.artifacts {
            if let Ok(bytes) = std::fs::read(p) {
                hashes.insert(p.display().to_string(), sha256_hex(&bytes));
            }
        }
        let threads = SearchConfig::from_env().threads;
        let mut config = BTreeMap::new();
        config.insert("threads", json!(threads));
        config.insert("reproducible", json!(cli.reproducible));
        let record = RunRecord {
            command: std::env::args().collect(),
            config,
            seed: out.seed,
            outputs: out.value,
            wall_ms: (!cli.reproducible).then(|| started.elapsed().as_millis() as u64),
            hashes,
        };
        emit(&format!("{}\n", serde_json::to_string_pretty(&record).expect("serializable")));
    } else if out.text.ends_with('\n') {
        emit(&out.text);
    } else {
        emit(&format!("{}\n", out.text));
    }
    if !cli.json && !cli.reproducible {
        eprintln!("wall time {} ms", started.elapsed().as_millis());
    }
    match out.status {
        Status::Pass => ExitCode::SUCCESS,
        Status::Fail => ExitCode::from(EXIT_FAIL),
        Status::Skipped => ExitCode::from(EXIT_SKIPPED),
    }
}

/// Writes to stdout, tolerating a closed pipe.
fn emit(s: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn run(cmd: &Cmd) -> Result<Output> {
    match cmd {
        Cmd::Construct { name, params, out } => construct(name, params, out.as_deref()),
        Cmd::Verify { mapping, claims } => verify(mapping, claims),
        Cmd::Detect { mapping, pattern, relation, all } => detect(mapping, pattern, relation, *all),
        Cmd::Bound { parameter, args } => bound(parameter, args),
        Cmd::Compute { param, g, h, class, nmax, budget, seed, trials, no_symmetry, witness_out } => {
            let opts = ComputeOpts {
                class: class.as_deref(),
                nmax: *nmax,
                budget: *budget,
                seed: *seed,
                trials: *trials,
                no_symmetry: *no_symmetry,
                witness_out: witness_out.as_deref(),
            };
            compute(param, g, h.as_deref(), opts)
        }
        Cmd::Oracle { which } => oracle_cmd(which),
        Cmd::Reproduce { ids, seed, list } => reproduce_cmd(ids, *seed, *list),
    }
}

/// Family string, `g6:<graph6>`, or a path to an edge-list file.
fn load_pattern(s: &str) -> Result<PatternGraph> {
    if let Some(code) = s.strip_prefix("g6:") {
        return Ok(PatternGraph::from_graph("graph6", SimpleGraph::parse_graph6(code)?));
    }
    let path = Path::new(s);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{s}: {e}")))?;
        let name = path.file_stem().map_or("edge-list".into(), |n| n.to_string_lossy().into_owned());
        return Ok(PatternGraph::from_graph(name, SimpleGraph::parse_edge_list(&text)?));
    }
    PatternGraph::parse(s)
}

fn load_mapping(path: &Path) -> Result<EdgeMapping> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    EdgeMapping::parse_text(&text)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn claim_outputs(f: &EdgeMapping, claims: &[Claim]) -> (Value, String, Status) {
    let reports = check_claims(f, claims);
    let mut text = String::new();
    for r in &reports {
        let status = if r.holds { "PASS" } else { "FAIL" };
        text.push_str(&format!("{status} no {} {}", r.relation, r.pattern));
        if let Some(c) = &r.counterexample {
            text.push_str(&format!(" (copy at {:?})", c.embedding));
        }
        text.push('\n');
    }
    let status = if reports.iter().all(|r| r.holds) { Status::Pass } else { Status::Fail };
    (serde_json::to_value(&reports).expect("serializable"), text, status)
}

fn construct(name: &str, params: &[String], out: Option<&Path>) -> Result<Output> {
    let mut parsed = Vec::new();
    for p in params {
        let (k, v) = p.split_once('=').ok_or_else(|| Error::Parse(format!("parameter '{p}' is not key=value")))?;
        let v: usize = v.trim().parse().map_err(|_| Error::Parse(format!("parameter '{p}' needs an integer value")))?;
        parsed.push((k.trim().to_string(), v));
    }
    let c = constructions::build(name, &parsed)?;
    let mapping_text = c.mapping.to_text();
    let (claims, claim_text, status) = claim_outputs(&c.mapping, &c.claims);
    let mut artifacts = Vec::new();
    let mut text = format!("construction {} n={}\n", c.name, c.mapping.n());
    match out {
        Some(p) => {
            write_file(p, &mapping_text)?;
            text.push_str(&format!("mapping written to {}\n", p.display()));
            artifacts.push(p.to_path_buf());
        }
        None => text.push_str(&mapping_text),
    }
    text.push_str(&claim_text);
    let value = json!({
        "construction": c.name,
        "params": c.params,
        "n": c.mapping.n(),
        "mapping": c.mapping.to_compact(),
        "claims": claims,
    });
    Ok(Output { value, text, status, seed: None, artifacts })
}

fn verify(path: &Path, claims: &[String]) -> Result<Output> {
    let f = load_mapping(path)?;
    let mut parsed = Vec::new();
    for c in claims {
        let (rel, pat) = c.split_once(':').ok_or_else(|| Error::Parse(format!("claim '{c}' is not relation:pattern")))?;
        parsed.push(Claim::new(Relation::parse(rel)?, load_pattern(pat)?));
    }
    let (value, text, status) = claim_outputs(&f, &parsed);
    Ok(Output { value: json!({ "n": f.n(), "claims": value }), text, status, seed: None, artifacts: Vec::new() })
}

fn detect(path: &Path, pattern: &str, relation: &str, all: bool) -> Result<Output> {
    let f = load_mapping(path)?;
    let h = load_pattern(pattern)?;
    let rel = Relation::parse(relation)?;
    if all {
        let copies = all_copies(&f, &h, rel);
        let mut text = format!("{} {rel} copies of {}\n", copies.len(), h.name());
        for c in &copies {
            text.push_str(&format!("{c:?}\n"));
        }
        let value = json!({ "pattern": h.name(), "relation": rel, "count": copies.len(), "copies": copies });
        return Ok(Output::plain(value, text));
    }
    let cert = find(&f, &h, rel);
    let text = match &cert {
        Some(c) => format!("found {rel} {} at {:?} (validated: {})\n", h.name(), c.embedding, c.checked),
        None => format!("no {rel} {}\n", h.name()),
    };
    Ok(Output::plain(json!({ "pattern": h.name(), "relation": rel, "certificate": cert }), text))
}

fn num(args: &[String], i: usize, what: &str) -> Result<usize> {
    args.get(i)
        .ok_or_else(|| Error::Parameter(format!("missing argument {what}")))?
        .parse()
        .map_err(|_| Error::Parse(format!("{what} must be a non-negative integer")))
}

fn report_output(r: BoundReport) -> Output {
    let text = r.to_string();
    Output::plain(serde_json::to_value(&r).expect("serializable"), text)
}

fn bound(parameter: &str, args: &[String]) -> Result<Output> {
    match parameter {
        "w" => Ok(report_output(bounds::w_bounds(num(args, 0, "k")?, num(args, 1, "m")?))),
        "wkk" => Ok(report_output(bounds::wkk_bounds(num(args, 0, "k")?)?)),
        "corstar" => {
            let r = num(args, 0, "r")?;
            let v = bounds::corstar_upper(r);
            Ok(Output::plain(json!({ "parameter": format!("w(K1,{r})"), "upper": v }), format!("w(K1,{r}) <= {v}\n")))
        }
        "m-tree" => Ok(report_output(bounds::m_tree_kr(num(args, 0, "k")?, num(args, 1, "r")?)?)),
        "m-tree-star" => Ok(report_output(bounds::m_tree_star(num(args, 0, "k")?, num(args, 1, "r")?)?)),
        "m-star-tree" => {
            let (k, r) = (num(args, 0, "k")?, num(args, 1, "r")?);
            let n = bounds::m_star_tree_threshold(k, r);
            let value = json!({ "parameter": format!("m*(T{k},K1,{r})"), "upper": n, "assumes": "Erdos-Sos" });
            Ok(Output::plain(value, format!("m*(T{k},K1,{r}) <= {n} (assuming Erdos-Sos for trees on {k} vertices)\n")))
        }
        "g" => {
            let g = load_pattern(args.first().ok_or_else(|| Error::Parameter("missing pattern".into()))?)?;
            let small = bounds::g_upper_small(&g)?;
            let threshold = bounds::degreethm_threshold(&g)?;
            let value = json!({ "parameter": format!("g({},1)", g.name()), "upper_small": small, "degree_threshold": threshold });
            Ok(Output::plain(value, format!("g({},1) <= {small}; degree certificate holds from n = {threshold}\n", g.name())))
        }
        "ex" => {
            let n = num(args, 0, "n")?;
            let g = load_pattern(args.get(1).ok_or_else(|| Error::Parameter("missing pattern".into()))?)?;
            let ex = bounds::ex_value(n, &g)?;
            let value = json!({ "n": n, "pattern": g.name(), "ex": ex.value.to_string(), "source": format!("{:?}", ex.source) });
            Ok(Output::plain(value, format!("ex({n},{}) = {} [{:?}]\n", g.name(), ex.value, ex.source)))
        }
        other => Err(Error::UnknownName(format!(
            "bound '{other}'; expected w, wkk, corstar, g, m-tree, m-tree-star, m-star-tree or ex"
        ))),
    }
}

struct ComputeOpts<'a> {
    class: Option<&'a str>,
    nmax: usize,
    budget: Option<u64>,
    seed: u64,
    trials: u64,
    no_symmetry: bool,
    witness_out: Option<&'a Path>,
}

fn compute(param: &str, g: &str, h: Option<&str>, o: ComputeOpts<'_>) -> Result<Output> {
    let name = ParamName::parse(param)?;
    let g = load_pattern(g)?;
    let h = h.map(load_pattern).transpose()?;
    let fixed_class = match name {
        ParamName::M | ParamName::Z => "all",
        ParamName::MStar => "nohalf",
        ParamName::W => "d0",
        ParamName::G => "",
    };
    let d = match (name, o.class) {
        (ParamName::G, None | Some("d1")) => 1,
        (ParamName::G, Some("d0")) => 0,
        (ParamName::G, Some(c)) => return Err(Error::Parameter(format!("g takes --class d0 or d1, got {c}"))),
        (_, Some(c)) if c != fixed_class => {
            return Err(Error::Parameter(format!("{name} is defined over class {fixed_class}, got {c}")))
        }
        _ => 0,
    };
    let cfg = SearchConfig { symmetry: !o.no_symmetry, ..SearchConfig::from_env() };
    let budget = Budget { nodes: None, time: o.budget.map(Duration::from_secs) };
    let run = compute_parameter_with(name, &g, h.as_ref(), d, o.nmax, budget, &cfg)?;
    let mut text = format!("{}\n", run.report);
    for st in &run.steps {
        let verdict = match st.forced {
            Some(true) => "forced",
            Some(false) => "avoidable",
            None => "undecided",
        };
        text.push_str(&format!("  n={} {verdict} by {}", st.n, st.source));
        if let Some(nodes) = st.nodes {
            text.push_str(&format!(" ({nodes} nodes)"));
        }
        text.push('\n');
    }
    let mut value = json!({ "report": run.report, "steps": run.steps });
    let mut artifacts = Vec::new();
    if name == ParamName::W && o.trials > 0 && run.report.upper.is_none() {
        let (mc, _) = monte_carlo_w_witness(&g, o.nmax, o.trials, o.seed)?;
        text.push_str(&format!(
            "  random attempt at n={}: {} of {} trials, expected copies {:.3}, witness {}\n",
            o.nmax,
            mc.used,
            mc.trials,
            mc.expected_count,
            if mc.witness.is_some() { "found" } else { "none" }
        ));
        value["monte_carlo"] = serde_json::to_value(&mc).expect("serializable");
    }
    if let Some(path) = o.witness_out {
        let best = run.steps.iter().rev().find_map(|s| s.witness.as_deref());
        match best {
            Some(w) => {
                write_file(path, &EdgeMapping::parse_compact(w)?.to_text())?;
                text.push_str(&format!("witness written to {}\n", path.display()));
                artifacts.push(path.to_path_buf());
            }
            None => text.push_str("no witness to write\n"),
        }
    }
    let status = if run.steps.iter().any(|s| s.forced.is_none()) { Status::Skipped } else { Status::Pass };
    Ok(Output { value, text, status, seed: Some(o.seed), artifacts })
}

fn oracle_cmd(which: &OracleCmd) -> Result<Output> {
    let (value, text) = match which {
        OracleCmd::Ex { n, pattern } => {
            let g = load_pattern(pattern)?;
            let v = oracle::ex_bruteforce(*n, &g)?;
            (json!({ "n": n, "pattern": g.name(), "ex": v }), format!("ex({n},{}) = {v}\n", g.name()))
        }
        OracleCmd::Supersat { n, m, pattern } => {
            let h = load_pattern(pattern)?;
            let v = oracle::supersat_min(*n, *m, &h)?;
            (json!({ "n": n, "m": m, "pattern": h.name(), "min_copies": v }), format!("min copies of {} with n={n}, m={m}: {v}\n", h.name()))
        }
        OracleCmd::Paircover { n, pattern } => {
            let h = load_pattern(pattern)?;
            let v = oracle::pair_cover_max(*n, &h)?;
            (json!({ "n": n, "pattern": h.name(), "max_through_pair": v }), format!("max copies of {} through a pair, n={n}: {v}\n", h.name()))
        }
    };
    Ok(Output::plain(value, text))
}

fn reproduce_cmd(ids: &[String], seed: u64, list: bool) -> Result<Output> {
    if list {
        let text: String = MANIFEST.iter().map(|(id, what)| format!("{id:<20} {what}\n")).collect();
        let value = json!(MANIFEST.iter().map(|(id, what)| json!({ "id": id, "description": what })).collect::<Vec<_>>());
        return Ok(Output::plain(value, text));
    }
    let ids: Vec<&str> = if ids.is_empty() { MANIFEST.iter().map(|(id, _)| *id).collect() } else { ids.iter().map(String::as_str).collect() };
    let mut results: Vec<ClaimResult> = Vec::new();
    for id in ids {
        results.extend(reproduce::run(id, seed)?);
    }
    let text: String = results.iter().map(|r| format!("{r}\n")).collect();
    let status = if results.iter().any(|r| r.status == Status::Fail) {
        Status::Fail
    } else if results.iter().any(|r| r.status == Status::Skipped) {
        Status::Skipped
    } else {
        Status::Pass
    };
    Ok(Output { value: serde_json::to_value(&results).expect("serializable"), text, status, seed: Some(seed), artifacts: Vec::new() })
}
