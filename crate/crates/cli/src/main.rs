//! `qnc`: feasibility, contraction, code composition and metrics from the
//! command line.
//!
//! Exit status is 0 for success or an affirmative verdict, 1 for a negative
//! verdict (infeasible, annihilated) and 2 for usage or input errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qnc_core::codes::{self, CodeError, Distance, StabilizerCode};
use qnc_core::contraction::{
    contract, BellConvention, ContractionStatus, InstanceFile, ResultFile,
};
use qnc_core::graphstate::{Bipartition, GraphState};
use qnc_core::metrics::{self, MetricsRow, NoiseSpec, RegularTreeSpec, Scheme, CSV_HEADER};
use qnc_core::network::{self, NetworkTopology, DEFAULT_MAX_CLIENTS};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::json;

#[derive(Parser)]
#[command(name = "qnc", version, about = "Quantum network coding toolkit")]
struct Cli {
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a target graph state against every client min-cut.
    Feasibility(FeasibilityArgs),
    /// Contract a Bell-pair instance and print the residual group.
    Contract {
        instance: PathBuf,
        #[arg(long, value_enum)]
        convention: Option<Convention>,
    },
    /// Stabilizer code utilities.
    #[command(subcommand)]
    Code(CodeCommand),
    /// Latency, memory and success-probability tables as CSV.
    Metrics(MetricsArgs),
    /// Distribute GHZ states over random connected topologies.
    GhzSweep {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 10)]
        max_nodes: usize,
    },
}

#[derive(Args)]
struct FeasibilityArgs {
    topology: PathBuf,
    target: PathBuf,
    /// Client ids in target-vertex order. Defaults to the target's labels,
    /// then to the topology's clients in file order.
    #[arg(long, value_delimiter = ',')]
    clients: Option<Vec<String>>,
    /// Only check this bipartition, written `a,b|c,d`; repeatable.
    #[arg(long)]
    bipartition: Vec<String>,
    #[arg(long, default_value_t = DEFAULT_MAX_CLIENTS)]
    max_clients: usize,
}

#[derive(Subcommand)]
enum CodeCommand {
    /// Contract code node states given in the instance format.
    Compose {
        instance: PathBuf,
        #[arg(long, value_enum)]
        convention: Option<Convention>,
        /// Also compute the distance of the composed code.
        #[arg(long)]
        distance: bool,
        #[arg(long, default_value_t = 4)]
        weight_cap: usize,
    },
    /// Brute-force distance of a code file.
    Distance {
        code: PathBuf,
        #[arg(long, default_value_t = 5)]
        weight_cap: usize,
    },
    /// Distance bound for `m` contracted `[[l, k, d]]` codes on `|B|` qubits.
    Bounds {
        #[arg(long = "B", visible_alias = "boundary")]
        boundary: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
    },
}

#[derive(Args)]
struct MetricsArgs {
    /// Tree branching; repeat or comma-separate for several.
    #[arg(long, value_delimiter = ',')]
    n: Vec<u32>,
    /// Depth range `a..b` (inclusive) or a single depth.
    #[arg(long, default_value = "1..1")]
    p: String,
    /// Per-channel failure probability.
    #[arg(long)]
    noise: Option<f64>,
    /// Restrict to one scheme (`lqc` or `epr`).
    #[arg(long)]
    scheme: Option<Scheme>,
    /// Also count channels on this topology.
    #[arg(long)]
    topology: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Convention {
    PlusPair,
    GraphEdge,
}

impl From<Convention> for BellConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::PlusPair => BellConvention::PlusPair,
            Convention::GraphEdge => BellConvention::GraphEdge,
        }
    }
}

/// Command output plus the exit status it implies.
struct Report {
    body: String,
    negative: bool,
}

impl Report {
    fn json<T: Serialize>(value: &T, negative: bool) -> Result<Self> {
        let mut body = serde_json::to_string_pretty(value)?;
        body.push('\n');
        Ok(Self { body, negative })
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn feasibility(args: &FeasibilityArgs) -> Result<Report> {
    let topology: NetworkTopology = read_json(&args.topology)?;
    let target: GraphState = read_json(&args.target)?;
    let ids: Vec<String> = match (&args.clients, target.labels()) {
        (Some(ids), _) => ids.clone(),
        (None, Some(labels)) => labels.to_vec(),
        (None, None) => topology
            .clients()
            .iter()
            .map(|&c| topology.id(c).to_string())
            .collect(),
    };
    let clients = ids
        .iter()
        .map(|id| topology.index_of(id))
        .collect::<Result<Vec<_>, _>>()?;
    let verdict = if args.bipartition.is_empty() {
        network::feasibility(&topology, &clients, &target, args.max_clients)?
    } else {
        let parts = args
            .bipartition
            .iter()
            .map(|spec| parse_bipartition(spec, &ids))
            .collect::<Result<Vec<_>>>()?;
        network::feasibility_for(&topology, &clients, &target, &parts)?
    };
    let negative = !verdict.feasible;
    Report::json(&json!({ "clients": ids, "verdict": verdict }), negative)
}

/// `a,b|c,d` or just `a,b` (the other side is everything else).
fn parse_bipartition(spec: &str, ids: &[String]) -> Result<Bipartition> {
    let index = |id: &str| {
        ids.iter()
            .position(|x| x == id.trim())
            .ok_or_else(|| anyhow!("bipartition {spec:?} names unknown client {:?}", id.trim()))
    };
    let (left, right) = spec.split_once('|').unwrap_or((spec, ""));
    let a = left.split(',').map(index).collect::<Result<Vec<_>>>()?;
    let part = Bipartition::new(ids.len(), &a).with_context(|| format!("bipartition {spec:?}"))?;
    if !right.trim().is_empty() {
        let mut b = right.split(',').map(index).collect::<Result<Vec<_>>>()?;
        b.sort_unstable();
        if b != part.side_b() {
            bail!(
                "bipartition {spec:?}: the sides must split all {} clients",
                ids.len()
            );
        }
    }
    Ok(part)
}

fn load_instance(
    path: &Path,
    convention: Option<Convention>,
) -> Result<qnc_core::ContractionInstance> {
    let mut file: InstanceFile = read_json(path)?;
    if let Some(c) = convention {
        file.convention = c.into();
    }
    file.into_instance()
        .with_context(|| format!("instance {}", path.display()))
}

fn contract_cmd(path: &Path, convention: Option<Convention>) -> Result<Report> {
    let inst = load_instance(path, convention)?;
    let r = contract(&inst)?;
    Report::json(
        &ResultFile::from(&r),
        r.status == ContractionStatus::Annihilated,
    )
}

fn distance_json(d: Distance) -> serde_json::Value {
    match d {
        Distance::Exact(d) => json!(d),
        Distance::AboveCap(cap) => json!(format!(">{cap}")),
    }
}

fn code_cmd(cmd: &CodeCommand) -> Result<Report> {
    match cmd {
        CodeCommand::Compose {
            instance,
            convention,
            distance,
            weight_cap,
        } => {
            let inst = load_instance(instance, *convention)?;
            let composed = match codes::compose_instance(&inst) {
                Ok(c) => c,
                Err(CodeError::Annihilated) => {
                    return Report::json(&json!({ "status": ContractionStatus::Annihilated }), true)
                }
                Err(e) => return Err(e.into()),
            };
            let code = &composed.code;
            let found = if *distance {
                Some(codes::distance(code, *weight_cap)?)
            } else {
                None
            };
            let d = found
                .and_then(Distance::exact)
                .map_or("?".to_string(), |d| d.to_string());
            let mut out = json!({
                "status": composed.contraction.status,
                "parameters": format!("[[{},{},{d}]]", code.n(), code.k()),
                "n": code.n(),
                "k": code.k(),
                "boundary": composed.contraction.boundary,
                "generators": code.generators(),
            });
            if let Some(d) = found {
                out["distance"] = distance_json(d);
            }
            Report::json(&out, false)
        }
        CodeCommand::Distance { code, weight_cap } => {
            let code: StabilizerCode = read_json(code)?;
            let d = codes::distance(&code, *weight_cap)?;
            Report::json(
                &json!({ "n": code.n(), "k": code.k(), "weight_cap": weight_cap, "distance": distance_json(d) }),
                false,
            )
        }
        CodeCommand::Bounds {
            boundary,
            m,
            l,
            k,
            d,
        } => {
            let bound = codes::storage_bound(*boundary, *m, *l, *k, *d)?;
            let singleton = codes::singleton_max_distance(*boundary, k * m)?;
            Report::json(
                &json!({
                    "boundary": boundary, "m": m, "l": l, "k": k, "d": d,
                    "storage_bound": bound,
                    "singleton_max_distance": singleton,
                }),
                false,
            )
        }
    }
}

/// `a..b` inclusive, or a single value; `a > b` is an empty range.
fn parse_range(text: &str) -> Result<Vec<u32>> {
    let parse = |s: &str| {
        s.trim()
            .parse::<u32>()
            .with_context(|| format!("bad depth {s:?} in {text:?}"))
    };
    match text.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            Ok((parse(a)?..=parse(b)?).collect())
        }
        None => Ok(vec![parse(text)?]),
    }
}

fn metrics_cmd(args: &MetricsArgs) -> Result<Report> {
    let depths = parse_range(&args.p)?;
    let noise = args.noise.map(NoiseSpec::new).transpose()?;
    let schemes: Vec<Scheme> = match args.scheme {
        Some(s) => vec![s],
        None => Scheme::ALL.to_vec(),
    };
    let mut body = String::from(CSV_HEADER);
    body.push('\n');
    for &n in &args.n {
        for &p in &depths {
            let spec = RegularTreeSpec::new(n, p)?;
            for &scheme in &schemes {
                body.push_str(&MetricsRow::for_tree(spec, scheme, noise).to_csv());
                body.push('\n');
            }
        }
    }
    if let Some(path) = &args.topology {
        let t: NetworkTopology = read_json(path)?;
        for &scheme in &schemes {
            let channels = metrics::channel_count(&t, scheme)?;
            let p_success = noise
                .map(|nz| metrics::success_probability(nz, channels).to_string())
                .unwrap_or_default();
            body.push_str(&format!(",,{scheme},,,{channels},{p_success}\n"));
        }
    }
    Ok(Report {
        body,
        negative: false,
    })
}

fn ghz_sweep(seed: u64, count: usize, max_nodes: usize) -> Result<Report> {
    if max_nodes < 3 {
        bail!("--max-nodes must be at least 3");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(count);
    let mut all_ok = true;
    for _ in 0..count {
        let t = network::random_connected_topology(&mut rng, max_nodes);
        let clients = t.clients();
        let target = GraphState::star(clients.len());
        let verdict = network::feasibility(&t, &clients, &target, DEFAULT_MAX_CLIENTS)?;
        let nc = network::to_contraction(
            &t,
            &network::repetition_assignment(&t),
            BellConvention::PlusPair,
        )?;
        let r = contract(&nc.instance)?;
        let ranks = nc.client_rank_profile(&r, &clients);
        let ok = verdict.feasible
            && r.status == ContractionStatus::Pure
            && ranks.iter().all(|&x| x == 1);
        all_ok &= ok;
        rows.push(json!({
            "nodes": t.num_nodes(),
            "clients": clients.len(),
            "channels": t.total_channels(),
            "feasible": verdict.feasible,
            "status": r.status,
            "max_rank": ranks.iter().max(),
            "ok": ok,
        }));
    }
    let passed = rows.iter().filter(|r| r["ok"] == true).count();
    Report::json(
        &json!({ "seed": seed, "count": count, "max_nodes": max_nodes, "passed": passed, "instances": rows }),
        !all_ok,
    )
}

fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Feasibility(args) => feasibility(args),
        Command::Contract {
            instance,
            convention,
        } => contract_cmd(instance, *convention),
        Command::Code(cmd) => code_cmd(cmd),
        Command::Metrics(args) => metrics_cmd(args),
        Command::GhzSweep {
            seed,
            count,
            max_nodes,
        } => ghz_sweep(*seed, *count, *max_nodes),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let emitted = run(&cli).and_then(|report| {
        match &cli.out {
            Some(path) => fs::write(path, &report.body)
                .with_context(|| format!("writing {}", path.display()))?,
            None => std::io::stdout().write_all(report.body.as_bytes())?,
        }
        Ok(report.negative)
    });
    match emitted {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
