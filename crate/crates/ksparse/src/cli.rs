//! Command-line entry point. Every subcommand reads the line-oriented text
//! format (path or `-` for stdin), resolves k and l from flags with the
//! file header as fallback, and exits 0 on success, 1 on a dependent /
//! failed verdict, 2 on usage or parse errors. Errors are single
//! `error: ...` lines on stderr.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use crate::components::decide_with_components;
use crate::decomposition::{
    check_lovasz_recski, check_maps_after_adding, k_map_decompose, verify_map_decomposition,
    verify_maps_and_trees, AugmentationReport, CheckMode, MixedDecomposition,
};
use crate::format::{self, ParsedFile};
use crate::generators;
use crate::oracle;
use crate::params::SparsityParams;
use crate::pebble::{optimize_run, run_basic, VerdictKind};
use crate::representation::{represent_with_map, RepresentError};

const USAGE: &str = "usage: ksparse <command> [flags] [input]
commands:
  decide | extract | optimize | components | represent | critical
  decompose --maps K
  verify-mt GRAPH DECOMP
  check --theorem lovasz-recski|maps-adding [--mode exhaustive|sampled]
  generate --family complete|tight|random --n N [--s S] [--m M] [--dims 1,2]
  oracle --check sparse|tight|components|partconn|maxsubgraph|exchange
common flags: --k K --l L --seed S --cap N --trials T --trace --machine --maximize
input defaults to `-` (stdin)";

enum Failure {
    Usage(String),
    Op(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Op(_) => 1,
        }
    }
    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Op(m) => m,
        }
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

fn op_err<T>(msg: impl ToString) -> Result<T, Failure> {
    Err(Failure::Op(msg.to_string()))
}

pub fn run(
    args: &[String],
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    match run_inner(args, stdin, stdout) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message());
            if matches!(f, Failure::Usage(_)) {
                let _ = writeln!(stderr, "{USAGE}");
            }
            f.code()
        }
    }
}

const VALUE_FLAGS: &[&str] = &[
    "k", "l", "seed", "cap", "trials", "maps", "check", "theorem", "mode", "family", "n", "m", "s",
    "dims",
];
const BOOL_FLAGS: &[&str] = &["trace", "machine", "maximize"];

struct Cli {
    values: BTreeMap<String, String>,
    bools: Vec<String>,
    positionals: Vec<String>,
}

impl Cli {
    fn parse(args: &[String]) -> Result<Cli, Failure> {
        let mut cli = Cli {
            values: BTreeMap::new(),
            bools: Vec::new(),
            positionals: Vec::new(),
        };
        let mut it = args.iter().peekable();
        while let Some(arg) = it.next() {
            if let Some(name) = arg.strip_prefix("--") {
                let (name, inline) = match name.split_once('=') {
                    Some((n, v)) => (n, Some(v.to_string())),
                    None => (name, None),
                };
                if BOOL_FLAGS.contains(&name) {
                    if inline.is_some() {
                        return usage(format!("flag --{name} takes no value"));
                    }
                    cli.bools.push(name.to_string());
                } else if VALUE_FLAGS.contains(&name) {
                    let value = match inline {
                        Some(v) => v,
                        None => match it.next() {
                            Some(v) => v.clone(),
                            None => return usage(format!("flag --{name} needs a value")),
                        },
                    };
                    cli.values.insert(name.to_string(), value);
                } else {
                    return usage(format!("unknown flag --{name}"));
                }
            } else {
                cli.positionals.push(arg.clone());
            }
        }
        Ok(cli)
    }

    fn has(&self, name: &str) -> bool {
        self.bools.iter().any(|b| b == name)
    }

    fn get_usize(&self, name: &str) -> Result<Option<usize>, Failure> {
        match self.values.get(name) {
            None => Ok(None),
            Some(v) => match v.parse() {
                Ok(x) => Ok(Some(x)),
                Err(_) => usage(format!("bad value for --{name}: `{v}`")),
            },
        }
    }

    fn get_u64(&self, name: &str) -> Result<Option<u64>, Failure> {
        match self.values.get(name) {
            None => Ok(None),
            Some(v) => match v.parse() {
                Ok(x) => Ok(Some(x)),
                Err(_) => usage(format!("bad value for --{name}: `{v}`")),
            },
        }
    }

    fn get_str(&self, name: &str) -> Option<&str> {
        self.values.get(name).map(String::as_str)
    }

    fn dims(&self) -> Result<Option<Vec<usize>>, Failure> {
        match self.values.get("dims") {
            None => Ok(None),
            Some(v) => {
                let mut out = Vec::new();
                for part in v.split(',') {
                    match part.trim().parse() {
                        Ok(x) => out.push(x),
                        Err(_) => return usage(format!("bad --dims entry `{part}`")),
                    }
                }
                Ok(Some(out))
            }
        }
    }
}

fn read_input(path: &str, stdin: &mut dyn Read) -> Result<String, Failure> {
    if path == "-" {
        let mut buf = String::new();
        match stdin.read_to_string(&mut buf) {
            Ok(_) => Ok(buf),
            Err(e) => usage(format!("cannot read stdin: {e}")),
        }
    } else {
        std::fs::read_to_string(path).or_else(|e| usage(format!("cannot read `{path}`: {e}")))
    }
}

fn parse_input(text: &str) -> Result<ParsedFile, Failure> {
    format::parse(text).or_else(|e| usage(e.to_string()))
}

/// Flags take precedence over the file header.
fn resolve_params(cli: &Cli, file: &ParsedFile) -> Result<SparsityParams, Failure> {
    let k = cli.get_usize("k")?.unwrap_or(file.k);
    let l = cli.get_usize("l")?.unwrap_or(file.l);
    SparsityParams::new(k, l).or_else(|e| usage(e.to_string()))
}

fn load_graph(
    cli: &Cli,
    pos: usize,
    stdin: &mut dyn Read,
) -> Result<(ParsedFile, SparsityParams), Failure> {
    let path = cli.positionals.get(pos).map(String::as_str).unwrap_or("-");
    let text = read_input(path, stdin)?;
    let file = parse_input(&text)?;
    let params = resolve_params(cli, &file)?;
    Ok((file, params))
}

fn ids(list: &[usize]) -> String {
    list.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn run_inner(args: &[String], stdin: &mut dyn Read, out: &mut dyn Write) -> Result<i32, Failure> {
    let Some(command) = args.first() else {
        return usage("missing command");
    };
    let cli = Cli::parse(&args[1..])?;
    let machine = cli.has("machine");

    match command.as_str() {
        "decide" => {
            let (file, params) = load_graph(&cli, 0, stdin)?;
            let outcome = run_basic(&file.graph, params);
            if cli.has("trace") {
                for mv in outcome.state.moves() {
                    let _ = writeln!(out, "{mv}");
                }
            }
            let v = &outcome.verdict;
            if machine {
                let _ = writeln!(out, "verdict={}", v.kind);
                let _ = writeln!(out, "accepted={}", ids(&v.accepted));
                let _ = writeln!(out, "rejected={}", ids(&v.rejected));
                let _ = writeln!(out, "pebbles={}", outcome.state.total_pebbles());
            } else {
                let _ = writeln!(out, "{}", v.kind);
            }
            Ok(if v.kind == VerdictKind::Dependent {
                1
            } else {
                0
            })
        }
        "extract" => {
            let (file, params) = load_graph(&cli, 0, stdin)?;
            let outcome = run_basic(&file.graph, params);
            if cli.has("trace") {
                for mv in outcome.state.moves() {
                    let _ = writeln!(out, "{mv}");
                }
            }
            if machine {
                let _ = writeln!(out, "accepted={}", ids(&outcome.verdict.accepted));
                let _ = writeln!(out, "rejected={}", ids(&outcome.verdict.rejected));
            }
            let sub = file
                .graph
                .subgraph(&outcome.verdict.accepted)
                .expect("accepted indices valid");
            let _ = write!(out, "{}", format::serialize(&sub, params.k(), params.l()));
            Ok(0)
        }
        "optimize" => {
            let (file, params) = load_graph(&cli, 0, stdin)?;
            let mut weights: Vec<f64> = file
                .graph
                .weights()
                .map(<[f64]>::to_vec)
                .unwrap_or_else(|| vec![0.0; file.graph.edge_count()]);
            if cli.has("maximize") {
                for w in &mut weights {
                    *w = -*w;
                }
            }
            let outcome = optimize_run(&file.graph, params, &weights).or_else(op_err)?;
            if cli.has("trace") {
                for mv in outcome.state.moves() {
                    let _ = writeln!(out, "{mv}");
                }
            }
            let mut accepted = outcome.verdict.accepted;
            accepted.sort_unstable();
            if machine {
                let _ = writeln!(out, "accepted={}", ids(&accepted));
            }
            let sub = file
                .graph
                .subgraph(&accepted)
                .expect("accepted indices valid");
            let _ = write!(out, "{}", format::serialize(&sub, params.k(), params.l()));
            Ok(0)
        }
        "components" => {
            let (file, params) = load_graph(&cli, 0, stdin)?;
            let (verdict, comps) = decide_with_components(&file.graph, params);
            if machine {
                let _ = writeln!(out, "verdict={}", verdict.kind);
            }
            for c in &comps {
                let vs: Vec<usize> = c.vertices.iter().copied().collect();
                if machine {
                    let _ = writeln!(out, "component={} edges={}", ids(&vs), c.edge_indices.len());
                } else {
                    let v_str: Vec<String> = vs.iter().map(usize::to_string).collect();
                    let _ = writeln!(out, "{} |E|={}", v_str.join(" "), c.edge_indices.len());
                }
            }
            Ok(if verdict.kind == VerdictKind::Dependent {
                1
            } else {
                0
            })
        }
        "represent" => {
            let (file, params) = load_graph(&cli, 0, stdin)?;
            let input_name = cli.positionals.first().map(String::as_str).unwrap_or("-");
            let (r, map) = represent_with_map(&file.graph, params).or_else(rep_err)?;
            let _ = writeln!(out, "{} {} {}", r.n(), params.k(), params.l());
            let _ = writeln!(out, "# represents {input_name}");
            for (i, rep) in map.representatives.iter().enumerate() {
                let src: Vec<String> = file.graph.edges()[i]
                    .ends()
                    .iter()
                    .map(usize::to_string)
                    .collect();
                let dst: Vec<String> = rep.iter().map(usize::to_string).collect();
                let _ = writeln!(out, "# e{i} {} -> {}", src.join(" "), dst.join(" "));
            }
            for e in r.edges() {
                let idsv: Vec<String> = e.ends().iter().map(usize::to_string).collect();
                let _ = writeln!(out, "{}", idsv.join(" "));
            }
            Ok(0)
        }
        "critical" => {
            let (file, params) = load_graph(&cli, 0, stdin)?;
            let critical =
                crate::representation::is_critical(&file.graph, params).or_else(rep_err)?;
            if machine {
                let _ = writeln!(out, "critical={critical}");
            } else {
                let _ = writeln!(
                    out,
                    "{}",
                    if critical { "critical" } else { "not-critical" }
                );
            }
            Ok(0)
        }
        "decompose" => {
            let (file, params) = load_graph(&cli, 0, stdin)?;
            let k = cli.get_usize("maps")?.unwrap_or(params.k());
            let d = k_map_decompose(&file.graph, k).or_else(op_err)?;
            debug_assert!(verify_map_decomposition(&file.graph, &d));
            for map in 0..k {
                let edges: Vec<usize> = (0..file.graph.edge_count())
                    .filter(|&e| d.assignment[e] == map)
                    .collect();
                if machine {
                    let tails: Vec<usize> = edges.iter().map(|&e| d.tails[e]).collect();
                    let _ = writeln!(out, "map={map} edges={} tails={}", ids(&edges), ids(&tails));
                } else {
                    let parts: Vec<String> = edges
                        .iter()
                        .map(|&e| format!("e{e}(t={})", d.tails[e]))
                        .collect();
                    let _ = writeln!(out, "map {map}: {}", parts.join(" "));
                }
            }
            Ok(0)
        }
        "verify-mt" => {
            if cli.positionals.len() != 2 {
                return usage("verify-mt needs GRAPH and DECOMP paths");
            }
            let (file, params) = load_graph(&cli, 0, stdin)?;
            let decomp_text = read_input(&cli.positionals[1], stdin)?;
            let d = parse_mixed_decomposition(&decomp_text)?;
            let ok = verify_maps_and_trees(&file.graph, params.k(), params.l(), &d);
            if machine {
                let _ = writeln!(out, "valid={ok}");
            } else {
                let _ = writeln!(out, "{}", if ok { "valid" } else { "invalid" });
            }
            Ok(if ok { 0 } else { 1 })
        }
        "check" => {
            let (file, params) = load_graph(&cli, 0, stdin)?;
            let mode = match cli.get_str("mode").unwrap_or("exhaustive") {
                "exhaustive" => CheckMode::Exhaustive,
                "sampled" => CheckMode::Sampled {
                    trials: cli.get_usize("trials")?.unwrap_or(100),
                    seed: cli.get_u64("seed")?.unwrap_or(0),
                },
                other => return usage(format!("unknown --mode `{other}`")),
            };
            let report = match cli.get_str("theorem") {
                Some("lovasz-recski") => {
                    check_lovasz_recski(&file.graph, params, mode).or_else(op_err)?
                }
                Some("maps-adding") => {
                    check_maps_after_adding(&file.graph, params, mode).or_else(op_err)?
                }
                Some(other) => return usage(format!("unknown --theorem `{other}`")),
                None => return usage("check needs --theorem"),
            };
            write_report(out, &report);
            Ok(if report.counterexample_count > 0 {
                1
            } else {
                0
            })
        }
        "generate" => {
            let k = cli.get_usize("k")?.unwrap_or(1);
            let l = cli.get_usize("l")?.unwrap_or(0);
            let seed = cli.get_u64("seed")?.unwrap_or(0);
            let n = match cli.get_usize("n")? {
                Some(n) => n,
                None => return usage("generate needs --n"),
            };
            let graph = match cli.get_str("family") {
                Some("complete") => {
                    let dims = cli.dims()?.unwrap_or_else(|| (1..=n).collect());
                    generators::complete_hypergraph(n, k, l, &dims)
                }
                Some("tight") => {
                    let s = cli.get_usize("s")?.unwrap_or(2);
                    generators::generate_tight(n, s, k, l, seed)
                }
                Some("random") => {
                    let dims = cli.dims()?.unwrap_or_else(|| vec![2]);
                    let m = match cli.get_usize("m")? {
                        Some(m) => m,
                        None => return usage("generate --family random needs --m"),
                    };
                    generators::random_hypergraph(n, m, &dims, seed)
                }
                Some(other) => return usage(format!("unknown --family `{other}`")),
                None => return usage("generate needs --family"),
            }
            .or_else(op_err)?;
            let _ = write!(out, "{}", format::serialize(&graph, k, l));
            Ok(0)
        }
        "oracle" => run_oracle(&cli, stdin, out, machine),
        other => usage(format!("unknown command `{other}`")),
    }
}

fn rep_err<T>(e: RepresentError) -> Result<T, Failure> {
    op_err(e)
}

fn write_report(out: &mut dyn Write, report: &AugmentationReport) {
    let theorem = match report.theorem {
        crate::decomposition::Theorem::LovaszRecski => "lovasz-recski",
        crate::decomposition::Theorem::MapsAfterAdding => "maps-adding",
    };
    let mode = match report.mode {
        CheckMode::Exhaustive => "exhaustive".to_string(),
        CheckMode::Sampled { trials, seed } => format!("sampled trials={trials} seed={seed}"),
    };
    let _ = writeln!(out, "theorem={theorem}");
    let _ = writeln!(out, "mode={mode}");
    let _ = writeln!(out, "added={}", report.added_per_trial);
    let _ = writeln!(out, "tested={}", report.tested);
    let _ = writeln!(out, "counterexamples={}", report.counterexample_count);
    for cx in &report.counterexamples {
        let rendered: Vec<String> = cx
            .iter()
            .map(|e| e.iter().map(usize::to_string).collect::<Vec<_>>().join(" "))
            .collect();
        let _ = writeln!(out, "counterexample: {}", rendered.join(" | "));
    }
}

/// Decomposition files: one part per line, `tree: <edge ids>` or
/// `map: <edge ids>`.
fn parse_mixed_decomposition(text: &str) -> Result<MixedDecomposition, Failure> {
    let mut d = MixedDecomposition {
        tree_parts: Vec::new(),
        map_parts: Vec::new(),
    };
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (kind, rest) = match line.split_once(':') {
            Some(pair) => pair,
            None => {
                return usage(format!(
                    "decomp line {}: expected `tree:` or `map:`",
                    idx + 1
                ))
            }
        };
        let mut part = Vec::new();
        for tok in rest.split_whitespace() {
            match tok.parse() {
                Ok(e) => part.push(e),
                Err(_) => return usage(format!("decomp line {}: bad edge id `{tok}`", idx + 1)),
            }
        }
        match kind.trim() {
            "tree" => d.tree_parts.push(part),
            "map" => d.map_parts.push(part),
            other => return usage(format!("decomp line {}: unknown part `{other}`", idx + 1)),
        }
    }
    Ok(d)
}

fn run_oracle(
    cli: &Cli,
    stdin: &mut dyn Read,
    out: &mut dyn Write,
    machine: bool,
) -> Result<i32, Failure> {
    let check = match cli.get_str("check") {
        Some(c) => c,
        None => return usage("oracle needs --check"),
    };
    let cap = cli.get_usize("cap")?;
    let subset_cap = cap.unwrap_or(oracle::DEFAULT_SUBSET_CAP);
    let (file, params) = load_graph(cli, 0, stdin)?;
    let g = &file.graph;
    let yes_no = |out: &mut dyn Write, key: &str, ok: bool, yes: &str, no: &str| {
        if machine {
            let _ = writeln!(out, "{key}={ok}");
        } else {
            let _ = writeln!(out, "{}", if ok { yes } else { no });
        }
        Ok(if ok { 0 } else { 1 })
    };
    match check {
        "sparse" => {
            let ok = oracle::is_sparse_bruteforce(g, params, subset_cap).or_else(op_err)?;
            yes_no(out, "sparse", ok, "sparse", "dependent")
        }
        "tight" => {
            let ok = oracle::is_tight_bruteforce(g, params, subset_cap).or_else(op_err)?;
            yes_no(out, "tight", ok, "tight", "not-tight")
        }
        "components" => {
            let comps = oracle::components_bruteforce(g, params, subset_cap).or_else(op_err)?;
            for c in &comps {
                let vs: Vec<usize> = c.vertices.iter().copied().collect();
                if machine {
                    let _ = writeln!(out, "component={} edges={}", ids(&vs), c.edge_indices.len());
                } else {
                    let v_str: Vec<String> = vs.iter().map(usize::to_string).collect();
                    let _ = writeln!(out, "{} |E|={}", v_str.join(" "), c.edge_indices.len());
                }
            }
            Ok(0)
        }
        "partconn" => {
            let cap = cap.unwrap_or(oracle::DEFAULT_PARTITION_CAP);
            let ok =
                oracle::is_partition_connected_bruteforce(g, params.k(), cap).or_else(op_err)?;
            yes_no(
                out,
                "partition_connected",
                ok,
                "partition-connected",
                "not-partition-connected",
            )
        }
        "maxsubgraph" => {
            let best = oracle::max_sparse_subgraph_bruteforce(
                g,
                params,
                g.weights(),
                oracle::DEFAULT_EDGE_CAP,
                subset_cap,
            )
            .or_else(op_err)?;
            if machine {
                let _ = writeln!(out, "edges={}", ids(&best));
                let _ = writeln!(out, "size={}", best.len());
            } else {
                let v_str: Vec<String> = best.iter().map(usize::to_string).collect();
                let _ = writeln!(out, "{} size={}", v_str.join(" "), best.len());
            }
            Ok(0)
        }
        "exchange" => {
            if cli.positionals.len() != 2 {
                return usage("oracle --check exchange needs two input paths");
            }
            let other_text = read_input(&cli.positionals[1], stdin)?;
            let other = parse_input(&other_text)?;
            let ok = oracle::basis_exchange_check(
                g,
                &other.graph,
                params,
                oracle::DEFAULT_EDGE_CAP,
                subset_cap,
            )
            .or_else(op_err)?;
            yes_no(out, "exchange", ok, "exchange-ok", "exchange-failed")
        }
        other => usage(format!("unknown --check `{other}`")),
    }
}
