use crate::report::{digest_of, rat_str, uint_str, Report};
use crate::{Cli, Command, Format, GenKindArg, MethodArg};
use anyhow::{bail, Context, Result};
use hyperspectra::bounds::{bound_suite, BoundOptions, BoundOutcome, Satisfaction, SideValue};
use hyperspectra::hypergraph::{
    count_simplices, degree_stats, generate, is_odd_colorable, parse_hypergraph, serialize_hg,
    GenKind, Hypergraph,
};
use hyperspectra::spectra::{estrada_suite_graph, lee_enclosure_r3, slee_certified_interval};
use hyperspectra::tensor::{build_tensor, TensorKind};
use hyperspectra::trace::{
    cr_constant, eigenvalue_count, extract_cr, trace_closed_form, trace_general_run, TraceConfig,
    TraceError, TraceValue,
};
use hyperspectra::walks::{
    count_eulerian_closed_walks, enumerate_eulerian_walks_oracle, ArcMultiset,
};
use serde_json::{json, Map, Value};
use std::collections::BTreeSet;
use std::fs;
use std::path::Path;
use std::time::Instant;

type CommandOutput = (&'static str, String, Value, Value, u8);

pub fn run(cli: &Cli) -> Result<u8> {
    let start = Instant::now();
    if let Command::Gen { kind, n, r, m } = &cli.command {
        return cmd_gen(cli, *kind, *n, *r, *m);
    }
    let (command, digest, params, results, exit) = match &cli.command {
        Command::Gen { .. } => unreachable!("handled above"),
        Command::Invariants { input } => cmd_invariants(cli, input)?,
        Command::Trace { input, kind, order, method } => {
            cmd_trace(cli, input, kind, *order, *method)?
        }
        Command::Estrada { input } => cmd_estrada(cli, input)?,
        Command::Bounds { input } => cmd_bounds(cli, input)?,
        Command::Oracle { input, extract_cr } => cmd_oracle(cli, input, *extract_cr)?,
        Command::Suite { graphs, max_n, graphs_only } => {
            cmd_suite(cli, *graphs, *max_n, *graphs_only)?
        }
    };
    let mut rep = Report::new(command, digest, params, results);
    rep.timing_ms = start.elapsed().as_millis() as u64;
    emit(cli, &rep)?;
    Ok(exit)
}

fn emit(cli: &Cli, rep: &Report) -> Result<()> {
    let text = match cli.format {
        Format::Json => rep.to_json(),
        Format::Csv => rep.to_csv(),
    };
    match &cli.output {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("writing report to {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn trace_cfg(cli: &Cli) -> TraceConfig {
    TraceConfig {
        budget: cli.budget,
        jobs: cli.jobs.max(1),
    }
}

struct Loaded {
    h: Hypergraph,
    digest: String,
}

fn load(path: &Path) -> Result<Loaded> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let h = parse_hypergraph(&text).with_context(|| format!("parsing {}", path.display()))?;
    let digest = digest_of(&serialize_hg(&h));
    Ok(Loaded { h, digest })
}

fn parse_kind(s: &str) -> Result<TensorKind> {
    match s.to_ascii_uppercase().as_str() {
        "A" => Ok(TensorKind::Adjacency),
        "D" => Ok(TensorKind::Degree),
        "L" => Ok(TensorKind::Laplacian),
        "Q" => Ok(TensorKind::SignlessLaplacian),
        _ => bail!("unknown tensor kind {s:?}, expected A, D, L or Q"),
    }
}

fn cmd_gen(cli: &Cli, kind: GenKindArg, n: u32, r: u32, m: u64) -> Result<u8> {
    let gk = match kind {
        GenKindArg::Empty => GenKind::Empty,
        GenKindArg::SingleEdge => GenKind::SingleEdge,
        GenKindArg::Complete => GenKind::Complete,
        GenKindArg::Random => GenKind::Random,
    };
    let h = generate(gk, n, r, m, cli.seed)?;
    // the artifact is always canonical .hg text; --format only shapes reports
    let text = serialize_hg(&h);
    match &cli.output {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(0)
}

fn cmd_invariants(_cli: &Cli, input: &Path) -> Result<CommandOutput> {
    let li = load(input)?;
    let h = &li.h;
    let max_power = 6.max(h.r() + 1);
    let prof = degree_stats(h, max_power);
    let (odd, odd_note) = match is_odd_colorable(h) {
        Ok(Some(_)) => (Value::Bool(true), "odd coloring found".to_string()),
        Ok(None) => (Value::Bool(false), "no odd coloring exists".to_string()),
        Err(e) => (Value::Null, e.to_string()),
    };
    let results = json!({
        "n": h.n(),
        "r": h.r(),
        "m": h.m(),
        "eigenvalue_count": uint_str(&eigenvalue_count(h)),
        "degrees": h.degrees(),
        "max_degree": prof.max_degree,
        "min_degree": prof.min_degree,
        "zagreb": uint_str(&prof.zagreb),
        "degree_power_sums": prof.power_sums.iter().map(uint_str).collect::<Vec<_>>(),
        "simplices": count_simplices(h),
        "connected": h.is_connected(),
        "components": h.components().len(),
        "odd_colorable": odd,
        "odd_colorable_note": odd_note,
    });
    let params = json!({"input": input.display().to_string()});
    Ok(("invariants", li.digest, params, results, 0))
}

fn factored_json(v: &TraceValue) -> Value {
    json!({
        "coefficient": rat_str(&v.coefficient),
        "base": v.base,
        "exponent": v.exponent,
    })
}

fn cmd_trace(
    cli: &Cli,
    input: &Path,
    kind_s: &str,
    order: u32,
    method: MethodArg,
) -> Result<CommandOutput> {
    let li = load(input)?;
    let kind = parse_kind(kind_s)?;
    let cfg = trace_cfg(cli);
    let params = json!({
        "input": input.display().to_string(),
        "kind": kind.letter(),
        "order": order,
        "method": format!("{method:?}").to_lowercase(),
        "budget": cli.budget,
        "jobs": cfg.jobs,
    });
    let mut out = Map::new();
    out.insert("kind".into(), json!(kind.letter()));
    out.insert("order".into(), json!(order));
    let mut exit = 0u8;

    let run_closed = matches!(method, MethodArg::Closed | MethodArg::Both | MethodArg::Auto);
    let run_general = matches!(method, MethodArg::General | MethodArg::Both);

    let mut closed_val: Option<TraceValue> = None;
    if run_closed {
        match trace_closed_form(&li.h, kind, order, None) {
            Ok(v) => {
                out.insert("closed".into(), json!(rat_str(&v.value)));
                closed_val = Some(v);
            }
            Err(e @ TraceError::NoClosedForm { .. }) if method == MethodArg::Auto => {
                out.insert("closed_unavailable".into(), json!(e.to_string()));
            }
            Err(e) => {
                out.insert("error".into(), json!(e.to_string()));
                exit = 1;
            }
        }
    }
    let need_general = run_general || (method == MethodArg::Auto && closed_val.is_none());
    let mut general_val: Option<TraceValue> = None;
    if need_general && exit == 0 {
        let t = build_tensor(&li.h, kind);
        match trace_general_run(&t, order, &cfg, None) {
            Ok(run) => {
                out.insert("general".into(), json!(rat_str(&run.trace.value)));
                out.insert("nodes_visited".into(), json!(run.nodes_visited));
                out.insert("eulerian_leaves".into(), json!(run.eulerian_leaves));
                general_val = Some(run.trace);
            }
            Err(e) => {
                out.insert("error".into(), json!(e.to_string()));
                exit = 1;
            }
        }
    }
    if method == MethodArg::Both {
        if let (Some(c), Some(g)) = (&closed_val, &general_val) {
            let matched = c.value == g.value;
            out.insert("match".into(), json!(matched));
            if !matched {
                exit = 2;
            }
        }
    }
    if method == MethodArg::Auto {
        let used = if closed_val.is_some() { "closed" } else { "general" };
        if exit == 0 {
            out.insert("method_used".into(), json!(used));
        }
    }
    if let Some(v) = general_val.as_ref().or(closed_val.as_ref()) {
        out.insert("value".into(), json!(rat_str(&v.value)));
        out.insert("factored".into(), factored_json(v));
    }
    Ok(("trace", li.digest, params, Value::Object(out), exit))
}

fn cmd_estrada(cli: &Cli, input: &Path) -> Result<CommandOutput> {
    let li = load(input)?;
    let cfg = trace_cfg(cli);
    let params = json!({
        "input": input.display().to_string(),
        "K": cli.k,
        "tol": cli.tol,
        "budget": cli.budget,
    });
    let results = if li.h.r() == 2 {
        let suite = estrada_suite_graph(&li.h)?;
        json!({
            "method": "dense eigensolver",
            "ee": suite.ee,
            "slee": suite.slee,
            "lee": suite.lee,
            "lee1": suite.lee1,
            "le": suite.le,
            "adjacency_spectrum": suite.adjacency,
            "laplacian_spectrum": suite.laplacian,
            "signless_spectrum": suite.signless,
        })
    } else {
        let slee = slee_certified_interval(&li.h, cli.k, cli.tol, &cfg)?;
        let lee = lee_enclosure_r3(&li.h, cli.k, cli.tol, &cfg)?;
        json!({
            "method": "certified series",
            "slee": {
                "lower": slee.lower,
                "upper": slee.upper,
                "partial": rat_str(&slee.partial),
                "order": slee.truncation_order,
                "radius": slee.radius,
                "converged": slee.converged,
                "certified": slee.certified,
            },
            "lee": lee.map(|(lo, hi, src)| json!({"lower": lo, "upper": hi, "source": src})),
            "nodes_visited": slee.nodes_visited,
        })
    };
    Ok(("estrada", li.digest, params, results, 0))
}

fn side_json(side: &SideValue) -> Value {
    match side {
        SideValue::Exact(x) => json!({"type": "exact", "value": rat_str(x)}),
        SideValue::Point(v) => json!({"type": "point", "value": v}),
        SideValue::Interval { lo, hi, certified } => {
            json!({"type": "interval", "lo": lo, "hi": hi, "certified": certified})
        }
    }
}

fn outcome_json(outcome: &BoundOutcome) -> (Value, bool) {
    match outcome {
        BoundOutcome::Report(rep) => {
            let context: Map<String, Value> = rep
                .context
                .iter()
                .map(|(k, v)| (k.clone(), Value::String(v.clone())))
                .collect();
            let json = json!({
                "bound_id": rep.id.code(),
                "lhs": side_json(&rep.lhs),
                "rhs": side_json(&rep.rhs),
                "satisfied": rep.satisfied.as_str(),
                "margin": rep.margin,
                "equality_case": rep.equality_case,
                "context": context,
            });
            (json, rep.satisfied == Satisfaction::Violated)
        }
        BoundOutcome::NotApplicable { id, reason } => (
            json!({
                "bound_id": id.code(),
                "lhs": Value::Null,
                "rhs": Value::Null,
                "satisfied": "not_applicable",
                "margin": Value::Null,
                "equality_case": Value::Null,
                "context": {"reason": reason},
            }),
            false,
        ),
    }
}

fn bound_opts(cli: &Cli) -> BoundOptions {
    BoundOptions {
        tol: cli.tol,
        series_order: cli.k,
        trace: trace_cfg(cli),
    }
}

fn cmd_bounds(cli: &Cli, input: &Path) -> Result<CommandOutput> {
    let li = load(input)?;
    let outcomes = bound_suite(&li.h, &bound_opts(cli));
    let mut any_violated = false;
    let list: Vec<Value> = outcomes
        .iter()
        .map(|o| {
            let (json, violated) = outcome_json(o);
            any_violated |= violated;
            json
        })
        .collect();
    let params = json!({
        "input": input.display().to_string(),
        "K": cli.k,
        "tol": cli.tol,
        "budget": cli.budget,
    });
    let exit = if any_violated { 2 } else { 0 };
    Ok(("bounds", li.digest, params, Value::Array(list), exit))
}

/// Trace orders with a closed form for this uniformity: all of 1..=r+1
/// for L and Q, and 1..r plus r+1 for A (order r has no closed form).
fn eligible_pairs(r: u32) -> Vec<(TensorKind, u32)> {
    let mut pairs = Vec::new();
    for j in 1..=r + 1 {
        pairs.push((TensorKind::Laplacian, j));
        pairs.push((TensorKind::SignlessLaplacian, j));
    }
    for j in 1..r {
        pairs.push((TensorKind::Adjacency, j));
    }
    pairs.push((TensorKind::Adjacency, r + 1));
    pairs
}

const ORACLE_WALK_ARC_CAP: u64 = 7;

fn cmd_oracle(cli: &Cli, input: &Path, extract: Option<u32>) -> Result<CommandOutput> {
    let li = load(input)?;
    let h = &li.h;
    let cfg = trace_cfg(cli);
    let mut trace_checks = Vec::new();
    let mut errors = Vec::new();
    let mut mismatch = false;
    let mut collected: BTreeSet<Vec<(u32, u32, u64)>> = BTreeSet::new();

    for (kind, j) in eligible_pairs(h.r()) {
        let closed = match trace_closed_form(h, kind, j, None) {
            Ok(v) => v,
            Err(TraceError::NoClosedForm { .. }) => continue,
            Err(e) => {
                errors.push(json!({"kind": kind.letter(), "order": j, "error": e.to_string()}));
                continue;
            }
        };
        let t = build_tensor(h, kind);
        match trace_general_run(&t, j, &cfg, Some(ORACLE_WALK_ARC_CAP)) {
            Ok(run) => {
                let ok = closed.value == run.trace.value;
                mismatch |= !ok;
                trace_checks.push(json!({
                    "kind": kind.letter(),
                    "order": j,
                    "closed": rat_str(&closed.value),
                    "general": rat_str(&run.trace.value),
                    "match": ok,
                    "nodes_visited": run.nodes_visited,
                }));
                for ms in run.collected {
                    collected.insert(ms.key());
                }
            }
            Err(e) => {
                errors.push(json!({"kind": kind.letter(), "order": j, "error": e.to_string()}));
            }
        }
    }

    let mut walk_mismatches = Vec::new();
    for key in &collected {
        let mut ms = ArcMultiset::new();
        for &(u, v, mult) in key {
            ms.add_arc(u, v, mult);
        }
        let best = count_eulerian_closed_walks(&ms);
        match enumerate_eulerian_walks_oracle(&ms) {
            Ok(dfs) => {
                if best != dfs {
                    mismatch = true;
                    walk_mismatches.push(json!({
                        "arcs": key,
                        "best": uint_str(&best),
                        "dfs": uint_str(&dfs),
                    }));
                }
            }
            Err(e) => errors.push(json!({"walk": format!("{key:?}"), "error": e.to_string()})),
        }
    }

    let constants = match extract {
        None => Value::Null,
        Some(r) => match extract_cr(r, &cfg) {
            Ok(value) => {
                let expected = cr_constant(r);
                let ok = expected.as_ref().map(|e| *e == value);
                if ok == Some(false) {
                    mismatch = true;
                }
                json!({
                    "r": r,
                    "value": rat_str(&value),
                    "expected": expected.as_ref().map(rat_str),
                    "match": ok,
                })
            }
            Err(e) => {
                errors.push(json!({"extract_cr": r, "error": e.to_string()}));
                Value::Null
            }
        },
    };

    let exit = if mismatch {
        2
    } else if !errors.is_empty() {
        1
    } else {
        0
    };
    let results = json!({
        "trace_checks": trace_checks,
        "walk_checks": {
            "max_arcs": ORACLE_WALK_ARC_CAP,
            "checked": collected.len(),
            "mismatches": walk_mismatches,
        },
        "constants": constants,
        "errors": errors,
        "ok": exit == 0,
    });
    let params = json!({
        "input": input.display().to_string(),
        "budget": cli.budget,
        "jobs": cli.jobs.max(1),
        "extract_cr": extract,
    });
    Ok(("oracle", li.digest, params, results, exit))
}

pub fn corpus() -> Vec<(String, Hypergraph)> {
    let mut v: Vec<(String, Hypergraph)> = vec![
        ("empty_3_3".into(), generate(GenKind::Empty, 3, 3, 0, 0).unwrap()),
        ("edge_r3".into(), generate(GenKind::SingleEdge, 3, 3, 0, 0).unwrap()),
        (
            "two_edges_r3".into(),
            parse_hypergraph("6 3\n1 2 3\n4 5 6\n").unwrap(),
        ),
        ("k4_r3".into(), generate(GenKind::Complete, 4, 3, 0, 0).unwrap()),
        ("p2".into(), parse_hypergraph("2 2\n1 2\n").unwrap()),
        ("p3".into(), parse_hypergraph("3 2\n1 2\n2 3\n").unwrap()),
        ("k3".into(), generate(GenKind::Complete, 3, 2, 0, 0).unwrap()),
        ("k4".into(), generate(GenKind::Complete, 4, 2, 0, 0).unwrap()),
    ];
    for m in [2u64, 3] {
        for seed in 1..=5u64 {
            v.push((
                format!("rand_r3_n4_m{m}_s{seed}"),
                generate(GenKind::Random, 4, 3, m, seed).unwrap(),
            ));
        }
    }
    v
}

/// Deterministic (n, m, seed) schedule for the random graph sweep.
fn sweep_graphs(count: u64, max_n: u32, seed: u64) -> Vec<(String, Hypergraph)> {
    let span = max_n.saturating_sub(2).max(1) as u64;
    let mut v = Vec::new();
    for i in 0..count {
        let n = 3 + (i % span) as u32;
        let max_m = n as u64 * (n as u64 - 1) / 2;
        let mix = i
            .wrapping_mul(0x9e37_79b9_7f4a_7c15)
            .rotate_left(17)
            ^ seed.wrapping_mul(0xd1b5_4a32_d192_ed03);
        let m = mix % (max_m + 1);
        if let Ok(h) = generate(GenKind::Random, n, 2, m, seed.wrapping_add(i)) {
            v.push((format!("g{i}_n{n}_m{m}"), h));
        }
    }
    v
}

fn cmd_suite(cli: &Cli, graphs: u64, max_n: u32, graphs_only: bool) -> Result<CommandOutput> {
    let opts = bound_opts(cli);
    let mut instances = corpus();
    if graphs_only {
        instances.retain(|(_, h)| h.r() == 2);
    }
    instances.extend(sweep_graphs(graphs, max_n, cli.seed));

    let mut digest_input = String::new();
    let mut proven = 0u64;
    let mut violated = 0u64;
    let mut inconclusive = 0u64;
    let mut not_applicable = 0u64;
    let mut equality_hits = 0u64;
    let mut violations = Vec::new();
    let mut per_instance = Vec::new();

    for (label, h) in &instances {
        let canonical = serialize_hg(h);
        digest_input.push_str(&canonical);
        let outcomes = bound_suite(h, &opts);
        let mut counts = [0u64; 4];
        let mut equalities = Vec::new();
        for o in &outcomes {
            match o {
                BoundOutcome::Report(rep) => {
                    match rep.satisfied {
                        Satisfaction::Proven => {
                            proven += 1;
                            counts[0] += 1;
                        }
                        Satisfaction::Violated => {
                            violated += 1;
                            counts[1] += 1;
                            let (json, _) = outcome_json(o);
                            violations.push(json!({"instance": label, "report": json}));
                        }
                        Satisfaction::Inconclusive => {
                            inconclusive += 1;
                            counts[2] += 1;
                        }
                    }
                    if rep.equality_case {
                        equality_hits += 1;
                        equalities.push(rep.id.code());
                    }
                }
                BoundOutcome::NotApplicable { .. } => {
                    not_applicable += 1;
                    counts[3] += 1;
                }
            }
        }
        per_instance.push(json!({
            "label": label,
            "digest": digest_of(&canonical),
            "proven": counts[0],
            "violated": counts[1],
            "inconclusive": counts[2],
            "not_applicable": counts[3],
            "equalities": equalities,
        }));
    }

    let results = json!({
        "instances": instances.len(),
        "proven": proven,
        "violated": violated,
        "inconclusive": inconclusive,
        "not_applicable": not_applicable,
        "equality_hits": equality_hits,
        "violations": violations,
        "per_instance": per_instance,
    });
    let params = json!({
        "graphs": graphs,
        "max_n": max_n,
        "graphs_only": graphs_only,
        "seed": cli.seed,
        "K": cli.k,
        "tol": cli.tol,
        "budget": cli.budget,
    });
    let exit = if violated > 0 { 2 } else { 0 };
    Ok(("suite", digest_of(&digest_input), params, results, exit))
}
