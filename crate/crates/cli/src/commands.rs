use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use spectra_core::bounds::{summary_csv, Grids};
use spectra_core::energy::{alternating_witness, kudos_upper, set_selection, KudosBudget};
use spectra_core::graph_core::{generate, resistance_diameter};
use spectra_core::suite::{suite_cases, verify_suite, Case, Checker, Spectra, VerifyOptions};
use spectra_core::walks::{
    chain_times, jump_walk_series, mixing_scan, monte_carlo_return, return_prob_spectral, JUMP_LIMIT_CONSTANT,
    UNIFORM_MIXING_THRESHOLD,
};
use spectra_core::{Decomposition, Error, Graph, GraphSpec, Result};

use crate::{Cli, Command};

pub fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Generate { spec } => generate_cmd(cli, spec),
        Command::Analyze { input } => analyze(cli, input),
        Command::Verify { input, suite, checkers, delta_grid, t_grid } => {
            verify(cli, input.as_deref(), suite.as_deref(), checkers, delta_grid.as_deref(), t_grid.as_deref())
        }
        Command::Walk { input, x, t_max, samples, jump1d } => {
            if *jump1d {
                jump_table(cli, *t_max)
            } else {
                let input = input
                    .as_deref()
                    .ok_or_else(|| Error::InvalidArgument("walk needs a graph unless --jump1d is given".into()))?;
                walk(cli, input, *x, *t_max, *samples)
            }
        }
        Command::Energy { input } => energy(cli, input),
        Command::Mix { input } => mix(cli, input),
    }
}

/// A file path if one exists, otherwise a generator spec.
fn load_case(input: &str, seed: u64) -> Result<Case> {
    let path = Path::new(input);
    if path.exists() {
        return Ok(Case::from_graph(input, Graph::load(path)?));
    }
    if input.contains(':') || input == "petersen" {
        let spec: GraphSpec = input.parse()?;
        return Case::from_spec(&spec, seed);
    }
    Err(Error::Io(std::io::Error::new(
        std::io::ErrorKind::NotFound,
        format!("'{input}' is neither a file nor a generator spec"),
    )))
}

/// Write to stdout; a closed pipe (e.g. `| head`) ends output quietly.
fn emit(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn write_out(cli: &Cli, name: &str, contents: &str) -> Result<Option<PathBuf>> {
    match &cli.out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            let path = dir.join(name);
            fs::write(&path, contents)?;
            Ok(Some(path))
        }
        None => Ok(None),
    }
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse::<T>().map_err(|_| Error::InvalidArgument(format!("bad {what} value '{x}'"))))
        .collect()
}

fn sci(v: f64) -> String {
    format!("{v:.16e}")
}

fn summary_line(g: &Graph) -> String {
    let bip = if g.is_bipartite() { "bipartite" } else { "non-bipartite" };
    let reg = if g.is_regular() { format!("{}-regular", g.degree(0)) } else { "irregular".to_string() };
    let weighted = if g.is_unweighted() { "" } else { ", weighted" };
    format!("n={}, |E|={}, {bip}, {reg}{weighted}, Δ={}", g.n(), g.edge_count(), g.diameter())
}

fn generate_cmd(cli: &Cli, spec: &str) -> Result<u8> {
    let spec: GraphSpec = spec.parse()?;
    let g = generate(&spec, cli.seed)?;
    let slug: String = spec.to_string().chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect();
    let dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&dir)?;
    let path = dir.join(format!("{slug}.csv"));
    g.save(&path)?;
    emit(&format!("{}\n{}\n", path.display(), summary_line(&g)))?;
    Ok(0)
}

fn measure_csv(dec: &Decomposition) -> String {
    let mut s = String::from("x,location,mass\n");
    for x in 0..dec.n() {
        for (l, m) in dec.vertex_measure(x).atoms {
            s.push_str(&format!("{x},{},{}\n", sci(l), sci(m)));
        }
    }
    s
}

fn analyze(cli: &Cli, input: &str) -> Result<u8> {
    let case = load_case(input, cli.seed)?;
    let g = &case.graph;
    let s = Spectra::new(g)?;
    let bipartite = g.is_bipartite();
    let mut doc = json!({
        "schema": 1,
        "graph": case.id,
        "n": g.n(),
        "edges": g.edge_count(),
        "bipartite": bipartite,
        "regular": g.is_regular(),
        "diameter": g.diameter(),
        "rdiam": resistance_diameter(g)?,
        "pi": g.stationary(),
        "spectra": {
            "P": s.p.eigenvalues,
            "L": s.l.eigenvalues,
            "Q": s.q.eigenvalues,
            "Theta": s.theta.eigenvalues,
            "A": s.a.eigenvalues,
        },
    });
    let obj = doc.as_object_mut().expect("object");
    if bipartite {
        obj.insert("t_rel".into(), Value::Null);
        obj.insert("t_rel_reason".into(), json!("bipartite"));
        obj.insert("t_unif".into(), Value::Null);
        obj.insert("t_unif_reason".into(), json!("bipartite"));
        obj.insert("kudos".into(), json!({ "lower": 0.0, "upper": 0.0, "reason": "bipartite" }));
    } else {
        let times = chain_times(g, &s.p)?;
        obj.insert("lambda_star".into(), json!(times.lambda_star));
        obj.insert("t_rel".into(), json!(times.t_rel));
        obj.insert("t_unif".into(), json!(times.t_unif));
        obj.insert("commute_diameter".into(), json!(times.commute_diameter()));
        let est = kudos_upper(g, &KudosBudget { seed: cli.seed, ..KudosBudget::default() })?;
        obj.insert(
            "kudos".into(),
            json!({
                "lower": est.lower_bound,
                "upper": est.upper_bound,
                "method": est.method,
                "multistart": est.multistart_value,
                "pairwise": est.pairwise_value,
            }),
        );
    }
    let text = serde_json::to_string_pretty(&doc).expect("serializes");
    emit(&format!("{text}\n"))?;
    write_out(cli, "analysis.json", &text)?;
    for (name, dec) in [("P", &s.p), ("L", &s.l), ("Q", &s.q), ("Theta", &s.theta), ("A", &s.a)] {
        write_out(cli, &format!("measure_{name}.csv"), &measure_csv(dec))?;
    }
    Ok(0)
}

fn verify(
    cli: &Cli,
    input: Option<&str>,
    suite: Option<&str>,
    checkers: &str,
    delta_grid: Option<&str>,
    t_grid: Option<&str>,
) -> Result<u8> {
    let cases = match (input, suite) {
        (Some(_), Some(_)) => return Err(Error::InvalidArgument("give either a graph or --suite, not both".into())),
        (Some(i), None) => vec![load_case(i, cli.seed)?],
        (None, Some(name)) => suite_cases(name)?,
        (None, None) => return Err(Error::InvalidArgument("verify needs a graph or --suite".into())),
    };
    let grids = Grids {
        delta: delta_grid.map(|s| parse_list(s, "delta")).transpose()?,
        t: t_grid.map(|s| parse_list(s, "t")).transpose()?,
    };
    let opts = VerifyOptions { checkers: Checker::parse_list(checkers)?, grids, ..VerifyOptions::default() };
    let report = verify_suite(&cases, &opts)?;
    let summary = summary_csv(&report.summary);
    write_out(cli, "report.json", &report.to_json())?;
    write_out(cli, "summary.csv", &summary)?;
    emit(&summary)?;
    for s in &report.skipped {
        eprintln!("skipped {} on {}: {}", s.checker, s.graph, s.reason);
    }
    let mut failed = 0usize;
    for c in report.failures() {
        failed += 1;
        eprintln!(
            "FAILED {} on {}: {} {} {} ({})",
            c.name,
            c.context.graph.as_deref().unwrap_or("-"),
            c.lhs,
            c.relation,
            c.rhs,
            c.paper_anchor
        );
    }
    Ok(if failed == 0 { 0 } else { 1 })
}

fn walk(cli: &Cli, input: &str, x: usize, t_max: u64, samples: u64) -> Result<u8> {
    let case = load_case(input, cli.seed)?;
    let g = &case.graph;
    g.check_vertex(x)?;
    let s = Spectra::new(g)?;
    let with_bound = g.is_unweighted() && g.is_regular();
    let mut out = String::from("t,p_exact,p_mc,ci,bound_18_over_sqrt_t\n");
    for t in 0..=t_max {
        let p = return_prob_spectral(&s.p, x, t)?;
        let (mc, ci) = if samples > 0 {
            let est = monte_carlo_return(g, x, t, samples, cli.seed.wrapping_add(t))?;
            (sci(est.estimate), sci(est.ci_half_width))
        } else {
            (String::new(), String::new())
        };
        let bound = if with_bound && t >= 2 && t % 2 == 0 { sci(18.0 / (t as f64).sqrt()) } else { String::new() };
        out.push_str(&format!("{t},{},{mc},{ci},{bound}\n", sci(p)));
    }
    emit(&out)?;
    write_out(cli, "walk.csv", &out)?;
    Ok(0)
}

fn jump_table(cli: &Cli, t_max: u64) -> Result<u8> {
    let series = jump_walk_series(t_max);
    let mut out = String::from("t,p_t,sqrt_t_p_t,limit\n");
    for (t, p) in series.iter().enumerate() {
        let scaled = (t as f64).sqrt() * p;
        out.push_str(&format!("{t},{},{},{}\n", sci(*p), sci(scaled), sci(JUMP_LIMIT_CONSTANT)));
    }
    emit(&out)?;
    write_out(cli, "jump1d.csv", &out)?;
    Ok(0)
}

fn energy(cli: &Cli, input: &str) -> Result<u8> {
    let case = load_case(input, cli.seed)?;
    let g = &case.graph;
    let mut doc = json!({ "schema": 1, "graph": case.id });
    let obj = doc.as_object_mut().expect("object");
    if g.is_bipartite() {
        obj.insert("kudos".into(), json!({ "lower": 0.0, "upper": 0.0, "reason": "bipartite" }));
        obj.insert("witness".into(), json!(alternating_witness(g)?));
    } else {
        let est = kudos_upper(g, &KudosBudget { seed: cli.seed, ..KudosBudget::default() })?;
        obj.insert("kudos".into(), serde_json::to_value(&est).expect("serializes"));
        if g.is_unweighted() {
            let s = Spectra::new(g)?;
            let ev = &s.q.eigenvalues;
            let mut sel = Vec::new();
            for d in [s.q.lambda_min(), ev[(ev.len() - 1) / 2]] {
                sel.push(serde_json::to_value(set_selection(g, &s.q, d)?).expect("serializes"));
            }
            obj.insert("selection".into(), Value::Array(sel));
        }
    }
    let text = serde_json::to_string_pretty(&doc).expect("serializes");
    emit(&format!("{text}\n"))?;
    write_out(cli, "energy.json", &text)?;
    Ok(0)
}

fn mix(cli: &Cli, input: &str) -> Result<u8> {
    let case = load_case(input, cli.seed)?;
    let g = &case.graph;
    let s = Spectra::new(g)?;
    let mut doc = json!({ "schema": 1, "graph": case.id });
    let obj = doc.as_object_mut().expect("object");
    let (deviations, monotone) = if g.is_bipartite() {
        obj.insert("t_rel".into(), Value::Null);
        obj.insert("t_unif".into(), Value::Null);
        obj.insert("reason".into(), json!("bipartite"));
        let steps = (4 * g.n() * g.n()).min(10_000) as u64;
        let scan = mixing_scan(g, UNIFORM_MIXING_THRESHOLD, steps, false);
        (scan.deviations, scan.monotone)
    } else {
        let times = chain_times(g, &s.p)?;
        obj.insert("lambda_star".into(), json!(times.lambda_star));
        obj.insert("t_rel".into(), json!(times.t_rel));
        obj.insert("t_prime".into(), json!(times.t_prime));
        obj.insert("t_unif".into(), json!(times.t_unif));
        obj.insert("commute_diameter".into(), json!(times.commute_diameter()));
        (times.deviations, times.deviation_monotone)
    };
    obj.insert("deviation_monotone".into(), json!(monotone));
    let mut csv = String::from("t,deviation\n");
    for (i, d) in deviations.iter().enumerate() {
        csv.push_str(&format!("{},{}\n", i + 1, sci(*d)));
    }
    let text = serde_json::to_string_pretty(&doc).expect("serializes");
    emit(&format!("{text}\n"))?;
    write_out(cli, "mix.json", &text)?;
    write_out(cli, "deviations.csv", &csv)?;
    Ok(0)
}
