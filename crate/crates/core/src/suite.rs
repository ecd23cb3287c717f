//! Standard graph families and the driver that runs every applicable checker on them.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::bounds::{self, BoundCheck, Context, Grids, Relation, Report};
use crate::energy::{kudos_upper, KudosBudget};
use crate::error::{Error, Result};
use crate::graph_core::{generate, GraphSpec};
use crate::operators::{build_operator, OperatorKind};
use crate::spectral::decompose;
use crate::walks::{chain_times, mixing_scan, ChainTimes, UNIFORM_MIXING_THRESHOLD};
use crate::{Decomposition, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Checker {
    Counting,
    Regular,
    Eigenvalues,
    Relaxation,
    Growth,
    Mixing,
    Kudos,
    Transitive,
    Average,
    Selection,
    Bipartite,
    Combinatorial,
    Calculus,
}

impl Checker {
    pub const ALL: [Checker; 13] = [
        Checker::Counting,
        Checker::Regular,
        Checker::Eigenvalues,
        Checker::Relaxation,
        Checker::Growth,
        Checker::Mixing,
        Checker::Kudos,
        Checker::Transitive,
        Checker::Average,
        Checker::Selection,
        Checker::Bipartite,
        Checker::Combinatorial,
        Checker::Calculus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Checker::Counting => "counting",
            Checker::Regular => "regular",
            Checker::Eigenvalues => "eigenvalues",
            Checker::Relaxation => "relaxation",
            Checker::Growth => "growth",
            Checker::Mixing => "mixing",
            Checker::Kudos => "kudos",
            Checker::Transitive => "transitive",
            Checker::Average => "average",
            Checker::Selection => "selection",
            Checker::Bipartite => "bipartite",
            Checker::Combinatorial => "combinatorial",
            Checker::Calculus => "calculus",
        }
    }

    /// Comma-separated names; `all` selects everything. Unknown names are errors.
    pub fn parse_list(s: &str) -> Result<Vec<Checker>> {
        let mut out = Vec::new();
        for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            if item == "all" {
                out.extend(Checker::ALL);
            } else {
                out.push(item.parse()?);
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for Checker {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Checker {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Checker::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown checker '{s}'")))
    }
}

/// A graph under test. `growth_dim` is set for families known to be vertex
/// transitive, with the exponent D used in the polynomial-growth bounds.
#[derive(Clone, Debug)]
pub struct Case {
    pub id: String,
    pub graph: Graph,
    pub known_transitive: bool,
    pub growth_dim: Option<f64>,
}

impl Case {
    /// A graph read from a file: transitivity is only screened, never assumed.
    pub fn from_graph(id: impl Into<String>, graph: Graph) -> Self {
        Case { id: id.into(), graph, known_transitive: false, growth_dim: None }
    }

    pub fn from_spec(spec: &GraphSpec, seed: u64) -> Result<Self> {
        let graph = generate(spec, seed)?;
        let dim = match spec {
            GraphSpec::Cycle { .. } | GraphSpec::Circulant { .. } | GraphSpec::Hypercube { .. } => Some(1.0),
            GraphSpec::Complete { .. } | GraphSpec::Petersen => Some(1.0),
            GraphSpec::GridTorus { dims } => Some(dims.len() as f64),
            _ => None,
        };
        let id = match spec {
            GraphSpec::RandomRegular { .. } | GraphSpec::RandomConnected { .. } => format!("{spec}@{seed}"),
            _ => spec.to_string(),
        };
        Ok(Case { id, graph, known_transitive: dim.is_some(), growth_dim: dim })
    }
}

pub fn standard_specs() -> Vec<(GraphSpec, u64)> {
    let mut v: Vec<(GraphSpec, u64)> = Vec::new();
    for n in (3..=101).step_by(2) {
        v.push((GraphSpec::Cycle { n }, 0));
    }
    for n in [4, 6, 8, 10, 12, 20, 32, 50, 64, 100] {
        v.push((GraphSpec::Cycle { n }, 0));
    }
    for n in 4..=8 {
        v.push((GraphSpec::Complete { n }, 0));
    }
    v.push((GraphSpec::Petersen, 0));
    for (n, offsets) in [
        (9, vec![1, 2]),
        (10, vec![1, 2]),
        (12, vec![1, 4]),
        (13, vec![1, 5]),
        (15, vec![1, 3, 5]),
        (16, vec![1, 2, 5]),
        (20, vec![1, 5]),
    ] {
        v.push((GraphSpec::Circulant { n, offsets }, 0));
    }
    for n in [10, 20, 40, 60] {
        v.push((GraphSpec::RandomRegular { n, d: 3 }, 1));
    }
    for n in [11, 30, 60] {
        v.push((GraphSpec::RandomRegular { n, d: 4 }, 1));
    }
    for (n, seed) in [(12, 1), (20, 2), (30, 3), (40, 4)] {
        v.push((GraphSpec::RandomConnected { n, p: 0.12 }, seed));
    }
    for dims in [vec![5, 5], vec![4, 6], vec![3, 3, 3], vec![15, 15]] {
        v.push((GraphSpec::GridTorus { dims }, 0));
    }
    for k in 2..=5 {
        v.push((GraphSpec::Hypercube { k }, 0));
    }
    v.push((GraphSpec::Lollipop { m: 5, k: 5 }, 0));
    v.push((GraphSpec::Lollipop { m: 6, k: 10 }, 0));
    v.push((GraphSpec::Path { n: 5 }, 0));
    v
}

/// A handful of small graphs covering every checker, for fast runs.
pub fn quick_specs() -> Vec<(GraphSpec, u64)> {
    vec![
        (GraphSpec::Complete { n: 3 }, 0),
        (GraphSpec::Cycle { n: 5 }, 0),
        (GraphSpec::Cycle { n: 6 }, 0),
        (GraphSpec::Petersen, 0),
        (GraphSpec::Circulant { n: 9, offsets: vec![1, 2] }, 0),
        (GraphSpec::Hypercube { k: 3 }, 0),
        (GraphSpec::Lollipop { m: 4, k: 3 }, 0),
    ]
}

pub fn suite_specs(name: &str) -> Result<Vec<(GraphSpec, u64)>> {
    match name {
        "standard" => Ok(standard_specs()),
        "quick" => Ok(quick_specs()),
        other => Err(Error::InvalidArgument(format!("unknown suite '{other}'"))),
    }
}

pub fn suite_cases(name: &str) -> Result<Vec<Case>> {
    suite_specs(name)?.iter().map(|(s, seed)| Case::from_spec(s, *seed)).collect()
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub checkers: Vec<Checker>,
    pub grids: Grids,
    pub kudos: KudosBudget,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            checkers: Checker::ALL.to_vec(),
            grids: Grids::default(),
            kudos: KudosBudget { restarts: 8, max_iterations: 2_000, ..KudosBudget::default() },
        }
    }
}

/// The five decompositions of a graph.
pub struct Spectra {
    pub p: Decomposition,
    pub l: Decomposition,
    pub q: Decomposition,
    pub theta: Decomposition,
    pub a: Decomposition,
}

impl Spectra {
    pub fn new(g: &Graph) -> Result<Self> {
        let d = |k| decompose(&build_operator(g, k));
        Ok(Spectra {
            p: d(OperatorKind::TransitionP)?,
            l: d(OperatorKind::LaplacianL)?,
            q: d(OperatorKind::SignlessQ)?,
            theta: d(OperatorKind::CombinatorialTheta)?,
            a: d(OperatorKind::Adjacency)?,
        })
    }
}

/// Errors that mean "this checker does not apply here" rather than a fault.
fn is_inapplicable(e: &Error) -> bool {
    matches!(
        e,
        Error::PreconditionViolated(_)
            | Error::BipartiteChain
            | Error::BipartiteGraph
            | Error::NotTransitive(_)
            | Error::UncertifiedGrowth(_)
    )
}

/// |Σ_x μ_x(δ) − #{j : λ_j ≤ δ}| at the midpoints between distinct eigenvalues.
pub fn check_counting(dec: &Decomposition) -> Vec<BoundCheck> {
    let locs = dec.average_measure().locations();
    let name = match dec.kind {
        OperatorKind::CombinatorialTheta => "counting_identity_theta",
        _ => "counting_identity_q",
    };
    locs.windows(2)
        .map(|w| {
            let d = 0.5 * (w[0] + w[1]);
            let (sum, count) = dec.counting_identity(d);
            BoundCheck::new(
                name,
                "|sum_x mu_x(delta) - #{j : lambda_j <= delta}| <= 1e-7",
                (sum - count as f64).abs(),
                1e-7,
                Relation::Le,
                Context::default().delta(d),
            )
        })
        .collect()
}

/// Worst relative deviations along t = 1..t_max for a graph whose walk never
/// mixes, so the monotonicity statement can still be tested.
fn periodic_scan_length(n: usize) -> u64 {
    (4 * n * n).min(10_000) as u64
}

struct Run<'a> {
    case: &'a Case,
    spectra: Spectra,
    times: Option<ChainTimes<f64>>,
    report: Report,
}

impl Run<'_> {
    fn record(&mut self, checker: Checker, res: Result<Vec<BoundCheck>>) -> Result<()> {
        match res {
            Ok(cs) => {
                let id = &self.case.id;
                self.report.push_checks(cs.into_iter().map(|c| c.with_graph(id)).collect());
                Ok(())
            }
            Err(e) if is_inapplicable(&e) => {
                self.report.skip(&self.case.id, checker.name(), e.to_string());
                Ok(())
            }
            Err(e) => Err(e),
        }
    }

    fn diagnose(&mut self, res: Result<Vec<BoundCheck>>) {
        if let Ok(cs) = res {
            let id = &self.case.id;
            self.report.push_diagnostics(cs.into_iter().map(|c| c.with_graph(id)).collect());
        }
    }
}

/// Run the selected graph checkers on one case. The calculus checker is graph
/// independent and is handled by [`verify_suite`].
pub fn verify_case(case: &Case, opts: &VerifyOptions) -> Result<Report> {
    let g = &case.graph;
    let spectra = Spectra::new(g)?;
    let bipartite = g.is_bipartite();
    let times = if bipartite { None } else { Some(chain_times(g, &spectra.p)?) };
    let mut run = Run { case, spectra, times, report: Report::default() };
    let grids = &opts.grids;

    for &checker in &opts.checkers {
        let s = &run.spectra;
        let res = match checker {
            Checker::Calculus => continue,
            Checker::Counting => {
                let mut cs = check_counting(&s.q);
                cs.extend(check_counting(&s.theta));
                Ok(cs)
            }
            Checker::Regular => {
                let diag = bounds::regular_measure_diagnostics(g, &s.q, grids);
                let res = bounds::check_regular_measure(g, &s.q, grids).and_then(|mut cs| {
                    cs.extend(bounds::check_regular_return(g, &s.p, grids)?);
                    Ok(cs)
                });
                run.diagnose(diag);
                res
            }
            Checker::Eigenvalues => bounds::check_eigenvalue_lower(g, &s.p),
            Checker::Relaxation => match &run.times {
                Some(t) => bounds::check_relaxation_return(g, &s.p, t),
                None => Err(Error::BipartiteChain),
            },
            Checker::Growth => bounds::check_volume_growth(g, &s.q, grids),
            Checker::Mixing => {
                let mut res = bounds::check_mixing(g, &s.q, &s.l, run.times.as_ref(), grids);
                if let Ok(cs) = &mut res {
                    let mono = match &run.times {
                        Some(t) => bounds::check_deviation_monotone(&t.deviations),
                        None => {
                            let scan = mixing_scan(g, UNIFORM_MIXING_THRESHOLD, periodic_scan_length(g.n()), false);
                            bounds::check_deviation_monotone(&scan.deviations)
                        }
                    };
                    cs.push(mono);
                }
                res
            }
            Checker::Kudos => {
                if bipartite {
                    Err(Error::BipartiteGraph)
                } else {
                    let est = kudos_upper(g, &opts.kudos)?;
                    let diag = bounds::kudos_diagnostics(g, &s.q, &est, grids);
                    let res = bounds::check_kudos_sandwich(g, &est).map(|c| vec![c]);
                    run.diagnose(diag);
                    res
                }
            }
            Checker::Transitive => {
                if bipartite {
                    Err(Error::PreconditionViolated("graph must be non-bipartite".into()))
                } else {
                    let dim = if case.known_transitive { case.growth_dim } else { None };
                    bounds::check_transitive(g, &s.q, grids, dim)
                }
            }
            Checker::Average => bounds::check_average(g, &s.q, &s.p, grids),
            Checker::Selection => {
                let ev = &s.q.eigenvalues;
                let median = ev[(ev.len() - 1) / 2];
                bounds::check_selection(g, &s.q, s.q.lambda_min()).and_then(|mut cs| {
                    cs.extend(bounds::check_selection(g, &s.q, median)?);
                    Ok(cs)
                })
            }
            Checker::Bipartite => {
                let dim = if case.known_transitive { case.growth_dim } else { None };
                let res = bounds::check_bipartite(g, &s.p, &s.l, &s.q, grids, dim);
                if let (Ok(_), Some(d)) = (&res, dim) {
                    let diag = bounds::bipartite_transitive_diagnostics(g, &s.p, grids, d);
                    run.diagnose(diag);
                }
                res
            }
            Checker::Combinatorial => bounds::check_combinatorial(g, &s.theta, &s.a, grids),
        };
        run.record(checker, res)?;
    }
    Ok(run.report)
}

/// Graph-independent checks: the two kernel-integral lemmas.
pub fn calculus_checks() -> Vec<BoundCheck> {
    let mut cs = bounds::check_calc_aux(&bounds::CALCULUS_T_VALUES);
    cs.extend(bounds::check_avg_clc(&bounds::CALCULUS_T_VALUES));
    cs
}

/// Verify every case, in parallel, then add the graph-independent checks and
/// the demonstration tables. The result does not depend on the thread count.
pub fn verify_suite(cases: &[Case], opts: &VerifyOptions) -> Result<Report> {
    let parts: Vec<Result<Report>> = cases.par_iter().map(|c| verify_case(c, opts)).collect();
    let mut report = Report::default();
    for part in parts {
        report.merge(part?);
    }
    if opts.checkers.contains(&Checker::Calculus) {
        report.push_checks(calculus_checks());
    }
    if opts.checkers.contains(&Checker::Growth) {
        report.demonstrations.push(bounds::gap_demonstration(&[10, 20, 40, 80, 160])?);
        for case in cases.iter().filter(|c| c.known_transitive && c.id.starts_with("torus")) {
            let g = &case.graph;
            let dim = case.growth_dim.unwrap_or(1.0);
            let c = bounds::certified_growth_constant(g, dim);
            let s = Spectra::new(g)?;
            report
                .demonstrations
                .extend(bounds::growth_demonstration(g, &case.id, &s.q, &s.l, 0, c, dim, &opts.grids)?);
        }
    }
    Ok(report.finish())
}
