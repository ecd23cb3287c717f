use super::{require, return_prob, sample, BoundCheck, Context, Grids, Relation};
use crate::energy::KudosEstimate;
use crate::error::Result;
use crate::graph_core::resistance_diameter;
use crate::operators::OperatorKind;
use crate::walks::{transition_prob_spectral, ChainTimes};
use crate::{Decomposition, Graph};

const PAIR_SOURCES: usize = 6;

/// Measure bounds through rdiam and 𝒦 ≥ 1/(Δ+1), the even-t relative deviation
/// bound, t_unif against 8n³ and 24n², and the cross-term inequality
/// |p_2t(x,y) − π(y)|/π(y) ≤ √ratio_x √ratio_y.
///
/// `times` is `None` for bipartite graphs, where only the parts that do not
/// need aperiodicity are evaluated.
pub fn check_mixing(
    g: &Graph,
    dec_q: &Decomposition,
    dec_l: &Decomposition,
    times: Option<&ChainTimes<f64>>,
    grids: &Grids,
) -> Result<Vec<BoundCheck>> {
    require(dec_q.kind == OperatorKind::SignlessQ, "expected a decomposition of Q")?;
    require(dec_l.kind == OperatorKind::LaplacianL, "expected a decomposition of L")?;
    require(g.weights_at_least_one(), "edge weights must be at least 1")?;
    let n = g.n();
    let bipartite = g.is_bipartite();
    let rdiam = resistance_diameter(g)?;
    let diam = g.diameter() as f64;
    let vol = g.volume();
    let lambda_1 = dec_l.eigenvalues[1];
    let mut out = Vec::new();

    let l_deltas: Vec<f64> = grids.deltas(dec_l, 2.0).into_iter().filter(|&d| d < 2.0).collect();
    for x in 0..n {
        let w = g.weight(x);
        let pi = g.pi(x);
        let reduced = dec_l.reduced_measure(x)?;
        for &d in &l_deltas {
            let m = reduced.cdf(d);
            let ctx = Context::default().x(x).delta(d);
            out.push(BoundCheck::new(
                "mixing_reduced_measure",
                "mu_x^*(delta) <= rdiam(G) w(x) delta",
                m,
                rdiam * w * d,
                Relation::Le,
                ctx.clone(),
            ));
            // Below the spectral gap the left side is π(x) > 0 = right side at δ = 0,
            // so the stationary form is only evaluated from λ_1^L on.
            if d >= lambda_1 - dec_l.merge_tol() {
                out.push(BoundCheck::new(
                    "mixing_reduced_measure_stationary",
                    "mu_x^*(delta) + pi(x) <= rdiam(G) w(x) delta, delta >= lambda_1^L",
                    m + pi,
                    rdiam * w * d,
                    Relation::Le,
                    ctx,
                ));
            }
        }
    }

    if !bipartite {
        let q_deltas: Vec<f64> = grids.deltas(dec_q, 2.0).into_iter().filter(|&d| d < 2.0).collect();
        for x in 0..n {
            let w = g.weight(x);
            let mu = dec_q.vertex_measure(x);
            for &d in &q_deltas {
                out.push(BoundCheck::new(
                    "mixing_signless_measure",
                    "mu_x^Q(delta) <= (diam+1) w(x) delta",
                    mu.cdf(d),
                    (diam + 1.0) * w * d,
                    Relation::Le,
                    Context::default().x(x).delta(d),
                ));
            }
        }
    }

    if !bipartite && g.is_unweighted() {
        for x in 0..n {
            let pi = g.pi(x);
            for t in grids.times().into_iter().filter(|t| t % 2 == 0) {
                let ratio = (return_prob(dec_l, x, t) - pi) / pi;
                let ctx = Context::default().x(x).t(t);
                out.push(BoundCheck::new(
                    "mixing_even_deviation_lower",
                    "(p_t(x,x) - pi(x))/pi(x) >= 0, t even",
                    ratio,
                    0.0,
                    Relation::Ge,
                    ctx.clone(),
                ));
                out.push(BoundCheck::new(
                    "mixing_even_deviation",
                    "(p_t(x,x) - pi(x))/pi(x) <= 2 (diam+1) vol(V)/t, t even",
                    ratio,
                    2.0 * (diam + 1.0) * vol / t as f64,
                    Relation::Le,
                    ctx,
                ));
            }
        }
        if let Some(times) = times {
            let nf = n as f64;
            out.push(BoundCheck::new(
                "uniform_mixing_cubic",
                "t_unif <= 8 n^3",
                times.t_unif as f64,
                8.0 * nf.powi(3),
                Relation::Le,
                Context::default(),
            ));
            if g.is_regular() {
                out.push(BoundCheck::new(
                    "uniform_mixing_regular",
                    "t_unif <= 24 n^2",
                    times.t_unif as f64,
                    24.0 * nf * nf,
                    Relation::Le,
                    Context::default(),
                ));
            }
        }
    }

    // Cross terms hold for any reversible chain, bipartite or not.
    for x in sample(&(0..n).collect::<Vec<_>>(), PAIR_SOURCES) {
        for t in grids.times() {
            let two_t = 2 * t;
            let ratio_x = (return_prob(dec_l, x, two_t) - g.pi(x)) / g.pi(x);
            for y in 0..n {
                if y == x {
                    continue;
                }
                let pi_y = g.pi(y);
                let ratio_y = (return_prob(dec_l, y, two_t) - pi_y) / pi_y;
                let cross = (transition_prob_spectral(dec_l, x, y, two_t)? - pi_y).abs() / pi_y;
                out.push(BoundCheck::new(
                    "mixing_cross_term",
                    "|p_2t(x,y) - pi(y)|/pi(y) <= sqrt((p_2t(x,x)-pi(x))/pi(x)) sqrt((p_2t(y,y)-pi(y))/pi(y))",
                    cross,
                    ratio_x.max(0.0).sqrt() * ratio_y.max(0.0).sqrt(),
                    Relation::Le,
                    Context::default().x(x).y(y).t(two_t),
                ));
            }
        }
    }
    Ok(out)
}

/// max_t (D_{t+1} − D_t) ≤ 0 for the worst relative deviations D_t = max_{x,y}|p_t(x,y)/π(y) − 1|.
pub fn check_deviation_monotone(deviations: &[f64]) -> BoundCheck {
    let rise = deviations.windows(2).map(|w| w[1] - w[0]).fold(f64::NEG_INFINITY, f64::max);
    BoundCheck::new(
        "deviation_monotone",
        "max_{x,y} |p_t+1(x,y)/pi(y) - 1| <= max_{x,y} |p_t(x,y)/pi(y) - 1|",
        if rise.is_finite() { rise } else { 0.0 },
        0.0,
        Relation::Le,
        Context::default().t(deviations.len() as u64),
    )
}

/// 1/(Δ+1) ≤ the best value found for the energy program.
pub fn check_kudos_sandwich(g: &Graph, est: &KudosEstimate) -> Result<BoundCheck> {
    require(!g.is_bipartite(), "graph must be non-bipartite")?;
    Ok(BoundCheck::new(
        "kudos_sandwich",
        "1/(diam+1) <= K(G) <= K_upper",
        est.lower_bound,
        est.upper_bound,
        Relation::Le,
        Context::default(),
    ))
}

/// μ_x^Q(δ) ≤ w(x)δ/𝒦 with 𝒦 replaced by the heuristic upper estimate. This
/// is stronger than what is implied, so it is reported and never asserted.
pub fn kudos_diagnostics(g: &Graph, dec_q: &Decomposition, est: &KudosEstimate, grids: &Grids) -> Result<Vec<BoundCheck>> {
    require(dec_q.kind == OperatorKind::SignlessQ, "expected a decomposition of Q")?;
    require(!g.is_bipartite(), "graph must be non-bipartite")?;
    let deltas: Vec<f64> = grids.deltas(dec_q, 2.0).into_iter().filter(|&d| d < 2.0).collect();
    let mut out = Vec::new();
    for x in 0..g.n() {
        let mu = dec_q.vertex_measure(x);
        for &d in &deltas {
            out.push(BoundCheck::new(
                "mixing_signless_measure_kudos_upper",
                "mu_x^Q(delta) <= w(x) delta / K_upper (heuristic)",
                mu.cdf(d),
                g.weight(x) * d / est.upper_bound,
                Relation::Le,
                Context::default().x(x).delta(d),
            ));
        }
    }
    Ok(out)
}
