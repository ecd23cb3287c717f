use super::{require, sample, BoundCheck, Context, Relation};
use crate::error::{Error, Result};
use crate::graph_core::resistance_matrix;
use crate::operators::OperatorKind;
use crate::walks::{greens_column, local_green, ChainTimes};
use crate::{Decomposition, Graph};

/// Number of window times t ∈ [⌈t_rel⌉, 4⌈t_rel⌉] evaluated.
const WINDOW_SAMPLES: usize = 64;
/// Vertices for which the sets A_α and their killed Green's functions are built.
const SET_SAMPLES: usize = 8;
pub const ALPHAS: [f64; 3] = [1.5, 2.0, 4.0];

/// Σ_{s=0}^{m−1} λ^s.
fn geometric(lambda: f64, m: u64) -> f64 {
    if (1.0 - lambda).abs() < 1e-13 {
        m as f64
    } else {
        (1.0 - lambda.powi(i32::try_from(m).expect("fits in i32"))) / (1.0 - lambda)
    }
}

/// Σ_j |⟨e_x, h_j⟩|² f(λ_j) over the spectrum of P.
fn spectral_sum(dec_p: &Decomposition, x: usize, f: impl Fn(f64) -> f64) -> f64 {
    (0..dec_p.n()).map(|j| dec_p.mass(x, j) * f(dec_p.eigenvalues[j])).sum()
}

/// Bounds in terms of t_rel: the even/odd return bounds, the Green's function
/// chain behind them, the commute-time chain bounding t_rel, the killed Green's
/// function bound on the sets A_α, and the commute/resistance identity.
pub fn check_relaxation_return(g: &Graph, dec_p: &Decomposition, times: &ChainTimes<f64>) -> Result<Vec<BoundCheck>> {
    require(dec_p.kind == OperatorKind::TransitionP, "expected a decomposition of P")?;
    if g.is_bipartite() {
        return Err(Error::BipartiteChain);
    }
    require(g.is_unweighted(), "graph must be unweighted")?;
    let n = g.n();
    let nf = n as f64;
    let d_min = g.min_degree() as f64;
    let d_avg = g.avg_degree();
    let t_rel = times.t_rel;
    let t_prime = times.t_prime;
    let start = (t_rel - 1e-9).ceil().max(1.0) as u64;
    let window: Vec<u64> = sample(&(start..=4 * start).collect::<Vec<_>>(), WINDOW_SAMPLES);
    let decay = 1.0 - (-2.0f64).exp();
    let mut out = Vec::new();

    for x in 0..n {
        let pi = g.pi(x);
        let dx = g.degree(x) as f64;
        // g_{2t'}(x, x) = Σ_{s=0}^{2t'} p_s(x, x)
        let green = spectral_sum(dec_p, x, |l| geometric(l, 2 * t_prime + 1));
        for &t in &window {
            let ctx = Context::default().x(x).t(t);
            let tf = t as f64;
            let even = spectral_sum(dec_p, x, |l| l.powi((2 * t) as i32)) - pi;
            let odd = spectral_sum(dec_p, x, |l| l.powi((2 * t + 1) as i32)) - pi;
            let scale = 8.0 * dx * (t_rel + 1.0).sqrt() / d_min;
            out.push(BoundCheck::new(
                "relaxation_return_even_lower",
                "p_2t(x,x) - pi(x) >= 0",
                even,
                0.0,
                Relation::Ge,
                ctx.clone(),
            ));
            out.push(BoundCheck::new(
                "relaxation_return_even",
                "p_2t(x,x) - pi(x) <= 8 d(x) sqrt(t_rel+1) / ((t+1) d_min), t >= t_rel",
                even,
                scale / (tf + 1.0),
                Relation::Le,
                ctx.clone(),
            ));
            out.push(BoundCheck::new(
                "relaxation_return_odd",
                "|p_2t+1(x,x) - pi(x)| <= 8 d(x) sqrt(t_rel+1) / (sqrt((t+1)(t+2)) d_min), t >= t_rel",
                odd.abs(),
                scale / ((tf + 1.0) * (tf + 2.0)).sqrt(),
                Relation::Le,
                ctx.clone(),
            ));
            // Σ_{s=0}^{t} p_{2s}(x, x) − (t+1)π(x)
            let even_sum = spectral_sum(dec_p, x, |l| geometric(l * l, t + 1)) - (tf + 1.0) * pi;
            out.push(BoundCheck::new(
                "green_average",
                "p_2t(x,x) - pi(x) <= (sum_{s<=t} p_2s(x,x) - (t+1) pi(x)) / (t+1)",
                even,
                even_sum / (tf + 1.0),
                Relation::Le,
                ctx.clone(),
            ));
            out.push(BoundCheck::new(
                "green_decay",
                "p_2t(x,x) - pi(x) <= g_2t'(x,x) / ((1 - e^-2)(t+1)), t >= t'",
                even,
                green / (decay * (tf + 1.0)),
                Relation::Le,
                ctx,
            ));
        }
        out.push(BoundCheck::new(
            "green_diagonal",
            "g_2t'(x,x)/pi(x) <= (9 d_avg n / (2 d_min)) sqrt(2t'+1)",
            green / pi,
            9.0 * d_avg * nf / (2.0 * d_min) * ((2 * t_prime + 1) as f64).sqrt(),
            Relation::Le,
            Context::default().x(x).t(t_prime),
        ));
    }

    let commute = times.commute_diameter();
    let vol = g.volume();
    let diam = g.diameter() as f64;
    out.push(BoundCheck::new(
        "relaxation_commute",
        "t_rel <= max_{x,y} (E_x tau_y + E_y tau_x)",
        t_rel,
        commute,
        Relation::Le,
        Context::default(),
    ));
    out.push(BoundCheck::new(
        "commute_diameter_volume",
        "max_{x,y} (E_x tau_y + E_y tau_x) <= diam(G) vol(V)",
        commute,
        diam * vol,
        Relation::Le,
        Context::default(),
    ));
    out.push(BoundCheck::new(
        "commute_degree",
        "max_{x,y} (E_x tau_y + E_y tau_x) <= 3 n^2 d_avg/d_min - 2",
        commute,
        3.0 * nf * nf * d_avg / d_min - 2.0,
        Relation::Le,
        Context::default(),
    ));

    let resistance = resistance_matrix(g)?;
    let mut worst = 0.0f64;
    for x in 0..n {
        for y in x + 1..n {
            let c = times.hitting[(x, y)] + times.hitting[(y, x)];
            let r = vol * resistance[(x, y)];
            worst = worst.max((c - r).abs() / r.max(1.0));
        }
    }
    out.push(BoundCheck::new(
        "commute_resistance",
        "|E_x tau_y + E_y tau_x - vol(V) R(x,y)| / max(1, vol(V) R(x,y)) <= 1e-8",
        worst,
        1e-8,
        Relation::Le,
        Context::default(),
    ));

    let killed = 4.5 * (d_avg * nf / d_min).powi(2);
    let horizon = 2 * t_prime;
    let level = (horizon + 1) as f64;
    for x in sample(&(0..n).collect::<Vec<_>>(), SET_SAMPLES) {
        let pi = g.pi(x);
        let column = greens_column(g, x, horizon);
        for alpha in ALPHAS {
            let set: Vec<usize> = (0..n).filter(|&y| column[y] <= alpha * pi * level).collect();
            let mass: f64 = set.iter().map(|&y| g.pi(y)).sum();
            let ctx = Context::default().x(x).alpha(alpha).t(t_prime);
            out.push(BoundCheck::new(
                "alpha_set_mass",
                "1 - pi(A_alpha) <= 1/alpha",
                1.0 - mass,
                1.0 / alpha,
                Relation::Le,
                ctx.clone(),
            ));
            // The killed Green's function needs x outside the set; the bound
            // holds for every such set, so x is dropped from A_α when present.
            let set: Vec<usize> = set.into_iter().filter(|&y| y != x).collect();
            if set.is_empty() {
                continue;
            }
            let mass: f64 = set.iter().map(|&y| g.pi(y)).sum();
            let gxx = local_green(g, x, &set)?;
            out.push(BoundCheck::new(
                "killed_green",
                "G(x,x;A)/pi(x) <= (9/2)(d_avg n/d_min)^2 (1 - pi(A))",
                gxx / pi,
                killed * (1.0 - mass),
                Relation::Le,
                ctx,
            ));
        }
    }
    Ok(out)
}
