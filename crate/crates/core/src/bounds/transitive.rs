use std::f64::consts::PI;

use statrs::function::gamma::gamma;

use super::{require, return_prob, BoundCheck, Context, Grids, Relation};
use crate::error::{Error, Result};
use crate::operators::OperatorKind;
use crate::{Decomposition, Graph};

pub const TRANSITIVE_CS: [f64; 3] = [0.25, 0.5, 0.75];

/// Invariants shared by all vertices of a vertex-transitive graph.
#[derive(Clone, Debug, PartialEq)]
pub struct TransitiveProfile {
    pub weight: f64,
    pub degree: usize,
    /// N^#(r) for r = 0..=Δ(G).
    pub balls: Vec<usize>,
}

impl TransitiveProfile {
    /// N^#(r) for real r ≥ 0, i.e. the ball of radius ⌊r⌋.
    pub fn ball(&self, r: f64) -> usize {
        // A radius that is an integer up to rounding counts as that integer.
        let k = (r + 1e-9).floor().max(0.0);
        if k >= (self.balls.len() - 1) as f64 {
            *self.balls.last().unwrap()
        } else {
            self.balls[k as usize]
        }
    }

    pub fn diameter(&self) -> usize {
        self.balls.len() - 1
    }
}

/// Necessary conditions for vertex transitivity: equal weights, degrees and
/// ball profiles at every vertex. Generator-built families are transitive;
/// for other inputs passing this check is evidence, not proof.
pub fn certify_transitive(g: &Graph) -> Result<TransitiveProfile> {
    let first = TransitiveProfile {
        weight: g.weight(0),
        degree: g.degree(0),
        balls: g.ball_profile(0),
    };
    for x in 1..g.n() {
        if g.weight(x) != first.weight || g.degree(x) != first.degree || g.ball_profile(x) != first.balls {
            return Err(Error::NotTransitive(format!("vertex {x} differs from vertex 0")));
        }
    }
    Ok(first)
}

/// C = min_{1 ≤ r ≤ Δ} N^#(r)/r^D, the best constant in N^#(r) ≥ C r^D on that range.
pub fn transitive_growth_constant(profile: &TransitiveProfile, dim: f64) -> f64 {
    (1..=profile.diameter())
        .map(|r| profile.balls[r] as f64 / (r as f64).powf(dim))
        .fold(f64::INFINITY, f64::min)
}

/// C̃ = (D+4)^{D/2+2} d^{D/2} Γ(D/2) / (32 C D^{D/2−1}).
pub fn transitive_return_constant(c: f64, dim: f64, degree: usize) -> f64 {
    (dim + 4.0).powf(dim / 2.0 + 2.0) * (degree as f64).powf(dim / 2.0) * gamma(dim / 2.0)
        / (32.0 * c * dim.powf(dim / 2.0 - 1.0))
}

/// Measure bounds through N^#, the lower bound on λ_min^Q and, when a growth
/// exponent D is supplied, return bounds with C̃ built from the certified C.
pub fn check_transitive(g: &Graph, dec_q: &Decomposition, grids: &Grids, dim: Option<f64>) -> Result<Vec<BoundCheck>> {
    require(dec_q.kind == OperatorKind::SignlessQ, "expected a decomposition of Q")?;
    require(!g.is_bipartite(), "graph must be non-bipartite")?;
    let profile = certify_transitive(g)?;
    let w = profile.weight;
    let diam = profile.diameter() as f64;
    let deltas: Vec<f64> = grids.deltas(dec_q, 2.0).into_iter().filter(|&d| d > 0.0).collect();
    let mut out = Vec::new();
    for x in 0..g.n() {
        let mu = dec_q.vertex_measure(x);
        for &d in &deltas {
            let m = mu.cdf(d);
            for c in TRANSITIVE_CS {
                let ctx = Context::default().x(x).delta(d).c(c);
                let r = (1.0 - c).sqrt() / (w * d).sqrt();
                out.push(BoundCheck::new(
                    "transitive_measure",
                    "mu_x^Q(delta) <= 1/(c^2 N#(sqrt(1-c)/sqrt(w delta)))",
                    m,
                    1.0 / (c * c * profile.ball(r) as f64),
                    Relation::Le,
                    ctx.clone(),
                ));
                if d <= 2.0 / w {
                    let r = ((1.0 - c) / 2.0).sqrt().asin() / (w * d / 2.0).sqrt().min(1.0).asin();
                    out.push(BoundCheck::new(
                        "transitive_measure_arcsin",
                        "mu_x^Q(delta) <= 1/(c^2 N#(arcsin sqrt((1-c)/2) / arcsin sqrt(w delta/2)))",
                        m,
                        1.0 / (c * c * profile.ball(r) as f64),
                        Relation::Le,
                        ctx,
                    ));
                }
            }
        }
    }
    out.push(BoundCheck::new(
        "transitive_min_eigenvalue",
        "lambda_min^Q >= (2/w) sin^2(pi/(4(diam+1)))",
        dec_q.lambda_min(),
        2.0 / w * (PI / (4.0 * (diam + 1.0))).sin().powi(2),
        Relation::Ge,
        Context::default(),
    ));

    if let Some(dim) = dim {
        require(g.is_unweighted(), "return bounds need an unweighted graph")?;
        let c = transitive_growth_constant(&profile, dim);
        let ct = transitive_return_constant(c, dim, profile.degree);
        for x in 0..g.n() {
            let pi = g.pi(x);
            for t in grids.times() {
                let gap = return_prob(dec_q, x, t) - pi;
                let decay = (t as f64).powf(-dim / 2.0);
                let ctx = Context::default().x(x).t(t);
                if t % 2 == 0 {
                    out.push(BoundCheck::new(
                        "transitive_return_even_lower",
                        "p_t(x,x) - pi(x) >= 0, t even",
                        gap,
                        0.0,
                        Relation::Ge,
                        ctx.clone(),
                    ));
                    out.push(BoundCheck::new(
                        "transitive_return_even",
                        "p_t(x,x) - pi(x) <= 2 C~ t^(-D/2), t even",
                        gap,
                        2.0 * ct * decay,
                        Relation::Le,
                        ctx,
                    ));
                } else {
                    out.push(BoundCheck::new(
                        "transitive_return_odd",
                        "|p_t(x,x) - pi(x)| <= C~ t^(-D/2), t odd",
                        gap.abs(),
                        ct * decay,
                        Relation::Le,
                        ctx,
                    ));
                }
            }
        }
    }
    Ok(out)
}
