use statrs::function::gamma::gamma;

use super::{require, sample, BoundCheck, Context, Grids, Relation};
use crate::error::{Error, Result};
use crate::operators::OperatorKind;
use crate::{Decomposition, Graph};

pub const GROWTH_ALPHAS: [f64; 3] = [0.25, 0.5, 0.75];
const VERTEX_SAMPLES: usize = 40;

/// Largest c with vol(x, r) ≥ c(r+1)^D for every x and 0 ≤ r ≤ ecc(x).
pub fn certified_growth_constant(g: &Graph, dim: f64) -> f64 {
    let mut c = f64::INFINITY;
    for x in 0..g.n() {
        for r in 0..=g.eccentricity(x) {
            c = c.min(g.ball_volume(x, r) / ((r + 1) as f64).powf(dim));
        }
    }
    c
}

/// (C, C′) for growth vol(x, r) ≥ c(r+1)^D:
/// C = (D+1)²/(c^{1/(D+1)} D^{2D/(D+1)}) and C′ = (D+1)Γ(D/(D+1))/(c^{1/(D+1)} D^{(D−1)/(D+1)}).
pub fn growth_constants(c: f64, dim: f64) -> (f64, f64) {
    let root = c.powf(1.0 / (dim + 1.0));
    let big_c = (dim + 1.0).powi(2) / (root * dim.powf(2.0 * dim / (dim + 1.0)));
    let big_c_prime = (dim + 1.0) / (root * dim.powf((dim - 1.0) / (dim + 1.0))) * gamma(dim / (dim + 1.0));
    (big_c, big_c_prime)
}

/// Measure bounds from ball volumes around x, on sampled vertices:
/// μ_x^Q(δ) ≤ δw(x)r/α² whenever vol(x, r) > w(x)/((1−α)²μ_x^Q(δ)), and
/// μ_x^Q(δ) ≤ 4w(x)/vol(x, r) for δ < 1/(r·vol(x, r)).
pub fn check_volume_growth(g: &Graph, dec_q: &Decomposition, grids: &Grids) -> Result<Vec<BoundCheck>> {
    require(dec_q.kind == OperatorKind::SignlessQ, "expected a decomposition of Q")?;
    require(g.weights_at_least_one(), "edge weights must be at least 1")?;
    require(!g.is_bipartite(), "graph must be non-bipartite")?;
    let deltas: Vec<f64> = grids.deltas(dec_q, 2.0).into_iter().filter(|&d| d > 0.0 && d < 2.0).collect();
    let mut out = Vec::new();
    for x in sample(&(0..g.n()).collect::<Vec<_>>(), VERTEX_SAMPLES) {
        let mu = dec_q.vertex_measure(x);
        let w = g.weight(x);
        let ecc = g.eccentricity(x);
        let vols: Vec<f64> = (0..=ecc).map(|r| g.ball_volume(x, r)).collect();
        for &d in &deltas {
            let m = mu.cdf(d);
            if m <= 0.0 {
                continue;
            }
            for alpha in GROWTH_ALPHAS {
                let need = w / ((1.0 - alpha).powi(2) * m);
                // The bound grows with r, so the smallest admissible radius is the sharpest.
                if let Some(r) = (0..=ecc).find(|&r| vols[r] > need) {
                    out.push(BoundCheck::new(
                        "volume_growth_measure",
                        "vol(x,r) > w(x)/((1-alpha)^2 mu_x^Q(delta)) => mu_x^Q(delta) <= delta w(x) r / alpha^2",
                        m,
                        d * w * r as f64 / (alpha * alpha),
                        Relation::Le,
                        Context::default().x(x).delta(d).alpha(alpha).r(r),
                    ));
                }
            }
        }
        for (r, &vol) in vols.iter().enumerate().skip(1) {
            let cut = 1.0 / (r as f64 * vol);
            let mut pts: Vec<f64> = deltas.iter().copied().filter(|&d| d < cut).collect();
            pts.push(cut * (1.0 - 1e-9));
            for d in pts {
                out.push(BoundCheck::new(
                    "volume_growth_small_delta",
                    "delta < 1/(r vol(x,r)) => mu_x^Q(delta) <= 4 w(x)/vol(x,r)",
                    mu.cdf(d),
                    4.0 * w / vol,
                    Relation::Le,
                    Context::default().x(x).delta(d).r(r),
                ));
            }
        }
    }
    Ok(out)
}

/// Fails with `UncertifiedGrowth` unless vol(x, r) ≥ c(r+1)^D on the whole finite range.
pub(crate) fn certify_growth(g: &Graph, c: f64, dim: f64) -> Result<()> {
    let best = certified_growth_constant(g, dim);
    if best + 1e-12 >= c {
        Ok(())
    } else {
        Err(Error::UncertifiedGrowth(format!(
            "vol(x,r) >= {c}(r+1)^{dim} fails; the largest certified c is {best}"
        )))
    }
}
