//! Checkers that evaluate displayed inequalities on concrete graphs, the
//! envelope integral behind the return-probability arguments, and the report.

mod average;
mod bipartite;
mod calculus;
mod check;
mod combinatorial;
mod demos;
mod envelope;
mod growth;
mod mixing;
pub mod quadrature;
mod regular;
mod relaxation;
mod report;
mod transitive;

pub use average::{check_average, check_selection};
pub use bipartite::{bipartite_transitive_diagnostics, check_bipartite};
pub use calculus::{check_avg_clc, check_calc_aux, CALCULUS_T_VALUES};
pub use check::{BoundCheck, Context, Relation, CHECK_TOL};
pub use combinatorial::check_combinatorial;
pub use demos::{gap_demonstration, growth_demonstration, Demonstration};
pub use envelope::{envelope_return_integral, Envelope, Piece};
pub use growth::{certified_growth_constant, check_volume_growth, growth_constants};
pub use mixing::{check_deviation_monotone, check_kudos_sandwich, check_mixing, kudos_diagnostics};
pub use regular::{check_eigenvalue_lower, check_regular_measure, check_regular_return, regular_measure_diagnostics};
pub use relaxation::check_relaxation_return;
pub use report::{condense, summary_csv, Report, Skip, SummaryRow, REPORT_SCHEMA};
pub use transitive::{certify_transitive, check_transitive, transitive_growth_constant, TransitiveProfile};

use crate::error::{Error, Result};
use crate::Decomposition;

/// δ and t grids; `None` selects the defaults.
#[derive(Clone, Debug, Default)]
pub struct Grids {
    pub delta: Option<Vec<f64>>,
    pub t: Option<Vec<u64>>,
}

impl Grids {
    /// Grid points for δ in [0, hi]: the override, or distinct eigenvalues,
    /// their midpoints and 64 log-spaced points.
    pub fn deltas(&self, dec: &Decomposition, hi: f64) -> Vec<f64> {
        let mut pts = match &self.delta {
            Some(d) => d.clone(),
            None => default_delta_grid(dec, hi),
        };
        pts.retain(|&d| (0.0..=hi).contains(&d));
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        pts
    }

    pub fn times(&self) -> Vec<u64> {
        match &self.t {
            Some(t) => {
                let mut t: Vec<u64> = t.iter().copied().filter(|&t| t >= 1).collect();
                t.sort_unstable();
                t.dedup();
                t
            }
            None => default_t_grid(),
        }
    }
}

pub const LOG_POINTS: usize = 64;

pub fn default_delta_grid(dec: &Decomposition, hi: f64) -> Vec<f64> {
    let locs = dec.average_measure().locations();
    let mut pts: Vec<f64> = locs.clone();
    pts.extend(locs.windows(2).map(|w| 0.5 * (w[0] + w[1])));
    let top = hi * (1.0 - 1e-9);
    for i in 0..LOG_POINTS {
        let e = -6.0 + 6.0 * i as f64 / (LOG_POINTS - 1) as f64;
        pts.push(top * 10f64.powf(e));
    }
    // Eigenvalues at the ends of the range may carry rounding noise.
    for d in &mut pts {
        if *d < 0.0 && *d > -1e-9 {
            *d = 0.0;
        } else if *d > hi && *d < hi + 1e-9 {
            *d = hi;
        }
    }
    pts.retain(|&d| (0.0..=hi).contains(&d));
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

/// {1, ..., 16} ∪ {32, 64, ..., 2^14}.
pub fn default_t_grid() -> Vec<u64> {
    let mut t: Vec<u64> = (1..=16).collect();
    t.extend((5..=14).map(|k| 1u64 << k));
    t
}

pub(crate) fn require(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::PreconditionViolated(what.to_string()))
    }
}

/// Evenly spaced sample of at most `k` items, always keeping the first and last.
pub(crate) fn sample<T: Copy>(items: &[T], k: usize) -> Vec<T> {
    if items.len() <= k || k < 2 {
        return items.to_vec();
    }
    let mut idx: Vec<usize> = (0..k).map(|i| i * (items.len() - 1) / (k - 1)).collect();
    idx.dedup();
    idx.into_iter().map(|i| items[i]).collect()
}

/// p_t(x, x) from a decomposition of P, L or Q.
pub(crate) fn return_prob(dec: &Decomposition, x: usize, t: u64) -> f64 {
    crate::walks::return_prob_spectral(dec, x, t).expect("P, L or Q decomposition")
}
