use rand::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph_core::WeightedGraph;
use crate::scalar::Scalar;

/// Frequency estimate of p_t(x, x) from independent simulated walks.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WalkEstimate {
    pub x: usize,
    pub t: u64,
    pub estimate: f64,
    pub samples: u64,
    pub seed: u64,
    /// 1.96 · √(p̂(1 − p̂)/N).
    pub ci_half_width: f64,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Sample i draws from its own Xoshiro256++ stream keyed by (seed, i), so the
/// result does not depend on how samples are spread over threads.
fn sample_rng(seed: u64, index: u64) -> Xoshiro256PlusPlus {
    Xoshiro256PlusPlus::seed_from_u64(splitmix64(seed ^ splitmix64(index)))
}

struct Csr {
    start: Vec<usize>,
    target: Vec<usize>,
    cumulative: Vec<f64>,
    total: Vec<f64>,
}

impl Csr {
    fn new<T: Scalar>(g: &WeightedGraph<T>) -> Self {
        let mut start = vec![0];
        let mut target = Vec::new();
        let mut cumulative = Vec::new();
        let mut total = Vec::new();
        for x in 0..g.n() {
            let mut acc = 0.0;
            for &(y, w) in g.neighbors(x) {
                acc += w.f64();
                target.push(y);
                cumulative.push(acc);
            }
            total.push(acc);
            start.push(target.len());
        }
        Csr { start, target, cumulative, total }
    }

    fn step(&self, z: usize, rng: &mut Xoshiro256PlusPlus) -> usize {
        let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        let r = u * self.total[z];
        let (a, b) = (self.start[z], self.start[z + 1]);
        let i = self.cumulative[a..b].partition_point(|&c| c <= r);
        self.target[a + i.min(b - a - 1)]
    }
}

/// Estimate p_t(x, x) from `samples` walks; neighbors are chosen with probability w(x,y)/w(x).
pub fn monte_carlo_return<T: Scalar>(g: &WeightedGraph<T>, x: usize, t: u64, samples: u64, seed: u64) -> Result<WalkEstimate> {
    g.check_vertex(x)?;
    if samples == 0 {
        return Err(Error::InvalidArgument("at least one sample is required".into()));
    }
    let csr = Csr::new(g);
    let hits: u64 = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(seed, i);
            let mut z = x;
            for _ in 0..t {
                z = csr.step(z, &mut rng);
            }
            u64::from(z == x)
        })
        .sum();
    let p = hits as f64 / samples as f64;
    Ok(WalkEstimate {
        x,
        t,
        estimate: p,
        samples,
        seed,
        ci_half_width: 1.96 * (p * (1.0 - p) / samples as f64).sqrt(),
    })
}
