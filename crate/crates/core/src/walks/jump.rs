//! Walk on ℤ whose steps are uniform on {−2, −1, 1, 2}.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

/// √t · p_t(0, 0) tends to 1/√(5π) for this walk.
pub const JUMP_LIMIT_CONSTANT: f64 = 0.252_313_252_202_016_3;

/// Largest t for which the exact integer recursion is used.
const EXACT_LIMIT: u64 = 64;

/// Number of step sequences of length t that return to 0 (out of 4^t).
pub fn jump_walk_count(t: u64) -> BigUint {
    let t = t as usize;
    let width = 4 * t + 1;
    let mut counts = vec![BigUint::zero(); width];
    counts[2 * t] = BigUint::from(1u32);
    let mut next = vec![BigUint::zero(); width];
    for _ in 0..t {
        for (i, slot) in next.iter_mut().enumerate() {
            let mut acc = BigUint::zero();
            for d in [1usize, 2] {
                if i >= d {
                    acc += &counts[i - d];
                }
                if i + d < width {
                    acc += &counts[i + d];
                }
            }
            *slot = acc;
        }
        std::mem::swap(&mut counts, &mut next);
    }
    counts[2 * t].clone()
}

/// p_t(0, 0) in double precision by dynamic programming over [−2t, 2t].
pub fn jump_walk_return_dp(t: u64) -> f64 {
    let t = t as usize;
    let width = 4 * t + 1;
    let mut p = vec![0.0f64; width];
    p[2 * t] = 1.0;
    let mut next = vec![0.0f64; width];
    for s in 0..t {
        // After s steps the support is [2t − 2s, 2t + 2s].
        let lo = (2 * t).saturating_sub(2 * s + 2);
        let hi = (2 * t + 2 * s + 2).min(width - 1);
        for i in lo..=hi {
            let mut acc = 0.0;
            if i >= 1 {
                acc += p[i - 1];
            }
            if i >= 2 {
                acc += p[i - 2];
            }
            if i + 1 < width {
                acc += p[i + 1];
            }
            if i + 2 < width {
                acc += p[i + 2];
            }
            next[i] = 0.25 * acc;
        }
        std::mem::swap(&mut p, &mut next);
    }
    p[2 * t]
}

/// p_t(0, 0): exact ratio over 4^t for t ≤ 64, double-precision DP beyond.
pub fn jump_walk_return(t: u64) -> f64 {
    if t <= EXACT_LIMIT {
        let num = jump_walk_count(t).to_f64().expect("finite");
        num / 4f64.powi(t as i32)
    } else {
        jump_walk_return_dp(t)
    }
}

/// p_s(0, 0) for s = 0, ..., t_max from a single DP pass.
pub fn jump_walk_series(t_max: u64) -> Vec<f64> {
    let t = t_max as usize;
    let width = 4 * t + 1;
    let mid = 2 * t;
    let mut p = vec![0.0f64; width];
    p[mid] = 1.0;
    let mut next = vec![0.0f64; width];
    let mut out = Vec::with_capacity(t + 1);
    out.push(1.0);
    for s in 0..t {
        let lo = mid.saturating_sub(2 * s + 2);
        let hi = (mid + 2 * s + 2).min(width - 1);
        for i in lo..=hi {
            let mut acc = 0.0;
            if i >= 1 {
                acc += p[i - 1];
            }
            if i >= 2 {
                acc += p[i - 2];
            }
            if i + 1 < width {
                acc += p[i + 1];
            }
            if i + 2 < width {
                acc += p[i + 2];
            }
            next[i] = 0.25 * acc;
        }
        std::mem::swap(&mut p, &mut next);
        out.push(p[mid]);
    }
    out
}
