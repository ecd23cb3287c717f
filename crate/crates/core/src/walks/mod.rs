//! Random-walk quantities: return and transition probabilities, Green's
//! functions, hitting times and mixing times.

mod jump;
mod monte_carlo;

pub use jump::{jump_walk_count, jump_walk_return, jump_walk_return_dp, jump_walk_series, JUMP_LIMIT_CONSTANT};
pub use monte_carlo::{monte_carlo_return, WalkEstimate};

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::graph_core::WeightedGraph;
use crate::operators::OperatorKind;
use crate::scalar::Scalar;
use crate::spectral::SpectralDecomposition;

/// Default threshold on max_{x,y} |p_t(x,y) − π(y)|/π(y) defining t_unif.
pub const UNIFORM_MIXING_THRESHOLD: f64 = 0.25;
/// Absolute slack on the threshold so that exact hits such as 1/4 count.
const THRESHOLD_SLACK: f64 = 1e-12;

/// Eigenvalue of P corresponding to eigenvalue `lambda` of the decomposed operator.
fn p_eigenvalue<T: Scalar>(kind: OperatorKind, lambda: T) -> Result<T> {
    match kind {
        OperatorKind::TransitionP => Ok(lambda),
        OperatorKind::LaplacianL => Ok(T::one() - lambda),
        OperatorKind::SignlessQ => Ok(lambda - T::one()),
        other => Err(Error::WrongOperatorKind(format!("return probabilities need P, L or Q, got {other}"))),
    }
}

fn pow<T: Scalar>(base: T, t: u64) -> T {
    let e = i32::try_from(t).expect("step count fits in i32");
    base.powi(e)
}

/// p_t(x, x) = Σ_j |⟨e_x, h_j⟩|² λ_j^t, with λ_j read as an eigenvalue of P.
pub fn return_prob_spectral<T: Scalar>(dec: &SpectralDecomposition<T>, x: usize, t: u64) -> Result<T> {
    let mut acc = T::zero();
    for j in 0..dec.n() {
        acc += dec.mass(x, j) * pow(p_eigenvalue(dec.kind, dec.eigenvalues[j])?, t);
    }
    // Cancellation can leave a rounding-level negative where the value is 0.
    Ok(if acc < T::zero() { T::zero() } else { acc })
}

/// p_t(x, y) = w(y) Σ_j λ_j^t h_j(x) h_j(y).
pub fn transition_prob_spectral<T: Scalar>(dec: &SpectralDecomposition<T>, x: usize, y: usize, t: u64) -> Result<T> {
    let mut acc = T::zero();
    for j in 0..dec.n() {
        acc += dec.h(x, j) * dec.h(y, j) * pow(p_eigenvalue(dec.kind, dec.eigenvalues[j])?, t);
    }
    let p = acc * dec.weights[y];
    Ok(if p < T::zero() { T::zero() } else { p })
}

/// One step of the row recursion p_{s+1}(x, ·) = p_s(x, ·) P.
fn step_row<T: Scalar>(g: &WeightedGraph<T>, row: &[T], out: &mut [T]) {
    out.iter_mut().for_each(|v| *v = T::zero());
    for (z, &mass) in row.iter().enumerate() {
        if mass == T::zero() {
            continue;
        }
        let share = mass / g.weight(z);
        for &(y, w) in g.neighbors(z) {
            out[y] += share * w;
        }
    }
}

/// The distribution p_t(x, ·) by repeated multiplication.
pub fn transition_row<T: Scalar>(g: &WeightedGraph<T>, x: usize, t: u64) -> Vec<T> {
    let mut row = vec![T::zero(); g.n()];
    row[x] = T::one();
    let mut next = row.clone();
    for _ in 0..t {
        step_row(g, &row, &mut next);
        std::mem::swap(&mut row, &mut next);
    }
    row
}

/// (P^t)_{xx} by repeated multiplication.
pub fn return_prob_power<T: Scalar>(g: &WeightedGraph<T>, x: usize, t: u64) -> T {
    transition_row(g, x, t)[x]
}

/// g_t(x, y) = Σ_{s=0}^{t} p_s(x, y).
pub fn greens_function<T: Scalar>(g: &WeightedGraph<T>, x: usize, y: usize, t: u64) -> T {
    let mut row = vec![T::zero(); g.n()];
    row[x] = T::one();
    let mut next = row.clone();
    let mut acc = row[y];
    for _ in 0..t {
        step_row(g, &row, &mut next);
        std::mem::swap(&mut row, &mut next);
        acc += row[y];
    }
    acc
}

/// The column y ↦ g_t(y, x), via p_{s+1}(·, x) = P p_s(·, x).
pub fn greens_column<T: Scalar>(g: &WeightedGraph<T>, x: usize, t: u64) -> Vec<T> {
    let n = g.n();
    let mut col = vec![T::zero(); n];
    col[x] = T::one();
    let mut acc = col.clone();
    let mut next = col.clone();
    for _ in 0..t {
        for (y, v) in next.iter_mut().enumerate() {
            let s = g.neighbors(y).iter().fold(T::zero(), |a, &(z, w)| a + w * col[z]);
            *v = s / g.weight(y);
        }
        std::mem::swap(&mut col, &mut next);
        for (a, &c) in acc.iter_mut().zip(&col) {
            *a += c;
        }
    }
    acc
}

/// Expected number of visits to x, counting time 0, before the walk from x enters `target`.
pub fn local_green<T: Scalar>(g: &WeightedGraph<T>, x: usize, target: &[usize]) -> Result<T> {
    g.check_vertex(x)?;
    if target.is_empty() {
        return Err(Error::EmptyTarget);
    }
    let n = g.n();
    let mut in_target = vec![false; n];
    for &a in target {
        g.check_vertex(a)?;
        in_target[a] = true;
    }
    if in_target[x] {
        return Err(Error::InvalidArgument(format!("start vertex {x} lies in the target set")));
    }
    let free: Vec<usize> = (0..n).filter(|&v| !in_target[v]).collect();
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in free.iter().enumerate() {
        pos[v] = i;
    }
    let m = free.len();
    let mut sys = DMatrix::<T>::identity(m, m);
    for (i, &v) in free.iter().enumerate() {
        for &(y, w) in g.neighbors(v) {
            if !in_target[y] {
                sys[(i, pos[y])] -= w / g.weight(v);
            }
        }
    }
    let mut rhs = DVector::zeros(m);
    rhs[pos[x]] = T::one();
    let sol = sys
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::SingularSolve("absorbing system".into()))?;
    Ok(sol[pos[x]])
}

/// E_x[τ_y] for every target y, from one solve per target. Column y holds E_·[τ_y].
pub fn hitting_times_by_target<T: Scalar>(g: &WeightedGraph<T>) -> Result<DMatrix<T>> {
    let n = g.n();
    let mut out = DMatrix::zeros(n, n);
    for y in 0..n {
        // h(y) = 0, h(x) = 1 + Σ_z P(x,z) h(z) for x ≠ y.
        let idx: Vec<usize> = (0..n).filter(|&v| v != y).collect();
        let pos = |v: usize| if v < y { v } else { v - 1 };
        let mut sys = DMatrix::<T>::identity(n - 1, n - 1);
        for &v in &idx {
            for &(z, w) in g.neighbors(v) {
                if z != y {
                    sys[(pos(v), pos(z))] -= w / g.weight(v);
                }
            }
        }
        let rhs = DVector::from_element(n - 1, T::one());
        let sol = sys
            .lu()
            .solve(&rhs)
            .ok_or_else(|| Error::SingularSolve("hitting system".into()))?;
        for &v in &idx {
            out[(v, y)] = sol[pos(v)];
        }
    }
    Ok(out)
}

/// Matrix of E_x[τ_y] from the fundamental matrix Z = (I − P + 1πᵀ)⁻¹:
/// E_x[τ_y] = (Z_yy − Z_xy)/π(y).
pub fn hitting_times<T: Scalar>(g: &WeightedGraph<T>) -> Result<DMatrix<T>> {
    let n = g.n();
    let pi = g.stationary();
    let mut m = DMatrix::<T>::identity(n, n);
    for x in 0..n {
        for &(y, w) in g.neighbors(x) {
            m[(x, y)] -= w / g.weight(x);
        }
        for y in 0..n {
            m[(x, y)] += pi[y];
        }
    }
    let z = m
        .try_inverse()
        .ok_or_else(|| Error::SingularSolve("fundamental matrix".into()))?;
    Ok(DMatrix::from_fn(n, n, |x, y| {
        if x == y {
            T::zero()
        } else {
            (z[(y, y)] - z[(x, y)]) / pi[y]
        }
    }))
}

/// max_{x,y} (E_x τ_y + E_y τ_x).
pub fn commute_diameter<T: Scalar>(g: &WeightedGraph<T>) -> Result<T> {
    let h = hitting_times(g)?;
    Ok(max_commute(&h))
}

fn max_commute<T: Scalar>(h: &DMatrix<T>) -> T {
    let n = h.nrows();
    let mut best = T::zero();
    for x in 0..n {
        for y in x + 1..n {
            let c = h[(x, y)] + h[(y, x)];
            if c > best {
                best = c;
            }
        }
    }
    best
}

/// Result of scanning t = 1, 2, ... for the worst relative deviation of P^t from π.
#[derive(Clone, Debug)]
pub struct MixingScan<T: Scalar> {
    /// deviations[t − 1] = max_{x,y} |p_t(x,y) − π(y)|/π(y).
    pub deviations: Vec<T>,
    /// First t with deviation ≤ threshold, if reached within the scan.
    pub t_unif: Option<u64>,
    /// The deviation sequence never increased along the scan.
    pub monotone: bool,
}

/// Propagate P^{t+1} = P^t P and record max_{x,y} |p_t(x,y) − π(y)|/π(y).
///
/// Stops at the first t where the deviation is at most `threshold`, or after
/// `t_max` steps. With `stop_at_threshold = false` it always runs `t_max` steps.
pub fn mixing_scan<T: Scalar>(g: &WeightedGraph<T>, threshold: f64, t_max: u64, stop_at_threshold: bool) -> MixingScan<T> {
    let n = g.n();
    let pi = g.stationary();
    let mut rows = vec![T::zero(); n * n];
    for x in 0..n {
        rows[x * n + x] = T::one();
    }
    let mut next = rows.clone();
    let limit = T::of(threshold + THRESHOLD_SLACK);
    let mut deviations = Vec::new();
    let mut t_unif = None;
    for t in 1..=t_max {
        for x in 0..n {
            step_row(g, &rows[x * n..(x + 1) * n], &mut next[x * n..(x + 1) * n]);
        }
        std::mem::swap(&mut rows, &mut next);
        let mut dev = T::zero();
        for x in 0..n {
            for y in 0..n {
                let d = ((rows[x * n + y] - pi[y]) / pi[y]).abs();
                if d > dev {
                    dev = d;
                }
            }
        }
        deviations.push(dev);
        if t_unif.is_none() && dev <= limit {
            t_unif = Some(t);
            if stop_at_threshold {
                break;
            }
        }
    }
    let slack = T::of(1e-12);
    let monotone = deviations.windows(2).all(|w| w[1] <= w[0] + slack);
    MixingScan { deviations, t_unif, monotone }
}

/// Relaxation and mixing times of the simple random walk.
#[derive(Clone, Debug)]
pub struct ChainTimes<T: Scalar> {
    /// Λ = max(|λ_1|, |λ_{n−1}|) over the nontrivial eigenvalues of P.
    pub lambda_star: T,
    pub t_rel: T,
    /// ⌈t_rel⌉ − 1.
    pub t_prime: u64,
    pub t_unif: u64,
    pub deviations: Vec<T>,
    pub deviation_monotone: bool,
    pub hitting: DMatrix<T>,
}

impl<T: Scalar> ChainTimes<T> {
    pub fn commute_diameter(&self) -> T {
        max_commute(&self.hitting)
    }
}

/// Λ and t_rel from the spectrum of P; fails on bipartite graphs where Λ = 1.
pub fn relaxation_time<T: Scalar>(dec: &SpectralDecomposition<T>) -> Result<(T, T)> {
    if dec.kind != OperatorKind::TransitionP {
        return Err(Error::WrongOperatorKind(format!("relaxation time needs P, got {}", dec.kind)));
    }
    let n = dec.n();
    let lo = dec.eigenvalues[0].abs();
    let hi = dec.eigenvalues[n - 2].abs();
    let lambda = if lo > hi { lo } else { hi };
    if lambda >= T::one() - T::tol(1e-9) {
        return Err(Error::BipartiteChain);
    }
    Ok((lambda, T::one() / (T::one() - lambda)))
}

/// Λ, t_rel, t′, t_unif (threshold 1/4) and the hitting-time matrix.
pub fn chain_times<T: Scalar>(g: &WeightedGraph<T>, dec_p: &SpectralDecomposition<T>) -> Result<ChainTimes<T>> {
    chain_times_with_threshold(g, dec_p, UNIFORM_MIXING_THRESHOLD)
}

pub fn chain_times_with_threshold<T: Scalar>(
    g: &WeightedGraph<T>,
    dec_p: &SpectralDecomposition<T>,
    threshold: f64,
) -> Result<ChainTimes<T>> {
    let (lambda_star, t_rel) = relaxation_time(dec_p)?;
    let t_prime = (t_rel.f64() - 1e-9).ceil().max(1.0) as u64 - 1;
    let n = g.n() as u64;
    let scan = mixing_scan(g, threshold, 8 * n * n * n + 1, true);
    let t_unif = scan.t_unif.ok_or_else(|| {
        Error::PreconditionViolated(format!("deviation stayed above {threshold} for {} steps", scan.deviations.len()))
    })?;
    Ok(ChainTimes {
        lambda_star,
        t_rel,
        t_prime,
        t_unif,
        deviations: scan.deviations,
        deviation_monotone: scan.monotone,
        hitting: hitting_times(g)?,
    })
}
