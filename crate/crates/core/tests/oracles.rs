//! Library results against closed forms and brute-force enumeration.

use std::f64::consts::PI;

use approx::assert_abs_diff_eq;
use spectra_core::graph_core::{effective_resistance, generate, line_graph};
use spectra_core::operators::build_operator;
use spectra_core::spectral::decompose;
use spectra_core::walks::{chain_times, jump_walk_return, monte_carlo_return, relaxation_time, return_prob_spectral};
use spectra_core::{Decomposition, Graph, GraphSpec, OperatorKind};

fn gen(spec: GraphSpec) -> Graph {
    generate(&spec, 0).unwrap()
}

fn spectrum(g: &Graph, kind: OperatorKind) -> Decomposition {
    decompose(&build_operator(g, kind)).unwrap()
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

fn assert_spectrum(got: &[f64], want: Vec<f64>) {
    let want = sorted(want);
    assert_eq!(got.len(), want.len());
    for (a, b) in got.iter().zip(&want) {
        assert_abs_diff_eq!(a, b, epsilon = 1e-10);
    }
}

#[test]
fn cycle_transition_spectrum_is_cosines() {
    for n in [5, 8, 13] {
        let p = spectrum(&gen(GraphSpec::Cycle { n }), OperatorKind::TransitionP);
        assert_spectrum(&p.eigenvalues, (0..n).map(|k| (2.0 * PI * k as f64 / n as f64).cos()).collect());
    }
}

#[test]
fn hypercube_spectrum_is_binomial() {
    let k = 4usize;
    let p = spectrum(&gen(GraphSpec::Hypercube { k }), OperatorKind::TransitionP);
    let mut want = Vec::new();
    for j in 0..=k {
        let mult = (0..j).fold(1usize, |acc, i| acc * (k - i) / (i + 1));
        want.extend(std::iter::repeat_n(1.0 - 2.0 * j as f64 / k as f64, mult));
    }
    assert_spectrum(&p.eigenvalues, want);
}

#[test]
fn petersen_adjacency_spectrum() {
    let a = spectrum(&gen(GraphSpec::Petersen), OperatorKind::Adjacency);
    let mut want = vec![3.0];
    want.extend([1.0; 5]);
    want.extend([-2.0; 4]);
    assert_spectrum(&a.eigenvalues, want);
}

#[test]
fn signless_and_combinatorial_on_complete_graph() {
    let n = 6;
    let g = gen(GraphSpec::Complete { n });
    // Q = I + P: 2 once, 1 − 1/(n−1) otherwise; Θ = (n−1)I + A: 2(n−1) once, n − 2 otherwise.
    let q = spectrum(&g, OperatorKind::SignlessQ);
    let mut want = vec![2.0];
    want.extend(vec![1.0 - 1.0 / (n - 1) as f64; n - 1]);
    assert_spectrum(&q.eigenvalues, want);
    let th = spectrum(&g, OperatorKind::CombinatorialTheta);
    let mut want = vec![2.0 * (n - 1) as f64];
    want.extend(vec![(n - 2) as f64; n - 1]);
    assert_spectrum(&th.eigenvalues, want);
}

#[test]
fn line_graph_of_cycle_is_cycle() {
    let l = line_graph(&gen(GraphSpec::Cycle { n: 7 })).unwrap();
    assert_eq!(l.n(), 7);
    assert_eq!(l.edge_count(), 7);
    assert!(l.is_regular() && l.max_degree() == 2);
}

#[test]
fn cycle_and_complete_returns() {
    let n = 9;
    let p = spectrum(&gen(GraphSpec::Cycle { n }), OperatorKind::TransitionP);
    for t in [0, 1, 2, 7, 30, 101] {
        let want: f64 = (0..n).map(|k| (2.0 * PI * k as f64 / n as f64).cos().powi(t as i32)).sum::<f64>() / n as f64;
        assert_abs_diff_eq!(return_prob_spectral(&p, 3, t).unwrap(), want, epsilon = 1e-12);
    }
    let n = 7;
    let p = spectrum(&gen(GraphSpec::Complete { n }), OperatorKind::TransitionP);
    for t in [1u64, 2, 5, 12] {
        let nf = n as f64;
        let want = 1.0 / nf + (nf - 1.0) / nf * (-1.0 / (nf - 1.0)).powi(t as i32);
        assert_abs_diff_eq!(return_prob_spectral(&p, 0, t).unwrap(), want, epsilon = 1e-12);
    }
}

#[test]
fn triangle_chain_times() {
    let g = gen(GraphSpec::Complete { n: 3 });
    let p = spectrum(&g, OperatorKind::TransitionP);
    let (lambda, t_rel) = relaxation_time(&p).unwrap();
    assert_abs_diff_eq!(lambda, 0.5, epsilon = 1e-12);
    assert_abs_diff_eq!(t_rel, 2.0, epsilon = 1e-12);
    // p_t(x,y)/π(y) − 1 = 2(−1/2)^t on the diagonal and −(−1/2)^t off it; the maximum drops below 1/4 at t = 3.
    let times = chain_times(&g, &p).unwrap();
    assert_eq!(times.t_unif, 3);
    // Hitting time between distinct vertices of K_n is n − 1.
    assert_abs_diff_eq!(times.hitting[(0, 1)], 2.0, epsilon = 1e-10);
}

#[test]
fn cycle_resistance_is_parallel_arcs() {
    let n = 10;
    let g = gen(GraphSpec::Cycle { n });
    for k in 1..n {
        let want = (k * (n - k)) as f64 / n as f64;
        assert_abs_diff_eq!(effective_resistance(&g, 0, k).unwrap(), want, epsilon = 1e-10);
    }
    let path = gen(GraphSpec::Path { n: 6 });
    assert_abs_diff_eq!(effective_resistance(&path, 0, 5).unwrap(), 5.0, epsilon = 1e-10);
}

/// Enumerate all 4^t step sequences of the {−2,−1,1,2} walk.
fn brute_force_jump(t: u32) -> f64 {
    let steps = [-2i64, -1, 1, 2];
    let total = 4u64.pow(t);
    let mut hits = 0u64;
    for code in 0..total {
        let mut c = code;
        let mut pos = 0i64;
        for _ in 0..t {
            pos += steps[(c % 4) as usize];
            c /= 4;
        }
        hits += u64::from(pos == 0);
    }
    hits as f64 / total as f64
}

#[test]
fn jump_walk_matches_enumeration() {
    for t in 0..=10 {
        assert_abs_diff_eq!(jump_walk_return(t as u64), brute_force_jump(t), epsilon = 1e-14);
    }
    assert_abs_diff_eq!(jump_walk_return(2), 0.25, epsilon = 1e-15);
}

#[test]
fn monte_carlo_brackets_exact_value() {
    let g = gen(GraphSpec::Cycle { n: 5 });
    let p = spectrum(&g, OperatorKind::TransitionP);
    let exact = return_prob_spectral(&p, 0, 4).unwrap();
    let est = monte_carlo_return(&g, 0, 4, 200_000, 11).unwrap();
    assert!((est.estimate - exact).abs() <= 4.0 * est.ci_half_width);
    let again = monte_carlo_return(&g, 0, 4, 200_000, 11).unwrap();
    assert_eq!(est.estimate, again.estimate);
}
