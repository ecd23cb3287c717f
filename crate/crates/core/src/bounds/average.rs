use super::{require, return_prob, BoundCheck, Context, Grids, Relation};
use crate::energy::set_selection;
use crate::error::Result;
use crate::operators::OperatorKind;
use crate::{Decomposition, Graph};

fn average_class(g: &Graph) -> Result<()> {
    require(g.is_unweighted(), "graph must be unweighted")?;
    require(!g.is_bipartite(), "graph must be non-bipartite")
}

/// Average-measure and average-return bounds:
/// μ^Q(δ) < (4000δ)^{1/3}; 0 ≤ (Σ_x p_t(x,x) − 1)/n ≤ 30/t^{1/3} for even t and
/// |Σ_x p_t(x,x) − 1|/n ≤ 15/t^{1/3} for odd t; and (1/n)Σ_{i<n}|λ_i^P|^t
/// against 30/t^{1/3} (even t) and 30/(t²−1)^{1/6} (odd t ≥ 3).
pub fn check_average(g: &Graph, dec_q: &Decomposition, dec_p: &Decomposition, grids: &Grids) -> Result<Vec<BoundCheck>> {
    require(dec_q.kind == OperatorKind::SignlessQ, "expected a decomposition of Q")?;
    require(dec_p.kind == OperatorKind::TransitionP, "expected a decomposition of P")?;
    average_class(g)?;
    let n = g.n();
    let nf = n as f64;
    let mut out = Vec::new();

    let avg = dec_q.average_measure();
    for d in grids.deltas(dec_q, 2.0).into_iter().filter(|&d| d > 0.0 && d < 2.0) {
        out.push(BoundCheck::new(
            "average_measure",
            "mu^Q(delta) < (4000 delta)^(1/3)",
            avg.cdf(d),
            (4000.0 * d).cbrt(),
            Relation::Lt,
            Context::default().delta(d),
        ));
    }

    // λ_n^P = 1 is the trivial eigenvalue; the rest are the nontrivial ones.
    let nontrivial = &dec_p.eigenvalues[..n - 1];
    for t in grids.times() {
        let tf = t as f64;
        let trace: f64 = (0..n).map(|x| return_prob(dec_p, x, t)).sum();
        let avg_gap = (trace - 1.0) / nf;
        let ctx = Context::default().t(t);
        let power_sum = nontrivial.iter().map(|l| l.abs().powi(t as i32)).sum::<f64>() / nf;
        if t % 2 == 0 {
            out.push(BoundCheck::new(
                "average_return_even_lower",
                "(sum_x p_t(x,x) - 1)/n >= 0, t even",
                avg_gap,
                0.0,
                Relation::Ge,
                ctx.clone(),
            ));
            out.push(BoundCheck::new(
                "average_return_even",
                "(sum_x p_t(x,x) - 1)/n <= 30/t^(1/3), t even",
                avg_gap,
                30.0 / tf.cbrt(),
                Relation::Le,
                ctx.clone(),
            ));
            out.push(BoundCheck::new(
                "eigenvalue_power_even",
                "(1/n) sum_{i<n} |lambda_i^P|^t <= 30/t^(1/3), t even",
                power_sum,
                30.0 / tf.cbrt(),
                Relation::Le,
                ctx,
            ));
        } else {
            out.push(BoundCheck::new(
                "average_return_odd",
                "|sum_x p_t(x,x) - 1|/n <= 15/t^(1/3), t odd",
                avg_gap.abs(),
                15.0 / tf.cbrt(),
                Relation::Le,
                ctx.clone(),
            ));
            if t >= 3 {
                out.push(BoundCheck::new(
                    "eigenvalue_power_odd",
                    "(1/n) sum_{i<n} |lambda_i^P|^t <= 30/(t^2-1)^(1/6), t odd >= 3",
                    power_sum,
                    30.0 / (tf * tf - 1.0).powf(1.0 / 6.0),
                    Relation::Le,
                    ctx,
                ));
            }
        }
    }
    Ok(out)
}

/// Properties of the greedy set selection at δ ≥ λ_min^Q: region masses at
/// most 4/3, center masses at least μ^Q(δ)/3, all m centers found, pairwise
/// disjoint trees, and tree energies above μ^Q(δ)/(250|V(T)|²).
pub fn check_selection(g: &Graph, dec_q: &Decomposition, delta: f64) -> Result<Vec<BoundCheck>> {
    average_class(g)?;
    require(
        delta >= dec_q.lambda_min() - dec_q.merge_tol(),
        "delta must be at least the smallest eigenvalue of Q",
    )?;
    let sel = set_selection(g, dec_q, delta)?;
    let avg = sel.average_measure;
    let ctx = Context::default().delta(delta);
    let mut out = vec![
        BoundCheck::new(
            "selection_completed",
            "number of centers found >= m",
            sel.centers.len() as f64,
            sel.m as f64,
            Relation::Ge,
            ctx.clone(),
        ),
        BoundCheck::new(
            "selection_trees_disjoint",
            "sum_i |V(T(x_i))| <= |union_i V(T(x_i))|",
            sel.trees.iter().map(|t| t.vertices.len()).sum::<usize>() as f64,
            {
                let mut all: Vec<usize> = sel.trees.iter().flat_map(|t| t.vertices.iter().copied()).collect();
                all.sort_unstable();
                all.dedup();
                all.len() as f64
            },
            Relation::Le,
            ctx.clone(),
        ),
    ];
    for (i, &x) in sel.centers.iter().enumerate() {
        let c = ctx.clone().x(x).k(i + 1);
        out.push(BoundCheck::new(
            "selection_region_mass",
            "mu^Q_R(x_i)(delta) <= 4/3",
            sel.region_masses[i],
            4.0 / 3.0,
            Relation::Le,
            c.clone(),
        ));
        out.push(BoundCheck::new(
            "selection_center_mass",
            "mu^Q_x_i(delta) >= mu^Q(delta)/3",
            sel.center_masses[i],
            avg / 3.0,
            Relation::Ge,
            c.clone(),
        ));
        let size = sel.trees[i].vertices.len() as f64;
        out.push(BoundCheck::new(
            "selection_tree_energy",
            "E~(V(T(x_i))) > mu^Q(delta)/(250 |V(T(x_i))|^2)",
            sel.tree_energies[i],
            avg / (250.0 * size * size),
            Relation::Ge,
            c,
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_core::{generate, GraphSpec};
    use crate::operators::build_operator;
    use crate::spectral::decompose;

    fn decs(g: &Graph) -> (Decomposition, Decomposition) {
        let d = |k| decompose(&build_operator(g, k)).unwrap();
        (d(OperatorKind::SignlessQ), d(OperatorKind::TransitionP))
    }

    #[test]
    fn triangle_values() {
        let g = generate(&GraphSpec::Complete { n: 3 }, 0).unwrap();
        let (q, p) = decs(&g);
        let grids = Grids { delta: Some(vec![0.5]), t: Some(vec![2, 3]) };
        let cs = check_average(&g, &q, &p, &grids).unwrap();
        let c = cs.iter().find(|c| c.name == "average_measure").unwrap();
        assert!((c.lhs - 2.0 / 3.0).abs() < 1e-12 && (c.rhs - 2000f64.cbrt()).abs() < 1e-12);
        let c = cs.iter().find(|c| c.name == "average_return_even").unwrap();
        assert!((c.lhs - 1.0 / 6.0).abs() < 1e-12 && (c.rhs - 30.0 / 2f64.cbrt()).abs() < 1e-12);
        let c = cs.iter().find(|c| c.name == "eigenvalue_power_odd").unwrap();
        assert!((c.lhs - 2.0 / 3.0 / 8.0).abs() < 1e-12 && (c.rhs - 30.0 / 8f64.powf(1.0 / 6.0)).abs() < 1e-12);
        assert!(cs.iter().all(|c| c.holds));
    }

    #[test]
    fn selection_on_petersen() {
        let g = generate(&GraphSpec::Petersen, 0).unwrap();
        let (q, _) = decs(&g);
        for delta in [1.0 / 3.0, 4.0 / 3.0] {
            let cs = check_selection(&g, &q, delta).unwrap();
            assert!(cs.iter().all(|c| c.holds), "{:?}", cs.iter().find(|c| !c.holds));
        }
        assert!(check_selection(&g, &q, 0.1).is_err());
    }
}
