use nalgebra::DMatrix;

use super::WeightedGraph;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Inverse of the combinatorial Laplacian W − A grounded at the last vertex,
/// padded back to n×n with a zero row and column for the ground.
fn grounded_inverse<T: Scalar>(g: &WeightedGraph<T>) -> Result<DMatrix<T>> {
    let n = g.n();
    let m = n - 1;
    let mut lap = DMatrix::<T>::zeros(m, m);
    for x in 0..m {
        lap[(x, x)] = g.weight(x);
    }
    for &(u, v, w) in g.edges() {
        if u < m && v < m {
            lap[(u, v)] -= w;
            lap[(v, u)] -= w;
        }
    }
    let inv = lap
        .cholesky()
        .ok_or_else(|| Error::SingularSolve("grounded Laplacian is not positive definite".into()))?
        .inverse();
    let mut full = DMatrix::zeros(n, n);
    full.view_mut((0, 0), (m, m)).copy_from(&inv);
    Ok(full)
}

/// All-pairs effective resistances R(x, y) = G_xx + G_yy − 2 G_xy.
pub fn resistance_matrix<T: Scalar>(g: &WeightedGraph<T>) -> Result<DMatrix<T>> {
    let gi = grounded_inverse(g)?;
    let n = g.n();
    let two = T::of(2.0);
    Ok(DMatrix::from_fn(n, n, |x, y| {
        if x == y {
            T::zero()
        } else {
            gi[(x, x)] + gi[(y, y)] - two * gi[(x, y)]
        }
    }))
}

/// Effective resistance between x and y with edges as conductors of conductance w.
pub fn effective_resistance<T: Scalar>(g: &WeightedGraph<T>, x: usize, y: usize) -> Result<T> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    if x == y {
        return Ok(T::zero());
    }
    // Ground y and solve L v = 1_x on the rest; R = v(x).
    let n = g.n();
    let idx: Vec<usize> = (0..n).filter(|&v| v != y).collect();
    let pos = |v: usize| if v < y { v } else { v - 1 };
    let mut lap = DMatrix::<T>::zeros(n - 1, n - 1);
    for &v in &idx {
        lap[(pos(v), pos(v))] = g.weight(v);
    }
    for &(u, v, w) in g.edges() {
        if u != y && v != y {
            lap[(pos(u), pos(v))] -= w;
            lap[(pos(v), pos(u))] -= w;
        }
    }
    let mut rhs = nalgebra::DVector::zeros(n - 1);
    rhs[pos(x)] = T::one();
    let sol = lap
        .cholesky()
        .ok_or_else(|| Error::SingularSolve("grounded Laplacian is not positive definite".into()))?
        .solve(&rhs);
    Ok(sol[pos(x)])
}

/// rdiam(G) = max over pairs of the effective resistance.
pub fn resistance_diameter<T: Scalar>(g: &WeightedGraph<T>) -> Result<T> {
    let r = resistance_matrix(g)?;
    Ok(r.iter().copied().fold(T::zero(), |a, b| if b > a { b } else { a }))
}
