//! Dense graph operators P, L = I − P, Q = I + P, Θ = W + A and A.

use std::fmt;

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph_core::WeightedGraph;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum OperatorKind {
    TransitionP,
    LaplacianL,
    SignlessQ,
    CombinatorialTheta,
    Adjacency,
}

impl OperatorKind {
    pub fn inner_product(self) -> InnerProduct {
        match self {
            OperatorKind::TransitionP | OperatorKind::LaplacianL | OperatorKind::SignlessQ => InnerProduct::Weighted,
            OperatorKind::CombinatorialTheta | OperatorKind::Adjacency => InnerProduct::Standard,
        }
    }

    pub fn short_name(self) -> &'static str {
        match self {
            OperatorKind::TransitionP => "P",
            OperatorKind::LaplacianL => "L",
            OperatorKind::SignlessQ => "Q",
            OperatorKind::CombinatorialTheta => "Theta",
            OperatorKind::Adjacency => "A",
        }
    }
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

/// Which inner product makes the operator self-adjoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum InnerProduct {
    /// ⟨f, g⟩_w = Σ_x w(x) f(x) g(x)
    Weighted,
    Standard,
}

#[derive(Clone, Debug)]
pub struct GraphOperator<T: Scalar> {
    pub kind: OperatorKind,
    pub matrix: DMatrix<T>,
    pub inner_product: InnerProduct,
    /// Vertex weights w(x), carried along for the weighted inner product.
    pub weights: Vec<T>,
}

pub fn build_operator<T: Scalar>(g: &WeightedGraph<T>, kind: OperatorKind) -> GraphOperator<T> {
    let n = g.n();
    let mut m = DMatrix::<T>::zeros(n, n);
    match kind {
        OperatorKind::TransitionP | OperatorKind::LaplacianL | OperatorKind::SignlessQ => {
            let sign = if kind == OperatorKind::LaplacianL { -T::one() } else { T::one() };
            for x in 0..n {
                let wx = g.weight(x);
                for &(y, w) in g.neighbors(x) {
                    m[(x, y)] = sign * w / wx;
                }
            }
            if kind != OperatorKind::TransitionP {
                for x in 0..n {
                    m[(x, x)] = T::one();
                }
            }
        }
        OperatorKind::CombinatorialTheta | OperatorKind::Adjacency => {
            m = g.adjacency_matrix();
            if kind == OperatorKind::CombinatorialTheta {
                for x in 0..n {
                    m[(x, x)] = g.weight(x);
                }
            }
        }
    }
    GraphOperator {
        kind,
        matrix: m,
        inner_product: kind.inner_product(),
        weights: g.weights().to_vec(),
    }
}

/// Σ_{(v,u)∈E} w(v,u) |f(v) + f(u)|², which equals ⟨Qf, f⟩_w.
pub fn q_form<T: Scalar>(g: &WeightedGraph<T>, f: &[T]) -> T {
    assert_eq!(f.len(), g.n(), "function length must equal vertex count");
    g.edges().iter().fold(T::zero(), |acc, &(u, v, w)| {
        let s = f[u] + f[v];
        acc + w * s * s
    })
}

/// The same edge sum read against Θ in the standard inner product: ⟨Θf, f⟩.
pub fn theta_form<T: Scalar>(g: &WeightedGraph<T>, f: &[T]) -> T {
    q_form(g, f)
}

/// ⟨f, h⟩_w.
pub fn weighted_inner<T: Scalar>(weights: &[T], f: &[T], h: &[T]) -> T {
    weights
        .iter()
        .zip(f.iter().zip(h))
        .fold(T::zero(), |acc, (&w, (&a, &b))| acc + w * a * b)
}

impl<T: Scalar> GraphOperator<T> {
    /// M f as a plain vector.
    pub fn apply(&self, f: &[T]) -> Vec<T> {
        let n = f.len();
        (0..n)
            .map(|x| (0..n).fold(T::zero(), |acc, y| acc + self.matrix[(x, y)] * f[y]))
            .collect()
    }

    /// ⟨Mf, f⟩ in the operator's own inner product.
    pub fn quadratic(&self, f: &[T]) -> T {
        let mf = self.apply(f);
        match self.inner_product {
            InnerProduct::Weighted => weighted_inner(&self.weights, &mf, f),
            InnerProduct::Standard => mf.iter().zip(f).fold(T::zero(), |acc, (&a, &b)| acc + a * b),
        }
    }

    /// ⟨f, h⟩ in the operator's own inner product.
    pub fn inner(&self, f: &[T], h: &[T]) -> T {
        match self.inner_product {
            InnerProduct::Weighted => weighted_inner(&self.weights, f, h),
            InnerProduct::Standard => f.iter().zip(h).fold(T::zero(), |acc, (&a, &b)| acc + a * b),
        }
    }
}

/// S = W^{1/2} M W^{−1/2}, symmetric and similar to a w-self-adjoint M.
pub fn symmetrize<T: Scalar>(op: &GraphOperator<T>) -> Result<DMatrix<T>> {
    if op.inner_product != InnerProduct::Weighted {
        return Err(Error::WrongOperatorKind(format!(
            "{} is self-adjoint in the standard inner product already",
            op.kind
        )));
    }
    let root: Vec<T> = op.weights.iter().map(|w| w.sqrt()).collect();
    let n = op.matrix.nrows();
    let s = DMatrix::from_fn(n, n, |x, y| root[x] * op.matrix[(x, y)] / root[y]);
    let half = T::of(0.5);
    Ok(DMatrix::from_fn(n, n, |x, y| half * (s[(x, y)] + s[(y, x)])))
}

/// The matrix handed to the symmetric eigensolver for this operator.
pub fn symmetric_form<T: Scalar>(op: &GraphOperator<T>) -> DMatrix<T> {
    match op.inner_product {
        InnerProduct::Weighted => symmetrize(op).expect("weighted operator"),
        InnerProduct::Standard => op.matrix.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_core::{generate, GraphSpec};
    use crate::Graph;

    fn k3() -> Graph {
        generate(&GraphSpec::Complete { n: 3 }, 0).unwrap()
    }

    #[test]
    fn triangle_matrices() {
        let g = k3();
        let p = build_operator(&g, OperatorKind::TransitionP).matrix;
        let q = build_operator(&g, OperatorKind::SignlessQ).matrix;
        let t = build_operator(&g, OperatorKind::CombinatorialTheta).matrix;
        for x in 0..3 {
            for y in 0..3 {
                let off = x != y;
                assert_eq!(p[(x, y)], if off { 0.5 } else { 0.0 });
                assert_eq!(q[(x, y)], if off { 0.5 } else { 1.0 });
                assert_eq!(t[(x, y)], if off { 1.0 } else { 2.0 });
            }
        }
    }

    #[test]
    fn forms() {
        let g = k3();
        assert_eq!(q_form(&g, &[0.0; 3]), 0.0);
        assert_eq!(q_form(&g, &[1.0; 3]), 12.0);
        assert_eq!(theta_form(&g, &[1.0, 0.0, 0.0]), 2.0);
        let c4 = generate(&GraphSpec::Cycle { n: 4 }, 0).unwrap();
        assert_eq!(q_form(&c4, &[1.0, -1.0, 1.0, -1.0]), 0.0);
        let q = build_operator(&g, OperatorKind::SignlessQ);
        assert!((q.quadratic(&[1.0, 1.0, 1.0]) - 12.0).abs() < 1e-12);
    }

    #[test]
    fn symmetrize_rejects_standard_operators() {
        let op = build_operator(&k3(), OperatorKind::CombinatorialTheta);
        assert!(matches!(symmetrize(&op), Err(Error::WrongOperatorKind(_))));
    }

    #[test]
    fn regular_symmetrization_is_identity_map() {
        let g = generate(&GraphSpec::Petersen, 0).unwrap();
        let op = build_operator(&g, OperatorKind::TransitionP);
        let s = symmetrize(&op).unwrap();
        assert!((s - &op.matrix).amax() < 1e-15);
    }
}
