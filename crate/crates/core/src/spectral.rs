//! Eigendecompositions in the operator's own inner product, vertex spectral
//! measures, spectral embeddings and the counting identity.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::operators::{symmetric_form, GraphOperator, InnerProduct, OperatorKind};
use crate::scalar::{Scalar, ATOM_MERGE_TOL, MASS_CLAMP};

/// Eigenvalues in ascending order with an eigenbasis orthonormal in the
/// operator's inner product.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition<T: Scalar> {
    pub kind: OperatorKind,
    pub inner_product: InnerProduct,
    pub eigenvalues: Vec<T>,
    /// Column j is h_j.
    pub basis: DMatrix<T>,
    /// Column j is the standard-orthonormal eigenvector of the symmetric form;
    /// equals W^{1/2} h_j for weighted operators and h_j otherwise.
    pub unit_basis: DMatrix<T>,
    pub weights: Vec<T>,
    pub volume: T,
}

pub fn decompose<T: Scalar>(op: &GraphOperator<T>) -> Result<SpectralDecomposition<T>> {
    let s = symmetric_form(op);
    let n = s.nrows();
    let eig = SymmetricEigen::try_new(s, T::default_epsilon(), 10_000 * n.max(1)).ok_or(Error::EigensolveFailure)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).expect("finite eigenvalues"));
    let eigenvalues: Vec<T> = order.iter().map(|&j| eig.eigenvalues[j]).collect();
    let unit_basis = DMatrix::from_fn(n, n, |x, j| eig.eigenvectors[(x, order[j])]);
    let basis = match op.inner_product {
        InnerProduct::Weighted => DMatrix::from_fn(n, n, |x, j| unit_basis[(x, j)] / op.weights[x].sqrt()),
        InnerProduct::Standard => unit_basis.clone(),
    };
    let volume = op.weights.iter().fold(T::zero(), |a, &b| a + b);
    Ok(SpectralDecomposition {
        kind: op.kind,
        inner_product: op.inner_product,
        eigenvalues,
        basis,
        unit_basis,
        weights: op.weights.clone(),
        volume,
    })
}

impl<T: Scalar> SpectralDecomposition<T> {
    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn lambda_min(&self) -> T {
        self.eigenvalues[0]
    }

    pub fn lambda_max(&self) -> T {
        self.eigenvalues[self.n() - 1]
    }

    /// Eigenvalues closer than this are merged into one atom.
    pub fn merge_tol(&self) -> T {
        let span = self.lambda_max() - self.lambda_min();
        let span = if span > T::zero() { span } else { T::one() };
        T::of(ATOM_MERGE_TOL) * span
    }

    /// Mass that the measure at x puts on eigenvalue j: |⟨e_x, h_j⟩|².
    pub fn mass(&self, x: usize, j: usize) -> T {
        let u = self.unit_basis[(x, j)];
        u * u
    }

    /// h_j(x).
    pub fn h(&self, x: usize, j: usize) -> T {
        self.basis[(x, j)]
    }

    pub fn pi(&self, x: usize) -> T {
        self.weights[x] / self.volume
    }

    /// Number of eigenvalues λ_j ≤ δ, with the atom tolerance.
    pub fn count_at_most(&self, delta: T) -> usize {
        let cut = delta + self.merge_tol();
        self.eigenvalues.iter().filter(|&&l| l <= cut).count()
    }

    /// Vertex spectral measure μ_x (μ_x^Q, μ_x^Θ, ... by operator kind).
    pub fn vertex_measure(&self, x: usize) -> StepMeasure<T> {
        let pairs = (0..self.n()).map(|j| (self.eigenvalues[j], self.mass(x, j)));
        StepMeasure::from_points(pairs, self.merge_tol())
    }

    /// μ_x* = μ_x with the stationary mass π(x) removed from the atom at 0.
    pub fn reduced_measure(&self, x: usize) -> Result<StepMeasure<T>> {
        if self.kind != OperatorKind::LaplacianL {
            return Err(Error::WrongOperatorKind(format!("reduced measure needs L, got {}", self.kind)));
        }
        let mut m = self.vertex_measure(x);
        let pi = self.pi(x);
        if let Some(atom) = m.atoms.iter_mut().find(|a| a.0.abs() <= m.atom_tol) {
            atom.1 -= pi;
        }
        m.clamp_and_total();
        Ok(m)
    }

    /// (Σ_x μ_x(δ), #{j : λ_j ≤ δ}).
    pub fn counting_identity(&self, delta: T) -> (T, usize) {
        let count = self.count_at_most(delta);
        let sum = (0..self.n()).fold(T::zero(), |acc, x| acc + self.vertex_measure(x).cdf(delta));
        (sum, count)
    }

    /// Atomwise average (1/n) Σ_x μ_x.
    pub fn average_measure(&self) -> StepMeasure<T> {
        let n = self.n();
        let inv = T::one() / T::of_usize(n);
        let pairs = (0..n).flat_map(|j| (0..n).map(move |x| (j, x))).map(|(j, x)| (self.eigenvalues[j], self.mass(x, j) * inv));
        StepMeasure::from_points(pairs, self.merge_tol())
    }

    /// Indices j with λ_j ≤ δ.
    pub fn indices_at_most(&self, delta: T) -> Vec<usize> {
        let cut = delta + self.merge_tol();
        (0..self.n()).filter(|&j| self.eigenvalues[j] <= cut).collect()
    }

    /// Spectral embedding F_x = I(δ) 1_x / w(x) (weighted) or I(δ) 1_x (standard).
    pub fn embedding(&self, delta: T, x: usize) -> EmbeddingVector<T> {
        let n = self.n();
        let idx = self.indices_at_most(delta);
        let coefficients: Vec<T> = idx.iter().map(|&j| self.coefficient(x, j)).collect();
        let mut coords = vec![T::zero(); n];
        for (&j, &c) in idx.iter().zip(&coefficients) {
            for (y, v) in coords.iter_mut().enumerate() {
                *v += c * self.basis[(y, j)];
            }
        }
        EmbeddingVector {
            x,
            delta,
            coords,
            coefficients,
            measure: self.vertex_measure(x).cdf(delta),
            weight: match self.inner_product {
                InnerProduct::Weighted => self.weights[x],
                InnerProduct::Standard => T::one(),
            },
            weights: match self.inner_product {
                InnerProduct::Weighted => Some(self.weights.clone()),
                InnerProduct::Standard => None,
            },
        }
    }

    /// Coordinate of F_x along h_j; the basis is orthonormal, so norms of
    /// embedding combinations are Euclidean norms of these coefficients.
    pub fn coefficient(&self, x: usize, j: usize) -> T {
        self.basis[(x, j)]
    }
}

/// A vertex's spectral embedding at threshold δ.
#[derive(Clone, Debug)]
pub struct EmbeddingVector<T: Scalar> {
    pub x: usize,
    pub delta: T,
    /// F_x as a vertex function.
    pub coords: Vec<T>,
    /// Coordinates of F_x along each h_j with λ_j ≤ δ.
    pub coefficients: Vec<T>,
    /// μ_x(δ) for the decomposition's operator.
    pub measure: T,
    /// w(x) for weighted operators, 1 otherwise.
    pub weight: T,
    weights: Option<Vec<T>>,
}

impl<T: Scalar> EmbeddingVector<T> {
    /// ‖F_x‖², computed from the vertex function in the operator's inner product.
    pub fn norm_sq(&self) -> T {
        match &self.weights {
            Some(w) => crate::operators::weighted_inner(w, &self.coords, &self.coords),
            None => self.coords.iter().fold(T::zero(), |a, &c| a + c * c),
        }
    }

    /// F_x(x).
    pub fn self_value(&self) -> T {
        self.coords[self.x]
    }

    /// f = F_x / ‖F_x‖, with f(x) = √(μ_x(δ)/w(x)).
    pub fn normalized(&self) -> Result<Vec<T>> {
        let norm = self.norm_sq().sqrt();
        if self.measure <= T::of(MASS_CLAMP) || norm <= T::zero() {
            return Err(Error::ZeroMeasure);
        }
        Ok(self.coords.iter().map(|&c| c / norm).collect())
    }
}

/// Finite atomic measure on the real line, atoms sorted by location.
#[derive(Clone, Debug, PartialEq)]
pub struct StepMeasure<T: Scalar> {
    pub atoms: Vec<(T, T)>,
    pub total_mass: T,
    /// Queries within this distance above an atom include it.
    pub atom_tol: T,
}

impl<T: Scalar> StepMeasure<T> {
    /// Group (location, mass) points whose sorted locations lie within `tol`
    /// of the previous point in the group.
    pub fn from_points(points: impl IntoIterator<Item = (T, T)>, tol: T) -> Self {
        let mut pts: Vec<(T, T)> = points.into_iter().collect();
        pts.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite locations"));
        let mut atoms: Vec<(T, T)> = Vec::new();
        let mut group: Vec<(T, T)> = Vec::new();
        let flush = |group: &mut Vec<(T, T)>, atoms: &mut Vec<(T, T)>| {
            if group.is_empty() {
                return;
            }
            let k = T::of_usize(group.len());
            let loc = group.iter().fold(T::zero(), |a, p| a + p.0) / k;
            let mass = group.iter().fold(T::zero(), |a, p| a + p.1);
            atoms.push((loc, mass));
            group.clear();
        };
        for p in pts {
            if let Some(last) = group.last() {
                if p.0 - last.0 > tol {
                    flush(&mut group, &mut atoms);
                }
            }
            group.push(p);
        }
        flush(&mut group, &mut atoms);
        let mut m = StepMeasure { atoms, total_mass: T::zero(), atom_tol: tol };
        m.clamp_and_total();
        m
    }

    fn clamp_and_total(&mut self) {
        let clamp = T::of(MASS_CLAMP);
        for a in &mut self.atoms {
            if a.1 < T::zero() && a.1 >= -clamp {
                a.1 = T::zero();
            }
        }
        self.total_mass = self.atoms.iter().fold(T::zero(), |acc, a| acc + a.1);
    }

    /// μ([.., δ]), closed on the right; an atom within `atom_tol` above δ is included.
    pub fn cdf(&self, delta: T) -> T {
        let cut = delta + self.atom_tol;
        self.atoms
            .iter()
            .take_while(|a| a.0 <= cut)
            .fold(T::zero(), |acc, a| acc + a.1)
    }

    /// Mass of the atom at λ, or zero.
    pub fn mass_at(&self, lambda: T) -> T {
        self.atoms
            .iter()
            .find(|a| (a.0 - lambda).abs() <= self.atom_tol)
            .map_or(T::zero(), |a| a.1)
    }

    pub fn locations(&self) -> Vec<T> {
        self.atoms.iter().map(|a| a.0).collect()
    }

    /// ∫ g dμ.
    pub fn integrate(&self, g: impl Fn(T) -> T) -> T {
        self.atoms.iter().fold(T::zero(), |acc, &(l, m)| acc + g(l) * m)
    }

    /// `location,mass` rows with 17 significant digits.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("location,mass\n");
        for &(l, m) in &self.atoms {
            out.push_str(&format!("{:.16e},{:.16e}\n", l.f64(), m.f64()));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_core::{generate, GraphSpec};
    use crate::operators::build_operator;
    use crate::Graph;

    fn dec(g: &Graph, kind: OperatorKind) -> SpectralDecomposition<f64> {
        decompose(&build_operator(g, kind)).unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-10
    }

    #[test]
    fn triangle_spectrum_and_measures() {
        let g = generate(&GraphSpec::Complete { n: 3 }, 0).unwrap();
        let p = dec(&g, OperatorKind::TransitionP);
        let ev = &p.eigenvalues;
        assert!(close(ev[0], -0.5) && close(ev[1], -0.5) && close(ev[2], 1.0));
        let q = dec(&g, OperatorKind::SignlessQ);
        let m = q.vertex_measure(0);
        assert_eq!(m.atoms.len(), 2);
        assert!(close(m.atoms[0].0, 0.5) && close(m.atoms[0].1, 2.0 / 3.0));
        assert!(close(m.atoms[1].0, 2.0) && close(m.atoms[1].1, 1.0 / 3.0));
        let (sum, count) = q.counting_identity(1.0);
        assert!(close(sum, 2.0) && count == 2);
        assert_eq!(q.counting_identity(0.1), (0.0, 0));
        let (sum, count) = q.counting_identity(2.0);
        assert!(close(sum, 3.0) && count == 3);
        let e = q.embedding(1.0, 0);
        assert!(close(e.norm_sq(), 1.0 / 3.0));
        assert!(close(e.self_value(), 1.0 / 3.0));
        let f = e.normalized().unwrap();
        assert!(close(f[0], (1.0f64 / 3.0).sqrt()));
        let avg = q.average_measure();
        assert!(close(avg.cdf(0.5), 2.0 / 3.0) && close(avg.total_mass, 1.0));
    }

    #[test]
    fn reduced_measure() {
        let g = generate(&GraphSpec::Complete { n: 3 }, 0).unwrap();
        let l = dec(&g, OperatorKind::LaplacianL);
        let r = l.reduced_measure(1).unwrap();
        assert!(close(r.cdf(2.0), 2.0 / 3.0));
        assert!(r.cdf(0.0).abs() < 1e-12);
        let q = dec(&g, OperatorKind::SignlessQ);
        assert!(matches!(q.reduced_measure(0), Err(Error::WrongOperatorKind(_))));
        let c5 = generate(&GraphSpec::Cycle { n: 5 }, 0).unwrap();
        let l = dec(&c5, OperatorKind::LaplacianL);
        assert!(close(l.reduced_measure(2).unwrap().cdf(2.0), 0.8));
        assert!(close(l.vertex_measure(2).cdf(0.0), 0.2));
    }

    #[test]
    fn known_spectra() {
        let c4 = generate(&GraphSpec::Cycle { n: 4 }, 0).unwrap();
        let ev = dec(&c4, OperatorKind::TransitionP).eigenvalues;
        for (a, b) in ev.iter().zip([-1.0, 0.0, 0.0, 1.0]) {
            assert!(close(*a, b));
        }
        let pet = generate(&GraphSpec::Petersen, 0).unwrap();
        let ev = dec(&pet, OperatorKind::TransitionP).eigenvalues;
        let expect: Vec<f64> = [vec![-2.0 / 3.0; 4], vec![1.0 / 3.0; 5], vec![1.0]].concat();
        for (a, b) in ev.iter().zip(expect) {
            assert!(close(*a, b));
        }
    }

    #[test]
    fn full_embedding_is_scaled_indicator() {
        let g = generate(&GraphSpec::Lollipop { m: 4, k: 2 }, 0).unwrap();
        let q = dec(&g, OperatorKind::SignlessQ);
        let e = q.embedding(2.0, 4);
        for (y, &v) in e.coords.iter().enumerate() {
            let want = if y == 4 { 1.0 / g.weight(4) } else { 0.0 };
            assert!(close(v, want), "{y}: {v}");
        }
    }

    #[test]
    fn bipartite_kernel_embedding_is_nonzero() {
        let c4 = generate(&GraphSpec::Cycle { n: 4 }, 0).unwrap();
        let q = dec(&c4, OperatorKind::SignlessQ);
        let e = q.embedding(0.0, 0);
        assert!(e.norm_sq() > 0.1);
        assert!(close(e.measure, 0.25));
    }

    #[test]
    fn zero_measure_cannot_normalize() {
        let g = generate(&GraphSpec::Complete { n: 3 }, 0).unwrap();
        let q = dec(&g, OperatorKind::SignlessQ);
        assert!(matches!(q.embedding(0.1, 0).normalized(), Err(Error::ZeroMeasure)));
    }

    #[test]
    fn measure_csv() {
        let m = StepMeasure::from_points([(0.5, 0.25), (0.5, 0.25), (2.0, 0.5), (2.0 + 1e-12, 0.0)], 1e-8);
        assert_eq!(m.atoms.len(), 2);
        let csv = m.to_csv_string();
        assert!(csv.starts_with("location,mass\n5.0000000000000000e-1,5.0000000000000000e-1\n"), "{csv}");
    }

    #[test]
    fn f32_decomposition() {
        let g: crate::WeightedGraph<f32> = generate(&GraphSpec::Petersen, 0).unwrap().cast();
        let p = decompose(&build_operator(&g, OperatorKind::TransitionP)).unwrap();
        assert!((p.lambda_max() - 1.0).abs() < 1e-5);
        assert!((p.lambda_min() + 2.0 / 3.0).abs() < 1e-5);
    }
}
