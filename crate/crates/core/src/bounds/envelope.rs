//! Nondecreasing right-continuous functions on [0, 2] and the integral
//! ∫_{(0,2]} (1 − λ)^t dφ(λ) that turns measure envelopes into return bounds.

use super::quadrature::integrate;
use crate::error::{Error, Result};
use crate::Measure;

const MONOTONE_SLACK: f64 = 1e-12;

/// Closed form of one piece.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Piece {
    Constant(f64),
    /// intercept + slope·λ
    Affine { intercept: f64, slope: f64 },
    /// offset + scale·λ^exponent, e.g. √λ, λ^{1/3} or λ^{D/(D+1)}.
    Power { offset: f64, scale: f64, exponent: f64 },
}

impl Piece {
    fn eval(&self, l: f64) -> f64 {
        match *self {
            Piece::Constant(c) => c,
            Piece::Affine { intercept, slope } => intercept + slope * l,
            Piece::Power { offset, scale, exponent } => offset + scale * l.max(0.0).powf(exponent),
        }
    }

    fn nondecreasing(&self) -> bool {
        match *self {
            Piece::Constant(_) => true,
            Piece::Affine { slope, .. } => slope >= 0.0,
            Piece::Power { scale, exponent, .. } => scale * exponent >= 0.0,
        }
    }
}

/// Pieces on [b_i, b_{i+1}) with b_0 = 0 and the last piece closed at 2.
#[derive(Clone, Debug, PartialEq)]
pub struct Envelope {
    breaks: Vec<f64>,
    pieces: Vec<Piece>,
}

impl Envelope {
    /// `breaks` are the left ends of the pieces, starting at 0 and strictly increasing below 2.
    pub fn new(breaks: Vec<f64>, pieces: Vec<Piece>) -> Result<Self> {
        let bad = |m: String| Err(Error::NonMonotoneEnvelope(m));
        if breaks.is_empty() || breaks.len() != pieces.len() {
            return bad("need one left breakpoint per piece".into());
        }
        if breaks[0] != 0.0 || breaks.windows(2).any(|w| w[1] <= w[0]) || *breaks.last().unwrap() >= 2.0 {
            return bad("breakpoints must start at 0 and increase strictly below 2".into());
        }
        if pieces.iter().any(|p| !p.nondecreasing()) {
            return bad("a piece decreases".into());
        }
        for i in 1..pieces.len() {
            let left = pieces[i - 1].eval(breaks[i]);
            let right = pieces[i].eval(breaks[i]);
            if right < left - MONOTONE_SLACK * left.abs().max(1.0) {
                return bad(format!("downward jump at {}", breaks[i]));
            }
        }
        Ok(Envelope { breaks, pieces })
    }

    /// A single piece on all of [0, 2].
    pub fn single(piece: Piece) -> Result<Self> {
        Envelope::new(vec![0.0], vec![piece])
    }

    /// The distribution function λ ↦ μ([0, λ]) of a measure supported in [0, 2].
    pub fn from_measure(m: &Measure) -> Result<Self> {
        let mut breaks = vec![0.0];
        let mut pieces = vec![Piece::Constant(m.cdf(0.0))];
        for &(loc, _) in &m.atoms {
            if loc > m.atom_tol && loc < 2.0 - m.atom_tol {
                breaks.push(loc);
                pieces.push(Piece::Constant(m.cdf(loc)));
            } else if loc >= 2.0 - m.atom_tol && loc <= 2.0 + m.atom_tol {
                // The atom at 2 only changes the value at the closed right end.
                breaks.push(2.0 - f64::EPSILON);
                pieces.push(Piece::Constant(m.cdf(loc)));
            } else if loc > 2.0 + m.atom_tol || loc < -m.atom_tol {
                return Err(Error::InvalidArgument(format!("atom at {loc} lies outside [0, 2]")));
            }
        }
        Envelope::new(breaks, pieces)
    }

    pub fn eval(&self, l: f64) -> f64 {
        let i = self.breaks.partition_point(|&b| b <= l).max(1) - 1;
        self.pieces[i].eval(l)
    }

    fn right_end(&self, i: usize) -> f64 {
        self.breaks.get(i + 1).copied().unwrap_or(2.0)
    }
}

/// ∫_{(0,2]} (1 − λ)^t dφ(λ) = t ∫_0^2 φ(λ)(1 − λ)^{t−1} dλ + (−1)^t φ(2) − φ(0).
pub fn envelope_return_integral(env: &Envelope, t: u64) -> Result<f64> {
    if t == 0 {
        return Err(Error::InvalidArgument("t must be at least 1".into()));
    }
    let tf = t as f64;
    // ∫_a^b (1−λ)^k dλ = ((1−a)^{k+1} − (1−b)^{k+1})/(k+1)
    let moment = |a: f64, b: f64, k: u64| -> f64 {
        let k1 = i32::try_from(k + 1).expect("t fits in i32");
        ((1.0 - a).powi(k1) - (1.0 - b).powi(k1)) / (k + 1) as f64
    };
    let mut body = 0.0;
    for (i, piece) in env.pieces.iter().enumerate() {
        let (a, b) = (env.breaks[i], env.right_end(i));
        body += match *piece {
            Piece::Constant(c) => c * moment(a, b, t - 1),
            // α + βλ = (α + β) − β(1 − λ)
            Piece::Affine { intercept, slope } => {
                (intercept + slope) * moment(a, b, t - 1) - slope * moment(a, b, t)
            }
            Piece::Power { .. } => {
                let e = i32::try_from(t - 1).expect("t fits in i32");
                let (v, _) = integrate(|l| piece.eval(l) * (1.0 - l).powi(e), a, b, 1e-14);
                v
            }
        };
    }
    let sign = if t % 2 == 0 { 1.0 } else { -1.0 };
    Ok(tf * body + sign * env.eval(2.0) - env.eval(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_core::{generate, GraphSpec};
    use crate::operators::{build_operator, OperatorKind};
    use crate::spectral::decompose;

    #[test]
    fn linear_envelope_closed_form() {
        let env = Envelope::single(Piece::Affine { intercept: 0.0, slope: 1.0 }).unwrap();
        for t in 1..=12u64 {
            let sign = if (t + 1) % 2 == 0 { 1.0 } else { -1.0 };
            let exact = (1.0 - sign) / (t as f64 + 1.0);
            assert!((envelope_return_integral(&env, t).unwrap() - exact).abs() < 1e-13);
        }
    }

    #[test]
    fn constant_envelope_has_no_increments() {
        let env = Envelope::single(Piece::Constant(0.7)).unwrap();
        for t in [1, 2, 5, 100] {
            assert!(envelope_return_integral(&env, t).unwrap().abs() < 1e-13);
        }
    }

    #[test]
    fn triangle_reduced_measure() {
        let g = generate(&GraphSpec::Complete { n: 3 }, 0).unwrap();
        let l = decompose(&build_operator(&g, OperatorKind::LaplacianL)).unwrap();
        let env = Envelope::from_measure(&l.reduced_measure(0).unwrap()).unwrap();
        assert!((envelope_return_integral(&env, 2).unwrap() - 1.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn power_pieces_against_closed_form() {
        // φ = √λ: ∫_0^2 (1−λ)^2 d√λ = ∫_0^2 (1−λ)² / (2√λ) dλ = √2 (1 − 4/3 + 4/5).
        let env = Envelope::single(Piece::Power { offset: 0.0, scale: 1.0, exponent: 0.5 }).unwrap();
        let exact = 2f64.sqrt() * (1.0 - 4.0 / 3.0 + 4.0 / 5.0);
        assert!((envelope_return_integral(&env, 2).unwrap() - exact).abs() < 1e-10);
    }

    #[test]
    fn rejects_decreasing_envelopes() {
        assert!(matches!(
            Envelope::single(Piece::Affine { intercept: 1.0, slope: -0.1 }),
            Err(Error::NonMonotoneEnvelope(_))
        ));
        assert!(matches!(
            Envelope::new(vec![0.0, 1.0], vec![Piece::Constant(0.5), Piece::Constant(0.2)]),
            Err(Error::NonMonotoneEnvelope(_))
        ));
        assert!(envelope_return_integral(&Envelope::single(Piece::Constant(0.0)).unwrap(), 0).is_err());
    }
}
