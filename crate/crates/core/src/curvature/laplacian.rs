//! Weighted Laplacians and the Gamma operators.
//!
//! `Δf(x) = (1/m(x)) Σ_y w(x,y) (f(y) − f(x))`, where the measure and weights
//! depend on the [`LaplacianKind`].

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{Edge, LocalGraph};
use crate::rational::{int, Rational, SymMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LaplacianKind {
    /// `m ≡ 1`, `w ≡ 1`.
    NonNormalized,
    /// `m(x) = deg(x)`, `w ≡ 1`.
    Normalized,
    /// Measure and weights stored on the graph.
    Weighted,
    /// Lazy walk with idleness `p`: `m(x) = deg(x) / (1 − p)`, `w ≡ 1`.
    RandomWalk(Rational),
}

impl LaplacianKind {
    pub fn measure(&self, g: &LocalGraph, x: usize) -> Rational {
        match self {
            LaplacianKind::NonNormalized => Rational::one(),
            LaplacianKind::Normalized => int(g.degree(x) as i64),
            LaplacianKind::Weighted => g.measure(x).clone(),
            LaplacianKind::RandomWalk(p) => int(g.degree(x) as i64) / (Rational::one() - p),
        }
    }

    pub fn weight(&self, e: &Edge) -> Rational {
        match self {
            LaplacianKind::Weighted => e.weight.clone(),
            _ => Rational::one(),
        }
    }

    /// Checks the kind makes sense on `g` around `x`.
    pub fn validate(&self, g: &LocalGraph, x: usize) -> Result<()> {
        if let LaplacianKind::RandomWalk(p) = self {
            if p < &Rational::zero() || p >= &Rational::one() {
                return Err(Error::invalid("idleness must lie in [0, 1)"));
            }
        }
        if g.degree(x) == 0 {
            return Err(Error::invalid(format!("vertex {} is isolated", g.name(x))));
        }
        Ok(())
    }

    /// `w(x, y) / m(x)` for every neighbour `y`.
    pub fn transition(&self, g: &LocalGraph, x: usize) -> Vec<(usize, Rational)> {
        let m = self.measure(g, x);
        g.neighbors(x)
            .iter()
            .map(|e| (e.to, self.weight(e) / &m))
            .collect()
    }
}

fn value(f: &impl Fn(usize) -> Option<Rational>, g: &LocalGraph, v: usize) -> Result<Rational> {
    f(v).ok_or_else(|| Error::invalid(format!("function undefined at vertex {}", g.name(v))))
}

pub fn laplacian_apply(
    g: &LocalGraph,
    kind: &LaplacianKind,
    f: &impl Fn(usize) -> Option<Rational>,
    x: usize,
) -> Result<Rational> {
    g.require(x, 1)?;
    let fx = value(f, g, x)?;
    let mut acc = Rational::zero();
    for (y, c) in kind.transition(g, x) {
        acc += c * (value(f, g, y)? - &fx);
    }
    Ok(acc)
}

/// `Γ(f,h)(x) = ½ (Δ(fh) − fΔh − hΔf)(x)`.
pub fn gamma(
    g: &LocalGraph,
    kind: &LaplacianKind,
    f: &impl Fn(usize) -> Option<Rational>,
    h: &impl Fn(usize) -> Option<Rational>,
    x: usize,
) -> Result<Rational> {
    let fh = |v: usize| Some(f(v)? * h(v)?);
    let d_fh = laplacian_apply(g, kind, &fh, x)?;
    let d_h = laplacian_apply(g, kind, h, x)?;
    let d_f = laplacian_apply(g, kind, f, x)?;
    Ok((d_fh - value(f, g, x)? * d_h - value(h, g, x)? * d_f) / int(2))
}

/// `Γ₂(f,h)(x) = ½ (ΔΓ(f,h) − Γ(f,Δh) − Γ(h,Δf))(x)`; needs `B₂(x)`.
pub fn gamma2(
    g: &LocalGraph,
    kind: &LaplacianKind,
    f: &impl Fn(usize) -> Option<Rational>,
    h: &impl Fn(usize) -> Option<Rational>,
    x: usize,
) -> Result<Rational> {
    g.require(x, 2)?;
    let gam = |v: usize| gamma(g, kind, f, h, v).ok();
    let lap_f = |v: usize| laplacian_apply(g, kind, f, v).ok();
    let lap_h = |v: usize| laplacian_apply(g, kind, h, v).ok();
    let a = laplacian_apply(g, kind, &gam, x)?;
    let b = gamma(g, kind, f, &lap_h, x)?;
    let c = gamma(g, kind, h, &lap_f, x)?;
    Ok((a - b - c) / int(2))
}

/// Laplacian matrix `L` with `(Lf)(v) = Δf(v)` on the vertices `vs`
/// (rows of vertices that are not closed in a ball may be incomplete).
pub fn laplacian_matrix(g: &LocalGraph, kind: &LaplacianKind, vs: &[usize]) -> Vec<Vec<Rational>> {
    let pos = |v: usize| vs.iter().position(|&u| u == v);
    vs.iter()
        .map(|&x| {
            let mut row = vec![Rational::zero(); vs.len()];
            let i = pos(x).expect("row vertex is listed");
            for (y, c) in kind.transition(g, x) {
                if let Some(j) = pos(y) {
                    row[j] += &c;
                    row[i] -= &c;
                }
            }
            row
        })
        .collect()
}

/// Combinatorial Laplacian `Δ = W − diag(Σ w)` of a weighted adjacency matrix.
pub fn weighted_laplacian(adjacency: &SymMatrix) -> SymMatrix {
    let n = adjacency.dim();
    let mut out = adjacency.clone();
    for i in 0..n {
        let d = adjacency.row_sum(i) - adjacency.get(i, i);
        out.set(i, i, -d);
    }
    out
}
