//! Ollivier and Lin-Lu-Yau curvature of edges.
//!
//! Two independent routes: optimal transport between the lazy random-walk
//! measures at the idleness where `p ↦ κ_p` turns linear, and the
//! limit-free formulation `κ = inf { Δf(x) − Δf(y) : f 1-Lipschitz, f(y) − f(x) = 1 }`
//! solved as an exact linear program on `B₁(x) ∪ B₁(y)`.

use std::collections::BTreeSet;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::LocalGraph;
use crate::rational::{self, frac, int, Rational};

use super::laplacian::LaplacianKind;
use super::simplex::{solve, LinearProgram, LpOutcome, Relation};
use super::transport::{wasserstein_w1, Transport};
use super::{CurvatureResult, Witness};

/// Exact distances among the vertices of `B₁(x) ∪ B₁(y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceTable {
    pub vertices: Vec<usize>,
    dist: Vec<Vec<u32>>,
}

impl DistanceTable {
    pub fn index(&self, v: usize) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    /// Distance between two listed vertices.
    pub fn get(&self, u: usize, v: usize) -> u32 {
        let (i, j) = (self.index(u).expect("listed vertex"), self.index(v).expect("listed vertex"));
        self.dist[i][j]
    }
}

fn require_edge(g: &LocalGraph, x: usize, y: usize) -> Result<()> {
    if !g.adjacent(x, y) {
        return Err(Error::invalid(format!(
            "vertices {} and {} are not adjacent",
            g.name(x),
            g.name(y)
        )));
    }
    Ok(())
}

/// Every geodesic between points of `B₁(x) ∪ B₁(y)` has length at most 3 and
/// stays inside `B₄(x)`, so distances computed there are exact.
pub fn local_distances(g: &LocalGraph, x: usize, y: usize) -> Result<DistanceTable> {
    require_edge(g, x, y)?;
    g.require(x, 4)?;
    let mut set = BTreeSet::from([x, y]);
    set.extend(g.neighbors(x).iter().map(|e| e.to));
    set.extend(g.neighbors(y).iter().map(|e| e.to));
    let vertices: Vec<usize> = set.into_iter().collect();
    let dist = vertices
        .iter()
        .map(|&u| {
            let d = g.bfs(u, Some(3));
            vertices
                .iter()
                .map(|&v| d[v].ok_or_else(|| Error::Internal("local distance above 3".into())))
                .collect::<Result<Vec<u32>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DistanceTable { vertices, dist })
}

/// `μ_x^p`: mass `p` at `x`, `(1 − p)/deg(x)` on each neighbour.
pub fn lazy_measure(g: &LocalGraph, x: usize, p: &Rational) -> Vec<(usize, Rational)> {
    let d = int(g.degree(x) as i64);
    let share = (Rational::one() - p) / d;
    let mut out = vec![(x, p.clone())];
    out.extend(g.neighbors(x).iter().map(|e| (e.to, share.clone())));
    out
}

/// `κ_p(x, y) = 1 − W₁(μ_x^p, μ_y^p)` with its optimal plan.
pub fn kappa_p(g: &LocalGraph, x: usize, y: usize, p: &Rational) -> Result<(Rational, Transport)> {
    if p < &Rational::zero() || p > &Rational::one() {
        return Err(Error::invalid("idleness must lie in [0, 1]"));
    }
    let table = local_distances(g, x, y)?;
    let t = wasserstein_w1(&lazy_measure(g, x, p), &lazy_measure(g, y, p), |u, v| {
        int(table.get(u, v) as i64)
    })?;
    Ok((Rational::one() - &t.cost, t))
}

/// `κ_LLY = κ_p / (1 − p)` at `p = 1/(max(deg x, deg y) + 1)`.
pub fn kappa_lly_transport(g: &LocalGraph, x: usize, y: usize) -> Result<CurvatureResult> {
    require_edge(g, x, y)?;
    let p = frac(1, g.degree(x).max(g.degree(y)) as i64 + 1);
    let (k, t) = kappa_p(g, x, y, &p)?;
    let value = k / (Rational::one() - p);
    Ok(CurvatureResult {
        value: rational::to_f64(&value),
        exact: Some(value),
        witness: Witness::Transport(t),
    })
}

/// Minimises `Δf(x) − Δf(y)` over 1-Lipschitz `f` on `B₁(x) ∪ B₁(y)` with
/// `f(x) = 0`, `f(y) = 1`. Every such local function extends 1-Lipschitz to
/// the whole graph, so the local optimum is the curvature.
pub fn kappa_lly_laplacian(g: &LocalGraph, x: usize, y: usize, kind: &LaplacianKind) -> Result<CurvatureResult> {
    let table = local_distances(g, x, y)?;
    kind.validate(g, x)?;
    kind.validate(g, y)?;
    let d = |u: usize, v: usize| int(table.get(u, v) as i64);
    let free: Vec<usize> = table.vertices.iter().copied().filter(|&u| u != x && u != y).collect();
    let nv = free.len();
    // box from the Lipschitz conditions against the fixed vertices
    let lo: Vec<Rational> = free.iter().map(|&u| (-d(u, x)).max(int(1) - d(u, y))).collect();
    let up: Vec<Rational> = free.iter().map(|&u| d(u, x).min(int(1) + d(u, y))).collect();

    let mut coeff = vec![Rational::zero(); nv];
    let mut constant = Rational::zero();
    let pos = |v: usize| free.iter().position(|&u| u == v);
    for (u, c) in kind.transition(g, x) {
        match pos(u) {
            Some(i) => coeff[i] += &c,
            None if u == y => constant += &c,
            None => {}
        }
    }
    for (u, c) in kind.transition(g, y) {
        // −Σ t_y(u)(f(u) − 1)
        constant += &c;
        if let Some(i) = pos(u) {
            coeff[i] -= &c;
        }
    }
    // substitute f = g + lo
    for i in 0..nv {
        constant += &coeff[i] * &lo[i];
    }
    let mut lp = LinearProgram::new(nv, coeff);
    for i in 0..nv {
        let mut row = vec![Rational::zero(); nv];
        row[i] = Rational::one();
        lp.add(row, Relation::Le, &up[i] - &lo[i]);
    }
    for i in 0..nv {
        for j in 0..nv {
            if i == j {
                continue;
            }
            // f_i − f_j ≤ d(i, j), unless the box already forces it
            let dij = d(free[i], free[j]);
            if &up[i] - &lo[j] <= dij {
                continue;
            }
            let mut row = vec![Rational::zero(); nv];
            row[i] = Rational::one();
            row[j] = -Rational::one();
            lp.add(row, Relation::Le, dij - &lo[i] + &lo[j]);
        }
    }
    let (sol, value) = match solve(&lp) {
        LpOutcome::Optimal { x, value } => (x, value + constant),
        other => return Err(Error::Internal(format!("curvature LP ended as {other:?}"))),
    };
    let values: Vec<Rational> = table
        .vertices
        .iter()
        .map(|&u| {
            if u == x {
                Rational::zero()
            } else if u == y {
                Rational::one()
            } else {
                let i = pos(u).expect("free vertex");
                &sol[i] + &lo[i]
            }
        })
        .collect();
    Ok(CurvatureResult {
        value: rational::to_f64(&value),
        exact: Some(value),
        witness: Witness::Potential {
            vertices: table.vertices.clone(),
            values,
        },
    })
}

/// Checks the witness of [`kappa_lly_laplacian`]: 1-Lipschitz on the local
/// support and attaining the value.
pub fn certify_lipschitz_witness(
    g: &LocalGraph,
    x: usize,
    y: usize,
    kind: &LaplacianKind,
    result: &CurvatureResult,
) -> Result<bool> {
    let Witness::Potential { vertices, values } = &result.witness else {
        return Ok(false);
    };
    let table = local_distances(g, x, y)?;
    for i in 0..vertices.len() {
        for j in 0..vertices.len() {
            let diff = &values[i] - &values[j];
            if diff > int(table.get(vertices[i], vertices[j]) as i64) {
                return Ok(false);
            }
        }
    }
    let f = |v: usize| vertices.iter().position(|&u| u == v).map(|i| values[i].clone());
    let lx = super::laplacian::laplacian_apply(g, kind, &f, x)?;
    let ly = super::laplacian::laplacian_apply(g, kind, &f, y)?;
    Ok(Some(lx - ly) == result.exact)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> LocalGraph {
        let mut e = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                e.push((i, j));
            }
        }
        LocalGraph::from_edges(n, &e).unwrap()
    }

    /// Finite tree: the root and its neighbours see the full 3-regular picture.
    fn regular_tree(d: usize, depth: usize) -> LocalGraph {
        let mut edges = Vec::new();
        let mut frontier = vec![0];
        let mut n = 1;
        for level in 0..depth {
            let mut next = Vec::new();
            for &v in &frontier {
                let kids = if level == 0 { d } else { d - 1 };
                for _ in 0..kids {
                    edges.push((v, n));
                    next.push(n);
                    n += 1;
                }
            }
            frontier = next;
        }
        LocalGraph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn complete_graphs() {
        let nn = LaplacianKind::NonNormalized;
        assert_eq!(kappa_lly_laplacian(&complete(2), 0, 1, &nn).unwrap().exact, Some(int(2)));
        assert_eq!(kappa_lly_laplacian(&complete(4), 0, 1, &nn).unwrap().exact, Some(int(4)));
        // normalized K_n: n/(n−1)
        let r = kappa_lly_transport(&complete(4), 0, 1).unwrap();
        assert_eq!(r.exact, Some(frac(4, 3)));
        let l = kappa_lly_laplacian(&complete(4), 0, 1, &LaplacianKind::Normalized).unwrap();
        assert_eq!(l.exact, r.exact);
    }

    #[test]
    fn trees() {
        let g = regular_tree(3, 4);
        let d = local_distances(&g, 0, 1).unwrap();
        // two back-neighbours of 0 and 1 sit 3 apart
        assert_eq!(d.get(2, 4), 3);
        let r = kappa_lly_transport(&g, 0, 1).unwrap();
        assert_eq!(r.exact, Some(frac(4, 3) - int(2)));
        let l = kappa_lly_laplacian(&g, 0, 1, &LaplacianKind::Normalized).unwrap();
        assert_eq!(l.exact, r.exact);
        assert!(certify_lipschitz_witness(&g, 0, 1, &LaplacianKind::Normalized, &l).unwrap());
    }

    #[test]
    fn kappa_p_endpoints() {
        let g = complete(2);
        let (k1, _) = kappa_p(&g, 0, 1, &int(1)).unwrap();
        assert!(k1.is_zero());
        let (k0, _) = kappa_p(&g, 0, 1, &int(0)).unwrap();
        assert!(k0.is_zero());
        let (kh, _) = kappa_p(&g, 0, 1, &frac(1, 2)).unwrap();
        assert_eq!(kh, int(1));
    }

    #[test]
    fn errors() {
        let g = LocalGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(kappa_lly_transport(&g, 0, 2).is_err());
        let ball = complete(4).sub_ball(0, 3);
        assert!(matches!(local_distances(&ball, 0, 1), Err(Error::Radius(_))));
    }
}
