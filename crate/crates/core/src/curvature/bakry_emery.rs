//! Bakry-Émery curvature (dimension ∞) through the curvature matrix.
//!
//! With `f(x) = 0`, `Γ(x)` and `Γ₂(x)` are quadratic forms in the values of
//! `f` on `S₁(x) ∪ S₂(x)`. `Γ(x)` is diagonal on `S₁`, the `S₂` block of
//! `Γ₂(x)` is eliminated by a Schur complement `Q`, and the curvature is the
//! least eigenvalue of `Γ^{-1/2} Q Γ^{-1/2}`.

use std::collections::HashMap;

use num::{Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::LocalGraph;
use crate::linalg::symmetric_eigen;
use crate::rational::{self, exact_sqrt, frac, int, solve, Rational, SymMatrix};

use super::laplacian::{gamma, gamma2, LaplacianKind};
use super::{CurvatureResult, Witness};

/// The pieces behind `A(x)`.
#[derive(Clone, Debug)]
pub struct CurvatureMatrix {
    pub center: usize,
    /// `S₁(x)` then `S₂(x)`, each in vertex order.
    pub first_sphere: Vec<usize>,
    pub second_sphere: Vec<usize>,
    /// `Γ₂(x)` on `S₁ ∪ S₂` (with `f(x) = 0`).
    pub gamma2: SymMatrix,
    /// Diagonal of `Γ(x)` on `S₁`: `w(x,y) / (2 m(x))`.
    pub gamma_diag: Vec<Rational>,
    /// Schur complement of the `S₂` block.
    pub schur: SymMatrix,
    /// `A(x)` when it is rational.
    pub exact: Option<SymMatrix>,
}

impl CurvatureMatrix {
    /// `A(x)` in floating point; exact entries when available.
    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        if let Some(a) = &self.exact {
            return a.to_f64();
        }
        let g: Vec<f64> = self.gamma_diag.iter().map(rational::to_f64).collect();
        let q = self.schur.to_f64();
        (0..g.len())
            .map(|i| (0..g.len()).map(|j| q[i][j] / (g[i] * g[j]).sqrt()).collect())
            .collect()
    }
}

/// Exact `Γ₂(x)` over the local vertex list `[x] ++ S₁ ++ S₂`, assembled from
/// `ΔΓ − Γ(·,Δ·) − Γ(Δ·,·)` with every operator written as a sparse matrix.
fn gamma2_local(g: &LocalGraph, x: usize, kind: &LaplacianKind, verts: &[usize]) -> Vec<Vec<Rational>> {
    let n = verts.len();
    let pos: HashMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut out = vec![vec![Rational::zero(); n]; n];

    // Γ at v as a bilinear form: Σ_u c (e_u − e_v)(e_u − e_v)^T
    let add_gamma_at = |out: &mut Vec<Vec<Rational>>, v: usize, scale: &Rational| {
        let m = kind.measure(g, v);
        let iv = pos[&v];
        for e in g.neighbors(v) {
            let iu = pos[&e.to];
            let c = kind.weight(e) / (int(2) * &m) * scale;
            out[iu][iu] += &c;
            out[iv][iv] += &c;
            out[iu][iv] -= &c;
            out[iv][iu] -= &c;
        }
    };
    let lap_row = |v: usize| -> Vec<(usize, Rational)> {
        let iv = pos[&v];
        let mut row = Vec::new();
        for (u, c) in kind.transition(g, v) {
            row.push((pos[&u], c.clone()));
            row.push((iv, -c));
        }
        row
    };

    let mx = kind.measure(g, x);
    let ix = pos[&x];
    let lx = lap_row(x);
    for e in g.neighbors(x) {
        let y = e.to;
        let a = kind.weight(e) / &mx;
        // ½ ΔΓ: a_y (Γ_y − Γ_x)
        let half = &a / int(2);
        add_gamma_at(&mut out, y, &half);
        add_gamma_at(&mut out, x, &(-half));
        // −½ (T2 + T2^T) with T2 = Σ_y c_y (e_y − e_x)(L_y − L_x)^T
        let c = &a / int(4);
        let ly = lap_row(y);
        let iy = pos[&y];
        for (row, sign) in [(iy, 1i64), (ix, -1i64)] {
            let s = &c * int(sign);
            for (j, val) in &ly {
                let t = &s * val;
                out[row][*j] -= &t;
                out[*j][row] -= &t;
            }
            for (j, val) in &lx {
                let t = &s * val;
                out[row][*j] += &t;
                out[*j][row] += &t;
            }
        }
    }
    out
}

/// Builds `Γ₂(x)`, its Schur complement and (when rational) `A(x)`.
pub fn curvature_matrix(g: &LocalGraph, x: usize, kind: &LaplacianKind) -> Result<CurvatureMatrix> {
    g.require(x, 2)?;
    kind.validate(g, x)?;
    let (s1, s2) = g.spheres(x);
    let mut verts = vec![x];
    verts.extend(&s1);
    verts.extend(&s2);
    let full = gamma2_local(g, x, kind, &verts);
    let rows: Vec<Vec<Rational>> = full[1..].iter().map(|r| r[1..].to_vec()).collect();
    let gamma2 = SymMatrix::from_rows(rows)?;
    let k = s1.len();
    let keep: Vec<usize> = (0..k).collect();
    let elim: Vec<usize> = (k..verts.len() - 1).collect();
    let schur = gamma2.schur_complement(&keep, &elim).map_err(|e| match e {
        Error::Singular(m) => Error::Singular(format!("second-sphere block of Γ₂ at {}: {m}", g.name(x))),
        other => other,
    })?;
    let mx = kind.measure(g, x);
    let gamma_diag: Vec<Rational> = s1
        .iter()
        .map(|&y| kind.weight(g.edge(x, y).expect("neighbour")) / (int(2) * &mx))
        .collect();
    let exact = exact_scaling(&gamma_diag).map(|(base, r)| {
        SymMatrix::from_fn(k, |i, j| schur.get(i, j) / (&base * &r[i] * &r[j]))
    });
    Ok(CurvatureMatrix {
        center: x,
        first_sphere: s1,
        second_sphere: s2,
        gamma2,
        gamma_diag,
        schur,
        exact,
    })
}

/// `γ_i = base · r_i²` with rational `r_i`, if possible.
fn exact_scaling(gamma_diag: &[Rational]) -> Option<(Rational, Vec<Rational>)> {
    let base = gamma_diag.first()?.clone();
    let r: Option<Vec<Rational>> = gamma_diag.iter().map(|gi| exact_sqrt(&(gi / &base))).collect();
    r.map(|r| (base, r))
}

/// Closed form of `A(x)` for unit weights and the non-normalized Laplacian:
/// `−2Δ_{S₁} − 2Δ_{S₁'} + J + ((3 − D)/2) I − ½ diag(d⁺)`.
pub fn curvature_matrix_closed_form(g: &LocalGraph, x: usize) -> Result<SymMatrix> {
    g.require(x, 2)?;
    let (s1, s2) = g.spheres(x);
    let one = Rational::from_integer(1.into());
    for &v in std::iter::once(&x).chain(&s1) {
        if g.neighbors(v).iter().any(|e| e.weight != one) {
            return Err(Error::invalid("closed form needs unit edge weights"));
        }
    }
    let k = s1.len();
    if k == 0 {
        return Err(Error::invalid(format!("vertex {} is isolated", g.name(x))));
    }
    let in_s2: HashMap<usize, usize> = s2.iter().enumerate().map(|(i, &z)| (z, i)).collect();
    // in-degree of z from S₁
    let mut d_minus = vec![0i64; s2.len()];
    let mut d_plus = vec![0i64; k];
    for (i, &y) in s1.iter().enumerate() {
        for e in g.neighbors(y) {
            if let Some(&iz) = in_s2.get(&e.to) {
                d_minus[iz] += 1;
                d_plus[i] += 1;
            }
        }
    }
    let mut adj1 = SymMatrix::zeros(k);
    let mut adj2 = SymMatrix::zeros(k);
    for i in 0..k {
        for j in i + 1..k {
            if g.adjacent(s1[i], s1[j]) {
                adj1.set(i, j, int(1));
            }
            let mut w = Rational::zero();
            for (iz, &z) in s2.iter().enumerate() {
                if g.adjacent(s1[i], z) && g.adjacent(s1[j], z) {
                    w += frac(1, d_minus[iz]);
                }
            }
            adj2.set(i, j, w);
        }
    }
    let lap1 = super::laplacian::weighted_laplacian(&adj1);
    let lap2 = super::laplacian::weighted_laplacian(&adj2);
    let d = int(k as i64);
    let mut a = lap1.add(&lap2).scale(&int(-2)).add(&SymMatrix::ones(k));
    for i in 0..k {
        let diag = (int(3) - &d) / int(2) - frac(d_plus[i], 2);
        a.add_at(i, i, &diag);
    }
    Ok(a)
}

/// Recovers a small-denominator rational eigenvalue near `approx`, checked by
/// an exact singularity test of `A − λI`.
fn exact_eigenvalue(a: &SymMatrix, approx: f64) -> Option<Rational> {
    for den in 1..=64i64 {
        let num = (approx * den as f64).round() as i64;
        let cand = frac(num, den);
        if (rational::to_f64(&cand) - approx).abs() > 1e-8 {
            continue;
        }
        let shifted = a.sub(&SymMatrix::identity(a.dim()).scale(&cand));
        if is_singular(&shifted) {
            return Some(cand);
        }
    }
    None
}

fn is_singular(m: &SymMatrix) -> bool {
    let n = m.dim();
    let mut rows: Vec<Vec<Rational>> = (0..n).map(|i| (0..n).map(|j| m.get(i, j).clone()).collect()).collect();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !rows[r][col].is_zero()) else {
            return true;
        };
        rows.swap(col, p);
        for r in col + 1..n {
            if rows[r][col].is_zero() {
                continue;
            }
            let f = &rows[r][col] / &rows[col][col];
            for c in col..n {
                let d = &f * &rows[col][c];
                rows[r][c] -= d;
            }
        }
    }
    false
}

/// `K(x) = λ_min(A(x))` with the minimising function as witness.
pub fn bakry_emery(g: &LocalGraph, x: usize, kind: &LaplacianKind) -> Result<CurvatureResult> {
    let cm = curvature_matrix(g, x, kind)?;
    let a = cm.to_f64();
    let eig = symmetric_eigen(&a);
    let (value, v) = eig.min().ok_or_else(|| Error::Internal("empty curvature matrix".into()))?;
    let exact = cm.exact.as_ref().and_then(|m| exact_eigenvalue(m, value));
    let f = witness_function(&cm, v)?;
    let mut vertices = vec![x];
    vertices.extend(&cm.first_sphere);
    vertices.extend(&cm.second_sphere);
    let mut values = vec![0.0];
    values.extend(f);
    Ok(CurvatureResult {
        value: exact.as_ref().map_or(value, rational::to_f64),
        exact,
        witness: Witness::Function { vertices, values },
    })
}

/// `f₁ = Γ^{-1/2} v` on `S₁`, extended to `S₂` by `f₂ = −M₂₂⁻¹ M₂₁ f₁`.
fn witness_function(cm: &CurvatureMatrix, v: &[f64]) -> Result<Vec<f64>> {
    let k = cm.first_sphere.len();
    let f1: Vec<Rational> = v
        .iter()
        .zip(&cm.gamma_diag)
        .map(|(vi, gi)| rational::from_f64(vi / rational::to_f64(gi).sqrt()))
        .collect();
    let n2 = cm.second_sphere.len();
    let mut out: Vec<f64> = f1.iter().map(rational::to_f64).collect();
    if n2 == 0 {
        return Ok(out);
    }
    let m22: Vec<Vec<Rational>> = (0..n2)
        .map(|i| (0..n2).map(|j| cm.gamma2.get(k + i, k + j).clone()).collect())
        .collect();
    let rhs: Vec<Vec<Rational>> = (0..n2)
        .map(|i| {
            let mut acc = Rational::zero();
            for (j, fj) in f1.iter().enumerate() {
                acc -= cm.gamma2.get(k + i, j) * fj;
            }
            vec![acc]
        })
        .collect();
    let f2 = solve(m22, rhs)?;
    out.extend(f2.iter().map(|r| rational::to_f64(&r[0])));
    Ok(out)
}

/// Outcome of checking `Γ₂f(x) − KΓf(x) ≥ 0` on random and witness functions.
#[derive(Clone, Debug)]
pub struct BakryEmeryCheck {
    pub samples: usize,
    /// Least `Γ₂f − KΓf` over random `f` normalised to `Γf = 1`.
    pub min_gap: f64,
    /// `Γ₂f − KΓf` for the witness, normalised to `Γf = 1`.
    pub witness_gap: f64,
}

impl BakryEmeryCheck {
    pub fn holds(&self, slack: f64, witness_tolerance: f64) -> bool {
        self.min_gap >= -slack && self.witness_gap.abs() <= witness_tolerance
    }
}

/// Evaluates the defining inequality pointwise through [`gamma`] and [`gamma2`].
pub fn verify_bakry_emery(
    g: &LocalGraph,
    x: usize,
    kind: &LaplacianKind,
    result: &CurvatureResult,
    samples: usize,
    rng: &mut impl Rng,
) -> Result<BakryEmeryCheck> {
    let Witness::Function { vertices, values } = &result.witness else {
        return Err(Error::invalid("expected a function witness"));
    };
    let k = rational::from_f64(result.value);
    let gap = |f: &HashMap<usize, Rational>| -> Result<Option<f64>> {
        let ev = |v: usize| Some(f.get(&v).cloned().unwrap_or_else(Rational::zero));
        let gm = gamma(g, kind, &ev, &ev, x)?;
        if !gm.is_positive() {
            return Ok(None);
        }
        let g2 = gamma2(g, kind, &ev, &ev, x)?;
        Ok(Some(rational::to_f64(&((g2 - &k * &gm) / gm))))
    };
    let witness: HashMap<usize, Rational> = vertices
        .iter()
        .zip(values)
        .map(|(&v, &val)| (v, rational::from_f64(val)))
        .collect();
    let witness_gap = gap(&witness)?.unwrap_or(0.0);
    let mut min_gap = f64::INFINITY;
    let mut done = 0;
    while done < samples {
        let f: HashMap<usize, Rational> = vertices
            .iter()
            .map(|&v| (v, int(rng.gen_range(-6..=6))))
            .collect();
        if let Some(gp) = gap(&f)? {
            min_gap = min_gap.min(gp);
            done += 1;
        }
    }
    Ok(BakryEmeryCheck {
        samples,
        min_gap,
        witness_gap,
    })
}
