//! Closed-form curvature of RAACH Cayley graphs, read off the associated pair.

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::LocalGraph;
use crate::group::ball;
use crate::linalg::symmetric_eigen;
use crate::presentation::{associated_pair, AssociatedPair, DefiningGraph, GeneratorOrder, Letter, Presentation};
use crate::rational::{frac, int, Rational, SymMatrix};

const THREE: GeneratorOrder = GeneratorOrder::Finite(3);

/// Edge curvature at `e ~ s`: `(a + 2 deg(s))/D − 2`, with `a = 3` for
/// letters of order 3 and 4 otherwise, and the weighted degree in `H*`.
pub fn thm_or_raach(h: &DefiningGraph, s: Letter) -> Result<Rational> {
    if s.gen >= h.num_generators() {
        return Err(Error::invalid(format!("no generator with index {}", s.gen)));
    }
    let pair = associated_pair(h);
    let i = pair
        .index_of(h.canonical_letter(s))
        .ok_or_else(|| Error::invalid("letter is not in the symmetric generating set"))?;
    let a = if pair.order(i) == THREE { 3 } else { 4 };
    let d = pair.len() as i64;
    Ok(frac(a + 2 * pair.weighted_degree(i) as i64, d) - int(2))
}

/// Variant with the combinatorial degree, logged when the readings differ.
pub fn thm_or_raach_combinatorial(h: &DefiningGraph, s: Letter) -> Result<Rational> {
    let pair = associated_pair(h);
    let i = pair
        .index_of(h.canonical_letter(s))
        .ok_or_else(|| Error::invalid("letter is not in the symmetric generating set"))?;
    let a = if pair.order(i) == THREE { 3 } else { 4 };
    Ok(frac(a + 2 * pair.combinatorial_degree(i) as i64, pair.len() as i64) - int(2))
}

/// `Δ_{H*} = W − diag(weighted degree)` in the pair's letter order.
pub fn pair_laplacian(pair: &AssociatedPair) -> SymMatrix {
    let n = pair.len();
    SymMatrix::from_fn(n, |i, j| {
        if i == j {
            -int(pair.weighted_degree(i) as i64)
        } else {
            int(pair.weight(i, j) as i64)
        }
    })
}

/// Spectrum of `−Δ_{H*}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralSummary {
    /// Ascending.
    pub spectrum: Vec<f64>,
}

impl SpectralSummary {
    pub fn of(pair: &AssociatedPair) -> Self {
        let neg = pair_laplacian(pair).scale(&-Rational::one());
        SpectralSummary {
            spectrum: symmetric_eigen(&neg.to_f64()).values,
        }
    }

    /// Second smallest eigenvalue (with multiplicity); `None` when `|S*| < 2`.
    pub fn lambda2(&self) -> Option<f64> {
        self.spectrum.get(1).copied()
    }

    pub fn lambda1(&self) -> Option<f64> {
        self.spectrum.first().copied()
    }
}

/// Which closed form for `K(e)` applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BeCase {
    /// No order-3 generators and `D ≥ 2`: `K = 2 − D + λ₂`.
    NoOrderThree,
    /// All generators of order 3 and `D ≥ 4`: `K = 5/2 − D + λ₂`.
    AllOrderThree,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BeClosedForm {
    /// Row order of `matrix`: order-3 letters first, then the rest, each in
    /// declaration order with the inverse after its base letter.
    pub letters: Vec<Letter>,
    pub matrix: SymMatrix,
    pub spectrum: SpectralSummary,
    pub case: Option<BeCase>,
    /// `K(e)` from the closed form, when a case applies.
    pub closed_form: Option<f64>,
    /// `λ_min(A(e))`.
    pub numeric: f64,
}

pub fn be_case(h: &DefiningGraph) -> Option<BeCase> {
    let pair = associated_pair(h);
    let d = pair.len();
    let threes = h.count_order(THREE);
    if threes == 0 && d >= 2 {
        Some(BeCase::NoOrderThree)
    } else if threes == h.num_generators() && d >= 4 {
        Some(BeCase::AllOrderThree)
    } else {
        None
    }
}

/// `A(e) = (2 − D) Id + J − Δ_{H*} + ½ diag(1 on order-3 letters)`.
pub fn thm_be_raach(h: &DefiningGraph) -> BeClosedForm {
    let pair = associated_pair(h);
    let d = pair.len();
    let mut order: Vec<usize> = (0..d).filter(|&i| pair.order(i) == THREE).collect();
    order.extend((0..d).filter(|&i| pair.order(i) != THREE));
    let lap = pair_laplacian(&pair).permuted(&order);
    let half = frac(1, 2);
    let matrix = SymMatrix::from_fn(d, |i, j| {
        let mut v = Rational::one() - lap.get(i, j);
        if i == j {
            v += int(2 - d as i64);
            if pair.order(order[i]) == THREE {
                v += &half;
            }
        }
        v
    });
    let spectrum = SpectralSummary::of(&pair);
    let case = be_case(h);
    let closed_form = match (case, spectrum.lambda2()) {
        (Some(BeCase::NoOrderThree), Some(l2)) => Some(2.0 - d as f64 + l2),
        (Some(BeCase::AllOrderThree), Some(l2)) => Some(2.5 - d as f64 + l2),
        _ => None,
    };
    let numeric = symmetric_eigen(&matrix.to_f64()).values.first().copied().unwrap_or(f64::NAN);
    BeClosedForm {
        letters: order.iter().map(|&i| pair.letters()[i]).collect(),
        matrix,
        spectrum,
        case,
        closed_form,
        numeric,
    }
}

/// Both sides of `Δ_{H*} = 2Δ_{S₁} + 2Δ_{S₁'}`, in the pair's letter order.
#[derive(Clone, Debug, PartialEq)]
pub struct LapIdentity {
    pub pair_side: SymMatrix,
    pub ball_side: SymMatrix,
}

impl LapIdentity {
    pub fn holds(&self) -> bool {
        self.pair_side == self.ball_side
    }
}

/// Builds the right side from the Cayley 2-ball: `S₁` edges with weight 1
/// and `S₁'` weights `Σ_z w(y_i,z) w(y_j,z) / d⁻(z)` over `z ∈ S₂`.
pub fn lap_identity(h: &DefiningGraph) -> Result<LapIdentity> {
    let pair = associated_pair(h);
    let p = Presentation::raach(h.clone());
    let b = ball(&p, 2)?;
    let g = &b.graph;
    let root = g.root();
    let first: Vec<usize> = pair
        .letters()
        .iter()
        .map(|&l| {
            g.follow(root, l)
                .ok_or_else(|| Error::Internal(format!("no edge for {}", h.letter_name(l))))
        })
        .collect::<Result<_>>()?;
    let n = first.len();
    let mut off = SymMatrix::zeros(n);
    for i in 0..n {
        for j in i + 1..n {
            if g.adjacent(first[i], first[j]) {
                off.add_at(i, j, &int(2));
            }
            let mut s = Rational::zero();
            for e in g.neighbors(first[i]) {
                let z = e.to;
                if g.depth(z) != 2 || !g.adjacent(z, first[j]) {
                    continue;
                }
                let indeg = g.neighbors(z).iter().filter(|f| g.depth(f.to) == 1).count();
                s += frac(1, indeg as i64);
            }
            off.add_at(i, j, &(s * int(2)));
        }
    }
    let ball_side = SymMatrix::from_fn(n, |i, j| {
        if i == j {
            -off.row_sum(i)
        } else {
            off.get(i, j).clone()
        }
    });
    Ok(LapIdentity {
        pair_side: pair_laplacian(&pair),
        ball_side,
    })
}

pub fn lap_identity_check(h: &DefiningGraph) -> Result<bool> {
    Ok(lap_identity(h)?.holds())
}

/// `λ₂(−Δ_{H*}) ≤ D + 1e-9`. `None` when the hypothesis fails.
pub fn lambda2_bound_check(h: &DefiningGraph) -> Option<(bool, f64, usize)> {
    be_case(h)?;
    let pair = associated_pair(h);
    let l2 = SpectralSummary::of(&pair).lambda2()?;
    Some((l2 <= pair.len() as f64 + 1e-9, l2, pair.len()))
}

/// `(2 − 2ℓ)/(n + ℓ + 1)`, or `(3 − 2ℓ)/(n + ℓ + 2)` with the common vertex.
pub fn edge_pattern_kappa(n: usize, l: usize, with_z: bool) -> Result<Rational> {
    if n + l == 0 {
        return Err(Error::invalid("need n + l >= 1"));
    }
    let (n, l) = (n as i64, l as i64);
    Ok(if with_z {
        frac(3 - 2 * l, n + l + 2)
    } else {
        frac(2 - 2 * l, n + l + 1)
    })
}

/// Smallest graph with the neighbourhood pattern of the formula: `x ~ y`,
/// leaves `x_i`, `y_i`, matched pairs `u_j ~ v_j` and optionally a common
/// neighbour `z`. Vertex 0 is `x`, vertex 1 is `y`.
pub fn edge_pattern_graph(n: usize, l: usize, with_z: bool) -> LocalGraph {
    let mut edges = vec![(0, 1)];
    let mut next = 2;
    for _ in 0..l {
        edges.push((0, next));
        edges.push((1, next + 1));
        next += 2;
    }
    for _ in 0..n {
        edges.push((0, next));
        edges.push((1, next + 1));
        edges.push((next, next + 1));
        next += 2;
    }
    if with_z {
        edges.push((0, next));
        edges.push((1, next));
        next += 1;
    }
    LocalGraph::from_edges(next, &edges).expect("simple graph")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::{bakry_emery, kappa_lly_transport, kappa_p, LaplacianKind};
    use crate::presentation::parse_raach_body;

    fn h(text: &str) -> DefiningGraph {
        parse_raach_body(text).unwrap().require_raach().unwrap().clone()
    }

    fn a() -> Letter {
        Letter::new(0, false)
    }

    #[test]
    fn edge_formula_examples() {
        for d in 2..6 {
            let gens: Vec<String> = (0..d).map(|i| format!("g{i}:2")).collect();
            let t = h(&gens.join(","));
            assert_eq!(thm_or_raach(&t, a()).unwrap(), frac(4, d) - int(2));
        }
        let tri = h("a:3, b:3");
        assert_eq!(thm_or_raach(&tri, a()).unwrap(), frac(7, 4) - int(2));
        let grid = h("a:inf, b:inf; commute (a,b)");
        assert_eq!(thm_or_raach(&grid, a()).unwrap(), int(0));
        assert!(thm_or_raach(&grid, Letter::new(5, false)).is_err());
    }

    #[test]
    fn degree_readings_differ_only_with_order_three() {
        let tri = h("a:3");
        assert_ne!(thm_or_raach(&tri, a()).unwrap(), thm_or_raach_combinatorial(&tri, a()).unwrap());
        let sq = h("a:2, b:2; commute (a,b)");
        assert_eq!(thm_or_raach(&sq, a()).unwrap(), thm_or_raach_combinatorial(&sq, a()).unwrap());
    }

    #[test]
    fn be_matrix_cases() {
        // RACG on K_3: the cube, K = 2
        let cube = thm_be_raach(&h("a:2, b:2, c:2; commute (a,b), (b,c), (a,c)"));
        assert_eq!(cube.case, Some(BeCase::NoOrderThree));
        assert!((cube.closed_form.unwrap() - 2.0).abs() < 1e-9);
        assert!((cube.numeric - 2.0).abs() < 1e-9);
        // triangle tree with D0 = 2
        let tri = thm_be_raach(&h("a:3, b:3"));
        assert_eq!(tri.case, Some(BeCase::AllOrderThree));
        assert!((tri.closed_form.unwrap() - (2.5 - 4.0)).abs() < 1e-9);
        assert!((tri.numeric - tri.closed_form.unwrap()).abs() < 1e-9);
        // mixed orders: no closed form
        let mixed = thm_be_raach(&h("a:2, b:3"));
        assert_eq!(mixed.case, None);
        assert!(mixed.closed_form.is_none());
        assert_eq!(mixed.letters[0], Letter::new(1, false));
    }

    #[test]
    fn be_matrix_matches_ball() {
        let t = h("a:3, b:2; commute (a,b)");
        let cf = thm_be_raach(&t);
        let b = ball(&Presentation::raach(t.clone()), 2).unwrap();
        let k = bakry_emery(&b.graph, b.graph.root(), &LaplacianKind::NonNormalized).unwrap();
        assert!((k.value - cf.numeric).abs() < 1e-8);
    }

    #[test]
    fn laplacian_identity() {
        for text in ["a:3", "a:2, b:2; commute (a,b)", "a:inf, b:inf", "a:4, b:3; commute (a,b)"] {
            let id = lap_identity(&h(text)).unwrap();
            assert!(id.holds(), "{text}: {:?} vs {:?}", id.pair_side, id.ball_side);
        }
        let single = lap_identity(&h("a:3")).unwrap();
        assert_eq!(single.pair_side.get(0, 1), &int(2));
    }

    #[test]
    fn lambda2_bound() {
        let (ok, l2, d) = lambda2_bound_check(&h("a:2, b:2, c:2; commute (a,b), (b,c), (a,c)")).unwrap();
        assert!(ok && (l2 - 3.0).abs() < 1e-9 && d == 3);
        let (ok, l2, _) = lambda2_bound_check(&h("a:3, b:3")).unwrap();
        assert!(ok && l2.abs() < 1e-9);
        assert!(lambda2_bound_check(&h("a:2, b:3")).is_none());
        assert!(lambda2_bound_check(&h("a:2")).is_none());
    }

    #[test]
    fn neighbourhood_formula_matches_transport() {
        assert_eq!(edge_pattern_kappa(0, 1, false).unwrap(), int(0));
        assert_eq!(edge_pattern_kappa(2, 0, false).unwrap(), frac(2, 3));
        assert_eq!(edge_pattern_kappa(1, 1, true).unwrap(), frac(1, 4));
        assert!(edge_pattern_kappa(0, 0, false).is_err());
        for n in 0..3 {
            for l in 0..3 {
                for z in [false, true] {
                    if n + l == 0 {
                        continue;
                    }
                    let g = edge_pattern_graph(n, l, z);
                    let k = kappa_lly_transport(&g, 0, 1).unwrap();
                    assert_eq!(k.exact.unwrap(), edge_pattern_kappa(n, l, z).unwrap(), "n={n} l={l} z={z}");
                }
            }
        }
        // W₁ at p = 1/(D+1) without z
        let (n, l) = (2, 3);
        let g = edge_pattern_graph(n, l, false);
        let d = (n + l + 1) as i64;
        let (k, t) = kappa_p(&g, 0, 1, &frac(1, d + 1)).unwrap();
        assert_eq!(t.cost, frac(3 * l as i64 + n as i64, d + 1));
        assert_eq!(k, int(1) - t.cost);
    }
}
