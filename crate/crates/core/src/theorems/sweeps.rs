//! Closed forms against brute force over small RAACH families.

use num::{One, Zero};
use rand::Rng;

use crate::curvature::bakry_emery::verify_bakry_emery;
use crate::curvature::{bakry_emery, curvature_matrix, kappa_lly_laplacian, kappa_lly_transport, kappa_p, LaplacianKind};
use crate::error::{Error, Result};
use crate::graph::LocalGraph;
use crate::group::eliminate::{eliminate, EliminationKind};
use crate::group::{ball, cycles::classify_short_cycles, normal_form};
use crate::iso::{isomorphic, pair_graph, Rooting};
use crate::presentation::{associated_pair, DefiningGraph, GeneratorOrder, Letter, Presentation, Word};
use crate::rational::{self, frac, Rational};
use crate::report::{Record, Report};

use super::formulas::{lambda2_bound_check, lap_identity, thm_be_raach, thm_or_raach, thm_or_raach_combinatorial};

pub const FAMILY_ORDERS: [GeneratorOrder; 4] = [
    GeneratorOrder::Finite(2),
    GeneratorOrder::Finite(3),
    GeneratorOrder::Finite(4),
    GeneratorOrder::Infinite,
];

const NAMES: [&str; 6] = ["a", "b", "c", "d", "f", "g"];

/// Every defining graph on `1..=max_gens` generators named `a, b, c, …` with
/// orders in {2, 3, 4, ∞} and any set of commuting pairs.
pub fn raach_family(max_gens: usize) -> Vec<DefiningGraph> {
    assert!(max_gens <= NAMES.len());
    let mut out = Vec::new();
    for n in 1..=max_gens {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let names: Vec<String> = NAMES[..n].iter().map(|s| s.to_string()).collect();
        for code in 0..4usize.pow(n as u32) {
            let orders: Vec<GeneratorOrder> = (0..n).map(|i| FAMILY_ORDERS[(code / 4usize.pow(i as u32)) % 4]).collect();
            for mask in 0..1usize << pairs.len() {
                let edges = pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e);
                out.push(DefiningGraph::new(names.clone(), orders.clone(), edges).expect("valid family member"));
            }
        }
    }
    out
}

fn first_sphere_vertex(g: &LocalGraph, h: &DefiningGraph, l: Letter) -> Result<usize> {
    g.follow(g.root(), h.canonical_letter(l))
        .ok_or_else(|| Error::Internal(format!("ball has no edge for {}", h.letter_name(l))))
}

/// Edge formula against exact transport on the radius-4 ball, every letter.
pub fn verify_or(family: &[DefiningGraph]) -> Result<Report> {
    let mut report = Report::new();
    for h in family {
        let p = Presentation::raach(h.clone());
        let b = ball(&p, 4)?;
        let g = &b.graph;
        for &l in associated_pair(h).letters() {
            let y = first_sphere_vertex(g, h, l)?;
            let brute = kappa_lly_transport(g, g.root(), y)?.exact.expect("transport is exact");
            let formula = thm_or_raach(h, l)?;
            let combinatorial = thm_or_raach_combinatorial(h, l)?;
            let mut at = format!("{} edge e~{}", h.render(), h.letter_name(l));
            if combinatorial != formula {
                at.push_str(&format!("; combinatorial degree reading gives {}", rational::format(&combinatorial)));
            }
            report.push(Record::check("or.edge_formula", formula.clone(), brute.clone(), formula == brute, at));
        }
    }
    Ok(report)
}

/// Curvature matrix, `K(e)` cases, the Laplacian identity and the `λ₂` bound.
pub fn verify_be(family: &[DefiningGraph]) -> Result<Report> {
    let mut report = Report::new();
    for h in family {
        let at = h.render();
        let cf = thm_be_raach(h);
        let p = Presentation::raach(h.clone());
        let b = ball(&p, 2)?;
        let g = &b.graph;
        let cm = curvature_matrix(g, g.root(), &LaplacianKind::NonNormalized)?;
        let schur = cm
            .exact
            .ok_or_else(|| Error::Internal("unit-weight curvature matrix is rational".into()))?;
        let idx: Vec<usize> = cf
            .letters
            .iter()
            .map(|&l| {
                let v = first_sphere_vertex(g, h, l)?;
                cm.first_sphere
                    .iter()
                    .position(|&u| u == v)
                    .ok_or_else(|| Error::Internal("letter outside the first sphere".into()))
            })
            .collect::<Result<_>>()?;
        let schur = schur.permuted(&idx);
        let same = schur == cf.matrix;
        report.push(Record::check(
            "be.curvature_matrix",
            if same { "equal".to_string() } else { cf.matrix.to_csv() },
            if same { "equal".to_string() } else { schur.to_csv() },
            same,
            at.clone(),
        ));
        match cf.closed_form {
            Some(k) => report.push(Record::check(
                "be.curvature_formula",
                k,
                cf.numeric,
                (k - cf.numeric).abs() <= 1e-8,
                at.clone(),
            )),
            None => report.push(Record::skipped("be.curvature_formula", "no closed form for this order pattern", at.clone())),
        }
        let id = lap_identity(h)?;
        report.push(Record::check(
            "be.laplacian_identity",
            if id.holds() { "equal".to_string() } else { id.pair_side.to_csv() },
            if id.holds() { "equal".to_string() } else { id.ball_side.to_csv() },
            id.holds(),
            at.clone(),
        ));
        match lambda2_bound_check(h) {
            Some((ok, l2, d)) => report.push(Record::check("be.lambda2_bound", l2, d as f64, ok, at)),
            None => report.push(Record::skipped("be.lambda2_bound", "hypothesis does not hold", at)),
        }
    }
    Ok(report)
}

pub fn verify_cycles(family: &[DefiningGraph]) -> Result<Report> {
    let mut report = Report::new();
    for h in family {
        let c = classify_short_cycles(&Presentation::raach(h.clone()))?;
        let counts = format!("{}/{}/{}", c.counts[0], c.counts[1], c.counts[2]);
        let at = format!("{} cycles of length 3/4/5: {counts}", h.render());
        match c.violations.first() {
            None => report.push(Record::check("cycles.admissible", "0", "0", true, at)),
            Some(v) => report.push(Record::check(
                "cycles.admissible",
                c.violations.len().to_string(),
                "0",
                false,
                format!("{at}; first offending cycle {v}"),
            )),
        }
    }
    Ok(report)
}

pub fn random_word(n_gens: usize, max_len: usize, rng: &mut impl Rng) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word((0..len).map(|_| Letter::new(rng.gen_range(0..n_gens), rng.gen_bool(0.5))).collect())
}

/// Eliminates every order-4 and infinite-order generator in turn: the
/// associated pairs and rooted 2-balls must be isomorphic, and the word map
/// must invert on group elements.
pub fn verify_eliminations(family: &[DefiningGraph], words: usize, rng: &mut impl Rng) -> Result<Report> {
    let mut report = Report::new();
    for h in family {
        for s0 in 0..h.num_generators() {
            let kind = match h.order(s0) {
                GeneratorOrder::Finite(4) => EliminationKind::Order4,
                GeneratorOrder::Infinite => EliminationKind::Infinite,
                _ => continue,
            };
            let (h2, map) = eliminate(h, s0, kind)?;
            let at = format!("{} eliminate {}", h.render(), h.names()[s0]);
            let pairs = isomorphic(&pair_graph(&associated_pair(h)), &pair_graph(&associated_pair(&h2)), Rooting::Free);
            report.push(Record::check("eliminate.associated_pair_iso", pairs.to_string(), "true", pairs, at.clone()));
            let p = Presentation::raach(h.clone());
            let p2 = Presentation::raach(h2.clone());
            let balls = isomorphic(&ball(&p, 2)?.graph, &ball(&p2, 2)?.graph, Rooting::Rooted);
            report.push(Record::check("eliminate.ball_iso", balls.to_string(), "true", balls, at.clone()));
            let mut bad = None;
            for _ in 0..words {
                let w = random_word(h.num_generators(), 12, rng);
                let back = map.invert(&map.apply(&w));
                if normal_form(&p, &back)? != normal_form(&p, &w)? {
                    bad.get_or_insert(w.clone());
                }
                let w2 = random_word(h2.num_generators(), 12, rng);
                let fwd = map.apply(&map.invert(&w2));
                if normal_form(&p2, &fwd)? != normal_form(&p2, &w2)? {
                    bad.get_or_insert(w2);
                }
            }
            let ok = bad.is_none();
            let witness = match bad {
                None => at,
                Some(w) => format!("{at}; first failing word {}", w.render(h.names())),
            };
            report.push(Record::check("eliminate.round_trip", (words as f64).to_string(), (words as f64).to_string(), ok, witness));
        }
    }
    Ok(report)
}

/// `p ↦ κ_p` sampled on `{k/8}` plus the breakpoints `1/(lcm+1)` and `1/(max+1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConcavityProfile {
    pub points: Vec<(Rational, Rational)>,
    pub concave: bool,
    pub slope_changes: usize,
    /// `κ_p / (1 − p)` is constant on `[1/(max+1), 1)`.
    pub linear_tail: bool,
}

impl ConcavityProfile {
    pub fn holds(&self) -> bool {
        self.concave && self.slope_changes <= 3 && self.linear_tail
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn concavity_profile(g: &LocalGraph, x: usize, y: usize) -> Result<ConcavityProfile> {
    let (dx, dy) = (g.degree(x), g.degree(y));
    let lcm = dx / gcd(dx, dy) * dy;
    let mut grid: Vec<Rational> = (0..=8).map(|k| frac(k, 8)).collect();
    grid.push(frac(1, lcm as i64 + 1));
    let tail_start = frac(1, dx.max(dy) as i64 + 1);
    grid.push(tail_start.clone());
    grid.sort();
    grid.dedup();
    let points: Vec<(Rational, Rational)> = grid
        .into_iter()
        .map(|p| kappa_p(g, x, y, &p).map(|(k, _)| (p, k)))
        .collect::<Result<_>>()?;
    let slopes: Vec<Rational> = points
        .windows(2)
        .map(|w| (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0))
        .collect();
    let concave = slopes.windows(2).all(|s| s[1] <= s[0]);
    let slope_changes = slopes.windows(2).filter(|s| s[1] != s[0]).count();
    let tail: Vec<Rational> = points
        .iter()
        .filter(|(p, _)| p >= &tail_start && p < &Rational::one())
        .map(|(p, k)| k / (Rational::one() - p))
        .collect();
    let linear_tail = tail.windows(2).all(|w| w[0] == w[1]);
    Ok(ConcavityProfile {
        points,
        concave,
        slope_changes,
        linear_tail,
    })
}

/// A random edge at the identity of a random family member, on its radius-4 ball.
pub fn random_family_edge(family: &[DefiningGraph], rng: &mut impl Rng) -> Result<(DefiningGraph, Letter, LocalGraph)> {
    let h = family[rng.gen_range(0..family.len())].clone();
    let letters = associated_pair(&h).letters().to_vec();
    let l = letters[rng.gen_range(0..letters.len())];
    let b = ball(&Presentation::raach(h.clone()), 4)?;
    Ok((h, l, b.graph))
}

/// Concavity and the two Ollivier routes agreeing, on random family edges.
pub fn verify_edge_properties(family: &[DefiningGraph], edges: usize, rng: &mut impl Rng) -> Result<Report> {
    let mut report = Report::new();
    for _ in 0..edges {
        let (h, l, g) = random_family_edge(family, rng)?;
        let at = format!("{} edge e~{}", h.render(), h.letter_name(l));
        let y = first_sphere_vertex(&g, &h, l)?;
        let prof = concavity_profile(&g, g.root(), y)?;
        report.push(Record::check(
            "kappa_p.concave",
            format!("{} slope changes", prof.slope_changes),
            "concave, at most 3 slope changes, linear tail",
            prof.holds(),
            at.clone(),
        ));
        let t = kappa_lly_transport(&g, g.root(), y)?.exact.expect("exact");
        let lp = kappa_lly_laplacian(&g, g.root(), y, &LaplacianKind::Normalized)?
            .exact
            .expect("exact");
        report.push(Record::check("ollivier.lp_equals_transport", lp.clone(), t.clone(), lp == t, at));
    }
    Ok(report)
}

/// `Γ₂ − KΓ ≥ −1e-9` on random integer functions, for sampled family members.
pub fn verify_be_definition(
    family: &[DefiningGraph],
    vertices: usize,
    samples: usize,
    rng: &mut impl Rng,
) -> Result<Report> {
    let mut report = Report::new();
    for _ in 0..vertices {
        let h = &family[rng.gen_range(0..family.len())];
        let g = ball(&Presentation::raach(h.clone()), 2)?.graph;
        for kind in [LaplacianKind::NonNormalized, LaplacianKind::Normalized] {
            let r = bakry_emery(&g, g.root(), &kind)?;
            let c = verify_bakry_emery(&g, g.root(), &kind, &r, samples, rng)?;
            report.push(Record::check(
                "bakry_emery.definition",
                c.min_gap,
                -1e-9,
                c.holds(1e-9, 1e-6),
                format!("{} {kind:?}; witness gap {:e}", h.render(), c.witness_gap),
            ));
        }
    }
    Ok(report)
}

/// Curvature is the same at every vertex of a finite Cayley graph.
#[derive(Clone, Debug, PartialEq)]
pub struct TransitivitySpread {
    pub k_min: f64,
    pub k_max: f64,
    /// Sorted edge curvatures around each vertex all agree.
    pub edge_multisets_agree: bool,
}

impl TransitivitySpread {
    pub fn spread(&self) -> f64 {
        self.k_max - self.k_min
    }
}

pub fn transitivity_spread(g: &LocalGraph, kind: &LaplacianKind) -> Result<TransitivitySpread> {
    let mut k_min = f64::INFINITY;
    let mut k_max = f64::NEG_INFINITY;
    let mut reference: Option<Vec<Rational>> = None;
    let mut agree = true;
    for x in 0..g.len() {
        let k = bakry_emery(g, x, kind)?.value;
        k_min = k_min.min(k);
        k_max = k_max.max(k);
        let mut around: Vec<Rational> = g
            .neighbors(x)
            .iter()
            .map(|e| kappa_lly_laplacian(g, x, e.to, kind).map(|r| r.exact.unwrap_or_else(Rational::zero)))
            .collect::<Result<_>>()?;
        around.sort();
        match &reference {
            None => reference = Some(around),
            Some(r) => agree &= *r == around,
        }
    }
    Ok(TransitivitySpread {
        k_min,
        k_max,
        edge_multisets_agree: agree,
    })
}
