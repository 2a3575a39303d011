//! Weighted curvature under added relators.
//!
//! Merged generators need merged weights: the edge of `G'` that absorbs
//! several generators of `G` carries the sum of their weights. Under that
//! scheme the weighted Laplacians intertwine with the quotient map and both
//! curvatures can only go up.

use num::{One, Signed, Zero};
use rand::Rng;

use crate::curvature::{bakry_emery, kappa_lly_laplacian, laplacian_apply, LaplacianKind};
use crate::error::{Error, Result};
use crate::graph::LocalGraph;
use crate::group::cayley::{cayley_from_cosets_weighted, letter_classes, LetterClasses};
use crate::group::quotient::{quotient_map, QuotientDomain};
use crate::group::todd_coxeter::{enumerate_cosets, CosetTable};
use crate::presentation::{Letter, Presentation};
use crate::rational::{self, int, Rational};
use crate::report::{Record, Report, Status};

/// Left-invariant edge weights: one positive weight per generator class.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightingScheme {
    pub classes: Vec<Vec<Letter>>,
    pub weights: Vec<Rational>,
}

impl WeightingScheme {
    pub fn uniform(classes: &LetterClasses) -> Self {
        WeightingScheme {
            classes: classes.classes.clone(),
            weights: vec![Rational::one(); classes.classes.len()],
        }
    }

    pub fn new(classes: Vec<Vec<Letter>>, weights: Vec<Rational>) -> Result<Self> {
        let w = WeightingScheme { classes, weights };
        w.validate()?;
        Ok(w)
    }

    pub fn weight(&self, l: Letter) -> Option<&Rational> {
        self.classes.iter().position(|c| c.contains(&l)).map(|k| &self.weights[k])
    }

    /// Positivity and `w(s) = w(s⁻¹)`.
    pub fn validate(&self) -> Result<()> {
        if self.classes.len() != self.weights.len() {
            return Err(Error::invalid("one weight per generator class"));
        }
        for (c, w) in self.classes.iter().zip(&self.weights) {
            if !w.is_positive() {
                return Err(Error::invalid("weights must be positive"));
            }
            if let Some(wi) = self.weight(c[0].inv()) {
                if wi != w {
                    return Err(Error::invalid("weights must be symmetric under inversion"));
                }
            }
        }
        Ok(())
    }

    pub fn describe(&self, alphabet: &[String]) -> String {
        self.classes
            .iter()
            .zip(&self.weights)
            .map(|(c, w)| {
                let names: Vec<String> = c.iter().map(|&l| crate::presentation::letter_name(alphabet, l)).collect();
                format!("[{}]={}", names.join("|"), rational::format(w))
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Sums `w0` over the source classes landing in each target class. Classes
/// that collapse to the identity contribute nothing.
pub fn adapt(w0: &WeightingScheme, target: &LetterClasses) -> WeightingScheme {
    let mut weights = vec![Rational::zero(); target.classes.len()];
    for (c, w) in w0.classes.iter().zip(&w0.weights) {
        if let Some(k) = target.class_of(c[0]) {
            weights[k] += w;
        }
    }
    WeightingScheme {
        classes: target.classes.clone(),
        weights,
    }
}

pub fn adapted_weights(
    source: &Presentation,
    target: &Presentation,
    w0: &WeightingScheme,
    max_cosets: usize,
) -> Result<WeightingScheme> {
    if !source.relators_contained_in(target) {
        return Err(Error::invalid("relators of the source are not all relators of the target"));
    }
    let t2 = enumerate_cosets(target, max_cosets)?;
    Ok(adapt(w0, &letter_classes(&t2)))
}

pub fn weighted_cayley(t: &CosetTable, w: &WeightingScheme) -> Result<LocalGraph> {
    cayley_from_cosets_weighted(t, |c| w.weight(c[0]).cloned().unwrap_or_else(Rational::one))
}

/// Checks `m = m'∘Φ` and `w'(Φx, y') = Σ_{Φy = y'} w(x, y)` at every vertex,
/// then the intertwining `Δ(f'∘Φ)(x) = Δ'f'(Φx)` on random `f'`.
pub fn lipschitz_quotient_check(
    g: &LocalGraph,
    g2: &LocalGraph,
    phi: &[usize],
    samples: usize,
    rng: &mut impl Rng,
) -> Result<Report> {
    if phi.len() != g.len() || phi.iter().any(|&v| v >= g2.len()) {
        return Err(Error::invalid("vertex map does not fit the graphs"));
    }
    let mut report = Report::new();
    let mut hit = vec![false; g2.len()];
    phi.iter().for_each(|&v| hit[v] = true);
    let missing = hit.iter().filter(|&&h| !h).count();
    report.push(Record::check("quotient.surjective", int(missing as i64), int(0), missing == 0, "map"));
    let mut hypotheses = true;
    for x in 0..g.len() {
        let xi = phi[x];
        let ok = g.measure(x) == g2.measure(xi);
        hypotheses &= ok;
        if !ok {
            report.push(Record::check(
                "quotient.measure",
                g.measure(x).clone(),
                g2.measure(xi).clone(),
                false,
                format!("vertex {}", g.name(x)),
            ));
        }
        for e2 in g2.neighbors(xi) {
            let sum: Rational = g.neighbors(x).iter().filter(|e| phi[e.to] == e2.to).map(|e| e.weight.clone()).sum();
            let ok = sum == e2.weight;
            hypotheses &= ok;
            if !ok {
                report.push(Record::check(
                    "quotient.edge_weights",
                    sum,
                    e2.weight.clone(),
                    false,
                    format!("vertex {} towards {}", g.name(x), g2.name(e2.to)),
                ));
            }
        }
        // neighbours must land on neighbours or on the image itself
        for e in g.neighbors(x) {
            let y2 = phi[e.to];
            if y2 != xi && !g2.adjacent(xi, y2) {
                hypotheses = false;
                report.push(Record::check(
                    "quotient.lipschitz",
                    g2.name(y2),
                    "neighbour of the image",
                    false,
                    format!("edge {} {}", g.name(x), g.name(e.to)),
                ));
            }
        }
    }
    if hypotheses {
        report.push(Record::check("quotient.hypotheses", "hold", "hold", true, "map"));
    }
    let kind = LaplacianKind::Weighted;
    let mut failures = 0usize;
    let mut first_failure = None;
    for k in 0..samples {
        let f2: Vec<Rational> = (0..g2.len())
            .map(|_| Rational::new(rng.gen_range(-20..=20).into(), rng.gen_range(1..=6).into()))
            .collect();
        let f = |v: usize| Some(f2[phi[v]].clone());
        let f2f = |v: usize| f2.get(v).cloned();
        for x in 0..g.len() {
            let lhs = laplacian_apply(g, &kind, &f, x)?;
            let rhs = laplacian_apply(g2, &kind, &f2f, phi[x])?;
            if lhs != rhs {
                failures += 1;
                first_failure.get_or_insert((k, x, lhs, rhs));
            }
        }
    }
    match first_failure {
        None => report.push(Record::check(
            "quotient.laplacian_intertwining",
            int(samples as i64),
            int(samples as i64),
            true,
            format!("{samples} functions, {} vertices", g.len()),
        )),
        Some((k, x, lhs, rhs)) => report.push(Record::check(
            "quotient.laplacian_intertwining",
            lhs,
            rhs,
            false,
            format!("sample {k} at vertex {} ({failures} mismatches)", g.name(x)),
        )),
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Weighting {
    /// Target weights from [`adapt`].
    Adapted,
    /// Unit weights on both sides.
    Unweighted,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MonotonicityOutcome {
    pub source_weights: WeightingScheme,
    pub target_weights: WeightingScheme,
    pub source_k: f64,
    pub target_k: f64,
    /// `(edge at the identity, κ in G, κ' in G')`.
    pub kappas: Vec<(String, Rational, Rational)>,
    pub hypotheses_hold: bool,
    pub report: Report,
}

impl MonotonicityOutcome {
    pub fn curvature_monotone(&self, slack: f64) -> bool {
        self.target_k >= self.source_k - slack && self.kappas.iter().all(|(_, k, k2)| k2 >= k)
    }
}

/// Compares weighted curvatures of `Cay(<S|R>)` and `Cay(<S|R'>)`.
/// Hypothesis failures are reported under their own claims, apart from
/// curvature decreases.
pub fn monotonicity_check(
    name: &str,
    source: &Presentation,
    target: &Presentation,
    w0: Option<WeightingScheme>,
    weighting: Weighting,
    max_cosets: usize,
    rng: &mut impl Rng,
) -> Result<MonotonicityOutcome> {
    let t = enumerate_cosets(source, max_cosets)?;
    let t2 = enumerate_cosets(target, max_cosets)?;
    let lc = letter_classes(&t);
    let lc2 = letter_classes(&t2);
    let w0 = w0.unwrap_or_else(|| WeightingScheme::uniform(&lc));
    w0.validate()?;
    let w1 = match weighting {
        Weighting::Adapted => adapt(&w0, &lc2),
        Weighting::Unweighted => WeightingScheme::uniform(&lc2),
    };
    if w1.classes.is_empty() {
        return Err(Error::invalid("every generator collapses in the target"));
    }
    let map = quotient_map(source, target, QuotientDomain::Table(&t), &t2)?;
    let g = weighted_cayley(&t, &w0)?;
    let g2 = weighted_cayley(&t2, &w1)?;
    let tag = match weighting {
        Weighting::Adapted => "weighted",
        Weighting::Unweighted => "unweighted",
    };
    let mut report = Report::new();
    let hyp = lipschitz_quotient_check(&g, &g2, &map.images, 20, rng)?;
    let hypotheses_hold = !hyp.any_violated();
    for mut r in hyp.records {
        r.claim = format!("monotonicity.hypothesis.{}", r.claim.trim_start_matches("quotient."));
        r.witness_ref = format!("{name} {tag}: {}", r.witness_ref);
        if weighting == Weighting::Unweighted && r.status == Status::Violated {
            // expected: unit weights ignore merging
            r.status = Status::Skipped;
        }
        report.push(r);
    }

    let kind = LaplacianKind::Weighted;
    let k = bakry_emery(&g, 0, &kind)?;
    let k2 = bakry_emery(&g2, map.images[0], &kind)?;
    let mut kappas = Vec::new();
    for e in g.neighbors(0) {
        let (x2, y2) = (map.images[0], map.images[e.to]);
        if x2 == y2 {
            continue;
        }
        let a = kappa_lly_laplacian(&g, 0, e.to, &kind)?.exact.expect("exact LP value");
        let b = kappa_lly_laplacian(&g2, x2, y2, &kind)?.exact.expect("exact LP value");
        kappas.push((format!("{} ~ {}", g.name(0), g.name(e.to)), a, b));
    }
    let out_status = |ok: bool| match (ok, weighting) {
        (true, _) => Status::Pass,
        (false, Weighting::Adapted) => Status::Violated,
        // the decrease is the point of the unweighted run
        (false, Weighting::Unweighted) => Status::Skipped,
    };
    report.push(Record::new(
        format!("monotonicity.{tag}.bakry_emery"),
        k2.value,
        k.value,
        out_status(k2.value >= k.value - 1e-9),
        format!("{name}: K(G') >= K(G)"),
    ));
    for (edge, a, b) in &kappas {
        report.push(Record::new(
            format!("monotonicity.{tag}.ollivier"),
            b.clone(),
            a.clone(),
            out_status(b >= a),
            format!("{name}: edge {edge}"),
        ));
    }
    Ok(MonotonicityOutcome {
        source_weights: w0,
        target_weights: w1,
        source_k: k.value,
        target_k: k2.value,
        kappas,
        hypotheses_hold,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_group_body;
    use crate::rational::frac;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pres(text: &str) -> Presentation {
        parse_group_body(text).unwrap()
    }

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(3)
    }

    #[test]
    fn z4_pair_weights() {
        let p = pres("<a,b | a^4, b^-1 a^2>");
        let p2 = pres("<a,b | a^4, b^-1 a^2, a^2>");
        let t = enumerate_cosets(&p, 100).unwrap();
        let w0 = WeightingScheme::uniform(&letter_classes(&t));
        let w1 = adapted_weights(&p, &p2, &w0, 100).unwrap();
        assert_eq!(w1.classes.len(), 1);
        assert_eq!(w1.weights, vec![int(2)]);
        assert!(adapted_weights(&p2, &p, &w0, 100).is_err());
        let same = adapted_weights(&p, &p, &w0, 100).unwrap();
        assert_eq!(same, w0);
    }

    #[test]
    fn z4_pair_monotone_only_with_weights() {
        let p = pres("<a,b | a^4, b^-1 a^2>");
        let p2 = pres("<a,b | a^4, b^-1 a^2, a^2>");
        let w = monotonicity_check("z4", &p, &p2, None, Weighting::Adapted, 100, &mut rng()).unwrap();
        assert!(w.hypotheses_hold);
        assert!((w.source_k - 3.0).abs() < 1e-9 && (w.target_k - 4.0).abs() < 1e-9);
        assert!(w.kappas.iter().all(|(_, a, b)| *a == int(4) && *b == int(4)));
        assert!(!w.report.any_violated());
        let u = monotonicity_check("z4", &p, &p2, None, Weighting::Unweighted, 100, &mut rng()).unwrap();
        assert!((u.target_k - 2.0).abs() < 1e-9);
        assert!(u.kappas.iter().all(|(_, a, b)| *a == int(4) && *b == int(2)));
        assert!(!u.curvature_monotone(1e-9));
        assert!(!u.hypotheses_hold);
    }

    #[test]
    fn cyclic_pair_keeps_letters_apart() {
        let p = pres("<a | a^6>");
        let p2 = pres("<a | a^6, a^3>");
        let out = monotonicity_check("z6", &p, &p2, None, Weighting::Adapted, 100, &mut rng()).unwrap();
        assert_eq!(out.target_weights.weights, vec![int(1), int(1)]);
        assert!(out.curvature_monotone(1e-9));
        let id = monotonicity_check("z6", &p, &p, None, Weighting::Adapted, 100, &mut rng()).unwrap();
        assert!((id.source_k - id.target_k).abs() < 1e-12);
        assert!(id.kappas.iter().all(|(_, a, b)| a == b));
    }

    #[test]
    fn free_letter_stays_distinct_in_z3() {
        let p = pres("<a | >");
        let p2 = pres("<a | a^3>");
        let w0 = WeightingScheme {
            classes: vec![vec![Letter::new(0, false)], vec![Letter::new(0, true)]],
            weights: vec![int(1), int(1)],
        };
        let w1 = adapted_weights(&p, &p2, &w0, 100).unwrap();
        assert_eq!(w1.weights, vec![int(1), int(1)]);
    }

    #[test]
    fn asymmetric_weights_rejected() {
        let w = WeightingScheme::new(
            vec![vec![Letter::new(0, false)], vec![Letter::new(0, true)]],
            vec![int(1), int(2)],
        );
        assert!(w.is_err());
    }

    fn cycle(n: usize, w: i64) -> LocalGraph {
        let e: Vec<(usize, usize, Rational)> = (0..n).map(|i| (i, (i + 1) % n, int(w))).collect();
        LocalGraph::from_weighted_edges(n, &e, vec![int(1); n]).unwrap()
    }

    #[test]
    fn intertwining_examples() {
        let c6 = cycle(6, 2);
        let id: Vec<usize> = (0..6).collect();
        assert!(!lipschitz_quotient_check(&c6, &c6, &id, 10, &mut rng()).unwrap().any_violated());
        let c3 = cycle(3, 2);
        let phi: Vec<usize> = (0..6).map(|i| i % 3).collect();
        let r = lipschitz_quotient_check(&c6, &c3, &phi, 100, &mut rng()).unwrap();
        assert!(!r.any_violated(), "{r:?}");
        // perturb one weight of the triangle
        let bad = LocalGraph::from_weighted_edges(
            3,
            &[(0, 1, int(2)), (1, 2, int(2)), (2, 0, frac(5, 2))],
            vec![int(1); 3],
        )
        .unwrap();
        let r = lipschitz_quotient_check(&c6, &bad, &phi, 10, &mut rng()).unwrap();
        assert!(r.violations().any(|v| v.claim == "quotient.edge_weights"));
        assert!(r.violations().any(|v| v.claim == "quotient.laplacian_intertwining"));
    }
}
