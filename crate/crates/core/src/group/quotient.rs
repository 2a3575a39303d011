//! Vertex maps induced by adding relators, `Cay(<S|R>) -> Cay(<S|R'>)` with `R ⊆ R'`.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::LocalGraph;
use crate::presentation::{Letter, Presentation};

use super::cayley::cayley_from_cosets;
use super::todd_coxeter::CosetTable;

/// Source of the map: a finite coset table or a labelled ball.
#[derive(Clone, Copy, Debug)]
pub enum QuotientDomain<'a> {
    Table(&'a CosetTable),
    Graph(&'a LocalGraph),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMap {
    pub images: Vec<usize>,
    pub surjective: bool,
}

/// Builds the vertex map `g -> g N` and checks it is 1-Lipschitz for the
/// word metrics. `codomain` must be the coset table of `target`.
pub fn quotient_map(
    source: &Presentation,
    target: &Presentation,
    domain: QuotientDomain<'_>,
    codomain: &CosetTable,
) -> Result<VertexMap> {
    if source.alphabet() != target.alphabet() || codomain.alphabet() != target.alphabet() {
        return Err(Error::invalid("presentations use different alphabets"));
    }
    if !source.relators_contained_in(target) {
        return Err(Error::invalid("relators of the source are not all relators of the target"));
    }
    let n = match domain {
        QuotientDomain::Table(t) => t.len(),
        QuotientDomain::Graph(g) => g.len(),
    };
    let mut images = vec![usize::MAX; n];
    let root = match domain {
        QuotientDomain::Table(_) => 0,
        QuotientDomain::Graph(g) => g.root(),
    };
    images[root] = 0;
    let mut queue = VecDeque::from([root]);
    let columns = 2 * source.num_generators();
    while let Some(u) = queue.pop_front() {
        let steps: Vec<(usize, Letter)> = match domain {
            QuotientDomain::Table(t) => (0..columns)
                .map(|c| (t.act(u, Letter::from_column(c)), Letter::from_column(c)))
                .collect(),
            QuotientDomain::Graph(g) => g
                .neighbors(u)
                .iter()
                .flat_map(|e| e.label.iter().map(move |&l| (e.to, l)))
                .collect(),
        };
        for (v, l) in steps {
            let img = codomain.act(images[u], l);
            if images[v] == usize::MAX {
                images[v] = img;
                queue.push_back(v);
            } else if images[v] != img {
                return Err(Error::Internal(format!(
                    "vertex map is not well defined at vertex {v}"
                )));
            }
        }
    }
    if images.contains(&usize::MAX) {
        return Err(Error::invalid("domain graph is not connected through labelled edges"));
    }

    let domain_dist: Vec<Vec<Option<u32>>> = match domain {
        QuotientDomain::Table(t) => {
            let g = cayley_from_cosets(t)?;
            (0..n).map(|u| g.bfs(u, None)).collect()
        }
        QuotientDomain::Graph(g) => (0..n).map(|u| g.bfs(u, None)).collect(),
    };
    let target_graph = cayley_from_cosets(codomain)?;
    let target_dist: Vec<Vec<Option<u32>>> = (0..codomain.len()).map(|u| target_graph.bfs(u, None)).collect();
    for u in 0..n {
        for v in 0..n {
            let (Some(d), Some(d2)) = (domain_dist[u][v], target_dist[images[u]][images[v]]) else {
                continue;
            };
            if d2 > d {
                return Err(Error::Internal(format!(
                    "vertex map stretches the pair ({u}, {v}) from {d} to {d2}"
                )));
            }
        }
    }
    let mut hit = vec![false; codomain.len()];
    for &i in &images {
        hit[i] = true;
    }
    Ok(VertexMap {
        images,
        surjective: hit.into_iter().all(|b| b),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::ball::ball;
    use crate::group::todd_coxeter::enumerate_cosets;
    use crate::presentation::parse_presentation;

    #[test]
    fn z4_onto_z2() {
        let p = parse_presentation("group <a | a^4>").unwrap();
        let q = p.with_relators([p.parse_word("a^2").unwrap()]).unwrap();
        let t = enumerate_cosets(&p, 100).unwrap();
        let t2 = enumerate_cosets(&q, 100).unwrap();
        let m = quotient_map(&p, &q, QuotientDomain::Table(&t), &t2).unwrap();
        assert!(m.surjective);
        assert_eq!(m.images.iter().filter(|&&i| i == 0).count(), 2);
    }

    #[test]
    fn ball_of_z2_onto_torus() {
        let p = parse_presentation("raach { a:inf, b:inf; commute (a,b); }").unwrap();
        let b = ball(&p, 3).unwrap();
        let q = p
            .with_relators([p.parse_word("a^3").unwrap(), p.parse_word("b^2").unwrap()])
            .unwrap();
        let t = enumerate_cosets(&q, 100).unwrap();
        let m = quotient_map(&p, &q, QuotientDomain::Graph(&b.graph), &t).unwrap();
        assert_eq!(t.len(), 6);
        assert!(m.surjective);
    }

    #[test]
    fn rejects_mismatches() {
        let p = parse_presentation("group <a | a^4>").unwrap();
        let other = parse_presentation("group <b | b^2>").unwrap();
        let t = enumerate_cosets(&other, 10).unwrap();
        let tp = enumerate_cosets(&p, 10).unwrap();
        assert!(quotient_map(&p, &other, QuotientDomain::Table(&tp), &t).is_err());
        let q = parse_presentation("group <a | a^2>").unwrap();
        let tq = enumerate_cosets(&q, 10).unwrap();
        // a^4 is not among the relators of <a | a^2>
        assert!(matches!(
            quotient_map(&p, &q, QuotientDomain::Table(&tp), &tq),
            Err(Error::InvalidInput(_))
        ));
    }
}
