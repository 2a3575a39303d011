//! Isomorphism search for small weighted graphs.
//!
//! Colour refinement (seeded by depth from the root, measure and incident
//! weights) prunes the candidates, then backtracking extends a partial map
//! along BFS order, checking adjacency and weights against every mapped
//! vertex. Fine at desk scale.

use std::collections::{BTreeMap, VecDeque};

use crate::graph::LocalGraph;
use crate::presentation::AssociatedPair;
use crate::rational::{int, Rational};

/// How to treat the roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rooting {
    /// Roots must correspond (depths are refined into colours).
    Rooted,
    Free,
}

type Signature = (u64, Rational, Vec<(u64, Rational)>);

/// Stable colours computed jointly on both graphs so they are comparable.
fn refine(g1: &LocalGraph, g2: &LocalGraph, rooting: Rooting) -> (Vec<u64>, Vec<u64>) {
    let init = |g: &LocalGraph| -> Vec<(u32, Rational, Vec<Rational>)> {
        (0..g.len())
            .map(|v| {
                let depth = match rooting {
                    Rooting::Rooted => g.depth(v),
                    Rooting::Free => 0,
                };
                let mut ws: Vec<Rational> = g.neighbors(v).iter().map(|e| e.weight.clone()).collect();
                ws.sort();
                (depth, g.measure(v).clone(), ws)
            })
            .collect()
    };
    let mut ids = BTreeMap::new();
    let mut colour = |key| {
        let next = ids.len() as u64;
        *ids.entry(key).or_insert(next)
    };
    let (a, b) = (init(g1), init(g2));
    let mut c1: Vec<u64> = a.into_iter().map(&mut colour).collect();
    let mut c2: Vec<u64> = b.into_iter().map(&mut colour).collect();
    loop {
        let classes = count_classes(&c1, &c2);
        let mut ids: BTreeMap<Signature, u64> = BTreeMap::new();
        let step = |g: &LocalGraph, c: &[u64]| -> Vec<Signature> {
            (0..g.len())
                .map(|v| {
                    let mut nb: Vec<(u64, Rational)> =
                        g.neighbors(v).iter().map(|e| (c[e.to], e.weight.clone())).collect();
                    nb.sort();
                    (c[v], g.measure(v).clone(), nb)
                })
                .collect()
        };
        let s1 = step(g1, &c1);
        let s2 = step(g2, &c2);
        let mut assign = |s: Signature| {
            let next = ids.len() as u64;
            *ids.entry(s).or_insert(next)
        };
        let n1: Vec<u64> = s1.into_iter().map(&mut assign).collect();
        let n2: Vec<u64> = s2.into_iter().map(&mut assign).collect();
        c1 = n1;
        c2 = n2;
        if count_classes(&c1, &c2) == classes {
            return (c1, c2);
        }
    }
}

fn count_classes(c1: &[u64], c2: &[u64]) -> usize {
    let mut all: Vec<u64> = c1.iter().chain(c2).copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

fn histogram(c: &[u64]) -> BTreeMap<u64, usize> {
    let mut h = BTreeMap::new();
    for &x in c {
        *h.entry(x).or_insert(0) += 1;
    }
    h
}

/// Finds `phi` with `g1 ~ g2` under `u -> phi[u]`, preserving weights and
/// measures (and roots when rooted).
pub fn find_isomorphism(g1: &LocalGraph, g2: &LocalGraph, rooting: Rooting) -> Option<Vec<usize>> {
    if g1.len() != g2.len() || g1.num_edges() != g2.num_edges() {
        return None;
    }
    let n = g1.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let (c1, c2) = refine(g1, g2, rooting);
    if histogram(&c1) != histogram(&c2) {
        return None;
    }
    // BFS order over every component of g1
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let starts = std::iter::once(g1.root()).chain(0..n);
    for s in starts {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for e in g1.neighbors(u) {
                if !seen[e.to] {
                    seen[e.to] = true;
                    queue.push_back(e.to);
                }
            }
        }
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if rooting == Rooting::Rooted && c1[g1.root()] != c2[g2.root()] {
        return None;
    }
    let mut search = Search {
        g1,
        g2,
        c1: &c1,
        c2: &c2,
        order: &order,
        rooting,
    };
    search.extend(0, &mut map, &mut used).then_some(map)
}

struct Search<'a> {
    g1: &'a LocalGraph,
    g2: &'a LocalGraph,
    c1: &'a [u64],
    c2: &'a [u64],
    order: &'a [usize],
    rooting: Rooting,
}

impl Search<'_> {
    fn extend(&mut self, k: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        if k == self.order.len() {
            return true;
        }
        let u = self.order[k];
        let candidates: Vec<usize> = if k == 0 && self.rooting == Rooting::Rooted && u == self.g1.root() {
            vec![self.g2.root()]
        } else if let Some(e) = self.g1.neighbors(u).iter().find(|e| map[e.to] != usize::MAX) {
            self.g2.neighbors(map[e.to]).iter().map(|f| f.to).collect()
        } else {
            (0..self.g2.len()).collect()
        };
        for v in candidates {
            if used[v] || self.c1[u] != self.c2[v] || !self.consistent(u, v, map, used) {
                continue;
            }
            map[u] = v;
            used[v] = true;
            if self.extend(k + 1, map, used) {
                return true;
            }
            map[u] = usize::MAX;
            used[v] = false;
        }
        false
    }

    fn consistent(&self, u: usize, v: usize, map: &[usize], used: &[bool]) -> bool {
        let mapped_nb = self.g1.neighbors(u).iter().filter(|e| map[e.to] != usize::MAX);
        let mut count = 0;
        for e in mapped_nb {
            count += 1;
            match self.g2.edge(v, map[e.to]) {
                Some(f) if f.weight == e.weight => {}
                _ => return false,
            }
        }
        // no extra edges from v into the image
        let image_nb = self
            .g2
            .neighbors(v)
            .iter()
            .filter(|f| used[f.to])
            .count();
        image_nb == count
    }
}

pub fn isomorphic(g1: &LocalGraph, g2: &LocalGraph, rooting: Rooting) -> bool {
    find_isomorphism(g1, g2, rooting).is_some()
}

/// `(H*, w)` as a weighted graph for isomorphism checks.
pub fn pair_graph(p: &AssociatedPair) -> LocalGraph {
    let mut edges = Vec::new();
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            let w = p.weight(i, j);
            if w > 0 {
                edges.push((i, j, int(w as i64)));
            }
        }
    }
    let measure = vec![int(1); p.len()];
    LocalGraph::from_weighted_edges(p.len(), &edges, measure).expect("associated pairs are simple graphs")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> LocalGraph {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        LocalGraph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn relabelled_cycle() {
        let a = cycle(6);
        let b = LocalGraph::from_edges(6, &[(0, 3), (3, 1), (1, 4), (4, 2), (2, 5), (5, 0)]).unwrap();
        let phi = find_isomorphism(&a, &b, Rooting::Rooted).unwrap();
        for (u, v) in a.edges() {
            assert!(b.adjacent(phi[u], phi[v]));
        }
        assert_eq!(phi[0], 0);
    }

    #[test]
    fn distinguishes_two_triangles_from_hexagon() {
        let two = LocalGraph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(!isomorphic(&cycle(6), &two, Rooting::Free));
    }

    #[test]
    fn weights_matter() {
        let a = LocalGraph::from_weighted_edges(2, &[(0, 1, int(2))], vec![int(1); 2]).unwrap();
        let b = LocalGraph::from_weighted_edges(2, &[(0, 1, int(1))], vec![int(1); 2]).unwrap();
        assert!(!isomorphic(&a, &b, Rooting::Free));
        assert!(isomorphic(&a, &a.clone(), Rooting::Free));
    }

    #[test]
    fn rooted_path_respects_root() {
        let p = LocalGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let q = LocalGraph::from_edges(3, &[(0, 1), (0, 2)]).unwrap();
        // root of p is an end, root of q is the middle
        assert!(!isomorphic(&p, &q, Rooting::Rooted));
        assert!(isomorphic(&p, &q, Rooting::Free));
    }
}
