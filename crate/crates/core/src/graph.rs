//! Finite rooted weighted graphs.
//!
//! A [`LocalGraph`] is either a whole finite graph (`radius == None`) or a
//! ball `B_r(root)` of some larger graph. In the latter case every vertex at
//! depth `< r` carries all of its neighbours, edges between two vertices of
//! the outer sphere are absent, and distances are trustworthy only near the
//! root; [`LocalGraph::certifies`] tells whether `B_k(v)` is complete.

use std::collections::VecDeque;
use std::fmt::Write as _;

use num::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentation::{letter_name, Letter};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub to: usize,
    pub weight: Rational,
    /// Letters `s` with `from * s = to`; more than one when generators merge.
    pub label: Vec<Letter>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalGraph {
    names: Vec<String>,
    root: usize,
    depth: Vec<u32>,
    measure: Vec<Rational>,
    adj: Vec<Vec<Edge>>,
    radius: Option<u32>,
    alphabet: Vec<String>,
}

/// Incremental construction; edges are undirected and deduplicated.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    names: Vec<String>,
    adj: Vec<Vec<Edge>>,
    alphabet: Vec<String>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_alphabet(alphabet: Vec<String>) -> Self {
        GraphBuilder {
            alphabet,
            ..Self::default()
        }
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> usize {
        self.names.push(name.into());
        self.adj.push(Vec::new());
        self.names.len() - 1
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Adds `u -- v`, or extends labels if the edge exists. `label` is the
    /// letter taking `u` to `v`; its inverse is recorded on `v -> u`.
    pub fn add_edge(&mut self, u: usize, v: usize, weight: Rational, label: Option<Letter>) -> Result<()> {
        if u == v {
            return Err(Error::invalid(format!("loop at vertex {u}")));
        }
        for (a, b, l) in [(u, v, label), (v, u, label.map(Letter::inv))] {
            match self.adj[a].iter_mut().find(|e| e.to == b) {
                Some(e) => {
                    if e.weight != weight {
                        return Err(Error::invalid(format!("conflicting weights on edge {u}-{v}")));
                    }
                    if let Some(l) = l {
                        if !e.label.contains(&l) {
                            e.label.push(l);
                        }
                    }
                }
                None => self.adj[a].push(Edge {
                    to: b,
                    weight: weight.clone(),
                    label: l.into_iter().collect(),
                }),
            }
        }
        Ok(())
    }

    /// Adds a directed label to an existing edge.
    pub fn add_label(&mut self, u: usize, v: usize, label: Letter) {
        if let Some(e) = self.adj[u].iter_mut().find(|e| e.to == v) {
            if !e.label.contains(&label) {
                e.label.push(label);
            }
        }
    }

    pub fn build(self, root: usize, radius: Option<u32>) -> LocalGraph {
        let n = self.names.len();
        let mut adj = self.adj;
        for list in adj.iter_mut() {
            list.sort_by_key(|e| e.to);
            for e in list.iter_mut() {
                e.label.sort();
            }
        }
        let mut g = LocalGraph {
            names: self.names,
            root,
            depth: vec![u32::MAX; n],
            measure: vec![Rational::one(); n],
            adj,
            radius,
            alphabet: self.alphabet,
        };
        g.recompute_depth();
        g
    }
}

impl LocalGraph {
    /// Whole unweighted graph on `0..n`, rooted at 0.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut b = GraphBuilder::new();
        for i in 0..n {
            b.add_vertex(i.to_string());
        }
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid("edge endpoint out of range"));
            }
            b.add_edge(u, v, Rational::one(), None)?;
        }
        Ok(b.build(0, None))
    }

    /// Whole weighted graph on `0..n` with the given vertex measure.
    pub fn from_weighted_edges(
        n: usize,
        edges: &[(usize, usize, Rational)],
        measure: Vec<Rational>,
    ) -> Result<Self> {
        if measure.len() != n || measure.iter().any(|m| m <= &Rational::zero()) {
            return Err(Error::invalid("vertex measure must be positive on every vertex"));
        }
        let mut b = GraphBuilder::new();
        for i in 0..n {
            b.add_vertex(i.to_string());
        }
        for (u, v, w) in edges {
            if *u >= n || *v >= n {
                return Err(Error::invalid("edge endpoint out of range"));
            }
            if w <= &Rational::zero() {
                return Err(Error::invalid("edge weights must be positive"));
            }
            b.add_edge(*u, *v, w.clone(), None)?;
        }
        let mut g = b.build(0, None);
        g.measure = measure;
        Ok(g)
    }

    fn recompute_depth(&mut self) {
        self.depth = self
            .bfs(self.root, None)
            .into_iter()
            .map(|d| d.unwrap_or(u32::MAX))
            .collect();
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn radius(&self) -> Option<u32> {
        self.radius
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn depth(&self, v: usize) -> u32 {
        self.depth[v]
    }

    pub fn measure(&self, v: usize) -> &Rational {
        &self.measure[v]
    }

    pub fn neighbors(&self, v: usize) -> &[Edge] {
        &self.adj[v]
    }

    /// Number of neighbours.
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Sum of incident edge weights.
    pub fn weighted_degree(&self, v: usize) -> Rational {
        self.adj[v].iter().map(|e| &e.weight).sum()
    }

    pub fn edge(&self, u: usize, v: usize) -> Option<&Edge> {
        self.adj[u]
            .binary_search_by_key(&v, |e| e.to)
            .ok()
            .map(|i| &self.adj[u][i])
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.edge(u, v).is_some()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Undirected edges `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, list) in self.adj.iter().enumerate() {
            for e in list {
                if u < e.to {
                    out.push((u, e.to));
                }
            }
        }
        out
    }

    /// Whether `B_k(v)` together with its incident edges is complete.
    pub fn certifies(&self, v: usize, k: u32) -> bool {
        match self.radius {
            None => true,
            Some(r) => self.depth[v] != u32::MAX && self.depth[v] + k <= r,
        }
    }

    pub fn require(&self, v: usize, k: u32) -> Result<()> {
        if self.certifies(v, k) {
            Ok(())
        } else {
            Err(Error::Radius(format!(
                "need B_{k} around vertex {} (depth {}), ball radius is {:?}",
                self.names[v], self.depth[v], self.radius
            )))
        }
    }

    /// Hop distances from `v`, optionally truncated at `max`.
    pub fn bfs(&self, v: usize, max: Option<u32>) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.len()];
        let mut queue = VecDeque::new();
        dist[v] = Some(0);
        queue.push_back(v);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].expect("queued vertices have distances");
            if max.is_some_and(|m| d >= m) {
                continue;
            }
            for e in &self.adj[u] {
                if dist[e.to].is_none() {
                    dist[e.to] = Some(d + 1);
                    queue.push_back(e.to);
                }
            }
        }
        dist
    }

    /// Vertices at distance exactly 1 and 2 from `v`, in index order.
    pub fn spheres(&self, v: usize) -> (Vec<usize>, Vec<usize>) {
        let dist = self.bfs(v, Some(2));
        let mut s1 = Vec::new();
        let mut s2 = Vec::new();
        for (u, d) in dist.iter().enumerate() {
            match d {
                Some(1) => s1.push(u),
                Some(2) => s2.push(u),
                _ => {}
            }
        }
        (s1, s2)
    }

    /// Incomplete `k`-ball around `center` as a new graph rooted at its first
    /// vertex; vertex order follows BFS from `center`. Measures and weights
    /// are kept.
    pub fn sub_ball(&self, center: usize, k: u32) -> LocalGraph {
        self.ball_around(center, k, false)
    }

    /// Like [`sub_ball`](Self::sub_ball) but keeps edges between two vertices at distance `k`.
    pub fn induced_ball(&self, center: usize, k: u32) -> LocalGraph {
        self.ball_around(center, k, true)
    }

    fn ball_around(&self, center: usize, k: u32, keep_outer: bool) -> LocalGraph {
        let dist = self.bfs(center, Some(k));
        let mut order: Vec<usize> = (0..self.len()).filter(|&u| dist[u].is_some()).collect();
        order.sort_by_key(|&u| (dist[u], u));
        let mut index = vec![usize::MAX; self.len()];
        for (i, &u) in order.iter().enumerate() {
            index[u] = i;
        }
        let mut b = GraphBuilder::with_alphabet(self.alphabet.clone());
        for &u in &order {
            b.add_vertex(self.names[u].clone());
        }
        for &u in &order {
            for e in &self.adj[u] {
                let v = e.to;
                if index[v] == usize::MAX || u > v {
                    continue;
                }
                if !keep_outer && dist[u] == Some(k) && dist[v] == Some(k) {
                    continue;
                }
                b.add_edge(index[u], index[v], e.weight.clone(), None)
                    .expect("sub-ball edges are consistent");
                for &l in &e.label {
                    b.add_label(index[u], index[v], l);
                    b.add_label(index[v], index[u], l.inv());
                }
            }
        }
        let mut g = b.build(0, Some(k));
        g.measure = order.iter().map(|&u| self.measure[u].clone()).collect();
        g
    }

    /// Replaces every edge weight via `f(u, v, edge)`; must stay symmetric and positive.
    pub fn reweighted(&self, mut f: impl FnMut(usize, &Edge) -> Rational) -> Result<LocalGraph> {
        let mut g = self.clone();
        for u in 0..g.len() {
            for i in 0..g.adj[u].len() {
                let w = f(u, &self.adj[u][i]);
                if w <= Rational::zero() {
                    return Err(Error::invalid("edge weights must be positive"));
                }
                g.adj[u][i].weight = w;
            }
        }
        for u in 0..g.len() {
            for e in &g.adj[u] {
                if g.edge(e.to, u).map(|b| &b.weight) != Some(&e.weight) {
                    return Err(Error::invalid("edge weights are not symmetric"));
                }
            }
        }
        Ok(g)
    }

    pub fn with_measure(mut self, measure: Vec<Rational>) -> Result<LocalGraph> {
        if measure.len() != self.len() || measure.iter().any(|m| m <= &Rational::zero()) {
            return Err(Error::invalid("vertex measure must be positive on every vertex"));
        }
        self.measure = measure;
        Ok(self)
    }

    pub fn with_root(mut self, root: usize) -> LocalGraph {
        self.root = root;
        self.recompute_depth();
        self
    }

    /// Vertex reached from `v` along the letter `l`, if present.
    pub fn follow(&self, v: usize, l: Letter) -> Option<usize> {
        self.adj[v].iter().find(|e| e.label.contains(&l)).map(|e| e.to)
    }

    fn label_text(&self, label: &[Letter]) -> String {
        if self.alphabet.is_empty() {
            return String::new();
        }
        label
            .iter()
            .map(|&l| letter_name(&self.alphabet, l))
            .collect::<Vec<_>>()
            .join("|")
    }

    /// Graphviz export; each undirected edge once, labelled from the lower index.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph cayley {\n");
        let _ = writeln!(out, "  // format: curvachay-dot v1");
        for (i, name) in self.names.iter().enumerate() {
            let root = if i == self.root { ", shape=doublecircle" } else { "" };
            let _ = writeln!(out, "  {i} [label=\"{}\"{root}];", name.replace('"', "'"));
        }
        for (u, v) in self.edges() {
            let e = self.edge(u, v).expect("listed edge exists");
            let _ = writeln!(
                out,
                "  {u} -- {v} [label=\"{}\", weight=\"{}\"];",
                self.label_text(&e.label),
                rational::format(&e.weight)
            );
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct V<'a> {
            id: usize,
            name: &'a str,
            depth: u32,
            measure: String,
        }
        #[derive(Serialize)]
        struct E {
            u: usize,
            v: usize,
            weight: String,
            label: Vec<String>,
        }
        #[derive(Serialize)]
        struct G<'a> {
            schema: &'static str,
            root: usize,
            radius: Option<u32>,
            vertices: Vec<V<'a>>,
            edges: Vec<E>,
        }
        let vertices = (0..self.len())
            .map(|i| V {
                id: i,
                name: &self.names[i],
                depth: self.depth[i],
                measure: rational::format(&self.measure[i]),
            })
            .collect();
        let edges = self
            .edges()
            .into_iter()
            .map(|(u, v)| {
                let e = self.edge(u, v).expect("listed edge exists");
                E {
                    u,
                    v,
                    weight: rational::format(&e.weight),
                    label: e
                        .label
                        .iter()
                        .map(|&l| {
                            if self.alphabet.is_empty() {
                                format!("{}{}", l.gen, if l.inverse { "'" } else { "" })
                            } else {
                                letter_name(&self.alphabet, l)
                            }
                        })
                        .collect(),
                }
            })
            .collect();
        serde_json::to_value(G {
            schema: "curvachay-graph/1",
            root: self.root,
            radius: self.radius,
            vertices,
            edges,
        })
        .expect("graph serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn cycle(n: usize) -> LocalGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        LocalGraph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn rejects_loops_and_bad_weights() {
        assert!(LocalGraph::from_edges(2, &[(0, 0)]).is_err());
        assert!(LocalGraph::from_weighted_edges(2, &[(0, 1, int(0))], vec![int(1); 2]).is_err());
        assert!(LocalGraph::from_weighted_edges(2, &[(0, 1, int(1))], vec![int(1)]).is_err());
    }

    #[test]
    fn parallel_edges_collapse() {
        let g = LocalGraph::from_edges(2, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.num_edges(), 1);
        assert_eq!(g.degree(0), 1);
    }

    #[test]
    fn sub_ball_drops_outer_sphere_edges() {
        let g = cycle(5);
        let b = g.sub_ball(0, 2);
        assert_eq!(b.len(), 5);
        // the edge between the two vertices at distance 2 is gone
        assert_eq!(b.num_edges(), 4);
        assert!(b.certifies(0, 2));
        assert!(!b.certifies(1, 2));
    }

    #[test]
    fn spheres_of_cycle() {
        let (s1, s2) = cycle(6).spheres(0);
        assert_eq!(s1, vec![1, 5]);
        assert_eq!(s2, vec![2, 4]);
    }

    #[test]
    fn dot_lists_each_edge_once() {
        let dot = cycle(3).to_dot();
        assert_eq!(dot.matches(" -- ").count(), 3);
    }
}
