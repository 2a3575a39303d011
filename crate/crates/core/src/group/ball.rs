//! Balls in Cayley graphs of RAACHs, built by breadth-first search over normal forms.

use std::collections::HashMap;

use num::One;

use crate::error::{Error, Result};
use crate::graph::{GraphBuilder, LocalGraph};
use crate::presentation::{DefiningGraph, Presentation};
use crate::rational::Rational;

use super::normal_form::{multiply, GroupElement};

pub const DEFAULT_RADIUS_CAP: u32 = 5;
pub const DEFAULT_VERTEX_CAP: usize = 2_000_000;

#[derive(Clone, Copy, Debug)]
pub struct BallOptions {
    pub radius_cap: u32,
    pub vertex_cap: usize,
}

impl Default for BallOptions {
    fn default() -> Self {
        BallOptions {
            radius_cap: DEFAULT_RADIUS_CAP,
            vertex_cap: DEFAULT_VERTEX_CAP,
        }
    }
}

/// `B_r(e)` with the group element behind every vertex.
#[derive(Clone, Debug)]
pub struct CayleyBall {
    pub graph: LocalGraph,
    pub elements: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
}

impl CayleyBall {
    pub fn vertex_of(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).copied()
    }
}

pub fn ball(p: &Presentation, radius: u32) -> Result<CayleyBall> {
    ball_with(p, radius, BallOptions::default())
}

/// Vertices are numbered layer by layer, each layer sorted by normal form.
/// Edges between two vertices of the outer sphere are omitted. Every edge
/// carries the letter `s` with `u * s = v`.
pub fn ball_with(p: &Presentation, radius: u32, opts: BallOptions) -> Result<CayleyBall> {
    let h = p.require_raach()?;
    if radius == 0 {
        return Err(Error::invalid("ball radius must be at least 1"));
    }
    if radius > opts.radius_cap {
        return Err(Error::invalid(format!(
            "ball radius {radius} exceeds the cap {}",
            opts.radius_cap
        )));
    }
    let letters = h.symmetric_letters();
    let mut elements = vec![GroupElement::identity()];
    let mut index: HashMap<GroupElement, usize> = HashMap::new();
    index.insert(GroupElement::identity(), 0);
    let mut layer = 0..1;
    // (u, v, letter) with u * letter = v
    let mut arcs = Vec::new();
    for _ in 0..radius {
        let mut fresh = Vec::new();
        let mut products = Vec::with_capacity(layer.len() * letters.len());
        for u in layer.clone() {
            for &s in &letters {
                let g = multiply(h, &elements[u], s);
                if !index.contains_key(&g) {
                    index.insert(g.clone(), usize::MAX);
                    fresh.push(g.clone());
                }
                products.push((u, s, g));
            }
        }
        fresh.sort();
        let start = elements.len();
        if start + fresh.len() > opts.vertex_cap {
            return Err(Error::Budget(format!(
                "ball exceeds {} vertices",
                opts.vertex_cap
            )));
        }
        for (i, g) in fresh.iter().enumerate() {
            index.insert(g.clone(), start + i);
        }
        elements.extend(fresh);
        for (u, s, g) in products {
            arcs.push((u, index[&g], s));
        }
        layer = start..elements.len();
    }

    let mut b = GraphBuilder::with_alphabet(h.names().to_vec());
    for g in &elements {
        b.add_vertex(g.render(h));
    }
    for (u, v, s) in arcs {
        add_arc(&mut b, h, u, v, s)?;
    }
    Ok(CayleyBall {
        graph: b.build(0, Some(radius)),
        elements,
        index,
    })
}

fn add_arc(b: &mut GraphBuilder, h: &DefiningGraph, u: usize, v: usize, s: crate::presentation::Letter) -> Result<()> {
    b.add_edge(u, v, Rational::one(), None)?;
    b.add_label(u, v, h.canonical_letter(s));
    b.add_label(v, u, h.canonical_letter(s.inv()));
    Ok(())
}
