//! Replacing a generator of order 4 or infinite order by two involutions.
//!
//! For order 4 the two new involutions commute, for infinite order they do
//! not; both inherit every commutation of the removed generator. The Cayley
//! graphs before and after are isomorphic, and [`WordMap`] realises the
//! vertex correspondence on words.

use crate::error::{Error, Result};
use crate::presentation::{DefiningGraph, GeneratorOrder, Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EliminationKind {
    /// `s0` of order 4, replaced by a commuting pair.
    Order4,
    /// `s0` of infinite order, replaced by a free pair.
    Infinite,
}

/// Word translation between the old and the new generating sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordMap {
    pub kind: EliminationKind,
    /// Removed generator in the old graph.
    pub removed: usize,
    /// Replacement involutions in the new graph, `s'` then `s''`.
    pub first: usize,
    pub second: usize,
    /// Old generator to new generator, for every generator except `removed`.
    old_to_new: Vec<Option<usize>>,
    new_to_old: Vec<Option<usize>>,
}

pub fn eliminate_r4(h: &DefiningGraph, s0: usize) -> Result<(DefiningGraph, WordMap)> {
    eliminate(h, s0, EliminationKind::Order4)
}

pub fn eliminate_rinf(h: &DefiningGraph, s0: usize) -> Result<(DefiningGraph, WordMap)> {
    eliminate(h, s0, EliminationKind::Infinite)
}

fn fresh_name(taken: &[String], base: &str) -> String {
    let mut name = base.to_string();
    while taken.contains(&name) {
        name.push('_');
    }
    name
}

/// New generators keep declaration order with `s'`, `s''` at the position of `s0`.
pub fn eliminate(h: &DefiningGraph, s0: usize, kind: EliminationKind) -> Result<(DefiningGraph, WordMap)> {
    if s0 >= h.num_generators() {
        return Err(Error::invalid(format!("no generator with index {s0}")));
    }
    let wanted = match kind {
        EliminationKind::Order4 => GeneratorOrder::Finite(4),
        EliminationKind::Infinite => GeneratorOrder::Infinite,
    };
    if h.order(s0) != wanted {
        return Err(Error::invalid(format!(
            "generator {} has order {}, elimination needs order {wanted}",
            h.names()[s0],
            h.order(s0)
        )));
    }
    let n = h.num_generators();
    let mut names = Vec::with_capacity(n + 1);
    let mut orders = Vec::with_capacity(n + 1);
    let mut old_to_new = vec![None; n];
    let mut new_to_old = Vec::with_capacity(n + 1);
    let (mut first, mut second) = (0, 0);
    for g in 0..n {
        if g == s0 {
            let base = &h.names()[s0];
            let others: Vec<String> = h.names().to_vec();
            let a = fresh_name(&others, &format!("{base}'"));
            let b = fresh_name(&others, &format!("{a}'"));
            first = names.len();
            names.push(a);
            orders.push(GeneratorOrder::Finite(2));
            new_to_old.push(None);
            second = names.len();
            names.push(b);
            orders.push(GeneratorOrder::Finite(2));
            new_to_old.push(None);
        } else {
            old_to_new[g] = Some(names.len());
            new_to_old.push(Some(g));
            names.push(h.names()[g].clone());
            orders.push(h.order(g));
        }
    }
    let mut edges = Vec::new();
    for (a, b) in h.edges() {
        match (old_to_new[a], old_to_new[b]) {
            (Some(x), Some(y)) => edges.push((x, y)),
            (None, Some(y)) | (Some(y), None) => {
                edges.push((first, y));
                edges.push((second, y));
            }
            (None, None) => unreachable!("edges join distinct generators"),
        }
    }
    if kind == EliminationKind::Order4 {
        edges.push((first, second));
    }
    let graph = DefiningGraph::new(names, orders, edges)?;
    Ok((
        graph,
        WordMap {
            kind,
            removed: s0,
            first,
            second,
            old_to_new,
            new_to_old,
        },
    ))
}

impl WordMap {
    /// Letter of the new graph matching a letter of `S*` under the
    /// correspondence `s0 -> s'`, `s0^-1 -> s''`.
    pub fn letter_image(&self, l: Letter) -> Letter {
        if l.gen == self.removed {
            Letter::new(if l.inverse { self.second } else { self.first }, false)
        } else {
            Letter::new(self.old_to_new[l.gen].expect("kept generator"), l.inverse)
        }
    }

    /// Forward map on words of the old group.
    pub fn apply(&self, w: &Word) -> Word {
        let ls = w.letters();
        let mut out = Vec::with_capacity(ls.len() * 3);
        // letter used last for s0 and, for infinite order, the sign behind it
        let mut last: Option<(usize, i64)> = None;
        let mut i = 0;
        while i < ls.len() {
            if ls[i].gen != self.removed {
                out.push(Letter::new(self.old_to_new[ls[i].gen].expect("kept generator"), ls[i].inverse));
                i += 1;
                continue;
            }
            let mut power = 0i64;
            while i < ls.len() && ls[i].gen == self.removed {
                power += ls[i].sign();
                i += 1;
            }
            let (count, sign) = match self.kind {
                EliminationKind::Order4 => (power.rem_euclid(4), 1),
                EliminationKind::Infinite => (power.abs(), power.signum()),
            };
            for _ in 0..count {
                let next = match (self.kind, last) {
                    (EliminationKind::Order4, None) => self.first,
                    (EliminationKind::Order4, Some((prev, _))) => self.other(prev),
                    (EliminationKind::Infinite, None) => {
                        if sign > 0 {
                            self.first
                        } else {
                            self.second
                        }
                    }
                    (EliminationKind::Infinite, Some((prev, prev_sign))) => {
                        if prev_sign == sign {
                            self.other(prev)
                        } else {
                            prev
                        }
                    }
                };
                out.push(Letter::new(next, false));
                last = Some((next, sign));
            }
        }
        Word(out)
    }

    /// Inverse map on words of the new group.
    pub fn invert(&self, w: &Word) -> Word {
        let ls = w.letters();
        let is_new = |g: usize| g == self.first || g == self.second;
        let mut out = Vec::with_capacity(ls.len());
        // previous replacement letter and the power of s0 it produced
        let mut last: Option<(usize, bool)> = None;
        let mut i = 0;
        while i < ls.len() {
            let g = ls[i].gen;
            if !is_new(g) {
                out.push(Letter::new(self.new_to_old[g].expect("kept generator"), ls[i].inverse));
                i += 1;
                continue;
            }
            let mut run = 0usize;
            while i < ls.len() && ls[i].gen == g {
                run += 1;
                i += 1;
            }
            if run.is_multiple_of(2) {
                continue;
            }
            let inverse = match last {
                None => g == self.second,
                Some((prev, prev_inv)) if prev == g => !prev_inv,
                Some((_, prev_inv)) => prev_inv,
            };
            out.push(Letter::new(self.removed, inverse));
            last = Some((g, inverse));
        }
        Word(out)
    }

    fn other(&self, g: usize) -> usize {
        if g == self.first {
            self.second
        } else {
            self.first
        }
    }
}
