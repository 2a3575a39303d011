//! Short cycles through the identity in RAACH Cayley graphs.
//!
//! Every simple cycle of length 3, 4 or 5 through `e` is enumerated in the
//! radius-3 ball and its letter sequence is matched against the admissible
//! shapes:
//!
//! * length 3: `s s s` with `ord(s) = 3`;
//! * length 4: `s s s s` with `ord(s) = 4`, or `s t s^-1 t^-1` for commuting `s != t`;
//! * length 5: letters drawn from `{s^±1, t^±1}` for a commuting pair where
//!   `ord(t) = 3`, with three `t`-letters and two `s`-letters, and when the first
//!   and last letters agree that letter has order 3.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::Result;
use crate::graph::LocalGraph;
use crate::presentation::{DefiningGraph, GeneratorOrder, Letter, Presentation};

use super::ball::ball;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CycleReport {
    /// Number of distinct cycles of length 3, 4, 5.
    pub counts: [usize; 3],
    /// Letter sequences of the distinct cycles, read from `e` in one direction.
    pub cycles: Vec<String>,
    /// Sequences matching none of the admissible shapes.
    pub violations: Vec<String>,
}

pub fn classify_short_cycles(p: &Presentation) -> Result<CycleReport> {
    let h = p.require_raach()?;
    let b = ball(p, 3)?;
    let g = &b.graph;
    let mut seen = BTreeSet::new();
    let mut report = CycleReport {
        counts: [0; 3],
        cycles: Vec::new(),
        violations: Vec::new(),
    };
    let mut path = vec![g.root()];
    let mut letters = Vec::new();
    let mut found = Vec::new();
    dfs(g, &mut path, &mut letters, &mut found);
    for (verts, ls) in found {
        let mut key: Vec<(usize, usize)> = (0..verts.len())
            .map(|i| {
                let (u, v) = (verts[i], verts[(i + 1) % verts.len()]);
                (u.min(v), u.max(v))
            })
            .collect();
        key.sort_unstable();
        let ok = admissible(h, &ls);
        let text = ls.iter().map(|&l| h.letter_name(l)).collect::<Vec<_>>().join(" ");
        if !ok {
            report.violations.push(text.clone());
        }
        if seen.insert(key) {
            report.counts[ls.len() - 3] += 1;
            report.cycles.push(text);
        }
    }
    Ok(report)
}

fn dfs(g: &LocalGraph, path: &mut Vec<usize>, letters: &mut Vec<Letter>, out: &mut Vec<(Vec<usize>, Vec<Letter>)>) {
    let u = *path.last().expect("path starts at the root");
    for e in g.neighbors(u) {
        let l = e.label[0];
        if e.to == path[0] {
            if path.len() >= 3 {
                let mut ls = letters.clone();
                ls.push(l);
                out.push((path.clone(), ls));
            }
            continue;
        }
        if path.len() == 5 || path.contains(&e.to) {
            continue;
        }
        path.push(e.to);
        letters.push(l);
        dfs(g, path, letters, out);
        path.pop();
        letters.pop();
    }
}

fn admissible(h: &DefiningGraph, ls: &[Letter]) -> bool {
    let ord = |l: Letter| h.order(l.gen);
    let inv = |l: Letter| h.canonical_letter(l.inv());
    match ls.len() {
        3 => ls.iter().all(|&l| l == ls[0]) && ord(ls[0]) == GeneratorOrder::Finite(3),
        4 => {
            let power = ls.iter().all(|&l| l == ls[0]) && ord(ls[0]) == GeneratorOrder::Finite(4);
            let square = ls[0].gen != ls[1].gen
                && h.commute(ls[0].gen, ls[1].gen)
                && ls[2] == inv(ls[0])
                && ls[3] == inv(ls[1]);
            power || square
        }
        5 => {
            let gens: BTreeSet<usize> = ls.iter().map(|l| l.gen).collect();
            if gens.len() != 2 {
                return false;
            }
            let mut it = gens.iter();
            let (a, b) = (*it.next().unwrap(), *it.next().unwrap());
            if !h.commute(a, b) {
                return false;
            }
            let count = |g: usize| ls.iter().filter(|l| l.gen == g).count();
            let t = if count(a) == 3 { a } else { b };
            if count(t) != 3 || h.order(t) != GeneratorOrder::Finite(3) {
                return false;
            }
            ls[0] != ls[4] || ord(ls[0]) == GeneratorOrder::Finite(3)
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn report(text: &str) -> CycleReport {
        classify_short_cycles(&parse_presentation(text).unwrap()).unwrap()
    }

    #[test]
    fn order_three_triangle() {
        let r = report("raach { a:3; }");
        assert_eq!(r.counts, [1, 0, 0]);
        assert!(r.violations.is_empty());
    }

    #[test]
    fn commuting_involutions_square() {
        let r = report("raach { a:2, b:2; commute (a,b); }");
        assert_eq!(r.counts, [0, 1, 0]);
        assert!(r.violations.is_empty());
    }

    #[test]
    fn involution_times_order_three_has_pentagons() {
        let r = report("raach { a:2, b:3; commute (a,b); }");
        assert!(r.counts[2] > 0);
        assert!(r.violations.is_empty(), "{:?}", r.violations);
    }

    #[test]
    fn free_and_larger_families_are_clean() {
        for text in [
            "raach { a:4; }",
            "raach { a:inf, b:inf; commute (a,b); }",
            "raach { a:3, b:3; commute (a,b); }",
            "raach { a:3, b:4, c:2; commute (a,b), (b,c); }",
        ] {
            let r = report(text);
            assert!(r.violations.is_empty(), "{text}: {:?}", r.violations);
        }
        assert_eq!(report("raach { a:inf, b:2; }").counts, [0, 0, 0]);
    }

    #[test]
    fn inadmissible_sequences_are_flagged() {
        let h = parse_presentation("raach { a:2, b:2; }").unwrap().require_raach().unwrap().clone();
        let a = Letter::new(0, false);
        let b = Letter::new(1, false);
        assert!(!admissible(&h, &[a, b, a, b]));
        assert!(!admissible(&h, &[a, a, a]));
    }
}
