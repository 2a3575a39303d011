//! Cayley graphs of finite groups from their coset tables.
//!
//! Formal letters of the alphabet may act identically once relators are
//! added (in Z4 -> Z2, `a` and `a^-1` coincide), and some may act trivially.
//! Letters with equal action form one generator class; trivial classes give
//! no edges.

use num::One;

use crate::error::Result;
use crate::graph::{GraphBuilder, LocalGraph};
use crate::presentation::Letter;
use crate::rational::Rational;

use super::todd_coxeter::CosetTable;

/// Letters grouped by their permutation of the cosets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LetterClasses {
    /// Non-trivial classes, ordered by their least letter.
    pub classes: Vec<Vec<Letter>>,
    /// Letters acting as the identity.
    pub collapsed: Vec<Letter>,
}

impl LetterClasses {
    pub fn class_of(&self, l: Letter) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&l))
    }
}

pub fn letter_classes(t: &CosetTable) -> LetterClasses {
    let mut classes: Vec<(Vec<usize>, Vec<Letter>)> = Vec::new();
    let mut collapsed = Vec::new();
    for col in 0..2 * t.num_generators() {
        let l = Letter::from_column(col);
        let perm = t.permutation(l);
        if perm.iter().enumerate().all(|(c, &d)| c == d) {
            collapsed.push(l);
            continue;
        }
        match classes.iter_mut().find(|(p, _)| *p == perm) {
            Some((_, ls)) => ls.push(l),
            None => classes.push((perm, vec![l])),
        }
    }
    LetterClasses {
        classes: classes.into_iter().map(|(_, ls)| ls).collect(),
        collapsed,
    }
}

/// Cayley graph with unit weights, vertex names from shortest representatives.
pub fn cayley_from_cosets(t: &CosetTable) -> Result<LocalGraph> {
    cayley_from_cosets_weighted(t, |_| Rational::one())
}

/// Cayley graph where the edge of class `k` gets weight `weight(class)`.
/// Fails if an edge is realised by classes of different weight.
pub fn cayley_from_cosets_weighted(
    t: &CosetTable,
    mut weight: impl FnMut(&[Letter]) -> Rational,
) -> Result<LocalGraph> {
    let lc = letter_classes(t);
    let weights: Vec<Rational> = lc.classes.iter().map(|c| weight(c)).collect();
    let mut b = GraphBuilder::with_alphabet(t.alphabet().to_vec());
    for w in t.representatives() {
        b.add_vertex(if w.is_empty() {
            "e".to_string()
        } else {
            w.render(t.alphabet())
        });
    }
    for c in 0..t.len() {
        for (k, class) in lc.classes.iter().enumerate() {
            let d = t.act(c, class[0]);
            if d == c {
                continue;
            }
            b.add_edge(c, d, weights[k].clone(), None)?;
            for &l in class {
                b.add_label(c, d, l);
            }
        }
    }
    Ok(b.build(0, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::todd_coxeter::enumerate_cosets;
    use crate::presentation::parse_presentation;

    fn table(text: &str) -> CosetTable {
        enumerate_cosets(&parse_presentation(text).unwrap(), 1000).unwrap()
    }

    #[test]
    fn z4_to_z2_merges_and_collapses() {
        let t = table("group <a, b | a^4, b, a^2>");
        let lc = letter_classes(&t);
        assert_eq!(lc.classes, vec![vec![Letter::new(0, false), Letter::new(0, true)]]);
        assert_eq!(lc.collapsed, vec![Letter::new(1, false), Letter::new(1, true)]);
        let g = cayley_from_cosets(&t).unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(g.num_edges(), 1);
        assert_eq!(g.neighbors(0)[0].label.len(), 2);
    }

    #[test]
    fn dihedral_cayley_graph_is_a_hexagon() {
        let g = cayley_from_cosets(&table("group <a, b | a^2, b^2, (a b)^3>")).unwrap();
        assert_eq!(g.len(), 6);
        assert!((0..6).all(|v| g.degree(v) == 2));
        assert_eq!(g.radius(), None);
    }

    #[test]
    fn class_weights_apply() {
        let t = table("group <a | a^4, a^2>");
        let g = cayley_from_cosets_weighted(&t, |c| Rational::from_integer((c.len() as i64).into())).unwrap();
        assert_eq!(g.neighbors(0)[0].weight, Rational::from_integer(2.into()));
    }
}
