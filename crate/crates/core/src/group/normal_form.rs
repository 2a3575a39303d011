//! Canonical normal forms for RAACH elements.
//!
//! A RAACH is the graph product of cyclic groups over its defining graph, so
//! an element is a sequence of syllables `s^k`. The sequence is reduced when
//! no two syllables of one generator can be shuffled next to each other
//! through commuting neighbours. The canonical representative is the
//! lexicographically least shuffle (by generator declaration order).

use std::fmt;

use crate::error::Result;
use crate::presentation::{DefiningGraph, GeneratorOrder, Letter, Presentation, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub gen: usize,
    /// In `1..order` for finite orders, any nonzero integer otherwise.
    pub exp: i64,
}

/// Reduces `exp` modulo the order; `None` when the power is trivial.
fn reduce_exp(order: GeneratorOrder, exp: i64) -> Option<i64> {
    let e = match order {
        GeneratorOrder::Finite(k) => exp.rem_euclid(k as i64),
        GeneratorOrder::Infinite => exp,
    };
    (e != 0).then_some(e)
}

impl Syllable {
    /// Signed exponent with the fewest letters (`s^-1` for `s^2` when the order is 3).
    pub fn shortest_exp(&self, order: GeneratorOrder) -> i64 {
        match order {
            GeneratorOrder::Finite(k) => {
                let k = k as i64;
                if self.exp <= k - self.exp {
                    self.exp
                } else {
                    self.exp - k
                }
            }
            GeneratorOrder::Infinite => self.exp,
        }
    }

    pub fn letter_count(&self, order: GeneratorOrder) -> u64 {
        self.shortest_exp(order).unsigned_abs()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    syllables: Vec<Syllable>,
}

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement::default()
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    /// Word length with respect to `S*`.
    pub fn length(&self, h: &DefiningGraph) -> u64 {
        self.syllables.iter().map(|s| s.letter_count(h.order(s.gen))).sum()
    }

    /// Geodesic word spelling the normal form.
    pub fn to_word(&self, h: &DefiningGraph) -> Word {
        let mut out = Word::identity();
        for s in &self.syllables {
            out = out.concat(&Word::power(Letter::new(s.gen, false), s.shortest_exp(h.order(s.gen))));
        }
        out
    }

    pub fn render(&self, h: &DefiningGraph) -> String {
        if self.is_identity() {
            "e".to_string()
        } else {
            self.to_word(h).render(h.names())
        }
    }

    pub fn display<'a>(&'a self, h: &'a DefiningGraph) -> impl fmt::Display + 'a {
        struct D<'a>(&'a GroupElement, &'a DefiningGraph);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0.render(self.1))
            }
        }
        D(self, h)
    }
}

/// Lexicographically least shuffle of a reduced syllable sequence.
fn canonicalize(h: &DefiningGraph, mut rest: Vec<Syllable>) -> Vec<Syllable> {
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let mut best: Option<usize> = None;
        for i in 0..rest.len() {
            let movable = rest[..i].iter().all(|p| h.commute(p.gen, rest[i].gen));
            if movable && best.is_none_or(|b| rest[i].gen < rest[b].gen) {
                best = Some(i);
            }
        }
        let i = best.expect("the first syllable is always movable");
        out.push(rest.remove(i));
    }
    out
}

/// Right multiplication `g * s^exp` by a power of one generator.
pub fn multiply_power(h: &DefiningGraph, g: &GroupElement, gen: usize, exp: i64) -> GroupElement {
    let mut syl = g.syllables.clone();
    let mut merged = false;
    for j in (0..syl.len()).rev() {
        if syl[j].gen == gen {
            match reduce_exp(h.order(gen), syl[j].exp + exp) {
                Some(e) => syl[j].exp = e,
                None => {
                    syl.remove(j);
                }
            }
            merged = true;
            break;
        }
        if !h.commute(syl[j].gen, gen) {
            break;
        }
    }
    if !merged {
        if let Some(e) = reduce_exp(h.order(gen), exp) {
            syl.push(Syllable { gen, exp: e });
        }
    }
    GroupElement {
        syllables: canonicalize(h, syl),
    }
}

/// Normal form of `g * s` for a letter `s` of `S*`.
pub fn multiply(h: &DefiningGraph, g: &GroupElement, s: Letter) -> GroupElement {
    multiply_power(h, g, s.gen, s.sign())
}

pub fn multiply_word(h: &DefiningGraph, g: &GroupElement, w: &Word) -> GroupElement {
    w.letters().iter().fold(g.clone(), |acc, &l| multiply(h, &acc, l))
}

/// Product of two elements.
pub fn product(h: &DefiningGraph, a: &GroupElement, b: &GroupElement) -> GroupElement {
    b.syllables
        .iter()
        .fold(a.clone(), |acc, s| multiply_power(h, &acc, s.gen, s.exp))
}

pub fn inverse(h: &DefiningGraph, g: &GroupElement) -> GroupElement {
    g.syllables
        .iter()
        .rev()
        .fold(GroupElement::identity(), |acc, s| multiply_power(h, &acc, s.gen, -s.exp))
}

/// Canonical normal form of a word in a RAACH.
pub fn normal_form(p: &Presentation, word: &Word) -> Result<GroupElement> {
    let h = p.require_raach()?;
    Ok(multiply_word(h, &GroupElement::identity(), word))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;
    use proptest::prelude::*;

    fn pres(text: &str) -> Presentation {
        parse_presentation(text).unwrap()
    }

    #[test]
    fn inverse_of_order_three_is_square() {
        let p = pres("raach { a:3; }");
        let inv = normal_form(&p, &p.parse_word("a^-1").unwrap()).unwrap();
        let sq = normal_form(&p, &p.parse_word("a a").unwrap()).unwrap();
        assert_eq!(inv, sq);
        assert_eq!(inv.syllables(), [Syllable { gen: 0, exp: 2 }]);
        let h = p.require_raach().unwrap();
        assert_eq!(inv.length(h), 1);
        assert_eq!(inv.render(h), "a^-1");
    }

    #[test]
    fn commuting_generators_sort() {
        let p = pres("raach { a:inf, b:inf; commute (a,b); }");
        let ab = normal_form(&p, &p.parse_word("a b").unwrap()).unwrap();
        let ba = normal_form(&p, &p.parse_word("b a").unwrap()).unwrap();
        assert_eq!(ab, ba);
    }

    #[test]
    fn free_product_words_stay_distinct() {
        let p = pres("raach { a:2, b:2; }");
        let x = normal_form(&p, &p.parse_word("a b a b a b").unwrap()).unwrap();
        let y = normal_form(&p, &p.parse_word("b a b a b a").unwrap()).unwrap();
        assert_ne!(x, y);
    }

    #[test]
    fn identity_times_letter_and_involution() {
        let p = pres("raach { s:2; }");
        let h = p.require_raach().unwrap();
        let s = multiply(h, &GroupElement::identity(), Letter::new(0, false));
        assert_eq!(s.syllables(), [Syllable { gen: 0, exp: 1 }]);
        assert!(multiply(h, &s, Letter::new(0, false)).is_identity());
    }

    #[test]
    fn order_four_square_has_two_letters() {
        let p = pres("raach { a:4; }");
        let h = p.require_raach().unwrap();
        let g = normal_form(&p, &p.parse_word("a^-2").unwrap()).unwrap();
        assert_eq!(g.syllables(), [Syllable { gen: 0, exp: 2 }]);
        assert_eq!(g.length(h), 2);
        assert_eq!(g.render(h), "a^2");
    }

    #[test]
    fn merge_through_commuting_block() {
        // a c a^-1 with a, c commuting collapses to c
        let p = pres("raach { a:inf, b:inf, c:inf; commute (a,c); }");
        let g = normal_form(&p, &p.parse_word("a c a^-1").unwrap()).unwrap();
        assert_eq!(g.syllables(), [Syllable { gen: 2, exp: 1 }]);
        // b blocks a from meeting a^-1
        let k = normal_form(&p, &p.parse_word("a b a^-1").unwrap()).unwrap();
        assert_eq!(k.syllables().len(), 3);
    }

    #[test]
    fn long_walk_in_z2_matches_integer_pairs() {
        let p = pres("raach { a:inf, b:inf; commute (a,b); }");
        let h = p.require_raach().unwrap();
        let mut g = GroupElement::identity();
        let (mut x, mut y) = (0i64, 0i64);
        for i in 0..1000 {
            // b then a, with a sign pattern that drifts
            let l = if i % 2 == 0 {
                Letter::new(1, i % 6 == 0)
            } else {
                Letter::new(0, i % 10 == 3)
            };
            g = multiply(h, &g, l);
            if l.gen == 0 {
                x += l.sign();
            } else {
                y += l.sign();
            }
            assert!(g.length(h) <= 1000);
        }
        let mut expected = Vec::new();
        if x != 0 {
            expected.push(Syllable { gen: 0, exp: x });
        }
        if y != 0 {
            expected.push(Syllable { gen: 1, exp: y });
        }
        assert_eq!(g.syllables(), expected.as_slice());
        assert_eq!(g.length(h), (x.abs() + y.abs()) as u64);
    }

    fn letters_strategy(ngens: usize, max_len: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec((0..ngens, any::<bool>()), 0..max_len)
            .prop_map(|v| Word(v.into_iter().map(|(g, i)| Letter::new(g, i)).collect()))
    }

    proptest! {
        #[test]
        fn multiply_then_inverse_letter(w in letters_strategy(3, 20), g in 0usize..3, inv: bool) {
            let p = pres("raach { a:3, b:inf, c:4; commute (a,b); }");
            let h = p.require_raach().unwrap();
            let x = normal_form(&p, &w).unwrap();
            let s = Letter::new(g, inv);
            prop_assert_eq!(multiply(h, &multiply(h, &x, s), s.inv()), x);
        }

        #[test]
        fn normal_form_is_a_congruence(u in letters_strategy(3, 15), v in letters_strategy(3, 15)) {
            let p = pres("raach { a:2, b:3, c:inf; commute (a,c); }");
            let h = p.require_raach().unwrap();
            let nu = normal_form(&p, &u).unwrap();
            let nv = normal_form(&p, &v).unwrap();
            prop_assert_eq!(product(h, &nu, &nv), normal_form(&p, &u.concat(&v)).unwrap());
            prop_assert!(product(h, &nu, &inverse(h, &nu)).is_identity());
        }

        #[test]
        fn normal_form_word_round_trips(w in letters_strategy(3, 20)) {
            let p = pres("raach { a:4, b:3, c:2; commute (a,b), (b,c); }");
            let h = p.require_raach().unwrap();
            let g = normal_form(&p, &w).unwrap();
            let back = normal_form(&p, &g.to_word(h)).unwrap();
            prop_assert_eq!(back, g.clone());
            prop_assert!(g.length(h) <= w.len() as u64);
        }
    }
}
