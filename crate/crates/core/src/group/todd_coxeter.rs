//! Todd-Coxeter coset enumeration over the trivial subgroup.
//!
//! HLT strategy: for each live coset in turn, trace every relator from it,
//! defining new cosets as needed, then fill the remaining gaps in its row.
//! When the live count hits the budget a lookahead pass scans every coset
//! without defining anything, which may free space through coincidences.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentation::{letter_name, Letter, Presentation, Word};

pub const DEFAULT_MAX_COSETS: usize = 100_000;

const NONE: usize = usize::MAX;

/// Complete coset table of `<S | R>` acting on the cosets of the trivial
/// subgroup, i.e. the regular action of the group. Coset 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    alphabet: Vec<String>,
    /// `action[c][letter.column()]`
    action: Vec<Vec<usize>>,
}

impl CosetTable {
    pub fn len(&self) -> usize {
        self.action.len()
    }

    pub fn is_empty(&self) -> bool {
        self.action.is_empty()
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn num_generators(&self) -> usize {
        self.alphabet.len()
    }

    pub fn act(&self, coset: usize, l: Letter) -> usize {
        self.action[coset][l.column()]
    }

    pub fn trace(&self, coset: usize, w: &Word) -> usize {
        w.letters().iter().fold(coset, |c, &l| self.act(c, l))
    }

    /// Image of every coset under one letter.
    pub fn permutation(&self, l: Letter) -> Vec<usize> {
        (0..self.len()).map(|c| self.act(c, l)).collect()
    }

    /// Each relator fixes every coset.
    pub fn satisfies(&self, relators: &[Word]) -> bool {
        (0..self.len()).all(|c| relators.iter().all(|r| self.trace(c, r) == c))
    }

    /// Shortest words reaching each coset, preferring lower columns.
    pub fn representatives(&self) -> Vec<Word> {
        let mut reps: Vec<Option<Word>> = vec![None; self.len()];
        reps[0] = Some(Word::identity());
        let mut queue = VecDeque::from([0]);
        while let Some(c) = queue.pop_front() {
            let w = reps[c].clone().expect("queued cosets have words");
            for col in 0..2 * self.num_generators() {
                let d = self.action[c][col];
                if reps[d].is_none() {
                    let mut nw = w.clone();
                    nw.0.push(Letter::from_column(col));
                    reps[d] = Some(nw);
                    queue.push_back(d);
                }
            }
        }
        reps.into_iter().map(|w| w.expect("table is transitive")).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Column {
            letter: String,
            images: Vec<usize>,
        }
        #[derive(Serialize)]
        struct Json<'a> {
            schema: &'static str,
            alphabet: &'a [String],
            cosets: usize,
            action: Vec<Column>,
        }
        let action = (0..2 * self.num_generators())
            .map(|col| {
                let l = Letter::from_column(col);
                Column {
                    letter: letter_name(&self.alphabet, l),
                    images: self.permutation(l),
                }
            })
            .collect();
        serde_json::to_value(Json {
            schema: "curvachay-cosets/1",
            alphabet: &self.alphabet,
            cosets: self.len(),
            action,
        })
        .expect("coset table serializes")
    }
}

struct Enumerator {
    cols: usize,
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    live: usize,
    max_live: usize,
    max_total: usize,
    queue: Vec<usize>,
}

fn inv_col(c: usize) -> usize {
    c ^ 1
}

impl Enumerator {
    fn new(ngens: usize, max_live: usize) -> Self {
        Enumerator {
            cols: 2 * ngens,
            table: vec![vec![NONE; 2 * ngens]],
            parent: vec![0],
            live: 1,
            max_live,
            max_total: max_live.saturating_mul(16).max(1024),
            queue: Vec::new(),
        }
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut k = c;
        while self.parent[k] != r {
            let next = self.parent[k];
            self.parent[k] = r;
            k = next;
        }
        r
    }

    fn can_define(&self) -> bool {
        self.live < self.max_live && self.table.len() < self.max_total
    }

    fn define(&mut self, c: usize, col: usize) {
        let d = self.table.len();
        self.table.push(vec![NONE; self.cols]);
        self.parent.push(d);
        self.live += 1;
        self.table[c][col] = d;
        self.table[d][inv_col(col)] = c;
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
            self.live -= 1;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                let d = self.table[g][x];
                if d == NONE {
                    continue;
                }
                if self.table[d][inv_col(x)] == g {
                    self.table[d][inv_col(x)] = NONE;
                }
                let mu = self.rep(g);
                let nu = self.rep(d);
                if self.table[mu][x] != NONE {
                    let t = self.table[mu][x];
                    self.merge(nu, t);
                } else if self.table[nu][inv_col(x)] != NONE {
                    let t = self.table[nu][inv_col(x)];
                    self.merge(mu, t);
                } else {
                    self.table[mu][x] = nu;
                    self.table[nu][inv_col(x)] = mu;
                }
            }
        }
    }

    /// Scans `w` from `a` in both directions. With `fill`, missing cosets are
    /// defined (returns false if the budget blocks a definition).
    fn scan(&mut self, a: usize, w: &[usize], fill: bool) -> bool {
        if w.is_empty() {
            return true;
        }
        let mut f = a;
        let mut i = 0usize;
        let mut b = a;
        let mut j = w.len() as isize - 1;
        loop {
            while (i as isize) <= j && self.table[f][w[i]] != NONE {
                f = self.table[f][w[i]];
                i += 1;
            }
            if i as isize > j {
                if f != a {
                    self.coincidence(f, a);
                }
                return true;
            }
            while j >= i as isize && self.table[b][inv_col(w[j as usize])] != NONE {
                b = self.table[b][inv_col(w[j as usize])];
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return true;
            }
            if i as isize == j {
                self.table[f][w[i]] = b;
                self.table[b][inv_col(w[i])] = f;
                return true;
            }
            if !fill {
                return true;
            }
            if !self.can_define() {
                return false;
            }
            self.define(f, w[i]);
        }
    }

    fn lookahead(&mut self, rels: &[Vec<usize>]) {
        let mut c = 0;
        while c < self.table.len() {
            for r in rels {
                if !self.is_live(c) {
                    break;
                }
                self.scan(c, r, false);
            }
            c += 1;
        }
    }

    /// Runs `step` until it succeeds, doing a lookahead whenever the budget
    /// blocks it. Gives up once a lookahead frees nothing.
    fn with_room(&mut self, rels: &[Vec<usize>], mut step: impl FnMut(&mut Self) -> bool) -> Result<()> {
        loop {
            if step(self) {
                return Ok(());
            }
            let before = self.live;
            self.lookahead(rels);
            if self.live >= before {
                return Err(Error::Budget(format!(
                    "coset enumeration exceeded {} cosets",
                    self.max_live
                )));
            }
        }
    }

    fn run(&mut self, rels: &[Vec<usize>]) -> Result<()> {
        let mut c = 0;
        while c < self.table.len() {
            for r in rels {
                self.with_room(rels, |e| !e.is_live(c) || e.scan(c, r, true))?;
            }
            for x in 0..self.cols {
                self.with_room(rels, |e| {
                    if !e.is_live(c) || e.table[c][x] != NONE {
                        true
                    } else if e.can_define() {
                        e.define(c, x);
                        true
                    } else {
                        false
                    }
                })?;
            }
            c += 1;
        }
        Ok(())
    }

    /// Renumbers live cosets in BFS order from coset 0.
    fn standardize(&self) -> Result<Vec<Vec<usize>>> {
        let mut map = vec![NONE; self.table.len()];
        let mut order = vec![0];
        map[0] = 0;
        let mut k = 0;
        while k < order.len() {
            let c = order[k];
            k += 1;
            for x in 0..self.cols {
                let d = self.table[c][x];
                if d == NONE {
                    return Err(Error::Internal("incomplete coset table".into()));
                }
                if map[d] == NONE {
                    map[d] = order.len();
                    order.push(d);
                }
            }
        }
        Ok(order
            .iter()
            .map(|&c| self.table[c].iter().map(|&d| map[d]).collect())
            .collect())
    }
}

/// Enumerates the cosets of the trivial subgroup. Fails with
/// [`Error::Budget`] when more than `max_cosets` live cosets are needed.
pub fn enumerate_cosets(p: &Presentation, max_cosets: usize) -> Result<CosetTable> {
    if max_cosets == 0 {
        return Err(Error::invalid("coset budget must be positive"));
    }
    let rels: Vec<Vec<usize>> = p
        .relators()
        .iter()
        .map(|r| r.letters().iter().map(|l| l.column()).collect())
        .collect();
    let mut e = Enumerator::new(p.num_generators(), max_cosets);
    e.run(&rels)?;
    let action = e.standardize()?;
    let table = CosetTable {
        alphabet: p.alphabet().to_vec(),
        action,
    };
    if !table.satisfies(p.relators()) {
        return Err(Error::Internal("coset table violates a relator".into()));
    }
    Ok(table)
}
