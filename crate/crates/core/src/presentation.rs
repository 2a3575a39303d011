//! Group presentations, RAACH defining graphs and their associated pairs.
//!
//! Text grammar:
//!
//! ```text
//! raach { a:2, b:3, c:inf; commute (a,b), (b,c); }
//! group <a,b | a^4, b^-1 a^2>
//! ```
//!
//! Words are juxtaposed factors `name[^k]` or `(word)[^k]`. A token that is
//! not a generator name is split greedily into generator names, so `abab`
//! reads as `a b a b` when `ab` is not itself a generator.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Order of a RAACH generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorOrder {
    Finite(u32),
    Infinite,
}

impl GeneratorOrder {
    pub fn finite(self) -> Option<u32> {
        match self {
            GeneratorOrder::Finite(k) => Some(k),
            GeneratorOrder::Infinite => None,
        }
    }

    pub fn is_involution(self) -> bool {
        self == GeneratorOrder::Finite(2)
    }

    fn is_raach(self) -> bool {
        matches!(self, GeneratorOrder::Infinite | GeneratorOrder::Finite(2..=4))
    }
}

impl fmt::Display for GeneratorOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorOrder::Finite(k) => write!(f, "{k}"),
            GeneratorOrder::Infinite => write!(f, "inf"),
        }
    }
}

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn inv(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    /// `+1` or `-1`.
    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    /// Column index in a table with two columns per generator.
    pub fn column(self) -> usize {
        2 * self.gen + usize::from(self.inverse)
    }

    pub fn from_column(col: usize) -> Self {
        Letter::new(col / 2, col % 2 == 1)
    }
}

/// Word over `S*`. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `letter^exp` as a word of `|exp|` letters.
    pub fn power(letter: Letter, exp: i64) -> Self {
        let l = if exp < 0 { letter.inv() } else { letter };
        Word(vec![l; exp.unsigned_abs() as usize])
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    /// Cancels adjacent `s s^-1` pairs.
    pub fn freely_reduced(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn cyclically_reduced(&self) -> Word {
        let mut v = self.freely_reduced().0;
        while v.len() >= 2 && v[0] == v[v.len() - 1].inv() {
            v.pop();
            v.remove(0);
        }
        Word(v)
    }

    /// Least rotation of the word or its inverse; identifies relators that
    /// generate the same normal closure by conjugation and inversion.
    pub fn cyclic_canonical(&self) -> Word {
        let w = self.cyclically_reduced();
        let mut best = w.clone();
        for cand in [w.clone(), w.inverse()] {
            let n = cand.0.len();
            for r in 0..n {
                let mut rot = cand.0[r..].to_vec();
                rot.extend_from_slice(&cand.0[..r]);
                if rot < best.0 {
                    best = Word(rot);
                }
            }
        }
        best
    }

    /// Renders with powers, e.g. `b^-1 a^2`; the identity renders as `1`.
    pub fn render(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == l {
                j += 1;
            }
            let exp = (j - i) as i64 * l.sign();
            let name = &names[l.gen];
            if exp == 1 {
                parts.push(name.clone());
            } else {
                parts.push(format!("{name}^{exp}"));
            }
            i = j;
        }
        parts.join(" ")
    }
}

/// Defining graph `(H, m)` of a RAACH.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefiningGraph {
    names: Vec<String>,
    orders: Vec<GeneratorOrder>,
    edges: BTreeSet<(usize, usize)>,
}

impl DefiningGraph {
    /// Validates orders, names and edges. Edges are unordered; duplicates merge.
    pub fn new(
        names: Vec<String>,
        orders: Vec<GeneratorOrder>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        if names.len() != orders.len() {
            return Err(Error::invalid("names and orders differ in length"));
        }
        check_unique(&names)?;
        for (name, o) in names.iter().zip(&orders) {
            if !o.is_raach() {
                return Err(Error::invalid(format!(
                    "generator {name} has order {o}; RAACH orders are 2, 3, 4, inf"
                )));
            }
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a >= names.len() || b >= names.len() {
                return Err(Error::invalid("commutation edge names an unknown generator"));
            }
            if a == b {
                return Err(Error::invalid(format!("self-loop on generator {}", names[a])));
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(DefiningGraph {
            names,
            orders,
            edges: set,
        })
    }

    pub fn empty() -> Self {
        DefiningGraph {
            names: Vec::new(),
            orders: Vec::new(),
            edges: BTreeSet::new(),
        }
    }

    pub fn num_generators(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn orders(&self) -> &[GeneratorOrder] {
        &self.orders
    }

    pub fn order(&self, gen: usize) -> GeneratorOrder {
        self.orders[gen]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Whether distinct generators `a`, `b` are joined in `H`.
    pub fn commute(&self, a: usize, b: usize) -> bool {
        a != b && self.edges.contains(&(a.min(b), a.max(b)))
    }

    /// Generators of the given order.
    pub fn count_order(&self, order: GeneratorOrder) -> usize {
        self.orders.iter().filter(|&&o| o == order).count()
    }

    /// `S*` in declaration order, each base letter followed by its inverse
    /// unless the generator is an involution.
    pub fn symmetric_letters(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        for (g, o) in self.orders.iter().enumerate() {
            out.push(Letter::new(g, false));
            if !o.is_involution() {
                out.push(Letter::new(g, true));
            }
        }
        out
    }

    /// Identifies `s^-1` with `s` for involutions.
    pub fn canonical_letter(&self, l: Letter) -> Letter {
        if self.orders[l.gen].is_involution() {
            Letter::new(l.gen, false)
        } else {
            l
        }
    }

    /// Name of a letter of `S*`: `a` or `a^-1`.
    pub fn letter_name(&self, l: Letter) -> String {
        letter_name(&self.names, self.canonical_letter(l))
    }

    /// Relators of the RAACH: `s^m` for finite orders and `[s,t] = s^-1 t^-1 s t` for edges.
    pub fn relators(&self) -> Vec<Word> {
        let mut out = Vec::new();
        for (g, o) in self.orders.iter().enumerate() {
            if let Some(k) = o.finite() {
                out.push(Word::power(Letter::new(g, false), k as i64));
            }
        }
        for &(a, b) in &self.edges {
            let (sa, sb) = (Letter::new(a, false), Letter::new(b, false));
            out.push(Word(vec![sa.inv(), sb.inv(), sa, sb]));
        }
        out
    }

    pub fn render(&self) -> String {
        let gens: Vec<String> = self
            .names
            .iter()
            .zip(&self.orders)
            .map(|(n, o)| format!("{n}:{o}"))
            .collect();
        let mut out = format!("raach {{ {}", gens.join(", "));
        if !self.edges.is_empty() {
            let pairs: Vec<String> = self
                .edges
                .iter()
                .map(|&(a, b)| format!("({},{})", self.names[a], self.names[b]))
                .collect();
            out.push_str(&format!("; commute {}", pairs.join(", ")));
        }
        out.push_str("; }");
        out
    }
}

pub fn letter_name(names: &[String], l: Letter) -> String {
    if l.inverse {
        format!("{}^-1", names[l.gen])
    } else {
        names[l.gen].clone()
    }
}

fn check_unique(names: &[String]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(Error::invalid(format!("duplicate generator {n}")));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PresentationKind {
    Raach(DefiningGraph),
    General,
}

/// `<S | R>` with relators stored freely reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    alphabet: Vec<String>,
    relators: Vec<Word>,
    kind: PresentationKind,
}

impl Presentation {
    pub fn raach(graph: DefiningGraph) -> Self {
        Presentation {
            alphabet: graph.names().to_vec(),
            relators: graph.relators(),
            kind: PresentationKind::Raach(graph),
        }
    }

    /// Relators are freely reduced; empty relators are dropped.
    pub fn general(alphabet: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        check_unique(&alphabet)?;
        let mut out = Vec::new();
        for r in relators {
            if r.0.iter().any(|l| l.gen >= alphabet.len()) {
                return Err(Error::invalid("relator uses an unknown generator"));
            }
            let r = r.freely_reduced();
            if !r.is_empty() {
                out.push(r);
            }
        }
        Ok(Presentation {
            alphabet,
            relators: out,
            kind: PresentationKind::General,
        })
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn num_generators(&self) -> usize {
        self.alphabet.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn kind(&self) -> &PresentationKind {
        &self.kind
    }

    pub fn defining_graph(&self) -> Option<&DefiningGraph> {
        match &self.kind {
            PresentationKind::Raach(h) => Some(h),
            PresentationKind::General => None,
        }
    }

    pub fn require_raach(&self) -> Result<&DefiningGraph> {
        self.defining_graph()
            .ok_or_else(|| Error::invalid("operation requires a RAACH presentation"))
    }

    /// Same alphabet with extra relators; the result is a general presentation.
    pub fn with_relators(&self, extra: impl IntoIterator<Item = Word>) -> Result<Self> {
        let mut rels = self.relators.clone();
        rels.extend(extra);
        Presentation::general(self.alphabet.clone(), rels)
    }

    /// Forgets the RAACH structure, keeping its relators.
    pub fn as_general(&self) -> Self {
        Presentation {
            alphabet: self.alphabet.clone(),
            relators: self.relators.clone(),
            kind: PresentationKind::General,
        }
    }

    /// Every relator of `self` occurs among the relators of `other`, up to
    /// cyclic rotation and inversion.
    pub fn relators_contained_in(&self, other: &Presentation) -> bool {
        let theirs: BTreeSet<Word> = other.relators.iter().map(Word::cyclic_canonical).collect();
        self.relators
            .iter()
            .all(|r| theirs.contains(&r.cyclic_canonical()))
    }

    pub fn render(&self) -> String {
        match &self.kind {
            PresentationKind::Raach(h) => h.render(),
            PresentationKind::General => {
                let rels: Vec<String> = self.relators.iter().map(|r| r.render(&self.alphabet)).collect();
                format!("group <{} | {}>", self.alphabet.join(","), rels.join(", "))
            }
        }
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut p = Parser::new(text);
        let w = p.word(&self.alphabet, &[])?;
        p.expect_end()?;
        Ok(w)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(PresentationJson::from(self)).expect("presentation serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let j: PresentationJson =
            serde_json::from_value(value.clone()).map_err(|e| Error::invalid(e.to_string()))?;
        j.into_presentation()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Serialize, Deserialize)]
struct PresentationJson {
    kind: String,
    alphabet: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    orders: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    commute: Option<Vec<[String; 2]>>,
    relators: Vec<String>,
}

impl From<&Presentation> for PresentationJson {
    fn from(p: &Presentation) -> Self {
        let relators = p.relators.iter().map(|r| r.render(&p.alphabet)).collect();
        match &p.kind {
            PresentationKind::Raach(h) => PresentationJson {
                kind: "raach".into(),
                alphabet: p.alphabet.clone(),
                orders: Some(h.orders.iter().map(|o| o.to_string()).collect()),
                commute: Some(
                    h.edges()
                        .map(|(a, b)| [h.names[a].clone(), h.names[b].clone()])
                        .collect(),
                ),
                relators,
            },
            PresentationKind::General => PresentationJson {
                kind: "general".into(),
                alphabet: p.alphabet.clone(),
                orders: None,
                commute: None,
                relators,
            },
        }
    }
}

impl PresentationJson {
    fn into_presentation(self) -> Result<Presentation> {
        match self.kind.as_str() {
            "raach" => {
                let orders = self
                    .orders
                    .ok_or_else(|| Error::invalid("raach JSON needs orders"))?
                    .iter()
                    .map(|o| parse_order_text(o, 0))
                    .collect::<Result<Vec<_>>>()?;
                let lookup = |n: &str| {
                    self.alphabet
                        .iter()
                        .position(|a| a == n)
                        .ok_or_else(|| Error::invalid(format!("unknown generator {n}")))
                };
                let mut edges = Vec::new();
                for [a, b] in self.commute.unwrap_or_default() {
                    edges.push((lookup(&a)?, lookup(&b)?));
                }
                Ok(Presentation::raach(DefiningGraph::new(self.alphabet, orders, edges)?))
            }
            "general" => {
                let mut rels = Vec::new();
                for r in &self.relators {
                    let mut p = Parser::new(r);
                    let w = p.word(&self.alphabet, &[])?;
                    p.expect_end()?;
                    rels.push(w);
                }
                Presentation::general(self.alphabet, rels)
            }
            other => Err(Error::invalid(format!("unknown presentation kind {other}"))),
        }
    }
}

fn parse_order_text(text: &str, pos: usize) -> Result<GeneratorOrder> {
    match text {
        "inf" => Ok(GeneratorOrder::Infinite),
        "2" => Ok(GeneratorOrder::Finite(2)),
        "3" => Ok(GeneratorOrder::Finite(3)),
        "4" => Ok(GeneratorOrder::Finite(4)),
        other => Err(Error::parse(
            pos,
            format!("order {other} outside RAACH range {{2,3,4,inf}}"),
        )),
    }
}

/// Parses either a `raach { ... }` or a `group < ... >` declaration.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut p = Parser::new(text);
    let kw = p.ident()?;
    let out = match kw.as_str() {
        "raach" => {
            p.expect('{')?;
            let h = p.raach_body(Some('}'))?;
            p.expect('}')?;
            Presentation::raach(h)
        }
        "group" => p.group_body()?,
        other => {
            return Err(Error::parse(0, format!("expected `raach` or `group`, found `{other}`")));
        }
    };
    p.expect_end()?;
    Ok(out)
}

/// Parses the inside of a `raach { ... }` block, e.g. `a:2,b:2; commute (a,b)`.
pub fn parse_raach_body(text: &str) -> Result<Presentation> {
    let mut p = Parser::new(text);
    let h = p.raach_body(None)?;
    p.expect_end()?;
    Ok(Presentation::raach(h))
}

/// Parses `<a,b | a^4, b^-1 a^2>`.
pub fn parse_group_body(text: &str) -> Result<Presentation> {
    let mut p = Parser::new(text);
    let g = p.group_body()?;
    p.expect_end()?;
    Ok(g)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        loop {
            let rest = &self.src[self.pos..];
            let trimmed = rest.trim_start();
            self.pos += rest.len() - trimmed.len();
            if trimmed.starts_with('#') {
                let end = trimmed.find('\n').unwrap_or(trimmed.len());
                self.pos += end;
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self.peek().map_or("end of input".to_string(), |f| format!("`{f}`"));
            Err(Error::parse(self.pos, format!("expected `{c}`, found {found}")))
        }
    }

    fn expect_end(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(Error::parse(self.pos, format!("unexpected `{c}`"))),
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let len: usize = rest
            .chars()
            .take_while(|&c| is_ident_char(c))
            .map(char::len_utf8)
            .sum();
        if len == 0 || rest.starts_with(|c: char| c.is_ascii_digit() || c == '\'') {
            return Err(Error::parse(start, "expected a name"));
        }
        self.pos += len;
        Ok(rest[..len].to_string())
    }

    fn token(&mut self) -> Result<(usize, String)> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let len: usize = rest
            .chars()
            .take_while(|&c| is_ident_char(c))
            .map(char::len_utf8)
            .sum();
        if len == 0 {
            return Err(Error::parse(start, "expected a token"));
        }
        self.pos += len;
        Ok((start, rest[..len].to_string()))
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let mut len = 0;
        if rest.starts_with('-') || rest.starts_with('+') {
            len = 1;
        }
        len += rest[len..].chars().take_while(char::is_ascii_digit).count();
        let v = rest[..len].parse().map_err(|_| Error::parse(start, "expected an integer"))?;
        self.pos += len;
        Ok(v)
    }

    fn raach_body(&mut self, close: Option<char>) -> Result<DefiningGraph> {
        let mut names = Vec::new();
        let mut orders = Vec::new();
        let mut name_pos = Vec::new();
        loop {
            let at = {
                self.skip_ws();
                self.pos
            };
            let name = self.ident()?;
            self.expect(':')?;
            let (opos, otext) = self.token()?;
            if names.contains(&name) {
                return Err(Error::parse(at, format!("duplicate generator {name}")));
            }
            orders.push(parse_order_text(&otext, opos)?);
            names.push(name);
            name_pos.push(at);
            if !self.eat(',') {
                break;
            }
        }
        let mut edges = Vec::new();
        if self.eat(';') {
            let at_end = |p: &mut Self| match close {
                Some(c) => p.peek() == Some(c),
                None => p.peek().is_none(),
            };
            if !at_end(self) {
                let at = {
                    self.skip_ws();
                    self.pos
                };
                let kw = self.ident()?;
                if kw != "commute" {
                    return Err(Error::parse(at, format!("expected `commute`, found `{kw}`")));
                }
                loop {
                    self.expect('(')?;
                    let a_at = {
                        self.skip_ws();
                        self.pos
                    };
                    let a = self.ident()?;
                    self.expect(',')?;
                    let b_at = {
                        self.skip_ws();
                        self.pos
                    };
                    let b = self.ident()?;
                    self.expect(')')?;
                    let ia = names
                        .iter()
                        .position(|n| n == &a)
                        .ok_or_else(|| Error::parse(a_at, format!("unknown generator {a} in commute")))?;
                    let ib = names
                        .iter()
                        .position(|n| n == &b)
                        .ok_or_else(|| Error::parse(b_at, format!("unknown generator {b} in commute")))?;
                    if ia == ib {
                        return Err(Error::parse(a_at, format!("self-loop on {a}")));
                    }
                    edges.push((ia, ib));
                    if !self.eat(',') {
                        break;
                    }
                }
                self.eat(';');
            }
        }
        DefiningGraph::new(names, orders, edges)
    }

    fn group_body(&mut self) -> Result<Presentation> {
        self.expect('<')?;
        let mut names = Vec::new();
        if self.peek() != Some('|') {
            loop {
                let at = {
                    self.skip_ws();
                    self.pos
                };
                let n = self.ident()?;
                if names.contains(&n) {
                    return Err(Error::parse(at, format!("duplicate generator {n}")));
                }
                names.push(n);
                if !self.eat(',') {
                    break;
                }
            }
        }
        let mut rels = Vec::new();
        if self.eat('|') && self.peek() != Some('>') {
            loop {
                rels.push(self.word(&names, &[',', '>'])?);
                if !self.eat(',') {
                    break;
                }
            }
        }
        self.expect('>')?;
        Presentation::general(names, rels)
    }

    /// Parses factors until end of input, `)`, or one of `stop`.
    fn word(&mut self, names: &[String], stop: &[char]) -> Result<Word> {
        let mut letters = Vec::new();
        loop {
            match self.peek() {
                None => break,
                Some(c) if c == ')' || stop.contains(&c) => break,
                _ => {}
            }
            let factor = if self.eat('(') {
                let w = self.word(names, &[])?;
                self.expect(')')?;
                w
            } else {
                let (at, tok) = self.token()?;
                if tok == "1" {
                    Word::identity()
                } else {
                    let mut split = split_name(&tok, names).ok_or_else(|| {
                        Error::parse(at, format!("unknown generator `{tok}`"))
                    })?;
                    // an exponent binds to the last name of `ab^2`
                    let last = split.0.pop().expect("split is non-empty");
                    letters.extend(split.0);
                    Word(vec![last])
                }
            };
            let exp = if self.eat('^') { self.integer()? } else { 1 };
            let piece = if exp >= 0 { factor } else { factor.inverse() };
            for _ in 0..exp.unsigned_abs() {
                letters.extend_from_slice(piece.letters());
            }
        }
        Ok(Word(letters))
    }
}

/// Splits a token into generator names, preferring the longest prefix.
fn split_name(tok: &str, names: &[String]) -> Option<Word> {
    if tok.is_empty() {
        return Some(Word::identity());
    }
    let mut cands: Vec<(usize, &String)> = names
        .iter()
        .enumerate()
        .filter(|(_, n)| tok.starts_with(n.as_str()))
        .collect();
    cands.sort_by_key(|(_, n)| std::cmp::Reverse(n.len()));
    for (g, n) in cands {
        if let Some(rest) = split_name(&tok[n.len()..], names) {
            let mut v = vec![Letter::new(g, false)];
            v.extend(rest.0);
            return Some(Word(v));
        }
    }
    None
}

/// Associated pair `(H*, w)` on the symmetrized generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociatedPair {
    letters: Vec<Letter>,
    names: Vec<String>,
    orders: Vec<GeneratorOrder>,
    weights: Vec<Vec<u32>>,
}

impl AssociatedPair {
    /// Vertices of `H*` in declaration order (base letter, then inverse).
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Order of the generator underlying vertex `i`.
    pub fn order(&self, i: usize) -> GeneratorOrder {
        self.orders[i]
    }

    pub fn weight(&self, i: usize, j: usize) -> u32 {
        self.weights[i][j]
    }

    pub fn index_of(&self, l: Letter) -> Option<usize> {
        self.letters.iter().position(|&m| m == l)
    }

    /// Weighted degree `sum_t w(s,t)`.
    pub fn weighted_degree(&self, i: usize) -> u32 {
        self.weights[i].iter().sum()
    }

    /// Number of neighbours of `s` in `H*`.
    pub fn combinatorial_degree(&self, i: usize) -> u32 {
        self.weights[i].iter().filter(|&&w| w > 0).count() as u32
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Edge<'a> {
            s: &'a str,
            t: &'a str,
            w: u32,
        }
        #[derive(Serialize)]
        struct Json<'a> {
            vertices: &'a [String],
            edges: Vec<Edge<'a>>,
        }
        let mut edges = Vec::new();
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.weights[i][j] > 0 {
                    edges.push(Edge {
                        s: &self.names[i],
                        t: &self.names[j],
                        w: self.weights[i][j],
                    });
                }
            }
        }
        serde_json::to_value(Json {
            vertices: &self.names,
            edges,
        })
        .expect("associated pair serializes")
    }
}

/// Builds `(H*, w)` from `(H, m)`.
pub fn associated_pair(h: &DefiningGraph) -> AssociatedPair {
    let letters = h.symmetric_letters();
    let n = letters.len();
    let mut weights = vec![vec![0u32; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let (s, t) = (letters[i], letters[j]);
            weights[i][j] = if s.gen == t.gen {
                match h.order(s.gen) {
                    GeneratorOrder::Finite(4) => 1,
                    GeneratorOrder::Finite(3) => 2,
                    _ => 0,
                }
            } else if h.commute(s.gen, t.gen) {
                1
            } else {
                0
            };
        }
    }
    AssociatedPair {
        names: letters.iter().map(|&l| h.letter_name(l)).collect(),
        orders: letters.iter().map(|l| h.order(l.gen)).collect(),
        letters,
        weights,
    }
}

/// Defining graph of the direct product: disjoint union plus all cross edges.
/// Colliding names in `h2` get a `_2` suffix (repeated until unique).
pub fn raach_product(h1: &DefiningGraph, h2: &DefiningGraph) -> DefiningGraph {
    let mut names = h1.names.clone();
    for n in &h2.names {
        let mut cand = n.clone();
        while names.contains(&cand) || (cand != *n && h2.names.contains(&cand)) {
            cand.push_str("_2");
        }
        names.push(cand);
    }
    let mut orders = h1.orders.clone();
    orders.extend_from_slice(&h2.orders);
    let off = h1.num_generators();
    let mut edges: Vec<(usize, usize)> = h1.edges().collect();
    edges.extend(h2.edges().map(|(a, b)| (a + off, b + off)));
    for a in 0..off {
        for b in 0..h2.num_generators() {
            edges.push((a, b + off));
        }
    }
    DefiningGraph::new(names, orders, edges).expect("product of valid defining graphs is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raach(text: &str) -> DefiningGraph {
        parse_presentation(text).unwrap().require_raach().unwrap().clone()
    }

    #[test]
    fn parses_raach_declaration() {
        let p = parse_presentation("raach { a:2, b:3; commute (a,b); }").unwrap();
        let h = p.require_raach().unwrap();
        assert_eq!(h.names(), ["a", "b"]);
        assert_eq!(h.order(0), GeneratorOrder::Finite(2));
        assert_eq!(h.order(1), GeneratorOrder::Finite(3));
        assert!(h.commute(0, 1));
    }

    #[test]
    fn parses_general_group() {
        let p = parse_presentation("group <a,b | a^4, b^-1 a^2>").unwrap();
        assert_eq!(p.kind(), &PresentationKind::General);
        let a = Letter::new(0, false);
        let b = Letter::new(1, false);
        assert_eq!(p.relators()[0], Word(vec![a; 4]));
        assert_eq!(p.relators()[1], Word(vec![b.inv(), a, a]));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            parse_presentation("raach { a:5; }"),
            Err(Error::Parse { .. })
        ));
        assert!(parse_presentation("raach { a:2, a:3; }").is_err());
        assert!(parse_presentation("raach { a:2; commute (a,b); }").is_err());
        assert!(parse_presentation("raach { a:2, b:2; commute (a,a); }").is_err());
        assert!(parse_presentation("group <a,a | a>").is_err());
        assert!(parse_presentation("group <a | b>").is_err());
        let err = parse_presentation("group <a | a^>").unwrap_err();
        assert!(matches!(err, Error::Parse { position: 13, .. }), "{err:?}");
    }

    #[test]
    fn relators_are_freely_reduced() {
        let p = parse_presentation("group <a,b | a b b^-1 a^-1 a^3, b b^-1>").unwrap();
        assert_eq!(p.relators().len(), 1);
        assert_eq!(p.relators()[0].render(p.alphabet()), "a^3");
    }

    #[test]
    fn concatenated_names_and_groups() {
        let p = parse_presentation("group <a,b | abab, (a b)^-2, ab^3>").unwrap();
        assert_eq!(p.relators()[0].render(p.alphabet()), "a b a b");
        assert_eq!(p.relators()[1].render(p.alphabet()), "b^-1 a^-1 b^-1 a^-1");
        assert_eq!(p.relators()[2].render(p.alphabet()), "a b^3");
    }

    #[test]
    fn cli_bodies() {
        let p = parse_raach_body("a:2,b:2; commute (a,b)").unwrap();
        assert_eq!(p.require_raach().unwrap().num_edges(), 1);
        let g = parse_group_body("<a,b | a^4, b^-1 a^2>").unwrap();
        assert_eq!(g.relators().len(), 2);
    }

    #[test]
    fn order_three_pair() {
        let ap = associated_pair(&raach("raach { a:3; }"));
        assert_eq!(ap.names(), ["a", "a^-1"]);
        assert_eq!(ap.weight(0, 1), 2);
        assert_eq!(ap.weighted_degree(0), 2);
    }

    #[test]
    fn racg_pair_is_defining_graph() {
        let h = raach("raach { a:2, b:2, c:2; commute (a,b), (a,c), (b,c); }");
        let ap = associated_pair(&h);
        assert_eq!(ap.len(), 3);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(ap.weight(i, j), u32::from(i != j));
            }
        }
    }

    #[test]
    fn raag_edge_gives_four_cycle() {
        let ap = associated_pair(&raach("raach { a:inf, b:inf; commute (a,b); }"));
        // a, a^-1, b, b^-1; derived by evaluating each case of the weight table
        let expected = [[0, 0, 1, 1], [0, 0, 1, 1], [1, 1, 0, 0], [1, 1, 0, 0]];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(ap.weight(i, j), expected[i][j], "({i},{j})");
            }
        }
    }

    #[test]
    fn product_graphs() {
        let a = raach("raach { a:2; }");
        let k2 = raach_product(&a, &a);
        assert_eq!(k2.names(), ["a", "a_2"]);
        assert!(k2.commute(0, 1));
        let two = raach("raach { a:2, b:inf; }");
        let p = raach_product(&two, &raach("raach { c:3; }"));
        assert_eq!(p.num_generators(), 3);
        assert_eq!(p.num_edges(), 2);
        assert_eq!(raach_product(&two, &DefiningGraph::empty()), two);
    }

    #[test]
    fn relator_containment_up_to_rotation() {
        let p = parse_presentation("group <a,b | a^4, b^-1 a^2>").unwrap();
        let q = parse_presentation("group <a,b | a a b^-1, a^-4, a^2>").unwrap();
        assert!(p.relators_contained_in(&q));
        assert!(!q.relators_contained_in(&p));
    }

    #[test]
    fn json_round_trip() {
        for text in [
            "raach { a:2, b:inf, c:4; commute (a,c); }",
            "group <x,y | x^3, y^2, (x y)^2>",
        ] {
            let p = parse_presentation(text).unwrap();
            let back = Presentation::from_json(&p.to_json()).unwrap();
            assert_eq!(back, p);
        }
    }
}
