//! Presentations shipped with the crate.

use crate::error::{Error, Result};
use crate::presentation::{parse_group_body, parse_presentation, Presentation};

const PRESENTATIONS: &str = include_str!("../data/presentations.txt");
const PAIRS: &str = include_str!("../data/monotonicity_pairs.txt");

fn data_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'))
}

/// `(name, presentation)` in file order.
pub fn presentations() -> Vec<(String, Presentation)> {
    data_lines(PRESENTATIONS)
        .map(|line| {
            let (name, text) = line.split_once('=').expect("name = presentation");
            let p = parse_presentation(text.trim()).expect("builtin presentation parses");
            (name.trim().to_string(), p)
        })
        .collect()
}

pub fn lookup(name: &str) -> Result<Presentation> {
    presentations()
        .into_iter()
        .find(|(n, _)| n == name)
        .map(|(_, p)| p)
        .ok_or_else(|| {
            let known: Vec<String> = presentations().into_iter().map(|(n, _)| n).collect();
            Error::invalid(format!("unknown builtin {name:?}; known: {}", known.join(", ")))
        })
}

#[derive(Clone, Debug)]
pub struct PresentationPair {
    pub name: String,
    pub source: Presentation,
    pub target: Presentation,
}

pub fn monotonicity_pairs() -> Vec<PresentationPair> {
    data_lines(PAIRS).map(|line| parse_pair(line).expect("builtin pair parses")).collect()
}

/// `name: <source> -> <target>`.
pub fn parse_pair(line: &str) -> Result<PresentationPair> {
    let bad = || Error::invalid(format!("expected `name: source -> target`, got {line:?}"));
    let (name, rest) = line.split_once(':').ok_or_else(bad)?;
    let (source, target) = rest.split_once("->").ok_or_else(bad)?;
    Ok(PresentationPair {
        name: name.trim().to_string(),
        source: parse_group_body(source.trim())?,
        target: parse_group_body(target.trim())?,
    })
}

/// Pairs from a file in the same format as the builtin list.
pub fn parse_pairs(text: &str) -> Result<Vec<PresentationPair>> {
    data_lines(text).map(parse_pair).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn everything_parses() {
        let ps = presentations();
        assert_eq!(ps.len(), 18);
        assert!(lookup("tree3").unwrap().defining_graph().is_some());
        assert!(lookup("k4").unwrap().defining_graph().is_none());
        assert!(lookup("nope").is_err());
        let pairs = monotonicity_pairs();
        assert!(pairs.len() >= 10);
        assert!(pairs.iter().all(|p| p.source.relators_contained_in(&p.target)));
    }
}
