//! JSON file formats for sequences and automata.

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

use lrsomega_core::algebra::rational::{format_rational, parse_rational};
use lrsomega_core::automata::MullerAutomaton;
use lrsomega_core::lrs::{Lrs, Sign};
use lrsomega_core::words::{Letter, ProductLetter};

/// On-disk sequence description: rationals as `p/q` strings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LrsFile {
    pub coeffs: Vec<String>,
    pub initial: Vec<String>,
}

impl LrsFile {
    pub fn to_lrs(&self) -> Result<Lrs> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|s| parse_rational(s).map_err(|e| anyhow!("{e}")))
            .collect::<Result<Vec<_>>>()
            .context("parsing coefficients")?;
        let initial = self
            .initial
            .iter()
            .map(|s| parse_rational(s).map_err(|e| anyhow!("{e}")))
            .collect::<Result<Vec<_>>>()
            .context("parsing initial terms")?;
        Lrs::from_recurrence(coeffs, initial).map_err(|e| anyhow!("{e}"))
    }

    pub fn from_lrs(u: &Lrs) -> LrsFile {
        LrsFile {
            coeffs: u.coeffs().iter().map(format_rational).collect(),
            initial: u.initial().iter().map(format_rational).collect(),
        }
    }
}

pub fn load_lrs(path: &std::path::Path) -> Result<Lrs> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading sequence file {}", path.display()))?;
    let file: LrsFile = serde_json::from_str(&text)
        .with_context(|| format!("malformed sequence JSON in {}", path.display()))?;
    file.to_lrs()
}

/// On-disk automaton description.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AutomatonFile {
    pub states: Vec<String>,
    pub initial: String,
    pub alphabet: Vec<String>,
    pub delta: BTreeMap<String, BTreeMap<String, String>>,
    pub accepting: Vec<Vec<String>>,
}

impl AutomatonFile {
    pub fn load(path: &std::path::Path) -> Result<AutomatonFile> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading automaton file {}", path.display()))?;
        serde_json::from_str(&text)
            .with_context(|| format!("malformed automaton JSON in {}", path.display()))
    }

    /// Builds the automaton over an alphabet parsed by `parse_letter`; fails
    /// when any alphabet entry does not parse (e.g. the automaton is over
    /// the wrong alphabet for the query).
    pub fn build<L: Letter>(
        &self,
        parse_letter: impl Fn(&str) -> Option<L>,
    ) -> Result<MullerAutomaton<L>> {
        let alphabet: Vec<L> = self
            .alphabet
            .iter()
            .map(|s| {
                parse_letter(s).ok_or_else(|| anyhow!("alphabet letter `{s}` does not match the query alphabet"))
            })
            .collect::<Result<Vec<_>>>()?;
        let state_index: BTreeMap<&str, usize> =
            self.states.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        // Resolve the transition table up front for a total function check.
        let mut delta = vec![vec![None; alphabet.len()]; self.states.len()];
        for (from, row) in &self.delta {
            let &q = state_index
                .get(from.as_str())
                .ok_or_else(|| anyhow!("transition from unknown state {from}"))?;
            for (letter, to) in row {
                let a = self
                    .alphabet
                    .iter()
                    .position(|l| l == letter)
                    .ok_or_else(|| anyhow!("transition on unknown letter {letter}"))?;
                let &t = state_index
                    .get(to.as_str())
                    .ok_or_else(|| anyhow!("transition to unknown state {to}"))?;
                delta[q][a] = Some(t);
            }
        }
        let mut accepting = Vec::with_capacity(self.accepting.len());
        for family in &self.accepting {
            let mut mask = 0u64;
            for s in family {
                let &q = state_index
                    .get(s.as_str())
                    .ok_or_else(|| anyhow!("accepting set mentions unknown state {s}"))?;
                mask |= 1 << q;
            }
            if mask == 0 {
                bail!("empty accepting set");
            }
            accepting.push(mask);
        }
        MullerAutomaton::new(
            self.states.clone(),
            &self.initial,
            alphabet,
            |q, a| delta[q][a],
            accepting,
        )
        .map_err(|e| anyhow!("{e}"))
    }
}

pub fn parse_sign_letter(s: &str) -> Option<Sign> {
    let mut chars = s.chars();
    let c = chars.next()?;
    if chars.next().is_some() {
        return None;
    }
    Sign::from_char(c)
}

pub fn parse_tuple_letter(s: &str, tracks: usize) -> Option<ProductLetter> {
    let inner = s.trim().strip_prefix('(')?.strip_suffix(')')?;
    let parts: Vec<&str> = inner.split(',').collect();
    if parts.len() != tracks {
        return None;
    }
    let mut tuple = Vec::with_capacity(tracks);
    for p in parts {
        let p = p.trim();
        let mut chars = p.chars();
        let c = chars.next()?;
        if chars.next().is_some() {
            return None;
        }
        tuple.push(Sign::from_char(c)?);
    }
    Some(ProductLetter(tuple))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lrs_round_trip() {
        let text = r#"{"coeffs": ["1", "1"], "initial": ["1", "1"]}"#;
        let file: LrsFile = serde_json::from_str(text).unwrap();
        let u = file.to_lrs().unwrap();
        assert_eq!(u, Lrs::fibonacci());
        let back = LrsFile::from_lrs(&u);
        assert_eq!(back.coeffs, vec!["1", "1"]);
    }

    #[test]
    fn automaton_build() {
        let text = r#"{
            "states": ["q0", "q1"],
            "initial": "q0",
            "alphabet": ["+", "0", "-"],
            "delta": {
                "q0": {"+": "q1", "0": "q0", "-": "q0"},
                "q1": {"+": "q1", "0": "q0", "-": "q0"}
            },
            "accepting": [["q1"], ["q0", "q1"]]
        }"#;
        let file: AutomatonFile = serde_json::from_str(text).unwrap();
        let a = file.build(parse_sign_letter).unwrap();
        assert_eq!(a.state_count(), 2);
        assert_eq!(a.accepting().len(), 2);
    }

    #[test]
    fn automaton_wrong_alphabet() {
        let text = r#"{
            "states": ["q0"],
            "initial": "q0",
            "alphabet": ["a"],
            "delta": {"q0": {"a": "q0"}},
            "accepting": [["q0"]]
        }"#;
        let file: AutomatonFile = serde_json::from_str(text).unwrap();
        assert!(file.build(parse_sign_letter).is_err());
    }

    #[test]
    fn tuple_letters() {
        assert_eq!(
            parse_tuple_letter("(+,0)", 2),
            Some(ProductLetter(vec![Sign::Plus, Sign::Zero]))
        );
        assert_eq!(parse_tuple_letter("(+,0)", 3), None);
        assert_eq!(parse_tuple_letter("+", 1), None);
    }
}
