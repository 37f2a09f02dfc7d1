//! Words, patterns, and the word-oracle interface.
//!
//! Occurrence positions are 0-based over the word view; the off-by-one
//! bridge to 1-based sequence indices lives in [`crate::lrs`]. The exact
//! oracle for ultimately periodic words implemented here doubles as the
//! reference implementation that the LRS oracle is tested against.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::lrs::Sign;

/// Alphabet letters: signs, or tuples of signs for product words.
pub trait Letter: Clone + Eq + Ord + fmt::Debug {
    fn render(&self) -> String;
}

impl Letter for Sign {
    fn render(&self) -> String {
        let mut s = String::new();
        s.push(self.as_char());
        s
    }
}

/// A letter of the product alphabet: one sign per track.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct ProductLetter(pub Vec<Sign>);

impl Letter for ProductLetter {
    fn render(&self) -> String {
        let mut s = String::from("(");
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push(x.as_char());
        }
        s.push(')');
        s
    }
}

/// A finite pattern over some alphabet.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Pattern<L> {
    letters: Vec<L>,
}

impl<L: Letter> Pattern<L> {
    pub fn new(letters: Vec<L>) -> Self {
        Pattern { letters }
    }

    pub fn letters(&self) -> &[L] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn render(&self) -> String {
        self.letters.iter().map(|l| l.render()).collect()
    }
}

impl Pattern<Sign> {
    /// Parses the `+-0` sign-pattern syntax.
    pub fn parse_signs(s: &str) -> Option<Pattern<Sign>> {
        let letters: Option<Vec<Sign>> = s.chars().map(Sign::from_char).collect();
        Some(Pattern::new(letters?))
    }
}

impl Pattern<ProductLetter> {
    /// Parses concatenated tuples like `(+,0)(-,0)`, checking track count.
    pub fn parse_tuples(s: &str, tracks: usize) -> Option<Pattern<ProductLetter>> {
        let mut letters = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return None;
            }
            let close = rest.find(')')?;
            let inner = &rest[1..close];
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
            letters.push(ProductLetter(tuple));
            rest = rest[close + 1..].trim_start();
        }
        (!letters.is_empty()).then(|| Pattern::new(letters))
    }
}

pub fn render_word<L: Letter>(w: &[L]) -> String {
    w.iter().map(|l| l.render()).collect()
}

/// How an oracle answer was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Exact finite computation (ultimately periodic words, pattern-lift
    /// contradictions).
    Exact,
    /// Derived from an exact scan beyond a heuristic trust threshold.
    HeuristicThreshold,
    /// Confirmed by the external-solver certificate path.
    Certified,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Exact => write!(f, "exact-scan"),
            Provenance::HeuristicThreshold => write!(f, "heuristic-threshold"),
            Provenance::Certified => write!(f, "certified"),
        }
    }
}

/// Answer to "does `w` occur infinitely often".
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Occurs {
    Yes(YesBound),
    No(NoBound),
    Unknown(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YesBound {
    /// Maximal distance between consecutive occurrence starts.
    pub max_start_gap: u64,
    /// Tight almost-periodicity window: every factor of this length
    /// contains an occurrence, some factor one shorter does not.
    pub window: u64,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoBound {
    /// No occurrence starts at or after this position.
    pub threshold: u64,
    pub provenance: Provenance,
}

/// Separator structure between consecutive occurrences of a recurring
/// pattern: beyond `prefix_len` the word factorizes as
/// `w s_(i1) w s_(i2) ...` with all `s` drawn from `separators`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterRecurs<L> {
    pub separators: Vec<Vec<L>>,
    pub prefix_len: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InterResult<L> {
    No,
    Recurs(InterRecurs<L>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InterOutcome<L> {
    Result(InterResult<L>),
    Unknown(String),
}

/// Oracle interface over an infinite word, per the effectiveness contract:
/// exact for ultimately periodic words, documented semi-decision for LRS
/// sign words.
pub trait WordOracle<L: Letter> {
    fn letter_at(&self, pos: u64) -> L;
    fn occurs_infinitely(&self, w: &Pattern<L>) -> Occurs;
    fn inter(&self, w: &Pattern<L>) -> InterOutcome<L>;
}

/// The word `prefix . cycle^omega`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UltimatelyPeriodicWord<L> {
    pub prefix: Vec<L>,
    pub cycle: Vec<L>,
}

impl<L: Letter> UltimatelyPeriodicWord<L> {
    pub fn new(prefix: Vec<L>, cycle: Vec<L>) -> Self {
        assert!(!cycle.is_empty(), "cycle must be nonempty");
        UltimatelyPeriodicWord { prefix, cycle }
    }

    pub fn letter(&self, pos: u64) -> L {
        let p = self.prefix.len() as u64;
        if pos < p {
            self.prefix[pos as usize].clone()
        } else {
            self.cycle[((pos - p) % self.cycle.len() as u64) as usize].clone()
        }
    }

    fn occurrence_at(&self, start: u64, w: &Pattern<L>) -> bool {
        w.letters()
            .iter()
            .enumerate()
            .all(|(k, l)| self.letter(start + k as u64) == *l)
    }

    /// All occurrence starts in `[0, until)`.
    pub fn occurrence_starts(&self, w: &Pattern<L>, until: u64) -> Vec<u64> {
        (0..until).filter(|&s| self.occurrence_at(s, w)).collect()
    }

    /// Residues `r` such that every position `prefix_len + r + k*cycle_len`
    /// starts an occurrence.
    fn periodic_residues(&self, w: &Pattern<L>) -> Vec<u64> {
        let p = self.prefix.len() as u64;
        (0..self.cycle.len() as u64)
            .filter(|&r| self.occurrence_at(p + r, w))
            .collect()
    }
}

/// Exact decision of infinite occurrence in an ultimately periodic word,
/// with the tight almost-periodicity window on the Yes side and the last
/// occurrence threshold on the No side.
pub fn up_occurs_infinitely<L: Letter>(
    alpha: &UltimatelyPeriodicWord<L>,
    w: &Pattern<L>,
) -> Occurs {
    assert!(!w.is_empty(), "occurrence queries need a nonempty pattern");
    let p = alpha.prefix.len() as u64;
    let c = alpha.cycle.len() as u64;
    let w_len = w.len() as u64;
    let residues = alpha.periodic_residues(w);
    if residues.is_empty() {
        // Occurrences can only start before the purely periodic regime.
        let last = alpha
            .occurrence_starts(w, p + c + w_len)
            .into_iter().rfind(|&s| s < p + c);
        return Occurs::No(NoBound {
            threshold: last.map_or(0, |s| s + 1),
            provenance: Provenance::Exact,
        });
    }
    // Scan three cycle lengths past the prefix: every gap shape of the
    // infinite occurrence set shows up there.
    let starts = alpha.occurrence_starts(w, p + 3 * c);
    let mut max_gap = 0u64;
    for pair in starts.windows(2) {
        if pair[0] <= p + 2 * c {
            max_gap = max_gap.max(pair[1] - pair[0]);
        }
    }
    if starts.len() == 1 {
        max_gap = c; // single residue, gaps are exactly one cycle
    }
    let first = starts[0];
    let window = first.max(max_gap.saturating_sub(1)) + w_len;
    Occurs::Yes(YesBound { max_start_gap: max_gap, window, provenance: Provenance::Exact })
}

/// Greedy non-overlapping factorization data: the prefix before the first
/// occurrence and the separator sequence after it.
pub struct Factorization<L> {
    pub first_start: u64,
    pub separators_in_order: Vec<Vec<L>>,
    /// Index into `separators_in_order` where the cycle of the greedy orbit
    /// begins, and its length.
    pub cycle_start: usize,
    pub cycle_len: usize,
}

/// Runs the greedy factorization `w sep w sep ...` from the first occurrence
/// until the greedy orbit provably cycles.
pub fn up_factorization<L: Letter>(
    alpha: &UltimatelyPeriodicWord<L>,
    w: &Pattern<L>,
) -> Option<Factorization<L>> {
    let p = alpha.prefix.len() as u64;
    let c = alpha.cycle.len() as u64;
    let w_len = w.len() as u64;
    if alpha.periodic_residues(w).is_empty() {
        return None;
    }
    // First occurrence overall.
    let horizon = p + 2 * c + w_len;
    let first = (0..horizon).find(|&s| alpha.occurrence_at(s, w))?;
    let mut occs = Vec::new();
    let mut seps: Vec<Vec<L>> = Vec::new();
    let mut seen_states: Vec<(u64, usize)> = Vec::new(); // (state key, index into occs)
    let mut cur = first;
    loop {
        occs.push(cur);
        if cur >= p {
            let key = (cur - p) % c;
            if let Some(&(_, at)) = seen_states.iter().find(|&&(k, _)| k == key) {
                return Some(Factorization {
                    first_start: first,
                    separators_in_order: seps,
                    cycle_start: at,
                    cycle_len: occs.len() - 1 - at,
                });
            }
            seen_states.push((key, occs.len() - 1));
        }
        // Next greedy occurrence at or after cur + w_len; one always exists.
        let mut next = cur + w_len;
        loop {
            if alpha.occurrence_at(next, w) {
                break;
            }
            next += 1;
        }
        seps.push((cur + w_len..next).map(|i| alpha.letter(i)).collect());
        cur = next;
    }
}

/// Exact separator set for a recurring pattern in an ultimately periodic
/// word; `No` when the pattern does not recur.
pub fn up_inter<L: Letter>(
    alpha: &UltimatelyPeriodicWord<L>,
    w: &Pattern<L>,
) -> InterResult<L> {
    assert!(!w.is_empty(), "inter needs a nonempty pattern");
    let Some(fac) = up_factorization(alpha, w) else {
        return InterResult::No;
    };
    // Only separators on the greedy cycle recur forever; the factorization
    // therefore starts at the first cycle occurrence.
    let mut recurring: Vec<Vec<L>> =
        fac.separators_in_order[fac.cycle_start..fac.cycle_start + fac.cycle_len].to_vec();
    recurring.sort();
    recurring.dedup();
    // Position of the occurrence where the cycle starts.
    let mut pos = fac.first_start;
    for sep in &fac.separators_in_order[..fac.cycle_start] {
        pos += w.len() as u64 + sep.len() as u64;
    }
    InterResult::Recurs(InterRecurs { separators: recurring, prefix_len: pos })
}

impl<L: Letter> WordOracle<L> for UltimatelyPeriodicWord<L> {
    fn letter_at(&self, pos: u64) -> L {
        self.letter(pos)
    }

    fn occurs_infinitely(&self, w: &Pattern<L>) -> Occurs {
        up_occurs_infinitely(self, w)
    }

    fn inter(&self, w: &Pattern<L>) -> InterOutcome<L> {
        InterOutcome::Result(up_inter(self, w))
    }
}

/// Occurrence statistics of a pattern in a finite word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapStats {
    pub positions: Vec<u64>,
    pub gaps: Vec<u64>,
    pub max_gap: Option<u64>,
    pub count: usize,
}

pub fn gap_statistics<L: Letter>(prefix: &[L], w: &Pattern<L>) -> GapStats {
    let positions: Vec<u64> = if w.is_empty() || w.len() > prefix.len() {
        Vec::new()
    } else {
        (0..=(prefix.len() - w.len()) as u64)
            .filter(|&s| {
                w.letters()
                    .iter()
                    .enumerate()
                    .all(|(k, l)| prefix[s as usize + k] == *l)
            })
            .collect()
    };
    let gaps: Vec<u64> = positions.windows(2).map(|p| p[1] - p[0]).collect();
    GapStats {
        max_gap: gaps.iter().copied().max(),
        count: positions.len(),
        positions,
        gaps,
    }
}

/// Parses a sign word like `0-0+`.
pub fn parse_sign_word(s: &str) -> Option<Vec<Sign>> {
    s.chars().map(Sign::from_char).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn upw(prefix: &str, cycle: &str) -> UltimatelyPeriodicWord<Sign> {
        UltimatelyPeriodicWord::new(
            parse_sign_word(prefix).unwrap(),
            parse_sign_word(cycle).unwrap(),
        )
    }

    fn pat(s: &str) -> Pattern<Sign> {
        Pattern::parse_signs(s).unwrap()
    }

    #[test]
    fn occurs_in_periodic_word() {
        let alpha = upw("", "0-0+");
        match up_occurs_infinitely(&alpha, &pat("+")) {
            Occurs::Yes(y) => {
                assert_eq!(y.max_start_gap, 4);
                assert_eq!(y.window, 4);
            }
            other => panic!("expected yes, got {other:?}"),
        }
    }

    #[test]
    fn never_occurs() {
        let alpha = upw("", "-+");
        match up_occurs_infinitely(&alpha, &pat("++")) {
            Occurs::No(n) => assert_eq!(n.threshold, 0),
            other => panic!("expected no, got {other:?}"),
        }
    }

    #[test]
    fn occurs_only_in_prefix() {
        let alpha = upw("+++", "-");
        match up_occurs_infinitely(&alpha, &pat("+")) {
            Occurs::No(n) => assert_eq!(n.threshold, 3),
            other => panic!("expected no, got {other:?}"),
        }
    }

    #[test]
    fn window_bound_is_tight() {
        // Def-style tightness: every window of length `window` contains the
        // pattern, some window one shorter misses it.
        let cases = [
            (upw("", "0-0+"), pat("+")),
            (upw("", "0-0+"), pat("0-")),
            (upw("-", "+-0"), pat("0")),
            (upw("", "+"), pat("+")),
        ];
        for (alpha, w) in cases {
            let Occurs::Yes(y) = up_occurs_infinitely(&alpha, &w) else {
                panic!("expected yes");
            };
            let horizon = (alpha.prefix.len() + 3 * alpha.cycle.len() + 4 * y.window as usize) as u64;
            let starts = alpha.occurrence_starts(&w, horizon);
            let window = y.window;
            for n in 0..horizon.saturating_sub(window) {
                assert!(
                    starts.iter().any(|&s| s >= n && s + w.len() as u64 <= n + window),
                    "window at {n} misses pattern"
                );
            }
            if window > 1 {
                let short = window - 1;
                let missed = (0..horizon.saturating_sub(short))
                    .any(|n| !starts.iter().any(|&s| s >= n && s + w.len() as u64 <= n + short));
                assert!(missed, "bound {window} not tight");
            }
        }
    }

    #[test]
    fn inter_separators() {
        let alpha = upw("", "0-0+");
        match up_inter(&alpha, &pat("+")) {
            InterResult::Recurs(r) => {
                assert_eq!(r.separators, alloc::vec![parse_sign_word("0-0").unwrap()]);
            }
            InterResult::No => panic!("expected recurs"),
        }
        let alpha = upw("", "-+");
        match up_inter(&alpha, &pat("-+")) {
            InterResult::Recurs(r) => {
                assert_eq!(r.separators, alloc::vec![Vec::<Sign>::new()]);
            }
            InterResult::No => panic!("expected recurs"),
        }
        assert_eq!(up_inter(&upw("", "-+"), &pat("0")), InterResult::No);
    }

    #[test]
    fn factorization_reconstructs_word() {
        for (alpha, w) in [
            (upw("", "0-0+"), pat("+")),
            (upw("+0-", "0-+"), pat("-")),
            (upw("", "-+"), pat("-+")),
        ] {
            let fac = up_factorization(&alpha, &w).unwrap();
            let upto = alpha.prefix.len() as u64 + 5 * alpha.cycle.len() as u64;
            // Rebuild: word[0..first_start), then w sep w sep ... with the
            // recorded sequence extended by cycling.
            let mut rebuilt: Vec<Sign> = (0..fac.first_start).map(|i| alpha.letter(i)).collect();
            let mut i = 0usize;
            while (rebuilt.len() as u64) < upto {
                rebuilt.extend_from_slice(w.letters());
                let sep = if i < fac.separators_in_order.len() {
                    fac.separators_in_order[i].clone()
                } else {
                    let k = fac.cycle_start
                        + (i - fac.cycle_start) % fac.cycle_len.max(1);
                    fac.separators_in_order[k].clone()
                };
                rebuilt.extend(sep);
                i += 1;
            }
            for (p, s) in rebuilt.iter().take(upto as usize).enumerate() {
                assert_eq!(*s, alpha.letter(p as u64), "position {p}");
            }
        }
    }

    #[test]
    fn gap_statistics_examples() {
        // The growing-gap shape "+-++-+++-".
        let word = parse_sign_word("+-++-+++-").unwrap();
        let stats = gap_statistics(&word, &pat("-"));
        assert_eq!(stats.positions, alloc::vec![1, 4, 8]);
        assert_eq!(stats.gaps, alloc::vec![3, 4]);
        assert_eq!(stats.max_gap, Some(4));

        let word = parse_sign_word("0000").unwrap();
        assert_eq!(gap_statistics(&word, &pat("+")).count, 0);

        let word = parse_sign_word("0-0+0-0+").unwrap();
        let stats = gap_statistics(&word, &pat("0-"));
        assert_eq!(stats.positions, alloc::vec![0, 4]);
        assert_eq!(stats.max_gap, Some(4));
    }

    #[test]
    fn gap_max_monotone_in_prefix_length() {
        let alpha = upw("", "0-0++-");
        let w = pat("+");
        let mut prev = 0u64;
        for len in (6..60).step_by(6) {
            let word: Vec<Sign> = (0..len).map(|i| alpha.letter(i)).collect();
            let stats = gap_statistics(&word, &w);
            let m = stats.max_gap.unwrap_or(0);
            assert!(m >= prev);
            prev = m;
        }
    }

    #[test]
    fn product_letters_render_and_parse() {
        let p = Pattern::parse_tuples("(+,0)(-,0)", 2).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.render(), "(+,0)(-,0)");
        assert!(Pattern::parse_tuples("(+,0)", 3).is_none());
        assert!(Pattern::parse_tuples("+0", 2).is_none());
    }

    #[test]
    fn pattern_longer_than_cycle() {
        let alpha = upw("", "0-0+");
        match up_occurs_infinitely(&alpha, &pat("0-0+0-")) {
            Occurs::Yes(y) => {
                assert_eq!(y.max_start_gap, 4);
                // Def-style window: wait 3 + length 6.
                assert_eq!(y.window, 9);
            }
            other => panic!("expected yes, got {other:?}"),
        }
    }
}
