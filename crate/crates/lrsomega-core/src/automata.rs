//! Deterministic Muller automata, their transition monoid, and the
//! fixpoint model-checking algorithm over a word oracle.
//!
//! The monoid element of a finite word records, per state, the state
//! reached and the set of states seen along the way; products compose the
//! reach maps and union the seen sets. The checker grows a recurring word
//! until no recurring extension is increasing, then reads the answer off a
//! minimal seen-set edge.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::words::{
    InterOutcome, InterResult, Letter, Occurs, Pattern, UltimatelyPeriodicWord, WordOracle,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AutomatonError {
    NoStates,
    DuplicateState(String),
    UnknownState(String),
    UnknownLetter(String),
    MissingTransition { state: String, letter: String },
    Unreachable(String),
    TooManyStates(usize),
}

impl fmt::Display for AutomatonError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AutomatonError::NoStates => write!(f, "automaton needs at least one state"),
            AutomatonError::DuplicateState(s) => write!(f, "duplicate state {s}"),
            AutomatonError::UnknownState(s) => write!(f, "unknown state {s}"),
            AutomatonError::UnknownLetter(l) => write!(f, "unknown letter {l}"),
            AutomatonError::MissingTransition { state, letter } => {
                write!(f, "missing transition from {state} on {letter}")
            }
            AutomatonError::Unreachable(s) => {
                write!(f, "state {s} unreachable from the initial state")
            }
            AutomatonError::TooManyStates(n) => write!(f, "{n} states exceed the supported 64"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for AutomatonError {}

/// Deterministic complete Muller automaton over letters of type `L`.
/// Acceptance: the set of states visited infinitely often belongs to the
/// accepting family.
#[derive(Clone, Debug)]
pub struct MullerAutomaton<L> {
    state_names: Vec<String>,
    initial: usize,
    alphabet: Vec<L>,
    /// delta[state][letter] -> state
    delta: Vec<Vec<usize>>,
    /// Accepting family as bitmasks over state indices.
    accepting: Vec<u64>,
}

impl<L: Letter> MullerAutomaton<L> {
    pub fn new(
        state_names: Vec<String>,
        initial: &str,
        alphabet: Vec<L>,
        transitions: impl Fn(usize, usize) -> Option<usize>,
        accepting: Vec<u64>,
    ) -> Result<Self, AutomatonError> {
        if state_names.is_empty() {
            return Err(AutomatonError::NoStates);
        }
        if state_names.len() > 64 {
            return Err(AutomatonError::TooManyStates(state_names.len()));
        }
        for (i, s) in state_names.iter().enumerate() {
            if state_names[..i].contains(s) {
                return Err(AutomatonError::DuplicateState(s.clone()));
            }
        }
        let initial = state_names
            .iter()
            .position(|s| s == initial)
            .ok_or_else(|| AutomatonError::UnknownState(String::from(initial)))?;
        let mut delta = vec![vec![0usize; alphabet.len()]; state_names.len()];
        for (q, row) in delta.iter_mut().enumerate() {
            for (a, cell) in row.iter_mut().enumerate() {
                let t = transitions(q, a).ok_or_else(|| AutomatonError::MissingTransition {
                    state: state_names[q].clone(),
                    letter: alphabet[a].render(),
                })?;
                if t >= state_names.len() {
                    return Err(AutomatonError::UnknownState(format!("index {t}")));
                }
                *cell = t;
            }
        }
        let automaton = MullerAutomaton { state_names, initial, alphabet, delta, accepting };
        automaton.check_reachability()?;
        Ok(automaton)
    }

    fn check_reachability(&self) -> Result<(), AutomatonError> {
        let mut seen = 1u64 << self.initial;
        let mut stack = vec![self.initial];
        while let Some(q) = stack.pop() {
            for &t in &self.delta[q] {
                if seen & (1 << t) == 0 {
                    seen |= 1 << t;
                    stack.push(t);
                }
            }
        }
        for q in 0..self.state_names.len() {
            if seen & (1 << q) == 0 {
                return Err(AutomatonError::Unreachable(self.state_names[q].clone()));
            }
        }
        Ok(())
    }

    pub fn state_count(&self) -> usize {
        self.state_names.len()
    }

    pub fn state_names(&self) -> &[String] {
        &self.state_names
    }

    pub fn alphabet(&self) -> &[L] {
        &self.alphabet
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn accepting(&self) -> &[u64] {
        &self.accepting
    }

    pub fn letter_index(&self, l: &L) -> Option<usize> {
        self.alphabet.iter().position(|a| a == l)
    }

    pub fn step(&self, state: usize, letter: usize) -> usize {
        self.delta[state][letter]
    }

    pub fn accepts_set(&self, mask: u64) -> bool {
        self.accepting.contains(&mask)
    }

    /// The identity of the transition monoid.
    pub fn monoid_identity(&self) -> MonoidElement {
        MonoidElement { edges: (0..self.state_count()).map(|q| (q, 1u64 << q)).collect() }
    }

    /// `h(a)` for a single letter.
    pub fn monoid_letter(&self, letter: usize) -> MonoidElement {
        MonoidElement {
            edges: (0..self.state_count())
                .map(|q| {
                    let t = self.delta[q][letter];
                    (t, (1u64 << q) | (1u64 << t))
                })
                .collect(),
        }
    }

    /// The homomorphism `h` on a finite word.
    pub fn monoid_embed(&self, word: &[L]) -> Result<MonoidElement, AutomatonError> {
        let mut acc = self.monoid_identity();
        for l in word {
            let idx = self
                .letter_index(l)
                .ok_or_else(|| AutomatonError::UnknownLetter(l.render()))?;
            acc = monoid_product(&acc, &self.monoid_letter(idx));
        }
        Ok(acc)
    }
}

/// Transition-monoid element: one outgoing edge per state, labeled with the
/// set of states seen along the way (as a bitmask).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonoidElement {
    /// edges[q] = (target, seen-mask)
    pub edges: Vec<(usize, u64)>,
}

impl MonoidElement {
    pub fn target(&self, q: usize) -> usize {
        self.edges[q].0
    }

    pub fn seen(&self, q: usize) -> u64 {
        self.edges[q].1
    }
}

/// Composition: follow `x` then `y`, uniting the seen sets.
pub fn monoid_product(x: &MonoidElement, y: &MonoidElement) -> MonoidElement {
    MonoidElement {
        edges: x
            .edges
            .iter()
            .map(|&(mid, seen1)| {
                let (end, seen2) = y.edges[mid];
                (end, seen1 | seen2)
            })
            .collect(),
    }
}

pub fn monoid_product_all(xs: &[MonoidElement]) -> MonoidElement {
    let mut iter = xs.iter();
    let first = iter.next().expect("nonempty product").clone();
    iter.fold(first, |acc, x| monoid_product(&acc, x))
}

/// Increasing product: some state sees strictly more states in the full
/// product than in the first factor.
pub fn is_increasing(xs: &[MonoidElement]) -> bool {
    assert!(xs.len() >= 2, "increasing products need at least two factors");
    let full = monoid_product_all(xs);
    xs[0].edges.iter().enumerate().any(|(q, &(_, seen_first))| {
        let seen_full = full.seen(q);
        seen_first & seen_full == seen_first && seen_first != seen_full
    })
}

/// Outcome of the model checker.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject,
    Unknown(String),
}

/// Detailed result: the verdict plus run diagnostics.
#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub verdict: Verdict,
    /// Fixpoint iterations taken.
    pub iterations: usize,
    /// Length of the final recurring word.
    pub witness_len: usize,
    /// The minimal seen-set the answer was read from, as state names.
    pub decisive_set: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckError {
    /// No alphabet letter recurs: the oracle word is not over this alphabet.
    MalformedOracle,
    Automaton(AutomatonError),
    /// The fixpoint failed to settle within the guaranteed iteration bound.
    IterationOverflow,
}

impl fmt::Display for CheckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckError::MalformedOracle => {
                write!(f, "no alphabet letter recurs; the oracle word is not over this alphabet")
            }
            CheckError::Automaton(e) => write!(f, "{e}"),
            CheckError::IterationOverflow => write!(f, "fixpoint exceeded the |Q|^2 bound"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for CheckError {}

/// Decides whether the oracle's word is accepted, assuming the automaton
/// recognizes a prefix-independent language (the caller's contract).
///
/// Starting from a recurring letter, the algorithm repeatedly looks for a
/// recurring extension `u u_i u u_j` whose monoid image is an increasing
/// product, and stops at a fixpoint; the infinitely-visited state set is
/// then a minimal seen-set label in `h(u)`.
pub fn model_check<L: Letter>(
    oracle: &dyn WordOracle<L>,
    automaton: &MullerAutomaton<L>,
) -> Result<CheckOutcome, CheckError> {
    // Probe the alphabet in order; the first recurring letter seeds the
    // loop.
    let mut current: Option<Vec<L>> = None;
    let mut any_unknown: Option<String> = None;
    for letter in automaton.alphabet() {
        let w = Pattern::new(vec![letter.clone()]);
        match oracle.occurs_infinitely(&w) {
            Occurs::Yes(_) => {
                current = Some(vec![letter.clone()]);
                break;
            }
            Occurs::No(_) => continue,
            Occurs::Unknown(r) => any_unknown = Some(r),
        }
    }
    let Some(mut word) = current else {
        return match any_unknown {
            Some(r) => Ok(CheckOutcome {
                verdict: Verdict::Unknown(format!("recurring-letter probe unresolved: {r}")),
                iterations: 0,
                witness_len: 0,
                decisive_set: Vec::new(),
            }),
            None => Err(CheckError::MalformedOracle),
        };
    };

    let q2 = automaton.state_count() * automaton.state_count();
    let mut iterations = 0usize;
    loop {
        iterations += 1;
        if iterations > q2 + 1 {
            return Err(CheckError::IterationOverflow);
        }
        let separators = match oracle.inter(&Pattern::new(word.clone())) {
            InterOutcome::Result(InterResult::Recurs(r)) => r.separators,
            InterOutcome::Result(InterResult::No) => {
                // Contradicts the recurrence certificate for `word`.
                return Err(CheckError::MalformedOracle);
            }
            InterOutcome::Unknown(r) => {
                return Ok(CheckOutcome {
                    verdict: Verdict::Unknown(format!("separator query unresolved: {r}")),
                    iterations,
                    witness_len: word.len(),
                    decisive_set: Vec::new(),
                })
            }
        };
        let h_word = automaton.monoid_embed(&word).map_err(CheckError::Automaton)?;
        let h_seps: Vec<MonoidElement> = separators
            .iter()
            .map(|s| automaton.monoid_embed(s))
            .collect::<Result<_, _>>()
            .map_err(CheckError::Automaton)?;

        // Search recurring increasing extensions in (i, j) lexicographic
        // order.
        let mut extended = false;
        let mut unknown_probe: Option<String> = None;
        'search: for (i, sep_i) in separators.iter().enumerate() {
            for (j, sep_j) in separators.iter().enumerate() {
                let factors =
                    [h_word.clone(), h_seps[i].clone(), h_word.clone(), h_seps[j].clone()];
                if !is_increasing(&factors) {
                    continue;
                }
                let mut candidate = word.clone();
                candidate.extend(sep_i.iter().cloned());
                candidate.extend(word.iter().cloned());
                candidate.extend(sep_j.iter().cloned());
                match oracle.occurs_infinitely(&Pattern::new(candidate.clone())) {
                    Occurs::Yes(_) => {
                        word = candidate;
                        extended = true;
                        break 'search;
                    }
                    Occurs::No(_) => continue,
                    Occurs::Unknown(r) => unknown_probe = Some(r),
                }
            }
        }
        if extended {
            continue;
        }
        if let Some(r) = unknown_probe {
            return Ok(CheckOutcome {
                verdict: Verdict::Unknown(format!("extension probe unresolved: {r}")),
                iterations,
                witness_len: word.len(),
                decisive_set: Vec::new(),
            });
        }

        // Fixpoint: read the answer off an edge with minimal seen-set
        // cardinality, ties broken by lexicographically smallest source
        // state name.
        let mut best: Option<(u32, &String, u64)> = None;
        for (q, &(_, seen)) in h_word.edges.iter().enumerate() {
            let size = seen.count_ones();
            let name = &automaton.state_names()[q];
            let better = match &best {
                None => true,
                Some((bsize, bname, _)) => size < *bsize || (size == *bsize && name < *bname),
            };
            if better {
                best = Some((size, name, seen));
            }
        }
        let (_, _, seen) = best.expect("automaton has states");
        let decisive_set = mask_names(automaton, seen);
        let verdict = if automaton.accepts_set(seen) { Verdict::Accept } else { Verdict::Reject };
        return Ok(CheckOutcome { verdict, iterations, witness_len: word.len(), decisive_set });
    }
}

fn mask_names<L: Letter>(automaton: &MullerAutomaton<L>, mask: u64) -> Vec<String> {
    (0..automaton.state_count())
        .filter(|q| mask & (1 << q) != 0)
        .map(|q| automaton.state_names()[q].clone())
        .collect()
}

/// Independent reference: simulate an ultimately periodic word and read the
/// infinitely-visited set off the final lasso.
pub fn brute_force_up_check<L: Letter>(
    alpha: &UltimatelyPeriodicWord<L>,
    automaton: &MullerAutomaton<L>,
) -> Result<bool, AutomatonError> {
    brute_force_from_state(alpha, automaton, automaton.initial())
}

/// Same, started from an arbitrary state.
pub fn brute_force_from_state<L: Letter>(
    alpha: &UltimatelyPeriodicWord<L>,
    automaton: &MullerAutomaton<L>,
    start: usize,
) -> Result<bool, AutomatonError> {
    let mut state = start;
    for l in &alpha.prefix {
        let idx = automaton
            .letter_index(l)
            .ok_or_else(|| AutomatonError::UnknownLetter(l.render()))?;
        state = automaton.step(state, idx);
    }
    // Run whole cycles until the state at a cycle boundary repeats.
    let mut boundary_states: Vec<usize> = vec![state];
    let mut visited_per_pass: Vec<u64> = Vec::new();
    loop {
        let mut visited = 0u64;
        for l in &alpha.cycle {
            let idx = automaton
                .letter_index(l)
                .ok_or_else(|| AutomatonError::UnknownLetter(l.render()))?;
            state = automaton.step(state, idx);
            visited |= 1 << state;
        }
        visited_per_pass.push(visited);
        if let Some(at) = boundary_states.iter().position(|&s| s == state) {
            // Lasso: the passes from `at` on repeat forever.
            let mut inf = 0u64;
            for v in &visited_per_pass[at..] {
                inf |= v;
            }
            return Ok(automaton.accepts_set(inf));
        }
        boundary_states.push(state);
    }
}

/// Samples necessary conditions for prefix-independence on random lassos:
/// acceptance of `u v^w` from the initial state must agree with acceptance
/// of rotated `v^w` from every state. Returns human-readable violations.
pub fn sample_prefix_independence<L: Letter>(
    automaton: &MullerAutomaton<L>,
    samples: usize,
    seed: u64,
) -> Vec<String> {
    let mut rng = SplitMix::new(seed);
    let sigma = automaton.alphabet().to_vec();
    let mut violations = Vec::new();
    for _ in 0..samples {
        let ulen = (rng.next() % 4) as usize;
        let vlen = 1 + (rng.next() % 4) as usize;
        let u: Vec<L> =
            (0..ulen).map(|_| sigma[(rng.next() % sigma.len() as u64) as usize].clone()).collect();
        let v: Vec<L> =
            (0..vlen).map(|_| sigma[(rng.next() % sigma.len() as u64) as usize].clone()).collect();
        let alpha = UltimatelyPeriodicWord::new(u.clone(), v.clone());
        let Ok(reference) = brute_force_up_check(&alpha, automaton) else { continue };
        let rot = (rng.next() % vlen as u64) as usize;
        let mut rotated = v[rot..].to_vec();
        rotated.extend_from_slice(&v[..rot]);
        let state = (rng.next() % automaton.state_count() as u64) as usize;
        let beta = UltimatelyPeriodicWord::new(Vec::new(), rotated);
        let Ok(other) = brute_force_from_state(&beta, automaton, state) else { continue };
        if reference != other {
            violations.push(format!(
                "suffix acceptance differs: base word accepted={reference}, rotated cycle from state {} accepted={other}",
                automaton.state_names()[state]
            ));
        }
    }
    violations
}

/// Exhaustive prefix-independence decision through the generated transition
/// monoid: the language is prefix-independent iff acceptance of `x^omega`
/// is start-state independent for every monoid element. `None` when the
/// monoid exceeds the exploration cap.
pub fn is_prefix_independent_exhaustive<L: Letter>(
    automaton: &MullerAutomaton<L>,
    element_cap: usize,
) -> Option<bool> {
    let generators: Vec<MonoidElement> =
        (0..automaton.alphabet().len()).map(|a| automaton.monoid_letter(a)).collect();
    if generators.is_empty() {
        return Some(true);
    }
    let mut elements: Vec<MonoidElement> = Vec::new();
    let mut queue: Vec<MonoidElement> = generators.clone();
    while let Some(el) = queue.pop() {
        if elements.contains(&el) {
            continue;
        }
        if elements.len() >= element_cap {
            return None;
        }
        for g in &generators {
            queue.push(monoid_product(&el, g));
        }
        elements.push(el);
    }
    for el in &elements {
        let mut verdicts = Vec::new();
        for q in 0..automaton.state_count() {
            verdicts.push(automaton.accepts_set(omega_inf_set(el, q)));
        }
        if verdicts.iter().any(|&v| v != verdicts[0]) {
            return Some(false);
        }
    }
    Some(true)
}

/// The infinitely-visited set of the run `x^omega` from `q`.
fn omega_inf_set(el: &MonoidElement, q: usize) -> u64 {
    let mut path = vec![q];
    let mut cur = q;
    loop {
        cur = el.target(cur);
        if let Some(at) = path.iter().position(|&s| s == cur) {
            let mut inf = 0u64;
            let mut s = path[at];
            loop {
                inf |= el.seen(s);
                s = el.target(s);
                if s == path[at] {
                    break;
                }
            }
            return inf;
        }
        path.push(cur);
    }
}

/// Small deterministic generator for sampling.
pub struct SplitMix {
    state: u64,
}

impl SplitMix {
    pub fn new(seed: u64) -> SplitMix {
        SplitMix { state: seed }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn next(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }
}

// ---------------------------------------------------------------------------
// Constructions with prefix-independent languages built in.

/// Pattern-matching transition structure (KMP): state = length of the
/// longest pattern prefix matching the recent input; the full-match state
/// is visited infinitely often iff the pattern occurs infinitely often.
/// These automata are definite (the state is a function of the last few
/// letters), so every accepting family yields a prefix-independent
/// language.
pub fn kmp_skeleton<L: Letter>(
    alphabet: &[L],
    pattern: &[L],
) -> (Vec<String>, Vec<Vec<usize>>, usize) {
    let m = pattern.len();
    let mut fail = vec![0usize; m.max(1)];
    let mut k = 0usize;
    for i in 1..m {
        while k > 0 && pattern[i] != pattern[k] {
            k = fail[k - 1];
        }
        if pattern[i] == pattern[k] {
            k += 1;
        }
        fail[i] = k;
    }
    let step = |state: usize, letter: &L| -> usize {
        let mut s = state;
        loop {
            if s < m && pattern[s] == *letter {
                return s + 1;
            }
            if s == 0 {
                return 0;
            }
            s = fail[s - 1];
        }
    };
    let states: Vec<String> = (0..=m).map(|i| format!("q{i}")).collect();
    let mut delta = vec![vec![0usize; alphabet.len()]; m + 1];
    for (q, row) in delta.iter_mut().enumerate() {
        for (a, cell) in row.iter_mut().enumerate() {
            // From the full-match state, continue from its failure state.
            let base = if q == m { fail[m - 1] } else { q };
            *cell = step(base, &alphabet[a]);
        }
    }
    (states, delta, m)
}

/// The Muller automaton for "the pattern occurs infinitely often" (or its
/// complement with `accept_on_hit = false`).
pub fn occurrence_automaton<L: Letter>(
    alphabet: Vec<L>,
    pattern: &[L],
    accept_on_hit: bool,
) -> Result<MullerAutomaton<L>, AutomatonError> {
    assert!(!pattern.is_empty());
    let (states, delta, hit) = kmp_skeleton(&alphabet, pattern);
    let n = states.len();
    let mut accepting = Vec::new();
    for mask in 1u64..(1 << n) {
        let contains_hit = mask & (1 << hit) != 0;
        if contains_hit == accept_on_hit {
            accepting.push(mask);
        }
    }
    MullerAutomaton::new(states, "q0", alphabet, |q, a| Some(delta[q][a]), accepting)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lrs::{Lrs, Sign};
    use crate::words::parse_sign_word;

    fn sign_alphabet() -> Vec<Sign> {
        vec![Sign::Minus, Sign::Zero, Sign::Plus]
    }

    fn upw(prefix: &str, cycle: &str) -> UltimatelyPeriodicWord<Sign> {
        UltimatelyPeriodicWord::new(
            parse_sign_word(prefix).unwrap(),
            parse_sign_word(cycle).unwrap(),
        )
    }

    /// Three states remembering the last letter; any accepting family is
    /// prefix-independent.
    fn letter_memory(accepting: Vec<u64>) -> MullerAutomaton<Sign> {
        MullerAutomaton::new(
            vec!["m".into(), "z".into(), "p".into()],
            "m",
            sign_alphabet(),
            |_, a| Some(a),
            accepting,
        )
        .unwrap()
    }

    /// "Infinitely many +": families containing the + state.
    fn inf_plus() -> MullerAutomaton<Sign> {
        let accepting = (1u64..8).filter(|m| m & 0b100 != 0).collect();
        letter_memory(accepting)
    }

    /// "Eventually only + and 0": families avoiding the minus state.
    fn finitely_many_minus() -> MullerAutomaton<Sign> {
        let accepting = (1u64..8).filter(|m| m & 0b001 == 0).collect();
        letter_memory(accepting)
    }

    #[test]
    fn monoid_identity_and_letter() {
        let a = inf_plus();
        let id = a.monoid_identity();
        for q in 0..3 {
            assert_eq!(id.target(q), q);
            assert_eq!(id.seen(q), 1 << q);
        }
        let h = a.monoid_embed(&[Sign::Plus]).unwrap();
        for q in 0..3 {
            assert_eq!(h.target(q), 2);
            assert_eq!(h.seen(q), (1 << q) | 0b100);
        }
        let prod = monoid_product(&h, &id);
        assert_eq!(prod, h);
    }

    #[test]
    fn homomorphism_on_random_words() {
        let a = finitely_many_minus();
        let mut rng = SplitMix::new(7);
        let sigma = sign_alphabet();
        for _ in 0..200 {
            let n1 = (rng.next() % 5) as usize;
            let n2 = (rng.next() % 5) as usize;
            let u: Vec<Sign> = (0..n1).map(|_| sigma[(rng.next() % 3) as usize]).collect();
            let v: Vec<Sign> = (0..n2).map(|_| sigma[(rng.next() % 3) as usize]).collect();
            let mut uv = u.clone();
            uv.extend(v.iter().copied());
            let lhs = a.monoid_embed(&uv).unwrap();
            let rhs =
                monoid_product(&a.monoid_embed(&u).unwrap(), &a.monoid_embed(&v).unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn associativity_on_random_triples() {
        let a = inf_plus();
        let mut rng = SplitMix::new(13);
        let sigma = sign_alphabet();
        let rand_el = |rng: &mut SplitMix| {
            let n = 1 + (rng.next() % 4) as usize;
            let w: Vec<Sign> = (0..n).map(|_| sigma[(rng.next() % 3) as usize]).collect();
            a.monoid_embed(&w).unwrap()
        };
        for _ in 0..200 {
            let x = rand_el(&mut rng);
            let y = rand_el(&mut rng);
            let z = rand_el(&mut rng);
            assert_eq!(
                monoid_product(&monoid_product(&x, &y), &z),
                monoid_product(&x, &monoid_product(&y, &z))
            );
        }
    }

    #[test]
    fn worked_increasing_example() {
        // Elements on {q0, q1, q2} composing along the path
        // q0 -> q1 -> q1 -> q2 with seen sets {q0,q1}, {q1}, {q1,q2}.
        let x1 = MonoidElement { edges: vec![(1, 0b011), (1, 0b010), (2, 0b100)] };
        let x2 = MonoidElement { edges: vec![(0, 0b001), (1, 0b010), (2, 0b100)] };
        let x3 = MonoidElement { edges: vec![(0, 0b001), (2, 0b110), (2, 0b100)] };
        let prod = monoid_product_all(&[x1.clone(), x2.clone(), x3.clone()]);
        // From q0 the product reaches q2 having seen all three states.
        assert_eq!(prod.target(0), 2);
        assert_eq!(prod.seen(0), 0b111);
        assert!(!is_increasing(&[x1.clone(), x2.clone()]));
        assert!(is_increasing(&[x1.clone(), x2.clone(), x3.clone()]));
        assert!(is_increasing(&[x2, x3]));
        // Appending to the right keeps a product increasing.
        let pad = MonoidElement { edges: vec![(0, 0b001), (1, 0b010), (2, 0b100)] };
        assert!(is_increasing(&[x1, prod, pad]));
    }

    #[test]
    fn adjacent_increasing_pair_exists() {
        let a = inf_plus();
        let sigma = sign_alphabet();
        let mut rng = SplitMix::new(29);
        let mut found_increasing = 0;
        for _ in 0..500 {
            let k = 2 + (rng.next() % 3) as usize;
            let words: Vec<Vec<Sign>> = (0..k)
                .map(|_| {
                    let n = 1 + (rng.next() % 3) as usize;
                    (0..n).map(|_| sigma[(rng.next() % 3) as usize]).collect()
                })
                .collect();
            let els: Vec<MonoidElement> =
                words.iter().map(|w| a.monoid_embed(w).unwrap()).collect();
            if is_increasing(&els) {
                found_increasing += 1;
                let adjacent = (0..els.len() - 1).any(|i| is_increasing(&els[i..i + 2]));
                assert!(adjacent, "increasing product without adjacent increasing pair");
            }
        }
        assert!(found_increasing > 0, "sampling never hit an increasing product");
    }

    #[test]
    fn model_check_on_up_words() {
        let a = inf_plus();
        let alpha = upw("", "0-0+");
        let out = model_check(&alpha, &a).unwrap();
        assert_eq!(out.verdict, Verdict::Accept);
        let alpha = upw("", "-");
        let out = model_check(&alpha, &a).unwrap();
        assert_eq!(out.verdict, Verdict::Reject);
    }

    #[test]
    fn model_check_matches_brute_force_randomized() {
        let mut rng = SplitMix::new(97);
        let sigma = sign_alphabet();
        for round in 0..60 {
            let accepting: Vec<u64> = (1u64..8).filter(|_| rng.next().is_multiple_of(2)).collect();
            let a = letter_memory(accepting);
            for _ in 0..8 {
                let plen = (rng.next() % 4) as usize;
                let clen = 1 + (rng.next() % 5) as usize;
                let prefix: Vec<Sign> =
                    (0..plen).map(|_| sigma[(rng.next() % 3) as usize]).collect();
                let cycle: Vec<Sign> =
                    (0..clen).map(|_| sigma[(rng.next() % 3) as usize]).collect();
                let alpha = UltimatelyPeriodicWord::new(prefix, cycle);
                let brute = brute_force_up_check(&alpha, &a).unwrap();
                let out = model_check(&alpha, &a).unwrap();
                let expect = if brute { Verdict::Accept } else { Verdict::Reject };
                assert_eq!(out.verdict, expect, "round {round}");
                assert!(out.iterations <= 9);
            }
        }
    }

    #[test]
    fn fibonacci_word_eventually_positive() {
        let a = finitely_many_minus();
        let cfg = crate::oracle::LrsWordConfig {
            horizon: 4000,
            trust_threshold: Some(1000),
            max_horizon: 64000,
            ..Default::default()
        };
        let oracle = crate::oracle::LrsWordOracle::new(&Lrs::fibonacci(), cfg).unwrap();
        let out = model_check(&oracle, &a).unwrap();
        assert_eq!(out.verdict, Verdict::Accept);
    }

    #[test]
    fn occurrence_automaton_language() {
        let a =
            occurrence_automaton(sign_alphabet(), &parse_sign_word("0-").unwrap(), true).unwrap();
        assert!(brute_force_up_check(&upw("", "0-0+"), &a).unwrap());
        assert!(!brute_force_up_check(&upw("0-", "+"), &a).unwrap());
        let b =
            occurrence_automaton(sign_alphabet(), &parse_sign_word("0-").unwrap(), false).unwrap();
        assert!(!brute_force_up_check(&upw("", "0-0+"), &b).unwrap());
        assert!(brute_force_up_check(&upw("0-", "+"), &b).unwrap());
    }

    #[test]
    fn prefix_independence_checks() {
        let good = inf_plus();
        assert!(sample_prefix_independence(&good, 200, 5).is_empty());
        assert_eq!(is_prefix_independent_exhaustive(&good, 100_000), Some(true));
        // A prefix-dependent automaton: accept iff the first letter is +.
        let bad = MullerAutomaton::new(
            vec!["start".into(), "yes".into(), "no".into()],
            "start",
            sign_alphabet(),
            |q, a| {
                Some(match (q, a) {
                    (0, 2) => 1,
                    (0, _) => 2,
                    (q, _) => q,
                })
            },
            vec![0b010],
        )
        .unwrap();
        assert_eq!(is_prefix_independent_exhaustive(&bad, 100_000), Some(false));
        assert!(!sample_prefix_independence(&bad, 300, 11).is_empty());
    }

    #[test]
    fn reachability_validation() {
        let err = MullerAutomaton::new(
            vec!["a".into(), "b".into()],
            "a",
            sign_alphabet(),
            |_, _| Some(0),
            vec![],
        )
        .unwrap_err();
        assert_eq!(err, AutomatonError::Unreachable(String::from("b")));
    }
}
