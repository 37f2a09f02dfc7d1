//! The word oracle for sign descriptions of simple LRS (and for products
//! of sign descriptions), answering pattern-recurrence and separator
//! queries.
//!
//! Two modes. Horizon mode scans the exact sign description up to a
//! configurable horizon and trusts occurrences beyond a heuristic threshold
//! standing in for the ineffective constant of the theory; its answers are
//! labeled as such. Certified mode lifts the pattern to block words with
//! zeros exactly on the identically-zero offsets and asks an external
//! solver whether the corresponding torus set is nonempty.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;

use crate::formulas::{
    phi_formula, solver_check, u_formula, CertifiedBuild, FormulaError, SmtBackend, SolverVerdict,
    TrackBlocks,
};
use crate::lrs::{Lrs, Sign, SignStream};
use crate::spectrum::{analyze, SpectrumAnalysis, SpectrumConfig, SpectrumError};
use crate::torus::{relation_basis, RelationBasis};
use crate::words::{
    InterOutcome, InterRecurs, InterResult, Letter, NoBound, Occurs, Pattern, ProductLetter,
    Provenance, WordOracle, YesBound,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleMode {
    Horizon,
    Certified,
}

/// Configuration of the LRS word oracle. The trust threshold stands in for
/// the ineffective threshold beyond which every occurring word recurs; it
/// is user-overridable precisely because no effective value is known.
#[derive(Clone, Debug)]
pub struct LrsWordConfig {
    pub horizon: u64,
    /// `None` derives `max(2 * order * period, 1000)`.
    pub trust_threshold: Option<u64>,
    pub mode: OracleMode,
    pub prec_cap: u32,
    /// Cap for the doubling search in `inter`.
    pub max_horizon: u64,
    /// Cap on enumerated block completions in certified mode.
    pub max_completions: usize,
}

impl Default for LrsWordConfig {
    fn default() -> Self {
        LrsWordConfig {
            horizon: 200_000,
            trust_threshold: None,
            mode: OracleMode::Horizon,
            prec_cap: crate::algebra::roots::PREC_CAP,
            max_horizon: 1_600_000,
            max_completions: 4096,
        }
    }
}

#[derive(Debug)]
pub enum OracleError {
    NotSimple(SpectrumError),
    EmptyPattern,
    BadConfig(String),
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::NotSimple(e) => write!(f, "unsupported sequence: {e}"),
            OracleError::EmptyPattern => write!(f, "patterns must be nonempty"),
            OracleError::BadConfig(w) => write!(f, "bad oracle configuration: {w}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for OracleError {}

/// A block word: consecutive blocks of length P over the sign alphabet.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BlockWord(pub Vec<Vec<Sign>>);

impl BlockWord {
    pub fn render(&self) -> String {
        let mut s = String::new();
        for b in &self.0 {
            for l in b {
                s.push(l.as_char());
            }
        }
        s
    }
}

/// Alignments `a` in `0..P` at which the pattern can sit inside the block
/// grid with zeros exactly on the Z offsets.
pub fn valid_alignments(w: &[Sign], period: u64, z: &BTreeSet<u64>) -> Vec<u64> {
    (0..period)
        .filter(|&a| {
            w.iter().enumerate().all(|(k, letter)| {
                let off = (a + k as u64) % period;
                if z.contains(&off) {
                    *letter == Sign::Zero
                } else {
                    *letter != Sign::Zero
                }
            })
        })
        .collect()
}

/// All block-aligned completions of the pattern at one alignment: free
/// positions on Z offsets are zero, free positions off Z range over {-,+}.
pub fn completions_for_alignment(
    w: &[Sign],
    period: u64,
    z: &BTreeSet<u64>,
    alignment: u64,
    cap: usize,
) -> Option<Vec<BlockWord>> {
    let m = (alignment + w.len() as u64).div_ceil(period).max(1);
    let total = (m * period) as usize;
    let mut template: Vec<Option<Sign>> = vec![None; total];
    for (k, letter) in w.iter().enumerate() {
        template[alignment as usize + k] = Some(*letter);
    }
    let mut free_positions = Vec::new();
    for (q, slot) in template.iter_mut().enumerate() {
        let off = q as u64 % period;
        if slot.is_none() {
            if z.contains(&off) {
                *slot = Some(Sign::Zero);
            } else {
                free_positions.push(q);
            }
        }
    }
    let count = 1usize.checked_shl(free_positions.len() as u32)?;
    if count > cap {
        return None;
    }
    let mut out = Vec::with_capacity(count);
    for mask in 0..count {
        let mut filled: Vec<Sign> = template.iter().map(|s| s.unwrap_or(Sign::Plus)).collect();
        for (bit, &q) in free_positions.iter().enumerate() {
            filled[q] = if mask >> bit & 1 == 1 { Sign::Plus } else { Sign::Minus };
        }
        let blocks = filled.chunks(period as usize).map(|c| c.to_vec()).collect();
        out.push(BlockWord(blocks));
    }
    Some(out)
}

/// All block-aligned completions across alignments, deduplicated. Returns
/// the empty list exactly when the pattern cannot recur (no alignment is
/// consistent with the zero structure), and `None` when enumeration
/// overflows the cap.
pub fn lift_pattern(
    w: &Pattern<Sign>,
    period: u64,
    z: &BTreeSet<u64>,
    cap: usize,
) -> Option<Vec<BlockWord>> {
    assert!(!w.is_empty(), "lift_pattern needs a nonempty pattern");
    let mut out: Vec<BlockWord> = Vec::new();
    for a in valid_alignments(w.letters(), period, z) {
        let mut comps = completions_for_alignment(w.letters(), period, z, a, cap)?;
        out.append(&mut comps);
        if out.len() > cap {
            return None;
        }
    }
    out.sort();
    out.dedup();
    Some(out)
}

// ---------------------------------------------------------------------------
// Scan-based occurrence machinery shared by the single and product oracles.

fn occurrence_starts<L: Letter>(letters: &[L], w: &[L]) -> Vec<u64> {
    if w.is_empty() || w.len() > letters.len() {
        return Vec::new();
    }
    (0..=(letters.len() - w.len()))
        .filter(|&s| letters[s..s + w.len()] == *w)
        .map(|s| s as u64)
        .collect()
}

struct ScanVerdict<L> {
    occurs: Occurs,
    /// Greedy non-overlapping separators among occurrences at or beyond the
    /// threshold.
    separators: Vec<Vec<L>>,
    first_used: Option<u64>,
    used_occurrences: u64,
}

fn scan_analysis<L: Letter>(letters: &[L], w: &[L], threshold: u64) -> ScanVerdict<L> {
    let starts = occurrence_starts(letters, w);
    let beyond: Vec<u64> = starts.iter().copied().filter(|&s| s >= threshold).collect();
    if beyond.is_empty() {
        let threshold_out = starts.last().map_or(0, |s| s + 1);
        return ScanVerdict {
            occurs: Occurs::No(NoBound {
                threshold: threshold_out,
                provenance: Provenance::HeuristicThreshold,
            }),
            separators: Vec::new(),
            first_used: None,
            used_occurrences: 0,
        };
    }
    let mut max_gap = 0u64;
    for pair in beyond.windows(2) {
        max_gap = max_gap.max(pair[1] - pair[0]);
    }
    let window = if beyond.len() >= 2 {
        (beyond[0] - threshold).max(max_gap.saturating_sub(1)) + w.len() as u64
    } else {
        w.len() as u64
    };
    // Greedy non-overlapping factorization beyond the threshold.
    let mut separators: Vec<Vec<L>> = Vec::new();
    let mut cur = beyond[0];
    let mut used = 1u64;
    loop {
        let next = beyond.iter().copied().find(|&s| s >= cur + w.len() as u64);
        let Some(next) = next else { break };
        separators.push(letters[(cur + w.len() as u64) as usize..next as usize].to_vec());
        cur = next;
        used += 1;
    }
    separators.sort();
    separators.dedup();
    ScanVerdict {
        occurs: Occurs::Yes(YesBound {
            max_start_gap: max_gap,
            window,
            provenance: Provenance::HeuristicThreshold,
        }),
        separators,
        first_used: Some(beyond[0]),
        used_occurrences: used,
    }
}

// ---------------------------------------------------------------------------
// The single-sequence oracle.

pub struct LrsWordOracle {
    sequence: Lrs,
    analysis: SpectrumAnalysis,
    config: LrsWordConfig,
    threshold: u64,
    cache: RefCell<ScanCache>,
    backend: Option<RefCell<Box<dyn SmtBackend>>>,
    certified_ctx: RefCell<Option<CertifiedData>>,
}

struct ScanCache {
    stream: SignStream,
    letters: Vec<Sign>,
}

struct CertifiedData {
    basis: RelationBasis,
}

impl LrsWordOracle {
    pub fn new(u: &Lrs, config: LrsWordConfig) -> Result<LrsWordOracle, OracleError> {
        let analysis = analyze(
            u,
            SpectrumConfig { prec_cap: config.prec_cap, ..SpectrumConfig::default() },
        )
        .map_err(OracleError::NotSimple)?;
        let derived = (2 * analysis.minimized.order() as u64 * analysis.period).max(1000);
        let threshold = config.trust_threshold.unwrap_or(derived);
        if config.horizon <= threshold {
            return Err(OracleError::BadConfig(format!(
                "horizon {} must exceed the trust threshold {}",
                config.horizon, threshold
            )));
        }
        let cache = RefCell::new(ScanCache { stream: u.sign_stream(), letters: Vec::new() });
        Ok(LrsWordOracle {
            sequence: u.clone(),
            analysis,
            config,
            threshold,
            cache,
            backend: None,
            certified_ctx: RefCell::new(None),
        })
    }

    /// Attaches an external solver for certified mode.
    pub fn with_backend(mut self, backend: Box<dyn SmtBackend>) -> Self {
        self.backend = Some(RefCell::new(backend));
        self
    }

    pub fn analysis(&self) -> &SpectrumAnalysis {
        &self.analysis
    }

    pub fn sequence(&self) -> &Lrs {
        &self.sequence
    }

    pub fn trust_threshold(&self) -> u64 {
        self.threshold
    }

    pub fn config(&self) -> &LrsWordConfig {
        &self.config
    }

    fn ensure_scanned(&self, len: usize) {
        let mut cache = self.cache.borrow_mut();
        while cache.letters.len() < len {
            let s = cache.stream.next_sign();
            cache.letters.push(s);
        }
    }

    fn with_letters<R>(&self, len: usize, f: impl FnOnce(&[Sign]) -> R) -> R {
        self.ensure_scanned(len);
        let cache = self.cache.borrow();
        f(&cache.letters[..len])
    }

    /// The sign prefix used by scans (exposed for reports and tests).
    pub fn scanned_prefix(&self, len: usize) -> Vec<Sign> {
        self.with_letters(len, |l| l.to_vec())
    }

    fn horizon_occurs(&self, w: &Pattern<Sign>) -> Occurs {
        // Exact pre-filter: no valid alignment means the pattern cannot
        // recur, whatever the scan shows.
        if valid_alignments(w.letters(), self.analysis.period, &self.analysis.zero_offsets)
            .is_empty()
        {
            let last = self.with_letters(self.config.horizon as usize, |letters| {
                occurrence_starts(letters, w.letters()).last().copied()
            });
            return Occurs::No(NoBound {
                threshold: last.map_or(0, |s| s + 1),
                provenance: Provenance::Exact,
            });
        }
        self.with_letters(self.config.horizon as usize, |letters| {
            scan_analysis(letters, w.letters(), self.threshold).occurs
        })
    }

    fn certified_occurs(&self, w: &Pattern<Sign>) -> Occurs {
        let Some(backend) = &self.backend else {
            return Occurs::Unknown(String::from("no solver configured"));
        };
        let lifts = match lift_pattern(
            w,
            self.analysis.period,
            &self.analysis.zero_offsets,
            self.config.max_completions,
        ) {
            Some(l) => l,
            None => return Occurs::Unknown(String::from("completion enumeration overflow")),
        };
        if lifts.is_empty() {
            return Occurs::No(NoBound { threshold: 0, provenance: Provenance::Certified });
        }
        let ctx = match self.certified_context() {
            Ok(c) => c,
            Err(e) => return Occurs::Unknown(format!("{e}")),
        };
        let build = CertifiedBuild { tracks: vec![&self.analysis], basis: &ctx.basis };
        let mut any_unknown = None;
        for blockword in &lifts {
            let blocks: TrackBlocks = vec![blockword.0.clone()];
            let formula = match u_formula(&build, &blocks) {
                Ok(f) => f,
                Err(FormulaError::CertifiedUnsupported(why)) => {
                    return Occurs::Unknown(format!("certified-unsupported: {why}"))
                }
                Err(e) => return Occurs::Unknown(format!("{e}")),
            };
            let verdict = solver_check(backend.borrow_mut().as_mut(), &formula);
            match verdict {
                SolverVerdict::Sat => {
                    // Nonempty set: the pattern recurs; validate a bound.
                    let bound = self.certified_bound(&build, blockword, backend);
                    return match bound {
                        Some(b) => Occurs::Yes(YesBound {
                            max_start_gap: b,
                            window: b + w.len() as u64,
                            provenance: Provenance::Certified,
                        }),
                        None => Occurs::Unknown(String::from(
                            "recurrence certified but no bound validated",
                        )),
                    };
                }
                SolverVerdict::Unsat => continue,
                SolverVerdict::Unknown(r) => any_unknown = Some(r),
            }
        }
        match any_unknown {
            None => Occurs::No(NoBound { threshold: 0, provenance: Provenance::Certified }),
            Some(r) => Occurs::Unknown(format!("solver unknown: {r}")),
        }
    }

    /// Validated recurrence bound for a block word, in sign positions:
    /// iterates the coverage sentence at bounds 1, 2, 4, ... until the
    /// solver confirms one, then scales by the period. `None` without a
    /// configured solver or when no bound validates within the cap.
    pub fn recurrence_bound_certified(&self, blockword: &BlockWord) -> Option<u64> {
        let backend = self.backend.as_ref()?;
        let ctx = self.certified_context().ok()?;
        let build = CertifiedBuild { tracks: vec![&self.analysis], basis: &ctx.basis };
        self.certified_bound(&build, blockword, backend)
    }

    fn certified_bound(
        &self,
        build: &CertifiedBuild<'_>,
        blockword: &BlockWord,
        backend: &RefCell<Box<dyn SmtBackend>>,
    ) -> Option<u64> {
        let blocks: TrackBlocks = vec![blockword.0.clone()];
        let mut b = 1u64;
        while b <= 1 << 20 {
            let phi = phi_formula(build, &blocks, b).ok()?;
            match solver_check(backend.borrow_mut().as_mut(), &phi) {
                SolverVerdict::Sat => return Some(b * self.analysis.period),
                SolverVerdict::Unsat => b *= 2,
                SolverVerdict::Unknown(_) => return None,
            }
        }
        None
    }

    fn certified_context(&self) -> Result<core::cell::Ref<'_, CertifiedData>, FormulaError> {
        {
            let ctx = self.certified_ctx.borrow();
            if ctx.is_some() {
                return Ok(core::cell::Ref::map(ctx, |c| c.as_ref().expect("checked")));
            }
        }
        let lambdas = self.analysis.normalized();
        let basis = relation_basis(&lambdas, 64).map_err(FormulaError::Algebra)?;
        *self.certified_ctx.borrow_mut() = Some(CertifiedData { basis });
        Ok(core::cell::Ref::map(self.certified_ctx.borrow(), |c| {
            c.as_ref().expect("just set")
        }))
    }

    /// Separator computation with horizon doubling until the separator set
    /// is stable across one doubling while the occurrence count still grows.
    fn horizon_inter(&self, w: &Pattern<Sign>) -> InterOutcome<Sign> {
        match self.horizon_occurs(w) {
            Occurs::No(_) => return InterOutcome::Result(InterResult::No),
            Occurs::Unknown(r) => return InterOutcome::Unknown(r),
            Occurs::Yes(_) => {}
        }
        let mut lower = self.config.horizon / 2;
        let mut upper = self.config.horizon;
        loop {
            let a = self
                .with_letters(lower as usize, |l| scan_analysis(l, w.letters(), self.threshold));
            let b = self
                .with_letters(upper as usize, |l| scan_analysis(l, w.letters(), self.threshold));
            let stable = !b.separators.is_empty()
                && a.separators == b.separators
                && b.used_occurrences > a.used_occurrences;
            if stable {
                return InterOutcome::Result(InterResult::Recurs(InterRecurs {
                    separators: b.separators,
                    prefix_len: b.first_used.unwrap_or(0),
                }));
            }
            if upper >= self.config.max_horizon {
                return InterOutcome::Unknown(format!(
                    "separator set unstable at horizon cap {}",
                    self.config.max_horizon
                ));
            }
            lower = upper;
            upper = (upper * 2).min(self.config.max_horizon);
        }
    }
}

impl WordOracle<Sign> for LrsWordOracle {
    fn letter_at(&self, pos: u64) -> Sign {
        self.with_letters(pos as usize + 1, |l| l[pos as usize])
    }

    fn occurs_infinitely(&self, w: &Pattern<Sign>) -> Occurs {
        assert!(!w.is_empty(), "occurrence queries need a nonempty pattern");
        match self.config.mode {
            OracleMode::Horizon => self.horizon_occurs(w),
            OracleMode::Certified => self.certified_occurs(w),
        }
    }

    fn inter(&self, w: &Pattern<Sign>) -> InterOutcome<Sign> {
        assert!(!w.is_empty(), "inter needs a nonempty pattern");
        // Separators always come from the exact scan; certified mode only
        // upgrades the recurrence verdict.
        match self.config.mode {
            OracleMode::Horizon => self.horizon_inter(w),
            OracleMode::Certified => match self.certified_occurs(w) {
                Occurs::No(_) => InterOutcome::Result(InterResult::No),
                Occurs::Unknown(r) => InterOutcome::Unknown(r),
                Occurs::Yes(_) => self.horizon_inter(w),
            },
        }
    }
}

// ---------------------------------------------------------------------------
// Product-of-sign-descriptions oracle.

pub struct ProductWordOracle {
    tracks: Vec<Lrs>,
    analyses: Vec<SpectrumAnalysis>,
    joint_period: u64,
    config: LrsWordConfig,
    threshold: u64,
    cache: RefCell<ProductCache>,
}

struct ProductCache {
    streams: Vec<SignStream>,
    letters: Vec<ProductLetter>,
}

impl ProductWordOracle {
    pub fn new(tracks: Vec<Lrs>, config: LrsWordConfig) -> Result<ProductWordOracle, OracleError> {
        assert!(!tracks.is_empty());
        let spectrum_cfg =
            SpectrumConfig { prec_cap: config.prec_cap, ..SpectrumConfig::default() };
        let mut analyses = Vec::with_capacity(tracks.len());
        for u in &tracks {
            analyses.push(analyze(u, spectrum_cfg).map_err(OracleError::NotSimple)?);
        }
        // One joint block length: the lcm of the per-track periods.
        let mut joint = 1u64;
        for a in &analyses {
            joint = num_integer::Integer::lcm(&joint, &a.period);
        }
        let derived = analyses
            .iter()
            .map(|a| 2 * a.minimized.order() as u64 * joint)
            .max()
            .unwrap_or(0)
            .max(1000);
        let threshold = config.trust_threshold.unwrap_or(derived);
        if config.horizon <= threshold {
            return Err(OracleError::BadConfig(format!(
                "horizon {} must exceed the trust threshold {}",
                config.horizon, threshold
            )));
        }
        let streams = tracks.iter().map(|u| u.sign_stream()).collect();
        Ok(ProductWordOracle {
            tracks,
            analyses,
            joint_period: joint,
            config,
            threshold,
            cache: RefCell::new(ProductCache { streams, letters: Vec::new() }),
        })
    }

    pub fn joint_period(&self) -> u64 {
        self.joint_period
    }

    pub fn analyses(&self) -> &[SpectrumAnalysis] {
        &self.analyses
    }

    pub fn tracks(&self) -> &[Lrs] {
        &self.tracks
    }

    pub fn trust_threshold(&self) -> u64 {
        self.threshold
    }

    fn ensure_scanned(&self, len: usize) {
        let mut cache = self.cache.borrow_mut();
        while cache.letters.len() < len {
            let mut tuple = Vec::with_capacity(cache.streams.len());
            for s in cache.streams.iter_mut() {
                tuple.push(s.next_sign());
            }
            cache.letters.push(ProductLetter(tuple));
        }
    }

    fn with_letters<R>(&self, len: usize, f: impl FnOnce(&[ProductLetter]) -> R) -> R {
        self.ensure_scanned(len);
        let cache = self.cache.borrow();
        f(&cache.letters[..len])
    }

    pub fn scanned_prefix(&self, len: usize) -> Vec<ProductLetter> {
        self.with_letters(len, |l| l.to_vec())
    }
}

impl WordOracle<ProductLetter> for ProductWordOracle {
    fn letter_at(&self, pos: u64) -> ProductLetter {
        self.with_letters(pos as usize + 1, |l| l[pos as usize].clone())
    }

    fn occurs_infinitely(&self, w: &Pattern<ProductLetter>) -> Occurs {
        assert!(!w.is_empty());
        if self.config.mode == OracleMode::Certified {
            return Occurs::Unknown(String::from(
                "certified mode for products is limited to formula emission",
            ));
        }
        // Per-track alignment pre-filter against the joint block structure.
        for (k, analysis) in self.analyses.iter().enumerate() {
            let track_word: Vec<Sign> = w.letters().iter().map(|t| t.0[k]).collect();
            // Track-level Z transfers to joint offsets through the period.
            let joint_z: BTreeSet<u64> = (0..self.joint_period)
                .filter(|off| analysis.zero_offsets.contains(&(off % analysis.period)))
                .collect();
            if valid_alignments(&track_word, self.joint_period, &joint_z).is_empty() {
                let last = self.with_letters(self.config.horizon as usize, |letters| {
                    occurrence_starts(letters, w.letters()).last().copied()
                });
                return Occurs::No(NoBound {
                    threshold: last.map_or(0, |s| s + 1),
                    provenance: Provenance::Exact,
                });
            }
        }
        self.with_letters(self.config.horizon as usize, |letters| {
            scan_analysis(letters, w.letters(), self.threshold).occurs
        })
    }

    fn inter(&self, w: &Pattern<ProductLetter>) -> InterOutcome<ProductLetter> {
        assert!(!w.is_empty());
        match self.occurs_infinitely(w) {
            Occurs::No(_) => return InterOutcome::Result(InterResult::No),
            Occurs::Unknown(r) => return InterOutcome::Unknown(r),
            Occurs::Yes(_) => {}
        }
        let mut lower = self.config.horizon / 2;
        let mut upper = self.config.horizon;
        loop {
            let a = self
                .with_letters(lower as usize, |l| scan_analysis(l, w.letters(), self.threshold));
            let b = self
                .with_letters(upper as usize, |l| scan_analysis(l, w.letters(), self.threshold));
            let stable = !b.separators.is_empty()
                && a.separators == b.separators
                && b.used_occurrences > a.used_occurrences;
            if stable {
                return InterOutcome::Result(InterResult::Recurs(InterRecurs {
                    separators: b.separators,
                    prefix_len: b.first_used.unwrap_or(0),
                }));
            }
            if upper >= self.config.max_horizon {
                return InterOutcome::Unknown(format!(
                    "separator set unstable at horizon cap {}",
                    self.config.max_horizon
                ));
            }
            lower = upper;
            upper = (upper * 2).min(self.config.max_horizon);
        }
    }
}
