//! Implementations of the CLI subcommands.

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::json;

use lrsomega_core::algebra::rational::{format_rational, parse_rational, Rational};
use lrsomega_core::automata::{model_check, sample_prefix_independence, Verdict};
use lrsomega_core::formulas::{
    phi_formula, to_smtlib_script, u_formula, CertifiedBuild, TrackBlocks,
};
use lrsomega_core::lrs::{apply_polynomial, Lrs, MultiPoly, Sign};
use lrsomega_core::oracle::{lift_pattern, LrsWordConfig, LrsWordOracle, OracleMode, ProductWordOracle};
use lrsomega_core::spectrum::{analyze, describe_ratio_order, SpectrumConfig};
use lrsomega_core::torus::relation_basis;
use lrsomega_core::words::{gap_statistics, Pattern};
use num_traits::{One, Zero};

use crate::formats::{load_lrs, parse_sign_letter, parse_tuple_letter, AutomatonFile};
use crate::report::RunReport;
use crate::solver::{SolverConfig, SubprocessSolver};

pub struct CheckFlags {
    pub mode: OracleMode,
    pub horizon: u64,
    pub threshold: Option<u64>,
    pub solver: Option<String>,
    pub solver_timeout: u64,
}

impl CheckFlags {
    fn oracle_config(&self) -> LrsWordConfig {
        LrsWordConfig {
            horizon: self.horizon,
            trust_threshold: self.threshold,
            mode: self.mode,
            max_horizon: self.horizon.saturating_mul(8),
            ..LrsWordConfig::default()
        }
    }

    fn config_echo(&self) -> serde_json::Value {
        json!({
            "mode": match self.mode { OracleMode::Horizon => "horizon", OracleMode::Certified => "certified" },
            "horizon": self.horizon,
            "threshold": self.threshold,
            "solver": self.solver,
            "solver_timeout_s": self.solver_timeout,
        })
    }
}

fn signs_to_string(signs: &[Sign]) -> String {
    signs.iter().map(|s| s.as_char()).collect()
}

pub fn cmd_signdesc(path: &Path, length: usize, json: bool) -> Result<RunReport> {
    let start = Instant::now();
    let u = load_lrs(path)?;
    let signs = signs_to_string(&u.sign_prefix(length));
    Ok(RunReport {
        command: "signdesc".into(),
        verdict: None,
        exit_code: 0,
        provenance: vec!["exact-scan".into()],
        timing_ms: start.elapsed().as_millis(),
        config: json!({"file": path.display().to_string(), "length": length}),
        details: json!({"signs": signs}),
    })
    .map(|r| emit(r, json))
}

pub fn cmd_decompose(path: &Path, json: bool) -> Result<RunReport> {
    let start = Instant::now();
    let u = load_lrs(path)?;
    let analysis = analyze(&u, SpectrumConfig::default()).map_err(|e| anyhow!("{e}"))?;
    let ratio_certs: Vec<String> = analysis
        .ratio_orders
        .iter()
        .map(|((i, j), ord)| format!("ratio of roots {i} and {j}: {}", describe_ratio_order(ord)))
        .collect();
    let subsequences: Vec<serde_json::Value> = analysis
        .subsequences
        .iter()
        .map(|s| {
            let dominant: Vec<String> = s
                .dominant_roots
                .iter()
                .map(|&j| {
                    let b = analysis.roots[j].enclosure();
                    format!(
                        "root {j} ~ {:.6}{:+.6}i",
                        b.re.to_f64(),
                        b.im.to_f64()
                    )
                })
                .collect();
            json!({
                "offset": s.offset,
                "identically_zero": s.identically_zero,
                "minimal_order": s.minimal.order(),
                "dominant_roots": dominant,
            })
        })
        .collect();
    Ok(RunReport {
        command: "decompose".into(),
        verdict: None,
        exit_code: 0,
        provenance: vec!["exact".into()],
        timing_ms: start.elapsed().as_millis(),
        config: json!({"file": path.display().to_string()}),
        details: json!({
            "minimal_order": analysis.minimized.order(),
            "simple": true,
            "period": analysis.period,
            "zero_offsets": analysis.zero_offsets.iter().collect::<Vec<_>>(),
            "non_degeneracy_certificates": ratio_certs,
            "subsequences": subsequences,
        }),
    })
    .map(|r| emit(r, json))
}

fn verdict_exit(v: &Verdict) -> (String, i32) {
    match v {
        Verdict::Accept => ("Accept".into(), 0),
        Verdict::Reject => ("Reject".into(), 1),
        Verdict::Unknown(r) => (format!("Unknown ({r})"), 2),
    }
}

pub fn cmd_check(
    lrs_paths: &[PathBuf],
    automaton_path: &Path,
    flags: &CheckFlags,
    json: bool,
) -> Result<RunReport> {
    let start = Instant::now();
    if lrs_paths.is_empty() {
        bail!("at least one sequence file is required");
    }
    let automaton_file = AutomatonFile::load(automaton_path)?;
    let cfg = flags.oracle_config();
    let (outcome, warnings, provenance) = if lrs_paths.len() == 1 {
        let u = load_lrs(&lrs_paths[0])?;
        let automaton = automaton_file.build(parse_sign_letter)?;
        let warnings = sample_prefix_independence(&automaton, 200, 0x5eed);
        let mut oracle = LrsWordOracle::new(&u, cfg.clone()).map_err(|e| anyhow!("{e}"))?;
        let mut provenance = vec![oracle_provenance(&cfg, oracle.trust_threshold())];
        if flags.mode == OracleMode::Certified {
            match SolverConfig::resolve(flags.solver.as_deref(), flags.solver_timeout) {
                Some(sc) => {
                    provenance.push(format!("certified via solver {}", sc.binary.display()));
                    oracle = oracle.with_backend(Box::new(SubprocessSolver::new(sc)));
                }
                None => provenance.push(
                    "certified mode requested but no solver configured (set LRSOMEGA_SOLVER or --solver)".into(),
                ),
            }
        }
        (model_check(&oracle, &automaton).map_err(|e| anyhow!("{e}"))?, warnings, provenance)
    } else {
        let tracks: Vec<Lrs> =
            lrs_paths.iter().map(|p| load_lrs(p)).collect::<Result<Vec<_>>>()?;
        let m = tracks.len();
        let automaton = automaton_file.build(|s| parse_tuple_letter(s, m))?;
        let warnings = sample_prefix_independence(&automaton, 200, 0x5eed);
        let oracle = ProductWordOracle::new(tracks, cfg.clone()).map_err(|e| anyhow!("{e}"))?;
        let provenance = vec![oracle_provenance(&cfg, oracle.trust_threshold())];
        (model_check(&oracle, &automaton).map_err(|e| anyhow!("{e}"))?, warnings, provenance)
    };
    let (verdict, exit_code) = verdict_exit(&outcome.verdict);
    let mut provenance = provenance;
    provenance.extend(warnings.iter().map(|w| format!("prefix-independence warning: {w}")));
    Ok(RunReport {
        command: "check".into(),
        verdict: Some(verdict),
        exit_code,
        provenance,
        timing_ms: start.elapsed().as_millis(),
        config: flags.config_echo(),
        details: json!({
            "iterations": outcome.iterations,
            "witness_length": outcome.witness_len,
            "decisive_state_set": outcome.decisive_set,
        }),
    })
    .map(|r| emit(r, json))
}

fn oracle_provenance(cfg: &LrsWordConfig, threshold: u64) -> String {
    match cfg.mode {
        OracleMode::Horizon => format!(
            "heuristic-threshold: occurrences beyond position {threshold} within horizon {} are trusted to recur",
            cfg.horizon
        ),
        OracleMode::Certified => "certified: recurrence verdicts delegated to the solver".into(),
    }
}

pub fn cmd_zone(
    lrs_paths: &[PathBuf],
    polys: &[String],
    automaton_path: &Path,
    flags: &CheckFlags,
    json: bool,
) -> Result<RunReport> {
    let start = Instant::now();
    if lrs_paths.is_empty() {
        bail!("at least one sequence file is required");
    }
    if polys.is_empty() {
        bail!("at least one --poly predicate is required");
    }
    let sources: Vec<Lrs> = lrs_paths.iter().map(|p| load_lrs(p)).collect::<Result<Vec<_>>>()?;
    let refs: Vec<&Lrs> = sources.iter().collect();
    let mut derived = Vec::with_capacity(polys.len());
    let mut derived_desc = Vec::new();
    for p in polys {
        let f = parse_poly_expr(p, sources.len())
            .with_context(|| format!("parsing polynomial `{p}`"))?;
        let v = apply_polynomial(&f, &refs).map_err(|e| anyhow!("{e}"))?;
        derived_desc.push(json!({
            "polynomial": f.describe(),
            "derived_order": v.order(),
        }));
        derived.push(v);
    }
    let automaton_file = AutomatonFile::load(automaton_path)?;
    let k = derived.len();
    let automaton = automaton_file.build(|s| parse_tuple_letter(s, k))?;
    let warnings = sample_prefix_independence(&automaton, 200, 0x5eed);
    let cfg = flags.oracle_config();
    let oracle = ProductWordOracle::new(derived, cfg.clone()).map_err(|e| anyhow!("{e}"))?;
    let mut provenance = vec![oracle_provenance(&cfg, oracle.trust_threshold())];
    provenance.extend(warnings.iter().map(|w| format!("prefix-independence warning: {w}")));
    let outcome = model_check(&oracle, &automaton).map_err(|e| anyhow!("{e}"))?;
    let (verdict, exit_code) = verdict_exit(&outcome.verdict);
    Ok(RunReport {
        command: "zone".into(),
        verdict: Some(verdict),
        exit_code,
        provenance,
        timing_ms: start.elapsed().as_millis(),
        config: flags.config_echo(),
        details: json!({
            "predicates": derived_desc,
            "iterations": outcome.iterations,
            "witness_length": outcome.witness_len,
            "decisive_state_set": outcome.decisive_set,
        }),
    })
    .map(|r| emit(r, json))
}

/// Builds the order-six sequence `1 - n + n*Re(lambda^n)` for a rational
/// point `lambda = a + bi` on the unit circle.
pub fn counterexample_lrs(a: &Rational, b: &Rational) -> Result<Lrs> {
    if (a * a + b * b) != Rational::one() {
        bail!("lambda must lie on the unit circle: got |{}+{}i|^2 != 1", a, b);
    }
    if a.is_zero() || b.is_zero() {
        bail!("lambda must have nonzero real and imaginary parts");
    }
    use lrsomega_core::algebra::poly::PolyQ;
    // Characteristic polynomial ((x^2 - 2a x + 1)(x - 1))^2.
    let quad = PolyQ::new(vec![Rational::one(), -(a + a), Rational::one()]);
    let lin = PolyQ::new(vec![-Rational::one(), Rational::one()]);
    let base = quad.mul(&lin);
    let char_poly = base.mul(&base);
    let d = char_poly.deg();
    let coeffs: Vec<Rational> = (1..=d).map(|i| -char_poly.coeff(d - i)).collect();
    // Initial terms 1 - n + n Re(lambda^n), with exact rational powering.
    let mut initial = Vec::with_capacity(d);
    let (mut re, mut im) = (Rational::one(), Rational::zero());
    for n in 1..=d as i64 {
        let nr = re.clone() * a - im.clone() * b;
        let ni = re * b + im * a;
        re = nr;
        im = ni;
        let nq = Rational::from_integer(n.into());
        initial.push(Rational::one() - &nq + &nq * &re);
    }
    Lrs::from_recurrence(coeffs, initial).map_err(|e| anyhow!("{e}"))
}

pub fn cmd_counterexample(
    lambda: Option<(String, String)>,
    horizon: u64,
    json: bool,
) -> Result<RunReport> {
    let start = Instant::now();
    let (a, b) = match &lambda {
        Some((a, b)) => (
            parse_rational(a).map_err(|e| anyhow!("{e}"))?,
            parse_rational(b).map_err(|e| anyhow!("{e}"))?,
        ),
        None => (
            Rational::new(3.into(), 5.into()),
            Rational::new(4.into(), 5.into()),
        ),
    };
    let u = counterexample_lrs(&a, &b)?;
    let plus = Pattern::parse_signs("+").expect("valid pattern");
    let prefix = u.sign_prefix(horizon as usize);
    let stats = gap_statistics(&prefix, &plus);
    // Max gap growth between the first 1000 positions and the full horizon.
    let early_cut = 1000.min(prefix.len());
    let early = gap_statistics(&prefix[..early_cut], &plus);
    let growth = match (early.max_gap, stats.max_gap) {
        (Some(e), Some(f)) => Some(f > e),
        _ => None,
    };
    let claims = if horizon >= 10_000 {
        json!({
            "plus_count": stats.count,
            "max_gap_first_1000": early.max_gap,
            "max_gap_full_horizon": stats.max_gap,
            "gap_growth_observed": growth,
            "note": "unbounded gaps between '+' occurrences: the sign description is not almost periodic",
        })
    } else {
        json!({
            "plus_count": stats.count,
            "max_gap_full_horizon": stats.max_gap,
            "note": "small-sample report; increase --horizon for gap-growth evidence",
        })
    };
    Ok(RunReport {
        command: "counterexample".into(),
        verdict: None,
        exit_code: 0,
        provenance: vec!["exact-scan".into()],
        timing_ms: start.elapsed().as_millis(),
        config: json!({
            "lambda": format!("{}+{}i", format_rational(&a), format_rational(&b)),
            "horizon": horizon,
            "order": u.order(),
        }),
        details: claims,
    })
    .map(|r| emit(r, json))
}

pub enum FormulaTarget {
    U,
    Phi(u64),
}

pub fn parse_formula_target(s: &str) -> Result<FormulaTarget> {
    if s == "u" {
        return Ok(FormulaTarget::U);
    }
    if let Some(b) = s.strip_prefix("phi:") {
        return Ok(FormulaTarget::Phi(b.parse().context("parsing the bound in phi:B")?));
    }
    bail!("--what must be `u` or `phi:B`");
}

pub fn cmd_emit_formula(
    path: &Path,
    pattern: &str,
    target: FormulaTarget,
    completion: usize,
    exponent_bound: u64,
) -> Result<String> {
    let u = load_lrs(path)?;
    let w = Pattern::parse_signs(pattern)
        .ok_or_else(|| anyhow!("pattern must use the -0+ alphabet"))?;
    if w.is_empty() {
        bail!("pattern must be nonempty");
    }
    let analysis = analyze(&u, SpectrumConfig::default()).map_err(|e| anyhow!("{e}"))?;
    let lifts = lift_pattern(&w, analysis.period, &analysis.zero_offsets, 4096)
        .ok_or_else(|| anyhow!("block completion enumeration overflow"))?;
    if lifts.is_empty() {
        // No consistent completion: the occurrence set is empty.
        return Ok(String::from(
            "; pattern admits no block completion consistent with the zero structure\n(set-logic QF_NRA)\n(assert false)\n(check-sat)\n",
        ));
    }
    if completion >= lifts.len() {
        bail!(
            "completion index {completion} out of range: {} completions exist",
            lifts.len()
        );
    }
    let lambdas = analysis.normalized();
    let basis = relation_basis(&lambdas, exponent_bound).map_err(|e| anyhow!("{e}"))?;
    let build = CertifiedBuild { tracks: vec![&analysis], basis: &basis };
    let blocks: TrackBlocks = vec![lifts[completion].0.clone()];
    let formula = match target {
        FormulaTarget::U => u_formula(&build, &blocks).map_err(|e| anyhow!("{e}"))?,
        FormulaTarget::Phi(bound) => {
            phi_formula(&build, &blocks, bound).map_err(|e| anyhow!("{e}"))?
        }
    };
    let mut out = format!(
        "; pattern {} lifted to {} block completion(s); emitting index {}: {}\n",
        w.render(),
        lifts.len(),
        completion,
        lifts[completion].render()
    );
    if let Some(warning) = &basis.warning {
        out.push_str(&format!("; relation basis may be incomplete: {warning}\n"));
    }
    if formula.is_quantified() {
        out.push_str("; quantified nonlinear real arithmetic: solvers may answer unknown\n");
    }
    out.push_str(&to_smtlib_script(&formula));
    Ok(out)
}

pub fn cmd_gaps(
    path: &Path,
    pattern: &str,
    length: usize,
    csv: bool,
    json: bool,
) -> Result<RunReport> {
    let start = Instant::now();
    let u = load_lrs(path)?;
    let w = Pattern::parse_signs(pattern)
        .ok_or_else(|| anyhow!("pattern must use the -0+ alphabet"))?;
    if w.is_empty() {
        bail!("pattern must be nonempty");
    }
    let prefix = u.sign_prefix(length);
    let stats = gap_statistics(&prefix, &w);
    let details = if csv {
        let mut table = String::from("occurrence,start,gap_from_previous\n");
        for (i, pos) in stats.positions.iter().enumerate() {
            let gap = if i == 0 {
                String::new()
            } else {
                stats.gaps[i - 1].to_string()
            };
            table.push_str(&format!("{i},{pos},{gap}\n"));
        }
        json!({"count": stats.count, "max_gap": stats.max_gap, "csv": table})
    } else {
        json!({
            "count": stats.count,
            "max_gap": stats.max_gap,
            "first_positions": stats.positions.iter().take(20).collect::<Vec<_>>(),
        })
    };
    Ok(RunReport {
        command: "gaps".into(),
        verdict: None,
        exit_code: 0,
        provenance: vec!["exact-scan".into()],
        timing_ms: start.elapsed().as_millis(),
        config: json!({"file": path.display().to_string(), "pattern": pattern, "length": length}),
        details,
    })
    .map(|r| emit(r, json))
}

fn emit(report: RunReport, _json: bool) -> RunReport {
    report
}

// ---------------------------------------------------------------------------
// Polynomial expression parsing for zone predicates.

/// Parses expressions like `x - 3`, `x1*x2 + 2`, `x^2 - 5/2` over variables
/// `x1..xm` (with `x` accepted for `x1`).
pub fn parse_poly_expr(src: &str, arity: usize) -> Result<MultiPoly> {
    let mut parser = PolyParser { src: src.as_bytes(), pos: 0, arity };
    let terms = parser.expr()?;
    parser.skip_ws();
    if parser.pos != parser.src.len() {
        bail!("unexpected trailing input at byte {}", parser.pos);
    }
    Ok(MultiPoly::new(arity, terms))
}

type Terms = Vec<(Rational, Vec<u32>)>;

struct PolyParser<'a> {
    src: &'a [u8],
    pos: usize,
    arity: usize,
}

impl PolyParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Terms> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = add_terms(acc, t);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = add_terms(acc, negate(t));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Terms> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = mul_terms(&acc, &f, self.arity);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Terms> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                bail!("expected an exponent after ^");
            }
            let e: u32 = std::str::from_utf8(&self.src[start..self.pos])?.parse()?;
            let mut acc = vec![(Rational::one(), vec![0u32; self.arity])];
            for _ in 0..e {
                acc = mul_terms(&acc, &base, self.arity);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Terms> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    bail!("missing closing parenthesis");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(negate(self.factor()?))
            }
            Some(b'x') => {
                self.pos += 1;
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let idx: usize = if start == self.pos {
                    1
                } else {
                    std::str::from_utf8(&self.src[start..self.pos])?.parse()?
                };
                if idx == 0 || idx > self.arity {
                    bail!("variable x{idx} out of range for {} sequence(s)", self.arity);
                }
                let mut exps = vec![0u32; self.arity];
                exps[idx - 1] = 1;
                Ok(vec![(Rational::one(), exps)])
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'/')
                {
                    self.pos += 1;
                }
                let lit = std::str::from_utf8(&self.src[start..self.pos])?;
                let q = parse_rational(lit).map_err(|e| anyhow!("{e}"))?;
                Ok(vec![(q, vec![0u32; self.arity])])
            }
            other => bail!("unexpected input {:?}", other.map(|c| c as char)),
        }
    }
}

fn add_terms(mut a: Terms, b: Terms) -> Terms {
    for (c, e) in b {
        if let Some(slot) = a.iter_mut().find(|(_, ae)| *ae == e) {
            slot.0 += c;
        } else {
            a.push((c, e));
        }
    }
    a.retain(|(c, _)| !c.is_zero());
    a
}

fn negate(mut a: Terms) -> Terms {
    for (c, _) in &mut a {
        *c = -c.clone();
    }
    a
}

fn mul_terms(a: &Terms, b: &Terms, arity: usize) -> Terms {
    let mut out: Terms = Vec::new();
    for (ca, ea) in a {
        for (cb, eb) in b {
            let c = ca * cb;
            let mut e = vec![0u32; arity];
            for i in 0..arity {
                e[i] = ea[i] + eb[i];
            }
            if let Some(slot) = out.iter_mut().find(|(_, oe)| *oe == e) {
                slot.0 += c;
            } else {
                out.push((c, e));
            }
        }
    }
    out.retain(|(c, _)| !c.is_zero());
    out
}
