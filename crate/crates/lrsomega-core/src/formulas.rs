//! First-order real-arithmetic formulas describing the torus subgroup and
//! the pattern-occurrence sets, with SMT-LIB 2 emission for an external
//! solver.
//!
//! Algebraic constants are never approximated by decimals: each one becomes
//! a fresh variable pair constrained by the real and imaginary parts of its
//! defining polynomial together with a rational box that pins the intended
//! root. Atoms are polynomial comparisons `t > t'` and `t = t'`; everything
//! else is Boolean structure and optional real quantifiers.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::poly::PolyQ;
use crate::algebra::rational::Rational;
use crate::algebra::roots::{select_root, AlgebraicNumber};
use crate::algebra::AlgebraError;
use crate::lrs::Sign;
use crate::spectrum::SpectrumAnalysis;
use crate::torus::RelationBasis;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealTerm {
    Var(String),
    Const(Rational),
    Add(Vec<RealTerm>),
    Mul(Vec<RealTerm>),
    Neg(Box<RealTerm>),
}

impl RealTerm {
    pub fn zero() -> RealTerm {
        RealTerm::Const(Rational::zero())
    }

    pub fn var(name: impl Into<String>) -> RealTerm {
        RealTerm::Var(name.into())
    }

    fn add2(a: RealTerm, b: RealTerm) -> RealTerm {
        RealTerm::Add(vec![a, b])
    }

    fn mul2(a: RealTerm, b: RealTerm) -> RealTerm {
        RealTerm::Mul(vec![a, b])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealFormula {
    True,
    False,
    /// `lhs > rhs`
    Gt(RealTerm, RealTerm),
    /// `lhs = rhs`
    Eq(RealTerm, RealTerm),
    And(Vec<RealFormula>),
    Or(Vec<RealFormula>),
    Not(Box<RealFormula>),
    Forall(Vec<String>, Box<RealFormula>),
    Exists(Vec<String>, Box<RealFormula>),
}

impl RealFormula {
    pub fn is_quantified(&self) -> bool {
        match self {
            RealFormula::Forall(..) | RealFormula::Exists(..) => true,
            RealFormula::And(xs) | RealFormula::Or(xs) => xs.iter().any(|f| f.is_quantified()),
            RealFormula::Not(f) => f.is_quantified(),
            _ => false,
        }
    }

    /// Free variables, in first-appearance order.
    pub fn free_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut bound = Vec::new();
        collect_free(self, &mut bound, &mut out);
        out
    }
}

fn collect_free(f: &RealFormula, bound: &mut Vec<String>, out: &mut Vec<String>) {
    match f {
        RealFormula::True | RealFormula::False => {}
        RealFormula::Gt(a, b) | RealFormula::Eq(a, b) => {
            collect_term_vars(a, bound, out);
            collect_term_vars(b, bound, out);
        }
        RealFormula::And(xs) | RealFormula::Or(xs) => {
            for x in xs {
                collect_free(x, bound, out);
            }
        }
        RealFormula::Not(x) => collect_free(x, bound, out),
        RealFormula::Forall(vs, x) | RealFormula::Exists(vs, x) => {
            let mark = bound.len();
            bound.extend(vs.iter().cloned());
            collect_free(x, bound, out);
            bound.truncate(mark);
        }
    }
}

fn collect_term_vars(t: &RealTerm, bound: &[String], out: &mut Vec<String>) {
    match t {
        RealTerm::Var(v) => {
            if !bound.contains(v) && !out.contains(v) {
                out.push(v.clone());
            }
        }
        RealTerm::Const(_) => {}
        RealTerm::Add(xs) | RealTerm::Mul(xs) => {
            for x in xs {
                collect_term_vars(x, bound, out);
            }
        }
        RealTerm::Neg(x) => collect_term_vars(x, bound, out),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormulaError {
    /// Exact constants are unavailable (reducible characteristic polynomial).
    CertifiedUnsupported(String),
    Algebra(AlgebraError),
    Parse(String),
}

impl fmt::Display for FormulaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormulaError::CertifiedUnsupported(w) => write!(f, "certified mode unsupported: {w}"),
            FormulaError::Algebra(e) => write!(f, "{e}"),
            FormulaError::Parse(w) => write!(f, "malformed formula text: {w}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for FormulaError {}

impl From<AlgebraError> for FormulaError {
    fn from(e: AlgebraError) -> Self {
        FormulaError::Algebra(e)
    }
}

/// Symbolic complex quantity: a pair of real terms.
#[derive(Clone, Debug)]
pub struct CTerm {
    pub re: RealTerm,
    pub im: RealTerm,
}

impl CTerm {
    pub fn from_vars(x: &str, y: &str) -> CTerm {
        CTerm { re: RealTerm::var(x), im: RealTerm::var(y) }
    }

    pub fn one() -> CTerm {
        CTerm { re: RealTerm::Const(Rational::one()), im: RealTerm::zero() }
    }

    pub fn mul(&self, other: &CTerm) -> CTerm {
        CTerm {
            re: RealTerm::add2(
                RealTerm::mul2(self.re.clone(), other.re.clone()),
                RealTerm::Neg(Box::new(RealTerm::mul2(self.im.clone(), other.im.clone()))),
            ),
            im: RealTerm::add2(
                RealTerm::mul2(self.re.clone(), other.im.clone()),
                RealTerm::mul2(self.im.clone(), other.re.clone()),
            ),
        }
    }

    pub fn pow(&self, k: u64) -> CTerm {
        let mut acc = CTerm::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn add(&self, other: &CTerm) -> CTerm {
        CTerm {
            re: RealTerm::add2(self.re.clone(), other.re.clone()),
            im: RealTerm::add2(self.im.clone(), other.im.clone()),
        }
    }
}

/// Registry of encoded algebraic constants: fresh variables plus the
/// defining constraints that pin each one to its isolating box.
pub struct ConstantPool {
    counter: usize,
    pub constraints: Vec<RealFormula>,
    pub var_names: Vec<String>,
}

impl ConstantPool {
    pub fn new() -> ConstantPool {
        ConstantPool { counter: 0, constraints: Vec::new(), var_names: Vec::new() }
    }

    /// Encodes an algebraic number as a complex symbolic term. Rational
    /// values embed directly; everything else gets variables constrained by
    /// the defining polynomial and the isolating box.
    pub fn encode(&mut self, a: &AlgebraicNumber, hint: &str) -> Result<CTerm, FormulaError> {
        if let Some(q) = a.as_rational() {
            return Ok(CTerm { re: RealTerm::Const(q), im: RealTerm::zero() });
        }
        let id = self.counter;
        self.counter += 1;
        let poly = a.defining_poly().clone();
        let refined = a.refined(64)?;
        let boxx = refined.enclosure().clone();
        if a.is_real() {
            let name = format!("c{id}_{hint}");
            let v = RealTerm::var(name.clone());
            self.var_names.push(name);
            self.constraints.push(RealFormula::Eq(poly_term(&poly, &v), RealTerm::zero()));
            self.push_box_real(&v, &boxx.re.lo.to_rational(), &boxx.re.hi.to_rational());
            Ok(CTerm { re: v, im: RealTerm::zero() })
        } else {
            let xn = format!("c{id}_{hint}_re");
            let yn = format!("c{id}_{hint}_im");
            let x = RealTerm::var(xn.clone());
            let y = RealTerm::var(yn.clone());
            self.var_names.push(xn);
            self.var_names.push(yn);
            let z = CTerm { re: x.clone(), im: y.clone() };
            let value = complex_poly_term(&poly, &z);
            self.constraints.push(RealFormula::Eq(value.re, RealTerm::zero()));
            self.constraints.push(RealFormula::Eq(value.im, RealTerm::zero()));
            self.push_box_real(&x, &boxx.re.lo.to_rational(), &boxx.re.hi.to_rational());
            self.push_box_real(&y, &boxx.im.lo.to_rational(), &boxx.im.hi.to_rational());
            Ok(z)
        }
    }

    fn push_box_real(&mut self, v: &RealTerm, lo: &Rational, hi: &Rational) {
        // Closed bounds, expressed in the {>, =} atom language.
        self.constraints.push(RealFormula::Not(Box::new(RealFormula::Gt(
            RealTerm::Const(lo.clone()),
            v.clone(),
        ))));
        self.constraints.push(RealFormula::Not(Box::new(RealFormula::Gt(
            v.clone(),
            RealTerm::Const(hi.clone()),
        ))));
    }
}

impl Default for ConstantPool {
    fn default() -> Self {
        Self::new()
    }
}

/// `p(v)` as a real term for a rational polynomial.
pub fn poly_term(p: &PolyQ, v: &RealTerm) -> RealTerm {
    let mut acc = RealTerm::zero();
    for c in p.coeffs().iter().rev() {
        acc = RealTerm::add2(RealTerm::mul2(acc, v.clone()), RealTerm::Const(c.clone()));
    }
    acc
}

/// `p(z)` for complex symbolic `z`, split into real and imaginary parts.
pub fn complex_poly_term(p: &PolyQ, z: &CTerm) -> CTerm {
    let mut acc = CTerm { re: RealTerm::zero(), im: RealTerm::zero() };
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(z);
        acc.re = RealTerm::add2(acc.re, RealTerm::Const(c.clone()));
    }
    acc
}

/// Variable names for the torus coordinates.
pub fn coord_vars(d: usize) -> Vec<(String, String)> {
    (0..d).map(|i| (format!("x{i}"), format!("y{i}"))).collect()
}

/// The semi-algebraic description of the torus subgroup: unit circles plus
/// the expanded relation equations, negative exponents cleared by
/// cross-multiplication.
pub fn torus_formula(basis: &RelationBasis, d: usize) -> RealFormula {
    let vars = coord_vars(d);
    let mut parts = Vec::new();
    for (x, y) in &vars {
        parts.push(RealFormula::Eq(
            RealTerm::add2(
                RealTerm::mul2(RealTerm::var(x.clone()), RealTerm::var(x.clone())),
                RealTerm::mul2(RealTerm::var(y.clone()), RealTerm::var(y.clone())),
            ),
            RealTerm::Const(Rational::one()),
        ));
    }
    for v in &basis.vectors {
        let mut lhs = CTerm::one();
        let mut rhs = CTerm::one();
        for (i, exp) in v.iter().enumerate() {
            if exp.is_zero() {
                continue;
            }
            let z = CTerm::from_vars(&vars[i].0, &vars[i].1);
            let e: u64 = exp.magnitude().try_into().unwrap_or(u64::MAX);
            if exp.is_positive() {
                lhs = lhs.mul(&z.pow(e));
            } else {
                rhs = rhs.mul(&z.pow(e));
            }
        }
        parts.push(RealFormula::Eq(lhs.re, rhs.re));
        parts.push(RealFormula::Eq(lhs.im, rhs.im));
    }
    RealFormula::And(parts)
}

/// Everything needed to build certified pattern formulas for a (possibly
/// joint) torus: the per-track analyses, all sharing one period, and a
/// verified relation basis over the concatenated normalized roots.
pub struct CertifiedBuild<'a> {
    pub tracks: Vec<&'a SpectrumAnalysis>,
    pub basis: &'a RelationBasis,
}

impl CertifiedBuild<'_> {
    pub fn total_coords(&self) -> usize {
        self.tracks.iter().map(|t| t.roots.len()).sum()
    }

    pub fn period(&self) -> u64 {
        self.tracks.first().map_or(1, |t| t.period)
    }

    fn coord_base(&self, track: usize) -> usize {
        self.tracks[..track].iter().map(|t| t.roots.len()).sum()
    }
}

/// Block words per track: `blocks[track][block_index][offset]`.
pub type TrackBlocks = Vec<Vec<Vec<Sign>>>;

fn letter_form(
    build: &CertifiedBuild<'_>,
    pool: &mut ConstantPool,
    lambda_terms: &[CTerm],
    track: usize,
    offset: u64,
    shift: u64,
) -> Result<RealTerm, FormulaError> {
    let analysis = build.tracks[track];
    let base = build.coord_base(track);
    let vars = coord_vars(build.total_coords());
    let sub = analysis.subsequence_analysis(offset);
    let mut acc: Option<CTerm> = None;
    for &j in &sub.dominant_roots {
        let w = linear_form_constant(analysis, j, offset)?;
        let w_term = pool.encode(&w, &format!("w{track}_{j}_{offset}"))?;
        let z = CTerm::from_vars(&vars[base + j].0, &vars[base + j].1);
        let shifted = if shift > 0 { z.mul(&lambda_terms[base + j].pow(shift)) } else { z };
        let term = w_term.mul(&shifted);
        acc = Some(match acc {
            None => term,
            Some(prev) => prev.add(&term),
        });
    }
    // The value is real on the torus subgroup; the real part carries the
    // sign.
    Ok(acc.map(|c| c.re).unwrap_or_else(RealTerm::zero))
}

/// The exact algebraic constant `c_j * L_j^(offset+1)`; requires exact
/// number-field coefficients.
fn linear_form_constant(
    analysis: &SpectrumAnalysis,
    root: usize,
    offset: u64,
) -> Result<AlgebraicNumber, FormulaError> {
    let Some(fc) = &analysis.exact_coeffs else {
        return Err(FormulaError::CertifiedUnsupported(String::from(
            "characteristic polynomial is not certified irreducible",
        )));
    };
    let xpow = fc.field.element(PolyQ::x_pow((offset + 1) as usize));
    let elem = fc.element.mul(&xpow).map_err(FormulaError::Algebra)?;
    element_value_at_root(analysis.nonzero_char.clone(), elem.rep().clone(), &analysis.roots[root])
        .map_err(FormulaError::Algebra)
}

/// The algebraic number `E(alpha)` for a polynomial E of degree < deg f and
/// a root alpha of f, via the resultant `Res_y(f(y), x - E(y))`.
#[allow(clippy::needless_range_loop)]
pub fn element_value_at_root(
    f: PolyQ,
    e: PolyQ,
    alpha: &AlgebraicNumber,
) -> Result<AlgebraicNumber, AlgebraError> {
    if let Some(q) = constant_of(&e) {
        return Ok(AlgebraicNumber::from_rational(&q));
    }
    let df = f.deg();
    let mut points = Vec::with_capacity(df + 1);
    for t in 0..=df as i64 {
        let x = Rational::from_integer(BigInt::from(t));
        // x - E(y) as a polynomial in y with formal degree deg E.
        let de = e.deg().max(1);
        let mut coeffs = vec![Rational::zero(); de + 1];
        for k in 0..=de.min(e.deg()) {
            coeffs[k] = -e.coeff(k);
        }
        coeffs[0] += &x;
        let val = crate::algebra::poly::sylvester_resultant(&f, &coeffs, de);
        points.push((x, val));
    }
    let pool = crate::algebra::poly::interpolate(&points);
    let alpha = alpha.clone();
    select_root(&pool, move |bits| {
        let r = alpha.refined(bits)?;
        Ok(e.eval_box(r.enclosure(), bits * 2))
    })
}

fn constant_of(e: &PolyQ) -> Option<Rational> {
    match e.degree() {
        None => Some(Rational::zero()),
        Some(0) => Some(e.coeff(0)),
        _ => None,
    }
}

fn encode_lambdas(
    build: &CertifiedBuild<'_>,
    pool: &mut ConstantPool,
) -> Result<Vec<CTerm>, FormulaError> {
    let mut out = Vec::with_capacity(build.total_coords());
    for (t, analysis) in build.tracks.iter().enumerate() {
        for j in 0..analysis.roots.len() {
            out.push(pool.encode(analysis.lambda_of_root(j), &format!("l{t}_{j}"))?);
        }
    }
    Ok(out)
}

fn sign_constraints(
    build: &CertifiedBuild<'_>,
    pool: &mut ConstantPool,
    lambda_terms: &[CTerm],
    blocks_per_track: &TrackBlocks,
    extra_shift: u64,
) -> Result<Vec<RealFormula>, FormulaError> {
    let mut parts = Vec::new();
    for (track, blocks) in blocks_per_track.iter().enumerate() {
        let analysis = build.tracks[track];
        for (t, block) in blocks.iter().enumerate() {
            for (off, letter) in block.iter().enumerate() {
                let in_z = analysis.zero_offsets.contains(&(off as u64));
                if in_z {
                    // f is constantly zero there; only a demanded zero is
                    // consistent, and needs no constraint.
                    if *letter != Sign::Zero {
                        parts.push(RealFormula::False);
                    }
                    continue;
                }
                let form = letter_form(
                    build,
                    pool,
                    lambda_terms,
                    track,
                    off as u64,
                    t as u64 + extra_shift,
                )?;
                match letter {
                    Sign::Plus => parts.push(RealFormula::Gt(form, RealTerm::zero())),
                    Sign::Minus => parts
                        .push(RealFormula::Gt(RealTerm::Neg(Box::new(form)), RealTerm::zero())),
                    Sign::Zero => parts.push(RealFormula::Eq(form, RealTerm::zero())),
                }
            }
        }
    }
    Ok(parts)
}

/// The quantifier-free formula describing `U(w')`: the free point lies on
/// the torus and produces the required sign blocks over the next m steps.
pub fn u_formula(
    build: &CertifiedBuild<'_>,
    blocks_per_track: &TrackBlocks,
) -> Result<RealFormula, FormulaError> {
    let mut pool = ConstantPool::new();
    let lambda_terms = encode_lambdas(build, &mut pool)?;
    let mut parts = vec![torus_formula(build.basis, build.total_coords())];
    parts.extend(sign_constraints(build, &mut pool, &lambda_terms, blocks_per_track, 0)?);
    parts.extend(pool.constraints);
    Ok(RealFormula::And(parts))
}

/// `Phi(B)`: every torus point enters `U(w')` within `1..=B` steps (with
/// the degenerate `Phi(0)` reading "U(w') covers the torus").
pub fn phi_formula(
    build: &CertifiedBuild<'_>,
    blocks_per_track: &TrackBlocks,
    bound: u64,
) -> Result<RealFormula, FormulaError> {
    let mut pool = ConstantPool::new();
    let lambda_terms = encode_lambdas(build, &mut pool)?;
    let torus = torus_formula(build.basis, build.total_coords());
    let shifts: Vec<u64> = if bound == 0 { vec![0] } else { (1..=bound).collect() };
    let mut disjuncts = Vec::with_capacity(shifts.len());
    for k in shifts {
        let parts = sign_constraints(build, &mut pool, &lambda_terms, blocks_per_track, k)?;
        disjuncts.push(RealFormula::And(parts));
    }
    let mut hyp = vec![torus];
    hyp.extend(pool.constraints.clone());
    let body = RealFormula::Or(vec![
        RealFormula::Not(Box::new(RealFormula::And(hyp))),
        RealFormula::Or(disjuncts),
    ]);
    // Quantify everything: the torus point and the pinned constants.
    let d = build.total_coords();
    let mut vars: Vec<String> = Vec::new();
    for (x, y) in coord_vars(d) {
        vars.push(x);
        vars.push(y);
    }
    vars.extend(pool.var_names.clone());
    Ok(RealFormula::Forall(vars, Box::new(body)))
}

// ---------------------------------------------------------------------------
// SMT-LIB emission and parsing.

fn rational_sexpr(q: &Rational) -> String {
    let neg = q.is_negative();
    let abs = if neg { -q.clone() } else { q.clone() };
    let body = if abs.denom().is_one() {
        format!("{}.0", abs.numer())
    } else {
        format!("(/ {}.0 {}.0)", abs.numer(), abs.denom())
    };
    if neg {
        format!("(- {body})")
    } else {
        body
    }
}

pub fn term_sexpr(t: &RealTerm) -> String {
    match t {
        RealTerm::Var(v) => v.clone(),
        RealTerm::Const(q) => rational_sexpr(q),
        RealTerm::Add(xs) => nary_sexpr("+", xs),
        RealTerm::Mul(xs) => nary_sexpr("*", xs),
        RealTerm::Neg(x) => format!("(- {})", term_sexpr(x)),
    }
}

fn nary_sexpr(op: &str, xs: &[RealTerm]) -> String {
    let mut s = String::from("(");
    s.push_str(op);
    for x in xs {
        s.push(' ');
        s.push_str(&term_sexpr(x));
    }
    s.push(')');
    s
}

pub fn formula_sexpr(f: &RealFormula) -> String {
    match f {
        RealFormula::True => String::from("true"),
        RealFormula::False => String::from("false"),
        RealFormula::Gt(a, b) => format!("(> {} {})", term_sexpr(a), term_sexpr(b)),
        RealFormula::Eq(a, b) => format!("(= {} {})", term_sexpr(a), term_sexpr(b)),
        RealFormula::And(xs) => nary_formula("and", xs),
        RealFormula::Or(xs) => nary_formula("or", xs),
        RealFormula::Not(x) => format!("(not {})", formula_sexpr(x)),
        RealFormula::Forall(vs, x) => quant_sexpr("forall", vs, x),
        RealFormula::Exists(vs, x) => quant_sexpr("exists", vs, x),
    }
}

fn nary_formula(op: &str, xs: &[RealFormula]) -> String {
    let mut s = String::from("(");
    s.push_str(op);
    for x in xs {
        s.push(' ');
        s.push_str(&formula_sexpr(x));
    }
    s.push(')');
    s
}

fn quant_sexpr(op: &str, vs: &[String], body: &RealFormula) -> String {
    let mut s = format!("({op} (");
    for (i, v) in vs.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        s.push_str(&format!("({v} Real)"));
    }
    s.push_str(") ");
    s.push_str(&formula_sexpr(body));
    s.push(')');
    s
}

/// Emits a complete SMT-LIB 2 script asserting the formula: logic NRA when
/// quantified, QF_NRA otherwise; free variables get declarations.
pub fn to_smtlib_script(f: &RealFormula) -> String {
    let logic = if f.is_quantified() { "NRA" } else { "QF_NRA" };
    let mut s = String::new();
    s.push_str(&format!("(set-logic {logic})\n"));
    for v in f.free_vars() {
        s.push_str(&format!("(declare-const {v} Real)\n"));
    }
    s.push_str(&format!("(assert {})\n", formula_sexpr(f)));
    s.push_str("(check-sat)\n");
    s
}

/// Parses the s-expression dialect produced by [`formula_sexpr`]; inverse
/// of emission at the formula level.
pub fn parse_formula(s: &str) -> Result<RealFormula, FormulaError> {
    let tokens = tokenize(s);
    let mut pos = 0;
    let sexpr = parse_sexpr(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(FormulaError::Parse(String::from("trailing tokens")));
    }
    sexpr_to_formula(&sexpr)
}

#[derive(Debug, Clone)]
enum Sexpr {
    Atom(String),
    List(Vec<Sexpr>),
}

fn tokenize(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' | ')' => {
                if !cur.is_empty() {
                    out.push(core::mem::take(&mut cur));
                }
                out.push(ch.to_string());
            }
            c if c.is_whitespace() => {
                if !cur.is_empty() {
                    out.push(core::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

fn parse_sexpr(tokens: &[String], pos: &mut usize) -> Result<Sexpr, FormulaError> {
    let Some(tok) = tokens.get(*pos) else {
        return Err(FormulaError::Parse(String::from("unexpected end")));
    };
    *pos += 1;
    if tok == "(" {
        let mut items = Vec::new();
        loop {
            match tokens.get(*pos) {
                Some(t) if t == ")" => {
                    *pos += 1;
                    return Ok(Sexpr::List(items));
                }
                Some(_) => items.push(parse_sexpr(tokens, pos)?),
                None => return Err(FormulaError::Parse(String::from("unbalanced parens"))),
            }
        }
    } else if tok == ")" {
        Err(FormulaError::Parse(String::from("unexpected )")))
    } else {
        Ok(Sexpr::Atom(tok.clone()))
    }
}

fn sexpr_to_formula(s: &Sexpr) -> Result<RealFormula, FormulaError> {
    match s {
        Sexpr::Atom(a) if a == "true" => Ok(RealFormula::True),
        Sexpr::Atom(a) if a == "false" => Ok(RealFormula::False),
        Sexpr::Atom(a) => Err(FormulaError::Parse(format!("unexpected atom {a}"))),
        Sexpr::List(items) => {
            let Some(Sexpr::Atom(head)) = items.first() else {
                return Err(FormulaError::Parse(String::from("empty list")));
            };
            match head.as_str() {
                ">" | "=" => {
                    if items.len() != 3 {
                        return Err(FormulaError::Parse(format!("{head} arity")));
                    }
                    let a = sexpr_to_term(&items[1])?;
                    let b = sexpr_to_term(&items[2])?;
                    Ok(if head == ">" { RealFormula::Gt(a, b) } else { RealFormula::Eq(a, b) })
                }
                "and" | "or" => {
                    let xs: Result<Vec<_>, _> = items[1..].iter().map(sexpr_to_formula).collect();
                    let xs = xs?;
                    Ok(if head == "and" { RealFormula::And(xs) } else { RealFormula::Or(xs) })
                }
                "not" => {
                    if items.len() != 2 {
                        return Err(FormulaError::Parse(String::from("not arity")));
                    }
                    Ok(RealFormula::Not(Box::new(sexpr_to_formula(&items[1])?)))
                }
                "forall" | "exists" => {
                    if items.len() != 3 {
                        return Err(FormulaError::Parse(String::from("quantifier arity")));
                    }
                    let Sexpr::List(vars) = &items[1] else {
                        return Err(FormulaError::Parse(String::from("quantifier vars")));
                    };
                    let mut names = Vec::new();
                    for v in vars {
                        let Sexpr::List(pair) = v else {
                            return Err(FormulaError::Parse(String::from("var binding")));
                        };
                        let Some(Sexpr::Atom(name)) = pair.first() else {
                            return Err(FormulaError::Parse(String::from("var name")));
                        };
                        names.push(name.clone());
                    }
                    let body = Box::new(sexpr_to_formula(&items[2])?);
                    Ok(if head == "forall" {
                        RealFormula::Forall(names, body)
                    } else {
                        RealFormula::Exists(names, body)
                    })
                }
                other => Err(FormulaError::Parse(format!("unknown operator {other}"))),
            }
        }
    }
}

fn sexpr_to_term(s: &Sexpr) -> Result<RealTerm, FormulaError> {
    match s {
        Sexpr::Atom(a) => {
            if let Some(q) = parse_decimal_atom(a) {
                Ok(RealTerm::Const(q))
            } else {
                Ok(RealTerm::Var(a.clone()))
            }
        }
        Sexpr::List(items) => {
            let Some(Sexpr::Atom(head)) = items.first() else {
                return Err(FormulaError::Parse(String::from("empty term")));
            };
            match head.as_str() {
                "+" => Ok(RealTerm::Add(
                    items[1..].iter().map(sexpr_to_term).collect::<Result<_, _>>()?,
                )),
                "*" => Ok(RealTerm::Mul(
                    items[1..].iter().map(sexpr_to_term).collect::<Result<_, _>>()?,
                )),
                "-" => {
                    if items.len() != 2 {
                        return Err(FormulaError::Parse(String::from("unary minus arity")));
                    }
                    match sexpr_to_term(&items[1])? {
                        // (- c) folds back into the constant so the round
                        // trip stays structural.
                        RealTerm::Const(q) => Ok(RealTerm::Const(-q)),
                        t => Ok(RealTerm::Neg(Box::new(t))),
                    }
                }
                "/" => {
                    if items.len() != 3 {
                        return Err(FormulaError::Parse(String::from("/ arity")));
                    }
                    let a = sexpr_to_term(&items[1])?;
                    let b = sexpr_to_term(&items[2])?;
                    match (a, b) {
                        (RealTerm::Const(x), RealTerm::Const(y)) => Ok(RealTerm::Const(x / y)),
                        _ => Err(FormulaError::Parse(String::from("non-constant division"))),
                    }
                }
                other => Err(FormulaError::Parse(format!("unknown term operator {other}"))),
            }
        }
    }
}

fn parse_decimal_atom(a: &str) -> Option<Rational> {
    let body = a.strip_suffix(".0")?;
    let n: BigInt = body.parse().ok()?;
    Some(Rational::from_integer(n))
}

// ---------------------------------------------------------------------------
// Evaluation (round-trip tests and the witness backend).

/// Evaluates a term under a rational assignment.
pub fn eval_term(t: &RealTerm, env: &BTreeMap<String, Rational>) -> Option<Rational> {
    match t {
        RealTerm::Var(v) => env.get(v).cloned(),
        RealTerm::Const(q) => Some(q.clone()),
        RealTerm::Add(xs) => {
            let mut acc = Rational::zero();
            for x in xs {
                acc += eval_term(x, env)?;
            }
            Some(acc)
        }
        RealTerm::Mul(xs) => {
            let mut acc = Rational::one();
            for x in xs {
                acc *= eval_term(x, env)?;
            }
            Some(acc)
        }
        RealTerm::Neg(x) => Some(-eval_term(x, env)?),
    }
}

/// Evaluates a quantifier-free formula under a rational assignment.
pub fn eval_formula(f: &RealFormula, env: &BTreeMap<String, Rational>) -> Option<bool> {
    match f {
        RealFormula::True => Some(true),
        RealFormula::False => Some(false),
        RealFormula::Gt(a, b) => Some(eval_term(a, env)? > eval_term(b, env)?),
        RealFormula::Eq(a, b) => Some(eval_term(a, env)? == eval_term(b, env)?),
        RealFormula::And(xs) => {
            for x in xs {
                if !eval_formula(x, env)? {
                    return Some(false);
                }
            }
            Some(true)
        }
        RealFormula::Or(xs) => {
            for x in xs {
                if eval_formula(x, env)? {
                    return Some(true);
                }
            }
            Some(false)
        }
        RealFormula::Not(x) => Some(!eval_formula(x, env)?),
        RealFormula::Forall(..) | RealFormula::Exists(..) => None,
    }
}

// ---------------------------------------------------------------------------
// Solver backend interface.

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolverVerdict {
    Sat,
    Unsat,
    Unknown(String),
}

/// External decision procedure for the emitted scripts. The companion crate
/// implements this by launching a solver subprocess.
pub trait SmtBackend {
    fn check_script(&mut self, script: &str) -> SolverVerdict;
}

/// Emits and checks a formula through a backend.
pub fn solver_check(backend: &mut dyn SmtBackend, f: &RealFormula) -> SolverVerdict {
    backend.check_script(&to_smtlib_script(f))
}
