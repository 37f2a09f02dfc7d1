//! Linear recurrence sequences over the rationals with exact term and sign
//! evaluation, minimization, and closure under sum, product, polynomial
//! images and arithmetic-progression subsequences.
//!
//! Sequences are indexed from 1 (`u_1, ..., u_d` are the initial terms and
//! the recurrence applies for `n > d`). The sign description is viewed as a
//! 0-based word: word position `p` holds the sign of `u_(p+1)`. That
//! off-by-one adapter is [`Lrs::sign_word_position`]; everything pattern- or
//! block-related works on word positions.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::poly::PolyQ;
use crate::algebra::rational::{format_rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Minus,
    Zero,
    Plus,
}

impl Sign {
    pub fn of_rational(q: &Rational) -> Sign {
        if q.is_zero() {
            Sign::Zero
        } else if q.is_positive() {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn of_bigint(b: &BigInt) -> Sign {
        if b.is_zero() {
            Sign::Zero
        } else if b.is_positive() {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Minus => '-',
            Sign::Zero => '0',
            Sign::Plus => '+',
        }
    }

    pub fn from_char(c: char) -> Option<Sign> {
        match c {
            '-' => Some(Sign::Minus),
            '0' => Some(Sign::Zero),
            '+' => Some(Sign::Plus),
            _ => None,
        }
    }

    pub const ALPHABET: [Sign; 3] = [Sign::Minus, Sign::Zero, Sign::Plus];
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LrsError {
    Empty,
    LengthMismatch { coeffs: usize, initial: usize },
    InvalidIndex,
    ArityMismatch { expected: usize, got: usize },
}

impl fmt::Display for LrsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LrsError::Empty => write!(f, "empty recurrence"),
            LrsError::LengthMismatch { coeffs, initial } => {
                write!(f, "coefficient/initial length mismatch ({coeffs} vs {initial})")
            }
            LrsError::InvalidIndex => write!(f, "sequence indices start at 1"),
            LrsError::ArityMismatch { expected, got } => {
                write!(f, "polynomial arity {expected} but {got} sequences supplied")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for LrsError {}

/// A linear recurrence sequence `u_n = a_1 u_(n-1) + ... + a_d u_(n-d)`.
#[derive(Clone, PartialEq, Eq)]
pub struct Lrs {
    coeffs: Vec<Rational>,
    initial: Vec<Rational>,
}

impl fmt::Debug for Lrs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lrs{{coeffs=[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", format_rational(c))?;
        }
        write!(f, "], initial=[")?;
        for (i, c) in self.initial.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", format_rational(c))?;
        }
        write!(f, "]}}")
    }
}

impl Lrs {
    pub fn from_recurrence(coeffs: Vec<Rational>, initial: Vec<Rational>) -> Result<Lrs, LrsError> {
        if coeffs.is_empty() || initial.is_empty() {
            return Err(LrsError::Empty);
        }
        if coeffs.len() != initial.len() {
            return Err(LrsError::LengthMismatch { coeffs: coeffs.len(), initial: initial.len() });
        }
        Ok(Lrs { coeffs, initial })
    }

    /// The constant sequence `c, c, c, ...` as an order-1 recurrence.
    pub fn constant(c: Rational) -> Lrs {
        Lrs { coeffs: vec![Rational::one()], initial: vec![c] }
    }

    pub fn zero() -> Lrs {
        Lrs::constant(Rational::zero())
    }

    pub fn fibonacci() -> Lrs {
        Lrs {
            coeffs: vec![Rational::one(), Rational::one()],
            initial: vec![Rational::one(), Rational::one()],
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn initial(&self) -> &[Rational] {
        &self.initial
    }

    /// Characteristic polynomial `x^d - a_1 x^(d-1) - ... - a_d`.
    pub fn char_poly(&self) -> PolyQ {
        let d = self.order();
        let mut coeffs = Vec::with_capacity(d + 1);
        for i in (1..=d).rev() {
            coeffs.push(-self.coeffs[i - 1].clone());
        }
        coeffs.push(Rational::one());
        PolyQ::new(coeffs)
    }

    /// Exact n-th term, 1-based.
    pub fn term(&self, n: u64) -> Result<Rational, LrsError> {
        if n == 0 {
            return Err(LrsError::InvalidIndex);
        }
        let d = self.order() as u64;
        if n <= d {
            return Ok(self.initial[(n - 1) as usize].clone());
        }
        if n > MATRIX_PATH_THRESHOLD {
            return Ok(self.term_by_matrix(n));
        }
        let engine = IntEngine::new(self);
        let w = engine.nth_scaled(n);
        Ok(engine.unscale(w, n))
    }

    /// Companion-matrix power path for isolated far indices.
    fn term_by_matrix(&self, n: u64) -> Rational {
        let d = self.order();
        let mut mat = vec![vec![Rational::zero(); d]; d];
        for (j, c) in self.coeffs.iter().enumerate() {
            mat[0][j] = c.clone();
        }
        for i in 1..d {
            mat[i][i - 1] = Rational::one();
        }
        // State (u_d, ..., u_1); u_n = first component of M^(n-d) * state.
        let mut state: Vec<Rational> = self.initial.iter().rev().cloned().collect();
        let mut e = n - d as u64;
        let mut base = mat;
        while e > 0 {
            if e & 1 == 1 {
                state = mat_vec(&base, &state);
            }
            base = mat_mul(&base, &base);
            e >>= 1;
        }
        state.swap_remove(0)
    }

    pub fn sign_at(&self, n: u64) -> Result<Sign, LrsError> {
        if n == 0 {
            return Err(LrsError::InvalidIndex);
        }
        if n > MATRIX_PATH_THRESHOLD {
            return Ok(Sign::of_rational(&self.term(n)?));
        }
        let mut stream = self.sign_stream();
        let mut last = Sign::Zero;
        for _ in 0..n {
            last = stream.next_sign();
        }
        Ok(last)
    }

    /// First `len` letters of the sign description (word positions 0..len).
    pub fn sign_prefix(&self, len: usize) -> Vec<Sign> {
        let mut stream = self.sign_stream();
        (0..len).map(|_| stream.next_sign()).collect()
    }

    /// Sign at 0-based word position `p`, i.e. `sgn(u_(p+1))`.
    pub fn sign_word_position(&self, p: u64) -> Sign {
        self.sign_at(p + 1).expect("p + 1 >= 1")
    }

    /// Streaming sign iterator; the first call yields `sgn(u_1)`.
    pub fn sign_stream(&self) -> SignStream {
        SignStream::new(self)
    }

    pub fn first_terms(&self, count: usize) -> Vec<Rational> {
        let engine = IntEngine::new(self);
        let mut out = Vec::with_capacity(count);
        let mut stream = engine.stream();
        for n in 1..=count as u64 {
            let w = stream.next_scaled();
            out.push(engine.unscale(w, n));
        }
        out
    }

    /// True iff every term is zero; exact, via the first `order` terms.
    pub fn is_identically_zero(&self) -> bool {
        self.initial.iter().all(Zero::is_zero)
    }

    /// The unique minimal-order recurrence generating the same terms.
    pub fn minimize(&self) -> Lrs {
        let d = self.order();
        let terms = self.first_terms(2 * d);
        let coeffs = berlekamp_massey(&terms);
        if coeffs.is_empty() {
            return Lrs::zero();
        }
        let initial = terms[..coeffs.len()].to_vec();
        Lrs { coeffs, initial }
    }

    /// Simplicity: the minimal recurrence's characteristic polynomial is
    /// squarefree.
    pub fn is_simple(&self) -> bool {
        let min = self.minimize();
        crate::algebra::poly::poly_squarefree(&min.char_poly()).unwrap_or(false)
    }

    /// Pointwise sum, minimized.
    pub fn add(&self, other: &Lrs) -> Lrs {
        let bound = self.order() + other.order();
        let a = self.first_terms(2 * bound);
        let b = other.first_terms(2 * bound);
        let sum: Vec<Rational> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        lrs_from_terms(&sum)
    }

    /// Pointwise product, minimized.
    pub fn mul(&self, other: &Lrs) -> Lrs {
        let bound = self.order() * other.order();
        let a = self.first_terms(2 * bound);
        let b = other.first_terms(2 * bound);
        let prod: Vec<Rational> = a.iter().zip(&b).map(|(x, y)| x * y).collect();
        lrs_from_terms(&prod)
    }

    pub fn neg(&self) -> Lrs {
        Lrs {
            coeffs: self.coeffs.clone(),
            initial: self.initial.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Lrs {
        Lrs {
            coeffs: self.coeffs.clone(),
            initial: self.initial.iter().map(|x| x * c).collect(),
        }
    }

    /// Adds a rational constant pointwise.
    pub fn add_constant(&self, c: &Rational) -> Lrs {
        self.add(&Lrs::constant(c.clone()))
    }

    /// The subsequence over word offset `offset` with step `step`: terms
    /// `u_(offset+1), u_(offset+1+step), ...` (0-based word positions
    /// `offset, offset+step, ...`), minimized.
    pub fn subsequence(&self, offset: u64, step: u64) -> Lrs {
        assert!(step >= 1);
        let d = self.order();
        let need = offset + 1 + (2 * d as u64) * step;
        let engine = IntEngine::new(self);
        let mut stream = engine.stream();
        let mut picked = Vec::with_capacity(2 * d);
        for n in 1..=need {
            let w = stream.next_scaled();
            if n > offset && (n - offset - 1).is_multiple_of(step) && picked.len() < 2 * d {
                picked.push(engine.unscale(w, n));
            }
        }
        lrs_from_terms(&picked)
    }

    /// Per-offset sign tracks used by the interleaving reconstruction check.
    pub fn interleave_check_data(&self, step: u64, len: usize) -> Vec<Vec<Sign>> {
        (0..step).map(|off| self.subsequence(off, step).sign_prefix(len)).collect()
    }
}

/// Builds the minimal LRS generating `terms`; the caller must supply
/// `2 * (true order)` terms or more.
pub fn lrs_from_terms(terms: &[Rational]) -> Lrs {
    let coeffs = berlekamp_massey(terms);
    if coeffs.is_empty() {
        return Lrs::zero();
    }
    let initial = terms[..coeffs.len()].to_vec();
    Lrs { coeffs, initial }
}

const MATRIX_PATH_THRESHOLD: u64 = 1 << 16;

fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let mut out = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[k][j].is_zero() {
                    continue;
                }
                let add = &a[i][k] * &b[k][j];
                out[i][j] += add;
            }
        }
    }
    out
}

fn mat_vec(a: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|row| {
            let mut acc = Rational::zero();
            for (c, x) in row.iter().zip(v) {
                if !c.is_zero() {
                    acc += c * x;
                }
            }
            acc
        })
        .collect()
}

/// Berlekamp-Massey over the rationals: the shortest connection vector
/// `a_1..a_L` with `u_n = a_1 u_(n-1) + ... + a_L u_(n-L)` for the given
/// prefix. Empty output means the zero sequence.
pub fn berlekamp_massey(seq: &[Rational]) -> Vec<Rational> {
    let n = seq.len();
    let mut c = vec![Rational::one()];
    let mut b = vec![Rational::one()];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut bb = Rational::one();
    for i in 0..n {
        let mut delta = seq[i].clone();
        for j in 1..=l {
            if j < c.len() {
                delta += &c[j] * &seq[i - j];
            }
        }
        if delta.is_zero() {
            m += 1;
        } else if 2 * l <= i {
            let t = c.clone();
            let coef = &delta / &bb;
            if c.len() < b.len() + m {
                c.resize(b.len() + m, Rational::zero());
            }
            for (j, bj) in b.iter().enumerate() {
                let sub = &coef * bj;
                c[j + m] -= sub;
            }
            l = i + 1 - l;
            b = t;
            bb = delta;
            m = 1;
        } else {
            let coef = &delta / &bb;
            if c.len() < b.len() + m {
                c.resize(b.len() + m, Rational::zero());
            }
            for (j, bj) in b.iter().enumerate() {
                let sub = &coef * bj;
                c[j + m] -= sub;
            }
            m += 1;
        }
    }
    // c = 1 + c_1 x + ...; connection coefficients are a_i = -c_i, padded to
    // length L.
    let mut out = vec![Rational::zero(); l];
    for (i, o) in out.iter_mut().enumerate() {
        if i + 1 < c.len() {
            *o = -c[i + 1].clone();
        }
    }
    out
}

/// Integer-scaled evaluation engine. With q the common denominator of the
/// coefficients and L the common denominator of the scaled initial terms,
/// `w_n := L q^n u_n` is an integer sequence obeying an integer recurrence
/// with the same sign description as `u`.
struct IntEngine {
    int_coeffs: Vec<BigInt>,
    int_initial: Vec<BigInt>,
    q: BigInt,
    l: BigInt,
}

impl IntEngine {
    fn new(u: &Lrs) -> IntEngine {
        let mut q = BigInt::one();
        for c in &u.coeffs {
            q = q.lcm(c.denom());
        }
        // c_i = a_i q^i are integers.
        let mut int_coeffs = Vec::with_capacity(u.order());
        let mut qpow = BigInt::one();
        for a in &u.coeffs {
            qpow = &qpow * &q;
            let scaled = a * Rational::from_integer(qpow.clone());
            debug_assert!(scaled.denom().is_one());
            int_coeffs.push(scaled.numer().clone());
        }
        // v_j = q^j u_j; L clears their denominators.
        let mut v = Vec::with_capacity(u.order());
        let mut qpow = BigInt::one();
        for init in &u.initial {
            qpow = &qpow * &q;
            v.push(init * Rational::from_integer(qpow.clone()));
        }
        let mut l = BigInt::one();
        for x in &v {
            l = l.lcm(x.denom());
        }
        let int_initial = v
            .iter()
            .map(|x| {
                let w = x * Rational::from_integer(l.clone());
                debug_assert!(w.denom().is_one());
                w.numer().clone()
            })
            .collect();
        IntEngine { int_coeffs, int_initial, q, l }
    }

    fn stream(&self) -> ScaledStream<'_> {
        ScaledStream { engine: self, window: self.int_initial.clone(), emitted: 0 }
    }

    fn nth_scaled(&self, n: u64) -> BigInt {
        let mut stream = self.stream();
        let mut last = BigInt::zero();
        for _ in 0..n {
            last = stream.next_scaled();
        }
        last
    }

    fn unscale(&self, w: BigInt, n: u64) -> Rational {
        let mut den = self.l.clone();
        let mut e = n;
        let mut base = self.q.clone();
        while e > 0 {
            if e & 1 == 1 {
                den = &den * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Rational::new(w, den)
    }
}

struct ScaledStream<'a> {
    engine: &'a IntEngine,
    window: Vec<BigInt>,
    emitted: usize,
}

impl ScaledStream<'_> {
    fn next_scaled(&mut self) -> BigInt {
        let d = self.window.len();
        if self.emitted < d {
            self.emitted += 1;
            return self.window[self.emitted - 1].clone();
        }
        let mut next = BigInt::zero();
        for (i, c) in self.engine.int_coeffs.iter().enumerate() {
            if !c.is_zero() {
                next += c * &self.window[d - 1 - i];
            }
        }
        self.window.rotate_left(1);
        self.window[d - 1] = next.clone();
        self.emitted += 1;
        next
    }
}

/// Streaming sign evaluation with a sliding window of `order` scaled values.
pub struct SignStream {
    int_coeffs: Vec<BigInt>,
    window: Vec<BigInt>,
    emitted: usize,
}

impl SignStream {
    fn new(u: &Lrs) -> SignStream {
        let engine = IntEngine::new(u);
        SignStream {
            window: engine.int_initial.clone(),
            int_coeffs: engine.int_coeffs,
            emitted: 0,
        }
    }

    pub fn next_sign(&mut self) -> Sign {
        let d = self.window.len();
        if self.emitted < d {
            self.emitted += 1;
            return Sign::of_bigint(&self.window[self.emitted - 1]);
        }
        let mut next = BigInt::zero();
        for (i, c) in self.int_coeffs.iter().enumerate() {
            if !c.is_zero() {
                next += c * &self.window[d - 1 - i];
            }
        }
        self.window.rotate_left(1);
        self.window[d - 1] = next;
        self.emitted += 1;
        Sign::of_bigint(&self.window[d - 1])
    }
}

/// Sparse multivariate polynomial with rational coefficients, used for
/// polynomial images of tuples of sequences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    arity: usize,
    /// (coefficient, exponent vector of length `arity`)
    terms: Vec<(Rational, Vec<u32>)>,
}

impl MultiPoly {
    pub fn new(arity: usize, terms: Vec<(Rational, Vec<u32>)>) -> MultiPoly {
        debug_assert!(terms.iter().all(|(_, e)| e.len() == arity));
        MultiPoly { arity, terms }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Univariate helper from lowest-degree-first coefficients.
    pub fn univariate(coeffs: &[Rational]) -> MultiPoly {
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (c.clone(), vec![e as u32]))
            .collect();
        MultiPoly { arity: 1, terms }
    }

    pub fn describe(&self) -> String {
        use core::fmt::Write;
        let mut s = String::new();
        for (i, (c, es)) in self.terms.iter().enumerate() {
            if i > 0 {
                s.push_str(" + ");
            }
            let _ = write!(s, "{}", format_rational(c));
            for (v, e) in es.iter().enumerate() {
                if *e > 0 {
                    let _ = write!(s, "*x{}^{}", v + 1, e);
                }
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

/// The sequence `F(u^(1)_n, ..., u^(m)_n)` as a minimized LRS.
pub fn apply_polynomial(f: &MultiPoly, us: &[&Lrs]) -> Result<Lrs, LrsError> {
    if f.arity != us.len() {
        return Err(LrsError::ArityMismatch { expected: f.arity, got: us.len() });
    }
    let mut acc = Lrs::zero();
    for (c, exps) in &f.terms {
        let mut term = Lrs::constant(c.clone());
        for (var, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                term = term.mul(us[var]);
            }
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{rat, rat_i64};

    fn lrs(coeffs: &[(i64, i64)], initial: &[(i64, i64)]) -> Lrs {
        Lrs::from_recurrence(
            coeffs.iter().map(|&(n, d)| rat(n, d)).collect(),
            initial.iter().map(|&(n, d)| rat(n, d)).collect(),
        )
        .unwrap()
    }

    fn signs_to_string(s: &[Sign]) -> String {
        s.iter().map(|x| x.as_char()).collect()
    }

    /// The recurrence for cos(n*phi) with lambda = (3+4i)/5.
    fn cos_family() -> Lrs {
        lrs(&[(6, 5), (-1, 1)], &[(3, 5), (-7, 25)])
    }

    /// Terms 0, -1, 0, 1, ... with sign word "0-0+...".
    fn zero_minus_zero_plus() -> Lrs {
        lrs(&[(0, 1), (-1, 1)], &[(0, 1), (-1, 1)])
    }

    #[test]
    fn fibonacci_terms() {
        let fib = Lrs::fibonacci();
        assert_eq!(fib.term(10).unwrap(), rat_i64(55));
        assert_eq!(fib.term(1).unwrap(), rat_i64(1));
        assert!(fib.term(0).is_err());
    }

    #[test]
    fn zero_sequence_terms() {
        let z = Lrs::zero();
        for n in 1..10 {
            assert!(z.term(n).unwrap().is_zero());
        }
        assert!(z.is_identically_zero());
    }

    #[test]
    fn cos_family_third_term() {
        // cos(3 phi) = -117/125 for cos(phi) = 3/5.
        let u = cos_family();
        assert_eq!(u.term(3).unwrap(), rat(-117, 125));
    }

    #[test]
    fn loop_difference_recurrence() {
        // u_(n+2) = -2u_(n+1) + 16u_n with some rational start.
        let u = lrs(&[(-2, 1), (16, 1)], &[(1, 1), (3, 1)]);
        assert_eq!(u.term(3).unwrap(), rat_i64(-2 * 3 + 16));
    }

    #[test]
    fn sign_prefixes() {
        assert_eq!(signs_to_string(&Lrs::zero().sign_prefix(5)), "00000");
        let alt = lrs(&[(-1, 1)], &[(-1, 1)]);
        assert_eq!(signs_to_string(&alt.sign_prefix(4)), "-+-+");
        assert_eq!(signs_to_string(&zero_minus_zero_plus().sign_prefix(8)), "0-0+0-0+");
    }

    #[test]
    fn sign_stream_matches_terms() {
        let u = cos_family();
        let signs = u.sign_prefix(60);
        for (p, s) in signs.iter().enumerate() {
            let t = u.term(p as u64 + 1).unwrap();
            assert_eq!(*s, Sign::of_rational(&t), "disagree at position {p}");
        }
    }

    #[test]
    fn add_is_pointwise() {
        let fib = Lrs::fibonacci();
        let sum = fib.add(&fib);
        assert_eq!(sum.order(), 2);
        for n in 1..=30 {
            assert_eq!(sum.term(n).unwrap(), rat_i64(2) * fib.term(n).unwrap());
        }
    }

    #[test]
    fn fibonacci_square_recurrence() {
        // F_n^2 satisfies u_n = 2u_(n-1) + 2u_(n-2) - u_(n-3).
        let fib = Lrs::fibonacci();
        let sq = fib.mul(&fib);
        assert_eq!(sq.order(), 3);
        assert_eq!(sq.coeffs(), &[rat_i64(2), rat_i64(2), rat_i64(-1)]);
        for n in 1..=50u64 {
            let f = fib.term(n).unwrap();
            assert_eq!(sq.term(n).unwrap(), &f * &f);
        }
    }

    #[test]
    fn mul_with_zero() {
        let fib = Lrs::fibonacci();
        let z = fib.mul(&Lrs::zero());
        assert_eq!(z.order(), 1);
        assert!(z.is_identically_zero());
    }

    #[test]
    fn apply_polynomial_shift() {
        // F = x - 5 maps u to u_n - 5.
        let fib = Lrs::fibonacci();
        let f = MultiPoly::univariate(&[rat_i64(-5), rat_i64(1)]);
        let shifted = apply_polynomial(&f, &[&fib]).unwrap();
        for n in 1..=20 {
            assert_eq!(shifted.term(n).unwrap(), fib.term(n).unwrap() - rat_i64(5));
        }
    }

    #[test]
    fn apply_polynomial_product() {
        let fib = Lrs::fibonacci();
        let alt = lrs(&[(-1, 1)], &[(-1, 1)]);
        let f = MultiPoly::new(2, vec![(rat_i64(1), vec![1, 1])]);
        let prod = apply_polynomial(&f, &[&fib, &alt]).unwrap();
        for n in 1..=20 {
            assert_eq!(
                prod.term(n).unwrap(),
                fib.term(n).unwrap() * alt.term(n).unwrap()
            );
        }
    }

    #[test]
    fn apply_polynomial_square_minus_two() {
        // F = x^2 - 2 on Fibonacci: -1, -1, 2, 7, 23, ...
        let fib = Lrs::fibonacci();
        let f = MultiPoly::univariate(&[rat_i64(-2), rat_i64(0), rat_i64(1)]);
        let v = apply_polynomial(&f, &[&fib]).unwrap();
        let expect = [-1i64, -1, 2, 7, 23];
        for (i, e) in expect.iter().enumerate() {
            assert_eq!(v.term(i as u64 + 1).unwrap(), rat_i64(*e));
        }
    }

    #[test]
    fn subsequences_of_sign_word() {
        let u = zero_minus_zero_plus();
        // Offset 0 step 2: word positions 0, 2, 4, ... all zero.
        let even = u.subsequence(0, 2);
        assert!(even.is_identically_zero());
        // Offset 1 step 2: -1, 1, -1, ... order 1 root -1.
        let odd = u.subsequence(1, 2);
        assert_eq!(odd.order(), 1);
        assert_eq!(odd.coeffs(), &[rat_i64(-1)]);
        // Step 1 offset 0 is the sequence itself.
        let same = u.subsequence(0, 1);
        for n in 1..=12 {
            assert_eq!(same.term(n).unwrap(), u.term(n).unwrap());
        }
    }

    #[test]
    fn interleaving_reconstructs_sign_prefix() {
        for u in [zero_minus_zero_plus(), Lrs::fibonacci(), cos_family()] {
            let step = 2u64;
            let total = 40usize;
            let tracks = u.interleave_check_data(step, total / 2);
            let direct = u.sign_prefix(total);
            for (p, s) in direct.iter().enumerate() {
                let off = p as u64 % step;
                let k = p / step as usize;
                assert_eq!(tracks[off as usize][k], *s, "position {p}");
            }
        }
    }

    #[test]
    fn minimize_padded_fibonacci() {
        // Fibonacci padded to order 3.
        let fib = Lrs::fibonacci();
        let padded = lrs(&[(1, 1), (1, 1), (0, 1)], &[(1, 1), (1, 1), (2, 1)]);
        let min = padded.minimize();
        assert_eq!(min.order(), 2);
        for n in 1..=2 * 3 + 50 {
            assert_eq!(min.term(n).unwrap(), fib.term(n).unwrap());
        }
    }

    #[test]
    fn minimize_constant_and_zero() {
        let c = lrs(&[(0, 1), (1, 1)], &[(1, 1), (1, 1)]);
        let min = c.minimize();
        assert_eq!(min.order(), 1);
        assert_eq!(min.coeffs(), &[rat_i64(1)]);
        let z = lrs(&[(2, 1), (3, 1)], &[(0, 1), (0, 1)]);
        let zmin = z.minimize();
        assert_eq!(zmin.order(), 1);
        assert!(zmin.is_identically_zero());
    }

    #[test]
    fn simplicity() {
        assert!(Lrs::fibonacci().is_simple());
        let alt = lrs(&[(-1, 1)], &[(-1, 1)]);
        assert!(alt.is_simple());
        // (x-1)^2: u_n = 2u_(n-1) - u_(n-2), u = n is not simple.
        let ramp = lrs(&[(2, 1), (-1, 1)], &[(1, 1), (2, 1)]);
        assert!(!ramp.is_simple());
    }

    #[test]
    fn matrix_path_agrees_with_iteration() {
        let alt = lrs(&[(-1, 1)], &[(-1, 1)]);
        // Far index on a bounded sequence.
        let n = MATRIX_PATH_THRESHOLD + 3;
        assert_eq!(alt.term(n).unwrap(), if n.is_multiple_of(2) { rat_i64(1) } else { rat_i64(-1) });
        let u = lrs(&[(1, 2)], &[(1, 1)]);
        // Geometric (1/2)^(n-1).
        assert_eq!(u.term(5).unwrap(), rat(1, 16));
    }

    #[test]
    fn from_recurrence_validations() {
        assert_eq!(Lrs::from_recurrence(vec![], vec![]).unwrap_err(), LrsError::Empty);
        assert_eq!(
            Lrs::from_recurrence(vec![rat_i64(1)], vec![rat_i64(1), rat_i64(2)]).unwrap_err(),
            LrsError::LengthMismatch { coeffs: 1, initial: 2 }
        );
    }
}
