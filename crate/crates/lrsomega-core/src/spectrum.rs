//! Characteristic-root analysis of a simple LRS: degeneracy period,
//! normalized roots, zero offsets, dominant roots per subsequence, and the
//! asymptotic sign predictor.
//!
//! The exponential-polynomial coefficients are carried exactly: for a
//! squarefree monic characteristic polynomial f (zero root stripped) there
//! is a single rational polynomial g with `u_n = sum_i g(L_i)/f'(L_i) L_i^n`,
//! and g is computed by solving a linear system whose entries are complete
//! homogeneous symmetric functions of the roots - no root numerics involved.
//! Coefficient enclosures at any precision then come from evaluating
//! `g/f'` on refined root boxes, and exact zero tests reduce to asking
//! which powers `L_i^P` remain roots of the minimized subsequences.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::dyadic::{ComplexBox, Interval};
use crate::algebra::numfield::{NumberField, NumberFieldElement};
use crate::algebra::poly::{certify_irreducible, poly_squarefree, Irreducibility, PolyQ};
use crate::algebra::rational::Rational;
use crate::algebra::roots::{
    compare_modulus, isolate_roots, norm_sqr_algebraic, power_algebraic, ratio_algebraic,
    sqrt_positive_algebraic, AlgebraicNumber, PREC_CAP, START_PREC,
};
use crate::algebra::unity::root_of_unity_order;
use crate::algebra::AlgebraError;
use crate::lrs::{Lrs, LrsError, Sign};

#[derive(Debug, Clone)]
pub enum SpectrumError {
    /// The minimal recurrence has repeated characteristic roots.
    NotSimple { repeated_factor: PolyQ },
    Lrs(LrsError),
    Algebra(AlgebraError),
}

impl fmt::Display for SpectrumError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectrumError::NotSimple { repeated_factor } => {
                write!(f, "sequence is not simple; repeated factor {repeated_factor:?}")
            }
            SpectrumError::Lrs(e) => write!(f, "{e}"),
            SpectrumError::Algebra(e) => write!(f, "{e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for SpectrumError {}

impl From<AlgebraError> for SpectrumError {
    fn from(e: AlgebraError) -> Self {
        SpectrumError::Algebra(e)
    }
}

impl From<LrsError> for SpectrumError {
    fn from(e: LrsError) -> Self {
        SpectrumError::Lrs(e)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SpectrumConfig {
    pub start_prec: u32,
    pub prec_cap: u32,
}

impl Default for SpectrumConfig {
    fn default() -> Self {
        SpectrumConfig { start_prec: START_PREC, prec_cap: PREC_CAP }
    }
}

/// Exact coefficient data in a number field, available when the stripped
/// characteristic polynomial is certified irreducible: the element
/// `g * f'^(-1)` whose images under the embeddings are the coefficients.
#[derive(Clone, Debug)]
pub struct FieldCoeff {
    pub field: NumberField,
    pub element: NumberFieldElement,
}

/// Per-offset analysis of the subsequence `u^(offset)` (word offsets,
/// step = period).
#[derive(Clone, Debug)]
pub struct SubseqAnalysis {
    pub offset: u64,
    pub identically_zero: bool,
    /// Minimized subsequence recurrence.
    pub minimal: Lrs,
    /// Fibers whose coefficient is (exactly) nonzero.
    pub present_fibers: Vec<usize>,
    /// Present fibers of maximal modulus.
    pub dominant_fibers: Vec<usize>,
    /// Root indices in the dominant fibers.
    pub dominant_roots: Vec<usize>,
}

/// Full root analysis of a simple LRS.
pub struct SpectrumAnalysis {
    pub minimized: Lrs,
    /// Characteristic polynomial of the minimal recurrence.
    pub char_poly: PolyQ,
    /// `char_poly` with a zero root stripped, monic.
    pub nonzero_char: PolyQ,
    pub had_zero_root: bool,
    /// Exponential representation is valid for indices `n >= coeff_start`.
    pub coeff_start: u64,
    /// Numerator polynomial: coefficients are `g(L_i) / f'(L_i)`.
    pub g_poly: PolyQ,
    /// Distinct nonzero characteristic roots.
    pub roots: Vec<AlgebraicNumber>,
    pub conj_pairs: Vec<(usize, usize)>,
    pub real_indices: Vec<usize>,
    /// Degeneracy period P.
    pub period: u64,
    /// Root-of-unity orders of the pairwise root ratios.
    pub ratio_orders: Vec<((usize, usize), Option<usize>)>,
    /// Partition of root indices into classes with equal P-th powers.
    pub fibers: Vec<Vec<usize>>,
    /// Index of the fiber containing each root.
    pub fiber_of_root: Vec<usize>,
    /// `L^P` per fiber.
    pub fiber_values: Vec<AlgebraicNumber>,
    /// Unit-modulus normalized part of `L^P` per fiber.
    pub fiber_lambdas: Vec<AlgebraicNumber>,
    /// Offsets whose subsequence is identically zero.
    pub zero_offsets: BTreeSet<u64>,
    pub subsequences: Vec<SubseqAnalysis>,
    /// Exact number-field coefficients, irreducible-modulus mode only.
    pub exact_coeffs: Option<FieldCoeff>,
    pub config: SpectrumConfig,
}

impl SpectrumAnalysis {
    /// Normalized root per root index (fiber representative).
    pub fn lambda_of_root(&self, root: usize) -> &AlgebraicNumber {
        &self.fiber_lambdas[self.fiber_of_root[root]]
    }

    pub fn normalized(&self) -> Vec<AlgebraicNumber> {
        (0..self.roots.len()).map(|i| self.lambda_of_root(i).clone()).collect()
    }

    pub fn order(&self) -> usize {
        self.roots.len()
    }

    /// Enclosure of the exponential-polynomial coefficient `c_i` of root
    /// `i`, at roughly `prec` bits.
    pub fn coeff_enclosure(&self, root: usize, prec: u32) -> Result<ComplexBox, AlgebraError> {
        let r = self.roots[root].refined(prec)?;
        let fprime = self.nonzero_char.derivative();
        let num = self.g_poly.eval_box(r.enclosure(), prec * 2);
        let den = fprime.eval_box(r.enclosure(), prec * 2);
        Ok(num.div(&den, prec * 2))
    }

    /// Enclosure of the torus linear-form coefficient of root `i` for word
    /// offset `offset`: `c_i * L_i^(offset+1)`.
    pub fn linear_form_coeff(
        &self,
        root: usize,
        offset: u64,
        prec: u32,
    ) -> Result<ComplexBox, AlgebraError> {
        let c = self.coeff_enclosure(root, prec)?;
        let r = self.roots[root].refined(prec)?;
        let pw = r.enclosure().powi(offset + 1, prec * 2);
        Ok(c.mul(&pw, prec * 2))
    }

    pub fn subsequence_analysis(&self, offset: u64) -> &SubseqAnalysis {
        &self.subsequences[offset as usize]
    }
}

/// Exact-by-construction zero offsets: `offset` is in Z iff the first
/// `order` terms of the subsequence vanish.
pub fn zero_offsets(u: &Lrs, period: u64) -> BTreeSet<u64> {
    let min = u.minimize();
    (0..period)
        .filter(|&off| min.subsequence(off, period).is_identically_zero())
        .collect()
}

/// Full spectrum analysis of a simple LRS.
pub fn analyze(u: &Lrs, config: SpectrumConfig) -> Result<SpectrumAnalysis, SpectrumError> {
    let minimized = u.minimize();
    if minimized.is_identically_zero() {
        return Ok(zero_sequence_analysis(minimized, config));
    }
    let char_poly = minimized.char_poly();
    if !poly_squarefree(&char_poly)? {
        let repeated = char_poly.gcd(&char_poly.derivative());
        return Err(SpectrumError::NotSimple { repeated_factor: repeated });
    }

    // Strip a simple zero root; the exponential part then represents the
    // terms from index 2 on.
    let (nonzero_char, had_zero_root) = if char_poly.coeff(0).is_zero() {
        (char_poly.div_exact(&PolyQ::x()).expect("x divides").monic(), true)
    } else {
        (char_poly.monic(), false)
    };
    let coeff_start: u64 = if had_zero_root { 2 } else { 1 };
    let dprime = nonzero_char.deg();
    if dprime == 0 {
        // Pure delta sequence: no nonzero roots at all.
        return Ok(delta_sequence_analysis(minimized, char_poly, config));
    }

    let g_poly = solve_numerator_poly(&minimized, &nonzero_char, coeff_start)?;

    let iso = isolate_roots(&nonzero_char, config.start_prec)?;
    let roots = iso.roots;
    let conj_pairs = iso.conj_pairs;
    let real_indices = iso.real_indices;
    let m = roots.len();

    // Pairwise ratio orders, with a cheap modulus prefilter.
    let mut ratio_orders = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let order = if moduli_clearly_differ(&roots[i], &roots[j]) {
                None
            } else {
                let ratio = ratio_algebraic(&roots[i], &roots[j])?;
                root_of_unity_order(&ratio)?
            };
            ratio_orders.push(((i, j), order));
        }
    }

    // P: lcm of the ratio orders, together with the orders of real roots
    // that are themselves roots of unity (only -1 matters), so that real
    // roots normalize to +1.
    let mut period: u64 = 1;
    for (_, ord) in &ratio_orders {
        if let Some(k) = ord {
            period = period.lcm(&(*k as u64));
        }
    }
    if nonzero_char.eval(&(-Rational::one())).is_zero() {
        period = period.lcm(&2);
    }

    // Fibers: transitive closure of "ratio is a root of unity".
    let mut fiber_of_root: Vec<usize> = (0..m).collect();
    for ((i, j), ord) in &ratio_orders {
        if ord.is_some() {
            let (a, b) = (fiber_of_root[*i], fiber_of_root[*j]);
            if a != b {
                let target = a.min(b);
                let from = a.max(b);
                for f in fiber_of_root.iter_mut() {
                    if *f == from {
                        *f = target;
                    }
                }
            }
        }
    }
    let mut fiber_ids: Vec<usize> = fiber_of_root.clone();
    fiber_ids.sort_unstable();
    fiber_ids.dedup();
    let fibers: Vec<Vec<usize>> = fiber_ids
        .iter()
        .map(|&id| (0..m).filter(|&r| fiber_of_root[r] == id).collect())
        .collect();
    let fiber_of_root: Vec<usize> = (0..m)
        .map(|r| fiber_ids.iter().position(|&id| id == fiber_of_root[r]).unwrap())
        .collect();

    let mut fiber_values = Vec::with_capacity(fibers.len());
    for members in &fibers {
        fiber_values.push(power_algebraic(&roots[members[0]], period as usize)?);
    }
    let mut fiber_lambdas = Vec::with_capacity(fibers.len());
    for mu in &fiber_values {
        fiber_lambdas.push(normalize_to_unit_circle(mu)?);
    }

    let zero_offsets = zero_offsets(&minimized, period);

    let mut subsequences = Vec::with_capacity(period as usize);
    for off in 0..period {
        let sub = minimized.subsequence(off, period);
        let identically_zero = sub.is_identically_zero();
        let (present, dominant) = if identically_zero {
            (Vec::new(), Vec::new())
        } else {
            let q = sub.char_poly();
            let mut present = Vec::new();
            for (fi, mu) in fiber_values.iter().enumerate() {
                if crate::algebra::roots::is_root_of(mu, &q)? {
                    present.push(fi);
                }
            }
            let dominant = dominant_subset(&present, &fiber_values)?;
            (present, dominant)
        };
        let dominant_roots: Vec<usize> = fibers
            .iter()
            .enumerate()
            .filter(|(fi, _)| dominant.contains(fi))
            .flat_map(|(_, members)| members.iter().copied())
            .collect();
        subsequences.push(SubseqAnalysis {
            offset: off,
            identically_zero,
            minimal: sub,
            present_fibers: present,
            dominant_fibers: dominant,
            dominant_roots,
        });
    }

    // Exact number-field coefficients when the modulus is certified
    // irreducible.
    let exact_coeffs = match certify_irreducible(&nonzero_char) {
        Irreducibility::Irreducible => {
            let field = NumberField::new(&nonzero_char)?;
            let fp = field.element(nonzero_char.derivative());
            let g = field.element(g_poly.clone());
            Some(FieldCoeff { element: g.mul(&fp.inv()?)?, field })
        }
        _ => None,
    };

    Ok(SpectrumAnalysis {
        minimized,
        char_poly,
        nonzero_char,
        had_zero_root,
        coeff_start,
        g_poly,
        roots,
        conj_pairs,
        real_indices,
        period,
        ratio_orders,
        fibers,
        fiber_of_root,
        fiber_values,
        fiber_lambdas,
        zero_offsets,
        subsequences,
        exact_coeffs,
        config,
    })
}

fn zero_sequence_analysis(minimized: Lrs, config: SpectrumConfig) -> SpectrumAnalysis {
    let char_poly = minimized.char_poly();
    SpectrumAnalysis {
        minimized: minimized.clone(),
        nonzero_char: char_poly.clone(),
        char_poly,
        had_zero_root: false,
        coeff_start: 1,
        g_poly: PolyQ::zero(),
        roots: Vec::new(),
        conj_pairs: Vec::new(),
        real_indices: Vec::new(),
        period: 1,
        ratio_orders: Vec::new(),
        fibers: Vec::new(),
        fiber_of_root: Vec::new(),
        fiber_values: Vec::new(),
        fiber_lambdas: Vec::new(),
        zero_offsets: BTreeSet::from([0]),
        subsequences: vec![SubseqAnalysis {
            offset: 0,
            identically_zero: true,
            minimal: minimized,
            present_fibers: Vec::new(),
            dominant_fibers: Vec::new(),
            dominant_roots: Vec::new(),
        }],
        exact_coeffs: None,
        config,
    }
}

fn delta_sequence_analysis(
    minimized: Lrs,
    char_poly: PolyQ,
    config: SpectrumConfig,
) -> SpectrumAnalysis {
    SpectrumAnalysis {
        minimized: minimized.clone(),
        nonzero_char: PolyQ::one(),
        char_poly,
        had_zero_root: true,
        coeff_start: 2,
        g_poly: PolyQ::zero(),
        roots: Vec::new(),
        conj_pairs: Vec::new(),
        real_indices: Vec::new(),
        period: 1,
        ratio_orders: Vec::new(),
        fibers: Vec::new(),
        fiber_of_root: Vec::new(),
        fiber_values: Vec::new(),
        fiber_lambdas: Vec::new(),
        zero_offsets: BTreeSet::new(),
        subsequences: vec![SubseqAnalysis {
            offset: 0,
            identically_zero: false,
            minimal: minimized,
            present_fibers: Vec::new(),
            dominant_fibers: Vec::new(),
            dominant_roots: Vec::new(),
        }],
        exact_coeffs: None,
        config,
    }
}

/// Quick interval test that |a| != |b|; `true` only when certain.
fn moduli_clearly_differ(a: &AlgebraicNumber, b: &AlgebraicNumber) -> bool {
    let na = a.enclosure().norm_sqr(START_PREC);
    let nb = b.enclosure().norm_sqr(START_PREC);
    !na.intersects(&nb)
}

/// Complete homogeneous symmetric functions `h_0..h_upto` of the roots of a
/// monic polynomial, from its coefficients.
pub fn complete_homogeneous(f: &PolyQ, upto: usize) -> Vec<Rational> {
    let f = f.monic();
    let d = f.deg();
    // e_i = (-1)^i coeff(d - i).
    let e: Vec<Rational> = (0..=d)
        .map(|i| {
            let sign = if i % 2 == 0 { Rational::one() } else { -Rational::one() };
            sign * f.coeff(d - i)
        })
        .collect();
    let mut h = vec![Rational::one()];
    for k in 1..=upto {
        // sum_{i=0..min(k,d)} (-1)^i e_i h_{k-i} = 0
        let mut acc = Rational::zero();
        for i in 1..=k.min(d) {
            let sign = if i % 2 == 1 { Rational::one() } else { -Rational::one() };
            acc += sign * &e[i] * &h[k - i];
        }
        h.push(acc);
    }
    h
}

/// Solves for g with `u_n = sum_i g(L_i)/f'(L_i) L_i^n` (n >= start), using
/// the identity `sum_i L_i^k / f'(L_i) = h_(k-d+1)`.
fn solve_numerator_poly(u: &Lrs, f: &PolyQ, start: u64) -> Result<PolyQ, SpectrumError> {
    let d = f.deg();
    let h = complete_homogeneous(f, (start as usize) + 3 * d + 2);
    let h_at = |k: i64| -> Rational {
        let shift = k - d as i64 + 1;
        if shift < 0 {
            Rational::zero()
        } else {
            h[shift as usize].clone()
        }
    };
    // Rows n = start .. start+d-1: sum_j g_j h_(n+j-d+1) = u_n.
    let mut mat = vec![vec![Rational::zero(); d + 1]; d];
    for (r, row) in mat.iter_mut().enumerate() {
        let n = start as i64 + r as i64;
        for (j, cell) in row.iter_mut().take(d).enumerate() {
            *cell = h_at(n + j as i64);
        }
        row[d] = u.term(n as u64)?;
    }
    let sol = solve_linear(&mut mat).ok_or(SpectrumError::Algebra(
        AlgebraError::InvalidInput(String::from("singular coefficient system")),
    ))?;
    let g = PolyQ::new(sol);
    // Exact sanity: the representation reproduces further terms.
    #[cfg(debug_assertions)]
    {
        for extra in 0..d as i64 {
            let n = start as i64 + d as i64 + extra;
            let mut acc = Rational::zero();
            for j in 0..d {
                acc += g.coeff(j) * h_at(n + j as i64);
            }
            debug_assert_eq!(acc, u.term(n as u64).expect("valid index"));
        }
    }
    Ok(g)
}

/// Gaussian elimination over Q on an augmented matrix; returns the solution
/// column.
#[allow(clippy::needless_range_loop)]
fn solve_linear(mat: &mut [Vec<Rational>]) -> Option<Vec<Rational>> {
    let rows = mat.len();
    let cols = rows + 1;
    for col in 0..rows {
        let pivot = (col..rows).find(|&r| !mat[r][col].is_zero())?;
        mat.swap(col, pivot);
        let inv = Rational::one() / mat[col][col].clone();
        for c in col..cols {
            mat[col][c] = &mat[col][c] * &inv;
        }
        for r in 0..rows {
            if r != col && !mat[r][col].is_zero() {
                let factor = mat[r][col].clone();
                for c in col..cols {
                    let sub = &factor * &mat[col][c];
                    mat[r][c] -= sub;
                }
            }
        }
    }
    Some(mat.iter().map(|row| row[rows].clone()).collect())
}

/// Normalizes an algebraic number to its unit-circle part `mu / |mu|`,
/// with fast paths for real values and unit-modulus values.
pub fn normalize_to_unit_circle(mu: &AlgebraicNumber) -> Result<AlgebraicNumber, AlgebraError> {
    if mu.is_real() {
        // Real nonzero: normalized part is the sign.
        let sign_positive = {
            let mut cur = mu.clone();
            let mut bits = START_PREC;
            loop {
                if let Some(s) = cur.enclosure().re.sign() {
                    if s != 0 {
                        break s > 0;
                    }
                }
                bits *= 2;
                if bits > PREC_CAP {
                    return Err(AlgebraError::PrecisionExhausted(String::from(
                        "sign of real root",
                    )));
                }
                cur = cur.refined(bits)?;
            }
        };
        return Ok(AlgebraicNumber::from_rational(&if sign_positive {
            Rational::one()
        } else {
            -Rational::one()
        }));
    }
    let norm2 = norm_sqr_algebraic(mu)?;
    if norm2.equals_rational(&Rational::one()) {
        return Ok(mu.clone());
    }
    let rho = sqrt_positive_algebraic(&norm2)?;
    ratio_algebraic(mu, &rho)
}

/// The subset of `present` fibers whose value has maximal modulus.
fn dominant_subset(
    present: &[usize],
    fiber_values: &[AlgebraicNumber],
) -> Result<Vec<usize>, AlgebraError> {
    let mut dominant: Vec<usize> = Vec::new();
    for &f in present {
        if dominant.is_empty() {
            dominant.push(f);
            continue;
        }
        match compare_modulus(&fiber_values[f], &fiber_values[dominant[0]])? {
            Ordering::Greater => {
                dominant.clear();
                dominant.push(f);
            }
            Ordering::Equal => dominant.push(f),
            Ordering::Less => {}
        }
    }
    Ok(dominant)
}

/// Predicted sign of a term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Predicted {
    Minus,
    Zero,
    Plus,
    Unknown,
}

impl Predicted {
    pub fn matches(self, s: Sign) -> bool {
        matches!(
            (self, s),
            (Predicted::Minus, Sign::Minus)
                | (Predicted::Zero, Sign::Zero)
                | (Predicted::Plus, Sign::Plus)
        )
    }
}

/// Asymptotic sign predictor: evaluates the dominant part of the
/// subsequence containing the queried index in ball arithmetic with
/// refinement, and never guesses on a straddle.
pub struct Predictor<'a> {
    analysis: &'a SpectrumAnalysis,
}

/// Builds the predictor for an analyzed sequence.
pub fn dominant_sign_predictor(analysis: &SpectrumAnalysis) -> Predictor<'_> {
    Predictor { analysis }
}

impl<'a> Predictor<'a> {
    pub fn analysis(&self) -> &'a SpectrumAnalysis {
        self.analysis
    }

    /// Predicts the sign of `u_n` (1-based index).
    pub fn predict(&self, n: u64) -> Predicted {
        assert!(n >= 1);
        let a = self.analysis;
        let p = a.period;
        let offset = (n - 1) % p;
        if a.zero_offsets.contains(&offset) {
            return Predicted::Zero;
        }
        let k = (n - 1 - offset) / p + 1;
        let sub = &a.subsequences[offset as usize];
        if sub.dominant_fibers.is_empty() {
            // Only the delta component lives here; zero beyond the start.
            return Predicted::Zero;
        }
        let mut prec = a.config.start_prec;
        loop {
            match self.dominant_value(sub, offset, k, prec) {
                Ok(value) => {
                    if let Some(s) = value.sign() {
                        return match s {
                            1 => Predicted::Plus,
                            -1 => Predicted::Minus,
                            _ => Predicted::Unknown,
                        };
                    }
                }
                Err(_) => return Predicted::Unknown,
            }
            if prec >= a.config.prec_cap {
                return Predicted::Unknown;
            }
            prec *= 2;
        }
    }

    /// Real enclosure of `sum_(dominant) c_j L_j^(offset+1) lambda_j^(k-1)`.
    fn dominant_value(
        &self,
        sub: &SubseqAnalysis,
        offset: u64,
        k: u64,
        prec: u32,
    ) -> Result<Interval, AlgebraError> {
        let a = self.analysis;
        let mut acc = ComplexBox::zero();
        for &j in &sub.dominant_roots {
            let w = a.linear_form_coeff(j, offset, prec)?;
            let lambda = a.lambda_of_root(j).refined(prec)?;
            let lp = lambda.enclosure().powi(k - 1, prec * 2);
            acc = acc.add(&w.mul(&lp, prec * 2), prec * 2);
        }
        // The sum is real; the imaginary enclosure must straddle zero.
        if !acc.im.contains_zero() {
            return Err(AlgebraError::InvalidInput(String::from(
                "imaginary part failed to cancel",
            )));
        }
        Ok(acc.re)
    }

    /// Streaming prediction from index `from`; far cheaper than repeated
    /// `predict` calls over contiguous ranges.
    pub fn stream(&self, from: u64, prec: u32) -> PredictorStream<'a> {
        PredictorStream::new(self.analysis, from, prec)
    }
}

/// Incremental evaluation state: per dominant root, the running power
/// `lambda^(k-1)` multiplied into the fixed linear-form coefficient.
pub struct PredictorStream<'a> {
    analysis: &'a SpectrumAnalysis,
    next_n: u64,
    prec: u32,
    state: Vec<OffsetState>,
}

struct OffsetState {
    /// (linear form coefficient, current lambda power, lambda box)
    terms: Vec<(ComplexBox, ComplexBox, ComplexBox)>,
    k: u64,
    /// Steps since the last exact re-powering.
    staleness: u64,
}

impl<'a> PredictorStream<'a> {
    fn new(analysis: &'a SpectrumAnalysis, from: u64, prec: u32) -> Self {
        assert!(from >= 1);
        let state = (0..analysis.period)
            .map(|_| OffsetState { terms: Vec::new(), k: 0, staleness: 0 })
            .collect();
        PredictorStream { analysis, next_n: from, prec, state }
    }

    fn reseed(&mut self, offset: u64, k: u64) -> Result<(), AlgebraError> {
        let a = self.analysis;
        let sub = &a.subsequences[offset as usize];
        let mut terms = Vec::with_capacity(sub.dominant_roots.len());
        for &j in &sub.dominant_roots {
            let w = a.linear_form_coeff(j, offset, self.prec)?;
            let lambda = a.lambda_of_root(j).refined(self.prec)?;
            let lbox = lambda.enclosure().clone();
            let pw = lbox.powi(k - 1, self.prec * 2);
            terms.push((w, pw, lbox));
        }
        self.state[offset as usize] = OffsetState { terms, k, staleness: 0 };
        Ok(())
    }

    /// Recomputes the running powers by binary powering. Incremental box
    /// rotation inflates widths by the L1 norm of the rotation per step, so
    /// powers are re-derived before the drift can accumulate.
    fn repower(&mut self, offset: u64, k: u64) {
        let prec = self.prec;
        let st = &mut self.state[offset as usize];
        for (_, pw, lbox) in st.terms.iter_mut() {
            *pw = lbox.powi(k - 1, prec * 2);
        }
        st.k = k;
        st.staleness = 0;
    }

    /// Predicted sign for the next index; `None` means unresolved at the
    /// stream precision (callers fall back to `Predictor::predict`).
    pub fn next_prediction(&mut self) -> Option<Predicted> {
        let a = self.analysis;
        let n = self.next_n;
        self.next_n += 1;
        let p = a.period;
        let offset = (n - 1) % p;
        if a.zero_offsets.contains(&offset) {
            return Some(Predicted::Zero);
        }
        let k = (n - 1 - offset) / p + 1;
        let sub = &a.subsequences[offset as usize];
        if sub.dominant_fibers.is_empty() {
            return Some(Predicted::Zero);
        }
        let needs_reseed = {
            let st = &self.state[offset as usize];
            st.terms.is_empty() || st.terms.len() != sub.dominant_roots.len() || st.k > k || k - st.k > 1
        };
        if needs_reseed {
            self.reseed(offset, k).ok()?;
        } else if self.state[offset as usize].staleness >= 64 {
            self.repower(offset, k);
        } else if self.state[offset as usize].k < k {
            let prec = self.prec;
            let st = &mut self.state[offset as usize];
            for (_, pw, lbox) in st.terms.iter_mut() {
                *pw = pw.mul(lbox, prec * 2);
            }
            st.k = k;
            st.staleness += 1;
        }
        let st = &self.state[offset as usize];
        let mut acc = ComplexBox::zero();
        for (w, pw, _) in &st.terms {
            acc = acc.add(&w.mul(pw, self.prec * 2), self.prec * 2);
        }
        if !acc.im.contains_zero() {
            return None;
        }
        match acc.re.sign() {
            Some(1) => Some(Predicted::Plus),
            Some(-1) => Some(Predicted::Minus),
            _ => None,
        }
    }
}

/// Report helper.
pub fn describe_ratio_order(order: &Option<usize>) -> String {
    match order {
        Some(k) => format!("root of unity of order {k}"),
        None => String::from("not a root of unity"),
    }
}
