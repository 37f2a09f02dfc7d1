//! The rotation dynamics of the normalized roots: multiplicative relation
//! bases, orbit enclosures on the torus subgroup, and membership in the
//! open sets cut out by sign blocks.
//!
//! Relation candidates come from lattice reduction on high-precision
//! arguments and are then verified independently - exactly where the
//! structure allows (conjugate pairs, roots of unity, bounded-degree
//! resultant towers), with interval refutation for everything spurious.
//! An unverifiable candidate is dropped and flagged, never trusted.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::dyadic::{atan2_definite, pi_interval, ComplexBox, Dyadic, Interval, Round};
use crate::algebra::lll::{lll, row_echelon_z};
use crate::algebra::rational::Rational;
use crate::algebra::roots::{
    eq_algebraic, norm_sqr_algebraic, power_algebraic, product_algebraic, AlgebraicNumber,
    PREC_CAP, START_PREC,
};
use crate::algebra::unity::root_of_unity_order;
use crate::algebra::AlgebraError;
use crate::lrs::Sign;
use crate::spectrum::SpectrumAnalysis;

/// Verified basis of the multiplicative relation group of a tuple of
/// unit-modulus algebraic numbers (relations with coordinates up to the
/// search bound).
#[derive(Clone, Debug)]
pub struct RelationBasis {
    pub vectors: Vec<Vec<BigInt>>,
    /// Set when a candidate could not be verified within the caps; the
    /// basis is then possibly incomplete.
    pub warning: Option<String>,
}

/// Ball enclosure of `(lambda_1^n, ..., lambda_d^n)`.
#[derive(Clone, Debug)]
pub struct OrbitPoint {
    pub coords: Vec<ComplexBox>,
    pub step: u64,
}

/// Exact classification of a unit-modulus algebraic number used by the
/// verification tiers.
enum UnitKind {
    One,
    MinusOne,
    /// Not +-1; `conj_of` is the index of an earlier coordinate this one is
    /// conjugate to, if any.
    General { conj_of: Option<usize> },
}

fn classify_units(lambdas: &[AlgebraicNumber]) -> Result<Vec<UnitKind>, AlgebraError> {
    let mut kinds: Vec<UnitKind> = Vec::with_capacity(lambdas.len());
    for (i, l) in lambdas.iter().enumerate() {
        if !norm_sqr_algebraic(l)?.equals_rational(&Rational::one()) {
            return Err(AlgebraError::InvalidInput(String::from(
                "relation basis requires unit-modulus inputs",
            )));
        }
        if l.equals_rational(&Rational::one()) {
            kinds.push(UnitKind::One);
            continue;
        }
        if l.equals_rational(&(-Rational::one())) {
            kinds.push(UnitKind::MinusOne);
            continue;
        }
        let mut conj_of = None;
        for j in 0..i {
            if matches!(kinds[j], UnitKind::General { .. })
                && lambdas[j].defining_poly() == l.defining_poly()
                && eq_algebraic(&lambdas[j].conj(), l)?
            {
                conj_of = Some(j);
                break;
            }
        }
        kinds.push(UnitKind::General { conj_of });
    }
    Ok(kinds)
}

/// Argument of a unit-modulus number as a fraction of a full turn, in
/// [0, 1), enclosed to roughly `prec` bits.
pub fn turn_fraction(l: &AlgebraicNumber, prec: u32) -> Result<Interval, AlgebraError> {
    if l.equals_rational(&Rational::one()) {
        return Ok(Interval::zero());
    }
    if l.equals_rational(&(-Rational::one())) {
        return Ok(Interval::from_rational(&Rational::new(1.into(), 2.into()), prec));
    }
    // +-i sit on the axes where atan2 needs special handling.
    let squared = power_algebraic(l, 2)?;
    if squared.equals_rational(&(-Rational::one())) {
        let up = l.refined(START_PREC)?.enclosure().im.lo.is_positive();
        let q = if up {
            Rational::new(1.into(), 4.into())
        } else {
            Rational::new(3.into(), 4.into())
        };
        return Ok(Interval::from_rational(&q, prec));
    }
    let mut bits = prec.max(START_PREC);
    loop {
        let r = l.refined(bits)?;
        let enc = r.enclosure();
        if enc.re.sign().is_some() && enc.im.sign().is_some() {
            let p = bits + 32;
            let arg = atan2_definite(&enc.im, &enc.re, p);
            let two_pi = {
                let pi = pi_interval(p);
                Interval::new(pi.lo.shift(1), pi.hi.shift(1))
            };
            let mut t = arg.div(&two_pi, p);
            if t.hi.is_negative() {
                t = t.add(&Interval::one(), p);
            }
            if t.width().below_eps(prec) {
                return Ok(t);
            }
        }
        bits *= 2;
        if bits > PREC_CAP {
            return Err(AlgebraError::PrecisionExhausted(String::from("turn fraction")));
        }
    }
}

/// Finds and verifies the multiplicative relations `prod lambda_i^(v_i) = 1`
/// with `|v_i| <= exponent_bound`.
pub fn relation_basis(
    lambdas: &[AlgebraicNumber],
    exponent_bound: u64,
) -> Result<RelationBasis, AlgebraError> {
    let d = lambdas.len();
    if d == 0 {
        return Ok(RelationBasis { vectors: Vec::new(), warning: None });
    }
    let kinds = classify_units(lambdas)?;

    // Detection precision: 4 * bound * d bits, doubled on failure.
    let mut prec: u32 = (4 * exponent_bound as u32 * d as u32).clamp(192, 4096);
    let mut warning = None;
    for attempt in 0..3 {
        let mut thetas = Vec::with_capacity(d);
        for l in lambdas {
            thetas.push(turn_fraction(l, prec)?);
        }
        let scale = BigInt::from(1) << prec;
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(d + 1);
        for (i, theta) in thetas.iter().enumerate() {
            let mut row = vec![BigInt::zero(); d + 2];
            row[i] = BigInt::one();
            let mid = theta.mid();
            let scaled = mid.mul_exact(&Dyadic::new(scale.clone(), 0));
            row[d + 1] = dyadic_round(&scaled);
            rows.push(row);
        }
        let mut last = vec![BigInt::zero(); d + 2];
        last[d] = BigInt::one();
        last[d + 1] = scale.clone();
        rows.push(last);

        let reduced = lll(rows);
        // Accept rows whose residual is far below the scale and whose
        // exponents respect the bound.
        let accept_residual = BigInt::from(1) << (prec / 2);
        let bound = BigInt::from(exponent_bound);
        let mut candidates: Vec<Vec<BigInt>> = Vec::new();
        for row in &reduced {
            let v = &row[..d];
            if v.iter().all(Zero::is_zero) {
                continue;
            }
            if row[d + 1].magnitude() >= accept_residual.magnitude() {
                continue;
            }
            if v.iter().any(|c| c.magnitude() > bound.magnitude()) {
                continue;
            }
            candidates.push(v.to_vec());
        }

        let mut verified = Vec::new();
        let mut had_unverifiable = false;
        for v in candidates {
            match verify_relation(lambdas, &kinds, &v)? {
                Verdict::Holds => verified.push(v),
                Verdict::Fails => {}
                Verdict::Unverifiable(reason) => {
                    had_unverifiable = true;
                    warning = Some(reason);
                }
            }
        }
        if had_unverifiable && attempt < 2 {
            prec *= 2;
            continue;
        }
        let vectors = row_echelon_z(verified);
        return Ok(RelationBasis { vectors, warning });
    }
    Ok(RelationBasis { vectors: Vec::new(), warning })
}

fn dyadic_round(x: &Dyadic) -> BigInt {
    let r = x.to_rational();
    (r + Rational::new(BigInt::one(), BigInt::from(2))).floor().to_integer()
}

enum Verdict {
    Holds,
    Fails,
    Unverifiable(String),
}

/// Decides `prod lambda_i^(v_i) = 1` exactly where possible.
fn verify_relation(
    lambdas: &[AlgebraicNumber],
    kinds: &[UnitKind],
    v: &[BigInt],
) -> Result<Verdict, AlgebraError> {
    // Interval refutation first: cheap and kills spurious candidates.
    for bits in [128u32, 256, 512] {
        let val = eval_monomial(lambdas, v, bits)?;
        if !val.contains_one() {
            return Ok(Verdict::Fails);
        }
        if val.max_width().below_eps(bits / 4) {
            break;
        }
    }

    // Exact confirmation: fold signs, cancel conjugate pairs (on the unit
    // circle the conjugate is the inverse), then handle what remains.
    let mut sign_negative = false;
    let mut reps: Vec<(usize, BigInt)> = Vec::new();
    for (i, exp) in v.iter().enumerate() {
        if exp.is_zero() {
            continue;
        }
        match kinds[i] {
            UnitKind::One => {}
            UnitKind::MinusOne => {
                if exp.magnitude().bit(0) {
                    sign_negative = !sign_negative;
                }
            }
            UnitKind::General { conj_of } => {
                let (target, signed_exp) = match conj_of {
                    Some(j) => (j, -exp.clone()),
                    None => (i, exp.clone()),
                };
                if let Some(entry) = reps.iter_mut().find(|(t, _)| *t == target) {
                    entry.1 += signed_exp;
                } else {
                    reps.push((target, signed_exp));
                }
            }
        }
    }
    reps.retain(|(_, e)| !e.is_zero());

    if reps.is_empty() {
        return Ok(if sign_negative { Verdict::Fails } else { Verdict::Holds });
    }
    if reps.len() == 1 {
        let (idx, exp) = &reps[0];
        let e = match exp.magnitude().to_u64() {
            Some(e) => e,
            None => return Ok(Verdict::Unverifiable(String::from("exponent overflow"))),
        };
        // lambda^e = +-1 iff the root-of-unity order divides e (resp. 2e
        // but not e).
        let ord = root_of_unity_order(&lambdas[*idx])?;
        return Ok(match ord {
            None => Verdict::Fails,
            Some(k) => {
                let k = k as u64;
                let val_is_one = e % k == 0;
                let val_is_minus_one = !val_is_one && (2 * e) % k == 0;
                if (val_is_one && !sign_negative) || (val_is_minus_one && sign_negative) {
                    Verdict::Holds
                } else {
                    Verdict::Fails
                }
            }
        });
    }

    // Multi-representative dependence: exact resultant tower with a degree
    // cap.
    let degree_budget: usize = 64;
    let mut acc: Option<AlgebraicNumber> = None;
    for (idx, exp) in &reps {
        let e = match exp.magnitude().to_u64() {
            Some(e) if e <= 512 => e as usize,
            _ => return Ok(Verdict::Unverifiable(String::from("exponent too large"))),
        };
        let base = if exp.is_negative() { lambdas[*idx].conj() } else { lambdas[*idx].clone() };
        let powered = power_algebraic(&base, e)?;
        acc = Some(match acc {
            None => powered,
            Some(prev) => {
                let next_deg = prev.defining_poly().deg() * powered.defining_poly().deg();
                if next_deg > degree_budget {
                    return Ok(Verdict::Unverifiable(format!(
                        "verification tower degree {next_deg} exceeds cap"
                    )));
                }
                product_algebraic(&prev, &powered)?
            }
        });
    }
    let total = acc.expect("nonempty reps");
    let target = if sign_negative { -Rational::one() } else { Rational::one() };
    Ok(if total.equals_rational(&target) { Verdict::Holds } else { Verdict::Fails })
}

/// Enclosure of the monomial `prod lambda_i^(v_i)`; negative exponents use
/// the conjugate (the inputs are unit-modulus).
fn eval_monomial(
    lambdas: &[AlgebraicNumber],
    v: &[BigInt],
    prec: u32,
) -> Result<ComplexBox, AlgebraError> {
    let mut acc = ComplexBox::one();
    for (l, exp) in lambdas.iter().zip(v) {
        if exp.is_zero() {
            continue;
        }
        let e = exp
            .magnitude()
            .to_u64()
            .ok_or_else(|| AlgebraError::InvalidInput(String::from("exponent overflow")))?;
        let r = l.refined(prec)?;
        let base = if exp.is_negative() { r.enclosure().conj() } else { r.enclosure().clone() };
        acc = acc.mul(&base.powi(e, prec * 2), prec * 2);
    }
    Ok(acc)
}

/// Ball enclosure of `s^n(1, ..., 1)` with re-refinement from the algebraic
/// roots until every coordinate is narrower than `2^-tolerance_bits`.
pub fn orbit_point(
    lambdas: &[AlgebraicNumber],
    n: u64,
    tolerance_bits: u32,
) -> Result<OrbitPoint, AlgebraError> {
    let mut prec = tolerance_bits.max(START_PREC);
    loop {
        let mut coords = Vec::with_capacity(lambdas.len());
        let mut ok = true;
        for l in lambdas {
            let r = l.refined(prec)?;
            let p = r.enclosure().powi(n, prec * 2);
            if !p.max_width().below_eps(tolerance_bits) {
                ok = false;
                break;
            }
            coords.push(p);
        }
        if ok {
            return Ok(OrbitPoint { coords, step: n });
        }
        prec *= 2;
        if prec > PREC_CAP {
            return Err(AlgebraError::PrecisionExhausted(String::from("orbit point")));
        }
    }
}

/// Sequential orbit iterator with periodic exact re-powering (incremental
/// box rotation inflates widths geometrically otherwise).
pub struct OrbitWalker {
    lambdas: Vec<ComplexBox>,
    algebraic: Vec<AlgebraicNumber>,
    coords: Vec<ComplexBox>,
    step: u64,
    prec: u32,
    staleness: u32,
}

impl OrbitWalker {
    pub fn new(lambdas: &[AlgebraicNumber], prec: u32) -> Result<OrbitWalker, AlgebraError> {
        let mut boxes = Vec::with_capacity(lambdas.len());
        for l in lambdas {
            boxes.push(l.refined(prec)?.enclosure().clone());
        }
        Ok(OrbitWalker {
            coords: vec![ComplexBox::one(); lambdas.len()],
            lambdas: boxes,
            algebraic: lambdas.to_vec(),
            step: 0,
            prec,
            staleness: 0,
        })
    }

    pub fn current(&self) -> OrbitPoint {
        OrbitPoint { coords: self.coords.clone(), step: self.step }
    }

    pub fn advance(&mut self) {
        self.step += 1;
        self.staleness += 1;
        if self.staleness >= 64 {
            for (c, l) in self.coords.iter_mut().zip(&self.lambdas) {
                *c = l.powi(self.step, self.prec * 2);
            }
            self.staleness = 0;
        } else {
            for (c, l) in self.coords.iter_mut().zip(&self.lambdas) {
                *c = c.mul(l, self.prec * 2);
            }
        }
    }

    pub fn lambda_boxes(&self) -> &[ComplexBox] {
        &self.lambdas
    }

    pub fn algebraic(&self) -> &[AlgebraicNumber] {
        &self.algebraic
    }
}

/// Verdict of a torus-membership query.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    In,
    Out,
    Unknown,
}

/// Tests whether the orbit point lies in `U(w')` for the block word `w'`
/// (blocks of length P over the sign alphabet): all strict signs must be
/// certified and every zero must sit on a Z offset.
pub fn membership_u(
    analysis: &SpectrumAnalysis,
    blocks: &[Vec<Sign>],
    point: &OrbitPoint,
    prec: u32,
) -> Membership {
    let p = analysis.period;
    let d = analysis.roots.len();
    debug_assert!(blocks.iter().all(|b| b.len() == p as usize));
    let mut coords = point.coords.clone();
    debug_assert_eq!(coords.len(), d);
    let lambda_boxes: Vec<ComplexBox> = (0..d)
        .map(|j| match analysis.lambda_of_root(j).refined(prec) {
            Ok(r) => r.enclosure().clone(),
            Err(_) => analysis.lambda_of_root(j).enclosure().clone(),
        })
        .collect();

    let mut any_unknown = false;
    for (t, block) in blocks.iter().enumerate() {
        if t > 0 {
            for (c, l) in coords.iter_mut().zip(&lambda_boxes) {
                *c = c.mul(l, prec * 2);
            }
        }
        for (off, letter) in block.iter().enumerate() {
            let in_z = analysis.zero_offsets.contains(&(off as u64));
            if in_z {
                if *letter != Sign::Zero {
                    return Membership::Out;
                }
                continue;
            }
            // Evaluate the dominant linear form at the shifted point.
            let sub = analysis.subsequence_analysis(off as u64);
            let mut acc = ComplexBox::zero();
            for &j in &sub.dominant_roots {
                let w = match analysis.linear_form_coeff(j, off as u64, prec) {
                    Ok(w) => w,
                    Err(_) => return Membership::Unknown,
                };
                acc = acc.add(&w.mul(&coords[j], prec * 2), prec * 2);
            }
            let sign = if acc.im.contains_zero() { acc.re.sign() } else { None };
            match (letter, sign) {
                (Sign::Plus, Some(1)) | (Sign::Minus, Some(-1)) => {}
                (Sign::Plus, Some(_)) | (Sign::Minus, Some(_)) => return Membership::Out,
                (Sign::Zero, Some(s)) if s != 0 => return Membership::Out,
                // A zero demanded off Z can be refuted but never confirmed.
                (Sign::Zero, _) => any_unknown = true,
                (_, None) => any_unknown = true,
            }
        }
    }
    if any_unknown {
        Membership::Unknown
    } else {
        Membership::In
    }
}

/// Scans the orbit for certified entries into `U(w')` and reports the
/// maximal observed gap between consecutive entries.
pub fn empirical_bound(
    analysis: &SpectrumAnalysis,
    blocks: &[Vec<Sign>],
    horizon: u64,
    prec: u32,
) -> Result<Option<u64>, AlgebraError> {
    let lambdas = analysis.normalized();
    let mut walker = OrbitWalker::new(&lambdas, prec)?;
    let mut last_in: Option<u64> = None;
    let mut max_gap: Option<u64> = None;
    let mut entries = 0u64;
    for n in 0..=horizon {
        if n > 0 {
            walker.advance();
        }
        let point = walker.current();
        if membership_u(analysis, blocks, &point, prec) == Membership::In {
            entries += 1;
            if let Some(prev) = last_in {
                let gap = n - prev;
                max_gap = Some(max_gap.map_or(gap, |m: u64| m.max(gap)));
            }
            last_in = Some(n);
        }
    }
    Ok(if entries >= 2 { max_gap } else { None })
}

/// Fractional parts `n * theta mod 1` of the orbit angles of a single
/// unit-modulus number, for density experiments. Entries are `None` where
/// the enclosure straddles an integer boundary.
pub fn orbit_turn_fractions(
    lambda: &AlgebraicNumber,
    horizon: u64,
    prec: u32,
) -> Result<Vec<Option<Interval>>, AlgebraError> {
    let theta = turn_fraction(lambda, prec)?;
    let mut out = Vec::with_capacity(horizon as usize + 1);
    for n in 0..=horizon {
        let nn = Dyadic::from_i64(n as i64);
        let scaled = Interval::new(
            theta.lo.mul_dir(&nn, prec * 2, Round::Down),
            theta.hi.mul_dir(&nn, prec * 2, Round::Up),
        );
        out.push(fractional_part(&scaled));
    }
    Ok(out)
}

fn fractional_part(iv: &Interval) -> Option<Interval> {
    let lo = iv.lo.to_rational().floor();
    let hi = iv.hi.to_rational().floor();
    if lo != hi {
        return None;
    }
    let shift = Rational::from_integer(lo.to_integer());
    let lo_frac = iv.lo.to_rational() - &shift;
    let hi_frac = iv.hi.to_rational() - shift;
    Some(Interval::from_rationals(&lo_frac, &hi_frac, 128))
}
