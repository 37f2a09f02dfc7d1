//! Certified isolation of the complex roots of rational polynomials, and
//! exact arithmetic on the isolated roots via resultant constructions.
//!
//! A root is represented by a squarefree defining polynomial together with
//! a box certified (by an interval Newton test) to contain exactly one root
//! of that polynomial. Refinement shrinks the box and never loses the root.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use super::dyadic::{eval_poly_interval, ComplexBox, Dyadic, Interval};
use super::poly::{
    poly_squarefree, power_pool_poly, product_pool_poly, quotient_pool_poly, PolyQ,
};
use super::rational::Rational;
use super::AlgebraError;

/// Default precision ladder: start here and double up to the cap, after
/// which operations report failure instead of guessing.
pub const START_PREC: u32 = 128;
pub const PREC_CAP: u32 = 8192;

#[derive(Clone, Debug)]
pub struct AlgebraicNumber {
    poly: PolyQ,
    boxx: ComplexBox,
    /// Certified real: the imaginary interval is exactly zero.
    real: bool,
    /// Working precision used to produce the current box.
    prec: u32,
}

impl AlgebraicNumber {
    pub fn defining_poly(&self) -> &PolyQ {
        &self.poly
    }

    pub fn enclosure(&self) -> &ComplexBox {
        &self.boxx
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn from_rational(q: &Rational) -> Self {
        let poly = PolyQ::new(vec![-q.clone(), Rational::one()]);
        let boxx = match Dyadic::from_rational_pow2(q) {
            Some(d) => ComplexBox::new(Interval::point(d), Interval::zero()),
            None => ComplexBox::from_rational_re(q, START_PREC),
        };
        AlgebraicNumber { poly, boxx, real: true, prec: START_PREC }
    }

    /// Exact test against a rational value.
    pub fn equals_rational(&self, q: &Rational) -> bool {
        self.poly.eval(q).is_zero() && self.boxx.re.contains(q) && self.boxx.im.contains_zero()
    }

    /// Exact zero test.
    pub fn is_zero_number(&self) -> bool {
        self.equals_rational(&Rational::zero())
    }

    /// If the defining polynomial is linear the root is rational.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.poly.deg() == 1 {
            Some(-self.poly.coeff(0) / self.poly.coeff(1))
        } else {
            None
        }
    }

    /// Returns a copy whose box has width at most `2^-width_bits`.
    pub fn refined(&self, width_bits: u32) -> Result<Self, AlgebraError> {
        if !self.boxx.max_width().below_eps(width_bits) {
            let mut out = self.clone();
            let dpoly = self.poly.derivative();
            let mut prec = self.prec.max(START_PREC);
            loop {
                if let Some(b) = newton_shrink(&self.poly, &dpoly, &out.boxx, out.real, width_bits, prec)
                {
                    out.boxx = b;
                    out.prec = prec;
                    break;
                }
                prec *= 2;
                if prec > PREC_CAP {
                    return Err(AlgebraError::PrecisionExhausted(format!(
                        "refinement of root of degree-{} polynomial",
                        self.poly.deg()
                    )));
                }
            }
            return Ok(out);
        }
        Ok(self.clone())
    }

    pub fn conj(&self) -> Self {
        AlgebraicNumber {
            poly: self.poly.clone(),
            boxx: self.boxx.conj(),
            real: self.real,
            prec: self.prec,
        }
    }
}

#[derive(Debug)]
pub struct IsolatedRoots {
    pub roots: Vec<AlgebraicNumber>,
    /// Indices of certified-real roots.
    pub real_indices: Vec<usize>,
    /// Conjugate pairs `(i, j)` with `im(root_i) > 0 > im(root_j)`.
    pub conj_pairs: Vec<(usize, usize)>,
}

/// Isolates all complex roots of a squarefree polynomial in pairwise
/// disjoint boxes of width at most `2^-min_bits`.
pub fn isolate_roots(p: &PolyQ, min_bits: u32) -> Result<IsolatedRoots, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    if !poly_squarefree(p)? {
        return Err(AlgebraError::NotSquarefree);
    }
    let d = p.deg();
    if d == 0 {
        return Ok(IsolatedRoots { roots: Vec::new(), real_indices: Vec::new(), conj_pairs: Vec::new() });
    }

    let mut prec = START_PREC;
    loop {
        match try_isolate(p, d, min_bits, prec) {
            Some(result) => return Ok(result),
            None => {
                prec *= 2;
                if prec > PREC_CAP {
                    return Err(AlgebraError::PrecisionExhausted(format!(
                        "root isolation of degree-{d} polynomial"
                    )));
                }
            }
        }
    }
}

fn try_isolate(p: &PolyQ, d: usize, min_bits: u32, prec: u32) -> Option<IsolatedRoots> {
    let dp = p.derivative();
    let bound = cauchy_bound(p);
    let m = Dyadic::from_rational(&bound, 32, super::dyadic::Round::Up);
    let init = ComplexBox::new(
        Interval::new(m.neg(), m.clone()),
        Interval::new(m.neg(), m.clone()),
    );
    let mut work = vec![(init, 0u32)];
    let mut certified: Vec<ComplexBox> = Vec::new();
    let depth_cap = prec.min(2048);
    while let Some((b, depth)) = work.pop() {
        if depth > depth_cap {
            return None;
        }
        let val = p.eval_box(&b, prec);
        if !val.contains_zero() {
            continue;
        }
        // Inflate so roots sitting exactly on subdivision lines are interior.
        let inflated = inflate(&b);
        if let Some(cert) = newton_certify(p, &dp, &inflated, prec) {
            certified.push(cert);
            continue;
        }
        let (b1, b2) = split(&b);
        work.push((b1, depth + 1));
        work.push((b2, depth + 1));
    }

    // Deduplicate overlapping certificates of the same root: boxes of the
    // same root keep a certifiable common intersection, boxes of distinct
    // roots shrink apart.
    let mut unique: Vec<ComplexBox> = Vec::new();
    'outer: for cand in certified {
        let mut cand = cand;
        for have in &mut unique {
            let mut guard = 0;
            loop {
                if !cand.intersects(have) {
                    break;
                }
                if let Some(common) = intersect_box(&cand, have) {
                    if let Some(cert) = newton_certify(p, &dp, &inflate(&common), prec) {
                        *have = cert;
                        continue 'outer;
                    }
                }
                cand = newton_step_box(p, &dp, &cand, prec)?;
                *have = newton_step_box(p, &dp, have, prec)?;
                guard += 1;
                if guard > 128 {
                    return None;
                }
            }
        }
        unique.push(cand);
    }
    if unique.len() != d {
        return None;
    }

    // Classify real vs complex, refine to the requested width, and pair
    // conjugates.
    let mut roots = Vec::with_capacity(d);
    for b in unique {
        let (boxx, real) = classify_real(p, &dp, b, prec)?;
        let num = AlgebraicNumber { poly: p.monic(), boxx, real, prec };
        roots.push(num);
    }
    let mut refined = Vec::with_capacity(d);
    for r in roots {
        refined.push(r.refined(min_bits).ok()?);
    }
    let mut roots = refined;

    // Make boxes pairwise disjoint at the final width.
    let mut guard = 0;
    loop {
        let mut overlap = None;
        'search: for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                if roots[i].boxx.intersects(&roots[j].boxx) {
                    overlap = Some((i, j));
                    break 'search;
                }
            }
        }
        let Some((i, j)) = overlap else { break };
        let bits = roots[i].prec.max(roots[j].prec).max(min_bits) + 16;
        roots[i] = roots[i].refined(bits).ok()?;
        roots[j] = roots[j].refined(bits).ok()?;
        guard += 1;
        if guard > 64 {
            return None;
        }
    }

    roots.sort_by(|a, b| {
        a.boxx
            .re
            .lo
            .cmp_dyadic(&b.boxx.re.lo)
            .then(a.boxx.im.lo.cmp_dyadic(&b.boxx.im.lo))
    });

    let mut real_indices = Vec::new();
    let mut conj_pairs = Vec::new();
    let mut used = vec![false; roots.len()];
    for i in 0..roots.len() {
        if roots[i].real {
            real_indices.push(i);
            used[i] = true;
        }
    }
    for i in 0..roots.len() {
        if used[i] || !roots[i].boxx.im.lo.is_positive() {
            continue;
        }
        let mirror = roots[i].boxx.conj();
        let mut partner = None;
        for (j, r) in roots.iter().enumerate() {
            if i != j && !used[j] && r.boxx.intersects(&mirror) {
                if partner.is_some() {
                    return None; // ambiguous pairing; escalate precision
                }
                partner = Some(j);
            }
        }
        let j = partner?;
        used[i] = true;
        used[j] = true;
        conj_pairs.push((i, j));
    }
    if used.iter().any(|u| !u) {
        return None;
    }
    Some(IsolatedRoots { roots, real_indices, conj_pairs })
}

/// Cauchy bound: every root has modulus < 1 + max |a_i / a_d|.
fn cauchy_bound(p: &PolyQ) -> Rational {
    let lead = p.leading();
    let mut best = Rational::zero();
    for c in p.coeffs() {
        let q = (c / &lead).abs();
        if q > best {
            best = q;
        }
    }
    best + Rational::one()
}

fn inflate(b: &ComplexBox) -> ComplexBox {
    let wr = b.re.width().shift(-2);
    let wi = b.im.width().shift(-2);
    // Keep a floor on the inflation so zero-width sides still grow.
    let eps = Dyadic::new(1.into(), b.re.lo.exp.min(b.im.lo.exp).min(-8) - 4);
    let wr = wr.max_d(&eps);
    let wi = wi.max_d(&eps);
    ComplexBox::new(
        Interval::new(b.re.lo.sub_exact(&wr), b.re.hi.add_exact(&wr)),
        Interval::new(b.im.lo.sub_exact(&wi), b.im.hi.add_exact(&wi)),
    )
}

fn split(b: &ComplexBox) -> (ComplexBox, ComplexBox) {
    let wr = b.re.width();
    let wi = b.im.width();
    if wr.cmp_dyadic(&wi) != Ordering::Less {
        let m = b.re.mid();
        (
            ComplexBox::new(Interval::new(b.re.lo.clone(), m.clone()), b.im.clone()),
            ComplexBox::new(Interval::new(m, b.re.hi.clone()), b.im.clone()),
        )
    } else {
        let m = b.im.mid();
        (
            ComplexBox::new(b.re.clone(), Interval::new(b.im.lo.clone(), m.clone())),
            ComplexBox::new(b.re.clone(), Interval::new(m, b.im.hi.clone())),
        )
    }
}

/// One interval Newton contraction `N(B) = m - p(m)/p'(B)` intersected with
/// the box; `None` when the derivative enclosure contains zero.
fn newton_step_box(p: &PolyQ, dp: &PolyQ, b: &ComplexBox, prec: u32) -> Option<ComplexBox> {
    let slope = dp.eval_box(b, prec);
    if slope.norm_sqr(prec).contains_zero() {
        return None;
    }
    let (mr, mi) = b.mid();
    let mid = ComplexBox::new(Interval::point(mr), Interval::point(mi));
    let pm = p.eval_box(&mid, prec * 2);
    let n = mid.sub(&pm.div(&slope, prec), prec);
    intersect_box(&n, b)
}

fn intersect_box(a: &ComplexBox, b: &ComplexBox) -> Option<ComplexBox> {
    Some(ComplexBox::new(a.re.intersect(&b.re)?, a.im.intersect(&b.im)?))
}

/// Interval Newton existence and uniqueness test: if the contraction maps the
/// box strictly inside itself and the derivative never vanishes on it, the box
/// contains exactly one root. Returns the contracted certified box.
fn newton_certify(p: &PolyQ, dp: &PolyQ, b: &ComplexBox, prec: u32) -> Option<ComplexBox> {
    let slope = dp.eval_box(b, prec);
    if slope.norm_sqr(prec).contains_zero() {
        return None;
    }
    let (mr, mi) = b.mid();
    let mid = ComplexBox::new(Interval::point(mr), Interval::point(mi));
    let pm = p.eval_box(&mid, prec * 2);
    let n = mid.sub(&pm.div(&slope, prec), prec);
    if strictly_inside(&n, b) {
        intersect_box(&n, b)
    } else {
        None
    }
}

fn strictly_inside(inner: &ComplexBox, outer: &ComplexBox) -> bool {
    strictly_inside_iv(&inner.re, &outer.re) && strictly_inside_iv(&inner.im, &outer.im)
}

fn strictly_inside_iv(inner: &Interval, outer: &Interval) -> bool {
    outer.lo.cmp_dyadic(&inner.lo) == Ordering::Less
        && inner.hi.cmp_dyadic(&outer.hi) == Ordering::Less
}

/// Decides whether the unique root in a certified box is real, collapsing
/// the box onto the real axis when it is.
fn classify_real(
    p: &PolyQ,
    dp: &PolyQ,
    mut b: ComplexBox,
    prec: u32,
) -> Option<(ComplexBox, bool)> {
    let mut guard = 0;
    loop {
        if let Some(s) = b.im.sign() {
            if s != 0 {
                return Some((b, false));
            }
        }
        if b.im.contains_zero() {
            let a = b.re.lo.to_rational();
            let c = b.re.hi.to_rational();
            let pa = p.eval(&a);
            let pc = p.eval(&c);
            if pa.is_zero() {
                let d = Dyadic::from_rational_pow2(&a)?;
                return Some((
                    ComplexBox::new(Interval::point(d), Interval::zero()),
                    true,
                ));
            }
            if pc.is_zero() {
                let d = Dyadic::from_rational_pow2(&c)?;
                return Some((
                    ComplexBox::new(Interval::point(d), Interval::zero()),
                    true,
                ));
            }
            if (pa < Rational::zero()) != (pc < Rational::zero()) {
                // Sign change: the unique root is the real one in [a, c].
                return Some((ComplexBox::new(b.re.clone(), Interval::zero()), true));
            }
        }
        // Not decided yet: contract and retry.
        b = newton_step_box(p, dp, &b, prec + 32 * guard)?;
        guard += 1;
        if guard > 64 {
            return None;
        }
    }
}

fn newton_shrink(
    p: &PolyQ,
    dp: &PolyQ,
    start: &ComplexBox,
    real: bool,
    width_bits: u32,
    prec: u32,
) -> Option<ComplexBox> {
    let mut b = start.clone();
    let mut stale = 0;
    while !b.max_width().below_eps(width_bits) {
        if real {
            b = bisect_real(p, &b, width_bits)?;
            continue;
        }
        let before = b.max_width();
        b = newton_step_box(p, dp, &b, prec)?;
        let after = b.max_width();
        if after.shift(1).cmp_dyadic(&before) == Ordering::Greater {
            stale += 1;
            if stale > prec as usize {
                return None;
            }
        } else {
            stale = 0;
        }
    }
    Some(b)
}

/// Exact bisection for certified-real roots: rational sign evaluation at the
/// midpoint always decides.
fn bisect_real(p: &PolyQ, b: &ComplexBox, width_bits: u32) -> Option<ComplexBox> {
    let mut lo = b.re.lo.clone();
    let mut hi = b.re.hi.clone();
    let mut flo = p.eval(&lo.to_rational());
    if flo.is_zero() {
        return Some(ComplexBox::new(Interval::point(lo), Interval::zero()));
    }
    let fhi = p.eval(&hi.to_rational());
    if fhi.is_zero() {
        return Some(ComplexBox::new(Interval::point(hi), Interval::zero()));
    }
    while !hi.sub_exact(&lo).below_eps(width_bits) {
        let mid = lo.add_exact(&hi).shift(-1);
        let fmid = p.eval(&mid.to_rational());
        if fmid.is_zero() {
            return Some(ComplexBox::new(Interval::point(mid), Interval::zero()));
        }
        if (fmid < Rational::zero()) == (flo < Rational::zero()) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    Some(ComplexBox::new(Interval::new(lo, hi), Interval::zero()))
}

/// Certifies that `enclosure` (or a Newton-contracted sub-box of it) isolates
/// exactly one root of `pool`, refining with `tighten` until it does.
/// `tighten(bits)` must return a fresh enclosure of the same target value
/// with width at most `2^-bits`.
pub fn select_root<F>(pool: &PolyQ, mut tighten: F) -> Result<AlgebraicNumber, AlgebraError>
where
    F: FnMut(u32) -> Result<ComplexBox, AlgebraError>,
{
    let pool = pool.squarefree_part()?;
    let dp = pool.derivative();
    let mut bits = START_PREC;
    loop {
        let enc = tighten(bits)?;
        let prec = bits * 2;
        let inflated = inflate(&enc);
        if let Some(cert) = newton_certify(&pool, &dp, &inflated, prec) {
            let (boxx, real) = classify_real(&pool, &dp, cert, prec)
                .ok_or_else(|| AlgebraError::PrecisionExhausted("root classification".into()))?;
            return Ok(AlgebraicNumber { poly: pool, boxx, real, prec });
        }
        bits *= 2;
        if bits > PREC_CAP {
            return Err(AlgebraError::PrecisionExhausted(format!(
                "selecting root of degree-{} pool",
                pool.deg()
            )));
        }
    }
}

/// The product `a * b` as an algebraic number.
pub fn product_algebraic(
    a: &AlgebraicNumber,
    b: &AlgebraicNumber,
) -> Result<AlgebraicNumber, AlgebraError> {
    let pool = product_pool_poly(&a.poly, &b.poly);
    let a = a.clone();
    let b = b.clone();
    select_root(&pool, move |bits| {
        let ra = a.refined(bits)?;
        let rb = b.refined(bits)?;
        Ok(ra.boxx.mul(&rb.boxx, bits * 2))
    })
}

/// The quotient `a / b`; `b` must be nonzero.
pub fn ratio_algebraic(
    a: &AlgebraicNumber,
    b: &AlgebraicNumber,
) -> Result<AlgebraicNumber, AlgebraError> {
    if b.is_zero_number() {
        return Err(AlgebraError::DivisionByZero);
    }
    let mut bpoly = b.poly.clone();
    // Strip a zero root of the divisor's defining polynomial; b itself is
    // nonzero, so it stays a root and the resultant no longer degenerates.
    if bpoly.coeff(0).is_zero() {
        bpoly = bpoly.div_exact(&PolyQ::x()).expect("x divides");
    }
    let pool = quotient_pool_poly(&a.poly, &bpoly);
    let a = a.clone();
    let b = b.clone();
    select_root(&pool, move |bits| {
        let ra = a.refined(bits)?;
        let mut rb = b.refined(bits)?;
        // Push the divisor's box away from the origin.
        let mut extra = bits;
        while rb.boxx.norm_sqr(bits * 2).contains_zero() {
            extra *= 2;
            if extra > PREC_CAP {
                return Err(AlgebraError::DivisionByZero);
            }
            rb = rb.refined(extra)?;
        }
        Ok(ra.boxx.div(&rb.boxx, bits * 2))
    })
}

/// Spec-facing wrapper: squarefree polynomial with `a/b` among its roots,
/// plus the isolating box, packaged as an algebraic number.
pub fn ratio_min_poly(
    a: &AlgebraicNumber,
    b: &AlgebraicNumber,
) -> Result<AlgebraicNumber, AlgebraError> {
    ratio_algebraic(a, b)
}

/// `a^k` as an algebraic number, `k >= 1`.
pub fn power_algebraic(a: &AlgebraicNumber, k: usize) -> Result<AlgebraicNumber, AlgebraError> {
    if k == 1 {
        return Ok(a.clone());
    }
    let pool = power_pool_poly(&a.poly, k);
    let a = a.clone();
    select_root(&pool, move |bits| {
        let ra = a.refined(bits + k.ilog2() + 8)?;
        Ok(ra.boxx.powi(k as u64, bits * 2))
    })
}

/// `|a|^2` as a real algebraic number.
pub fn norm_sqr_algebraic(a: &AlgebraicNumber) -> Result<AlgebraicNumber, AlgebraError> {
    if a.real {
        return product_algebraic(a, a);
    }
    let conj = a.conj();
    product_algebraic(a, &conj)
}

/// The positive square root of a certified-positive real algebraic number.
pub fn sqrt_positive_algebraic(a: &AlgebraicNumber) -> Result<AlgebraicNumber, AlgebraError> {
    if !a.real {
        return Err(AlgebraError::InvalidInput("sqrt of non-real".into()));
    }
    let pool = a.poly.compose_x_pow(2);
    let a = a.clone();
    select_root(&pool, move |bits| {
        let mut ra = a.refined(bits)?;
        let mut extra = bits;
        while !ra.boxx.re.lo.is_positive() {
            extra *= 2;
            if extra > PREC_CAP {
                return Err(AlgebraError::InvalidInput("sqrt of non-positive".into()));
            }
            ra = ra.refined(extra)?;
        }
        Ok(ComplexBox::new(ra.boxx.re.sqrt(bits * 2), Interval::zero()))
    })
}

/// Exact equality of two algebraic numbers (possibly with different
/// defining polynomials).
pub fn eq_algebraic(a: &AlgebraicNumber, b: &AlgebraicNumber) -> Result<bool, AlgebraError> {
    if !a.boxx.intersects(&b.boxx) {
        return Ok(false);
    }
    let g = a.poly.gcd(&b.poly);
    if g.deg() == 0 {
        return Ok(false);
    }
    let dg = g.derivative();
    let mut a = a.clone();
    let mut b = b.clone();
    let mut bits = a.prec.max(b.prec).max(START_PREC);
    loop {
        if !a.boxx.intersects(&b.boxx) {
            return Ok(false);
        }
        // Try to certify that the hull contains exactly one root of g; both
        // numbers being roots of g inside it then forces equality.
        if is_root_of(&a, &g)? && is_root_of(&b, &g)? {
            let hull = ComplexBox::new(a.boxx.re.hull(&b.boxx.re), a.boxx.im.hull(&b.boxx.im));
            if newton_certify(&g, &dg, &inflate(&hull), bits * 2).is_some() {
                return Ok(true);
            }
        } else {
            return Ok(false);
        }
        bits *= 2;
        if bits > PREC_CAP {
            return Err(AlgebraError::PrecisionExhausted("equality test".into()));
        }
        a = a.refined(bits)?;
        b = b.refined(bits)?;
    }
}

/// Whether `a` is a root of `g`, where `g` divides a squarefree polynomial
/// that `a` is known to be a root of. Decided by the coprime-split argument:
/// exactly one of `g` and `poly/g` vanishes at `a`.
pub fn is_root_of(a: &AlgebraicNumber, g: &PolyQ) -> Result<bool, AlgebraError> {
    if g.is_zero() {
        return Ok(true);
    }
    let g = g.gcd(&a.poly);
    if g.deg() == 0 {
        return Ok(false);
    }
    let h = a.poly.div_exact(&g).expect("gcd divides");
    let mut cur = a.clone();
    let mut bits = a.prec.max(START_PREC);
    loop {
        let gv = g.eval_box(&cur.boxx, bits * 2);
        if !gv.contains_zero() {
            return Ok(false);
        }
        let hv = h.eval_box(&cur.boxx, bits * 2);
        if !hv.contains_zero() {
            return Ok(true);
        }
        bits *= 2;
        if bits > PREC_CAP {
            return Err(AlgebraError::PrecisionExhausted("root membership test".into()));
        }
        cur = cur.refined(bits)?;
    }
}

/// Exact three-way comparison of |a| and |b|.
pub fn compare_modulus(
    a: &AlgebraicNumber,
    b: &AlgebraicNumber,
) -> Result<Ordering, AlgebraError> {
    let na = norm_sqr_algebraic(a)?;
    let nb = norm_sqr_algebraic(b)?;
    compare_real(&na, &nb)
}

/// Exact comparison of two certified-real algebraic numbers.
pub fn compare_real(
    a: &AlgebraicNumber,
    b: &AlgebraicNumber,
) -> Result<Ordering, AlgebraError> {
    debug_assert!(a.real && b.real);
    let mut a = a.clone();
    let mut b = b.clone();
    let mut bits = START_PREC;
    loop {
        if a.boxx.re.hi.cmp_dyadic(&b.boxx.re.lo) == Ordering::Less {
            return Ok(Ordering::Less);
        }
        if b.boxx.re.hi.cmp_dyadic(&a.boxx.re.lo) == Ordering::Less {
            return Ok(Ordering::Greater);
        }
        if eq_algebraic(&a, &b)? {
            return Ok(Ordering::Equal);
        }
        bits *= 2;
        if bits > PREC_CAP {
            return Err(AlgebraError::PrecisionExhausted("modulus comparison".into()));
        }
        a = a.refined(bits)?;
        b = b.refined(bits)?;
    }
}

/// Real-interval evaluation helper for real algebraic numbers.
pub fn real_interval(a: &AlgebraicNumber) -> Interval {
    a.enclosure().re.clone()
}

/// Interval enclosure of a polynomial evaluated at a real algebraic number.
pub fn eval_at_real(p: &PolyQ, a: &AlgebraicNumber, prec: u32) -> Interval {
    eval_poly_interval(p.coeffs(), &a.enclosure().re, prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{rat, rat_i64};

    #[test]
    fn isolates_golden_ratio_roots() {
        let p = PolyQ::from_i64(&[-1, -1, 1]);
        let iso = isolate_roots(&p, 64).unwrap();
        assert_eq!(iso.roots.len(), 2);
        assert_eq!(iso.real_indices.len(), 2);
        assert!(iso.conj_pairs.is_empty());
        // Roots sorted by real part: psi ~ -0.618, phi ~ 1.618.
        let psi = &iso.roots[0];
        let phi = &iso.roots[1];
        assert!(psi.enclosure().re.hi.is_negative());
        assert!(phi.enclosure().re.lo.is_positive());
        assert!(phi.enclosure().max_width().below_eps(64));
        // Substituting the box into p shrinks with precision.
        let v64 = p.eval_box(phi.enclosure(), 128).norm_sqr(128).max_abs();
        let finer = phi.refined(256).unwrap();
        let v256 = p.eval_box(finer.enclosure(), 512).norm_sqr(512).max_abs();
        assert!(v256.cmp_dyadic(&v64) == Ordering::Less);
    }

    #[test]
    fn isolates_conjugate_pair() {
        let p = PolyQ::from_i64(&[1, 0, 1]);
        let iso = isolate_roots(&p, 64).unwrap();
        assert_eq!(iso.roots.len(), 2);
        assert_eq!(iso.conj_pairs.len(), 1);
        let (up, down) = iso.conj_pairs[0];
        assert!(iso.roots[up].enclosure().im.lo.is_positive());
        assert!(iso.roots[down].enclosure().im.hi.is_negative());
    }

    #[test]
    fn isolates_single_rational_root() {
        let p = PolyQ::from_i64(&[-2, 1]);
        let iso = isolate_roots(&p, 64).unwrap();
        assert_eq!(iso.roots.len(), 1);
        assert!(iso.roots[0].equals_rational(&rat_i64(2)));
    }

    #[test]
    fn rejects_non_squarefree() {
        let p = PolyQ::from_i64(&[1, -2, 1]);
        assert_eq!(isolate_roots(&p, 32).unwrap_err(), AlgebraError::NotSquarefree);
    }

    #[test]
    fn ratio_of_conjugates_is_minus_one() {
        let p = PolyQ::from_i64(&[1, 0, 1]);
        let iso = isolate_roots(&p, 64).unwrap();
        let (up, down) = iso.conj_pairs[0];
        let r = ratio_algebraic(&iso.roots[up], &iso.roots[down]).unwrap();
        assert!(r.equals_rational(&rat_i64(-1)));
    }

    #[test]
    fn ratio_of_root_with_itself_is_one() {
        let p = PolyQ::from_i64(&[-1, -1, 1]);
        let iso = isolate_roots(&p, 64).unwrap();
        let r = ratio_algebraic(&iso.roots[1], &iso.roots[1]).unwrap();
        assert!(r.equals_rational(&rat_i64(1)));
    }

    #[test]
    fn fibonacci_ratio_satisfies_quadratic() {
        // phi/psi is a root of x^2 + 3x + 1.
        let p = PolyQ::from_i64(&[-1, -1, 1]);
        let iso = isolate_roots(&p, 96).unwrap();
        let phi = &iso.roots[1];
        let psi = &iso.roots[0];
        let r = ratio_algebraic(phi, psi).unwrap();
        let target = PolyQ::from_i64(&[1, 3, 1]);
        assert!(is_root_of(&r, &target.gcd(r.defining_poly())).unwrap());
        // Interval check at increasing precision: target vanishes on the box.
        for bits in [64, 128, 256] {
            let rr = r.refined(bits).unwrap();
            let v = target.eval_box(rr.enclosure(), bits * 2);
            assert!(v.contains_zero());
        }
    }

    #[test]
    fn compare_modulus_examples() {
        let fib = PolyQ::from_i64(&[-1, -1, 1]);
        let iso = isolate_roots(&fib, 64).unwrap();
        assert_eq!(
            compare_modulus(&iso.roots[1], &iso.roots[0]).unwrap(),
            Ordering::Greater
        );
        let quad = PolyQ::from_i64(&[1, 0, 1]);
        let iso2 = isolate_roots(&quad, 64).unwrap();
        assert_eq!(
            compare_modulus(&iso2.roots[0], &iso2.roots[1]).unwrap(),
            Ordering::Equal
        );
        let two = AlgebraicNumber::from_rational(&rat_i64(2));
        let one = AlgebraicNumber::from_rational(&rat_i64(1));
        assert_eq!(compare_modulus(&two, &one).unwrap(), Ordering::Greater);
        // Swapping arguments flips the order.
        assert_eq!(compare_modulus(&one, &two).unwrap(), Ordering::Less);
    }

    #[test]
    fn norm_sqr_of_unit_circle_point_is_one() {
        // 5x^2 - 6x + 5 has roots (3 +- 4i)/5.
        let p = PolyQ::from_i64(&[5, -6, 5]);
        let iso = isolate_roots(&p, 64).unwrap();
        let n = norm_sqr_algebraic(&iso.roots[0]).unwrap();
        assert!(n.equals_rational(&rat_i64(1)));
    }

    #[test]
    fn power_of_unit_root() {
        let p = PolyQ::from_i64(&[1, 0, 1]);
        let iso = isolate_roots(&p, 64).unwrap();
        let (up, _) = iso.conj_pairs[0];
        let sq = power_algebraic(&iso.roots[up], 2).unwrap();
        assert!(sq.equals_rational(&rat_i64(-1)));
    }

    #[test]
    fn sqrt_of_two() {
        let two = AlgebraicNumber::from_rational(&rat_i64(2));
        let r = sqrt_positive_algebraic(&two).unwrap();
        assert!(r.is_real());
        let sq = product_algebraic(&r, &r).unwrap();
        assert!(sq.equals_rational(&rat_i64(2)));
        assert!(r.enclosure().re.contains(&rat(141, 100)) || r.enclosure().re.lo.to_rational() > rat(141, 100));
    }
}
