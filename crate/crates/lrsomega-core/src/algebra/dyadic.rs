//! Dyadic interval arithmetic with directed rounding.
//!
//! A [`Dyadic`] is `mant * 2^exp` with an arbitrary-precision mantissa; an
//! [`Interval`] is a pair of dyadics with outward rounding at a caller-chosen
//! working precision, and a [`ComplexBox`] is an axis-aligned rectangle in
//! the complex plane. These enclosures are what "certified" means throughout
//! the crate: a sign or comparison is only reported when the enclosure
//! excludes the alternative.


use core::cmp::Ordering;

use num_bigint::{BigInt, Sign as BigSign};
use num_traits::{Signed, ToPrimitive, Zero};

use super::rational::Rational;

#[derive(Clone, Debug)]
pub struct Dyadic {
    pub mant: BigInt,
    pub exp: i64,
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        Dyadic { mant, exp }
    }

    pub fn zero() -> Self {
        Dyadic::new(BigInt::zero(), 0)
    }

    pub fn one() -> Self {
        Dyadic::new(BigInt::from(1), 0)
    }

    pub fn from_i64(n: i64) -> Self {
        Dyadic::new(BigInt::from(n), 0)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn neg(&self) -> Self {
        Dyadic::new(-self.mant.clone(), self.exp)
    }

    pub fn bits(&self) -> u64 {
        self.mant.bits()
    }

    /// `2^k`-scaling.
    pub fn shift(&self, k: i64) -> Self {
        Dyadic::new(self.mant.clone(), self.exp + k)
    }

    /// Rounds the mantissa to at most `prec` bits in the given direction.
    pub fn round(&self, prec: u32, dir: Round) -> Self {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = bits - prec as u64;
        let m = match dir {
            // BigInt shr rounds toward negative infinity, matching primitives.
            Round::Down => &self.mant >> shift,
            Round::Up => -((-&self.mant) >> shift),
        };
        Dyadic::new(m, self.exp + shift as i64)
    }

    pub fn add_exact(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let exp = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - exp) as u64;
        let b = &other.mant << (other.exp - exp) as u64;
        Dyadic::new(a + b, exp)
    }

    pub fn sub_exact(&self, other: &Self) -> Self {
        self.add_exact(&other.neg())
    }

    pub fn mul_exact(&self, other: &Self) -> Self {
        Dyadic::new(&self.mant * &other.mant, self.exp + other.exp)
    }

    pub fn add_dir(&self, other: &Self, prec: u32, dir: Round) -> Self {
        self.add_exact(other).round(prec, dir)
    }

    pub fn mul_dir(&self, other: &Self, prec: u32, dir: Round) -> Self {
        self.mul_exact(other).round(prec, dir)
    }

    /// Directed quotient to `prec` significant bits.
    pub fn div_dir(&self, other: &Self, prec: u32, dir: Round) -> Self {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        // Scale the numerator so the integer quotient carries prec + 2 bits.
        let extra = (prec as i64 + 2) - (self.mant.bits() as i64 - other.mant.bits() as i64);
        let extra = extra.max(0) as u64;
        let num = &self.mant << extra;
        let (q, r) = num_integer::Integer::div_mod_floor(&num, &other.mant);
        let exact = r.is_zero();
        let mut q = q;
        if !exact && dir == Round::Up {
            q += 1;
        }
        Dyadic::new(q, self.exp - other.exp - extra as i64).round(prec, dir)
    }

    /// Directed square root; requires a nonnegative value.
    pub fn sqrt_dir(&self, prec: u32, dir: Round) -> Self {
        assert!(!self.is_negative(), "sqrt of negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        // Normalise to even exponent with >= 2*prec+2 mantissa bits.
        let mut mant = self.mant.clone();
        let mut exp = self.exp;
        let want = 2 * prec as u64 + 2;
        if mant.bits() < want {
            let mut s = want - mant.bits();
            if (exp - s as i64) % 2 != 0 {
                s += 1;
            }
            mant <<= s;
            exp -= s as i64;
        } else if exp % 2 != 0 {
            mant <<= 1u32;
            exp -= 1;
        }
        let root = mant.sqrt();
        let exact = (&root * &root) == mant;
        let mut root = root;
        if !exact && dir == Round::Up {
            root += 1;
        }
        Dyadic::new(root, exp / 2).round(prec, dir)
    }

    pub fn cmp_dyadic(&self, other: &Self) -> Ordering {
        match self.sub_exact(other).mant.sign() {
            BigSign::Minus => Ordering::Less,
            BigSign::NoSign => Ordering::Equal,
            BigSign::Plus => Ordering::Greater,
        }
    }

    pub fn min_d(&self, other: &Self) -> Self {
        if self.cmp_dyadic(other) == Ordering::Greater {
            other.clone()
        } else {
            self.clone()
        }
    }

    pub fn max_d(&self, other: &Self) -> Self {
        if self.cmp_dyadic(other) == Ordering::Less {
            other.clone()
        } else {
            self.clone()
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic::new(self.mant.abs(), self.exp)
    }

    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from_integer(&self.mant << self.exp as u64)
        } else {
            Rational::new(self.mant.clone(), BigInt::from(1) << (-self.exp) as u64)
        }
    }

    pub fn from_rational(q: &Rational, prec: u32, dir: Round) -> Self {
        let num = Dyadic::new(q.numer().clone(), 0);
        let den = Dyadic::new(q.denom().clone(), 0);
        num.div_dir(&den, prec, dir)
    }

    /// Exact conversion when the denominator is a power of two.
    pub fn from_rational_pow2(q: &Rational) -> Option<Self> {
        let den = q.denom();
        let bits = den.bits();
        if den == &(BigInt::from(1) << (bits - 1)) {
            Some(Dyadic::new(q.numer().clone(), -((bits - 1) as i64)))
        } else {
            None
        }
    }

    /// True iff `|self| < 2^(-bits)`.
    pub fn below_eps(&self, bits: u32) -> bool {
        if self.is_zero() {
            return true;
        }
        (self.mant.bits() as i64 + self.exp) < -(bits as i64)
    }

    pub fn to_f64(&self) -> f64 {
        let m = self.mant.to_f64().unwrap_or(f64::NAN);
        m * libm_exp2(self.exp)
    }
}

fn libm_exp2(e: i64) -> f64 {
    // Exact for the exponent range we ever see; avoids pulling in libm.
    if e >= 0 {
        let mut acc = 1.0f64;
        for _ in 0..e.min(2048) {
            acc *= 2.0;
        }
        acc
    } else {
        let mut acc = 1.0f64;
        for _ in 0..(-e).min(2048) {
            acc *= 0.5;
        }
        acc
    }
}

/// Closed real interval with dyadic endpoints.
#[derive(Clone, Debug)]
pub struct Interval {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        debug_assert!(lo.cmp_dyadic(&hi) != Ordering::Greater, "inverted interval");
        Interval { lo, hi }
    }

    pub fn point(d: Dyadic) -> Self {
        Interval { lo: d.clone(), hi: d }
    }

    pub fn zero() -> Self {
        Interval::point(Dyadic::zero())
    }

    pub fn one() -> Self {
        Interval::point(Dyadic::one())
    }

    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        Interval::new(
            Dyadic::from_rational(q, prec, Round::Down),
            Dyadic::from_rational(q, prec, Round::Up),
        )
    }

    pub fn from_rationals(lo: &Rational, hi: &Rational, prec: u32) -> Self {
        Interval::new(
            Dyadic::from_rational(lo, prec, Round::Down),
            Dyadic::from_rational(hi, prec, Round::Up),
        )
    }

    pub fn neg(&self) -> Self {
        Interval::new(self.hi.neg(), self.lo.neg())
    }

    pub fn add(&self, other: &Self, prec: u32) -> Self {
        Interval::new(
            self.lo.add_dir(&other.lo, prec, Round::Down),
            self.hi.add_dir(&other.hi, prec, Round::Up),
        )
    }

    pub fn sub(&self, other: &Self, prec: u32) -> Self {
        self.add(&other.neg(), prec)
    }

    pub fn mul(&self, other: &Self, prec: u32) -> Self {
        let cands = [
            self.lo.mul_exact(&other.lo),
            self.lo.mul_exact(&other.hi),
            self.hi.mul_exact(&other.lo),
            self.hi.mul_exact(&other.hi),
        ];
        let mut lo = cands[0].clone();
        let mut hi = cands[0].clone();
        for c in &cands[1..] {
            lo = lo.min_d(c);
            hi = hi.max_d(c);
        }
        Interval::new(lo.round(prec, Round::Down), hi.round(prec, Round::Up))
    }

    pub fn scale(&self, c: &Dyadic, prec: u32) -> Self {
        self.mul(&Interval::point(c.clone()), prec)
    }

    /// Reciprocal; requires the interval to exclude zero.
    pub fn recip(&self, prec: u32) -> Self {
        assert!(!self.contains_zero(), "reciprocal of interval containing zero");
        let one = Dyadic::one();
        let a = one.div_dir(&self.hi, prec, Round::Down);
        let b = one.div_dir(&self.lo, prec, Round::Up);
        Interval::new(a.min_d(&b), a.max_d(&b))
    }

    pub fn div(&self, other: &Self, prec: u32) -> Self {
        self.mul(&other.recip(prec), prec)
    }

    /// Square root; the interval must be nonnegative.
    pub fn sqrt(&self, prec: u32) -> Self {
        Interval::new(
            self.lo.sqrt_dir(prec, Round::Down),
            self.hi.sqrt_dir(prec, Round::Up),
        )
    }

    pub fn square(&self, prec: u32) -> Self {
        let s = self.mul(self, prec);
        // Squares are nonnegative even when the interval straddles zero.
        if s.lo.is_negative() {
            Interval::new(Dyadic::zero(), s.hi)
        } else {
            s
        }
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Certified sign: -1, 0 is never certified, +1; `None` when the
    /// interval straddles zero.
    pub fn sign(&self) -> Option<i8> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub_exact(&self.lo)
    }

    pub fn mid(&self) -> Dyadic {
        self.lo.add_exact(&self.hi).shift(-1)
    }

    pub fn contains(&self, q: &Rational) -> bool {
        self.lo.to_rational() <= *q && *q <= self.hi.to_rational()
    }

    pub fn contains_dyadic(&self, d: &Dyadic) -> bool {
        self.lo.cmp_dyadic(d) != Ordering::Greater && d.cmp_dyadic(&self.hi) != Ordering::Greater
    }

    pub fn contains_interval(&self, other: &Self) -> bool {
        self.lo.cmp_dyadic(&other.lo) != Ordering::Greater
            && other.hi.cmp_dyadic(&self.hi) != Ordering::Greater
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.lo.cmp_dyadic(&other.hi) != Ordering::Greater
            && other.lo.cmp_dyadic(&self.hi) != Ordering::Greater
    }

    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let lo = self.lo.max_d(&other.lo);
        let hi = self.hi.min_d(&other.hi);
        (lo.cmp_dyadic(&hi) != Ordering::Greater).then(|| Interval::new(lo, hi))
    }

    pub fn hull(&self, other: &Self) -> Self {
        Interval::new(self.lo.min_d(&other.lo), self.hi.max_d(&other.hi))
    }

    pub fn max_abs(&self) -> Dyadic {
        self.lo.abs().max_d(&self.hi.abs())
    }

    pub fn min_abs(&self) -> Dyadic {
        if self.contains_zero() {
            Dyadic::zero()
        } else {
            self.lo.abs().min_d(&self.hi.abs())
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.mid().to_f64()
    }
}

/// Axis-aligned rectangle in the complex plane.
#[derive(Clone, Debug)]
pub struct ComplexBox {
    pub re: Interval,
    pub im: Interval,
}

impl ComplexBox {
    pub fn new(re: Interval, im: Interval) -> Self {
        ComplexBox { re, im }
    }

    pub fn zero() -> Self {
        ComplexBox::new(Interval::zero(), Interval::zero())
    }

    pub fn one() -> Self {
        ComplexBox::new(Interval::one(), Interval::zero())
    }

    pub fn from_rational_re(q: &Rational, prec: u32) -> Self {
        ComplexBox::new(Interval::from_rational(q, prec), Interval::zero())
    }

    pub fn from_rationals(re: &Rational, im: &Rational, prec: u32) -> Self {
        ComplexBox::new(Interval::from_rational(re, prec), Interval::from_rational(im, prec))
    }

    pub fn conj(&self) -> Self {
        ComplexBox::new(self.re.clone(), self.im.neg())
    }

    pub fn neg(&self) -> Self {
        ComplexBox::new(self.re.neg(), self.im.neg())
    }

    pub fn add(&self, other: &Self, prec: u32) -> Self {
        ComplexBox::new(self.re.add(&other.re, prec), self.im.add(&other.im, prec))
    }

    pub fn sub(&self, other: &Self, prec: u32) -> Self {
        ComplexBox::new(self.re.sub(&other.re, prec), self.im.sub(&other.im, prec))
    }

    pub fn mul(&self, other: &Self, prec: u32) -> Self {
        let re = self
            .re
            .mul(&other.re, prec)
            .sub(&self.im.mul(&other.im, prec), prec);
        let im = self
            .re
            .mul(&other.im, prec)
            .add(&self.im.mul(&other.re, prec), prec);
        ComplexBox::new(re, im)
    }

    pub fn norm_sqr(&self, prec: u32) -> Interval {
        self.re.square(prec).add(&self.im.square(prec), prec)
    }

    /// Division by a box whose norm excludes zero.
    pub fn div(&self, other: &Self, prec: u32) -> Self {
        let n = other.norm_sqr(prec);
        let num = self.mul(&other.conj(), prec);
        ComplexBox::new(num.re.div(&n, prec), num.im.div(&n, prec))
    }

    pub fn recip(&self, prec: u32) -> Self {
        ComplexBox::one().div(self, prec)
    }

    pub fn powi(&self, mut e: u64, prec: u32) -> Self {
        let mut base = self.clone();
        let mut acc = ComplexBox::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, prec);
            }
            base = base.mul(&base, prec);
            e >>= 1;
        }
        acc
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn contains_one(&self) -> bool {
        self.re.contains(&Rational::from_integer(BigInt::from(1))) && self.im.contains_zero()
    }

    pub fn max_width(&self) -> Dyadic {
        self.re.width().max_d(&self.im.width())
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.re.intersects(&other.re) && self.im.intersects(&other.im)
    }

    pub fn contains_box(&self, other: &Self) -> bool {
        self.re.contains_interval(&other.re) && self.im.contains_interval(&other.im)
    }

    pub fn mid(&self) -> (Dyadic, Dyadic) {
        (self.re.mid(), self.im.mid())
    }
}

/// Enclosure of pi.
pub fn pi_interval(prec: u32) -> Interval {
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239).
    let p = prec + 16;
    let a = atan_small(&Interval::from_rational(&Rational::new(1.into(), 5.into()), p), p);
    let b = atan_small(&Interval::from_rational(&Rational::new(1.into(), 239.into()), p), p);
    a.scale(&Dyadic::from_i64(16), p)
        .sub(&b.scale(&Dyadic::from_i64(4), p), p)
}

/// atan of an interval contained in (-0.5, 0.5), by the alternating series
/// with an explicit tail bound.
fn atan_small(t: &Interval, prec: u32) -> Interval {
    let t2 = t.square(prec);
    let mut term = t.clone();
    let mut acc = Interval::zero();
    let mut k: i64 = 0;
    loop {
        let denom = Interval::from_rational(&Rational::from_integer(BigInt::from(2 * k + 1)), prec);
        let signed = term.div(&denom, prec);
        acc = if k % 2 == 0 { acc.add(&signed, prec) } else { acc.sub(&signed, prec) };
        term = term.mul(&t2, prec);
        k += 1;
        if term.max_abs().below_eps(prec + 2) {
            // Alternating series: remainder bounded by the next term.
            let tail = term.max_abs();
            let pad = Interval::new(tail.neg(), tail);
            return acc.add(&pad, prec);
        }
        assert!(k < 4 * prec as i64 + 64, "atan series failed to converge");
    }
}

/// atan for any interval, via repeated argument halving
/// `atan(t) = 2 atan(t / (1 + sqrt(1 + t^2)))`.
pub fn atan_interval(t: &Interval, prec: u32) -> Interval {
    let p = prec + 24;
    let mut t = t.clone();
    let mut doublings = 0u32;
    let half = Interval::from_rational(&Rational::new(1.into(), 4.into()), p);
    while t.max_abs().cmp_dyadic(&half.hi) == Ordering::Greater {
        let denom = Interval::one().add(&Interval::one().add(&t.square(p), p).sqrt(p), p);
        t = t.div(&denom, p);
        doublings += 1;
        assert!(doublings < 128, "atan argument reduction diverged");
    }
    let mut r = atan_small(&t, p);
    r = Interval::new(r.lo.shift(doublings as i64), r.hi.shift(doublings as i64));
    r
}

/// Argument of a complex box with sign-definite real and imaginary parts,
/// as an interval inside (-pi, pi). Panics if a part straddles zero.
pub fn atan2_definite(im: &Interval, re: &Interval, prec: u32) -> Interval {
    let p = prec + 16;
    let sx = re.sign().expect("atan2 needs sign-definite real part");
    let sy = im.sign().expect("atan2 needs sign-definite imaginary part");
    assert!(sx != 0 || sy != 0, "atan2 of zero");
    if sy < 0 {
        return atan2_definite(&im.neg(), re, prec).neg();
    }
    let pi = pi_interval(p);
    let half_pi = Interval::new(pi.lo.shift(-1), pi.hi.shift(-1));
    if sx == 0 {
        return half_pi;
    }
    if sy == 0 {
        assert!(sx > 0, "argument pi is on the branch cut; handle axis roots exactly");
        return Interval::zero();
    }
    // y > 0 from here. Cofunction when |y| > |x| keeps the atan argument small.
    if im.min_abs().cmp_dyadic(&re.max_abs()) == Ordering::Greater {
        // atan2 = pi/2 - atan(x/y), valid in the whole upper half plane.
        let inner = atan_interval(&re.div(im, p), p);
        half_pi.sub(&inner, p)
    } else if sx > 0 {
        atan_interval(&im.div(re, p), p)
    } else {
        // Upper-left: atan(y/x) + pi.
        atan_interval(&im.div(re, p), p).add(&pi, p)
    }
}

/// Evaluates a polynomial with rational coefficients on a real interval.
pub fn eval_poly_interval(coeffs: &[Rational], x: &Interval, prec: u32) -> Interval {
    let mut acc = Interval::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(x, prec).add(&Interval::from_rational(c, prec), prec);
    }
    acc
}

/// Sum of a list of intervals.
pub fn sum_intervals(items: &[Interval], prec: u32) -> Interval {
    let mut acc = Interval::zero();
    for it in items {
        acc = acc.add(it, prec);
    }
    acc
}

#[allow(unused)]
pub fn hull_all(items: &[Interval]) -> Option<Interval> {
    let mut it = items.iter();
    let first = it.next()?.clone();
    Some(it.fold(first, |acc, x| acc.hull(x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn approx(i: &Interval) -> f64 {
        i.to_f64()
    }

    #[test]
    fn rounding_is_outward() {
        let a = Interval::from_rational(&rat(1, 3), 64);
        assert!(a.lo.to_rational() < rat(1, 3));
        assert!(a.hi.to_rational() > rat(1, 3));
        assert!(a.width().below_eps(60));
    }

    #[test]
    fn interval_mul_contains_product() {
        let a = Interval::from_rationals(&rat(-3, 2), &rat(1, 2), 64);
        let b = Interval::from_rationals(&rat(2, 3), &rat(7, 3), 64);
        let c = a.mul(&b, 64);
        // -3/2 * 7/3 = -7/2 is the minimum.
        assert!(c.contains(&rat(-7, 2)));
        assert!(c.contains(&(rat(1, 2) * rat(7, 3))));
    }

    #[test]
    fn sqrt_brackets() {
        let two = Interval::from_rational(&rat(2, 1), 128);
        let r = two.sqrt(128);
        let sq = r.square(128);
        assert!(sq.contains(&rat(2, 1)));
        assert!(r.width().below_eps(120));
    }

    #[test]
    fn pi_matches_reference() {
        let pi = pi_interval(128);
        let lo = pi.lo.to_f64();
        let hi = pi.hi.to_f64();
        assert!(lo <= core::f64::consts::PI && core::f64::consts::PI <= hi);
        assert!(pi.width().below_eps(120));
    }

    #[test]
    fn atan_one_is_quarter_pi() {
        let one = Interval::one();
        let a = atan_interval(&one, 128);
        let pi = pi_interval(140);
        let quarter = Interval::new(pi.lo.shift(-2), pi.hi.shift(-2));
        assert!(a.intersects(&quarter));
        assert!(a.width().below_eps(120));
    }

    #[test]
    fn atan2_quadrants() {
        let p = 96;
        let pos = Interval::from_rational(&rat(4, 5), p);
        let neg = Interval::from_rational(&rat(-3, 5), p);
        // (-3/5, 4/5): second quadrant, angle ~ 2.214.
        let theta = atan2_definite(&pos, &neg, p);
        let v = approx(&theta);
        assert!((v - 2.2142974).abs() < 1e-5, "got {v}");
        // (4/5, -3/5) swapped roles: fourth quadrant.
        let theta = atan2_definite(&neg, &pos, p);
        let v = approx(&theta);
        assert!((v + 0.6435011).abs() < 1e-5, "got {v}");
    }

    #[test]
    fn complex_box_powering() {
        // (3+4i)/5 is on the unit circle; its 2nd power is (-7+24i)/25.
        let z = ComplexBox::from_rationals(&rat(3, 5), &rat(4, 5), 128);
        let z2 = z.powi(2, 128);
        assert!(z2.re.contains(&rat(-7, 25)));
        assert!(z2.im.contains(&rat(24, 25)));
        assert!(z2.norm_sqr(128).contains(&rat(1, 1)));
    }
}
