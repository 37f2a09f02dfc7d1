//! Univariate polynomials over the rationals.
//!
//! Coefficients are stored lowest degree first, with the invariant that the
//! last entry is nonzero unless the polynomial is zero (empty vector).

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::dyadic::ComplexBox;
use super::rational::Rational;
use super::AlgebraError;

#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct PolyQ {
    coeffs: Vec<Rational>,
}

impl PolyQ {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolyQ { coeffs }
    }

    pub fn zero() -> Self {
        PolyQ { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        PolyQ::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        PolyQ::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        PolyQ::new(vec![Rational::zero(), Rational::one()])
    }

    /// `x^k`.
    pub fn x_pow(k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = Rational::one();
        PolyQ::new(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        PolyQ::new(coeffs.iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports degree `None`.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Degree of a nonzero polynomial. Panics on the zero polynomial.
    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn neg(&self) -> Self {
        PolyQ::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        PolyQ::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return PolyQ::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyQ::new(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        PolyQ::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Quotient and remainder with respect to a nonzero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dd = divisor.deg();
        let lead_inv = Rational::one() / divisor.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1;
            let factor = rem[k].clone() * &lead_inv;
            if !factor.is_zero() {
                let shift = k - dd;
                quot[shift] = factor.clone();
                for (i, c) in divisor.coeffs.iter().enumerate() {
                    rem[shift + i] -= &factor * c;
                }
            }
            rem.pop();
        }
        (PolyQ::new(quot), PolyQ::new(rem))
    }

    /// Exact division; returns `None` when the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return PolyQ::zero();
        }
        PolyQ::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return PolyQ::zero();
        }
        let inv = Rational::one() / self.leading();
        self.scale(&inv)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Interval Horner evaluation over a complex box.
    pub fn eval_box(&self, z: &ComplexBox, prec: u32) -> ComplexBox {
        let mut acc = ComplexBox::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z, prec).add(&ComplexBox::from_rational_re(c, prec), prec);
        }
        acc
    }

    /// `p(c * x)` for rational `c`.
    pub fn compose_scale(&self, c: &Rational) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len());
        let mut pow = Rational::one();
        for a in &self.coeffs {
            out.push(a * &pow);
            pow *= c;
        }
        PolyQ::new(out)
    }

    /// The polynomial with reciprocal roots, `x^deg * p(1/x)`.
    pub fn reverse(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        PolyQ::new(coeffs)
    }

    /// `p(x^k)`.
    pub fn compose_x_pow(&self, k: usize) -> Self {
        assert!(k >= 1);
        let mut out = vec![Rational::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * k] = c.clone();
        }
        PolyQ::new(out)
    }

    /// Squarefree part `p / gcd(p, p')`, made monic.
    pub fn squarefree_part(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        let g = self.gcd(&self.derivative());
        if g.deg() == 0 {
            return Ok(self.monic());
        }
        Ok(self.div_exact(&g).expect("gcd divides").monic())
    }

    /// Clears denominators and the integer content: returns a primitive
    /// integer polynomial with the same roots and a positive leading
    /// coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut content = BigInt::zero();
        for c in &ints {
            content = content.gcd(c);
        }
        if content.is_zero() {
            content = BigInt::one();
        }
        if ints.last().map(|c| c.is_negative()).unwrap_or(false) {
            content = -content;
        }
        for c in &mut ints {
            *c = &*c / &content;
        }
        ints
    }
}

/// Decides whether a nonzero polynomial has no repeated complex roots,
/// via `gcd(p, p')` being constant.
pub fn poly_squarefree(p: &PolyQ) -> Result<bool, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    if p.deg() == 0 {
        return Ok(true);
    }
    Ok(p.gcd(&p.derivative()).deg() == 0)
}

/// Resultant of `p` and `q` with respect to their actual degrees, as the
/// determinant of the Sylvester matrix. `formal_deg_q` lets the caller fix
/// the row layout of `q` even when its leading coefficient vanishes at a
/// specialisation point, which keeps evaluation/interpolation of bivariate
/// resultants consistent.
#[allow(clippy::needless_range_loop)]
pub fn sylvester_resultant(p: &PolyQ, q_coeffs: &[Rational], formal_deg_q: usize) -> Rational {
    let m = p.deg();
    let n = formal_deg_q;
    if m == 0 {
        // res(c, q) = c^n
        let mut acc = Rational::one();
        for _ in 0..n {
            acc *= p.coeff(0);
        }
        return acc;
    }
    if n == 0 {
        let c = q_coeffs.first().cloned().unwrap_or_else(Rational::zero);
        let mut acc = Rational::one();
        for _ in 0..m {
            acc *= &c;
        }
        return acc;
    }
    let size = m + n;
    // Rows 0..n hold shifted copies of p, rows n..n+m shifted copies of q.
    let mut mat = vec![vec![Rational::zero(); size]; size];
    for (row, matrow) in mat.iter_mut().enumerate().take(n) {
        for k in 0..=m {
            matrow[row + k] = p.coeff(m - k);
        }
    }
    for row in 0..m {
        for k in 0..=n {
            let c = q_coeffs.get(n - k).cloned().unwrap_or_else(Rational::zero);
            mat[n + row][row + k] = c;
        }
    }
    determinant(mat)
}

#[allow(clippy::needless_range_loop)]
fn determinant(mut mat: Vec<Vec<Rational>>) -> Rational {
    let n = mat.len();
    let mut det = Rational::one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !mat[r][col].is_zero());
        let Some(pivot) = pivot else {
            return Rational::zero();
        };
        if pivot != col {
            mat.swap(pivot, col);
            det = -det;
        }
        let pv = mat[col][col].clone();
        det *= &pv;
        let inv = Rational::one() / pv;
        for r in col + 1..n {
            if mat[r][col].is_zero() {
                continue;
            }
            let factor = mat[r][col].clone() * &inv;
            for c in col..n {
                let sub = &factor * &mat[col][c];
                mat[r][c] -= sub;
            }
        }
    }
    det
}

/// Lagrange interpolation through `(x_i, y_i)` with distinct `x_i`.
pub fn interpolate(points: &[(Rational, Rational)]) -> PolyQ {
    let mut acc = PolyQ::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = PolyQ::constant(yi.clone());
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let denom = xi - xj;
            let factor = PolyQ::new(vec![-xj / &denom, Rational::one() / denom]);
            basis = basis.mul(&factor);
        }
        acc = acc.add(&basis);
    }
    acc
}

/// A rational polynomial whose roots include every quotient `alpha/beta`
/// with `f(alpha) = 0`, `g(beta) = 0`, `beta != 0`; computed as
/// `Res_y(g(y), f(x y))` by evaluation and interpolation.
pub fn quotient_pool_poly(f: &PolyQ, g: &PolyQ) -> PolyQ {
    let df = f.deg();
    let dg = g.deg();
    let bound = df * dg + 1;
    let mut points = Vec::with_capacity(bound);
    let mut t: i64 = 0;
    while points.len() < bound {
        let x = Rational::from_integer(BigInt::from(t));
        // f(x*y) as a polynomial in y, with formal degree df.
        let fx = f.compose_scale(&x);
        let mut coeffs = fx.coeffs().to_vec();
        coeffs.resize(df + 1, Rational::zero());
        let val = sylvester_resultant(g, &coeffs, df);
        points.push((x, val));
        t += 1;
    }
    interpolate(&points)
}

/// A rational polynomial whose roots include every product `alpha * beta`;
/// computed as `Res_y(g(y), y^df * f(x/y))`.
pub fn product_pool_poly(f: &PolyQ, g: &PolyQ) -> PolyQ {
    let df = f.deg();
    let dg = g.deg();
    let bound = df * dg + 1;
    let mut points = Vec::with_capacity(bound);
    let mut t: i64 = 0;
    while points.len() < bound {
        let x = Rational::from_integer(BigInt::from(t));
        // y^df * f(x/y) = sum_k f_k x^k y^(df-k), formal degree df in y.
        let mut coeffs = vec![Rational::zero(); df + 1];
        let mut pow = Rational::one();
        for k in 0..=df {
            coeffs[df - k] = f.coeff(k) * &pow;
            pow *= &x;
        }
        let val = sylvester_resultant(g, &coeffs, df);
        points.push((x, val));
        t += 1;
    }
    interpolate(&points)
}

/// A rational polynomial whose roots include `alpha^k` for every root of `f`;
/// computed as `Res_y(f(y), x - y^k)`.
pub fn power_pool_poly(f: &PolyQ, k: usize) -> PolyQ {
    assert!(k >= 1);
    if k == 1 {
        return f.clone();
    }
    let df = f.deg();
    let bound = df + 1;
    let mut points = Vec::with_capacity(bound);
    for t in 0..bound as i64 {
        let x = Rational::from_integer(BigInt::from(t));
        // x - y^k as a polynomial in y, formal degree k.
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[0] = x.clone();
        coeffs[k] = -Rational::one();
        let val = sylvester_resultant(f, &coeffs, k);
        points.push((x, val));
    }
    interpolate(&points)
}

/// The k-th cyclotomic polynomial, by the recursive quotient
/// `Phi_k = (x^k - 1) / prod_{d | k, d < k} Phi_d`.
pub fn cyclotomic(k: usize) -> PolyQ {
    assert!(k >= 1);
    let mut num = PolyQ::x_pow(k).sub(&PolyQ::one());
    for d in 1..k {
        if k.is_multiple_of(d) {
            let phi_d = cyclotomic(d);
            num = num.div_exact(&phi_d).expect("cyclotomic division is exact");
        }
    }
    num
}

/// Euler's totient.
pub fn euler_phi(mut n: usize) -> usize {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Orders `k` whose primitive roots of unity could divide a degree-`d`
/// polynomial, i.e. those with `phi(k) <= d`.
pub fn totient_bounded_orders(d: usize) -> Vec<usize> {
    // phi(k) >= sqrt(k/2), so k <= 2 d^2 + 1 suffices.
    let cap = 2 * d * d + 1;
    (1..=cap).filter(|&k| euler_phi(k) <= d).collect()
}

/// Outcome of the cheap irreducibility certification battery.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    Reducible,
    Unknown,
}

/// Tries to certify irreducibility over Q: linear polynomials, exact
/// cyclotomic match, quadratic discriminant test, then reduction modulo
/// small primes. `Unknown` is returned when no certificate was found;
/// callers must treat it as "not certified", not as "reducible".
pub fn certify_irreducible(p: &PolyQ) -> Irreducibility {
    let Some(d) = p.degree() else {
        return Irreducibility::Reducible;
    };
    if d == 0 {
        return Irreducibility::Reducible;
    }
    if d == 1 {
        return Irreducibility::Irreducible;
    }
    let monic = p.monic();
    for k in totient_bounded_orders(d) {
        if euler_phi(k) == d && cyclotomic(k) == monic {
            return Irreducibility::Irreducible;
        }
    }
    if d == 2 {
        // x^2 + bx + c irreducible iff b^2 - 4c is not a rational square.
        let b = monic.coeff(1);
        let c = monic.coeff(0);
        let disc = &b * &b - Rational::from_integer(BigInt::from(4)) * c;
        if disc.is_negative() {
            return Irreducibility::Irreducible;
        }
        return if rational_is_square(&disc) {
            Irreducibility::Reducible
        } else {
            Irreducibility::Irreducible
        };
    }
    let ints = p.primitive_integer();
    for prime in SMALL_PRIMES {
        match irreducible_mod_p(&ints, prime) {
            Some(true) => return Irreducibility::Irreducible,
            _ => continue,
        }
    }
    Irreducibility::Unknown
}

fn rational_is_square(q: &Rational) -> bool {
    if q.is_negative() {
        return false;
    }
    q.numer().sqrt().pow(2u32) == *q.numer() && q.denom().sqrt().pow(2u32) == *q.denom()
}

const SMALL_PRIMES: [u64; 15] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

/// Irreducibility of an integer polynomial modulo `p`, by the standard
/// `x^(p^d) = x` test plus gcd checks at maximal proper subfield degrees.
/// Returns `None` when the reduction degenerates (leading coefficient or
/// squarefreeness lost mod p).
fn irreducible_mod_p(ints: &[BigInt], p: u64) -> Option<bool> {
    let d = ints.len().checked_sub(1)?;
    if d == 0 {
        return None;
    }
    let pb = BigInt::from(p);
    let coeffs: Vec<u64> = ints
        .iter()
        .map(|c| {
            let m = ((c % &pb) + &pb) % &pb;
            let digits = m.to_u64_digits().1;
            digits.first().copied().unwrap_or(0)
        })
        .collect();
    if coeffs[d] == 0 {
        return None;
    }
    let f = FpPoly::new(coeffs, p);
    if f.gcd(&f.derivative()).degree() != Some(0) {
        return None;
    }
    // x^(p^d) == x mod f
    let frob = FpPoly::x(p).pow_mod_exp(p, &f); // x^p
    let mut xq = frob.clone();
    let mut powers = vec![xq.clone()]; // powers[k] = x^(p^(k+1)) mod f
    for _ in 1..d {
        xq = xq.compose_mod(&frob, &f);
        powers.push(xq.clone());
    }
    let x = FpPoly::x(p);
    if powers[d - 1].sub(&x).degree().is_some() {
        return Some(false);
    }
    for ell in prime_factors(d) {
        let k = d / ell;
        let g = powers[k - 1].sub(&x);
        if f.gcd(&g).degree() != Some(0) {
            return Some(false);
        }
    }
    Some(true)
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Dense polynomial over F_p used only by the irreducibility test.
#[derive(Clone, Debug)]
struct FpPoly {
    coeffs: Vec<u64>,
    p: u64,
}

impl FpPoly {
    fn new(mut coeffs: Vec<u64>, p: u64) -> Self {
        for c in &mut coeffs {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { coeffs, p }
    }

    fn x(p: u64) -> Self {
        FpPoly::new(vec![0, 1], p)
    }

    fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    fn sub(&self, other: &Self) -> Self {
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, o) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *o = (a + p - b) % p;
        }
        FpPoly::new(out, p)
    }

    fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return FpPoly::new(Vec::new(), self.p);
        }
        let p = self.p as u128;
        let mut out = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u128 * b as u128) % p;
            }
        }
        FpPoly::new(out.into_iter().map(|c| c as u64).collect(), self.p)
    }

    fn rem(&self, m: &Self) -> Self {
        let p = self.p;
        let dm = m.degree().expect("nonzero modulus");
        let lead_inv = mod_inv(m.coeffs[dm], p);
        let mut rem = self.coeffs.clone();
        while rem.len() > dm {
            let k = rem.len() - 1;
            let factor = rem[k] % p * lead_inv % p;
            if factor != 0 {
                let shift = k - dm;
                for (i, &c) in m.coeffs.iter().enumerate() {
                    let sub = factor as u128 * c as u128 % p as u128;
                    rem[shift + i] = ((rem[shift + i] as u128 + p as u128 * p as u128 - sub)
                        % p as u128) as u64;
                }
            }
            rem.pop();
        }
        FpPoly::new(rem, p)
    }

    fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return FpPoly::new(Vec::new(), self.p);
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| (i as u128 % self.p as u128 * c as u128 % self.p as u128) as u64)
            .collect();
        FpPoly::new(out, self.p)
    }

    fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.coeffs.is_empty() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    /// `self^e mod m`.
    fn pow_mod_exp(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = FpPoly::new(vec![1], self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// `self(g) mod m` by Horner.
    fn compose_mod(&self, g: &Self, m: &Self) -> Self {
        let mut acc = FpPoly::new(Vec::new(), self.p);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(g).rem(m);
            if c != 0 {
                let mut coeffs = acc.coeffs.clone();
                if coeffs.is_empty() {
                    coeffs.push(0);
                }
                coeffs[0] = (coeffs[0] + c) % self.p;
                acc = FpPoly::new(coeffs, self.p);
            }
        }
        acc
    }
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // p prime; Fermat.
    let mut e = p - 2;
    let mut base = a as u128 % p as u128;
    let mut acc: u128 = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u128;
        }
        base = base * base % p as u128;
        e >>= 1;
    }
    acc as u64
}
