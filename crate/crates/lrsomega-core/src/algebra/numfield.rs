//! Arithmetic in a simple number field Q[x]/(f) for irreducible f.
//!
//! Only irreducible moduli are supported; callers with reducible
//! characteristic polynomials are routed to enclosure-based fallbacks
//! instead of general splitting-field machinery.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::{certify_irreducible, Irreducibility, PolyQ};
use super::rational::Rational;
use super::AlgebraError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberField {
    modulus: PolyQ,
}

impl NumberField {
    /// Builds the field, requiring a certified-irreducible monic modulus.
    pub fn new(modulus: &PolyQ) -> Result<Self, AlgebraError> {
        if modulus.is_zero() || modulus.deg() == 0 {
            return Err(AlgebraError::InvalidInput("constant modulus".into()));
        }
        match certify_irreducible(modulus) {
            Irreducibility::Irreducible => Ok(NumberField { modulus: modulus.monic() }),
            _ => Err(AlgebraError::NotIrreducible),
        }
    }

    pub fn modulus(&self) -> &PolyQ {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.deg()
    }

    pub fn element(&self, rep: PolyQ) -> NumberFieldElement {
        let rep = rep.div_rem(&self.modulus).1;
        NumberFieldElement { modulus: self.modulus.clone(), rep }
    }

    pub fn generator(&self) -> NumberFieldElement {
        self.element(PolyQ::x())
    }

    pub fn from_rational(&self, q: &Rational) -> NumberFieldElement {
        self.element(PolyQ::constant(q.clone()))
    }

    pub fn zero(&self) -> NumberFieldElement {
        self.element(PolyQ::zero())
    }

    pub fn one(&self) -> NumberFieldElement {
        self.from_rational(&Rational::one())
    }

    /// Power sums `p_k = sum_i root_i^k` of the modulus for `k = 0..=upto`,
    /// by Newton's identities. Exact and root-free.
    pub fn power_sums(&self, upto: usize) -> Vec<Rational> {
        power_sums(&self.modulus, upto)
    }

    /// Field trace of an element: the sum of its images under all embeddings.
    pub fn trace(&self, el: &NumberFieldElement) -> Rational {
        let d = self.degree();
        let sums = self.power_sums(d.saturating_sub(1));
        let mut acc = Rational::zero();
        for (j, s) in sums.iter().enumerate() {
            acc += el.rep.coeff(j) * s;
        }
        acc
    }
}

/// Power sums of the roots of a monic polynomial, `p_0 = deg`.
pub fn power_sums(f: &PolyQ, upto: usize) -> Vec<Rational> {
    let f = f.monic();
    let d = f.deg();
    // Elementary symmetrics: f = x^d - sum ... with e_i = (-1)^i * coeff(d - i).
    let e: Vec<Rational> = (0..=d)
        .map(|i| {
            let sign = if i % 2 == 0 { Rational::one() } else { -Rational::one() };
            sign * f.coeff(d - i)
        })
        .collect();
    let mut p = vec![Rational::from_integer(BigInt::from(d as i64))];
    for k in 1..=upto {
        let mut acc = Rational::zero();
        for i in 1..=(k - 1).min(d) {
            let sign = if i % 2 == 1 { Rational::one() } else { -Rational::one() };
            acc += sign * &e[i] * &p[k - i];
        }
        if k <= d {
            let sign = if k % 2 == 1 { Rational::one() } else { -Rational::one() };
            acc += sign * Rational::from_integer(BigInt::from(k as i64)) * &e[k];
        }
        p.push(acc);
    }
    p
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberFieldElement {
    modulus: PolyQ,
    rep: PolyQ,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NfOp {
    Add,
    Mul,
    Inv,
}

impl NumberFieldElement {
    pub fn rep(&self) -> &PolyQ {
        &self.rep
    }

    pub fn modulus(&self) -> &PolyQ {
        &self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    fn check_same(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.modulus != other.modulus {
            return Err(AlgebraError::ModulusMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same(other)?;
        Ok(NumberFieldElement { modulus: self.modulus.clone(), rep: self.rep.add(&other.rep) })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same(other)?;
        Ok(NumberFieldElement { modulus: self.modulus.clone(), rep: self.rep.sub(&other.rep) })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same(other)?;
        let rep = self.rep.mul(&other.rep).div_rem(&self.modulus).1;
        Ok(NumberFieldElement { modulus: self.modulus.clone(), rep })
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    pub fn inv(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        // Bezout: find u with u * rep + v * modulus = gcd = const.
        let (mut r0, mut r1) = (self.modulus.clone(), self.rep.clone());
        let (mut u0, mut u1) = (PolyQ::zero(), PolyQ::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let u = u0.sub(&q.mul(&u1));
            r0 = r1;
            r1 = r;
            u0 = u1;
            u1 = u;
        }
        debug_assert_eq!(r0.deg(), 0, "modulus is irreducible");
        let scale = Rational::one() / r0.coeff(0);
        let rep = u0.scale(&scale).div_rem(&self.modulus).1;
        Ok(NumberFieldElement { modulus: self.modulus.clone(), rep })
    }

    pub fn pow(&self, mut e: u64) -> Result<Self, AlgebraError> {
        let mut base = self.clone();
        let mut acc = NumberFieldElement {
            modulus: self.modulus.clone(),
            rep: PolyQ::one(),
        };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }
}

/// Spec-shaped dispatcher over the three field operations; `Inv` ignores `b`.
pub fn nf_op(
    a: &NumberFieldElement,
    b: &NumberFieldElement,
    op: NfOp,
) -> Result<NumberFieldElement, AlgebraError> {
    match op {
        NfOp::Add => a.add(b),
        NfOp::Mul => a.mul(b),
        NfOp::Inv => a.inv(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat_i64;

    #[test]
    fn golden_field_square() {
        // phi^2 = phi + 1 in Q[x]/(x^2 - x - 1).
        let field = NumberField::new(&PolyQ::from_i64(&[-1, -1, 1])).unwrap();
        let phi = field.generator();
        let sq = nf_op(&phi, &phi, NfOp::Mul).unwrap();
        assert_eq!(sq.rep(), &PolyQ::from_i64(&[1, 1]));
    }

    #[test]
    fn multiplicative_identity() {
        let field = NumberField::new(&PolyQ::from_i64(&[-1, -1, 1])).unwrap();
        let one = field.one();
        let b = field.element(PolyQ::from_i64(&[3, 7]));
        assert_eq!(nf_op(&one, &b, NfOp::Mul).unwrap(), b);
    }

    #[test]
    fn inverse_of_i() {
        // In Q[x]/(x^2 + 1), x^-1 = -x.
        let field = NumberField::new(&PolyQ::from_i64(&[1, 0, 1])).unwrap();
        let i = field.generator();
        let inv = nf_op(&i, &i, NfOp::Inv).unwrap();
        assert_eq!(inv.rep(), &PolyQ::from_i64(&[0, -1]));
        assert_eq!(i.mul(&inv).unwrap(), field.one());
    }

    #[test]
    fn reducible_modulus_rejected() {
        assert_eq!(
            NumberField::new(&PolyQ::from_i64(&[-1, 0, 1])).unwrap_err(),
            AlgebraError::NotIrreducible
        );
    }

    #[test]
    fn modulus_mismatch() {
        let f1 = NumberField::new(&PolyQ::from_i64(&[-1, -1, 1])).unwrap();
        let f2 = NumberField::new(&PolyQ::from_i64(&[1, 0, 1])).unwrap();
        assert_eq!(
            f1.generator().add(&f2.generator()).unwrap_err(),
            AlgebraError::ModulusMismatch
        );
    }

    #[test]
    fn inversion_of_zero_fails() {
        let field = NumberField::new(&PolyQ::from_i64(&[1, 0, 1])).unwrap();
        assert_eq!(field.zero().inv().unwrap_err(), AlgebraError::DivisionByZero);
    }

    #[test]
    fn power_sums_of_fibonacci_poly_are_lucas() {
        // phi^k + psi^k = Lucas numbers 2, 1, 3, 4, 7, 11, ...
        let sums = power_sums(&PolyQ::from_i64(&[-1, -1, 1]), 5);
        let expect = [2, 1, 3, 4, 7, 11];
        for (k, l) in expect.iter().enumerate() {
            assert_eq!(sums[k], rat_i64(*l));
        }
    }

    #[test]
    fn trace_matches_power_sums() {
        let field = NumberField::new(&PolyQ::from_i64(&[-1, -1, 1])).unwrap();
        let gen = field.generator();
        // Tr(x^3) = p_3 = 4.
        let x3 = gen.pow(3).unwrap();
        assert_eq!(field.trace(&x3), rat_i64(4));
    }
}
