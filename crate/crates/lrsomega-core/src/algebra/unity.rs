//! Deciding whether an algebraic number is a root of unity, and of which
//! order.
//!
//! The order of a root of unity appearing among the roots of a degree-d
//! polynomial is bounded through Euler's totient (`phi(k) <= d`). Instead of
//! testing every candidate order, the argument of the number is enclosed
//! tightly enough that at most one reduced fraction `p/k` with `k` below the
//! bound can survive, and that single candidate is then verified exactly
//! against the k-th cyclotomic polynomial.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::dyadic::{atan2_definite, pi_interval, Interval};
use super::poly::{cyclotomic, totient_bounded_orders};
use super::rational::Rational;
use super::roots::{
    is_root_of, norm_sqr_algebraic, power_algebraic, AlgebraicNumber, PREC_CAP, START_PREC,
};
use super::AlgebraError;

/// Returns `Some(k)` iff `alpha^k = 1` with `k` minimal, `None` iff `alpha`
/// is not a root of unity.
pub fn root_of_unity_order(alpha: &AlgebraicNumber) -> Result<Option<usize>, AlgebraError> {
    if alpha.is_zero_number() {
        return Err(AlgebraError::InvalidInput("root_of_unity_order of zero".into()));
    }
    if alpha.equals_rational(&Rational::one()) {
        return Ok(Some(1));
    }
    if alpha.equals_rational(&(-Rational::one())) {
        return Ok(Some(2));
    }
    // A real root of unity is +-1, both handled above.
    if alpha.is_real() {
        return Ok(None);
    }
    // Roots of unity live on the unit circle; |alpha|^2 = 1 is an exact test.
    let norm = norm_sqr_algebraic(alpha)?;
    if !norm.equals_rational(&Rational::one()) {
        return Ok(None);
    }
    // alpha = +-i sits on the branch axis of the argument computation.
    let squared = power_algebraic(alpha, 2)?;
    if squared.equals_rational(&(-Rational::one())) {
        return Ok(Some(4));
    }

    let d = alpha.defining_poly().deg();
    let candidates = totient_bounded_orders(d);
    let k_max = *candidates.last().expect("nonempty") as i64;

    // Enclose arg(alpha) / (2 pi) tightly enough that the interval contains
    // at most one reduced fraction with denominator <= k_max.
    let sep_bits = 2 * (64 - (k_max as u64).leading_zeros()) + 4;
    let mut bits = START_PREC.max(sep_bits);
    let theta = loop {
        let refined = alpha.refined(bits)?;
        let enc = refined.enclosure();
        if enc.re.sign().is_some() && enc.im.sign().is_some() {
            let prec = bits + 32;
            let arg = atan2_definite(&enc.im, &enc.re, prec);
            let two_pi = {
                let pi = pi_interval(prec);
                Interval::new(pi.lo.shift(1), pi.hi.shift(1))
            };
            let theta = arg.div(&two_pi, prec);
            if theta.width().below_eps(sep_bits) {
                break theta;
            }
        }
        bits *= 2;
        if bits > PREC_CAP {
            return Err(AlgebraError::PrecisionExhausted("root of unity argument".into()));
        }
    };
    // Normalise to (0, 1): arg/2pi is in (-1/2, 1/2), bounded away from 0 by
    // the sign-definite imaginary part. An enclosure that still straddles 0
    // can only contain the excluded fraction 0/1, so it needs no shift.
    let (mut lo, mut hi) = (theta.lo.to_rational(), theta.hi.to_rational());
    if hi < Rational::zero() {
        lo += Rational::one();
        hi += Rational::one();
    }

    // The unique reduced candidate fraction in [lo, hi], smallest denominator
    // first.
    for &k in &candidates {
        let kb = BigInt::from(k);
        let p_lo = (&lo * &kb).ceil().to_integer();
        let p_hi = (&hi * &kb).floor().to_integer();
        let mut p = p_lo.clone();
        while p <= p_hi {
            if p.gcd(&kb).is_one() && p.is_positive() {
                // Single candidate order k; verify exactly.
                return verify_order(alpha, k);
            }
            p += BigInt::one();
        }
    }
    Ok(None)
}

/// Exact verification that `alpha` is a primitive k-th root of unity, i.e.
/// that the k-th cyclotomic polynomial divides the defining polynomial and
/// `alpha` is a root of that factor.
fn verify_order(alpha: &AlgebraicNumber, k: usize) -> Result<Option<usize>, AlgebraError> {
    let phi_k = cyclotomic(k);
    let g = phi_k.gcd(alpha.defining_poly());
    if g.deg() == 0 {
        return Ok(None);
    }
    if is_root_of(alpha, &g)? {
        Ok(Some(k))
    } else {
        Ok(None)
    }
}
