//! Property tests for the exact-arithmetic invariants.

use proptest::prelude::*;

use lrsomega_core::algebra::rational::Rational;
use lrsomega_core::lrs::{berlekamp_massey, Lrs, Sign};
use lrsomega_core::words::{gap_statistics, parse_sign_word, Pattern};
use num_bigint::BigInt;
use num_traits::Zero;

fn rational_strategy() -> impl Strategy<Value = Rational> {
    (any::<i32>(), 1i32..10_000).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational_strategy().prop_filter("nonzero", |q| !q.is_zero())
}

proptest! {
    #[test]
    fn rational_addition_round_trips(a in rational_strategy(), b in rational_strategy()) {
        prop_assert_eq!((&a + &b) - &b, a);
    }

    #[test]
    fn rational_multiplication_round_trips(a in rational_strategy(), b in nonzero_rational()) {
        prop_assert_eq!((&a * &b) / &b, a);
    }

    #[test]
    fn minimize_preserves_terms(
        coeffs in proptest::collection::vec(-3i64..=3, 1..=3),
        initial in proptest::collection::vec(-3i64..=3, 1..=3),
    ) {
        let d = coeffs.len().min(initial.len());
        let u = Lrs::from_recurrence(
            coeffs[..d].iter().map(|&c| Rational::from_integer(c.into())).collect(),
            initial[..d].iter().map(|&c| Rational::from_integer(c.into())).collect(),
        ).unwrap();
        let min = u.minimize();
        prop_assert!(min.order() <= u.order());
        for n in 1..=(2 * u.order() as u64 + 50) {
            prop_assert_eq!(min.term(n).unwrap(), u.term(n).unwrap());
        }
    }

    #[test]
    fn closure_matches_pointwise(
        c1 in proptest::collection::vec(-2i64..=2, 1..=2),
        i1 in proptest::collection::vec(-2i64..=2, 1..=2),
        c2 in proptest::collection::vec(-2i64..=2, 1..=2),
        i2 in proptest::collection::vec(-2i64..=2, 1..=2),
    ) {
        let d1 = c1.len().min(i1.len());
        let d2 = c2.len().min(i2.len());
        let u = Lrs::from_recurrence(
            c1[..d1].iter().map(|&c| Rational::from_integer(c.into())).collect(),
            i1[..d1].iter().map(|&c| Rational::from_integer(c.into())).collect(),
        ).unwrap();
        let v = Lrs::from_recurrence(
            c2[..d2].iter().map(|&c| Rational::from_integer(c.into())).collect(),
            i2[..d2].iter().map(|&c| Rational::from_integer(c.into())).collect(),
        ).unwrap();
        let sum = u.add(&v);
        let prod = u.mul(&v);
        for n in 1..=40u64 {
            let (a, b) = (u.term(n).unwrap(), v.term(n).unwrap());
            prop_assert_eq!(sum.term(n).unwrap(), &a + &b);
            prop_assert_eq!(prod.term(n).unwrap(), &a * &b);
        }
    }

    #[test]
    fn berlekamp_massey_regenerates(
        coeffs in proptest::collection::vec(-2i64..=2, 1..=3),
        initial in proptest::collection::vec(-2i64..=2, 1..=3),
    ) {
        let d = coeffs.len().min(initial.len());
        let u = Lrs::from_recurrence(
            coeffs[..d].iter().map(|&c| Rational::from_integer(c.into())).collect(),
            initial[..d].iter().map(|&c| Rational::from_integer(c.into())).collect(),
        ).unwrap();
        let terms = u.first_terms(2 * d + 6);
        let rec = berlekamp_massey(&terms);
        prop_assert!(rec.len() <= d);
        // The recovered recurrence regenerates the whole prefix.
        for n in rec.len()..terms.len() {
            let mut acc = Rational::zero();
            for (i, a) in rec.iter().enumerate() {
                acc += a * &terms[n - 1 - i];
            }
            prop_assert_eq!(acc, terms[n].clone());
        }
    }

    #[test]
    fn gap_max_monotone(prefix_len in 4usize..60) {
        let alpha = parse_sign_word("0-0++-").unwrap();
        let w = Pattern::parse_signs("+").unwrap();
        let word: Vec<Sign> = (0..prefix_len).map(|i| alpha[i % alpha.len()]).collect();
        let shorter: Vec<Sign> = word[..word.len() - 1].to_vec();
        let m1 = gap_statistics(&shorter, &w).max_gap.unwrap_or(0);
        let m2 = gap_statistics(&word, &w).max_gap.unwrap_or(0);
        prop_assert!(m2 >= m1);
    }

    #[test]
    fn interleaving_reconstruction(step in 1u64..4) {
        let u = Lrs::fibonacci();
        let total = 60usize;
        let per = total / step as usize + 1;
        let tracks: Vec<Vec<Sign>> =
            (0..step).map(|off| u.subsequence(off, step).sign_prefix(per)).collect();
        let direct = u.sign_prefix(total);
        for (p, s) in direct.iter().enumerate() {
            let off = (p as u64 % step) as usize;
            prop_assert_eq!(tracks[off][p / step as usize], *s);
        }
    }
}
