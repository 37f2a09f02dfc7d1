//! Exact rational, polynomial, and algebraic-number arithmetic.
//!
//! Everything here is arbitrary precision and certified: algebraic numbers
//! are represented by a squarefree defining polynomial together with an
//! isolating box in the complex plane, and every numeric answer is backed
//! either by exact rational arithmetic or by interval enclosures that are
//! refined on demand.

pub mod dyadic;
pub mod lll;
pub mod numfield;
pub mod poly;
pub mod rational;
pub mod roots;
pub mod unity;

pub use dyadic::{ComplexBox, Dyadic, Interval};
pub use numfield::{NumberField, NumberFieldElement};
pub use poly::PolyQ;
pub use rational::Rational;
pub use roots::{compare_modulus, isolate_roots, AlgebraicNumber, IsolatedRoots};
pub use unity::root_of_unity_order;

use alloc::string::String;
use core::fmt;

/// Error type shared by the algebra operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    /// An operation received the zero polynomial where a nonzero one is required.
    ZeroPolynomial,
    /// Root isolation or a refinement was asked for a non-squarefree polynomial.
    NotSquarefree,
    /// Division by an algebraic number whose box cannot be refined away from zero.
    DivisionByZero,
    /// Number-field elements with different moduli were combined.
    ModulusMismatch,
    /// A number-field modulus could not be certified irreducible.
    NotIrreducible,
    /// The precision cap was reached before a certificate was obtained.
    PrecisionExhausted(String),
    /// Malformed input (bad rational literal, empty coefficient list, ...).
    InvalidInput(String),
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::ZeroPolynomial => write!(f, "zero polynomial"),
            AlgebraError::NotSquarefree => write!(f, "polynomial is not squarefree"),
            AlgebraError::DivisionByZero => write!(f, "division by zero algebraic number"),
            AlgebraError::ModulusMismatch => write!(f, "number field modulus mismatch"),
            AlgebraError::NotIrreducible => write!(f, "modulus not certified irreducible"),
            AlgebraError::PrecisionExhausted(what) => {
                write!(f, "precision cap exhausted during {what}")
            }
            AlgebraError::InvalidInput(what) => write!(f, "invalid input: {what}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for AlgebraError {}
