//! Exact-arithmetic construction and machine certification of a strictly
//! ascending HNN extension of a rank-6 free group inside SL(2,C).
//!
//! The library reconstructs a specific finite-volume hyperbolic 3-manifold
//! group representation over the cyclotomic field Q(e^{i pi/6}), rewrites its
//! fiber kernel into an explicit free basis, certifies freeness of the
//! augmented group via a valuation/ping-pong argument over the rational
//! function field Q(w)(t), and certifies strictness of the ascent by
//! Stallings folding. Every verdict is backed by exact field arithmetic;
//! floating point appears only in display helpers and cross-checks.

use thiserror::Error;

pub mod amalgam;
pub mod cyclotomic;
pub mod fibering;
pub mod mat2;
pub mod moebius;
pub mod pipeline;
pub mod ratfun;
pub mod stallings;
pub mod words;

pub use cyclotomic::{ComplexApprox, CycNum, Rat};
pub use mat2::{Field, Mat2};
pub use moebius::{ExtMoebius, ProjPoint, Representation};
pub use ratfun::{Poly, RatFun, Valuation};
pub use words::{Character, SubscriptedWord, Word};

/// Crate-wide error type.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoreError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed rational literal: {0:?}")]
    BadRational(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("no square root recognized in Q(w) under the height bound (not a proof of nonexistence)")]
    NoSquareRootFound,
    #[error("matrix is not hyperbolic (needs real trace with |trace| > 2)")]
    NotHyperbolic,
    #[error("matrix is scalar; fixed points are undefined")]
    ScalarMatrix,
    #[error("matrix is not unimodular (determinant != 1)")]
    NotUnimodular,
    #[error("word is not in alternating syllable form: {0}")]
    MalformedSyllables(String),
    #[error("denominator vanishes at the specialization point")]
    PoleAtSpecialization,
    #[error("bad token at byte {position} in word {input:?}")]
    BadToken { input: String, position: usize },
    #[error("relator has nonzero exponent sum in the marker generator")]
    NonzeroExponentSum,
    #[error("subscripted word is empty")]
    EmptyWord,
    #[error("extremal subscript {0} occurs more than once; cannot solve")]
    ExtremeRepeats(i64),
    #[error("character is identically zero")]
    ZeroCharacter,
    #[error("rewrite is degenerate: the character does not induce a Magnus form with subscripted letters")]
    DegenerateRewrite,
    #[error("requirement not met: {0}")]
    RequirementNotMet(String),
    #[error("word evaluates to an orientation-reversing map")]
    OrientationReversing,
    #[error("counterexample found: {0}")]
    CounterexampleFound(String),
    #[error("independent certification paths disagree: {0}")]
    CertificationFailure(String),
    #[error("exact consistency check failed: {0}")]
    ConsistencyFailure(String),
    #[error("ascent is not strict: {0}")]
    AscentNotStrict(String),
}

#[cfg(test)]
mod tests {
    // every value type is immutable plain data, safe to share across threads
    #[test]
    fn core_types_are_send_and_sync() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<crate::CycNum>();
        assert_send_sync::<crate::Mat2<crate::CycNum>>();
        assert_send_sync::<crate::ExtMoebius>();
        assert_send_sync::<crate::RatFun<crate::CycNum>>();
        assert_send_sync::<crate::Word>();
        assert_send_sync::<crate::SubscriptedWord>();
        assert_send_sync::<crate::stallings::StallingsGraph>();
        assert_send_sync::<crate::pipeline::ConjugatedSystem>();
        assert_send_sync::<crate::pipeline::CertificationReport>();
    }
}
