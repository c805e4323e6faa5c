//! Class numbers, class groups and fundamental units of quadratic fields,
//! together with a complete enumeration of imaginary bicyclic biquadratic
//! fields `Q(sqrt(-x), sqrt(-y))` with a prescribed class number.
//!
//! The enumeration rests on Kuroda's class number formula
//! `h_K = q(K) h_1 h_2 h_3 / 2` with `q(K)` in `{1, 2}`: if `h_K = n` then
//! `h_1 h_2 h_3` is `n` or `2n`, so both imaginary radicands come from the
//! finite lists of imaginary quadratic fields with class number dividing
//! `2n`. Those lists are shipped for class numbers 1, 2, 3, 4, 6, 7, 8, 12
//! and 14, which makes the enumeration unconditional for `n` in `{1, 2, 3,
//! 4, 6, 7}`.

pub mod arith;
pub mod biquad;
pub mod enumerate;
pub mod families;
pub mod genus;
pub mod imagquad;
pub mod output;
pub mod realquad;
pub mod tables;

pub use imagquad::AbelianGroupStructure;

/// Errors shared across the library.
#[derive(Debug, thiserror::Error, PartialEq, Eq, Clone)]
pub enum Error {
    #[error("radicand must be squarefree, got {0}")]
    NotSquarefree(i64),
    #[error("radicand out of range: {0}")]
    BadRadicand(i64),
    #[error("discriminant {0} is not fundamental")]
    NotFundamental(i64),
    #[error("forms have different discriminants: {0} and {1}")]
    DiscriminantMismatch(i64, i64),
    #[error("field is not totally imaginary: both kernels positive")]
    NotImaginary,
    #[error("degenerate field: kernels {0} and {1} generate a degree-2 extension")]
    Degenerate(i64, i64),
    #[error("class group of order {order} with 2-rank {rank} is not determined by rank alone")]
    UnresolvedStructure { order: u64, rank: u32 },
    #[error("no embedded class-number list for {missing:?} (divisors of {two_n}); pass a search bound")]
    IncompleteData { two_n: u64, missing: Vec<u64> },
    #[error("embedded data failed validation: {0}")]
    BadData(String),
}

pub type Result<T> = std::result::Result<T, Error>;
