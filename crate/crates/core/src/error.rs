use alloc::string::String;

use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("{value} is not a unit modulo {modulus}")]
    NotAUnit { value: u32, modulus: u32 },
    #[error("letter {letter} out of range for alphabet of size {m}")]
    LetterOutOfRange { letter: usize, m: usize },
    #[error("elements built over different defining data cannot be combined")]
    MixedGroups,
    #[error("{what} exceeds cap {cap}")]
    CapExceeded { what: &'static str, cap: usize },
    #[error("generator does not belong to this group: {0}")]
    ForeignGenerator(String),
    #[error("invalid defining data: {0}")]
    InvalidData(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not a multi-GGS group: {0}")]
    NotMultiGgs(String),
    #[error("not a multi-EGS group: {0}")]
    NotMultiEgs(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("element has no syllable form: {0}")]
    NoSyllableForm(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
}
