use alloc::string::String;
use thiserror::Error;

use crate::closure::ParametricGroup;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("universe mismatch: {left} vs {right}")]
    UniverseMismatch { left: usize, right: usize },

    #[error("duplicate member {member}")]
    DuplicateMember { member: String },

    #[error("duplicate family set (same as pair {index})")]
    DuplicateFamilySet { index: usize },

    #[error("duplicate filter set (same as pair {index})")]
    DuplicateFilterSet { index: usize },

    #[error("unsupported parameter {parameter}={actual}: minimum is {minimum}")]
    UnsupportedParameter {
        parameter: &'static str,
        minimum: usize,
        actual: usize,
    },

    #[error("index {index} out of range (maximum {max})")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("malformed interval: lower bound is not contained in upper bound")]
    MalformedInterval,

    #[error("interval enumeration needs {required} sets, over budget {budget}")]
    OracleBudgetExceeded { required: u128, budget: u64 },

    #[error("parametric group {group} has an empty generator range at n={n}")]
    EmptyGroup { group: ParametricGroup, n: usize },

    #[error("formula numerator 23n^2+140n-672 is not divisible by 32 at n={n}")]
    FormulaDomain { n: usize },

    #[error("arithmetic overflow at n={n}")]
    ArithmeticOverflow { n: usize },

    #[error("closure exceeded the resource guard of {limit} sets")]
    ClosureLimitExceeded { limit: usize },

    #[error("invalid sweep range: {from}..={to}")]
    InvalidSweepRange { from: usize, to: usize },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
