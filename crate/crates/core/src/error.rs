//! Error type shared by all kernels.

use thiserror::Error;

/// Errors produced by the algebra kernels.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("division by zero in F_{p}")]
    DivisionByZero { p: u64 },

    #[error("parse error at {line}:{col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },

    #[error("unknown variable '{name}' at {line}:{col}")]
    UnknownVariable {
        name: String,
        line: usize,
        col: usize,
    },

    #[error("exponent {value} exceeds the supported maximum {max}")]
    ExponentOverflow { value: u64, max: u64 },

    #[error("monomial arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("operands belong to different rings")]
    RingMismatch,

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("quotient is not Artinian (variable ideal has infinite colength)")]
    NotArtinian,

    #[error("degree cap {cap} too small: top-degree quotient cannot be certified")]
    CapTooSmall { cap: u64 },

    #[error("{q} is not a power of the characteristic {p}")]
    NotPowerOfCharacteristic { q: u64, p: u64 },

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("chain did not stabilize by t_max = {t_max}")]
    NotStable { t_max: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
