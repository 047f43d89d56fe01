use alloc::string::String;
use alloc::vec::Vec;

/// Errors raised by the numerical routines.
#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("x = {x} lies within {radius:e} of the real zero {zero}")]
    Pole { x: f64, zero: f64, radius: f64 },
    #[error("imaginary part {imag:e} of a_{index} exceeds the round-off budget {budget:e}; is the configuration conjugate-closed?")]
    Realness { index: usize, imag: f64, budget: f64 },
    #[error("symmetric eigensolve did not converge after {sweeps} sweeps")]
    Numerical { sweeps: usize },
    #[error("sign not certified at {bits} bits (|value| {value:e} vs error bound {bound:e})")]
    Precision { bits: u32, value: f64, bound: f64 },
    #[error("heights are not strictly increasing at indices {0:?}")]
    Monotonicity(Vec<usize>),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
