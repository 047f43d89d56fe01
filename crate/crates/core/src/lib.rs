//! Numerical probes of the higher-order Laguerre-Pólya classes for genus-one
//! entire functions given by their zeros.
//!
//! The crate is `no_std` with `alloc`. File formats, configuration and the
//! command line live in the `zeroprobe` crate.
//!
//! ```
//! use zeroprobe_core::hankel::{build_hankel, psd_check, Verdict};
//! use zeroprobe_core::{Zero, ZeroConfig};
//!
//! let pair = ZeroConfig::from_zeros([Zero::complex(0.0, 1.0), Zero::complex(0.0, -1.0)]).unwrap();
//! let v = psd_check(build_hankel(&pair, 0.0, 1).unwrap(), None).unwrap();
//! assert_eq!(v.verdict, Verdict::NotPsd);
//! ```

#![no_std]
// negated comparisons below are deliberate: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod bounds;
pub mod coeff;
pub mod decimal;
pub mod eigen;
pub mod error;
pub mod extended;
pub mod hankel;
pub mod mp;
pub mod sine;
pub mod zeros;
pub mod zeta;

pub use decimal::Decimal;
pub use error::{Error, Result};
pub use extended::Extended;
pub use zeros::{SpacingReport, TailKind, TailModel, Zero, ZeroConfig};
