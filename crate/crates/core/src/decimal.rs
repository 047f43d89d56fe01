//! Exact fixed-point decimals for tabulated zero heights.
//!
//! Heights such as `14.134725142` are stored as `digits · 10^-scale` with a
//! big-integer mantissa, so squaring and differencing them is exact.

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::mp::{MpContext, MpFloat};

/// Equality and ordering compare values, so `2.50 == 2.5`.
#[derive(Clone, Debug)]
pub struct Decimal {
    digits: BigInt,
    scale: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("invalid decimal literal `{0}`")]
pub struct DecimalParseError(pub String);

impl Decimal {
    pub fn from_parts(digits: BigInt, scale: u32) -> Self {
        Decimal { digits, scale }
    }

    pub fn zero() -> Self {
        Decimal { digits: BigInt::zero(), scale: 0 }
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn is_positive(&self) -> bool {
        self.digits.is_positive()
    }

    fn rescaled(&self, scale: u32) -> BigInt {
        debug_assert!(scale >= self.scale);
        &self.digits * BigInt::from(10u32).pow(scale - self.scale)
    }

    pub fn add(&self, other: &Decimal) -> Decimal {
        let s = self.scale.max(other.scale);
        Decimal { digits: self.rescaled(s) + other.rescaled(s), scale: s }
    }

    pub fn sub(&self, other: &Decimal) -> Decimal {
        let s = self.scale.max(other.scale);
        Decimal { digits: self.rescaled(s) - other.rescaled(s), scale: s }
    }

    pub fn mul(&self, other: &Decimal) -> Decimal {
        Decimal { digits: &self.digits * &other.digits, scale: self.scale + other.scale }
    }

    /// Binary approximation with `prec` mantissa bits.
    pub fn to_mp(&self, ctx: &MpContext) -> MpFloat {
        let num = MpFloat::from_parts(self.digits.clone(), 0);
        if self.scale == 0 {
            return ctx.round(&num);
        }
        let den = MpFloat::from_parts(BigInt::from(10u32).pow(self.scale), 0);
        ctx.div(&num, &den)
    }

    /// Nearest binary64 value (ties away from zero).
    pub fn to_f64(&self) -> f64 {
        if self.digits.is_zero() {
            return 0.0;
        }
        let den = BigInt::from(10u32).pow(self.scale);
        // quotient with at least 66 significant bits plus a sticky bit
        let shift = (den.bits() as i64 - self.digits.bits() as i64 + 66).max(0);
        let num = &self.digits << shift as usize;
        let (q, r) = num.div_rem(&den);
        let q = (q << 1usize) | BigInt::from(u8::from(!r.is_zero()));
        MpFloat::from_parts(q, -shift - 1).to_f64()
    }
}

impl PartialEq for Decimal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Decimal {}

impl PartialOrd for Decimal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Decimal {
    fn cmp(&self, other: &Self) -> Ordering {
        let s = self.scale.max(other.scale);
        self.rescaled(s).cmp(&other.rescaled(s))
    }
}

impl FromStr for Decimal {
    type Err = DecimalParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || DecimalParseError(String::from(s));
        let t = s.trim();
        let (neg, body) = match t.as_bytes().first() {
            Some(b'-') => (true, &t[1..]),
            Some(b'+') => (false, &t[1..]),
            _ => (false, t),
        };
        let (mantissa, exponent) = match body.find(['e', 'E']) {
            Some(i) => (&body[..i], body[i + 1..].parse::<i32>().map_err(|_| bad())?),
            None => (body, 0),
        };
        let (int_part, frac_part) = match mantissa.find('.') {
            Some(i) => (&mantissa[..i], &mantissa[i + 1..]),
            None => (mantissa, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let mut text = String::with_capacity(int_part.len() + frac_part.len());
        text.push_str(int_part);
        text.push_str(frac_part);
        let mut digits = BigInt::parse_bytes(text.as_bytes(), 10).ok_or_else(bad)?;
        let mut scale = frac_part.len() as i64 - exponent as i64;
        if scale < 0 {
            digits *= BigInt::from(10u32).pow((-scale) as u32);
            scale = 0;
        }
        if neg {
            digits = -digits;
        }
        Ok(Decimal { digits, scale: scale as u32 })
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mag = self.digits.magnitude().to_str_radix(10);
        if self.digits.sign() == Sign::Minus {
            f.write_str("-")?;
        }
        let scale = self.scale as usize;
        if scale == 0 {
            return f.write_str(&mag);
        }
        if mag.len() <= scale {
            f.write_str("0.")?;
            for _ in 0..scale - mag.len() {
                f.write_str("0")?;
            }
            f.write_str(&mag)
        } else {
            let (i, fr) = mag.split_at(mag.len() - scale);
            write!(f, "{i}.{fr}")
        }
    }
}
