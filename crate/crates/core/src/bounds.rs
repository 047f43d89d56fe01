//! Closed-form aperture, order and region bounds.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{LN_2, PI};

use crate::error::{domain, Result};

const SQRT_3: f64 = 1.732_050_807_568_877_2;

/// Lower bound `√3/π` on the aperture of a first-order class member.
pub fn thm1_bound() -> f64 {
    SQRT_3 / PI
}

/// `coth u = 1 + 2/(e^{2u} − 1)`, stable for small `u > 0`.
fn coth(u: f64) -> f64 {
    1.0 + 2.0 / libm::expm1(2.0 * u)
}

/// Positive root of `κπ·coth(κπ) = 2`, bracketed in `[0.1, 2]` and bisected
/// to absolute width `tol`.
pub fn refined_kappa_bound(tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(domain("tolerance must be positive"));
    }
    let f = |k: f64| k * PI * coth(k * PI) - 2.0;
    let (mut lo, mut hi) = (0.1, 2.0);
    debug_assert!(f(lo) < 0.0 && f(hi) > 0.0);
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `ln(4π²/3+4)/ln 2 + (π³√3/ln 2)(κ+√(1+κ²))⁶(1+κ²)^{3/2}`.
pub fn thm2_n_bound(kappa: f64) -> Result<f64> {
    if !(kappa > 0.0) || !kappa.is_finite() {
        return Err(domain("aperture κ must be positive and finite"));
    }
    let s = libm::sqrt(1.0 + kappa * kappa);
    let head = libm::log(4.0 * PI * PI / 3.0 + 4.0) / LN_2;
    Ok(head + PI * PI * PI * SQRT_3 / LN_2 * libm::pow(kappa + s, 6.0) * s * s * s)
}

/// Height bound `C·(√3/(2π))·re_half^γ`, doubled for `j = 1`.
///
/// `re_half` is `|Re λ_{⌊j/2⌋}|`, or `|Re λ_1|` when `j = 1`.
pub fn thm3_bound(c: f64, gamma: f64, j: usize, re_half: f64) -> Result<f64> {
    if !(c > 0.0) || !(gamma >= 0.0) || !(re_half > 0.0) || j == 0 {
        return Err(domain("strong-spacing bound needs C > 0, γ ≥ 0, j ≥ 1 and a positive real part"));
    }
    let base = c * SQRT_3 / (2.0 * PI) * libm::pow(re_half, gamma);
    Ok(if j == 1 { 2.0 * base } else { base })
}

/// Zero-free region laws for `Λ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RegionKind {
    /// First-order hypothesis: constant offset `159√3/(2π)`.
    Hrrh1,
    /// Order-`n` hypothesis with the caller's constant `m`.
    ///
    /// The constant is only known to exist; it is never computed here.
    HrrhN { n: u32, m: Option<f64> },
}

/// Off-line zeros satisfy `|½ − Re ρ| ≥ offset / |Im ρ|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegionLaw {
    pub offset: f64,
}

impl RegionLaw {
    /// Boundary abscissa `½ + offset/t`.
    pub fn boundary(&self, t: f64) -> f64 {
        0.5 + self.offset / t
    }
}

pub fn corollary_region(kind: RegionKind) -> Result<RegionLaw> {
    let offset = match kind {
        RegionKind::Hrrh1 => 159.0 * SQRT_3 / (2.0 * PI),
        RegionKind::HrrhN { n, m } => {
            if n < 5 {
                return Err(domain("order-N region needs N ≥ 5"));
            }
            let m = m.ok_or_else(|| domain("order-N region needs the constant M"))?;
            if !(m > 0.0) {
                return Err(domain("constant M must be positive"));
            }
            159.0 * m / 2.0 * libm::pow(n as f64, 1.0 / 9.0)
        }
    };
    Ok(RegionLaw { offset })
}

/// `(2π²t²/3c²)e^{2t/d} − ½e^{4t/(b+d)} + 1`, `d = √(b²+c²)`, as
/// `(sign, ln|value|)` so that witness-scale `t` does not overflow.
pub fn est1_rhs_signed_ln(t: f64, b: f64, c: f64) -> Result<(f64, f64)> {
    if !(t > 0.0 && b > 0.0 && c > 0.0) {
        return Err(domain("t, b and c must be positive"));
    }
    let d = libm::hypot(b, c);
    let a = libm::log(2.0 * PI * PI / 3.0) + 2.0 * libm::log(t / c) + 2.0 * t / d;
    let bb = -LN_2 + 4.0 * t / (b + d);
    if a.max(bb) < 700.0 {
        let v = libm::exp(a) - libm::exp(bb) + 1.0;
        return Ok((v.signum(), libm::log(v.abs())));
    }
    if a > bb {
        Ok((1.0, a + libm::log1p(-libm::exp(bb - a) + libm::exp(-a))))
    } else {
        Ok((-1.0, bb + libm::log1p(-libm::exp(a - bb) - libm::exp(-bb))))
    }
}

/// Value of the estimate; saturates to `±∞` at witness scale.
pub fn est1_rhs(t: f64, b: f64, c: f64) -> Result<f64> {
    let (s, l) = est1_rhs_signed_ln(t, b, c)?;
    Ok(s * libm::exp(l))
}

/// Certifies `est1_rhs(t, b, c) < −1` without leaving log space.
pub fn est1_below_minus_one(t: f64, b: f64, c: f64) -> Result<bool> {
    let (s, l) = est1_rhs_signed_ln(t, b, c)?;
    Ok(s < 0.0 && l > 0.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundName {
    Thm1,
    Refined,
    Thm2N,
    Thm3,
    Corollary1,
    Corollary2,
}

impl BoundName {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundName::Thm1 => "thm1",
            BoundName::Refined => "refined",
            BoundName::Thm2N => "thm2",
            BoundName::Thm3 => "thm3",
            BoundName::Corollary1 => "corollary1",
            BoundName::Corollary2 => "corollary2",
        }
    }
}

/// A named bound with its inputs.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub name: BoundName,
    pub inputs: Vec<(String, f64)>,
    pub value: f64,
    pub notes: String,
}

impl BoundReport {
    pub fn thm1() -> Self {
        BoundReport {
            name: BoundName::Thm1,
            inputs: Vec::new(),
            value: thm1_bound(),
            notes: "aperture lower bound sqrt(3)/pi".to_string(),
        }
    }

    pub fn refined(tol: f64) -> Result<Self> {
        Ok(BoundReport {
            name: BoundName::Refined,
            inputs: vec![("tol".to_string(), tol)],
            value: refined_kappa_bound(tol)?,
            notes: "root of k*pi*coth(k*pi) = 2".to_string(),
        })
    }

    pub fn thm2(kappa: f64) -> Result<Self> {
        Ok(BoundReport {
            name: BoundName::Thm2N,
            inputs: vec![("kappa".to_string(), kappa)],
            value: thm2_n_bound(kappa)?,
            notes: "order N beyond which aperture kappa is excluded".to_string(),
        })
    }

    pub fn thm3(c: f64, gamma: f64, j: usize, re_half: f64) -> Result<Self> {
        Ok(BoundReport {
            name: BoundName::Thm3,
            inputs: vec![
                ("C".to_string(), c),
                ("gamma".to_string(), gamma),
                ("j".to_string(), j as f64),
                ("re_half".to_string(), re_half),
            ],
            value: thm3_bound(c, gamma, j, re_half)?,
            notes: "height lower bound under strong spacing".to_string(),
        })
    }

    pub fn corollary(kind: RegionKind) -> Result<Self> {
        let law = corollary_region(kind)?;
        Ok(match kind {
            RegionKind::Hrrh1 => BoundReport {
                name: BoundName::Corollary1,
                inputs: Vec::new(),
                value: law.offset,
                notes: "offset o: off-line zeros satisfy |1/2 - Re rho| >= o/|Im rho|".to_string(),
            },
            RegionKind::HrrhN { n, m } => BoundReport {
                name: BoundName::Corollary2,
                inputs: vec![("N".to_string(), n as f64), ("M".to_string(), m.unwrap_or(f64::NAN))],
                value: law.offset,
                notes: "offset o = (159 M / 2) N^(1/9); M is supplied by the caller".to_string(),
            },
        })
    }
}
