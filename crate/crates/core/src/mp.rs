//! Arbitrary-precision binary floating point.
//!
//! An [`MpFloat`] is `mant · 2^exp` with a signed big-integer mantissa. Every
//! arithmetic operation goes through an [`MpContext`], which fixes the mantissa
//! width and rounds results to nearest (ties away from zero), so each basic
//! operation carries a relative error of at most `2^-prec`. Transcendental
//! functions are evaluated in fixed point with 64 guard bits and are accurate
//! to a few units in the last place.
//!
//! This is deliberately small: it implements exactly what the sine probes and
//! the extended coefficient sums need.

use core::cmp::Ordering;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

const GUARD: u32 = 64;

/// A binary floating point number `mant · 2^exp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MpFloat {
    mant: BigInt,
    exp: i64,
}

impl MpFloat {
    pub fn zero() -> Self {
        MpFloat { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        MpFloat { mant: BigInt::one(), exp: 0 }
    }

    /// Exact conversion (finite inputs only; NaN and infinities map to zero).
    pub fn from_f64(x: f64) -> Self {
        if !x.is_finite() || x == 0.0 {
            return Self::zero();
        }
        let bits = x.to_bits();
        let neg = bits >> 63 == 1;
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if biased == 0 { (frac, -1074) } else { (frac | (1u64 << 52), biased - 1075) };
        let mant = BigInt::from(m);
        MpFloat { mant: if neg { -mant } else { mant }, exp: e }
    }

    pub fn from_i64(v: i64) -> Self {
        MpFloat { mant: BigInt::from(v), exp: 0 }
    }

    /// `mant · 2^exp`, exact.
    pub fn from_parts(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return Self::zero();
        }
        MpFloat { mant, exp }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn neg(&self) -> Self {
        MpFloat { mant: -&self.mant, exp: self.exp }
    }

    pub fn abs(&self) -> Self {
        MpFloat { mant: self.mant.abs(), exp: self.exp }
    }

    /// Exact multiplication by `2^k`.
    pub fn ldexp(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        MpFloat { mant: self.mant.clone(), exp: self.exp + k }
    }

    /// Position of the leading bit plus one: `|self| ∈ [2^(top-1), 2^top)`.
    fn top(&self) -> i64 {
        self.exp + self.mant.bits() as i64
    }

    /// Natural logarithm of `|self|` as an `f64` (−∞ for zero). Exponent range
    /// is not limited by binary64.
    pub fn ln_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = self.mant.bits() as i64;
        let shift = bits - 60;
        let head = if shift > 0 {
            (self.mant.abs() >> shift as usize).to_f64().unwrap_or(f64::MAX)
        } else {
            self.mant.abs().to_f64().unwrap_or(f64::MAX)
        };
        let e = self.exp + shift.max(0);
        libm::log(head) + e as f64 * core::f64::consts::LN_2
    }

    /// Nearest binary64 value; saturates to ±∞ and flushes to zero.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let r = round_parts(self.mant.clone(), self.exp, 53);
        let top = r.top();
        if top > 1025 {
            return if r.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY };
        }
        if top < -1100 {
            return 0.0;
        }
        let m = r.mant.to_i64().expect("53-bit mantissa") as f64;
        scale_f64(m, r.exp)
    }

    /// Exact three-way comparison.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        let (ta, tb) = (self.top(), other.top());
        let mag = if ta != tb {
            ta.cmp(&tb)
        } else {
            let e = self.exp.min(other.exp);
            let a = self.mant.abs() << (self.exp - e) as usize;
            let b = other.mant.abs() << (other.exp - e) as usize;
            a.cmp(&b)
        };
        if sa > 0 {
            mag
        } else {
            mag.reverse()
        }
    }
}

fn scale_f64(m: f64, e: i64) -> f64 {
    // two steps keep intermediate values inside the exponent range
    let e = e.clamp(-2200, 2200) as i32;
    let half = e / 2;
    libm::ldexp(libm::ldexp(m, half), e - half)
}

/// Round `mant · 2^exp` to `prec` significant bits, ties away from zero.
fn round_parts(mant: BigInt, exp: i64, prec: u32) -> MpFloat {
    if mant.is_zero() {
        return MpFloat::zero();
    }
    let bits = mant.bits();
    if bits <= prec as u64 {
        return MpFloat { mant, exp };
    }
    let s = bits - prec as u64;
    let neg = mant.is_negative();
    let mut mag: BigUint = mant.magnitude().clone();
    mag += BigUint::one() << (s - 1) as usize;
    mag >>= s as usize;
    let mut exp = exp + s as i64;
    if mag.bits() > prec as u64 {
        mag >>= 1usize;
        exp += 1;
    }
    let m = BigInt::from_biguint(if neg { Sign::Minus } else { Sign::Plus }, mag);
    MpFloat { mant: m, exp }
}

/// Fixed-point value `v / 2^w` as a big integer `v`.
type Fixed = BigInt;

fn fixed_mul(a: &Fixed, b: &Fixed, w: u32) -> Fixed {
    (a * b) >> w as usize
}

/// `Σ (-1)^k / ((2k+1) n^(2k+1))` in fixed point with `w` fractional bits.
fn atan_inv(n: u32, w: u32) -> Fixed {
    let one: Fixed = BigInt::one() << w as usize;
    let n2 = BigInt::from(n) * BigInt::from(n);
    let mut power = &one / BigInt::from(n);
    let mut sum = power.clone();
    let mut k: u64 = 1;
    loop {
        power = &power / &n2;
        if power.is_zero() {
            break;
        }
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    sum
}

fn pi_fixed(w: u32) -> Fixed {
    let ww = w + 16;
    let v = atan_inv(5, ww) * 16 - atan_inv(239, ww) * 4;
    v >> 16usize
}

/// ln 2 = 2·atanh(1/3).
fn ln2_fixed(w: u32) -> Fixed {
    let ww = w + 16;
    let one: Fixed = BigInt::one() << ww as usize;
    let nine = BigInt::from(9);
    let mut power = &one / BigInt::from(3);
    let mut sum = power.clone();
    let mut k: u64 = 1;
    loop {
        power = &power / &nine;
        if power.is_zero() {
            break;
        }
        sum += &power / BigInt::from(2 * k + 1);
        k += 1;
    }
    (sum * 2) >> 16usize
}

/// Working precision and cached constants.
#[derive(Clone, Debug)]
pub struct MpContext {
    prec: u32,
    /// π and ln 2 with `prec + 2·GUARD` fractional bits.
    pi: Fixed,
    ln2: Fixed,
    cbits: u32,
}

impl MpContext {
    /// A context with `prec` mantissa bits (at least 8).
    pub fn new(prec: u32) -> Self {
        let prec = prec.max(8);
        let cbits = prec + 2 * GUARD;
        MpContext { prec, pi: pi_fixed(cbits), ln2: ln2_fixed(cbits), cbits }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Unit roundoff `2^-prec` as an `f64` natural log.
    pub fn ln_unit(&self) -> f64 {
        -(self.prec as f64) * core::f64::consts::LN_2
    }

    pub fn round(&self, x: &MpFloat) -> MpFloat {
        round_parts(x.mant.clone(), x.exp, self.prec)
    }

    pub fn from_f64(&self, x: f64) -> MpFloat {
        MpFloat::from_f64(x)
    }

    pub fn add(&self, a: &MpFloat, b: &MpFloat) -> MpFloat {
        if a.is_zero() {
            return self.round(b);
        }
        if b.is_zero() {
            return self.round(a);
        }
        let (hi, lo) = if a.top() >= b.top() { (a, b) } else { (b, a) };
        // far below the rounding position only the sign of `lo` matters
        let sticky;
        let lo = if hi.top() - lo.top() > self.prec as i64 + 2 {
            sticky = MpFloat::from_parts(BigInt::from(lo.signum()), hi.top() - self.prec as i64 - 8);
            &sticky
        } else {
            lo
        };
        let e = hi.exp.min(lo.exp);
        let m = (&hi.mant << (hi.exp - e) as usize) + (&lo.mant << (lo.exp - e) as usize);
        round_parts(m, e, self.prec)
    }

    pub fn sub(&self, a: &MpFloat, b: &MpFloat) -> MpFloat {
        self.add(a, &b.neg())
    }

    pub fn mul(&self, a: &MpFloat, b: &MpFloat) -> MpFloat {
        round_parts(&a.mant * &b.mant, a.exp + b.exp, self.prec)
    }

    pub fn sqr(&self, a: &MpFloat) -> MpFloat {
        self.mul(a, a)
    }

    /// `a / b`; division by zero yields zero (callers never divide by zero).
    pub fn div(&self, a: &MpFloat, b: &MpFloat) -> MpFloat {
        if a.is_zero() || b.is_zero() {
            return MpFloat::zero();
        }
        let need = self.prec as i64 + 2 + b.mant.bits() as i64 - a.mant.bits() as i64;
        let k = need.max(0);
        let q = (&a.mant << k as usize) / &b.mant;
        round_parts(q, a.exp - k - b.exp, self.prec)
    }

    pub fn div_i64(&self, a: &MpFloat, d: i64) -> MpFloat {
        self.div(a, &MpFloat::from_i64(d))
    }

    pub fn sqrt(&self, a: &MpFloat) -> MpFloat {
        if a.signum() <= 0 {
            return MpFloat::zero();
        }
        let want = 2 * self.prec as i64 + 4;
        let mut k = (want - a.mant.bits() as i64).max(0);
        if (a.exp - k) % 2 != 0 {
            k += 1;
        }
        let m = a.mant.magnitude() << k as usize;
        let r = m.sqrt();
        round_parts(BigInt::from(r), (a.exp - k) / 2, self.prec)
    }

    fn to_fixed(&self, x: &MpFloat, w: u32) -> Fixed {
        let shift = x.exp + w as i64;
        if shift >= 0 {
            &x.mant << shift as usize
        } else {
            // round toward nearest
            let s = (-shift) as usize;
            let half = BigInt::one() << (s - 1);
            if x.mant.is_negative() {
                -((-&x.mant + half) >> s)
            } else {
                (&x.mant + half) >> s
            }
        }
    }

    fn fixed_to_float(&self, v: Fixed, w: u32) -> MpFloat {
        round_parts(v, -(w as i64), self.prec)
    }

    fn constant(&self, which: &Fixed, w: u32) -> Fixed {
        if w <= self.cbits {
            which >> (self.cbits - w) as usize
        } else if core::ptr::eq(which, &self.pi) {
            pi_fixed(w)
        } else {
            ln2_fixed(w)
        }
    }

    pub fn pi(&self) -> MpFloat {
        self.fixed_to_float(self.pi.clone(), self.cbits)
    }

    /// `e^x`. The exponent of `x` must stay below `2^52` in magnitude.
    pub fn exp(&self, x: &MpFloat) -> MpFloat {
        if x.is_zero() {
            return MpFloat::one();
        }
        let xf = x.to_f64();
        let k = libm::round(xf / core::f64::consts::LN_2) as i64;
        let kbits = 64 - k.unsigned_abs().leading_zeros();
        let halvings: u32 = 12;
        let w = self.prec + GUARD + halvings;
        let ln2 = self.constant(&self.ln2, w + kbits);
        let xw = self.to_fixed(x, w + kbits);
        let r = (xw - ln2 * BigInt::from(k)) >> kbits as usize;
        // r / 2^halvings, series, then square back
        let r = r >> halvings as usize;
        let one: Fixed = BigInt::one() << w as usize;
        let mut sum = one.clone();
        let mut term = one;
        let mut n: u64 = 1;
        loop {
            term = fixed_mul(&term, &r, w) / BigInt::from(n);
            if term.is_zero() {
                break;
            }
            sum += &term;
            n += 1;
        }
        for _ in 0..halvings {
            sum = fixed_mul(&sum, &sum, w);
        }
        let v = self.fixed_to_float(sum, w);
        v.ldexp(k)
    }

    /// `(sin x, cos x)`.
    pub fn sin_cos(&self, x: &MpFloat) -> (MpFloat, MpFloat) {
        if x.is_zero() {
            return (MpFloat::zero(), MpFloat::one());
        }
        let w = self.prec + GUARD;
        let xf = x.to_f64();
        let q = libm::round(xf / core::f64::consts::FRAC_PI_2);
        let k = BigInt::from(q as i64);
        let kbits = (k.bits() as u32).max(1);
        let wk = w + kbits + 2;
        let pi = self.constant(&self.pi, wk);
        // r = x - k·π/2
        let r = (self.to_fixed(x, wk) - ((pi * &k) >> 1usize)) >> (kbits + 2) as usize;
        let one: Fixed = BigInt::one() << w as usize;
        let r2 = fixed_mul(&r, &r, w);
        // sin series
        let mut s = r.clone();
        let mut term = r;
        let mut n: u64 = 1;
        loop {
            term = -fixed_mul(&term, &r2, w) / BigInt::from((n + 1) * (n + 2));
            if term.is_zero() {
                break;
            }
            s += &term;
            n += 2;
        }
        let mut c = one.clone();
        let mut term = one;
        let mut n: u64 = 0;
        loop {
            term = -fixed_mul(&term, &r2, w) / BigInt::from((n + 1) * (n + 2));
            if term.is_zero() {
                break;
            }
            c += &term;
            n += 2;
        }
        let quadrant = ((q as i64) % 4 + 4) % 4;
        let (sv, cv) = match quadrant {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        };
        (self.fixed_to_float(sv, w), self.fixed_to_float(cv, w))
    }

    /// `cosh x` via exponentials (no cancellation).
    pub fn cosh(&self, x: &MpFloat) -> MpFloat {
        let e = self.exp(x);
        let inv = self.div(&MpFloat::one(), &e);
        self.add(&e, &inv).ldexp(-1)
    }

    /// `sinh x`; uses the series below 1/2 to avoid cancellation.
    pub fn sinh(&self, x: &MpFloat) -> MpFloat {
        if x.abs().cmp_value(&MpFloat::from_f64(0.5)) == Ordering::Less {
            let w = self.prec + GUARD;
            let r = self.to_fixed(x, w);
            let r2 = fixed_mul(&r, &r, w);
            let mut s = r.clone();
            let mut term = r;
            let mut n: u64 = 1;
            loop {
                term = fixed_mul(&term, &r2, w) / BigInt::from((n + 1) * (n + 2));
                if term.is_zero() {
                    break;
                }
                s += &term;
                n += 2;
            }
            return self.fixed_to_float(s, w);
        }
        let e = self.exp(x);
        let inv = self.div(&MpFloat::one(), &e);
        self.sub(&e, &inv).ldexp(-1)
    }
}

/// A complex number with [`MpFloat`] parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MpComplex {
    pub re: MpFloat,
    pub im: MpFloat,
}

impl MpComplex {
    pub fn new(re: MpFloat, im: MpFloat) -> Self {
        MpComplex { re, im }
    }

    pub fn from_f64(re: f64, im: f64) -> Self {
        MpComplex { re: MpFloat::from_f64(re), im: MpFloat::from_f64(im) }
    }

    pub fn zero() -> Self {
        MpComplex { re: MpFloat::zero(), im: MpFloat::zero() }
    }
}

impl MpContext {
    pub fn c_add(&self, a: &MpComplex, b: &MpComplex) -> MpComplex {
        MpComplex::new(self.add(&a.re, &b.re), self.add(&a.im, &b.im))
    }

    pub fn c_mul(&self, a: &MpComplex, b: &MpComplex) -> MpComplex {
        let re = self.sub(&self.mul(&a.re, &b.re), &self.mul(&a.im, &b.im));
        let im = self.add(&self.mul(&a.re, &b.im), &self.mul(&a.im, &b.re));
        MpComplex::new(re, im)
    }

    pub fn c_scale(&self, a: &MpComplex, s: &MpFloat) -> MpComplex {
        MpComplex::new(self.mul(&a.re, s), self.mul(&a.im, s))
    }

    /// `1 / z`; zero maps to zero.
    pub fn c_recip(&self, z: &MpComplex) -> MpComplex {
        let norm = self.add(&self.sqr(&z.re), &self.sqr(&z.im));
        MpComplex::new(self.div(&z.re, &norm), self.div(&z.im, &norm).neg())
    }

    /// `|z|` rounded to binary64.
    pub fn c_abs_f64(&self, z: &MpComplex) -> f64 {
        let norm = self.add(&self.sqr(&z.re), &self.sqr(&z.im));
        self.sqrt(&norm).to_f64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * b.abs().max(1e-300)
    }

    #[test]
    fn f64_round_trip_is_exact() {
        for &x in &[1.0, -0.1, 3.5e-310, 1.7976931348623157e308, 14.134725142, -2.0f64.powi(-60)] {
            assert_eq!(MpFloat::from_f64(x).to_f64(), x);
        }
    }

    #[test]
    fn arithmetic_matches_f64_at_double_width() {
        let ctx = MpContext::new(53);
        let (a, b) = (MpFloat::from_f64(0.1), MpFloat::from_f64(0.7));
        assert_eq!(ctx.add(&a, &b).to_f64(), 0.1 + 0.7);
        assert_eq!(ctx.mul(&a, &b).to_f64(), 0.1 * 0.7);
        assert_eq!(ctx.div(&a, &b).to_f64(), 0.1 / 0.7);
        assert_eq!(ctx.sub(&a, &b).to_f64(), 0.1 - 0.7);
        assert_eq!(ctx.sqrt(&b).to_f64(), 0.7f64.sqrt());
    }

    #[test]
    fn absorbs_tiny_addends() {
        let ctx = MpContext::new(64);
        let big = MpFloat::from_f64(1.0e30);
        let tiny = MpFloat::from_f64(1.0e-30);
        assert_eq!(ctx.add(&big, &tiny).to_f64(), 1.0e30);
        assert_eq!(ctx.sub(&tiny, &big).to_f64(), -1.0e30);
    }

    #[test]
    fn constants() {
        let ctx = MpContext::new(200);
        assert_eq!(ctx.pi().to_f64(), core::f64::consts::PI);
        let e = ctx.exp(&MpFloat::one());
        assert_eq!(e.to_f64(), core::f64::consts::E);
        let ln2 = ctx.fixed_to_float(ln2_fixed(100), 100);
        assert_eq!(ln2.to_f64(), core::f64::consts::LN_2);
    }

    #[test]
    fn transcendental_values() {
        let ctx = MpContext::new(120);
        for &x in &[0.3, -1.2, 2.5, 10.0, -37.25, 1000.125, 123456.75] {
            let (s, c) = ctx.sin_cos(&MpFloat::from_f64(x));
            assert!((s.to_f64() - libm::sin(x)).abs() < 1e-15, "sin {x}");
            assert!((c.to_f64() - libm::cos(x)).abs() < 1e-15, "cos {x}");
        }
        for &x in &[0.25, -0.4, 1.5, -3.0, 20.0] {
            assert!(close(ctx.exp(&MpFloat::from_f64(x)).to_f64(), libm::exp(x), 4e-16));
            assert!(close(ctx.sinh(&MpFloat::from_f64(x)).to_f64(), libm::sinh(x), 4e-16));
            assert!(close(ctx.cosh(&MpFloat::from_f64(x)).to_f64(), libm::cosh(x), 4e-16));
        }
    }

    #[test]
    fn exp_beyond_binary64_range() {
        let ctx = MpContext::new(80);
        let big = ctx.exp(&MpFloat::from_f64(20000.0));
        assert_eq!(big.to_f64(), f64::INFINITY);
        assert!((big.ln_abs() - 20000.0).abs() < 1e-9);
        let small = ctx.exp(&MpFloat::from_f64(-20000.0));
        assert!((small.ln_abs() + 20000.0).abs() < 1e-9);
    }

    #[test]
    fn high_precision_identity() {
        // sin² + cos² = 1 to the working precision
        let ctx = MpContext::new(512);
        let x = MpFloat::from_f64(7.123456789);
        let (s, c) = ctx.sin_cos(&x);
        let one = ctx.add(&ctx.sqr(&s), &ctx.sqr(&c));
        let err = ctx.sub(&one, &MpFloat::one());
        assert!(err.is_zero() || err.ln_abs() < -500.0 * core::f64::consts::LN_2);
    }

    #[test]
    fn ordering() {
        let a = MpFloat::from_f64(1.5);
        let b = MpFloat::from_f64(-2.0e10);
        assert_eq!(a.cmp_value(&b), Ordering::Greater);
        assert_eq!(b.cmp_value(&a), Ordering::Less);
        assert_eq!(a.cmp_value(&a.clone()), Ordering::Equal);
        assert_eq!(MpFloat::from_f64(1.0).cmp_value(&MpFloat::from_f64(1.0 + f64::EPSILON)), Ordering::Less);
    }
}
