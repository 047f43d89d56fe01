//! Sine probes: sums of `Re sin²(t/(λ_i − x))` and of squared sine Taylor
//! polynomials over a zero configuration, the witness formulas and the
//! witness search.
//!
//! Every probe value carries an absolute error bound. Evaluation starts in
//! binary64 and, when the sign is not certified, retries in [`MpContext`]
//! arithmetic at doubled mantissa widths up to a cap.

use alloc::vec::Vec;
use core::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use crate::coeff::{check_admissible, tail_bound, CoeffOptions, Neumaier};
use crate::error::{domain, Error, Result};
use crate::extended::Extended;
use crate::mp::{MpComplex, MpContext, MpFloat};
use crate::zeros::{spacing_report, ZeroConfig};

/// Degree-`N` Taylor polynomial `S_N` of `sin` at the origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SineTaylor {
    order: usize,
}

impl SineTaylor {
    pub fn new(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(domain("Taylor order N must be at least 1"));
        }
        Ok(SineTaylor { order })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Number `K` of odd powers `z^(2k+1)` with `2k + 1 ≤ N`.
    pub fn odd_terms(&self) -> usize {
        self.order.div_ceil(2)
    }

    /// Coefficient of `z^k`: `(−1)^j / (2j+1)!` for `k = 2j + 1 ≤ N`, else 0.
    pub fn coefficient(&self, k: usize) -> f64 {
        if k.is_multiple_of(2) || k > self.order {
            return 0.0;
        }
        let mut c = 1.0;
        for m in 2..=k {
            c /= m as f64;
        }
        if (k / 2) % 2 == 1 {
            -c
        } else {
            c
        }
    }

    /// `S_N(w) = w·(1 − w²/(2·3)·(1 − w²/(4·5)·(…)))`.
    pub fn eval(&self, w: Complex64) -> Complex64 {
        let w2 = w * w;
        let mut acc = Complex64::new(1.0, 0.0);
        for k in (1..self.odd_terms()).rev() {
            acc = Complex64::new(1.0, 0.0) - acc * w2 / ((2 * k) * (2 * k + 1)) as f64;
        }
        w * acc
    }

    pub fn eval_mp(&self, ctx: &MpContext, w: &MpComplex) -> MpComplex {
        let w2 = ctx.c_mul(w, w);
        let mut acc = MpComplex::new(MpFloat::one(), MpFloat::zero());
        for k in (1..self.odd_terms()).rev() {
            let p = ctx.c_mul(&acc, &w2);
            let d = ((2 * k) * (2 * k + 1)) as i64;
            acc = MpComplex::new(ctx.sub(&MpFloat::one(), &ctx.div_i64(&p.re, d)), ctx.div_i64(&p.im, d).neg());
        }
        ctx.c_mul(w, &acc)
    }

    /// `ln Σ_k |w|^(2k+1)/(2k+1)!`, the majorant of `|S_N(w)|`.
    pub fn ln_majorant(&self, r: f64) -> f64 {
        if r == 0.0 {
            return f64::NEG_INFINITY;
        }
        let lr = libm::log(r);
        let terms = (0..self.odd_terms()).map(|k| {
            let m = (2 * k + 1) as f64;
            m * lr - libm::lgamma(m + 1.0)
        });
        log_sum_exp(terms)
    }
}

fn log_sum_exp(it: impl Iterator<Item = f64>) -> f64 {
    let v: Vec<f64> = it.collect();
    let m = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + libm::log(v.iter().map(|x| libm::exp(x - m)).sum::<f64>())
}

/// Mantissa widths tried by the probes: binary64 when `start_bits ≤ 53`
/// (followed by 128), otherwise `start_bits`; then doubling up to `max_bits`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionPolicy {
    pub start_bits: u32,
    pub max_bits: u32,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy { start_bits: 53, max_bits: 4096 }
    }
}

impl PrecisionPolicy {
    pub fn ladder(&self) -> Vec<u32> {
        let mut v = Vec::new();
        let mut b = self.start_bits;
        if b <= 53 {
            v.push(53);
            b = 128;
        }
        let cap = self.max_bits.max(self.start_bits);
        while b < cap {
            v.push(b);
            b *= 2;
        }
        v.push(cap);
        v.dedup();
        v
    }
}

/// A probed sum over the listed zeros.
///
/// The exact listed sum lies within `error_bound` of `value`; omitted real
/// tail zeros add a contribution in `[0, tail_upper]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProbeValue {
    pub value: f64,
    pub error_bound: f64,
    pub tail_upper: f64,
    /// Mantissa width used (53 for binary64).
    pub bits: u32,
}

impl ProbeValue {
    pub fn sign_certified(&self) -> bool {
        self.value.abs() > self.error_bound
    }

    /// Upper bound on the full sum, tail included.
    pub fn upper(&self) -> f64 {
        self.value + self.error_bound + self.tail_upper
    }

    /// Certifies `full sum < threshold`.
    pub fn certified_below(&self, threshold: f64) -> bool {
        self.upper() < threshold
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Sin,
    Taylor(SineTaylor),
}

fn reduced_args(config: &ZeroConfig, x: f64, t: f64) -> Vec<(Complex64, f64)> {
    config
        .zeros()
        .iter()
        .map(|z| (Complex64::new(t, 0.0) / Complex64::new(z.re - x, z.im), z.multiplicity as f64))
        .collect()
}

/// `ln` of the per-term error bound at `bits` of working precision.
fn ln_term_error(kind: Kind, w: Complex64, bits: u32) -> f64 {
    let base = -(bits as f64) * LN_2;
    match kind {
        Kind::Sin => base + libm::log(16.0 * (1.0 + w.re.abs() + w.im.abs())) + 2.0 * w.im.abs(),
        Kind::Taylor(s) => {
            let k = s.odd_terms() as f64;
            let la = s.ln_majorant(w.norm()).max(0.0);
            base + libm::log(32.0 * k + 80.0) + libm::log(1.0 + w.norm()) + 2.0 * la
        }
    }
}

fn ln_term_magnitude(kind: Kind, w: Complex64) -> f64 {
    match kind {
        // |Re sin²(u+iv)| ≤ cosh²(v)
        Kind::Sin => 2.0 * libm::log(libm::cosh(w.im.abs()).max(1.0)).max(w.im.abs() - LN_2),
        Kind::Taylor(s) => 2.0 * s.ln_majorant(w.norm()),
    }
}

fn tail_upper(kind: Kind, config: &ZeroConfig, x: f64, t: f64) -> Result<f64> {
    let Some(tail) = config.tail() else { return Ok(0.0) };
    let mut total = 0.0;
    for d in tail.omitted_distances(x)? {
        // sin²(w) ≤ w² and S_N(w)² ≤ (w·cosh w)² for real w
        let grow = match kind {
            Kind::Sin => 1.0,
            Kind::Taylor(_) => libm::cosh(t.abs() / d).powi(2),
        };
        total += t * t * grow * tail_bound(tail, x, 1, d)?;
    }
    Ok(total)
}

fn evaluate_f64(kind: Kind, args: &[(Complex64, f64)]) -> Option<(f64, f64)> {
    let mut acc = Neumaier::default();
    let mut abs = 0.0;
    let mut ln_errs = Vec::with_capacity(args.len());
    for &(w, m) in args {
        if ln_term_magnitude(kind, w) > 600.0 {
            return None;
        }
        let term = match kind {
            Kind::Sin => {
                let (s, c) = (libm::sin(w.re), libm::cos(w.re));
                let (sh, ch) = (libm::sinh(w.im), libm::cosh(w.im));
                s * s * ch * ch - c * c * sh * sh
            }
            Kind::Taylor(st) => {
                let v = st.eval(w);
                (v * v).re
            }
        } * m;
        acc.add(term);
        abs += term.abs();
        ln_errs.push(ln_term_error(kind, w, 53) + libm::log(m));
    }
    let err = libm::exp(log_sum_exp(ln_errs.into_iter())) + 4.0 * f64::EPSILON * abs;
    Some((acc.total(), err))
}

fn evaluate_mp(kind: Kind, config: &ZeroConfig, x: f64, t: f64, bits: u32) -> (f64, f64) {
    let ctx = MpContext::new(bits);
    let tm = MpFloat::from_f64(t);
    let xm = MpFloat::from_f64(x);
    let mut acc = MpFloat::zero();
    let mut ln_errs = Vec::with_capacity(config.len() + 1);
    let mut ln_abs = Vec::with_capacity(config.len());
    for z in config.zeros() {
        let dr = ctx.sub(&MpFloat::from_f64(z.re), &xm);
        let di = MpFloat::from_f64(z.im);
        let norm = ctx.add(&ctx.sqr(&dr), &ctx.sqr(&di));
        let u = ctx.div(&ctx.mul(&tm, &dr), &norm);
        let v = ctx.div(&ctx.mul(&tm, &di), &norm).neg();
        let w64 = Complex64::new(u.to_f64(), v.to_f64());
        let term = match kind {
            Kind::Sin => {
                let (s, c) = ctx.sin_cos(&u);
                let (sh, ch) = (ctx.sinh(&v), ctx.cosh(&v));
                let a = ctx.sqr(&ctx.mul(&s, &ch));
                let b = ctx.sqr(&ctx.mul(&c, &sh));
                ctx.sub(&a, &b)
            }
            Kind::Taylor(st) => {
                let s = st.eval_mp(&ctx, &MpComplex::new(u, v));
                ctx.sub(&ctx.sqr(&s.re), &ctx.sqr(&s.im))
            }
        };
        let term = ctx.mul(&term, &MpFloat::from_i64(z.multiplicity as i64));
        let lm = libm::log(z.multiplicity as f64);
        ln_abs.push(term.ln_abs());
        ln_errs.push(ln_term_error(kind, w64, bits) + lm);
        acc = ctx.add(&acc, &term);
    }
    let n = config.len() as f64 + 2.0;
    ln_errs.push(ctx.ln_unit() + libm::log(n) + log_sum_exp(ln_abs.into_iter()));
    (acc.to_f64(), libm::exp(log_sum_exp(ln_errs.into_iter())))
}

fn probe_at(kind: Kind, config: &ZeroConfig, x: f64, t: f64, bits: u32) -> Result<Option<ProbeValue>> {
    check_admissible(config, x, &CoeffOptions::default())?;
    if !t.is_finite() {
        return Err(domain("t must be finite"));
    }
    let tail_upper = tail_upper(kind, config, x, t)?;
    let res = if bits <= 53 {
        evaluate_f64(kind, &reduced_args(config, x, t))
    } else {
        Some(evaluate_mp(kind, config, x, t, bits))
    };
    Ok(res.map(|(value, error_bound)| ProbeValue { value, error_bound, tail_upper, bits: bits.max(53) }))
}

fn probe_escalating(kind: Kind, config: &ZeroConfig, x: f64, t: f64, policy: &PrecisionPolicy) -> Result<ProbeValue> {
    let mut last = None;
    for bits in policy.ladder() {
        if let Some(p) = probe_at(kind, config, x, t, bits)? {
            if p.sign_certified() || p.value == 0.0 && p.error_bound == 0.0 {
                return Ok(p);
            }
            last = Some(p);
        }
    }
    match (kind, last) {
        (Kind::Sin, Some(p)) => Ok(p),
        (_, p) => {
            let p = p.unwrap_or(ProbeValue { value: 0.0, error_bound: f64::INFINITY, tail_upper: 0.0, bits: 0 });
            Err(Error::Precision { bits: policy.max_bits, value: p.value.abs(), bound: p.error_bound })
        }
    }
}

/// `Σ_i Re sin²(t/(λ_i − x))` at a fixed working precision (53 = binary64).
/// Returns `None` in binary64 when a term would overflow.
pub fn sin_sq_sum_at(config: &ZeroConfig, x: f64, t: f64, bits: u32) -> Result<Option<ProbeValue>> {
    probe_at(Kind::Sin, config, x, t, bits)
}

/// `Σ_i Re sin²(t/(λ_i − x))`, escalating precision until the sign is
/// certified; at the cap the uncertified value is returned.
pub fn sin_sq_sum_with(config: &ZeroConfig, x: f64, t: f64, policy: &PrecisionPolicy) -> Result<ProbeValue> {
    probe_escalating(Kind::Sin, config, x, t, policy)
}

pub fn sin_sq_sum(config: &ZeroConfig, x: f64, t: f64) -> Result<ProbeValue> {
    sin_sq_sum_with(config, x, t, &PrecisionPolicy::default())
}

pub fn taylor_sq_sum_at(config: &ZeroConfig, x: f64, t: f64, order: usize, bits: u32) -> Result<Option<ProbeValue>> {
    probe_at(Kind::Taylor(SineTaylor::new(order)?), config, x, t, bits)
}

/// `Σ_i Re S_N(t/(λ_i − x))²`, escalating precision until the sign is
/// certified; fails with [`Error::Precision`] at the cap.
pub fn taylor_sq_sum_with(
    config: &ZeroConfig,
    x: f64,
    t: f64,
    order: usize,
    policy: &PrecisionPolicy,
) -> Result<ProbeValue> {
    probe_escalating(Kind::Taylor(SineTaylor::new(order)?), config, x, t, policy)
}

pub fn taylor_sq_sum(config: &ZeroConfig, x: f64, t: f64, order: usize) -> Result<ProbeValue> {
    taylor_sq_sum_with(config, x, t, order, &PrecisionPolicy::default())
}

/// `t̃ = π²c(1+κ²)^{3/2}(√(1+κ²)+κ)⁶`.
pub fn witness_t(c: f64, kappa: f64) -> Result<f64> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(domain("spacing c must be positive and finite"));
    }
    if !(kappa >= 0.0) || !kappa.is_finite() {
        return Err(domain("aperture κ must be finite and non-negative"));
    }
    let s = libm::sqrt(1.0 + kappa * kappa);
    Ok(PI * PI * c * s * s * s * libm::pow(s + kappa, 6.0))
}

/// `⌈ln(4π²/3 + 4)/ln 2 + (3t/(c·ln 2))·max{1, 1/κ}⌉`.
pub fn witness_n(c: f64, kappa: f64, t: f64) -> Result<u64> {
    if !(c > 0.0 && kappa > 0.0 && t > 0.0) || !(c.is_finite() && kappa.is_finite() && t.is_finite()) {
        return Err(domain("witness order needs positive finite c, κ and t"));
    }
    let v = libm::log(4.0 * PI * PI / 3.0 + 4.0) / LN_2 + 3.0 * t / (LN_2 * c) * (1.0f64).max(1.0 / kappa);
    if v >= u64::MAX as f64 {
        return Err(domain("witness order exceeds the integer range"));
    }
    Ok(libm::ceil(v) as u64)
}

/// `ln` of `2|z|^{N+1}e^{2R}/(2R)^{N+1}`.
pub fn ln_taylor_remainder_bound(z_mag: f64, r: f64, order: usize) -> Result<f64> {
    if !(r > 0.0) || !(z_mag >= 0.0) {
        return Err(domain("remainder bound needs R > 0 and |z| ≥ 0"));
    }
    if z_mag > r {
        return Err(domain("remainder bound needs |z| ≤ R"));
    }
    if z_mag == 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    let m = (order + 1) as f64;
    Ok(LN_2 + m * libm::log(z_mag) + 2.0 * r - m * libm::log(2.0 * r))
}

/// `|sin z − S_N(z)| ≤ 2|z|^{N+1}e^{2R}/(2R)^{N+1}` for `|z| ≤ R`.
pub fn taylor_remainder_bound(z_mag: f64, r: f64, order: usize) -> Result<f64> {
    ln_taylor_remainder_bound(z_mag, r, order).map(libm::exp)
}

/// Remainder bound with the radius `R ≥ |z|` that minimises it.
pub fn best_remainder_bound(z_mag: f64, order: usize) -> f64 {
    if z_mag == 0.0 {
        return 0.0;
    }
    let r = z_mag.max((order + 1) as f64 / 2.0);
    taylor_remainder_bound(z_mag, r, order).unwrap_or(f64::INFINITY)
}

/// `Σ_i (|sin w_i| + |S_N(w_i)|)·rem(|w_i|)` with `w_i = t/(λ_i − x)`: bounds
/// the gap between the Taylor and the sine probes over the listed zeros.
pub fn consistency_bound(config: &ZeroConfig, x: f64, t: f64, order: usize) -> Result<f64> {
    let s = SineTaylor::new(order)?;
    check_admissible(config, x, &CoeffOptions::default())?;
    let mut total = 0.0;
    for (w, m) in reduced_args(config, x, t) {
        let r = w.norm();
        // |sin w| ≤ cosh|Im w|·… ≤ cosh|w|; |S_N(w)| ≤ majorant
        let mag = libm::cosh(r) + libm::exp(s.ln_majorant(r));
        total += m * mag * best_remainder_bound(r, order);
    }
    Ok(total)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProbeMode {
    SinSum,
    TaylorSum,
}

impl ProbeMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ProbeMode::SinSum => "SinSum",
            ProbeMode::TaylorSum => "TaylorSum",
        }
    }

    /// Value a full sum must fall below to contradict membership.
    pub fn threshold(self) -> f64 {
        match self {
            ProbeMode::SinSum => -1.0,
            ProbeMode::TaylorSum => 0.0,
        }
    }
}

/// A certified disproof witness.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Witness {
    pub x: f64,
    pub t: f64,
    /// Taylor order; `None` stands for the full sine.
    pub order: Option<usize>,
    pub value: f64,
    pub error_bound: f64,
    pub tail_upper: f64,
    pub kind: ProbeMode,
    pub certified: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchOptions {
    /// Log-spaced `t` samples per candidate `x`.
    pub t_samples: usize,
    pub refine_steps: usize,
    pub precision: PrecisionPolicy,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { t_samples: 48, refine_steps: 24, precision: PrecisionPolicy::default() }
    }
}

/// Candidate abscissae: real parts of the non-real zeros with
/// `|Im λ| < b + (d − b)/2`, `d = √(b² + c²)`, ascending and deduplicated.
pub fn witness_candidates(config: &ZeroConfig) -> Vec<f64> {
    let rep = spacing_report(config);
    let Extended::Finite(b) = rep.b else { return Vec::new() };
    let cut = match rep.c {
        Extended::Finite(c) if c > 0.0 => {
            let d = libm::sqrt(b * b + c * c);
            b + 0.5 * (d - b)
        }
        _ => f64::INFINITY,
    };
    let mut xs: Vec<f64> =
        config.zeros().iter().filter(|z| !z.is_real() && (z.im.abs() < cut || z.im.abs() == b)).map(|z| z.re).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    xs
}

/// Range `[b/10, t_max]` of probed `t`: `t_max` is `witness_t(c, κ)` (or `10b`
/// when `c` is infinite), capped at `300b` so that binary64 probes do not
/// overflow.
pub fn witness_t_range(config: &ZeroConfig) -> Option<(f64, f64)> {
    let rep = spacing_report(config);
    let b = rep.b.finite()?;
    let scale_t = match (rep.c, rep.kappa) {
        (Extended::Finite(c), Extended::Finite(k)) if c > 0.0 => witness_t(c, k).ok(),
        _ => None,
    };
    let hi = scale_t.unwrap_or(10.0 * b).min(300.0 * b).max(b);
    Some((0.1 * b, hi))
}

/// Searches for a certified witness: the most negative certified value over
/// the candidate grid, refined by golden-section search. Ties prefer smaller
/// `t`, then smaller `x`.
pub fn witness_search(config: &ZeroConfig, mode: ProbeMode, order: Option<usize>) -> Option<Witness> {
    witness_search_with(config, mode, order, &SearchOptions::default())
}

pub fn witness_search_with(
    config: &ZeroConfig,
    mode: ProbeMode,
    order: Option<usize>,
    opts: &SearchOptions,
) -> Option<Witness> {
    let (lo, hi) = witness_t_range(config)?;
    let mut best: Option<Witness> = None;
    for x in witness_candidates(config) {
        if let Some(w) = search_at(config, mode, order, x, lo, hi, opts) {
            if better(&w, best.as_ref()) {
                best = Some(w);
            }
        }
    }
    best
}

fn better(w: &Witness, best: Option<&Witness>) -> bool {
    match best {
        None => true,
        Some(b) => w.value < b.value || w.value == b.value && (w.t, w.x) < (b.t, b.x),
    }
}

/// Certified probe at one `(x, t)`, or `None` when not certified below the
/// mode's threshold.
pub fn probe_witness(
    config: &ZeroConfig,
    mode: ProbeMode,
    order: Option<usize>,
    x: f64,
    t: f64,
    policy: &PrecisionPolicy,
) -> Option<Witness> {
    let p = match mode {
        ProbeMode::SinSum => sin_sq_sum_with(config, x, t, policy).ok()?,
        ProbeMode::TaylorSum => taylor_sq_sum_with(config, x, t, order.unwrap_or(1), policy).ok()?,
    };
    let certified = p.certified_below(mode.threshold());
    certified.then_some(Witness {
        x,
        t,
        order: match mode {
            ProbeMode::SinSum => None,
            ProbeMode::TaylorSum => Some(order.unwrap_or(1)),
        },
        value: p.value,
        error_bound: p.error_bound,
        tail_upper: p.tail_upper,
        kind: mode,
        certified,
    })
}

fn search_at(
    config: &ZeroConfig,
    mode: ProbeMode,
    order: Option<usize>,
    x: f64,
    lo: f64,
    hi: f64,
    opts: &SearchOptions,
) -> Option<Witness> {
    let n = opts.t_samples.max(2);
    let ts: Vec<f64> = (0..n).map(|k| lo * libm::pow(hi / lo, k as f64 / (n - 1) as f64)).collect();
    let mut best: Option<(usize, Witness)> = None;
    for (k, &t) in ts.iter().enumerate() {
        if let Some(w) = probe_witness(config, mode, order, x, t, &opts.precision) {
            if better(&w, best.as_ref().map(|b| &b.1)) {
                best = Some((k, w));
            }
        }
    }
    let (k, mut found) = best?;
    // golden-section refinement around the best sample
    let (mut a, mut b) = (ts[k.saturating_sub(1)], ts[(k + 1).min(n - 1)]);
    let g = 0.5 * (libm::sqrt(5.0) - 1.0);
    for _ in 0..opts.refine_steps {
        let c = b - g * (b - a);
        let d = a + g * (b - a);
        let vc = probe_witness(config, mode, order, x, c, &opts.precision);
        let vd = probe_witness(config, mode, order, x, d, &opts.precision);
        let fc = vc.map_or(f64::INFINITY, |w| w.value);
        let fd = vd.map_or(f64::INFINITY, |w| w.value);
        for w in [vc, vd].into_iter().flatten() {
            if better(&w, Some(&found)) {
                found = w;
            }
        }
        if fc <= fd {
            b = d;
        } else {
            a = c;
        }
    }
    Some(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeros::{TailModel, Zero};
    use alloc::vec;

    fn pair(h: f64) -> ZeroConfig {
        ZeroConfig::from_zeros([Zero::complex(0.0, h), Zero::complex(0.0, -h)]).unwrap()
    }

    #[test]
    fn taylor_coefficients() {
        let s = SineTaylor::new(7).unwrap();
        assert_eq!(s.coefficient(1), 1.0);
        assert_eq!(s.coefficient(2), 0.0);
        assert_eq!(s.coefficient(3), -1.0 / 6.0);
        assert_eq!(s.coefficient(5), 1.0 / 120.0);
        assert_eq!(s.coefficient(9), 0.0);
        let w = Complex64::new(0.3, -0.2);
        let direct: Complex64 = (1..=7).map(|k| w.powu(k as u32) * s.coefficient(k)).sum();
        assert!((s.eval(w) - direct).norm() < 1e-16);
        assert_eq!(s.eval(Complex64::new(0.0, 0.0)), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn sin_sum_examples() {
        let v = sin_sq_sum(&pair(1.0), 0.0, 1.0).unwrap();
        let want = -2.0 * libm::sinh(1.0).powi(2);
        assert!((v.value - want).abs() <= v.error_bound.max(1e-15));
        assert!((v.value + 2.76219).abs() < 1e-5);
        let v = sin_sq_sum(&ZeroConfig::real(&[2.0]).unwrap(), 0.0, PI).unwrap();
        assert!((v.value - 1.0).abs() < 1e-15);
        // parity in t
        let c = ZeroConfig::from_zeros([Zero::complex(1.0, 0.4), Zero::complex(1.0, -0.4), Zero::real(3.0)]).unwrap();
        let a = sin_sq_sum(&c, 0.2, 1.7).unwrap().value;
        let b = sin_sq_sum(&c, 0.2, -1.7).unwrap().value;
        assert!((a - b).abs() < 1e-14);
    }

    #[test]
    fn taylor_sum_examples() {
        let v = taylor_sq_sum(&pair(1.0), 0.0, 1.0, 1).unwrap();
        assert_eq!(v.value, -2.0);
        let v = taylor_sq_sum(&ZeroConfig::real(&[2.0]).unwrap(), 0.0, 1.0, 3).unwrap();
        assert!((v.value - (0.5f64 - 1.0 / 48.0).powi(2)).abs() < 1e-16);
    }

    #[test]
    fn mp_path_agrees_with_f64() {
        let c = ZeroConfig::from_zeros([Zero::complex(1.0, 0.4), Zero::complex(1.0, -0.4), Zero::real(3.0)]).unwrap();
        for bits in [128, 256] {
            let a = sin_sq_sum_at(&c, 0.2, 1.7, 53).unwrap().unwrap();
            let b = sin_sq_sum_at(&c, 0.2, 1.7, bits).unwrap().unwrap();
            assert!((a.value - b.value).abs() <= a.error_bound + b.error_bound);
            let a = taylor_sq_sum_at(&c, 0.2, 1.7, 9, 53).unwrap().unwrap();
            let b = taylor_sq_sum_at(&c, 0.2, 1.7, 9, bits).unwrap().unwrap();
            assert!((a.value - b.value).abs() <= a.error_bound + b.error_bound);
            assert!(b.error_bound < 1e-30);
        }
    }

    #[test]
    fn cancellation_forces_escalation() {
        // S_121(30) ≈ sin 30 while the majorant is sinh 30 ≈ 5e12
        let c = ZeroConfig::real(&[1.0]).unwrap();
        let v = taylor_sq_sum(&c, 0.0, 30.0, 121).unwrap();
        assert!(v.bits > 53);
        assert!(v.sign_certified());
        assert!((v.value - libm::sin(30.0).powi(2)).abs() < 1e-12);
    }

    #[test]
    fn precision_ladder() {
        assert_eq!(PrecisionPolicy::default().ladder(), vec![53, 128, 256, 512, 1024, 2048, 4096]);
        assert_eq!(PrecisionPolicy { start_bits: 300, max_bits: 1000 }.ladder(), vec![300, 600, 1000]);
        assert_eq!(PrecisionPolicy { start_bits: 53, max_bits: 53 }.ladder(), vec![53]);
    }

    #[test]
    fn witness_formulas() {
        assert!((witness_t(1.0, 0.0).unwrap() - PI * PI).abs() < 1e-12);
        let t11 = witness_t(1.0, 1.0).unwrap();
        assert!((witness_t(2.0, 1.0).unwrap() - 2.0 * t11).abs() < 1e-9);
        assert!(witness_t(0.0, 1.0).is_err());
        assert_eq!(witness_n(1.0, 1.0, 1.0).unwrap(), 9);
        assert_eq!(witness_n(1.0, 2.0, 1.0).unwrap(), witness_n(1.0, 1.0, 1.0).unwrap());
    }

    #[test]
    fn remainder_examples() {
        assert_eq!(taylor_remainder_bound(0.0, 1.0, 5).unwrap(), 0.0);
        let b = taylor_remainder_bound(1.0, 1.0, 5).unwrap();
        assert!((b - 2.0 * libm::exp(2.0) / 64.0).abs() < 1e-14);
        assert!((libm::sin(1.0) - (1.0 - 1.0 / 6.0 + 1.0 / 120.0)).abs() <= b);
        assert!(taylor_remainder_bound(2.0, 1.0, 5).is_err());
    }

    #[test]
    fn witness_search_examples() {
        let w = witness_search(&pair(1.0), ProbeMode::SinSum, None).unwrap();
        assert_eq!(w.x, 0.0);
        assert!(w.value <= -2.0 * libm::sinh(1.0).powi(2));
        assert!(witness_search(&ZeroConfig::real(&[1.0, 2.0]).unwrap(), ProbeMode::SinSum, None).is_none());

        let mut zs = vec![Zero::complex(0.0, 0.5), Zero::complex(0.0, -0.5)];
        for m in 1..=100 {
            zs.push(Zero::real(m as f64));
            zs.push(Zero::real(-(m as f64)));
        }
        let lattice =
            ZeroConfig::from_zeros(zs).unwrap().with_tail(Some(TailModel::mirrored(101.0, 1.0).unwrap())).unwrap();
        let w = witness_search(&lattice, ProbeMode::TaylorSum, Some(1)).unwrap();
        assert_eq!(w.x, 0.0);
        let a1 = -8.0 + PI * PI / 3.0;
        assert!((w.value / (w.t * w.t) - a1).abs() < 0.03);
    }
}
