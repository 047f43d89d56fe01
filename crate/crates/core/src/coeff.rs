//! Power-series coefficients `a_n(x) = Σ_i 1/(λ_i − x)^(n+1)` of the negative
//! log-derivative, with certified tail bounds and a tracked round-off budget.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::mp::{MpComplex, MpContext};
use crate::zeros::{TailKind, TailModel, ZeroConfig};

const UNIT: f64 = f64::EPSILON * 0.5;

/// One coefficient together with its error budgets.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoeffValue {
    pub value: Complex64,
    /// Bound on the magnitude of the omitted tail; zero without a tail model.
    pub tail_radius: f64,
    /// Bound on the floating-point error of `value`.
    pub roundoff: f64,
    /// `Σ |term|` over the listed zeros.
    pub abs_sum: f64,
    pub n: usize,
    pub x: f64,
}

impl CoeffValue {
    /// Budget against which `|Im value|` is checked for conjugate-closed input.
    pub fn realness_budget(&self) -> f64 {
        self.roundoff.max(1e-12 * self.abs_sum)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoeffOptions {
    /// Pole-exclusion radius is `pole_factor · max(1, |x|)`.
    pub pole_factor: f64,
}

impl Default for CoeffOptions {
    fn default() -> Self {
        CoeffOptions { pole_factor: 1e-6 }
    }
}

impl CoeffOptions {
    pub fn pole_radius(&self, x: f64) -> f64 {
        self.pole_factor * x.abs().max(1.0)
    }
}

/// Fails with [`Error::Pole`] if a real zero (listed or the first omitted one)
/// lies within the exclusion radius of `x`.
pub fn check_admissible(config: &ZeroConfig, x: f64, opts: &CoeffOptions) -> Result<()> {
    if !x.is_finite() {
        return Err(domain("x must be finite"));
    }
    let radius = opts.pole_radius(x);
    for z in config.zeros() {
        if z.is_real() && (z.re - x).abs() < radius {
            return Err(Error::Pole { x, zero: z.re, radius });
        }
    }
    if let Some(t) = config.tail() {
        let ds = t.omitted_distances(x)?;
        for (d, sign) in ds.iter().zip([1.0, -1.0]) {
            if *d < radius {
                return Err(Error::Pole { x, zero: sign * t.start, radius });
            }
        }
    }
    Ok(())
}

/// `Σ_{k≥0} (d + k·gap)^-(n+1) ≤ d^-(n+1) + d^-n / (n·gap)` for one arithmetic
/// side of a real tail at distance `d` from `x`.
pub fn tail_bound(tail: &TailModel, _x: f64, n: usize, first_omitted_distance: f64) -> Result<f64> {
    if n == 0 {
        return Err(domain("coefficient index n must be at least 1"));
    }
    if !(first_omitted_distance > 0.0) {
        return Err(domain("first omitted distance must be positive"));
    }
    if tail.kind == TailKind::None {
        return Ok(0.0);
    }
    let d = first_omitted_distance;
    let p = n as i32;
    Ok(libm::pow(d, -(p + 1) as f64) + libm::pow(d, -p as f64) / (n as f64 * tail.gap))
}

fn tail_radius(config: &ZeroConfig, x: f64, n: usize) -> Result<f64> {
    let Some(t) = config.tail() else { return Ok(0.0) };
    let mut r = 0.0;
    for d in t.omitted_distances(x)? {
        r += tail_bound(t, x, n, d)?;
    }
    Ok(r)
}

/// Neumaier compensated accumulator.
#[derive(Clone, Copy, Debug, Default)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Reciprocals `1/(λ_i − x)` with multiplicities, in summation order:
/// largest distance first, so the dominant terms are added last.
fn reciprocals(config: &ZeroConfig, x: f64) -> Vec<(Complex64, f64, f64)> {
    let mut w: Vec<(f64, usize, Complex64, f64)> = config
        .zeros()
        .iter()
        .enumerate()
        .map(|(i, z)| {
            let d = Complex64::new(z.re - x, z.im);
            (d.norm(), i, d.inv(), z.multiplicity as f64)
        })
        .collect();
    w.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    w.into_iter().map(|(dist, _, r, m)| (r, m, dist)).collect()
}

/// `a_1(x) ..= a_{n_max}(x)` in one pass over the zeros.
pub fn coefficients(config: &ZeroConfig, x: f64, n_max: usize, opts: &CoeffOptions) -> Result<Vec<CoeffValue>> {
    if n_max == 0 {
        return Err(domain("coefficient index n must be at least 1"));
    }
    check_admissible(config, x, opts)?;
    let mut re = alloc::vec![Neumaier::default(); n_max];
    let mut im = alloc::vec![Neumaier::default(); n_max];
    let mut abs = alloc::vec![0.0f64; n_max];
    for (w, m, _) in reciprocals(config, x) {
        let mut p = w * w;
        for k in 0..n_max {
            if k > 0 {
                p *= w;
            }
            let t = p * m;
            re[k].add(t.re);
            im[k].add(t.im);
            abs[k] += t.norm();
        }
    }
    let mut out = Vec::with_capacity(n_max);
    for k in 0..n_max {
        let n = k + 1;
        let value = Complex64::new(re[k].total(), im[k].total());
        // each term carries ≲ (4n + 10)u relative error; Neumaier adds 2u|S|
        // plus second-order terms; the factor 2 absorbs both
        let roundoff = 2.0 * UNIT * ((4 * n + 10) as f64 * abs[k] * 1.0001 + 2.0 * value.norm());
        out.push(CoeffValue { value, tail_radius: tail_radius(config, x, n)?, roundoff, abs_sum: abs[k], n, x });
    }
    Ok(out)
}

pub fn coefficient_with(config: &ZeroConfig, x: f64, n: usize, opts: &CoeffOptions) -> Result<CoeffValue> {
    if n == 0 {
        return Err(domain("coefficient index n must be at least 1"));
    }
    check_admissible(config, x, opts)?;
    let mut re = Neumaier::default();
    let mut im = Neumaier::default();
    let mut abs = 0.0;
    for (w, m, _) in reciprocals(config, x) {
        let t = w.powu(n as u32 + 1) * m;
        re.add(t.re);
        im.add(t.im);
        abs += t.norm();
    }
    let value = Complex64::new(re.total(), im.total());
    let roundoff = 2.0 * UNIT * ((4 * n + 10) as f64 * abs * 1.0001 + 2.0 * value.norm());
    Ok(CoeffValue { value, tail_radius: tail_radius(config, x, n)?, roundoff, abs_sum: abs, n, x })
}

pub fn coefficient(config: &ZeroConfig, x: f64, n: usize) -> Result<CoeffValue> {
    coefficient_with(config, x, n, &CoeffOptions::default())
}

/// `a_n(x)` in `ctx.prec()`-bit arithmetic over the listed zeros, summed in
/// the same order as the binary64 path. The tail is not included.
pub fn coefficient_mp(config: &ZeroConfig, x: f64, n: usize, ctx: &MpContext) -> Result<MpComplex> {
    if n == 0 {
        return Err(domain("coefficient index n must be at least 1"));
    }
    check_admissible(config, x, &CoeffOptions::default())?;
    let xm = ctx.from_f64(x);
    let mut order: Vec<(f64, usize)> =
        config.zeros().iter().enumerate().map(|(i, z)| (Complex64::new(z.re - x, z.im).norm(), i)).collect();
    order.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut acc = MpComplex::zero();
    for (_, i) in order {
        let z = &config.zeros()[i];
        let d = MpComplex::new(ctx.sub(&ctx.from_f64(z.re), &xm), ctx.from_f64(z.im));
        let w = ctx.c_recip(&d);
        let mut p = w.clone();
        for _ in 0..n {
            p = ctx.c_mul(&p, &w);
        }
        let p = ctx.c_scale(&p, &ctx.from_f64(z.multiplicity as f64));
        acc = ctx.c_add(&acc, &p);
    }
    Ok(acc)
}
