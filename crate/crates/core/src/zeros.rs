//! Zero configurations of genus-one Hadamard products and their spacing
//! statistics.
//!
//! A [`ZeroConfig`] lists the zeros `λ_i` (with multiplicity) in increasing
//! order of real part, ties by imaginary part, together with the order `ell` of
//! the zero at the origin, the linear exponent `d2` and an optional
//! [`TailModel`] describing real zeros beyond the listed ones.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::extended::Extended;

/// A single zero `re + i·im` with multiplicity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Zero {
    pub re: f64,
    pub im: f64,
    pub multiplicity: u32,
}

impl Zero {
    pub fn new(re: f64, im: f64, multiplicity: u32) -> Result<Self> {
        if multiplicity == 0 {
            return Err(domain("zero multiplicity must be at least 1"));
        }
        if !re.is_finite() || !im.is_finite() {
            return Err(domain("zero coordinates must be finite"));
        }
        // normalise -0.0 so conjugacy checks are exact
        let im = if im == 0.0 { 0.0 } else { im };
        let re = if re == 0.0 { 0.0 } else { re };
        Ok(Zero { re, im, multiplicity })
    }

    pub fn real(re: f64) -> Self {
        Zero { re: if re == 0.0 { 0.0 } else { re }, im: 0.0, multiplicity: 1 }
    }

    pub fn complex(re: f64, im: f64) -> Self {
        Zero::new(re, im, 1).expect("finite coordinates")
    }

    pub fn is_real(&self) -> bool {
        self.im == 0.0
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    /// Exact conjugacy test on stored values.
    pub fn is_conjugate_of(&self, other: &Zero) -> bool {
        self.re == other.re && self.im == -other.im
    }

    fn order(&self, other: &Zero) -> Ordering {
        self.re.total_cmp(&other.re).then(self.im.total_cmp(&other.im))
    }
}

/// Shape of the unlisted tail of zeros.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailKind {
    None,
    /// Real zeros at `start` and beyond, successive gaps at least `gap`.
    ArithmeticReal,
    /// As `ArithmeticReal`, plus the mirror image at `-start` and below.
    MirroredArithmeticReal,
}

/// Description of the zeros that are not listed explicitly.
///
/// Only real tails are representable: no certified bound exists for complex
/// tails, and real tails never influence the height.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TailModel {
    pub kind: TailKind,
    pub start: f64,
    pub gap: f64,
}

impl TailModel {
    pub fn none() -> Self {
        TailModel { kind: TailKind::None, start: 0.0, gap: 0.0 }
    }

    pub fn arithmetic(start: f64, gap: f64) -> Result<Self> {
        let t = TailModel { kind: TailKind::ArithmeticReal, start, gap };
        t.validate()?;
        Ok(t)
    }

    pub fn mirrored(start: f64, gap: f64) -> Result<Self> {
        let t = TailModel { kind: TailKind::MirroredArithmeticReal, start, gap };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        match self.kind {
            TailKind::None => Ok(()),
            TailKind::ArithmeticReal | TailKind::MirroredArithmeticReal => {
                if !(self.gap > 0.0) || !self.gap.is_finite() || !self.start.is_finite() {
                    return Err(domain("tail gap must be positive and finite"));
                }
                if self.kind == TailKind::MirroredArithmeticReal && !(self.start > 0.0) {
                    return Err(domain("mirrored tail needs a positive start"));
                }
                Ok(())
            }
        }
    }

    /// Distances from `x` to the first omitted zero on each side that carries
    /// a tail. Fails when `x` lies inside the tail region, where omitted zeros
    /// could sit arbitrarily close.
    pub fn omitted_distances(&self, x: f64) -> Result<Vec<f64>> {
        let mut out = Vec::new();
        match self.kind {
            TailKind::None => {}
            TailKind::ArithmeticReal => {
                if !(x < self.start) {
                    return Err(domain("x lies inside the unlisted tail of zeros"));
                }
                out.push(self.start - x);
            }
            TailKind::MirroredArithmeticReal => {
                if !(x.abs() < self.start) {
                    return Err(domain("x lies inside the unlisted tail of zeros"));
                }
                out.push(self.start - x);
                out.push(self.start + x);
            }
        }
        Ok(out)
    }

    pub fn is_some(&self) -> bool {
        self.kind != TailKind::None
    }
}

/// A finite, ordered model of a Hadamard product's zero multiset.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroConfig {
    zeros: Vec<Zero>,
    ell: u32,
    d2: f64,
    tail: Option<TailModel>,
}

/// Builder for [`ZeroConfig`] with an optional snap tolerance for noisy data.
#[derive(Clone, Debug, Default)]
pub struct ConfigBuilder {
    zeros: Vec<Zero>,
    ell: u32,
    d2: f64,
    tail: Option<TailModel>,
    snap: f64,
}

impl ConfigBuilder {
    pub fn zero(mut self, z: Zero) -> Self {
        self.zeros.push(z);
        self
    }

    pub fn zeros(mut self, zs: impl IntoIterator<Item = Zero>) -> Self {
        self.zeros.extend(zs);
        self
    }

    pub fn ell(mut self, ell: u32) -> Self {
        self.ell = ell;
        self
    }

    pub fn d2(mut self, d2: f64) -> Self {
        self.d2 = d2;
        self
    }

    pub fn tail(mut self, tail: TailModel) -> Self {
        self.tail = if tail.is_some() { Some(tail) } else { None };
        self
    }

    /// Imaginary parts within `tol` of zero become exactly zero, and pairs
    /// within `tol` of being conjugate are made exactly conjugate.
    pub fn snap_tolerance(mut self, tol: f64) -> Self {
        self.snap = tol;
        self
    }

    pub fn build(self) -> Result<ZeroConfig> {
        let mut zeros = Vec::with_capacity(self.zeros.len());
        for z in self.zeros {
            zeros.push(Zero::new(z.re, z.im, z.multiplicity)?);
        }
        if !self.d2.is_finite() {
            return Err(domain("d2 must be finite"));
        }
        if let Some(t) = &self.tail {
            t.validate()?;
        }
        if self.snap > 0.0 {
            snap(&mut zeros, self.snap);
        }
        Ok(ZeroConfig { zeros: normalise(zeros), ell: self.ell, d2: self.d2, tail: self.tail })
    }
}

fn snap(zeros: &mut [Zero], tol: f64) {
    for z in zeros.iter_mut() {
        if z.im.abs() <= tol {
            z.im = 0.0;
        }
    }
    let n = zeros.len();
    for i in 0..n {
        if zeros[i].im <= 0.0 {
            continue;
        }
        for j in 0..n {
            if i == j || zeros[j].im >= 0.0 {
                continue;
            }
            let (a, b) = (zeros[i], zeros[j]);
            if (a.re - b.re).abs() <= tol && (a.im + b.im).abs() <= tol && !a.is_conjugate_of(&b) {
                let re = 0.5 * (a.re + b.re);
                let im = 0.5 * (a.im - b.im);
                zeros[i].re = re;
                zeros[i].im = im;
                zeros[j].re = re;
                zeros[j].im = -im;
            }
        }
    }
}

/// Sort and merge identical entries into multiplicities.
fn normalise(mut zeros: Vec<Zero>) -> Vec<Zero> {
    zeros.sort_by(|a, b| a.order(b));
    let mut out: Vec<Zero> = Vec::with_capacity(zeros.len());
    for z in zeros {
        match out.last_mut() {
            Some(last) if last.re == z.re && last.im == z.im => last.multiplicity += z.multiplicity,
            _ => out.push(z),
        }
    }
    out
}

impl ZeroConfig {
    pub fn builder() -> ConfigBuilder {
        ConfigBuilder::default()
    }

    /// Configuration with `ell = 0`, `d2 = 0` and no tail.
    pub fn from_zeros(zeros: impl IntoIterator<Item = Zero>) -> Result<Self> {
        Self::builder().zeros(zeros).build()
    }

    /// Simple real zeros at the given abscissae.
    pub fn real(values: &[f64]) -> Result<Self> {
        Self::from_zeros(values.iter().map(|&v| Zero::real(v)))
    }

    pub fn zeros(&self) -> &[Zero] {
        &self.zeros
    }

    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn d2(&self) -> f64 {
        self.d2
    }

    pub fn tail(&self) -> Option<&TailModel> {
        self.tail.as_ref()
    }

    pub fn with_tail(mut self, tail: Option<TailModel>) -> Result<Self> {
        if let Some(t) = &tail {
            t.validate()?;
        }
        self.tail = tail.filter(TailModel::is_some);
        Ok(self)
    }

    /// Checks the `f(0) ≠ 0` hypothesis used by the closed-form estimates.
    pub fn require_nonvanishing_at_origin(&self) -> Result<()> {
        if self.ell != 0 || self.zeros.iter().any(|z| z.re == 0.0 && z.im == 0.0) {
            return Err(domain("configuration vanishes at the origin (ell > 0 or a listed zero at 0)"));
        }
        Ok(())
    }

    pub fn has_nonreal_zero(&self) -> bool {
        self.zeros.iter().any(|z| !z.is_real())
    }

    /// Every zero multiplied by `s > 0`; the tail is scaled alongside.
    pub fn scaled(&self, s: f64) -> Result<Self> {
        if !(s > 0.0) {
            return Err(domain("scale factor must be positive"));
        }
        let zeros = self.zeros.iter().map(|z| Zero { re: z.re * s, im: z.im * s, ..*z });
        let tail = self.tail.map(|t| TailModel { start: t.start * s, gap: t.gap * s, ..t });
        let mut b = Self::builder().zeros(zeros).ell(self.ell).d2(self.d2);
        if let Some(t) = tail {
            b = b.tail(t);
        }
        b.build()
    }

    /// Every zero shifted by the real `r`. Mirrored tails are not translation
    /// invariant and are dropped.
    pub fn translated(&self, r: f64) -> Result<Self> {
        let zeros = self.zeros.iter().map(|z| Zero { re: z.re + r, ..*z });
        let mut b = Self::builder().zeros(zeros).ell(self.ell).d2(self.d2);
        if let Some(t) = self.tail.filter(|t| t.kind == TailKind::ArithmeticReal) {
            b = b.tail(TailModel { start: t.start + r, ..t });
        }
        b.build()
    }

    /// The first `count` listed zeros (no tail).
    pub fn truncated(&self, count: usize) -> Self {
        ZeroConfig { zeros: self.zeros.iter().take(count).copied().collect(), ell: self.ell, d2: self.d2, tail: None }
    }

    /// Abscissae of real zeros (each once).
    pub fn real_abscissae(&self) -> impl Iterator<Item = f64> + '_ {
        self.zeros.iter().filter(|z| z.is_real()).map(|z| z.re)
    }
}

/// True iff every non-real zero has a conjugate partner of equal multiplicity.
pub fn validate_conjugate_symmetry(config: &ZeroConfig) -> bool {
    let zs = config.zeros();
    zs.iter().filter(|z| !z.is_real()).all(|z| {
        let target = Zero { re: z.re, im: -z.im, multiplicity: z.multiplicity };
        zs.binary_search_by(|probe| probe.order(&target)).map(|i| zs[i].multiplicity == z.multiplicity).unwrap_or(false)
    })
}

/// Spacing statistics of a configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct SpacingReport {
    pub c: Extended,
    pub b: Extended,
    pub kappa: Extended,
    pub c_pair: Option<(usize, usize)>,
    pub b_index: Option<usize>,
    /// Two distinct, non-conjugate zeros share a real part (forces `c = 0`).
    pub coincident_abscissae: bool,
}

/// Spacing constant `c` and the lexicographically smallest achieving pair.
///
/// `c = 0` for any repeated zero. Otherwise the infimum of `|Re(λ_i − λ_j)|`
/// over pairs that are not conjugate to each other, capped by the tail's gap
/// lower bound when a tail is present.
pub fn spacing_constant(config: &ZeroConfig) -> (Extended, Option<(usize, usize)>) {
    let (c, pair, _) = spacing_scan(config);
    (c, pair)
}

fn spacing_scan(config: &ZeroConfig) -> (Extended, Option<(usize, usize)>, bool) {
    let zs = config.zeros();
    if zs.iter().any(|z| z.multiplicity > 1) {
        return (Extended::Finite(0.0), None, false);
    }
    // groups of equal real part; only adjacent groups can realise the minimum
    let mut groups: Vec<(usize, usize)> = Vec::new();
    let mut start = 0;
    for i in 1..=zs.len() {
        if i == zs.len() || zs[i].re != zs[start].re {
            if start < zs.len() {
                groups.push((start, i));
            }
            start = i;
        }
    }
    let mut coincident: Option<(usize, usize)> = None;
    for &(lo, hi) in &groups {
        'outer: for i in lo..hi {
            for j in i + 1..hi {
                if !zs[i].is_conjugate_of(&zs[j]) {
                    coincident = Some((i, j));
                    break 'outer;
                }
            }
        }
        if coincident.is_some() {
            break;
        }
    }
    if let Some(pair) = coincident {
        return (Extended::Finite(0.0), Some(pair), true);
    }
    let mut best: Option<(f64, (usize, usize))> = None;
    for w in groups.windows(2) {
        let (a, b) = (w[0].0, w[1].0);
        let gap = (zs[b].re - zs[a].re).abs();
        match best {
            Some((g, _)) if gap >= g => {}
            _ => best = Some((gap, (a, b))),
        }
    }
    let tail_gap = config.tail().filter(|t| t.is_some()).map(|t| t.gap);
    match (best, tail_gap) {
        (Some((g, _)), Some(tg)) if tg < g => (Extended::Finite(tg), None, false),
        (Some((g, p)), _) => (Extended::Finite(g), Some(p), false),
        (None, Some(tg)) => (Extended::Finite(tg), None, false),
        (None, None) => (Extended::Infinite, None, false),
    }
}

/// Height `b`: infimum of `|Im λ_i|` over non-real zeros, infinite when all
/// listed zeros are real. Returns the first achieving index.
pub fn height(config: &ZeroConfig) -> (Extended, Option<usize>) {
    let mut best: Option<(f64, usize)> = None;
    for (i, z) in config.zeros().iter().enumerate() {
        if z.is_real() {
            continue;
        }
        let h = z.im.abs();
        match best {
            Some((b, _)) if h >= b => {}
            _ => best = Some((h, i)),
        }
    }
    match best {
        Some((b, i)) => (Extended::Finite(b), Some(i)),
        None => (Extended::Infinite, None),
    }
}

/// Aperture `κ = b / c`, infinite when `c = 0` or `b = ∞`; zero when only the
/// spacing is infinite.
pub fn aperture(c: Extended, b: Extended) -> Extended {
    match (c, b) {
        (_, Extended::Infinite) => Extended::Infinite,
        (Extended::Finite(0.0), _) => Extended::Infinite,
        (Extended::Infinite, Extended::Finite(_)) => Extended::Finite(0.0),
        (Extended::Finite(c), Extended::Finite(b)) => Extended::Finite(b / c),
    }
}

pub fn spacing_report(config: &ZeroConfig) -> SpacingReport {
    let (c, c_pair, coincident) = spacing_scan(config);
    let (b, b_index) = height(config);
    SpacingReport { c, b, kappa: aperture(c, b), c_pair, b_index, coincident_abscissae: coincident }
}

/// Largest `C ≥ 0` with `Re(λ_{j+1} − λ_j) ≥ C·|Re λ_j|^γ` over consecutive
/// zeros that are not a conjugate pair. Repeated zeros give `C = 0`; no
/// admissible pair gives `C = ∞`.
pub fn strong_spacing_fit(config: &ZeroConfig, gamma: f64) -> Result<Extended> {
    let zs = config.zeros();
    if let Some(z) = zs.iter().find(|z| !(z.re > 0.0)) {
        return Err(domain(alloc::format!("strong spacing needs positive real parts, found {}", z.re)));
    }
    if zs.iter().any(|z| z.multiplicity > 1) {
        return Ok(Extended::Finite(0.0));
    }
    let mut best = Extended::Infinite;
    for w in zs.windows(2) {
        if w[1].is_conjugate_of(&w[0]) {
            continue;
        }
        let gap = w[1].re - w[0].re;
        if gap <= 0.0 {
            return Ok(Extended::Finite(0.0));
        }
        let ratio = gap / libm::pow(w[0].re.abs(), gamma);
        if Extended::Finite(ratio) < best {
            best = Extended::Finite(ratio);
        }
    }
    Ok(best)
}

/// Zeros of the iterated function `Λ_n(z) = Λ_{n−1}(√z)·Λ_{n−1}(−√z)`: each
/// `λ` becomes `λ^(2^n)`. `ell` and `d2` are carried over unchanged. A
/// one-sided tail with positive start is mapped to a valid tail of the squares;
/// other tails are dropped.
pub fn power_zeros(config: &ZeroConfig, n: u32) -> Result<ZeroConfig> {
    if n == 0 {
        return Err(domain("power exponent n must be positive"));
    }
    let zeros = config.zeros().iter().map(|z| {
        let mut v = z.value();
        for _ in 0..n {
            v = v * v;
        }
        Zero { re: v.re, im: if v.im == 0.0 { 0.0 } else { v.im }, multiplicity: z.multiplicity }
    });
    let mut b = ZeroConfig::builder().zeros(zeros).ell(config.ell()).d2(config.d2());
    if let Some(t) = config.tail().filter(|t| t.kind == TailKind::ArithmeticReal && t.start > 0.0) {
        let (mut start, mut gap) = (t.start, t.gap);
        for _ in 0..n {
            // (s + kg)² has successive gaps ≥ g(2s + g)
            gap *= 2.0 * start + gap;
            start *= start;
        }
        b = b.tail(TailModel { kind: TailKind::ArithmeticReal, start, gap });
    }
    b.build()
}
