//! Riemann zeta zero heights mapped to the zeros `λ_k = η_k²` of
//! `Λ(z) = Ξ(√z)`, their spacing statistics, hypothesis scans and
//! zero-free region curves.
//!
//! Zero indices in this module are 1-based, matching the tables.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::bounds::{corollary_region, RegionKind};
use crate::decimal::Decimal;
use crate::error::{domain, Error, Result};
use crate::hankel::{nlp_scan_with, ScanOptions, ScanReport};
use crate::zeros::{spacing_report, SpacingReport, TailModel, Zero, ZeroConfig};

/// Ordered zero heights `t_k` of `ρ_k = ½ + i·t_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZetaZeroTable {
    heights: Vec<Decimal>,
    source: String,
}

/// Indices `i` (0-based) with `heights[i] ≤ heights[i − 1]`.
pub fn monotonicity_violations(heights: &[Decimal]) -> Vec<usize> {
    (1..heights.len()).filter(|&i| heights[i] <= heights[i - 1]).collect()
}

impl ZetaZeroTable {
    /// A validated table: strictly increasing heights, all above 14.
    pub fn new(heights: Vec<Decimal>, source: impl Into<String>) -> Result<Self> {
        let floor = Decimal::from_parts(14.into(), 0);
        if let Some(h) = heights.iter().find(|h| **h <= floor) {
            return Err(domain(alloc::format!("height {h} is below the first zero")));
        }
        Self::synthetic(heights, source)
    }

    /// A table checked only for strict monotonicity, for synthetic data.
    pub fn synthetic(heights: Vec<Decimal>, source: impl Into<String>) -> Result<Self> {
        let bad = monotonicity_violations(&heights);
        if !bad.is_empty() {
            return Err(Error::Monotonicity(bad));
        }
        Ok(ZetaZeroTable { heights, source: source.into() })
    }

    pub fn heights(&self) -> &[Decimal] {
        &self.heights
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn len(&self) -> usize {
        self.heights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heights.is_empty()
    }

    /// The first `count` heights.
    pub fn truncated(&self, count: usize) -> Self {
        ZetaZeroTable { heights: self.heights.iter().take(count).cloned().collect(), source: self.source.clone() }
    }
}

/// `Λ` zeros derived from a table, with optional off-line overrides.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaConfig {
    config: ZeroConfig,
    heights: Vec<Decimal>,
    /// Exact `t_k²`.
    squares: Vec<Decimal>,
    /// `δ_k = ½ − σ_k` for overridden indices.
    deltas: BTreeMap<usize, f64>,
    heuristic_tail: bool,
}

impl LambdaConfig {
    pub fn config(&self) -> &ZeroConfig {
        &self.config
    }

    pub fn heights(&self) -> &[Decimal] {
        &self.heights
    }

    pub fn len(&self) -> usize {
        self.heights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heights.is_empty()
    }

    /// True when the tail model was extrapolated from the last gap.
    pub fn heuristic_tail(&self) -> bool {
        self.heuristic_tail
    }

    pub fn overrides(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.deltas.iter().map(|(&k, &d)| (k, 0.5 - d))
    }

    fn delta(&self, k: usize) -> f64 {
        self.deltas.get(&k).copied().unwrap_or(0.0)
    }

    /// `Re λ_k` (1-based); exact `t_k²` when `k` is not overridden.
    pub fn lambda_re(&self, k: usize) -> f64 {
        let d = self.delta(k);
        self.squares[k - 1].to_f64() - d * d
    }

    /// Exact `t_k²`.
    pub fn square(&self, k: usize) -> &Decimal {
        &self.squares[k - 1]
    }

    /// Zeros belonging to the first `count` heights, without a tail.
    pub fn prefix_config(&self, count: usize) -> ZeroConfig {
        let zeros = (1..=count.min(self.len())).flat_map(|k| self.zeros_of(k));
        ZeroConfig::builder().zeros(zeros).build().expect("finite zeros")
    }

    fn zeros_of(&self, k: usize) -> Vec<Zero> {
        let d = self.delta(k);
        let re = self.lambda_re(k);
        if d == 0.0 {
            return alloc::vec![Zero::real(re)];
        }
        let im = 2.0 * d * self.heights[k - 1].to_f64();
        alloc::vec![Zero::complex(re, im), Zero::complex(re, -im)]
    }
}

/// Maps heights to `λ_k = (t_k + i(½ − σ_k))²`, with `σ_k = ½` unless
/// overridden (1-based keys). Overridden zeros come with their conjugate.
/// With at least two heights the result carries an arithmetic real tail
/// continuing at the last observed gap; this tail is a heuristic.
pub fn to_lambda(table: &ZetaZeroTable, overrides: &BTreeMap<usize, f64>) -> Result<LambdaConfig> {
    let n = table.len();
    let mut deltas = BTreeMap::new();
    for (&k, &sigma) in overrides {
        if k == 0 || k > n {
            return Err(domain(alloc::format!("override index {k} outside 1..={n}")));
        }
        if !(sigma > 0.0 && sigma < 1.0) {
            return Err(domain(alloc::format!("sigma {sigma} outside (0, 1)")));
        }
        if sigma != 0.5 {
            deltas.insert(k, 0.5 - sigma);
        }
    }
    let squares: Vec<Decimal> = table.heights().iter().map(|t| t.mul(t)).collect();
    let mut lc = LambdaConfig {
        config: ZeroConfig::from_zeros([])?,
        heights: table.heights().to_vec(),
        squares,
        deltas,
        heuristic_tail: false,
    };
    let mut b = ZeroConfig::builder().zeros((1..=n).flat_map(|k| lc.zeros_of(k)));
    if n >= 2 {
        let gap = lc.lambda_re(n) - lc.lambda_re(n - 1);
        b = b.tail(TailModel::arithmetic(lc.lambda_re(n) + gap, gap)?);
        lc.heuristic_tail = true;
    }
    lc.config = b.build()?;
    Ok(lc)
}

/// One consecutive gap `Re(λ_{j+1} − λ_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GapRow {
    pub j: usize,
    pub t_j: Decimal,
    pub lambda_j: f64,
    pub gap: f64,
    /// `t_{j+1}² − t_j²` when neither index is overridden.
    pub exact_gap: Option<Decimal>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LambdaSpacing {
    pub report: SpacingReport,
    pub gaps: Vec<GapRow>,
    /// 1-based index of the smallest gap (first on ties).
    pub argmin: usize,
    pub min_gap: f64,
    pub min_gap_exact: Option<Decimal>,
}

/// Spacing statistics and the consecutive gap table over the first `limit`
/// heights.
pub fn lambda_spacing_report(lc: &LambdaConfig, limit: usize) -> Result<LambdaSpacing> {
    if lc.len() < 2 {
        return Err(domain("gap table needs at least two zeros"));
    }
    if limit < 2 || limit > lc.len() {
        return Err(domain(alloc::format!("limit must lie in 2..={}", lc.len())));
    }
    let mut gaps = Vec::with_capacity(limit - 1);
    for j in 1..limit {
        let exact = (lc.delta(j) == 0.0 && lc.delta(j + 1) == 0.0).then(|| lc.square(j + 1).sub(lc.square(j)));
        let gap = match &exact {
            Some(e) => e.to_f64(),
            None => {
                let (dj, dk) = (lc.delta(j), lc.delta(j + 1));
                lc.square(j + 1).sub(lc.square(j)).to_f64() - dk * dk + dj * dj
            }
        };
        gaps.push(GapRow { j, t_j: lc.heights[j - 1].clone(), lambda_j: lc.lambda_re(j), gap, exact_gap: exact });
    }
    let best = gaps
        .iter()
        .min_by(|a, b| match (&a.exact_gap, &b.exact_gap) {
            (Some(x), Some(y)) => x.cmp(y).then(a.j.cmp(&b.j)),
            _ => a.gap.total_cmp(&b.gap).then(a.j.cmp(&b.j)),
        })
        .expect("at least one gap");
    Ok(LambdaSpacing {
        report: spacing_report(&lc.prefix_config(limit)),
        argmin: best.j,
        min_gap: best.gap,
        min_gap_exact: best.exact_gap.clone(),
        gaps,
    })
}

/// `(t_{j+1} − t_j)(t_{j+1} + t_j)`, the factored form of a default gap.
pub fn factored_gap(table: &ZetaZeroTable, j: usize) -> Decimal {
    let (a, b) = (&table.heights()[j - 1], &table.heights()[j]);
    b.sub(a).mul(&b.add(a))
}

pub const TRUNCATION_CAVEAT: &str = "finitely many zeros with an extrapolated tail: verdicts are evidence, not proof";
pub const REAL_ZEROS_NOTE: &str =
    "all zeros are real, so every Hankel matrix is a Gram matrix and PSD verdicts are automatic";

#[derive(Clone, Debug, PartialEq)]
pub struct HrrhReport {
    pub scan: ScanReport,
    pub caveats: Vec<&'static str>,
}

/// Scan of the order-`order` hypothesis on the `Λ` zeros.
pub fn hrrh_check(lc: &LambdaConfig, order: usize, grid: &[f64], opts: &ScanOptions) -> Result<HrrhReport> {
    if order == 0 {
        return Err(domain("hypothesis order N must be at least 1"));
    }
    Ok(hrrh_report(lc, nlp_scan_with(lc.config(), order, grid, opts)))
}

/// Attaches the caveats that apply to `lc` to an existing scan.
pub fn hrrh_report(lc: &LambdaConfig, scan: ScanReport) -> HrrhReport {
    let mut caveats = alloc::vec![TRUNCATION_CAVEAT];
    if !lc.config().has_nonreal_zero() {
        caveats.push(REAL_ZEROS_NOTE);
    }
    HrrhReport { scan, caveats }
}

/// Default grid over the first `limit` zeros: `per_gap` interior points and the
/// midpoint of every gap, plus a point below the first zero.
pub fn hrrh_default_grid(lc: &LambdaConfig, limit: usize, per_gap: usize) -> Vec<f64> {
    let prefix = lc.prefix_config(limit.max(2));
    let mut grid = crate::hankel::default_grid(&prefix, per_gap, &Default::default());
    // drop the extrapolated point beyond the prefix
    if limit < lc.len() || lc.len() >= 2 {
        grid.pop();
    }
    grid.retain(|&x| crate::coeff::check_admissible(lc.config(), x, &Default::default()).is_ok());
    grid
}

/// `1 − 1/(49.13·(ln t)^{2/3}·(ln ln t)^{1/3})`, defined for `t > e`.
pub fn ford_boundary(t: f64) -> Result<f64> {
    if !(t > core::f64::consts::E) {
        return Err(domain("the Ford curve needs t > e"));
    }
    let l = libm::log(t);
    Ok(1.0 - 1.0 / (49.13 * libm::cbrt(l * l) * libm::cbrt(libm::log(l))))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CurveKind {
    Hrrh1,
    HrrhN { n: u32, m: Option<f64> },
    Ford,
}

/// `samples` evenly spaced `(t, boundary)` points on `[t_lo, t_hi]`.
pub fn region_curve(kind: CurveKind, t_lo: f64, t_hi: f64, samples: usize) -> Result<Vec<(f64, f64)>> {
    if samples < 2 {
        return Err(domain("a curve needs at least two samples"));
    }
    if !(t_lo > 0.0 && t_hi > t_lo) || !t_hi.is_finite() {
        return Err(domain("t range must satisfy 0 < t_lo < t_hi"));
    }
    let law = match kind {
        CurveKind::Hrrh1 => Some(corollary_region(RegionKind::Hrrh1)?),
        CurveKind::HrrhN { n, m } => Some(corollary_region(RegionKind::HrrhN { n, m })?),
        CurveKind::Ford => {
            ford_boundary(t_lo)?;
            None
        }
    };
    let step = (t_hi - t_lo) / (samples - 1) as f64;
    (0..samples)
        .map(|k| {
            let t = if k + 1 == samples { t_hi } else { t_lo + step * k as f64 };
            let v = match law {
                Some(l) => l.boundary(t),
                None => ford_boundary(t)?,
            };
            Ok((t, v))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hankel::Verdict;
    use crate::zeros::validate_conjugate_symmetry;
    use alloc::string::ToString;
    use alloc::vec;

    fn d(s: &str) -> Decimal {
        s.parse().unwrap()
    }

    fn table() -> ZetaZeroTable {
        let hs = ["14.134725142", "21.022039639", "25.010857580", "30.424876126", "32.935061588", "37.586178159"];
        ZetaZeroTable::new(hs.iter().map(|s| d(s)).collect(), "test").unwrap()
    }

    #[test]
    fn table_validation() {
        assert_eq!(ZetaZeroTable::new(vec![d("21.0"), d("14.1")], "x"), Err(Error::Monotonicity(vec![1])));
        assert!(matches!(ZetaZeroTable::new(vec![d("13.9")], "x"), Err(Error::Domain(_))));
        assert_eq!(ZetaZeroTable::new(vec![d("21.0"), d("15.1")], "x"), Err(Error::Monotonicity(vec![1])));
        assert!(ZetaZeroTable::new(vec![], "x").unwrap().is_empty());
    }

    #[test]
    fn lambda_mapping() {
        let lc = to_lambda(&table(), &BTreeMap::new()).unwrap();
        assert_eq!(lc.square(1).to_string(), "199.790454839886920164");
        assert!((lc.lambda_re(1) - 199.790455).abs() < 1e-6);
        assert!(!lc.config().has_nonreal_zero());
        assert!(lc.heuristic_tail());
        let re: Vec<f64> = lc.config().zeros().iter().map(|z| z.re).collect();
        assert!(re.windows(2).all(|w| w[0] < w[1]));
        let empty = to_lambda(&ZetaZeroTable::new(vec![], "e").unwrap(), &BTreeMap::new()).unwrap();
        assert!(empty.config().is_empty());
    }

    #[test]
    fn override_inserts_conjugate() {
        let mut o = BTreeMap::new();
        o.insert(1, 0.6);
        let lc = to_lambda(&table(), &o).unwrap();
        assert!(validate_conjugate_symmetry(lc.config()));
        let t1 = 14.134725142;
        let z = lc.config().zeros().iter().find(|z| z.im < 0.0).unwrap();
        assert!((z.im + 2.0 * t1 * 0.1).abs() < 1e-12);
        assert!((z.re - (t1 * t1 - 0.01)).abs() < 1e-9);
        o.insert(2, 1.0);
        assert!(to_lambda(&table(), &o).is_err());
    }

    #[test]
    fn gap_table() {
        let t = table();
        let lc = to_lambda(&t, &BTreeMap::new()).unwrap();
        let s = lambda_spacing_report(&lc, 6).unwrap();
        assert_eq!(s.gaps.len(), 5);
        for g in &s.gaps {
            assert_eq!(g.exact_gap.as_ref().unwrap(), &factored_gap(&t, g.j));
        }
        assert_eq!(s.argmin, 4);
        assert_eq!(s.min_gap_exact.unwrap().to_string(), "159.045194522908313868");
        let s2 = lambda_spacing_report(&lc, 2).unwrap();
        assert_eq!(s2.gaps[0].exact_gap.as_ref().unwrap(), &lc.square(2).sub(lc.square(1)));
        let syn = ZetaZeroTable::synthetic(vec![d("1"), d("2")], "s").unwrap();
        let s = lambda_spacing_report(&to_lambda(&syn, &BTreeMap::new()).unwrap(), 2).unwrap();
        assert_eq!(s.min_gap, 3.0);
    }

    #[test]
    fn hrrh_examples() {
        let lc = to_lambda(&table(), &BTreeMap::new()).unwrap();
        let grid = hrrh_default_grid(&lc, 6, 4);
        let r = hrrh_check(&lc, 1, &grid, &ScanOptions::default()).unwrap();
        assert!(!r.scan.points.is_empty());
        assert!(r.scan.points.iter().all(|p| p.verdict() == Verdict::Psd));
        assert_eq!(r.caveats.len(), 2);
        assert!(hrrh_check(&lc, 0, &grid, &ScanOptions::default()).is_err());

        let mut o = BTreeMap::new();
        o.insert(1, 0.9);
        let lc = to_lambda(&table(), &o).unwrap();
        let x = lc.lambda_re(1);
        let r = hrrh_check(&lc, 1, &[x], &ScanOptions::default()).unwrap();
        let h = r.scan.points[0].hankel().unwrap();
        let im = 2.0 * 0.4 * 14.134725142;
        // the pair contributes −2/Im², neighbours add positive terms
        let neighbours: f64 = (2..=6).map(|k| (lc.lambda_re(k) - x).powi(-2)).sum();
        assert!((h.matrix.get(0, 0) - (-2.0 / (im * im) + neighbours)).abs() < h.matrix.tail_budget() + 1e-12);
        assert_eq!(r.scan.points[0].verdict(), Verdict::NotPsd);
    }

    #[test]
    fn region_curves() {
        let c = region_curve(CurveKind::Hrrh1, 100.0, 200.0, 2).unwrap();
        assert!((c[0].1 - 0.938_306_471_860_324_7).abs() < 1e-15);
        assert!((ford_boundary(100.0).unwrap() - 0.993_614_531_907_271_7).abs() < 1e-12);
        assert!(region_curve(CurveKind::Ford, 2.0, 10.0, 5).is_err());
        assert!(region_curve(CurveKind::Hrrh1, 10.0, 20.0, 1).is_err());
        let c = region_curve(CurveKind::Hrrh1, 10.0, 500.0, 100).unwrap();
        assert!(c.windows(2).all(|w| w[1].1 < w[0].1 && w[1].1 > 0.5));
    }
}
