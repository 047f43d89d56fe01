//! Truncated Hankel matrices `A_N(x)`, positive-semidefiniteness verdicts and
//! grid scans for membership in the N-LP class.

use alloc::vec::Vec;

use crate::coeff::{check_admissible, coefficients, CoeffOptions, CoeffValue, Neumaier};
use crate::eigen::{norm_estimate, symmetric_eigen};
use crate::error::{domain, Error, Result};
use crate::zeros::ZeroConfig;

use num_complex::Complex64;

/// `A_N(x)` with entry `(j, k)` equal to `Re a_{j+k−1}(x)` (1-based).
#[derive(Clone, Debug, PartialEq)]
pub struct HankelMatrix {
    pub order: usize,
    pub x: f64,
    /// `a_1(x) ..= a_{2N−1}(x)`.
    pub entries: Vec<CoeffValue>,
    matrix: Vec<f64>,
}

impl HankelMatrix {
    /// Matrix built directly from real Hankel data `h_1 ..= h_{2N−1}`.
    pub fn from_sequence(x: f64, seq: &[f64]) -> Result<Self> {
        if seq.is_empty() || seq.len().is_multiple_of(2) {
            return Err(domain("Hankel data needs an odd number 2N − 1 of entries"));
        }
        let entries = seq
            .iter()
            .enumerate()
            .map(|(k, &v)| CoeffValue {
                value: Complex64::new(v, 0.0),
                tail_radius: 0.0,
                roundoff: 0.0,
                abs_sum: v.abs(),
                n: k + 1,
                x,
            })
            .collect();
        Ok(Self::assemble(x, entries))
    }

    fn assemble(x: f64, entries: Vec<CoeffValue>) -> Self {
        let order = entries.len().div_ceil(2);
        let mut matrix = alloc::vec![0.0; order * order];
        for j in 0..order {
            for k in 0..order {
                matrix[j * order + k] = entries[j + k].value.re;
            }
        }
        HankelMatrix { order, x, entries, matrix }
    }

    /// Row-major `N × N` data.
    pub fn as_slice(&self) -> &[f64] {
        &self.matrix
    }

    /// Entry `(j, k)`, 0-based.
    pub fn get(&self, j: usize, k: usize) -> f64 {
        self.matrix[j * self.order + k]
    }

    /// Largest tail radius over the entries.
    pub fn tail_budget(&self) -> f64 {
        self.entries.iter().map(|e| e.tail_radius).fold(0.0, f64::max)
    }

    /// Leading principal `k × k` block, `1 ≤ k ≤ N`.
    pub fn leading(&self, k: usize) -> Self {
        assert!(k >= 1 && k <= self.order, "block size outside 1..=N");
        Self::assemble(self.x, self.entries[..2 * k - 1].to_vec())
    }

    /// Largest round-off bound over the entries.
    pub fn roundoff(&self) -> f64 {
        self.entries.iter().map(|e| e.roundoff).fold(0.0, f64::max)
    }
}

pub fn build_hankel_with(config: &ZeroConfig, x: f64, order: usize, opts: &CoeffOptions) -> Result<HankelMatrix> {
    if order == 0 {
        return Err(domain("Hankel order N must be at least 1"));
    }
    let entries = coefficients(config, x, 2 * order - 1, opts)?;
    for e in &entries {
        let budget = e.realness_budget();
        if e.value.im.abs() > budget {
            return Err(Error::Realness { index: e.n, imag: e.value.im, budget });
        }
    }
    Ok(HankelMatrix::assemble(x, entries))
}

pub fn build_hankel(config: &ZeroConfig, x: f64, order: usize) -> Result<HankelMatrix> {
    build_hankel_with(config, x, order, &CoeffOptions::default())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Psd,
    NotPsd,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Psd => "PSD",
            Verdict::NotPsd => "NotPSD",
            Verdict::Inconclusive => "Inconclusive",
        }
    }
}

impl core::fmt::Display for Verdict {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Verdict under the Weyl margin `tail_budget · N`.
pub fn classify(min_eigenvalue: f64, tolerance: f64, tail_budget: f64, order: usize) -> Verdict {
    let margin = tail_budget * order as f64;
    if min_eigenvalue >= -tolerance && min_eigenvalue - margin >= -tolerance {
        Verdict::Psd
    } else if min_eigenvalue + margin < -tolerance {
        Verdict::NotPsd
    } else {
        Verdict::Inconclusive
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HankelVerdict {
    pub matrix: HankelMatrix,
    /// Size of the leading block that decided the verdict: `N` unless a
    /// smaller block is certified `NotPsd`. The three numbers below belong to
    /// that block.
    pub block: usize,
    pub min_eigenvalue: f64,
    pub tolerance: f64,
    pub tail_budget: f64,
    pub verdict: Verdict,
    /// For `NotPsd`: coefficients `v_1..v_N` of `q(z) = Σ v_j z^j` with a
    /// negative quadratic form.
    pub certificate: Option<TestPolynomial>,
}

/// Default tolerance `1e-10 · (1 + ‖A‖)` plus the accumulated round-off.
pub fn default_tolerance(matrix: &HankelMatrix) -> f64 {
    let n = matrix.order;
    1e-10 * (1.0 + norm_estimate(matrix.as_slice(), n)) + n as f64 * matrix.roundoff()
}

struct BlockVerdict {
    min_eigenvalue: f64,
    tolerance: f64,
    tail_budget: f64,
    verdict: Verdict,
    vector: Vec<f64>,
}

fn check_block(matrix: &HankelMatrix, tolerance: Option<f64>) -> Result<BlockVerdict> {
    let tol = tolerance.unwrap_or_else(|| default_tolerance(matrix));
    let mut eig = symmetric_eigen(matrix.as_slice(), matrix.order)?;
    let tail_budget = matrix.tail_budget();
    Ok(BlockVerdict {
        min_eigenvalue: eig.values[0],
        tolerance: tol,
        tail_budget,
        verdict: classify(eig.values[0], tol, tail_budget, matrix.order),
        vector: core::mem::take(&mut eig.vectors[0]),
    })
}

/// Verdict for `A_N(x)`. A certified negative direction of a leading block is
/// one of `A_N` as well, so blocks are tried smallest first whenever the full
/// matrix alone is not `NotPsd`: the full-size tolerance grows with `‖A_N‖`
/// and can hide a negative eigenvalue that a smaller block certifies.
pub fn psd_check(matrix: HankelMatrix, tolerance: Option<f64>) -> Result<HankelVerdict> {
    if matrix.as_slice().iter().any(|v| !v.is_finite()) {
        return Err(domain("Hankel matrix has non-finite entries"));
    }
    let n = matrix.order;
    let mut block = n;
    let mut best = check_block(&matrix, tolerance)?;
    if best.verdict != Verdict::NotPsd {
        for k in 1..n {
            let b = check_block(&matrix.leading(k), tolerance)?;
            if b.verdict == Verdict::NotPsd {
                block = k;
                best = b;
                break;
            }
        }
    }
    let certificate = (best.verdict == Verdict::NotPsd).then(|| {
        let mut v = best.vector;
        v.resize(n, 0.0);
        TestPolynomial::new(v)
    });
    Ok(HankelVerdict {
        matrix,
        block,
        min_eigenvalue: best.min_eigenvalue,
        tolerance: best.tolerance,
        tail_budget: best.tail_budget,
        verdict: best.verdict,
        certificate,
    })
}

/// Real polynomial `q(z) = Σ_{j≥1} c_j z^j` with `q(0) = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct TestPolynomial {
    /// `coeffs[j − 1]` multiplies `z^j`.
    pub coeffs: Vec<f64>,
}

impl TestPolynomial {
    pub fn new(coeffs: Vec<f64>) -> Self {
        TestPolynomial { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|&c| c != 0.0).map_or(0, |i| i + 1)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = (acc + c) * z;
        }
        acc
    }
}

/// `Σ_i Re q(t/(λ_i − x))²` over the listed zeros with multiplicity.
pub fn quadratic_form(config: &ZeroConfig, x: f64, q: &TestPolynomial, t: f64) -> Result<f64> {
    if q.degree() == 0 {
        return Err(domain("test polynomial must have degree at least 1"));
    }
    check_admissible(config, x, &CoeffOptions::default())?;
    let mut acc = Neumaier::default();
    for z in config.zeros() {
        let w = Complex64::new(t, 0.0) / Complex64::new(z.re - x, z.im);
        let v = q.eval(w);
        acc.add((v * v).re * z.multiplicity as f64);
    }
    Ok(acc.total())
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct ScanOptions {
    pub coeff: CoeffOptions,
    /// Overrides the default tolerance when set.
    pub tolerance: Option<f64>,
}

/// Outcome at one admitted grid point.
#[derive(Clone, Debug, PartialEq)]
pub enum PointOutcome {
    Evaluated(HankelVerdict),
    /// A numerical failure, reported as inconclusive.
    Failed(Error),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanPoint {
    pub x: f64,
    pub order: usize,
    pub outcome: PointOutcome,
}

impl ScanPoint {
    pub fn verdict(&self) -> Verdict {
        match &self.outcome {
            PointOutcome::Evaluated(v) => v.verdict,
            PointOutcome::Failed(_) => Verdict::Inconclusive,
        }
    }

    pub fn hankel(&self) -> Option<&HankelVerdict> {
        match &self.outcome {
            PointOutcome::Evaluated(v) => Some(v),
            PointOutcome::Failed(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Excluded {
    pub x: f64,
    pub reason: Error,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanReport {
    pub order: usize,
    /// One entry per admitted grid point, in grid order.
    pub points: Vec<ScanPoint>,
    pub excluded: Vec<Excluded>,
}

impl ScanReport {
    pub fn any_not_psd(&self) -> bool {
        self.points.iter().any(|p| p.verdict() == Verdict::NotPsd)
    }

    pub fn count(&self, v: Verdict) -> usize {
        self.points.iter().filter(|p| p.verdict() == v).count()
    }
}

/// Splits a grid into admitted points and excluded points with reasons.
pub fn admit(config: &ZeroConfig, grid: &[f64], opts: &CoeffOptions) -> (Vec<f64>, Vec<Excluded>) {
    let mut ok = Vec::new();
    let mut excluded = Vec::new();
    for &x in grid {
        match check_admissible(config, x, opts) {
            Ok(()) => ok.push(x),
            Err(reason) => excluded.push(Excluded { x, reason }),
        }
    }
    (ok, excluded)
}

/// Verdict at a single admitted point; errors become inconclusive outcomes.
pub fn scan_point(config: &ZeroConfig, order: usize, x: f64, opts: &ScanOptions) -> ScanPoint {
    let outcome = build_hankel_with(config, x, order, &opts.coeff)
        .and_then(|m| psd_check(m, opts.tolerance))
        .map_or_else(PointOutcome::Failed, PointOutcome::Evaluated);
    ScanPoint { x, order, outcome }
}

pub fn nlp_scan_with(config: &ZeroConfig, order: usize, grid: &[f64], opts: &ScanOptions) -> ScanReport {
    let (admitted, excluded) = admit(config, grid, &opts.coeff);
    let points = admitted.iter().map(|&x| scan_point(config, order, x, opts)).collect();
    ScanReport { order, points, excluded }
}

pub fn nlp_scan(config: &ZeroConfig, order: usize, grid: &[f64]) -> ScanReport {
    nlp_scan_with(config, order, grid, &ScanOptions::default())
}

/// Largest `N ≤ n_max` whose scan on `grid` has no `NotPsd` verdict.
///
/// A failure at `N` forces failure at every larger order at the same `x`
/// (leading principal submatrix), so the search stops at the first failure.
pub fn max_nlp_order(config: &ZeroConfig, grid: &[f64], n_max: usize) -> usize {
    max_nlp_order_with(config, grid, n_max, &ScanOptions::default())
}

pub fn max_nlp_order_with(config: &ZeroConfig, grid: &[f64], n_max: usize, opts: &ScanOptions) -> usize {
    for n in 1..=n_max {
        if nlp_scan_with(config, n, grid, opts).any_not_psd() {
            return n - 1;
        }
    }
    n_max
}

/// Midpoints between consecutive distinct real parts plus `per_gap` evenly
/// spaced interior points per gap, the real parts of non-real zeros, and one
/// point beyond each end at half the first and last gap. Points within the
/// pole radius are dropped.
pub fn default_grid(config: &ZeroConfig, per_gap: usize, opts: &CoeffOptions) -> Vec<f64> {
    let mut res: Vec<f64> = config.zeros().iter().map(|z| z.re).collect();
    res.dedup();
    let mut grid = Vec::new();
    if res.is_empty() {
        grid.push(0.0);
    } else if res.len() == 1 {
        grid.extend([res[0] - 1.0, res[0] + 1.0]);
    } else {
        let first_gap = res[1] - res[0];
        grid.push(res[0] - 0.5 * first_gap);
        for w in res.windows(2) {
            let (a, b) = (w[0], w[1]);
            let mut pts: Vec<f64> = (1..=per_gap).map(|k| a + (b - a) * k as f64 / (per_gap + 1) as f64).collect();
            pts.push(0.5 * (a + b));
            pts.sort_by(f64::total_cmp);
            pts.dedup();
            grid.extend(pts);
        }
        let n = res.len();
        grid.push(res[n - 1] + 0.5 * (res[n - 1] - res[n - 2]));
    }
    // the pair contribution to a_1 is most negative at its own abscissa
    grid.extend(config.zeros().iter().filter(|z| !z.is_real()).map(|z| z.re));
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    grid.retain(|&x| check_admissible(config, x, opts).is_ok());
    grid
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeros::{TailModel, Zero};
    use alloc::vec;

    fn lattice() -> ZeroConfig {
        let mut zs = vec![Zero::complex(0.0, 0.5), Zero::complex(0.0, -0.5)];
        for m in 1..=100 {
            zs.push(Zero::real(m as f64));
            zs.push(Zero::real(-(m as f64)));
        }
        ZeroConfig::from_zeros(zs).unwrap().with_tail(Some(TailModel::mirrored(101.0, 1.0).unwrap())).unwrap()
    }

    #[test]
    fn build_examples() {
        let m = build_hankel(&ZeroConfig::real(&[2.0]).unwrap(), 0.0, 1).unwrap();
        assert_eq!(m.as_slice(), &[0.25]);
        let c = ZeroConfig::from_zeros([Zero::complex(0.0, 1.0), Zero::complex(0.0, -1.0)]).unwrap();
        assert_eq!(build_hankel(&c, 0.0, 1).unwrap().as_slice(), &[-2.0]);
        let m = build_hankel(&ZeroConfig::real(&[1.0, -1.0]).unwrap(), 0.0, 2).unwrap();
        assert_eq!(m.as_slice(), &[2.0, 0.0, 0.0, 2.0]);
    }

    #[test]
    fn psd_examples() {
        let v = psd_check(HankelMatrix::from_sequence(0.0, &[2.0, 0.0, 2.0]).unwrap(), None).unwrap();
        assert_eq!((v.verdict, v.min_eigenvalue), (Verdict::Psd, 2.0));
        let v = psd_check(HankelMatrix::from_sequence(0.0, &[-2.0]).unwrap(), None).unwrap();
        assert_eq!((v.verdict, v.min_eigenvalue), (Verdict::NotPsd, -2.0));
        let v = psd_check(HankelMatrix::from_sequence(0.0, &[1.0, 2.0, 1.0]).unwrap(), None).unwrap();
        assert_eq!(v.verdict, Verdict::NotPsd);
        assert!((v.min_eigenvalue + 1.0).abs() < 1e-14);
        assert!(v.certificate.is_some());
    }

    #[test]
    fn small_block_decides_when_the_norm_hides_it() {
        let m = HankelMatrix::from_sequence(0.0, &[-1e-3, 0.0, 1e8]).unwrap();
        assert_eq!(check_block(&m, None).unwrap().verdict, Verdict::Psd);
        let v = psd_check(m, None).unwrap();
        assert_eq!((v.verdict, v.block, v.min_eigenvalue), (Verdict::NotPsd, 1, -1e-3));
        assert_eq!(v.certificate.unwrap().coeffs.len(), 2);
        let v = psd_check(HankelMatrix::from_sequence(0.0, &[2.0, 0.0, 2.0]).unwrap(), None).unwrap();
        assert_eq!(v.block, 2);
    }

    #[test]
    fn non_conjugate_input_is_rejected() {
        let c = ZeroConfig::from_zeros([Zero::complex(1.0, 1.0)]).unwrap();
        assert!(matches!(build_hankel(&c, 0.0, 1), Err(Error::Realness { .. })));
    }

    #[test]
    fn quadratic_form_examples() {
        let z = TestPolynomial::new(vec![1.0]);
        let z2 = TestPolynomial::new(vec![0.0, 1.0]);
        assert_eq!(quadratic_form(&ZeroConfig::real(&[1.0, -1.0]).unwrap(), 0.0, &z, 1.0).unwrap(), 2.0);
        let c = ZeroConfig::from_zeros([Zero::complex(0.0, 1.0), Zero::complex(0.0, -1.0)]).unwrap();
        assert_eq!(quadratic_form(&c, 0.0, &z, 1.0).unwrap(), -2.0);
        let c = ZeroConfig::from_zeros([
            Zero::real(1.0),
            Zero::real(-1.0),
            Zero::complex(0.0, 1.0),
            Zero::complex(0.0, -1.0),
        ])
        .unwrap();
        assert_eq!(quadratic_form(&c, 0.0, &z2, 1.0).unwrap(), 4.0);
        assert!(quadratic_form(&c, 0.0, &TestPolynomial::new(vec![0.0]), 1.0).is_err());
    }

    #[test]
    fn lattice_coefficient_brackets_closed_form() {
        let target = -8.0 + core::f64::consts::PI * core::f64::consts::PI / 3.0;
        let m = build_hankel(&lattice(), 0.0, 1).unwrap();
        let e = m.entries[0];
        assert!((e.value.re - target).abs() <= e.tail_radius);
        assert!(e.tail_radius < 0.021);
    }

    #[test]
    fn scan_examples() {
        let real = ZeroConfig::real(&[1.0, 2.0, 3.0]).unwrap();
        let r = nlp_scan(&real, 2, &[0.0, 1.5, 10.0]);
        assert_eq!(r.points.len(), 3);
        assert!(r.points.iter().all(|p| p.verdict() == Verdict::Psd));
        let r = nlp_scan(&lattice(), 1, &[0.0]);
        assert_eq!(r.points[0].verdict(), Verdict::NotPsd);
        assert!(r.any_not_psd());
        assert!(nlp_scan(&real, 1, &[]).points.is_empty());
        let r = nlp_scan(&real, 1, &[2.0, 2.5]);
        assert_eq!((r.points.len(), r.excluded.len()), (1, 1));
    }

    #[test]
    fn max_order_examples() {
        let real = ZeroConfig::real(&[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(max_nlp_order(&real, &[0.0, 1.5, 10.0], 4), 4);
        assert_eq!(max_nlp_order(&lattice(), &[0.0], 3), 0);
        assert_eq!(max_nlp_order(&ZeroConfig::real(&[5.0]).unwrap(), &[0.0], 2), 2);
    }

    #[test]
    fn classify_regions() {
        assert_eq!(classify(1.0, 0.0, 0.1, 2), Verdict::Psd);
        assert_eq!(classify(0.1, 0.0, 0.1, 2), Verdict::Inconclusive);
        assert_eq!(classify(-0.3, 0.0, 0.1, 2), Verdict::NotPsd);
    }

    #[test]
    fn default_grid_avoids_poles() {
        let c = ZeroConfig::real(&[0.0, 1.0, 3.0]).unwrap();
        let g = default_grid(&c, 8, &CoeffOptions::default());
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert!(g.contains(&0.5) && g.contains(&2.0) && g.contains(&-0.5) && g.contains(&4.0));
        assert_eq!(g.len(), 2 + 2 * 9);
    }
}
