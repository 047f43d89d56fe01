//! Parallel drivers over the pure scans. Results keep grid order, so the
//! thread count never changes the output.

use rayon::prelude::*;
use zeroprobe_core::hankel::{admit, scan_point, ScanOptions, ScanReport};
use zeroprobe_core::ZeroConfig;

use crate::IoError;

/// Runs `f` on a pool with `threads` workers (`None`: rayon's default).
pub fn with_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, IoError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| IoError::Config(e.to_string()))?;
    Ok(pool.install(f))
}

/// Same report as `nlp_scan_with`, evaluating grid points in parallel.
pub fn par_nlp_scan(config: &ZeroConfig, order: usize, grid: &[f64], opts: &ScanOptions) -> ScanReport {
    let (admitted, excluded) = admit(config, grid, &opts.coeff);
    let points = admitted.par_iter().map(|&x| scan_point(config, order, x, opts)).collect();
    ScanReport { order, points, excluded }
}

#[cfg(test)]
mod tests {
    use super::*;
    use zeroprobe_core::hankel::{default_grid, nlp_scan_with};
    use zeroprobe_core::Zero;

    #[test]
    fn matches_sequential_scan() {
        let cfg = ZeroConfig::from_zeros(
            [1.0, 2.5, 4.0, 7.0].map(Zero::real).into_iter().chain([Zero::complex(3.0, 0.4), Zero::complex(3.0, -0.4)]),
        )
        .unwrap();
        let opts = ScanOptions::default();
        let grid = default_grid(&cfg, 5, &opts.coeff);
        let seq = nlp_scan_with(&cfg, 3, &grid, &opts);
        for threads in [1, 4] {
            let par = with_pool(Some(threads), || par_nlp_scan(&cfg, 3, &grid, &opts)).unwrap();
            assert_eq!(par, seq);
        }
    }
}
