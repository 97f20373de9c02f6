//! Thin std-side orchestration over the solver core: wall-clock stage
//! timing and a parallel sweep driver.

use std::time::Instant;

use gammacap_core::experiments::{ratio_point, DiskPairConfig, RatioPoint, SweepConfig};
use gammacap_core::Clock;
use rayon::prelude::*;

/// `Clock` backed by `std::time::Instant`.
pub struct StdClock {
    origin: Instant,
}

impl StdClock {
    pub fn new() -> Self {
        StdClock { origin: Instant::now() }
    }
}

impl Default for StdClock {
    fn default() -> Self {
        Self::new()
    }
}

impl Clock for StdClock {
    fn now(&self) -> f64 {
        self.origin.elapsed().as_secs_f64()
    }
}

/// Evaluate the whole radius grid, sweep points in parallel, results in
/// grid order (deterministic for fixed inputs).
pub fn parallel_sweep(cfg: &DiskPairConfig, sweep: &SweepConfig) -> Vec<(f64, Option<RatioPoint>)> {
    cfg.radii
        .par_iter()
        .map(|&r| (r, ratio_point(cfg, r, sweep).ok()))
        .collect()
}

/// Install the global rayon pool, honoring the `GAMMACAP_THREADS` cap.
/// Safe to call more than once (later calls are ignored).
pub fn init_thread_pool() {
    if let Ok(v) = std::env::var("GAMMACAP_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}
