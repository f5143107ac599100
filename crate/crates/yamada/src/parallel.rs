//! Rayon front ends for the expensive core computations. Work is split
//! into fixed pieces and recombined in order, so results never depend on
//! the thread count.

use rayon::prelude::*;
use yamada_core::diagram::{Convention, SpatialDiagram};
use yamada_core::hpoly::HCache;
use yamada_core::yamada::{r_state_sum_range, state_count, YamadaError};
use yamada_core::zeros::{
    RegionGrid, RegionSpec, ScanFamily, ScanOptions, ScanReport, ZerosError, MAX_RESOLUTION,
};
use yamada_core::LaurentPoly;

/// Number of index ranges a state sum is cut into.
const STATE_CHUNKS: u64 = 256;

/// Runs `f` on a pool with `threads` workers, or on the global pool.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        None => f(),
    }
}

pub fn r_state_sum(
    d: &SpatialDiagram,
    max_crossings: usize,
    convention: Convention,
) -> Result<LaurentPoly, YamadaError> {
    let c = d.crossing_count();
    if c > max_crossings {
        return Err(YamadaError::TooManyCrossings { crossings: c, limit: max_crossings });
    }
    let total = state_count(d);
    let step = total.div_ceil(STATE_CHUNKS).max(1);
    let starts: Vec<u64> = (0..total).step_by(step as usize).collect();
    let parts: Vec<LaurentPoly> = starts
        .par_iter()
        .map_init(HCache::new, |cache, &lo| r_state_sum_range(d, lo..(lo + step).min(total), convention, cache))
        .collect::<Result<_, _>>()?;
    Ok(parts.iter().sum())
}

pub fn scan_jobs(jobs: &[(ScanFamily, u32, u32)], opts: &ScanOptions) -> Vec<Result<ScanReport, ZerosError>> {
    jobs.par_iter().map(|&(family, s, n)| yamada_core::zeros::scan_with(family, s, n, opts)).collect()
}

pub fn grid_region(
    spec: RegionSpec,
    re: (f64, f64),
    im: (f64, f64),
    resolution: usize,
) -> Result<RegionGrid, ZerosError> {
    if resolution == 0 || resolution > MAX_RESOLUTION {
        return Err(ZerosError::Resolution { resolution, limit: MAX_RESOLUTION });
    }
    let rows: Vec<Vec<bool>> =
        (0..resolution).into_par_iter().map(|row| RegionGrid::row(spec, re, im, resolution, row)).collect();
    Ok(RegionGrid { spec, re, im, resolution, cells: rows.concat() })
}
