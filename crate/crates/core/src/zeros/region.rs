//! The regions of the plane where zeros of Yamada polynomials are dense.

use alloc::vec::Vec;

use num_complex::Complex64;

use super::ZerosError;

/// Largest grid resolution per axis.
pub const MAX_RESOLUTION: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionSpec {
    /// `|σ(z)| >= 1`.
    SigmaGe1,
    /// `|1 + z^-1 + 2z^-2 + z^-3| <= |σ(z)|`.
    PlusRegion,
    /// `|z^3 + 2z^2 + z + 1| <= |σ(z)|`.
    MinusRegion,
    /// `|σ(z)| >= min(1, |z^3 + 2z^2 + z + 1|, |1 + z^-1 + 2z^-2 + z^-3|)`.
    Omega,
}

/// The three moduli every region test compares: `|σ|`, the cubic in `z`
/// and the cubic in `1/z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionTerms {
    pub sigma: f64,
    pub cubic: f64,
    pub inv_cubic: f64,
}

impl RegionTerms {
    pub fn at(z: Complex64) -> Result<Self, ZerosError> {
        if z == Complex64::new(0.0, 0.0) {
            return Err(ZerosError::ZeroInput);
        }
        let w = z.inv();
        let one = Complex64::new(1.0, 0.0);
        let sigma = (z + w) + one;
        let cubic = ((z + 2.0) * z + 1.0) * z + one;
        let inv_cubic = ((w + 2.0) * w + 1.0) * w + one;
        Ok(Self { sigma: sigma.norm(), cubic: cubic.norm(), inv_cubic: inv_cubic.norm() })
    }

    pub fn contains(&self, spec: RegionSpec) -> bool {
        match spec {
            RegionSpec::SigmaGe1 => self.sigma >= 1.0,
            RegionSpec::PlusRegion => self.inv_cubic <= self.sigma,
            RegionSpec::MinusRegion => self.cubic <= self.sigma,
            RegionSpec::Omega => self.sigma >= 1.0f64.min(self.cubic).min(self.inv_cubic),
        }
    }
}

pub fn region_membership(spec: RegionSpec, z: Complex64) -> Result<bool, ZerosError> {
    Ok(RegionTerms::at(z)?.contains(spec))
}

/// Boolean membership sampled at cell centres. Row 0 is the top of the
/// window (largest imaginary part); cells are row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionGrid {
    pub spec: RegionSpec,
    pub re: (f64, f64),
    pub im: (f64, f64),
    pub resolution: usize,
    pub cells: Vec<bool>,
}

impl RegionGrid {
    pub fn cell_center(re: (f64, f64), im: (f64, f64), resolution: usize, row: usize, col: usize) -> Complex64 {
        let n = resolution as f64;
        let x = re.0 + (re.1 - re.0) * (col as f64 + 0.5) / n;
        let y = im.1 - (im.1 - im.0) * (row as f64 + 0.5) / n;
        Complex64::new(x, y)
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.cells[row * self.resolution + col]
    }

    /// Evaluates one row; the origin, if sampled, counts as outside.
    pub fn row(spec: RegionSpec, re: (f64, f64), im: (f64, f64), resolution: usize, row: usize) -> Vec<bool> {
        (0..resolution)
            .map(|col| {
                let z = Self::cell_center(re, im, resolution, row, col);
                region_membership(spec, z).unwrap_or(false)
            })
            .collect()
    }
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
    let mut cells = Vec::with_capacity(resolution * resolution);
    for row in 0..resolution {
        cells.extend(RegionGrid::row(spec, re, im, resolution, row));
    }
    Ok(RegionGrid { spec, re, im, resolution, cells })
}
