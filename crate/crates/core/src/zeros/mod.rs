//! Zeros of the ring-of-beads families `C_n(Θ_s)` and `C_n(Θ_s(∞±))`,
//! their approach to the equal-modulus curves, and the density regions.

mod dd;
mod region;
mod roots;

pub use region::{grid_region, region_membership, RegionGrid, RegionSpec, RegionTerms, MAX_RESOLUTION};
pub use roots::{find_roots, find_roots_with, residual, root_bounds, RootSet, MAX_DEGREE};

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::graph::Family;
use crate::hpoly::h_closed;
use crate::ring::{LaurentPoly, RingError};
use crate::yamada::{r_replace, r_uniform, Bead, FamilyKind, FamilySpec, YamadaError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ZerosError {
    #[error("the zero polynomial has no isolated roots")]
    ZeroPolynomial,
    #[error("degree {degree} exceeds the root-finder limit {limit}")]
    DegreeTooLarge { degree: usize, limit: usize },
    #[error("root refinement did not converge ({} roots, worst residual {:e})", .0.len(), .0.max_residual())]
    NoConvergence(Box<RootSet>),
    #[error("z = 0 is not allowed")]
    ZeroInput,
    #[error("σ(z) = 0, the equal-modulus test is singular")]
    SingularPoint,
    #[error("grid resolution {resolution} outside 1..={limit}")]
    Resolution { resolution: usize, limit: usize },
    #[error("size must be at least 1")]
    EmptyFamily,
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Yamada(#[from] YamadaError),
}

/// Radius of the discs around `e^{±2πi/3}` (where `σ = 0`) that the
/// equal-modulus statistics leave out.
pub const EXCLUSION_RADIUS: f64 = 1e-3;

/// What sits on each edge of the cycle: a theta of plain edges, or a theta
/// of `∞₊` / `∞₋` beads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScanFamily {
    Theta,
    InfPlus,
    InfMinus,
}

impl ScanFamily {
    pub fn name(self) -> &'static str {
        match self {
            ScanFamily::Theta => "theta",
            ScanFamily::InfPlus => "inf+",
            ScanFamily::InfMinus => "inf-",
        }
    }

    /// Values `(R[b], R[b'])` of the innermost bead.
    fn inner_bead(self) -> (LaurentPoly, LaurentPoly) {
        let s = LaurentPoly::sigma();
        match self {
            ScanFamily::Theta => (LaurentPoly::zero(), s),
            ScanFamily::InfPlus => (s.shift(-2), s),
            ScanFamily::InfMinus => (s.shift(2), s),
        }
    }
}

/// `(R[Θ_s(b)], R[B_s(b)])`: the bead of the cycle and its closure.
pub fn bead_values(family: ScanFamily, s: u32) -> Result<(LaurentPoly, LaurentPoly), ZerosError> {
    if s == 0 {
        return Err(ZerosError::EmptyFamily);
    }
    Ok(match family {
        ScanFamily::Theta => (
            h_closed(Family::Theta, s).map_err(|_| ZerosError::EmptyFamily)?,
            h_closed(Family::Bouquet, s).map_err(|_| ZerosError::EmptyFamily)?,
        ),
        ScanFamily::InfPlus | ScanFamily::InfMinus => {
            let bead = if family == ScanFamily::InfPlus { Bead::InfPlus } else { Bead::InfMinus };
            (
                r_uniform(&FamilySpec::new(FamilyKind::Theta, s, bead.clone()))?,
                r_uniform(&FamilySpec::new(FamilyKind::Bouquet, s, bead))?,
            )
        }
    })
}

/// `R[C_n(Θ_s)]`, or with `∞±` beads inside each theta.
pub fn family_polynomial(family: ScanFamily, s: u32, n: u32) -> Result<LaurentPoly, ZerosError> {
    if n == 0 {
        return Err(ZerosError::EmptyFamily);
    }
    let bead = bead_values(family, s)?;
    Ok(r_replace(FamilyKind::Cycle, &vec![bead; n as usize])?)
}

/// True when one of the two geometric ratios vanishes identically, so the
/// family is a single power and has no equal-modulus curve.
pub fn is_degenerate(family: ScanFamily, s: u32) -> Result<bool, ZerosError> {
    let (r, rp) = bead_values(family, s)?;
    Ok(r.is_zero() || (&r + &rp).is_zero())
}

fn sigma_at(z: Complex64) -> Result<Complex64, ZerosError> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(ZerosError::ZeroInput);
    }
    let s = (z + z.inv()) + 1.0;
    if s.norm() == 0.0 {
        return Err(ZerosError::SingularPoint);
    }
    Ok(s)
}

/// The ratios `λ₁ = -R[b]` and `λ₂ = (R[b] + R[b'])/σ` at `z`, so that the
/// family polynomial is `λ₁ⁿ + σ λ₂ⁿ`.
pub fn lambdas(family: ScanFamily, s: u32, z: Complex64) -> Result<(Complex64, Complex64), ZerosError> {
    let sigma = sigma_at(z)?;
    let (r, rp) = bead_values(family, s)?;
    let rz = r.eval_complex(z)?;
    let rpz = rp.eval_complex(z)?;
    Ok((-rz, (rz + rpz) / sigma))
}

/// `q(z)` and `q'(z)` for a Laurent polynomial.
fn eval_with_derivative(q: &LaurentPoly, z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut d = Complex64::new(0.0, 0.0);
    for (k, c) in q.terms() {
        let c = c.to_f64().unwrap_or(f64::NAN);
        let zk = z.powi(k as i32);
        v += zk * c;
        d += zk / z * (c * k as f64);
    }
    (v, d)
}

/// `p'/p` for `p = λ₁ⁿ + σλ₂ⁿ` with bead values `(r, q)`, evaluated in that
/// form after dividing through by the larger of `λ₁ⁿ`, `λ₂ⁿ`.
fn family_log_derivative(r: &LaurentPoly, q: &LaurentPoly, n: u32, z: Complex64) -> Option<Complex64> {
    let sigma = sigma_at(z).ok()?;
    let dsigma = Complex64::new(1.0, 0.0) - (z * z).inv();
    let (rv, rd) = eval_with_derivative(r, z);
    let (qv, qd) = eval_with_derivative(q, z);
    let (l1, d1) = (-rv, -rd);
    let l2 = (rv + qv) / sigma;
    let d2 = ((rd + qd) - l2 * dsigma) / sigma;
    let nf = n as f64;
    let m = n as i32 - 1;
    let v = if l1.norm() >= l2.norm() {
        let t = (l2 / l1).powi(m);
        let tn = t * l2 / l1;
        (d1 / l1 * nf + dsigma * tn + sigma * t * d2 / l1 * nf) / (sigma * tn + 1.0)
    } else {
        let u = (l1 / l2).powi(m);
        let un = u * l1 / l2;
        (d1 * u / l2 * nf + dsigma + sigma * d2 / l2 * nf) / (un + sigma)
    };
    v.is_finite().then_some(v)
}

/// Roots of [`family_polynomial`], refined through its power-sum form.
pub fn family_roots(family: ScanFamily, s: u32, n: u32, tol: f64) -> Result<RootSet, ZerosError> {
    let p = family_polynomial(family, s, n)?;
    let (r, q) = bead_values(family, s)?;
    structured_roots(&p, &r, &q, n, tol)
}

/// The power-sum form has a removable pole where `σ = 0`, so powers of `σ`
/// are divided out exactly and their roots added back at the end.
fn structured_roots(p: &LaurentPoly, r: &LaurentPoly, q: &LaurentPoly, n: u32, tol: f64) -> Result<RootSet, ZerosError> {
    let sigma = LaurentPoly::sigma();
    let (mut rest, mut k) = (p.clone(), 0u32);
    while let Some(next) = rest.div_exact(&sigma) {
        rest = next;
        k += 1;
    }
    let mut set = if rest.span() == 0 {
        RootSet { roots: Vec::new(), multiplicities: Vec::new(), residuals: Vec::new() }
    } else {
        let log_deriv = |z: Complex64| {
            let s = sigma_at(z).ok()?;
            let ds = Complex64::new(1.0, 0.0) - (z * z).inv();
            Some(family_log_derivative(r, q, n, z)? - ds / s * k as f64)
        };
        match find_roots_with(&rest, tol, log_deriv) {
            Err(ZerosError::NoConvergence(_)) => find_roots(&rest, tol)?,
            other => other?,
        }
    };
    if k > 0 {
        let w = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
        set.roots.extend([w, w.conj()]);
        set.multiplicities.extend([k, k]);
    }
    set.residuals = set.roots.iter().map(|&z| residual(p, z)).collect::<Result<_, _>>()?;
    Ok(set)
}

/// `| |λ₁| - |λ₂| |` computed from the polynomials themselves.
pub fn bkw_residual_lambda(family: ScanFamily, s: u32, z: Complex64) -> Result<f64, ZerosError> {
    let (l1, l2) = lambdas(family, s, z)?;
    Ok((l1.norm() - l2.norm()).abs())
}

/// Equal-modulus residual in normalised form: `| |1 + σGˢ| - |1 - Gˢ| |`
/// with `G = ((σ+1)r + r') / (-σ²)` for the inner bead values `(r, r')`.
/// For plain thetas `G = 1/(-σ)`. This is the λ-form scaled by
/// `|1 + σ| / |σ|ˢ`, which removes the overall growth in `z`.
pub fn bkw_residual(family: ScanFamily, s: u32, z: Complex64) -> Result<f64, ZerosError> {
    if s == 0 {
        return Err(ZerosError::EmptyFamily);
    }
    let sigma = sigma_at(z)?;
    let (r, rp) = family.inner_bead();
    let g = ((sigma + 1.0) * r.eval_complex(z)? + rp.eval_complex(z)?) / (-sigma * sigma);
    let gs = g.powi(s as i32);
    let one = Complex64::new(1.0, 0.0);
    let v = ((one + sigma * gs).norm() - (one - gs).norm()).abs();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(ZerosError::SingularPoint)
    }
}

/// True within [`EXCLUSION_RADIUS`] of a zero of `σ`.
pub fn near_singularity(z: Complex64) -> bool {
    near_singularity_within(z, EXCLUSION_RADIUS)
}

pub fn near_singularity_within(z: Complex64, radius: f64) -> bool {
    let w = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
    (z - w).norm() < radius || (z - w.conj()).norm() < radius
}

/// Tolerances and guards for [`scan_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanOptions {
    /// Largest accepted residual `|p(z)| / Σ |c_k| |z|^k`.
    pub tol: f64,
    /// Roots this close to a zero of `σ` are flagged as excluded.
    pub exclusion_radius: f64,
    /// Largest degree of the family polynomial that will be solved.
    pub max_degree: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self { tol: 1e-10, exclusion_radius: EXCLUSION_RADIUS, max_degree: MAX_DEGREE }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanRoot {
    pub z: Complex64,
    pub multiplicity: u32,
    pub residual: f64,
    /// `None` where the equal-modulus test is singular.
    pub bkw_residual: Option<f64>,
    pub in_omega: bool,
    pub excluded: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport {
    pub family: ScanFamily,
    pub s: u32,
    pub n: u32,
    pub degenerate: bool,
    pub roots: Vec<ScanRoot>,
}

impl ScanReport {
    /// Largest equal-modulus residual over roots outside the exclusion
    /// discs.
    pub fn max_bkw(&self) -> Option<f64> {
        self.roots
            .iter()
            .filter(|r| !r.excluded)
            .filter_map(|r| r.bkw_residual)
            .fold(None, |m, v| Some(m.map_or(v, |m: f64| m.max(v))))
    }

    pub fn max_residual(&self) -> f64 {
        self.roots.iter().map(|r| r.residual).fold(0.0, f64::max)
    }
}

/// Roots of one family member, annotated with their equal-modulus residual
/// and region membership. Degenerate families are flagged and not solved.
pub fn scan(family: ScanFamily, s: u32, n: u32, tol: f64) -> Result<ScanReport, ZerosError> {
    scan_with(family, s, n, &ScanOptions { tol, ..ScanOptions::default() })
}

pub fn scan_with(family: ScanFamily, s: u32, n: u32, opts: &ScanOptions) -> Result<ScanReport, ZerosError> {
    let mut report = ScanReport { family, s, n, degenerate: false, roots: Vec::new() };
    if is_degenerate(family, s)? {
        report.degenerate = true;
        return Ok(report);
    }
    let p = family_polynomial(family, s, n)?;
    let degree = p.span() as usize;
    if degree > opts.max_degree {
        return Err(ZerosError::DegreeTooLarge { degree, limit: opts.max_degree });
    }
    let (r, q) = bead_values(family, s)?;
    let set = structured_roots(&p, &r, &q, n, opts.tol)?;
    for i in 0..set.len() {
        let z = set.roots[i];
        report.roots.push(ScanRoot {
            z,
            multiplicity: set.multiplicities[i],
            residual: set.residuals[i],
            bkw_residual: bkw_residual(family, s, z).ok(),
            in_omega: region_membership(RegionSpec::Omega, z).unwrap_or(false),
            excluded: near_singularity_within(z, opts.exclusion_radius),
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma() -> LaurentPoly {
        LaurentPoly::sigma()
    }

    #[test]
    fn pinned_residual() {
        let z = Complex64::new(1.0, 0.0);
        let v = bkw_residual(ScanFamily::Theta, 2, z).unwrap();
        assert!((v - 4.0 / 9.0).abs() < 1e-15);
        let l = bkw_residual_lambda(ScanFamily::Theta, 2, z).unwrap();
        assert!((l - 1.0).abs() < 1e-15);
    }

    #[test]
    fn normalised_form_is_scaled_lambda_form() {
        for family in [ScanFamily::Theta, ScanFamily::InfPlus, ScanFamily::InfMinus] {
            for s in 2..=4u32 {
                for &(x, y) in &[(0.3, 1.1), (-1.7, 0.4), (2.2, -0.9)] {
                    let z = Complex64::new(x, y);
                    let sg = (z + z.inv()) + 1.0;
                    let scale = (sg + 1.0).norm() / sg.norm().powi(s as i32);
                    let a = bkw_residual(family, s, z).unwrap();
                    let b = bkw_residual_lambda(family, s, z).unwrap() * scale;
                    assert!((a - b).abs() <= 1e-12 * a.max(1.0), "{family:?} {s} {z}");
                }
            }
        }
    }

    #[test]
    fn singular_and_zero() {
        assert_eq!(
            bkw_residual(ScanFamily::Theta, 2, Complex64::new(0.0, 0.0)),
            Err(ZerosError::ZeroInput)
        );
        let w = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
        assert!(near_singularity(w));
        assert!(!near_singularity(Complex64::new(1.0, 0.0)));
    }

    #[test]
    fn theta_three_family_closed_form() {
        let s = sigma();
        let one = LaurentPoly::one();
        for n in 1..=6u32 {
            let p = family_polynomial(ScanFamily::Theta, 3, n).unwrap();
            let a = &s.pow(n - 1) * &(&s - &one).pow(n);
            let b = (&(&s * &s) - &(&s - &one)).pow(n);
            assert_eq!(p, &s * &(&a + &b), "n = {n}");
        }
    }

    #[test]
    fn family_is_power_sum() {
        let z = Complex64::new(0.7, -1.3);
        for family in [ScanFamily::Theta, ScanFamily::InfPlus] {
            let (l1, l2) = lambdas(family, 3, z).unwrap();
            let sg = (z + z.inv()) + 1.0;
            for n in [1u32, 4, 9] {
                let p = family_polynomial(family, 3, n).unwrap().eval_complex(z).unwrap();
                let f = l1.powi(n as i32) + sg * l2.powi(n as i32);
                assert!((p - f).norm() <= 1e-9 * f.norm().max(1.0));
            }
        }
    }

    #[test]
    fn degenerate_theta_one() {
        assert!(is_degenerate(ScanFamily::Theta, 1).unwrap());
        let r = scan(ScanFamily::Theta, 1, 10, 1e-10).unwrap();
        assert!(r.degenerate && r.roots.is_empty());
        assert!(!is_degenerate(ScanFamily::Theta, 2).unwrap());
    }

    #[test]
    fn small_scan() {
        let r = scan(ScanFamily::Theta, 2, 6, 1e-10).unwrap();
        assert!(!r.roots.is_empty());
        assert!(r.max_residual() <= 1e-10);
        let p = family_polynomial(ScanFamily::Theta, 2, 6).unwrap();
        let (lo, hi) = root_bounds(&p).unwrap();
        for root in &r.roots {
            assert!(root.z.norm() >= lo && root.z.norm() <= hi);
        }
    }

    #[test]
    fn structured_log_derivative_matches_coefficients() {
        for family in [ScanFamily::Theta, ScanFamily::InfPlus, ScanFamily::InfMinus] {
            let (r, q) = bead_values(family, 2).unwrap();
            let p = family_polynomial(family, 2, 4).unwrap();
            let (v, d) = eval_with_derivative(&p, Complex64::new(0.8, 1.3));
            let want = d / v;
            let got = family_log_derivative(&r, &q, 4, Complex64::new(0.8, 1.3)).unwrap();
            assert!((got - want).norm() <= 1e-9 * want.norm(), "{family:?}");
        }
    }

    #[test]
    fn family_roots_agree_with_coefficient_roots() {
        let p = family_polynomial(ScanFamily::InfPlus, 2, 3).unwrap();
        let plain = find_roots(&p, 1e-10).unwrap();
        let structured = family_roots(ScanFamily::InfPlus, 2, 3, 1e-10).unwrap();
        assert_eq!(plain.len(), structured.len());
        for z in &structured.roots {
            let d = plain.roots.iter().map(|w| (w - z).norm()).fold(f64::INFINITY, f64::min);
            assert!(d < 1e-8, "{z}");
        }
    }

    #[test]
    fn sigma_factors_are_split_off() {
        // R[C_1(Θ_3(∞+))] is σ³, whose roots are where the power-sum form is singular.
        let p = family_polynomial(ScanFamily::InfPlus, 3, 1).unwrap();
        assert_eq!(p, sigma().pow(3));
        let set = family_roots(ScanFamily::InfPlus, 3, 1, 1e-10).unwrap();
        assert_eq!(set.multiplicities, vec![3, 3]);
        let w = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
        assert!(set.roots.iter().all(|z| (z - w).norm() < 1e-15 || (z - w.conj()).norm() < 1e-15));
    }
}
