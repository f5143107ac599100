//! Simultaneous root refinement (Aberth–Ehrlich) in double precision.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Float, ToPrimitive, Zero};

use super::dd::{self, CDd, Dd};
use super::ZerosError;
use crate::ring::{upoly, LaurentPoly};

/// Largest degree (after clearing negative exponents) `find_roots` accepts.
pub const MAX_DEGREE: usize = 5000;

const MAX_ITER: usize = 1000;
const POLISH_ITER: usize = 2000;

/// Roots closer than this to the origin are dropped as clearing artifacts.
const ORIGIN_EPS: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    /// Distinct roots.
    pub roots: Vec<Complex64>,
    /// Multiplicity of each root as a factor of the polynomial.
    pub multiplicities: Vec<u32>,
    /// `|p(z)| / Σ |c_k| |z|^k` for each root.
    pub residuals: Vec<f64>,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

/// Normalised backward error of `z` as a root of `p`, evaluated through
/// [`LaurentPoly::eval_complex`].
pub fn residual(p: &LaurentPoly, z: Complex64) -> Result<f64, ZerosError> {
    let v = p.eval_complex(z)?;
    let scale = p.abs_scale(z)?;
    Ok(if scale == 0.0 { v.norm() } else { v.norm() / scale })
}

/// All non-zero roots of `p`, each refined until its residual is at most
/// `tol`. Repeated factors are split off exactly first, so every reported
/// root is distinct and carries its multiplicity.
pub fn find_roots(p: &LaurentPoly, tol: f64) -> Result<RootSet, ZerosError> {
    if p.is_zero() {
        return Err(ZerosError::ZeroPolynomial);
    }
    let (dense, _) = p.to_dense();
    let degree = dense.len() - 1;
    if degree > MAX_DEGREE {
        return Err(ZerosError::DegreeTooLarge { degree, limit: MAX_DEGREE });
    }
    let mut out = RootSet { roots: Vec::new(), multiplicities: Vec::new(), residuals: Vec::new() };
    for (factor, mult) in upoly::squarefree_decomposition(&dense) {
        let stop = (4.0 * factor.len() as f64 * f64::EPSILON).min(tol);
        for z in aberth(&Factor::new(&factor), stop) {
            if z.norm() < ORIGIN_EPS {
                continue;
            }
            out.roots.push(z);
            out.multiplicities.push(mult);
            out.residuals.push(residual(p, z)?);
        }
    }
    collapse_duplicates(&mut out);
    if out.residuals.iter().any(|&r| r.is_nan() || r > tol) {
        return Err(ZerosError::NoConvergence(alloc::boxed::Box::new(out)));
    }
    Ok(out)
}

/// Like [`find_roots`], but the largest squarefree factor is refined with
/// the caller's logarithmic derivative `p'(z)/p(z)` instead of Horner's rule
/// on the expanded coefficients. Polynomials built as short sums of high
/// powers are tiny compared to their coefficients on large parts of the
/// plane, where no fixed-precision coefficient evaluation can locate the
/// roots; evaluating them in their compact form can. `log_deriv` returns
/// `None` where it cannot be evaluated.
pub fn find_roots_with<F>(p: &LaurentPoly, tol: f64, log_deriv: F) -> Result<RootSet, ZerosError>
where
    F: Fn(Complex64) -> Option<Complex64>,
{
    if p.is_zero() {
        return Err(ZerosError::ZeroPolynomial);
    }
    let (dense, lo) = p.to_dense();
    let degree = dense.len() - 1;
    if degree > MAX_DEGREE {
        return Err(ZerosError::DegreeTooLarge { degree, limit: MAX_DEGREE });
    }
    let parts = upoly::squarefree_decomposition(&dense);
    let Some(big) = (0..parts.len()).max_by_key(|&i| parts[i].0.len()) else {
        return Ok(RootSet { roots: Vec::new(), multiplicities: Vec::new(), residuals: Vec::new() });
    };
    let factors: Vec<(Factor, u32)> = parts.iter().map(|(f, m)| (Factor::new(f), *m)).collect();
    let big_log_deriv = |z: Complex64| {
        let mut l = log_deriv(z)? - lo as f64 / z;
        for (i, (f, m)) in factors.iter().enumerate() {
            if i != big {
                l -= f.log_deriv(z) * *m as f64;
            }
        }
        let l = l / factors[big].1 as f64;
        l.is_finite().then_some(l)
    };

    let mut out = RootSet { roots: Vec::new(), multiplicities: Vec::new(), residuals: Vec::new() };
    for (i, (f, mult)) in factors.iter().enumerate() {
        let zs = if i == big {
            aberth_log_deriv(initial_guesses(&f.c), &big_log_deriv)
        } else {
            let stop = (4.0 * f.c.len() as f64 * f64::EPSILON).min(tol);
            aberth(f, stop)
        };
        for z in zs {
            if z.norm() < ORIGIN_EPS {
                continue;
            }
            out.roots.push(z);
            out.multiplicities.push(*mult);
            out.residuals.push(residual(p, z)?);
        }
    }
    collapse_duplicates(&mut out);
    if out.residuals.iter().any(|&r| r.is_nan() || r > tol) {
        return Err(ZerosError::NoConvergence(alloc::boxed::Box::new(out)));
    }
    Ok(out)
}

/// Coefficients as doubles after a common power-of-two scaling that keeps
/// the largest one in range.
fn to_f64_coeffs(p: &[BigInt]) -> Vec<Complex64> {
    let shift = coeff_shift(p);
    p.iter()
        .map(|c| {
            let scaled: BigInt = if shift > 0 { c >> shift } else { c.clone() };
            Complex64::new(scaled.to_f64().unwrap_or(0.0), 0.0)
        })
        .collect()
}

fn coeff_shift(p: &[BigInt]) -> u64 {
    let bits = p.iter().map(|c| c.bits()).max().unwrap_or(0);
    bits.saturating_sub(900)
}

/// `p(z)` and `p'(z)` by Horner's rule, coefficients lowest degree first.
fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// Evaluation of `|c|` at `|z|`, the scale that rounding errors in Horner's
/// rule are proportional to.
fn abs_horner(c: &[Complex64], r: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, a| acc * r + a.norm())
}

/// Newton correction `p(z)/p'(z)` together with the normalised residual.
/// Outside the unit disc the reversed polynomial is used so that the
/// powers of `z` stay bounded.
fn newton(c: &[Complex64], rev: &[Complex64], z: Complex64) -> (Complex64, f64) {
    let n = (c.len() - 1) as f64;
    if z.norm() <= 1.0 {
        let (p, dp) = horner(c, z);
        let scale = abs_horner(c, z.norm());
        (p / dp, p.norm() / scale)
    } else {
        let w = z.inv();
        let (q, dq) = horner(rev, w);
        let scale = abs_horner(rev, w.norm());
        (z * q / (q * n - w * dq), q.norm() / scale)
    }
}

/// Starting points on circles whose radii come from the upper convex hull
/// of `(k, log |c_k|)`, one circle per hull edge.
fn initial_guesses(c: &[Complex64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let pts: Vec<(usize, f64)> = c
        .iter()
        .enumerate()
        .filter(|(_, a)| a.norm() > 0.0)
        .map(|(k, a)| (k, Float::ln(a.norm())))
        .collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (k1, y1) = hull[hull.len() - 2];
            let (k2, y2) = hull[hull.len() - 1];
            let cross = (k2 as f64 - k1 as f64) * (pt.1 - y1) - (y2 - y1) * (pt.0 as f64 - k1 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let mut out = Vec::with_capacity(n);
    for pair in hull.windows(2) {
        let ((k1, y1), (k2, y2)) = (pair[0], pair[1]);
        let m = k2 - k1;
        let radius = Float::exp((y1 - y2) / m as f64);
        for j in 0..m {
            let angle = 2.0 * PI * j as f64 / m as f64 + 2.0 * PI * k1 as f64 / n as f64 + 0.4;
            out.push(Complex64::from_polar(radius, angle));
        }
    }
    out
}

/// Coefficients of a squarefree factor in both working precisions, and
/// their reversals for evaluation outside the unit disc.
struct Factor {
    c: Vec<Complex64>,
    rev: Vec<Complex64>,
    cdd: Vec<CDd>,
    rev_dd: Vec<CDd>,
}

impl Factor {
    fn new(p: &[BigInt]) -> Self {
        let c = to_f64_coeffs(p);
        let shift = coeff_shift(p);
        let cdd: Vec<CDd> = p.iter().map(|x| CDd::real(Dd::from_bigint(x, shift))).collect();
        Self {
            rev: c.iter().rev().copied().collect(),
            c,
            rev_dd: cdd.iter().rev().copied().collect(),
            cdd,
        }
    }

    fn degree(&self) -> usize {
        self.c.len() - 1
    }

    /// `p'(z)/p(z)` in double precision.
    fn log_deriv(&self, z: Complex64) -> Complex64 {
        if z.norm() <= 1.0 {
            let (p, dp) = horner(&self.c, z);
            dp / p
        } else {
            let w = z.inv();
            let (q, dq) = horner(&self.rev, w);
            w * (Complex64::new(self.degree() as f64, 0.0) - w * dq / q)
        }
    }

    /// Newton correction `p(z)/p'(z)` from double-double evaluation.
    fn newton_dd(&self, z: Complex64) -> Complex64 {
        if z.norm() <= 1.0 {
            let (p, dp) = dd::horner(&self.cdd, z);
            p / dp
        } else {
            let w = z.inv();
            let (q, dq) = dd::horner(&self.rev_dd, w);
            z * q / (q * self.degree() as f64 - w * dq)
        }
    }
}

/// One Aberth–Ehrlich update of `z[i]` from the Newton correction `ratio`.
/// Returns the step taken, or `None` if it was not finite.
fn aberth_step(z: &mut [Complex64], i: usize, ratio: Complex64) -> Option<Complex64> {
    let mut pull = Complex64::zero();
    for (j, &zj) in z.iter().enumerate() {
        if j != i {
            pull += (z[i] - zj).inv();
        }
    }
    let step = ratio / (Complex64::new(1.0, 0.0) - ratio * pull);
    if !step.is_finite() {
        // Nudge a point that landed on another approximation.
        z[i] *= Complex64::from_polar(1.0 + 1e-7, 1e-3);
        return None;
    }
    z[i] -= step;
    Some(step)
}

/// Aberth–Ehrlich iteration. A first pass in double precision stops once
/// each point's residual is below `stop`; a second pass evaluates in
/// double-double precision, which matters for ill-conditioned clusters,
/// and runs until the corrections vanish at double precision.
fn aberth(f: &Factor, stop: f64) -> Vec<Complex64> {
    let n = f.degree();
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return alloc::vec![-f.c[0] / f.c[1]];
    }
    let mut z = initial_guesses(&f.c);
    let mut done = alloc::vec![false; n];
    for _ in 0..MAX_ITER {
        let mut active = false;
        for i in 0..n {
            if done[i] {
                continue;
            }
            active = true;
            let (ratio, res) = newton(&f.c, &f.rev, z[i]);
            if res <= stop || ratio.norm() == 0.0 {
                done[i] = true;
                continue;
            }
            if let Some(step) = aberth_step(&mut z, i, ratio) {
                if step.norm() <= 2.0 * f64::EPSILON * z[i].norm() {
                    done[i] = true;
                }
            }
        }
        if !active {
            break;
        }
    }
    done.iter_mut().for_each(|d| *d = false);
    for _ in 0..POLISH_ITER {
        let mut active = false;
        for i in 0..n {
            if done[i] {
                continue;
            }
            active = true;
            let ratio = f.newton_dd(z[i]);
            if ratio.norm() == 0.0 {
                done[i] = true;
                continue;
            }
            if let Some(step) = aberth_step(&mut z, i, ratio) {
                if step.norm() <= 4.0 * f64::EPSILON * z[i].norm() {
                    done[i] = true;
                }
            }
        }
        if !active {
            break;
        }
    }
    z
}

/// Aberth–Ehrlich iteration driven by a logarithmic derivative alone.
fn aberth_log_deriv<F>(mut z: Vec<Complex64>, log_deriv: &F) -> Vec<Complex64>
where
    F: Fn(Complex64) -> Option<Complex64>,
{
    let n = z.len();
    let mut done = alloc::vec![false; n];
    for _ in 0..MAX_ITER {
        let mut active = false;
        for i in 0..n {
            if done[i] {
                continue;
            }
            active = true;
            let ratio = match log_deriv(z[i]) {
                Some(l) if l.norm().is_infinite() => {
                    done[i] = true;
                    continue;
                }
                Some(l) if l.norm() > 0.0 => l.inv(),
                _ => {
                    z[i] *= Complex64::from_polar(1.0 + 1e-7, 1e-3);
                    continue;
                }
            };
            if let Some(step) = aberth_step(&mut z, i, ratio) {
                if step.norm() <= 4.0 * f64::EPSILON * z[i].norm() {
                    done[i] = true;
                }
            }
        }
        if !active {
            break;
        }
    }
    z
}

/// Merges approximations that coincide to within rounding; keeps the one
/// with the smaller residual and adds multiplicities.
fn collapse_duplicates(set: &mut RootSet) {
    let mut i = 0;
    while i < set.roots.len() {
        let mut j = i + 1;
        while j < set.roots.len() {
            let zi = set.roots[i];
            let zj = set.roots[j];
            if (zi - zj).norm() <= 1e-12 * zi.norm().max(1.0) {
                if set.residuals[j] < set.residuals[i] {
                    set.roots[i] = zj;
                    set.residuals[i] = set.residuals[j];
                }
                set.multiplicities[i] += set.multiplicities[j];
                set.roots.remove(j);
                set.residuals.remove(j);
                set.multiplicities.remove(j);
            } else {
                j += 1;
            }
        }
        i += 1;
    }
}

/// Cauchy-type bounds: every root `z` satisfies `lo <= |z| <= hi`.
pub fn root_bounds(p: &LaurentPoly) -> Option<(f64, f64)> {
    let (dense, _) = p.to_dense();
    if dense.len() < 2 {
        return None;
    }
    let mags: Vec<f64> = to_f64_coeffs(&dense).iter().map(|c| c.norm()).collect();
    let lead = *mags.last()?;
    let constant = mags[0];
    let hi = 1.0 + mags[..mags.len() - 1].iter().fold(0.0f64, |m, &a| m.max(a / lead));
    let lo = 1.0 / (1.0 + mags[1..].iter().fold(0.0f64, |m, &a| m.max(a / constant)));
    Some((lo, hi))
}
