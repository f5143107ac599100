//! Double-double complex arithmetic, just enough for Horner evaluation with
//! about 32 significant digits.

use core::ops::{Add, Mul};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub(crate) struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd { hi: s, lo: b - (s - a) }
}

fn split(a: f64) -> (f64, f64) {
    let t = 134_217_729.0 * a;
    let hi = t - (t - a);
    (hi, a - hi)
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    (p, ((ah * bh - p) + ah * bl + al * bh) + al * bl)
}

impl Dd {
    pub(crate) fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    /// Double-double nearest to `c / 2^shift`, up to rounding of the low
    /// word.
    pub(crate) fn from_bigint(c: &BigInt, shift: u64) -> Self {
        let c: BigInt = if shift > 0 { c >> shift } else { c.clone() };
        let hi = c.to_f64().unwrap_or(0.0);
        let lo = (c - float_to_bigint(hi)).to_f64().unwrap_or(0.0);
        quick_two_sum(hi, lo)
    }

    pub(crate) fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

/// Exact integer value of an integral double.
fn float_to_bigint(x: f64) -> BigInt {
    let bits = x.to_bits();
    let sign = if bits >> 63 == 1 { -1 } else { 1 };
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    if exp == 0 {
        return BigInt::from(0);
    }
    let mant = BigInt::from(frac | (1u64 << 52));
    let e = exp - 1075;
    let v = if e >= 0 { mant << e as u64 } else { mant >> (-e) as u64 };
    v * sign
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        quick_two_sum(s, e + self.lo + b.lo)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        quick_two_sum(p, e + self.hi * b.lo + self.lo * b.hi)
    }
}

impl core::ops::Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub(crate) struct CDd {
    re: Dd,
    im: Dd,
}

impl CDd {
    pub(crate) fn real(re: Dd) -> Self {
        Self { re, im: Dd::default() }
    }

    pub(crate) fn from_c64(z: Complex64) -> Self {
        Self { re: Dd::from_f64(z.re), im: Dd::from_f64(z.im) }
    }

    pub(crate) fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

impl Add for CDd {
    type Output = CDd;
    fn add(self, b: CDd) -> CDd {
        CDd { re: self.re + b.re, im: self.im + b.im }
    }
}

impl Mul for CDd {
    type Output = CDd;
    fn mul(self, b: CDd) -> CDd {
        CDd {
            re: self.re * b.re + -(self.im * b.im),
            im: self.re * b.im + self.im * b.re,
        }
    }
}

/// `p(z)` and `p'(z)` with coefficients lowest degree first.
pub(crate) fn horner(c: &[CDd], z: Complex64) -> (Complex64, Complex64) {
    let z = CDd::from_c64(z);
    let mut p = CDd::default();
    let mut dp = CDd::default();
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p.to_c64(), dp.to_c64())
}
