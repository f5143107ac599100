use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::iter::{Product, Sum};
use core::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::upoly;
use super::RingError;

/// Laurent polynomial in one variable with arbitrary-precision integer
/// coefficients.
///
/// The term map never stores a zero coefficient, so structural equality is
/// polynomial equality and the zero polynomial is the empty map.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant<C: Into<BigInt>>(c: C) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * A^exp`.
    pub fn monomial<C: Into<BigInt>>(c: C, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, c.into());
        p
    }

    /// The variable `A`.
    pub fn var() -> Self {
        Self::monomial(1, 1)
    }

    /// `σ = A + 1 + A^-1`.
    pub fn sigma() -> Self {
        Self::from_coeffs(-1, &[1, 1, 1])
    }

    /// Dense constructor: `coeffs[i]` is the coefficient of `A^(min_exp + i)`.
    pub fn from_coeffs(min_exp: i64, coeffs: &[i64]) -> Self {
        coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| (min_exp + i as i64, BigInt::from(c)))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Iterates `(exponent, coefficient)` in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Width of the exponent support, `max_exp - min_exp`; zero for the zero
    /// polynomial.
    pub fn span(&self) -> u64 {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => (hi - lo) as u64,
            _ => 0,
        }
    }

    pub fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// Multiplies by `A^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, v)| (e, v * c)).collect(),
        }
    }

    /// Substitutes `A -> A^-1`.
    pub fn mirror(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Evaluates in double precision. The non-negative and negative exponent
    /// parts are each evaluated by Horner's rule, the latter in `1/z`.
    pub fn eval_complex(&self, z: Complex64) -> Result<Complex64, RingError> {
        let has_negative = self.min_exp().is_some_and(|e| e < 0);
        if z == Complex64::new(0.0, 0.0) && has_negative {
            return Err(RingError::ZeroInput);
        }
        let hi = self.max_exp().unwrap_or(0).max(0);
        let mut pos = Complex64::new(0.0, 0.0);
        for k in (0..=hi).rev() {
            pos = pos * z + to_f64(self.terms.get(&k));
        }
        if !has_negative {
            return Ok(pos);
        }
        let w = z.inv();
        let lo = -self.min_exp().unwrap();
        let mut neg = Complex64::new(0.0, 0.0);
        for k in (1..=lo).rev() {
            neg = (neg + to_f64(self.terms.get(&-k))) * w;
        }
        Ok(pos + neg)
    }

    /// `Σ |c_k| |z|^k`, the natural magnitude against which `|p(z)|` is judged.
    pub fn abs_scale(&self, z: Complex64) -> Result<f64, RingError> {
        let abs_poly: LaurentPoly = self.terms().map(|(e, c)| (e, c.abs())).collect();
        Ok(abs_poly.eval_complex(Complex64::new(z.norm(), 0.0))?.re)
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`
    /// in the Laurent ring.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (n, n_lo) = self.to_dense();
        let (dd, d_lo) = d.to_dense();
        let q = upoly::div_exact(&n, &dd)?;
        Some(Self::from_dense(&q, n_lo - d_lo))
    }

    /// Like [`div_exact`](Self::div_exact) but reports failure as an error.
    pub fn try_div(&self, d: &LaurentPoly) -> Result<LaurentPoly, RingError> {
        if d.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        self.div_exact(d).ok_or(RingError::InexactDivision)
    }

    /// Ordinary polynomial image: coefficients from the lowest exponent up,
    /// together with that lowest exponent.
    pub(crate) fn to_dense(&self) -> (Vec<BigInt>, i64) {
        let lo = match self.min_exp() {
            Some(lo) => lo,
            None => return (Vec::new(), 0),
        };
        let hi = self.max_exp().unwrap();
        let mut out = alloc::vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (&e, c) in &self.terms {
            out[(e - lo) as usize] = c.clone();
        }
        (out, lo)
    }

    pub(crate) fn from_dense(coeffs: &[BigInt], lo: i64) -> Self {
        coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (lo + i as i64, c.clone()))
            .collect()
    }
}

fn to_f64(c: Option<&BigInt>) -> Complex64 {
    Complex64::new(c.and_then(|c| c.to_f64()).unwrap_or(0.0), 0.0)
}

impl FromIterator<(i64, BigInt)> for LaurentPoly {
    fn from_iter<I: IntoIterator<Item = (i64, BigInt)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in iter {
            p.add_term(e, c);
        }
        p
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl From<BigInt> for LaurentPoly {
    fn from(c: BigInt) -> Self {
        Self::constant(c)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, -c);
        }
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut acc: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (&ea, ca) in &self.terms {
            for (&eb, cb) in &rhs.terms {
                *acc.entry(ea + eb).or_default() += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        LaurentPoly { terms: acc }
    }
}

impl MulAssign<&LaurentPoly> for LaurentPoly {
    fn mul_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self * rhs;
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.terms.values_mut() {
            *c = -core::mem::take(c);
        }
        self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<LaurentPoly> for &'a LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        *self += &rhs;
    }
}

impl Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

impl<'a> Sum<&'a LaurentPoly> for LaurentPoly {
    fn sum<I: Iterator<Item = &'a LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |mut acc, p| {
            acc += p;
            acc
        })
    }
}

impl Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::one(), |acc, p| &acc * &p)
    }
}

impl<'a> Product<&'a LaurentPoly> for LaurentPoly {
    fn product<I: Iterator<Item = &'a LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::one(), |acc, p| &acc * p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    fn p(lo: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_coeffs(lo, c)
    }

    #[test]
    fn sigma_terms() {
        let s = LaurentPoly::sigma();
        assert_eq!(s.coeff(1), BigInt::from(1));
        assert_eq!(s.coeff(0), BigInt::from(1));
        assert_eq!(s.coeff(-1), BigInt::from(1));
        assert_eq!(s.num_terms(), 3);
    }

    #[test]
    fn sigma_evaluations() {
        let s = LaurentPoly::sigma();
        assert!((s.eval_complex(Complex64::new(1.0, 0.0)).unwrap() - 3.0).norm() < 1e-15);
        let omega = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
        assert!(s.eval_complex(omega).unwrap().norm() < 1e-14);
        assert!((s.eval_complex(Complex64::new(-1.0, 0.0)).unwrap() + 1.0).norm() < 1e-15);
        assert!((s.eval_complex(Complex64::new(0.0, 1.0)).unwrap() - 1.0).norm() < 1e-15);
    }

    #[test]
    fn additive_inverse_is_empty() {
        let s = LaurentPoly::sigma();
        let z = &s + &(-&s);
        assert!(z.is_zero());
        assert_eq!(z.num_terms(), 0);
    }

    #[test]
    fn sigma_squared() {
        assert_eq!(LaurentPoly::sigma().pow(2), p(-2, &[1, 2, 3, 2, 1]));
    }

    #[test]
    fn shift_of_sigma() {
        let r = LaurentPoly::monomial(1, -2) * LaurentPoly::sigma();
        assert_eq!(r, p(-3, &[1, 1, 1]));
    }

    #[test]
    fn mirror_cases() {
        let s = LaurentPoly::sigma();
        let a2s = LaurentPoly::monomial(1, -2) * &s;
        assert_eq!(a2s.mirror(), LaurentPoly::monomial(1, 2) * &s);
        assert_eq!(s.mirror(), s);
        assert_eq!(a2s.mirror().mirror(), a2s);
    }

    #[test]
    fn zero_input_rejected_only_with_negative_exponents() {
        let zero = Complex64::new(0.0, 0.0);
        assert_eq!(LaurentPoly::sigma().eval_complex(zero), Err(RingError::ZeroInput));
        assert_eq!(p(0, &[5, 1]).eval_complex(zero).unwrap(), Complex64::new(5.0, 0.0));
    }

    #[test]
    fn exact_division() {
        let s = LaurentPoly::sigma();
        let s2 = s.pow(2);
        assert_eq!(s2.div_exact(&s), Some(s.clone()));
        assert_eq!(s.div_exact(&s2), None);
        assert_eq!(s.try_div(&LaurentPoly::zero()), Err(RingError::DivisionByZero));
        // 1 + σ^3 = (1 + σ)(1 - σ + σ^2)
        let one = LaurentPoly::one();
        let lhs = &one + &s.pow(3);
        let q = lhs.div_exact(&(&one + &s)).unwrap();
        assert_eq!(q, &(&one - &s) + &s2);
    }

    #[test]
    fn huge_coefficients_do_not_overflow() {
        let big = LaurentPoly::sigma().pow(200);
        assert!(big.coeff(0).bits() > 64);
        assert_eq!(big.mirror(), big);
    }
}
