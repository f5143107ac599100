use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::{upoly, LaurentPoly, RingError};

/// Element of the fraction field of the integer Laurent ring, kept in
/// canonical reduced form.
///
/// Canonical form: numerator and denominator share no polynomial factor and
/// no integer content, the denominator has minimum exponent 0 and its
/// lowest-exponent coefficient is positive. Two fractions are equal iff
/// their canonical forms are identical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunction {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, RingError> {
        if den.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        Ok(reduce(num, den))
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self { num: p, den: LaurentPoly::one() }
    }

    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The numerator when the denominator is 1.
    pub fn to_poly(&self) -> Option<LaurentPoly> {
        self.is_polynomial().then(|| self.num.clone())
    }

    pub fn inv(&self) -> Result<Self, RingError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn mirror(&self) -> Self {
        reduce(self.num.mirror(), self.den.mirror())
    }

    pub fn eval_complex(&self, z: Complex64) -> Result<Complex64, RingError> {
        let d = self.den.eval_complex(z)?;
        if d == Complex64::new(0.0, 0.0) {
            return Err(RingError::DivisionByZero);
        }
        Ok(self.num.eval_complex(z)? / d)
    }
}

/// Canonical reduction of `num / den`; `den` must be non-zero.
fn reduce(num: LaurentPoly, den: LaurentPoly) -> RationalFunction {
    debug_assert!(!den.is_zero());
    if num.is_zero() {
        return RationalFunction::zero();
    }
    let (n, n_lo) = num.to_dense();
    let (d, d_lo) = den.to_dense();
    let g = upoly::gcd_primitive(&n, &d);
    let (mut n, mut d) = if upoly::is_unit(&g) {
        (n, d)
    } else {
        (
            upoly::div_exact(&n, &g).expect("gcd divides numerator"),
            upoly::div_exact(&d, &g).expect("gcd divides denominator"),
        )
    };
    let mut c = upoly::content(&n).gcd(&upoly::content(&d));
    if d[0].is_negative() {
        c = -c;
    }
    if !c.is_one() {
        for x in n.iter_mut() {
            *x = &*x / &c;
        }
        for x in d.iter_mut() {
            *x = &*x / &c;
        }
    }
    RationalFunction {
        num: LaurentPoly::from_dense(&n, n_lo - d_lo),
        den: LaurentPoly::from_dense(&d, 0),
    }
}

impl From<LaurentPoly> for RationalFunction {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl From<i64> for RationalFunction {
    fn from(c: i64) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }
}

impl From<BigInt> for RationalFunction {
    fn from(c: BigInt) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return reduce(&self.num + &rhs.num, self.den.clone());
        }
        reduce(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<'a> Div<&'a RationalFunction> for &'a RationalFunction {
    type Output = Result<RationalFunction, RingError>;
    fn div(self, rhs: &RationalFunction) -> Result<RationalFunction, RingError> {
        Ok(self * &rhs.inv()?)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
