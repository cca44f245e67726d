//! Exact scalar fields: rationals, quadratic extensions a + b√d, and
//! Gaussian rationals.
//!
//! Every computation in this crate runs over one of these fields. There is
//! deliberately no floating point anywhere: the final threshold comparison
//! is tight enough that rounding is unacceptable, so all arithmetic is kept
//! in lowest-terms big rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator (`num_rational` normalises on every operation).
pub type Rational = num_rational::BigRational;

/// Exact complex number with rational real and imaginary parts.
pub type GaussRational = Complex<Rational>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("mixed radicands: cannot combine sqrt({0}) with sqrt({1})")]
    MixedRadicands(u64, u64),
    #[error("radicand {0} is not a positive squarefree integer")]
    BadRadicand(u64),
}

/// Shorthand for a rational from an integer pair.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Fractional part `q - ⌊q⌋`, always in `[0, 1)`.
///
/// This is the building block of the Reid-Tai age sums, where negative
/// weights must wrap: `frac(-1/3) = 2/3`.
pub fn frac(q: &Rational) -> Rational {
    q - q.floor()
}

/// Gaussian rational from rational parts.
pub fn gauss(re: Rational, im: Rational) -> GaussRational {
    Complex::new(re, im)
}

/// Common interface of the exact fields used by [`crate::mat::Mat`].
///
/// The bound set is what `num_traits` provides for an exact field plus a
/// total inversion test; `invert` returns `None` exactly on zero.
pub trait Scalar:
    Clone
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + fmt::Display
    + fmt::Debug
{
    fn invert(&self) -> Option<Self>;
}

impl Scalar for Rational {
    fn invert(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl Scalar for GaussRational {
    fn invert(&self) -> Option<Self> {
        let norm = &self.re * &self.re + &self.im * &self.im;
        if norm.is_zero() {
            None
        } else {
            Some(Complex::new(&self.re / &norm, -&self.im / &norm))
        }
    }
}

/// An element a + b√d of the real quadratic field ℚ(√d).
///
/// The radicand is fixed per value and must be a positive squarefree
/// integer; purely rational values carry the marker radicand 0 and combine
/// with any other value. Combining two values whose radicands are distinct
/// and both nonzero is refused: only one square root appears per
/// computation context.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadScalar {
    a: Rational,
    b: Rational,
    d: u64,
}

impl QuadScalar {
    /// Build a + b√d. Fails when `d` is not positive squarefree (for b ≠ 0).
    pub fn new(a: Rational, b: Rational, d: u64) -> Result<Self, ScalarError> {
        if !b.is_zero() && !is_squarefree(d) {
            return Err(ScalarError::BadRadicand(d));
        }
        Ok(Self { a, b, d }.normalised())
    }

    pub fn from_rational(a: Rational) -> Self {
        Self { a, b: Rational::zero(), d: 0 }
    }

    /// √d itself.
    pub fn sqrt_of(d: u64) -> Result<Self, ScalarError> {
        Self::new(Rational::zero(), Rational::one(), d)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn radical_part(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> u64 {
        self.d
    }

    /// The rational value, if the radical part vanishes.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.b.is_zero() {
            Some(self.a.clone())
        } else {
            None
        }
    }

    pub fn conjugate(&self) -> Self {
        Self { a: self.a.clone(), b: -self.b.clone(), d: self.d }.normalised()
    }

    /// Field norm a² − d·b², a rational.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - rat(self.d as i64) * &self.b * &self.b
    }

    // Rational values drop their radicand so equality stays structural.
    fn normalised(mut self) -> Self {
        if self.b.is_zero() {
            self.d = 0;
        }
        self
    }

    fn checked_combine(&self, other: &Self) -> Result<u64, ScalarError> {
        match (self.d, other.d) {
            (0, d) | (d, 0) => Ok(d),
            (d, e) if d == e => Ok(d),
            (d, e) => Err(ScalarError::MixedRadicands(d, e)),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ScalarError> {
        let d = self.checked_combine(other)?;
        Ok(Self { a: &self.a + &other.a, b: &self.b + &other.b, d }.normalised())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        let d = self.checked_combine(other)?;
        let rad = rat(d as i64);
        Ok(Self {
            a: &self.a * &other.a + &rad * &self.b * &other.b,
            b: &self.a * &other.b + &self.b * &other.a,
            d,
        }
        .normalised())
    }
}

fn is_squarefree(d: u64) -> bool {
    if d == 0 {
        return false;
    }
    let mut n = d;
    let mut f = 2u64;
    while f * f <= n {
        if n.is_multiple_of(f) {
            n /= f;
            if n.is_multiple_of(f) {
                return false;
            }
        }
        f += 1;
    }
    true
}

impl Add for QuadScalar {
    type Output = QuadScalar;
    fn add(self, rhs: QuadScalar) -> QuadScalar {
        self.checked_add(&rhs).expect("quadratic scalar addition")
    }
}

impl Sub for QuadScalar {
    type Output = QuadScalar;
    fn sub(self, rhs: QuadScalar) -> QuadScalar {
        self.checked_add(&-rhs).expect("quadratic scalar subtraction")
    }
}

impl Mul for QuadScalar {
    type Output = QuadScalar;
    fn mul(self, rhs: QuadScalar) -> QuadScalar {
        self.checked_mul(&rhs).expect("quadratic scalar multiplication")
    }
}

impl Neg for QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        QuadScalar { a: -self.a, b: -self.b, d: self.d }
    }
}

impl Zero for QuadScalar {
    fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadScalar {
    fn one() -> Self {
        Self::from_rational(Rational::one())
    }
}

impl Scalar for QuadScalar {
    fn invert(&self) -> Option<Self> {
        // (a + b√d)⁻¹ = (a − b√d)/(a² − d b²); the norm vanishes only at 0
        // since d is squarefree, hence √d irrational.
        let norm = self.norm();
        if norm.is_zero() {
            return None;
        }
        let conj = self.conjugate();
        Some(QuadScalar { a: &conj.a / &norm, b: &conj.b / &norm, d: conj.d }.normalised())
    }
}

impl fmt::Display for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}√{}", self.b, self.d);
        }
        if self.b.is_negative() {
            write!(f, "{}-{}√{}", self.a, -self.b.clone(), self.d)
        } else {
            write!(f, "{}+{}√{}", self.a, self.b, self.d)
        }
    }
}

impl fmt::Debug for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<Rational> for QuadScalar {
    fn from(a: Rational) -> Self {
        Self::from_rational(a)
    }
}

/// Serialize a rational as `{"num": "...", "den": "..."}` decimal strings.
///
/// Decimal strings rather than JSON numbers keep the output bit-exact and
/// platform independent for arbitrarily large values.
pub fn serialize_rational<S>(q: &Rational, s: S) -> Result<S::Ok, S::Error>
where
    S: serde::Serializer,
{
    use serde::ser::SerializeStruct;
    let mut st = s.serialize_struct("Rational", 2)?;
    st.serialize_field("num", &q.numer().to_string())?;
    st.serialize_field("den", &q.denom().to_string())?;
    st.end()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn frac_examples() {
        assert_eq!(frac(&ratio(7, 3)), ratio(1, 3));
        assert_eq!(frac(&ratio(-1, 3)), ratio(2, 3));
        assert_eq!(frac(&rat(2)), rat(0));
    }

    #[test]
    fn quad_norm_identity() {
        // (a + b√p)(a − b√p) = a² − p b², exactly
        let x = QuadScalar::new(ratio(3, 2), ratio(-5, 7), 5).unwrap();
        let prod = x.checked_mul(&x.conjugate()).unwrap();
        assert_eq!(prod.to_rational().unwrap(), x.norm());
    }

    #[test]
    fn quad_inverse() {
        let x = QuadScalar::new(rat(2), rat(1), 7).unwrap();
        let inv = x.invert().unwrap();
        assert!(x.checked_mul(&inv).unwrap().is_one());
        assert_eq!(QuadScalar::zero().invert(), None);
    }

    #[test]
    fn mixed_radicands_refused() {
        let x = QuadScalar::sqrt_of(5).unwrap();
        let y = QuadScalar::sqrt_of(7).unwrap();
        assert_eq!(x.checked_add(&y), Err(ScalarError::MixedRadicands(5, 7)));
        // rational values combine with anything
        let r = QuadScalar::from_rational(ratio(1, 2));
        assert!(x.checked_add(&r).is_ok());
    }

    #[test]
    fn bad_radicand_rejected() {
        assert_eq!(
            QuadScalar::new(rat(0), rat(1), 12),
            Err(ScalarError::BadRadicand(12))
        );
        assert_eq!(
            QuadScalar::new(rat(0), rat(1), 0),
            Err(ScalarError::BadRadicand(0))
        );
    }

    #[test]
    fn gauss_inverse() {
        let z = gauss(ratio(1, 2), ratio(-3, 4));
        let w = z.invert().unwrap();
        assert_eq!(z * w, GaussRational::one());
        assert_eq!(GaussRational::zero().invert(), None);
    }

    proptest! {
        #[test]
        fn frac_in_unit_interval(n in -10_000i64..10_000, d in 1i64..500) {
            let q = ratio(n, d);
            let f = frac(&q);
            prop_assert!(f >= rat(0) && f < rat(1));
            prop_assert!((q - f).is_integer());
        }

        #[test]
        fn quad_mul_commutes(
            a1 in -50i64..50, b1 in -50i64..50,
            a2 in -50i64..50, b2 in -50i64..50,
        ) {
            let x = QuadScalar::new(rat(a1), rat(b1), 5).unwrap();
            let y = QuadScalar::new(rat(a2), rat(b2), 5).unwrap();
            prop_assert_eq!(x.checked_mul(&y).unwrap(), y.checked_mul(&x).unwrap());
        }
    }
}
