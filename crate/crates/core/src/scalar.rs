//! Numeric scalars shared by the floating-point and exact-rational code paths.
//!
//! Most functionals in this crate are generic over [`Scalar`], so the same
//! routine can run on `f64` vectors produced by the solver and on
//! [`Rational`] vectors used by the exact checks.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational used by the exact verification paths.
pub type Rational = BigRational;

/// Default relative zero tolerance: entries with `|f_i| <= ZETA_REL * max|f|`
/// are classified as zero.
pub const ZETA_REL: f64 = 1e-10;

pub trait Scalar: Clone + PartialOrd + Signed + Debug + Send + Sync {
    /// Exact conversion from a finite `f64` (every finite double is a dyadic rational).
    fn of_f64(x: f64) -> Self;
    fn as_f64(&self) -> f64;
    /// Absolute threshold under which an entry of `values` counts as zero.
    fn zero_threshold(values: &[Self]) -> Self;
    /// Comparison slack for a quantity of magnitude `scale` (zero when exact).
    fn slack(scale: &Self) -> Self;

    fn from_usize(k: usize) -> Self {
        Self::of_f64(k as f64)
    }

    fn max_of(a: Self, b: Self) -> Self {
        if a >= b {
            a
        } else {
            b
        }
    }

    fn min_of(a: Self, b: Self) -> Self {
        if a <= b {
            a
        } else {
            b
        }
    }
}

impl Scalar for f64 {
    fn of_f64(x: f64) -> Self {
        x
    }

    fn as_f64(&self) -> f64 {
        *self
    }

    fn zero_threshold(values: &[Self]) -> Self {
        ZETA_REL * values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    fn slack(scale: &Self) -> Self {
        1e-12 * scale.abs()
    }
}

impl Scalar for Rational {
    fn of_f64(x: f64) -> Self {
        BigRational::from_float(x).expect("finite float")
    }

    fn as_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn zero_threshold(_values: &[Self]) -> Self {
        Rational::zero()
    }

    fn slack(_scale: &Self) -> Self {
        Rational::zero()
    }

    fn from_usize(k: usize) -> Self {
        Rational::from_integer(BigInt::from(k))
    }
}

/// Build a rational `num / den` from machine integers.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Convert a slice of `i64` numerators over a common denominator.
pub fn rational_vec(nums: &[i64], den: i64) -> Vec<Rational> {
    nums.iter().map(|&k| ratio(k, den)).collect()
}

pub fn to_f64_vec<T: Scalar>(values: &[T]) -> Vec<f64> {
    values.iter().map(Scalar::as_f64).collect()
}

pub fn from_f64_vec<T: Scalar>(values: &[f64]) -> Vec<T> {
    values.iter().map(|&x| T::of_f64(x)).collect()
}

/// Sign of `x` after zero classification with absolute threshold `zeta`.
pub fn sign_of<T: Scalar>(x: &T, zeta: &T) -> i8 {
    if x.abs() <= *zeta {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Closed interval `[lo, hi]`, used for the set-valued sign `Sgn(0) = [-1, 1]`.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct Interval<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Scalar> Interval<T> {
    pub fn point(x: T) -> Self {
        Self {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn zero() -> Self {
        Self::point(T::zero())
    }

    /// `Sgn` of a classified sign: `{±1}` off zero, `[-1, 1]` at zero.
    pub fn sgn(sign: i8) -> Self {
        match sign {
            1 => Self::point(T::one()),
            -1 => Self::point(-T::one()),
            _ => Self {
                lo: -T::one(),
                hi: T::one(),
            },
        }
    }

    pub fn contains(&self, x: &T) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&T::zero())
    }

    /// Same as [`contains_zero`](Self::contains_zero) with slack `tol` on both ends.
    pub fn contains_zero_within(&self, tol: &T) -> bool {
        self.lo <= *tol && -tol.clone() <= self.hi
    }

    /// Distance from 0 to the interval (0 when it contains 0).
    pub fn distance_to_zero(&self) -> T {
        if self.lo.is_positive() {
            self.lo.clone()
        } else if self.hi.is_negative() {
            -self.hi.clone()
        } else {
            T::zero()
        }
    }

    /// Product with a scalar; reorders endpoints for negative factors.
    pub fn scale(&self, k: &T) -> Self {
        let a = self.lo.clone() * k.clone();
        let b = self.hi.clone() * k.clone();
        if a <= b {
            Self { lo: a, hi: b }
        } else {
            Self { lo: b, hi: a }
        }
    }
}

impl<T: Scalar> Add for Interval<T> {
    type Output = Interval<T>;
    fn add(self, rhs: Self) -> Self {
        Interval {
            lo: self.lo + rhs.lo,
            hi: self.hi + rhs.hi,
        }
    }
}

impl<T: Scalar> Sub for Interval<T> {
    type Output = Interval<T>;
    fn sub(self, rhs: Self) -> Self {
        Interval {
            lo: self.lo - rhs.hi,
            hi: self.hi - rhs.lo,
        }
    }
}

impl<T: Scalar> Neg for Interval<T> {
    type Output = Interval<T>;
    fn neg(self) -> Self {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl<T: Scalar> Mul<T> for Interval<T> {
    type Output = Interval<T>;
    fn mul(self, k: T) -> Self {
        self.scale(&k)
    }
}

/// Exact value of an integral `f64` as `i64`, if it is one.
pub fn as_exact_integer(x: f64) -> Option<i64> {
    if x.is_finite() && x.fract() == 0.0 && x.abs() < 9.0e15 {
        Some(x as i64)
    } else {
        None
    }
}
