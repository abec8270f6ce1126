use core::fmt::Debug;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;
pub type C64 = Complex<f64>;

/// Scalar field of a [`Matrix`](super::Matrix): complex floats or exact rationals.
pub trait Scalar:
    Clone + Debug + PartialEq + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    /// True when arithmetic is exact, so residuals are either zero or not.
    const EXACT: bool;

    fn conj(&self) -> Self;

    fn from_rational(r: &Rational) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&Rational::from_integer(v.into()))
    }

    /// Modulus as a float, used for residuals.
    fn magnitude(&self) -> f64;

    /// Multiplicative inverse; `None` for zero.
    fn inverse(&self) -> Option<Self>;
}

impl Scalar for C64 {
    const EXACT: bool = false;

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn from_rational(r: &Rational) -> Self {
        Complex::new(r.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn from_i64(v: i64) -> Self {
        Complex::new(v as f64, 0.0)
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Complex::inv(self))
        }
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn conj(&self) -> Self {
        self.clone()
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}
