//! Coefficient fields.
//!
//! [`Rational`] wraps an arbitrary precision fraction and is exact.
//! [`Real`] wraps an `f64`; values with magnitude below [`ZERO_THRESHOLD`]
//! count as zero, and inverting one is an error rather than a NaN.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::dense::{self, DenseMatrix};
use crate::error::{Error, Result};
use crate::fft;
use crate::literal;
use crate::modular;
use crate::syzygy::NBasis;
use crate::toeplitz::ToeplitzMatrix;

/// Magnitude below which a [`Real`] is treated as zero.
pub const ZERO_THRESHOLD: f64 = 1e-12;

/// Below this length float products use the schoolbook loop.
const FFT_CUTOFF: usize = 32;

pub trait Field:
    Sized
    + Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + Sub<Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + Mul<Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    /// Whether arithmetic is exact. Inexact fields compare against
    /// tolerances instead of exact zero.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Result<Self>;
    fn abs(&self) -> Self;
    fn to_f64(&self) -> f64;

    /// Parses a decimal, integer or `p/q` literal.
    fn parse_literal(s: &str) -> Result<Self>;

    /// Draws a random value: in `[-1, 1]` for ordered fields, a uniform
    /// residue for prime fields.
    fn sample_unit<R: Rng + ?Sized>(rng: &mut R) -> Self;

    fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self.clone() * &other.inv()?)
    }

    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }

    /// Product of two coefficient vectors (lowest degree first).
    fn mul_poly(a: &[Self], b: &[Self]) -> Vec<Self> {
        schoolbook_mul(a, b)
    }

    /// Solves `m · X = rhs` for each right-hand side column.
    fn solve_dense(m: &DenseMatrix<Self>, rhs: &[Vec<Self>]) -> Result<Vec<Vec<Self>>> {
        dense::gauss_solve(m, rhs)
    }

    /// Field-specific route to the Euclidean basis. `None` runs the
    /// remainder sequence directly in the field.
    fn eea_basis(_t: &ToeplitzMatrix<Self>) -> Option<Result<NBasis<Self>>> {
        None
    }
}

pub fn schoolbook_mul<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![F::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &(x.clone() * y);
        }
    }
    out
}

macro_rules! forward_binops {
    ($ty:ident) => {
        impl Add for $ty {
            type Output = $ty;
            fn add(self, rhs: $ty) -> $ty {
                $ty(self.0 + rhs.0)
            }
        }
        impl<'a> Add<&'a $ty> for $ty {
            type Output = $ty;
            fn add(self, rhs: &'a $ty) -> $ty {
                $ty(self.0 + &rhs.0)
            }
        }
        impl Sub for $ty {
            type Output = $ty;
            fn sub(self, rhs: $ty) -> $ty {
                $ty(self.0 - rhs.0)
            }
        }
        impl<'a> Sub<&'a $ty> for $ty {
            type Output = $ty;
            fn sub(self, rhs: &'a $ty) -> $ty {
                $ty(self.0 - &rhs.0)
            }
        }
        impl Mul for $ty {
            type Output = $ty;
            fn mul(self, rhs: $ty) -> $ty {
                $ty(self.0 * rhs.0)
            }
        }
        impl<'a> Mul<&'a $ty> for $ty {
            type Output = $ty;
            fn mul(self, rhs: &'a $ty) -> $ty {
                $ty(self.0 * &rhs.0)
            }
        }
        impl Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                $ty(-self.0)
            }
        }
        impl<'a> AddAssign<&'a $ty> for $ty {
            fn add_assign(&mut self, rhs: &'a $ty) {
                self.0 += &rhs.0;
            }
        }
        impl<'a> SubAssign<&'a $ty> for $ty {
            fn sub_assign(&mut self, rhs: &'a $ty) {
                self.0 -= &rhs.0;
            }
        }
        impl<'a> MulAssign<&'a $ty> for $ty {
            fn mul_assign(&mut self, rhs: &'a $ty) {
                self.0 *= &rhs.0;
            }
        }
    };
}

/// Exact arbitrary precision fraction.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Rational(pub BigRational);

forward_binops!(Rational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Self {
        Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }
}

impl fmt::Display for Rational {
    /// `p` for integers, `p/q` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_literal(s)
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(v)))
    }
}

impl Field for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Rational(BigRational::zero())
    }

    fn one() -> Self {
        Rational(BigRational::from_integer(BigInt::from(1)))
    }

    fn from_i64(v: i64) -> Self {
        v.into()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn inv(&self) -> Result<Self> {
        if self.0.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(Rational(self.0.recip()))
        }
    }

    fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    fn parse_literal(s: &str) -> Result<Self> {
        literal::parse_rational(s).map(Rational)
    }

    fn sample_unit<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let q: i64 = rng.gen_range(1..=8);
        let p: i64 = rng.gen_range(-q..=q);
        Rational::new(p, q)
    }

    fn solve_dense(m: &DenseMatrix<Self>, rhs: &[Vec<Self>]) -> Result<Vec<Vec<Self>>> {
        dense::bareiss_solve(m, rhs)
    }

    fn eea_basis(t: &ToeplitzMatrix<Self>) -> Option<Result<NBasis<Self>>> {
        Some(modular::rational_eea_basis(t))
    }

    /// Integer product over common denominators: one normalization per
    /// output coefficient instead of one per term.
    fn mul_poly(a: &[Self], b: &[Self]) -> Vec<Self> {
        if a.len().min(b.len()) < 4 {
            return schoolbook_mul(a, b);
        }
        let (ai, da) = to_integers(a);
        let (bi, db) = to_integers(b);
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in ai.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in bi.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        let d = da * db;
        out.into_iter()
            .map(|c| Rational(BigRational::new(c, d.clone())))
            .collect()
    }
}

/// Numerators over the least common denominator.
fn to_integers(v: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let d = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let nums = v.iter().map(|x| x.numer() * (&d / x.denom())).collect();
    (nums, d)
}

/// Double precision real.
#[derive(Clone, Copy, PartialEq, PartialOrd, Debug, Default)]
pub struct Real(pub f64);

forward_binops!(Real);

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for Real {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_literal(s)
    }
}

impl From<f64> for Real {
    fn from(v: f64) -> Self {
        Real(v)
    }
}

impl Field for Real {
    const EXACT: bool = false;

    fn zero() -> Self {
        Real(0.0)
    }

    fn one() -> Self {
        Real(1.0)
    }

    fn from_i64(v: i64) -> Self {
        Real(v as f64)
    }

    fn is_zero(&self) -> bool {
        self.0.abs() < ZERO_THRESHOLD
    }

    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(Real(1.0 / self.0))
        }
    }

    fn abs(&self) -> Self {
        Real(self.0.abs())
    }

    fn to_f64(&self) -> f64 {
        self.0
    }

    fn parse_literal(s: &str) -> Result<Self> {
        literal::parse_real(s).map(Real)
    }

    fn sample_unit<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Real(rng.gen_range(-1.0..=1.0))
    }

    fn mul_poly(a: &[Self], b: &[Self]) -> Vec<Self> {
        if a.len().min(b.len()) <= FFT_CUTOFF {
            return schoolbook_mul(a, b);
        }
        let a: Vec<f64> = a.iter().map(|x| x.0).collect();
        let b: Vec<f64> = b.iter().map(|x| x.0).collect();
        fft::fft_mul(&a, &b).into_iter().map(Real).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_inverse_is_exact() {
        let a = Rational::new(7, 13);
        let b = Rational::new(13, 7);
        assert_eq!(a.clone() * &b, Rational::one());
        assert_eq!(a.inv().unwrap(), b);
        assert_eq!(Rational::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn real_division_below_threshold_is_an_error() {
        assert_eq!(Real(1e-13).inv(), Err(Error::DivisionByZero));
        assert_eq!(Real(2.0).checked_div(&Real(0.0)), Err(Error::DivisionByZero));
        assert_eq!(Real(1.0).checked_div(&Real(4.0)).unwrap(), Real(0.25));
    }

    #[test]
    fn rational_display() {
        assert_eq!(Rational::new(-2, 6).to_string(), "-1/3");
        assert_eq!(Rational::new(4, 2).to_string(), "2");
    }

    #[test]
    fn samples_stay_in_unit_interval() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            assert!(Rational::sample_unit(&mut rng).to_f64().abs() <= 1.0);
            assert!(Real::sample_unit(&mut rng).0.abs() <= 1.0);
        }
    }
}
