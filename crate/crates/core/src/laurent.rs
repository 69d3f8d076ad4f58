//! Laurent polynomials over a contiguous exponent window.

use std::ops::{Add, Mul};

use crate::field::Field;
use crate::poly::Poly;

/// `Σ cᵢ x^(lo + i)`, trimmed at both ends. The zero polynomial has no
/// coefficients and `lo == 0`.
#[derive(Clone, PartialEq, Debug)]
pub struct Laurent<F> {
    lo: i64,
    coeffs: Vec<F>,
}

impl<F: Field> Laurent<F> {
    pub fn new(lo: i64, mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(Field::is_zero) {
            coeffs.pop();
        }
        let skip = coeffs.iter().take_while(|c| c.is_zero()).count();
        if skip == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..skip);
        Laurent {
            lo: lo + skip as i64,
            coeffs,
        }
    }

    pub fn zero() -> Self {
        Laurent {
            lo: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn from_poly(p: &Poly<F>) -> Self {
        Self::new(0, p.coeffs().to_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn hi(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.lo + self.coeffs.len() as i64 - 1)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, exp: i64) -> F {
        usize::try_from(exp - self.lo)
            .ok()
            .and_then(|i| self.coeffs.get(i).cloned())
            .unwrap_or_else(F::zero)
    }

    /// Returns `(p⁻, p⁺)`: the terms with negative exponents and the terms
    /// with nonnegative exponents.
    pub fn split(&self) -> (Laurent<F>, Poly<F>) {
        (self.window(i64::MIN, -1), self.window_poly(0, i64::MAX))
    }

    /// Terms with exponents in `0..n`; everything else is dropped.
    pub fn project(&self, n: usize) -> Poly<F> {
        self.window_poly(0, n as i64 - 1)
    }

    /// Terms with exponents in `lo..=hi`.
    pub fn window(&self, lo: i64, hi: i64) -> Laurent<F> {
        let Some(top) = self.hi() else {
            return Self::zero();
        };
        let from = lo.max(self.lo);
        let to = hi.min(top);
        if from > to {
            return Self::zero();
        }
        let a = (from - self.lo) as usize;
        let b = (to - self.lo) as usize;
        Self::new(from, self.coeffs[a..=b].to_vec())
    }

    fn window_poly(&self, lo: i64, hi: i64) -> Poly<F> {
        let w = self.window(lo, hi);
        if w.is_zero() {
            return Poly::zero();
        }
        debug_assert!(w.lo >= 0);
        let mut coeffs = vec![F::zero(); w.lo as usize];
        coeffs.extend(w.coeffs);
        Poly::new(coeffs)
    }

    pub fn eval(&self, x: &F) -> crate::error::Result<F> {
        let body = Poly::new(self.coeffs.clone()).eval(x);
        let mut scale = F::one();
        if self.lo >= 0 {
            for _ in 0..self.lo {
                scale *= x;
            }
        } else {
            let xi = x.inv()?;
            for _ in 0..(-self.lo) {
                scale *= &xi;
            }
        }
        Ok(body * &scale)
    }
}

impl<F: Field> Add for &Laurent<F> {
    type Output = Laurent<F>;
    fn add(self, rhs: &Laurent<F>) -> Laurent<F> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(rhs.lo);
        let hi = self.hi().unwrap().max(rhs.hi().unwrap());
        let coeffs = (lo..=hi)
            .map(|e| self.coeff(e) + rhs.coeff(e))
            .collect();
        Laurent::new(lo, coeffs)
    }
}

impl<F: Field> Mul for &Laurent<F> {
    type Output = Laurent<F>;
    fn mul(self, rhs: &Laurent<F>) -> Laurent<F> {
        if self.is_zero() || rhs.is_zero() {
            return Laurent::zero();
        }
        Laurent::new(self.lo + rhs.lo, F::mul_poly(&self.coeffs, &rhs.coeffs))
    }
}
