//! 2×2 polynomial matrices, polynomial 2- and 3-vectors, and Newton
//! inversion of 2×2 matrix power series.

use crate::error::{Error, Result};
use crate::field::{Field, ZERO_THRESHOLD};
use crate::poly::Poly;

/// Row-major 2×2 matrix of polynomials. For a divisor built from two
/// syzygies the columns are the syzygies' first two coordinates.
#[derive(Clone, PartialEq, Debug)]
pub struct PolyMat2<F> {
    pub entries: [[Poly<F>; 2]; 2],
}

#[derive(Clone, PartialEq, Debug)]
pub struct PolyVec2<F>(pub [Poly<F>; 2]);

#[derive(Clone, PartialEq, Debug)]
pub struct PolyVec3<F>(pub [Poly<F>; 3]);

fn max_degree<'a, F: Field + 'a>(polys: impl IntoIterator<Item = &'a Poly<F>>) -> Option<usize> {
    polys.into_iter().filter_map(Poly::degree).max()
}

impl<F: Field> PolyVec2<F> {
    pub fn new(a: Poly<F>, b: Poly<F>) -> Self {
        PolyVec2([a, b])
    }

    pub fn zero() -> Self {
        PolyVec2([Poly::zero(), Poly::zero()])
    }

    pub fn degree(&self) -> Option<usize> {
        max_degree(&self.0)
    }

    pub fn sub(&self, other: &Self) -> Self {
        PolyVec2([&self.0[0] - &other.0[0], &self.0[1] - &other.0[1]])
    }

    pub fn max_norm(&self) -> f64 {
        self.0.iter().map(Poly::max_norm).fold(0.0, f64::max)
    }
}

impl<F: Field> PolyVec3<F> {
    pub fn degree(&self) -> Option<usize> {
        max_degree(&self.0)
    }
}

impl<F: Field> PolyMat2<F> {
    pub fn new(e: Poly<F>, e2: Poly<F>, f: Poly<F>, f2: Poly<F>) -> Self {
        PolyMat2 {
            entries: [[e, e2], [f, f2]],
        }
    }

    pub fn identity() -> Self {
        Self::new(Poly::one(), Poly::zero(), Poly::zero(), Poly::one())
    }

    pub fn from_scalars(m: [[F; 2]; 2]) -> Self {
        let [[a, b], [c, d]] = m;
        Self::new(
            Poly::constant(a),
            Poly::constant(b),
            Poly::constant(c),
            Poly::constant(d),
        )
    }

    pub fn degree(&self) -> Option<usize> {
        max_degree(self.entries.iter().flatten())
    }

    /// Coefficient matrix of `xᵏ`.
    pub fn coeff_matrix(&self, k: usize) -> [[F; 2]; 2] {
        let e = &self.entries;
        [
            [e[0][0].coeff(k), e[0][1].coeff(k)],
            [e[1][0].coeff(k), e[1][1].coeff(k)],
        ]
    }

    fn map(&self, f: impl Fn(&Poly<F>) -> Result<Poly<F>>) -> Result<Self> {
        let e = &self.entries;
        Ok(Self::new(f(&e[0][0])?, f(&e[0][1])?, f(&e[1][0])?, f(&e[1][1])?))
    }

    /// Entrywise reversal at degree `d`.
    pub fn reverse(&self, d: usize) -> Result<Self> {
        self.map(|p| p.reverse(d))
    }

    /// Entrywise reduction modulo `xᵏ`.
    pub fn truncate(&self, k: usize) -> Self {
        self.map(|p| Ok(p.truncate(k))).expect("truncation cannot fail")
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (a, b) = (&self.entries, &other.entries);
        Self::new(
            &a[0][0] - &b[0][0],
            &a[0][1] - &b[0][1],
            &a[1][0] - &b[1][0],
            &a[1][1] - &b[1][1],
        )
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(|p| Ok(p.scale(c))).expect("scaling cannot fail")
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = (&self.entries, &other.entries);
        let dot = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
        Self::new(dot(0, 0), dot(0, 1), dot(1, 0), dot(1, 1))
    }

    /// Product reduced modulo `xᵏ`; operands are truncated first.
    pub fn mul_trunc(&self, other: &Self, k: usize) -> Self {
        self.truncate(k).mul(&other.truncate(k)).truncate(k)
    }

    pub fn mul_vec(&self, v: &PolyVec2<F>) -> PolyVec2<F> {
        let a = &self.entries;
        let row = |i: usize| &(&a[i][0] * &v.0[0]) + &(&a[i][1] * &v.0[1]);
        PolyVec2([row(0), row(1)])
    }

    pub fn max_norm(&self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .map(Poly::max_norm)
            .fold(0.0, f64::max)
    }
}

/// Inverse of a 2×2 scalar matrix. Exact fields reject a zero determinant;
/// inexact ones reject `|det| < ε₀·max|entry|²`.
pub fn invert_scalar_2x2<F: Field>(m: &[[F; 2]; 2]) -> Option<[[F; 2]; 2]> {
    let [[a, b], [c, d]] = m;
    let det = a.clone() * d - b.clone() * c;
    if F::EXACT {
        if det.is_zero() {
            return None;
        }
    } else {
        let scale = m.iter().flatten().map(Field::magnitude).fold(0.0, f64::max);
        if scale == 0.0 || det.magnitude() < ZERO_THRESHOLD * scale * scale {
            return None;
        }
    }
    let di = det.inv().ok()?;
    Some([
        [d.clone() * &di, -(b.clone() * &di)],
        [-(c.clone() * &di), a.clone() * &di],
    ])
}

/// Returns `W` with `W·B̂ ≡ I₂ (mod xᵏ)`.
///
/// Starts from `W₀ = B̂(0)⁻¹` and applies `W ← 2W − W·B̂·W`, doubling the
/// precision each step (1, 2, 4, …) with every product truncated to the
/// new precision; the result is reduced modulo `xᵏ`.
pub fn series_inverse_2x2<F: Field>(b: &PolyMat2<F>, k: usize) -> Result<PolyMat2<F>> {
    let w0 = invert_scalar_2x2(&b.coeff_matrix(0)).ok_or(Error::SingularConstantTerm)?;
    let mut w = PolyMat2::from_scalars(w0);
    let two = F::from_i64(2);
    let mut prec = 1;
    while prec < k {
        prec *= 2;
        let bw = b.mul_trunc(&w, prec);
        let wbw = w.mul_trunc(&bw, prec);
        w = w.scale(&two).sub(&wbw);
    }
    Ok(w.truncate(k))
}
