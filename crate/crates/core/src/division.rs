//! Division of polynomial 2-vectors by 2×2 polynomial matrices, and the
//! Toeplitz solver built on it.
//!
//! For `E` of degree `m` and `B` of degree `n` with invertible leading
//! matrix, reversing coefficients turns `E = B·Q + R` into
//! `Ê = B̂·Q̂ + z^{m−n+1}·R̂`, so `Q̂ = B̂⁻¹·Ê mod z^{m−n+1}` and `R = E − B·Q`.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;
use crate::polymat::{invert_scalar_2x2, series_inverse_2x2, PolyMat2, PolyVec2};
use crate::syzygy::{n_basis, BasisMethod, NBasis, SyzygyVector};
use crate::toeplitz::ToeplitzMatrix;

#[derive(Clone, PartialEq, Debug)]
pub struct DivisionResult<F> {
    pub quotient: PolyVec2<F>,
    pub remainder: PolyVec2<F>,
}

/// `E = B·Q + R` with `deg R < deg B`.
pub fn polymat_divrem<F: Field>(e: &PolyVec2<F>, b: &PolyMat2<F>) -> Result<DivisionResult<F>> {
    polymat_divrem_with_precision(e, b, 0)
}

/// As [`polymat_divrem`], computing `B̂⁻¹` modulo `z^k` for
/// `k = max(precision, m − n + 1)`. Any such `k` yields the same result.
pub fn polymat_divrem_with_precision<F: Field>(
    e: &PolyVec2<F>,
    b: &PolyMat2<F>,
    precision: usize,
) -> Result<DivisionResult<F>> {
    let n = b.degree().ok_or(Error::SingularLeadingMatrix)?;
    let m = match e.degree() {
        Some(m) if m >= n => m,
        dividend => return Err(Error::DegreePrecondition { dividend, divisor: n }),
    };
    MatrixDivisor::new(b, (m - n + 1).max(precision))?.divrem(e)
}

/// A divisor with `B̂⁻¹` precomputed, for repeated divisions.
#[derive(Clone, Debug)]
pub struct MatrixDivisor<F> {
    b: PolyMat2<F>,
    n: usize,
    inverse: PolyMat2<F>,
    order: usize,
}

impl<F: Field> MatrixDivisor<F> {
    /// Accepts dividends of degree below `deg B + order`.
    pub fn new(b: &PolyMat2<F>, order: usize) -> Result<Self> {
        let n = b.degree().ok_or(Error::SingularLeadingMatrix)?;
        if invert_scalar_2x2(&b.coeff_matrix(n)).is_none() {
            return Err(Error::SingularLeadingMatrix);
        }
        let inverse = series_inverse_2x2(&b.reverse(n)?, order.max(1))?;
        Ok(MatrixDivisor {
            b: b.clone(),
            n,
            inverse,
            order: order.max(1),
        })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn divrem(&self, e: &PolyVec2<F>) -> Result<DivisionResult<F>> {
        let n = self.n;
        let m = match e.degree() {
            Some(m) if m >= n => m,
            dividend => return Err(Error::DegreePrecondition { dividend, divisor: n }),
        };
        let k = m - n + 1;
        if k > self.order {
            return Err(Error::InsufficientOrder {
                needed: k,
                available: self.order,
            });
        }
        let e_hat = PolyVec2([e.0[0].reverse(m)?.truncate(k), e.0[1].reverse(m)?.truncate(k)]);
        let q_hat = self.inverse.truncate(k).mul_vec(&e_hat);
        let quotient = PolyVec2([
            q_hat.0[0].truncate(k).reverse(m - n)?,
            q_hat.0[1].truncate(k).reverse(m - n)?,
        ]);

        let mut remainder = e.sub(&self.b.mul_vec(&quotient));
        if !F::EXACT {
            // the cancelled high coefficients survive as round-off
            remainder = PolyVec2([remainder.0[0].truncate(n), remainder.0[1].truncate(n)]);
        }
        Ok(DivisionResult { quotient, remainder })
    }
}

/// How well the solution satisfies `T·u = g`.
#[derive(Clone, Copy, PartialEq, Debug)]
pub enum Residual {
    /// `T·u = g` holds exactly.
    Exact,
    /// `‖T·u − g‖∞ / ((‖col‖₁ + ‖row‖₁)·‖u‖∞)`.
    Relative(f64),
}

#[derive(Clone, Copy, PartialEq, Debug, Default)]
pub struct StageTimings {
    pub basis: Duration,
    pub division: Duration,
    pub verify: Duration,
}

impl StageTimings {
    pub fn total(&self) -> Duration {
        self.basis + self.division + self.verify
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct SolveReport<F> {
    pub solution: Vec<F>,
    pub residual: Residual,
    pub basis_method: BasisMethod,
    pub timings: StageTimings,
}

/// Solves `T·u = g`.
///
/// `u` is the first coordinate of the remainder of `(0, xⁿ·g)` divided by
/// the basis matrix `[[ρ₁.u, ρ₂.u], [ρ₁.v, ρ₂.v]]`.
///
/// [`crate::modular::rational_solve`] is a faster exact alternative.
pub fn solve<F: Field>(t: &ToeplitzMatrix<F>, g: &[F]) -> Result<SolveReport<F>> {
    check_len(t, g)?;
    let start = Instant::now();
    let (basis, method) = n_basis(t)?;
    let basis_time = start.elapsed();
    let mut report = solve_with_basis(t, &basis, method, g)?;
    report.timings.basis = basis_time;
    Ok(report)
}

fn check_len<F: Field>(t: &ToeplitzMatrix<F>, g: &[F]) -> Result<()> {
    if g.len() != t.n() {
        return Err(Error::LengthMismatch {
            expected: t.n(),
            actual: g.len(),
        });
    }
    Ok(())
}

/// The division and verification stages of [`solve`] for a known basis.
pub fn solve_with_basis<F: Field>(
    t: &ToeplitzMatrix<F>,
    basis: &NBasis<F>,
    method: BasisMethod,
    g: &[F],
) -> Result<SolveReport<F>> {
    check_len(t, g)?;
    let n = t.n();
    let gp = Poly::new(g.to_vec());

    let start = Instant::now();
    let solution = if gp.is_zero() {
        vec![F::zero(); n]
    } else {
        let e = PolyVec2([Poly::zero(), gp.shift(n)]);
        let r = polymat_divrem(&e, &basis.division_matrix())?.remainder;
        assert!(
            r.degree().map_or(true, |d| d < n),
            "remainder degree {:?} is not below n = {n}: the basis is broken",
            r.degree()
        );
        r.0[0].padded(n)
    };
    let division = start.elapsed();

    let start = Instant::now();
    let residual = verify(t, &solution, g)?;
    let timings = StageTimings {
        basis: Duration::ZERO,
        division,
        verify: start.elapsed(),
    };
    Ok(SolveReport {
        solution,
        residual,
        basis_method: method,
        timings,
    })
}

fn verify<F: Field>(t: &ToeplitzMatrix<F>, u: &[F], g: &[F]) -> Result<Residual> {
    let tu = t.matvec(u)?;
    if F::EXACT {
        if tu != g {
            return Err(Error::InconsistentSyzygy(
                "solution fails the T·u = g check".into(),
            ));
        }
        return Ok(Residual::Exact);
    }
    let err = tu
        .iter()
        .zip(g)
        .map(|(a, b)| (a.clone() - b).magnitude())
        .fold(0.0, f64::max);
    let unorm = u.iter().map(Field::magnitude).fold(0.0, f64::max);
    let scale = t.coefficient_norm() * unorm;
    Ok(Residual::Relative(if scale == 0.0 { err } else { err / scale }))
}

/// The unique `(u, v, w)` of degree below `n` with
/// `T̃·u + xⁿ·v + (x²ⁿ − 1)·w = g`: the remainder of `(0, xⁿ·g, −g)` by
/// the full basis.
pub fn solve_full<F: Field>(t: &ToeplitzMatrix<F>, g: &[F]) -> Result<SyzygyVector<F>> {
    check_len(t, g)?;
    let n = t.n();
    let gp = Poly::new(g.to_vec());
    if gp.is_zero() {
        return Ok(SyzygyVector::new(Poly::zero(), Poly::zero(), Poly::zero()));
    }
    let (basis, _) = n_basis(t)?;
    let e = PolyVec2([Poly::zero(), gp.shift(n)]);
    let DivisionResult {
        quotient: q,
        remainder: r,
    } = polymat_divrem(&e, &basis.division_matrix())?;
    let mut w = &(-&gp) - &(&(&basis.rho1.w * &q.0[0]) + &(&basis.rho2.w * &q.0[1]));
    if !F::EXACT {
        w = w.truncate(n);
    }
    let [u, v] = r.0;
    Ok(SyzygyVector::new(u, v, w))
}
