//! The syzygy module `ML(T̃, xⁿ, x²ⁿ − 1)` and its canonical `n`-basis.
//!
//! A triple `(u, v, w)` lies in the module when
//! `T̃·u + xⁿ·v + (x²ⁿ − 1)·w = 0`. For invertible `T` the module has a
//! basis `ρ₁, ρ₂` of degree exactly `n`, pinned down by requiring the
//! coefficient triples of `xⁿ` to be `(1, 0, 0)` and `(0, 1, 0)`:
//!
//! ```text
//! ρ₁ = (xⁿ − u,  −v,       −w)          T·u  = Z·T·eₙ
//! ρ₂ = (−u′,     xⁿ − v′,  −w′ − 1)     T·u′ = e₁
//! ```

use std::fmt;

use crate::dense::DenseMatrix;
use crate::eea::eea_with_stop;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::levinson::levinson_solve;
use crate::poly::Poly;
use crate::polymat::PolyMat2;
use crate::toeplitz::ToeplitzMatrix;

/// Largest float size for which [`n_basis`] uses dense elimination.
pub const DENSE_BASIS_LIMIT: usize = 512;

/// Relative tolerance of the float membership check in [`NBasis::validate`].
const FLOAT_RESIDUAL_TOL: f64 = 1e-8;

#[derive(Clone, PartialEq, Debug)]
pub struct SyzygyVector<F> {
    pub u: Poly<F>,
    pub v: Poly<F>,
    pub w: Poly<F>,
}

impl<F: Field> SyzygyVector<F> {
    pub fn new(u: Poly<F>, v: Poly<F>, w: Poly<F>) -> Self {
        SyzygyVector { u, v, w }
    }

    /// Maximum degree over the three coordinates.
    pub fn degree(&self) -> Option<usize> {
        [&self.u, &self.v, &self.w].into_iter().filter_map(Poly::degree).max()
    }

    /// Coefficients of `xᵏ` in `(u, v, w)`.
    pub fn coeff_triple(&self, k: usize) -> [F; 3] {
        [self.u.coeff(k), self.v.coeff(k), self.w.coeff(k)]
    }

    pub fn max_norm(&self) -> f64 {
        [&self.u, &self.v, &self.w]
            .into_iter()
            .map(Poly::max_norm)
            .fold(0.0, f64::max)
    }
}

/// Canonical basis `(ρ₁, ρ₂)` of `ML(T̃, xⁿ, x²ⁿ − 1)`.
#[derive(Clone, PartialEq, Debug)]
pub struct NBasis<F> {
    pub rho1: SyzygyVector<F>,
    pub rho2: SyzygyVector<F>,
    pub n: usize,
}

impl<F: Field> NBasis<F> {
    /// Checks degrees, the `xⁿ` normalization and membership. Exact fields
    /// need a zero residual; floats a residual below `1e−8` relative to
    /// `‖T‖·‖ρ‖`.
    pub fn validate(&self, t: &ToeplitzMatrix<F>) -> Result<()> {
        let n = self.n;
        if t.n() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: t.n(),
            });
        }
        let (zero, one) = (F::zero(), F::one());
        let expected = [
            [one.clone(), zero.clone(), zero.clone()],
            [zero.clone(), one, zero],
        ];
        for (i, (rho, lead)) in [&self.rho1, &self.rho2].into_iter().zip(&expected).enumerate() {
            if rho.degree() != Some(n) {
                return Err(Error::InconsistentSyzygy(format!(
                    "rho{} has degree {:?}, expected {n}",
                    i + 1,
                    rho.degree()
                )));
            }
            if !rho.coeff_triple(n).iter().zip(lead).all(|(a, b)| (a.clone() - b).is_zero()) {
                return Err(Error::InconsistentSyzygy(format!(
                    "rho{} is not normalized at x^{n}",
                    i + 1
                )));
            }
            let res = residual(t, rho, &Poly::zero());
            let ok = if F::EXACT {
                res.is_zero()
            } else {
                let scale = t.coefficient_norm() * rho.max_norm().max(1.0);
                res.max_norm() <= FLOAT_RESIDUAL_TOL * scale
            };
            if !ok {
                return Err(Error::InconsistentSyzygy(format!(
                    "rho{} has nonzero residual (max {:e})",
                    i + 1,
                    res.max_norm()
                )));
            }
        }
        Ok(())
    }

    /// `[[ρ₁.u, ρ₂.u], [ρ₁.v, ρ₂.v]]`, whose `xⁿ` coefficient is `I₂`.
    pub fn division_matrix(&self) -> PolyMat2<F> {
        PolyMat2::new(
            self.rho1.u.clone(),
            self.rho2.u.clone(),
            self.rho1.v.clone(),
            self.rho2.v.clone(),
        )
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BasisMethod {
    /// Degree-stopped Euclidean algorithm.
    Eea,
    /// Dense elimination after the Euclidean algorithm degenerated or the
    /// Levinson recursion hit a singular leading section.
    DenseFallback,
    Dense,
    Levinson,
}

impl BasisMethod {
    pub fn name(self) -> &'static str {
        match self {
            BasisMethod::Eea => "eea",
            BasisMethod::DenseFallback => "dense-fallback",
            BasisMethod::Dense => "dense",
            BasisMethod::Levinson => "levinson",
        }
    }
}

impl fmt::Display for BasisMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `T̃·u + xⁿ·v + (x²ⁿ − 1)·w − g`.
pub fn residual<F: Field>(t: &ToeplitzMatrix<F>, s: &SyzygyVector<F>, g: &Poly<F>) -> Poly<F> {
    let n = t.n();
    let tu = &t.tilde_symbol() * &s.u;
    let xv = s.v.shift(n);
    let w = &s.w.shift(2 * n) - &s.w;
    &(&(&tu + &xv) + &w) - g
}

/// Matrix of `(p, q, r) ↦ T̃p + xⁿq + (x²ⁿ − 1)r` from `𝕜[x]³_{n−1}` to
/// `𝕜[x]_{3n−1}`, with block layout `[[T₀, 0, −I], [T₁, I, 0], [T₂, 0, I]]`.
pub fn build_s<F: Field>(t: &ToeplitzMatrix<F>) -> DenseMatrix<F> {
    let n = t.n();
    let tilde = t.tilde_symbol();
    DenseMatrix::from_fn(3 * n, 3 * n, |i, j| {
        if j < n {
            if i >= j {
                tilde.coeff(i - j)
            } else {
                F::zero()
            }
        } else if i == j {
            F::one()
        } else if j >= 2 * n && i == j - 2 * n {
            -F::one()
        } else {
            F::zero()
        }
    })
}

/// Right-hand sides `Z·T·eₙ` and `e₁` of the two column systems.
pub(crate) fn column_rhs<F: Field>(t: &ToeplitzMatrix<F>) -> [Vec<F>; 2] {
    let n = t.n();
    let shifted_last_col = (0..n).map(|i| t.t(i as isize - n as isize)).collect();
    let mut e1 = vec![F::zero(); n];
    e1[0] = F::one();
    [shifted_last_col, e1]
}

/// Assembles the basis from `T·u = Z·T·eₙ` and `T·u′ = e₁`, reading the
/// blocks `T₁·u` and `T₂·u` off the product `T̃·u`.
pub(crate) fn basis_from_columns<F: Field>(t: &ToeplitzMatrix<F>, mut cols: Vec<Vec<F>>) -> NBasis<F> {
    let n = t.n();
    let uprime = cols.pop().expect("two solutions");
    let u = cols.pop().expect("two solutions");
    let tilde = t.tilde_symbol();
    let xn = Poly::x_pow(n);

    let u = Poly::new(u);
    let tu = &tilde * &u;
    let v = &tilde.slice(0, n) - &tu.slice(n, 2 * n);
    let w = &tilde.slice(n, 2 * n) - &tu.slice(2 * n, 3 * n);
    let rho1 = SyzygyVector::new(&xn - &u, -&v, -&w);

    let uprime = Poly::new(uprime);
    let tu = &tilde * &uprime;
    let vprime = -&tu.slice(n, 2 * n);
    let wprime = -&tu.slice(2 * n, 3 * n);
    let rho2 = SyzygyVector::new(-&uprime, &xn - &vprime, &(-&wprime) - &Poly::one());

    NBasis { rho1, rho2, n }
}

/// Basis from two dense solves with `T`, i.e. the `3n × 3n` systems in `S`
/// after block elimination: `T = T₀ + T₂` gives `T·u = c₁ + c₃`, then
/// `v = c₂ − T₁u` and `w = c₃ − T₂u`.
pub fn n_basis_dense<F: Field>(t: &ToeplitzMatrix<F>) -> Result<NBasis<F>> {
    Ok(basis_from_columns(t, t.dense_solve_many(&column_rhs(t))?))
}

/// As [`n_basis_dense`] with both columns from the Levinson recursion.
/// Needs every leading principal section of `T` to be invertible.
pub fn n_basis_levinson<F: Field>(t: &ToeplitzMatrix<F>) -> Result<NBasis<F>> {
    Ok(basis_from_columns(t, levinson_solve(t, &column_rhs(t))?))
}

/// Completes a first coordinate `a` to a syzygy `(a, v, w)` with `w` of
/// degree below `n`, by splitting `−T̃·a = xⁿ·v + (x²ⁿ − 1)·w`.
fn complete_syzygy<F: Field>(t: &ToeplitzMatrix<F>, a: Poly<F>) -> Result<SyzygyVector<F>> {
    let n = t.n();
    let h = -&(&t.tilde_symbol() * &a);
    let w = -&h.truncate(n);
    let rest = &(&h + &w) - &w.shift(2 * n);
    let v = rest.slice(n, usize::MAX);
    let s = SyzygyVector::new(a, v, w);
    if !residual(t, &s, &Poly::zero()).is_zero() {
        return Err(Error::InconsistentSyzygy(
            "first coordinate does not extend to a syzygy".into(),
        ));
    }
    Ok(s)
}

fn degree_as_i64(d: Option<usize>) -> i64 {
    d.map_or(i64::MIN, |d| d as i64)
}

/// Basis from the Euclidean algorithm on `x²ⁿ⁻¹` and `x^{n−1}·T(x)`.
///
/// With `σ·x^{n−1}T + τ·x²ⁿ⁻¹ = r`, the coefficients `n−1 … 2n−2` of
/// `σ·x^{n−1}T` are the entries of `T·σ`. The first remainder of degree
/// `n − 1` therefore gives `T·σ = c·e₁`, and its successor, of degree
/// `n − 2`, has a degree `n` cofactor whose monic form is `ρ₁.u`.
/// Any other degree pattern raises [`Error::DegenerateDegreeSequence`].
///
/// Over `Q` the sequence runs modulo a prime and the basis is lifted; see
/// [`crate::modular`]. [`n_basis_eea_classical`] runs it in `Q` itself.
pub fn n_basis_eea<F: Field>(t: &ToeplitzMatrix<F>) -> Result<NBasis<F>> {
    if let Some(b) = F::eea_basis(t) {
        return b;
    }
    n_basis_eea_classical(t)
}

/// [`n_basis_eea`] with the remainder sequence computed in `F`.
pub fn n_basis_eea_classical<F: Field>(t: &ToeplitzMatrix<F>) -> Result<NBasis<F>> {
    if !F::EXACT {
        return Err(Error::Unsupported(
            "the Euclidean basis needs exact arithmetic",
        ));
    }
    let n = t.n();
    let p = t.shifted_symbol();
    let trace = eea_with_stop(&Poly::x_pow(2 * n - 1), &p, Some(n - 1));

    let row = trace.stop_row();
    if row.r.degree() != Some(n - 1) {
        return Err(Error::DegenerateDegreeSequence {
            expected: n as i64 - 1,
            found: row.r.degree(),
        });
    }
    let next = trace.next_row().expect("r_l is nonzero");
    if degree_as_i64(next.r.degree()) != n as i64 - 2 {
        return Err(Error::DegenerateDegreeSequence {
            expected: n as i64 - 2,
            found: next.r.degree(),
        });
    }

    let c1 = row.r.leading().expect("nonzero").inv()?;
    let uprime = row.t.scale(&c1);
    let m = next.t.make_monic()?;
    if uprime.degree().map_or(false, |d| d >= n) || m.degree() != Some(n) {
        return Err(Error::InconsistentSyzygy(
            "Euclidean cofactors have unexpected degrees".into(),
        ));
    }

    let basis = NBasis {
        rho1: complete_syzygy(t, m)?,
        rho2: complete_syzygy(t, -&uprime)?,
        n,
    };
    basis.validate(t)?;
    Ok(basis)
}

/// Basis by the default strategy for the field.
///
/// Exact: Euclidean algorithm, dense elimination if it degenerates.
/// Float: dense elimination up to [`DENSE_BASIS_LIMIT`], Levinson above
/// it with dense elimination as the fallback.
pub fn n_basis<F: Field>(t: &ToeplitzMatrix<F>) -> Result<(NBasis<F>, BasisMethod)> {
    if F::EXACT {
        return match n_basis_eea(t) {
            Ok(b) => Ok((b, BasisMethod::Eea)),
            Err(Error::DegenerateDegreeSequence { .. }) => {
                Ok((n_basis_dense(t)?, BasisMethod::DenseFallback))
            }
            Err(e) => Err(e),
        };
    }
    if t.n() <= DENSE_BASIS_LIMIT {
        return Ok((n_basis_dense(t)?, BasisMethod::Dense));
    }
    match n_basis_levinson(t) {
        Ok(b) => Ok((b, BasisMethod::Levinson)),
        Err(e) if e.is_singular() => Ok((n_basis_dense(t)?, BasisMethod::DenseFallback)),
        Err(e) => Err(e),
    }
}

/// `(u′, u)` with `T·u′ = e₁` (first column of `T⁻¹`) and `T·u = Z·T·eₙ`.
pub fn inverse_columns<F: Field>(t: &ToeplitzMatrix<F>) -> Result<(Vec<F>, Vec<F>)> {
    let (basis, _) = n_basis(t)?;
    let n = t.n();
    let uprime = (-&basis.rho2.u).padded(n);
    let u = (&Poly::x_pow(n) - &basis.rho1.u).padded(n);
    Ok((uprime, u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Rational, Real};
    use crate::toeplitz::Family;

    fn q(v: i64) -> Rational {
        Rational::from(v)
    }

    fn qp(v: &[(i64, i64)]) -> Poly<Rational> {
        Poly::new(v.iter().map(|&(a, b)| Rational::new(a, b)).collect())
    }

    fn running_example() -> ToeplitzMatrix<Rational> {
        ToeplitzMatrix::new(vec![q(2), q(1)], vec![q(2), q(1)]).unwrap()
    }

    fn identity_basis(n: usize) -> NBasis<Rational> {
        let xn = Poly::x_pow(n);
        NBasis {
            rho1: SyzygyVector::new(xn.clone(), -&Poly::one(), Poly::zero()),
            rho2: SyzygyVector::new(-&Poly::one(), xn, -&Poly::one()),
            n,
        }
    }

    #[test]
    fn residual_examples() {
        let t = ToeplitzMatrix::<Rational>::identity(2);
        let s = SyzygyVector::new(Poly::x_pow(2), -&Poly::one(), Poly::zero());
        assert!(residual(&t, &s, &Poly::zero()).is_zero());

        let t: ToeplitzMatrix<Rational> = ToeplitzMatrix::random(3, 5, Family::Uniform);
        let g = qp(&[(1, 2), (-3, 1), (2, 7)]);
        let s = SyzygyVector::new(Poly::zero(), g.shift(3), -&g);
        assert!(residual(&t, &s, &g).is_zero());
    }

    #[test]
    fn residual_matches_s_matrix() {
        let n = 4;
        for seed in 0..10 {
            let t: ToeplitzMatrix<Rational> = ToeplitzMatrix::random(n, seed, Family::Uniform);
            let r: ToeplitzMatrix<Rational> = ToeplitzMatrix::random(3 * n, seed + 1, Family::Uniform);
            let x = r.first_col().to_vec();
            let s = SyzygyVector::new(
                Poly::new(x[..n].to_vec()),
                Poly::new(x[n..2 * n].to_vec()),
                Poly::new(x[2 * n..].to_vec()),
            );
            let g = Poly::new(r.first_row()[..n].to_vec());
            let mut expected = build_s(&t).mul_vec(&x).unwrap();
            for (e, gi) in expected.iter_mut().zip(g.padded(n)) {
                *e -= &gi;
            }
            assert_eq!(residual(&t, &s, &g), Poly::new(expected));
        }
    }

    #[test]
    fn s_matrix_examples() {
        let t = ToeplitzMatrix::<Rational>::identity(1);
        let s = build_s(&t);
        let expected = [[1, 0, -1], [0, 1, 0], [0, 0, 1]];
        for (i, row) in expected.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                assert_eq!(s.get(i, j), &q(v));
            }
        }
    }

    #[test]
    fn s_blocks_recompose_t_and_have_full_rank() {
        for n in 1..=8 {
            let t: ToeplitzMatrix<Rational> = ToeplitzMatrix::random(n, n as u64, Family::DiagonallyDominant);
            let s = build_s(&t);
            let dense = t.to_dense();
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(s.get(i, j).clone() + s.get(2 * n + i, j), *dense.get(i, j));
                }
            }
            assert_eq!(s.rank(), 3 * n);
        }
        let ones = ToeplitzMatrix::new(vec![q(1); 3], vec![q(1); 3]).unwrap();
        assert!(build_s(&ones).rank() < 9);
    }

    #[test]
    fn identity_basis_by_every_method() {
        for n in 1..6 {
            let t = ToeplitzMatrix::<Rational>::identity(n);
            assert_eq!(n_basis_dense(&t).unwrap(), identity_basis(n));
            assert_eq!(n_basis_levinson(&t).unwrap(), identity_basis(n));
            assert!(matches!(
                n_basis_eea(&t),
                Err(Error::DegenerateDegreeSequence { .. })
            ));
            let (b, method) = n_basis(&t).unwrap();
            assert_eq!(method, BasisMethod::DenseFallback);
            assert_eq!(b, identity_basis(n));
        }
    }

    #[test]
    fn running_example_basis() {
        let t = running_example();
        let b = n_basis_eea(&t).unwrap();
        assert_eq!(b.rho1.u, qp(&[(1, 3), (-2, 3), (1, 1)]));
        assert_eq!(b.rho2.u, qp(&[(-2, 3), (1, 3)]));
        assert_eq!(b, n_basis_dense(&t).unwrap());
        b.validate(&t).unwrap();

        let (uprime, u) = inverse_columns(&t).unwrap();
        assert_eq!(uprime, vec![Rational::new(2, 3), Rational::new(-1, 3)]);
        assert_eq!(u, vec![Rational::new(-1, 3), Rational::new(2, 3)]);
    }

    #[test]
    fn eea_and_dense_agree_on_random_instances() {
        let mut compared = 0;
        for seed in 0..100 {
            let n = 1 + seed as usize % 16;
            let t: ToeplitzMatrix<Rational> = ToeplitzMatrix::random(n, seed, Family::Uniform);
            let Ok(dense) = n_basis_dense(&t) else {
                continue;
            };
            dense.validate(&t).unwrap();
            match n_basis_eea(&t) {
                Ok(b) => {
                    assert_eq!(b, dense);
                    compared += 1;
                }
                Err(Error::DegenerateDegreeSequence { .. }) => {}
                Err(e) => panic!("seed {seed}: {e}"),
            }
        }
        assert!(compared > 50, "only {compared} normal sequences");
    }

    #[test]
    fn lifted_and_classical_sequences_agree() {
        for seed in 0..40 {
            let n = 1 + seed as usize % 8;
            let t: ToeplitzMatrix<Rational> = ToeplitzMatrix::random(n, seed, Family::Uniform);
            match (n_basis_eea(&t), n_basis_eea_classical(&t)) {
                (Ok(a), Ok(b)) => assert_eq!(a, b),
                (Err(a), Err(b)) => assert_eq!(
                    std::mem::discriminant(&a),
                    std::mem::discriminant(&b),
                    "seed {seed}: {a} vs {b}"
                ),
                (a, b) => panic!("seed {seed}: {a:?} vs {b:?}"),
            }
        }
    }

    #[test]
    fn inverse_columns_on_random_instances() {
        for seed in 0..30 {
            let n = 1 + seed as usize % 32;
            let t: ToeplitzMatrix<Rational> = ToeplitzMatrix::random(n, seed, Family::Uniform);
            let Ok((uprime, u)) = inverse_columns(&t) else {
                assert!(t.dense_solve(&column_rhs(&t)[1]).is_err());
                continue;
            };
            let [ztn, e1] = column_rhs(&t);
            assert_eq!(t.matvec(&uprime).unwrap(), e1);
            assert_eq!(t.matvec(&u).unwrap(), ztn);
        }
    }

    #[test]
    fn singular_matrix_has_no_basis() {
        let ones = ToeplitzMatrix::new(vec![q(1); 3], vec![q(1); 3]).unwrap();
        assert!(n_basis(&ones).unwrap_err().is_singular());
    }

    #[test]
    fn float_bases_validate() {
        let t: ToeplitzMatrix<Real> = ToeplitzMatrix::random(40, 1, Family::DiagonallyDominant);
        let dense = n_basis_dense(&t).unwrap();
        dense.validate(&t).unwrap();
        let lev = n_basis_levinson(&t).unwrap();
        lev.validate(&t).unwrap();
        let diff = (&dense.rho1.u - &lev.rho1.u).max_norm() + (&dense.rho2.v - &lev.rho2.v).max_norm();
        assert!(diff < 1e-10);
        assert!(matches!(n_basis_eea(&t), Err(Error::Unsupported(_))));
    }
}
