//! Toeplitz matrices and their polynomial symbols.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::laurent::Laurent;
use crate::poly::Poly;

/// `n × n` Toeplitz matrix with entry `(i, j)` equal to `t_{i−j}`.
///
/// Stored as its first column `(t₀, t₁, …, t_{n−1})` and first row
/// `(t₀, t₋₁, …, t₋ₙ₊₁)`.
#[derive(Clone, PartialEq, Debug)]
pub struct ToeplitzMatrix<F> {
    col: Vec<F>,
    row: Vec<F>,
}

/// Random instance families.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    /// Every `tᵢ` uniform in `[−1, 1]`.
    Uniform,
    /// Off-diagonal `tᵢ` uniform in `[−1, 1]`, `t₀ = 2·Σ|tᵢ|`.
    DiagonallyDominant,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Uniform => "uniform",
            Family::DiagonallyDominant => "diagonally-dominant",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(Family::Uniform),
            "diagonally-dominant" | "dd" => Ok(Family::DiagonallyDominant),
            _ => Err(Error::Instance(format!("unknown family {s:?}"))),
        }
    }
}

impl<F: Field> ToeplitzMatrix<F> {
    pub fn new(col: Vec<F>, row: Vec<F>) -> Result<Self> {
        if col.is_empty() {
            return Err(Error::InvalidMatrix("size must be at least 1".into()));
        }
        if col.len() != row.len() {
            return Err(Error::InvalidMatrix(format!(
                "first column has length {} but first row has length {}",
                col.len(),
                row.len()
            )));
        }
        if col[0] != row[0] {
            return Err(Error::InvalidMatrix(
                "first column and first row disagree on t0".into(),
            ));
        }
        Ok(ToeplitzMatrix { col, row })
    }

    pub fn identity(n: usize) -> Self {
        let e: Vec<F> = (0..n.max(1))
            .map(|i| if i == 0 { F::one() } else { F::zero() })
            .collect();
        ToeplitzMatrix {
            col: e.clone(),
            row: e,
        }
    }

    /// Deterministic in `(n, seed, family)`.
    pub fn random(n: usize, seed: u64, family: Family) -> Self {
        let n = n.max(1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut col: Vec<F> = (0..n).map(|_| F::sample_unit(&mut rng)).collect();
        let mut row: Vec<F> = (0..n).map(|_| F::sample_unit(&mut rng)).collect();
        if family == Family::DiagonallyDominant {
            let off = col[1..]
                .iter()
                .chain(&row[1..])
                .fold(F::zero(), |acc, x| acc + x.abs());
            col[0] = F::from_i64(2) * &off;
            if col[0].is_zero() {
                col[0] = F::one();
            }
        }
        row[0] = col[0].clone();
        ToeplitzMatrix { col, row }
    }

    pub fn n(&self) -> usize {
        self.col.len()
    }

    pub fn first_col(&self) -> &[F] {
        &self.col
    }

    pub fn first_row(&self) -> &[F] {
        &self.row
    }

    /// `t_k` for `−n < k < n`, zero outside that range.
    pub fn t(&self, k: isize) -> F {
        let v = if k >= 0 {
            self.col.get(k as usize)
        } else {
            self.row.get(k.unsigned_abs())
        };
        v.cloned().unwrap_or_else(F::zero)
    }

    /// `T(x) = Σ_{−n<i<n} tᵢ xⁱ`.
    pub fn symbol(&self) -> Laurent<F> {
        let n = self.n() as isize;
        Laurent::new(1 - n as i64, (1 - n..n).map(|k| self.t(k)).collect())
    }

    /// `x^{n−1}·T(x)`, an ordinary polynomial of degree at most `2n − 2`.
    pub fn shifted_symbol(&self) -> Poly<F> {
        let n = self.n() as isize;
        Poly::new((1 - n..n).map(|k| self.t(k)).collect())
    }

    /// `T̃(x) = T⁺(x) + x²ⁿ·T⁻(x)`: coefficient `i < n` is `tᵢ`,
    /// coefficient `n ≤ i < 2n` is `t_{i−2n}`.
    pub fn tilde_symbol(&self) -> Poly<F> {
        let n = self.n() as isize;
        Poly::new((0..2 * n).map(|i| if i < n { self.t(i) } else { self.t(i - 2 * n) }).collect())
    }

    /// `T·u` computed as the projection of `T(x)·u(x)` onto `1, …, x^{n−1}`.
    pub fn matvec(&self, u: &[F]) -> Result<Vec<F>> {
        let n = self.n();
        if u.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: u.len(),
            });
        }
        // x^{n-1}·T(x)·u(x): the projected window sits at exponents n-1 ..= 2n-2
        let prod = &self.shifted_symbol() * &Poly::new(u.to_vec());
        Ok((n - 1..2 * n - 1).map(|i| prod.coeff(i)).collect())
    }

    pub fn to_dense(&self) -> DenseMatrix<F> {
        let n = self.n();
        DenseMatrix::from_fn(n, n, |i, j| self.t(i as isize - j as isize))
    }

    /// Row-by-row product with the materialized matrix.
    pub fn dense_matvec(&self, u: &[F]) -> Result<Vec<F>> {
        self.to_dense().mul_vec(u)
    }

    /// Dense elimination oracle.
    pub fn dense_solve(&self, g: &[F]) -> Result<Vec<F>> {
        Ok(self.dense_solve_many(&[g.to_vec()])?.remove(0))
    }

    pub fn dense_solve_many(&self, rhs: &[Vec<F>]) -> Result<Vec<Vec<F>>> {
        self.to_dense().solve(rhs)
    }

    /// `‖col‖₁ + ‖row‖₁`, the scale used by relative residuals.
    pub fn coefficient_norm(&self) -> f64 {
        self.col
            .iter()
            .chain(&self.row)
            .map(Field::magnitude)
            .sum()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> ToeplitzMatrix<G> {
        ToeplitzMatrix {
            col: self.col.iter().map(&f).collect(),
            row: self.row.iter().map(&f).collect(),
        }
    }
}
