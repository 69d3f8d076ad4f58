//! Small dense matrices used by the oracle paths: materialized Toeplitz
//! matrices, the 3n×3n syzygy matrix and its rank.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, Rational, ZERO_THRESHOLD};

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct DenseMatrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> DenseMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        DenseMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, x: &[F]) -> Result<Vec<F>> {
        if x.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                actual: x.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b)
            })
            .collect())
    }

    /// Solves `self · x = b` for every `b` in `rhs`.
    pub fn solve(&self, rhs: &[Vec<F>]) -> Result<Vec<Vec<F>>> {
        if self.rows != self.cols {
            return Err(Error::InvalidMatrix(format!(
                "cannot solve with a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        for b in rhs {
            if b.len() != self.rows {
                return Err(Error::LengthMismatch {
                    expected: self.rows,
                    actual: b.len(),
                });
            }
        }
        F::solve_dense(self, rhs)
    }

    /// Rank by row echelon reduction. Inexact fields treat pivots below
    /// `ε₀ · max row norm` as zero.
    pub fn rank(&self) -> usize {
        let tol = pivot_tolerance(self);
        let mut a = self.data.clone();
        let (m, n) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..n {
            if rank == m {
                break;
            }
            let Some(p) = select_pivot(&a, n, rank, m, col, tol) else {
                continue;
            };
            swap_rows(&mut a, n, rank, p);
            let inv = a[rank * n + col].inv().expect("pivot is nonzero");
            for i in rank + 1..m {
                let factor = a[i * n + col].clone() * &inv;
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let t = factor.clone() * &a[rank * n + j];
                    a[i * n + j] -= &t;
                }
            }
            rank += 1;
        }
        rank
    }
}

fn pivot_tolerance<F: Field>(m: &DenseMatrix<F>) -> f64 {
    if F::EXACT {
        return 0.0;
    }
    let scale = (0..m.rows)
        .map(|i| m.row(i).iter().map(Field::magnitude).fold(0.0, f64::max))
        .fold(0.0, f64::max);
    ZERO_THRESHOLD * scale
}

fn select_pivot<F: Field>(
    a: &[F],
    n: usize,
    from: usize,
    to: usize,
    col: usize,
    tol: f64,
) -> Option<usize> {
    if F::EXACT {
        return (from..to).find(|&i| !a[i * n + col].is_zero());
    }
    let (best, mag) = (from..to)
        .map(|i| (i, a[i * n + col].magnitude()))
        .max_by(|x, y| x.1.total_cmp(&y.1))?;
    (mag > tol && !a[best * n + col].is_zero()).then_some(best)
}

fn swap_rows<T>(a: &mut [T], n: usize, i: usize, j: usize) {
    if i == j {
        return;
    }
    let (lo, hi) = (i.min(j), i.max(j));
    let (head, tail) = a.split_at_mut(hi * n);
    head[lo * n..lo * n + n].swap_with_slice(&mut tail[..n]);
}

/// Gaussian elimination with partial pivoting (first nonzero pivot for
/// exact fields).
pub fn gauss_solve<F: Field>(m: &DenseMatrix<F>, rhs: &[Vec<F>]) -> Result<Vec<Vec<F>>> {
    let n = m.rows;
    let w = n + rhs.len();
    let tol = pivot_tolerance(m);
    let mut a: Vec<F> = Vec::with_capacity(n * w);
    for i in 0..n {
        a.extend(m.row(i).iter().cloned());
        a.extend(rhs.iter().map(|b| b[i].clone()));
    }
    for col in 0..n {
        let p = select_pivot(&a, w, col, n, col, tol)
            .ok_or_else(|| Error::Singular(format!("no usable pivot in column {col}")))?;
        swap_rows(&mut a, w, col, p);
        let inv = a[col * w + col].inv()?;
        for i in col + 1..n {
            let factor = a[i * w + col].clone() * &inv;
            if factor.is_zero() {
                continue;
            }
            for j in col..w {
                let t = factor.clone() * &a[col * w + j];
                a[i * w + j] -= &t;
            }
        }
    }
    let mut out = vec![vec![F::zero(); n]; rhs.len()];
    for (k, x) in out.iter_mut().enumerate() {
        for i in (0..n).rev() {
            let mut acc = a[i * w + n + k].clone();
            for j in i + 1..n {
                acc -= &(a[i * w + j].clone() * &x[j]);
            }
            x[i] = acc * &a[i * w + i].inv()?;
        }
    }
    Ok(out)
}

/// Fraction-free (Bareiss) elimination for rational systems.
///
/// Each row of `[m | rhs]` is scaled to integers; all intermediate values
/// are then integer minors and every division is exact, which keeps the
/// entry sizes bounded by the determinant size.
pub fn bareiss_solve(m: &DenseMatrix<Rational>, rhs: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    let n = m.rows;
    let w = n + rhs.len();
    let mut a: Vec<BigInt> = Vec::with_capacity(n * w);
    for i in 0..n {
        let row: Vec<&BigRational> = m
            .row(i)
            .iter()
            .map(|x| &x.0)
            .chain(rhs.iter().map(|b| &b[i].0))
            .collect();
        let lcm = row
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        a.extend(row.iter().map(|x| x.numer() * (&lcm / x.denom())));
    }

    let mut prev = BigInt::one();
    for k in 0..n {
        let p = (k..n)
            .find(|&i| !a[i * w + k].is_zero())
            .ok_or_else(|| Error::Singular(format!("no usable pivot in column {k}")))?;
        swap_rows(&mut a, w, k, p);
        let pivot = a[k * w + k].clone();
        for i in k + 1..n {
            let lead = a[i * w + k].clone();
            for j in k + 1..w {
                let v = (&pivot * &a[i * w + j] - &lead * &a[k * w + j]) / &prev;
                a[i * w + j] = v;
            }
            a[i * w + k] = BigInt::zero();
        }
        prev = pivot;
    }

    let mut out = Vec::with_capacity(rhs.len());
    for r in 0..rhs.len() {
        let mut x: Vec<BigRational> = vec![BigRational::zero(); n];
        for i in (0..n).rev() {
            let mut acc = BigRational::from_integer(a[i * w + n + r].clone());
            for j in i + 1..n {
                if !a[i * w + j].is_zero() {
                    acc -= &x[j] * &a[i * w + j];
                }
            }
            x[i] = acc / &a[i * w + i];
        }
        out.push(x.into_iter().map(Rational).collect());
    }
    Ok(out)
}
