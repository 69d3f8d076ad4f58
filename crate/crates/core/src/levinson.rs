//! Levinson-type recursion for general (nonsymmetric) Toeplitz systems.
//!
//! Grows forward and backward vectors `f`, `b` with `T_k f = e₁` and
//! `T_k b = e_k` over the leading `k × k` sections, updating the
//! solutions of every right-hand side along the way. Costs `O(n²)` per
//! right-hand side and requires every leading section to be nonsingular,
//! which holds for diagonally dominant matrices.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::toeplitz::ToeplitzMatrix;

pub fn levinson_solve<F: Field>(t: &ToeplitzMatrix<F>, rhs: &[Vec<F>]) -> Result<Vec<Vec<F>>> {
    let n = t.n();
    for b in rhs {
        if b.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: b.len(),
            });
        }
    }
    let t0_inv = t
        .t(0)
        .inv()
        .map_err(|_| Error::Singular("leading 1x1 section is zero".into()))?;

    let mut fwd = Vec::with_capacity(n);
    let mut bwd = Vec::with_capacity(n);
    fwd.push(t0_inv.clone());
    bwd.push(t0_inv.clone());
    let mut xs: Vec<Vec<F>> = rhs.iter().map(|b| vec![b[0].clone() * &t0_inv]).collect();

    for k in 1..n {
        // last row of T_{k+1} against [f; 0], first row against [0; b]
        let mut ef = F::zero();
        let mut eb = F::zero();
        for i in 0..k {
            ef += &(t.t((k - i) as isize) * &fwd[i]);
            eb += &(t.t(-(i as isize) - 1) * &bwd[i]);
        }
        let denom = F::one() - ef.clone() * &eb;
        let scale = denom
            .inv()
            .map_err(|_| Error::Singular(format!("leading {}x{} section is singular", k + 1, k + 1)))?;

        let mut new_f = Vec::with_capacity(k + 1);
        let mut new_b = Vec::with_capacity(k + 1);
        for i in 0..=k {
            let f_i = if i < k { fwd[i].clone() } else { F::zero() };
            let b_i = if i > 0 { bwd[i - 1].clone() } else { F::zero() };
            new_f.push((f_i.clone() - ef.clone() * &b_i) * &scale);
            new_b.push((b_i - eb.clone() * &f_i) * &scale);
        }
        fwd = new_f;
        bwd = new_b;

        for (x, b) in xs.iter_mut().zip(rhs) {
            let mut ex = F::zero();
            for (i, xi) in x.iter().enumerate() {
                ex += &(t.t((k - i) as isize) * xi);
            }
            let step = b[k].clone() - &ex;
            x.push(F::zero());
            for (xi, bi) in x.iter_mut().zip(&bwd) {
                *xi += &(step.clone() * bi);
            }
        }
    }
    Ok(xs)
}
