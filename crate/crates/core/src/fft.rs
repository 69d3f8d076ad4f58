//! FFT product of real coefficient vectors.
//!
//! Both operands are packed into one complex sequence `a + i·b`, so a
//! single forward transform yields both spectra:
//!
//! ```text
//! A(k) = (Z(k) + conj Z(N−k)) / 2
//! B(k) = (Z(k) − conj Z(N−k)) / 2i
//! A(k)·B(k) = (Z(k)² − conj Z(N−k)²) / 4i
//! ```
//!
//! Recovering `A·B` this way loses accuracy in proportion to the ratio of
//! the operand magnitudes, so `b` is first rescaled by a power of two to
//! match `a`, which is exact.
//!
//! The transform length `N` is the smallest power of two strictly greater
//! than `deg a + deg b`.

use std::cell::RefCell;

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// Transform length used for a product of the given degree.
pub fn transform_len(product_degree: usize) -> usize {
    (product_degree + 1).next_power_of_two()
}

pub fn fft_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let out_len = a.len() + b.len() - 1;
    let n = transform_len(out_len - 1);
    let scale = balancing_scale(a, b);

    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            Complex64::new(
                a.get(k).copied().unwrap_or(0.0),
                b.get(k).map_or(0.0, |x| x * scale),
            )
        })
        .collect();

    let (forward, inverse) = PLANNER.with(|p| {
        let mut p = p.borrow_mut();
        (p.plan_fft_forward(n), p.plan_fft_inverse(n))
    });
    forward.process(&mut z);

    let quarter_i = Complex64::new(0.0, -0.25);
    let mut prod: Vec<Complex64> = (0..n)
        .map(|k| {
            let zk = z[k];
            let zm = z[(n - k) % n].conj();
            (zk * zk - zm * zm) * quarter_i
        })
        .collect();
    inverse.process(&mut prod);

    let unscale = 1.0 / (n as f64 * scale);
    prod.iter().take(out_len).map(|c| c.re * unscale).collect()
}

/// Power of two bringing `max|b|` close to `max|a|`.
fn balancing_scale(a: &[f64], b: &[f64]) -> f64 {
    let max = |v: &[f64]| v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let (ma, mb) = (max(a), max(b));
    if ma == 0.0 || mb == 0.0 || !ma.is_finite() || !mb.is_finite() {
        return 1.0;
    }
    let e = (ma.log2() - mb.log2()).round().clamp(-1000.0, 1000.0) as i32;
    2f64.powi(e)
}
