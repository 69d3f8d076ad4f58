//! Toeplitz linear systems solved by syzygy reduction.
//!
//! An `n × n` Toeplitz system `T·u = g` is rewritten as membership of
//! `(u, v, w)` in the syzygy module of `(T̃(x), xⁿ, x²ⁿ − 1)`, where `T̃` is
//! the degree `2n − 1` polynomial folding the negative diagonals of `T`
//! above `xⁿ`. That module is free of rank two with a basis of two
//! elements of degree exactly `n`. Once such a basis is known, `u` is the
//! first coordinate of the remainder of `(0, xⁿ·g)` divided by the 2×2
//! polynomial matrix built from the basis, and the division runs in
//! `O(n log² n)` through coefficient reversal and Newton inversion of a
//! matrix power series.
//!
//! The crate is generic over a coefficient [`Field`]. Two are provided:
//! [`Rational`] (exact, used for correctness checks and small oracles) and
//! [`Real`] (double precision with FFT products, the performance path).
//!
//! ```
//! use toeplitz_syzygy::{solve, Rational, ToeplitzMatrix};
//!
//! let q = |s: &str| s.parse::<Rational>().unwrap();
//! let t = ToeplitzMatrix::new(vec![q("2"), q("1")], vec![q("2"), q("1")]).unwrap();
//! let report = solve(&t, &[q("1"), q("0")]).unwrap();
//! assert_eq!(report.solution, vec![q("2/3"), q("-1/3")]);
//! ```

pub mod dense;
pub mod division;
pub mod eea;
mod error;
pub mod fft;
pub mod field;
pub mod instance;
pub mod laurent;
pub mod levinson;
pub mod literal;
pub mod modular;
pub mod poly;
pub mod polymat;
pub mod syzygy;
pub mod toeplitz;

pub use dense::DenseMatrix;
pub use division::{
    polymat_divrem, polymat_divrem_with_precision, solve, solve_full,
    solve_with_basis, DivisionResult, MatrixDivisor, Residual, SolveReport, StageTimings,
};
pub use eea::{eea_with_stop, EeaRow, EeaTrace};
pub use error::{Error, Result};
pub use field::{Field, Rational, Real, ZERO_THRESHOLD};
pub use instance::{FieldKind, InstanceFile, Scalar};
pub use laurent::Laurent;
pub use modular::Fp;
pub use poly::Poly;
pub use polymat::{series_inverse_2x2, PolyMat2, PolyVec2, PolyVec3};
pub use syzygy::{
    build_s, inverse_columns, n_basis, n_basis_dense, n_basis_eea, n_basis_eea_classical,
    n_basis_levinson, residual,
    BasisMethod, NBasis, SyzygyVector,
};
pub use toeplitz::{Family, ToeplitzMatrix};
