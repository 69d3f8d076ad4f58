//! Arithmetic modulo the Mersenne prime `2⁶¹ − 1`, and the p-adic lifting
//! that turns modular bases into exact rational ones.
//!
//! Rational Toeplitz systems are scaled to integers, solved modulo `p`
//! with a syzygy basis computed once, and lifted digit by digit
//! (`T·y ≡ r mod p`, `r ← (r − T·y)/p`). The p-adic approximation is then
//! converted back to fractions by rational reconstruction. Coefficient
//! growth in the Euclidean remainder sequence never happens over `Q`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::division::{MatrixDivisor, Residual, SolveReport, StageTimings};
use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::literal;
use crate::poly::Poly;
use crate::polymat::PolyVec2;
use crate::syzygy::{self, BasisMethod, NBasis};
use crate::toeplitz::ToeplitzMatrix;

/// The modulus `2⁶¹ − 1`.
pub const P: u64 = (1 << 61) - 1;

/// A residue modulo [`P`], kept in `[0, P)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Fp(u64);

impl Fp {
    pub fn new(v: u64) -> Self {
        Fp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        let r = v.mod_floor(&BigInt::from(P));
        Fp(r.to_u64().expect("residue fits"))
    }

    /// Image of `p/q`, if `q` is invertible modulo [`P`].
    pub fn from_rational(v: &BigRational) -> Option<Self> {
        let d = Fp::from_bigint(v.denom());
        (d.0 != 0).then(|| Fp::from_bigint(v.numer()) * d.pow(P - 2))
    }

    pub fn pow(self, mut e: u64) -> Self {
        let (mut base, mut acc) = (self, Fp(1));
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Representative in `(−P/2, P/2]`.
    pub fn symmetric(self) -> i64 {
        if self.0 > P / 2 {
            self.0 as i64 - P as i64
        } else {
            self.0 as i64
        }
    }
}

fn reduce(x: u128) -> u64 {
    let s = (x as u64 & P) + (x >> 61) as u64;
    let s = (s & P) + (s >> 61);
    if s >= P {
        s - P
    } else {
        s
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let s = self.0 + rhs.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        Fp(if self.0 >= rhs.0 { self.0 - rhs.0 } else { self.0 + P - rhs.0 })
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        Fp(reduce(self.0 as u128 * rhs.0 as u128))
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

macro_rules! by_ref {
    ($($tr:ident $f:ident $atr:ident $af:ident),*) => {$(
        impl<'a> $tr<&'a Fp> for Fp {
            type Output = Fp;
            fn $f(self, rhs: &'a Fp) -> Fp {
                $tr::$f(self, *rhs)
            }
        }
        impl<'a> $atr<&'a Fp> for Fp {
            fn $af(&mut self, rhs: &'a Fp) {
                *self = $tr::$f(*self, *rhs);
            }
        }
    )*};
}

by_ref!(Add add AddAssign add_assign, Sub sub SubAssign sub_assign, Mul mul MulAssign mul_assign);

impl Field for Fp {
    const EXACT: bool = true;

    fn zero() -> Self {
        Fp(0)
    }

    fn one() -> Self {
        Fp(1)
    }

    fn from_i64(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }

    fn is_zero(&self) -> bool {
        self.0 == 0
    }

    fn inv(&self) -> Result<Self> {
        if self.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(P - 2))
    }

    fn abs(&self) -> Self {
        *self
    }

    fn to_f64(&self) -> f64 {
        self.symmetric() as f64
    }

    fn parse_literal(s: &str) -> Result<Self> {
        Fp::from_rational(&literal::parse_rational(s)?).ok_or(Error::Literal {
            literal: s.to_string(),
            reason: "denominator vanishes modulo the prime",
        })
    }

    fn sample_unit<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Fp(rng.gen_range(0..P))
    }
}

/// `scale·T`, with `scale` the least common denominator of the entries.
struct IntegerToeplitz {
    col: Vec<BigInt>,
    row: Vec<BigInt>,
    scale: BigInt,
}

impl IntegerToeplitz {
    fn new(t: &ToeplitzMatrix<Rational>) -> Self {
        let all = t.first_col().iter().chain(t.first_row());
        let scale = all.fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let clear = |v: &[Rational]| -> Vec<BigInt> {
            v.iter().map(|x| x.numer() * (&scale / x.denom())).collect()
        };
        IntegerToeplitz {
            col: clear(t.first_col()),
            row: clear(t.first_row()),
            scale,
        }
    }

    fn n(&self) -> usize {
        self.col.len()
    }

    fn entry(&self, k: isize) -> &BigInt {
        if k >= 0 {
            &self.col[k as usize]
        } else {
            &self.row[(-k) as usize]
        }
    }

    fn modp(&self) -> ToeplitzMatrix<Fp> {
        let red = |v: &[BigInt]| v.iter().map(Fp::from_bigint).collect();
        ToeplitzMatrix::new(red(&self.col), red(&self.row)).expect("same shape")
    }

    fn matvec_u64(&self, y: &[u64]) -> Vec<BigInt> {
        let n = self.n() as isize;
        (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| y[j as usize] != 0)
                    .map(|j| self.entry(i - j) * y[j as usize])
                    .sum()
            })
            .collect()
    }

    /// `log₂` of the Euclidean norm of each column, rounded up.
    fn column_log_norms(&self) -> Vec<f64> {
        let n = self.n() as isize;
        (0..n)
            .map(|j| log2_norm((0..n).map(|i| self.entry(i - j))))
            .collect()
    }
}

/// Upper bound on `log₂ ‖v‖₂` from the bit lengths of the entries.
fn log2_norm<'a>(v: impl Iterator<Item = &'a BigInt> + Clone) -> f64 {
    let top = v.clone().map(|x| x.bits()).max().unwrap_or(0);
    if top == 0 {
        return f64::NEG_INFINITY;
    }
    let sum: f64 = v.map(|x| (2.0 * (x.bits() as f64 - top as f64)).exp2()).sum();
    top as f64 + 0.5 * sum.log2()
}

/// Solves rational systems with `T` by lifting solutions modulo [`P`].
struct Lifter {
    t: IntegerToeplitz,
    divisor: MatrixDivisor<Fp>,
    method: BasisMethod,
    col_norms: Vec<f64>,
}

impl Lifter {
    fn new(t: &ToeplitzMatrix<Rational>) -> Result<Self> {
        let it = IntegerToeplitz::new(t);
        let (basis, method) = syzygy::n_basis(&it.modp())?;
        Lifter::with_basis(it, &basis, method)
    }

    fn with_basis(t: IntegerToeplitz, basis: &NBasis<Fp>, method: BasisMethod) -> Result<Self> {
        let divisor = MatrixDivisor::new(&basis.division_matrix(), t.n())?;
        let col_norms = t.column_log_norms();
        Ok(Lifter {
            t,
            divisor,
            method,
            col_norms,
        })
    }

    /// `y` with `T·y ≡ r (mod P)`.
    fn solve_mod(&self, r: &[BigInt]) -> Result<Vec<u64>> {
        let n = self.t.n();
        let g = Poly::new(r.iter().map(Fp::from_bigint).collect());
        if g.is_zero() {
            return Ok(vec![0; n]);
        }
        let e = PolyVec2([Poly::zero(), g.shift(n)]);
        let u = self.divisor.divrem(&e)?.remainder.0[0].padded(n);
        Ok(u.into_iter().map(Fp::value).collect())
    }

    /// Exact solution of `T·u = g`.
    fn solve(&self, g: &[Rational]) -> Result<Vec<Rational>> {
        let n = self.t.n();
        // T·u = g  ⇔  T_int·(d·u) = scale·(d·g) with d·g integral
        let d = g.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let b: Vec<BigInt> = g
            .iter()
            .map(|x| x.numer() * (&d / x.denom()) * &self.t.scale)
            .collect();

        // Cramer and Hadamard bound numerators and the denominator of y
        let b_norm = log2_norm(b.iter());
        let log_bound: f64 = self.col_norms.iter().map(|&c| c.max(b_norm).max(0.0)).sum();
        let digits = ((2.0 * log_bound + 2.0) / 61.0).ceil() as usize + 1;

        let p = BigInt::from(P);
        let mut r = b;
        let mut acc = vec![BigInt::zero(); n];
        let mut pk = BigInt::one();
        for _ in 0..digits {
            let y = self.solve_mod(&r)?;
            let ty = self.t.matvec_u64(&y);
            for i in 0..n {
                acc[i] += &pk * y[i];
                let diff = &r[i] - &ty[i];
                debug_assert!(diff.is_multiple_of(&p));
                r[i] = diff / &p;
            }
            pk *= &p;
            if r.iter().all(Zero::is_zero) {
                break;
            }
        }

        let bound = (&pk >> 1u32).sqrt();
        let y = reconstruct_all(&acc, &pk, &bound).ok_or_else(|| {
            Error::InconsistentSyzygy("rational reconstruction failed".into())
        })?;
        let d = BigRational::from_integer(d);
        Ok(y.into_iter().map(|v| Rational(v / &d)).collect())
    }
}

/// `n/d ≡ a (mod m)` with `|n|, d ≤ bound`.
fn reconstruct(a: &BigInt, m: &BigInt, bound: &BigInt) -> Option<BigRational> {
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let (q, r2) = r0.div_rem(&r1);
        r0 = std::mem::replace(&mut r1, r2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || &t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Reconstructs every entry, reusing the running common denominator:
/// when `a·L mod m` is already small it is the numerator over `L`.
fn reconstruct_all(a: &[BigInt], m: &BigInt, bound: &BigInt) -> Option<Vec<BigRational>> {
    let half = m >> 1u32;
    let mut l = BigInt::one();
    a.iter()
        .map(|x| {
            if &l <= bound {
                let mut c = (x * &l).mod_floor(m);
                if c > half {
                    c -= m;
                }
                if &c.abs() <= bound {
                    return Some(BigRational::new(c, l.clone()));
                }
            }
            let v = reconstruct(x, m, bound)?;
            l = l.lcm(v.denom());
            Some(v)
        })
        .collect()
}

fn rational_singular(t: &ToeplitzMatrix<Rational>) -> bool {
    t.to_dense().rank() < t.n()
}

/// Euclidean basis over `Q`: the remainder sequence runs modulo [`P`],
/// and the two inverse columns it determines are lifted to `Q`.
///
/// A degree sequence that is normal modulo `P` is normal over `Q`, and the
/// basis is unique, so the result is the one the rational sequence gives.
pub fn rational_eea_basis(t: &ToeplitzMatrix<Rational>) -> Result<NBasis<Rational>> {
    let it = IntegerToeplitz::new(t);
    let basis_p = match syzygy::n_basis_eea_classical(&it.modp()) {
        Ok(b) => b,
        Err(e @ Error::DegenerateDegreeSequence { .. }) => return Err(e),
        Err(_) if rational_singular(t) => {
            return Err(Error::Singular("matrix is singular".into()))
        }
        // P divides a minor that is nonzero over Q
        Err(_) => return syzygy::n_basis_eea_classical(t),
    };
    let lifter = Lifter::with_basis(it, &basis_p, BasisMethod::Eea)?;
    let cols = syzygy::column_rhs(t)
        .iter()
        .map(|rhs| lifter.solve(rhs))
        .collect::<Result<Vec<_>>>()?;
    let basis = syzygy::basis_from_columns(t, cols);
    basis.validate(t)?;
    Ok(basis)
}

/// Exact solve by p-adic lifting: the syzygy division runs modulo [`P`]
/// only. The reported method is the one used for the basis modulo [`P`].
pub fn rational_solve(t: &ToeplitzMatrix<Rational>, g: &[Rational]) -> Result<SolveReport<Rational>> {
    let start = Instant::now();
    let lifter = match Lifter::new(t) {
        Ok(l) => l,
        Err(_) if rational_singular(t) => {
            return Err(Error::Singular("matrix is singular".into()))
        }
        Err(_) => return crate::division::solve(t, g),
    };
    let basis = start.elapsed();

    let start = Instant::now();
    let solution = lifter.solve(g)?;
    let division = start.elapsed();

    let start = Instant::now();
    if t.matvec(&solution)? != g {
        return Err(Error::InconsistentSyzygy(
            "solution fails the T·u = g check".into(),
        ));
    }
    Ok(SolveReport {
        solution,
        residual: Residual::Exact,
        basis_method: lifter.method,
        timings: StageTimings {
            basis,
            division,
            verify: start.elapsed(),
        },
    })
}
