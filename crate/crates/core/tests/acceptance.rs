//! Acceptance criteria 1–10. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toeplitz_syzygy::polymat::invert_scalar_2x2;
use toeplitz_syzygy::*;

const EXACT_SIZES: [usize; 8] = [1, 2, 3, 4, 8, 16, 32, 64];
const EXACT_PER_SIZE: usize = 100;
const DIVISION_CASES: usize = 200;
const NEWTON_ORDERS: [usize; 7] = [1, 2, 3, 4, 8, 16, 64];
const FLOAT_TOL: f64 = 1e-8;
const MATVEC_TOL: f64 = 1e-9;
const FLOAT_PER_SIZE: usize = 50;
const FLOAT_PASS_FRACTION: f64 = 0.99;
const TREND_RATIO: f64 = 3.0;
const TREND_REPS: usize = 7;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn random_vec<F: Field>(n: usize, seed: u64) -> Vec<F> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| F::sample_unit(&mut rng)).collect()
}

fn random_poly<F: Field>(rng: &mut ChaCha8Rng, len: usize) -> Poly<F> {
    Poly::new((0..len).map(|_| F::sample_unit(rng)).collect())
}

fn max_abs<F: Field>(v: &[F]) -> f64 {
    v.iter().map(Field::magnitude).fold(0.0, f64::max)
}

fn q(v: i64) -> Rational {
    Rational::from(v)
}

struct ExactInstance {
    t: ToeplitzMatrix<Rational>,
    g: Vec<Rational>,
    oracle: Vec<Rational>,
}

/// The first `EXACT_PER_SIZE` invertible uniform instances per size,
/// with their dense-elimination solutions.
fn exact_instances(n: usize) -> Vec<ExactInstance> {
    let mut out = Vec::new();
    let mut seed = 1000 * n as u64;
    while out.len() < EXACT_PER_SIZE {
        let t = ToeplitzMatrix::random(n, seed, Family::Uniform);
        let g = random_vec(n, seed + 1_000_000);
        if let Ok(oracle) = t.dense_solve(&g) {
            out.push(ExactInstance { t, g, oracle });
        }
        seed += 1;
    }
    out
}

fn criterion_1(sets: &[(usize, Vec<ExactInstance>)], oracle_time: Duration) -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut methods = [0usize; 2];
    for (n, set) in sets {
        for (i, inst) in set.iter().enumerate() {
            match solve(&inst.t, &inst.g) {
                Ok(r) if r.solution == inst.oracle && r.residual == Residual::Exact => {
                    methods[(r.basis_method != BasisMethod::Eea) as usize] += 1;
                }
                Ok(_) => bad.push(format!("n={n}#{i} differs")),
                Err(e) => bad.push(format!("n={n}#{i}: {e}")),
            }
        }
    }
    let elapsed = start.elapsed() + oracle_time;
    let total: usize = sets.iter().map(|(_, s)| s.len()).sum();
    outcome(
        bad.is_empty(),
        format!(
            "{}/{total} solutions equal the dense oracle (eea basis {}, fallback {}); {:.1}s including oracle {}",
            total - bad.len(),
            methods[0],
            methods[1],
            elapsed.as_secs_f64(),
            bad.first().map_or(String::new(), |b| format!("; first failure {b}"))
        ),
    )
}

fn criterion_2(sets: &[(usize, Vec<ExactInstance>)]) -> Outcome {
    let mut bad = Vec::new();
    let zero = Poly::zero();
    for (n, set) in sets {
        for (i, inst) in set.iter().enumerate() {
            let Ok((b, _)) = n_basis(&inst.t) else {
                bad.push(format!("n={n}#{i}: no basis"));
                continue;
            };
            let members = residual(&inst.t, &b.rho1, &zero).is_zero()
                && residual(&inst.t, &b.rho2, &zero).is_zero();
            let anchors = b.rho1.coeff_triple(*n) == [q(1), q(0), q(0)]
                && b.rho2.coeff_triple(*n) == [q(0), q(1), q(0)]
                && b.rho1.degree() == Some(*n)
                && b.rho2.degree() == Some(*n);
            if !(members && anchors) {
                bad.push(format!("n={n}#{i}"));
            }
        }
    }
    let total: usize = sets.iter().map(|(_, s)| s.len()).sum();
    outcome(
        bad.is_empty(),
        format!(
            "{}/{total} bases are syzygies with xⁿ triples (1,0,0), (0,1,0){}",
            total - bad.len(),
            bad.first().map_or(String::new(), |b| format!("; first failure {b}"))
        ),
    )
}

fn criterion_3(sets: &[(usize, Vec<ExactInstance>)]) -> Outcome {
    let (mut agree, mut degenerate) = (0, 0);
    let mut bad = Vec::new();
    for (n, set) in sets {
        for (i, inst) in set.iter().enumerate() {
            let dense = n_basis_dense(&inst.t);
            match (n_basis_eea(&inst.t), dense) {
                (Ok(a), Ok(b)) if a == b => agree += 1,
                (Err(Error::DegenerateDegreeSequence { .. }), Ok(_)) => degenerate += 1,
                (a, b) => bad.push(format!("n={n}#{i}: eea ok={} dense ok={}", a.is_ok(), b.is_ok())),
            }
        }
    }
    let mut identity_ok = true;
    for &n in &EXACT_SIZES {
        let t = ToeplitzMatrix::<Rational>::identity(n);
        let eea_degenerates = matches!(n_basis_eea(&t), Err(Error::DegenerateDegreeSequence { .. }));
        let fallback = match n_basis(&t) {
            Ok((b, BasisMethod::DenseFallback)) => b.validate(&t).is_ok(),
            _ => false,
        };
        if !(eea_degenerates && fallback) {
            identity_ok = false;
            bad.push(format!("identity n={n}"));
        }
    }
    outcome(
        bad.is_empty() && agree > 0,
        format!(
            "eea = dense on {agree} instances, {degenerate} degenerate; identity fallback {} for n ∈ {EXACT_SIZES:?}{}",
            if identity_ok { "ok" } else { "FAILED" },
            bad.first().map_or(String::new(), |b| format!("; first failure {b}"))
        ),
    )
}

fn criterion_4(sets: &[(usize, Vec<ExactInstance>)]) -> Outcome {
    let mut bad = Vec::new();
    let mut total = 0;
    for (n, set) in sets {
        for (i, inst) in set.iter().enumerate() {
            total += 1;
            let t = &inst.t;
            let Ok((uprime, u)) = inverse_columns(t) else {
                bad.push(format!("n={n}#{i}: no columns"));
                continue;
            };
            let mut e1 = vec![q(0); *n];
            e1[0] = q(1);
            let ztn: Vec<Rational> = (0..*n).map(|k| t.t(k as isize - *n as isize)).collect();
            if t.matvec(&uprime).unwrap() != e1 || t.matvec(&u).unwrap() != ztn {
                bad.push(format!("n={n}#{i}"));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{}/{total} instances satisfy T·u′ = e₁ and T·u = Z·T·eₙ exactly{}",
            total - bad.len(),
            bad.first().map_or(String::new(), |b| format!("; first failure {b}"))
        ),
    )
}

fn criterion_5() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for n in 1..=8usize {
        let mut seed = 50_000 + 100 * n as u64;
        let mut found = 0;
        while found < 10 {
            let t: ToeplitzMatrix<Rational> = ToeplitzMatrix::random(n, seed, Family::Uniform);
            seed += 1;
            if t.to_dense().rank() < n {
                continue;
            }
            found += 1;
            checked += 1;
            let r = build_s(&t).rank();
            if r != 3 * n {
                bad.push(format!("n={n} rank {r}"));
            }
        }
    }
    let ones = ToeplitzMatrix::new(vec![q(1); 3], vec![q(1); 3]).unwrap();
    let ones_rank = build_s(&ones).rank();
    outcome(
        bad.is_empty() && ones_rank < 9,
        format!(
            "rank S = 3n on {}/{checked} invertible instances (n ≤ 8); all-ones n=3 rank {ones_rank} < 9{}",
            checked - bad.len(),
            bad.first().map_or(String::new(), |b| format!("; first failure {b}"))
        ),
    )
}

/// Degree-`n` divisor with leading matrix `I₂` and random lower terms.
fn random_divisor<F: Field>(rng: &mut ChaCha8Rng, n: usize) -> PolyMat2<F> {
    let mut p = |diag: bool| {
        let low = random_poly(rng, n);
        if diag {
            &low + &Poly::x_pow(n)
        } else {
            low
        }
    };
    PolyMat2::new(p(true), p(false), p(false), p(true))
}

fn division_error<F: Field>(e: &PolyVec2<F>, b: &PolyMat2<F>, d: &DivisionResult<F>) -> f64 {
    e.sub(&b.mul_vec(&d.quotient)).sub(&d.remainder).max_norm() / e.max_norm()
}

/// Float divisors as the solver produces them: basis matrices of random
/// diagonally dominant Toeplitz matrices.
fn basis_divisor(n: usize, seed: u64) -> PolyMat2<Real> {
    let t: ToeplitzMatrix<Real> = ToeplitzMatrix::random(n, seed, Family::DiagonallyDominant);
    n_basis(&t).unwrap().0.division_matrix()
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut exact_bad = 0;
    for _ in 0..DIVISION_CASES {
        let n = rng.gen_range(1..=32);
        let m = rng.gen_range(n..=64);
        let b: PolyMat2<Rational> = random_divisor(&mut rng, n);
        let e = PolyVec2([random_poly(&mut rng, m + 1), random_poly(&mut rng, m + 1)]);
        match polymat_divrem(&e, &b) {
            Ok(d) => {
                let back = b.mul_vec(&d.quotient);
                let sum = PolyVec2([&back.0[0] + &d.remainder.0[0], &back.0[1] + &d.remainder.0[1]]);
                if sum != e || d.remainder.degree().is_some_and(|r| r >= n) {
                    exact_bad += 1;
                }
            }
            Err(_) => exact_bad += 1,
        }
    }

    let (mut worst, mut float_bad) = (0.0f64, 0);
    for i in 0..DIVISION_CASES {
        let n = rng.gen_range(1..=32);
        let m = rng.gen_range(n..=64);
        let b = basis_divisor(n, 60_000 + i as u64);
        let e = PolyVec2([random_poly(&mut rng, m + 1), random_poly(&mut rng, m + 1)]);
        let d = polymat_divrem(&e, &b).unwrap();
        let err = division_error(&e, &b, &d);
        worst = worst.max(err);
        if err > FLOAT_TOL || d.remainder.degree().is_some_and(|r| r >= n) {
            float_bad += 1;
        }
    }

    // informational: divisors with uniform random lower terms
    let mut uniform_ok = 0;
    for _ in 0..DIVISION_CASES {
        let n = rng.gen_range(1..=32);
        let m = rng.gen_range(n..=64);
        let b: PolyMat2<Real> = random_divisor(&mut rng, n);
        let e = PolyVec2([random_poly(&mut rng, m + 1), random_poly(&mut rng, m + 1)]);
        if let Ok(d) = polymat_divrem(&e, &b) {
            uniform_ok += (division_error(&e, &b, &d) <= FLOAT_TOL) as usize;
        }
    }

    outcome(
        exact_bad == 0 && float_bad == 0,
        format!(
            "exact E = BQ + R, deg R < n on {}/{DIVISION_CASES}; float (basis divisors) {}/{DIVISION_CASES} within {FLOAT_TOL:e}, worst {worst:.1e} (Real rounds below 1e-12 to 0); [info] uniform divisors {uniform_ok}/{DIVISION_CASES} within {FLOAT_TOL:e}",
            DIVISION_CASES - exact_bad,
            DIVISION_CASES - float_bad,
        ),
    )
}

fn newton_residual<F: Field>(b_hat: &PolyMat2<F>, k: usize) -> Result<(PolyMat2<F>, f64)> {
    let w = series_inverse_2x2(b_hat, k)?;
    let r = w.mul_trunc(b_hat, k).sub(&PolyMat2::identity());
    Ok((r.clone(), r.max_norm()))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut exact_bad = Vec::new();
    for &k in &NEWTON_ORDERS {
        for _ in 0..5 {
            let b = loop {
                let len = rng.gen_range(1..=8);
                let mut p = || random_poly::<Rational>(&mut rng, len);
                let b = PolyMat2::new(p(), p(), p(), p());
                if invert_scalar_2x2(&b.coeff_matrix(0)).is_some() {
                    break b;
                }
            };
            match newton_residual(&b, k) {
                Ok((r, _)) if r.degree().is_none() => {}
                _ => exact_bad.push(k),
            }
        }
    }

    let mut worst = 0.0f64;
    for &k in &NEWTON_ORDERS {
        for seed in 0..5u64 {
            let n = rng.gen_range(1..=32);
            let b = basis_divisor(n, 70_000 + 10 * k as u64 + seed);
            let (_, err) = newton_residual(&b.reverse(n).unwrap(), k).unwrap();
            worst = worst.max(err);
        }
    }
    outcome(
        exact_bad.is_empty() && worst <= FLOAT_TOL,
        format!(
            "exact W·B̂ ≡ I₂ mod x^k for k ∈ {NEWTON_ORDERS:?}: {}; float worst residual {worst:.1e} (tol {FLOAT_TOL:e}, Real rounds below 1e-12 to 0)",
            if exact_bad.is_empty() { "all hold".to_string() } else { format!("fails for k {exact_bad:?}") }
        ),
    )
}

fn criterion_8() -> Outcome {
    let mut lines = Vec::new();
    let mut pass = true;
    let needed = (FLOAT_PASS_FRACTION * FLOAT_PER_SIZE as f64).ceil() as usize;
    for e in 4..=12 {
        let n = 1usize << e;
        let (mut ok, mut worst) = (0, 0.0f64);
        for i in 0..FLOAT_PER_SIZE as u64 {
            let seed = 80_000 + 100 * e + i;
            let t: ToeplitzMatrix<Real> = ToeplitzMatrix::random(n, seed, Family::DiagonallyDominant);
            let g = random_vec(n, seed + 1_000_000);
            if let Ok(SolveReport { residual: Residual::Relative(r), .. }) = solve(&t, &g) {
                worst = worst.max(r);
                ok += (r <= FLOAT_TOL) as usize;
            }
        }
        pass &= ok >= needed;
        lines.push(format!("n={n} {ok}/{FLOAT_PER_SIZE} worst {worst:.1e}"));
    }
    outcome(pass, format!("residual ≤ {FLOAT_TOL:e} on ≥ {needed}/{FLOAT_PER_SIZE}: {}", lines.join(", ")))
}

fn median(mut v: Vec<Duration>) -> Duration {
    v.sort();
    v[v.len() / 2]
}

fn criterion_9() -> Outcome {
    let mut medians = Vec::new();
    for e in 10..=14 {
        let n = 1usize << e;
        let t: ToeplitzMatrix<Real> = ToeplitzMatrix::random(n, 90_000 + e, Family::DiagonallyDominant);
        let (basis, _) = n_basis(&t).unwrap();
        let b = basis.division_matrix();
        let g = Poly::new(random_vec::<Real>(n, 91_000 + e));
        let dividend = PolyVec2([Poly::zero(), g.shift(n)]);
        let times = (0..TREND_REPS)
            .map(|_| {
                let start = Instant::now();
                let d = polymat_divrem(&dividend, &b).unwrap();
                let took = start.elapsed();
                assert!(d.remainder.degree().map_or(true, |r| r < n));
                took
            })
            .collect();
        medians.push((n, median(times)));
    }
    let ratios: Vec<f64> = medians
        .windows(2)
        .map(|w| w[1].1.as_secs_f64() / w[0].1.as_secs_f64())
        .collect();
    let pass = ratios.iter().all(|&r| r <= TREND_RATIO);
    let times: Vec<String> = medians
        .iter()
        .map(|(n, d)| format!("{n}:{:.2}ms", d.as_secs_f64() * 1e3))
        .collect();
    let ratios: Vec<String> = ratios.iter().map(|r| format!("{r:.2}")).collect();
    outcome(
        pass,
        format!(
            "division medians {}; ratios {} (≤ {TREND_RATIO}); basis stage is O(n²) Levinson, division superfast",
            times.join(" "),
            ratios.join(" ")
        ),
    )
}

fn criterion_10() -> Outcome {
    let mut exact_bad = 0;
    let mut exact_total = 0;
    for n in (1..=64).step_by(3).chain([64]) {
        for seed in 0..3u64 {
            exact_total += 1;
            let t: ToeplitzMatrix<Rational> = ToeplitzMatrix::random(n, 100_000 + seed, Family::Uniform);
            let u = random_vec(n, 101_000 + seed);
            if t.matvec(&u).unwrap() != t.dense_matvec(&u).unwrap() {
                exact_bad += 1;
            }
        }
    }
    let mut worst = 0.0f64;
    for e in 0..=12 {
        let n = 1usize << e;
        for seed in 0..3u64 {
            let t: ToeplitzMatrix<Real> = ToeplitzMatrix::random(n, 102_000 + seed, Family::Uniform);
            let u: Vec<Real> = random_vec(n, 103_000 + seed);
            let fast = t.matvec(&u).unwrap();
            let dense = t.dense_matvec(&u).unwrap();
            let diff: Vec<Real> = fast.iter().zip(&dense).map(|(a, b)| *a - *b).collect();
            worst = worst.max(max_abs(&diff) / max_abs(&dense).max(f64::MIN_POSITIVE));
        }
    }
    outcome(
        exact_bad == 0 && worst <= MATVEC_TOL,
        format!(
            "exact equal on {}/{exact_total} (n ≤ 64); float worst relative difference {worst:.1e} (tol {MATVEC_TOL:e}, n ≤ 4096)",
            exact_total - exact_bad
        ),
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let sets: Vec<(usize, Vec<ExactInstance>)> =
        EXACT_SIZES.iter().map(|&n| (n, exact_instances(n))).collect();
    let oracle_time = start.elapsed();

    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("oracle equivalence (exact)", Box::new(|| criterion_1(&sets, oracle_time))),
        ("syzygy membership", Box::new(|| criterion_2(&sets))),
        ("basis-method agreement", Box::new(|| criterion_3(&sets))),
        ("Gohberg–Semencul columns", Box::new(|| criterion_4(&sets))),
        ("S-matrix rank", Box::new(criterion_5)),
        ("division contract", Box::new(criterion_6)),
        ("Newton inversion", Box::new(criterion_7)),
        ("float end-to-end accuracy", Box::new(criterion_8)),
        ("complexity trend", Box::new(criterion_9)),
        ("matvec equivalence", Box::new(criterion_10)),
    ];

    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = run();
        println!(
            "criterion {:>2} {} {name}: {} [{:.1}s]",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            t.elapsed().as_secs_f64()
        );
        if !o.pass {
            failed.push(i + 1);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
