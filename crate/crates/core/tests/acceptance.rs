//! Acceptance suite: one line per criterion, `PASS` or `FAIL`, with the
//! measured runtime against its pinned limit. Exits non-zero on any failure.
//!
//! Every comparison is exact (zero tolerance); the only numeric limits are
//! wall-clock ceilings.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hesscell::cells::{
    build_ideal, build_omega, cell_generators, cell_generators_via_psi, paving, patch_generators, IdealKind, PsiMap,
};
use hesscell::combinat::{fixed_points, is_fixed_point, v_of_w, HessenbergFunction, Permutation};
use hesscell::frobenius::{compatibility_check, splitting_apply, SplittingContext};
use hesscell::grading_hilbert::{hilbert_formula, hilbert_oracle, is_homogeneous, weights_for};
use hesscell::groebner::{
    buchberger_check, initial_term, order_n_w, reduced_gb_oracle, solve_triangular, triangular_analysis,
    DEFAULT_BUDGET,
};
use hesscell::polyring::{Domain, Polynomial, Variable};

const SEED: u64 = 0x5eed;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn poly(s: &str) -> Polynomial {
    s.parse().expect("valid polynomial literal")
}

fn perm(s: &str) -> Permutation {
    s.parse().expect("valid permutation literal")
}

fn hess(s: &str) -> HessenbergFunction {
    s.parse().expect("valid Hessenberg literal")
}

/// Every (h, w) with h indecomposable and w a fixed point, n ≤ max_n.
fn fixed_cases(max_n: usize) -> Vec<(HessenbergFunction, Permutation)> {
    (1..=max_n)
        .flat_map(|n| HessenbergFunction::enumerate(n, true))
        .flat_map(|h| fixed_points(&h).into_iter().map(move |w| (h.clone(), w)))
        .collect()
}

fn criterion_1() -> Outcome {
    // (a) conjugate matrix for w_0 at n = 4
    let f = patch_generators(&Permutation::longest(4));
    let expected_f = [
        ["0", "0", "0", "0"],
        ["1", "0", "0", "0"],
        ["-x_2_2 + x_3_1", "1", "0", "0"],
        ["-x_1_2 + x_1_3*x_2_2 - x_1_3*x_3_1 + x_2_1", "-x_1_3 + x_2_2", "1", "0"],
    ];
    for (i, row) in expected_f.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            let got = f.get(i + 1, j + 1);
            ensure(got == &poly(cell), || format!("f_{}_{} = {got}, expected {cell}", i + 1, j + 1))?;
        }
    }
    // (b) the displayed entries for w = 3421
    let g = cell_generators(&perm("3421"));
    for ((k, l), want) in [
        ((3, 2), "-z_2_1"),
        ((4, 1), "-z_1_3 + z_2_1"),
        ((4, 2), "-z_1_1 + z_1_3*z_2_1 + z_2_2"),
        ((3, 1), "1"),
    ] {
        ensure(g.get(k, l) == &poly(want), || format!("g_{k}_{l} = {}", g.get(k, l)))?;
    }
    // (c) the specialization for 3421
    let psi = PsiMap::new(&perm("3421"));
    ensure(psi.killed == BTreeSet::from([Variable::x(3, 1)]), || format!("D_w = {:?}", psi.killed))?;
    ensure(psi.image(Variable::x(1, 2)) == Some(Some(Variable::z(1, 1))), || "z_1_1 <-> x_1_2".into())?;
    ensure(psi.image(Variable::x(1, 1)) == Some(Some(Variable::z(1, 2))), || "z_1_2 <-> x_1_1".into())?;
    // (d) grading table and generator degrees
    let wt = weights_for(&perm("3421"));
    let table: Vec<u32> = ["z_1_1", "z_1_2", "z_1_3", "z_2_1", "z_2_2"]
        .iter()
        .map(|s| wt.weight(s.parse().expect("variable")).unwrap_or(0))
        .collect();
    ensure(table == [2, 3, 1, 1, 2], || format!("weights {table:?}"))?;
    let degs = (
        is_homogeneous(g.get(4, 1), &wt).map_err(|e| e.to_string())?,
        is_homogeneous(g.get(4, 2), &wt).map_err(|e| e.to_string())?,
    );
    ensure(degs == (Some(1), Some(2)), || format!("degrees {degs:?}"))?;
    Ok("w0 conjugate, 3421 entries, D_w, weights (2,3,1,1,2), degrees (1,2)".into())
}

fn criterion_2() -> Outcome {
    let cases = fixed_cases(5);
    let mut generators = 0;
    for (h, w) in &cases {
        let n = w.n();
        let v = v_of_w(w);
        let vi = v.inverse();
        let ord = order_n_w(w);
        let ideal = build_ideal(w, h, IdealKind::Cell).map_err(|e| e.to_string())?;
        let mut seen = BTreeSet::new();
        for g in ideal.nonzero_generators() {
            generators += 1;
            let t = initial_term(&g.poly, &ord).map_err(|e| e.to_string())?;
            let (vk, vl) = (v.apply(g.k), v.apply(g.l));
            ensure(vk > vl + 1, || format!("w={w} h={h}: nonzero g_{}_{} outside range", g.k, g.l))?;
            let expected = Variable::z(n + 1 - vk, vi.apply(vl + 1));
            ensure(t.coeff == BigInt::from(-1) && t.monomial.as_variable() == Some(expected), || {
                format!("w={w} h={h}: in(g_{}_{}) = {t}, expected -{expected}", g.k, g.l)
            })?;
            ensure(seen.insert(expected), || format!("w={w} h={h}: repeated initial {expected}"))?;
        }
        let gb = buchberger_check(&ideal, &ord).map_err(|e| e.to_string())?;
        ensure(gb, || format!("w={w} h={h}: an S-polynomial does not reduce to 0"))?;
    }
    Ok(format!("{} fixed-point cases, {generators} nonzero generators, n <= 5", cases.len()))
}

fn criterion_3() -> Outcome {
    let mut count = 0;
    for n in 1..=5 {
        for w in Permutation::all(n) {
            let via = cell_generators_via_psi(&w).map_err(|e| e.to_string())?;
            ensure(via == cell_generators(&w), || format!("w={w}: psi route differs"))?;
            count += 1;
        }
    }
    Ok(format!("{count} permutations, exact entrywise equality"))
}

fn criterion_4() -> Outcome {
    let one = Polynomial::one(Domain::Integers);
    let mut count = 0;
    for n in 1..=4 {
        for h in HessenbergFunction::enumerate(n, true) {
            for w in Permutation::all(n) {
                let ideal = build_ideal(&w, &h, IdealKind::Cell).map_err(|e| e.to_string())?;
                let gb = reduced_gb_oracle(&ideal.nonzero_polys(), &order_n_w(&w), DEFAULT_BUDGET)
                    .map_err(|e| e.to_string())?;
                let unit = gb == vec![one.clone()];
                ensure(unit != is_fixed_point(&w, &h), || format!("w={w} h={h}: unit = {unit}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} (w, h) pairs, n <= 4, unit ideal iff not a fixed point"))
}

fn criterion_5() -> Outcome {
    for (h, w) in fixed_cases(5) {
        let ideal = build_ideal(&w, &h, IdealKind::Cell).map_err(|e| e.to_string())?;
        let report = triangular_analysis(&ideal, &order_n_w(&w)).map_err(|e| e.to_string())?;
        ensure(report.is_triangular, || format!("w={w} h={h}: not triangular"))?;
        ensure(w.length() >= ideal.height, || format!("w={w} h={h}: negative dimension"))?;
        ensure(report.quotient_dimension == Some(w.length() - ideal.height), || {
            format!("w={w} h={h}: free variables {:?}", report.quotient_dimension)
        })?;
    }
    let mut hs = 0;
    for n in 1..=5 {
        for h in HessenbergFunction::enumerate(n, true) {
            hs += 1;
            let sum_h: usize = (1..=n).map(|i| h.at(i)).sum();
            for w in Permutation::all(n) {
                let ideal = build_ideal(&w, &h, IdealKind::Cell).map_err(|e| e.to_string())?;
                ensure(ideal.generators.len() == n * n - sum_h, || format!("w={w} h={h}: listed count"))?;
            }
            let pav = paving(&h).map_err(|e| e.to_string())?;
            let expected: usize = (1..=n).map(|i| h.at(i) - i).sum();
            let top: Vec<&Permutation> = pav.cells.iter().filter(|c| c.dim == pav.max_dim).map(|c| &c.w).collect();
            ensure(pav.max_dim == expected, || format!("h={h}: max dim {}", pav.max_dim))?;
            ensure(top.contains(&&Permutation::longest(n)), || format!("h={h}: max not at w0"))?;
        }
    }
    Ok(format!("triangular on all fixed points, {hs} Hessenberg functions, n <= 5"))
}

/// Number of partitions of each `d ≤ trunc` into parts from `parts`.
fn partition_counts(parts: &[u32], trunc: usize) -> Vec<i64> {
    fn go(parts: &[u32], left: usize, out: &mut i64) {
        match parts.split_first() {
            None => *out += (left == 0) as i64,
            Some((&p, rest)) => {
                let mut used = 0;
                while used <= left {
                    go(rest, left - used, out);
                    used += p as usize;
                }
            }
        }
    }
    (0..=trunc)
        .map(|d| {
            let mut c = 0;
            go(parts, d, &mut c);
            c
        })
        .collect()
}

fn criterion_6() -> Outcome {
    let mut count = 0;
    for (h, w) in fixed_cases(5) {
        let ideal = build_ideal(&w, &h, IdealKind::Cell).map_err(|e| e.to_string())?;
        let report = triangular_analysis(&ideal, &order_n_w(&w)).map_err(|e| e.to_string())?;
        let oracle = hilbert_oracle(&report, &weights_for(&w), 20).map_err(|e| e.to_string())?;
        let formula = hilbert_formula(&w, &h)
            .and_then(|s| s.expand(20))
            .map_err(|e| e.to_string())?;
        ensure(formula == oracle, || format!("w={w} h={h}: {formula:?} vs {oracle:?}"))?;
        count += 1;
    }
    let series = hilbert_formula(&perm("3421"), &hess("3,3,4,4"))
        .and_then(|s| s.expand(20))
        .map_err(|e| e.to_string())?;
    let partitions = partition_counts(&[1, 2, 3], 20);
    ensure(series == partitions, || format!("3421: {series:?}"))?;
    ensure(series[..7] == [1, 1, 2, 3, 4, 5, 7], || format!("3421 head {:?}", &series[..7]))?;
    Ok(format!("{count} cases agree to order 20; 3421 matches parts <= 3"))
}

fn criterion_7() -> Outcome {
    let mut count = 0;
    for (h, w) in fixed_cases(5) {
        let v = v_of_w(&w);
        let wt = weights_for(&w);
        for (z, d) in &wt.weights {
            ensure(*d as usize + z.row() == w.apply(z.col()), || format!("w={w}: weight of {z}"))?;
        }
        let ideal = build_ideal(&w, &h, IdealKind::Cell).map_err(|e| e.to_string())?;
        for g in ideal.nonzero_generators() {
            let expected = (v.apply(g.k) - v.apply(g.l) - 1) as u32;
            let got = is_homogeneous(&g.poly, &wt).map_err(|e| e.to_string())?;
            ensure(got == Some(expected), || format!("w={w} h={h} g_{}_{}: {got:?}", g.k, g.l))?;
            count += 1;
        }
    }
    Ok(format!("{count} generators homogeneous of degree v(k)-v(l)-1"))
}

fn random_poly(rng: &mut ChaCha8Rng, vars: &[Variable], p: u64) -> Polynomial {
    let terms = rng.gen_range(0..=6);
    Polynomial::from_terms(
        Domain::PrimeField(p),
        (0..terms).map(|_| {
            let m = hesscell::polyring::Monomial::from_pairs(vars.iter().map(|&v| (v, rng.gen_range(0..=3))));
            (BigInt::from(rng.gen_range(0..p)), m)
        }),
    )
}

fn criterion_8() -> Outcome {
    const SAMPLES: usize = 50;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let cases = fixed_cases(4);
    let mut evaluations = 0;
    for p in [2u64, 3, 5] {
        for (h, w) in &cases {
            let ctx = SplittingContext::new(w, h, p).map_err(|e| e.to_string())?;
            let report = compatibility_check(&ctx).map_err(|e| e.to_string())?;
            ensure(report.phi_one_is_one, || format!("p={p} w={w} h={h}: phi(1) != 1"))?;
            ensure(report.initial_f_is_z, || format!("p={p} w={w} h={h}: in(F) != Z"))?;
            ensure(report.compatible, || format!("p={p} w={w} h={h}: phi(J) not in J"))?;
            let vars = ctx.ideal.ambient.clone();
            if vars.is_empty() {
                continue;
            }
            for _ in 0..SAMPLES {
                let f = random_poly(&mut rng, &vars, p);
                let z = Polynomial::var(vars[rng.gen_range(0..vars.len())], Domain::PrimeField(p));
                let lhs = splitting_apply(&(&z.pow(p as u32) * &f), &ctx).map_err(|e| e.to_string())?;
                let rhs = &z * &splitting_apply(&f, &ctx).map_err(|e| e.to_string())?;
                ensure(lhs == rhs, || format!("p={p} w={w} h={h}: phi(z^p f) != z phi(f) for f = {f}"))?;
                evaluations += 1;
            }
        }
    }
    Ok(format!(
        "{} cases x p in {{2,3,5}}, {evaluations} random pull-out checks ({SAMPLES} per case)",
        cases.len()
    ))
}

/// Solves `A X = B` exactly over ℚ by Gauss-Jordan elimination.
fn solve_rational(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().chain(rb).cloned().collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x = &*x - &factor * y;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

fn criterion_9() -> Outcome {
    const POINTS: usize = 10;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    let cases = fixed_cases(4);
    for (h, w) in &cases {
        let n = w.n();
        let ideal = build_ideal(w, h, IdealKind::Cell).map_err(|e| e.to_string())?;
        let report = triangular_analysis(&ideal, &order_n_w(w)).map_err(|e| e.to_string())?;
        let omega = build_omega(w);
        for _ in 0..POINTS {
            let free: BTreeMap<Variable, BigInt> = report
                .free_variables
                .iter()
                .map(|&v| (v, BigInt::from(rng.gen_range(-20i64..=20))))
                .collect();
            let point = solve_triangular(&report, &free).map_err(|e| e.to_string())?;
            let num: Vec<Vec<BigRational>> = (1..=n)
                .map(|i| {
                    (1..=n)
                        .map(|j| omega.get(i, j).evaluate(&point).map(BigRational::from_integer))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            // N Ω shifts rows up by one
            let n_omega: Vec<Vec<BigRational>> = (0..n)
                .map(|i| if i + 1 < n { num[i + 1].clone() } else { vec![BigRational::zero(); n] })
                .collect();
            let conj = solve_rational(&num, &n_omega).ok_or_else(|| format!("w={w}: singular Ω"))?;
            for (k, l) in hesscell::cells::generator_positions(h) {
                ensure(conj[k - 1][l - 1].is_zero(), || {
                    format!("w={w} h={h}: entry ({k},{l}) = {} at {point:?}", conj[k - 1][l - 1])
                })?;
            }
            ensure(conj.iter().flatten().all(|x| x.is_integer()), || format!("w={w}: non-integral conjugate"))?;
        }
    }
    Ok(format!("{} cases x {POINTS} random points, n <= 4", cases.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("worked examples", criterion_1, Duration::from_secs(1)),
        ("Groebner basis theorem", criterion_2, Duration::from_secs(600)),
        ("psi consistency", criterion_3, Duration::from_secs(600)),
        ("non-emptiness", criterion_4, Duration::from_secs(600)),
        ("complete intersection and paving", criterion_5, Duration::from_secs(600)),
        ("Hilbert series", criterion_6, Duration::from_secs(600)),
        ("homogeneity", criterion_7, Duration::from_secs(600)),
        ("Frobenius splitting", criterion_8, Duration::from_secs(300)),
        ("random-point vanishing", criterion_9, Duration::from_secs(600)),
    ];
    let mut failed = 0;
    for (idx, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(detail) if elapsed <= *limit => ("PASS", detail),
            Ok(detail) => ("FAIL", format!("{detail}; over the {:?} limit", limit)),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {} [{name}]: {status} ({:.3}s, limit {}s) {detail}",
            idx + 1,
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
