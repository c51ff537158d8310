use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cells::{build_ideal, build_omega, IdealKind, IdealPresentation};
use crate::combinat::{is_fixed_point, v_of_w, HessenbergFunction, Permutation};
use crate::frobenius::{compatibility_check, SplittingContext};
use crate::grading_hilbert::{hilbert_formula, hilbert_oracle, is_homogeneous, weights_for};
use crate::groebner::{
    buchberger_check, initial_term, order_n_w, reduced_gb_oracle, solve_triangular, triangular_analysis,
    GroebnerError, TriangularReport,
};
use crate::polyring::{Domain, PolyMatrix, Polynomial, Variable};

/// Largest `n` the sweep accepts without and with Frobenius checks.
pub const CEILING: usize = 6;
pub const CEILING_WITH_FROBENIUS: usize = 4;
/// Non-fixed points get the unit-ideal oracle up to this size by default.
pub const ORACLE_NONFIXED_MAX_N: usize = 4;

#[derive(Clone, Debug)]
pub struct SweepOptions {
    pub max_n: usize,
    pub primes: Vec<u64>,
    pub oracle_nonfixed: bool,
    pub points: usize,
    pub seed: u64,
    pub trunc: usize,
    pub budget: u64,
}

#[derive(Clone, Debug, Default, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepCase {
    pub n: usize,
    pub h: Option<HessenbergFunction>,
    pub w: Option<Permutation>,
    pub fixed_point: bool,
    pub lambda: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gb_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub triangular_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub initial_terms_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hilbert_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub homogeneous_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub random_points_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frobenius_ok: Option<bool>,
    /// A constant generator certifies the empty intersection.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub empty_certified: Option<bool>,
    /// Whether the completion oracle returned the unit ideal.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unit_ideal: Option<bool>,
    pub failures: Vec<String>,
}

impl SweepCase {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn budget_exhausted(&self) -> bool {
        self.failures.iter().any(|f| f.starts_with("budget"))
    }

    fn fail(&mut self, reason: impl Into<String>) {
        self.failures.push(reason.into());
    }

    fn record(&mut self, check: &str, ok: bool) -> bool {
        if !ok {
            self.fail(check);
        }
        ok
    }
}

#[derive(Clone, Debug, Default, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepSummary {
    pub cases: usize,
    pub fixed_points: usize,
    pub passed: usize,
    pub failed: usize,
    pub budget_exhausted: usize,
    pub failures_by_check: BTreeMap<String, usize>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepReport {
    pub n: usize,
    pub primes: Vec<u64>,
    pub cases: Vec<SweepCase>,
    pub summary: SweepSummary,
    pub elapsed_seconds: f64,
}

fn budget_or(e: GroebnerError, check: &str) -> String {
    match e {
        GroebnerError::BudgetExceeded(b) => format!("budget: {check} exceeded {b} steps"),
        other => format!("{check}: {other}"),
    }
}

pub fn run_sweep(opts: &SweepOptions) -> SweepReport {
    let start = Instant::now();
    let jobs: Vec<(usize, HessenbergFunction, Permutation)> = (1..=opts.max_n)
        .flat_map(|n| {
            HessenbergFunction::enumerate(n, true)
                .into_iter()
                .flat_map(move |h| Permutation::all(n).into_iter().map(move |w| (n, h.clone(), w)))
        })
        .collect();
    let cases: Vec<SweepCase> = jobs
        .par_iter()
        .enumerate()
        .map(|(idx, (n, h, w))| check_case(*n, h, w, opts, opts.seed.wrapping_add(idx as u64)))
        .collect();

    let mut summary = SweepSummary {
        cases: cases.len(),
        ..Default::default()
    };
    for c in &cases {
        summary.fixed_points += c.fixed_point as usize;
        if c.passed() {
            summary.passed += 1;
        } else {
            summary.failed += 1;
        }
        summary.budget_exhausted += c.budget_exhausted() as usize;
        for f in &c.failures {
            let key = f.split(':').next().unwrap_or(f).to_string();
            *summary.failures_by_check.entry(key).or_default() += 1;
        }
    }
    SweepReport {
        n: opts.max_n,
        primes: opts.primes.clone(),
        cases,
        summary,
        elapsed_seconds: start.elapsed().as_secs_f64(),
    }
}

/// All checks for one `(w, h)` pair.
pub fn check_case(n: usize, h: &HessenbergFunction, w: &Permutation, opts: &SweepOptions, seed: u64) -> SweepCase {
    let mut case = SweepCase {
        n,
        h: Some(h.clone()),
        w: Some(w.clone()),
        fixed_point: is_fixed_point(w, h),
        ..Default::default()
    };
    let ideal = match build_ideal(w, h, IdealKind::Cell) {
        Ok(i) => i,
        Err(e) => {
            case.fail(format!("ideal: {e}"));
            return case;
        }
    };
    case.lambda = ideal.height;
    let ord = order_n_w(w);

    let run_oracle = n <= ORACLE_NONFIXED_MAX_N || opts.oracle_nonfixed;
    if run_oracle {
        match reduced_gb_oracle(&ideal.nonzero_polys(), &ord, opts.budget) {
            Ok(gb) => {
                let unit = gb == vec![Polynomial::one(Domain::Integers)];
                case.unit_ideal = Some(unit);
                case.record("nonemptiness", unit != case.fixed_point);
            }
            Err(e) => case.fail(budget_or(e, "oracle")),
        }
    }

    if !case.fixed_point {
        let flagged = ideal.certifies_empty();
        case.empty_certified = Some(flagged);
        case.record("emptyCertified", flagged);
        return case;
    }

    case.dim = w.length().checked_sub(ideal.height);
    if case.dim.is_none() {
        case.fail("dim");
    }

    let report = match triangular_analysis(&ideal, &ord) {
        Ok(r) => r,
        Err(e) => {
            case.fail(budget_or(e, "triangular"));
            return case;
        }
    };
    let tri_ok = report.is_triangular && report.height == ideal.height;
    case.triangular_ok = Some(case.record("triangular", tri_ok));
    case.initial_terms_ok = Some(case.record("initialTerms", initial_terms_match(w, &ideal, &ord)));

    match buchberger_check(&ideal, &ord) {
        Ok(ok) => case.gb_ok = Some(case.record("gb", ok)),
        Err(e) => case.fail(budget_or(e, "gb")),
    }

    let wt = weights_for(w);
    let v = v_of_w(w);
    let homogeneous = ideal.nonzero_generators().all(|g| {
        let expected = v.apply(g.k) as i64 - v.apply(g.l) as i64 - 1;
        matches!(is_homogeneous(&g.poly, &wt), Ok(Some(d)) if d as i64 == expected)
    });
    case.homogeneous_ok = Some(case.record("homogeneous", homogeneous));

    let hilbert = hilbert_formula(w, h)
        .and_then(|s| s.expand(opts.trunc))
        .and_then(|formula| hilbert_oracle(&report, &wt, opts.trunc).map(|oracle| formula == oracle));
    case.hilbert_ok = Some(case.record("hilbert", hilbert.unwrap_or(false)));

    if opts.points > 0 && tri_ok {
        let ok = random_points_vanish(w, h, &report, opts.points, seed);
        case.random_points_ok = Some(case.record("randomPoints", ok));
    }

    if !opts.primes.is_empty() {
        let ok = opts.primes.iter().all(|&p| {
            SplittingContext::new(w, h, p)
                .and_then(|ctx| compatibility_check(&ctx))
                .is_ok_and(|r| r.compatible)
        });
        case.frobenius_ok = Some(case.record("frobenius", ok));
    }
    case
}

/// Each nonzero generator has initial term `-z_{n+1-v(k), v⁻¹(v(ℓ)+1)}`.
pub fn initial_terms_match(w: &Permutation, ideal: &IdealPresentation, ord: &crate::groebner::MonomialOrder) -> bool {
    let n = w.n();
    let v = v_of_w(w);
    let vi = v.inverse();
    ideal.nonzero_generators().all(|g| {
        let (vk, vl) = (v.apply(g.k), v.apply(g.l));
        if vk <= vl + 1 {
            return false;
        }
        let expected = Variable::z(n + 1 - vk, vi.apply(vl + 1));
        initial_term(&g.poly, ord).is_ok_and(|t| t.as_signed_variable() == Some((true, expected)))
    })
}

/// Samples free coordinates, solves the triangular system, and checks that
/// the numeric `Ω⁻¹ N Ω` vanishes in every position `k > h(ℓ)`.
pub fn random_points_vanish(
    w: &Permutation,
    h: &HessenbergFunction,
    report: &TriangularReport,
    points: usize,
    seed: u64,
) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..points).all(|_| {
        let free: BTreeMap<Variable, BigInt> = report
            .free_variables
            .iter()
            .map(|&v| (v, BigInt::from(rng.gen_range(-9i64..=9))))
            .collect();
        let Ok(point) = solve_triangular(report, &free) else {
            return false;
        };
        let Ok(omega) = build_omega(w).try_map(|e| e.evaluate(&point).map(|c| Polynomial::constant(c, Domain::Integers)))
        else {
            return false;
        };
        numeric_conjugate(w, &omega).is_some_and(|m| {
            crate::cells::generator_positions(h)
                .into_iter()
                .all(|(k, l)| m.get(k, l).is_zero())
        })
    })
}

/// `Ω⁻¹ N Ω` for a constant matrix `Ω` with pivots at `(w(j), j)`.
pub fn numeric_conjugate(w: &Permutation, omega: &PolyMatrix) -> Option<PolyMatrix> {
    let l = PolyMatrix::from_fn(omega.n(), omega.domain(), |i, j| omega.get(w.apply(i), j).clone());
    let inv = PolyMatrix::inverse_unitriangular_conjugate(w, &l).ok()?;
    if !inv.mat_mul(omega).ok()?.is_identity() {
        return None;
    }
    let nil = PolyMatrix::nilpotent(omega.n(), omega.domain());
    inv.mat_mul(&nil).ok()?.mat_mul(omega).ok()
}
