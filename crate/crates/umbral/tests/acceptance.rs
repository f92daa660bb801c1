//! Acceptance suite: every exit criterion of the build, one test per
//! criterion, each printing a single PASS/FAIL line (run with
//! `cargo test -p umbral --test acceptance -- --nocapture` to see them).
//!
//! All comparisons are exact; there are no tolerances anywhere.

use std::time::Instant;

use umbral::audit::{
    audit_all, embedded_golden, golden_deviations, run_identity, GridSpec, IdentityStatus,
};
use umbral::families::{
    higher_bernoulli, mixed_g, mixed_poly_conv_path, mixed_poly_gf_path, mixed_poly_shift_avg_path,
    mixed_poly_stirling_path, poly_bernoulli, MixedFamily,
};
use umbral::{apply_operator, binomial, factorial, functional_apply, Poly, Rat, Series};

const N_MAX: usize = 8;
const R_RANGE: std::ops::RangeInclusive<i64> = -2..=3;
const K_RANGE: std::ops::RangeInclusive<i64> = -2..=3;

fn conclude(criterion: &str, failures: Vec<String>) {
    if failures.is_empty() {
        println!("acceptance {criterion}: PASS");
    } else {
        println!("acceptance {criterion}: FAIL ({} cases)", failures.len());
    }
    assert!(failures.is_empty(), "{criterion} failures: {failures:?}");
}

/// Test-local deterministic generator, independent of the library's.
struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0 >> 11
    }

    fn int(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next() % (hi - lo + 1) as u64) as i64
    }

    fn rat(&mut self) -> Rat {
        Rat::ratio(self.int(-9, 9), self.int(1, 9))
    }

    fn poly(&mut self, max_deg: usize) -> Poly {
        let deg = self.int(0, max_deg as i64) as usize;
        let mut coeffs: Vec<Rat> = (0..=deg).map(|_| self.rat()).collect();
        if coeffs[deg].is_zero() {
            coeffs[deg] = Rat::one();
        }
        Poly::from_coeffs(coeffs)
    }
}

#[test]
fn criterion_1_four_path_agreement() {
    let started = Instant::now();
    let mut failures = Vec::new();
    for r in R_RANGE {
        for k in K_RANGE {
            for n in 0..=N_MAX {
                let a = mixed_poly_gf_path(n, r, k).unwrap();
                let b = mixed_poly_conv_path(n, r, k).unwrap();
                let c = mixed_poly_shift_avg_path(n, r, k).unwrap();
                let d = mixed_poly_stirling_path(n, r, k).unwrap();
                if !(a == b && a == c && a == d) {
                    failures.push(format!("(n={n}, r={r}, k={k})"));
                }
            }
        }
    }
    let elapsed = started.elapsed();
    if elapsed.as_secs() >= 30 {
        failures.push(format!("runtime {elapsed:?} exceeded 30 s"));
    }
    println!("  four-path grid in {elapsed:?}");
    conclude("criterion 1 (four-path agreement)", failures);
}

#[test]
fn criterion_2_reductions() {
    let mut failures = Vec::new();
    for k in K_RANGE {
        for n in 0..=N_MAX {
            if mixed_poly_gf_path(n, 0, k).unwrap() != poly_bernoulli(n, k).unwrap() {
                failures.push(format!("r=0 reduction at (n={n}, k={k})"));
            }
        }
    }
    for r in R_RANGE {
        for n in 0..=N_MAX {
            let shifted = higher_bernoulli(n, r + 1).unwrap().shift(&Rat::one());
            if mixed_poly_gf_path(n, r, 1).unwrap() != shifted {
                failures.push(format!("k=1 reduction at (n={n}, r={r})"));
            }
        }
    }
    conclude("criterion 2 (reductions)", failures);
}

#[test]
fn criterion_3_umbral_axioms() {
    let mut failures = Vec::new();
    // <t^k | x^n> = n! delta_(n,k) for n, k <= 10.
    for k in 0..=10usize {
        let probe = Series::monomial(k, Rat::one(), 12);
        for n in 0..=10usize {
            let expected = if n == k { factorial(n) } else { Rat::zero() };
            let got = functional_apply(&probe, &Poly::monomial(n, Rat::one())).unwrap();
            if got != expected {
                failures.push(format!("kronecker (n={n}, k={k})"));
            }
        }
    }
    // Evaluation/shift and transpose properties on 120 randomized cases
    // each.
    let mut rng = Rng(0xacce97ed);
    for case in 0..120 {
        let y = rng.rat();
        let p = rng.poly(6);
        let deg = p.degree().unwrap_or(0);
        let shift_op = Series::exp_scaled(&y, deg + 2);
        if functional_apply(&shift_op, &p).unwrap() != p.eval(&y) {
            failures.push(format!("evaluation functional case {case}"));
        }
        if apply_operator(&shift_op, &p).unwrap() != p.shift(&y) {
            failures.push(format!("shift operator case {case}"));
        }
    }
    for case in 0..120 {
        let p = rng.poly(6);
        let deg = p.degree().unwrap_or(0);
        let f = Series::from_coeffs((0..deg + 3).map(|_| rng.rat()).collect(), deg + 3);
        let lhs = functional_apply(&f, &p.mul_x()).unwrap();
        let rhs = functional_apply(&f.deriv().unwrap(), &p).unwrap();
        if lhs != rhs {
            failures.push(format!("transpose case {case}"));
        }
    }
    // Biorthogonality of the mixed pairs: <g t^m | s_n> = n! delta_(n,m)
    // for n, m <= 6 and r, k in [-1, 2].
    for r in -1..=2 {
        for k in -1..=2 {
            let g = mixed_g(r, k, 9).unwrap();
            let fam = MixedFamily::new(r, k, 6).unwrap();
            for n in 0..=6usize {
                for m in 0..=6usize {
                    let probe = &g * &Series::monomial(m, Rat::one(), 9);
                    let got = functional_apply(&probe, fam.poly(n)).unwrap();
                    let expected = if n == m { factorial(n) } else { Rat::zero() };
                    if got != expected {
                        failures.push(format!("biorthogonality (n={n}, m={m}, r={r}, k={k})"));
                    }
                }
            }
        }
    }
    conclude("criterion 3 (umbral axioms)", failures);
}

#[test]
fn criterion_4_series_kernel() {
    let mut failures = Vec::new();
    let n = 10;
    // Reversion round-trips mod t^10.
    let geometric = Series::t(n)
        .div(&(&Series::one(n) - &Series::monomial(1, Rat::one(), n)))
        .unwrap();
    let mut cubic = Series::t(n);
    cubic = &cubic + &Series::monomial(3, Rat::one(), n);
    for (name, f) in [
        ("e^t - 1", Series::expm1(n)),
        ("t/(1-t)", geometric),
        ("t + t^3", cubic),
    ] {
        let rev = f.reversion().unwrap();
        if f.compose(&rev).unwrap() != Series::t(n) {
            failures.push(format!("reversion round-trip for {name}"));
        }
        if rev.reversion().unwrap() != f {
            failures.push(format!("double reversion for {name}"));
        }
    }
    // Laurent-aware division recovers B_n/n!, against the independent
    // recurrence sum_(j<=n) C(n+1,j) B_j = 0.
    let mut bernoulli = vec![Rat::one()];
    for m in 1..=N_MAX {
        let mut acc = Rat::zero();
        for (j, b) in bernoulli.iter().enumerate() {
            acc += binomial(m + 1, j as i64) * b.clone();
        }
        bernoulli.push(-acc / Rat::from_int(m as i64 + 1));
    }
    let quotient = Series::t(N_MAX + 2).div(&Series::expm1(N_MAX + 2)).unwrap();
    for (m, b) in bernoulli.iter().enumerate() {
        if quotient.coeff(m) != b / &factorial(m) {
            failures.push(format!("Bernoulli coefficient at degree {m}"));
        }
    }
    conclude("criterion 4 (series kernel)", failures);
}

#[test]
fn criterion_5_stirling_identities() {
    let mut failures = Vec::new();
    let grid = GridSpec::default();
    let thm7 = run_identity("thm7", &grid).unwrap();
    if thm7.status != IdentityStatus::HoldsOnGrid {
        failures.push("thm7 does not hold on grid".into());
    }
    // m in [1,4] x n in [0,8] x k in [-2,3] = 216 exact cases.
    if thm7.pass != 216 {
        failures.push(format!("thm7 covered {} cases, expected 216", thm7.pass));
    }
    let lemma6 = run_identity("lemma6", &grid).unwrap();
    if lemma6.status != IdentityStatus::HoldsOnGrid {
        failures.push("lemma6 does not hold on grid".into());
    }
    // m in [1,3] x k in [-1,2] = 12 series comparisons at precision 10.
    if lemma6.pass != 12 {
        failures.push(format!("lemma6 covered {} cases, expected 12", lemma6.pass));
    }
    conclude(
        "criterion 5 (thm7 both branches; lemma6 series identity)",
        failures,
    );
}

#[test]
fn criterion_6_basis_changes() {
    let mut failures = Vec::new();
    let grid = GridSpec {
        n: (0, 6),
        ..GridSpec::default()
    };
    for id in ["thm8", "thm9", "eq51"] {
        let report = run_identity(id, &grid).unwrap();
        if report.status != IdentityStatus::HoldsOnGrid {
            failures.push(format!(
                "{id} fails: {}",
                serde_json::to_string(&report.counterexamples).unwrap_or_default()
            ));
        }
    }
    conclude(
        "criterion 6 (basis changes recombine; coefficients match connection route)",
        failures,
    );
}

#[test]
fn criterion_7_golden_statuses() {
    let mut failures = Vec::new();
    let grid = GridSpec::default();
    let anchor = run_identity("thm5-anchor", &grid).unwrap();
    if anchor.status != IdentityStatus::HoldsOnGrid {
        failures.push("thm5-anchor does not hold on grid".into());
    }
    let reports = audit_all(&grid);
    let golden = embedded_golden();
    for deviation in golden_deviations(&golden, &reports) {
        failures.push(deviation);
    }
    // Any identity recorded as failing must carry its minimal
    // counterexample in the golden set.
    for entry in &golden.expected {
        if entry.status == IdentityStatus::FailsWithCounterexample && entry.counterexample.is_none()
        {
            failures.push(format!(
                "{} lacks a recorded counterexample",
                entry.identity
            ));
        }
    }
    conclude(
        "criterion 7 (anchor holds; audits match committed golden)",
        failures,
    );
}

#[test]
fn criterion_8_leading_terms() {
    let mut failures = Vec::new();
    let report = run_identity("eq32", &GridSpec::default()).unwrap();
    if report.status != IdentityStatus::HoldsOnGrid {
        failures.push("eq32 leading terms deviate".into());
    }
    // 6 r-cases plus 6 k-cases.
    if report.pass != 12 {
        failures.push(format!("eq32 covered {} cases, expected 12", report.pass));
    }
    conclude("criterion 8 (correction-kernel leading terms)", failures);
}

#[test]
fn criterion_9_determinism() {
    let mut failures = Vec::new();
    let grid = GridSpec::default();
    let first = serde_json::to_string(&audit_all(&grid)).unwrap();
    let second = serde_json::to_string(&audit_all(&grid)).unwrap();
    if first != second {
        failures.push("serialized report sets differ between runs".into());
    }
    conclude("criterion 9 (byte-identical audit runs)", failures);
}
