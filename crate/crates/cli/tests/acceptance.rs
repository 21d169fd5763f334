//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_RED` fail for reasons analysed in the project
//! notes; the target exits nonzero only if a criterion's status differs from
//! what is recorded here, so a red line that turns green is also reported.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use golomb_core::approx::{approximate, evaluate_reference, exponent_schedule, family_bound, lift};
use golomb_core::hankel::{recurrence_suite, table_check, verify_main_h};
use golomb_core::linalg::identities::random_identity_suite;
use golomb_core::pade::{contact, series_hankel_det};
use golomb_core::{gap_sequence, golomb_pade, golomb_series, Error, TableEdition};

const KNOWN_RED: &[(u32, &str)] = &[
    (1, "the printed mod-6 rows for g1 at offset 0 are complemented; elimination agrees with the corrected rows"),
    (8, "tail mu_eff of K = 2 schedules converges to (2k+1)/(k+1) per order, so the k = 2 records stay near 1.66 < 1.78"),
];

type Criterion = (u32, &'static str, fn() -> Verdict);

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn pow(b: i64, e: u64) -> BigInt {
    num_traits::pow(BigInt::from(b), e as usize)
}

fn f64_of(x: &BigRational) -> f64 {
    num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::NAN)
}

fn c1_table() -> Verdict {
    let start = Instant::now();
    let printed = table_check(64, TableEdition::Printed);
    let elapsed = start.elapsed();
    let bad: Vec<_> = printed.iter().filter(|r| !r.agree).collect();
    let corrected_bad = table_check(64, TableEdition::Corrected).iter().filter(|r| !r.agree).count();
    let first = bad.first().map(|r| r.query.label()).unwrap_or_default();
    verdict(
        bad.is_empty() && elapsed < Duration::from_secs(10),
        format!(
            "{} queries, {} mismatches against the printed table (first {first}); corrected table: {corrected_bad} mismatches; {elapsed:.2?}",
            printed.len(),
            bad.len()
        ),
    )
}

fn c2_main_h() -> Verdict {
    let start = Instant::now();
    let r = verify_main_h(24, 256).expect("valid ranges");
    let elapsed = start.elapsed();
    let first: Vec<BigInt> = r.exact.iter().take(3).map(|row| row.det_g.clone()).collect();
    let want: Vec<BigInt> = [1, -3, -1].map(BigInt::from).to_vec();
    let odd = r.exact.iter().all(|row| row.det_g.bit(0) && row.det_f.bit(0));
    verdict(
        r.passed() && odd && first == want && r.exact.len() == 24 && elapsed < Duration::from_secs(60),
        format!("det H_n^1(g) for n = 1..3: {first:?}; exact odd to 24, GF(2) odd to 256; {elapsed:.2?}"),
    )
}

fn c3_recurrences() -> Verdict {
    let r = recurrence_suite(32, 2);
    let failing: Vec<&str> = r.failing_clauses().iter().map(|s| s.clause).collect();
    let base_max = r.base_cases.iter().map(|b| b.query.n).max().unwrap_or(0);
    verdict(
        r.passed() && base_max == 12,
        format!(
            "{} clauses; failing {:?} (all documented counterexamples: {}); base cases to n = {base_max} hold: {}",
            r.summaries.len(),
            failing,
            r.unexpected_failures().is_empty(),
            r.base_cases_hold()
        ),
    )
}

fn c4_identities() -> Verdict {
    let r = random_identity_suite(0x6f1d_2c3b_5a49_8e07, 200);
    let tallies: Vec<String> =
        r.required().iter().map(|t| format!("{} {}/{}", t.name, t.nonzero, t.instances)).collect();
    let counts_ok = r.required().iter().all(|t| t.instances >= 200);
    verdict(r.all_required_hold() && counts_ok, format!("nonzero residuals: {}", tallies.join(", ")))
}

fn c5_defects() -> Verdict {
    let mut checked = 0;
    for eps in [-1i8, 1] {
        // coefficients of H(z)/z, indexed so that H_k^1 of H is H_k^0 here
        let shifted = golomb_series(eps, 20).unwrap().shift_down(1).unwrap();
        for k in 1..=8usize {
            let a = golomb_pade(eps, k).unwrap();
            let ratio =
                series_hankel_det(&shifted, 0, k + 1).unwrap() / series_hankel_det(&shifted, 0, k).unwrap();
            let h = golomb_series(eps, 2 * k + 6).unwrap();
            let at = contact(&h, &a.p, &a.q).unwrap();
            let ok = a.h_k == ratio && !a.h_k.is_zero() && at == Some((2 * k + 1, a.h_k.clone()));
            if !ok {
                return verdict(
                    false,
                    format!("eps = {eps}, k = {k}: h_k = {}, ratio = {ratio}, contact {at:?}", a.h_k),
                );
            }
            checked += 1;
        }
    }
    verdict(true, format!("{checked} approximants: defect = Hankel ratio, nonzero, contact order 2k+1"))
}

fn c6_lift() -> Verdict {
    let mut checked = 0;
    for eps in [-1i8, 1] {
        for k in 1..=3usize {
            let a = golomb_pade(eps, k).unwrap();
            for m in 0..=3u32 {
                let l = lift(&a, m, eps).unwrap();
                let t = 1usize << m;
                let order = t * (2 * k + 1);
                let h = golomb_series(eps, order + 2).unwrap();
                let at = contact(&h, &l.p, &l.q).unwrap();
                let deg_ok =
                    l.p.degree().unwrap_or(0) <= t * (k + 1) && l.q.degree().unwrap_or(0) <= t * (k + 1);
                if at != Some((order, a.h_k.clone())) || !deg_ok {
                    return verdict(
                        false,
                        format!("eps = {eps}, k = {k}, m = {m}: contact {at:?}, degrees ok {deg_ok}"),
                    );
                }
                checked += 1;
            }
        }
    }
    verdict(true, format!("{checked} lifts: contact h_k z^(2^m (2k+1)), degrees <= 2^m (k+1)"))
}

fn c7_scaling() -> Verdict {
    // Fermat reciprocal sum: sum 1/(2^(2^n) + 1) for n < 9, tail below 2 * 2^(-512).
    let partial: BigRational = (0..9u64).map(|n| BigRational::new(BigInt::one(), pow(2, 1 << n) + 1)).sum();
    let tail = BigRational::new(BigInt::from(2), pow(2, 512));
    let target = BigRational::new(BigInt::one(), pow(2, 129));
    let alpha = evaluate_reference(1, 2, &target).unwrap();
    let width_ok = alpha.width() < BigRational::new(BigInt::one(), pow(2, 128));
    let consistent = alpha.lo() <= &(&partial + &tail) && &partial <= alpha.hi();

    let mut worst = (f64::INFINITY, f64::NEG_INFINITY);
    let mut ok = width_ok && consistent;
    let mut notes = Vec::new();
    for b in [2u64, 3] {
        for eps in [-1i8, 1] {
            for k in [2usize, 3] {
                let mut used = Vec::new();
                for m in (0..=6u32).rev() {
                    if used.len() == 3 {
                        break;
                    }
                    match approximate(eps, b, k, m) {
                        Ok((l, rec)) => {
                            let s = rec.scaled_error().scale(&(BigRational::one() / l.h_k.abs()));
                            let (lo, hi) = (f64_of(s.lo()), f64_of(s.hi()));
                            worst = (worst.0.min(lo), worst.1.max(hi));
                            if !(s.lo() >= &rat(9, 10) && s.hi() <= &rat(11, 10)) {
                                ok = false;
                                notes.push(format!("b={b} eps={eps} k={k} m={m}: [{lo:.4}, {hi:.4}]"));
                            }
                            used.push(m);
                        }
                        Err(Error::DegenerateEvaluation { .. }) => continue,
                        Err(e) => {
                            ok = false;
                            notes.push(format!("b={b} eps={eps} k={k} m={m}: {e}"));
                            break;
                        }
                    }
                }
                ok &= used.len() == 3;
            }
        }
    }
    verdict(
        ok,
        format!(
            "scaled error / |h_k| in [{:.5}, {:.5}] over 24 convergents; Fermat-sum enclosure width < 2^-128: {width_ok}, agrees with direct sum: {consistent}{}",
            worst.0,
            worst.1,
            if notes.is_empty() { String::new() } else { format!("; {}", notes.join("; ")) }
        ),
    )
}

fn c8_exponents() -> Verdict {
    let s = exponent_schedule(2, 2, 1, 6).unwrap();
    let lo = rat(178, 100);
    let hi = rat(23, 10);
    let tail_ok = s.tail_mu_eff_min >= lo && s.tail_mu_eff_max <= hi;
    let bounds: Vec<BigRational> = (1..=20).map(|k| family_bound(k).unwrap()).collect();
    let decreasing = bounds.windows(2).all(|w| w[1] < w[0]);
    let at20 = bounds[19] < rat(200002, 100000);
    let last = s.last();
    let limits: Vec<String> =
        s.orders.iter().map(|o| format!("k={}: {:.4}", o.k, f64_of(&o.mu_limit))).collect();
    verdict(
        tail_ok && decreasing && at20,
        format!(
            "tail ({} records) mu_eff in [{:.4}, {:.4}], need [1.78, 2.3]; last record k={} m={} mu_eff {:.4}; per-order limits {}; ar_bound decreasing to K=20: {decreasing}, < 2.00002 at K=20: {at20}",
            s.tail_len,
            f64_of(&s.tail_mu_eff_min),
            f64_of(&s.tail_mu_eff_max),
            last.k,
            last.m,
            f64_of(&last.mu_eff),
            limits.join(", ")
        ),
    )
}

fn c9_gaps() -> Verdict {
    let mut ok = true;
    let mut notes = Vec::new();
    for big_k in 1..=8u32 {
        let g = gap_sequence(big_k, 0, 500).unwrap();
        let half = BigInt::one() << (big_k as usize - 1);
        let bound = BigRational::new(&half + 3, &half + 1);
        let max = g
            .elements
            .windows(2)
            .map(|w| BigRational::new(w[1].clone().into(), w[0].clone().into()))
            .max()
            .unwrap();
        let within = max <= bound;
        let attained = max == bound;
        ok &= g.elements.len() == 500 && within && (big_k > 2 || attained);
        notes.push(format!(
            "K={big_k}: {}/{}{}",
            max.numer(),
            max.denom(),
            if attained { " (=)" } else { "" }
        ));
    }
    verdict(ok, format!("max neighbour ratios {}", notes.join(", ")))
}

fn c10_determinism() -> Verdict {
    let run = |jobs: &str| {
        Command::new(env!("CARGO_BIN_EXE_golomb"))
            .args(["verify-theorem", "--n-max", "64", "--jobs", jobs])
            .output()
            .expect("binary runs")
    };
    let one = run("1");
    let eight = run("8");
    let same = one.stdout == eight.stdout;
    verdict(
        same && one.status.success() && eight.status.success() && !one.stdout.is_empty(),
        format!(
            "--jobs 1 and --jobs 8 reports: {} bytes each, identical: {same}, exit codes {:?}/{:?}",
            one.stdout.len(),
            one.status.code(),
            eight.status.code()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "parity tables to n = 64", c1_table),
        (2, "odd determinants of H_n^1(g), H_n^1(f)", c2_main_h),
        (3, "recurrence suite", c3_recurrences),
        (4, "identity oracles", c4_identities),
        (5, "Pade defects", c5_defects),
        (6, "lift contract", c6_lift),
        (7, "convergent scaling", c7_scaling),
        (8, "exponent trend", c8_exponents),
        (9, "gap sequences", c9_gaps),
        (10, "determinism", c10_determinism),
    ];
    let mut surprises = 0;
    for (id, name, check) in criteria {
        let v = check();
        let known = KNOWN_RED.iter().find(|(k, _)| *k == id);
        println!("{} {id:>2} {name}: {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
        match (v.pass, known) {
            (false, Some((_, why))) => println!("        known red: {why}"),
            (true, Some(_)) => {
                println!("        listed as known red but passed; update KNOWN_RED");
                surprises += 1;
            }
            (false, None) => surprises += 1,
            (true, None) => {}
        }
    }
    if surprises == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{surprises} criteria differ from their recorded status");
        ExitCode::FAILURE
    }
}
