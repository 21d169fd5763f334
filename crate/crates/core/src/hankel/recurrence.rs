//! The doubling recurrences for Hankel parities of the seeded ruler sequences.
//!
//! Each clause expresses a determinant of order `2n` or `2n + 1` through
//! determinants of order about `n`. Both sides are evaluated here with
//! [`parity_direct`], so a clause that disagrees anywhere is reported with its
//! smallest counterexample instead of being trusted.
//!
//! Clauses are labelled by their left-hand determinant. The odd-order
//! clauses for offset 1 exist in two forms that differ in a few subscripts;
//! both are evaluated, as `first form` and `second form`.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{
    parity_closed_form, parity_direct, ClauseInstance, HankelQuery, ParityReport, TableEdition, Variant,
};

/// Memoised GF(2) parities of `H_n^p(g^s)` and their bordered versions.
#[derive(Default)]
struct Dets {
    cache: HashMap<HankelQuery, bool>,
}

impl Dets {
    fn get(&mut self, q: HankelQuery) -> bool {
        *self.cache.entry(q).or_insert_with(|| parity_direct(&q).expect("ruler queries are always in range"))
    }

    /// `|H_n^p(g^seed)| mod 2`.
    fn h(&mut self, seed: u8, p: usize, n: usize) -> bool {
        self.get(HankelQuery::plain(seed_variant(seed), p, n))
    }

    /// `|bar H_n^p(g^seed)| mod 2`.
    fn b(&mut self, seed: u8, p: usize, n: usize) -> bool {
        self.get(HankelQuery::bar(seed_variant(seed), p, n))
    }

    /// `|H_a||H_b| - |bar H_a||H_b| - |H_a||bar H_b|` mod 2, with
    /// `H_a = H_(na)^(pa)(g^sa)` and `H_b = H_(nb)^(pb)(g^1)`.
    fn three_term(&mut self, (sa, pa, na): (u8, usize, usize), (pb, nb): (usize, usize)) -> bool {
        let (ha, ba) = (self.h(sa, pa, na), self.b(sa, pa, na));
        let (hb, bb) = (self.h(1, pb, nb), self.b(1, pb, nb));
        (ha & hb) ^ (ba & hb) ^ (ha & bb)
    }

    /// `|H_a||bar H_b| + |bar H_a||H_b|` mod 2, same conventions.
    fn two_term(&mut self, (sa, pa, na): (u8, usize, usize), (pb, nb): (usize, usize)) -> bool {
        let (ha, ba) = (self.h(sa, pa, na), self.b(sa, pa, na));
        let (hb, bb) = (self.h(1, pb, nb), self.b(1, pb, nb));
        (ha & bb) ^ (ba & hb)
    }
}

fn seed_variant(seed: u8) -> Variant {
    if seed == 0 {
        Variant::G0
    } else {
        Variant::G1
    }
}

/// Range of the clause parameter `p`.
#[derive(Clone, Copy)]
enum Offsets {
    Zero,
    Positive,
    NonNegative,
}

struct Clause {
    label: &'static str,
    offsets: Offsets,
    /// Returns the left-hand query and the right-hand parity.
    eval: fn(&mut Dets, usize, usize) -> (HankelQuery, bool),
}

fn lhs(seed: u8, p: usize, n: usize, barred: bool) -> HankelQuery {
    HankelQuery::new(seed_variant(seed), p, n, barred)
}

fn clauses() -> Vec<Clause> {
    vec![
        Clause {
            label: "H_2n^0(g1)",
            offsets: Offsets::Zero,
            eval: |d, n, _| (lhs(1, 0, 2 * n, false), d.three_term((0, 0, n), (1, n))),
        },
        Clause {
            label: "H_2n^0(g0)",
            offsets: Offsets::Zero,
            eval: |d, n, _| (lhs(0, 0, 2 * n, false), d.three_term((1, 0, n), (1, n))),
        },
        Clause {
            label: "H_2n^2p",
            offsets: Offsets::Positive,
            eval: |d, n, p| (lhs(1, 2 * p, 2 * n, false), d.three_term((1, p, n), (p + 1, n))),
        },
        Clause {
            label: "bar H_2n^0(g1)",
            offsets: Offsets::Zero,
            eval: |d, n, _| (lhs(1, 0, 2 * n, true), d.two_term((0, 0, n), (1, n))),
        },
        Clause {
            label: "bar H_2n^0(g0)",
            offsets: Offsets::Zero,
            eval: |d, n, _| (lhs(0, 0, 2 * n, true), d.two_term((1, 0, n), (1, n))),
        },
        Clause {
            label: "bar H_2n^2p",
            offsets: Offsets::Positive,
            eval: |d, n, p| (lhs(1, 2 * p, 2 * n, true), d.two_term((1, p, n), (p + 1, n))),
        },
        Clause {
            label: "H_2n+1^0(g1)",
            offsets: Offsets::Zero,
            eval: |d, n, _| (lhs(1, 0, 2 * n + 1, false), d.three_term((0, 0, n + 1), (1, n))),
        },
        Clause {
            label: "H_2n+1^0(g0)",
            offsets: Offsets::Zero,
            eval: |d, n, _| (lhs(0, 0, 2 * n + 1, false), d.three_term((1, 0, n + 1), (1, n))),
        },
        Clause {
            label: "H_2n+1^2p",
            offsets: Offsets::Positive,
            eval: |d, n, p| (lhs(1, 2 * p, 2 * n + 1, false), d.three_term((1, p, n + 1), (p + 1, n))),
        },
        Clause {
            label: "bar H_2n+1^0(g1)",
            offsets: Offsets::Zero,
            eval: |d, n, _| (lhs(1, 0, 2 * n + 1, true), d.two_term((0, 0, n + 1), (1, n))),
        },
        Clause {
            label: "bar H_2n+1^0(g0)",
            offsets: Offsets::Zero,
            eval: |d, n, _| (lhs(0, 0, 2 * n + 1, true), d.two_term((1, 0, n + 1), (1, n))),
        },
        Clause {
            label: "bar H_2n+1^2p",
            offsets: Offsets::Positive,
            eval: |d, n, p| (lhs(1, 2 * p, 2 * n + 1, true), d.two_term((1, p, n + 1), (p + 1, n))),
        },
        Clause {
            label: "H_2n^2p+1",
            offsets: Offsets::NonNegative,
            eval: |d, n, p| (lhs(1, 2 * p + 1, 2 * n, false), d.h(1, p + 1, n)),
        },
        Clause {
            label: "bar H_2n^2p+1",
            offsets: Offsets::NonNegative,
            eval: |_, n, p| (lhs(1, 2 * p + 1, 2 * n, true), false),
        },
        Clause {
            label: "H_2n+1^1(g1) first form",
            offsets: Offsets::Zero,
            eval: |d, n, _| (lhs(1, 1, 2 * n + 1, false), odd_offset_one(d, n, 0, Form::First)),
        },
        Clause {
            label: "H_2n+1^1(g1) second form",
            offsets: Offsets::Zero,
            eval: |d, n, _| (lhs(1, 1, 2 * n + 1, false), odd_offset_one(d, n, 0, Form::Second)),
        },
        Clause {
            label: "H_2n+1^1(g0) first form",
            offsets: Offsets::Zero,
            eval: |d, n, _| (lhs(0, 1, 2 * n + 1, false), odd_offset_one(d, n, 1, Form::First)),
        },
        Clause {
            label: "H_2n+1^1(g0) second form",
            offsets: Offsets::Zero,
            eval: |d, n, _| (lhs(0, 1, 2 * n + 1, false), odd_offset_one(d, n, 1, Form::Second)),
        },
        Clause {
            label: "H_2n+1^2p+1",
            offsets: Offsets::Positive,
            eval: |d, n, p| {
                let first = (d.h(1, p + 2, n) & d.b(1, p, n + 1)) ^ (d.h(1, p, n + 1) & d.b(1, p + 2, n));
                let second =
                    (d.h(1, p + 1, n) & d.b(1, p + 1, n + 1)) ^ (d.h(1, p + 1, n + 1) & d.b(1, p + 1, n));
                (lhs(1, 2 * p + 1, 2 * n + 1, false), first & second)
            },
        },
        Clause {
            label: "bar H_2n+1^1",
            offsets: Offsets::Zero,
            eval: |d, n, _| {
                let first = (d.h(1, 2, n) & d.b(1, 0, n + 1)) ^ (d.h(1, 0, n + 1) & d.b(1, 2, n));
                let second = (d.h(1, 1, n) & d.b(1, 1, n + 1)) ^ (d.h(1, 1, n + 1) & d.b(1, 1, n));
                let t3 = d.h(0, 0, n + 1) & d.h(1, 1, n) & d.h(1, 1, n + 1) & d.h(1, 2, n);
                let t4 = d.h(1, 1, n) & d.h(1, 2, n) & d.h(0, 0, n + 2) & d.b(1, 1, n + 2);
                (lhs(1, 1, 2 * n + 1, true), (first & second) ^ t3 ^ t4)
            },
        },
        Clause {
            label: "bar H_2n+1^2p+1",
            offsets: Offsets::Positive,
            eval: |d, n, p| {
                let first = (d.h(1, p + 2, n) & d.b(1, p, n + 1)) ^ (d.h(1, p, n + 1) & d.b(1, p + 2, n));
                let second =
                    (d.h(1, p + 1, n) & d.b(1, p + 1, n + 1)) ^ (d.h(1, p + 1, n + 1) & d.b(1, p + 1, n));
                let t3 = d.h(1, p, n + 1) & d.h(1, p + 1, n) & d.h(1, p + 1, n + 1) & d.h(1, p + 2, n);
                let t4 = d.h(1, p + 1, n) & d.h(1, p + 2, n) & d.h(1, p, n + 2) & d.h(1, p + 1, n + 2);
                (lhs(1, 2 * p + 1, 2 * n + 1, true), (first & second) ^ t3 ^ t4)
            },
        },
        Clause {
            label: "bar H_2n+1^1 product only",
            offsets: Offsets::Zero,
            eval: |d, n, _| {
                let first = (d.h(1, 2, n) & d.b(1, 0, n + 1)) ^ (d.h(1, 0, n + 1) & d.b(1, 2, n));
                let second = (d.h(1, 1, n) & d.b(1, 1, n + 1)) ^ (d.h(1, 1, n + 1) & d.b(1, 1, n));
                (lhs(1, 1, 2 * n + 1, true), first & second)
            },
        },
        Clause {
            label: "bar H_2n+1^2p+1 product only",
            offsets: Offsets::Positive,
            eval: |d, n, p| {
                let first = (d.h(1, p + 2, n) & d.b(1, p, n + 1)) ^ (d.h(1, p, n + 1) & d.b(1, p + 2, n));
                let second =
                    (d.h(1, p + 1, n) & d.b(1, p + 1, n + 1)) ^ (d.h(1, p + 1, n + 1) & d.b(1, p + 1, n));
                (lhs(1, 2 * p + 1, 2 * n + 1, true), first & second)
            },
        },
    ]
}

/// Clauses whose printed form is known to fail, each with the reason.
///
/// The `product only` variants drop the two four-factor terms of the
/// bordered odd-order clauses; they are candidate corrections and are
/// expected to hold.
pub const DOCUMENTED_ERRATA: &[(&str, &str)] = &[
    (
        "H_2n+1^1(g1) first form",
        "last factor uses bar H_n^1(g1); the second form uses bar H_(n+1)^1(g1) and holds",
    ),
    (
        "H_2n+1^1(g0) first form",
        "first factor uses bar H_(n+1)^1(g1); the second form uses bar H_n^1(g1) and holds",
    ),
    ("bar H_2n+1^1", "the two four-factor terms do not belong; the bare product holds"),
    ("bar H_2n+1^2p+1", "the two four-factor terms do not belong; the bare product holds"),
];

pub fn is_documented_erratum(label: &str) -> bool {
    DOCUMENTED_ERRATA.iter().any(|(l, _)| *l == label)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Form {
    First,
    Second,
}

/// Right-hand side of the `H_(2n+1)^1` clause. `seed` is the seed of the
/// `H_(n+1)^0` factors (0 for the `g^1` left side, 1 for the `g^0` one).
fn odd_offset_one(d: &mut Dets, n: usize, seed: u8, form: Form) -> bool {
    // First factor: the H_(2n+1)^0 expansion, except that the first form of
    // the g^0 clause borrows the order n+1 bordered minor.
    let x = if seed == 1 && form == Form::First {
        let (h0, b0) = (d.h(1, 0, n + 1), d.b(1, 0, n + 1));
        (h0 & d.h(1, 1, n)) ^ (b0 & d.h(1, 1, n)) ^ (h0 & d.b(1, 1, n + 1))
    } else {
        d.three_term((seed, 0, n + 1), (1, n))
    };
    let y = d.three_term((1, 1, n + 1), (2, n));
    let z = d.three_term((1, 1, n), (2, n));
    // Last factor: the first form of the g^1 clause ends with bar H_n^1
    // rather than bar H_(n+1)^1.
    let w = if seed == 0 && form == Form::First {
        let (h0, b0) = (d.h(0, 0, n + 1), d.b(0, 0, n + 1));
        (h0 & d.h(1, 1, n + 1)) ^ (b0 & d.h(1, 1, n + 1)) ^ (h0 & d.b(1, 1, n))
    } else {
        d.three_term((seed, 0, n + 1), (1, n + 1))
    };
    (x & y) ^ (z & w)
}

/// Agreement tally for one clause over the whole suite.
#[derive(Debug, Clone, Serialize)]
pub struct ClauseSummary {
    pub clause: &'static str,
    pub instances: usize,
    pub disagreements: usize,
    /// Smallest `(n, p)` where the two sides differ.
    pub first_counterexample: Option<ParityReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RecurrenceReport {
    pub n_max: usize,
    pub p_max: usize,
    pub summaries: Vec<ClauseSummary>,
    /// Table entries for `n <= 12` recomputed by elimination.
    pub base_cases: Vec<ParityReport>,
    pub reports: Vec<ParityReport>,
}

impl RecurrenceReport {
    pub fn base_cases_hold(&self) -> bool {
        self.base_cases.iter().all(|r| r.agree)
    }

    pub fn failing_clauses(&self) -> Vec<&ClauseSummary> {
        self.summaries.iter().filter(|s| s.disagreements > 0).collect()
    }

    /// Failing clauses that are not in [`DOCUMENTED_ERRATA`].
    pub fn unexpected_failures(&self) -> Vec<&ClauseSummary> {
        self.failing_clauses().into_iter().filter(|s| !is_documented_erratum(s.clause)).collect()
    }

    /// Documented errata that nonetheless held everywhere in this run.
    pub fn errata_not_reproduced(&self) -> Vec<&ClauseSummary> {
        self.summaries.iter().filter(|s| is_documented_erratum(s.clause) && s.disagreements == 0).collect()
    }

    /// Every clause outside the errata holds, each erratum shows a
    /// counterexample, and the base cases match the corrected table.
    pub fn passed(&self) -> bool {
        self.base_cases_hold()
            && self.unexpected_failures().is_empty()
            && self.errata_not_reproduced().is_empty()
    }
}

/// Evaluate every clause for `1 <= n <= n_max` and every admissible
/// `p <= p_max`, both sides by GF(2) elimination.
pub fn recurrence_suite(n_max: usize, p_max: usize) -> RecurrenceReport {
    let all = clauses();
    let mut work: Vec<(usize, usize, usize)> = Vec::new();
    for (ci, clause) in all.iter().enumerate() {
        let ps: Vec<usize> = match clause.offsets {
            Offsets::Zero => vec![0],
            Offsets::Positive => (1..=p_max).collect(),
            Offsets::NonNegative => (0..=p_max).collect(),
        };
        for n in 1..=n_max {
            for &p in &ps {
                work.push((ci, n, p));
            }
        }
    }

    let reports: Vec<ParityReport> = work
        .par_iter()
        .map_init(Dets::default, |dets, &(ci, n, p)| {
            let clause = &all[ci];
            let (query, rhs) = (clause.eval)(dets, n, p);
            let direct = dets.get(query);
            let closed = parity_closed_form(&query, TableEdition::Corrected).ok();
            let instance = ClauseInstance { clause: clause.label, n, p };
            // The clause is judged on its two sides alone; the table value is
            // informational and checked separately.
            let mut report = ParityReport::new(query, Some(instance), direct, None, Some(rhs));
            report.closed_form = closed;
            report
        })
        .collect();

    let summaries = all
        .iter()
        .map(|clause| {
            let mine = reports.iter().filter(|r| r.clause.as_ref().is_some_and(|c| c.clause == clause.label));
            let mut instances = 0;
            let mut bad: Vec<&ParityReport> = Vec::new();
            for r in mine {
                instances += 1;
                if !r.agree {
                    bad.push(r);
                }
            }
            let first = bad
                .iter()
                .min_by_key(|r| {
                    let c = r.clause.as_ref().expect("suite reports carry a clause");
                    (c.n, c.p)
                })
                .map(|r| (*r).clone());
            ClauseSummary {
                clause: clause.label,
                instances,
                disagreements: bad.len(),
                first_counterexample: first,
            }
        })
        .collect();

    let base_cases = super::table_check(12, TableEdition::Corrected);
    RecurrenceReport { n_max, p_max, summaries, base_cases, reports }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clause_v_example() {
        // |H_6^1(g1)| and |H_3^1(g1)| are both odd.
        let mut d = Dets::default();
        let (q, rhs) = (clauses().iter().find(|c| c.label == "H_2n^2p+1").unwrap().eval)(&mut d, 3, 0);
        assert_eq!(q, HankelQuery::plain(Variant::G1, 1, 6));
        assert!(rhs);
        assert!(d.get(q));
    }

    #[test]
    fn clause_vi_all_small() {
        for n in 1..=32 {
            for p in 0..=2 {
                assert!(!parity_direct(&HankelQuery::bar(Variant::G1, 2 * p + 1, 2 * n)).unwrap());
            }
        }
    }

    #[test]
    fn suite_to_32_matches_documented_errata() {
        let r = recurrence_suite(32, 2);
        assert!(r.passed(), "{:#?}", r.unexpected_failures());
        let failing: Vec<&str> = r.failing_clauses().iter().map(|s| s.clause).collect();
        let expected: Vec<&str> = DOCUMENTED_ERRATA.iter().map(|(l, _)| *l).collect();
        assert_eq!(failing, expected);
        let first = r.summaries.iter().find(|s| s.clause == "bar H_2n+1^1").unwrap();
        let c = first.first_counterexample.as_ref().unwrap().clause.as_ref().unwrap();
        assert_eq!((c.n, c.p), (2, 0));
    }

    #[test]
    fn base_cases_recomputed() {
        let r = recurrence_suite(4, 2);
        assert!(r.base_cases_hold());
        assert_eq!(r.base_cases.len(), 12 * 12);
    }
}
