use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use golomb_core::approx::{approximate, exponent_schedule, family_bound, window_family_bound};
use golomb_core::hankel::{parity_closed_form, parity_direct, recurrence_suite, table_check};
use golomb_core::pade::contact;
use golomb_core::sequences::ruler_value;
use golomb_core::{
    gap_sequence, golomb_pade, golomb_series, lift, HankelQuery, SequenceSpec, TableEdition, Variant,
};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn variant() -> impl Strategy<Value = Variant> {
    prop_oneof![Just(Variant::G0), Just(Variant::G1), Just(Variant::F)]
}

proptest! {
    #[test]
    fn ruler_doubling(n in 1u64..1 << 40) {
        prop_assert_eq!(ruler_value(2 * n).unwrap(), ruler_value(n).unwrap() + 1);
        prop_assert_eq!(ruler_value(2 * n - 1).unwrap(), 1);
    }

    #[test]
    fn fermat_is_two_minus_ruler(n in 1usize..100_000) {
        let g = SequenceSpec::ruler(1).value(n).unwrap();
        let f = SequenceSpec::FermatF.value(n).unwrap();
        prop_assert_eq!(f, BigInt::from(2) - g);
    }

    #[test]
    fn gf2_parity_is_exact_parity(v in variant(), p in 0usize..6, n in 1usize..12, barred: bool) {
        prop_assume!(!(v == Variant::F && p == 0));
        let q = HankelQuery::new(v, p, n, barred);
        prop_assert_eq!(parity_direct(&q).unwrap(), q.det().unwrap().bit(0));
    }

    #[test]
    fn corrected_table_agrees_beyond_64(n in 65usize..400, p in 0usize..3, barred: bool, seed_one: bool) {
        let v = if seed_one { Variant::G1 } else { Variant::G0 };
        let q = HankelQuery::new(v, p, n, barred);
        prop_assert_eq!(parity_direct(&q).unwrap(), parity_closed_form(&q, TableEdition::Corrected).unwrap());
    }

    #[test]
    fn gap_ratios_within_bound(big_k in 1u32..7, n0 in 0u32..5, count in 2usize..200) {
        let g = gap_sequence(big_k, n0, count).unwrap();
        prop_assert!(g.elements.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(g.max_ratio <= g.bound);
    }
}

#[test]
fn lift_then_evaluate() {
    for eps in [-1i8, 1] {
        let a = golomb_pade(eps, 2).unwrap();
        let l = lift(&a, 2, eps).unwrap();
        let h = golomb_series(eps, 24).unwrap();
        assert_eq!(contact(&h, &l.p, &l.q).unwrap(), Some((20, a.h_k.clone())));
        let (l2, rec) = approximate(eps, 3, 2, 2).unwrap();
        assert_eq!(l2, l);
        assert!(rec.q.is_positive());
        assert!(rec.err.hi() < &BigRational::new(BigInt::one(), rec.q.clone()));
        assert!(rec.mu_eff > rat(1, 1));
    }
}

#[test]
fn schedule_records_are_sorted_and_exceed_one() {
    let s = exponent_schedule(1, 3, -1, 4).unwrap();
    assert!(s.q_strictly_increasing());
    assert!(s.records.iter().all(|r| r.mu_eff > rat(1, 1) && r.mu_eff < rat(3, 1)));
    assert!(s.tail_mu_eff_min <= s.tail_mu_eff_max);
}

#[test]
fn bounds_tend_to_two() {
    assert_eq!(family_bound(1).unwrap(), rat(6, 1));
    let b = family_bound(20).unwrap();
    assert!(b > rat(2, 1) && b < rat(200002, 100000));
    assert!(window_family_bound(20).unwrap() < rat(2001, 1000));
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| (table_check(40, TableEdition::Printed), recurrence_suite(16, 2).reports))
    };
    assert_eq!(run(1), run(6));
}

#[test]
fn h_k_nonzero_to_ten() {
    for eps in [-1i8, 1] {
        for k in 1..=10 {
            assert!(!golomb_pade(eps, k).unwrap().h_k.is_zero());
        }
    }
}
