use proptest::prelude::*;

use shimura_atlas::arith::{class_number, is_prime, kronecker, QuadDiscriminant};
use shimura_atlas::cremona::CurveDatabase;
use shimura_atlas::invariants::{atkin_lehner_group, fixed_points, genus, quotient_genus, ShimuraDiscriminant};
use shimura_atlas::trace::point_count;

fn shimura_discriminants() -> impl Strategy<Value = ShimuraDiscriminant> {
    let all = ShimuraDiscriminant::all_up_to(2000);
    (0..all.len()).prop_map(move |i| all[i].clone())
}

fn primes_3_mod_4() -> impl Strategy<Value = u64> {
    let primes: Vec<u64> = (7..20_000).filter(|&p| p % 4 == 3 && is_prime(p)).collect();
    (0..primes.len()).prop_map(move |i| primes[i])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn kronecker_is_multiplicative_in_the_bottom(a in -500i64..500, m in 1i64..300, n in 1i64..300) {
        prop_assert_eq!(kronecker(a, m * n), kronecker(a, m) * kronecker(a, n));
    }

    #[test]
    fn kronecker_is_multiplicative_in_the_top(a in -300i64..300, b in -300i64..300, n in 1i64..500) {
        prop_assert_eq!(kronecker(a * b, n), kronecker(a, n) * kronecker(b, n));
    }

    #[test]
    fn class_number_of_prime_discriminant_is_odd(p in primes_3_mod_4()) {
        prop_assert_eq!(class_number(QuadDiscriminant::new(-(p as i64)).unwrap()) % 2, 1);
    }

    #[test]
    fn atkin_lehner_group_is_closed_and_elementary(d in shimura_discriminants()) {
        let group = atkin_lehner_group(&d);
        prop_assert_eq!(group.len(), 1 << d.rank());
        for &a in &group {
            prop_assert!(a.compose(a).is_identity());
            for &b in &group {
                prop_assert!(group.contains(&a.compose(b)));
                prop_assert_eq!(a.compose(b), b.compose(a));
            }
        }
    }

    #[test]
    fn riemann_hurwitz_is_integral(d in shimura_discriminants()) {
        let g = genus(&d).unwrap();
        for w in atkin_lehner_group(&d).into_iter().filter(|w| !w.is_identity()) {
            let n = fixed_points(&d, w).unwrap();
            let gq = quotient_genus(&d, w).unwrap();
            prop_assert_eq!(2 * g + 2, 4 * gq + n);
        }
    }

    #[test]
    fn point_counts_satisfy_weil(d in shimura_discriminants(), ell in 2u64..80, k in 1u32..3) {
        prop_assume!(is_prime(ell) && d.value() % ell != 0);
        let c = point_count(&d, ell, k).unwrap();
        prop_assert!(c.satisfies_weil());
    }
}

#[test]
fn curve_database_round_trips() {
    let db = CurveDatabase::bundled();
    let again = CurveDatabase::parse(&db.to_text()).unwrap();
    assert_eq!(db.records(), again.records());
    assert!(db.discriminant_mismatches().is_empty());
}

proptest! {
    #[test]
    fn curve_rows_round_trip(i in 0usize..500) {
        let db = CurveDatabase::bundled();
        prop_assume!(i < db.len());
        let rec = &db.records()[i];
        let parsed = CurveDatabase::parse(&rec.to_row()).unwrap();
        prop_assert_eq!(&parsed.records()[0], rec);
    }
}
