mod common;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use common::*;
use ramlift::homlift::enumerate_homs;
use ramlift::{Field, WittRing};

fn small_field() -> impl Strategy<Value = Field> {
    prop::sample::select(vec![(2u64, 1usize), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)])
        .prop_map(|(p, d)| field(p, d))
}

fn eisenstein_params() -> impl Strategy<Value = (u64, usize, usize)> {
    prop::sample::select(vec![(2u64, 2usize, 1usize), (2, 3, 1), (3, 2, 1), (3, 3, 1), (5, 2, 1), (2, 2, 2), (3, 2, 2)])
}

fn check(r: Check) -> Result<(), TestCaseError> {
    r.map_err(TestCaseError::fail)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn teichmuller_is_multiplicative(k in small_field(), m in 1u32..10, i in any::<u64>(), j in any::<u64>()) {
        let a = k.from_index(i % k.order());
        let b = k.from_index(j % k.order());
        check(check_teich_multiplicative(&k, m, &a, &b))?;
    }

    #[test]
    fn witt_digit_roundtrip(k in small_field(), m in 1u32..14, seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let w = WittRing::new(&k, m).unwrap();
        check(check_witt_roundtrip(&random_witt(&mut rng, &w)))?;
    }

    #[test]
    fn witt_functor_composes(m in 1u32..8, seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        check(check_witt_functor(&field(2, 1), &field(2, 2), &field(2, 4), m, &mut rng))?;
    }

    #[test]
    fn dvr_digit_roundtrip((p, e, d) in eisenstein_params(), n in 1u32..24, seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let r = ring_over(&field(p, d), &random_eisenstein(&mut rng, p, e));
        let x = random_dvr_elem(&mut rng, &r, n);
        check(check_dvr_roundtrip(&x))?;
        check(check_digit_canonicality(&x, &x.truncate(n / 2 + 1)))?;
    }

    #[test]
    fn valuation_axioms((p, e, d) in eisenstein_params(), n in 1u32..24, v in 0u32..6, seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let r = ring_over(&field(p, d), &random_eisenstein(&mut rng, p, e));
        let x = random_with_val(&mut rng, &r, v, n);
        let y = random_dvr_elem(&mut rng, &r, n + 3);
        check(check_valuation_axioms(&x, &y))?;
    }

    #[test]
    fn krasner_bound_ignores_the_uniformizer((p, e, d) in eisenstein_params(), seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let r = ring_over(&field(p, d), &random_eisenstein(&mut rng, p, e));
        check(check_uniformizer_invariance(&r, &mut rng))?;
        check(check_ramification_invariants(&r))?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn residue_homs_respect_kernel_and_digits(p in prop::sample::select(vec![2u64, 3]), n1 in 1u32..4, n2 in 1u32..4, seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let r1 = ring(p, &random_eisenstein(&mut rng, p, 2));
        let r2 = ring(p, &random_eisenstein(&mut rng, p, 2));
        let (a, b) = (r1.residue_ring(n1).unwrap(), r2.residue_ring(n2).unwrap());
        check(check_oracle_equivalence(&a, &b))?;
        for h in enumerate_homs(&a, &b).unwrap() {
            check(check_kernel_bound(&h))?;
            check(check_teich_preservation(&h))?;
        }
    }
}
