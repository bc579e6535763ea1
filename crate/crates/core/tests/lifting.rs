mod common;

use rand::rngs::StdRng;
use rand::SeedableRng;

use common::*;
use ramlift::homlift::{dvr_isos, enumerate_homs, enumerate_isos, has_root, lift_hom, RootDecision};
use ramlift::ramification::lift_precision_bound;
use ramlift::{DvrHom, Error};

#[test]
fn lift_is_independent_of_the_representative() {
    let mut rng = StdRng::seed_from_u64(11);
    let pairs = [
        (ring(3, &[-3, 0, 1]), ring(3, &[-12, 0, 1]), 3),
        (ring(3, &[-3, 0, 1]), ring(3, &[-3, 0, 1]), 4),
        (ring(2, &[-2, 0, 1]), ring(2, &[-18, 0, 1]), 7),
        (ring(3, &[-3, 1]), ring(3, &[-3, 0, 1]), 2),
    ];
    for (r1, r2, n2) in pairs {
        let n1 = n2 * r1.e() / r2.e();
        let homs = enumerate_homs(&r1.residue_ring(n1.max(1)).unwrap(), &r2.residue_ring(n2).unwrap()).unwrap();
        assert!(!homs.is_empty(), "{r1} -> {r2}");
        for h in &homs {
            for _ in 0..4 {
                check_representative_independence(h, &mut rng).unwrap();
            }
        }
    }
}

#[test]
fn lift_below_the_bound_is_refused() {
    let r1 = ring(3, &[-3, 0, 1]);
    let r2 = ring(3, &[-12, 0, 1]);
    let isos = enumerate_isos(&r1.residue_ring(2).unwrap(), &r2.residue_ring(2).unwrap()).unwrap();
    assert!(!isos.is_empty());
    for h in &isos {
        match lift_hom(h) {
            Err(Error::PreconditionBound { threshold: 3, n2: 2 }) => {}
            other => panic!("expected a precondition error, got {other:?}"),
        }
    }
    assert_eq!(lift_precision_bound(&r1, 2), 3);
}

#[test]
fn unramified_lift_is_the_witt_functor() {
    let z3 = ring(3, &[-3, 1]);
    let w9 = ring_over(&field(3, 2), &[-3, 1]);
    let homs = enumerate_homs(&z3.residue_ring(1).unwrap(), &w9.residue_ring(1).unwrap()).unwrap();
    assert_eq!(homs.len(), 1);
    let g = lift_hom(&homs[0]).unwrap();
    let x = w9.from_int(3, 6).unwrap();
    assert_eq!(*g.rho(), x);
    let auts = dvr_isos(&w9, &w9, 6).unwrap();
    assert_eq!(auts.len(), 2);
}

#[test]
fn lifted_homs_are_ring_maps() {
    let mut rng = StdRng::seed_from_u64(12);
    let r1 = ring(3, &[-3, 0, 1]);
    let r2 = ring_over(&field(3, 2), &[-3, 0, 1]);
    for h in enumerate_homs(&r1.residue_ring(4).unwrap(), &r2.residue_ring(4).unwrap()).unwrap() {
        let g = lift_hom(&h).unwrap();
        for _ in 0..20 {
            let x = random_dvr_elem(&mut rng, &r1, 6);
            let y = random_dvr_elem(&mut rng, &r1, 6);
            assert_eq!(g.apply(&(&x * &y)).unwrap(), &g.apply(&x).unwrap() * &g.apply(&y).unwrap());
            assert_eq!(g.apply(&(&x + &y)).unwrap(), &g.apply(&x).unwrap() + &g.apply(&y).unwrap());
        }
    }
}

#[test]
fn root_decisions() {
    let cases: [(&[i64], &[i64], bool); 5] = [
        (&[-3, 0, 1], &[-3, 0, 1], true),
        (&[3, 0, 1], &[-3, 0, 1], false),
        (&[-3, 0, 1], &[-12, 0, 1], true),
        (&[-10, 0, 1], &[-2, 0, 1], false),
        (&[-2, 0, 1], &[-18, 0, 1], true),
    ];
    for (f, g, expected) in cases {
        let r = ring(if f[0] % 3 == 0 { 3 } else { 2 }, f);
        match has_root(&r, g).unwrap() {
            RootDecision::Yes(c) => {
                assert!(expected, "{g:?} has no root in {r}");
                let val = ramlift::homlift::TwistedPoly::integer(&r, g).unwrap().eval(&c.root).unwrap().val();
                assert!(!val.is_exact());
            }
            RootDecision::No => assert!(!expected, "{g:?} should have a root in {r}"),
            RootDecision::Undecided(p) => panic!("undecided at {p} for {g:?} in {r}"),
        }
    }
}

#[test]
fn identity_lifts_to_identity() {
    for f in [&[-3i64, 0, 1][..], &[-3, 0, 0, 1], &[-2, 0, 1], &[-3, 1]] {
        let p = if f[0] % 3 == 0 { 3 } else { 2 };
        let r = ring(p, f);
        let n = lift_precision_bound(&r, r.e());
        let g = lift_hom(&ramlift::ResidueHom::identity(&r.residue_ring(n).unwrap())).unwrap();
        assert_eq!(g, DvrHom::identity(&r, g.rho().precision()).unwrap());
    }
}

#[test]
fn selected_root_is_the_only_one_beyond_the_krasner_bound() {
    use num_rational::Ratio;
    use ramlift::homlift::{roots_in_dvr, TwistedPoly};
    use ramlift::ramification::krasner_bound;
    let pairs = [
        (ring(3, &[-3, 0, 1]), ring(3, &[-12, 0, 1]), 3),
        (ring(3, &[-3, 0, 0, 1]), ring(3, &[-3, 0, 0, 1]), 8),
        (ring(2, &[-2, 0, 1]), ring(2, &[-18, 0, 1]), 7),
    ];
    for (r1, r2, n) in pairs {
        let m = krasner_bound(&r1).ratio().unwrap();
        let isos = enumerate_isos(&r1.residue_ring(n).unwrap(), &r2.residue_ring(n).unwrap()).unwrap();
        for h in isos.iter().step_by(16) {
            let g = lift_hom(h).unwrap();
            let f = TwistedPoly::twist(&r1, &r2, h.psi()).unwrap();
            let beta = h.beta().to_dvr();
            let roots = roots_in_dvr(&f, n + 8).unwrap();
            assert!(!roots.is_empty());
            let mut beyond = 0;
            for c in &roots {
                let d = (&c.root - &beta).val().floor() as u64;
                let close = Ratio::new(d, r2.e() as u64) > m;
                if close {
                    beyond += 1;
                    assert_eq!(c.root, *g.rho());
                }
            }
            assert_eq!(beyond, 1, "{h:?}");
        }
    }
}
