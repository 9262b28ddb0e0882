//! Randomized invariants across the algebraic and numerical layers.

use std::sync::OnceLock;

use ck_core::algebra::{q, Q};
use ck_core::cocycle::{cocycle_apply, extract_coordinates, CocycleCoordinates, PhiVar};
use ck_core::galois::{motivic_generators, PlaceSet};
use ck_core::loci::S3Map;
use ck_core::padic::{padic_log, rational_reconstruct, Padic, PadicContext, PadicPolicy};
use ck_core::shuffle::{
    coassociativity_defect, cobar_defect, tensor_mul, GeneratorSet, ShuffleElement, Word,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn gens() -> &'static (GeneratorSet, Vec<Word>) {
    static G: OnceLock<(GeneratorSet, Vec<Word>)> = OnceLock::new();
    G.get_or_init(|| {
        let g = motivic_generators(&PlaceSet::new([2, 3]).unwrap(), 5);
        let words = (0..=5).flat_map(|n| g.words_of_weight(n)).collect();
        (g, words)
    })
}

fn element() -> impl Strategy<Value = ShuffleElement<Q>> {
    let n = gens().1.len();
    prop::collection::vec((0..n, -6i64..=6), 1..4).prop_map(|terms| {
        let mut x = ShuffleElement::zero();
        for (i, c) in terms {
            x.add_term(gens().1[i].clone(), Q::from_integer(c.into()));
        }
        x
    })
}

fn context(p: u64) -> &'static PadicContext {
    static C: OnceLock<Vec<PadicContext>> = OnceLock::new();
    let all = C.get_or_init(|| {
        [5u64, 7]
            .iter()
            .map(|p| PadicContext::new(*p, 4, PadicPolicy::default()).unwrap())
            .collect()
    });
    all.iter().find(|c| c.prime() == p).unwrap()
}

/// Rationals whose numerator and denominator avoid `p`, so they lie in a good residue disk when the residue is not 0 or 1.
fn unit(p: u64) -> impl Strategy<Value = Q> {
    (-3000i64..3000, 1i64..300).prop_filter_map("good disk", move |(a, b)| {
        let pi = p as i64;
        if b % pi == 0 {
            return None;
        }
        let x = q(a, b);
        let r = ((a.rem_euclid(pi)) * modinv(b.rem_euclid(pi), pi)).rem_euclid(pi);
        (r >= 2 && r + 1 < pi).then_some(x)
    })
}

fn modinv(a: i64, p: i64) -> i64 {
    (1..p).find(|x| (a * x) % p == 1).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn shuffle_is_commutative_and_associative(a in element(), b in element(), c in element()) {
        prop_assert_eq!(a.shuffle(&b), b.shuffle(&a));
        prop_assert_eq!(a.shuffle(&b).shuffle(&c), a.shuffle(&b.shuffle(&c)));
    }

    #[test]
    fn deconcatenation_is_multiplicative(a in element(), b in element()) {
        prop_assert_eq!(a.shuffle(&b).deconcat(), tensor_mul(&a.deconcat(), &b.deconcat()));
    }

    #[test]
    fn coproduct_laws(a in element()) {
        prop_assert!(coassociativity_defect(&a).is_zero());
        prop_assert!(cobar_defect(&a.reduced_coproduct()).is_zero());
    }

    #[test]
    fn cocycle_coordinates_round_trip(values in prop::collection::vec((-20i64..20, 1i64..6), 64)) {
        let g = motivic_generators(&PlaceSet::new([3]).unwrap(), 4);
        let mut c = CocycleCoordinates::new(&g);
        for (v, (a, b)) in PhiVar::all(&g, 4).into_iter().zip(values) {
            c.insert(v, q(a, b));
        }
        let back = extract_coordinates(&cocycle_apply(&c, 4).unwrap(), &g);
        prop_assert_eq!(back.iter().collect::<Vec<_>>(), c.iter().collect::<Vec<_>>());
    }

    #[test]
    fn padic_field_operations_match_rationals(a in -10_000i64..10_000, b in 1i64..500, c in -10_000i64..10_000, d in 1i64..500) {
        for p in [5u64, 7] {
            let (x, y) = (q(a, b), q(c, d));
            let px = Padic::from_rational(p, &x, 20);
            let py = Padic::from_rational(p, &y, 20);
            prop_assert!(px.add(&py).sub(&Padic::from_rational(p, &(&x + &y), 20)).is_zero());
            prop_assert!(px.mul(&py).sub(&Padic::from_rational(p, &(&x * &y), 20)).is_zero());
        }
    }

    #[test]
    fn logarithm_is_additive(x in unit(7), y in unit(7)) {
        let p = 7;
        let a = Padic::from_rational(p, &x, 16);
        let b = Padic::from_rational(p, &y, 16);
        let lhs = padic_log(&a.mul(&b)).unwrap();
        let rhs = padic_log(&a).unwrap().add(&padic_log(&b).unwrap());
        prop_assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn distribution_relation(x in unit(5), k in 1u32..=4) {
        let ctx = context(5);
        let policy = *ctx.policy();
        let two_pow = Q::from_integer(BigInt::from(2).pow(k - 1));
        let lhs = ctx.polylog_q(k, &(&x * &x)).unwrap().div_q(&two_pow)
            .sub(&ctx.polylog_q(k, &x).unwrap())
            .sub(&ctx.polylog_q(k, &-x.clone()).unwrap());
        prop_assert!(policy.is_zero(&lhs), "k = {}, val = {}", k, policy.reported_valuation(&lhs));
    }

    #[test]
    fn inversion_relation_for_li1(x in unit(7)) {
        // Li1(z) − Li1(1/z) = −log(−z) for the Iwasawa branch.
        let ctx = context(7);
        let lhs = ctx.polylog_q(1, &x).unwrap().sub(&ctx.polylog_q(1, &x.recip()).unwrap());
        let rhs = ctx.log_q(&-x.clone()).unwrap();
        prop_assert!(ctx.policy().is_zero(&lhs.add(&rhs)));
    }

    #[test]
    fn reconstruction_recovers_small_rationals(a in -200i64..200, b in 1i64..200) {
        for p in [5u64, 7] {
            if b % p as i64 == 0 {
                continue;
            }
            let x = q(a, b);
            let v = Padic::from_rational(p, &x, 14);
            prop_assert_eq!(rational_reconstruct(&v, 300, 300), Some(x));
        }
    }

    #[test]
    fn s3_orbit_is_closed(x in unit(7)) {
        let orbit: Vec<Q> = S3Map::ALL.iter().map(|f| f.apply_q(&x).unwrap()).collect();
        for y in &orbit {
            for g in S3Map::ALL {
                prop_assert!(orbit.contains(&g.apply_q(y).unwrap()));
            }
        }
    }
}
