use mfbranch::charoracle::tensor_decompose;
use mfbranch::exact::{q, Q};
use mfbranch::rootsys::{Family, FormalCharacter, RootSystem, Weight};
use num_bigint::BigUint;
use proptest::prelude::*;

const DIM_CAP: u64 = 4000;

fn simple_type(max_rank: usize) -> impl Strategy<Value = (Family, usize)> {
    prop::sample::select(Family::types_up_to(max_rank))
}

fn labels(rank: usize, max: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(0..=max, rank)
}

fn typed_weight(max_rank: usize, max: i64) -> impl Strategy<Value = ((Family, usize), Vec<i64>)> {
    simple_type(max_rank).prop_flat_map(move |t| (Just(t), labels(t.1, max)))
}

fn small(sys: &RootSystem, w: &Weight) -> bool {
    sys.weyl_dim(w).unwrap() <= BigUint::from(DIM_CAP)
}

fn character() -> impl Strategy<Value = FormalCharacter> {
    prop::collection::vec((prop::collection::vec(-3i64..=3, 2), -3i64..=3), 0..6)
        .prop_map(|v| v.into_iter().map(|(w, m)| (w.into_iter().map(q).collect::<Vec<Q>>(), m)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn freudenthal_dimension_is_weyl_dimension((t, lam) in typed_weight(8, 3)) {
        let sys = RootSystem::build(t.0, t.1).unwrap();
        let w = Weight::from_dynkin(&lam);
        prop_assume!(small(&sys, &w));
        let ch = sys.freudenthal_char(&w).unwrap();
        prop_assert_eq!(BigUint::from(ch.dimension() as u64), sys.weyl_dim(&w).unwrap());
    }

    #[test]
    fn characters_are_weyl_invariant((t, lam) in typed_weight(5, 2)) {
        let sys = RootSystem::build(t.0, t.1).unwrap();
        let w = Weight::from_dynkin(&lam);
        prop_assume!(small(&sys, &w));
        let ch = sys.freudenthal_char(&w).unwrap();
        for (mu, m) in ch.iter() {
            for i in 0..sys.rank() {
                prop_assert_eq!(ch.get(&sys.reflect(mu, i)), *m);
            }
        }
    }

    #[test]
    fn basis_round_trip((t, lam) in typed_weight(8, 5)) {
        let sys = RootSystem::build(t.0, t.1).unwrap();
        let w = Weight::fundamental(lam.iter().map(|&x| q(x - 2)).collect());
        let back = sys.to_fundamental(&sys.to_epsilon(&w));
        prop_assert_eq!(back, w);
    }

    #[test]
    fn character_ring_laws(a in character(), b in character(), c in character()) {
        prop_assert_eq!(a.plus(&b), b.plus(&a));
        prop_assert_eq!(a.times(&b), b.times(&a));
        prop_assert_eq!(a.plus(&b).plus(&c), a.plus(&b.plus(&c)));
        prop_assert_eq!(a.times(&b).times(&c), a.times(&b.times(&c)));
        prop_assert_eq!(a.times(&b.plus(&c)), a.times(&b).plus(&a.times(&c)));
    }

    #[test]
    fn tensor_product_commutes_and_conserves_dimension(
        (t, lam, mu) in simple_type(4).prop_flat_map(|t| (Just(t), labels(t.1, 2), labels(t.1, 1)))
    ) {
        let sys = RootSystem::build(t.0, t.1).unwrap();
        let (a, b) = (Weight::from_dynkin(&lam), Weight::from_dynkin(&mu));
        prop_assume!(small(&sys, &a) && small(&sys, &b));
        let ab = tensor_decompose(&sys, &a, &b).unwrap();
        let ba = tensor_decompose(&sys, &b, &a).unwrap();
        prop_assert_eq!(&ab, &ba);
        prop_assert_eq!(ab.dimension(&sys).unwrap(), sys.weyl_dim(&a).unwrap() * sys.weyl_dim(&b).unwrap());
    }
}
