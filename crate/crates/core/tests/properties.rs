use cofill_core::cochain::{binomial, subset_rank, subset_unrank};
use cofill_core::geometry::{intersection_cochain, random_configuration, random_probe, verify_duality};
use cofill_core::inequalities::pie_decompose;
use cofill_core::minimality::{is_minimal_exact, minimize_in_class};
use cofill_core::Cochain;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cochain(
    n_range: std::ops::RangeInclusive<usize>,
    arity: impl Fn(usize) -> std::ops::RangeInclusive<usize> + Clone + 'static,
) -> impl Strategy<Value = Cochain> {
    n_range
        .prop_flat_map(move |n| (Just(n), arity(n)))
        .prop_flat_map(|(n, r)| {
            let len = binomial(n, r).unwrap() as usize;
            (Just(n), Just(r), proptest::collection::vec(any::<bool>(), len))
        })
        .prop_map(|(n, r, bits)| {
            Cochain::from_ranks(n, r, bits.iter().enumerate().filter(|(_, &b)| b).map(|(k, _)| k)).unwrap()
        })
}

fn same_shape_pair(n_range: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = (Cochain, Cochain)> {
    cochain(n_range, |n| 1..=n - 1).prop_flat_map(|a| {
        let (n, r) = (a.n(), a.arity());
        (Just(a), cochain(n..=n, move |_| r..=r))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn coboundary_squares_to_zero(e in cochain(3..=10, |n| 1..=n - 2)) {
        prop_assert!(e.coboundary().unwrap().coboundary().unwrap().is_empty());
    }

    #[test]
    fn coboundary_is_linear((a, b) in same_shape_pair(2..=10)) {
        let lhs = a.add(&b).unwrap().coboundary().unwrap();
        let rhs = a.coboundary().unwrap().add(&b.coboundary().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn link_formula(e in cochain(2..=10, |n| 1..=n - 1), v_seed in any::<usize>()) {
        let v = v_seed % e.n() + 1;
        let (star, link) = e.link(v).unwrap();
        let lhs = link.coboundary();
        let (_, link_of_star_delta) = star.coboundary().unwrap().link(v).unwrap();
        prop_assert_eq!(star.len(), link.len());
        prop_assert_eq!(star.bits().and_count(link_of_star_delta.bits()), 0);
        if e.arity() >= 2 {
            prop_assert_eq!(lhs.unwrap(), star.add(&link_of_star_delta).unwrap());
        }
    }

    #[test]
    fn filling_is_no_larger(e in cochain(4..=9, |_| 1..=2)) {
        let f = e.coboundary().unwrap();
        let filled = f.fill_by_min_link().unwrap();
        prop_assert_eq!(filled.coboundary().unwrap(), f.clone());
        prop_assert!(filled.normalized_size().le(f.normalized_size()));
    }

    #[test]
    fn minimization_stays_in_class(e in cochain(4..=7, |_| 2..=2)) {
        let m = minimize_in_class(&e).unwrap();
        prop_assert_eq!(m.coboundary().unwrap(), e.coboundary().unwrap());
        prop_assert!(m.len() <= e.len());
        prop_assert!(m.normalized_size().at_most_half());
        prop_assert!(is_minimal_exact(&m).unwrap().minimal);
    }

    #[test]
    fn minimality_is_hereditary(e in cochain(4..=7, |_| 2..=3), drop in any::<prop::sample::Index>()) {
        let m = minimize_in_class(&e).unwrap();
        let ranks: Vec<usize> = m.ranks().collect();
        if !ranks.is_empty() {
            let mut sub = m.clone();
            sub.add_assign(&Cochain::from_ranks(m.n(), m.arity(), [ranks[drop.index(ranks.len())]]).unwrap()).unwrap();
            prop_assert!(is_minimal_exact(&sub).unwrap().minimal);
        }
    }

    #[test]
    fn rank_roundtrip(n in 1usize..=30, r_seed in any::<usize>(), k_seed in any::<u64>()) {
        let r = r_seed % (n + 1);
        let count = binomial(n, r).unwrap();
        let k = k_seed % count;
        let set = subset_unrank(k, r, n).unwrap();
        prop_assert_eq!(subset_rank(&set, n).unwrap(), k);
    }

    #[test]
    fn json_roundtrip(e in cochain(1..=9, |n| 0..=n)) {
        prop_assert_eq!(Cochain::from_json_str(&e.to_json_string()).unwrap(), e);
    }

    #[test]
    fn pie_identity(e in cochain(3..=11, |_| 2..=2)) {
        prop_assert!(pie_decompose(&e).unwrap().identity_holds());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn intersection_duality(seed in any::<u64>(), n in 4usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_configuration(n, &mut rng);
        let x = random_probe(&p, 0, &mut rng);
        prop_assert!(intersection_cochain(&p, &x).unwrap().coboundary().unwrap().is_empty());
        for dim in 1..=2 {
            prop_assert!(verify_duality(&p, &random_probe(&p, dim, &mut rng)).unwrap().is_empty());
        }
    }
}
