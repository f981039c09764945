mod common;

use std::collections::HashSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stringc::perm::{ElementBudget, PermGroup, Permutation};
use stringc::rankred::{reduce_once, Direction, ReduceOptions};
use stringc::sggi::{schlafli_type, verify, SggiRep, VerifyOptions};

fn random_perm(rng: &mut ChaCha8Rng, degree: usize) -> Permutation {
    let mut img: Vec<usize> = (1..=degree).collect();
    rand::seq::SliceRandom::shuffle(img.as_mut_slice(), rng);
    Permutation::from_images(&img).unwrap()
}

fn random_group(seed: u64) -> PermGroup {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let degree = rng.gen_range(1..=6);
    let k = rng.gen_range(0..=3);
    let gens = (0..k).map(|_| random_perm(&mut rng, degree)).collect();
    PermGroup::new(degree, gens).unwrap()
}

fn sggi_from_seed(seed: u64, max_rank: usize) -> Option<SggiRep> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let degree = rng.gen_range(3..=7);
    let rank = rng.gen_range(2..=max_rank);
    common::random_sggi(&mut rng, degree, rank)
}

fn as_set(s: &HashSet<Permutation>) -> HashSet<Vec<usize>> {
    s.iter().map(common::images).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn membership_matches_closure(seed in any::<u64>()) {
        let g = random_group(seed);
        let gens: Vec<_> = g.generators().iter().map(common::images).collect();
        let brute = common::brute_closure(g.degree(), &gens, 1000).unwrap();
        prop_assert_eq!(g.order_u64(), Some(brute.len() as u64));
        prop_assert_eq!(as_set(&g.closure(ElementBudget::default()).unwrap()), brute.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(!seed);
        for _ in 0..10 {
            let x = random_perm(&mut rng, g.degree());
            prop_assert_eq!(g.contains(&x).unwrap(), brute.contains(&common::images(&x)));
        }
    }

    #[test]
    fn intersection_is_symmetric_and_exact(a in any::<u64>(), b in any::<u64>()) {
        let ga = random_group(a);
        let mut gb = random_group(b);
        if gb.degree() != ga.degree() {
            gb = random_group(a.rotate_left(7));
        }
        prop_assume!(ga.degree() == gb.degree());
        let ab = ga.intersect(&gb, ElementBudget::default()).unwrap();
        let ba = gb.intersect(&ga, ElementBudget::default()).unwrap();
        prop_assert_eq!(&ab, &ba);
        let ca = as_set(&ga.closure(ElementBudget::default()).unwrap());
        let cb = as_set(&gb.closure(ElementBudget::default()).unwrap());
        let brute: HashSet<_> = ca.intersection(&cb).cloned().collect();
        prop_assert_eq!(as_set(&ab), brute);
    }

    #[test]
    fn subgroup_orbits_refine_group_orbits(seed in any::<u64>()) {
        let g = random_group(seed);
        prop_assume!(!g.generators().is_empty());
        let sub = PermGroup::new(g.degree(), g.generators()[..1].to_vec()).unwrap();
        let big = g.orbits();
        for part in sub.orbits() {
            prop_assert!(big.iter().any(|b| part.iter().all(|x| b.contains(x))));
        }
        let covered: usize = big.iter().map(Vec::len).sum();
        prop_assert_eq!(covered, g.degree());
    }

    #[test]
    fn conjugation_preserves_element_order(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let degree = rng.gen_range(1..=10);
        let x = random_perm(&mut rng, degree);
        let c = random_perm(&mut rng, degree);
        prop_assert_eq!(x.conjugate_by(&c).unwrap().order(), x.order());
    }

    #[test]
    fn verification_matches_brute_force(seed in any::<u64>()) {
        let rep = sggi_from_seed(seed, 4);
        prop_assume!(rep.is_some());
        let rep = rep.unwrap();
        let report = verify(&rep, &VerifyOptions::default()).unwrap();
        let brute = common::brute_intersection_property(&rep, 6000).unwrap();
        prop_assert_eq!(report.is_string_c_group, brute);
    }

    #[test]
    fn relabeling_invariance(seed in any::<u64>()) {
        let rep = sggi_from_seed(seed, 5);
        prop_assume!(rep.is_some());
        let rep = rep.unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabc);
        let c = random_perm(&mut rng, rep.degree());
        let a = verify(&rep, &VerifyOptions::default()).unwrap();
        let b = verify(&rep.conjugated(&c).unwrap(), &VerifyOptions::default()).unwrap();
        prop_assert_eq!(a.is_string_c_group, b.is_string_c_group);
        prop_assert_eq!(a.pair_order_table, b.pair_order_table);
        prop_assert_eq!(a.group_order, b.group_order);
    }

    #[test]
    fn reversal_duality(seed in any::<u64>()) {
        let rep = sggi_from_seed(seed, 5);
        prop_assume!(rep.is_some());
        let rep = rep.unwrap();
        let a = verify(&rep, &VerifyOptions::default()).unwrap();
        let b = verify(&rep.reversed(), &VerifyOptions::default()).unwrap();
        prop_assert_eq!(a.is_string_c_group, b.is_string_c_group);
        prop_assert_eq!(a.schlafli.reversed(), b.schlafli);
    }

    #[test]
    fn parabolics_of_string_c_groups_are_string_c_groups(seed in any::<u64>()) {
        let rep = sggi_from_seed(seed, 5);
        prop_assume!(rep.is_some());
        let rep = rep.unwrap();
        prop_assume!(verify(&rep, &VerifyOptions::default()).unwrap().is_string_c_group);
        let n = rep.rank();
        for lo in 0..n {
            for hi in lo + 1..=n {
                let idx: Vec<usize> = (lo..hi).collect();
                let sub = rep.restrict(&idx);
                prop_assert!(verify(&sub, &VerifyOptions::default()).unwrap().is_string_c_group, "{:?}", idx);
            }
        }
    }

    #[test]
    fn reduction_flags_and_type_inheritance(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let degree = rng.gen_range(4..=7);
        let rank = rng.gen_range(4..=5);
        let rep = common::random_sggi(&mut rng, degree, rank);
        prop_assume!(rep.is_some());
        let rep = rep.unwrap();
        let opts = ReduceOptions { force: true, ..Default::default() };
        let o = reduce_once(&rep, Direction::Left, &opts).unwrap();
        let g = rep.generators();
        let reduced = o.reduced.generators();
        prop_assert_eq!(&reduced[0], &g[1]);
        prop_assert_eq!(&reduced[1], &g[0].compose(&g[2]).unwrap());
        prop_assert_eq!(&reduced[2..], &g[3..]);
        if o.guaranteed {
            prop_assert!(o.group_preserved);
            prop_assert!(verify(&o.reduced, &VerifyOptions::default()).unwrap().is_string_c_group);
        }
        if o.odd_condition {
            prop_assert!(o.theorem_condition);
        }
        if o.input_verified && o.reduced.rank() >= 3 {
            let p = schlafli_type(&rep).unwrap().0;
            let q = &o.reduced_schlafli.0;
            prop_assert_eq!(&q[2..], &p[3..]);
            prop_assert_eq!(q[0], g[1].compose(&g[0]).unwrap().compose(&g[2]).unwrap().order());
            prop_assert_eq!(q[1], g[0].compose(&g[2]).unwrap().compose(&g[3]).unwrap().order());
        }
        let right = reduce_once(&rep, Direction::Right, &opts).unwrap();
        let mirrored = reduce_once(&rep.reversed(), Direction::Left, &opts).unwrap();
        let back = right.reduced.reversed();
        prop_assert_eq!(back.generators(), mirrored.reduced.generators());
    }
}
