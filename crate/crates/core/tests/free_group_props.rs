mod common;

use proptest::prelude::*;
use raag_core::free_group::{fold, fold_with_order, generates_full, rank_and_index, FreeWord, SubgroupIndex};
use rand::seq::SliceRandom;
use rand::Rng;

use common::{membership_mismatches, random_free_word, rng};

fn random_generators<R: Rng>(r: &mut R, rank: usize) -> Vec<FreeWord> {
    let k = r.gen_range(1..=3);
    (0..k).map(|_| random_free_word(r, rank, 1, 3)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn membership_matches_product_enumeration(seed in any::<u64>()) {
        let gens = random_generators(&mut rng(seed), 2);
        let bad = membership_mismatches(&gens);
        prop_assert!(bad.is_empty(), "{:?} on {:?}", bad, gens);
    }
}

proptest! {
    #[test]
    fn folding_is_confluent(seed in any::<u64>()) {
        let mut r = rng(seed);
        let rank = r.gen_range(1..=3);
        let mut gens = random_generators(&mut r, rank);
        let base = fold(&gens, rank).unwrap();
        let total: usize = gens.iter().map(FreeWord::len).sum();
        let mut order: Vec<usize> = (0..total).collect();
        order.shuffle(&mut r);
        let reordered = fold_with_order(&gens, rank, Some(&order)).unwrap();
        prop_assert_eq!(&reordered, &base);
        gens.shuffle(&mut r);
        prop_assert_eq!(&fold(&gens, rank).unwrap(), &base);
    }

    #[test]
    fn nielsen_schreier_holds(seed in any::<u64>()) {
        let mut r = rng(seed);
        let rank = r.gen_range(1..=3);
        let gens: Vec<FreeWord> = (0..r.gen_range(1..=4)).map(|_| random_free_word(&mut r, rank, 1, 3)).collect();
        let ri = rank_and_index(&fold(&gens, rank).unwrap());
        if let SubgroupIndex::Finite(k) = ri.index {
            prop_assert_eq!(ri.rank, k * (rank - 1) + 1);
        }
    }

    #[test]
    fn full_generation_survives_nielsen_moves(seed in any::<u64>()) {
        let mut r = rng(seed);
        let rank = 2;
        let mut gens: Vec<FreeWord> = (0..r.gen_range(2..=3)).map(|_| random_free_word(&mut r, rank, 1, 2)).collect();
        let before = generates_full(&gens, rank).unwrap();
        for _ in 0..6 {
            let i = r.gen_range(0..gens.len());
            match r.gen_range(0..3) {
                0 => gens[i] = gens[i].inverse(),
                1 => {
                    let j = r.gen_range(0..gens.len());
                    gens.swap(i, j);
                }
                _ => {
                    let j = (i + r.gen_range(1..gens.len())) % gens.len();
                    let other = if r.gen_bool(0.5) { gens[j].clone() } else { gens[j].inverse() };
                    gens[i] = if r.gen_bool(0.5) { gens[i].mul(&other).unwrap() } else { other.mul(&gens[i]).unwrap() };
                }
            }
            prop_assert_eq!(generates_full(&gens, rank).unwrap(), before);
        }
    }
}
