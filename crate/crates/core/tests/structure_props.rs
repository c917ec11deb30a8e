mod common;

use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;
use raag_core::classify::max_product_free_factors;
use raag_core::cohomology::{cohomology_of_graph, induced_algebra_map, radical, rank_fv, reconstruct_graph};
use raag_core::lattice::{lattice_index, IntegerLattice, LatticeIndex};
use raag_core::whitehead::{whitehead_endomorphism, WhiteheadMove};
use raag_core::{CupAlgebraQ, MatrixQ, Rational};
use rand::seq::SliceRandom;
use rand::Rng;

use common::{int_det, q, random_graph, random_monomial, random_nonsingular, rng, shuffled, to_matrix};

fn profile(alg: &CupAlgebraQ, probes: &[Vec<Rational>]) -> (usize, usize, usize, Vec<usize>) {
    let mut ranks: Vec<usize> = probes.iter().map(|v| rank_fv(alg, v).unwrap()).collect();
    ranks.sort_unstable();
    (alg.dim1(), alg.dim2(), radical(alg).len(), ranks)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn stratification_data_is_basis_free(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(2..=6);
        let g = random_graph(&mut r, n, 0.5);
        let alg: CupAlgebraQ = cohomology_of_graph(&g);
        let probes: Vec<Vec<Rational>> = (0..6)
            .map(|_| (0..n).map(|_| q(r.gen_range(-2..=2))).collect())
            .collect();
        let before = profile(&alg, &probes);
        let p = to_matrix(&random_nonsingular(&mut r, n, 2));
        let qm = to_matrix(&random_nonsingular(&mut r, alg.dim2(), 2));
        let moved = alg.change_basis(&p, &qm).unwrap();
        let p_inv = p.inverse().unwrap();
        let moved_probes: Vec<Vec<Rational>> =
            probes.iter().map(|v| p_inv.mul_vec(v).unwrap()).collect();
        prop_assert_eq!(profile(&moved, &moved_probes), before);
    }

    #[test]
    fn monomial_scramble_round_trips(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=7);
        let g = random_graph(&mut r, n, 0.5);
        let alg: CupAlgebraQ = cohomology_of_graph(&g);
        let p = random_monomial(&mut r, n);
        let qm = to_matrix(&random_nonsingular(&mut r, alg.dim2(), 2));
        let back = reconstruct_graph(&alg.change_basis(&p, &qm).unwrap()).unwrap();
        prop_assert!(back.graph_isomorphic(&g).is_some());
    }

    #[test]
    fn graph_isomorphisms_induce_algebra_isomorphisms(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=6);
        let g = random_graph(&mut r, n, 0.5);
        let h = shuffled(&mut r, &g);
        let perm = g.isomorphism_to(&h).unwrap();
        let (p, qm) = induced_algebra_map::<Rational>(&g, &h, &perm).unwrap();
        let a: CupAlgebraQ = cohomology_of_graph(&g);
        let b: CupAlgebraQ = cohomology_of_graph(&h);
        prop_assert!(a.maps_to(&b, &p, &qm).unwrap());
    }

    #[test]
    fn legal_moves_are_undone_by_their_inverse(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(2..=6);
        let g = Arc::new(random_graph(&mut r, n, 0.5));
        let name = |i: usize| g.vertex_name(i).to_string();
        let e = if r.gen_bool(0.5) { 1 } else { -1 };
        let mut moves = Vec::new();
        for v in 0..n {
            for w in 0..n {
                if v != w && g.dominates_index(w, v) {
                    moves.push(WhiteheadMove::Transvection { vertex: name(v), by: name(w), exponent: e });
                }
            }
            let star = g.star(v);
            let rest: Vec<usize> = (0..n).filter(|u| !star.contains(u)).collect();
            for comp in g.components_within(&rest) {
                moves.push(WhiteheadMove::PartialConjugation {
                    by: name(v),
                    component: g.names(&comp),
                    exponent: e,
                });
            }
        }
        prop_assume!(!moves.is_empty());
        let mv = moves.choose(&mut r).unwrap();
        let f = whitehead_endomorphism(&g, mv).unwrap();
        let f_inv = whitehead_endomorphism(&g, &mv.inverse()).unwrap();
        prop_assert!(f.compose(&f_inv).unwrap().is_identity());
        prop_assert!(f_inv.compose(&f).unwrap().is_identity());
    }

    #[test]
    fn lattice_index_multiplies_along_chains(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=3);
        let b1 = random_nonsingular(&mut r, n, 3);
        let m2 = random_nonsingular(&mut r, n, 2);
        let m3 = random_nonsingular(&mut r, n, 2);
        let times = |m: &[Vec<i64>], b: &[Vec<i64>]| -> Vec<Vec<i64>> {
            (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| m[i][k] * b[k][j]).sum()).collect()).collect()
        };
        let b2 = times(&m2, &b1);
        let b3 = times(&m3, &b2);
        let lat = |b: &[Vec<i64>]| {
            let rows: Vec<Vec<BigInt>> = b.iter().map(|row| row.iter().map(|&x| BigInt::from(x)).collect()).collect();
            IntegerLattice::new(n, rows).unwrap()
        };
        let (l1, l2, l3) = (lat(&b1), lat(&b2), lat(&b3));
        let fin = |k: i64| LatticeIndex::Finite(BigInt::from(k.abs()));
        prop_assert_eq!(lattice_index(&l2, &l1).unwrap(), fin(int_det(&m2)));
        prop_assert_eq!(lattice_index(&l3, &l2).unwrap(), fin(int_det(&m3)));
        prop_assert_eq!(lattice_index(&l3, &l1).unwrap(), fin(int_det(&m2) * int_det(&m3)));
    }
}

#[test]
fn optimum_never_exceeds_closed_form() {
    for g in 2..=50 {
        let b = max_product_free_factors(g).unwrap();
        assert!(b.exact_optimum <= b.closed_form_bound, "genus {g}");
        let (t, s) = b.optimum_pieces;
        assert!(t <= g && t + 2 * s <= 2 * g - 2);
    }
}

#[test]
fn monomial_position_is_required() {
    let g = common::graph_from_mask(3, 0b011);
    let alg: CupAlgebraQ = cohomology_of_graph(&g);
    let p: MatrixQ = to_matrix(&[vec![1, 0, 1], vec![1, 1, 0], vec![0, 0, 1]]);
    let moved = alg.change_basis(&p, &MatrixQ::identity(alg.dim2())).unwrap();
    assert!(reconstruct_graph(&moved).is_err());
}
