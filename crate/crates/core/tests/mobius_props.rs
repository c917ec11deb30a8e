mod common;

use std::cmp::Ordering;

use proptest::prelude::*;
use raag_core::mobius::{
    irredundancy_fixed_points, minimal_power_search, pingpong_certificate, verify_certificate, MapKind,
    Point, Quadratic,
};
use raag_core::{Mobius, Rational};
use rand::Rng;

use common::{q, rng};

/// A hyperbolic element of `SL₂(ℤ)`, as a product of elementary matrices.
fn random_hyperbolic<R: Rng>(r: &mut R) -> Mobius {
    loop {
        let mut m = Mobius::identity();
        for k in 0..r.gen_range(2..=4) {
            let e = r.gen_range(1..=3) * if r.gen_bool(0.5) { 1 } else { -1 };
            let step = if k % 2 == 0 {
                [[1, e], [0, 1]]
            } else {
                [[1, 0], [e, 1]]
            };
            m = m.compose(&Mobius::from_i64(step).unwrap());
        }
        if m.classify().ok() == Some(MapKind::Hyperbolic) {
            return m;
        }
    }
}

/// `∏ maps[g]^(power·e)` over a freely reduced syllable sequence.
fn evaluate(maps: &[Mobius], power: i64, word: &[(usize, i64)]) -> Mobius {
    word.iter().fold(Mobius::identity(), |acc, &(g, e)| {
        acc.compose(&maps[g].pow(power * e))
    })
}

fn random_free_syllables<R: Rng>(r: &mut R, gens: usize, max_len: usize) -> Vec<(usize, i64)> {
    let len = r.gen_range(1..=max_len);
    let mut out: Vec<(usize, i64)> = Vec::new();
    while out.len() < len {
        let g = r.gen_range(0..gens);
        if out.last().is_some_and(|&(h, _)| h == g) {
            continue;
        }
        out.push((g, r.gen_range(1..=3) * if r.gen_bool(0.5) { 1 } else { -1 }));
    }
    out
}

fn finite(p: &Point<Rational>) -> Option<&Quadratic<Rational>> {
    match p {
        Point::Finite(x) => Some(x),
        Point::Infinity => None,
    }
}

/// `|x - p| < |y - p|` for rationals `x ≠ y`, decided through the midpoint.
fn closer(x: &Rational, y: &Rational, p: &Quadratic<Rational>) -> bool {
    let mid = Quadratic::rational((x + y) / q(2));
    match x.cmp(y) {
        Ordering::Greater => mid.compare(p) == Ordering::Less,
        Ordering::Less => mid.compare(p) == Ordering::Greater,
        Ordering::Equal => false,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn certificates_verify_nest_and_stay_free(seed in any::<u64>()) {
        let mut r = rng(seed);
        let maps = vec![random_hyperbolic(&mut r), random_hyperbolic(&mut r)];
        prop_assume!(irredundancy_fixed_points(&maps).unwrap().irredundant);
        let cap = 4;
        let report = minimal_power_search(&maps, cap).unwrap();
        prop_assume!(report.power.is_some());
        let cert = report.certificate.unwrap();
        prop_assert!(verify_certificate(&cert));
        for n in cert.power..=cap {
            let later = pingpong_certificate(&maps, &cert.intervals, n).unwrap();
            prop_assert!(later.certified, "lost at {}", n);
            prop_assert!(verify_certificate(&later.certificate.unwrap()));
        }
        let power = i64::try_from(cert.power).unwrap();
        for _ in 0..10 {
            let w = random_free_syllables(&mut r, 2, 6);
            prop_assert!(!evaluate(&maps, power, &w).is_identity(), "{:?}", w);
        }
    }

    #[test]
    fn hyperbolic_orbits_approach_the_attracting_point(seed in any::<u64>(), x0 in -20i64..=20) {
        let mut r = rng(seed);
        let m = random_hyperbolic(&mut r);
        let fixed = m.fixed_points().unwrap();
        let (Some(att), Some(rep)) = (finite(&fixed[0].point), finite(&fixed[1].point)) else {
            return Ok(());
        };
        let start = q(x0);
        let mut x = Point::rational(start.clone());
        for _ in 0..30 {
            x = m.apply(&x);
        }
        let Some(end) = finite(&x).map(|e| e.p.clone()) else {
            return Ok(());
        };
        // Fixed points of integer hyperbolic maps are conjugate irrationals.
        prop_assert!(!att.is_rational());
        let mid = Quadratic::rational(att.p.clone());
        let near_side = Quadratic::rational(end.clone()).compare(&mid) == att.compare(&mid);
        prop_assert!(near_side, "{} nearer {} than {}", end, rep, att);
        prop_assert!(closer(&end, &start, att));
    }
}

#[test]
fn random_irredundant_pairs_are_often_certified() {
    let mut r = rng(11);
    let (mut tried, mut certified) = (0, 0);
    while tried < 60 {
        let maps = vec![random_hyperbolic(&mut r), random_hyperbolic(&mut r)];
        if !irredundancy_fixed_points(&maps).unwrap().irredundant {
            continue;
        }
        tried += 1;
        if minimal_power_search(&maps, 4).unwrap().power.is_some() {
            certified += 1;
        }
    }
    println!("certified {certified} of {tried}");
    assert!(certified >= tried / 2, "certified {certified} of {tried}");
}
