//! Brute-force oracles and generators shared by the integration tests.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use raag_core::word::Syllable;
use raag_core::{SimpleGraph, Word};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn vertex_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

/// Vertex pairs `i < j` in the order used by edge masks.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push((i, j));
        }
    }
    out
}

pub fn graph_from_mask(n: usize, mask: u64) -> SimpleGraph {
    let edges: Vec<(usize, usize)> = pairs(n)
        .into_iter()
        .enumerate()
        .filter(|(k, _)| mask >> k & 1 == 1)
        .map(|(_, e)| e)
        .collect();
    SimpleGraph::from_index_edges(vertex_names(n), &edges).unwrap()
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn relabelled_mask(n: usize, mask: u64, perm: &[usize]) -> u64 {
    let index: HashMap<(usize, usize), usize> =
        pairs(n).into_iter().enumerate().map(|(k, e)| (e, k)).collect();
    let mut out = 0;
    for (k, (i, j)) in pairs(n).into_iter().enumerate() {
        if mask >> k & 1 == 1 {
            let (a, b) = (perm[i].min(perm[j]), perm[i].max(perm[j]));
            out |= 1 << index[&(a, b)];
        }
    }
    out
}

/// One graph per isomorphism class on exactly `n` vertices, found by
/// minimizing the edge mask over all relabellings.
pub fn census(n: usize) -> Vec<SimpleGraph> {
    let m = pairs(n).len();
    let perms = permutations(n);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0..1u64 << m {
        let canon = perms.iter().map(|p| relabelled_mask(n, mask, p)).min().unwrap();
        if seen.insert(canon) {
            out.push(graph_from_mask(n, canon));
        }
    }
    out
}

/// The census on `1..=max` vertices.
pub fn census_upto(max: usize) -> Vec<SimpleGraph> {
    (1..=max).flat_map(census).collect()
}

pub fn brute_isomorphic(g: &SimpleGraph, h: &SimpleGraph) -> bool {
    if g.len() != h.len() || g.edge_count() != h.edge_count() {
        return false;
    }
    let n = g.len();
    permutations(n)
        .iter()
        .any(|p| (0..n).all(|i| (0..n).all(|j| g.adjacent(i, j) == h.adjacent(p[i], p[j]))))
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> SimpleGraph {
    let edges: Vec<(usize, usize)> = pairs(n).into_iter().filter(|_| rng.gen_bool(p)).collect();
    SimpleGraph::from_index_edges(vertex_names(n), &edges).unwrap()
}

/// The same graph with vertices relabelled by a random permutation.
pub fn shuffled<R: Rng>(rng: &mut R, g: &SimpleGraph) -> SimpleGraph {
    let mut perm: Vec<usize> = (0..g.len()).collect();
    perm.shuffle(rng);
    let edges: Vec<(usize, usize)> = g.edges().into_iter().map(|(i, j)| (perm[i], perm[j])).collect();
    SimpleGraph::from_index_edges(vertex_names(g.len()), &edges).unwrap()
}

pub fn random_word<R: Rng>(rng: &mut R, g: &Arc<SimpleGraph>, max_syllables: usize, max_exp: i64) -> Word {
    let len = rng.gen_range(0..=max_syllables);
    let syllables = (0..len)
        .map(|_| {
            let e = rng.gen_range(1..=max_exp) * if rng.gen_bool(0.5) { 1 } else { -1 };
            Syllable::new(rng.gen_range(0..g.len()), e)
        })
        .collect();
    Word::from_syllables(g, syllables).unwrap()
}

/// Letters `(generator, ±1)` of a word, syllables expanded.
pub type Letters = Vec<(usize, i8)>;

pub fn letters_of(w: &Word) -> Letters {
    let mut out = Vec::new();
    for s in w.syllables() {
        let e: i64 = (&s.exponent).try_into().unwrap();
        let sign = if e > 0 { 1 } else { -1 };
        out.extend(std::iter::repeat_n((s.generator, sign), e.unsigned_abs() as usize));
    }
    out
}

pub fn word_of(g: &Arc<SimpleGraph>, letters: &Letters) -> Word {
    let syllables = letters
        .iter()
        .map(|&(v, s)| Syllable::new(v, BigInt::from(s)))
        .collect();
    Word::from_syllables(g, syllables).unwrap()
}

/// Every letter sequence reachable by swapping adjacent commuting letters
/// and deleting adjacent inverse pairs; two words are equal exactly when
/// they reach a common shortest sequence. The key of a word is the least
/// shortest sequence it reaches, cached for every visited sequence.
pub struct WordOracle {
    graph: Arc<SimpleGraph>,
    keys: HashMap<Letters, Letters>,
}

impl WordOracle {
    pub fn new(graph: &Arc<SimpleGraph>) -> Self {
        WordOracle {
            graph: Arc::clone(graph),
            keys: HashMap::new(),
        }
    }

    fn neighbours(&self, w: &Letters) -> Vec<Letters> {
        let mut out = Vec::new();
        for k in 0..w.len().saturating_sub(1) {
            let (a, b) = (w[k], w[k + 1]);
            if a.0 == b.0 && a.1 == -b.1 {
                let mut v = w.clone();
                v.drain(k..k + 2);
                out.push(v);
            } else if a.0 != b.0 && self.graph.adjacent(a.0, b.0) {
                let mut v = w.clone();
                v.swap(k, k + 1);
                out.push(v);
            }
        }
        out
    }

    pub fn key(&mut self, w: &Letters) -> Letters {
        if let Some(k) = self.keys.get(w) {
            return k.clone();
        }
        let mut visited: HashSet<Letters> = HashSet::new();
        let mut queue = VecDeque::new();
        visited.insert(w.clone());
        queue.push_back(w.clone());
        let mut best = w.clone();
        let mut known = None;
        while let Some(s) = queue.pop_front() {
            if let Some(k) = self.keys.get(&s) {
                known = Some(k.clone());
                break;
            }
            if (s.len(), &s) < (best.len(), &best) {
                best = s.clone();
            }
            for t in self.neighbours(&s) {
                if visited.insert(t.clone()) {
                    queue.push_back(t);
                }
            }
        }
        let key = known.unwrap_or(best);
        for s in visited {
            self.keys.insert(s, key.clone());
        }
        key
    }

    pub fn equal(&mut self, a: &Word, b: &Word) -> bool {
        self.key(&letters_of(a)) == self.key(&letters_of(b))
    }

    pub fn is_trivial(&mut self, w: &Word) -> bool {
        self.key(&letters_of(w)).is_empty()
    }

    /// Shortest length over all conjugates, by adding rotations to the
    /// rewriting moves.
    pub fn min_conjugate_len(&self, w: &Letters) -> usize {
        let mut visited: HashSet<Letters> = HashSet::new();
        let mut queue = VecDeque::new();
        visited.insert(w.clone());
        queue.push_back(w.clone());
        let mut best = w.len();
        while let Some(s) = queue.pop_front() {
            best = best.min(s.len());
            let mut next = self.neighbours(&s);
            if s.len() > 1 {
                let mut r = s.clone();
                r.rotate_left(1);
                next.push(r);
            }
            for t in next {
                if visited.insert(t.clone()) {
                    queue.push_back(t);
                }
            }
        }
        best
    }
}

/// All distinct syllable sequences with at most `max_syllables` syllables,
/// neighbouring generators distinct, exponents `±1..=±max_exp`.
pub fn syllable_words(g: &Arc<SimpleGraph>, max_syllables: usize, max_exp: i64) -> Vec<Word> {
    fn go(
        g: &Arc<SimpleGraph>,
        prefix: &mut Vec<(usize, i64)>,
        left: usize,
        max_exp: i64,
        out: &mut Vec<Word>,
    ) {
        out.push(
            Word::from_syllables(g, prefix.iter().map(|&(v, e)| Syllable::new(v, e)).collect()).unwrap(),
        );
        if left == 0 {
            return;
        }
        for v in 0..g.len() {
            if prefix.last().is_some_and(|&(u, _)| u == v) {
                continue;
            }
            for e in (-max_exp..=max_exp).filter(|&e| e != 0) {
                prefix.push((v, e));
                go(g, prefix, left - 1, max_exp, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(g, &mut Vec::new(), max_syllables, max_exp, &mut out);
    out
}

/// No pairwise commuting subfamily has linearly dependent exponent vectors.
pub fn pp_irredundant(c: &raag_core::pingpong::PPCollection) -> bool {
    let z = c.elements();
    let n = z.len();
    let vectors: Vec<Vec<BigInt>> = z
        .iter()
        .map(|w| {
            let mut v = vec![BigInt::from(0); c.graph().len()];
            for s in w.syllables() {
                v[s.generator] += &s.exponent;
            }
            v
        })
        .collect();
    for mask in 1u32..1 << n {
        let members: Vec<usize> = (0..n).filter(|k| mask >> k & 1 == 1).collect();
        let commuting = members.iter().all(|&i| {
            members
                .iter()
                .all(|&j| raag_core::word::commute(&z[i], &z[j]).unwrap())
        });
        let vs: Vec<Vec<BigInt>> = members.iter().map(|&i| vectors[i].clone()).collect();
        if commuting && !raag_core::lattice::irredundancy_check(&vs) {
            return false;
        }
    }
    true
}

/// A random collection of clique products on a random graph, not yet
/// filtered for property PP.
pub fn random_collection<R: Rng>(rng: &mut R) -> raag_core::pingpong::PPCollection {
    use raag_core::pingpong::{CliqueProduct, PPCollection};
    let n = rng.gen_range(3..=5);
    let g = Arc::new(random_graph(rng, n, 0.5));
    let cliques: Vec<Vec<usize>> = g
        .enumerate_cliques()
        .unwrap()
        .into_iter()
        .map(|c| g.indices(&c.vertices).unwrap())
        .collect();
    let k = rng.gen_range(2..=4);
    let products = (0..k)
        .map(|_| {
            let clique = cliques.choose(rng).unwrap().clone();
            let factors = clique
                .iter()
                .map(|&v| {
                    let e = rng.gen_range(1..=2) * if rng.gen_bool(0.5) { 1 } else { -1 };
                    (v, BigInt::from(e))
                })
                .collect();
            CliqueProduct { clique, factors }
        })
        .collect();
    PPCollection::new(g, products).unwrap()
}

/// Draws random collections until one has property PP and is irredundant.
pub fn random_pp_instance<R: Rng>(rng: &mut R) -> raag_core::pingpong::PPCollection {
    loop {
        let c = random_collection(rng);
        if raag_core::pingpong::has_property_pp(&c).is_some() && pp_irredundant(&c) {
            return c;
        }
    }
}

pub fn q(n: i64) -> raag_core::Rational {
    raag_core::Rational::from_integer(BigInt::from(n))
}

/// Integer determinant by Bareiss elimination, independent of the lattice code.
pub fn int_det(m: &[Vec<i64>]) -> i64 {
    i64::try_from(bareiss(m)).expect("determinant fits in i64")
}

/// Fraction-free elimination; every division is exact.
fn bareiss(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        BigInt::from(1)
    } else {
        prev * sign
    }
}

/// A random integer matrix with nonzero determinant.
pub fn random_nonsingular<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Vec<Vec<i64>> {
    loop {
        let m: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(-bound..=bound)).collect())
            .collect();
        if !bareiss(&m).is_zero() {
            return m;
        }
    }
}

pub fn to_matrix(m: &[Vec<i64>]) -> raag_core::MatrixQ {
    raag_core::MatrixQ::from_rows(m.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()).unwrap()
}

/// A permutation matrix with random nonzero scalars: a basis change that
/// keeps vertex duals in monomial position.
pub fn random_monomial<R: Rng>(rng: &mut R, n: usize) -> raag_core::MatrixQ {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut m = vec![vec![0; n]; n];
    for (c, &r) in perm.iter().enumerate() {
        m[r][c] = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
    }
    to_matrix(&m)
}

/// Every product of at most `depth` generators and inverses.
pub fn free_products(
    gens: &[raag_core::free_group::FreeWord],
    rank: usize,
    depth: usize,
) -> HashSet<raag_core::free_group::FreeWord> {
    let letters: Vec<_> = gens.iter().flat_map(|w| [w.clone(), w.inverse()]).collect();
    let identity = raag_core::free_group::FreeWord::identity(rank).unwrap();
    let mut all: HashSet<_> = HashSet::from([identity.clone()]);
    let mut layer = vec![identity];
    for _ in 0..depth {
        let mut next = Vec::new();
        for w in &layer {
            for l in &letters {
                let p = w.mul(l).unwrap();
                if all.insert(p.clone()) {
                    next.push(p);
                }
            }
        }
        layer = next;
    }
    all
}

pub fn random_free_word<R: Rng>(
    rng: &mut R,
    rank: usize,
    min_len: usize,
    max_len: usize,
) -> raag_core::free_group::FreeWord {
    let len = rng.gen_range(min_len..=max_len);
    let letters = (0..len)
        .map(|_| (rng.gen_range(0..rank), if rng.gen_bool(0.5) { 1 } else { -1 }))
        .collect();
    raag_core::free_group::FreeWord::new(rank, letters).unwrap()
}

/// All freely reduced words of length at most `max_len`.
pub fn free_ball(rank: usize, max_len: usize) -> Vec<raag_core::free_group::FreeWord> {
    let gens: Vec<_> = (0..rank)
        .map(|g| raag_core::free_group::FreeWord::new(rank, vec![(g, 1)]).unwrap())
        .collect();
    let mut out: Vec<_> = free_products(&gens, rank, max_len).into_iter().collect();
    out.sort_by_key(|w| (w.len(), w.to_string()));
    out
}

/// The subgroup elements reachable from the identity by multiplying with
/// generators and their inverses without ever exceeding `cap` letters.
pub fn capped_closure(
    gens: &[raag_core::free_group::FreeWord],
    rank: usize,
    cap: usize,
) -> HashSet<raag_core::free_group::FreeWord> {
    let letters: Vec<_> = gens.iter().flat_map(|w| [w.clone(), w.inverse()]).collect();
    let identity = raag_core::free_group::FreeWord::identity(rank).unwrap();
    let mut all: HashSet<_> = HashSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity]);
    while let Some(w) = queue.pop_front() {
        for l in &letters {
            let p = w.mul(l).unwrap();
            if p.len() <= cap && all.insert(p.clone()) {
                queue.push_back(p);
            }
        }
    }
    all
}

/// Words of length at most six over `F_2` on which Stallings membership
/// disagrees with product enumeration. Products of at most four generators
/// must be members, and members are exactly the products reachable through
/// words of at most ten letters.
pub fn membership_mismatches(
    gens: &[raag_core::free_group::FreeWord],
) -> Vec<raag_core::free_group::FreeWord> {
    use raag_core::free_group::{fold, membership};
    let h = fold(gens, 2).unwrap();
    let near = free_products(gens, 2, 4);
    let reach = capped_closure(gens, 2, 10);
    free_ball(2, 6)
        .into_iter()
        .filter(|w| {
            let member = membership(w, &h).unwrap();
            (near.contains(w) && !member) || member != reach.contains(w)
        })
        .collect()
}
