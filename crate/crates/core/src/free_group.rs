//! Stallings folding for finitely generated subgroups of free groups.
//!
//! Words are written over `a..z`, a capital letter denoting the inverse
//! generator. A subgroup is represented by its folded core graph based at
//! the wedge point; membership is a walk back to the base state.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A freely reduced word in `F_rank`: letters `(generator, ±1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeWord {
    rank: usize,
    letters: Vec<(usize, i8)>,
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &(g, s) in &self.letters {
            let c = (b'a' + g as u8) as char;
            write!(f, "{}", if s > 0 { c } else { c.to_ascii_uppercase() })?;
        }
        Ok(())
    }
}

impl Serialize for FreeWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl FreeWord {
    /// Builds a word from letters, freely reducing it.
    pub fn new(rank: usize, letters: Vec<(usize, i8)>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        let mut out: Vec<(usize, i8)> = Vec::with_capacity(letters.len());
        for (g, s) in letters {
            if g >= rank {
                return Err(Error::GeneratorOutOfRange { index: g, rank });
            }
            if s != 1 && s != -1 {
                return Err(Error::ParseFreeWord(format!("letter sign {s}")));
            }
            if out.last() == Some(&(g, -s)) {
                out.pop();
            } else {
                out.push((g, s));
            }
        }
        Ok(FreeWord { rank, letters: out })
    }

    pub fn identity(rank: usize) -> Result<Self> {
        FreeWord::new(rank, Vec::new())
    }

    /// Parses `a..z` / `A..Z` letters; `""` or `"1"` is the identity.
    pub fn parse(text: &str, rank: usize) -> Result<Self> {
        let text = text.trim();
        if rank > 26 {
            return Err(Error::InvalidArgument(
                "letter notation supports rank at most 26".into(),
            ));
        }
        if text == "1" {
            return FreeWord::identity(rank);
        }
        let letters = text
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| {
                if c.is_ascii_lowercase() {
                    Ok(((c as u8 - b'a') as usize, 1))
                } else if c.is_ascii_uppercase() {
                    Ok(((c as u8 - b'A') as usize, -1))
                } else {
                    Err(Error::ParseFreeWord(text.to_string()))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        FreeWord::new(rank, letters)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|&(g, s)| (g, -s)).collect(),
        }
    }

    pub fn mul(&self, other: &FreeWord) -> Result<FreeWord> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: other.rank,
            });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        FreeWord::new(self.rank, letters)
    }
}

/// A folded, trimmed core graph. States are numbered by breadth-first
/// discovery from the base state `0`, labels in increasing order, outgoing
/// before incoming, so equal subgroups give identical graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StallingsGraph {
    rank: usize,
    states: usize,
    /// Edges `(from, label, to)`, sorted.
    edges: Vec<(usize, usize, usize)>,
    out: Vec<Vec<Option<usize>>>,
    inc: Vec<Vec<Option<usize>>>,
}

impl Serialize for StallingsGraph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Edge {
            from: usize,
            label: char,
            to: usize,
        }
        #[derive(Serialize)]
        struct Out {
            rank: usize,
            states: usize,
            base: usize,
            edges: Vec<Edge>,
        }
        Out {
            rank: self.rank,
            states: self.states,
            base: 0,
            edges: self
                .edges
                .iter()
                .map(|&(from, l, to)| Edge {
                    from,
                    label: (b'a' + l as u8) as char,
                    to,
                })
                .collect(),
        }
        .serialize(s)
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.0[hi] = lo;
        true
    }
}

impl StallingsGraph {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn state_count(&self) -> usize {
        self.states
    }

    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }

    fn step(&self, state: usize, (g, s): (usize, i8)) -> Option<usize> {
        if s > 0 {
            self.out[state][g]
        } else {
            self.inc[state][g]
        }
    }

    /// Whether every label is readable in both directions at every state.
    pub fn is_complete(&self) -> bool {
        (0..self.states).all(|v| (0..self.rank).all(|g| self.out[v][g].is_some() && self.inc[v][g].is_some()))
    }

    /// Builds the canonical form from raw edges over states `0..n`, with
    /// state `base` as base. Assumes the edges are folded.
    fn canonical(rank: usize, n: usize, base: usize, edges: &[(usize, usize, usize)]) -> Self {
        let mut out = vec![vec![None; rank]; n];
        let mut inc = vec![vec![None; rank]; n];
        for &(f, l, t) in edges {
            out[f][l] = Some(t);
            inc[t][l] = Some(f);
        }
        let mut number = vec![usize::MAX; n];
        let mut order = vec![base];
        number[base] = 0;
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for l in 0..rank {
                for next in [out[v][l], inc[v][l]].into_iter().flatten() {
                    if number[next] == usize::MAX {
                        number[next] = order.len();
                        order.push(next);
                    }
                }
            }
        }
        let states = order.len();
        let mut renamed: Vec<(usize, usize, usize)> = edges
            .iter()
            .filter(|&&(f, _, t)| number[f] != usize::MAX && number[t] != usize::MAX)
            .map(|&(f, l, t)| (number[f], l, number[t]))
            .collect();
        renamed.sort_unstable();
        renamed.dedup();
        let mut out = vec![vec![None; rank]; states];
        let mut inc = vec![vec![None; rank]; states];
        for &(f, l, t) in &renamed {
            out[f][l] = Some(t);
            inc[t][l] = Some(f);
        }
        StallingsGraph {
            rank,
            states,
            edges: renamed,
            out,
            inc,
        }
    }
}

/// Folds the bouquet of generator loops. `edge_order` permutes the order in
/// which clashes are discovered; the result does not depend on it.
pub fn fold_with_order(
    generators: &[FreeWord],
    rank: usize,
    edge_order: Option<&[usize]>,
) -> Result<StallingsGraph> {
    if rank == 0 {
        return Err(Error::ZeroRank);
    }
    let mut states = 1;
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    for w in generators {
        if w.rank != rank {
            return Err(Error::RankMismatch {
                expected: rank,
                found: w.rank,
            });
        }
        let n = w.len();
        if n == 0 {
            continue;
        }
        let mut cur = 0;
        for (k, &(g, s)) in w.letters.iter().enumerate() {
            let next = if k + 1 == n {
                0
            } else {
                states += 1;
                states - 1
            };
            if s > 0 {
                edges.push((cur, g, next));
            } else {
                edges.push((next, g, cur));
            }
            cur = next;
        }
    }
    if let Some(order) = edge_order {
        let mut permuted: Vec<(usize, usize, usize)> =
            order.iter().filter_map(|&i| edges.get(i).copied()).collect();
        if permuted.len() == edges.len() {
            std::mem::swap(&mut edges, &mut permuted);
        }
    }

    let mut uf = UnionFind((0..states).collect());
    loop {
        let mut changed = false;
        let mut out: Vec<Vec<Option<usize>>> = vec![vec![None; rank]; states];
        let mut inc: Vec<Vec<Option<usize>>> = vec![vec![None; rank]; states];
        for &(f, l, t) in &edges {
            let (f, t) = (uf.find(f), uf.find(t));
            match out[f][l] {
                Some(t2) if uf.find(t2) != t => {
                    changed |= uf.union(t, t2);
                }
                _ => out[f][l] = Some(t),
            }
            let t = uf.find(t);
            let f = uf.find(f);
            match inc[t][l] {
                Some(f2) if uf.find(f2) != f => {
                    changed |= uf.union(f, f2);
                }
                _ => inc[t][l] = Some(f),
            }
        }
        if !changed {
            break;
        }
    }
    let mut folded: Vec<(usize, usize, usize)> = edges
        .iter()
        .map(|&(f, l, t)| (uf.find(f), l, uf.find(t)))
        .collect();
    folded.sort_unstable();
    folded.dedup();

    let base = uf.find(0);
    // Trim hanging trees: drop non-base states of degree at most one.
    loop {
        let mut degree = vec![0usize; states];
        for &(f, _, t) in &folded {
            degree[f] += 1;
            degree[t] += 1;
        }
        let before = folded.len();
        folded.retain(|&(f, _, t)| {
            let dead = |v: usize| v != base && degree[v] <= 1;
            !dead(f) && !dead(t)
        });
        if folded.len() == before {
            break;
        }
    }
    Ok(StallingsGraph::canonical(rank, states, base, &folded))
}

/// The folded core graph of `⟨generators⟩ ≤ F_rank`.
pub fn fold(generators: &[FreeWord], rank: usize) -> Result<StallingsGraph> {
    fold_with_order(generators, rank, None)
}

pub fn membership(w: &FreeWord, h: &StallingsGraph) -> Result<bool> {
    if w.rank != h.rank {
        return Err(Error::RankMismatch {
            expected: h.rank,
            found: w.rank,
        });
    }
    let mut state = 0;
    for &letter in &w.letters {
        match h.step(state, letter) {
            Some(next) => state = next,
            None => return Ok(false),
        }
    }
    Ok(state == 0)
}

/// Index of a subgroup: a positive integer or infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubgroupIndex {
    Finite(usize),
    Infinite,
}

impl Serialize for SubgroupIndex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SubgroupIndex::Finite(n) => s.serialize_u64(*n as u64),
            SubgroupIndex::Infinite => s.serialize_str("infinite"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RankIndex {
    pub rank: usize,
    pub index: SubgroupIndex,
}

/// Free rank `E - V + 1`, and the index `V` when every state is complete.
pub fn rank_and_index(h: &StallingsGraph) -> RankIndex {
    let rank = h.edges.len() + 1 - h.states;
    let index = if h.is_complete() {
        SubgroupIndex::Finite(h.states)
    } else {
        SubgroupIndex::Infinite
    };
    RankIndex { rank, index }
}

/// Whether the words generate all of `F_rank`.
pub fn generates_full(generators: &[FreeWord], rank: usize) -> Result<bool> {
    let h = fold(generators, rank)?;
    Ok(h.states == 1 && h.is_complete())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorReport {
    pub generators: Vec<FreeWord>,
    pub generates_full: bool,
    pub abelian: bool,
    pub rank: usize,
    pub index: SubgroupIndex,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProjectionReport {
    pub first: FactorReport,
    pub second: FactorReport,
    /// True when the generators lying in each factor alone already generate
    /// that factor, which does prove the subgroup is the whole product.
    pub contains_both_factors: bool,
    pub disclaimer: String,
}

fn factor_report(words: Vec<FreeWord>, rank: usize) -> Result<FactorReport> {
    let h = fold(&words, rank)?;
    let ri = rank_and_index(&h);
    Ok(FactorReport {
        generates_full: h.states == 1 && h.is_complete(),
        abelian: ri.rank <= 1,
        rank: ri.rank,
        index: ri.index,
        generators: words,
    })
}

/// Projects generators of a subgroup of `F_n × F_m` to the two factors.
pub fn product_projection_analysis(
    generators: &[(FreeWord, FreeWord)],
    n: usize,
    m: usize,
) -> Result<ProjectionReport> {
    let first: Vec<FreeWord> = generators.iter().map(|(u, _)| u.clone()).collect();
    let second: Vec<FreeWord> = generators.iter().map(|(_, v)| v.clone()).collect();
    let left_only: Vec<FreeWord> = generators
        .iter()
        .filter(|(_, v)| v.is_empty())
        .map(|(u, _)| u.clone())
        .collect();
    let right_only: Vec<FreeWord> = generators
        .iter()
        .filter(|(u, _)| u.is_empty())
        .map(|(_, v)| v.clone())
        .collect();
    let contains_both_factors = generates_full(&left_only, n)? && generates_full(&right_only, m)?;
    Ok(ProjectionReport {
        first: factor_report(first, n)?,
        second: factor_report(second, m)?,
        contains_both_factors,
        disclaimer: "surjective projections do not decide whether the subgroup is the whole \
                     product; that question has no general algorithm"
            .into(),
    })
}
