//! Elements of a right-angled Artin group as syllable words.
//!
//! A syllable is a nonzero power of one vertex generator. Words always keep
//! neighbouring syllables on distinct generators. [`Word::reduce`] returns a
//! normal form: two words represent the same element exactly when their
//! reductions are identical.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub generator: usize,
    pub exponent: BigInt,
}

impl Syllable {
    pub fn new(generator: usize, exponent: impl Into<BigInt>) -> Self {
        Syllable {
            generator,
            exponent: exponent.into(),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Word {
    graph: Arc<SimpleGraph>,
    syllables: Vec<Syllable>,
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({:?})", self.to_string())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, s) in self.syllables.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            f.write_str(self.graph.vertex_name(s.generator))?;
            if !s.exponent.is_one() {
                write!(f, "^{}", s.exponent)?;
            }
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl Word {
    pub fn identity(graph: &Arc<SimpleGraph>) -> Word {
        Word {
            graph: Arc::clone(graph),
            syllables: Vec::new(),
        }
    }

    pub fn generator(graph: &Arc<SimpleGraph>, generator: usize, exponent: impl Into<BigInt>) -> Word {
        Word::from_syllables(graph, vec![Syllable::new(generator, exponent)])
            .expect("generator index out of range")
    }

    /// Builds a word, dropping zero exponents and merging neighbouring
    /// syllables on the same generator.
    pub fn from_syllables(graph: &Arc<SimpleGraph>, syllables: Vec<Syllable>) -> Result<Word> {
        let mut out: Vec<Syllable> = Vec::with_capacity(syllables.len());
        for s in syllables {
            if s.generator >= graph.len() {
                return Err(Error::UnknownVertex(format!("#{}", s.generator)));
            }
            push_merged(&mut out, s);
        }
        Ok(Word {
            graph: Arc::clone(graph),
            syllables: out,
        })
    }

    /// Parses whitespace-separated syllables `gen^exp`; `^1` may be omitted.
    pub fn parse(graph: &Arc<SimpleGraph>, text: &str) -> Result<Word> {
        let mut syllables = Vec::new();
        for token in text.split_whitespace() {
            let (name, exp) = match token.rsplit_once('^') {
                Some((n, e)) => {
                    let e: BigInt = e
                        .parse()
                        .map_err(|_| Error::ParseWord(format!("bad exponent in `{token}`")))?;
                    (n, e)
                }
                None => (token, BigInt::one()),
            };
            if name.is_empty() {
                return Err(Error::ParseWord(format!("missing generator in `{token}`")));
            }
            if exp.is_zero() {
                return Err(Error::ParseWord(format!("zero exponent in `{token}`")));
            }
            syllables.push(Syllable::new(graph.vertex_index(name)?, exp));
        }
        Word::from_syllables(graph, syllables)
    }

    pub fn graph(&self) -> &Arc<SimpleGraph> {
        &self.graph
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn syllable_len(&self) -> usize {
        self.syllables.len()
    }

    /// Length in the standard generators (sum of absolute exponents).
    pub fn letter_len(&self) -> BigInt {
        self.syllables.iter().map(|s| s.exponent.abs()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn same_ambient(&self, other: &Word) -> bool {
        Arc::ptr_eq(&self.graph, &other.graph) || *self.graph == *other.graph
    }

    fn check_ambient(&self, other: &Word) -> Result<()> {
        if self.same_ambient(other) {
            Ok(())
        } else {
            Err(Error::MismatchedAmbient)
        }
    }

    pub fn inverse(&self) -> Word {
        Word {
            graph: Arc::clone(&self.graph),
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable::new(s.generator, -s.exponent.clone()))
                .collect(),
        }
    }

    /// Concatenation, merging at the seam but not otherwise reducing.
    pub fn concat(&self, other: &Word) -> Result<Word> {
        self.check_ambient(other)?;
        let mut out = self.syllables.clone();
        for s in &other.syllables {
            push_merged(&mut out, s.clone());
        }
        Ok(Word {
            graph: Arc::clone(&self.graph),
            syllables: out,
        })
    }

    /// Product in the group, reduced.
    pub fn mul(&self, other: &Word) -> Result<Word> {
        Ok(self.concat(other)?.reduce())
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity(&self.graph);
        for _ in 0..k.unsigned_abs() {
            out = out.concat(&base).expect("same ambient");
        }
        out.reduce()
    }

    /// Generators occurring in the word, sorted by vertex index.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.syllables.iter().map(|s| s.generator).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    pub fn is_central(&self) -> bool {
        self.graph.is_clique(&self.support())
    }

    /// Cancels and merges syllables without reordering the survivors.
    /// The result is reduced but not canonical.
    pub fn merge_reduce(&self) -> Word {
        Word {
            graph: Arc::clone(&self.graph),
            syllables: merge_pass(&self.graph, self.syllables.clone()),
        }
    }

    /// The canonical reduced form: full cancellation, then the
    /// lexicographically smallest arrangement by vertex order among all
    /// commutation shuffles.
    pub fn reduce(&self) -> Word {
        let merged = merge_pass(&self.graph, self.syllables.clone());
        Word {
            graph: Arc::clone(&self.graph),
            syllables: pile_left(&self.graph, merged),
        }
    }

    pub fn is_reduced(&self) -> bool {
        merge_pass(&self.graph, self.syllables.clone()).len() == self.syllables.len()
    }

    /// Whether syllable `k` can be shuffled to the front.
    pub fn front_available(&self, k: usize) -> bool {
        let g = self.syllables[k].generator;
        self.syllables[..k]
            .iter()
            .all(|s| self.graph.adjacent(s.generator, g))
    }

    /// Whether syllable `k` can be shuffled to the back.
    pub fn back_available(&self, k: usize) -> bool {
        let g = self.syllables[k].generator;
        self.syllables[k + 1..]
            .iter()
            .all(|s| self.graph.adjacent(s.generator, g))
    }

    fn without(&self, skip: &[usize]) -> Vec<Syllable> {
        self.syllables
            .iter()
            .enumerate()
            .filter(|(k, _)| !skip.contains(k))
            .map(|(_, s)| s.clone())
            .collect()
    }
}

fn push_merged(out: &mut Vec<Syllable>, s: Syllable) {
    if s.exponent.is_zero() {
        return;
    }
    match out.last_mut() {
        Some(last) if last.generator == s.generator => {
            last.exponent += s.exponent;
            if last.exponent.is_zero() {
                out.pop();
            }
        }
        _ => out.push(s),
    }
}

/// Repeatedly merges two syllables on one generator that are separated only
/// by syllables commuting with it. Each merge shortens the word, and a word
/// with no such pair is reduced.
fn merge_pass(graph: &SimpleGraph, mut s: Vec<Syllable>) -> Vec<Syllable> {
    'scan: loop {
        for i in 0..s.len() {
            let g = s[i].generator;
            for j in i + 1..s.len() {
                let h = s[j].generator;
                if h == g {
                    let e = s.remove(j).exponent;
                    s[i].exponent += e;
                    if s[i].exponent.is_zero() {
                        s.remove(i);
                    }
                    continue 'scan;
                }
                if !graph.adjacent(g, h) {
                    break;
                }
            }
        }
        return s;
    }
}

fn pile_left(graph: &SimpleGraph, mut rest: Vec<Syllable>) -> Vec<Syllable> {
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let mut best = 0;
        for k in 1..rest.len() {
            let g = rest[k].generator;
            if g < rest[best].generator && rest[..k].iter().all(|s| graph.adjacent(s.generator, g)) {
                best = k;
            }
        }
        out.push(rest.remove(best));
    }
    out
}

pub fn reduce(w: &Word) -> Word {
    w.reduce()
}

/// Every element whose reduced form has at most `max_syllables` syllables
/// with exponents in `±1..=±max_exponent`, each once in canonical form,
/// the identity first.
pub fn reduced_ball(graph: &Arc<SimpleGraph>, max_syllables: usize, max_exponent: u32) -> Vec<Word> {
    fn extend(
        graph: &Arc<SimpleGraph>,
        prefix: &mut Vec<Syllable>,
        left: usize,
        max_exponent: i64,
        out: &mut Vec<Word>,
    ) {
        if left == 0 {
            return;
        }
        for g in 0..graph.len() {
            if prefix.last().is_some_and(|s| s.generator == g) {
                continue;
            }
            for e in (-max_exponent..=max_exponent).filter(|&e| e != 0) {
                prefix.push(Syllable::new(g, e));
                let merged = merge_pass(graph, prefix.clone());
                if merged.len() == prefix.len() {
                    if pile_left(graph, merged) == *prefix {
                        out.push(Word {
                            graph: Arc::clone(graph),
                            syllables: prefix.clone(),
                        });
                    }
                    extend(graph, prefix, left - 1, max_exponent, out);
                }
                prefix.pop();
            }
        }
    }
    let mut out = vec![Word::identity(graph)];
    let mut prefix = Vec::new();
    extend(
        graph,
        &mut prefix,
        max_syllables,
        i64::from(max_exponent),
        &mut out,
    );
    out
}

/// The word problem: whether `w1 w2^-1` is trivial.
pub fn words_equal(w1: &Word, w2: &Word) -> Result<bool> {
    Ok(w1.concat(&w2.inverse())?.reduce().is_empty())
}

/// Whether the word commutes with `other` in the group.
pub fn commute(w1: &Word, w2: &Word) -> Result<bool> {
    let lhs = w1.concat(w2)?;
    let rhs = w2.concat(w1)?;
    words_equal(&lhs, &rhs)
}

/// The commutator `a b a^-1 b^-1`, reduced.
pub fn commutator(a: &Word, b: &Word) -> Result<Word> {
    Ok(a.concat(b)?.concat(&a.inverse())?.concat(&b.inverse())?.reduce())
}

/// Writes `w = c u c^-1` with `u` cyclically reduced. Returns `(u, c)`.
pub fn cyclically_reduce(w: &Word) -> (Word, Word) {
    let graph = Arc::clone(w.graph());
    let mut u = w.reduce();
    let mut c = Word::identity(&graph);
    while let Some((i, j)) = cyclic_pair(&u) {
        let front = u.syllables[i].clone();
        let back = u.syllables[j].clone();
        let mut rest = u.without(&[i, j]);
        rest.push(Syllable::new(
            front.generator,
            front.exponent.clone() + back.exponent,
        ));
        c = c
            .concat(&Word::generator(&graph, front.generator, front.exponent))
            .expect("same ambient");
        u = Word::from_syllables(&graph, rest).expect("valid").reduce();
    }
    (u, c.reduce())
}

/// A front-available and a distinct back-available syllable on the same
/// generator, if any.
fn cyclic_pair(u: &Word) -> Option<(usize, usize)> {
    let n = u.syllable_len();
    for i in 0..n {
        if !u.front_available(i) {
            continue;
        }
        for j in 0..n {
            if j != i && u.syllables[j].generator == u.syllables[i].generator && u.back_available(j) {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn is_cyclically_reduced(w: &Word) -> bool {
    w.is_reduced() && cyclic_pair(w).is_none()
}

/// A product `w = w_k ... w_1` of central words. `blocks[0]` is `w_1`, the
/// rightmost factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CentralBlockForm {
    pub blocks: Vec<Word>,
}

impl CentralBlockForm {
    /// The represented element, `w_k ... w_1` concatenated.
    pub fn product(&self) -> Option<Word> {
        let first = self.blocks.first()?;
        let mut out = Word::identity(first.graph());
        for b in self.blocks.iter().rev() {
            out = out.concat(b).ok()?;
        }
        Some(out)
    }

    /// Whether no generator of block `i` commutes with all of block `i+1`.
    pub fn is_left_greedy(&self) -> bool {
        self.blocks.windows(2).all(|pair| {
            let (lower, upper) = (&pair[0], &pair[1]);
            let g = lower.graph();
            lower
                .support()
                .iter()
                .all(|&x| !upper.support().iter().all(|&y| g.adjacent(x, y)))
        })
    }
}

/// Splits a reduced word into central blocks, taking from the right the
/// longest run of syllables whose generators pairwise commute each time.
/// The word's syllable order is kept as given.
pub fn central_form(w: &Word) -> Result<CentralBlockForm> {
    let w = w.merge_reduce();
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let graph = Arc::clone(w.graph());
    let s = w.syllables();
    let mut blocks = Vec::new();
    let mut end = s.len();
    while end > 0 {
        let mut start = end - 1;
        while start > 0
            && s[start..end]
                .iter()
                .all(|t| graph.adjacent(t.generator, s[start - 1].generator))
        {
            start -= 1;
        }
        blocks.push(Word::from_syllables(&graph, s[start..end].to_vec())?);
        end = start;
    }
    Ok(CentralBlockForm { blocks })
}

/// Starts from [`central_form`] and moves every syllable leftward into the
/// next block while it commutes with that whole block, until nothing moves.
pub fn left_greedy_form(w: &Word) -> Result<CentralBlockForm> {
    let form = central_form(w)?;
    let graph = Arc::clone(w.graph());
    let mut blocks: Vec<Vec<Syllable>> = form.blocks.iter().map(|b| b.syllables().to_vec()).collect();
    loop {
        let mut moved = false;
        for i in (0..blocks.len().saturating_sub(1)).rev() {
            let mut k = 0;
            while k < blocks[i].len() {
                let g = blocks[i][k].generator;
                if blocks[i + 1].iter().all(|t| graph.adjacent(t.generator, g)) {
                    let s = blocks[i].remove(k);
                    blocks[i + 1].push(s);
                    moved = true;
                } else {
                    k += 1;
                }
            }
        }
        blocks.retain(|b| !b.is_empty());
        if !moved {
            break;
        }
    }
    let blocks = blocks
        .into_iter()
        .map(|b| Word::from_syllables(&graph, b))
        .collect::<Result<_>>()?;
    Ok(CentralBlockForm { blocks })
}

fn check_cyclic_input(w: &Word) -> Result<()> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    if !is_cyclically_reduced(w) {
        return Err(Error::NotCyclicallyReduced);
    }
    Ok(())
}

/// Whether a cyclically reduced element lies in a join subgroup: its support
/// spans a join, or lies in the link of a vertex outside it.
pub fn in_join_subgroup(w: &Word) -> Result<bool> {
    check_cyclic_input(w)?;
    let g = w.graph();
    let supp = w.support();
    if supp.len() >= 2 && g.complement_components_within(&supp).len() >= 2 {
        return Ok(true);
    }
    Ok((0..g.len()).any(|u| !supp.contains(&u) && supp.iter().all(|&v| g.adjacent(u, v))))
}

pub fn centralizer_is_cyclic(w: &Word) -> Result<bool> {
    Ok(!in_join_subgroup(w)?)
}

/// Whether every generator's support spans a clique.
pub fn is_enveloped_generating_set(gens: &[Word]) -> bool {
    gens.iter().all(|w| w.reduce().is_central())
}
