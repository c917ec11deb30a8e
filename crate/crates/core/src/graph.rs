//! Finite simplicial graphs: the defining data of a right-angled Artin group.
//!
//! Vertices are opaque string identifiers kept in input order; every
//! operation that returns vertex lists preserves that order.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default upper bound on the vertex count for clique enumeration.
pub const DEFAULT_CLIQUE_CAP: usize = 20;

/// The clique-enumeration cap, overridable through `RAAG_MAX_VERTICES`.
pub fn clique_cap() -> usize {
    std::env::var("RAAG_MAX_VERTICES")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_CLIQUE_CAP)
}

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphFile", into = "GraphFile")]
pub struct SimpleGraph {
    vertices: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<Vec<bool>>,
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
}

impl TryFrom<GraphFile> for SimpleGraph {
    type Error = Error;
    fn try_from(f: GraphFile) -> Result<Self> {
        SimpleGraph::new(f.vertices, f.edges)
    }
}

impl From<SimpleGraph> for GraphFile {
    fn from(g: SimpleGraph) -> Self {
        let edges = g
            .edges()
            .into_iter()
            .map(|(i, j)| (g.vertices[i].clone(), g.vertices[j].clone()))
            .collect();
        GraphFile {
            vertices: g.vertices,
            edges,
        }
    }
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges()
            .into_iter()
            .map(|(i, j)| format!("{}-{}", self.vertices[i], self.vertices[j]))
            .collect();
        write!(f, "SimpleGraph({:?}; {})", self.vertices, edges.join(" "))
    }
}

/// One clique of a graph, flagged when it is maximal under inclusion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clique {
    pub vertices: Vec<String>,
    pub maximal: bool,
}

/// A partition of the vertex set into two nonempty, completely joined parts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JoinFactors {
    pub left: Vec<String>,
    pub right: Vec<String>,
}

/// An isomorphism, listed as `(source, target)` pairs in source vertex order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphIsoWitness {
    pub mapping: Vec<(String, String)>,
}

impl SimpleGraph {
    pub fn new<S, T>(vertices: Vec<S>, edges: Vec<(T, T)>) -> Result<Self>
    where
        S: Into<String>,
        T: AsRef<str>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(v.clone()));
            }
        }
        let n = vertices.len();
        let mut g = SimpleGraph {
            vertices,
            index,
            adj: vec![vec![false; n]; n],
        };
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let i = g.vertex_index(a)?;
            let j = g.vertex_index(b)?;
            if i == j {
                return Err(Error::SelfLoop(a.to_string()));
            }
            if g.adj[i][j] {
                return Err(Error::DuplicateEdge(a.to_string(), b.to_string()));
            }
            g.adj[i][j] = true;
            g.adj[j][i] = true;
        }
        Ok(g)
    }

    /// Builds a graph from vertex names and edges given by index.
    pub fn from_index_edges<S: Into<String>>(vertices: Vec<S>, edges: &[(usize, usize)]) -> Result<Self> {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let named: Vec<(String, String)> = edges
            .iter()
            .map(|&(i, j)| {
                let name = |k: usize| {
                    vertices
                        .get(k)
                        .cloned()
                        .ok_or_else(|| Error::UnknownVertex(format!("#{k}")))
                };
                Ok((name(i)?, name(j)?))
            })
            .collect::<Result<_>>()?;
        SimpleGraph::new(vertices, named)
    }

    pub fn edgeless<S: Into<String>>(vertices: Vec<S>) -> Result<Self> {
        SimpleGraph::new(vertices, Vec::<(String, String)>::new())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("graph JSON: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serialization cannot fail")
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i][j]
    }

    /// Whether generators `i` and `j` commute in the group: equal or adjacent.
    pub fn commute(&self, i: usize, j: usize) -> bool {
        i == j || self.adj[i][j]
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.adj[i][j]).collect()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].iter().filter(|&&b| b).count()
    }

    /// Edges as index pairs `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.adj[i][j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    pub fn names(&self, indices: &[usize]) -> Vec<String> {
        indices.iter().map(|&i| self.vertices[i].clone()).collect()
    }

    pub fn indices<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<usize>> {
        names.iter().map(|s| self.vertex_index(s.as_ref())).collect()
    }

    pub fn complement(&self) -> SimpleGraph {
        let n = self.len();
        let mut g = self.clone();
        for i in 0..n {
            for j in 0..n {
                g.adj[i][j] = i != j && !self.adj[i][j];
            }
        }
        g
    }

    pub fn induced_subgraph<S: AsRef<str>>(&self, subset: &[S]) -> Result<SimpleGraph> {
        let idx = self.indices(subset)?;
        Ok(self.induced_by_indices(&idx))
    }

    /// Induced subgraph on the given indices, vertices kept in the order given.
    pub fn induced_by_indices(&self, subset: &[usize]) -> SimpleGraph {
        let vertices = self.names(subset);
        let index = vertices.iter().enumerate().map(|(k, v)| (v.clone(), k)).collect();
        let adj = subset
            .iter()
            .map(|&i| subset.iter().map(|&j| self.adj[i][j]).collect())
            .collect();
        SimpleGraph { vertices, index, adj }
    }

    pub fn link(&self, v: usize) -> Vec<usize> {
        self.neighbors(v)
    }

    /// `v` together with its neighbors, in vertex order.
    pub fn star(&self, v: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| j == v || self.adj[v][j]).collect()
    }

    pub fn is_clique(&self, subset: &[usize]) -> bool {
        subset
            .iter()
            .enumerate()
            .all(|(k, &i)| subset[k + 1..].iter().all(|&j| i != j && self.adj[i][j]))
    }

    /// Connected components of the subgraph induced on `subset`, each sorted,
    /// ordered by smallest member.
    pub fn components_within(&self, subset: &[usize]) -> Vec<Vec<usize>> {
        let mut inside = vec![false; self.len()];
        for &i in subset {
            inside[i] = true;
        }
        let mut seen = vec![false; self.len()];
        let mut sorted = subset.to_vec();
        sorted.sort_unstable();
        let mut comps = Vec::new();
        for &start in &sorted {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut comp = Vec::new();
            while let Some(u) = stack.pop() {
                comp.push(u);
                for w in 0..self.len() {
                    if inside[w] && !seen[w] && self.adj[u][w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let all: Vec<usize> = (0..self.len()).collect();
        self.components_within(&all)
    }

    /// All nonempty cliques, each once, in lexicographic order of vertex
    /// indices. Refuses graphs larger than [`clique_cap`].
    pub fn clique_indices(&self) -> Result<Vec<(Vec<usize>, bool)>> {
        let cap = clique_cap();
        if self.len() > cap {
            return Err(Error::TooManyVertices {
                count: self.len(),
                cap,
            });
        }
        let mut out = Vec::new();
        let mut current = Vec::new();
        self.extend_cliques(0, &mut current, &mut out);
        Ok(out
            .into_iter()
            .map(|c| {
                let maximal = (0..self.len()).all(|v| c.contains(&v) || !c.iter().all(|&u| self.adj[u][v]));
                (c, maximal)
            })
            .collect())
    }

    fn extend_cliques(&self, from: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        for v in from..self.len() {
            if current.iter().all(|&u| self.adj[u][v]) {
                current.push(v);
                out.push(current.clone());
                self.extend_cliques(v + 1, current, out);
                current.pop();
            }
        }
    }

    pub fn enumerate_cliques(&self) -> Result<Vec<Clique>> {
        Ok(self
            .clique_indices()?
            .into_iter()
            .map(|(c, maximal)| Clique {
                vertices: self.names(&c),
                maximal,
            })
            .collect())
    }

    /// Size of a largest clique (0 for the empty graph).
    pub fn clique_number(&self) -> usize {
        let mut best = 0;
        let mut current = Vec::new();
        let all: Vec<usize> = (0..self.len()).collect();
        self.grow_clique(&all, &mut current, &mut best);
        best
    }

    fn grow_clique(&self, candidates: &[usize], current: &mut Vec<usize>, best: &mut usize) {
        if current.len() > *best {
            *best = current.len();
        }
        for (k, &v) in candidates.iter().enumerate() {
            if current.len() + candidates.len() - k <= *best {
                return;
            }
            let next: Vec<usize> = candidates[k + 1..]
                .iter()
                .copied()
                .filter(|&u| self.adj[v][u])
                .collect();
            current.push(v);
            self.grow_clique(&next, current, best);
            current.pop();
        }
    }

    /// Join decomposition of the subgraph induced on `subset`, via the
    /// components of its complement. The first part is the smallest
    /// complement component (earliest on ties); the second is the rest.
    pub fn join_split_within(&self, subset: &[usize]) -> Option<(Vec<usize>, Vec<usize>)> {
        let comps = self.complement_components_within(subset);
        if comps.len() < 2 {
            return None;
        }
        let pick = comps
            .iter()
            .enumerate()
            .min_by_key(|(k, c)| (c.len(), *k))
            .map(|(k, _)| k)?;
        let left = comps[pick].clone();
        let mut right: Vec<usize> = comps
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != pick)
            .flat_map(|(_, c)| c.iter().copied())
            .collect();
        right.sort_unstable();
        Some((left, right))
    }

    /// Components of the complement of the subgraph induced on `subset`.
    pub fn complement_components_within(&self, subset: &[usize]) -> Vec<Vec<usize>> {
        let mut sorted = subset.to_vec();
        sorted.sort_unstable();
        let mut seen = vec![false; self.len()];
        let mut comps = Vec::new();
        for &start in &sorted {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut comp = Vec::new();
            while let Some(u) = stack.pop() {
                comp.push(u);
                for &w in &sorted {
                    if !seen[w] && w != u && !self.adj[u][w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn join_factors(&self) -> Option<JoinFactors> {
        let all: Vec<usize> = (0..self.len()).collect();
        self.join_split_within(&all).map(|(l, r)| JoinFactors {
            left: self.names(&l),
            right: self.names(&r),
        })
    }

    /// Whether `w` dominates `v`, i.e. lk(v) ⊆ st(w). Index form.
    pub fn dominates_index(&self, w: usize, v: usize) -> bool {
        (0..self.len()).all(|u| !self.adj[v][u] || u == w || self.adj[w][u])
    }

    pub fn dominates(&self, w: &str, v: &str) -> Result<bool> {
        let wi = self.vertex_index(w)?;
        let vi = self.vertex_index(v)?;
        if wi == vi {
            return Err(Error::InvalidArgument(
                "domination needs two distinct vertices".into(),
            ));
        }
        Ok(self.dominates_index(wi, vi))
    }

    /// Whether the index permutation `perm` preserves adjacency both ways.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        let n = self.len();
        if perm.len() != n {
            return false;
        }
        let mut hit = vec![false; n];
        for &p in perm {
            if p >= n || hit[p] {
                return false;
            }
            hit[p] = true;
        }
        (0..n).all(|i| (0..n).all(|j| self.adj[i][j] == self.adj[perm[i]][perm[j]]))
    }

    /// An index-level isomorphism `self -> other`, if one exists.
    pub fn isomorphism_to(&self, other: &SimpleGraph) -> Option<Vec<usize>> {
        if self.len() != other.len() || self.edge_count() != other.edge_count() {
            return None;
        }
        let (ca, cb) = joint_refinement(self, other);
        let mut sa = ca.clone();
        let mut sb = cb.clone();
        sa.sort_unstable();
        sb.sort_unstable();
        if sa != sb {
            return None;
        }
        let candidates: Vec<Vec<usize>> = (0..self.len())
            .map(|i| (0..other.len()).filter(|&j| cb[j] == ca[i]).collect())
            .collect();
        find_induced_embedding(self, other, &candidates)
    }

    pub fn graph_isomorphic(&self, other: &SimpleGraph) -> Option<GraphIsoWitness> {
        self.isomorphism_to(other).map(|perm| GraphIsoWitness {
            mapping: perm
                .iter()
                .enumerate()
                .map(|(i, &j)| (self.vertices[i].clone(), other.vertices[j].clone()))
                .collect(),
        })
    }

    /// Checks a witness against both graphs.
    pub fn verify_isomorphism(&self, other: &SimpleGraph, witness: &GraphIsoWitness) -> bool {
        if witness.mapping.len() != self.len() || self.len() != other.len() {
            return false;
        }
        let mut perm = vec![usize::MAX; self.len()];
        for (a, b) in &witness.mapping {
            let (Ok(i), Ok(j)) = (self.vertex_index(a), other.vertex_index(b)) else {
                return false;
            };
            perm[i] = j;
        }
        let mut hit = vec![false; other.len()];
        for &p in &perm {
            if p == usize::MAX || hit[p] {
                return false;
            }
            hit[p] = true;
        }
        let n = self.len();
        (0..n).all(|i| (0..n).all(|j| self.adj[i][j] == other.adj[perm[i]][perm[j]]))
    }
}

/// Colour refinement run on the disjoint union of two graphs, so the
/// colours are comparable across them. Starts from degrees.
fn joint_refinement(a: &SimpleGraph, b: &SimpleGraph) -> (Vec<usize>, Vec<usize>) {
    let graphs = [a, b];
    let mut colours: Vec<Vec<usize>> = graphs
        .iter()
        .map(|g| (0..g.len()).map(|i| g.degree(i)).collect())
        .collect();
    loop {
        let mut signatures: Vec<Vec<(usize, Vec<usize>)>> = Vec::new();
        for (g, col) in graphs.iter().zip(&colours) {
            signatures.push(
                (0..g.len())
                    .map(|i| {
                        let mut nb: Vec<usize> = g.neighbors(i).iter().map(|&j| col[j]).collect();
                        nb.sort_unstable();
                        (col[i], nb)
                    })
                    .collect(),
            );
        }
        let mut all: Vec<&(usize, Vec<usize>)> = signatures.iter().flatten().collect();
        all.sort();
        all.dedup();
        let relabel: HashMap<&(usize, Vec<usize>), usize> =
            all.iter().enumerate().map(|(k, s)| (*s, k)).collect();
        let next: Vec<Vec<usize>> = signatures
            .iter()
            .map(|sig| sig.iter().map(|s| relabel[s]).collect())
            .collect();
        let classes = |c: &Vec<Vec<usize>>| {
            let mut v: Vec<usize> = c.iter().flatten().copied().collect();
            v.sort_unstable();
            v.dedup();
            v.len()
        };
        let stable = classes(&next) == classes(&colours);
        colours = next;
        if stable {
            break;
        }
    }
    let b_col = colours.pop().unwrap_or_default();
    let a_col = colours.pop().unwrap_or_default();
    (a_col, b_col)
}

/// Backtracking search for an injection `pattern -> host` that preserves
/// adjacency and non-adjacency, with pattern vertex `i` restricted to
/// `candidates[i]`. Vertices are assigned in index order and candidates
/// tried in the order given, so the result is deterministic.
pub fn find_induced_embedding(
    pattern: &SimpleGraph,
    host: &SimpleGraph,
    candidates: &[Vec<usize>],
) -> Option<Vec<usize>> {
    fn go(
        i: usize,
        pattern: &SimpleGraph,
        host: &SimpleGraph,
        candidates: &[Vec<usize>],
        assigned: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        if i == pattern.len() {
            return true;
        }
        for &c in &candidates[i] {
            if used[c] {
                continue;
            }
            let ok = assigned
                .iter()
                .enumerate()
                .all(|(k, &h)| pattern.adjacent(k, i) == host.adjacent(h, c));
            if !ok {
                continue;
            }
            used[c] = true;
            assigned.push(c);
            if go(i + 1, pattern, host, candidates, assigned, used) {
                return true;
            }
            assigned.pop();
            used[c] = false;
        }
        false
    }
    if candidates.len() != pattern.len() || pattern.len() > host.len() {
        return None;
    }
    let mut assigned = Vec::with_capacity(pattern.len());
    let mut used = vec![false; host.len()];
    go(0, pattern, host, candidates, &mut assigned, &mut used).then_some(assigned)
}
