//! The reduced-word ping-pong action and clique-product collections.
//!
//! `A(Γ)` acts on its own reduced words by left multiplication, with
//! basepoint the identity and `X_i` the words that can be shuffled to start
//! with a power of `g_i`. Collections of clique products are checked for
//! property PP and certified injective on finite balls.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{find_induced_embedding, SimpleGraph};
use crate::word::{commute, reduced_ball, Syllable, Word};

/// Whether the element `w` lies in `X_i`: some reduced expression of `w`
/// begins with a nonzero power of generator `i`.
pub fn x_set_membership(w: &Word, i: usize) -> bool {
    let r = w.reduce();
    (0..r.syllable_len()).any(|k| r.syllables()[k].generator == i && r.front_available(k))
}

pub fn x_set_membership_named(w: &Word, vertex: &str) -> Result<bool> {
    let i = w.graph().vertex_index(vertex)?;
    Ok(x_set_membership(w, i))
}

/// The first failure of a ping-pong condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    /// 1: adjacent generators preserve each other's sets; 2: non-adjacent
    /// generators push `X_j` into `X_i`; 3: the basepoint lands in `X_i`.
    pub condition: u8,
    pub generator: String,
    pub exponent: i64,
    pub set: Option<String>,
    pub point: Word,
    pub image: Word,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub passed: bool,
    pub depth: usize,
    pub exponent_bound: u32,
    pub points_checked: usize,
    pub violation: Option<AxiomViolation>,
}

/// Tests the three ping-pong conditions for the action in which generator
/// `i` acts by left multiplication with `images[i]`, against the standard
/// sets `X_j`, on every reduced word of at most `depth` syllables and for
/// every `0 < |k| <= exponent_bound`.
pub fn check_pingpong_axioms(images: &[Word], depth: usize, exponent_bound: u32) -> Result<AxiomReport> {
    let Some(first) = images.first() else {
        return Err(Error::InvalidArgument("no generator images".into()));
    };
    let graph = Arc::clone(first.graph());
    if images.len() != graph.len() {
        return Err(Error::DimensionMismatch {
            expected: graph.len(),
            found: images.len(),
        });
    }
    if images.iter().any(|w| !w.same_ambient(first)) {
        return Err(Error::MismatchedAmbient);
    }
    let ball = reduced_ball(&graph, depth, exponent_bound);
    let bound = i64::from(exponent_bound);
    let exps: Vec<i64> = (-bound..=bound).filter(|&k| k != 0).collect();
    let identity = Word::identity(&graph);
    let name = |i: usize| graph.vertex_name(i).to_string();
    let mut report = AxiomReport {
        passed: true,
        depth,
        exponent_bound,
        points_checked: ball.len(),
        violation: None,
    };

    for (i, img) in images.iter().enumerate() {
        for &k in &exps {
            let act = img.pow(k);
            let image = act.mul(&identity)?;
            if !x_set_membership(&image, i) {
                report.passed = false;
                report.violation = Some(AxiomViolation {
                    condition: 3,
                    generator: name(i),
                    exponent: k,
                    set: None,
                    point: identity.clone(),
                    image,
                });
                return Ok(report);
            }
            for x in &ball {
                for j in (0..graph.len()).filter(|&j| j != i) {
                    if !x_set_membership(x, j) {
                        continue;
                    }
                    let (condition, target) = if graph.adjacent(i, j) { (1, j) } else { (2, i) };
                    let image = act.mul(x)?;
                    if !x_set_membership(&image, target) {
                        report.passed = false;
                        report.violation = Some(AxiomViolation {
                            condition,
                            generator: name(i),
                            exponent: k,
                            set: Some(name(j)),
                            point: x.clone(),
                            image,
                        });
                        return Ok(report);
                    }
                }
            }
        }
    }
    Ok(report)
}

/// A product of powers of generators from one clique.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueProduct {
    pub clique: Vec<usize>,
    pub factors: Vec<(usize, BigInt)>,
}

/// A collection of clique products over one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PPCollection {
    graph: Arc<SimpleGraph>,
    products: Vec<CliqueProduct>,
}

#[derive(Deserialize)]
struct CollectionFile {
    graph: SimpleGraph,
    products: Vec<ProductFile>,
}

#[derive(Deserialize)]
struct ProductFile {
    clique: Vec<String>,
    factors: Vec<(String, i64)>,
}

impl PPCollection {
    pub fn new(graph: Arc<SimpleGraph>, products: Vec<CliqueProduct>) -> Result<Self> {
        if products.is_empty() {
            return Err(Error::InvalidArgument("empty collection".into()));
        }
        for p in &products {
            if !graph.is_clique(&p.clique) || p.clique.iter().any(|&v| v >= graph.len()) {
                return Err(Error::InvalidArgument(format!(
                    "clique {:?} does not span a complete subgraph",
                    p.clique
                )));
            }
            for (g, e) in &p.factors {
                if !p.clique.contains(g) {
                    return Err(Error::InvalidArgument(format!(
                        "factor generator `{}` lies outside its clique",
                        graph.vertex_name(*g)
                    )));
                }
                if e.is_zero() {
                    return Err(Error::InvalidArgument("zero exponent in factor".into()));
                }
            }
        }
        Ok(PPCollection { graph, products })
    }

    /// Builds a collection from words, each of which must be central; the
    /// clique is taken to be the word's support.
    pub fn from_words(words: &[Word]) -> Result<Self> {
        let Some(first) = words.first() else {
            return Err(Error::InvalidArgument("empty collection".into()));
        };
        let graph = Arc::clone(first.graph());
        let mut products = Vec::new();
        for w in words {
            if !w.same_ambient(first) {
                return Err(Error::MismatchedAmbient);
            }
            products.push(CliqueProduct {
                clique: w.support(),
                factors: w
                    .syllables()
                    .iter()
                    .map(|s| (s.generator, s.exponent.clone()))
                    .collect(),
            });
        }
        PPCollection::new(graph, products)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: CollectionFile = serde_json::from_str(text)
            .map_err(|e| Error::InvalidArgument(format!("collection JSON: {e}")))?;
        let graph = Arc::new(file.graph);
        let mut products = Vec::new();
        for p in file.products {
            let clique = graph.indices(&p.clique)?;
            let factors = p
                .factors
                .into_iter()
                .map(|(g, e)| Ok((graph.vertex_index(&g)?, BigInt::from(e))))
                .collect::<Result<_>>()?;
            products.push(CliqueProduct { clique, factors });
        }
        PPCollection::new(graph, products)
    }

    pub fn graph(&self) -> &Arc<SimpleGraph> {
        &self.graph
    }

    pub fn len(&self) -> usize {
        self.products.len()
    }

    pub fn is_empty(&self) -> bool {
        self.products.is_empty()
    }

    /// The element `Z_i`, reduced.
    pub fn element(&self, i: usize) -> Word {
        let syl = self.products[i]
            .factors
            .iter()
            .map(|(g, e)| Syllable::new(*g, e.clone()))
            .collect();
        Word::from_syllables(&self.graph, syl)
            .expect("validated on construction")
            .reduce()
    }

    pub fn elements(&self) -> Vec<Word> {
        (0..self.len()).map(|i| self.element(i)).collect()
    }
}

/// Vertex name used for the `i`-th product (0-based) in the graph Λ.
pub fn lambda_vertex_name(i: usize) -> String {
    format!("v{}", i + 1)
}

/// The commutation graph Λ: one vertex per product, joined when the two
/// products commute in `A(Γ)`.
pub fn build_lambda(c: &PPCollection) -> SimpleGraph {
    let z = c.elements();
    let names: Vec<String> = (0..z.len()).map(lambda_vertex_name).collect();
    let mut edges = Vec::new();
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            if commute(&z[i], &z[j]).expect("same ambient") {
                edges.push((i, j));
            }
        }
    }
    SimpleGraph::from_index_edges(names, &edges).expect("valid by construction")
}

/// A realization of Λ as an induced subgraph of Γ, with each `v_i` sent into
/// the support of `Z_i`. Pairs are `(Λ vertex, Γ vertex)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PPEmbedding {
    pub mapping: Vec<(String, String)>,
}

/// Property PP: searches all support choices for an induced embedding.
pub fn has_property_pp(c: &PPCollection) -> Option<PPEmbedding> {
    let lambda = build_lambda(c);
    let candidates: Vec<Vec<usize>> = c.elements().iter().map(Word::support).collect();
    let emb = find_induced_embedding(&lambda, c.graph(), &candidates)?;
    Some(PPEmbedding {
        mapping: emb
            .iter()
            .enumerate()
            .map(|(i, &v)| (lambda_vertex_name(i), c.graph().vertex_name(v).to_string()))
            .collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    pub depth: usize,
    pub words_checked: usize,
    /// A nontrivial word of `A(Λ)` mapping to the identity, if one was found.
    pub kernel_witness: Option<Word>,
    pub verdict: String,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        self.kernel_witness.is_none()
    }
}

/// Substitutes `Z_i` for `v_i` in every nontrivial reduced word of `A(Λ)`
/// with at most `depth` syllables and exponents up to `depth` in absolute
/// value, and looks for one that becomes trivial in `A(Γ)`.
pub fn verify_embedding_at_depth(c: &PPCollection, depth: usize) -> Result<EmbeddingReport> {
    if depth == 0 {
        return Err(Error::InvalidArgument("depth must be at least 1".into()));
    }
    let lambda = Arc::new(build_lambda(c));
    let z = c.elements();
    let exp_bound = u32::try_from(depth).unwrap_or(u32::MAX);
    let ball = reduced_ball(&lambda, depth, exp_bound);
    let mut powers: BTreeMap<(usize, BigInt), Word> = BTreeMap::new();
    let mut checked = 0;
    for w in ball.iter().skip(1) {
        checked += 1;
        let mut image = Word::identity(c.graph());
        for s in w.syllables() {
            let key = (s.generator, s.exponent.clone());
            let p = powers.entry(key).or_insert_with(|| {
                let k: i64 = (&s.exponent).try_into().expect("small exponent");
                z[s.generator].pow(k)
            });
            image = image.concat(p)?;
        }
        if image.reduce().is_empty() {
            return Ok(EmbeddingReport {
                depth,
                words_checked: checked,
                kernel_witness: Some(w.clone()),
                verdict: "kernel element found".into(),
            });
        }
    }
    Ok(EmbeddingReport {
        depth,
        words_checked: checked,
        kernel_witness: None,
        verdict: "no kernel found at depth".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(vs: &[&str], es: &[(&str, &str)]) -> Arc<SimpleGraph> {
        Arc::new(SimpleGraph::new(vs.to_vec(), es.to_vec()).unwrap())
    }

    fn words(g: &Arc<SimpleGraph>, ws: &[&str]) -> Vec<Word> {
        ws.iter().map(|s| Word::parse(g, s).unwrap()).collect()
    }

    #[test]
    fn membership_examples() {
        let free = graph(&["a", "b"], &[]);
        let edge = graph(&["a", "b"], &[("a", "b")]);
        assert!(x_set_membership_named(&words(&free, &["a b"])[0], "a").unwrap());
        assert!(!x_set_membership_named(&words(&free, &["b a"])[0], "a").unwrap());
        assert!(x_set_membership_named(&words(&edge, &["b a"])[0], "a").unwrap());
        assert!(x_set_membership_named(&words(&edge, &["b a"])[0], "q").is_err());
    }

    #[test]
    fn axiom_examples() {
        let free = graph(&["a", "b"], &[]);
        let ok = check_pingpong_axioms(&words(&free, &["a", "b"]), 3, 2).unwrap();
        assert!(ok.passed);
        let swapped = check_pingpong_axioms(&words(&free, &["b", "a"]), 3, 2).unwrap();
        assert_eq!(swapped.violation.unwrap().condition, 3);
        let squares = check_pingpong_axioms(&words(&free, &["a^2", "b^2"]), 3, 2).unwrap();
        assert!(squares.passed);
    }

    #[test]
    fn lambda_and_pp_examples() {
        let edge = graph(&["a", "b"], &[("a", "b")]);
        let free = graph(&["a", "b"], &[]);
        let c = PPCollection::from_words(&words(&edge, &["a", "b"])).unwrap();
        assert_eq!(build_lambda(&c).edges(), vec![(0, 1)]);
        let c = PPCollection::from_words(&words(&free, &["a^2", "b^3"])).unwrap();
        assert_eq!(build_lambda(&c).edge_count(), 0);
        let emb = has_property_pp(&c).unwrap();
        assert_eq!(
            emb.mapping,
            vec![("v1".to_string(), "a".to_string()), ("v2".into(), "b".into())]
        );
        let c = PPCollection::from_words(&words(&edge, &["a b"])).unwrap();
        assert!(has_property_pp(&c).is_some());
    }

    #[test]
    fn depth_certification() {
        let free = graph(&["a", "b"], &[]);
        let c = PPCollection::from_words(&words(&free, &["a", "b"])).unwrap();
        assert!(verify_embedding_at_depth(&c, 3).unwrap().passed());
        let edge = graph(&["a", "b"], &[("a", "b")]);
        let c = PPCollection::from_words(&words(&edge, &["a b", "a b^2"])).unwrap();
        assert_eq!(build_lambda(&c).edge_count(), 1);
        let r = verify_embedding_at_depth(&c, 2).unwrap();
        assert!(r.passed());
        assert_eq!(r.verdict, "no kernel found at depth");
    }

    #[test]
    fn collection_file() {
        let text = r#"{"graph":{"vertices":["a","b"],"edges":[["a","b"]]},
            "products":[{"clique":["a","b"],"factors":[["a",2],["b",-1]]}]}"#;
        let c = PPCollection::from_json(text).unwrap();
        assert_eq!(c.element(0).to_string(), "a^2 b^-1");
        let bad = r#"{"graph":{"vertices":["a","b"],"edges":[]},
            "products":[{"clique":["a","b"],"factors":[["a",1]]}]}"#;
        assert!(PPCollection::from_json(bad).is_err());
    }
}
