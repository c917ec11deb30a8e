//! Whitehead moves of `A(Γ)`: dominated transvections, partial conjugations
//! and graph symmetries, as generator-image maps.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::word::Word;

/// A map on generators, extended to words by substitution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Endomorphism {
    graph: Arc<SimpleGraph>,
    images: Vec<Word>,
}

impl Serialize for Endomorphism {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            images: BTreeMap<&'a str, String>,
        }
        Out {
            images: self
                .images
                .iter()
                .enumerate()
                .map(|(i, w)| (self.graph.vertex_name(i), w.to_string()))
                .collect(),
        }
        .serialize(s)
    }
}

impl Endomorphism {
    pub fn identity(graph: &Arc<SimpleGraph>) -> Self {
        Endomorphism {
            graph: Arc::clone(graph),
            images: (0..graph.len()).map(|i| Word::generator(graph, i, 1)).collect(),
        }
    }

    pub fn from_images(graph: &Arc<SimpleGraph>, images: Vec<Word>) -> Result<Self> {
        if images.len() != graph.len() {
            return Err(Error::DimensionMismatch {
                expected: graph.len(),
                found: images.len(),
            });
        }
        let probe = Word::identity(graph);
        if images.iter().any(|w| !w.same_ambient(&probe)) {
            return Err(Error::MismatchedAmbient);
        }
        Ok(Endomorphism {
            graph: Arc::clone(graph),
            images: images.iter().map(Word::reduce).collect(),
        })
    }

    pub fn graph(&self) -> &Arc<SimpleGraph> {
        &self.graph
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image(&self, generator: usize) -> &Word {
        &self.images[generator]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Endomorphism) -> Result<Endomorphism> {
        let images = other
            .images
            .iter()
            .map(|w| apply_endomorphism(self, w))
            .collect::<Result<Vec<_>>>()?;
        Endomorphism::from_images(&self.graph, images)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, w)| {
            w.syllable_len() == 1 && w.syllables()[0].generator == i && w.syllables()[0].exponent == 1.into()
        })
    }
}

/// Substitutes the images of the generators into `w` and reduces.
pub fn apply_endomorphism(e: &Endomorphism, w: &Word) -> Result<Word> {
    if !w.same_ambient(&Word::identity(&e.graph)) {
        return Err(Error::MismatchedAmbient);
    }
    let mut out = Word::identity(&e.graph);
    for s in w.syllables() {
        let k: i64 = (&s.exponent)
            .try_into()
            .map_err(|_| Error::InvalidArgument("exponent too large to substitute".into()))?;
        out = out.concat(&e.images[s.generator].pow(k))?;
    }
    Ok(out.reduce())
}

/// A Whitehead move, named by vertex identifiers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WhiteheadMove {
    /// `vertex ↦ vertex · by^exponent`; legal when `by` dominates `vertex`.
    Transvection {
        vertex: String,
        by: String,
        #[serde(default = "one")]
        exponent: i64,
    },
    /// `y ↦ by^e · y · by^-e` for every `y` in `component`, which must be a
    /// union of components of `Γ ∖ st(by)`.
    PartialConjugation {
        by: String,
        component: Vec<String>,
        #[serde(default = "one")]
        exponent: i64,
    },
    /// A graph automorphism `vertex ↦ image`, optionally inverting images.
    Permutation {
        mapping: Vec<(String, String)>,
        #[serde(default)]
        invert: Vec<String>,
    },
}

fn one() -> i64 {
    1
}

impl WhiteheadMove {
    /// The move undoing this one.
    pub fn inverse(&self) -> WhiteheadMove {
        match self {
            WhiteheadMove::Transvection { vertex, by, exponent } => WhiteheadMove::Transvection {
                vertex: vertex.clone(),
                by: by.clone(),
                exponent: -exponent,
            },
            WhiteheadMove::PartialConjugation {
                by,
                component,
                exponent,
            } => WhiteheadMove::PartialConjugation {
                by: by.clone(),
                component: component.clone(),
                exponent: -exponent,
            },
            WhiteheadMove::Permutation { mapping, invert } => {
                let forward: BTreeMap<&String, &String> = mapping.iter().map(|(a, b)| (a, b)).collect();
                WhiteheadMove::Permutation {
                    mapping: mapping.iter().map(|(a, b)| (b.clone(), a.clone())).collect(),
                    invert: invert
                        .iter()
                        .filter_map(|v| forward.get(v).map(|t| (*t).clone()))
                        .collect(),
                }
            }
        }
    }
}

fn check_unit(exponent: i64) -> Result<()> {
    if exponent == 1 || exponent == -1 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "Whitehead exponent must be 1 or -1, got {exponent}"
        )))
    }
}

/// Realizes a Whitehead move as an endomorphism, checking legality.
pub fn whitehead_endomorphism(graph: &Arc<SimpleGraph>, mv: &WhiteheadMove) -> Result<Endomorphism> {
    let mut e = Endomorphism::identity(graph);
    match mv {
        WhiteheadMove::Transvection { vertex, by, exponent } => {
            check_unit(*exponent)?;
            let v = graph.vertex_index(vertex)?;
            let w = graph.vertex_index(by)?;
            if v == w || !graph.dominates_index(w, v) {
                return Err(Error::NotDominated {
                    vertex: vertex.clone(),
                    dominator: by.clone(),
                });
            }
            e.images[v] = Word::generator(graph, v, 1).mul(&Word::generator(graph, w, *exponent))?;
        }
        WhiteheadMove::PartialConjugation {
            by,
            component,
            exponent,
        } => {
            check_unit(*exponent)?;
            let x = graph.vertex_index(by)?;
            let mut comp = graph.indices(component)?;
            comp.sort_unstable();
            comp.dedup();
            if comp.is_empty() {
                return Err(Error::InvalidComponent("empty component".into()));
            }
            let star = graph.star(x);
            if let Some(&bad) = comp.iter().find(|v| star.contains(v)) {
                return Err(Error::InvalidComponent(format!(
                    "`{}` lies in the star of `{by}`",
                    graph.vertex_name(bad)
                )));
            }
            let outside: Vec<usize> = (0..graph.len()).filter(|v| !star.contains(v)).collect();
            for c in graph.components_within(&outside) {
                let hit = c.iter().filter(|v| comp.contains(v)).count();
                if hit != 0 && hit != c.len() {
                    return Err(Error::InvalidComponent(format!(
                        "component splits {:?}",
                        graph.names(&c)
                    )));
                }
            }
            let conj = Word::generator(graph, x, *exponent);
            for &y in &comp {
                e.images[y] = conj
                    .concat(&Word::generator(graph, y, 1))?
                    .concat(&conj.inverse())?
                    .reduce();
            }
        }
        WhiteheadMove::Permutation { mapping, invert } => {
            let mut perm = vec![usize::MAX; graph.len()];
            for (a, b) in mapping {
                perm[graph.vertex_index(a)?] = graph.vertex_index(b)?;
            }
            for (i, p) in perm.iter_mut().enumerate() {
                if *p == usize::MAX {
                    *p = i;
                }
            }
            if !graph.is_automorphism(&perm) {
                return Err(Error::NotAutomorphism(format!("{mapping:?}")));
            }
            let inv = graph.indices(invert)?;
            for (i, &p) in perm.iter().enumerate() {
                let sign = if inv.contains(&i) { -1 } else { 1 };
                e.images[i] = Word::generator(graph, p, sign);
            }
        }
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Arc<SimpleGraph> {
        Arc::new(SimpleGraph::new(vec!["a", "b", "c"], vec![("a", "b"), ("b", "c")]).unwrap())
    }

    fn tv(v: &str, w: &str) -> WhiteheadMove {
        WhiteheadMove::Transvection {
            vertex: v.into(),
            by: w.into(),
            exponent: 1,
        }
    }

    #[test]
    fn transvection_legality() {
        let g = path3();
        let e = whitehead_endomorphism(&g, &tv("a", "b")).unwrap();
        assert_eq!(e.image(0).to_string(), "a b");
        assert!(matches!(
            whitehead_endomorphism(&g, &tv("b", "a")),
            Err(Error::NotDominated { .. })
        ));
        let sq = apply_endomorphism(&e, &Word::parse(&g, "a^2").unwrap()).unwrap();
        assert_eq!(sq.to_string(), "a^2 b^2");
    }

    #[test]
    fn partial_conjugation_example() {
        let g = Arc::new(SimpleGraph::edgeless(vec!["a", "b", "c"]).unwrap());
        let mv = WhiteheadMove::PartialConjugation {
            by: "a".into(),
            component: vec!["b".into()],
            exponent: 1,
        };
        let e = whitehead_endomorphism(&g, &mv).unwrap();
        let texts: Vec<String> = e.images().iter().map(|w| w.to_string()).collect();
        assert_eq!(texts, vec!["a", "a b a^-1", "c"]);
        let inv = whitehead_endomorphism(&g, &mv.inverse()).unwrap();
        assert!(inv.compose(&e).unwrap().is_identity());
        let bad = WhiteheadMove::PartialConjugation {
            by: "a".into(),
            component: vec!["a".into()],
            exponent: 1,
        };
        assert!(matches!(
            whitehead_endomorphism(&g, &bad),
            Err(Error::InvalidComponent(_))
        ));
    }

    #[test]
    fn permutation_moves() {
        let g = path3();
        let flip = WhiteheadMove::Permutation {
            mapping: vec![("a".into(), "c".into()), ("c".into(), "a".into())],
            invert: vec!["a".into()],
        };
        let e = whitehead_endomorphism(&g, &flip).unwrap();
        let inv = whitehead_endomorphism(&g, &flip.inverse()).unwrap();
        assert!(inv.compose(&e).unwrap().is_identity());
        let bad = WhiteheadMove::Permutation {
            mapping: vec![("a".into(), "b".into()), ("b".into(), "a".into())],
            invert: vec![],
        };
        assert!(matches!(
            whitehead_endomorphism(&g, &bad),
            Err(Error::NotAutomorphism(_))
        ));
    }

    #[test]
    fn move_json() {
        let mv: WhiteheadMove =
            serde_json::from_str(r#"{"kind":"transvection","vertex":"a","by":"b"}"#).unwrap();
        assert_eq!(mv, tv("a", "b"));
    }
}
