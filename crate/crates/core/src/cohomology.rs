//! Low-degree cohomology of `A(Γ)`: the cup product `H¹ × H¹ → H²`.
//!
//! Over any field, `H¹` has the vertex duals as basis and `H²` the edge
//! duals, with `v* ∪ w* = ±e*` for an edge `e = {v, w}` and zero otherwise.
//! The algebra is stored by structure constants, so it can be moved to an
//! arbitrary basis and the graph recovered from the invariant data.

use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::linalg::{rank_of_vectors, Matrix};
use crate::scalar::{format_rational, parse_rational, Field};

/// Bilinear alternating cup-product data. `structure[i][j]` is the product
/// of basis vectors `i` and `j` of `H¹`, written in the `H²` basis.
#[derive(Debug, Clone, PartialEq)]
pub struct CupAlgebra<S> {
    dim1: usize,
    dim2: usize,
    structure: Vec<Vec<Vec<S>>>,
}

impl<S: Field> CupAlgebra<S> {
    pub fn new(dim1: usize, dim2: usize, structure: Vec<Vec<Vec<S>>>) -> Result<Self> {
        if structure.len() != dim1 {
            return Err(Error::DimensionMismatch {
                expected: dim1,
                found: structure.len(),
            });
        }
        for row in &structure {
            if row.len() != dim1 {
                return Err(Error::DimensionMismatch {
                    expected: dim1,
                    found: row.len(),
                });
            }
            for v in row {
                if v.len() != dim2 {
                    return Err(Error::DimensionMismatch {
                        expected: dim2,
                        found: v.len(),
                    });
                }
            }
        }
        for (i, row) in structure.iter().enumerate() {
            for j in i..dim1 {
                let alternating = row[j]
                    .iter()
                    .zip(&structure[j][i])
                    .all(|(a, b)| (a.clone() + b.clone()).is_negligible());
                let diagonal_ok = i != j || row[i].iter().all(Field::is_negligible);
                if !alternating || !diagonal_ok {
                    return Err(Error::NotAlternating(i, j));
                }
            }
        }
        Ok(CupAlgebra {
            dim1,
            dim2,
            structure,
        })
    }

    pub fn dim1(&self) -> usize {
        self.dim1
    }

    pub fn dim2(&self) -> usize {
        self.dim2
    }

    pub fn structure(&self) -> &[Vec<Vec<S>>] {
        &self.structure
    }

    /// Cup product of basis vectors `i` and `j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[S] {
        &self.structure[i][j]
    }

    /// Cup product of two arbitrary classes in `H¹`.
    pub fn product(&self, u: &[S], v: &[S]) -> Result<Vec<S>> {
        self.check_len(u)?;
        self.check_len(v)?;
        let mut out = vec![S::zero(); self.dim2];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_negligible() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_negligible() {
                    continue;
                }
                let c = ui.clone() * vj.clone();
                for (o, s) in out.iter_mut().zip(&self.structure[i][j]) {
                    *o = o.clone() + c.clone() * s.clone();
                }
            }
        }
        Ok(out)
    }

    fn check_len(&self, v: &[S]) -> Result<()> {
        if v.len() != self.dim1 {
            return Err(Error::DimensionMismatch {
                expected: self.dim1,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// The same algebra in new bases: the columns of `p` are the new `H¹`
    /// basis and the columns of `q` the new `H²` basis, in old coordinates.
    pub fn change_basis(&self, p: &Matrix<S>, q: &Matrix<S>) -> Result<Self> {
        if p.rows() != self.dim1 || p.cols() != self.dim1 {
            return Err(Error::DimensionMismatch {
                expected: self.dim1,
                found: p.rows().max(p.cols()),
            });
        }
        if q.rows() != self.dim2 || q.cols() != self.dim2 {
            return Err(Error::DimensionMismatch {
                expected: self.dim2,
                found: q.rows().max(q.cols()),
            });
        }
        if self.dim1 > 0 && p.determinant()?.is_negligible() {
            return Err(Error::Singular);
        }
        let q_inv = if self.dim2 > 0 {
            q.inverse()?
        } else {
            Matrix::zeros(0, 0)
        };
        let cols: Vec<Vec<S>> = (0..self.dim1).map(|i| p.column(i)).collect();
        let mut structure = vec![vec![Vec::new(); self.dim1]; self.dim1];
        for i in 0..self.dim1 {
            for j in 0..self.dim1 {
                let old = self.product(&cols[i], &cols[j])?;
                structure[i][j] = if self.dim2 > 0 {
                    q_inv.mul_vec(&old)?
                } else {
                    Vec::new()
                };
            }
        }
        CupAlgebra::new(self.dim1, self.dim2, structure)
    }

    /// The matrix of `w ↦ v ∪ w`, one column per basis vector `w`.
    fn multiplication_matrix(&self, v: &[S]) -> Result<Matrix<S>> {
        let cols = (0..self.dim1)
            .map(|j| {
                let mut e = vec![S::zero(); self.dim1];
                e[j] = S::one();
                self.product(v, &e)
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_columns(self.dim2, &cols)
    }

    /// Whether `(p, q)` carries this algebra onto `other`:
    /// `other(p e_i, p e_j) = q · self(e_i, e_j)` for all `i, j`.
    pub fn maps_to(&self, other: &CupAlgebra<S>, p: &Matrix<S>, q: &Matrix<S>) -> Result<bool> {
        if self.dim1 != other.dim1 || self.dim2 != other.dim2 {
            return Ok(false);
        }
        let cols: Vec<Vec<S>> = (0..self.dim1).map(|i| p.column(i)).collect();
        for i in 0..self.dim1 {
            for j in 0..self.dim1 {
                let lhs = other.product(&cols[i], &cols[j])?;
                let rhs = if self.dim2 > 0 {
                    q.mul_vec(&self.structure[i][j])?
                } else {
                    Vec::new()
                };
                if lhs
                    .iter()
                    .zip(&rhs)
                    .any(|(a, b)| !(a.clone() - b.clone()).is_negligible())
                {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// The cup-product algebra of `A(Γ)`. `H²` basis: edges `(i, j)`, `i < j`,
/// in sorted order; `v_i* ∪ v_j* = +e*` when `i < j`.
pub fn cohomology_of_graph<S: Field>(g: &SimpleGraph) -> CupAlgebra<S> {
    let n = g.len();
    let edges = g.edges();
    let mut structure = vec![vec![vec![S::zero(); edges.len()]; n]; n];
    for (k, &(i, j)) in edges.iter().enumerate() {
        structure[i][j][k] = S::one();
        structure[j][i][k] = -S::one();
    }
    CupAlgebra {
        dim1: n,
        dim2: edges.len(),
        structure,
    }
}

/// A basis of `{v : v ∪ w = 0 for all w}`.
pub fn radical<S: Field>(alg: &CupAlgebra<S>) -> Vec<Vec<S>> {
    let n = alg.dim1;
    if n == 0 {
        return Vec::new();
    }
    let mut rows = Vec::with_capacity(n * alg.dim2);
    for j in 0..n {
        for l in 0..alg.dim2 {
            rows.push((0..n).map(|k| alg.structure[k][j][l].clone()).collect());
        }
    }
    if rows.is_empty() {
        return (0..n)
            .map(|k| {
                let mut e = vec![S::zero(); n];
                e[k] = S::one();
                e
            })
            .collect();
    }
    Matrix::from_rows(rows).expect("rectangular").kernel()
}

/// Rank of `w ↦ v ∪ w`.
pub fn rank_fv<S: Field>(alg: &CupAlgebra<S>, v: &[S]) -> Result<usize> {
    alg.check_len(v)?;
    if alg.dim2 == 0 {
        return Ok(0);
    }
    Ok(alg.multiplication_matrix(v)?.rank())
}

/// Vertex names used for reconstructed graphs.
pub fn basis_vertex_name(i: usize) -> String {
    format!("e{}", i + 1)
}

/// Recovers the graph from an algebra presented in monomial position (the
/// `H¹` basis is a rescaled permutation of vertex duals): basis vectors
/// `i, j` are adjacent when their product is nonzero. Fails when the nonzero
/// products are not independent and spanning, which no monomial basis
/// allows.
pub fn reconstruct_graph<S: Field>(alg: &CupAlgebra<S>) -> Result<SimpleGraph> {
    let n = alg.dim1;
    let mut edges = Vec::new();
    let mut products = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let p = &alg.structure[i][j];
            if p.iter().any(|x| !x.is_negligible()) {
                edges.push((i, j));
                products.push(p.clone());
            }
        }
    }
    if products.len() != alg.dim2 {
        return Err(Error::NotMonomial(format!(
            "{} nonzero basis products for a degree-two space of dimension {}",
            products.len(),
            alg.dim2
        )));
    }
    if rank_of_vectors(alg.dim2, &products)? != products.len() {
        return Err(Error::NotMonomial(
            "nonzero basis products are linearly dependent".into(),
        ));
    }
    let names: Vec<String> = (0..n).map(basis_vertex_name).collect();
    let g = SimpleGraph::from_index_edges(names, &edges)?;
    let isolated = (0..n).filter(|&v| g.degree(v) == 0).count();
    let rad = radical(alg).len();
    if rad != isolated {
        return Err(Error::NotMonomial(format!(
            "radical has dimension {rad} but {isolated} basis vectors multiply trivially"
        )));
    }
    Ok(g)
}

/// Whether `A(Γ1) ≅ A(Γ2)`, decided by graph isomorphism.
pub fn raag_isomorphic(g1: &SimpleGraph, g2: &SimpleGraph) -> bool {
    g1.isomorphism_to(g2).is_some()
}

/// The algebra isomorphism induced by a graph isomorphism given as an index
/// permutation: `(P, Q)` on `H¹` and `H²` for [`cohomology_of_graph`].
pub fn induced_algebra_map<S: Field>(
    g1: &SimpleGraph,
    g2: &SimpleGraph,
    perm: &[usize],
) -> Result<(Matrix<S>, Matrix<S>)> {
    let n = g1.len();
    if perm.len() != n || g2.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: perm.len(),
        });
    }
    let mut p = Matrix::zeros(n, n);
    for (i, &j) in perm.iter().enumerate() {
        p[(j, i)] = S::one();
    }
    let e1 = g1.edges();
    let e2 = g2.edges();
    if e1.len() != e2.len() {
        return Err(Error::DimensionMismatch {
            expected: e1.len(),
            found: e2.len(),
        });
    }
    let mut q = Matrix::zeros(e2.len(), e1.len());
    for (k, &(i, j)) in e1.iter().enumerate() {
        let (a, b) = (perm[i], perm[j]);
        let key = (a.min(b), a.max(b));
        let Some(l) = e2.iter().position(|&e| e == key) else {
            return Err(Error::NotAutomorphism(format!(
                "edge {}-{} has no image",
                g1.vertex_name(i),
                g1.vertex_name(j)
            )));
        };
        q[(l, k)] = if a < b { S::one() } else { -S::one() };
    }
    Ok((p, q))
}

#[derive(Serialize, Deserialize)]
struct AlgebraFile {
    dim1: usize,
    dim2: usize,
    structure: Vec<Vec<Vec<String>>>,
}

impl Serialize for CupAlgebra<BigRational> {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        AlgebraFile {
            dim1: self.dim1,
            dim2: self.dim2,
            structure: self
                .structure
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|v| v.iter().map(format_rational).collect())
                        .collect()
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CupAlgebra<BigRational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let f = AlgebraFile::deserialize(d)?;
        let structure = f
            .structure
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| v.iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        CupAlgebra::new(f.dim1, f.dim2, structure).map_err(D::Error::custom)
    }
}

impl CupAlgebra<BigRational> {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            let msg = e.to_string();
            if msg.contains("not alternating") {
                Error::NotAlternating(0, 0)
            } else {
                Error::InvalidArgument(format!("algebra JSON: {msg}"))
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn path3() -> SimpleGraph {
        SimpleGraph::new(vec!["a", "b", "c"], vec![("a", "b"), ("b", "c")]).unwrap()
    }

    #[test]
    fn small_algebras() {
        let free = SimpleGraph::edgeless(vec!["a", "b"]).unwrap();
        let alg: CupAlgebra<Rational> = cohomology_of_graph(&free);
        assert_eq!(alg.dim2(), 0);
        assert_eq!(radical(&alg).len(), 2);
        let edge = SimpleGraph::new(vec!["a", "b"], vec![("a", "b")]).unwrap();
        let alg: CupAlgebra<Rational> = cohomology_of_graph(&edge);
        assert_eq!(alg.basis_product(0, 1), &[q(1)]);
        assert_eq!(alg.basis_product(1, 0), &[q(-1)]);
        assert!(radical(&alg).is_empty());
    }

    #[test]
    fn ranks_on_path() {
        let alg: CupAlgebra<Rational> = cohomology_of_graph(&path3());
        assert_eq!((alg.dim1(), alg.dim2()), (3, 2));
        assert!(alg.basis_product(0, 2).iter().all(|x| x == &q(0)));
        assert_eq!(rank_fv(&alg, &[q(0), q(1), q(0)]).unwrap(), 2);
        assert_eq!(rank_fv(&alg, &[q(1), q(0), q(0)]).unwrap(), 1);
        assert_eq!(rank_fv(&alg, &[q(0), q(0), q(0)]).unwrap(), 0);
        assert!(rank_fv(&alg, &[q(1)]).is_err());
    }

    #[test]
    fn reconstruct_identity_basis() {
        let alg: CupAlgebra<Rational> = cohomology_of_graph(&path3());
        let g = reconstruct_graph(&alg).unwrap();
        assert!(raag_isomorphic(&g, &path3()));
    }

    #[test]
    fn reconstruct_rejects_general_basis() {
        let alg: CupAlgebra<Rational> = cohomology_of_graph(&path3());
        let p = Matrix::from_rows(vec![
            vec![q(1), q(0), q(1)],
            vec![q(1), q(1), q(0)],
            vec![q(0), q(0), q(1)],
        ])
        .unwrap();
        let moved = alg.change_basis(&p, &Matrix::identity(2)).unwrap();
        assert!(matches!(reconstruct_graph(&moved), Err(Error::NotMonomial(_))));
    }

    #[test]
    fn rejects_non_alternating() {
        let bad = CupAlgebra::new(
            2,
            1,
            vec![vec![vec![q(0)], vec![q(1)]], vec![vec![q(1)], vec![q(0)]]],
        );
        assert_eq!(bad, Err(Error::NotAlternating(0, 1)));
    }

    #[test]
    fn json_round_trip() {
        let alg: CupAlgebra<Rational> = cohomology_of_graph(&path3());
        let text = serde_json::to_string(&alg).unwrap();
        assert_eq!(CupAlgebra::from_json(&text).unwrap(), alg);
    }

    #[test]
    fn float_instance() {
        let alg: CupAlgebra<f64> = cohomology_of_graph(&path3());
        assert_eq!(rank_fv(&alg, &[0.0, 1.0, 0.0]).unwrap(), 2);
        assert_eq!(radical(&alg).len(), 0);
    }
}
