//! Integer lattices in `ℤ^n`: Hermite normal form, intersections and indices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{rank_of_vectors, Matrix};
use crate::scalar::Field;

/// The subgroup of `ℤ^ambient_rank` generated by a list of vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerLattice {
    pub ambient_rank: usize,
    pub generators: Vec<Vec<BigInt>>,
}

/// Index of a sublattice: a positive integer or infinite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeIndex {
    Finite(BigInt),
    Infinite,
}

impl Serialize for LatticeIndex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            LatticeIndex::Finite(n) => s.serialize_str(&n.to_string()),
            LatticeIndex::Infinite => s.serialize_str("infinite"),
        }
    }
}

impl Serialize for IntegerLattice {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out {
            ambient_rank: usize,
            generators: Vec<Vec<serde_json::Value>>,
        }
        Out {
            ambient_rank: self.ambient_rank,
            generators: self
                .generators
                .iter()
                .map(|v| v.iter().map(integer_value).collect())
                .collect(),
        }
        .serialize(s)
    }
}

/// A JSON number when the integer fits in `i64`, otherwise a decimal string.
pub fn integer_value(n: &BigInt) -> serde_json::Value {
    match i64::try_from(n) {
        Ok(x) => x.into(),
        Err(_) => n.to_string().into(),
    }
}

impl IntegerLattice {
    pub fn new(ambient_rank: usize, generators: Vec<Vec<BigInt>>) -> Result<Self> {
        if let Some(v) = generators.iter().find(|v| v.len() != ambient_rank) {
            return Err(Error::DimensionMismatch {
                expected: ambient_rank,
                found: v.len(),
            });
        }
        Ok(IntegerLattice {
            ambient_rank,
            generators,
        })
    }

    pub fn from_i64(ambient_rank: usize, generators: &[&[i64]]) -> Result<Self> {
        IntegerLattice::new(
            ambient_rank,
            generators
                .iter()
                .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    /// A basis in Hermite normal form (rows, pivots positive, entries above
    /// each pivot reduced into `[0, pivot)`).
    pub fn basis(&self) -> Vec<Vec<BigInt>> {
        hermite(self.generators.clone(), self.ambient_rank).0
    }

    pub fn rank(&self) -> usize {
        self.basis().len()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        let basis = self.basis();
        coordinates(&basis, v).is_some_and(|c| c.iter().all(|x| x.is_integer()))
    }

    pub fn contains_lattice(&self, other: &IntegerLattice) -> bool {
        other.generators.iter().all(|v| self.contains(v))
    }
}

/// Row-style Hermite normal form of the rows of `m` (each of length
/// `cols`), together with the unimodular `U` satisfying `U m = [H; 0]`.
/// Returns the nonzero rows `H` and the full `U`.
pub fn hermite(m: Vec<Vec<BigInt>>, cols: usize) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let rows = m.len();
    let mut a = m;
    let mut u: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            (0..rows)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        while let Some(p) = (r..rows)
            .filter(|&i| !a[i][c].is_zero())
            .min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()))
        {
            a.swap(r, p);
            u.swap(r, p);
            let mut done = true;
            for i in r + 1..rows {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                sub_row(&mut a, i, r, &q);
                sub_row(&mut u, i, r, &q);
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            for x in a[r].iter_mut().chain(u[r].iter_mut()) {
                *x = -x.clone();
            }
        }
        for i in 0..r {
            let q = a[i][c].div_floor(&a[r][c]);
            if !q.is_zero() {
                sub_row(&mut a, i, r, &q);
                sub_row(&mut u, i, r, &q);
            }
        }
        r += 1;
    }
    a.truncate(r);
    (a, u)
}

fn sub_row(m: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    let src = m[source].clone();
    for (t, s) in m[target].iter_mut().zip(src) {
        *t -= q * s;
    }
}

fn to_rational(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(BigRational::from_bigint).collect()
}

/// Rational coordinates of `v` in an independent list `basis`, if `v` lies
/// in its span.
fn coordinates(basis: &[Vec<BigInt>], v: &[BigInt]) -> Option<Vec<BigRational>> {
    let n = v.len();
    if basis.is_empty() {
        return v.iter().all(Zero::is_zero).then(Vec::new);
    }
    let mut cols: Vec<Vec<BigRational>> = basis.iter().map(|b| to_rational(b)).collect();
    cols.push(to_rational(v));
    let aug = Matrix::from_columns(n, &cols).ok()?;
    let (red, pivots) = aug.rref();
    let k = basis.len();
    if pivots.contains(&k) {
        return None;
    }
    let mut out = vec![BigRational::zero(); k];
    for (row, &p) in pivots.iter().enumerate() {
        out[p] = red[(row, k)].clone();
    }
    Some(out)
}

/// The intersection of two lattices in the same ambient space.
pub fn lattice_meet(l1: &IntegerLattice, l2: &IntegerLattice) -> Result<IntegerLattice> {
    if l1.ambient_rank != l2.ambient_rank {
        return Err(Error::DimensionMismatch {
            expected: l1.ambient_rank,
            found: l2.ambient_rank,
        });
    }
    let b1 = l1.basis();
    let b2 = l2.basis();
    let stacked: Vec<Vec<BigInt>> = b1.iter().chain(b2.iter()).cloned().collect();
    let (h, u) = hermite(stacked, l1.ambient_rank);
    let mut gens = Vec::new();
    for row in u.iter().skip(h.len()) {
        let mut v = vec![BigInt::zero(); l1.ambient_rank];
        for (coef, b) in row.iter().zip(&b1) {
            for (x, y) in v.iter_mut().zip(b) {
                *x += coef * y;
            }
        }
        gens.push(v);
    }
    let basis = hermite(gens, l1.ambient_rank).0;
    IntegerLattice::new(l1.ambient_rank, basis)
}

/// `[sup : sub]`, infinite when the ranks differ.
pub fn lattice_index(sub: &IntegerLattice, sup: &IntegerLattice) -> Result<LatticeIndex> {
    if sub.ambient_rank != sup.ambient_rank {
        return Err(Error::DimensionMismatch {
            expected: sup.ambient_rank,
            found: sub.ambient_rank,
        });
    }
    let sup_basis = sup.basis();
    let sub_basis = sub.basis();
    let mut coords = Vec::with_capacity(sub_basis.len());
    for v in &sub_basis {
        match coordinates(&sup_basis, v) {
            Some(c) if c.iter().all(|x| x.is_integer()) => coords.push(c),
            _ => return Err(Error::NotContained),
        }
    }
    if sub_basis.len() < sup_basis.len() {
        return Ok(LatticeIndex::Infinite);
    }
    if sup_basis.is_empty() {
        return Ok(LatticeIndex::Finite(BigInt::one()));
    }
    let det = Matrix::from_rows(coords)?.determinant()?;
    Ok(LatticeIndex::Finite(det.to_integer().abs()))
}

/// Whether the vectors are linearly independent over `ℚ`, i.e. the
/// commuting collection they encode has no relation.
pub fn irredundancy_check(vectors: &[Vec<BigInt>]) -> bool {
    let Some(first) = vectors.first() else {
        return true;
    };
    let n = first.len();
    if vectors.iter().any(|v| v.len() != n) {
        return false;
    }
    let rat: Vec<Vec<BigRational>> = vectors.iter().map(|v| to_rational(v)).collect();
    rank_of_vectors(n, &rat)
        .map(|r| r == vectors.len())
        .unwrap_or(false)
}
