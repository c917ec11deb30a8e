//! Isometries of the hyperbolic plane as Möbius maps `z ↦ (az + b)/(cz + d)`
//! with `ad - bc = 1`, acting on the boundary circle `ℝ ∪ {∞}`.
//!
//! Fixed points are quadratic numbers `p + q√D` compared exactly. Ping-pong
//! certificates assign open boundary arcs to each map and check, by
//! evaluating endpoints, that every nonzero power of every generator sends
//! the other generators' arcs into its own.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::scalar::{parse_rational, OrderedField};
use crate::Rational;

fn sign<S: OrderedField>(x: &S) -> Ordering {
    if x.is_negligible() {
        Ordering::Equal
    } else if *x > S::zero() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

/// Sign of `x + y√d`, `d ≥ 0`.
fn sign2<S: OrderedField>(x: &S, y: &S, d: &S) -> Ordering {
    let sx = sign(x);
    let sy = if d.is_negligible() {
        Ordering::Equal
    } else {
        sign(y)
    };
    if sy == Ordering::Equal {
        return sx;
    }
    if sx == Ordering::Equal || sx == sy {
        return sy;
    }
    match sign(&(x.clone() * x.clone() - y.clone() * y.clone() * d.clone())) {
        Ordering::Greater => sx,
        Ordering::Less => sy,
        Ordering::Equal => Ordering::Equal,
    }
}

/// Sign of `x + u√m + v√n`.
fn sign3<S: OrderedField>(x: &S, u: &S, m: &S, v: &S, n: &S) -> Ordering {
    let two = S::one() + S::one();
    let su = if m.is_negligible() {
        Ordering::Equal
    } else {
        sign(u)
    };
    let sv = if n.is_negligible() {
        Ordering::Equal
    } else {
        sign(v)
    };
    let st = match (su, sv) {
        (Ordering::Equal, s) | (s, Ordering::Equal) => s,
        (a, b) if a == b => a,
        _ => match sign(&(u.clone() * u.clone() * m.clone() - v.clone() * v.clone() * n.clone())) {
            Ordering::Greater => su,
            Ordering::Less => sv,
            Ordering::Equal => Ordering::Equal,
        },
    };
    let sx = sign(x);
    if st == Ordering::Equal {
        return sx;
    }
    if sx == Ordering::Equal || sx == st {
        return st;
    }
    let rest = x.clone() * x.clone() - u.clone() * u.clone() * m.clone() - v.clone() * v.clone() * n.clone();
    let cross = -(two * u.clone() * v.clone());
    match sign2(&rest, &cross, &(m.clone() * n.clone())) {
        Ordering::Greater => sx,
        Ordering::Less => st,
        Ordering::Equal => Ordering::Equal,
    }
}

/// A real number `p + q√d` with `d ≥ 0`; `q = 0` for rational values.
#[derive(Debug, Clone, PartialEq)]
pub struct Quadratic<S> {
    pub p: S,
    pub q: S,
    pub d: S,
}

impl<S: OrderedField> Quadratic<S> {
    pub fn rational(p: S) -> Self {
        Quadratic {
            p,
            q: S::zero(),
            d: S::zero(),
        }
    }

    /// `p + q√d`, collapsed to a rational when `d` is a square.
    pub fn new(p: S, q: S, d: S) -> Self {
        if q.is_negligible() || d.is_negligible() {
            return Quadratic::rational(p);
        }
        match d.try_sqrt() {
            Some(r) if S::EXACT => Quadratic::rational(p + q * r),
            _ => Quadratic { p, q, d },
        }
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_negligible() || self.d.is_negligible()
    }

    pub fn compare(&self, other: &Self) -> Ordering {
        let x = self.p.clone() - other.p.clone();
        if self.is_rational() || other.is_rational() || self.d == other.d {
            let (y, d) = if self.is_rational() && other.is_rational() {
                (S::zero(), S::zero())
            } else if other.is_rational() {
                (self.q.clone(), self.d.clone())
            } else if self.is_rational() {
                (-other.q.clone(), other.d.clone())
            } else {
                (self.q.clone() - other.q.clone(), self.d.clone())
            };
            return sign2(&x, &y, &d);
        }
        sign3(&x, &self.q, &self.d, &(-other.q.clone()), &other.d)
    }

    /// Rational lower and upper bounds within roughly `2^-steps` of the
    /// value.
    fn bounds(&self, steps: u32) -> (S, S) {
        if self.is_rational() {
            return (self.p.clone(), self.p.clone());
        }
        let two = S::one() + S::one();
        let mut lo = S::zero();
        let mut hi = if self.d > S::one() {
            self.d.clone()
        } else {
            S::one()
        };
        for _ in 0..steps {
            let mid = (lo.clone() + hi.clone()) / two.clone();
            if mid.clone() * mid.clone() <= self.d {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let a = self.p.clone() + self.q.clone() * lo;
        let b = self.p.clone() + self.q.clone() * hi;
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }
}

impl<S: OrderedField> fmt::Display for Quadratic<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", self.p)
        } else if self.p.is_negligible() {
            write!(f, "{}*sqrt({})", self.q, self.d)
        } else if self.q < S::zero() {
            write!(f, "{} - {}*sqrt({})", self.p, -self.q.clone(), self.d)
        } else {
            write!(f, "{} + {}*sqrt({})", self.p, self.q, self.d)
        }
    }
}

/// A point of the boundary circle `ℝ ∪ {∞}`.
#[derive(Debug, Clone, PartialEq)]
pub enum Point<S> {
    Infinity,
    Finite(Quadratic<S>),
}

impl<S: OrderedField> Point<S> {
    pub fn rational(x: S) -> Self {
        Point::Finite(Quadratic::rational(x))
    }

    pub fn same(&self, other: &Self) -> bool {
        match (self, other) {
            (Point::Infinity, Point::Infinity) => true,
            (Point::Finite(a), Point::Finite(b)) => a.compare(b) == Ordering::Equal,
            _ => false,
        }
    }

    fn less(&self, other: &Self) -> bool {
        match (self, other) {
            (Point::Finite(a), Point::Finite(b)) => a.compare(b) == Ordering::Less,
            (Point::Finite(_), Point::Infinity) => true,
            _ => false,
        }
    }

    /// Circle order starting from `-∞`: finite points ascending, then `∞`.
    fn circle_cmp(&self, other: &Self) -> Ordering {
        if self.same(other) {
            Ordering::Equal
        } else if self.less(other) {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl<S: OrderedField> fmt::Display for Point<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Infinity => write!(f, "infinity"),
            Point::Finite(q) => write!(f, "{q}"),
        }
    }
}

impl<S: OrderedField> Serialize for Point<S> {
    fn serialize<Z: Serializer>(&self, s: Z) -> std::result::Result<Z::Ok, Z::Error> {
        s.collect_str(self)
    }
}

/// Whether `x` lies in the open arc running from `a` to `b` in the
/// positive direction (increasing, wrapping through `∞`).
fn between<S: OrderedField>(a: &Point<S>, x: &Point<S>, b: &Point<S>) -> bool {
    if x.same(a) || x.same(b) {
        return false;
    }
    if a.same(b) {
        return true;
    }
    match (a, b) {
        (Point::Infinity, _) => x.less(b),
        (_, Point::Infinity) => a.less(x) && !matches!(x, Point::Infinity),
        _ if a.less(b) => a.less(x) && x.less(b),
        _ => a.less(x) || x.less(b) || matches!(x, Point::Infinity),
    }
}

/// An open arc of the boundary circle from `start` to `end`, traversed in
/// the positive direction. `(1, -1)` is the arc through `∞`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = ""))]
pub struct BoundaryInterval<S: OrderedField> {
    pub start: Point<S>,
    pub end: Point<S>,
}

impl<S: OrderedField> BoundaryInterval<S> {
    /// Equal endpoints would describe the circle minus a point.
    pub fn new(start: Point<S>, end: Point<S>) -> Result<Self> {
        if start.same(&end) {
            return Err(Error::CoveringIntervals);
        }
        Ok(BoundaryInterval { start, end })
    }

    pub fn contains_point(&self, x: &Point<S>) -> bool {
        between(&self.start, x, &self.end)
    }

    pub fn contains(&self, inner: &BoundaryInterval<S>) -> bool {
        let (s1, e1, s2, e2) = (&inner.start, &inner.end, &self.start, &self.end);
        let start_ok = s1.same(s2) || between(s2, s1, e2);
        let end_ok = e1.same(e2) || between(s2, e1, e2);
        let order_ok = s1.same(s2) || e1.same(e2) || between(s1, e1, e2);
        start_ok && end_ok && order_ok
    }

    pub fn disjoint_from(&self, other: &BoundaryInterval<S>) -> bool {
        !self.start.same(&other.start)
            && !self.contains_point(&other.start)
            && !other.contains_point(&self.start)
    }

    /// Orientation-preserving maps send arcs to the arcs between the
    /// endpoint images.
    pub fn image(&self, m: &MobiusMap<S>) -> BoundaryInterval<S> {
        BoundaryInterval {
            start: m.apply(&self.start),
            end: m.apply(&self.end),
        }
    }
}

impl<S: OrderedField> fmt::Display for BoundaryInterval<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.start, self.end)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MapKind {
    Hyperbolic,
    Parabolic,
    Elliptic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FixedRole {
    Attracting,
    Repelling,
    Parabolic,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = ""))]
pub struct FixedPoint<S: OrderedField> {
    pub point: Point<S>,
    pub role: FixedRole,
}

/// `z ↦ (az + b)/(cz + d)` with `ad - bc = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct MobiusMap<S> {
    a: S,
    b: S,
    c: S,
    d: S,
}

impl<S: OrderedField> Serialize for MobiusMap<S> {
    fn serialize<Z: Serializer>(&self, s: Z) -> std::result::Result<Z::Ok, Z::Error> {
        let rows = [
            [self.a.to_string(), self.b.to_string()],
            [self.c.to_string(), self.d.to_string()],
        ];
        rows.serialize(s)
    }
}

impl<S: OrderedField> MobiusMap<S> {
    pub fn new(a: S, b: S, c: S, d: S) -> Result<Self> {
        let det = a.clone() * d.clone() - b.clone() * c.clone();
        if !(det - S::one()).is_negligible() {
            return Err(Error::DeterminantNotOne);
        }
        Ok(MobiusMap { a, b, c, d })
    }

    pub fn from_i64(m: [[i64; 2]; 2]) -> Result<Self> {
        MobiusMap::new(
            S::from_i64(m[0][0]),
            S::from_i64(m[0][1]),
            S::from_i64(m[1][0]),
            S::from_i64(m[1][1]),
        )
    }

    pub fn identity() -> Self {
        MobiusMap {
            a: S::one(),
            b: S::zero(),
            c: S::zero(),
            d: S::one(),
        }
    }

    pub fn entries(&self) -> [[&S; 2]; 2] {
        [[&self.a, &self.b], [&self.c, &self.d]]
    }

    pub fn trace(&self) -> S {
        self.a.clone() + self.d.clone()
    }

    /// Matrix product; as maps, `self ∘ other`.
    pub fn compose(&self, other: &MobiusMap<S>) -> MobiusMap<S> {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let (e, f, g, h) = (&other.a, &other.b, &other.c, &other.d);
        MobiusMap {
            a: a.clone() * e.clone() + b.clone() * g.clone(),
            b: a.clone() * f.clone() + b.clone() * h.clone(),
            c: c.clone() * e.clone() + d.clone() * g.clone(),
            d: c.clone() * f.clone() + d.clone() * h.clone(),
        }
    }

    pub fn inverse(&self) -> MobiusMap<S> {
        MobiusMap {
            a: self.d.clone(),
            b: -self.b.clone(),
            c: -self.c.clone(),
            d: self.a.clone(),
        }
    }

    pub fn pow(&self, n: i64) -> MobiusMap<S> {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = MobiusMap::identity();
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&sq);
            }
            sq = sq.compose(&sq);
            k >>= 1;
        }
        acc
    }

    /// `±I`, the identity of `PSL₂`.
    pub fn is_identity(&self) -> bool {
        self.b.is_negligible() && self.c.is_negligible() && (self.a.clone() - self.d.clone()).is_negligible()
    }

    pub fn apply(&self, z: &Point<S>) -> Point<S> {
        match z {
            Point::Infinity => {
                if self.c.is_negligible() {
                    Point::Infinity
                } else {
                    Point::rational(self.a.clone() / self.c.clone())
                }
            }
            Point::Finite(x) => {
                let num_p = self.a.clone() * x.p.clone() + self.b.clone();
                let num_q = self.a.clone() * x.q.clone();
                let den_p = self.c.clone() * x.p.clone() + self.d.clone();
                let den_q = self.c.clone() * x.q.clone();
                let norm = den_p.clone() * den_p.clone() - den_q.clone() * den_q.clone() * x.d.clone();
                if norm.is_negligible() {
                    return Point::Infinity;
                }
                let p = (num_p.clone() * den_p.clone() - num_q.clone() * den_q.clone() * x.d.clone())
                    / norm.clone();
                let q = (num_q * den_p - num_p * den_q) / norm;
                Point::Finite(Quadratic::new(p, q, x.d.clone()))
            }
        }
    }

    /// By `|trace|` against 2.
    pub fn classify(&self) -> Result<MapKind> {
        if self.is_identity() {
            return Err(Error::IdentityMap);
        }
        let t = self.trace().abs_value();
        let two = S::one() + S::one();
        Ok(match sign(&(t - two)) {
            Ordering::Greater => MapKind::Hyperbolic,
            Ordering::Equal => MapKind::Parabolic,
            Ordering::Less => MapKind::Elliptic,
        })
    }

    /// Roots of `cz² + (d - a)z - b = 0`, with `∞` when `c = 0`. Hyperbolic
    /// maps list the attracting point first.
    pub fn fixed_points(&self) -> Result<Vec<FixedPoint<S>>> {
        let kind = self.classify()?;
        let two = S::one() + S::one();
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        match kind {
            MapKind::Elliptic => Err(Error::Elliptic),
            MapKind::Parabolic => {
                let point = if c.is_negligible() {
                    Point::Infinity
                } else {
                    Point::rational((a.clone() - d.clone()) / (two * c.clone()))
                };
                Ok(vec![FixedPoint {
                    point,
                    role: FixedRole::Parabolic,
                }])
            }
            MapKind::Hyperbolic if c.is_negligible() => {
                let finite = Point::rational(b.clone() / (d.clone() - a.clone()));
                let infinity_attracts = a.clone() * a.clone() > S::one();
                let (att, rep) = if infinity_attracts {
                    (Point::Infinity, finite)
                } else {
                    (finite, Point::Infinity)
                };
                Ok(vec![
                    FixedPoint {
                        point: att,
                        role: FixedRole::Attracting,
                    },
                    FixedPoint {
                        point: rep,
                        role: FixedRole::Repelling,
                    },
                ])
            }
            MapKind::Hyperbolic => {
                let t = self.trace();
                let disc = t.clone() * t.clone() - two.clone() * two.clone();
                let p = (a.clone() - d.clone()) / (two.clone() * c.clone());
                let q = S::one() / (two * c.clone());
                let plus = Point::Finite(Quadratic::new(p.clone(), q.clone(), disc.clone()));
                let minus = Point::Finite(Quadratic::new(p, -q, disc));
                let (att, rep) = if t > S::zero() {
                    (plus, minus)
                } else {
                    (minus, plus)
                };
                Ok(vec![
                    FixedPoint {
                        point: att,
                        role: FixedRole::Attracting,
                    },
                    FixedPoint {
                        point: rep,
                        role: FixedRole::Repelling,
                    },
                ])
            }
        }
    }
}

impl<S: OrderedField> fmt::Display for MobiusMap<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

fn rational_entry(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => match n.as_i64() {
            Some(k) => Ok(Rational::from_integer(k.into())),
            None => Err(Error::ParseRational(n.to_string())),
        },
        other => Err(Error::ParseRational(other.to_string())),
    }
}

/// Parses `[["a","b"],["c","d"]]`; entries are `"p/q"` strings or integers.
pub fn parse_matrix(v: &Value) -> Result<MobiusMap<Rational>> {
    let bad = || Error::InvalidArgument(format!("expected a 2x2 matrix, got {v}"));
    let rows = v.as_array().filter(|r| r.len() == 2).ok_or_else(bad)?;
    let mut e = Vec::with_capacity(4);
    for row in rows {
        let row = row.as_array().filter(|r| r.len() == 2).ok_or_else(bad)?;
        for x in row {
            e.push(rational_entry(x)?);
        }
    }
    let mut it = e.into_iter();
    let mut next = || it.next().expect("four entries");
    MobiusMap::new(next(), next(), next(), next())
}

/// Parses one matrix or a list of matrices.
pub fn parse_maps(v: &Value) -> Result<Vec<MobiusMap<Rational>>> {
    if parse_matrix(v).is_ok() {
        return Ok(vec![parse_matrix(v)?]);
    }
    match v {
        Value::Array(items) => items.iter().map(parse_matrix).collect(),
        _ => Err(Error::InvalidArgument(
            "expected a matrix or a list of matrices".into(),
        )),
    }
}

/// Parses `"p/q"`, an integer, or `"infinity"`.
pub fn parse_point(v: &Value) -> Result<Point<Rational>> {
    match v {
        Value::String(s) if matches!(s.trim(), "inf" | "infinity" | "∞") => Ok(Point::Infinity),
        other => {
            Ok(Point::rational(rational_entry(other).map_err(|_| {
                Error::InvalidInterval(format!("bad endpoint {other}"))
            })?))
        }
    }
}

/// Parses `[[start, end], ...]` per map: a list of arc lists.
pub fn parse_interval_sets(v: &Value) -> Result<Vec<Vec<BoundaryInterval<Rational>>>> {
    let bad = |what: &str| Error::InvalidInterval(what.to_string());
    let sets = v
        .as_array()
        .ok_or_else(|| bad("expected a list of interval sets"))?;
    sets.iter()
        .map(|set| {
            let arcs = set
                .as_array()
                .ok_or_else(|| bad("expected a list of intervals"))?;
            arcs.iter()
                .map(|arc| {
                    let ends = arc
                        .as_array()
                        .filter(|e| e.len() == 2)
                        .ok_or_else(|| bad("an interval is a pair of endpoints"))?;
                    BoundaryInterval::new(parse_point(&ends[0])?, parse_point(&ends[1])?)
                })
                .collect()
        })
        .collect()
}

/// A pair of maps sharing a fixed point.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = ""))]
pub struct SharedFixedPoint<S: OrderedField> {
    pub first: usize,
    pub second: usize,
    pub point: Point<S>,
    /// Both maps are parabolic, so they lie in a common parabolic
    /// stabilizer.
    pub common_parabolic: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = ""))]
pub struct IrredundancyReport<S: OrderedField> {
    pub irredundant: bool,
    pub shared: Vec<SharedFixedPoint<S>>,
}

/// Fixed sets must be pairwise disjoint, except that two parabolics may
/// share their fixed point.
pub fn irredundancy_fixed_points<S: OrderedField>(maps: &[MobiusMap<S>]) -> Result<IrredundancyReport<S>> {
    let fixed = maps
        .iter()
        .map(MobiusMap::fixed_points)
        .collect::<Result<Vec<_>>>()?;
    let mut shared = Vec::new();
    let mut irredundant = true;
    for i in 0..maps.len() {
        for j in i + 1..maps.len() {
            for f in &fixed[i] {
                if let Some(g) = fixed[j].iter().find(|g| g.point.same(&f.point)) {
                    let common_parabolic = f.role == FixedRole::Parabolic && g.role == FixedRole::Parabolic;
                    irredundant &= common_parabolic;
                    shared.push(SharedFixedPoint {
                        first: i,
                        second: j,
                        point: f.point.clone(),
                        common_parabolic,
                    });
                }
            }
        }
    }
    Ok(IrredundancyReport { irredundant, shared })
}

/// The image of one arc of another generator.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = ""))]
pub struct ArcImage<S: OrderedField> {
    pub source_map: usize,
    pub source: BoundaryInterval<S>,
    pub image: BoundaryInterval<S>,
}

/// One verified inclusion: `g = m_map^(sign·power)` satisfies
/// `g(target) ⊆ target ⊆ U_map` and sends every arc of every other
/// generator into `target`, so all positive powers of `g` do too.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = ""))]
pub struct CertificateStep<S: OrderedField> {
    pub map: usize,
    pub sign: i8,
    pub target: BoundaryInterval<S>,
    pub target_image: BoundaryInterval<S>,
    pub images: Vec<ArcImage<S>>,
}

/// Ping-pong data proving that the `power`-th powers of the maps freely
/// generate a free group.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = ""))]
pub struct Certificate<S: OrderedField> {
    pub power: u64,
    pub maps: Vec<MobiusMap<S>>,
    pub intervals: Vec<Vec<BoundaryInterval<S>>>,
    pub steps: Vec<CertificateStep<S>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = ""))]
pub struct CertificateFailure<S: OrderedField> {
    pub map: usize,
    pub sign: i8,
    /// Images of the other generators' arcs, with whether each lands in
    /// the map's own arcs.
    pub images: Vec<(ArcImage<S>, bool)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = ""))]
pub struct PingPongOutcome<S: OrderedField> {
    pub certified: bool,
    pub power: u64,
    pub certificate: Option<Certificate<S>>,
    pub failure: Option<CertificateFailure<S>>,
}

fn validate<S: OrderedField>(maps: &[MobiusMap<S>], intervals: &[Vec<BoundaryInterval<S>>]) -> Result<()> {
    if maps.is_empty() {
        return Err(Error::NoMaps);
    }
    if intervals.len() != maps.len() {
        return Err(Error::IntervalCountMismatch {
            maps: maps.len(),
            sets: intervals.len(),
        });
    }
    for m in maps {
        if m.classify()? == MapKind::Elliptic {
            return Err(Error::Elliptic);
        }
    }
    if intervals.iter().any(Vec::is_empty) {
        return Err(Error::InvalidInterval(
            "every map needs at least one interval".into(),
        ));
    }
    let all: Vec<(usize, &BoundaryInterval<S>)> = intervals
        .iter()
        .enumerate()
        .flat_map(|(i, set)| set.iter().map(move |arc| (i, arc)))
        .collect();
    for (k, (i, x)) in all.iter().enumerate() {
        for (j, y) in &all[k + 1..] {
            if !x.disjoint_from(y) {
                return Err(Error::OverlappingIntervals(format!(
                    "{x} of map {i} meets {y} of map {j}"
                )));
            }
        }
    }
    Ok(())
}

/// Candidate invariant arcs inside `set`: each arc, cut at the map's fixed
/// points, and every contiguous run of the pieces.
fn candidate_targets<S: OrderedField>(
    set: &[BoundaryInterval<S>],
    fixed: &[FixedPoint<S>],
) -> Vec<BoundaryInterval<S>> {
    let mut out = Vec::new();
    for arc in set {
        let mut cuts: Vec<&Point<S>> = fixed
            .iter()
            .map(|f| &f.point)
            .filter(|p| arc.contains_point(p))
            .collect();
        cuts.sort_by(|x, y| {
            if x.same(y) {
                Ordering::Equal
            } else if between(&arc.start, x, y) {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        });
        let mut marks = vec![arc.start.clone()];
        marks.extend(cuts.into_iter().cloned());
        marks.push(arc.end.clone());
        for s in 0..marks.len() {
            for e in s + 1..marks.len() {
                if let Ok(t) = BoundaryInterval::new(marks[s].clone(), marks[e].clone()) {
                    out.push(t);
                }
            }
        }
    }
    out
}

/// Checks the ping-pong inclusions for the `n`-th powers with the given
/// arcs: for each map and sign, some arc `T` of the map's own set with
/// `g(T) ⊆ T` absorbs the images of all other arcs.
pub fn pingpong_certificate<S: OrderedField>(
    maps: &[MobiusMap<S>],
    intervals: &[Vec<BoundaryInterval<S>>],
    n: u64,
) -> Result<PingPongOutcome<S>> {
    validate(maps, intervals)?;
    if n == 0 {
        return Err(Error::InvalidArgument("power must be positive".into()));
    }
    let power = i64::try_from(n).map_err(|_| Error::InvalidArgument("power too large".into()))?;
    let mut steps = Vec::new();
    if maps.len() > 1 {
        for (i, m) in maps.iter().enumerate() {
            let fixed = m.fixed_points()?;
            let targets = candidate_targets(&intervals[i], &fixed);
            for sign in [1i8, -1] {
                let g = m.pow(power * i64::from(sign));
                let images: Vec<ArcImage<S>> = intervals
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .flat_map(|(j, set)| {
                        let g = &g;
                        set.iter().map(move |arc| ArcImage {
                            source_map: j,
                            source: arc.clone(),
                            image: arc.image(g),
                        })
                    })
                    .collect();
                let found = targets
                    .iter()
                    .find(|t| t.contains(&t.image(&g)) && images.iter().all(|im| t.contains(&im.image)));
                match found {
                    Some(t) => steps.push(CertificateStep {
                        map: i,
                        sign,
                        target: t.clone(),
                        target_image: t.image(&g),
                        images,
                    }),
                    None => {
                        let images = images
                            .into_iter()
                            .map(|im| {
                                let inside = intervals[i].iter().any(|u| u.contains(&im.image));
                                (im, inside)
                            })
                            .collect();
                        return Ok(PingPongOutcome {
                            certified: false,
                            power: n,
                            certificate: None,
                            failure: Some(CertificateFailure { map: i, sign, images }),
                        });
                    }
                }
            }
        }
    }
    Ok(PingPongOutcome {
        certified: true,
        power: n,
        certificate: Some(Certificate {
            power: n,
            maps: maps.to_vec(),
            intervals: intervals.to_vec(),
            steps,
        }),
        failure: None,
    })
}

/// Re-checks a stored certificate from its recorded data alone.
pub fn verify_certificate<S: OrderedField>(cert: &Certificate<S>) -> bool {
    if validate(&cert.maps, &cert.intervals).is_err() || cert.power == 0 {
        return false;
    }
    let Ok(power) = i64::try_from(cert.power) else {
        return false;
    };
    if cert.maps.len() == 1 {
        return cert.steps.is_empty();
    }
    for (i, m) in cert.maps.iter().enumerate() {
        for sign in [1i8, -1] {
            let Some(step) = cert.steps.iter().find(|s| s.map == i && s.sign == sign) else {
                return false;
            };
            let g = m.pow(power * i64::from(sign));
            if !cert.intervals[i].iter().any(|u| u.contains(&step.target)) {
                return false;
            }
            if !step.target.contains(&step.target.image(&g)) {
                return false;
            }
            for (j, set) in cert.intervals.iter().enumerate() {
                if j == i {
                    continue;
                }
                if !set.iter().all(|arc| step.target.contains(&arc.image(&g))) {
                    return false;
                }
            }
        }
    }
    true
}

/// A rational-valued point strictly inside the positive arc from `u` to
/// `v`: the exact midpoint for rational ends, `∞` when the arc wraps.
fn arc_midpoint<S: OrderedField>(u: &Point<S>, v: &Point<S>) -> Point<S> {
    let two = S::one() + S::one();
    match (u, v) {
        (Point::Infinity, Point::Infinity) => Point::rational(S::zero()),
        (Point::Infinity, Point::Finite(y)) => Point::rational(y.bounds(16).0 - S::one()),
        (Point::Finite(x), Point::Infinity) => Point::rational(x.bounds(16).1 + S::one()),
        (Point::Finite(x), Point::Finite(y)) => {
            if y.compare(x) != Ordering::Greater {
                return Point::Infinity;
            }
            if x.is_rational() && y.is_rational() {
                return Point::rational((x.p.clone() + y.p.clone()) / two);
            }
            let mut steps = 16;
            loop {
                let hi_x = x.bounds(steps).1;
                let lo_y = y.bounds(steps).0;
                let r = Quadratic::rational((hi_x.clone() + lo_y.clone()) / two.clone());
                if x.compare(&r) == Ordering::Less && r.compare(y) == Ordering::Less {
                    return Point::Finite(r);
                }
                steps *= 2;
            }
        }
    }
}

/// For each fixed point, the arc between the midpoints to its circle
/// neighbours among all fixed points. Fails when two maps share a fixed
/// point.
pub fn midpoint_intervals<S: OrderedField>(maps: &[MobiusMap<S>]) -> Result<Vec<Vec<BoundaryInterval<S>>>> {
    let fixed = maps
        .iter()
        .map(MobiusMap::fixed_points)
        .collect::<Result<Vec<_>>>()?;
    let mut points: Vec<(usize, Point<S>)> = Vec::new();
    for (i, fs) in fixed.iter().enumerate() {
        for f in fs {
            if let Some((j, _)) = points.iter().find(|(_, p)| p.same(&f.point)) {
                return Err(Error::OverlappingIntervals(format!(
                    "maps {j} and {i} share the fixed point {}",
                    f.point
                )));
            }
            points.push((i, f.point.clone()));
        }
    }
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&x, &y| points[x].1.circle_cmp(&points[y].1));
    let n = order.len();
    let mut sets = vec![Vec::new(); maps.len()];
    for (pos, &k) in order.iter().enumerate() {
        let here = &points[k].1;
        let arc = if n == 1 {
            match here {
                Point::Infinity => {
                    BoundaryInterval::new(Point::rational(S::one()), Point::rational(-S::one()))?
                }
                Point::Finite(x) => {
                    let (lo, hi) = x.bounds(16);
                    BoundaryInterval::new(Point::rational(lo - S::one()), Point::rational(hi + S::one()))?
                }
            }
        } else {
            let prev = &points[order[(pos + n - 1) % n]].1;
            let next = &points[order[(pos + 1) % n]].1;
            BoundaryInterval::new(arc_midpoint(prev, here), arc_midpoint(here, next))?
        };
        sets[points[k].0].push(arc);
    }
    Ok(sets)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = ""))]
pub struct MinPowerReport<S: OrderedField> {
    pub cap: u64,
    /// Smallest certified power, if any up to the cap.
    pub power: Option<u64>,
    pub certificate: Option<Certificate<S>>,
    /// Every power from the minimum up to the cap was also certified.
    pub monotone_to_cap: bool,
}

/// Searches `n = 1, 2, ..., cap` for a certificate with midpoint
/// intervals.
pub fn minimal_power_search<S: OrderedField>(maps: &[MobiusMap<S>], cap: u64) -> Result<MinPowerReport<S>> {
    if maps.is_empty() {
        return Err(Error::NoMaps);
    }
    let irr = irredundancy_fixed_points(maps)?;
    if !irr.irredundant {
        return Err(Error::Redundant("maps share a fixed point".into()));
    }
    let intervals = midpoint_intervals(maps)?;
    for n in 1..=cap {
        let outcome = pingpong_certificate(maps, &intervals, n)?;
        if outcome.certified {
            let mut monotone = true;
            for later in n + 1..=cap {
                monotone &= pingpong_certificate(maps, &intervals, later)?.certified;
            }
            return Ok(MinPowerReport {
                cap,
                power: Some(n),
                certificate: outcome.certificate,
                monotone_to_cap: monotone,
            });
        }
    }
    Ok(MinPowerReport {
        cap,
        power: None,
        certificate: None,
        monotone_to_cap: false,
    })
}
