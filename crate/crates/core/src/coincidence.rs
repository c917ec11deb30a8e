//! Combinatorial interface to collections of mapping classes.
//!
//! Geometry enters only as input: each class declares its support, and the
//! configuration declares for every pair whether the supports are disjoint,
//! intersecting or equal, and which equal-support pairs share a power. From
//! that data we build the coincidence graph and the predicted right-angled
//! Artin subgroup, evaluate the virtual commutation criterion on reduction
//! systems, and produce flag embeddings and handle plans for curve graphs.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::classify::{free_abelian_name, raag_group_name};
use crate::error::{Error, Result};
use crate::graph::{find_induced_embedding, SimpleGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassKind {
    /// A Dehn twist about a simple closed curve.
    #[serde(rename = "twist")]
    Twist,
    /// A pseudo-Anosov on a connected subsurface.
    #[serde(rename = "pA")]
    PseudoAnosov,
}

fn yes() -> bool {
    true
}

/// One mapping class of a collection, described by its support.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportSpec {
    pub id: String,
    pub kind: ClassKind,
    /// Curve id for a twist, subsurface id for a pseudo-Anosov.
    pub support: String,
    /// Boundary curves of the subsurface.
    #[serde(default)]
    pub boundary: Vec<String>,
    /// Whether the invariant laminations avoid peripheral leaves.
    #[serde(default = "yes")]
    pub no_peripheral_leaves: bool,
    /// Whether the class twists about its boundary curves.
    #[serde(default)]
    pub twists_boundary: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Disjoint,
    Intersecting,
    Equal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct ConfigFile {
    classes: Vec<SupportSpec>,
    #[serde(default)]
    relations: Vec<(String, String, Relation)>,
    #[serde(default)]
    shares_power: Vec<(String, String)>,
    #[serde(default)]
    commuting: Vec<(String, String)>,
}

/// A collection of mapping classes with a validated, symmetric relation
/// matrix.
///
/// Two twists about the same curve always share a power. Pairs listed in
/// `commuting` are equal-support pairs known to commute; pairs in
/// `shares_power` commute and have a common nonzero power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MappingClassConfig {
    classes: Vec<SupportSpec>,
    relation: Vec<Vec<Relation>>,
    shares_power: Vec<Vec<bool>>,
    commuting: Vec<Vec<bool>>,
}

impl MappingClassConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: ConfigFile =
            serde_json::from_str(text).map_err(|e| Error::InvalidArgument(e.to_string()))?;
        MappingClassConfig::new(file.classes, &file.relations, &file.shares_power, &file.commuting)
    }

    pub fn new(
        classes: Vec<SupportSpec>,
        relations: &[(String, String, Relation)],
        shares_power: &[(String, String)],
        commuting: &[(String, String)],
    ) -> Result<Self> {
        let n = classes.len();
        let mut index = HashMap::new();
        for (i, c) in classes.iter().enumerate() {
            if index.insert(c.id.clone(), i).is_some() {
                return Err(Error::InconsistentRelations(format!(
                    "duplicate class `{}`",
                    c.id
                )));
            }
        }
        let lookup = |id: &str| {
            index
                .get(id)
                .copied()
                .ok_or_else(|| Error::InconsistentRelations(format!("unknown class `{id}`")))
        };
        let mut declared: Vec<Vec<Option<Relation>>> = vec![vec![None; n]; n];
        for (a, b, r) in relations {
            let (i, j) = (lookup(a)?, lookup(b)?);
            if let Some(old) = declared[i][j] {
                if old != *r {
                    return Err(Error::InconsistentRelations(format!(
                        "`{a}` and `{b}` declared both {old:?} and {r:?}"
                    )));
                }
            }
            declared[i][j] = Some(*r);
            declared[j][i] = Some(*r);
        }
        let mut relation = vec![vec![Relation::Equal; n]; n];
        for i in 0..n {
            for j in 0..n {
                let same = classes[i].kind == classes[j].kind && classes[i].support == classes[j].support;
                let r = match (declared[i][j], i == j || same) {
                    (Some(r), true) if r != Relation::Equal => {
                        return Err(Error::InconsistentRelations(format!(
                            "`{}` and `{}` have the same support but are declared {r:?}",
                            classes[i].id, classes[j].id
                        )))
                    }
                    (_, true) => Relation::Equal,
                    (Some(Relation::Equal), false) => {
                        return Err(Error::InconsistentRelations(format!(
                            "`{}` and `{}` are declared equal but have different supports",
                            classes[i].id, classes[j].id
                        )))
                    }
                    (Some(r), false) => r,
                    (None, false) => {
                        return Err(Error::InconsistentRelations(format!(
                            "no relation declared for `{}` and `{}`",
                            classes[i].id, classes[j].id
                        )))
                    }
                };
                if r == Relation::Equal && i != j {
                    let bi: BTreeSet<&String> = classes[i].boundary.iter().collect();
                    let bj: BTreeSet<&String> = classes[j].boundary.iter().collect();
                    if bi != bj {
                        return Err(Error::InconsistentRelations(format!(
                            "`{}` and `{}` have equal supports but different boundaries",
                            classes[i].id, classes[j].id
                        )));
                    }
                }
                relation[i][j] = r;
            }
        }
        let mut power = vec![vec![false; n]; n];
        let mut comm = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                let both_twists = classes[i].kind == ClassKind::Twist && classes[j].kind == ClassKind::Twist;
                if relation[i][j] == Relation::Equal && both_twists {
                    power[i][j] = true;
                }
            }
            power[i][i] = true;
        }
        for (a, b) in shares_power {
            let (i, j) = (lookup(a)?, lookup(b)?);
            if relation[i][j] != Relation::Equal {
                return Err(Error::InconsistentRelations(format!(
                    "`{a}` and `{b}` share a power but their supports are not equal"
                )));
            }
            power[i][j] = true;
            power[j][i] = true;
        }
        for (a, b) in commuting {
            let (i, j) = (lookup(a)?, lookup(b)?);
            if relation[i][j] == Relation::Intersecting {
                return Err(Error::InconsistentRelations(format!(
                    "`{a}` and `{b}` commute but have intersecting supports"
                )));
            }
            comm[i][j] = true;
            comm[j][i] = true;
        }
        for i in 0..n {
            for j in 0..n {
                if power[i][j] || relation[i][j] == Relation::Disjoint {
                    comm[i][j] = true;
                }
            }
        }
        Ok(MappingClassConfig {
            classes,
            relation,
            shares_power: power,
            commuting: comm,
        })
    }

    pub fn classes(&self) -> &[SupportSpec] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn relation(&self, i: usize, j: usize) -> Relation {
        self.relation[i][j]
    }

    pub fn shares_power(&self, i: usize, j: usize) -> bool {
        self.shares_power[i][j]
    }

    pub fn commute(&self, i: usize, j: usize) -> bool {
        self.commuting[i][j]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    PeripheralLeaves,
    CommutingWithoutSharedPower,
    TwistOnTwistedBoundary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConventionViolation {
    pub kind: ViolationKind,
    pub classes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConventionReport {
    pub passed: bool,
    pub violations: Vec<ConventionViolation>,
}

/// Checks the admissibility conventions on a collection: laminations
/// without peripheral leaves, commuting equal-support pseudo-Anosovs that
/// share a power, and no twist about a boundary curve that a
/// pseudo-Anosov in the collection already twists about.
pub fn check_conventions(cfg: &MappingClassConfig) -> ConventionReport {
    let mut violations = Vec::new();
    let cls = &cfg.classes;
    for c in cls {
        if c.kind == ClassKind::PseudoAnosov && !c.no_peripheral_leaves {
            violations.push(ConventionViolation {
                kind: ViolationKind::PeripheralLeaves,
                classes: vec![c.id.clone()],
            });
        }
    }
    for i in 0..cls.len() {
        for j in i + 1..cls.len() {
            let both_pa = cls[i].kind == ClassKind::PseudoAnosov && cls[j].kind == ClassKind::PseudoAnosov;
            if both_pa
                && cfg.relation(i, j) == Relation::Equal
                && cfg.commute(i, j)
                && !cfg.shares_power(i, j)
            {
                violations.push(ConventionViolation {
                    kind: ViolationKind::CommutingWithoutSharedPower,
                    classes: vec![cls[i].id.clone(), cls[j].id.clone()],
                });
            }
        }
    }
    for t in cls.iter().filter(|c| c.kind == ClassKind::Twist) {
        for p in cls.iter().filter(|c| c.kind == ClassKind::PseudoAnosov) {
            if p.twists_boundary && p.boundary.contains(&t.support) {
                violations.push(ConventionViolation {
                    kind: ViolationKind::TwistOnTwistedBoundary,
                    classes: vec![t.id.clone(), p.id.clone()],
                });
            }
        }
    }
    ConventionReport {
        passed: violations.is_empty(),
        violations,
    }
}

fn require_conventions(cfg: &MappingClassConfig) -> Result<()> {
    let report = check_conventions(cfg);
    match report.violations.first() {
        None => Ok(()),
        Some(v) => Err(Error::ConventionViolation(format!(
            "{:?} on {}",
            v.kind,
            v.classes.join(", ")
        ))),
    }
}

/// One vertex per class; an edge when the supports are disjoint, or equal
/// with a shared power.
pub fn coincidence_graph(cfg: &MappingClassConfig) -> Result<SimpleGraph> {
    require_conventions(cfg)?;
    Ok(raw_coincidence_graph(cfg))
}

fn raw_coincidence_graph(cfg: &MappingClassConfig) -> SimpleGraph {
    let n = cfg.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let linked = match cfg.relation(i, j) {
                Relation::Disjoint => true,
                Relation::Equal => cfg.shares_power(i, j),
                Relation::Intersecting => false,
            };
            if linked {
                edges.push((i, j));
            }
        }
    }
    let names: Vec<String> = cfg.classes.iter().map(|c| c.id.clone()).collect();
    SimpleGraph::from_index_edges(names, &edges).expect("class ids are distinct")
}

/// The right-angled Artin group generated by the `N`-th powers, for a
/// symbolic large `N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PredictedSubgroup {
    pub graph: SimpleGraph,
    pub generators: Vec<String>,
    /// Commutators of the generator pairs joined by an edge.
    pub relations: Vec<String>,
    pub group: String,
}

pub fn predicted_subgroup(cfg: &MappingClassConfig) -> Result<PredictedSubgroup> {
    require_conventions(cfg)?;
    for i in 0..cfg.len() {
        for j in i + 1..cfg.len() {
            if cfg.relation(i, j) == Relation::Equal && cfg.shares_power(i, j) {
                return Err(Error::Redundant(format!(
                    "`{}` and `{}` share a power",
                    cfg.classes[i].id, cfg.classes[j].id
                )));
            }
        }
    }
    let graph = raw_coincidence_graph(cfg);
    let generators: Vec<String> = (1..=cfg.len()).map(|i| format!("f_{i}^N")).collect();
    let relations = graph
        .edges()
        .into_iter()
        .map(|(i, j)| format!("[{}, {}]", generators[i], generators[j]))
        .collect();
    let group = raag_group_name(&graph);
    Ok(PredictedSubgroup {
        graph,
        generators,
        relations,
        group,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "kebab-case")]
pub enum TitsClass {
    VirtuallyAbelian { group: String },
    EnvelopedNonabelian { group: String },
}

/// Either every pair commutes, and the group is virtually abelian, or the
/// collection is enveloped by the RAAG on its coincidence graph.
pub fn tits_classification(cfg: &MappingClassConfig) -> Result<TitsClass> {
    require_conventions(cfg)?;
    let graph = raw_coincidence_graph(cfg);
    let all: Vec<usize> = (0..graph.len()).collect();
    let abelian = graph.is_clique(&all) && (0..cfg.len()).all(|i| (0..cfg.len()).all(|j| cfg.commute(i, j)));
    Ok(if abelian {
        TitsClass::VirtuallyAbelian {
            group: free_abelian_name(graph.len()),
        }
    } else {
        TitsClass::EnvelopedNonabelian {
            group: raag_group_name(&graph),
        }
    })
}

/// A fragment of the curve graph: vertices are curves, edges join
/// disjoint curves.
pub type CurveComplexFragment = SimpleGraph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlagEmbedding {
    /// `(vertex, curve)` pairs in vertex order.
    pub mapping: Vec<(String, String)>,
}

/// An injection of `g` onto an induced subgraph of the fragment.
pub fn flag_embedding_check(g: &SimpleGraph, frag: &CurveComplexFragment) -> Option<FlagEmbedding> {
    let candidates = vec![(0..frag.len()).collect::<Vec<_>>(); g.len()];
    find_induced_embedding(g, frag, &candidates).map(|m| FlagEmbedding {
        mapping: m
            .iter()
            .enumerate()
            .map(|(i, &h)| (g.vertex_name(i).to_string(), frag.vertex_name(h).to_string()))
            .collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HandleAssignment {
    pub vertex: String,
    pub handles: Vec<String>,
}

/// Handle construction realizing `Γ` by subsurfaces: one handle per vertex
/// and one per edge of the complement graph `Γ*`, plus `|E(Γ*)|` further
/// genus to embed `Γ*` itself.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenusPlan {
    pub genus_bound: usize,
    pub complement_edges: usize,
    pub assignments: Vec<HandleAssignment>,
    /// Vertices adjacent in `Γ` got disjoint handle sets, and vertices
    /// adjacent in `Γ*` share exactly their edge handle.
    pub pattern_verified: bool,
}

fn vertex_handle(v: &str) -> String {
    format!("h({v})")
}

fn edge_handle(v: &str, w: &str) -> String {
    format!("h({v},{w})")
}

pub fn embedding_genus_plan(g: &SimpleGraph) -> GenusPlan {
    let star = g.complement();
    let star_edges = star.edges();
    let mut sets: Vec<Vec<String>> = (0..g.len())
        .map(|v| vec![vertex_handle(g.vertex_name(v))])
        .collect();
    for &(i, j) in &star_edges {
        let h = edge_handle(g.vertex_name(i), g.vertex_name(j));
        sets[i].push(h.clone());
        sets[j].push(h);
    }
    let mut pattern_verified = true;
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            let shared: Vec<&String> = sets[i].iter().filter(|h| sets[j].contains(h)).collect();
            let expected = if g.adjacent(i, j) {
                shared.is_empty()
            } else {
                shared.len() == 1 && *shared[0] == edge_handle(g.vertex_name(i), g.vertex_name(j))
            };
            pattern_verified &= expected;
        }
    }
    GenusPlan {
        genus_bound: g.len() + 2 * star_edges.len(),
        complement_edges: star_edges.len(),
        assignments: sets
            .into_iter()
            .enumerate()
            .map(|(v, handles)| HandleAssignment {
                vertex: g.vertex_name(v).to_string(),
                handles,
            })
            .collect(),
        pattern_verified,
    }
}

/// A curve of the common universe, with the curves it meets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub id: String,
    #[serde(default)]
    pub intersects: Vec<String>,
}

/// A component of the complement of a reduction system: the curves of the
/// universe lying in its interior, and the restriction of the mapping class
/// to it (`"trivial"` or the name of a pseudo-Anosov).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSpec {
    pub id: String,
    pub restriction: String,
    #[serde(default)]
    pub contains: Vec<String>,
}

impl ComponentSpec {
    fn trivial(&self) -> bool {
        self.restriction == "trivial"
    }
}

/// The canonical reduction system of a pure mapping class with its
/// restrictions to the complementary components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionSystemSpec {
    pub curves: Vec<String>,
    pub components: Vec<ComponentSpec>,
}

/// Two reduction systems over a common curve universe. Pants compatibility
/// of the union of the two systems is taken from the input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutationProblem {
    pub curves: Vec<CurveSpec>,
    pub first: ReductionSystemSpec,
    pub second: ReductionSystemSpec,
    #[serde(default)]
    pub pants_compatible: bool,
    /// Pairs of pseudo-Anosov restrictions sharing a nonzero power.
    #[serde(default)]
    pub shares_power: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommuteVerdict {
    pub virtually_commute: bool,
    /// Which of the four conditions fired.
    pub case: Option<u8>,
    /// For the containment case: true when the second system is the
    /// smaller one.
    pub swapped: bool,
}

impl CommutationProblem {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidArgument(e.to_string()))
    }

    /// The same problem with the two mapping classes exchanged.
    pub fn swapped(&self) -> CommutationProblem {
        CommutationProblem {
            first: self.second.clone(),
            second: self.first.clone(),
            ..self.clone()
        }
    }
}

struct Universe {
    index: HashMap<String, usize>,
    meets: Vec<Vec<bool>>,
}

impl Universe {
    fn new(curves: &[CurveSpec]) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, c) in curves.iter().enumerate() {
            if index.insert(c.id.clone(), i).is_some() {
                return Err(Error::InconsistentRelations(format!(
                    "duplicate curve `{}`",
                    c.id
                )));
            }
        }
        let mut meets = vec![vec![false; curves.len()]; curves.len()];
        let u = Universe {
            index,
            meets: Vec::new(),
        };
        for (i, c) in curves.iter().enumerate() {
            for other in &c.intersects {
                let j = u.curve(other)?;
                if i == j {
                    return Err(Error::InconsistentRelations(format!(
                        "curve `{other}` meets itself"
                    )));
                }
                meets[i][j] = true;
                meets[j][i] = true;
            }
        }
        Ok(Universe { meets, ..u })
    }

    fn curve(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::IncompleteLabeling(format!("unknown curve `{id}`")))
    }
}

/// A reduction system resolved against the universe.
struct System<'a> {
    spec: &'a ReductionSystemSpec,
    curves: BTreeSet<usize>,
    /// Component index of each universe curve lying in a component.
    location: HashMap<usize, usize>,
}

impl<'a> System<'a> {
    fn new(u: &Universe, spec: &'a ReductionSystemSpec) -> Result<Self> {
        let curves: BTreeSet<usize> = spec.curves.iter().map(|c| u.curve(c)).collect::<Result<_>>()?;
        for &a in &curves {
            for &b in &curves {
                if u.meets[a][b] {
                    return Err(Error::InconsistentRelations(
                        "reduction system curves must be disjoint".into(),
                    ));
                }
            }
        }
        if spec.components.is_empty() {
            return Err(Error::IncompleteLabeling("no components listed".into()));
        }
        if curves.is_empty() && spec.components.len() != 1 {
            return Err(Error::IncompleteLabeling(
                "an empty reduction system has exactly one component".into(),
            ));
        }
        let ids: BTreeSet<&String> = spec.components.iter().map(|c| &c.id).collect();
        if ids.len() != spec.components.len() {
            return Err(Error::IncompleteLabeling("duplicate component id".into()));
        }
        if curves.is_empty() && spec.components[0].trivial() {
            return Err(Error::InvalidArgument("mapping class is trivial".into()));
        }
        let mut location = HashMap::new();
        for (k, comp) in spec.components.iter().enumerate() {
            for c in &comp.contains {
                let i = u.curve(c)?;
                if curves.contains(&i) || curves.iter().any(|&s| u.meets[s][i]) {
                    return Err(Error::IncompleteLabeling(format!(
                        "curve `{c}` cannot lie inside component `{}`",
                        comp.id
                    )));
                }
                if location.insert(i, k).is_some() {
                    return Err(Error::IncompleteLabeling(format!(
                        "curve `{c}` lies in two components"
                    )));
                }
            }
        }
        for (id, &i) in &u.index {
            let free = !curves.contains(&i) && curves.iter().all(|&s| !u.meets[s][i]);
            if free && !location.contains_key(&i) {
                return Err(Error::IncompleteLabeling(format!(
                    "curve `{id}` is not placed in any component"
                )));
            }
        }
        Ok(System {
            spec,
            curves,
            location,
        })
    }

    fn component_of(&self, curve: usize) -> Option<&ComponentSpec> {
        self.location.get(&curve).map(|&k| &self.spec.components[k])
    }
}

/// Evaluates the four virtual commutation conditions on two reduction
/// systems.
pub fn virtually_commute(p: &CommutationProblem) -> Result<CommuteVerdict> {
    let u = Universe::new(&p.curves)?;
    let s1 = System::new(&u, &p.first)?;
    let s2 = System::new(&u, &p.second)?;
    let pa_commute = |a: &str, b: &str| {
        a == b
            || p.shares_power
                .iter()
                .any(|(x, y)| (x == a && y == b) || (x == b && y == a))
    };
    let verdict = |case: u8, swapped: bool| CommuteVerdict {
        virtually_commute: true,
        case: Some(case),
        swapped,
    };

    let c1 = &p.first.components;
    let c2 = &p.second.components;
    if s1.curves.is_empty()
        && s2.curves.is_empty()
        && !c1[0].trivial()
        && !c2[0].trivial()
        && pa_commute(&c1[0].restriction, &c2[0].restriction)
    {
        return Ok(verdict(1, false));
    }

    if s1.curves == s2.curves {
        let mut ok = true;
        for a in c1 {
            let b = c2.iter().find(|b| b.id == a.id).ok_or_else(|| {
                Error::IncompleteLabeling(format!("component `{}` missing from second system", a.id))
            })?;
            ok &= a.trivial() || b.trivial() || pa_commute(&a.restriction, &b.restriction);
        }
        if c1.len() != c2.len() {
            return Err(Error::IncompleteLabeling(
                "equal reduction systems list different components".into(),
            ));
        }
        return Ok(if ok {
            verdict(2, false)
        } else {
            CommuteVerdict {
                virtually_commute: false,
                case: None,
                swapped: false,
            }
        });
    }

    let contained = |small: &System, big: &System| {
        small.curves.is_subset(&big.curves)
            && big
                .curves
                .iter()
                .filter_map(|&c| small.component_of(c))
                .all(ComponentSpec::trivial)
    };
    if s1.curves.is_subset(&s2.curves) || s2.curves.is_subset(&s1.curves) {
        if contained(&s1, &s2) {
            return Ok(verdict(3, false));
        }
        if contained(&s2, &s1) {
            return Ok(verdict(3, true));
        }
        return Ok(CommuteVerdict {
            virtually_commute: false,
            case: None,
            swapped: false,
        });
    }

    let union: Vec<usize> = s1.curves.union(&s2.curves).copied().collect();
    let disjoint = union.iter().all(|&a| union.iter().all(|&b| !u.meets[a][b]));
    let preserved = |from: &System, into: &System| {
        from.curves
            .iter()
            .filter(|c| !into.curves.contains(c))
            .all(|&c| into.component_of(c).is_some_and(ComponentSpec::trivial))
    };
    if disjoint && p.pants_compatible && preserved(&s1, &s2) && preserved(&s2, &s1) {
        return Ok(verdict(4, false));
    }
    Ok(CommuteVerdict {
        virtually_commute: false,
        case: None,
        swapped: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn twist(id: &str, curve: &str) -> SupportSpec {
        SupportSpec {
            id: id.into(),
            kind: ClassKind::Twist,
            support: curve.into(),
            boundary: vec![],
            no_peripheral_leaves: true,
            twists_boundary: false,
        }
    }

    fn pa(id: &str, surface: &str) -> SupportSpec {
        SupportSpec {
            id: id.into(),
            kind: ClassKind::PseudoAnosov,
            support: surface.into(),
            boundary: vec!["beta".into()],
            no_peripheral_leaves: true,
            twists_boundary: false,
        }
    }

    fn rel(a: &str, b: &str, r: Relation) -> (String, String, Relation) {
        (a.into(), b.into(), r)
    }

    fn four_curves() -> MappingClassConfig {
        use Relation::*;
        let classes = ["c1", "c2", "c3", "c4"].iter().map(|c| twist(c, c)).collect();
        MappingClassConfig::new(
            classes,
            &[
                rel("c1", "c2", Disjoint),
                rel("c2", "c3", Disjoint),
                rel("c3", "c4", Disjoint),
                rel("c4", "c1", Disjoint),
                rel("c1", "c3", Intersecting),
                rel("c2", "c4", Intersecting),
            ],
            &[],
            &[],
        )
        .unwrap()
    }

    #[test]
    fn four_curve_configuration() {
        let cfg = four_curves();
        let g = coincidence_graph(&cfg).unwrap();
        assert_eq!(g.edge_count(), 4);
        assert!((0..4).all(|v| g.degree(v) == 2));
        let p = predicted_subgroup(&cfg).unwrap();
        assert_eq!(p.group, "F2 × F2");
        assert_eq!(p.generators[0], "f_1^N");
        assert!(matches!(
            tits_classification(&cfg).unwrap(),
            TitsClass::EnvelopedNonabelian { .. }
        ));
    }

    #[test]
    fn conventions() {
        let mut bad = pa("psi", "S");
        bad.no_peripheral_leaves = false;
        let cfg = MappingClassConfig::new(vec![bad], &[], &[], &[]).unwrap();
        let r = check_conventions(&cfg);
        assert_eq!(r.violations[0].kind, ViolationKind::PeripheralLeaves);
        assert!(coincidence_graph(&cfg).is_err());

        let cfg = MappingClassConfig::new(
            vec![pa("psi", "S"), pa("phi", "S")],
            &[],
            &[],
            &[("psi".into(), "phi".into())],
        )
        .unwrap();
        let r = check_conventions(&cfg);
        assert_eq!(r.violations[0].kind, ViolationKind::CommutingWithoutSharedPower);

        let mut psi = pa("psi", "S");
        psi.twists_boundary = true;
        let cfg = MappingClassConfig::new(
            vec![psi, twist("t", "beta")],
            &[rel("psi", "t", Relation::Disjoint)],
            &[],
            &[],
        )
        .unwrap();
        assert_eq!(
            check_conventions(&cfg).violations[0].kind,
            ViolationKind::TwistOnTwistedBoundary
        );
    }

    #[test]
    fn redundancy_and_consistency() {
        let cfg = MappingClassConfig::new(
            vec![pa("psi", "S"), pa("phi", "S")],
            &[],
            &[("psi".into(), "phi".into())],
            &[],
        )
        .unwrap();
        assert!(coincidence_graph(&cfg).unwrap().adjacent(0, 1));
        assert!(matches!(predicted_subgroup(&cfg), Err(Error::Redundant(_))));
        let missing = MappingClassConfig::new(vec![twist("a", "a"), twist("b", "b")], &[], &[], &[]);
        assert!(matches!(missing, Err(Error::InconsistentRelations(_))));
    }

    #[test]
    fn genus_plans() {
        let k3 = SimpleGraph::from_index_edges(vec!["a", "b", "c"], &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let plan = embedding_genus_plan(&k3);
        assert_eq!(plan.genus_bound, 3);
        assert!(plan.pattern_verified);
        let two = SimpleGraph::edgeless(vec!["a", "b"]).unwrap();
        let plan = embedding_genus_plan(&two);
        assert_eq!(plan.genus_bound, 4);
        assert_eq!(plan.assignments[0].handles, vec!["h(a)", "h(a,b)"]);
        assert_eq!(
            embedding_genus_plan(&SimpleGraph::edgeless(vec!["v"]).unwrap()).genus_bound,
            1
        );
    }

    fn system(curves: &[&str], comps: &[(&str, &str, &[&str])]) -> ReductionSystemSpec {
        ReductionSystemSpec {
            curves: curves.iter().map(|c| c.to_string()).collect(),
            components: comps
                .iter()
                .map(|(id, r, inside)| ComponentSpec {
                    id: id.to_string(),
                    restriction: r.to_string(),
                    contains: inside.iter().map(|c| c.to_string()).collect(),
                })
                .collect(),
        }
    }

    #[test]
    fn commutation_cases() {
        let curves = vec![
            CurveSpec {
                id: "c".into(),
                intersects: vec![],
            },
            CurveSpec {
                id: "d".into(),
                intersects: vec![],
            },
        ];
        let same = CommutationProblem {
            curves: curves.clone(),
            first: system(&["c", "d"], &[("X", "psi", &[]), ("Y", "trivial", &[])]),
            second: system(&["c", "d"], &[("X", "trivial", &[]), ("Y", "phi", &[])]),
            pants_compatible: false,
            shares_power: vec![],
        };
        assert_eq!(virtually_commute(&same).unwrap().case, Some(2));

        let nested = CommutationProblem {
            curves: curves.clone(),
            first: system(&["c"], &[("X", "psi", &["d"]), ("Y", "trivial", &[])]),
            second: system(&["c", "d"], &[("X", "trivial", &[]), ("Y", "trivial", &[])]),
            pants_compatible: false,
            shares_power: vec![],
        };
        let v = virtually_commute(&nested).unwrap();
        assert!(!v.virtually_commute);
        let mut ok = nested.clone();
        ok.first.components[0].restriction = "trivial".into();
        ok.first.components[1].restriction = "psi".into();
        assert_eq!(virtually_commute(&ok).unwrap().case, Some(3));
        assert!(virtually_commute(&ok.swapped()).unwrap().swapped);

        let crossing = CommutationProblem {
            curves: vec![
                CurveSpec {
                    id: "c".into(),
                    intersects: vec!["d".into()],
                },
                CurveSpec {
                    id: "d".into(),
                    intersects: vec![],
                },
            ],
            first: system(&["c"], &[("X", "trivial", &[])]),
            second: system(&["d"], &[("Y", "trivial", &[])]),
            pants_compatible: true,
            shares_power: vec![],
        };
        assert!(!virtually_commute(&crossing).unwrap().virtually_commute);
    }
}
