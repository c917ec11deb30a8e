//! Classification and dimension arithmetic: hyperbolic RAAGs, virtual
//! cohomological dimension, and bounds for products of free groups in
//! mapping class groups.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{clique_cap, SimpleGraph};

/// A free product of free abelian groups, one factor per clique component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FreeProductDecomposition {
    pub factors: Vec<Vec<String>>,
    pub ranks: Vec<usize>,
    pub group: String,
}

/// Name of `ℤ^k`, written `Z`, `Z^2`, ...
pub fn free_abelian_name(k: usize) -> String {
    match k {
        0 => "1".into(),
        1 => "Z".into(),
        _ => format!("Z^{k}"),
    }
}

/// `A(Γ)` is hyperbolic exactly when Γ is a disjoint union of cliques; the
/// decomposition lists those cliques.
pub fn classify_hyperbolic_raag(g: &SimpleGraph) -> Option<FreeProductDecomposition> {
    let comps = g.connected_components();
    if comps.iter().any(|c| !g.is_clique(c)) {
        return None;
    }
    let ranks: Vec<usize> = comps.iter().map(Vec::len).collect();
    let group = if ranks.is_empty() {
        "1".into()
    } else {
        ranks
            .iter()
            .map(|&k| free_abelian_name(k))
            .collect::<Vec<_>>()
            .join(" * ")
    };
    Some(FreeProductDecomposition {
        factors: comps.iter().map(|c| g.names(c)).collect(),
        ranks,
        group,
    })
}

/// A readable name for `A(Γ)`, built from the free-product splitting along
/// connected components and the direct-product splitting along joins.
/// Pieces that split neither way are written `A(v1,v2,...)`.
pub fn raag_group_name(g: &SimpleGraph) -> String {
    let all: Vec<usize> = (0..g.len()).collect();
    name_within(g, &all)
}

fn name_within(g: &SimpleGraph, subset: &[usize]) -> String {
    match subset.len() {
        0 => return "1".into(),
        1 => return "Z".into(),
        _ => {}
    }
    let comps = g.components_within(subset);
    if comps.len() > 1 {
        let names: Vec<String> = comps.iter().map(|c| name_within(g, c)).collect();
        let cyclic = names.iter().filter(|n| *n == "Z").count();
        let mut parts = Vec::new();
        match cyclic {
            0 => {}
            1 => parts.push("Z".to_string()),
            k => parts.push(format!("F{k}")),
        }
        parts.extend(names.into_iter().filter(|n| n != "Z").map(|n| {
            if n.contains(" × ") {
                format!("({n})")
            } else {
                n
            }
        }));
        return parts.join(" * ");
    }
    let factors = g.complement_components_within(subset);
    if factors.len() > 1 {
        let names: Vec<String> = factors.iter().map(|c| name_within(g, c)).collect();
        let cyclic = names.iter().filter(|n| *n == "Z").count();
        let mut parts = Vec::new();
        if cyclic > 0 {
            parts.push(free_abelian_name(cyclic));
        }
        parts.extend(names.into_iter().filter(|n| n != "Z").map(|n| {
            if n.contains(" * ") {
                format!("({n})")
            } else {
                n
            }
        }));
        return parts.join(" × ");
    }
    format!("A({})", g.names(subset).join(","))
}

/// Cohomological dimension of `A(Γ)`: the size of a largest clique.
pub fn vcd(g: &SimpleGraph) -> Result<usize> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let cap = clique_cap();
    if g.len() > cap {
        return Err(Error::TooManyVertices { count: g.len(), cap });
    }
    Ok(g.clique_number())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VcdReport {
    pub genus: u64,
    pub punctures: u64,
    /// Virtual cohomological dimension of the mapping class group.
    pub mcg_vcd: u64,
    /// Rank of a maximal abelian subgroup, hence the cohomological dimension
    /// of any RAAG commensurable with the mapping class group.
    pub max_abelian_rank: u64,
    /// True when the two differ, ruling out commensurability with a RAAG.
    pub obstruction: bool,
}

/// Compares the vcd of `Mod(g, p)` with the rank of its maximal abelian
/// subgroups. Closed surfaces use `4g - 5`, punctured ones `4g + p - 4`,
/// and punctured spheres `p - 3`.
pub fn mcg_vcd_obstruction(genus: u64, punctures: u64) -> Result<VcdReport> {
    if 2 * genus + punctures <= 2 {
        return Err(Error::NonHyperbolicSurface { genus, punctures });
    }
    let mcg_vcd = match (genus, punctures) {
        (0, p) => p - 3,
        (g, 0) => 4 * g - 5,
        (g, p) => 4 * g + p - 4,
    };
    let max_abelian_rank = 3 * genus + punctures - 3;
    Ok(VcdReport {
        genus,
        punctures,
        mcg_vcd,
        max_abelian_rank,
        obstruction: mcg_vcd != max_abelian_rank,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductBound {
    pub genus: u64,
    /// `⌊3(g-1)/2⌋` for odd genus, `3g/2` for even genus.
    pub closed_form_bound: u64,
    /// Largest `n_T + n_S` with `n_T <= g` one-holed tori and the remaining
    /// pieces of Euler characteristic at most `-2`, i.e. `n_T + 2 n_S <= 2g - 2`.
    pub exact_optimum: u64,
    pub optimum_pieces: (u64, u64),
    /// Whether the closed-form bound is attained by the Euler characteristic
    /// count.
    pub attained: bool,
}

/// Bounds on the number of free factors `n` of a product `F_2^n` of free
/// groups inside `Mod_g`.
pub fn max_product_free_factors(genus: u64) -> Result<ProductBound> {
    if genus < 2 {
        return Err(Error::GenusTooSmall(genus));
    }
    let closed_form_bound = if genus % 2 == 1 {
        3 * (genus - 1) / 2
    } else {
        3 * genus / 2
    };
    let budget = 2 * genus - 2;
    let (mut best, mut pieces) = (0, (0, 0));
    for n_t in 0..=genus.min(budget) {
        let n_s = (budget - n_t) / 2;
        if n_t + n_s > best {
            best = n_t + n_s;
            pieces = (n_t, n_s);
        }
    }
    Ok(ProductBound {
        genus,
        closed_form_bound,
        exact_optimum: best,
        optimum_pieces: pieces,
        attained: best == closed_form_bound,
    })
}
