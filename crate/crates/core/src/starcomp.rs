//! Star complements, the resolvent inner product, comparability graphs,
//! and the f-clique criterion.
//!
//! For a star-complement candidate `H` and eigenvalue `r`, the inner
//! product is `⟨u,v⟩ = u (rI - A_H)^{-1} v^t`. The comparability graph has
//! one vertex per 0/1 vector `u` with `⟨u,u⟩ = r` and `⟨u,1⟩ = -1` (the
//! all-ones condition assumes a regular host), with `u ~ v` iff
//! `⟨u,v⟩ ∈ {-1, 0}`. Every identity here is exact rational arithmetic;
//! there are no tolerances in this module.
//!
//! Enumerating the `2^|H|` candidate vectors walks a Gray code, updating
//! `(rI - A_H)^{-1} u^t` by one column per step, over integers scaled by
//! the resolvent's common denominator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::clique::{clique_number_symmetric, CliqueVerdict};
use crate::graph::{Graph, VertexSet};
use crate::spectra::{eigenvalue_multiplicity_exact, resolvent, RationalResolvent, SpectraError};

#[derive(Debug, Error, PartialEq)]
pub enum StarCompError {
    #[error("vector length {found} does not match resolvent order {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("candidate order {0} exceeds the 62-vertex enumeration limit")]
    OrderTooLarge(usize),
    #[error("{r} is not an eigenvalue of the graph")]
    NotAnEigenvalue { r: i64 },
    #[error(transparent)]
    Spectra(#[from] SpectraError),
}

/// Prospective neighborhood (inside `H`) of a vertex outside `H`, as a
/// 0/1 vector of length `|H|`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CompVertex(Vec<u8>);

impl CompVertex {
    pub fn new(bits: Vec<u8>) -> Self {
        assert!(bits.iter().all(|&b| b <= 1), "entries must be 0/1");
        CompVertex(bits)
    }

    pub fn from_mask(mask: u64, len: usize) -> Self {
        CompVertex((0..len).map(|i| (mask >> i & 1) as u8).collect())
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &b)| b == 1)
            .map(|(i, _)| i)
    }

    /// As a vertex set of `H`.
    pub fn support(&self) -> VertexSet {
        self.ones().collect()
    }
}

/// Exact `u (rI - A_H)^{-1} v^t`; symmetric in `u, v`.
pub fn inner_product(
    res: &RationalResolvent,
    u: &[u8],
    v: &[u8],
) -> Result<BigRational, StarCompError> {
    let m = res.order();
    for len in [u.len(), v.len()] {
        if len != m {
            return Err(StarCompError::LengthMismatch {
                expected: m,
                found: len,
            });
        }
    }
    let mut sum = BigRational::zero();
    for i in 0..m {
        if u[i] == 0 {
            continue;
        }
        for j in 0..m {
            if v[j] == 1 {
                sum += res.entry(i, j);
            }
        }
    }
    Ok(sum)
}

/// Comparability graph of a candidate `H` and eigenvalue `r`.
#[derive(Clone, Debug)]
pub struct ComparabilityGraph {
    pub graph: Graph,
    pub labels: Vec<CompVertex>,
    pub host: Graph,
    pub r: i64,
}

/// Result of [`comparability_graph`]: either the built graph or a marker
/// that fewer vertices than `min_order` qualified (the graph is then never
/// worth a clique check).
#[derive(Clone, Debug)]
pub enum CompOutcome {
    Built(ComparabilityGraph),
    TooSmall { vertices: usize },
}

impl CompOutcome {
    pub fn built(self) -> Option<ComparabilityGraph> {
        match self {
            CompOutcome::Built(c) => Some(c),
            CompOutcome::TooSmall { .. } => None,
        }
    }
}

/// Builds the comparability graph of `H` and `r`, assuming a regular host
/// (the `⟨u,1⟩ = -1` filter applies). Vertices are ordered by their label
/// read as a binary number, least-significant index first.
pub fn comparability_graph(
    h: &Graph,
    r: i64,
    min_order: usize,
) -> Result<CompOutcome, StarCompError> {
    comparability_graph_general(h, r, min_order, true)
}

/// As [`comparability_graph`]; `regular_host = false` drops the
/// `⟨u,1⟩ = -1` condition, which is only valid for regular hosts.
pub fn comparability_graph_general(
    h: &Graph,
    r: i64,
    min_order: usize,
    regular_host: bool,
) -> Result<CompOutcome, StarCompError> {
    let m = h.n();
    if m > 62 {
        return Err(StarCompError::OrderTooLarge(m));
    }
    let res = resolvent(h, r)?;
    let scale = res.scale().clone();

    // Scaled integer targets: u N u^t = r * D and u N 1^t = -D, where
    // N = D * (rI - A_H)^{-1}.
    let quad_target = BigInt::from(r) * &scale;
    let ones_target = -&scale;

    let rowsum: Vec<BigInt> = (0..m).map(|i| res.scaled_row(i).iter().sum()).collect();

    let mut accepted: Vec<u64> = Vec::new();
    if m > 0 {
        let mut w: Vec<BigInt> = vec![BigInt::zero(); m];
        let mut quad = BigInt::zero();
        let mut ones = BigInt::zero();
        let mut mask: u64 = 0;
        let last: u64 = (1u64 << m) - 1;
        for step in 1..=last {
            let j = step.trailing_zeros() as usize;
            let adding = mask >> j & 1 == 0;
            let col = res.scaled_row(j);
            if adding {
                quad += 2 * &w[j] + &col[j];
                ones += &rowsum[j];
                for (wi, ci) in w.iter_mut().zip(col) {
                    *wi += ci;
                }
                mask |= 1 << j;
            } else {
                quad += -2 * &w[j] + &col[j];
                ones -= &rowsum[j];
                for (wi, ci) in w.iter_mut().zip(col) {
                    *wi -= ci;
                }
                mask &= !(1 << j);
            }
            if quad == quad_target && (!regular_host || ones == ones_target) {
                accepted.push(mask);
            }
        }
        accepted.sort_unstable();
    }

    if accepted.len() < min_order {
        return Ok(CompOutcome::TooSmall {
            vertices: accepted.len(),
        });
    }

    // Adjacency: u ~ v iff u N v^t is 0 or -D.
    let count = accepted.len();
    let vectors: Vec<Vec<BigInt>> = accepted
        .iter()
        .map(|&u| {
            let mut wu = vec![BigInt::zero(); m];
            for i in 0..m {
                if u >> i & 1 == 1 {
                    for (wj, cj) in wu.iter_mut().zip(res.scaled_row(i)) {
                        *wj += cj;
                    }
                }
            }
            wu
        })
        .collect();

    let zero = BigInt::zero();
    let neg_scale = -&scale;
    let mut graph = Graph::empty(count);
    for a in 0..count {
        for b in (a + 1)..count {
            let mut prod = BigInt::zero();
            let vb = accepted[b];
            for i in 0..m {
                if vb >> i & 1 == 1 {
                    prod += &vectors[a][i];
                }
            }
            if prod == zero || prod == neg_scale {
                graph.set_edge(a, b, true);
            }
        }
    }

    let labels: Vec<CompVertex> = accepted
        .iter()
        .map(|&u| CompVertex::from_mask(u, m))
        .collect();

    #[cfg(debug_assertions)]
    verify_labels(&res, &labels, regular_host);

    Ok(CompOutcome::Built(ComparabilityGraph {
        graph,
        labels,
        host: h.clone(),
        r,
    }))
}

#[cfg(debug_assertions)]
fn verify_labels(res: &RationalResolvent, labels: &[CompVertex], regular_host: bool) {
    use num_traits::One;
    let r = BigRational::from_integer(BigInt::from(res.r()));
    let minus_one = -BigRational::one();
    let ones = vec![1u8; res.order()];
    for l in labels {
        assert_eq!(inner_product(res, l.as_slice(), l.as_slice()).unwrap(), r);
        if regular_host {
            assert_eq!(inner_product(res, l.as_slice(), &ones).unwrap(), minus_one);
        }
    }
}

/// True iff the comparability graph certifiably contains an `f`-clique.
pub fn has_f_clique(c: &ComparabilityGraph, f: usize) -> bool {
    matches!(
        clique_number_symmetric(&c.graph, f).verdict,
        CliqueVerdict::Reached(_)
    )
}

/// Finds a star complement of `g` for eigenvalue `r`: a vertex set `S`
/// with `|S| = n - f` (`f` the multiplicity of `r`) such that `r` is not
/// an eigenvalue of `G[S]`. Greedy deletion with backtracking; existence
/// is guaranteed whenever `r` is an eigenvalue.
pub fn find_star_complement(g: &Graph, r: i64) -> Result<VertexSet, StarCompError> {
    let mult = eigenvalue_multiplicity_exact(g, r);
    if mult == 0 {
        return Err(StarCompError::NotAnEigenvalue { r });
    }
    let all: Vec<usize> = (0..g.n()).collect();
    fn shrink(g: &Graph, members: &[usize], mult: usize, r: i64) -> Option<Vec<usize>> {
        if mult == 0 {
            return Some(members.to_vec());
        }
        for idx in 0..members.len() {
            let smaller: Vec<usize> = members
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != idx)
                .map(|(_, &v)| v)
                .collect();
            let set: VertexSet = smaller.iter().copied().collect();
            let sub = g.induced_subgraph(&set).expect("members in range");
            if eigenvalue_multiplicity_exact(&sub, r) == mult - 1 {
                if let Some(found) = shrink(g, &smaller, mult - 1, r) {
                    return Some(found);
                }
            }
        }
        None
    }
    let found = shrink(g, &all, mult, r).expect("a star complement exists for every eigenvalue");
    Ok(found.into_iter().collect())
}
