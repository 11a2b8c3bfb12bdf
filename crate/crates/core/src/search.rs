//! Isomorph-free extension of induced-subgraph candidates to
//! star-complement order, graceful-pair reduction, and the end-to-end
//! verdict pipeline.
//!
//! Extension is level-wise: every subset of the current vertex set spawns a
//! one-vertex extension, interlacing prunes, and canonical dedup collapses
//! isomorphs between levels. When a graceful pair exists, only extensions
//! adjacent to both members need generating at that level; the pair
//! minimizing the surviving extension count is chosen. Intermediate levels
//! may contain the eigenvalue `r`; only the final level filters it out,
//! since an extension can lose an eigenvalue its subgraph had.

use rayon::prelude::*;
use std::sync::atomic::{AtomicU64, Ordering};
use thiserror::Error;

use crate::feasibility::{srg_spectrum, FeasibilityError, SrgParams};
use crate::graph::{Graph, VertexSet};
use crate::interlacing::{Interlacer, InterlacingError};
use crate::isomorph::{automorphism_group_order, canonical_form, dedup_forms};
use crate::spectra::eigenvalue_multiplicity_exact;
use crate::starcomp::{comparability_graph, has_f_clique, StarCompError};

#[derive(Debug, Error, PartialEq)]
pub enum SearchError {
    #[error("spectrum has no integral restricted eigenvalue / multiplicity")]
    NonIntegralSpectrum,
    #[error("seed of order {order} exceeds the target order {target}")]
    SeedTooLarge { order: usize, target: usize },
    #[error("seed already has {r} as an eigenvalue (multiplicity {mult})")]
    SeedHasEigenvalue { r: i64, mult: usize },
    #[error("extension only enumerates subsets of up to 62 vertices, got {0}")]
    SeedTooWide(usize),
    #[error(transparent)]
    Feasibility(#[from] FeasibilityError),
    #[error(transparent)]
    Interlacing(#[from] InterlacingError),
    #[error(transparent)]
    StarComp(#[from] StarCompError),
}

/// Fixed data of one search run: parameters, the chosen eigenvalue `r`
/// (the positive restricted eigenvalue), the star-complement order
/// `v - f`, and the clique target `f`.
#[derive(Clone, Debug)]
pub struct SearchContext {
    pub params: SrgParams,
    pub r: i64,
    pub target_order: usize,
    pub clique_target: usize,
    interlacer: Interlacer,
}

impl SearchContext {
    pub fn new(params: SrgParams) -> Result<Self, SearchError> {
        let spec = srg_spectrum(&params)?;
        let (Some(r), Some(f)) = (spec.r_exact, spec.f_exact) else {
            return Err(SearchError::NonIntegralSpectrum);
        };
        Ok(SearchContext {
            params,
            r,
            target_order: (params.v - f) as usize,
            clique_target: f as usize,
            interlacer: Interlacer::new(&params)?,
        })
    }

    pub fn interlacer(&self) -> &Interlacer {
        &self.interlacer
    }
}

/// Counters of one extension run. `generated = pruned + passed`: every
/// candidate examined is either dropped (interlacing failure, final
/// eigenvalue filter, isomorph duplicate) or emitted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ExtendStats {
    pub generated: u64,
    pub pruned: u64,
    pub passed: u64,
}

impl ExtendStats {
    fn absorb(&mut self, other: ExtendStats) {
        self.generated += other.generated;
        self.pruned += other.pruned;
        self.passed += other.passed;
    }
}

/// All interlacing one-vertex extensions of `h`, deduplicated by canonical
/// form, in ascending canonical order.
pub fn extend_one_vertex(h: &Graph, ctx: &SearchContext) -> Result<Vec<Graph>, SearchError> {
    let (graphs, _) = extend_level(std::slice::from_ref(h), ctx, false)?;
    Ok(graphs)
}

/// One level of extension over a whole candidate list: per input graph,
/// either the graceful-pair shortcut (when `graceful` and a pair exists)
/// or the full subset enumeration, then interlacing and canonical dedup.
pub fn extend_level(
    level: &[Graph],
    ctx: &SearchContext,
    graceful: bool,
) -> Result<(Vec<Graph>, ExtendStats), SearchError> {
    for g in level {
        if g.n() > 62 {
            return Err(SearchError::SeedTooWide(g.n()));
        }
    }
    let results: Vec<(Vec<Graph>, u64)> = level
        .par_iter()
        .map(|g| {
            if graceful {
                let pairs = graceful_pairs_with_extensions(g, ctx);
                if let Some(best) = pairs
                    .into_iter()
                    .min_by_key(|p| (p.extensions.len(), p.pair))
                {
                    let examined = 1u64 << g.n().saturating_sub(2);
                    return (best.extensions, examined);
                }
            }
            let m = g.n();
            let survivors: Vec<Graph> = (0u64..(1u64 << m))
                .filter_map(|mask| {
                    let ext = g
                        .add_vertex(&VertexSet::from_mask(mask))
                        .expect("mask within vertex range");
                    ctx.interlacer.interlaces(&ext).then_some(ext)
                })
                .collect();
            (survivors, 1u64 << m)
        })
        .collect();

    let mut stats = ExtendStats::default();
    let mut all: Vec<Graph> = Vec::new();
    for (graphs, examined) in results {
        stats.generated += examined;
        stats.pruned += examined - graphs.len() as u64;
        all.extend(graphs);
    }
    let forms = all.par_iter().map(canonical_form).collect::<Vec<_>>();
    let deduped = dedup_forms(forms);
    stats.pruned += all.len() as u64 - deduped.len() as u64;
    stats.passed += deduped.len() as u64;
    Ok((deduped, stats))
}

/// A graceful pair together with the extension list it licenses: the
/// interlacing extensions adjacent to both members.
#[derive(Clone, Debug)]
pub struct GracefulPair {
    pub pair: (usize, usize),
    pub extensions: Vec<Graph>,
}

/// Deficient pairs `(u,v)` (adjacent with fewer than λ, or non-adjacent
/// with fewer than μ common neighbors in `H`) such that every interlacing
/// one-vertex extension adjacent to both lacks the eigenvalue `r`;
/// verified by exhausting the `2^(|H|-2)` subsets.
pub fn graceful_pairs(h: &Graph, ctx: &SearchContext) -> Vec<(usize, usize)> {
    graceful_pairs_with_extensions(h, ctx)
        .into_iter()
        .map(|p| p.pair)
        .collect()
}

pub fn graceful_pairs_with_extensions(h: &Graph, ctx: &SearchContext) -> Vec<GracefulPair> {
    let m = h.n();
    if m <= 2 {
        return Vec::new();
    }
    let others: Vec<usize> = (0..m).collect();
    let mut out = Vec::new();
    for u in 0..m {
        for v in (u + 1)..m {
            let common = h.common_neighbor_count(u, v).expect("u != v");
            let deficient = if h.has_edge(u, v) {
                (common as u64) < ctx.params.lambda
            } else {
                (common as u64) < ctx.params.mu
            };
            if !deficient {
                continue;
            }
            let free: Vec<usize> = others
                .iter()
                .copied()
                .filter(|&w| w != u && w != v)
                .collect();
            let mut extensions = Vec::new();
            let mut graceful = true;
            for mask in 0u64..(1u64 << free.len()) {
                let mut nbrs: VertexSet = [u, v].into_iter().collect();
                for (bit, &w) in free.iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        nbrs.insert(w);
                    }
                }
                let ext = h.add_vertex(&nbrs).expect("subset of V(H)");
                if !ctx.interlacer.interlaces(&ext) {
                    continue;
                }
                if eigenvalue_multiplicity_exact(&ext, ctx.r) != 0 {
                    graceful = false;
                    break;
                }
                extensions.push(ext);
            }
            if graceful {
                out.push(GracefulPair {
                    pair: (u, v),
                    extensions,
                });
            }
        }
    }
    out
}

fn check_seed(h: &Graph, ctx: &SearchContext) -> Result<(), SearchError> {
    if h.n() > ctx.target_order {
        return Err(SearchError::SeedTooLarge {
            order: h.n(),
            target: ctx.target_order,
        });
    }
    let mult = eigenvalue_multiplicity_exact(h, ctx.r);
    if mult != 0 {
        return Err(SearchError::SeedHasEigenvalue { r: ctx.r, mult });
    }
    Ok(())
}

/// Extends `h` level-wise to the star-complement order. The final level
/// keeps exactly the graphs that interlace and do not contain `r` as an
/// eigenvalue. `graceful` enables the pair shortcut; `on_level` observes
/// each completed level (for checkpoint persistence).
pub fn extend_to_order_opts(
    h: &Graph,
    ctx: &SearchContext,
    graceful: bool,
    on_level: &mut dyn FnMut(usize, &[Graph]),
) -> Result<(Vec<Graph>, ExtendStats), SearchError> {
    check_seed(h, ctx)?;
    let mut stats = ExtendStats::default();
    let mut level: Vec<Graph> = vec![h.clone()];
    let mut order = h.n();
    while order < ctx.target_order {
        let (next, s) = extend_level(&level, ctx, graceful)?;
        stats.absorb(s);
        order += 1;
        if order == ctx.target_order {
            let before = next.len() as u64;
            let kept: Vec<Graph> = next
                .into_iter()
                .filter(|g| eigenvalue_multiplicity_exact(g, ctx.r) == 0)
                .collect();
            let dropped = before - kept.len() as u64;
            stats.pruned += dropped;
            stats.passed -= dropped;
            level = kept;
        } else {
            level = next;
        }
        on_level(order, &level);
        if level.is_empty() {
            break;
        }
    }
    Ok((level, stats))
}

/// Default extension: graceful shortcut on, no observer.
pub fn extend_to_order(h: &Graph, ctx: &SearchContext) -> Result<Vec<Graph>, SearchError> {
    extend_to_order_opts(h, ctx, true, &mut |_, _| {}).map(|(g, _)| g)
}

/// Largest induced subgraph of `h` without `r` as an eigenvalue, of order
/// at most `target_order`. Interlacing caps the order at
/// `|H| - mult_r(H)`. Ties are broken by the largest automorphism group,
/// then lexicographically smallest vertex set.
pub fn scc_select(h: &Graph, ctx: &SearchContext) -> VertexSet {
    let n = h.n();
    let k_r = eigenvalue_multiplicity_exact(h, ctx.r);
    let max_order = (n - k_r).min(ctx.target_order);
    for size in (0..=max_order).rev() {
        let mut best: Option<(u128, Vec<usize>)> = None;
        for members in Combinations::new(n, size) {
            let set: VertexSet = members.iter().copied().collect();
            let sub = h.induced_subgraph(&set).expect("members in range");
            if eigenvalue_multiplicity_exact(&sub, ctx.r) != 0 {
                continue;
            }
            let aut = automorphism_group_order(&sub);
            let better = match &best {
                None => true,
                Some((best_aut, best_members)) => {
                    aut > *best_aut || (aut == *best_aut && members < *best_members)
                }
            };
            if better {
                best = Some((aut, members));
            }
        }
        if let Some((_, members)) = best {
            return members.into_iter().collect();
        }
    }
    VertexSet::new()
}

/// Ascending-index k-subsets of 0..n.
struct Combinations {
    n: usize,
    current: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            current: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let k = self.current.len();
        if k == 0 {
            self.done = true;
            return Some(out);
        }
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.current[i] < self.n - (k - i) {
                self.current[i] += 1;
                for j in (i + 1)..k {
                    self.current[j] = self.current[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictStatus {
    /// No comparability graph of any candidate has an f-clique: the seed
    /// cannot occur inside the hypothetical SRG.
    Refuted,
    /// Some comparability graph has an f-clique; the candidate is
    /// consistent with existence.
    WitnessFound,
    /// The run stopped early (level width cap); levels persisted via the
    /// observer are restartable.
    ExhaustedInconclusive,
}

#[derive(Clone, Copy, Debug)]
pub struct Verdict {
    pub status: VerdictStatus,
    pub scc_order: usize,
    pub generated: u64,
    pub pruned: u64,
    pub passed: u64,
    pub comparability_tested: u64,
}

/// Full per-seed pipeline: select a star-complement core, extend to target
/// order, build comparability graphs (with `min_order = clique_target`),
/// and decide the f-clique criterion.
pub fn pipeline_check(seed: &Graph, ctx: &SearchContext) -> Verdict {
    pipeline_check_with(seed, ctx, None, &mut |_, _| {})
}

pub fn pipeline_check_with(
    seed: &Graph,
    ctx: &SearchContext,
    max_level_width: Option<usize>,
    on_level: &mut dyn FnMut(usize, &[Graph]),
) -> Verdict {
    let scc = scc_select(seed, ctx);
    let h0 = seed.induced_subgraph(&scc).expect("scc within seed");
    let scc_order = h0.n();

    let mut stats = ExtendStats::default();
    let mut level: Vec<Graph> = vec![h0];
    let mut order = scc_order;
    let mut interrupted = false;
    while order < ctx.target_order {
        let (next, s) = match extend_level(&level, ctx, true) {
            Ok(v) => v,
            Err(_) => {
                // Extension cannot fail for a valid scc; treat as pruned out.
                level.clear();
                break;
            }
        };
        stats.absorb(s);
        order += 1;
        if order == ctx.target_order {
            let before = next.len() as u64;
            let kept: Vec<Graph> = next
                .into_iter()
                .filter(|g| eigenvalue_multiplicity_exact(g, ctx.r) == 0)
                .collect();
            let dropped = before - kept.len() as u64;
            stats.pruned += dropped;
            stats.passed -= dropped;
            level = kept;
        } else {
            level = next;
        }
        on_level(order, &level);
        if level.is_empty() {
            break;
        }
        if let Some(cap) = max_level_width {
            if level.len() > cap {
                interrupted = true;
                break;
            }
        }
    }

    if interrupted {
        return Verdict {
            status: VerdictStatus::ExhaustedInconclusive,
            scc_order,
            generated: stats.generated,
            pruned: stats.pruned,
            passed: stats.passed,
            comparability_tested: 0,
        };
    }

    let tested = AtomicU64::new(0);
    let witness = level
        .par_iter()
        .find_map_any(|candidate| {
            tested.fetch_add(1, Ordering::Relaxed);
            match comparability_graph(candidate, ctx.r, ctx.clique_target) {
                Ok(outcome) => match outcome.built() {
                    Some(comp) => has_f_clique(&comp, ctx.clique_target).then_some(()),
                    None => None,
                },
                Err(_) => None,
            }
        })
        .is_some();

    Verdict {
        status: if witness {
            VerdictStatus::WitnessFound
        } else {
            VerdictStatus::Refuted
        },
        scc_order,
        generated: stats.generated,
        pruned: stats.pruned,
        passed: stats.passed,
        comparability_tested: tested.into_inner(),
    }
}
