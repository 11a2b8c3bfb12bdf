//! Clique-number decision: a coloring-bounded exact branch-and-bound plus a
//! symmetry-peeling wrapper that removes whole extended orbits per step.
//!
//! The pipeline only ever asks "is there a clique of size at least f", so
//! both solvers run in decision mode: the search stops at the first witness
//! of the cutoff size and reports `Reached(cutoff)`; when it completes below
//! the cutoff the exact clique number is reported.

use crate::graph::{Graph, VertexSet};
use crate::isomorph::extended_orbits;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliqueVerdict {
    /// The clique number, established exactly (below the cutoff).
    Exact(usize),
    /// A clique of at least the cutoff size exists.
    Reached(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueResult {
    pub verdict: CliqueVerdict,
    /// Vertices inducing a complete subgraph of the stated size.
    pub witness: Option<Vec<usize>>,
}

impl CliqueResult {
    fn exact(size: usize, witness: Option<Vec<usize>>) -> Self {
        CliqueResult {
            verdict: CliqueVerdict::Exact(size),
            witness,
        }
    }

    fn reached(cutoff: usize, witness: Vec<usize>) -> Self {
        CliqueResult {
            verdict: CliqueVerdict::Reached(cutoff),
            witness: Some(witness),
        }
    }

    fn assert_witness_valid(&self, g: &Graph) -> &Self {
        if let Some(w) = &self.witness {
            debug_assert!(is_clique(g, w), "witness {w:?} is not a clique");
            match self.verdict {
                CliqueVerdict::Exact(size) => debug_assert_eq!(w.len(), size),
                CliqueVerdict::Reached(cutoff) => debug_assert!(w.len() >= cutoff),
            }
        }
        self
    }
}

pub fn is_clique(g: &Graph, vertices: &[usize]) -> bool {
    vertices
        .iter()
        .enumerate()
        .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| g.has_edge(u, v)))
}

/// Colors of a greedy proper coloring in descending-degree order (ties by
/// index). The count is an upper bound on the clique number.
pub fn greedy_coloring_bound(g: &Graph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut color = vec![usize::MAX; n];
    let mut used = 0usize;
    for &v in &order {
        let mut taken = vec![false; used + 1];
        for u in g.neighbors(v) {
            if color[u] != usize::MAX && color[u] <= used {
                taken[color[u]] = true;
            }
        }
        let c = (0..).find(|&c| c >= taken.len() || !taken[c]).unwrap();
        color[v] = c;
        used = used.max(c + 1);
    }
    used
}

// Word-level candidate set helpers for the branch and bound.
fn intersect_with_row(p: &[u64], row: &[u64]) -> Vec<u64> {
    p.iter().zip(row).map(|(a, b)| a & b).collect()
}

fn set_members(p: &[u64]) -> Vec<usize> {
    let mut out = Vec::new();
    for (w, &word) in p.iter().enumerate() {
        let mut bits = word;
        while bits != 0 {
            out.push(w * 64 + bits.trailing_zeros() as usize);
            bits &= bits - 1;
        }
    }
    out
}

struct Bnb<'a> {
    g: &'a Graph,
    cutoff: usize,
    best: usize,
    best_witness: Vec<usize>,
    done: bool,
}

impl Bnb<'_> {
    /// Tomita-style: greedily color the candidates, visit them from the
    /// highest color down, prune when depth + color bound cannot beat the
    /// current best.
    fn expand(&mut self, candidates: &[u64], clique: &mut Vec<usize>) {
        if self.done {
            return;
        }
        let members = set_members(candidates);
        if members.is_empty() {
            if clique.len() > self.best {
                self.best = clique.len();
                self.best_witness = clique.clone();
            }
            return;
        }

        // Greedy coloring of the candidate subgraph in member order;
        // color numbers start at 1 so they bound achievable growth.
        let mut colors: Vec<usize> = Vec::with_capacity(members.len());
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for &v in &members {
            let c = classes
                .iter()
                .position(|class| class.iter().all(|&u| !self.g.has_edge(u, v)));
            match c {
                Some(c) => {
                    classes[c].push(v);
                    colors.push(c + 1);
                }
                None => {
                    classes.push(vec![v]);
                    colors.push(classes.len());
                }
            }
        }

        // Visit in ascending color, from the back.
        let mut order: Vec<(usize, usize)> = members
            .iter()
            .copied()
            .zip(colors.iter().copied())
            .collect();
        order.sort_by_key(|&(v, c)| (c, v));

        let mut remaining = candidates.to_vec();
        for &(v, color) in order.iter().rev() {
            if clique.len() + color <= self.best {
                return;
            }
            clique.push(v);
            if clique.len() > self.best && clique.len() >= self.cutoff {
                self.best = clique.len();
                self.best_witness = clique.clone();
                self.done = true;
                clique.pop();
                return;
            }
            let next = intersect_with_row(&remaining, self.g.row(v));
            self.expand(&next, clique);
            clique.pop();
            if self.done {
                return;
            }
            remaining[v / 64] &= !(1u64 << (v % 64));
        }
    }
}

/// Exact branch-and-bound with a coloring bound, in decision mode: returns
/// `Reached(cutoff)` with a witness as soon as a clique of the cutoff size
/// is found, otherwise the exact clique number.
pub fn max_clique_bnb(g: &Graph, cutoff: usize) -> CliqueResult {
    let n = g.n();
    if cutoff == 0 {
        return CliqueResult::reached(0, Vec::new());
    }
    if n == 0 {
        return CliqueResult::exact(0, None);
    }
    let words = g.row(0).len();
    let mut all = vec![0u64; words];
    for v in 0..n {
        all[v / 64] |= 1u64 << (v % 64);
    }
    let mut bnb = Bnb {
        g,
        cutoff,
        best: 0,
        best_witness: Vec::new(),
        done: false,
    };
    let mut clique = Vec::new();
    bnb.expand(&all, &mut clique);
    let mut witness = bnb.best_witness.clone();
    witness.sort_unstable();
    let result = if bnb.best >= cutoff {
        CliqueResult::reached(cutoff, witness)
    } else {
        CliqueResult::exact(bnb.best, (bnb.best > 0).then_some(witness))
    };
    result.assert_witness_valid(g);
    result
}

/// Symmetry-peeling clique decision: while the graph is larger than the
/// cutoff, compute extended orbits; recurse into the neighborhood of one
/// representative of the largest class (with cutoff - 1), account for the
/// `+1`, then delete the whole class. Falls back to the branch and bound
/// when every class is a singleton. Verdicts agree with
/// [`max_clique_bnb`] on the same cutoff.
pub fn clique_number_symmetric(g: &Graph, cutoff: usize) -> CliqueResult {
    let result = symmetric_rec(g, cutoff);
    result.assert_witness_valid(g);
    result
}

fn symmetric_rec(g: &Graph, cutoff: usize) -> CliqueResult {
    if cutoff == 0 {
        return CliqueResult::reached(0, Vec::new());
    }
    // ids map current working-graph vertices back to vertices of `g`.
    let mut work = g.clone();
    let mut ids: Vec<usize> = (0..g.n()).collect();
    let mut best = 0usize;
    let mut best_witness: Vec<usize> = Vec::new();

    while work.n() > cutoff {
        let orbits = extended_orbits(&work);
        if orbits.num_classes() == work.n() {
            break;
        }
        let class = orbits
            .classes()
            .iter()
            .max_by_key(|c| (c.len(), std::cmp::Reverse(c[0])))
            .expect("nonempty graph has orbit classes")
            .clone();
        let v = class[0];

        let nbhd: VertexSet = work.neighbors(v).collect();
        let nbhd_ids: Vec<usize> = nbhd.iter().map(|u| ids[u]).collect();
        let sub = work.induced_subgraph(&nbhd).expect("neighborhood in range");
        let inner = symmetric_rec(&sub, cutoff - 1);
        match inner.verdict {
            CliqueVerdict::Reached(_) => {
                let mut witness = vec![ids[v]];
                witness.extend(inner.witness.unwrap_or_default().iter().map(|&u| nbhd_ids[u]));
                witness.sort_unstable();
                return CliqueResult::reached(cutoff, witness);
            }
            CliqueVerdict::Exact(w) => {
                if w + 1 > best {
                    best = w + 1;
                    best_witness = vec![ids[v]];
                    best_witness
                        .extend(inner.witness.unwrap_or_default().iter().map(|&u| nbhd_ids[u]));
                    best_witness.sort_unstable();
                }
            }
        }

        let keep: VertexSet = (0..work.n())
            .filter(|v| class.binary_search(v).is_err())
            .collect();
        ids = keep.iter().map(|u| ids[u]).collect();
        work = work.induced_subgraph(&keep).expect("kept set in range");
    }

    let residue = max_clique_bnb(&work, cutoff);
    match residue.verdict {
        CliqueVerdict::Reached(_) => {
            let mut witness: Vec<usize> = residue
                .witness
                .unwrap_or_default()
                .iter()
                .map(|&u| ids[u])
                .collect();
            witness.sort_unstable();
            CliqueResult::reached(cutoff, witness)
        }
        CliqueVerdict::Exact(w) => {
            if w > best {
                best = w;
                best_witness = residue
                    .witness
                    .unwrap_or_default()
                    .iter()
                    .map(|&u| ids[u])
                    .collect();
                best_witness.sort_unstable();
            }
            CliqueResult::exact(best, (best > 0).then_some(best_witness))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::petersen;

    /// Oracle: clique number by exhaustive subset enumeration (n <= 20).
    fn omega_exhaustive(g: &Graph) -> usize {
        let n = g.n();
        let mut best = 0usize;
        for mask in 0u32..(1u32 << n) {
            let members: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if members.len() > best && is_clique(g, &members) {
                best = members.len();
            }
        }
        best
    }

    fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(seed);
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.random_bool(p) {
                    g.set_edge(u, v, true);
                }
            }
        }
        g
    }

    #[test]
    fn coloring_bound_examples() {
        assert_eq!(greedy_coloring_bound(&Graph::complete(5)), 5);
        assert_eq!(greedy_coloring_bound(&Graph::cycle(5)), 3);
        assert_eq!(greedy_coloring_bound(&Graph::empty(7)), 1);
    }

    #[test]
    fn coloring_bound_dominates_omega() {
        for seed in 0..30 {
            let g = random_graph(12, 0.5, seed);
            assert!(greedy_coloring_bound(&g) >= omega_exhaustive(&g));
        }
    }

    #[test]
    fn bnb_examples() {
        let r = max_clique_bnb(&petersen(), 3);
        assert_eq!(r.verdict, CliqueVerdict::Exact(2));

        // K6 minus a perfect matching = K_{2,2,2}; omega = 3.
        let mut g = Graph::complete(6);
        for (u, v) in [(0, 1), (2, 3), (4, 5)] {
            g.set_edge(u, v, false);
        }
        let r = max_clique_bnb(&g, 10);
        assert_eq!(r.verdict, CliqueVerdict::Exact(3));

        let r = max_clique_bnb(&Graph::complete(7), 5);
        assert_eq!(r.verdict, CliqueVerdict::Reached(5));
        assert!(r.witness.unwrap().len() >= 5);
    }

    #[test]
    fn symmetric_examples() {
        let r = clique_number_symmetric(&petersen(), 3);
        assert_eq!(r.verdict, CliqueVerdict::Exact(2));

        // Disjoint K5 u K5 contains K5.
        let mut edges = Vec::new();
        for u in 0..5 {
            for v in (u + 1)..5 {
                edges.push((u, v));
                edges.push((u + 5, v + 5));
            }
        }
        let g = Graph::from_edges(10, &edges);
        let r = clique_number_symmetric(&g, 4);
        assert_eq!(r.verdict, CliqueVerdict::Reached(4));
    }

    #[test]
    fn bnb_matches_exhaustive() {
        for seed in 0..60 {
            let n = 4 + (seed as usize % 9);
            let p = [0.3, 0.5, 0.7][seed as usize % 3];
            let g = random_graph(n, p, seed);
            let omega = omega_exhaustive(&g);
            let r = max_clique_bnb(&g, n + 1);
            assert_eq!(r.verdict, CliqueVerdict::Exact(omega), "{g:?}");
            let decided = max_clique_bnb(&g, omega.max(1));
            assert_eq!(decided.verdict, CliqueVerdict::Reached(omega.max(1)));
        }
    }

    #[test]
    fn solvers_agree() {
        for seed in 0..40 {
            let n = 6 + (seed as usize % 12);
            let p = [0.3, 0.5, 0.7][seed as usize % 3];
            let g = random_graph(n, p, seed + 1000);
            for cutoff in [2, 4, n + 1] {
                let a = max_clique_bnb(&g, cutoff);
                let b = clique_number_symmetric(&g, cutoff);
                assert_eq!(a.verdict, b.verdict, "cutoff {cutoff} on {g:?}");
            }
        }
    }

    #[test]
    fn deleting_vertex_never_increases_omega() {
        for seed in 0..20 {
            let g = random_graph(10, 0.5, seed + 77);
            let omega = omega_exhaustive(&g);
            for v in 0..10 {
                let keep: VertexSet = (0..10).filter(|&u| u != v).collect();
                let h = g.induced_subgraph(&keep).unwrap();
                assert!(omega_exhaustive(&h) <= omega);
            }
        }
    }
}
