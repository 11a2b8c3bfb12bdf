//! Canonical forms, automorphism orbits, extended orbits, and stream
//! deduplication.
//!
//! The canonical labeling engine is individualization-refinement: equitable
//! partition refinement (vertices keyed by color and neighbor-color
//! multiset), branching on the first smallest non-singleton cell, with
//! candidate pruning by automorphisms discovered from equal-certificate
//! leaves. The minimal leaf certificate is the canonical form; it is
//! version-stamped because persisted dedup archives depend on it.

use std::collections::{BTreeMap, HashMap};

use crate::graph::{Graph, VertexSet};

/// Bump when the labeling algorithm changes in a way that can alter forms.
pub const CANONICAL_FORM_VERSION: u8 = 1;

/// Isomorphism-invariant byte string: two graphs are isomorphic iff their
/// forms are equal (color-isomorphic, for colored forms). Layout: version
/// byte, order as big-endian `u32`, the number of declared color classes
/// (zero for the plain form) with their sizes, then the upper-triangle
/// adjacency bits of the canonically relabeled graph, row-major, packed
/// MSB-first. In the relabeled graph, declared color classes occupy
/// consecutive vertex ranges in class order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalForm {
    bytes: Vec<u8>,
}

impl CanonicalForm {
    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    /// Order of the underlying graph.
    pub fn order(&self) -> usize {
        u32::from_be_bytes([self.bytes[1], self.bytes[2], self.bytes[3], self.bytes[4]]) as usize
    }

    fn bits_offset(&self) -> usize {
        6 + 4 * self.bytes[5] as usize
    }

    /// Reconstructs the canonical representative graph. For colored forms
    /// the vertices come out grouped by color class, in class order.
    pub fn to_graph(&self) -> Graph {
        let n = self.order();
        let data = &self.bytes[self.bits_offset()..];
        let mut g = Graph::empty(n);
        let mut t = 0usize;
        for i in 0..n {
            for j in (i + 1)..n {
                if data[t / 8] >> (7 - t % 8) & 1 == 1 {
                    g.set_edge(i, j, true);
                }
                t += 1;
            }
        }
        g
    }
}

/// Partition of the vertices into disjoint classes covering `0..n`.
/// Classes are sorted by least member; members are ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    classes: Vec<Vec<usize>>,
}

impl OrbitPartition {
    fn from_class_ids(n: usize, ids: &[usize]) -> Self {
        let mut by_id: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..n {
            by_id.entry(ids[v]).or_default().push(v);
        }
        let mut classes: Vec<Vec<usize>> = by_id.into_values().collect();
        classes.sort_by_key(|c| c[0]);
        OrbitPartition { classes }
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_containing(&self, v: usize) -> Option<&[usize]> {
        self.classes
            .iter()
            .find(|c| c.binary_search(&v).is_ok())
            .map(|c| c.as_slice())
    }

    /// True when every class of `self` lies inside one class of `coarser`.
    pub fn refines(&self, coarser: &OrbitPartition) -> bool {
        self.classes.iter().all(|fine| {
            coarser
                .classes
                .iter()
                .any(|c| fine.iter().all(|v| c.binary_search(v).is_ok()))
        })
    }
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, v: usize) -> usize {
        if self.parent[v] != v {
            let root = self.find(self.parent[v]);
            self.parent[v] = root;
        }
        self.parent[v]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Equitable refinement: repeatedly re-key vertices by (color, sorted
/// neighbor-color multiset) until the partition is stable. New colors
/// preserve the order of the old ones, so initial color classes keep
/// their relative positions all the way to a discrete leaf.
fn refine(g: &Graph, colors: &mut [u32]) {
    let n = g.n();
    if n == 0 {
        return;
    }
    let mut num_colors = compact_colors(colors);
    loop {
        let mut keys: Vec<(u32, Vec<u32>)> = Vec::with_capacity(n);
        for v in 0..n {
            let mut nbr: Vec<u32> = g.neighbors(v).map(|u| colors[u]).collect();
            nbr.sort_unstable();
            keys.push((colors[v], nbr));
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
        let mut next = vec![0u32; n];
        let mut color = 0u32;
        for w in 1..n {
            if keys[order[w]] != keys[order[w - 1]] {
                color += 1;
            }
            next[order[w]] = color;
        }
        let new_count = color + 1;
        colors.copy_from_slice(&next);
        if new_count == num_colors {
            return;
        }
        num_colors = new_count;
    }
}

/// Renumbers colors to `0..c` preserving order; returns `c`.
fn compact_colors(colors: &mut [u32]) -> u32 {
    let mut seen: Vec<u32> = colors.to_vec();
    seen.sort_unstable();
    seen.dedup();
    for c in colors.iter_mut() {
        *c = seen.binary_search(c).unwrap() as u32;
    }
    seen.len() as u32
}

/// Splits `v` off as its own color class, placed before its former
/// cell-mates.
fn individualize(colors: &mut [u32], v: usize) {
    let cv = colors[v];
    for (u, c) in colors.iter_mut().enumerate() {
        if *c > cv || (*c == cv && u != v) {
            *c += 1;
        }
    }
}

fn certificate_bits(g: &Graph, pos: &[usize]) -> Vec<u64> {
    let n = g.n();
    let npairs = n * n.saturating_sub(1) / 2;
    let mut bits = vec![0u64; npairs.div_ceil(64)];
    for u in 0..n {
        for v in g.neighbors(u) {
            if v <= u {
                continue;
            }
            let (a, b) = if pos[u] < pos[v] {
                (pos[u], pos[v])
            } else {
                (pos[v], pos[u])
            };
            let t = a * n - a * (a + 1) / 2 + (b - a - 1);
            bits[t / 64] |= 1u64 << (63 - t % 64);
        }
    }
    bits
}

struct CanonSearch<'a> {
    g: &'a Graph,
    n: usize,
    best_bits: Option<Vec<u64>>,
    best_inv: Vec<usize>,
    gens: Vec<Vec<usize>>,
    path: Vec<usize>,
}

impl<'a> CanonSearch<'a> {
    fn run(g: &'a Graph, initial: &[u32]) -> (Vec<u64>, Vec<Vec<usize>>) {
        let n = g.n();
        let mut search = CanonSearch {
            g,
            n,
            best_bits: None,
            best_inv: Vec::new(),
            gens: Vec::new(),
            path: Vec::new(),
        };
        if n == 0 {
            return (Vec::new(), Vec::new());
        }
        let mut colors = initial.to_vec();
        search.node(&mut colors);
        (search.best_bits.unwrap(), search.gens)
    }

    fn node(&mut self, colors: &mut [u32]) {
        refine(self.g, colors);
        let num_colors = colors.iter().copied().max().map_or(0, |c| c + 1) as usize;
        if num_colors == self.n {
            self.leaf(colors);
            return;
        }

        // First smallest non-singleton cell, ties by color value.
        let mut sizes = vec![0usize; num_colors];
        for &c in colors.iter() {
            sizes[c as usize] += 1;
        }
        let target = (0..num_colors)
            .filter(|&c| sizes[c] > 1)
            .min_by_key(|&c| (sizes[c], c))
            .expect("non-discrete coloring has a non-singleton cell");
        let members: Vec<usize> = (0..self.n)
            .filter(|&v| colors[v] as usize == target)
            .collect();

        let mut processed: Vec<usize> = Vec::new();
        for &v in &members {
            if !processed.is_empty() && self.pruned_by_orbit(&processed, v) {
                continue;
            }
            let mut child = colors.to_vec();
            individualize(&mut child, v);
            self.path.push(v);
            self.node(&mut child);
            self.path.pop();
            processed.push(v);
        }
    }

    /// True when `v` lies in the orbit of an already-processed candidate
    /// under the subgroup of discovered automorphisms fixing the current
    /// individualization path pointwise.
    fn pruned_by_orbit(&mut self, processed: &[usize], v: usize) -> bool {
        let mut dsu = Dsu::new(self.n);
        let mut any = false;
        for gen in &self.gens {
            if self.path.iter().any(|&p| gen[p] != p) {
                continue;
            }
            any = true;
            for u in 0..self.n {
                dsu.union(u, gen[u]);
            }
        }
        if !any {
            return false;
        }
        let rv = dsu.find(v);
        processed.iter().any(|&p| dsu.find(p) == rv)
    }

    fn leaf(&mut self, colors: &[u32]) {
        let pos: Vec<usize> = colors.iter().map(|&c| c as usize).collect();
        let bits = certificate_bits(self.g, &pos);
        match &self.best_bits {
            None => {
                self.set_best(bits, &pos);
            }
            Some(best) => match bits.cmp(best) {
                std::cmp::Ordering::Less => self.set_best(bits, &pos),
                std::cmp::Ordering::Equal => {
                    // Two labelings with one certificate compose to an
                    // automorphism.
                    let sigma: Vec<usize> = (0..self.n).map(|u| self.best_inv[pos[u]]).collect();
                    if sigma.iter().enumerate().any(|(u, &s)| s != u)
                        && !self.gens.contains(&sigma)
                    {
                        debug_assert!(is_automorphism(self.g, &sigma));
                        self.gens.push(sigma);
                    }
                }
                std::cmp::Ordering::Greater => {}
            },
        }
    }

    fn set_best(&mut self, bits: Vec<u64>, pos: &[usize]) {
        let mut inv = vec![0usize; self.n];
        for (u, &p) in pos.iter().enumerate() {
            inv[p] = u;
        }
        self.best_bits = Some(bits);
        self.best_inv = inv;
    }
}

fn is_automorphism(g: &Graph, sigma: &[usize]) -> bool {
    (0..g.n()).all(|u| g.neighbors(u).all(|v| g.has_edge(sigma[u], sigma[v])))
}

fn form_from_bits(n: usize, class_sizes: &[usize], bits: &[u64]) -> Vec<u8> {
    let npairs = n * n.saturating_sub(1) / 2;
    assert!(class_sizes.len() <= 255, "at most 255 declared classes");
    let mut bytes = Vec::with_capacity(6 + 4 * class_sizes.len() + npairs.div_ceil(8));
    bytes.push(CANONICAL_FORM_VERSION);
    bytes.extend_from_slice(&(n as u32).to_be_bytes());
    bytes.push(class_sizes.len() as u8);
    for &s in class_sizes {
        bytes.extend_from_slice(&(s as u32).to_be_bytes());
    }
    let mut flat: Vec<u8> = bits.iter().flat_map(|w| w.to_be_bytes()).collect();
    flat.truncate(npairs.div_ceil(8));
    bytes.extend_from_slice(&flat);
    bytes
}

/// Canonical form of `g`: identical for isomorphic inputs, distinct
/// otherwise.
pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let (bits, _) = CanonSearch::run(g, &vec![0u32; g.n()]);
    CanonicalForm {
        bytes: form_from_bits(g.n(), &[], &bits),
    }
}

/// Canonical form of a vertex-colored graph: equal forms iff there is a
/// color-preserving isomorphism. [`CanonicalForm::to_graph`] returns the
/// representative with color classes in consecutive vertex ranges, so
/// callers can dedup structured candidates without losing role layout.
pub fn canonical_form_colored(g: &Graph, colors: &[u32]) -> CanonicalForm {
    let (form, _) = colored_form_with_gens(g, colors);
    form
}

/// Colored canonical form plus the discovered color-preserving
/// automorphisms.
fn colored_form_with_gens(g: &Graph, colors: &[u32]) -> (CanonicalForm, Vec<Vec<usize>>) {
    assert_eq!(colors.len(), g.n());
    let mut init = colors.to_vec();
    let c = compact_colors(&mut init);
    let mut sizes = vec![0usize; c as usize];
    for &col in &init {
        sizes[col as usize] += 1;
    }
    let (bits, gens) = CanonSearch::run(g, &init);
    (
        CanonicalForm {
            bytes: form_from_bits(g.n(), &sizes, &bits),
        },
        gens,
    )
}

/// Orbits of the color-preserving automorphism group: `u` and `v` share an
/// orbit iff the canonical forms with `u` (resp. `v`) individualized agree.
/// Generators discovered during the base canonical run pre-merge classes so
/// most vertices never need their own form computation.
fn orbits_under_colored(g: &Graph, base: &[u32]) -> OrbitPartition {
    let n = g.n();
    if n == 0 {
        return OrbitPartition { classes: Vec::new() };
    }
    let mut compact = base.to_vec();
    compact_colors(&mut compact);
    let (_, gens) = colored_form_with_gens(g, &compact);
    let mut dsu = Dsu::new(n);
    for gen in &gens {
        for v in 0..n {
            dsu.union(v, gen[v]);
        }
    }
    let mut reps: Vec<usize> = (0..n).filter(|&v| dsu.find(v) == v).collect();
    reps.sort_unstable();
    let mut by_key: HashMap<(u32, CanonicalForm), usize> = HashMap::new();
    let mut class_of_rep: HashMap<usize, usize> = HashMap::new();
    for &rep in &reps {
        let mut ind = compact.clone();
        individualize(&mut ind, rep);
        let (form, _) = colored_form_with_gens(g, &ind);
        let next_id = by_key.len();
        let id = *by_key.entry((compact[rep], form)).or_insert(next_id);
        class_of_rep.insert(rep, id);
    }
    let ids: Vec<usize> = {
        let mut dsu = dsu;
        (0..n).map(|v| class_of_rep[&dsu.find(v)]).collect()
    };
    OrbitPartition::from_class_ids(n, &ids)
}

/// Vertex orbits under the full automorphism group.
pub fn automorphism_orbits(g: &Graph) -> OrbitPartition {
    orbits_under_colored(g, &vec![0u32; g.n()])
}

/// The coarser partition grouping `u, v` iff `G[N(u)]` and `G[N(v)]` are
/// isomorphic: automorphism orbits merged by the canonical form of one
/// representative neighborhood per orbit.
pub fn extended_orbits(g: &Graph) -> OrbitPartition {
    let n = g.n();
    let orbits = automorphism_orbits(g);
    let mut by_form: HashMap<CanonicalForm, usize> = HashMap::new();
    let mut ids = vec![0usize; n];
    for class in orbits.classes() {
        let rep = class[0];
        let nbhd: VertexSet = g.neighbors(rep).collect();
        let sub = g.induced_subgraph(&nbhd).expect("neighborhood in range");
        let form = canonical_form(&sub);
        let next_id = by_form.len();
        let id = *by_form.entry(form).or_insert(next_id);
        for &v in class {
            ids[v] = id;
        }
    }
    OrbitPartition::from_class_ids(n, &ids)
}

/// Order of the full automorphism group, by orbit-stabilizer: fix the
/// smallest vertex in a nontrivial orbit, multiply by the orbit size,
/// recurse on the stabilizer.
pub fn automorphism_group_order(g: &Graph) -> u128 {
    fn rec(g: &Graph, fixed: &mut Vec<usize>) -> u128 {
        let n = g.n();
        let mut colors = vec![fixed.len() as u32; n];
        for (i, &v) in fixed.iter().enumerate() {
            colors[v] = i as u32;
        }
        let orbits = orbits_under_colored(g, &colors);
        let candidate = orbits
            .classes()
            .iter()
            .find(|c| c.len() > 1)
            .map(|c| (c[0], c.len()));
        match candidate {
            None => 1,
            Some((v, orbit_size)) => {
                fixed.push(v);
                let sub = rec(g, fixed);
                fixed.pop();
                orbit_size as u128 * sub
            }
        }
    }
    rec(g, &mut Vec::new())
}

/// One canonical representative per isomorphism class, in ascending
/// [`CanonicalForm`] order — deterministic regardless of input order.
pub fn dedup_canonical<I: IntoIterator<Item = Graph>>(graphs: I) -> Vec<Graph> {
    dedup_forms(graphs.into_iter().map(|g| canonical_form(&g)))
}

/// Dedup over precomputed forms; same ordering contract as
/// [`dedup_canonical`].
pub fn dedup_forms<I: IntoIterator<Item = CanonicalForm>>(forms: I) -> Vec<Graph> {
    let set: std::collections::BTreeSet<CanonicalForm> = forms.into_iter().collect();
    set.into_iter().map(|f| f.to_graph()).collect()
}
