//! Scenario runners: declaratively described seed families with an
//! expected outcome, reproducing the checkable facts of the case analysis
//! for the (75,32,10,16) parameters plus a positive control on Petersen.
//!
//! Generation is level-wise: a structured core, then one attached vertex
//! per level, with interlacing pruning after every insertion and
//! role-colored canonical dedup between levels (role classes stay in fixed
//! vertex ranges, so each level can read the partial structure back from
//! the graph itself). Final counts are over plain isomorphism classes.

use anyhow::{anyhow, bail, Context, Result};
use rayon::prelude::*;
use std::collections::BTreeSet;

use specter_core::feasibility::{enumerate_b_vectors, BVector, DegreeHistogram};
use specter_core::graph::VertexSet;
use specter_core::interlacing::Interlacer;
use specter_core::isomorph::{canonical_form, canonical_form_colored, CanonicalForm};
use specter_core::search::{pipeline_check, SearchContext, VerdictStatus};
use specter_core::{Graph, SrgParams};

/// How attachment-to-attachment edges are enumerated in a clique-plus-
/// attachments family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgePolicy {
    /// Every pattern on the unforced pairs.
    Enumerate,
    /// Only patterns with at least one attachment-attachment edge.
    AtLeastOneEdge,
}

/// Declarative seed-family constructions.
#[derive(Clone, Debug)]
pub enum Construction {
    /// `K_base` plus one vertex per entry of `counts`, each adjacent to
    /// exactly that many base vertices (all placements enumerated), with
    /// forced (non-)adjacencies among the attachments and the remaining
    /// attachment pairs governed by the policy.
    CliqueAttachments {
        base: usize,
        counts: Vec<usize>,
        forced_adjacent: Vec<(usize, usize)>,
        forced_nonadjacent: Vec<(usize, usize)>,
        policy: EdgePolicy,
    },
    /// The b-vector counting lemma for the given degree histogram.
    BVectors {
        degrees: Vec<u64>,
        caps: Vec<(usize, u64)>,
    },
    /// K4 with one 0-attachment, two 1-attachments, two 3-attachments and
    /// fourteen 2-attachments under the `(1,26,42,2)` case constraints.
    Case126422,
    /// K4 with two 0-attachments, one 1-attachment, one 3-attachment and
    /// fifteen 2-attachments under the `(2,23,45,1)` case constraints.
    Case223451,
    /// K4 with three 3-attachments, eight 2-attachments and eight
    /// 1-attachments under the `(0,29,39,3)` case constraints.
    Case029393,
    /// K5 plus triangles in distinct common-neighbor cells, wired by
    /// matchings / co-matchings; one run per choice of cells.
    TrianglePacking { triangles: usize },
    /// Full pipeline on a fixed Petersen seed.
    PetersenPipeline,
}

#[derive(Clone, Debug)]
pub enum Expectation {
    /// No generated candidate interlaces; optionally pin the candidate count.
    NoneInterlace { generated: Option<usize> },
    /// Exactly this many interlacing survivors (isomorph-free).
    Count(u64),
    /// Exact solution set of the counting lemma.
    BVectorSet(Vec<Vec<u64>>),
    /// Sorted per-configuration survivor counts.
    SurvivorCounts(Vec<u64>),
    /// The pipeline finds an f-clique witness.
    WitnessFound,
}

#[derive(Clone, Debug)]
pub struct ScenarioSpec {
    pub name: &'static str,
    pub params: (u64, u64, u64, u64),
    pub heavy: bool,
    pub construction: Construction,
    pub expected: Expectation,
}

pub fn builtin(name: &str) -> Option<ScenarioSpec> {
    let p75 = (75, 32, 10, 16);
    match name {
        "x1x2-adjacent" => Some(ScenarioSpec {
            name: "x1x2-adjacent",
            params: p75,
            heavy: false,
            construction: Construction::CliqueAttachments {
                base: 4,
                counts: vec![3, 3, 0],
                forced_adjacent: vec![(0, 1)],
                forced_nonadjacent: vec![],
                policy: EdgePolicy::Enumerate,
            },
            expected: Expectation::NoneInterlace { generated: Some(6) },
        }),
        "x3-independent" => Some(ScenarioSpec {
            name: "x3-independent",
            params: p75,
            heavy: false,
            construction: Construction::CliqueAttachments {
                base: 4,
                counts: vec![3, 3, 3],
                forced_adjacent: vec![],
                forced_nonadjacent: vec![],
                policy: EdgePolicy::AtLeastOneEdge,
            },
            expected: Expectation::NoneInterlace { generated: None },
        }),
        "k4-bvectors" => Some(ScenarioSpec {
            name: "k4-bvectors",
            params: p75,
            heavy: false,
            construction: Construction::BVectors {
                degrees: vec![0, 0, 0, 4],
                caps: vec![(4, 0)],
            },
            expected: Expectation::BVectorSet(vec![
                vec![0, 29, 39, 3, 0],
                vec![1, 26, 42, 2, 0],
                vec![2, 23, 45, 1, 0],
                vec![3, 20, 48, 0, 0],
            ]),
        }),
        "k5-config" => Some(ScenarioSpec {
            name: "k5-config",
            params: p75,
            heavy: false,
            construction: Construction::BVectors {
                degrees: vec![0, 0, 0, 0, 5],
                caps: vec![],
            },
            expected: Expectation::BVectorSet(vec![vec![0, 0, 70, 0, 0, 0]]),
        }),
        "case-223451" => Some(ScenarioSpec {
            name: "case-223451",
            params: p75,
            heavy: true,
            construction: Construction::Case223451,
            expected: Expectation::NoneInterlace { generated: None },
        }),
        "case-126422" => Some(ScenarioSpec {
            name: "case-126422",
            params: p75,
            heavy: true,
            construction: Construction::Case126422,
            expected: Expectation::Count(3597),
        }),
        "case-029393" => Some(ScenarioSpec {
            name: "case-029393",
            params: p75,
            heavy: true,
            construction: Construction::Case029393,
            expected: Expectation::Count(18089),
        }),
        "triangles-8" => Some(ScenarioSpec {
            name: "triangles-8",
            params: p75,
            heavy: true,
            construction: Construction::TrianglePacking { triangles: 8 },
            expected: Expectation::SurvivorCounts(vec![0, 1]),
        }),
        "petersen-positive" => Some(ScenarioSpec {
            name: "petersen-positive",
            params: (10, 3, 0, 1),
            heavy: false,
            construction: Construction::PetersenPipeline,
            expected: Expectation::WitnessFound,
        }),
        _ => None,
    }
}

/// Loads a scenario from a plain `key=value` file. The generic
/// construction kinds are expressible; the bespoke case runners remain
/// built-ins.
///
/// ```text
/// name=k4-bvectors
/// params=75,32,10,16
/// construction=bvectors        # or clique-attachments
/// degrees=0,0,0,4
/// cap=4=0                      # repeatable
/// expect=bvector-set
/// bvector=0,29,39,3,0          # repeatable, for expect=bvector-set
/// # clique-attachments keys:
/// # base=4  counts=3,3,0  forced-adjacent=0-1  forced-nonadjacent=...
/// # policy=enumerate|at-least-one-edge
/// # expect=none-interlace|count  expect-candidates=6  expect-count=3597
/// ```
pub fn from_file(path: &std::path::Path) -> Result<ScenarioSpec> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading scenario file {}", path.display()))?;
    let mut fields: std::collections::HashMap<&str, Vec<&str>> = std::collections::HashMap::new();
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("expected key=value, got {line:?}"))?;
        fields.entry(key.trim()).or_default().push(value.trim());
    }
    let one = |key: &str| -> Result<&str> {
        let vals = fields
            .get(key)
            .ok_or_else(|| anyhow!("missing required key {key:?}"))?;
        if vals.len() != 1 {
            bail!("key {key:?} given {} times, expected once", vals.len());
        }
        Ok(vals[0])
    };
    let numbers = |text: &str| -> Result<Vec<u64>> {
        text.split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|e| anyhow!("{t:?}: {e}")))
            .collect()
    };

    let name = one("name")?.to_string();
    let p = numbers(one("params")?)?;
    if p.len() != 4 {
        bail!("params must be v,k,lambda,mu");
    }
    let params = (p[0], p[1], p[2], p[3]);

    let construction = match one("construction")? {
        "bvectors" => Construction::BVectors {
            degrees: numbers(one("degrees")?)?,
            caps: fields
                .get("cap")
                .map(|caps| {
                    caps.iter()
                        .map(|c| {
                            let (i, n) = c
                                .split_once('=')
                                .ok_or_else(|| anyhow!("cap must be index=bound, got {c:?}"))?;
                            Ok((i.trim().parse::<usize>()?, n.trim().parse::<u64>()?))
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .transpose()?
                .unwrap_or_default(),
        },
        "clique-attachments" => {
            let pairs = |key: &str| -> Result<Vec<(usize, usize)>> {
                fields
                    .get(key)
                    .map(|list| {
                        list.iter()
                            .map(|t| {
                                let (a, b) = t
                                    .split_once('-')
                                    .ok_or_else(|| anyhow!("{key} must be a-b, got {t:?}"))?;
                                Ok((a.trim().parse::<usize>()?, b.trim().parse::<usize>()?))
                            })
                            .collect()
                    })
                    .transpose()
                    .map(Option::unwrap_or_default)
            };
            Construction::CliqueAttachments {
                base: one("base")?.parse()?,
                counts: numbers(one("counts")?)?
                    .into_iter()
                    .map(|c| c as usize)
                    .collect(),
                forced_adjacent: pairs("forced-adjacent")?,
                forced_nonadjacent: pairs("forced-nonadjacent")?,
                policy: match one("policy")? {
                    "enumerate" => EdgePolicy::Enumerate,
                    "at-least-one-edge" => EdgePolicy::AtLeastOneEdge,
                    other => bail!("unknown policy {other:?}"),
                },
            }
        }
        other => bail!("unknown construction {other:?} (file scenarios support bvectors and clique-attachments)"),
    };

    let expected = match one("expect")? {
        "none-interlace" => Expectation::NoneInterlace {
            generated: fields
                .get("expect-candidates")
                .map(|v| one("expect-candidates").and_then(|_| Ok(v[0].parse::<usize>()?)))
                .transpose()?,
        },
        "count" => Expectation::Count(one("expect-count")?.parse()?),
        "bvector-set" => Expectation::BVectorSet(
            fields
                .get("bvector")
                .ok_or_else(|| anyhow!("expect=bvector-set needs bvector= lines"))?
                .iter()
                .map(|t| numbers(t))
                .collect::<Result<Vec<_>>>()?,
        ),
        other => bail!("unknown expectation {other:?}"),
    };

    Ok(ScenarioSpec {
        name: Box::leak(name.into_boxed_str()),
        params,
        heavy: false,
        construction,
        expected,
    })
}

pub fn builtin_names() -> &'static [&'static str] {
    &[
        "x1x2-adjacent",
        "x3-independent",
        "k4-bvectors",
        "k5-config",
        "case-223451",
        "case-126422",
        "case-029393",
        "triangles-8",
        "petersen-positive",
    ]
}

pub struct Report {
    pub lines: Vec<String>,
    pub ok: bool,
}

/// Collects the deterministic stdout report while mirroring each line to
/// stderr as it happens, so long scenarios show progress.
struct Progress {
    lines: Vec<String>,
}

impl Progress {
    fn new(lines: Vec<String>) -> Self {
        for l in &lines {
            eprintln!("{l}");
        }
        Progress { lines }
    }

    fn push(&mut self, line: String) {
        eprintln!("{line}");
        self.lines.push(line);
    }
}

/// Runs a scenario; `_seed` is reserved for sampled scenarios (all current
/// built-ins are exhaustive).
pub fn run(spec: &ScenarioSpec, _seed: u64) -> Result<Report> {
    let (v, k, l, m) = spec.params;
    let params = SrgParams::new(v, k, l, m)?;
    let mut lines = Progress::new(vec![
        format!("scenario {}", spec.name),
        format!("params ({v},{k},{l},{m})"),
    ]);
    let ok = match &spec.construction {
        Construction::CliqueAttachments {
            base,
            counts,
            forced_adjacent,
            forced_nonadjacent,
            policy,
        } => run_clique_attachments(
            &params,
            *base,
            counts,
            forced_adjacent,
            forced_nonadjacent,
            *policy,
            &spec.expected,
            &mut lines,
        )?,
        Construction::BVectors { degrees, caps } => {
            run_bvectors(&params, degrees, caps, &spec.expected, &mut lines)?
        }
        Construction::Case126422 => run_case_126422(&params, &spec.expected, &mut lines)?,
        Construction::Case223451 => run_case_223451(&params, &spec.expected, &mut lines)?,
        Construction::Case029393 => run_case_029393(&params, &spec.expected, &mut lines)?,
        Construction::TrianglePacking { triangles } => {
            run_triangle_packing(&params, *triangles, &spec.expected, &mut lines)?
        }
        Construction::PetersenPipeline => run_petersen_pipeline(&params, &spec.expected, &mut lines)?,
    };
    lines.push(format!(
        "result: {}",
        if ok { "ok" } else { "FAILED" }
    ));
    Ok(Report {
        lines: lines.lines,
        ok,
    })
}

fn subsets_of_size(n: usize, k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    for mask in 0u64..(1 << n) {
        if mask.count_ones() as usize == k {
            out.push(mask);
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn run_clique_attachments(
    params: &SrgParams,
    base: usize,
    counts: &[usize],
    forced_adjacent: &[(usize, usize)],
    forced_nonadjacent: &[(usize, usize)],
    policy: EdgePolicy,
    expected: &Expectation,
    lines: &mut Progress,
) -> Result<bool> {
    let t = counts.len();
    let free_pairs: Vec<(usize, usize)> = (0..t)
        .flat_map(|a| ((a + 1)..t).map(move |b| (a, b)))
        .filter(|p| !forced_adjacent.contains(p) && !forced_nonadjacent.contains(p))
        .collect();

    let placements: Vec<Vec<u64>> = counts.iter().map(|&c| subsets_of_size(base, c)).collect();
    let mut labeled: Vec<Graph> = Vec::new();
    let mut placement_choice = vec![0usize; t];
    loop {
        // one combination of base placements
        for edge_mask in 0u64..(1 << free_pairs.len()) {
            let attachment_edges: Vec<(usize, usize)> = forced_adjacent
                .iter()
                .copied()
                .chain(
                    free_pairs
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| edge_mask >> i & 1 == 1)
                        .map(|(_, &p)| p),
                )
                .collect();
            if policy == EdgePolicy::AtLeastOneEdge && attachment_edges.is_empty() {
                continue;
            }
            let mut edges: Vec<(usize, usize)> = Vec::new();
            for u in 0..base {
                for v in (u + 1)..base {
                    edges.push((u, v));
                }
            }
            for (i, &choice) in placement_choice.iter().enumerate() {
                let mask = placements[i][choice];
                for b in 0..base {
                    if mask >> b & 1 == 1 {
                        edges.push((b, base + i));
                    }
                }
            }
            for &(a, b) in &attachment_edges {
                edges.push((base + a, base + b));
            }
            labeled.push(Graph::from_edges(base + t, &edges));
        }
        // advance placement combination
        let mut i = 0;
        loop {
            if i == t {
                break;
            }
            placement_choice[i] += 1;
            if placement_choice[i] < placements[i].len() {
                break;
            }
            placement_choice[i] = 0;
            i += 1;
        }
        if i == t {
            break;
        }
    }

    let forms: BTreeSet<CanonicalForm> = labeled.par_iter().map(canonical_form).collect();
    let candidates: Vec<Graph> = forms.iter().map(|f| f.to_graph()).collect();
    lines.push(format!("candidates: {}", candidates.len()));

    let tester = Interlacer::new(params)?;
    let survivors: Vec<&Graph> = candidates
        .par_iter()
        .filter(|g| tester.interlaces(g))
        .collect();
    lines.push(format!("interlacing survivors: {}", survivors.len()));

    match expected {
        Expectation::NoneInterlace { generated } => {
            let mut ok = survivors.is_empty();
            if let Some(want) = generated {
                ok &= candidates.len() == *want;
                lines.push(format!("expected candidates: {want}"));
            }
            lines.push("expectation none-interlace".to_string());
            Ok(ok)
        }
        _ => bail!("unsupported expectation for clique-attachments"),
    }
}

fn run_bvectors(
    params: &SrgParams,
    degrees: &[u64],
    caps: &[(usize, u64)],
    expected: &Expectation,
    lines: &mut Progress,
) -> Result<bool> {
    let hist = DegreeHistogram::new(degrees.to_vec())?;
    let got = enumerate_b_vectors(params, &hist, caps);
    for b in &got {
        let entries: Vec<String> = b.0.iter().map(|x| x.to_string()).collect();
        lines.push(format!("b-vector ({})", entries.join(",")));
    }
    match expected {
        Expectation::BVectorSet(want) => {
            let mut want: Vec<BVector> = want.iter().map(|v| BVector(v.clone())).collect();
            want.sort();
            let ok = got == want;
            lines.push(format!("expectation exact set of {}", want.len()));
            if !ok {
                for miss in want.iter().filter(|w| !got.contains(w)) {
                    lines.push(format!("missing {:?}", miss.0));
                }
                for extra in got.iter().filter(|g| !want.contains(g)) {
                    lines.push(format!("unexpected {:?}", extra.0));
                }
            }
            Ok(ok)
        }
        _ => bail!("unsupported expectation for b-vectors"),
    }
}

/// Interlacing filter plus role-colored canonical dedup.
fn filter_dedup(candidates: &[Graph], colors: &[u32], tester: &Interlacer) -> Vec<Graph> {
    let forms: Vec<CanonicalForm> = candidates
        .par_iter()
        .filter(|g| tester.interlaces(g))
        .map(|g| canonical_form_colored(g, colors))
        .collect();
    let set: BTreeSet<CanonicalForm> = forms.into_iter().collect();
    set.into_iter().map(|f| f.to_graph()).collect()
}

/// One interlacing-pruned, colored-dedup level step. Candidates fold
/// straight into per-worker form sets so only distinct forms stay resident.
fn level_step(
    level: &[Graph],
    expand: &(dyn Fn(&Graph) -> Vec<Graph> + Sync),
    colors: &[u32],
    tester: &Interlacer,
) -> Vec<Graph> {
    let set = level
        .par_iter()
        .fold(BTreeSet::new, |mut acc: BTreeSet<CanonicalForm>, g| {
            for cand in expand(g) {
                if tester.interlaces(&cand) {
                    acc.insert(canonical_form_colored(&cand, colors));
                }
            }
            acc
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    set.into_iter().map(|f| f.to_graph()).collect()
}

fn count_plain_classes(graphs: &[Graph]) -> u64 {
    let forms: BTreeSet<CanonicalForm> = graphs.par_iter().map(canonical_form).collect();
    forms.len() as u64
}

fn check_count(
    survivors: u64,
    expected: &Expectation,
    lines: &mut Progress,
) -> Result<bool> {
    match expected {
        Expectation::Count(want) => {
            lines.push(format!("expectation count {want}"));
            Ok(survivors == *want)
        }
        Expectation::NoneInterlace { .. } => {
            lines.push("expectation none-interlace".to_string());
            Ok(survivors == 0)
        }
        _ => bail!("unsupported expectation for case runner"),
    }
}

// Case (1,26,42,2): K4; x_1, x_2 in X_3 nonadjacent; x_0 in X_0 adjacent
// to both; x_0', x_0'' its nonadjacent X_1 neighbors, each adjacent to one
// or both of x_1, x_2 and to exactly 15 - t vertices of the fourteen
// X_2^{-0} vertices; X_2^{-0} degrees couple to the x_1/x_2/x_0'/x_0''
// adjacency pattern. Layout: 0-3 K4, 4-5 {x_1,x_2}, 6 x_0, 7-8
// {x_0',x_0''}, 9.. X_2^{-0}.
fn run_case_126422(
    params: &SrgParams,
    expected: &Expectation,
    lines: &mut Progress,
) -> Result<bool> {
    let tester = Interlacer::new(params)?;
    let triples = subsets_of_size(4, 3);

    // Core: 9 vertices.
    let mut core = Vec::new();
    for &t1 in &triples {
        for &t2 in &triples {
            for p_nbr in 0..4u64 {
                for pp_nbr in 0..4u64 {
                    // adjacency of x_0', x_0'' to {x_1, x_2}: nonempty subsets
                    for p_t in 1..4u64 {
                        for pp_t in 1..4u64 {
                            // every x_i needs a neighbor among x_0', x_0''
                            let x1_covered = p_t & 1 == 1 || pp_t & 1 == 1;
                            let x2_covered = p_t & 2 == 2 || pp_t & 2 == 2;
                            if !x1_covered || !x2_covered {
                                continue;
                            }
                            let mut edges: Vec<(usize, usize)> = Vec::new();
                            for u in 0..4 {
                                for v in (u + 1)..4 {
                                    edges.push((u, v));
                                }
                            }
                            for b in 0..4 {
                                if t1 >> b & 1 == 1 {
                                    edges.push((b as usize, 4));
                                }
                                if t2 >> b & 1 == 1 {
                                    edges.push((b as usize, 5));
                                }
                            }
                            edges.push((4, 6));
                            edges.push((5, 6));
                            edges.push((6, 7));
                            edges.push((6, 8));
                            edges.push((p_nbr as usize, 7));
                            edges.push((pp_nbr as usize, 8));
                            if p_t & 1 == 1 {
                                edges.push((4, 7));
                            }
                            if p_t & 2 == 2 {
                                edges.push((5, 7));
                            }
                            if pp_t & 1 == 1 {
                                edges.push((4, 8));
                            }
                            if pp_t & 2 == 2 {
                                edges.push((5, 8));
                            }
                            core.push(Graph::from_edges(9, &edges));
                        }
                    }
                }
            }
        }
    }
    let colors_at = |q: usize| -> Vec<u32> {
        let mut c = vec![0u32; 9 + q];
        c[4] = 1;
        c[5] = 1;
        c[6] = 2;
        c[7] = 3;
        c[8] = 3;
        for item in c.iter_mut().skip(9) {
            *item = 4;
        }
        c
    };
    let mut level = filter_dedup(&core, &colors_at(0), &tester);
    lines.push(format!("core candidates: {}", level.len()));

    const X2_TOTAL: usize = 14;
    for q in 1..=X2_TOTAL {
        let remaining_after = (X2_TOTAL - q) as i64;
        let expand = |g: &Graph| -> Vec<Graph> {
            let n = g.n();
            let x2_range: Vec<usize> = (9..n).collect();
            // per existing X_2^{-0} vertex: target intra-degree and deficit
            let mut targets = Vec::new();
            for &v in &x2_range {
                let a1 = g.has_edge(v, 4);
                let a2 = g.has_edge(v, 5);
                let tv = u64::from(g.has_edge(v, 7)) + u64::from(g.has_edge(v, 8));
                let target = match (a1, a2) {
                    (true, true) => 0i64,
                    (true, false) | (false, true) => tv as i64 - 1,
                    (false, false) => tv as i64,
                };
                let current = x2_range
                    .iter()
                    .filter(|&&w| w != v && g.has_edge(v, w))
                    .count() as i64;
                targets.push((v, target, current));
            }
            // x_0' / x_0'' X2-degree targets: 15 - t
            let side_target = |side: usize| -> i64 {
                let t = i64::from(g.has_edge(4, side)) + i64::from(g.has_edge(5, side));
                15 - t
            };
            let side_current = |side: usize| -> i64 {
                x2_range.iter().filter(|&&w| g.has_edge(w, side)).count() as i64
            };
            let x1_used = x2_range.iter().any(|&w| g.has_edge(w, 4));
            let x2_used = x2_range.iter().any(|&w| g.has_edge(w, 5));

            let mut out = Vec::new();
            let pairs = subsets_of_size(4, 2);
            for &k4pair in &pairs {
                for a_mask in 0u64..4 {
                    let a1 = a_mask & 1 == 1;
                    let a2 = a_mask & 2 == 2;
                    if (a1 && x1_used) || (a2 && x2_used) {
                        continue;
                    }
                    for t_mask in 0u64..4 {
                        let tw = t_mask.count_ones() as i64;
                        let w_target = match (a1, a2) {
                            (true, true) => {
                                if t_mask != 3 {
                                    continue;
                                }
                                0i64
                            }
                            (true, false) | (false, true) => {
                                if tw < 1 {
                                    continue;
                                }
                                tw - 1
                            }
                            (false, false) => tw,
                        };
                        // x_0'/x_0'' capacity bookkeeping
                        let mut side_deficit = [0i64; 2];
                        let mut side_ok = true;
                        for (idx, side) in [7usize, 8].into_iter().enumerate() {
                            let tgt = side_target(side);
                            let cur = side_current(side)
                                + i64::from(t_mask >> idx & 1 == 1);
                            if cur > tgt {
                                side_ok = false;
                                break;
                            }
                            side_deficit[idx] = tgt - cur;
                            if side_deficit[idx] > remaining_after {
                                side_ok = false;
                                break;
                            }
                        }
                        if !side_ok {
                            continue;
                        }
                        // edges into existing X2 vertices with spare degree
                        let open: Vec<usize> = targets
                            .iter()
                            .filter(|&&(_, tgt, cur)| cur < tgt)
                            .map(|&(v, _, _)| v)
                            .collect();
                        for sub_mask in 0u64..(1 << open.len()) {
                            let count = sub_mask.count_ones() as i64;
                            if count > w_target {
                                continue;
                            }
                            // deficits still satisfiable afterwards
                            let w_deficit = w_target - count;
                            if w_deficit > remaining_after {
                                continue;
                            }
                            let mut feasible = true;
                            for (i, &(v, tgt, cur)) in targets.iter().enumerate() {
                                let _ = i;
                                let bump = open
                                    .iter()
                                    .position(|&o| o == v)
                                    .map(|p| i64::from(sub_mask >> p & 1 == 1))
                                    .unwrap_or(0);
                                let deficit = tgt - (cur + bump);
                                if deficit < 0 || deficit > remaining_after {
                                    feasible = false;
                                    break;
                                }
                            }
                            if !feasible {
                                continue;
                            }
                            let mut nbrs = VertexSet::new();
                            for b in 0..4 {
                                if k4pair >> b & 1 == 1 {
                                    nbrs.insert(b as usize);
                                }
                            }
                            if a1 {
                                nbrs.insert(4);
                            }
                            if a2 {
                                nbrs.insert(5);
                            }
                            if t_mask & 1 == 1 {
                                nbrs.insert(7);
                            }
                            if t_mask & 2 == 2 {
                                nbrs.insert(8);
                            }
                            for (p, &o) in open.iter().enumerate() {
                                if sub_mask >> p & 1 == 1 {
                                    nbrs.insert(o);
                                }
                            }
                            out.push(g.add_vertex(&nbrs).expect("in range"));
                        }
                    }
                }
            }
            out
        };
        level = level_step(&level, &expand, &colors_at(q), &tester);
        lines.push(format!("level {q}: {} candidates", level.len()));
        if level.is_empty() {
            break;
        }
    }

    // Final exact-degree filter (equalities must hold at full size).
    let finals: Vec<Graph> = level
        .into_iter()
        .filter(|g| {
            let n = g.n();
            if n != 9 + X2_TOTAL {
                return false;
            }
            let x2_range: Vec<usize> = (9..n).collect();
            for &v in &x2_range {
                let a1 = g.has_edge(v, 4);
                let a2 = g.has_edge(v, 5);
                let tv = i64::from(g.has_edge(v, 7)) + i64::from(g.has_edge(v, 8));
                let target = match (a1, a2) {
                    (true, true) => 0,
                    (true, false) | (false, true) => tv - 1,
                    (false, false) => tv,
                };
                let deg = x2_range
                    .iter()
                    .filter(|&&w| w != v && g.has_edge(v, w))
                    .count() as i64;
                if deg != target {
                    return false;
                }
            }
            for side in [7usize, 8] {
                let t = i64::from(g.has_edge(4, side)) + i64::from(g.has_edge(5, side));
                let deg = x2_range.iter().filter(|&&w| g.has_edge(w, side)).count() as i64;
                if deg != 15 - t {
                    return false;
                }
            }
            true
        })
        .collect();
    let survivors = count_plain_classes(&finals);
    lines.push(format!("interlacing survivors: {survivors}"));
    check_count(survivors, expected, lines)
}

// Case (2,23,45,1): K4; x_3 in X_3; x_1' in X_1 adjacent to x_1; x_0, x_1
// in X_0 nonadjacent, both adjacent to x_3; fifteen X_2^0 vertices
// adjacent to x_0, not x_1, with intra-degree exactly 1 - [v~x_3] +
// [v~x_1'], and x_3 having exactly [x_3~x_1'] neighbors there. Layout:
// 0-3 K4, 4 x_3, 5 x_1', 6 x_0, 7 x_1, 8.. X_2^0.
fn run_case_223451(
    params: &SrgParams,
    expected: &Expectation,
    lines: &mut Progress,
) -> Result<bool> {
    let tester = Interlacer::new(params)?;
    let triples = subsets_of_size(4, 3);

    let mut core = Vec::new();
    for &t3 in &triples {
        for x1p_nbr in 0..4u64 {
            for x3_x1p in [false, true] {
                let mut edges: Vec<(usize, usize)> = Vec::new();
                for u in 0..4 {
                    for v in (u + 1)..4 {
                        edges.push((u, v));
                    }
                }
                for b in 0..4 {
                    if t3 >> b & 1 == 1 {
                        edges.push((b as usize, 4));
                    }
                }
                edges.push((x1p_nbr as usize, 5));
                edges.push((4, 6)); // x_3 ~ x_0
                edges.push((4, 7)); // x_3 ~ x_1
                edges.push((5, 7)); // x_1' ~ x_1
                if x3_x1p {
                    edges.push((4, 5));
                }
                core.push(Graph::from_edges(8, &edges));
            }
        }
    }
    let colors_at = |q: usize| -> Vec<u32> {
        let mut c = vec![0u32; 8 + q];
        c[4] = 1;
        c[5] = 2;
        c[6] = 3;
        c[7] = 4;
        for item in c.iter_mut().skip(8) {
            *item = 5;
        }
        c
    };
    let mut level = filter_dedup(&core, &colors_at(0), &tester);
    lines.push(format!("core candidates: {}", level.len()));

    const X2_TOTAL: usize = 15;
    for q in 1..=X2_TOTAL {
        let remaining_after = (X2_TOTAL - q) as i64;
        let expand = |g: &Graph| -> Vec<Graph> {
            let n = g.n();
            let x2_range: Vec<usize> = (8..n).collect();
            let x3_cap: i64 = i64::from(g.has_edge(4, 5)); // lem: 1 iff x_3 ~ x_1'
            let x3_current: i64 = x2_range.iter().filter(|&&w| g.has_edge(w, 4)).count() as i64;
            let mut targets = Vec::new();
            for &v in &x2_range {
                let t = i64::from(g.has_edge(v, 4));
                let s = i64::from(g.has_edge(v, 5));
                let target = 1 - t + s;
                let current = x2_range
                    .iter()
                    .filter(|&&w| w != v && g.has_edge(v, w))
                    .count() as i64;
                targets.push((v, target, current));
            }
            let mut out = Vec::new();
            let pairs = subsets_of_size(4, 2);
            for &k4pair in &pairs {
                for t_x3 in [0i64, 1] {
                    if t_x3 == 1 && x3_current + 1 > x3_cap {
                        continue;
                    }
                    // the exact x_3 count must stay reachable (it never
                    // grows later once all vertices are placed)
                    for s_x1p in [0i64, 1] {
                        let w_target = 1 - t_x3 + s_x1p;
                        let open: Vec<usize> = targets
                            .iter()
                            .filter(|&&(_, tgt, cur)| cur < tgt)
                            .map(|&(v, _, _)| v)
                            .collect();
                        for sub_mask in 0u64..(1 << open.len()) {
                            let count = sub_mask.count_ones() as i64;
                            if count > w_target {
                                continue;
                            }
                            if w_target - count > remaining_after {
                                continue;
                            }
                            let mut feasible = true;
                            for &(v, tgt, cur) in &targets {
                                let bump = open
                                    .iter()
                                    .position(|&o| o == v)
                                    .map(|p| i64::from(sub_mask >> p & 1 == 1))
                                    .unwrap_or(0);
                                let deficit = tgt - (cur + bump);
                                if deficit < 0 || deficit > remaining_after {
                                    feasible = false;
                                    break;
                                }
                            }
                            if !feasible {
                                continue;
                            }
                            let mut nbrs = VertexSet::new();
                            for b in 0..4 {
                                if k4pair >> b & 1 == 1 {
                                    nbrs.insert(b as usize);
                                }
                            }
                            nbrs.insert(6); // x_0
                            if t_x3 == 1 {
                                nbrs.insert(4);
                            }
                            if s_x1p == 1 {
                                nbrs.insert(5);
                            }
                            for (p, &o) in open.iter().enumerate() {
                                if sub_mask >> p & 1 == 1 {
                                    nbrs.insert(o);
                                }
                            }
                            out.push(g.add_vertex(&nbrs).expect("in range"));
                        }
                    }
                }
            }
            out
        };
        level = level_step(&level, &expand, &colors_at(q), &tester);
        lines.push(format!("level {q}: {} candidates", level.len()));
        if level.is_empty() {
            break;
        }
    }

    let finals: Vec<Graph> = level
        .into_iter()
        .filter(|g| {
            let n = g.n();
            if n != 8 + X2_TOTAL {
                return false;
            }
            let x2_range: Vec<usize> = (8..n).collect();
            let x3_cap = i64::from(g.has_edge(4, 5));
            let x3_count = x2_range.iter().filter(|&&w| g.has_edge(w, 4)).count() as i64;
            if x3_count != x3_cap {
                return false;
            }
            for &v in &x2_range {
                let t = i64::from(g.has_edge(v, 4));
                let s = i64::from(g.has_edge(v, 5));
                let deg = x2_range
                    .iter()
                    .filter(|&&w| w != v && g.has_edge(v, w))
                    .count() as i64;
                if deg != 1 - t + s {
                    return false;
                }
            }
            true
        })
        .collect();
    let survivors = count_plain_classes(&finals);
    lines.push(format!("interlacing survivors: {survivors}"));
    check_count(survivors, expected, lines)
}

// Case (0,29,39,3): K4; X_3 = {x_0, x_1, x_2} independent, three K4-triples
// each; eight X_2^0 vertices (2 K4-neighbors, adjacent to x_0, at most one
// adjacent to x_1 and one to x_2, k+m+t <= 3, X_2^0 minus N(x_i)
// triangle-free); eight X_1^{-0} vertices (1 K4-neighbor, not adjacent to
// x_0, at most one missing x_1 and one missing x_2, X_2^0-degree exactly
// 9-t-m+k, X_1^{-0} minus N(x_i) triangle-free) where the X_2^0 side must
// see exactly 5+k+m+t of them. Layout: 0-3 K4, 4 x_0, 5-6 {x_1,x_2},
// 7-14 X_2^0, 15.. X_1^{-0}.
fn run_case_029393(
    params: &SrgParams,
    expected: &Expectation,
    lines: &mut Progress,
) -> Result<bool> {
    let tester = Interlacer::new(params)?;
    let triples = subsets_of_size(4, 3);

    let mut core = Vec::new();
    for &t0 in &triples {
        for &t1 in &triples {
            for &t2 in &triples {
                let mut edges: Vec<(usize, usize)> = Vec::new();
                for u in 0..4 {
                    for v in (u + 1)..4 {
                        edges.push((u, v));
                    }
                }
                for b in 0..4 {
                    if t0 >> b & 1 == 1 {
                        edges.push((b as usize, 4));
                    }
                    if t1 >> b & 1 == 1 {
                        edges.push((b as usize, 5));
                    }
                    if t2 >> b & 1 == 1 {
                        edges.push((b as usize, 6));
                    }
                }
                core.push(Graph::from_edges(7, &edges));
            }
        }
    }

    const X2_TOTAL: usize = 8;
    const X1_TOTAL: usize = 8;
    let colors_at = |x2: usize, x1: usize| -> Vec<u32> {
        let mut c = vec![0u32; 7 + x2 + x1];
        c[4] = 1;
        c[5] = 2;
        c[6] = 2;
        for item in c.iter_mut().skip(7).take(x2) {
            *item = 3;
        }
        for item in c.iter_mut().skip(7 + x2) {
            *item = 4;
        }
        c
    };

    let mut level = filter_dedup(&core, &colors_at(0, 0), &tester);
    lines.push(format!("core candidates: {}", level.len()));

    let x0_triple = |g: &Graph| -> Vec<usize> { (0..4).filter(|&b| g.has_edge(b, 4)).collect() };

    // Phase 1: X_2^0.
    for q in 1..=X2_TOTAL {
        let expand = |g: &Graph| -> Vec<Graph> {
            let n = g.n();
            let x2_range: Vec<usize> = (7..n).collect();
            let t0 = x0_triple(g);
            let x1_used = x2_range.iter().any(|&w| g.has_edge(w, 5));
            let x2_used = x2_range.iter().any(|&w| g.has_edge(w, 6));
            // existing budget: k_v + m_v + t_v <= 3
            let budget: Vec<(usize, i64)> = x2_range
                .iter()
                .map(|&v| {
                    let m = (0..4).filter(|&b| g.has_edge(b, v) && t0.contains(&b)).count() as i64;
                    let t = i64::from(g.has_edge(v, 5)) + i64::from(g.has_edge(v, 6));
                    let k = x2_range
                        .iter()
                        .filter(|&&w| w != v && g.has_edge(v, w))
                        .count() as i64;
                    (v, 3 - m - t - k)
                })
                .collect();
            let mut out = Vec::new();
            let pairs = subsets_of_size(4, 2);
            for &k4pair in &pairs {
                let m_w = (0..4)
                    .filter(|&b| k4pair >> b & 1 == 1 && t0.contains(&(b as usize)))
                    .count() as i64;
                for a_mask in 0u64..4 {
                    let a1 = a_mask & 1 == 1;
                    let a2 = a_mask & 2 == 2;
                    if (a1 && x1_used) || (a2 && x2_used) {
                        continue;
                    }
                    let t_w = i64::from(a1) + i64::from(a2);
                    let k_cap = 3 - m_w - t_w;
                    if k_cap < 0 {
                        continue;
                    }
                    let open: Vec<usize> = budget
                        .iter()
                        .filter(|&&(_, spare)| spare > 0)
                        .map(|&(v, _)| v)
                        .collect();
                    for sub_mask in 0u64..(1 << open.len()) {
                        if (sub_mask.count_ones() as i64) > k_cap {
                            continue;
                        }
                        let mut nbrs = VertexSet::new();
                        for b in 0..4 {
                            if k4pair >> b & 1 == 1 {
                                nbrs.insert(b as usize);
                            }
                        }
                        nbrs.insert(4);
                        if a1 {
                            nbrs.insert(5);
                        }
                        if a2 {
                            nbrs.insert(6);
                        }
                        for (p, &o) in open.iter().enumerate() {
                            if sub_mask >> p & 1 == 1 {
                                nbrs.insert(o);
                            }
                        }
                        let cand = g.add_vertex(&nbrs).expect("in range");
                        // triangle-free inside X_2^0 away from each x_i
                        if !x2_triangle_free(&cand, 7, n + 1) {
                            continue;
                        }
                        out.push(cand);
                    }
                }
            }
            out
        };
        level = level_step(&level, &expand, &colors_at(q, 0), &tester);
        lines.push(format!("x2 level {q}: {} candidates", level.len()));
        if level.is_empty() {
            break;
        }
    }

    // Phase 2: X_1^{-0}.
    if !level.is_empty() {
        for q in 1..=X1_TOTAL {
            let remaining_after = (X1_TOTAL - q) as i64;
            let expand = |g: &Graph| -> Vec<Graph> {
                let n = g.n();
                let x2_range: Vec<usize> = (7..7 + X2_TOTAL).collect();
                let x1_range: Vec<usize> = (7 + X2_TOTAL..n).collect();
                let t0 = x0_triple(g);
                // exact X_1^{-0} capacity of each X_2^0 vertex: 5+k+m+t
                let caps: Vec<(usize, i64, i64)> = x2_range
                    .iter()
                    .map(|&v| {
                        let m = (0..4)
                            .filter(|&b| g.has_edge(b, v) && t0.contains(&b))
                            .count() as i64;
                        let t = i64::from(g.has_edge(v, 5)) + i64::from(g.has_edge(v, 6));
                        let k = x2_range
                            .iter()
                            .filter(|&&w| w != v && g.has_edge(v, w))
                            .count() as i64;
                        let cur = x1_range.iter().filter(|&&w| g.has_edge(v, w)).count() as i64;
                        (v, 5 + k + m + t, cur)
                    })
                    .collect();
                let miss1 = x1_range.iter().filter(|&&w| !g.has_edge(w, 5)).count();
                let miss2 = x1_range.iter().filter(|&&w| !g.has_edge(w, 6)).count();
                let mut out = Vec::new();
                for k4_nbr in 0..4usize {
                    let m_w = i64::from(t0.contains(&k4_nbr));
                    for a_mask in 0u64..4 {
                        let a1 = a_mask & 1 == 1;
                        let a2 = a_mask & 2 == 2;
                        if (!a1 && miss1 >= 1) || (!a2 && miss2 >= 1) {
                            continue;
                        }
                        let t_w = i64::from(a1) + i64::from(a2);
                        // x2 subset + intra edges; w's exact X_2^0 count is
                        // 9 - t - m + k_final, checked at the end
                        let x2_open: Vec<usize> = caps
                            .iter()
                            .filter(|&&(_, cap, cur)| cur < cap)
                            .map(|&(v, _, _)| v)
                            .collect();
                        for x2_mask in 0u64..(1 << x2_open.len()) {
                            let x2_count = x2_mask.count_ones() as i64;
                            // k_final = x2_count - 9 + t + m must be in 0..=7
                            let k_target = x2_count - 9 + t_w + m_w;
                            if !(0..=7).contains(&k_target) {
                                continue;
                            }
                            // each x2 vertex deficit must stay satisfiable
                            let mut ok = true;
                            for &(v, cap, cur) in &caps {
                                let bump = x2_open
                                    .iter()
                                    .position(|&o| o == v)
                                    .map(|p| i64::from(x2_mask >> p & 1 == 1))
                                    .unwrap_or(0);
                                let deficit = cap - (cur + bump);
                                if deficit < 0 || deficit > remaining_after {
                                    ok = false;
                                    break;
                                }
                            }
                            if !ok {
                                continue;
                            }
                            for intra_mask in 0u64..(1 << x1_range.len()) {
                                let intra = intra_mask.count_ones() as i64;
                                if intra > k_target {
                                    continue;
                                }
                                if k_target - intra > remaining_after {
                                    continue;
                                }
                                let mut nbrs = VertexSet::new();
                                nbrs.insert(k4_nbr);
                                if a1 {
                                    nbrs.insert(5);
                                }
                                if a2 {
                                    nbrs.insert(6);
                                }
                                for (p, &o) in x2_open.iter().enumerate() {
                                    if x2_mask >> p & 1 == 1 {
                                        nbrs.insert(o);
                                    }
                                }
                                for (p, &o) in x1_range.iter().enumerate() {
                                    if intra_mask >> p & 1 == 1 {
                                        nbrs.insert(o);
                                    }
                                }
                                let cand = g.add_vertex(&nbrs).expect("in range");
                                if !x1_triangle_free(&cand, 7 + X2_TOTAL, n + 1) {
                                    continue;
                                }
                                out.push(cand);
                            }
                        }
                    }
                }
                out
            };
            level = level_step(&level, &expand, &colors_at(X2_TOTAL, q), &tester);
            lines.push(format!("x1 level {q}: {} candidates", level.len()));
            if level.is_empty() {
                break;
            }
        }
    }

    // Final exact checks.
    let finals: Vec<Graph> = level
        .into_iter()
        .filter(|g| {
            let n = g.n();
            if n != 7 + X2_TOTAL + X1_TOTAL {
                return false;
            }
            let t0 = x0_triple(g);
            let x2_range: Vec<usize> = (7..7 + X2_TOTAL).collect();
            let x1_range: Vec<usize> = (7 + X2_TOTAL..n).collect();
            // X_2^0 side: exactly 5+k+m+t neighbors in X_1^{-0}
            for &v in &x2_range {
                let m = (0..4).filter(|&b| g.has_edge(b, v) && t0.contains(&b)).count() as i64;
                let t = i64::from(g.has_edge(v, 5)) + i64::from(g.has_edge(v, 6));
                let k = x2_range
                    .iter()
                    .filter(|&&w| w != v && g.has_edge(v, w))
                    .count() as i64;
                let l = x1_range.iter().filter(|&&w| g.has_edge(v, w)).count() as i64;
                if l != 5 + k + m + t {
                    return false;
                }
            }
            // X_1^{-0} side: exactly 9-t-m+k neighbors in X_2^0
            for &w in &x1_range {
                let m = (0..4).filter(|&b| g.has_edge(b, w) && t0.contains(&b)).count() as i64;
                let t = i64::from(g.has_edge(w, 5)) + i64::from(g.has_edge(w, 6));
                let k = x1_range
                    .iter()
                    .filter(|&&u| u != w && g.has_edge(u, w))
                    .count() as i64;
                let l = x2_range.iter().filter(|&&v| g.has_edge(v, w)).count() as i64;
                if l != 9 - t - m + k {
                    return false;
                }
            }
            true
        })
        .collect();
    let survivors = count_plain_classes(&finals);
    lines.push(format!("interlacing survivors: {survivors}"));
    check_count(survivors, expected, lines)
}

/// No triangle among the vertices of `[from, to)` that avoid x_1 (vertex 5)
/// and none among those avoiding x_2 (vertex 6).
fn x2_triangle_free(g: &Graph, from: usize, to: usize) -> bool {
    for avoid in [5usize, 6] {
        let members: Vec<usize> = (from..to.min(g.n()))
            .filter(|&v| !g.has_edge(v, avoid))
            .collect();
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate().skip(i + 1) {
                if !g.has_edge(a, b) {
                    continue;
                }
                for &c in members.iter().skip(j + 1) {
                    if g.has_edge(a, c) && g.has_edge(b, c) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn x1_triangle_free(g: &Graph, from: usize, to: usize) -> bool {
    x2_triangle_free(g, from, to)
}

// K5 plus `count` triangles, each in a distinct cell X_{i,j} (vertices
// adjacent to exactly k_i and k_j of the K5); edges between two triangles
// form a perfect matching when the cells share an index and the complement
// of one otherwise. Runs once per non-isomorphic cell choice.
fn run_triangle_packing(
    params: &SrgParams,
    count: usize,
    expected: &Expectation,
    lines: &mut Progress,
) -> Result<bool> {
    let tester = Interlacer::new(params)?;
    let all_pairs: Vec<(usize, usize)> = (0..5)
        .flat_map(|i| ((i + 1)..5).map(move |j| (i, j)))
        .collect();
    // Non-isomorphic ways to drop 10 - count cells: for count = 8, the two
    // omitted cells either share a K5 vertex or not.
    // Each config carries K5 color classes from the omitted-cell
    // structure: any class-preserving K5 permutation maps the chosen cell
    // set to itself, which keeps the between-level dedup agenda-safe.
    let configs: Vec<(Vec<(usize, usize)>, [u32; 5])> = if count == 8 {
        vec![
            (
                all_pairs
                    .iter()
                    .copied()
                    .filter(|&p| p != (0, 1) && p != (2, 3))
                    .collect(),
                [0, 0, 1, 1, 2],
            ),
            (
                all_pairs
                    .iter()
                    .copied()
                    .filter(|&p| p != (0, 1) && p != (0, 2))
                    .collect(),
                [0, 1, 1, 2, 2],
            ),
        ]
    } else {
        vec![(
            all_pairs.iter().copied().take(count).collect(),
            [0, 1, 2, 3, 4],
        )]
    };

    let matchings: Vec<[usize; 3]> = vec![
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];

    // Wirings of two triangles whose standalone K5 + T + T' subgraph fails
    // interlacing can never occur inside a full candidate (the subgraph is
    // induced); the allowed matchings depend only on the ordered cell pair.
    let mut allowed: std::collections::HashMap<((usize, usize), (usize, usize)), Vec<[usize; 3]>> =
        std::collections::HashMap::new();
    for &a in &all_pairs {
        for &b in &all_pairs {
            if a == b {
                continue;
            }
            let base = add_triangle_all_wirings(&Graph::complete(5), a, &[], &matchings);
            debug_assert_eq!(base.len(), 1);
            let keep: Vec<[usize; 3]> = matchings
                .iter()
                .copied()
                .filter(|sigma| {
                    let two = add_triangle_all_wirings(&base[0], b, &[a], &[*sigma]);
                    tester.interlaces(&two[0])
                })
                .collect();
            allowed.insert((a, b), keep);
        }
    }

    let mut survivor_counts = Vec::new();
    for (ci, (cells, k5_classes)) in configs.iter().enumerate() {
        // One class for all triangle vertices; their cells are recoverable
        // from the K5 attachments.
        let colors_at = |t: usize| -> Vec<u32> {
            let mut c: Vec<u32> = k5_classes.to_vec();
            let tri_class = k5_classes.iter().max().unwrap() + 1;
            c.extend(std::iter::repeat_n(tri_class, 3 * t));
            c
        };

        let first = add_triangle_all_wirings(&Graph::complete(5), cells[0], &[], &matchings);
        let mut level = filter_dedup(&first, &colors_at(1), &tester);
        lines.push(format!("config {ci}: level 1: {} candidates", level.len()));

        // Dedup may relabel K5 within its color classes, moving placed
        // cells around inside the chosen set; each representative
        // rediscovers its own placed cells and extends on its smallest
        // remaining one.
        for t in 1..count {
            if level.is_empty() {
                break;
            }
            let expand = |g: &Graph| -> Vec<Graph> {
                let placed: Vec<(usize, usize)> = cells
                    .iter()
                    .copied()
                    .filter(|&c| try_triangle_vertices(g, c).is_some())
                    .collect();
                debug_assert_eq!(placed.len(), t);
                let next = cells
                    .iter()
                    .copied()
                    .find(|c| !placed.contains(c))
                    .expect("agenda not exhausted");
                let per_prev: Vec<Vec<[usize; 3]>> = placed
                    .iter()
                    .map(|&p| allowed[&(p, next)].clone())
                    .collect();
                add_triangle_wirings_filtered(g, next, &placed, &per_prev, &tester)
            };
            level = level_step(&level, &expand, &colors_at(t + 1), &tester);
            lines.push(format!(
                "config {ci}: level {}: {} candidates",
                t + 1,
                level.len()
            ));
        }
        let survivors = count_plain_classes(&level);
        lines.push(format!("config {ci}: survivors {survivors}"));
        survivor_counts.push(survivors);
    }
    survivor_counts.sort_unstable();

    match expected {
        Expectation::SurvivorCounts(want) => {
            let mut want = want.clone();
            want.sort_unstable();
            lines.push(format!("expectation survivor counts {want:?}"));
            Ok(survivor_counts == want)
        }
        _ => bail!("unsupported expectation for triangle packing"),
    }
}

/// Vertices of the triangle sitting in `cell`: the non-K5 vertices whose
/// K5 neighborhood is exactly the cell (dedup reorders triangle vertices,
/// so the position is not fixed, but the attachment is).
fn try_triangle_vertices(g: &Graph, cell: (usize, usize)) -> Option<[usize; 3]> {
    let mut found = [0usize; 3];
    let mut count = 0;
    for v in 5..g.n() {
        let k5: Vec<usize> = (0..5).filter(|&k| g.has_edge(v, k)).collect();
        if k5 == [cell.0, cell.1] {
            if count == 3 {
                panic!("more than one triangle on cell {cell:?}");
            }
            found[count] = v;
            count += 1;
        }
    }
    match count {
        0 => None,
        3 => Some(found),
        other => panic!("cell {cell:?} has {other} attached vertices"),
    }
}

fn triangle_vertices(g: &Graph, cell: (usize, usize)) -> [usize; 3] {
    try_triangle_vertices(g, cell).unwrap_or_else(|| panic!("missing triangle on cell {cell:?}"))
}

/// As [`add_triangle_all_wirings`], but with a per-previous-triangle list
/// of admissible matchings, pruning during the wiring product: after each
/// previous triangle is wired, the subgraph induced on K5, the wired
/// triangles and the new one is itself an induced-subgraph candidate and
/// must interlace.
fn add_triangle_wirings_filtered(
    g: &Graph,
    cell: (usize, usize),
    prev_cells: &[(usize, usize)],
    per_prev: &[Vec<[usize; 3]>],
    tester: &Interlacer,
) -> Vec<Graph> {
    let base_n = g.n();
    let new_range = [base_n, base_n + 1, base_n + 2];
    let prev_ranges: Vec<[usize; 3]> = prev_cells
        .iter()
        .map(|&c| triangle_vertices(g, c))
        .collect();

    let with_triangle = g
        .add_vertex(&VertexSet::new())
        .and_then(|g| g.add_vertex(&VertexSet::new()))
        .and_then(|g| g.add_vertex(&VertexSet::new()))
        .expect("growing by isolated vertices")
        .with_edges(&[
            (new_range[0], new_range[1]),
            (new_range[0], new_range[2]),
            (new_range[1], new_range[2]),
            (cell.0, new_range[0]),
            (cell.0, new_range[1]),
            (cell.0, new_range[2]),
            (cell.1, new_range[0]),
            (cell.1, new_range[1]),
            (cell.1, new_range[2]),
        ]);

    let mut out = vec![with_triangle];
    let mut seen: VertexSet = (0..5).chain(new_range).collect();
    for (t, prev) in prev_ranges.iter().enumerate() {
        for &v in prev {
            seen.insert(v);
        }
        let last = t + 1 == prev_ranges.len();
        let shared = {
            let cells = [prev_cells[t].0, prev_cells[t].1, cell.0, cell.1];
            let mut uniq = cells.to_vec();
            uniq.sort_unstable();
            uniq.dedup();
            uniq.len() == 3
        };
        let mut next = Vec::with_capacity(out.len() * per_prev[t].len());
        for partial in &out {
            for sigma in &per_prev[t] {
                let mut extra: Vec<(usize, usize)> = Vec::with_capacity(6);
                for (a, &sa) in sigma.iter().enumerate() {
                    if shared {
                        extra.push((prev[a], new_range[sa]));
                    } else {
                        for b in 0..3 {
                            if b != sa {
                                extra.push((prev[a], new_range[b]));
                            }
                        }
                    }
                }
                let wired = partial.with_edges(&extra);
                // the induced check on all vertices is the caller's job at
                // the last stage; intermediate stages test the wired part,
                // but only once it is big enough for the condition to have
                // any teeth (below order 19 the host's 18-fold -8 block
                // absorbs every lower bound and nothing here exceeds the
                // upper ones)
                if last {
                    next.push(wired);
                } else if seen.len() >= 19 {
                    let sub = wired.induced_subgraph(&seen).expect("in range");
                    if tester.interlaces(&sub) {
                        next.push(wired);
                    }
                } else {
                    next.push(wired);
                }
            }
        }
        out = next;
        if out.is_empty() {
            break;
        }
    }
    out
}

/// All ways to append one triangle in `cell` to `g`, wiring it to each
/// previous triangle by a perfect matching (cells sharing a K5 vertex) or
/// the complement of one (disjoint cells).
fn add_triangle_all_wirings(
    g: &Graph,
    cell: (usize, usize),
    prev_cells: &[(usize, usize)],
    matchings: &[[usize; 3]],
) -> Vec<Graph> {
    let base_n = g.n();
    let new_range = [base_n, base_n + 1, base_n + 2];
    let prev_ranges: Vec<[usize; 3]> = prev_cells
        .iter()
        .map(|&c| triangle_vertices(g, c))
        .collect();

    let with_triangle = g
        .add_vertex(&VertexSet::new())
        .and_then(|g| g.add_vertex(&VertexSet::new()))
        .and_then(|g| g.add_vertex(&VertexSet::new()))
        .expect("growing by isolated vertices")
        .with_edges(&[
            (new_range[0], new_range[1]),
            (new_range[0], new_range[2]),
            (new_range[1], new_range[2]),
            (cell.0, new_range[0]),
            (cell.0, new_range[1]),
            (cell.0, new_range[2]),
            (cell.1, new_range[0]),
            (cell.1, new_range[1]),
            (cell.1, new_range[2]),
        ]);

    let mut out = vec![with_triangle];
    for (t, prev) in prev_ranges.iter().enumerate() {
        let shared = {
            let cells = [prev_cells[t].0, prev_cells[t].1, cell.0, cell.1];
            let mut uniq = cells.to_vec();
            uniq.sort_unstable();
            uniq.dedup();
            uniq.len() == 3
        };
        let mut next = Vec::with_capacity(out.len() * matchings.len());
        for partial in &out {
            for sigma in matchings {
                let mut extra: Vec<(usize, usize)> = Vec::with_capacity(6);
                for (a, &sa) in sigma.iter().enumerate() {
                    if shared {
                        extra.push((prev[a], new_range[sa]));
                    } else {
                        for b in 0..3 {
                            if b != sa {
                                extra.push((prev[a], new_range[b]));
                            }
                        }
                    }
                }
                next.push(partial.with_edges(&extra));
            }
        }
        out = next;
    }
    out
}

fn run_petersen_pipeline(
    params: &SrgParams,
    expected: &Expectation,
    lines: &mut Progress,
) -> Result<bool> {
    let ctx = SearchContext::new(*params)?;
    let seed = Graph::path(3);
    lines.push("seed: path on 3 vertices".to_string());
    let verdict = pipeline_check(&seed, &ctx);
    let status = match verdict.status {
        VerdictStatus::Refuted => "refuted",
        VerdictStatus::WitnessFound => "witness-found",
        VerdictStatus::ExhaustedInconclusive => "exhausted-inconclusive",
    };
    lines.push(format!(
        "verdict: {status} (generated={} pruned={} passed={})",
        verdict.generated, verdict.pruned, verdict.passed
    ));
    match expected {
        Expectation::WitnessFound => {
            lines.push("expectation witness-found".to_string());
            Ok(verdict.status == VerdictStatus::WitnessFound)
        }
        _ => bail!("unsupported expectation for pipeline scenario"),
    }
}
