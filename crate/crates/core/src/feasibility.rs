//! Strongly-regular-graph parameter arithmetic and the structural
//! b-vector counting lemma.
//!
//! For an induced subgraph `H` of order `m` inside a `(v,k,λ,μ)` SRG, the
//! degree histogram `d` of `H` and the vector `b` counting outside vertices
//! by their number of neighbors in `H` satisfy three linear equations; this
//! module enumerates all nonnegative integer solutions exactly.

use thiserror::Error;

use crate::graph::{Graph, VertexSet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FeasibilityError {
    #[error("invalid SRG parameters ({v},{k},{lambda},{mu}): {reason}")]
    InvalidParams {
        v: u64,
        k: u64,
        lambda: u64,
        mu: u64,
        reason: &'static str,
    },
    #[error("restricted-eigenvalue discriminant is not positive")]
    DegenerateDiscriminant,
    #[error("invalid degree histogram: {0}")]
    InvalidHistogram(&'static str),
}

/// Parameters `(v, k, λ, μ)` of a diameter-2 strongly regular graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SrgParams {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
    pub mu: u64,
}

impl SrgParams {
    pub fn new(v: u64, k: u64, lambda: u64, mu: u64) -> Result<Self, FeasibilityError> {
        let err = |reason| FeasibilityError::InvalidParams {
            v,
            k,
            lambda,
            mu,
            reason,
        };
        if k == 0 || k >= v {
            return Err(err("need 0 < k < v"));
        }
        if mu == 0 {
            return Err(err("need mu >= 1 (diameter 2)"));
        }
        if lambda >= k {
            return Err(err("need lambda < k"));
        }
        Ok(SrgParams { v, k, lambda, mu })
    }
}

/// The double-counting identity `(v-k-1)μ = k(k-λ-1)`.
pub fn check_edge_equation(p: &SrgParams) -> bool {
    let (v, k, l, m) = (p.v as i128, p.k as i128, p.lambda as i128, p.mu as i128);
    (v - k - 1) * m == k * (k - l - 1)
}

/// Principal eigenvalue `k`, restricted eigenvalues `r > s` and their
/// multiplicities `f, g`. Exact integer values accompany the floats
/// whenever the discriminant is a perfect square (resp. the multiplicities
/// are integral); conference graphs (`f = g`) are exempt from `r, s`
/// integrality.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumDescriptor {
    pub k: u64,
    pub r: f64,
    pub s: f64,
    pub f: f64,
    pub g: f64,
    pub r_exact: Option<i64>,
    pub s_exact: Option<i64>,
    pub f_exact: Option<u64>,
    pub g_exact: Option<u64>,
    pub conference: bool,
}

impl SpectrumDescriptor {
    /// True when the multiplicity condition passes: `f` and `g` integral,
    /// and (outside the conference case) `r, s` integral as well.
    pub fn multiplicities_feasible(&self) -> bool {
        self.f_exact.is_some()
            && self.g_exact.is_some()
            && (self.conference || (self.r_exact.is_some() && self.s_exact.is_some()))
    }
}

fn isqrt_exact(x: i128) -> Option<i128> {
    if x < 0 {
        return None;
    }
    let root = (x as f64).sqrt() as i128;
    for cand in root.saturating_sub(2)..=root + 2 {
        if cand >= 0 && cand * cand == x {
            return Some(cand);
        }
    }
    None
}

/// Restricted eigenvalues and multiplicities from the quadratic
/// `x^2 - (λ-μ)x - (k-μ) = 0` and the multiplicity formula
/// `f,g = ((v-1) ∓ (2k + (v-1)(λ-μ)) / sqrt(disc)) / 2`.
pub fn srg_spectrum(p: &SrgParams) -> Result<SpectrumDescriptor, FeasibilityError> {
    let (v, k, l, m) = (p.v as i128, p.k as i128, p.lambda as i128, p.mu as i128);
    let a = l - m;
    let disc = a * a + 4 * (k - m);
    if disc <= 0 {
        return Err(FeasibilityError::DegenerateDiscriminant);
    }
    let sqrt_f = (disc as f64).sqrt();
    let r = (a as f64 + sqrt_f) / 2.0;
    let s = (a as f64 - sqrt_f) / 2.0;
    let num = 2 * k + (v - 1) * a;
    let conference = num == 0;
    let f = ((v - 1) as f64 - num as f64 / sqrt_f) / 2.0;
    let g = ((v - 1) as f64 + num as f64 / sqrt_f) / 2.0;

    let sqrt_exact = isqrt_exact(disc);
    let (mut r_exact, mut s_exact) = (None, None);
    if let Some(sq) = sqrt_exact {
        if (a + sq) % 2 == 0 {
            r_exact = Some(((a + sq) / 2) as i64);
            s_exact = Some(((a - sq) / 2) as i64);
        }
    }
    let (mut f_exact, mut g_exact) = (None, None);
    if conference {
        if (v - 1) % 2 == 0 {
            f_exact = Some(((v - 1) / 2) as u64);
            g_exact = f_exact;
        }
    } else if let Some(sq) = sqrt_exact {
        if num % sq == 0 {
            let (fn2, gn2) = ((v - 1) - num / sq, (v - 1) + num / sq);
            if fn2 % 2 == 0 && fn2 >= 0 && gn2 >= 0 {
                f_exact = Some((fn2 / 2) as u64);
                g_exact = Some((gn2 / 2) as u64);
            }
        }
    }

    Ok(SpectrumDescriptor {
        k: p.k,
        r,
        s,
        f,
        g,
        r_exact,
        s_exact,
        f_exact,
        g_exact,
        conference,
    })
}

/// Degree histogram of an order-`m` induced subgraph: `d[i]` vertices of
/// degree `i`, for `i` in `0..m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeHistogram {
    d: Vec<u64>,
}

impl DegreeHistogram {
    /// `d` must have length `m = sum(d)` and even total degree.
    pub fn new(d: Vec<u64>) -> Result<Self, FeasibilityError> {
        let m: u64 = d.iter().sum();
        if d.len() as u64 != m {
            return Err(FeasibilityError::InvalidHistogram(
                "length must equal the vertex count sum(d)",
            ));
        }
        let total_degree: u64 = d.iter().enumerate().map(|(i, &c)| i as u64 * c).sum();
        if total_degree % 2 != 0 {
            return Err(FeasibilityError::InvalidHistogram("odd total degree"));
        }
        Ok(DegreeHistogram { d })
    }

    pub fn of_graph(g: &Graph) -> Self {
        let mut d = vec![0u64; g.n()];
        for u in g.vertices() {
            d[g.degree(u)] += 1;
        }
        DegreeHistogram { d }
    }

    pub fn order(&self) -> usize {
        self.d.len()
    }

    pub fn counts(&self) -> &[u64] {
        &self.d
    }
}

/// `b[i]` = number of outside vertices with exactly `i` neighbors in `H`,
/// for `i` in `0..=m`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BVector(pub Vec<u64>);

fn choose2(x: i128) -> i128 {
    x * (x - 1) / 2
}

/// The right-hand sides of the three counting equations.
fn equation_sums(p: &SrgParams, d: &DegreeHistogram) -> (i128, i128, i128) {
    let m = d.order() as i128;
    let (v, k, l, mu) = (p.v as i128, p.k as i128, p.lambda as i128, p.mu as i128);
    let sum_id: i128 = d
        .counts()
        .iter()
        .enumerate()
        .map(|(i, &c)| i as i128 * c as i128)
        .sum();
    let sum_c2d: i128 = d
        .counts()
        .iter()
        .enumerate()
        .map(|(i, &c)| choose2(i as i128) * c as i128)
        .sum();
    let s0 = v - m;
    let s1 = m * k - sum_id;
    let s2 = choose2(m) * mu - sum_c2d + (l - mu) * sum_id / 2;
    (s0, s1, s2)
}

/// True when `b` satisfies all three counting equations exactly.
pub fn b_vector_satisfies(p: &SrgParams, d: &DegreeHistogram, b: &BVector) -> bool {
    let m = d.order();
    if b.0.len() != m + 1 {
        return false;
    }
    let (s0, s1, s2) = equation_sums(p, d);
    let t0: i128 = b.0.iter().map(|&x| x as i128).sum();
    let t1: i128 = b.0.iter().enumerate().map(|(i, &x)| i as i128 * x as i128).sum();
    let t2: i128 = b
        .0
        .iter()
        .enumerate()
        .map(|(i, &x)| choose2(i as i128) * x as i128)
        .sum();
    (t0, t1, t2) == (s0, s1, s2)
}

/// All nonnegative integer solutions of the three counting equations,
/// respecting optional per-index caps, in ascending lexicographic order.
///
/// The three equations are solved for `b_0, b_1, b_2`; the remaining
/// entries are searched within the bounds they imply. Inconsistent caps
/// yield an empty list.
pub fn enumerate_b_vectors(
    p: &SrgParams,
    d: &DegreeHistogram,
    caps: &[(usize, u64)],
) -> Vec<BVector> {
    let m = d.order();
    let (s0, s1, s2) = equation_sums(p, d);
    if s0 < 0 || s1 < 0 || s2 < 0 {
        return Vec::new();
    }
    let cap = |i: usize| -> i128 {
        caps.iter()
            .filter(|&&(j, _)| j == i)
            .map(|&(_, c)| c as i128)
            .min()
            .unwrap_or(i128::MAX)
    };

    let mut out: Vec<BVector> = Vec::new();
    let mut tail = vec![0i128; m + 1];

    // Depth-first over b_m .. b_3, then b_2, b_1, b_0 are forced.
    fn descend(
        i: usize,
        rem0: i128,
        rem1: i128,
        rem2: i128,
        tail: &mut Vec<i128>,
        cap: &dyn Fn(usize) -> i128,
        out: &mut Vec<BVector>,
    ) {
        if i == 2 {
            let b2 = rem2;
            if b2 < 0 || b2 > cap(2) {
                return;
            }
            let b1 = rem1 - 2 * b2;
            if b1 < 0 || b1 > cap(1) {
                return;
            }
            let b0 = rem0 - b1 - b2;
            if b0 < 0 || b0 > cap(0) {
                return;
            }
            tail[0] = b0;
            tail[1] = b1;
            tail[2] = b2;
            out.push(BVector(tail.iter().map(|&x| x as u64).collect()));
            return;
        }
        let w1 = i as i128;
        let w2 = choose2(w1);
        let mut max = rem0.min(rem1 / w1).min(rem2 / w2).min(cap(i));
        if max < 0 {
            max = -1;
        }
        for b in 0..=max {
            tail[i] = b;
            descend(i - 1, rem0 - b, rem1 - w1 * b, rem2 - w2 * b, tail, cap, out);
        }
        tail[i] = 0;
    }

    match m {
        0 => {
            // Only b_0; both weighted sums must already be zero.
            if s1 == 0 && s2 == 0 && s0 <= cap(0) {
                out.push(BVector(vec![s0 as u64]));
            }
        }
        1 => {
            let (b1, b0) = (s1, s0 - s1);
            if s2 == 0 && b0 >= 0 && b0 <= cap(0) && b1 <= cap(1) {
                out.push(BVector(vec![b0 as u64, b1 as u64]));
            }
        }
        2 => {
            descend(2, s0, s1, s2, &mut tail, &cap, &mut out);
        }
        _ => {
            descend(m, s0, s1, s2, &mut tail, &cap, &mut out);
        }
    }

    out.sort();
    debug_assert!(out.iter().all(|b| b_vector_satisfies(p, d, b)));
    out
}

/// Observed b-vector of the induced subgraph on `h` inside `g`.
pub fn b_vector_of(g: &Graph, h: &VertexSet) -> BVector {
    let m = h.len();
    let mut b = vec![0u64; m + 1];
    for u in g.vertices() {
        if h.contains(u) {
            continue;
        }
        let count = g.neighbors(u).filter(|&w| h.contains(w)).count();
        b[count] += 1;
    }
    BVector(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{paley13, petersen};

    fn params_75() -> SrgParams {
        SrgParams::new(75, 32, 10, 16).unwrap()
    }

    #[test]
    fn edge_equation_examples() {
        assert!(check_edge_equation(&params_75()));
        assert!(check_edge_equation(&SrgParams::new(10, 3, 0, 1).unwrap()));
        assert!(!check_edge_equation(&SrgParams::new(10, 3, 1, 1).unwrap()));
    }

    #[test]
    fn spectrum_75() {
        let s = srg_spectrum(&params_75()).unwrap();
        assert_eq!(s.r_exact, Some(2));
        assert_eq!(s.s_exact, Some(-8));
        assert_eq!(s.f_exact, Some(56));
        assert_eq!(s.g_exact, Some(18));
        assert!(!s.conference);
        assert!(s.multiplicities_feasible());
    }

    #[test]
    fn spectrum_petersen() {
        let s = srg_spectrum(&SrgParams::new(10, 3, 0, 1).unwrap()).unwrap();
        assert_eq!(s.r_exact, Some(1));
        assert_eq!(s.s_exact, Some(-2));
        assert_eq!(s.f_exact, Some(5));
        assert_eq!(s.g_exact, Some(4));
    }

    #[test]
    fn spectrum_c5_conference() {
        let s = srg_spectrum(&SrgParams::new(5, 2, 0, 1).unwrap()).unwrap();
        assert!(s.conference);
        assert_eq!(s.f_exact, Some(2));
        assert_eq!(s.g_exact, Some(2));
        assert_eq!(s.r_exact, None);
        assert!((s.r - (-1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
        assert!(s.multiplicities_feasible());
    }

    #[test]
    fn trace_identities() {
        for (v, k, l, m) in [(75, 32, 10, 16), (10, 3, 0, 1), (13, 6, 2, 3)] {
            let p = SrgParams::new(v, k, l, m).unwrap();
            let s = srg_spectrum(&p).unwrap();
            assert!((1.0 + s.f + s.g - v as f64).abs() < 1e-9);
            assert!((k as f64 + s.f * s.r + s.g * s.s).abs() < 1e-9);
        }
    }

    #[test]
    fn k4_b_vectors() {
        let d = DegreeHistogram::new(vec![0, 0, 0, 4]).unwrap();
        let got = enumerate_b_vectors(&params_75(), &d, &[(4, 0)]);
        let expected = vec![
            BVector(vec![0, 29, 39, 3, 0]),
            BVector(vec![1, 26, 42, 2, 0]),
            BVector(vec![2, 23, 45, 1, 0]),
            BVector(vec![3, 20, 48, 0, 0]),
        ];
        assert_eq!(got, expected);
    }

    #[test]
    fn k5_b_vector_unique() {
        let d = DegreeHistogram::new(vec![0, 0, 0, 0, 5]).unwrap();
        let got = enumerate_b_vectors(&params_75(), &d, &[]);
        assert_eq!(got, vec![BVector(vec![0, 0, 70, 0, 0, 0])]);
    }

    #[test]
    fn k1_b_vector_forced() {
        let d = DegreeHistogram::new(vec![1]).unwrap();
        let got = enumerate_b_vectors(&params_75(), &d, &[]);
        assert_eq!(got, vec![BVector(vec![42, 32])]);
    }

    #[test]
    fn inconsistent_caps_empty() {
        let d = DegreeHistogram::new(vec![0, 0, 0, 4]).unwrap();
        let got = enumerate_b_vectors(&params_75(), &d, &[(0, 0), (1, 0), (2, 0), (3, 0), (4, 0)]);
        assert!(got.is_empty());
    }

    #[test]
    fn histogram_validation() {
        assert!(DegreeHistogram::new(vec![0, 2]).is_ok());
        assert!(DegreeHistogram::new(vec![0, 1]).is_err());
        assert!(DegreeHistogram::new(vec![1, 1]).is_err());
    }

    #[test]
    fn observed_b_vectors_appear() {
        // Any induced subgraph of a real SRG must produce a b-vector that
        // the enumerator lists.
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(3);
        for (g, p) in [
            (petersen(), SrgParams::new(10, 3, 0, 1).unwrap()),
            (paley13(), SrgParams::new(13, 6, 2, 3).unwrap()),
        ] {
            for _ in 0..60 {
                let size = rng.random_range(1..=5usize);
                let mut verts: Vec<usize> = (0..g.n()).collect();
                for i in 0..size {
                    let j = rng.random_range(i..verts.len());
                    verts.swap(i, j);
                }
                let set: VertexSet = verts[..size].iter().copied().collect();
                let h = g.induced_subgraph(&set).unwrap();
                let d = DegreeHistogram::of_graph(&h);
                let observed = b_vector_of(&g, &set);
                assert!(b_vector_satisfies(&p, &d, &observed));
                let all = enumerate_b_vectors(&p, &d, &[]);
                assert!(all.contains(&observed), "missing {observed:?} for {h:?}");
            }
        }
    }
}
