//! Eigenvalue machinery: float symmetric eigensolving for interlacing
//! comparisons, and exact integer/rational routes for everything that gates
//! a verdict (eigenvalue membership, resolvents).
//!
//! The float solver is Householder tridiagonalization followed by the
//! implicit-shift QL iteration, following the classic EISPACK/Jama route.
//! It is used only where spectra are compared with a tolerance, never for
//! membership decisions: those go through fraction-free elimination over
//! arbitrary-precision integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, PartialEq)]
pub enum SpectraError {
    #[error("matrix data has {found} entries, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not symmetric at ({row},{col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("sequence is not sorted in descending order at position {0}")]
    NotSorted(usize),
    #[error("{r} is an eigenvalue of the graph; rI - A is singular")]
    SingularResolvent { r: i64 },
}

/// Real spectrum with multiplicities expanded, sorted descending.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumSeq(Vec<f64>);

impl SpectrumSeq {
    /// Sorts the values descending.
    pub fn descending(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.partial_cmp(a).expect("finite eigenvalues"));
        SpectrumSeq(values)
    }

    /// Accepts values that are already sorted descending.
    pub fn try_from_sorted(values: Vec<f64>) -> Result<Self, SpectraError> {
        for i in 1..values.len() {
            if values[i - 1] < values[i] {
                return Err(SpectraError::NotSorted(i));
            }
        }
        Ok(SpectrumSeq(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// All eigenvalues of a symmetric matrix (row-major, `n * n` entries),
/// descending. Symmetry is checked within 1e-12 (relative to entry scale).
pub fn symmetric_eigenvalues(n: usize, a: &[f64]) -> Result<SpectrumSeq, SpectraError> {
    if a.len() != n * n {
        return Err(SpectraError::DimensionMismatch {
            expected: n * n,
            found: a.len(),
        });
    }
    let scale = a.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    for i in 0..n {
        for j in (i + 1)..n {
            if (a[i * n + j] - a[j * n + i]).abs() > 1e-12 * scale {
                return Err(SpectraError::NotSymmetric { row: i, col: j });
            }
        }
    }
    Ok(SpectrumSeq::descending(symmetric_eigenvalues_unchecked(n, a)))
}

/// Spectrum of the adjacency matrix of `g`.
pub fn adjacency_spectrum(g: &Graph) -> SpectrumSeq {
    let n = g.n();
    let mut a = vec![0.0; n * n];
    for u in 0..n {
        for v in g.neighbors(u) {
            a[u * n + v] = 1.0;
        }
    }
    SpectrumSeq::descending(symmetric_eigenvalues_unchecked(n, &a))
}

// Householder reduction to tridiagonal form followed by implicit QL,
// ported from the public-domain Jama EigenvalueDecomposition (tred2/tql2).
// The eigenvector matrix is carried as working storage; only the
// eigenvalues are returned.
fn symmetric_eigenvalues_unchecked(n: usize, a: &[f64]) -> Vec<f64> {
    if n == 0 {
        return Vec::new();
    }
    let mut v = a.to_vec();
    let mut d = vec![0.0f64; n];
    let mut e = vec![0.0f64; n];
    let at = |m: &Vec<f64>, r: usize, c: usize| m[r * n + c];

    for j in 0..n {
        d[j] = at(&v, n - 1, j);
    }

    for i in (1..n).rev() {
        // Scale to avoid under/overflow.
        let mut scale = 0.0f64;
        let mut h = 0.0f64;
        for item in d.iter().take(i) {
            scale += item.abs();
        }
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = at(&v, i - 1, j);
                v[i * n + j] = 0.0;
                v[j * n + i] = 0.0;
            }
        } else {
            // Generate Householder vector.
            for k in 0..i {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            let mut f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for item in e.iter_mut().take(i) {
                *item = 0.0;
            }

            // Apply similarity transformation to remaining columns.
            for j in 0..i {
                f = d[j];
                v[j * n + i] = f;
                g = e[j] + at(&v, j, j) * f;
                for k in (j + 1)..i {
                    g += at(&v, k, j) * d[k];
                    e[k] += at(&v, k, j) * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                let g = e[j];
                for k in j..i {
                    v[k * n + j] -= f * e[k] + g * d[k];
                }
                d[j] = at(&v, i - 1, j);
                v[i * n + j] = 0.0;
            }
        }
        d[i] = h;
    }

    // Accumulate transformations (kept: the reduction writes through v).
    for i in 0..(n - 1) {
        v[(n - 1) * n + i] = at(&v, i, i);
        v[i * n + i] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = at(&v, k, i + 1) / h;
            }
            for j in 0..=i {
                let mut g = 0.0;
                for k in 0..=i {
                    g += at(&v, k, i + 1) * at(&v, k, j);
                }
                for k in 0..=i {
                    v[k * n + j] -= g * d[k];
                }
            }
        }
        for k in 0..=i {
            v[k * n + i + 1] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = at(&v, n - 1, j);
        v[(n - 1) * n + j] = 0.0;
    }
    v[(n - 1) * n + n - 1] = 1.0;
    e[0] = 0.0;

    // tql2: implicit-shift QL on the tridiagonal (d, e).
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    let mut f = 0.0f64;
    let mut tst1 = 0.0f64;
    let eps = 2.0f64.powi(-52);
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            loop {
                // Compute implicit shift.
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for item in d.iter_mut().take(n).skip(l + 2) {
                    *item -= h;
                }
                f += h;

                // Implicit QL transformation.
                p = d[m];
                let mut c = 1.0f64;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0f64;
                let mut s2 = 0.0f64;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;

                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    d
}

/// Householder reduction of a symmetric matrix (row-major, lower triangle
/// read) to tridiagonal form, EISPACK `tred1` style: returns the diagonal
/// and the subdiagonal (first entry zero). No transformation accumulation,
/// so this is several times cheaper than a full eigensolve; pair it with
/// [`count_eigenvalues_below`] for inertia queries.
pub fn sym_tridiagonal(n: usize, matrix: &[f64]) -> (Vec<f64>, Vec<f64>) {
    assert_eq!(matrix.len(), n * n);
    let mut a = matrix.to_vec();
    let mut d = vec![0.0f64; n];
    let mut e = vec![0.0f64; n];
    if n == 0 {
        return (d, e);
    }
    for j in 0..n {
        d[j] = a[(n - 1) * n + j];
        a[(n - 1) * n + j] = a[j * n + j];
    }
    for i in (0..n).rev() {
        let l = i; // row i has l entries to its left (columns 0..i)
        let mut h = 0.0f64;
        let mut scale = 0.0f64;
        if l >= 1 {
            for item in d.iter().take(l) {
                scale += item.abs();
            }
        }
        if l >= 1 && scale != 0.0 {
            for k in 0..l {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            let f = d[l - 1];
            let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
            e[i] = scale * g;
            h -= f * g;
            d[l - 1] = f - g;
            if l > 1 {
                // e = A d over the lower triangle, row-contiguous passes
                for item in e.iter_mut().take(l) {
                    *item = 0.0;
                }
                for j in 0..l {
                    let row = &a[j * n..j * n + j];
                    let dj = d[j];
                    let mut s = a[j * n + j] * dj;
                    for ((&ajk, &dk), ek) in row.iter().zip(&d[..j]).zip(&mut e[..j]) {
                        s += ajk * dk;
                        *ek += ajk * dj;
                    }
                    e[j] += s;
                }
                let mut f = 0.0f64;
                for j in 0..l {
                    e[j] /= h;
                    f += e[j] * d[j];
                }
                let hh = f / (h + h);
                for j in 0..l {
                    e[j] -= hh * d[j];
                }
                // rank-two update of the lower triangle, row by row
                for k in 0..l {
                    let (dk, ek) = (d[k], e[k]);
                    let row = &mut a[k * n..k * n + k + 1];
                    for ((slot, &dj), &ej) in row.iter_mut().zip(&d[..k + 1]).zip(&e[..k + 1]) {
                        *slot -= dj * ek + ej * dk;
                    }
                }
            }
            for j in 0..l {
                let f = d[j];
                d[j] = a[(l - 1) * n + j];
                a[(l - 1) * n + j] = a[i * n + j];
                a[i * n + j] = f * scale;
            }
        } else {
            // nothing to the left, or a zero row: no reflection
            if l >= 1 {
                for j in 0..l {
                    d[j] = a[(l - 1) * n + j];
                    a[(l - 1) * n + j] = a[i * n + j];
                    a[i * n + j] = 0.0;
                }
            }
            e[i] = 0.0;
        }
    }
    (d, e)
}

/// Eigenvalue counts of a symmetric matrix (row-major) relative to
/// `shift`: `(above, below)` strictly on each side, via a Bunch-Kaufman
/// LDL^T factorization of `A - shift I`. Eigenvalues numerically at the
/// shift are counted on neither side. A single factorization costs about
/// `n^3 / 6` flops, an order of magnitude less than an eigensolve.
pub fn inertia_with_shift(n: usize, a: &[f64], shift: f64) -> (usize, usize) {
    inertia_impl(n, a, shift, usize::MAX, usize::MAX).expect("unbounded inertia")
}

/// As [`inertia_with_shift`], but aborts (returning `None`) as soon as the
/// strictly-above count exceeds `above_limit` or the strictly-below count
/// exceeds `below_limit`; `Some(counts)` means both limits hold.
pub fn inertia_within(
    n: usize,
    a: &[f64],
    shift: f64,
    above_limit: usize,
    below_limit: usize,
) -> Option<(usize, usize)> {
    inertia_impl(n, a, shift, above_limit, below_limit)
}

fn inertia_impl(
    n: usize,
    a: &[f64],
    shift: f64,
    above_limit: usize,
    below_limit: usize,
) -> Option<(usize, usize)> {
    assert_eq!(a.len(), n * n);
    const ALPHA: f64 = 0.6403882032022076; // (1 + sqrt(17)) / 8
    let mut m = a.to_vec();
    for i in 0..n {
        m[i * n + i] -= shift;
    }
    // symmetric element on the lower triangle
    let at = |m: &Vec<f64>, i: usize, j: usize| -> f64 {
        if i >= j {
            m[i * n + j]
        } else {
            m[j * n + i]
        }
    };
    let swap_sym = |m: &mut Vec<f64>, p: usize, q: usize| {
        // exchange row/column p and q of the symmetric matrix (p < q)
        for j in 0..n {
            if j == p || j == q {
                continue;
            }
            let (x, y) = (at(m, p, j), at(m, q, j));
            if j < p {
                m[p * n + j] = y;
                m[q * n + j] = x;
            } else if j < q {
                m[j * n + p] = y;
                m[q * n + j] = x;
            } else {
                m[j * n + p] = y;
                m[j * n + q] = x;
            }
        }
        let (dpp, dqq) = (m[p * n + p], m[q * n + q]);
        m[p * n + p] = dqq;
        m[q * n + q] = dpp;
    };

    let (mut above, mut below) = (0usize, 0usize);
    let mut col1 = vec![0.0f64; n];
    let mut col2 = vec![0.0f64; n];
    let mut k = 0usize;
    while k < n {
        let absakk = at(&m, k, k).abs();
        let (imax, colmax) = {
            let mut best = (k, 0.0f64);
            for i in (k + 1)..n {
                let v = m[i * n + k].abs();
                if v > best.1 {
                    best = (i, v);
                }
            }
            best
        };
        if absakk.max(colmax) == 0.0 {
            // exact zero column: an eigenvalue at the shift
            k += 1;
            continue;
        }

        let use_two = if absakk >= ALPHA * colmax {
            false
        } else {
            let mut rowmax = 0.0f64;
            for j in k..n {
                if j != imax {
                    rowmax = rowmax.max(at(&m, imax, j).abs());
                }
            }
            if absakk * rowmax >= ALPHA * colmax * colmax {
                false
            } else if at(&m, imax, imax).abs() >= ALPHA * rowmax {
                swap_sym(&mut m, k, imax);
                false
            } else {
                if imax != k + 1 {
                    swap_sym(&mut m, k + 1, imax);
                }
                true
            }
        };

        if !use_two {
            let d = m[k * n + k];
            if d > 0.0 {
                above += 1;
            } else if d < 0.0 {
                below += 1;
            }
            if above > above_limit || below > below_limit {
                return None;
            }
            if d != 0.0 {
                for i in (k + 1)..n {
                    col1[i] = m[i * n + k];
                }
                for i in (k + 1)..n {
                    let w = col1[i] / d;
                    if w != 0.0 {
                        let row = &mut m[i * n + k + 1..i * n + i + 1];
                        for (slot, &c) in row.iter_mut().zip(&col1[k + 1..=i]) {
                            *slot -= w * c;
                        }
                    }
                }
            }
            k += 1;
        } else {
            // 2x2 pivot: indefinite by construction
            let a11 = m[k * n + k];
            let a21 = m[(k + 1) * n + k];
            let a22 = m[(k + 1) * n + k + 1];
            let det = a11 * a22 - a21 * a21;
            if det < 0.0 {
                above += 1;
                below += 1;
            } else if det > 0.0 {
                // numerically definite block (should not happen with the
                // Bunch-Kaufman choice, but count it consistently)
                if a11 + a22 > 0.0 {
                    above += 2;
                } else {
                    below += 2;
                }
            }
            if above > above_limit || below > below_limit {
                return None;
            }
            if det != 0.0 {
                for i in (k + 2)..n {
                    col1[i] = m[i * n + k];
                    col2[i] = m[i * n + k + 1];
                }
                for i in (k + 2)..n {
                    let (b1, b2) = (col1[i], col2[i]);
                    // solve [a11 a21; a21 a22] [w1; w2] = [b1; b2]
                    let w1 = (a22 * b1 - a21 * b2) / det;
                    let w2 = (a11 * b2 - a21 * b1) / det;
                    if w1 != 0.0 || w2 != 0.0 {
                        let row = &mut m[i * n + k + 2..i * n + i + 1];
                        for ((slot, &c1), &c2) in
                            row.iter_mut().zip(&col1[k + 2..=i]).zip(&col2[k + 2..=i])
                        {
                            *slot -= w1 * c1 + w2 * c2;
                        }
                    }
                }
            }
            k += 2;
        }
    }
    Some((above, below))
}

/// Number of eigenvalues strictly below `x` of the symmetric tridiagonal
/// matrix with diagonal `d` and subdiagonal `e` (Sturm / LDL^T sign
/// count, with the standard zero-pivot safeguard).
pub fn count_eigenvalues_below(d: &[f64], e: &[f64], x: f64) -> usize {
    let n = d.len();
    if n == 0 {
        return 0;
    }
    let mut count = 0usize;
    let mut t = d[0] - x;
    if t < 0.0 {
        count += 1;
    }
    for i in 1..n {
        let mut denom = t;
        if denom.abs() < 1e-300 {
            denom = if denom < 0.0 { -1e-300 } else { 1e-300 };
        }
        t = d[i] - x - e[i] * e[i] / denom;
        if t < 0.0 {
            count += 1;
        }
    }
    count
}

/// Multiplicity of the integer `t` as an eigenvalue of `g`: the nullity of
/// `tI - A`, computed by fraction-free elimination over arbitrary-precision
/// integers. Zero means `t` is not an eigenvalue.
pub fn eigenvalue_multiplicity_exact(g: &Graph, t: i64) -> usize {
    let n = g.n();
    let mut m: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::from(t)
                    } else if g.has_edge(i, j) {
                        BigInt::from(-1)
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    n - integer_rank(&mut m)
}

// Row-echelon rank over the integers; rows are gcd-normalized after each
// elimination step to keep entries small.
fn integer_rank(m: &mut [Vec<BigInt>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot_row) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot_row);
        let pivot = m[rank][col].clone();
        for r in (rank + 1)..rows {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..cols {
                let val = &m[r][c] * &pivot - &factor * &m[rank][c];
                m[r][c] = val;
            }
            normalize_row(&mut m[r], col);
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn normalize_row(row: &mut [BigInt], from: usize) {
    let mut g = BigInt::zero();
    for v in row[from..].iter() {
        if !v.is_zero() {
            g = g.gcd(v);
        }
    }
    if g > BigInt::one() {
        for v in row[from..].iter_mut() {
            *v /= &g;
        }
    }
}

/// Exact inverse of `rI - A_H` for an integer `r` that is not an eigenvalue
/// of `H`. Backs the star-complement inner product.
#[derive(Clone, Debug)]
pub struct RationalResolvent {
    order: usize,
    r: i64,
    entries: Vec<BigRational>,
    /// Positive common denominator: `scaled[i] = scale * entries[i]` is integral.
    scale: BigInt,
    scaled: Vec<BigInt>,
}

impl RationalResolvent {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.order + j]
    }

    /// The positive integer `D` with `D * entries` integral.
    pub(crate) fn scale(&self) -> &BigInt {
        &self.scale
    }

    /// Row `i` of `D * (rI - A_H)^{-1}` (integer entries).
    pub(crate) fn scaled_row(&self, i: usize) -> &[BigInt] {
        &self.scaled[i * self.order..(i + 1) * self.order]
    }
}

/// Computes `(rI - A_H)^{-1}` exactly; errors when `r` is an eigenvalue of
/// `H` (the definitional failure of a star-complement candidate).
pub fn resolvent(h: &Graph, r: i64) -> Result<RationalResolvent, SpectraError> {
    let n = h.n();
    // Gauss-Jordan over exact rationals on [rI - A | I].
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    let v = if j < n {
                        if i == j {
                            BigInt::from(r)
                        } else if h.has_edge(i, j) {
                            BigInt::from(-1)
                        } else {
                            BigInt::zero()
                        }
                    } else if j - n == i {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    };
                    BigRational::from_integer(v)
                })
                .collect()
        })
        .collect();

    for col in 0..n {
        let Some(pivot_row) = (col..n).find(|&row| !a[row][col].is_zero()) else {
            return Err(SpectraError::SingularResolvent { r });
        };
        a.swap(col, pivot_row);
        let pivot = a[col][col].clone();
        for j in col..2 * n {
            a[col][j] /= pivot.clone();
        }
        for row in 0..n {
            if row == col || a[row][col].is_zero() {
                continue;
            }
            let factor = a[row][col].clone();
            for j in col..2 * n {
                let sub = &factor * &a[col][j];
                a[row][j] -= sub;
            }
        }
    }

    let entries: Vec<BigRational> = (0..n)
        .flat_map(|i| a[i][n..2 * n].to_vec())
        .collect();

    let mut scale = BigInt::one();
    for e in &entries {
        scale = scale.lcm(e.denom());
    }
    if scale.is_negative() {
        scale = -scale;
    }
    let scaled: Vec<BigInt> = entries
        .iter()
        .map(|e| {
            let v = e * BigRational::from_integer(scale.clone());
            debug_assert!(v.is_integer());
            v.to_integer()
        })
        .collect();

    #[cfg(debug_assertions)]
    {
        for i in 0..n {
            for j in 0..n {
                assert_eq!(entries[i * n + j], entries[j * n + i], "resolvent symmetry");
            }
        }
    }

    Ok(RationalResolvent {
        order: n,
        r,
        entries,
        scale,
        scaled,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{petersen, Graph};
    use num_traits::FromPrimitive;

    fn assert_close(actual: &[f64], expected: &[f64]) {
        assert_eq!(actual.len(), expected.len());
        for (a, b) in actual.iter().zip(expected) {
            assert!((a - b).abs() < 1e-9, "{actual:?} vs {expected:?}");
        }
    }

    #[test]
    fn k3_spectrum() {
        let s = adjacency_spectrum(&Graph::complete(3));
        assert_close(s.values(), &[2.0, -1.0, -1.0]);
    }

    #[test]
    fn petersen_spectrum() {
        let s = adjacency_spectrum(&petersen());
        let mut expected = vec![3.0];
        expected.extend(std::iter::repeat_n(1.0, 5));
        expected.extend(std::iter::repeat_n(-2.0, 4));
        assert_close(s.values(), &expected);
    }

    #[test]
    fn zero_matrix_spectrum() {
        let s = symmetric_eigenvalues(4, &[0.0; 16]).unwrap();
        assert_close(s.values(), &[0.0; 4]);
    }

    #[test]
    fn rejects_asymmetric() {
        let a = vec![0.0, 1.0, 0.0, 0.0];
        assert_eq!(
            symmetric_eigenvalues(2, &a),
            Err(SpectraError::NotSymmetric { row: 0, col: 1 })
        );
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(eigenvalue_multiplicity_exact(&Graph::cycle(4), 2), 1);
        assert_eq!(eigenvalue_multiplicity_exact(&Graph::complete(3), 2), 1);
        assert_eq!(eigenvalue_multiplicity_exact(&Graph::path(3), 2), 0);
        assert_eq!(eigenvalue_multiplicity_exact(&petersen(), 1), 5);
        assert_eq!(eigenvalue_multiplicity_exact(&petersen(), -2), 4);
        assert_eq!(eigenvalue_multiplicity_exact(&petersen(), 0), 0);
    }

    #[test]
    fn resolvent_k1() {
        let res = resolvent(&Graph::empty(1), 2).unwrap();
        assert_eq!(*res.entry(0, 0), BigRational::from_f64(0.5).unwrap());
    }

    #[test]
    fn resolvent_k2() {
        // (2I - A_{K2})^{-1} = (1/3) [[2,1],[1,2]]
        let res = resolvent(&Graph::complete(2), 2).unwrap();
        let third = BigRational::new(BigInt::from(1), BigInt::from(3));
        assert_eq!(*res.entry(0, 0), &third * BigInt::from(2));
        assert_eq!(*res.entry(0, 1), third);
        assert_eq!(res.scale(), &BigInt::from(3));
        assert_eq!(res.scaled_row(0), &[BigInt::from(2), BigInt::from(1)]);
    }

    #[test]
    fn resolvent_singular() {
        assert_eq!(
            resolvent(&Graph::cycle(4), 2).unwrap_err(),
            SpectraError::SingularResolvent { r: 2 }
        );
    }

    fn check_resolvent_identity(h: &Graph, r: i64) {
        let res = resolvent(h, r).unwrap();
        let n = h.n();
        for i in 0..n {
            for j in 0..n {
                // row i of (rI - A) dot column j of the resolvent
                let mut sum = BigRational::zero();
                for k in 0..n {
                    let m = if i == k {
                        BigInt::from(r)
                    } else if h.has_edge(i, k) {
                        BigInt::from(-1)
                    } else {
                        BigInt::zero()
                    };
                    sum += BigRational::from_integer(m) * res.entry(k, j);
                }
                let expect = if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                };
                assert_eq!(sum, expect);
            }
        }
    }

    #[test]
    fn resolvent_identity_random_graphs() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(7);
        let mut done = 0;
        while done < 30 {
            let n = rng.random_range(1..=8);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.random_bool(0.5) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges);
            let r = rng.random_range(-4..=4);
            if eigenvalue_multiplicity_exact(&g, r) != 0 {
                continue;
            }
            check_resolvent_identity(&g, r);
            done += 1;
        }
    }

    #[test]
    fn exact_multiplicity_matches_float_count() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..60 {
            let n = rng.random_range(1..=12);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.random_bool(0.4) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges);
            let spec = adjacency_spectrum(&g);
            for t in -4i64..=4 {
                let exact = eigenvalue_multiplicity_exact(&g, t);
                let float = spec
                    .values()
                    .iter()
                    .filter(|x| (*x - t as f64).abs() < 1e-6)
                    .count();
                assert_eq!(exact, float, "t={t} graph={g:?}");
            }
        }
    }

    #[test]
    fn inertia_matches_full_solver() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(23);
        for case in 0..120 {
            let n = rng.random_range(1..=12usize);
            let mut a = vec![0.0f64; n * n];
            for i in 0..n {
                for j in 0..=i {
                    // include plenty of zero diagonals to exercise the
                    // 2x2 pivot path
                    let v = if i == j && case % 3 == 0 {
                        0.0
                    } else {
                        rng.random_range(-3..=3) as f64
                    };
                    a[i * n + j] = v;
                    a[j * n + i] = v;
                }
            }
            let spec = symmetric_eigenvalues(n, &a).unwrap();
            for x in [-4.5, -1.3, -0.25, 0.25, 1.3, 4.5] {
                let above_true = spec.values().iter().filter(|&&v| v > x).count();
                let below_true = spec.values().iter().filter(|&&v| v < x).count();
                let (above, below) = inertia_with_shift(n, &a, x);
                assert_eq!(
                    (above, below),
                    (above_true, below_true),
                    "x={x} spectrum={:?}",
                    spec.values()
                );
            }
        }
    }

    #[test]
    fn sturm_counts_match_full_solver() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(17);
        for _ in 0..60 {
            let n = rng.random_range(1..=12usize);
            let mut a = vec![0.0f64; n * n];
            for i in 0..n {
                for j in 0..=i {
                    let v = rng.random_range(-3..=3) as f64 / 2.0;
                    a[i * n + j] = v;
                    a[j * n + i] = v;
                }
            }
            let spec = symmetric_eigenvalues(n, &a).unwrap();
            let (d, e) = sym_tridiagonal(n, &a);
            for x in [-5.3, -2.1, -0.7, 0.13, 0.5, 1.9, 4.2] {
                let expect = spec.values().iter().filter(|&&v| v < x).count();
                assert_eq!(
                    count_eigenvalues_below(&d, &e, x),
                    expect,
                    "x={x} spectrum={:?}",
                    spec.values()
                );
            }
        }
    }

    #[test]
    fn trace_is_zero() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(13);
        for _ in 0..20 {
            let n = rng.random_range(1..=20);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.random_bool(0.5) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges);
            let sum: f64 = adjacency_spectrum(&g).values().iter().sum();
            assert!(sum.abs() < 1e-9, "trace {sum}");
        }
    }
}
