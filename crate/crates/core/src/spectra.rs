//! Spectra of corner truncations of `y = s + s* - delta^{-1/2} e_0`, with
//! `s` the unilateral shift, and the orthogonal polynomials attached to it.
//!
//! Eigenvalues are located by Sturm-sequence bisection on the symmetric
//! tridiagonal matrix.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PerturbedShift {
    /// Loop parameter; `f64::INFINITY` gives the unperturbed `s + s*`.
    pub delta: f64,
    pub size: usize,
}

impl PerturbedShift {
    pub fn new(delta: f64, size: usize) -> Result<Self> {
        if delta.is_nan() || delta <= 1.0 {
            return Err(Error::Invalid(format!("delta must exceed 1, got {delta}")));
        }
        if size < 2 {
            return Err(Error::Invalid(format!("size must be at least 2, got {size}")));
        }
        Ok(PerturbedShift { delta, size })
    }

    pub fn unperturbed(size: usize) -> Result<Self> {
        Self::new(f64::INFINITY, size)
    }

    /// `delta^{-1/2}`, zero for the unperturbed operator.
    pub fn coupling(&self) -> f64 {
        if self.delta.is_infinite() {
            0.0
        } else {
            self.delta.powf(-0.5)
        }
    }

    pub fn diagonal(&self) -> Vec<f64> {
        let mut d = vec![0.0; self.size];
        d[0] = -self.coupling();
        d
    }

    pub fn off_diagonal(&self) -> Vec<f64> {
        vec![1.0; self.size - 1]
    }
}

/// Dense form of the truncation.
pub fn build_matrix(p: &PerturbedShift) -> DMatrix<f64> {
    let n = p.size;
    let mut m = DMatrix::zeros(n, n);
    m[(0, 0)] = -p.coupling();
    for i in 0..n - 1 {
        m[(i, i + 1)] = 1.0;
        m[(i + 1, i)] = 1.0;
    }
    m
}

/// Number of eigenvalues strictly below `x` (Sturm count via the `LDL^T`
/// pivots).
pub fn count_below(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = diag[0] - x;
    if q < 0.0 {
        count += 1;
    }
    for i in 1..diag.len() {
        let denom = if q == 0.0 {
            f64::EPSILON * (off[i - 1].abs() + 1.0)
        } else {
            q
        };
        q = diag[i] - x - off[i - 1] * off[i - 1] / denom;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

fn gershgorin(diag: &[f64], off: &[f64]) -> (f64, f64) {
    let n = diag.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r = if i > 0 { off[i - 1].abs() } else { 0.0 } + if i + 1 < n { off[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }
    (lo, hi)
}

/// The `k`-th smallest eigenvalue (0-based) to within `tol`.
pub fn kth_eigenvalue(diag: &[f64], off: &[f64], k: usize, tol: f64) -> f64 {
    let (mut lo, mut hi) = gershgorin(diag, off);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if count_below(diag, off, mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// All eigenvalues in ascending order.
pub fn eigenvalues(p: &PerturbedShift) -> Vec<f64> {
    let (d, e) = (p.diagonal(), p.off_diagonal());
    (0..p.size).map(|k| kth_eigenvalue(&d, &e, k, 1e-12)).collect()
}

/// Smallest and largest eigenvalue, accurate to well below `1e-8`.
pub fn spectrum_bounds(p: &PerturbedShift) -> (f64, f64) {
    let (d, e) = (p.diagonal(), p.off_diagonal());
    (
        kth_eigenvalue(&d, &e, 0, 1e-12),
        kth_eigenvalue(&d, &e, p.size - 1, 1e-12),
    )
}

/// Number of eigenvalues in `[a, b)`.
pub fn count_in(p: &PerturbedShift, a: f64, b: f64) -> usize {
    let (d, e) = (p.diagonal(), p.off_diagonal());
    count_below(&d, &e, b) - count_below(&d, &e, a)
}

/// True when no eigenvalue lies outside `[-2, 2]`.
pub fn contained_in_unit_band(p: &PerturbedShift) -> bool {
    let (d, e) = (p.diagonal(), p.off_diagonal());
    count_below(&d, &e, -2.0) == 0 && count_below(&d, &e, 2.0) == p.size
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub counts: Vec<usize>,
}

impl Histogram {
    pub fn fractions(&self) -> Vec<f64> {
        let total: usize = self.counts.iter().sum();
        self.counts.iter().map(|&c| c as f64 / total as f64).collect()
    }
}

/// Eigenvalue counts over `bins` equal buckets of `[-2, 2]` (the last bucket
/// is closed).
pub fn histogram(p: &PerturbedShift, bins: usize) -> Histogram {
    let (d, e) = (p.diagonal(), p.off_diagonal());
    let edges: Vec<f64> = (0..=bins).map(|i| -2.0 + 4.0 * i as f64 / bins as f64).collect();
    let mut cum: Vec<usize> = edges.iter().map(|&x| count_below(&d, &e, x)).collect();
    *cum.last_mut().expect("at least one edge") = count_below(&d, &e, f64::from_bits(2f64.to_bits() + 1));
    let counts = cum.windows(2).map(|w| w[1] - w[0]).collect();
    Histogram { edges, counts }
}

/// Coefficients (lowest degree first) of `p_0 .. p_{n_max}`:
/// `p_0 = 1`, `p_1 = x + delta^{-1/2}`, `p_{n+2} = x p_{n+1} - p_n`.
pub fn poly_sequence(delta: f64, n_max: usize) -> Vec<Vec<f64>> {
    let b = if delta.is_infinite() {
        0.0
    } else {
        delta.powf(-0.5)
    };
    let mut out = vec![vec![1.0]];
    if n_max >= 1 {
        out.push(vec![b, 1.0]);
    }
    for n in 2..=n_max {
        let mut next = vec![0.0; n + 1];
        for (i, c) in out[n - 1].iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in out[n - 2].iter().enumerate() {
            next[i] -= c;
        }
        out.push(next);
    }
    out
}

/// `q(Y) v` by Horner's rule.
pub fn apply_poly(m: &DMatrix<f64>, coeffs: &[f64], v: &DVector<f64>) -> DVector<f64> {
    let mut acc = DVector::zeros(v.len());
    for c in coeffs.iter().rev() {
        acc = m * acc + v * *c;
    }
    acc
}

/// `|| p_n(Y) e_0 - e_n ||` on the truncation, computed with the three-term
/// recurrence on vectors.
pub fn verify_cyclic(p: &PerturbedShift, n: usize) -> Result<f64> {
    let size = p.size;
    if n >= size {
        return Err(Error::TruncationTooSmall { n, size });
    }
    let (d, e) = (p.diagonal(), p.off_diagonal());
    let apply = |v: &[f64]| -> Vec<f64> {
        (0..size)
            .map(|i| {
                let mut s = d[i] * v[i];
                if i > 0 {
                    s += e[i - 1] * v[i - 1];
                }
                if i + 1 < size {
                    s += e[i] * v[i + 1];
                }
                s
            })
            .collect()
    };
    let mut prev = vec![0.0; size];
    prev[0] = 1.0;
    let result = if n == 0 {
        prev
    } else {
        let b = p.coupling();
        let mut cur: Vec<f64> = apply(&prev).iter().zip(&prev).map(|(y, x)| y + b * x).collect();
        for _ in 1..n {
            let next: Vec<f64> = apply(&cur).iter().zip(&prev).map(|(y, x)| y - x).collect();
            prev = cur;
            cur = next;
        }
        cur
    };
    Ok(result
        .iter()
        .enumerate()
        .map(|(i, x)| if i == n { x - 1.0 } else { *x })
        .map(|x| x * x)
        .sum::<f64>()
        .sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn matrix_examples() {
        let p = PerturbedShift::new(4.0, 2).unwrap();
        assert_eq!(
            build_matrix(&p),
            DMatrix::from_row_slice(2, 2, &[-0.5, 1.0, 1.0, 0.0])
        );
        let p = PerturbedShift::new(4.0, 3).unwrap();
        assert_eq!(
            build_matrix(&p),
            DMatrix::from_row_slice(3, 3, &[-0.5, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0])
        );
        let u = PerturbedShift::unperturbed(3).unwrap();
        assert_eq!(build_matrix(&u)[(0, 0)], 0.0);
        assert!(PerturbedShift::new(1.0, 3).is_err());
        assert!(PerturbedShift::new(2.0, 1).is_err());
    }

    #[test]
    fn unperturbed_closed_form() {
        let p = PerturbedShift::unperturbed(5).unwrap();
        let (lo, hi) = spectrum_bounds(&p);
        assert!((hi - 3f64.sqrt()).abs() < 1e-10);
        assert!((lo + 3f64.sqrt()).abs() < 1e-10);
        let all = eigenvalues(&p);
        for (k, x) in all.iter().enumerate() {
            let expected = 2.0 * (PI * (5 - k) as f64 / 6.0).cos();
            assert!((x - expected).abs() < 1e-10);
        }
    }

    #[test]
    fn bisection_matches_dense_solver() {
        for &delta in &[1.1, 2.0, 4.0] {
            let p = PerturbedShift::new(delta, 40).unwrap();
            let mut dense: Vec<f64> = build_matrix(&p).symmetric_eigenvalues().iter().copied().collect();
            dense.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for (a, b) in eigenvalues(&p).iter().zip(&dense) {
                assert!((a - b).abs() < 1e-9, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn poly_examples() {
        let ps = poly_sequence(4.0, 20);
        assert_eq!(ps[0], vec![1.0]);
        assert_eq!(ps[2], vec![-1.0, 0.5, 1.0]);
        for (n, p) in ps.iter().enumerate() {
            assert_eq!(p.len(), n + 1);
            assert_eq!(*p.last().unwrap(), 1.0);
        }
    }

    #[test]
    fn cyclic_examples() {
        let p = PerturbedShift::new(4.0, 10).unwrap();
        assert_eq!(verify_cyclic(&p, 0).unwrap(), 0.0);
        assert_eq!(verify_cyclic(&p, 1).unwrap(), 0.0);
        let p = PerturbedShift::new(2.0, 100).unwrap();
        assert!(verify_cyclic(&p, 10).unwrap() <= 1e-10);
        assert!(matches!(
            verify_cyclic(&PerturbedShift::new(2.0, 5).unwrap(), 5),
            Err(Error::TruncationTooSmall { n: 5, size: 5 })
        ));
    }

    #[test]
    fn horner_agrees_with_recurrence() {
        let p = PerturbedShift::new(2.0, 30).unwrap();
        let m = build_matrix(&p);
        let e0 = DVector::from_fn(30, |i, _| if i == 0 { 1.0 } else { 0.0 });
        for (n, coeffs) in poly_sequence(2.0, 8).iter().enumerate() {
            let v = apply_poly(&m, coeffs, &e0);
            let en = DVector::from_fn(30, |i, _| if i == n { 1.0 } else { 0.0 });
            assert!((v - en).norm() < 1e-9, "n = {n}");
        }
    }

    #[test]
    fn histogram_counts_everything() {
        let p = PerturbedShift::new(2.0, 200).unwrap();
        let h = histogram(&p, 8);
        assert_eq!(h.counts.iter().sum::<usize>(), 200);
        assert_eq!(h.edges.len(), 9);
    }
}
