//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use qmi_orbits::Spectrum;

pub fn entropy_bits(p: &[f64]) -> f64 {
    p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.log2()).sum()
}

pub fn h2(x: f64) -> f64 {
    entropy_bits(&[x, 1.0 - x])
}

/// Eigenvalues of a 2×2 Hermitian matrix from its trace and determinant.
pub fn eig2(m: &DMatrix<Complex64>) -> [f64; 2] {
    let (a, d) = (m[(0, 0)].re, m[(1, 1)].re);
    let b = m[(0, 1)].norm();
    let mid = 0.5 * (a + d);
    let r = (0.25 * (a - d) * (a - d) + b * b).sqrt();
    [mid + r, mid - r]
}

/// Reduced 2×2 matrices of a two-qubit matrix, index `i_A * 2 + j_B`.
pub fn reduce(m: &DMatrix<Complex64>) -> (DMatrix<Complex64>, DMatrix<Complex64>) {
    let mut a = DMatrix::zeros(2, 2);
    let mut b = DMatrix::zeros(2, 2);
    for i in 0..2 {
        for k in 0..2 {
            for j in 0..2 {
                a[(i, k)] += m[(2 * i + j, 2 * k + j)];
                b[(i, k)] += m[(2 * j + i, 2 * j + k)];
            }
        }
    }
    (a, b)
}

/// QMI of a two-qubit state on the orbit of `global`, from explicit reductions.
pub fn qmi_oracle(m: &DMatrix<Complex64>, global: &[f64]) -> f64 {
    let (a, b) = reduce(m);
    entropy_bits(&eig2(&a)) + entropy_bits(&eig2(&b)) - entropy_bits(global)
}

/// Row and column sums of a row-major table.
pub fn row_col_sums(entries: &[f64], rows: usize, cols: usize) -> (Vec<f64>, Vec<f64>) {
    let mut a = vec![0.0; rows];
    let mut b = vec![0.0; cols];
    for r in 0..rows {
        for c in 0..cols {
            a[r] += entries[r * cols + c];
            b[c] += entries[r * cols + c];
        }
    }
    (a, b)
}

pub fn classical_mi(entries: &[f64], rows: usize, cols: usize) -> f64 {
    let (a, b) = row_col_sums(entries, rows, cols);
    entropy_bits(&a) + entropy_bits(&b) - entropy_bits(entries)
}

/// Minimum classical mutual information over every arrangement, by plain recursion.
pub fn brute_force_minimum(values: &[f64], rows: usize, cols: usize) -> f64 {
    fn go(values: &[f64], used: &mut [bool], cur: &mut Vec<f64>, rows: usize, cols: usize, best: &mut f64) {
        if cur.len() == values.len() {
            *best = best.min(classical_mi(cur, rows, cols));
            return;
        }
        for i in 0..values.len() {
            if !used[i] {
                used[i] = true;
                cur.push(values[i]);
                go(values, used, cur, rows, cols, best);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut best = f64::INFINITY;
    go(values, &mut vec![false; values.len()], &mut Vec::with_capacity(values.len()), rows, cols, &mut best);
    best
}

/// Descending partial sums of `p` dominate those of `q`.
pub fn majorizes_naive(p: &[f64], q: &[f64], tol: f64) -> bool {
    let mut ps = p.to_vec();
    let mut qs = q.to_vec();
    ps.sort_by(|x, y| y.total_cmp(x));
    qs.sort_by(|x, y| y.total_cmp(x));
    let mut acc = 0.0;
    for (x, y) in ps.iter().zip(&qs) {
        acc += x - y;
        if acc < -tol {
            return false;
        }
    }
    true
}

pub fn weights(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(1e-3f64..1.0, n)
}

pub fn spectrum(dims: (usize, usize)) -> impl Strategy<Value = Spectrum> {
    weights(dims.0 * dims.1).prop_map(move |w| Spectrum::from_weights(w, dims).unwrap())
}
