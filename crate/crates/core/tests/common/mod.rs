#![allow(dead_code)]

use proptest::prelude::*;
use spectool_core::{Complex64, DenseMatrix};

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn complex(bound: f64) -> impl Strategy<Value = Complex64> {
    (-bound..bound, -bound..bound).prop_map(|(re, im)| c(re, im))
}

pub fn matrix(n: usize, bound: f64) -> impl Strategy<Value = DenseMatrix> {
    prop::collection::vec(complex(bound), n * n).prop_map(move |d| DenseMatrix::new(n, d).unwrap())
}

/// Gram–Schmidt on the columns of a generic matrix.
pub fn unitary_from(a: &DenseMatrix) -> DenseMatrix {
    let n = a.dim();
    let mut cols: Vec<Vec<Complex64>> = (0..n)
        .map(|j| (0..n).map(|i| a[(i, j)]).collect())
        .collect();
    for j in 0..n {
        for k in 0..j {
            let proj: Complex64 = (0..n).map(|i| cols[k][i].conj() * cols[j][i]).sum();
            for i in 0..n {
                let v = cols[k][i];
                cols[j][i] -= proj * v;
            }
        }
        let nrm = cols[j].iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        cols[j].iter_mut().for_each(|v| *v /= nrm);
    }
    DenseMatrix::from_fn(n, |i, j| cols[j][i])
}

/// Largest distance under the best pairing of two small multisets.
pub fn matched_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let mut idx: Vec<usize> = (0..b.len()).collect();
    let mut best = f64::INFINITY;
    permute(&mut idx, 0, &mut |p| {
        let d = a
            .iter()
            .zip(p)
            .map(|(x, &k)| (x - b[k]).norm())
            .fold(0.0, f64::max);
        best = best.min(d);
    });
    best
}

fn permute(idx: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == idx.len() {
        f(idx);
        return;
    }
    for i in k..idx.len() {
        idx.swap(k, i);
        permute(idx, k + 1, f);
        idx.swap(k, i);
    }
}

/// Greedy pairing distance for larger multisets that are known to be close.
pub fn greedy_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let mut used = vec![false; b.len()];
    let mut worst = 0.0f64;
    for x in a {
        let (k, d) = b
            .iter()
            .enumerate()
            .filter(|(k, _)| !used[*k])
            .map(|(k, y)| (k, (x - y).norm()))
            .fold((usize::MAX, f64::INFINITY), |acc, v| {
                if v.1 < acc.1 {
                    v
                } else {
                    acc
                }
            });
        used[k] = true;
        worst = worst.max(d);
    }
    worst
}
