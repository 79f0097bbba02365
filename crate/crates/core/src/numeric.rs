//! Floating-point helpers for the parts of the library that are numeric by nature:
//! matrix exponentials for transport, and eigen-solves used only to propose exact candidates.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMat = DMatrix<Complex64>;
pub type RMat = DMatrix<f64>;

/// Numerical rank by singular values, relative to the largest one.
pub fn rank(m: &CMat, tol: f64) -> usize {
    if m.is_empty() {
        return 0;
    }
    let sv = m.clone().singular_values();
    let top = sv.iter().cloned().fold(0.0, f64::max);
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&x| x > tol * top).count()
}

/// Dimension of the Lie algebra generated by `gens`, with rank tolerance `tol`.
pub fn closure_dim(gens: &[RMat], tol: f64) -> usize {
    let mut basis: Vec<RMat> = Vec::new();
    let mut work: Vec<RMat> = gens.to_vec();
    let mut i = 0;
    while i < work.len() {
        let m = work[i].clone();
        i += 1;
        if m.norm() <= tol {
            continue;
        }
        let len = m.len();
        let mut stacked = RMat::zeros(len, basis.len() + 1);
        for (c, b) in basis.iter().chain(std::iter::once(&m)).enumerate() {
            for (r, x) in b.iter().enumerate() {
                stacked[(r, c)] = *x;
            }
        }
        let sv = stacked.singular_values();
        let top = sv.iter().cloned().fold(0.0, f64::max);
        let r = sv.iter().filter(|&&x| x > tol * top).count();
        if r == basis.len() + 1 {
            for b in &basis {
                work.push(&m * b - b * &m);
            }
            basis.push(m);
        }
    }
    basis.len()
}
