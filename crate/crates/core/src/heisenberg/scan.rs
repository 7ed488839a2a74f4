//! Exhaustive search for bracket-preserving linear bijections over a finite
//! field.
//!
//! A linear map φ is fixed by the images x_i = (v_i, w_i) of b_0..b_{n−1}
//! and y_k of the Z basis. Each Z basis vector is the bracket [b_i, b_j] of
//! its free coordinate pair, so y_k = [x_i, x_j] is forced. The remaining
//! conditions [x_i, x_j] = φ([b_i, b_j]) involve the v_i only, and the matrix
//! of φ is block lower triangular, so it is bijective iff (v_i) and (y_k) are.
//! The Z-parts w_i are therefore free and each valid (v_i) contributes
//! |Z|^n maps.

use super::{pairs, wedge_n, HeisError, HeisenbergAlgebra};
use crate::field::Field;
use crate::linalg::Matrix;

#[derive(Clone, Debug)]
pub struct AutomorphismScan<F: Field> {
    /// The V-parts σ = (v_0 | … | v_{n−1}) of all automorphisms.
    pub sigmas: Vec<Matrix<F>>,
    /// Number of bracket-preserving linear bijections of the algebra.
    pub count: u128,
}

pub fn automorphism_scan<F: Field>(h: &HeisenbergAlgebra<F>, budget: u64) -> Result<AutomorphismScan<F>, HeisError> {
    let f = h.field();
    let elems = f.elements().ok_or(HeisError::Undecided)?;
    let q = elems.len() as u64;
    let (n, m) = (h.v_dim(), h.z_dim());
    let total = q.checked_pow((n * n) as u32).filter(|&t| t <= budget).ok_or(HeisError::Undecided)?;
    let ps = pairs(n);
    let free = h.kernel().free_coords();
    // [b_i, b_j] in Z-coordinates, for every pair.
    let brackets: Vec<Vec<F::Elem>> = ps
        .iter()
        .map(|&(i, j)| h.beta(&crate::linalg::unit_vec(f, n, i), &crate::linalg::unit_vec(f, n, j)))
        .collect();
    let mut sigmas = Vec::new();
    let mut digits = vec![0usize; n * n];
    for _ in 0..total {
        let sigma = Matrix::from_fn(n, n, |r, c| elems[digits[c * n + r]].clone());
        advance(&mut digits, q as usize);
        if !sigma.is_invertible(f) {
            continue;
        }
        let v: Vec<Vec<F::Elem>> = (0..n).map(|i| sigma.col(i)).collect();
        // y_k = [x_i, x_j] for the k-th free pair.
        let ys: Vec<Vec<F::Elem>> = free
            .iter()
            .map(|&c| {
                let (i, j) = ps[c];
                h.z_of(&wedge_n(f, &v[i], &v[j]))
            })
            .collect();
        if m > 0 && Matrix::from_cols(&ys).rank(f) < m {
            continue;
        }
        let ok = ps.iter().zip(&brackets).all(|(&(i, j), b)| {
            let lhs = h.z_of(&wedge_n(f, &v[i], &v[j]));
            let mut rhs = vec![f.zero(); m];
            for (k, y) in ys.iter().enumerate() {
                for (r, yr) in rhs.iter_mut().zip(y) {
                    *r = f.add(r, &f.mul(&b[k], yr));
                }
            }
            lhs == rhs
        });
        if ok {
            debug_assert!(h.preserves_bracket(&full_map(f, &sigma, &ys)));
            sigmas.push(sigma);
        }
    }
    let fiber = (q as u128).pow((m * n) as u32);
    Ok(AutomorphismScan { count: sigmas.len() as u128 * fiber, sigmas })
}

fn advance(digits: &mut [usize], q: usize) {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < q {
            return;
        }
        *d = 0;
    }
}

fn full_map<F: Field>(f: &F, sigma: &Matrix<F>, ys: &[Vec<F::Elem>]) -> Matrix<F> {
    let (n, m) = (sigma.rows, ys.len());
    let mut out = Matrix::zeros(f, n + m, n + m);
    out.set_block(0, 0, sigma);
    if m > 0 {
        out.set_block(n, n, &Matrix::from_cols(ys));
    }
    out
}
