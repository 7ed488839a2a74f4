//! The six-dimensional space Λ²(K⁴) of alternating tensors.
//!
//! Coordinates are taken in the ordered basis s01, s02, s03, s12, s13, s23
//! where sij = bi ∧ bj. A tensor x corresponds to the skew matrix
//!
//! ```text
//! [[  0,  x0,  x1,  x2],
//!  [-x0,   0,  x3,  x4],
//!  [-x1, -x3,   0,  x5],
//!  [-x2, -x4, -x5,   0]]
//! ```
//!
//! and GL₄(K) acts by A.X = AXA′.

use crate::field::Field;
use crate::linalg::{nullspace, Matrix, Subspace};

/// Index pairs (i, j), i < j, in coordinate order.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Display names of the basis tensors.
pub const BASIS_NAMES: [&str; 6] = ["s01", "s02", "s03", "s12", "s13", "s23"];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExteriorError {
    #[error("matrix is singular")]
    Singular,
    #[error("tensor is zero")]
    Zero,
    #[error("tensor is not on the Klein quadric (rank 4)")]
    OffQuadric,
    #[error("matrix is not alternating")]
    NotAlternating,
    #[error("vectors are linearly dependent")]
    Dependent,
}

/// Coordinate index of sij for i ≠ j, with the sign of sij relative to the
/// stored basis tensor.
pub fn pair_index(i: usize, j: usize) -> Option<(usize, bool)> {
    let (a, b, flip) = if i < j { (i, j, false) } else { (j, i, true) };
    PAIRS.iter().position(|&p| p == (a, b)).map(|k| (k, flip))
}

/// The tensor sij.
pub fn s<F: Field>(f: &F, i: usize, j: usize) -> Vec<F::Elem> {
    let mut v = vec![f.zero(); 6];
    let (k, flip) = pair_index(i, j).expect("i ≠ j below 4");
    v[k] = if flip { f.neg(&f.one()) } else { f.one() };
    v
}

/// Tensor with the given small integer coordinates.
pub fn tensor<F: Field>(f: &F, c: [i64; 6]) -> Vec<F::Elem> {
    c.iter().map(|&x| f.from_int(x)).collect()
}

pub fn wedge<F: Field>(f: &F, v: &[F::Elem], w: &[F::Elem]) -> Vec<F::Elem> {
    PAIRS
        .iter()
        .map(|&(i, j)| f.sub(&f.mul(&v[i], &w[j]), &f.mul(&v[j], &w[i])))
        .collect()
}

pub fn to_matrix<F: Field>(f: &F, x: &[F::Elem]) -> Matrix<F> {
    let mut m = Matrix::zeros(f, 4, 4);
    for (k, &(i, j)) in PAIRS.iter().enumerate() {
        m.set(i, j, x[k].clone());
        m.set(j, i, f.neg(&x[k]));
    }
    m
}

/// Coordinates of an alternating 4×4 matrix (zero diagonal required in
/// every characteristic).
pub fn from_matrix<F: Field>(f: &F, m: &Matrix<F>) -> Result<Vec<F::Elem>, ExteriorError> {
    for i in 0..4 {
        if !f.is_zero(m.get(i, i)) {
            return Err(ExteriorError::NotAlternating);
        }
        for j in 0..4 {
            if f.add(m.get(i, j), m.get(j, i)) != f.zero() {
                return Err(ExteriorError::NotAlternating);
            }
        }
    }
    Ok(PAIRS.iter().map(|&(i, j)| m.get(i, j).clone()).collect())
}

/// pf(x) = x0x5 − x1x4 + x2x3.
pub fn pfaffian<F: Field>(f: &F, x: &[F::Elem]) -> F::Elem {
    let a = f.mul(&x[0], &x[5]);
    let b = f.mul(&x[1], &x[4]);
    let c = f.mul(&x[2], &x[3]);
    f.add(&f.sub(&a, &b), &c)
}

/// Polar form pf(x + y) − pf(x) − pf(y).
pub fn polar<F: Field>(f: &F, x: &[F::Elem], y: &[F::Elem]) -> F::Elem {
    let t = |i: usize, j: usize| f.add(&f.mul(&x[i], &y[j]), &f.mul(&x[j], &y[i]));
    f.add(&f.sub(&t(0, 5), &t(1, 4)), &t(2, 3))
}

/// Gram matrix of the polar form.
pub fn polar_gram<F: Field>(f: &F) -> Matrix<F> {
    Matrix::from_ints(
        f,
        &[
            &[0, 0, 0, 0, 0, 1],
            &[0, 0, 0, 0, -1, 0],
            &[0, 0, 0, 1, 0, 0],
            &[0, 0, 1, 0, 0, 0],
            &[0, -1, 0, 0, 0, 0],
            &[1, 0, 0, 0, 0, 0],
        ],
    )
}

/// The Pfaffian as v′Mv in the rearranged basis s01, s02, s03, s23, −s13,
/// s12, where M = [[0, E₃], [0, 0]].
pub struct PfaffianContext<F: Field> {
    pub upper: Matrix<F>,
    pub polar: Matrix<F>,
}

impl<F: Field> PfaffianContext<F> {
    pub fn new(f: &F) -> Self {
        let zero = Matrix::zeros(f, 3, 3);
        let upper = Matrix::blocks(f, &zero, &Matrix::identity(f, 3), &zero, &zero);
        let polar = upper.add(f, &upper.transpose());
        PfaffianContext { upper, polar }
    }

    /// Coordinates in the rearranged basis.
    pub fn rearrange(f: &F, x: &[F::Elem]) -> Vec<F::Elem> {
        vec![x[0].clone(), x[1].clone(), x[2].clone(), x[5].clone(), f.neg(&x[4]), x[3].clone()]
    }

    pub fn value(&self, f: &F, x: &[F::Elem]) -> F::Elem {
        let v = Self::rearrange(f, x);
        crate::linalg::dot(f, &v, &self.upper.mul_vec(f, &v))
    }
}

/// The 6×6 matrix of X ↦ AXA′ on coordinates (second compound of A).
pub fn compound<F: Field>(f: &F, a: &Matrix<F>) -> Matrix<F> {
    Matrix::from_fn(6, 6, |r, c| {
        let (j, k) = PAIRS[r];
        let (p, q) = PAIRS[c];
        f.sub(&f.mul(a.get(j, p), a.get(k, q)), &f.mul(a.get(j, q), a.get(k, p)))
    })
}

pub fn act<F: Field>(f: &F, a: &Matrix<F>, x: &[F::Elem]) -> Vec<F::Elem> {
    compound(f, a).mul_vec(f, x)
}

pub fn act_subspace<F: Field>(
    f: &F,
    a: &Matrix<F>,
    u: &Subspace<F>,
) -> Result<Subspace<F>, ExteriorError> {
    if !a.is_invertible(f) {
        return Err(ExteriorError::Singular);
    }
    Ok(act_subspace_unchecked(f, &compound(f, a), u))
}

/// Image of `u` under a precomputed compound matrix.
pub fn act_subspace_unchecked<F: Field>(f: &F, c: &Matrix<F>, u: &Subspace<F>) -> Subspace<F> {
    Subspace::new(f, 6, u.basis.iter().map(|x| c.mul_vec(f, x)).collect())
}

/// The orthogonal space with respect to the polar form.
pub fn perp<F: Field>(f: &F, u: &Subspace<F>) -> Subspace<F> {
    if u.dim() == 0 {
        return Subspace::full(f, 6);
    }
    let g = polar_gram(f);
    let rows: Vec<Vec<F::Elem>> = u.basis.iter().map(|x| g.mul_vec(f, x)).collect();
    Subspace::new(f, 6, nullspace(f, &Matrix::from_rows(rows)))
}

/// λ: the line ⟨v, w⟩ of K⁴ as a point of the Klein quadric.
pub fn line_to_quadric<F: Field>(
    f: &F,
    v: &[F::Elem],
    w: &[F::Elem],
) -> Result<Vec<F::Elem>, ExteriorError> {
    let x = wedge(f, v, w);
    if x.iter().all(|c| f.is_zero(c)) {
        return Err(ExteriorError::Dependent);
    }
    Ok(x)
}

/// λ⁻¹: the column space of the matrix of a decomposable tensor.
pub fn quadric_to_line<F: Field>(f: &F, x: &[F::Elem]) -> Result<Subspace<F>, ExteriorError> {
    if x.iter().all(|c| f.is_zero(c)) {
        return Err(ExteriorError::Zero);
    }
    if !f.is_zero(&pfaffian(f, x)) {
        return Err(ExteriorError::OffQuadric);
    }
    let m = to_matrix(f, x);
    let line = Subspace::new(f, 4, m.transpose().row_vecs());
    debug_assert_eq!(line.dim(), 2);
    Ok(line)
}

/// Upper triangular matrix m_U with q(Σ cᵢuᵢ) = c′ m_U c over the echelon
/// basis u₁, …, u_k of `u`.
pub fn restrict_form<F: Field>(f: &F, u: &Subspace<F>) -> Matrix<F> {
    let k = u.dim();
    Matrix::from_fn(k, k, |i, j| {
        if i == j {
            pfaffian(f, &u.basis[i])
        } else if i < j {
            polar(f, &u.basis[i], &u.basis[j])
        } else {
            f.zero()
        }
    })
}

/// Span of tensors given by small integer coordinates.
pub fn span<F: Field>(f: &F, rows: &[[i64; 6]]) -> Subspace<F> {
    Subspace::new(f, 6, rows.iter().map(|r| tensor(f, *r)).collect())
}

/// Human-readable tensor, e.g. `s01 + 2*s23`.
pub fn format_tensor<F: Field>(f: &F, x: &[F::Elem]) -> String {
    let mut parts = Vec::new();
    for (k, c) in x.iter().enumerate() {
        if f.is_zero(c) {
            continue;
        }
        if f.is_one(c) {
            parts.push(BASIS_NAMES[k].to_string());
        } else {
            parts.push(format!("({})*{}", f.format(c), BASIS_NAMES[k]));
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}
