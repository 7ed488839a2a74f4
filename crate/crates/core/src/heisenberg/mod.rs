//! Heisenberg algebras V ⊕ Z with bracket [(v,x),(w,y)] = (0, β(v,w)).
//!
//! β is the composite of v ∧ w with the quotient map Λ²V → Λ²V/ker. Z is
//! stored through the free (non-pivot) coordinates of the kernel, so a class
//! in Z is the reduced representative of any tensor in it.

mod scan;
mod stabilizers;

pub use scan::{automorphism_scan, AutomorphismScan};
pub use stabilizers::{
    left_matrix, membership_predicate, right_matrix, shape_test, sigma_generators, stabilizer_name,
    GeneratorSet,
};

use crate::classify::{classify_subspace, same_orbit, ClassifyError};
use crate::field::Field;
use crate::linalg::{nullspace, Matrix, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HeisError {
    #[error("V must have dimension 2 or 4, got {0}")]
    VDim(usize),
    #[error("kernel lives in dimension {got}, expected {expected}")]
    KernelAmbient { expected: usize, got: usize },
    #[error("matrix is not an invertible {0}x{0} matrix")]
    Singular(usize),
    #[error("matrix does not stabilize the kernel: {vector} is sent to {image}")]
    NotInStabilizer { vector: String, image: String },
    #[error("tau must be a {rows}x{cols} matrix")]
    TauShape { rows: usize, cols: usize },
    #[error("kernel {0} gives an algebra that is not reduced")]
    NotReduced(String),
    #[error("generator {0} does not stabilize the kernel")]
    BadGenerator(usize),
    #[error("{0}")]
    Classify(#[from] ClassifyError),
    #[error("isomorphism test undecided")]
    Undecided,
}

/// Index pairs i < j in lexicographic order; for n = 4 this is the
/// coordinate order s01, s02, s03, s12, s13, s23.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

pub fn wedge_n<F: Field>(f: &F, v: &[F::Elem], w: &[F::Elem]) -> Vec<F::Elem> {
    pairs(v.len())
        .into_iter()
        .map(|(i, j)| f.sub(&f.mul(&v[i], &w[j]), &f.mul(&v[j], &w[i])))
        .collect()
}

/// Matrix of X ↦ AXA′ on Λ²(Kⁿ).
pub fn compound_n<F: Field>(f: &F, a: &Matrix<F>) -> Matrix<F> {
    let ps = pairs(a.rows);
    Matrix::from_fn(ps.len(), ps.len(), |r, c| {
        let ((j, k), (p, q)) = (ps[r], ps[c]);
        f.sub(&f.mul(a.get(j, p), a.get(k, q)), &f.mul(a.get(j, q), a.get(k, p)))
    })
}

fn format_vec<F: Field>(f: &F, v: &[F::Elem]) -> String {
    let parts: Vec<String> = v.iter().map(|x| f.format(x)).collect();
    format!("({})", parts.join(","))
}

#[derive(Clone, Debug)]
pub struct HeisenbergAlgebra<F: Field> {
    field: F,
    v_dim: usize,
    kernel: Subspace<F>,
    free: Vec<usize>,
    reduced: bool,
}

impl<F: Field> HeisenbergAlgebra<F> {
    pub fn new(f: &F, v_dim: usize, kernel: Subspace<F>) -> Result<Self, HeisError> {
        if v_dim != 2 && v_dim != 4 {
            return Err(HeisError::VDim(v_dim));
        }
        let expected = v_dim * (v_dim - 1) / 2;
        if kernel.ambient != expected {
            return Err(HeisError::KernelAmbient { expected, got: kernel.ambient });
        }
        let free = kernel.free_coords();
        let mut h = HeisenbergAlgebra { field: f.clone(), v_dim, kernel, free, reduced: false };
        h.reduced = h.check_reduced();
        Ok(h)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn v_dim(&self) -> usize {
        self.v_dim
    }

    pub fn z_dim(&self) -> usize {
        self.free.len()
    }

    pub fn dim(&self) -> usize {
        self.v_dim + self.z_dim()
    }

    pub fn kernel(&self) -> &Subspace<F> {
        &self.kernel
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// Coordinates in Z of the class of a tensor.
    pub fn z_of(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        let r = self.kernel.reduce(&self.field, x);
        self.free.iter().map(|&i| r[i].clone()).collect()
    }

    /// The coset representative of a class in Z.
    pub fn lift(&self, z: &[F::Elem]) -> Vec<F::Elem> {
        let mut x = vec![self.field.zero(); self.kernel.ambient];
        for (k, &i) in self.free.iter().enumerate() {
            x[i] = z[k].clone();
        }
        x
    }

    pub fn beta(&self, v: &[F::Elem], w: &[F::Elem]) -> Vec<F::Elem> {
        self.z_of(&wedge_n(&self.field, v, w))
    }

    /// Bracket of two elements given as V-coordinates followed by Z-coordinates.
    pub fn bracket(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let n = self.v_dim;
        let mut out = vec![self.field.zero(); n];
        out.extend(self.beta(&x[..n], &y[..n]));
        out
    }

    fn basis_v(&self, i: usize) -> Vec<F::Elem> {
        crate::linalg::unit_vec(&self.field, self.v_dim, i)
    }

    // (∗): v ↦ (β(v, b_j))_j must be injective.
    fn check_reduced(&self) -> bool {
        let n = self.v_dim;
        let rows: Vec<Vec<F::Elem>> = (0..n)
            .map(|i| (0..n).flat_map(|j| self.beta(&self.basis_v(i), &self.basis_v(j))).collect())
            .collect();
        if self.z_dim() == 0 {
            return false;
        }
        Matrix::from_rows(rows).rank(&self.field) == n
    }

    /// Elements commuting with everything, found by solving the linear system.
    pub fn center(&self) -> Subspace<F> {
        let f = &self.field;
        let (n, m) = (self.v_dim, self.z_dim());
        let mut cons = Vec::new();
        for j in 0..n {
            let cols: Vec<Vec<F::Elem>> =
                (0..n).map(|i| self.beta(&self.basis_v(i), &self.basis_v(j))).collect();
            for k in 0..m {
                let mut row: Vec<F::Elem> = cols.iter().map(|c| c[k].clone()).collect();
                row.extend((0..m).map(|_| f.zero()));
                cons.push(row);
            }
        }
        if cons.is_empty() {
            return Subspace::full(f, n + m);
        }
        Subspace::new(f, n + m, nullspace(f, &Matrix::from_rows(cons)))
    }

    /// Span of all brackets.
    pub fn commutator(&self) -> Subspace<F> {
        let n = self.v_dim;
        let mut vs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let (x, y) = (self.embed_v(&self.basis_v(i)), self.embed_v(&self.basis_v(j)));
                vs.push(self.bracket(&x, &y));
            }
        }
        Subspace::new(&self.field, self.dim(), vs)
    }

    /// {0} × Z.
    pub fn z_subspace(&self) -> Subspace<F> {
        let d = self.dim();
        let vs = (self.v_dim..d).map(|i| crate::linalg::unit_vec(&self.field, d, i)).collect();
        Subspace::new(&self.field, d, vs)
    }

    fn embed_v(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let mut x = v.to_vec();
        x.extend((0..self.z_dim()).map(|_| self.field.zero()));
        x
    }

    /// The map induced on Z by σ, or the first kernel vector σ moves out of
    /// the kernel.
    pub fn induced_sigma_prime(&self, sigma: &Matrix<F>) -> Result<Matrix<F>, HeisError> {
        let f = &self.field;
        let n = self.v_dim;
        if sigma.rows != n || sigma.cols != n || !sigma.is_invertible(f) {
            return Err(HeisError::Singular(n));
        }
        let c = compound_n(f, sigma);
        for x in &self.kernel.basis {
            let y = c.mul_vec(f, x);
            if !self.kernel.contains(f, &y) {
                return Err(HeisError::NotInStabilizer {
                    vector: format_vec(f, x),
                    image: format_vec(f, &y),
                });
            }
        }
        let cols: Vec<Vec<F::Elem>> = (0..self.z_dim())
            .map(|k| {
                let e = crate::linalg::unit_vec(f, self.z_dim(), k);
                self.z_of(&c.mul_vec(f, &self.lift(&e)))
            })
            .collect();
        Ok(Matrix::from_cols(&cols))
    }

    pub fn automorphism(&self, sigma: &Matrix<F>, tau: &Matrix<F>) -> Result<Automorphism<F>, HeisError> {
        let (rows, cols) = (self.z_dim(), self.v_dim);
        if tau.rows != rows || tau.cols != cols {
            return Err(HeisError::TauShape { rows, cols });
        }
        let sigma_prime = self.induced_sigma_prime(sigma)?;
        let a = Automorphism { sigma: sigma.clone(), sigma_prime, tau: tau.clone() };
        debug_assert!(self.preserves_bracket(&a.matrix(&self.field)));
        Ok(a)
    }

    pub fn zero_tau(&self) -> Matrix<F> {
        Matrix::zeros(&self.field, self.z_dim(), self.v_dim)
    }

    /// Whether a linear map of the whole algebra preserves the bracket on all
    /// pairs of basis vectors.
    pub fn preserves_bracket(&self, m: &Matrix<F>) -> bool {
        let f = &self.field;
        let d = self.dim();
        let images: Vec<Vec<F::Elem>> = (0..d).map(|i| m.col(i)).collect();
        for i in 0..d {
            for j in i + 1..d {
                let ei = crate::linalg::unit_vec(f, d, i);
                let ej = crate::linalg::unit_vec(f, d, j);
                let lhs = self.bracket(&images[i], &images[j]);
                let rhs = m.mul_vec(f, &self.bracket(&ei, &ej));
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}

/// (v, z) ↦ (σv, σ′z + τv).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism<F: Field> {
    pub sigma: Matrix<F>,
    pub sigma_prime: Matrix<F>,
    pub tau: Matrix<F>,
}

impl<F: Field> Automorphism<F> {
    pub fn identity(h: &HeisenbergAlgebra<F>) -> Self {
        let f = h.field();
        Automorphism {
            sigma: Matrix::identity(f, h.v_dim()),
            sigma_prime: Matrix::identity(f, h.z_dim()),
            tau: h.zero_tau(),
        }
    }

    pub fn apply(&self, f: &F, x: &[F::Elem]) -> Vec<F::Elem> {
        let n = self.sigma.rows;
        let (v, z) = x.split_at(n);
        let mut out = self.sigma.mul_vec(f, v);
        let tv = self.tau.mul_vec(f, v);
        let sz = self.sigma_prime.mul_vec(f, z);
        out.extend(sz.iter().zip(&tv).map(|(a, b)| f.add(a, b)));
        out
    }

    /// self ∘ other.
    pub fn compose(&self, f: &F, other: &Self) -> Self {
        let tau = self.sigma_prime.mul(f, &other.tau).add(f, &self.tau.mul(f, &other.sigma));
        Automorphism {
            sigma: self.sigma.mul(f, &other.sigma),
            sigma_prime: self.sigma_prime.mul(f, &other.sigma_prime),
            tau,
        }
    }

    pub fn inverse(&self, f: &F) -> Self {
        let si = self.sigma.inverse(f).expect("sigma is invertible");
        let spi = self.sigma_prime.inverse(f).expect("sigma' is invertible");
        let tau = spi.mul(f, &self.tau).mul(f, &si).neg(f);
        Automorphism { sigma: si, sigma_prime: spi, tau }
    }

    /// Block matrix [[σ, 0], [τ, σ′]] on V ⊕ Z.
    pub fn matrix(&self, f: &F) -> Matrix<F> {
        let (n, m) = (self.sigma.rows, self.sigma_prime.rows);
        let mut out = Matrix::zeros(f, n + m, n + m);
        out.set_block(0, 0, &self.sigma);
        out.set_block(n, 0, &self.tau);
        out.set_block(n, n, &self.sigma_prime);
        out
    }
}

/// Isomorphism of reduced algebras with dim V = 4, decided through the orbit
/// labels of their kernels.
pub fn isomorphic<F: Field>(a: &HeisenbergAlgebra<F>, b: &HeisenbergAlgebra<F>) -> Result<bool, HeisError> {
    let f = a.field();
    if a.v_dim() != 4 || b.v_dim() != 4 {
        return Err(HeisError::VDim(a.v_dim().max(b.v_dim())));
    }
    if a.z_dim() != b.z_dim() {
        return Ok(false);
    }
    if a.kernel().dim() == 0 || a.kernel().dim() == 6 {
        return Ok(true);
    }
    let la = classify_subspace(f, a.kernel())?;
    let lb = classify_subspace(f, b.kernel())?;
    same_orbit(f, &la, &lb).ok_or(HeisError::Undecided)
}
