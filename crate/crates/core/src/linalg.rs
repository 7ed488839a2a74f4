//! Dense matrices and canonical subspaces over an exact [`Field`].

use std::fmt;
use std::hash::{Hash, Hasher};

use crate::field::Field;

/// Row-major dense matrix. The field descriptor is passed to each
/// arithmetic operation.
pub struct Matrix<F: Field> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<F::Elem>,
}

impl<F: Field> Clone for Matrix<F> {
    fn clone(&self) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.clone() }
    }
}

impl<F: Field> PartialEq for Matrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl<F: Field> Eq for Matrix<F> {}

impl<F: Field> Hash for Matrix<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.data.hash(state);
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.data.chunks(self.cols.max(1))).finish()
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(f: &F, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![f.zero(); rows * cols] }
    }

    pub fn identity(f: &F, n: usize) -> Self {
        let mut m = Self::zeros(f, n, n);
        for i in 0..n {
            m.data[i * n + i] = f.one();
        }
        m
    }

    pub fn diag(f: &F, entries: &[F::Elem]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(f, n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F::Elem>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Matrix with small integer entries.
    pub fn from_ints(f: &F, rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| f.from_int(x)).collect()).collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut g: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(g(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<F::Elem>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |x| x.len());
        Self::from_fn(r, c, |i, j| cols[j][i].clone())
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, f: &F, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, other.get(k, j)));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, f: &F, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| dot(f, self.row(i), v))
            .collect()
    }

    pub fn add(&self, f: &F, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, f: &F, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f.sub(a, b)).collect(),
        }
    }

    pub fn scale(&self, f: &F, s: &F::Elem) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| f.mul(a, s)).collect() }
    }

    pub fn neg(&self, f: &F) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| f.neg(a)).collect() }
    }

    pub fn is_zero(&self, f: &F) -> bool {
        self.data.iter().all(|a| f.is_zero(a))
    }

    pub fn is_identity(&self, f: &F) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let a = self.get(i, j);
                    if i == j {
                        f.is_one(a)
                    } else {
                        f.is_zero(a)
                    }
                })
            })
    }

    pub fn trace(&self, f: &F) -> F::Elem {
        (0..self.rows.min(self.cols)).fold(f.zero(), |acc, i| f.add(&acc, self.get(i, i)))
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    /// Block matrix [[a, b], [c, d]].
    pub fn blocks(f: &F, a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        let mut m = Self::zeros(f, a.rows + c.rows, a.cols + b.cols);
        m.set_block(0, 0, a);
        m.set_block(0, a.cols, b);
        m.set_block(a.rows, 0, c);
        m.set_block(a.rows, a.cols, d);
        m
    }

    /// Kronecker product.
    pub fn kron(&self, f: &F, other: &Self) -> Self {
        Self::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            f.mul(
                self.get(i / other.rows, j / other.cols),
                other.get(i % other.rows, j % other.cols),
            )
        })
    }

    pub fn det(&self, f: &F) -> F::Elem {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        match n {
            0 => return f.one(),
            1 => return self.data[0].clone(),
            2 => {
                return f.sub(
                    &f.mul(self.get(0, 0), self.get(1, 1)),
                    &f.mul(self.get(0, 1), self.get(1, 0)),
                )
            }
            _ => {}
        }
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !f.is_zero(m.get(r, c))) else {
                return f.zero();
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = f.neg(&det);
            }
            let piv = m.get(c, c).clone();
            det = f.mul(&det, &piv);
            let inv = f.inv(&piv).expect("nonzero pivot");
            for r in c + 1..n {
                let factor = f.mul(m.get(r, c), &inv);
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(m.get(r, j), &f.mul(&factor, m.get(c, j)));
                    m.set(r, j, v);
                }
            }
        }
        det
    }

    pub fn rank(&self, f: &F) -> usize {
        let mut rows = self.row_vecs();
        rref(f, &mut rows).len()
    }

    pub fn inverse(&self, f: &F) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug: Vec<Vec<F::Elem>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { f.one() } else { f.zero() }));
                r
            })
            .collect();
        let pivots = rref(f, &mut aug);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_rows(aug.into_iter().map(|r| r[n..].to_vec()).collect()))
    }

    pub fn is_invertible(&self, f: &F) -> bool {
        !f.is_zero(&self.det(f))
    }

    pub fn pow(&self, f: &F, mut e: u64) -> Self {
        let mut acc = Self::identity(f, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base);
            }
            base = base.mul(f, &base);
            e >>= 1;
        }
        acc
    }

    pub fn format(&self, f: &F) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|a| f.format(a)).collect()).collect()
    }
}

/// Every element of GL_n over a finite field, or `None` when there are more
/// than 2²¹ candidate matrices.
pub fn general_linear<F: Field>(f: &F, n: usize) -> Option<Vec<Matrix<F>>> {
    let els = f.elements()?;
    let q = els.len();
    let total = (q as u128).checked_pow((n * n) as u32)?;
    if total > 1 << 21 {
        return None;
    }
    let mut out = Vec::new();
    for mut code in 0..total {
        let m = Matrix::from_fn(n, n, |_, _| {
            let e = els[(code % q as u128) as usize].clone();
            code /= q as u128;
            e
        });
        if m.is_invertible(f) {
            out.push(m);
        }
    }
    Some(out)
}

pub fn dot<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    let mut acc = f.zero();
    for (x, y) in a.iter().zip(b) {
        if f.is_zero(x) || f.is_zero(y) {
            continue;
        }
        acc = f.add(&acc, &f.mul(x, y));
    }
    acc
}

pub fn vec_add<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect()
}

pub fn vec_sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().zip(b).map(|(x, y)| f.sub(x, y)).collect()
}

pub fn vec_scale<F: Field>(f: &F, s: &F::Elem, a: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().map(|x| f.mul(s, x)).collect()
}

pub fn is_zero_vec<F: Field>(f: &F, a: &[F::Elem]) -> bool {
    a.iter().all(|x| f.is_zero(x))
}

pub fn unit_vec<F: Field>(f: &F, n: usize, i: usize) -> Vec<F::Elem> {
    (0..n).map(|j| if i == j { f.one() } else { f.zero() }).collect()
}

/// Bring `rows` to reduced row echelon form in place, dropping zero rows.
/// Returns the pivot columns.
pub fn rref<F: Field>(f: &F, rows: &mut Vec<Vec<F::Elem>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !f.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(&rows[r][c]).expect("nonzero pivot");
        if !f.is_one(&inv) {
            for x in rows[r][c..].iter_mut() {
                *x = f.mul(x, &inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || f.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for j in c..ncols {
                if f.is_zero(&pivot_row[j]) {
                    continue;
                }
                row[j] = f.sub(&row[j], &f.mul(&factor, &pivot_row[j]));
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Basis of the right null space {x : m·x = 0}.
pub fn nullspace<F: Field>(f: &F, m: &Matrix<F>) -> Vec<Vec<F::Elem>> {
    let mut rows = m.row_vecs();
    if m.rows == 0 {
        return (0..m.cols).map(|i| unit_vec(f, m.cols, i)).collect();
    }
    let pivots = rref(f, &mut rows);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); m.cols];
            v[fc] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(&rows[r][fc]);
            }
            v
        })
        .collect()
}

/// Some solution of m·x = b.
pub fn solve<F: Field>(f: &F, m: &Matrix<F>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let n = m.cols;
    let mut aug: Vec<Vec<F::Elem>> = (0..m.rows)
        .map(|i| {
            let mut r = m.row(i).to_vec();
            r.push(b[i].clone());
            r
        })
        .collect();
    let pivots = rref(f, &mut aug);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![f.zero(); n];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][n].clone();
    }
    Some(x)
}

/// A subspace of K^n, stored by its reduced row echelon basis; equality of
/// subspaces is structural equality of these bases.
pub struct Subspace<F: Field> {
    pub ambient: usize,
    pub basis: Vec<Vec<F::Elem>>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Clone for Subspace<F> {
    fn clone(&self) -> Self {
        Subspace { ambient: self.ambient, basis: self.basis.clone(), pivots: self.pivots.clone() }
    }
}

impl<F: Field> PartialEq for Subspace<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis == other.basis
    }
}

impl<F: Field> Eq for Subspace<F> {}

impl<F: Field> Hash for Subspace<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.basis.hash(state);
    }
}

impl<F: Field> fmt::Debug for Subspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace{:?}", self.basis)
    }
}

impl<F: Field> Subspace<F> {
    pub fn new(f: &F, ambient: usize, vectors: Vec<Vec<F::Elem>>) -> Self {
        assert!(vectors.iter().all(|v| v.len() == ambient), "vector length mismatch");
        let mut rows = vectors;
        let pivots = rref(f, &mut rows);
        Subspace { ambient, basis: rows, pivots }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(f: &F, ambient: usize) -> Self {
        Self::new(f, ambient, (0..ambient).map(|i| unit_vec(f, ambient, i)).collect())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The canonical representative of `v` modulo this subspace: the pivot
    /// coordinates are cleared.
    pub fn reduce(&self, f: &F, v: &[F::Elem]) -> Vec<F::Elem> {
        let mut out = v.to_vec();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            if f.is_zero(&out[pc]) {
                continue;
            }
            let c = out[pc].clone();
            for j in 0..self.ambient {
                if !f.is_zero(&row[j]) {
                    out[j] = f.sub(&out[j], &f.mul(&c, &row[j]));
                }
            }
        }
        out
    }

    pub fn contains(&self, f: &F, v: &[F::Elem]) -> bool {
        is_zero_vec(f, &self.reduce(f, v))
    }

    pub fn contains_subspace(&self, f: &F, other: &Self) -> bool {
        other.basis.iter().all(|v| self.contains(f, v))
    }

    /// Coordinates not used as pivots; the unit vectors on these indices
    /// form a complement.
    pub fn free_coords(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect()
    }

    pub fn sum(&self, f: &F, other: &Self) -> Self {
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Self::new(f, self.ambient, v)
    }

    pub fn intersection(&self, f: &F, other: &Self) -> Self {
        // Solve Σ a_i u_i = Σ b_j w_j.
        let n = self.dim() + other.dim();
        if n == 0 {
            return Self::zero(self.ambient);
        }
        let m = Matrix::<F>::from_fn(self.ambient, n, |i, j| {
            if j < self.dim() {
                self.basis[j][i].clone()
            } else {
                other.basis[j - self.dim()][i].clone()
            }
        });
        let vecs = nullspace(f, &m)
            .into_iter()
            .map(|c| {
                let mut v = vec![f.zero(); self.ambient];
                for (j, a) in c.iter().take(self.dim()).enumerate() {
                    v = vec_add(f, &v, &vec_scale(f, a, &self.basis[j]));
                }
                v
            })
            .collect();
        Self::new(f, self.ambient, vecs)
    }

    /// Basis of the linear functionals vanishing on the subspace, as rows.
    pub fn annihilator(&self, f: &F) -> Vec<Vec<F::Elem>> {
        if self.basis.is_empty() {
            return (0..self.ambient).map(|i| unit_vec(f, self.ambient, i)).collect();
        }
        nullspace(f, &Matrix::from_rows(self.basis.clone()))
    }

    pub fn format(&self, f: &F) -> Vec<Vec<String>> {
        self.basis.iter().map(|r| r.iter().map(|a| f.format(a)).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FiniteField, Rationals};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn inverse_and_det() {
        let q = Rationals;
        let m = Matrix::from_ints(&q, &[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = m.inverse(&q).unwrap();
        assert!(m.mul(&q, &inv).is_identity(&q));
        assert_eq!(m.det(&q), q.from_int(18));
        let s = Matrix::from_ints(&q, &[&[1, 2], &[2, 4]]);
        assert!(s.inverse(&q).is_none());
    }

    #[test]
    fn det_is_multiplicative_over_gf5() {
        let f = FiniteField::prime(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let a = Matrix::<FiniteField>::from_fn(4, 4, |_, _| f.random(&mut rng));
            let b = Matrix::<FiniteField>::from_fn(4, 4, |_, _| f.random(&mut rng));
            assert_eq!(a.mul(&f, &b).det(&f), f.mul(&a.det(&f), &b.det(&f)));
        }
    }

    #[test]
    fn subspace_canonical_form() {
        let q = Rationals;
        let a = Subspace::new(&q, 3, vec![vec![q.from_int(1), q.from_int(1), q.from_int(0)], vec![q.from_int(0), q.from_int(1), q.from_int(1)]]);
        let b = Subspace::new(&q, 3, vec![vec![q.from_int(1), q.from_int(2), q.from_int(1)], vec![q.from_int(1), q.from_int(0), q.from_int(-1)]]);
        assert_eq!(a, b);
        let c = Subspace::new(&q, 3, vec![vec![q.from_int(0), q.from_int(0), q.from_int(1)]]);
        assert_eq!(a.intersection(&q, &c).dim(), 0);
        assert_eq!(a.sum(&q, &c).dim(), 3);
        for w in a.annihilator(&q) {
            for v in &a.basis {
                assert!(q.is_zero(&dot(&q, &w, v)));
            }
        }
    }

    #[test]
    fn solve_and_nullspace() {
        let f = FiniteField::prime(3).unwrap();
        let m = Matrix::from_ints(&f, &[&[1, 1, 0, 2], &[0, 1, 1, 1]]);
        let ns = nullspace(&f, &m);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(is_zero_vec(&f, &m.mul_vec(&f, v)));
        }
        let b = vec![f.from_int(1), f.from_int(2)];
        let x = solve(&f, &m, &b).unwrap();
        assert_eq!(m.mul_vec(&f, &x), b);
    }
}
