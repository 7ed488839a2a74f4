//! Generators and membership tests for the stabilizers Σ of the kernel
//! representatives. A subspace and its orthogonal space have the same
//! stabilizer, so `PerpOf` labels reuse the group of the inner label.

use super::HeisError;
use crate::classify::{representative, OrbitLabel};
use crate::exterior::compound;
use crate::field::{Field, LElem, QuadExtension};
use crate::linalg::{Matrix, Subspace};
use crate::quaternion::{QuatAlgebra, Quaternion};

#[derive(Clone, Debug)]
pub struct GeneratorSet<F: Field> {
    pub matrices: Vec<Matrix<F>>,
    /// Short name of the matrix group, shared with the membership test.
    pub name: &'static str,
}

fn stabilizes<F: Field>(f: &F, m: &Matrix<F>, u: &Subspace<F>) -> bool {
    let c = compound(f, m);
    u.basis.iter().all(|x| u.contains(f, &c.mul_vec(f, x)))
}

/// Name of the stabilizer family of a label.
pub fn stabilizer_name<E: Clone>(label: &OrbitLabel<E>) -> &'static str {
    use OrbitLabel::*;
    match label {
        PointOnQ => "block-triangular",
        PointOffQ => "symplectic-similitudes",
        LineE => "point-plane-flag",
        LineT => "twisted-block-triangular",
        LineS => "block-diagonal-or-swap",
        LineP1 { .. } => "gl2-over-extension",
        PlaneF => "point",
        PlaneJF => "plane",
        PlaneET => "unimodular-flag",
        PlaneES => "two-flags",
        PlaneTS => "tensor-product",
        PlaneP2 { .. } => "quaternion-units",
        PlaneP3 { .. } => "extension-parabolic",
        PerpOf(inner) => stabilizer_name(inner),
    }
}

/// Generators of Σ for the representative kernel of `label`. Every matrix is
/// checked to stabilize that kernel.
pub fn sigma_generators<F: Field>(f: &F, label: &OrbitLabel<F::Elem>) -> Result<GeneratorSet<F>, HeisError> {
    if label.is_degenerate() {
        return Err(HeisError::NotReduced(label.tag(f)));
    }
    let matrices = raw_generators(f, label);
    let kernel = representative(f, label);
    if let Some(i) = matrices.iter().position(|m| !m.is_invertible(f) || !stabilizes(f, m, &kernel)) {
        return Err(HeisError::BadGenerator(i));
    }
    Ok(GeneratorSet { matrices, name: stabilizer_name(label) })
}

fn raw_generators<F: Field>(f: &F, label: &OrbitLabel<F::Elem>) -> Vec<Matrix<F>> {
    use OrbitLabel::*;
    let units = unit_params(f);
    match label {
        PerpOf(inner) => raw_generators(f, inner),
        PointOnQ => {
            let mut g = embed_all(f, &gl_gens(f, 2), 0);
            g.extend(embed_all(f, &gl_gens(f, 2), 2));
            g.extend(transvections(f, &[(0, 2), (0, 3), (1, 2), (1, 3)]));
            g
        }
        PointOffQ => {
            let p = swap12(f);
            symplectic_similitudes(f).iter().map(|g| p.mul(f, g).mul(f, &p)).collect()
        }
        LineE => {
            let mut g = torus(f, &[0, 1, 2, 3]);
            g.extend(embed_all(f, &gl_gens(f, 2), 1));
            g.extend(transvections(f, &[(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)]));
            g
        }
        LineT => {
            let sigma = Matrix::diag(f, &[f.one(), f.neg(&f.one())]);
            let mut g: Vec<Matrix<F>> = gl_gens(f, 2)
                .iter()
                .map(|a| {
                    let z = Matrix::zeros(f, 2, 2);
                    Matrix::blocks(f, a, &z, &z, &sigma.mul(f, a).mul(f, &sigma))
                })
                .collect();
            g.extend(units.iter().filter(|c| !f.is_one(c)).map(|c| {
                Matrix::diag(f, &[f.one(), f.one(), c.clone(), c.clone()])
            }));
            g.extend(transvections(f, &[(0, 2), (0, 3), (1, 2), (1, 3)]));
            g
        }
        LineS => {
            let mut g = embed_all(f, &gl_gens(f, 2), 0);
            g.extend(embed_all(f, &gl_gens(f, 2), 2));
            g.push(permutation(f, [2, 3, 0, 1]));
            g
        }
        LineP1 { t, d } => {
            let ext = QuadExtension::new_unchecked(f.clone(), t.clone(), d.clone());
            let (one, zero) = (ext.one(), ext.zero());
            let mut g = Vec::new();
            for l in ext_units(&ext) {
                g.push(l_block(&ext, [[&one, &l], [&zero, &one]]));
                g.push(l_block(&ext, [[&one, &zero], [&l, &one]]));
                g.push(l_block(&ext, [[&l, &zero], [&zero, &one]]));
            }
            g.push(big_xi(&ext));
            g
        }
        PlaneF => Vec::new(),
        PlaneJF => {
            let mut g = torus(f, &[0]);
            g.extend(embed_all(f, &gl_gens(f, 3), 1));
            g.extend(transvections(f, &[(1, 0), (2, 0), (3, 0)]));
            g
        }
        PlaneET => {
            let mut g: Vec<Matrix<F>> = units
                .iter()
                .filter(|a| !f.is_one(a))
                .map(|a| Matrix::diag(f, &[a.clone(), f.one(), f.one(), f.inv(a).unwrap()]))
                .collect();
            for dm in gl_gens(f, 2) {
                let mut m = embed(f, &dm, 1);
                m.set(3, 3, dm.det(f));
                g.push(m);
            }
            g.extend(transvections(f, &[(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)]));
            g
        }
        PlaneES => {
            let mut g = torus(f, &[0, 1, 2, 3]);
            g.extend(transvections(f, &[(0, 1), (0, 3), (2, 1), (2, 3)]));
            g.push(permutation(f, [2, 3, 0, 1]));
            g
        }
        PlaneTS => {
            let (g, gi) = ts_conjugator(f);
            let e = Matrix::identity(f, 2);
            gl_gens(f, 2)
                .iter()
                .flat_map(|p| [p.kron(f, &e), e.kron(f, p)])
                .map(|k| gi.mul(f, &k).mul(f, &g))
                .collect()
        }
        PlaneP2 { c, d, t } => {
            let Ok(h) = QuatAlgebra::with_t(f.clone(), t.clone(), d.clone(), c.clone()) else {
                return Vec::new();
            };
            let mut g = Vec::new();
            for a in quat_units(&h) {
                g.push(left_matrix(&h, &a));
                g.push(right_matrix(&h, &a));
            }
            g
        }
        PlaneP3 { t, d } => {
            let ext = QuadExtension::new_unchecked(f.clone(), t.clone(), d.clone());
            let mut g = Vec::new();
            for l in ext_units(&ext) {
                let m = ext.to_matrix(&l);
                g.push(embed(f, &m, 0));
                g.push(embed(f, &m, 2));
            }
            g.extend(transvections(f, &[(0, 2), (0, 3), (1, 2), (1, 3)]));
            g.push(big_xi(&ext));
            g
        }
    }
}

/// Closed-form test for M ∈ Σ, read off from the shape of the group.
pub fn membership_predicate<F: Field>(f: &F, label: &OrbitLabel<F::Elem>, m: &Matrix<F>) -> bool {
    m.rows == 4 && m.cols == 4 && m.is_invertible(f) && shape_test(f, label, m)
}

/// [`membership_predicate`] for a matrix already known to be invertible.
pub fn shape_test<F: Field>(f: &F, label: &OrbitLabel<F::Elem>, m: &Matrix<F>) -> bool {
    use OrbitLabel::*;
    let z = |i: usize, j: usize| f.is_zero(m.get(i, j));
    let zeros = |cells: &[(usize, usize)]| cells.iter().all(|&(i, j)| z(i, j));
    const LOWER_LEFT: [(usize, usize); 4] = [(2, 0), (2, 1), (3, 0), (3, 1)];
    const UPPER_RIGHT: [(usize, usize); 4] = [(0, 2), (0, 3), (1, 2), (1, 3)];
    const FLAG: [(usize, usize); 5] = [(1, 0), (2, 0), (3, 0), (3, 1), (3, 2)];
    match label {
        PerpOf(inner) => shape_test(f, inner, m),
        PointOnQ => zeros(&LOWER_LEFT),
        PointOffQ => {
            let p = swap12(f);
            is_similitude(f, &p.mul(f, m).mul(f, &p))
        }
        LineE => zeros(&FLAG),
        LineT => {
            if !zeros(&LOWER_LEFT) {
                return false;
            }
            let a = m.block(0, 0, 2, 2);
            let sigma = Matrix::diag(f, &[f.one(), f.neg(&f.one())]);
            scalar_multiple(f, &m.block(2, 2, 2, 2), &sigma.mul(f, &a).mul(f, &sigma)).is_some()
        }
        LineS => zeros(&LOWER_LEFT) && zeros(&UPPER_RIGHT) || zeros(&[(0, 0), (0, 1), (1, 0), (1, 1), (2, 2), (2, 3), (3, 2), (3, 3)]),
        LineP1 { t, d } => {
            let ext = QuadExtension::new_unchecked(f.clone(), t.clone(), d.clone());
            let in_l = |x: &Matrix<F>| {
                (0..2).all(|i| (0..2).all(|j| ext.from_matrix(&x.block(2 * i, 2 * j, 2, 2)).is_some()))
            };
            in_l(m) || in_l(&m.mul(f, &big_xi(&ext)))
        }
        PlaneF => zeros(&[(1, 0), (2, 0), (3, 0)]),
        PlaneJF => zeros(&[(0, 1), (0, 2), (0, 3)]),
        PlaneET => zeros(&FLAG) && f.mul(m.get(0, 0), m.get(3, 3)) == m.block(1, 1, 2, 2).det(f),
        PlaneES => {
            zeros(&[(0, 2), (1, 0), (1, 2), (1, 3), (2, 0), (3, 0), (3, 1), (3, 2)])
                || zeros(&[(0, 0), (1, 0), (1, 1), (1, 2), (2, 2), (3, 0), (3, 2), (3, 3)])
        }
        PlaneTS => {
            let (g, gi) = ts_conjugator(f);
            is_kronecker(f, &g.mul(f, m).mul(f, &gi))
        }
        PlaneP2 { c, d, t } => match QuatAlgebra::with_t(f.clone(), t.clone(), d.clone(), c.clone()) {
            Ok(h) => is_two_sided_multiplication(&h, m),
            Err(_) => false,
        },
        PlaneP3 { t, d } => {
            let ext = QuadExtension::new_unchecked(f.clone(), t.clone(), d.clone());
            let parabolic = |x: &Matrix<F>| {
                LOWER_LEFT.iter().all(|&(i, j)| f.is_zero(x.get(i, j)))
                    && ext.from_matrix(&x.block(0, 0, 2, 2)).is_some()
                    && ext.from_matrix(&x.block(2, 2, 2, 2)).is_some()
            };
            parabolic(m) || parabolic(&m.mul(f, &big_xi(&ext)))
        }
    }
}

fn unit_params<F: Field>(f: &F) -> Vec<F::Elem> {
    let mut out: Vec<F::Elem> = Vec::new();
    let mut extra = vec![f.one(), f.neg(&f.one())];
    extra.extend(f.nonsquare());
    for x in f.params().into_iter().chain(extra) {
        if !f.is_zero(&x) && !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

fn elementary<F: Field>(f: &F, n: usize, i: usize, j: usize, l: &F::Elem) -> Matrix<F> {
    let mut m = Matrix::identity(f, n);
    m.set(i, j, l.clone());
    m
}

/// Transvections and one diagonal family; they generate GL_n over the
/// parameter set.
fn gl_gens<F: Field>(f: &F, n: usize) -> Vec<Matrix<F>> {
    let units = unit_params(f);
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.extend(units.iter().map(|l| elementary(f, n, i, j, l)));
            }
        }
    }
    out.extend(units.iter().filter(|l| !f.is_one(l)).map(|l| elementary(f, n, 0, 0, l)));
    out
}

fn transvections<F: Field>(f: &F, cells: &[(usize, usize)]) -> Vec<Matrix<F>> {
    let units = unit_params(f);
    cells.iter().flat_map(|&(i, j)| units.iter().map(move |l| elementary(f, 4, i, j, l))).collect()
}

fn torus<F: Field>(f: &F, positions: &[usize]) -> Vec<Matrix<F>> {
    let units = unit_params(f);
    positions
        .iter()
        .flat_map(|&i| units.iter().filter(|l| !f.is_one(l)).map(move |l| elementary(f, 4, i, i, l)))
        .collect()
}

fn embed<F: Field>(f: &F, block: &Matrix<F>, at: usize) -> Matrix<F> {
    let mut m = Matrix::identity(f, 4);
    m.set_block(at, at, block);
    m
}

fn embed_all<F: Field>(f: &F, blocks: &[Matrix<F>], at: usize) -> Vec<Matrix<F>> {
    blocks.iter().map(|b| embed(f, b, at)).collect()
}

/// The matrix sending b_i to b_{images[i]}.
fn permutation<F: Field>(f: &F, images: [usize; 4]) -> Matrix<F> {
    let mut m = Matrix::zeros(f, 4, 4);
    for (i, &j) in images.iter().enumerate() {
        m.set(j, i, f.one());
    }
    m
}

/// Exchanges b1 and b2, carrying ⟨s02 + s13⟩ to ⟨s01 + s23⟩.
fn swap12<F: Field>(f: &F) -> Matrix<F> {
    permutation(f, [0, 2, 1, 3])
}

/// Generators of the similitude group of s02 + s13: diag(A, (A⁻¹)′),
/// diag(aE, E) and the unipotent [[E, 0], [X, E]] and its transpose with X
/// symmetric.
fn symplectic_similitudes<F: Field>(f: &F) -> Vec<Matrix<F>> {
    let mut out = Vec::new();
    let e = Matrix::identity(f, 2);
    let z = Matrix::zeros(f, 2, 2);
    for a in gl_gens(f, 2) {
        let ai = a.inverse(f).unwrap().transpose();
        out.push(Matrix::blocks(f, &a, &z, &z, &ai));
    }
    for a in unit_params(f).iter().filter(|a| !f.is_one(a)) {
        out.push(Matrix::diag(f, &[a.clone(), a.clone(), f.one(), f.one()]));
    }
    for l in unit_params(f) {
        let xs = [
            Matrix::diag(f, &[l.clone(), f.zero()]),
            Matrix::diag(f, &[f.zero(), l.clone()]),
            Matrix::from_rows(vec![vec![f.zero(), l.clone()], vec![l.clone(), f.zero()]]),
        ];
        for x in xs {
            out.push(Matrix::blocks(f, &e, &z, &x, &e));
            out.push(Matrix::blocks(f, &e, &x, &z, &e));
        }
    }
    out
}

/// AB′ = BA′, CD′ = DC′ and AD′ − BC′ a nonzero scalar matrix.
fn is_similitude<F: Field>(f: &F, m: &Matrix<F>) -> bool {
    let (a, b) = (m.block(0, 0, 2, 2), m.block(0, 2, 2, 2));
    let (c, d) = (m.block(2, 0, 2, 2), m.block(2, 2, 2, 2));
    let sym = |x: &Matrix<F>, y: &Matrix<F>| x.mul(f, &y.transpose()) == y.mul(f, &x.transpose());
    if !sym(&a, &b) || !sym(&c, &d) {
        return false;
    }
    let s = a.mul(f, &d.transpose()).sub(f, &b.mul(f, &c.transpose()));
    f.is_zero(s.get(0, 1)) && f.is_zero(s.get(1, 0)) && s.get(0, 0) == s.get(1, 1) && !f.is_zero(s.get(0, 0))
}

/// Some c ≠ 0 with x = c·y.
fn scalar_multiple<F: Field>(f: &F, x: &Matrix<F>, y: &Matrix<F>) -> Option<F::Elem> {
    let k = (0..y.data.len()).find(|&k| !f.is_zero(&y.data[k]))?;
    let c = f.div(&x.data[k], &y.data[k]);
    (!f.is_zero(&c) && *x == y.scale(f, &c)).then_some(c)
}

/// g with g.(T+S) = ⟨s02, s03 + s12, s13⟩, and its inverse.
fn ts_conjugator<F: Field>(f: &F) -> (Matrix<F>, Matrix<F>) {
    let g = Matrix::from_ints(f, &[&[1, 0, 0, 0], &[0, 0, -1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]]);
    let gi = g.inverse(f).unwrap();
    (g, gi)
}

/// Whether m = P ⊗ A for 2×2 matrices P, A.
fn is_kronecker<F: Field>(f: &F, m: &Matrix<F>) -> bool {
    let blocks: Vec<Matrix<F>> =
        (0..4).map(|k| m.block(2 * (k / 2), 2 * (k % 2), 2, 2)).collect();
    let Some(r) = blocks.iter().find(|b| !b.is_zero(f)) else {
        return false;
    };
    blocks.iter().all(|b| b.is_zero(f) || scalar_multiple(f, b, r).is_some())
}

fn ext_units<F: Field>(ext: &QuadExtension<F>) -> Vec<LElem<F::Elem>> {
    let f = &ext.base;
    let mut out: Vec<LElem<F::Elem>> = match ext.elements() {
        Some(all) => all,
        None => {
            let mut v = vec![ext.u(), ext.add(&ext.one(), &ext.u())];
            v.extend(unit_params(f).into_iter().map(|x| ext.from_base(x)));
            v
        }
    };
    out.retain(|x| !ext.is_zero(x) && !f.is_zero(&ext.norm(x)));
    out
}

fn l_block<F: Field>(ext: &QuadExtension<F>, e: [[&LElem<F::Elem>; 2]; 2]) -> Matrix<F> {
    let f = &ext.base;
    let b = |i: usize, j: usize| ext.to_matrix(e[i][j]);
    Matrix::blocks(f, &b(0, 0), &b(0, 1), &b(1, 0), &b(1, 1))
}

/// Ξ = diag(ξ, ξ): Galois conjugation on both coordinates of L².
fn big_xi<F: Field>(ext: &QuadExtension<F>) -> Matrix<F> {
    let f = &ext.base;
    let xi = ext.xi_matrix();
    let z = Matrix::zeros(f, 2, 2);
    Matrix::blocks(f, &xi, &z, &z, &xi)
}

fn quat_units<F: Field>(h: &QuatAlgebra<F>) -> Vec<Quaternion<F::Elem>> {
    let f = h.field();
    let mut out = Vec::new();
    for s in unit_params(f) {
        out.push(h.scalar(&s));
    }
    for i in 1..4 {
        out.push(h.basis(i));
        out.push(h.add(&h.one(), &h.basis(i)));
    }
    out.push(h.add(&h.basis(1), &h.basis(2)));
    out.retain(|x| h.is_unit(x));
    out
}

fn quat_matrix<F: Field>(h: &QuatAlgebra<F>, op: impl Fn(&Quaternion<F::Elem>) -> Quaternion<F::Elem>) -> Matrix<F> {
    let cols: Vec<Vec<F::Elem>> = (0..4).map(|k| op(&h.basis(k)).to_vec()).collect();
    Matrix::from_cols(&cols)
}

/// x ↦ a·x in the basis 1, u, I, Iu.
pub fn left_matrix<F: Field>(h: &QuatAlgebra<F>, a: &Quaternion<F::Elem>) -> Matrix<F> {
    quat_matrix(h, |x| h.mul(a, x))
}

/// x ↦ x·a.
pub fn right_matrix<F: Field>(h: &QuatAlgebra<F>, a: &Quaternion<F::Elem>) -> Matrix<F> {
    quat_matrix(h, |x| h.mul(x, a))
}

/// Whether m is x ↦ a·x·b: then x ↦ m(x)·m(1)⁻¹ is an algebra
/// automorphism, and conversely every automorphism is inner.
fn is_two_sided_multiplication<F: Field>(h: &QuatAlgebra<F>, m: &Matrix<F>) -> bool {
    let f = h.field();
    let apply = |x: &Quaternion<F::Elem>| -> Quaternion<F::Elem> {
        let v = m.mul_vec(f, x);
        std::array::from_fn(|i| v[i].clone())
    };
    let Some(inv) = h.inv(&apply(&h.one())) else {
        return false;
    };
    let phi = |x: &Quaternion<F::Elem>| h.mul(&apply(x), &inv);
    let images: Vec<Quaternion<F::Elem>> = (0..4).map(|i| phi(&h.basis(i))).collect();
    (0..4).all(|i| {
        (0..4).all(|j| phi(&h.mul(&h.basis(i), &h.basis(j))) == h.mul(&images[i], &images[j]))
    })
}
