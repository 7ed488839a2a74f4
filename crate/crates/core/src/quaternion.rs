//! Quaternion algebras ℍ^{−d,−c} = L ⊕ IL over an arbitrary field.
//!
//! The basis is h0 = 1, h1 = u, h2 = I, h3 = h2h1 = Iu where u² = −tu − d,
//! I² = −c and Ia = āI for a ∈ L = K(u). A quaternion A + IB (A, B ∈ L) has
//! coordinates (A.a, A.b, B.a, B.b). In characteristic 2 with t = 0 the same
//! formulas give the commutative ring K(√d, √c) with N(x) = x².

use num_traits::Signed;
use rand::Rng;

use crate::field::{Field, LElem, QuadExtension};
use crate::linalg::{nullspace, Matrix};

pub type Quaternion<E> = [E; 4];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuatError {
    #[error("quaternion parameters d and c must be nonzero")]
    ZeroParameter,
    #[error("t = {0} violates 2t = 0")]
    BadTrace(String),
    #[error("multiplication table is not associative")]
    NotAssociative,
    #[error("the algebra is split")]
    Split,
    #[error("the algebra is commutative")]
    Commutative,
    #[error("norms differ: {0}")]
    NormMismatch(&'static str),
    #[error("traces differ: {0}")]
    TraceMismatch(&'static str),
    #[error("polar values differ")]
    PolarMismatch,
    #[error("{0} is a scalar multiple of {1}")]
    Dependent(&'static str, &'static str),
    #[error("element is not a unit")]
    NotUnit,
    #[error("scalar must be nonzero")]
    ZeroScalar,
    #[error("no suitable element in the search box")]
    NotFound,
    #[error("constructed element is not invertible")]
    Degenerate,
}

/// Membership of a scalar in N(ℍ^×) and in N(ℍ^×)² = {N(x)² : x ∈ ℍ^×}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NormCoset {
    pub in_norms: Option<bool>,
    pub in_square_norms: Option<bool>,
}

/// Output of [`QuatAlgebra::z_action_solver`]: a v ã N(b) = x.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZAction<E> {
    pub z: Quaternion<E>,
    pub a: Quaternion<E>,
    pub b: Quaternion<E>,
}

#[derive(Clone, Debug)]
pub struct QuatAlgebra<F: Field> {
    pub ext: QuadExtension<F>,
    pub c: F::Elem,
    pub is_commutative: bool,
    division: Option<bool>,
    witness: Option<Quaternion<F::Elem>>,
}

impl<F: Field> QuatAlgebra<F> {
    /// ℍ^{−d,−c} with t = 0 in odd characteristic and t = 1 in characteristic 2.
    pub fn new(base: F, d: F::Elem, c: F::Elem) -> Result<Self, QuatError> {
        let t = if base.characteristic() == 2 { base.one() } else { base.zero() };
        Self::with_t(base, t, d, c)
    }

    pub fn with_t(base: F, t: F::Elem, d: F::Elem, c: F::Elem) -> Result<Self, QuatError> {
        if base.is_zero(&d) || base.is_zero(&c) {
            return Err(QuatError::ZeroParameter);
        }
        if !base.is_zero(&base.add(&t, &t)) {
            return Err(QuatError::BadTrace(base.format(&t)));
        }
        let ext = QuadExtension::new_unchecked(base, t, d);
        let is_commutative = !ext.separable;
        let mut h = QuatAlgebra { ext, c, is_commutative, division: None, witness: None };
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    let (x, y, z) = (h.basis(i), h.basis(j), h.basis(k));
                    if h.mul(&h.mul(&x, &y), &z) != h.mul(&x, &h.mul(&y, &z)) {
                        return Err(QuatError::NotAssociative);
                    }
                }
            }
        }
        let (division, witness) = h.decide_division();
        h.division = division;
        h.witness = witness;
        Ok(h)
    }

    pub fn field(&self) -> &F {
        &self.ext.base
    }

    pub fn d(&self) -> &F::Elem {
        &self.ext.d
    }

    pub fn t(&self) -> &F::Elem {
        &self.ext.t
    }

    pub fn zero(&self) -> Quaternion<F::Elem> {
        std::array::from_fn(|_| self.field().zero())
    }

    pub fn one(&self) -> Quaternion<F::Elem> {
        self.basis(0)
    }

    pub fn basis(&self, i: usize) -> Quaternion<F::Elem> {
        let f = self.field();
        std::array::from_fn(|j| if i == j { f.one() } else { f.zero() })
    }

    pub fn from_ints(&self, x: [i64; 4]) -> Quaternion<F::Elem> {
        x.map(|n| self.field().from_int(n))
    }

    pub fn scalar(&self, s: &F::Elem) -> Quaternion<F::Elem> {
        let f = self.field();
        [s.clone(), f.zero(), f.zero(), f.zero()]
    }

    pub fn from_halves(&self, a: &LElem<F::Elem>, b: &LElem<F::Elem>) -> Quaternion<F::Elem> {
        [a.a.clone(), a.b.clone(), b.a.clone(), b.b.clone()]
    }

    /// x = A + IB ↦ (A, B).
    pub fn halves(&self, x: &Quaternion<F::Elem>) -> (LElem<F::Elem>, LElem<F::Elem>) {
        (
            LElem { a: x[0].clone(), b: x[1].clone() },
            LElem { a: x[2].clone(), b: x[3].clone() },
        )
    }

    pub fn is_zero(&self, x: &Quaternion<F::Elem>) -> bool {
        x.iter().all(|e| self.field().is_zero(e))
    }

    pub fn add(&self, x: &Quaternion<F::Elem>, y: &Quaternion<F::Elem>) -> Quaternion<F::Elem> {
        std::array::from_fn(|i| self.field().add(&x[i], &y[i]))
    }

    pub fn sub(&self, x: &Quaternion<F::Elem>, y: &Quaternion<F::Elem>) -> Quaternion<F::Elem> {
        std::array::from_fn(|i| self.field().sub(&x[i], &y[i]))
    }

    pub fn neg(&self, x: &Quaternion<F::Elem>) -> Quaternion<F::Elem> {
        x.clone().map(|e| self.field().neg(&e))
    }

    pub fn scale(&self, s: &F::Elem, x: &Quaternion<F::Elem>) -> Quaternion<F::Elem> {
        x.clone().map(|e| self.field().mul(s, &e))
    }

    /// (A + IB)(C + ID) = (AC − cB̄D) + I(ĀD + BC).
    pub fn mul(&self, x: &Quaternion<F::Elem>, y: &Quaternion<F::Elem>) -> Quaternion<F::Elem> {
        let l = &self.ext;
        let (a, b) = self.halves(x);
        let (c, d) = self.halves(y);
        let first = l.sub(&l.mul(&a, &c), &l.scale(&self.c, &l.mul(&l.conj(&b), &d)));
        let second = l.add(&l.mul(&l.conj(&a), &d), &l.mul(&b, &c));
        self.from_halves(&first, &second)
    }

    /// The standard involution x̃ = Ā − IB.
    pub fn conj(&self, x: &Quaternion<F::Elem>) -> Quaternion<F::Elem> {
        let (a, b) = self.halves(x);
        self.from_halves(&self.ext.conj(&a), &self.ext.neg(&b))
    }

    /// N(A + IB) = N(A) + cN(B), so x̃x = N(x).
    pub fn norm(&self, x: &Quaternion<F::Elem>) -> F::Elem {
        let f = self.field();
        let (a, b) = self.halves(x);
        f.add(&self.ext.norm(&a), &f.mul(&self.c, &self.ext.norm(&b)))
    }

    /// tr(x) = x + x̃.
    pub fn trace(&self, x: &Quaternion<F::Elem>) -> F::Elem {
        let (a, _) = self.halves(x);
        self.ext.trace(&a)
    }

    /// f_N(x, y) = N(x + y) − N(x) − N(y).
    pub fn polar(&self, x: &Quaternion<F::Elem>, y: &Quaternion<F::Elem>) -> F::Elem {
        let f = self.field();
        f.sub(&f.sub(&self.norm(&self.add(x, y)), &self.norm(x)), &self.norm(y))
    }

    pub fn inv(&self, x: &Quaternion<F::Elem>) -> Option<Quaternion<F::Elem>> {
        let n = self.field().inv(&self.norm(x))?;
        Some(self.scale(&n, &self.conj(x)))
    }

    pub fn is_unit(&self, x: &Quaternion<F::Elem>) -> bool {
        !self.field().is_zero(&self.norm(x))
    }

    /// a x a⁻¹.
    pub fn conjugate_by(
        &self,
        a: &Quaternion<F::Elem>,
        x: &Quaternion<F::Elem>,
    ) -> Option<Quaternion<F::Elem>> {
        Some(self.mul(&self.mul(a, x), &self.inv(a)?))
    }

    /// Coordinates spanning Pu ℍ: the trace-zero part in odd characteristic,
    /// K ⊕ IL in characteristic 2.
    pub fn pure_indices(&self) -> [usize; 3] {
        if self.field().characteristic() == 2 {
            [0, 2, 3]
        } else {
            [1, 2, 3]
        }
    }

    pub fn is_pure(&self, x: &Quaternion<F::Elem>) -> bool {
        let skip = if self.field().characteristic() == 2 { 1 } else { 0 };
        self.field().is_zero(&x[skip])
    }

    /// Gram matrix of the polar form in the basis h0..h3.
    pub fn polar_gram(&self) -> Matrix<F> {
        Matrix::from_fn(4, 4, |i, j| self.polar(&self.basis(i), &self.basis(j)))
    }

    /// A nonzero element of {xs}^⊥ with respect to f_N, if one exists.
    pub fn perp_element(&self, xs: &[Quaternion<F::Elem>]) -> Option<Quaternion<F::Elem>> {
        let gram = self.polar_gram();
        let rows: Vec<Vec<F::Elem>> =
            xs.iter().map(|x| gram.transpose().mul_vec(self.field(), x)).collect();
        let m = Matrix::from_rows(rows);
        let v = nullspace(self.field(), &m).into_iter().next()?;
        Some(std::array::from_fn(|i| v[i].clone()))
    }

    fn dependent(&self, v: &Quaternion<F::Elem>, w: &Quaternion<F::Elem>) -> bool {
        Matrix::<F>::from_rows(vec![v.to_vec(), w.to_vec()]).rank(self.field()) < 2
    }

    /// `Some(true)` for a quaternion field, `Some(false)` when the norm form
    /// is isotropic, `None` when undecided.
    pub fn is_division(&self) -> Option<bool> {
        self.division
    }

    pub fn is_split(&self) -> Option<bool> {
        self.division.map(|d| !d)
    }

    /// A nonzero element of norm 0, when one is known.
    pub fn split_witness(&self) -> Option<&Quaternion<F::Elem>> {
        self.witness.as_ref()
    }

    fn decide_division(&self) -> (Option<bool>, Option<Quaternion<F::Elem>>) {
        let f = self.field();
        if let Some(ls) = self.ext.elements() {
            // N(A) = −c has a solution since finite norms are onto; A + I is isotropic.
            let target = f.neg(&self.c);
            let a = ls.iter().find(|a| self.ext.norm(a) == target).expect("norm is onto");
            return (Some(false), Some(self.from_halves(a, &self.ext.one())));
        }
        if self.is_commutative {
            return match self.commutative_witness() {
                Some(w) => (Some(false), Some(w)),
                None => (None, None),
            };
        }
        if let (Some(d), Some(c)) = (f.as_rational(self.d()), f.as_rational(&self.c)) {
            let split = crate::field::rational::hilbert_trivial(&-d, &-c);
            let witness = if split == Some(true) { self.search_isotropic(6) } else { None };
            return (split.map(|s| !s), witness);
        }
        match self.search_isotropic(2) {
            Some(w) => (Some(false), Some(w)),
            None => (None, None),
        }
    }

    /// Characteristic 2, t = 0: a norm-zero element A + I with N(A) = c.
    fn commutative_witness(&self) -> Option<Quaternion<F::Elem>> {
        let f = self.field();
        let d = self.d();
        if let Some(s) = f.sqrt(d) {
            return Some([s, f.one(), f.zero(), f.zero()]);
        }
        let dc = f.square_coords(d)?;
        let cc = f.square_coords(&self.c)?;
        if dc.len() != 2 || cc.len() != 2 {
            return None;
        }
        // d = d0² + τd1² and c = c0² + τc1² give c = (c0 + c1d0/d1)² + d(c1/d1)².
        let beta = f.div(&cc[1], &dc[1]);
        let alpha = f.add(&cc[0], &f.mul(&beta, &dc[0]));
        Some([alpha, beta, f.one(), f.zero()])
    }

    fn search_isotropic(&self, bound: i64) -> Option<Quaternion<F::Elem>> {
        let vals = search_scalars(self.field(), bound);
        search_box(&vals, |x| {
            (!self.is_zero(x) && self.field().is_zero(&self.norm(x))).then(|| x.clone())
        })
    }

    fn require_noncommutative_division(&self) -> Result<(), QuatError> {
        if self.is_commutative {
            return Err(QuatError::Commutative);
        }
        if self.division == Some(false) {
            return Err(QuatError::Split);
        }
        Ok(())
    }

    /// Some a with a v a⁻¹ = x. Needs N(v) = N(x) and tr(v) = tr(x); refuses
    /// split algebras, where the construction can produce zero divisors.
    pub fn conjugate_solver(
        &self,
        v: &Quaternion<F::Elem>,
        x: &Quaternion<F::Elem>,
    ) -> Result<Quaternion<F::Elem>, QuatError> {
        if v == x {
            return Ok(self.one());
        }
        self.require_noncommutative_division()?;
        if self.trace(v) != self.trace(x) {
            return Err(QuatError::TraceMismatch("tr(v) ≠ tr(x)"));
        }
        if self.norm(v) != self.norm(x) {
            return Err(QuatError::NormMismatch("N(v) ≠ N(x)"));
        }
        let vt = self.conj(v);
        let a = if *x != vt {
            self.sub(x, &vt)
        } else {
            self.perp_element(&[self.one(), v.clone()]).ok_or(QuatError::Degenerate)?
        };
        match self.conjugate_by(&a, v) {
            Some(image) if image == *x => Ok(a),
            _ => Err(QuatError::Degenerate),
        }
    }

    /// Some a with a v a⁻¹ = x and a w a⁻¹ = y.
    pub fn pair_conjugate_solver(
        &self,
        v: &Quaternion<F::Elem>,
        w: &Quaternion<F::Elem>,
        x: &Quaternion<F::Elem>,
        y: &Quaternion<F::Elem>,
    ) -> Result<Quaternion<F::Elem>, QuatError> {
        self.require_noncommutative_division()?;
        if self.dependent(v, w) {
            return Err(QuatError::Dependent("w", "v"));
        }
        if self.dependent(x, y) {
            return Err(QuatError::Dependent("y", "x"));
        }
        if self.norm(v) != self.norm(x) {
            return Err(QuatError::NormMismatch("N(v) ≠ N(x)"));
        }
        if self.norm(w) != self.norm(y) {
            return Err(QuatError::NormMismatch("N(w) ≠ N(y)"));
        }
        if self.trace(v) != self.trace(x) {
            return Err(QuatError::TraceMismatch("tr(v) ≠ tr(x)"));
        }
        if self.trace(w) != self.trace(y) {
            return Err(QuatError::TraceMismatch("tr(w) ≠ tr(y)"));
        }
        if self.polar(v, w) != self.polar(x, y) {
            return Err(QuatError::PolarMismatch);
        }
        let first = self.conjugate_solver(v, x)?;
        let w1 = self.conjugate_by(&first, w).ok_or(QuatError::Degenerate)?;
        let a = if w1 == *y {
            first
        } else {
            // c = y − w1 sends (x, w1) to (x̃, ỹ); b ⊥ {1, x, y} sends those back to (x, y).
            let c = self.sub(y, &w1);
            let b = self
                .perp_element(&[self.one(), x.clone(), y.clone()])
                .ok_or(QuatError::Degenerate)?;
            self.mul(&self.mul(&b, &c), &first)
        };
        let ok = self.conjugate_by(&a, v).as_ref() == Some(x)
            && self.conjugate_by(&a, w).as_ref() == Some(y);
        if ok {
            Ok(a)
        } else {
            Err(QuatError::Degenerate)
        }
    }

    /// Units a, b with a v ã N(b) = x, found by searching z with
    /// N(x) = N(v)N(z)² and tr(x) = tr(v)N(z) in a coordinate box.
    pub fn z_action_solver(
        &self,
        v: &Quaternion<F::Elem>,
        x: &Quaternion<F::Elem>,
        bound: i64,
    ) -> Result<ZAction<F::Elem>, QuatError> {
        self.require_noncommutative_division()?;
        let f = self.field();
        let (nv, nx, tv, tx) = (self.norm(v), self.norm(x), self.trace(v), self.trace(x));
        let admissible = |z: &Quaternion<F::Elem>| {
            let nz = self.norm(z);
            !f.is_zero(&nz) && f.mul(&nv, &f.square(&nz)) == nx && f.mul(&tv, &nz) == tx
        };
        let one = self.one();
        let z = if admissible(&one) {
            one
        } else {
            let vals = search_scalars(f, bound);
            search_box(&vals, |z| admissible(z).then(|| z.clone())).ok_or(QuatError::NotFound)?
        };
        let nz = self.norm(&z);
        let a = self.conjugate_solver(&self.scale(&nz, v), x)?;
        let b = self.mul(&z, &self.inv(&a).ok_or(QuatError::Degenerate)?);
        let image = self.scale(&self.norm(&b), &self.mul(&self.mul(&a, v), &self.conj(&a)));
        if image != *x {
            return Err(QuatError::Degenerate);
        }
        Ok(ZAction { z, a, b })
    }

    /// Matrix of x ↦ a x on K⁴ = ℍ.
    pub fn left_matrix(&self, a: &Quaternion<F::Elem>) -> Matrix<F> {
        let cols: Vec<Vec<F::Elem>> = (0..4).map(|j| self.mul(a, &self.basis(j)).to_vec()).collect();
        Matrix::from_cols(&cols)
    }

    /// Matrix of x ↦ x a on K⁴ = ℍ.
    pub fn right_matrix(&self, a: &Quaternion<F::Elem>) -> Matrix<F> {
        let cols: Vec<Vec<F::Elem>> = (0..4).map(|j| self.mul(&self.basis(j), a).to_vec()).collect();
        Matrix::from_cols(&cols)
    }

    /// Matrix of x ↦ a x a⁻¹.
    pub fn inner_auto(&self, a: &Quaternion<F::Elem>) -> Result<Matrix<F>, QuatError> {
        let inv = self.inv(a).ok_or(QuatError::NotUnit)?;
        Ok(self.left_matrix(a).mul(self.field(), &self.right_matrix(&inv)))
    }

    /// Restriction of a 4×4 map to Pu ℍ; `None` if Pu ℍ is not invariant.
    pub fn pure_part_matrix(&self, m: &Matrix<F>) -> Option<Matrix<F>> {
        let f = self.field();
        let idx = self.pure_indices();
        let other = (0..4).find(|i| !idx.contains(i)).expect("one index left");
        if idx.iter().any(|&j| !f.is_zero(m.get(other, j))) {
            return None;
        }
        Some(Matrix::from_fn(3, 3, |i, j| m.get(idx[i], idx[j]).clone()))
    }

    /// Whether `m` preserves N (checked on the basis and through the polar
    /// Gram matrix).
    pub fn preserves_norm(&self, m: &Matrix<F>) -> bool {
        let f = self.field();
        let gram = self.polar_gram();
        if m.transpose().mul(f, &gram).mul(f, m) != gram {
            return false;
        }
        (0..4).all(|j| {
            let col: Quaternion<F::Elem> = std::array::from_fn(|i| m.get(i, j).clone());
            self.norm(&col) == self.norm(&self.basis(j))
        })
    }

    /// Inner automorphism by `a` preserves N and acts on Pu ℍ with
    /// determinant 1.
    pub fn so_check(&self, a: &Quaternion<F::Elem>) -> Result<bool, QuatError> {
        let m = self.inner_auto(a)?;
        let Some(pure) = self.pure_part_matrix(&m) else {
            return Ok(false);
        };
        Ok(self.preserves_norm(&m) && self.field().is_one(&pure.det(self.field())))
    }

    /// Whether x ∈ N(ℍ^×); `None` when undecided.
    pub fn is_norm(&self, x: &F::Elem) -> Option<bool> {
        let f = self.field();
        if f.is_zero(x) {
            return Some(false);
        }
        if f.is_finite() {
            return Some(true);
        }
        if self.is_commutative {
            // N(ℍ) = K² + dK² + cK² + cdK².
            if f.is_square(self.d()) && f.is_square(&self.c) {
                return Some(f.is_square(x));
            }
            return (f.square_coords(x)?.len() == 2).then_some(true);
        }
        if self.division == Some(false) {
            // An isotropic nondegenerate form is universal.
            return Some(true);
        }
        if let (Some(q), Some(d), Some(c)) =
            (f.as_rational(x), f.as_rational(self.d()), f.as_rational(&self.c))
        {
            // ⟨1, d, c, cd, −x⟩ is isotropic at every prime, so only the real
            // place matters.
            let definite = d.is_positive() && c.is_positive();
            return Some(q.is_positive() || !definite);
        }
        None
    }

    /// Membership of x in N(ℍ^×) and in N(ℍ^×)².
    pub fn norm_group_coset(&self, x: &F::Elem) -> Result<NormCoset, QuatError> {
        let f = self.field();
        if f.is_zero(x) {
            return Err(QuatError::ZeroScalar);
        }
        let in_norms = self.is_norm(x);
        let in_square_norms = match f.sqrt(x) {
            None => Some(false),
            Some(s) => match (self.is_norm(&s), self.is_norm(&f.neg(&s))) {
                (Some(true), _) | (_, Some(true)) => Some(true),
                (Some(false), Some(false)) => Some(false),
                _ => None,
            },
        };
        Ok(NormCoset { in_norms, in_square_norms })
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Quaternion<F::Elem> {
        std::array::from_fn(|_| self.field().random(rng))
    }

    pub fn format(&self, x: &Quaternion<F::Elem>) -> String {
        let f = self.field();
        let mut terms = Vec::new();
        for (i, e) in x.iter().enumerate() {
            if f.is_zero(e) {
                continue;
            }
            let s = f.format(e);
            let simple = !s[1..].contains(['+', '-', '/', '*', ' ']);
            terms.push(match (i, simple) {
                (0, _) => s,
                (_, _) if f.is_one(e) => format!("h{i}"),
                (_, true) => format!("{s}h{i}"),
                (_, false) => format!("({s})h{i}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    pub fn label(&self) -> String {
        let f = self.field();
        format!("H[{}; d={}, c={}, t={}]", f.name(), f.format(self.d()), f.format(&self.c), f.format(self.t()))
    }
}

/// Scalars used for bounded searches: all of a small finite field, else
/// 0, ±1, …, ±bound together with the field's variable.
fn search_scalars<F: Field>(f: &F, bound: i64) -> Vec<F::Elem> {
    if let Some(all) = f.elements() {
        if all.len() <= 16 {
            return all;
        }
    }
    let mut out = vec![f.zero()];
    let mut push = |x: F::Elem| {
        if !out.contains(&x) {
            out.push(x);
        }
    };
    for k in 1..=bound {
        push(f.from_int(k));
        push(f.from_int(-k));
    }
    if let Some((_, x)) = f.variable() {
        push(x.clone());
        push(f.add(&x, &f.one()));
        push(f.square(&x));
    }
    out
}

/// First hit of `test` over 4-tuples of `vals`, ordered by the largest
/// index used and then lexicographically.
fn search_box<E: Clone, R>(vals: &[E], mut test: impl FnMut(&[E; 4]) -> Option<R>) -> Option<R> {
    for h in 0..vals.len() {
        for i0 in 0..=h {
            for i1 in 0..=h {
                for i2 in 0..=h {
                    for i3 in 0..=h {
                        if i0.max(i1).max(i2).max(i3) != h {
                            continue;
                        }
                        let x = [vals[i0].clone(), vals[i1].clone(), vals[i2].clone(), vals[i3].clone()];
                        if let Some(r) = test(&x) {
                            return Some(r);
                        }
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FiniteField, FunctionField, Rationals};
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn hamilton() -> QuatAlgebra<Rationals> {
        QuatAlgebra::new(Rationals, Rationals.from_int(1), Rationals.from_int(1)).unwrap()
    }

    fn split_q() -> QuatAlgebra<Rationals> {
        QuatAlgebra::new(Rationals, Rationals.from_int(-1), Rationals.from_int(-1)).unwrap()
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn ring_laws<F: Field>(h: &QuatAlgebra<F>, xs: &[Quaternion<F::Elem>]) {
        let f = h.field();
        for x in xs {
            assert_eq!(h.mul(&h.conj(x), x), h.scalar(&h.norm(x)));
            assert_eq!(h.add(x, &h.conj(x)), h.scalar(&h.trace(x)));
            for y in xs {
                assert_eq!(h.norm(&h.mul(x, y)), f.mul(&h.norm(x), &h.norm(y)));
                // The trace describes the polar form.
                assert_eq!(h.polar(x, y), h.trace(&h.mul(&h.conj(y), x)));
            }
        }
    }

    #[test]
    fn multiplication_table() {
        let h = hamilton();
        let (h1, h2, h3) = (h.basis(1), h.basis(2), h.basis(3));
        assert_eq!(h.mul(&h1, &h1), h.from_ints([-1, 0, 0, 0]));
        assert_eq!(h.mul(&h2, &h2), h.from_ints([-1, 0, 0, 0]));
        assert_eq!(h.mul(&h2, &h1), h3);
        assert_eq!(h.mul(&h1, &h2), h.neg(&h3));
        assert_eq!(h.norm(&h.from_ints([1, 1, 0, 0])), q(2));
        assert_eq!(h.norm(&h.one()), q(1));
        assert_eq!(h.trace(&h.one()), q(2));
        let s = split_q();
        let x = s.from_ints([0, 1, 1, 0]);
        assert_eq!(s.norm(&x), q(-2));
        assert_eq!(s.mul(&s.conj(&x), &x), s.scalar(&q(-2)));
    }

    #[test]
    fn char_two_table() {
        let f = FiniteField::new(2, 2, None).unwrap();
        let w = f.parse("x").unwrap();
        let h = QuatAlgebra::new(f.clone(), w.clone(), f.one()).unwrap();
        let (h1, h2, h3) = (h.basis(1), h.basis(2), h.basis(3));
        // h1² = −h1 − d and h1h2 = th2 − h3 with t = 1.
        assert_eq!(h.mul(&h1, &h1), [w.clone(), f.one(), f.zero(), f.zero()]);
        assert_eq!(h.mul(&h1, &h2), h.sub(&h2, &h3));
        assert!(h.is_pure(&h.one()));
        assert!(!h.is_pure(&h1));
    }

    #[test]
    fn exhaustive_laws_small_fields() {
        for (p, d, c) in [(2u32, 1, 1), (3, 1, 1), (3, 1, 2)] {
            let f = FiniteField::new(p, 1, None).unwrap();
            let h = QuatAlgebra::new(f.clone(), f.from_int(d), f.from_int(c)).unwrap();
            let els = f.elements().unwrap();
            let mut all = Vec::new();
            for a in &els {
                for b in &els {
                    for c in &els {
                        for d in &els {
                            all.push([a.clone(), b.clone(), c.clone(), d.clone()]);
                        }
                    }
                }
            }
            ring_laws(&h, &all);
        }
    }

    #[test]
    fn rational_laws_random() {
        let h = hamilton();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let xs: Vec<_> = (0..40).map(|_| h.random(&mut rng)).collect();
        ring_laws(&h, &xs);
        for w in xs.windows(3) {
            assert_eq!(h.mul(&h.mul(&w[0], &w[1]), &w[2]), h.mul(&w[0], &h.mul(&w[1], &w[2])));
        }
    }

    #[test]
    fn splitting() {
        assert_eq!(hamilton().is_division(), Some(true));
        assert!(hamilton().split_witness().is_none());
        let s = split_q();
        assert_eq!(s.is_split(), Some(true));
        let w = s.split_witness().unwrap();
        assert!(!s.is_zero(w) && s.norm(w) == q(0));
        let f = FiniteField::new(3, 1, None).unwrap();
        let h = QuatAlgebra::new(f.clone(), f.one(), f.one()).unwrap();
        assert_eq!(h.is_split(), Some(true));
        assert!(f.is_zero(&h.norm(h.split_witness().unwrap())));
        // (−1, −3) is nontrivial at 3 and (−1, 2) is trivial everywhere.
        let h = QuatAlgebra::new(Rationals, q(1), q(3)).unwrap();
        assert_eq!(h.is_division(), Some(true));
        let h = QuatAlgebra::new(Rationals, q(1), q(-2)).unwrap();
        assert_eq!(h.is_split(), Some(true));
    }

    #[test]
    fn inseparable_case_is_commutative() {
        let f = FunctionField::new(2).unwrap();
        let t = f.parse("t").unwrap();
        let h = QuatAlgebra::with_t(f.clone(), f.zero(), t.clone(), f.parse("t+1").unwrap()).unwrap();
        assert!(h.is_commutative);
        let (x, y) = (h.basis(1), h.basis(2));
        assert_eq!(h.mul(&x, &y), h.mul(&y, &x));
        assert_eq!(h.scalar(&h.norm(&x)), h.mul(&x, &x));
        let w = h.split_witness().unwrap();
        assert!(f.is_zero(&h.norm(w)) && !h.is_zero(w));
        assert_eq!(h.conjugate_solver(&x, &y), Err(QuatError::Commutative));
    }

    #[test]
    fn conjugator_examples() {
        let h = hamilton();
        let (h1, h2, h3) = (h.basis(1), h.basis(2), h.basis(3));
        let a = h.conjugate_solver(&h1, &h2).unwrap();
        assert_eq!(a, h.add(&h1, &h2));
        assert_eq!(h.conjugate_by(&a, &h1).unwrap(), h2);
        assert_eq!(h.conjugate_solver(&h1, &h1).unwrap(), h.one());
        let x = h.from_ints([1, 1, 0, 0]);
        assert!(matches!(h.conjugate_solver(&h1, &x), Err(QuatError::TraceMismatch(_))));
        // x = ṽ takes the perpendicular branch.
        let v = h.from_ints([1, 2, 0, 0]);
        let a = h.conjugate_solver(&v, &h.conj(&v)).unwrap();
        assert_eq!(h.conjugate_by(&a, &v).unwrap(), h.conj(&v));

        assert_eq!(h.pair_conjugate_solver(&h1, &h2, &h1, &h2).unwrap(), h.one());
        let a = h.pair_conjugate_solver(&h1, &h2, &h1, &h3).unwrap();
        assert_eq!(h.conjugate_by(&a, &h2).unwrap(), h3);
        let two_h1 = h.scale(&q(2), &h1);
        assert_eq!(
            h.pair_conjugate_solver(&h1, &two_h1, &h1, &h2),
            Err(QuatError::Dependent("w", "v"))
        );
    }

    #[test]
    fn split_counterexample_is_refused() {
        // In ℍ^{1,1} ≅ ℚ^{2×2} via h1 ↦ diag(1, −1), h2 ↦ [[0,1],[1,0]], the
        // matrix [[0,−1],[1,2]] is 1 − h1 + h3.
        let s = split_q();
        let m = s.from_ints([1, -1, 0, 1]);
        let id = s.one();
        assert_eq!((s.norm(&m), s.trace(&m)), (s.norm(&id), s.trace(&id)));
        // The construction's candidate x − ṽ is a zero divisor here.
        let cand = s.sub(&id, &s.conj(&m));
        assert!(!s.is_zero(&cand) && !s.is_unit(&cand));
        assert_eq!(s.conjugate_solver(&m, &id), Err(QuatError::Split));
        let vals: Vec<_> = (-3..=3).map(q).collect();
        let hit = search_box(&vals, |a| {
            (s.is_unit(a) && s.conjugate_by(a, &m).unwrap() == id).then_some(())
        });
        assert!(hit.is_none());
    }

    #[test]
    fn z_action_examples() {
        let h = hamilton();
        let v = h.basis(1);
        let r = h.z_action_solver(&v, &v, 3).unwrap();
        assert_eq!((r.z, r.a), (h.one(), h.one()));
        let x = h.scale(&q(4), &v);
        let r = h.z_action_solver(&v, &x, 3).unwrap();
        assert_eq!(h.norm(&r.z), q(4));
        // Needs N(z) = 3, e.g. z = 1 + h1 + h2.
        let y = h.scale(&q(3), &v);
        assert!(h.z_action_solver(&v, &y, 3).is_ok());
        let bad = h.from_ints([0, 0, 0, 0]);
        assert_eq!(h.z_action_solver(&v, &bad, 2), Err(QuatError::NotFound));
    }

    #[test]
    fn inner_automorphisms() {
        let h = hamilton();
        let id = h.inner_auto(&h.one()).unwrap();
        assert!(id.is_identity(h.field()));
        let m = h.inner_auto(&h.from_ints([1, 1, 0, 0])).unwrap();
        assert_eq!(h.pure_part_matrix(&m).unwrap().det(h.field()), q(1));
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let a = h.random(&mut rng);
            if !h.is_unit(&a) {
                continue;
            }
            assert!(h.so_check(&a).unwrap());
            let m = h.inner_auto(&a).unwrap();
            let x = h.random(&mut rng);
            let y: Quaternion<_> = std::array::from_fn(|i| m.mul_vec(h.field(), &x)[i].clone());
            assert_eq!(h.norm(&y), h.norm(&x));
            assert_eq!(h.trace(&y), h.trace(&x));
        }
        assert_eq!(h.inner_auto(&h.zero()), Err(QuatError::NotUnit));
    }

    #[test]
    fn inner_automorphisms_char_two() {
        let f = FiniteField::new(2, 2, None).unwrap();
        let h = QuatAlgebra::new(f.clone(), f.one(), f.one()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let a = h.random(&mut rng);
            if h.is_unit(&a) {
                assert!(h.so_check(&a).unwrap());
            }
        }
    }

    #[test]
    fn norm_groups() {
        let h = hamilton();
        let c = h.norm_group_coset(&q(5)).unwrap();
        assert_eq!(c.in_norms, Some(true));
        assert_eq!(c.in_square_norms, Some(false));
        assert_eq!(h.norm_group_coset(&q(-5)).unwrap().in_norms, Some(false));
        assert_eq!(h.norm_group_coset(&q(9)).unwrap().in_square_norms, Some(true));
        assert_eq!(h.norm_group_coset(&q(0)), Err(QuatError::ZeroScalar));
        let f = FiniteField::new(3, 1, None).unwrap();
        let g = QuatAlgebra::new(f.clone(), f.one(), f.one()).unwrap();
        let two = f.from_int(2);
        assert_eq!(g.norm_group_coset(&two).unwrap().in_norms, Some(true));
        let els = f.elements().unwrap();
        let mut image = std::collections::HashSet::new();
        for a in &els {
            for b in &els {
                for c in &els {
                    for d in &els {
                        image.insert(g.norm(&[a.clone(), b.clone(), c.clone(), d.clone()]));
                    }
                }
            }
        }
        assert!(image.contains(&two));
        // ℍ^{−1,1}: indefinite, so every nonzero rational is a norm.
        let s = QuatAlgebra::new(Rationals, q(1), q(-1)).unwrap();
        assert_eq!(s.is_norm(&q(-7)), Some(true));
    }

    #[test]
    fn multiplication_matrices() {
        let h = hamilton();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let a = h.random(&mut rng);
        let x = h.random(&mut rng);
        let f = h.field();
        assert_eq!(h.left_matrix(&a).mul_vec(f, &x), h.mul(&a, &x).to_vec());
        assert_eq!(h.right_matrix(&a).mul_vec(f, &x), h.mul(&x, &a).to_vec());
    }

    proptest! {
        #[test]
        fn random_matched_pairs_solve(
            v in prop::array::uniform4(-4i64..=4),
            a in prop::array::uniform4(-3i64..=3),
        ) {
            let h = hamilton();
            let (v, a) = (h.from_ints(v), h.from_ints(a));
            prop_assume!(h.is_unit(&a));
            let x = h.conjugate_by(&a, &v).unwrap();
            let b = h.conjugate_solver(&v, &x).unwrap();
            prop_assert_eq!(h.conjugate_by(&b, &v).unwrap(), x);
        }
    }
}
