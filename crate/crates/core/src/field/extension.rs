//! Quadratic extensions L = K(u) with u² + tu + d = 0 and 2t = 0.
//!
//! Elements are pairs (a, b) meaning a + bu. L is also embedded into the
//! 2×2 matrices over K by a + bu ↦ [[a, −bd], [b, a − bt]].

use rand::Rng;

use super::{Field, FieldError, RepSet};
use crate::linalg::Matrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LElem<E> {
    pub a: E,
    pub b: E,
}

#[derive(Clone, Debug)]
pub struct QuadExtension<F: Field> {
    pub base: F,
    pub t: F::Elem,
    pub d: F::Elem,
    pub separable: bool,
}

impl<F: Field> QuadExtension<F> {
    /// Checks 2t = 0 and irreducibility of X² + tX + d.
    pub fn new(base: F, t: F::Elem, d: F::Elem) -> Result<Self, FieldError> {
        let f = &base;
        let poly_err = |undecided: bool| {
            let (field, t, d) = (f.name(), f.format(&t), f.format(&d));
            if undecided {
                FieldError::UndecidedPolynomial { field, t, d }
            } else {
                FieldError::ReduciblePolynomial { field, t, d }
            }
        };
        if !f.is_zero(&f.add(&t, &t)) {
            return Err(FieldError::Unsupported(format!(
                "t = {} violates 2t = 0 over {}",
                f.format(&t),
                f.name()
            )));
        }
        let irreducible = if let Some(all) = f.elements() {
            Some(all.iter().all(|x| {
                let v = f.add(&f.add(&f.square(x), &f.mul(&t, x)), &d);
                !f.is_zero(&v)
            }))
        } else if f.characteristic() != 2 {
            // t = 0 here, so X² + d has a root iff −d is a square.
            Some(!f.is_square(&f.neg(&d)))
        } else if f.is_zero(&t) {
            Some(!f.is_square(&d))
        } else {
            // X² + tX + d = t²((X/t)² + X/t + d/t²).
            f.in_wp(&f.div(&d, &f.square(&t))).map(|b| !b)
        };
        match irreducible {
            Some(true) => {}
            Some(false) => return Err(poly_err(false)),
            None => return Err(poly_err(true)),
        }
        let separable = f.characteristic() != 2 || !f.is_zero(&t);
        Ok(QuadExtension { base, t, d, separable })
    }

    /// Skips the irreducibility check, so K[X]/(X² + tX + d) may split.
    pub fn new_unchecked(base: F, t: F::Elem, d: F::Elem) -> Self {
        let separable = base.characteristic() != 2 || !base.is_zero(&t);
        QuadExtension { base, t, d, separable }
    }

    pub fn elem(&self, a: F::Elem, b: F::Elem) -> LElem<F::Elem> {
        LElem { a, b }
    }

    pub fn from_base(&self, a: F::Elem) -> LElem<F::Elem> {
        LElem { a, b: self.base.zero() }
    }

    pub fn zero(&self) -> LElem<F::Elem> {
        self.from_base(self.base.zero())
    }

    pub fn one(&self) -> LElem<F::Elem> {
        self.from_base(self.base.one())
    }

    pub fn u(&self) -> LElem<F::Elem> {
        LElem { a: self.base.zero(), b: self.base.one() }
    }

    pub fn is_zero(&self, x: &LElem<F::Elem>) -> bool {
        self.base.is_zero(&x.a) && self.base.is_zero(&x.b)
    }

    pub fn add(&self, x: &LElem<F::Elem>, y: &LElem<F::Elem>) -> LElem<F::Elem> {
        let f = &self.base;
        LElem { a: f.add(&x.a, &y.a), b: f.add(&x.b, &y.b) }
    }

    pub fn neg(&self, x: &LElem<F::Elem>) -> LElem<F::Elem> {
        LElem { a: self.base.neg(&x.a), b: self.base.neg(&x.b) }
    }

    pub fn sub(&self, x: &LElem<F::Elem>, y: &LElem<F::Elem>) -> LElem<F::Elem> {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &LElem<F::Elem>, y: &LElem<F::Elem>) -> LElem<F::Elem> {
        let f = &self.base;
        // u² = −tu − d
        let bb = f.mul(&x.b, &y.b);
        LElem {
            a: f.sub(&f.mul(&x.a, &y.a), &f.mul(&bb, &self.d)),
            b: f.sub(
                &f.add(&f.mul(&x.a, &y.b), &f.mul(&x.b, &y.a)),
                &f.mul(&bb, &self.t),
            ),
        }
    }

    pub fn scale(&self, s: &F::Elem, x: &LElem<F::Elem>) -> LElem<F::Elem> {
        LElem { a: self.base.mul(s, &x.a), b: self.base.mul(s, &x.b) }
    }

    /// The nontrivial Galois conjugate; the identity when L/K is
    /// inseparable.
    pub fn conj(&self, x: &LElem<F::Elem>) -> LElem<F::Elem> {
        let f = &self.base;
        LElem { a: f.sub(&x.a, &f.mul(&x.b, &self.t)), b: f.neg(&x.b) }
    }

    /// N(a + bu) = a² − tab + db².
    pub fn norm(&self, x: &LElem<F::Elem>) -> F::Elem {
        let f = &self.base;
        let ab = f.mul(&x.a, &x.b);
        f.add(&f.sub(&f.square(&x.a), &f.mul(&self.t, &ab)), &f.mul(&self.d, &f.square(&x.b)))
    }

    /// x + x̄.
    pub fn trace(&self, x: &LElem<F::Elem>) -> F::Elem {
        let f = &self.base;
        f.sub(&f.add(&x.a, &x.a), &f.mul(&x.b, &self.t))
    }

    pub fn inv(&self, x: &LElem<F::Elem>) -> Option<LElem<F::Elem>> {
        let n = self.base.inv(&self.norm(x))?;
        Some(self.scale(&n, &self.conj(x)))
    }

    pub fn div(&self, x: &LElem<F::Elem>, y: &LElem<F::Elem>) -> LElem<F::Elem> {
        self.mul(x, &self.inv(y).expect("division by zero"))
    }

    pub fn is_base(&self, x: &LElem<F::Elem>) -> bool {
        self.base.is_zero(&x.b)
    }

    /// The 2×2 matrix of multiplication by x.
    pub fn to_matrix(&self, x: &LElem<F::Elem>) -> Matrix<F> {
        let f = &self.base;
        Matrix::from_rows(vec![
            vec![x.a.clone(), f.neg(&f.mul(&x.b, &self.d))],
            vec![x.b.clone(), f.sub(&x.a, &f.mul(&x.b, &self.t))],
        ])
    }

    /// Inverse of [`Self::to_matrix`]; `None` if the matrix is not in L.
    pub fn from_matrix(&self, m: &Matrix<F>) -> Option<LElem<F::Elem>> {
        let x = LElem { a: m.get(0, 0).clone(), b: m.get(1, 0).clone() };
        (self.to_matrix(&x) == *m).then_some(x)
    }

    pub fn u_matrix(&self) -> Matrix<F> {
        self.to_matrix(&self.u())
    }

    /// ξ = [[1, t], [0, −1]]; conjugation by ξ is the Galois conjugation.
    pub fn xi_matrix(&self) -> Matrix<F> {
        let f = &self.base;
        Matrix::from_rows(vec![vec![f.one(), self.t.clone()], vec![f.zero(), f.neg(&f.one())]])
    }

    /// δ = diag(d, −1); δA′ = Aδ for A in L.
    pub fn delta_matrix(&self) -> Matrix<F> {
        let f = &self.base;
        Matrix::diag(f, &[self.d.clone(), f.neg(&f.one())])
    }

    /// Whether `x ∈ N(L^×)`; `None` when undecided.
    pub fn norm_class(&self, x: &F::Elem) -> Option<bool> {
        let f = &self.base;
        if f.is_zero(x) {
            return Some(false);
        }
        if f.is_finite() || f.is_square(x) {
            return Some(true);
        }
        if !self.separable {
            // N(a + bu) = a² + db², so the norms are K² + dK² minus 0. When
            // K has degree 2 over K² and d is not a square this is all of K.
            let dc = f.square_coords(&self.d)?;
            return (dc.len() == 2).then_some(true);
        }
        if let (Some(q), Some(t), Some(d)) = (f.as_rational(x), f.as_rational(&self.t), f.as_rational(&self.d)) {
            // N(a + bu) = (a + tb/2)² + (d − t²/4)b², so x is a norm iff the
            // Hilbert symbol (x, t²/4 − d) is trivial everywhere.
            let four = num_rational::BigRational::from_integer(4.into());
            return super::rational::hilbert_trivial(&q, &(&t * &t / four - d));
        }
        None
    }

    /// Representatives of K^× / N(L^×)⟨−1⟩.
    pub fn rn_reps(&self) -> RepSet<F::Elem> {
        if self.base.is_finite() {
            RepSet::Finite(vec![self.base.one()])
        } else {
            RepSet::Infinite
        }
    }

    /// Every element of L (finite base only).
    pub fn elements(&self) -> Option<Vec<LElem<F::Elem>>> {
        let all = self.base.elements()?;
        let mut out = Vec::with_capacity(all.len() * all.len());
        for b in &all {
            for a in &all {
                out.push(LElem { a: a.clone(), b: b.clone() });
            }
        }
        Some(out)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> LElem<F::Elem> {
        LElem { a: self.base.random(rng), b: self.base.random(rng) }
    }

    pub fn format(&self, x: &LElem<F::Elem>) -> String {
        let f = &self.base;
        match (f.is_zero(&x.a), f.is_zero(&x.b)) {
            (_, true) => f.format(&x.a),
            (true, false) => format!("({})u", f.format(&x.b)),
            (false, false) => format!("{} + ({})u", f.format(&x.a), f.format(&x.b)),
        }
    }

    pub fn label(&self) -> String {
        format!("quad:{}:{},{}", self.base.name(), self.base.format(&self.t), self.base.format(&self.d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FiniteField, Rationals};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf9() -> QuadExtension<FiniteField> {
        let f = FiniteField::prime(3).unwrap();
        QuadExtension::new(f.clone(), f.zero(), f.one()).unwrap()
    }

    #[test]
    fn norm_of_u() {
        let l = gf9();
        assert!(l.base.is_one(&l.norm(&l.u())));
        assert!(l.base.is_one(&l.norm(&l.one())));
        assert_eq!(l.mul(&l.u(), &l.u()), l.from_base(l.base.from_int(-1)));
    }

    #[test]
    fn rejects_reducible_polynomials() {
        let f = FiniteField::prime(5).unwrap();
        assert!(QuadExtension::new(f.clone(), f.zero(), f.one()).is_err());
        assert!(QuadExtension::new(f.clone(), f.zero(), f.from_int(2)).is_ok());
        assert!(QuadExtension::new(Rationals, Rationals.zero(), Rationals.from_int(-4)).is_err());
        let g2 = FiniteField::prime(2).unwrap();
        assert!(QuadExtension::new(g2.clone(), g2.one(), g2.zero()).is_err());
        assert!(QuadExtension::new(g2.clone(), g2.one(), g2.one()).is_ok());
    }

    #[test]
    fn norm_is_multiplicative_and_conj_is_xi_conjugation() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g4 = FiniteField::new(2, 2, None).unwrap();
        let w = g4.parse("x").unwrap();
        let f7 = FiniteField::prime(7).unwrap();
        check_ext(&gf9(), &mut rng);
        check_ext(&QuadExtension::new(f7.clone(), f7.zero(), f7.one()).unwrap(), &mut rng);
        check_ext(&QuadExtension::new(g4.clone(), g4.one(), w).unwrap(), &mut rng);
        check_ext(&QuadExtension::new(Rationals, Rationals.zero(), Rationals.one()).unwrap(), &mut rng);
    }

    fn check_ext<F: Field>(l: &QuadExtension<F>, rng: &mut ChaCha8Rng) {
        let f = &l.base;
        let xi = l.xi_matrix();
        let xi_inv = xi.inverse(f).unwrap();
        let delta = l.delta_matrix();
        for x in [l.one(), l.u()] {
            let m = l.to_matrix(&x);
            assert_eq!(xi.mul(f, &m).mul(f, &xi_inv), l.to_matrix(&l.conj(&x)));
            assert_eq!(delta.mul(f, &m.transpose()), m.mul(f, &delta));
        }
        let um = l.u_matrix();
        let root = um.mul(f, &um).add(f, &um.scale(f, &l.t)).add(f, &Matrix::identity(f, 2).scale(f, &l.d));
        assert!(root.is_zero(f));
        for _ in 0..200 {
            let x = l.random(rng);
            let y = l.random(rng);
            assert_eq!(l.norm(&l.mul(&x, &y)), f.mul(&l.norm(&x), &l.norm(&y)));
            assert_eq!(l.to_matrix(&l.mul(&x, &y)), l.to_matrix(&x).mul(f, &l.to_matrix(&y)));
            assert_eq!(l.from_base(l.norm(&x)), l.mul(&x, &l.conj(&x)));
            if !l.is_zero(&x) {
                assert_eq!(l.mul(&x, &l.inv(&x).unwrap()), l.one());
            }
        }
    }

    #[test]
    fn gaussian_norms() {
        let l = QuadExtension::new(Rationals, Rationals.zero(), Rationals.one()).unwrap();
        assert_eq!(l.norm_class(&Rationals.from_int(2)), Some(true));
        assert_eq!(l.norm_class(&Rationals.from_int(3)), Some(false));
        assert_eq!(l.norm_class(&Rationals.from_int(-1)), Some(false));
    }

    #[test]
    fn rational_norms_match_search() {
        // Cross-check against a box search over small numerators.
        let q = Rationals;
        for (t, d) in [(0, 2), (0, 3), (0, 5), (0, -2), (0, -7)] {
            let l = QuadExtension::new(q.clone(), q.from_int(t), q.from_int(d)).unwrap();
            let mut found = std::collections::HashSet::new();
            for a in -12i64..=12 {
                for b in -12i64..=12 {
                    let n = a * a + t * a * b + d * b * b;
                    if n != 0 {
                        found.insert(n);
                    }
                }
            }
            for x in -30..=30 {
                if found.contains(&x) {
                    assert_eq!(l.norm_class(&q.from_int(x)), Some(true), "d={d} x={x}");
                }
            }
            if d > 0 {
                assert_eq!(l.norm_class(&q.from_int(-1)), Some(false));
            }
        }
        let l = QuadExtension::new(q.clone(), q.zero(), q.from_int(2)).unwrap();
        assert_eq!(l.norm_class(&q.from_int(5)), Some(false));
        assert_eq!(l.norm_class(&q.from_int(3)), Some(true));
    }
}
