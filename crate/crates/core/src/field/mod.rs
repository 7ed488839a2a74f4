//! Exact scalar fields.
//!
//! A [`Field`] value is a descriptor (characteristic, modulus, lookup
//! tables); elements are plain values manipulated through it, so a single
//! element type can serve fields chosen at runtime.
//!
//! Three backends are provided: [`Rationals`], [`FiniteField`] for GF(p^k)
//! and [`FunctionField`] for GF(p)(t). Field-theoretic questions that are
//! not decidable for a backend (for instance ℘-membership of a rational
//! function in characteristic 2) answer `None`.

mod expr;
pub mod extension;
pub mod finite;
pub mod function;
pub mod poly;
pub mod profile;
pub mod rational;
pub mod spec;

use std::fmt;
use std::hash::Hash;

use num_rational::BigRational;
use rand::Rng;

pub use extension::{LElem, QuadExtension};
pub use finite::{FiniteField, Gf};
pub use function::{FunctionField, RatFn};
pub use profile::{FieldProfile, RepSet};
pub use rational::Rationals;
pub use spec::{parse_field_spec, AnyField, FieldSpec, ParsedSpec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0:?} is not irreducible over GF({1})")]
    ReducibleModulus(Vec<u32>, u32),
    #[error("field of order {0} is too large for table arithmetic")]
    TooLarge(u64),
    #[error("cannot parse field spec {0:?}: {1}")]
    BadSpec(String, String),
    #[error("cannot parse scalar {0:?}: {1}")]
    BadScalar(String, String),
    #[error("X^2 + {t}X + {d} is reducible over {field}")]
    ReduciblePolynomial { field: String, t: String, d: String },
    #[error("irreducibility of X^2 + {t}X + {d} over {field} cannot be decided")]
    UndecidedPolynomial { field: String, t: String, d: String },
    #[error("{0}")]
    Unsupported(String),
}

/// A field descriptor together with exact arithmetic on its elements.
pub trait Field: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync + 'static;

    /// Canonical spec string, e.g. `q`, `gf:3`, `gf:2^2:1,1,1`, `fp_t:2`.
    fn name(&self) -> String;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    /// Panics on division by zero.
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b).expect("division by zero"))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn square(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(a, a)
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn from_int(&self, n: i64) -> Self::Elem;

    /// Element denoted by a string of decimal digits.
    fn from_decimal(&self, digits: &str) -> Self::Elem {
        let ten = self.from_int(10);
        digits.bytes().fold(self.zero(), |acc, b| {
            self.add(&self.mul(&acc, &ten), &self.from_int((b - b'0') as i64))
        })
    }

    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;

    /// Number of elements, `None` for infinite fields.
    fn order(&self) -> Option<u64>;

    fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    fn is_perfect(&self) -> bool;

    /// Position of `a` in the canonical enumeration of a finite field.
    fn index_of(&self, _a: &Self::Elem) -> Option<usize> {
        None
    }

    fn element_at(&self, _i: usize) -> Option<Self::Elem> {
        None
    }

    /// All elements in canonical order (finite fields only).
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        let n = self.order()? as usize;
        (0..n).map(|i| self.element_at(i)).collect()
    }

    fn is_square(&self, a: &Self::Elem) -> bool;

    /// Some square root of `a`, when `a` is a square.
    fn sqrt(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// Canonical representative of the square class `a·(K^×)²` of a nonzero
    /// element, or `None` when the backend cannot produce one.
    fn square_class_rep(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// Whether `a ∈ ℘ = {x + x²}`; characteristic 2 only. `None` means
    /// undecided.
    fn in_wp(&self, a: &Self::Elem) -> Option<bool>;

    /// Canonical representative of `a + ℘`; characteristic 2 only.
    fn wp_rep(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// Coordinates of `a` over the subfield of squares, in characteristic 2:
    /// `a = Σ c_i² e_i` for the backend's fixed basis `e_i` of K over K².
    fn square_coords(&self, a: &Self::Elem) -> Option<Vec<Self::Elem>>;

    /// Some element that is not a square, if one exists.
    fn nonsquare(&self) -> Option<Self::Elem>;

    /// The adjoined indeterminate (`x` for GF(p^k), `t` for GF(p)(t)).
    fn variable(&self) -> Option<(&'static str, Self::Elem)> {
        None
    }

    /// Parameter values used for generator sets: every element of a finite
    /// field, a fixed sample otherwise.
    fn params(&self) -> Vec<Self::Elem>;

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    fn format(&self, a: &Self::Elem) -> String;

    fn parse(&self, s: &str) -> Result<Self::Elem, FieldError> {
        expr::parse(self, s)
    }

    /// The element as a rational number, for backends that are ℚ.
    fn as_rational(&self, _a: &Self::Elem) -> Option<BigRational> {
        None
    }
}

/// Every nonzero element of a finite field, in canonical order.
pub fn units<F: Field>(f: &F) -> Option<Vec<F::Elem>> {
    Some(f.elements()?.into_iter().filter(|x| !f.is_zero(x)).collect())
}
