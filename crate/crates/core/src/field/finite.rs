//! GF(p^k) with log/exp table arithmetic.
//!
//! An element is stored as the integer whose base-p digits are its
//! coefficients in the basis 1, x, …, x^(k-1) of GF(p)[x]/(modulus). That
//! integer is also the element's position in the canonical enumeration.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use super::poly::{self, Poly};
use super::{Field, FieldError};

/// Largest field order served by the table backend.
pub const MAX_ORDER: u64 = 1 << 16;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Gf(pub u32);

#[derive(Clone)]
pub struct FiniteField {
    t: Arc<Tables>,
}

struct Tables {
    p: u32,
    k: u32,
    q: u32,
    modulus: Poly,
    /// exp[i] = g^i for a primitive g, doubled in length to skip a reduction.
    exp: Vec<u32>,
    /// log[a] for a ≠ 0; log[0] unused.
    log: Vec<u32>,
    /// Full addition table for small orders.
    add: Option<Vec<u32>>,
    neg: Vec<u32>,
    /// Smallest element of absolute trace 1 (characteristic 2 only).
    trace_one: Option<u32>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FiniteField {
    /// GF(p^k); the modulus defaults to the first irreducible monic
    /// polynomial of degree k in the canonical enumeration.
    pub fn new(p: u32, k: u32, modulus: Option<Vec<u32>>) -> Result<Self, FieldError> {
        if !is_prime(p as u64) {
            return Err(FieldError::NotPrime(p as u64));
        }
        if k == 0 {
            return Err(FieldError::Unsupported("extension degree must be positive".into()));
        }
        let q64 = (p as u64).checked_pow(k).unwrap_or(u64::MAX);
        if q64 > MAX_ORDER {
            return Err(FieldError::TooLarge(q64));
        }
        let q = q64 as u32;
        let modulus = match modulus {
            Some(mut m) => {
                for c in m.iter_mut() {
                    *c %= p;
                }
                poly::trim(&mut m);
                if poly::degree(&m) != Some(k as usize) || !poly::is_irreducible(&m, p) {
                    return Err(FieldError::ReducibleModulus(m, p));
                }
                poly::monic(&m, p)
            }
            None => default_modulus(p, k),
        };
        let digits = |mut a: u32| -> Poly {
            let mut v = Vec::with_capacity(k as usize);
            for _ in 0..k {
                v.push(a % p);
                a /= p;
            }
            poly::trim(&mut v);
            v
        };
        let undigits = |v: &Poly| -> u32 { v.iter().rev().fold(0, |acc, &c| acc * p + c) };
        let polymul = |a: u32, b: u32| -> u32 {
            undigits(&poly::rem(&poly::mul(&digits(a), &digits(b), p), &modulus, p))
        };

        // Primitive element by order search.
        let mut exp = Vec::new();
        if q > 2 {
            'candidates: for g in 2..q {
                exp.clear();
                let mut x = 1u32;
                for _ in 0..q - 1 {
                    exp.push(x);
                    x = polymul(x, g);
                    if x == 1 && exp.len() < (q - 1) as usize {
                        continue 'candidates;
                    }
                }
                break;
            }
        } else {
            exp.push(1);
        }
        assert_eq!(exp.len(), (q - 1) as usize, "no primitive element found");
        let mut log = vec![0u32; q as usize];
        for (i, &x) in exp.iter().enumerate() {
            log[x as usize] = i as u32;
        }
        let doubled: Vec<u32> = exp.iter().chain(exp.iter()).copied().collect();

        let add_digits = |a: u32, b: u32| -> u32 {
            let (mut a, mut b) = (a, b);
            let mut out = 0;
            let mut place = 1;
            for _ in 0..k {
                out += ((a % p + b % p) % p) * place;
                a /= p;
                b /= p;
                place *= p;
            }
            out
        };
        let neg: Vec<u32> = (0..q)
            .map(|a| {
                let mut a = a;
                let mut out = 0;
                let mut place = 1;
                for _ in 0..k {
                    out += ((p - a % p) % p) * place;
                    a /= p;
                    place *= p;
                }
                out
            })
            .collect();
        let add = if q <= 256 {
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = add_digits(a, b);
                }
            }
            Some(t)
        } else {
            None
        };

        let tables = Tables {
            p,
            k,
            q,
            modulus,
            exp: doubled,
            log,
            add,
            neg,
            trace_one: None,
        };
        let mut field = FiniteField { t: Arc::new(tables) };
        if p == 2 {
            let one = (0..q).find(|&a| field.abs_trace(Gf(a)) == 1);
            Arc::get_mut(&mut field.t).expect("unshared").trace_one = one;
        }
        Ok(field)
    }

    pub fn prime(p: u32) -> Result<Self, FieldError> {
        Self::new(p, 1, None)
    }

    pub fn p(&self) -> u32 {
        self.t.p
    }

    pub fn degree(&self) -> u32 {
        self.t.k
    }

    pub fn q(&self) -> u32 {
        self.t.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.t.modulus
    }

    /// Coefficients in the basis 1, x, …, x^(k-1).
    pub fn coeffs(&self, a: Gf) -> Vec<u32> {
        let mut a = a.0;
        (0..self.t.k)
            .map(|_| {
                let c = a % self.t.p;
                a /= self.t.p;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Gf {
        assert!(c.len() <= self.t.k as usize);
        Gf(c.iter().rev().fold(0, |acc, &x| acc * self.t.p + x % self.t.p))
    }

    /// Absolute trace to GF(p), as an integer mod p.
    pub fn abs_trace(&self, a: Gf) -> u32 {
        let mut acc = Gf(0);
        let mut x = a;
        for _ in 0..self.t.k {
            acc = self.add(&acc, &x);
            x = self.pow(&x, self.t.p as u64);
        }
        self.coeffs(acc)[0]
    }

    /// The fixed primitive element used for logarithms.
    pub fn primitive(&self) -> Gf {
        Gf(self.t.exp[1 % self.t.exp.len().max(1)])
    }
}

fn default_modulus(p: u32, k: u32) -> Poly {
    if k == 1 {
        return vec![0, 1];
    }
    let count = (p as u64).pow(k);
    (0..count)
        .map(|i| poly::monic_from_index(i, k as usize, p))
        .find(|m| poly::is_irreducible(m, p))
        .expect("irreducible polynomials exist in every degree")
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteField({})", self.name())
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.t.p == other.t.p && self.t.modulus == other.t.modulus
    }
}

impl Eq for FiniteField {}

impl Field for FiniteField {
    type Elem = Gf;

    fn name(&self) -> String {
        if self.t.k == 1 {
            format!("gf:{}", self.t.p)
        } else {
            let coeffs: Vec<String> = self.t.modulus.iter().map(|c| c.to_string()).collect();
            format!("gf:{}^{}:{}", self.t.p, self.t.k, coeffs.join(","))
        }
    }

    fn zero(&self) -> Gf {
        Gf(0)
    }

    fn one(&self) -> Gf {
        Gf(1)
    }

    #[inline]
    fn add(&self, a: &Gf, b: &Gf) -> Gf {
        let t = &*self.t;
        if t.k == 1 {
            let s = a.0 + b.0;
            return Gf(if s >= t.p { s - t.p } else { s });
        }
        if t.p == 2 {
            return Gf(a.0 ^ b.0);
        }
        match &t.add {
            Some(tab) => Gf(tab[(a.0 * t.q + b.0) as usize]),
            None => {
                let (mut x, mut y) = (a.0, b.0);
                let mut out = 0;
                let mut place = 1;
                for _ in 0..t.k {
                    out += ((x % t.p + y % t.p) % t.p) * place;
                    x /= t.p;
                    y /= t.p;
                    place *= t.p;
                }
                Gf(out)
            }
        }
    }

    #[inline]
    fn neg(&self, a: &Gf) -> Gf {
        Gf(self.t.neg[a.0 as usize])
    }

    #[inline]
    fn sub(&self, a: &Gf, b: &Gf) -> Gf {
        self.add(a, &self.neg(b))
    }

    #[inline]
    fn mul(&self, a: &Gf, b: &Gf) -> Gf {
        if a.0 == 0 || b.0 == 0 {
            return Gf(0);
        }
        let t = &*self.t;
        Gf(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize])
    }

    fn inv(&self, a: &Gf) -> Option<Gf> {
        if a.0 == 0 {
            return None;
        }
        let t = &*self.t;
        let l = t.log[a.0 as usize];
        Some(Gf(t.exp[((t.q - 1 - l) % (t.q - 1)) as usize]))
    }

    #[inline]
    fn is_zero(&self, a: &Gf) -> bool {
        a.0 == 0
    }

    fn from_int(&self, n: i64) -> Gf {
        let p = self.t.p as i64;
        Gf(n.rem_euclid(p) as u32)
    }

    fn from_decimal(&self, digits: &str) -> Gf {
        let p = self.t.p as u64;
        Gf(digits.bytes().fold(0u64, |acc, b| (acc * 10 + (b - b'0') as u64) % p) as u32)
    }

    fn characteristic(&self) -> u64 {
        self.t.p as u64
    }

    fn order(&self) -> Option<u64> {
        Some(self.t.q as u64)
    }

    fn is_perfect(&self) -> bool {
        true
    }

    fn index_of(&self, a: &Gf) -> Option<usize> {
        Some(a.0 as usize)
    }

    fn element_at(&self, i: usize) -> Option<Gf> {
        (i < self.t.q as usize).then_some(Gf(i as u32))
    }

    fn is_square(&self, a: &Gf) -> bool {
        a.0 == 0 || self.t.p == 2 || self.t.log[a.0 as usize] % 2 == 0
    }

    fn sqrt(&self, a: &Gf) -> Option<Gf> {
        if a.0 == 0 {
            return Some(Gf(0));
        }
        let t = &*self.t;
        let l = t.log[a.0 as usize];
        if l % 2 == 0 {
            Some(Gf(t.exp[(l / 2) as usize]))
        } else if t.p == 2 {
            // q - 1 is odd, so l + q - 1 is even.
            Some(Gf(t.exp[((l + t.q - 1) / 2) as usize]))
        } else {
            None
        }
    }

    fn square_class_rep(&self, a: &Gf) -> Option<Gf> {
        if a.0 == 0 {
            return None;
        }
        if self.is_square(a) {
            Some(Gf(1))
        } else {
            Some(self.primitive())
        }
    }

    fn in_wp(&self, a: &Gf) -> Option<bool> {
        (self.t.p == 2).then(|| self.abs_trace(*a) == 0)
    }

    fn wp_rep(&self, a: &Gf) -> Option<Gf> {
        if self.t.p != 2 {
            return None;
        }
        if self.abs_trace(*a) == 0 {
            Some(Gf(0))
        } else {
            self.t.trace_one.map(Gf)
        }
    }

    fn square_coords(&self, a: &Gf) -> Option<Vec<Gf>> {
        (self.t.p == 2).then(|| vec![self.sqrt(a).expect("perfect field")])
    }

    fn nonsquare(&self) -> Option<Gf> {
        (self.t.p != 2).then(|| self.primitive())
    }

    fn variable(&self) -> Option<(&'static str, Gf)> {
        if self.t.k > 1 {
            Some(("x", Gf(self.t.p)))
        } else {
            None
        }
    }

    fn params(&self) -> Vec<Gf> {
        (0..self.t.q).map(Gf).collect()
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Gf {
        Gf(rng.gen_range(0..self.t.q))
    }

    fn format(&self, a: &Gf) -> String {
        if self.t.k == 1 {
            return a.0.to_string();
        }
        let c = self.coeffs(*a);
        let mut terms = Vec::new();
        for (i, &ci) in c.iter().enumerate().rev() {
            if ci == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            terms.push(if i == 0 {
                ci.to_string()
            } else if ci == 1 {
                mono
            } else {
                format!("{ci}{mono}")
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squares_of_gf3() {
        let f = FiniteField::prime(3).unwrap();
        assert!(!f.is_square(&Gf(2)));
        assert!(f.is_square(&Gf(1)));
        assert_eq!(f.square_class_rep(&Gf(2)), Some(Gf(2)));
    }

    #[test]
    fn gf4_arithmetic() {
        let f = FiniteField::new(2, 2, None).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let w = f.parse("x").unwrap();
        // w^2 + w + 1 = 0
        let v = f.add(&f.add(&f.square(&w), &w), &f.one());
        assert!(f.is_zero(&v));
        assert_eq!(f.in_wp(&f.one()), Some(true));
        assert_eq!(f.in_wp(&w), Some(false));
        assert_eq!(f.name(), "gf:2^2:1,1,1");
    }

    #[test]
    fn rejects_reducible_modulus_and_composite_p() {
        assert!(matches!(
            FiniteField::new(2, 2, Some(vec![1, 0, 1])),
            Err(FieldError::ReducibleModulus(..))
        ));
        assert_eq!(FiniteField::prime(4).unwrap_err(), FieldError::NotPrime(4));
    }

    #[test]
    fn explicit_modulus_is_respected() {
        let f = FiniteField::new(3, 2, Some(vec![2, 2, 1])).unwrap();
        let x = f.parse("x").unwrap();
        // x^2 = -2x - 2 = x + 1
        assert_eq!(f.square(&x), f.parse("x+1").unwrap());
    }
}
