//! The rational function field GF(p)(t).
//!
//! Elements are reduced fractions with a monic denominator. Square classes
//! use trial-division factorization, so they are meant for small degrees.

use std::fmt;

use rand::Rng;

use super::finite::is_prime;
use super::poly::{self, Poly};
use super::{Field, FieldError};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFn {
    pub num: Poly,
    pub den: Poly,
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub struct FunctionField {
    p: u32,
}

impl fmt::Debug for FunctionField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FunctionField(fp_t:{})", self.p)
    }
}

impl FunctionField {
    pub fn new(p: u32) -> Result<Self, FieldError> {
        if !is_prime(p as u64) {
            return Err(FieldError::NotPrime(p as u64));
        }
        Ok(FunctionField { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Reduced fraction `num/den`; `den` must be nonzero.
    pub fn fraction(&self, num: Poly, den: Poly) -> RatFn {
        let p = self.p;
        assert!(!den.is_empty(), "zero denominator");
        if num.is_empty() {
            return RatFn { num, den: poly::constant(1, p) };
        }
        let g = poly::gcd(&num, &den, p);
        let mut n = poly::divrem(&num, &g, p).0;
        let mut d = poly::divrem(&den, &g, p).0;
        let lc = *d.last().expect("nonzero");
        let inv = poly::inv_mod(lc, p);
        n = poly::scale(&n, inv, p);
        d = poly::scale(&d, inv, p);
        RatFn { num: n, den: d }
    }

    pub fn poly(&self, num: Poly) -> RatFn {
        let mut num = num;
        for c in num.iter_mut() {
            *c %= self.p;
        }
        poly::trim(&mut num);
        RatFn { num, den: poly::constant(1, self.p) }
    }

    pub fn is_polynomial(&self, a: &RatFn) -> bool {
        a.den.len() == 1
    }

    fn format_poly(&self, a: &Poly) -> String {
        if a.is_empty() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, &c) in a.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            terms.push(if i == 0 {
                c.to_string()
            } else if c == 1 {
                mono
            } else {
                format!("{c}{mono}")
            });
        }
        terms.join("+")
    }

    /// Reduce a polynomial modulo ℘ in characteristic 2: t^(2k) ≡ t^k, so
    /// only the constant and odd-degree monomials survive.
    fn wp_reduce_poly(&self, a: &Poly) -> Poly {
        let mut c = a.clone();
        let mut i = c.len();
        while i > 1 {
            i -= 1;
            if i % 2 == 0 && c[i] == 1 {
                c[i] = 0;
                c[i / 2] ^= 1;
            }
        }
        poly::trim(&mut c);
        c
    }
}

impl Field for FunctionField {
    type Elem = RatFn;

    fn name(&self) -> String {
        format!("fp_t:{}", self.p)
    }

    fn zero(&self) -> RatFn {
        self.poly(Vec::new())
    }

    fn one(&self) -> RatFn {
        self.poly(vec![1])
    }

    fn add(&self, a: &RatFn, b: &RatFn) -> RatFn {
        let p = self.p;
        if a.den == b.den {
            return self.fraction(poly::add(&a.num, &b.num, p), a.den.clone());
        }
        let n = poly::add(&poly::mul(&a.num, &b.den, p), &poly::mul(&b.num, &a.den, p), p);
        self.fraction(n, poly::mul(&a.den, &b.den, p))
    }

    fn neg(&self, a: &RatFn) -> RatFn {
        RatFn { num: poly::neg(&a.num, self.p), den: a.den.clone() }
    }

    fn mul(&self, a: &RatFn, b: &RatFn) -> RatFn {
        let p = self.p;
        self.fraction(poly::mul(&a.num, &b.num, p), poly::mul(&a.den, &b.den, p))
    }

    fn inv(&self, a: &RatFn) -> Option<RatFn> {
        if a.num.is_empty() {
            return None;
        }
        Some(self.fraction(a.den.clone(), a.num.clone()))
    }

    fn is_zero(&self, a: &RatFn) -> bool {
        a.num.is_empty()
    }

    fn from_int(&self, n: i64) -> RatFn {
        self.poly(vec![n.rem_euclid(self.p as i64) as u32])
    }

    fn characteristic(&self) -> u64 {
        self.p as u64
    }

    fn order(&self) -> Option<u64> {
        None
    }

    fn is_perfect(&self) -> bool {
        false
    }

    fn is_square(&self, a: &RatFn) -> bool {
        poly::sqrt(&poly::mul(&a.num, &a.den, self.p), self.p).is_some()
    }

    fn sqrt(&self, a: &RatFn) -> Option<RatFn> {
        let p = self.p;
        // a = num·den / den², so √a = √(num·den) / den.
        let r = poly::sqrt(&poly::mul(&a.num, &a.den, p), p)?;
        Some(self.fraction(r, a.den.clone()))
    }

    fn square_class_rep(&self, a: &RatFn) -> Option<RatFn> {
        if a.num.is_empty() {
            return None;
        }
        let p = self.p;
        let (lc, factors) = poly::factor(&poly::mul(&a.num, &a.den, p), p);
        let mut rep = poly::constant(1, p);
        if p != 2 && poly::pow_mod(lc, (p - 1) / 2, p) != 1 {
            // Fixed non-residue: the smallest one.
            let g = (2..p).find(|&g| poly::pow_mod(g, (p - 1) / 2, p) != 1).expect("p odd");
            rep = poly::constant(g, p);
        }
        for (f, e) in factors {
            if e % 2 == 1 {
                rep = poly::mul(&rep, &f, p);
            }
        }
        Some(self.poly(rep))
    }

    fn in_wp(&self, a: &RatFn) -> Option<bool> {
        if self.p != 2 || !self.is_polynomial(a) {
            return None;
        }
        Some(self.wp_reduce_poly(&a.num).is_empty())
    }

    fn wp_rep(&self, a: &RatFn) -> Option<RatFn> {
        if self.p != 2 || !self.is_polynomial(a) {
            return None;
        }
        Some(self.poly(self.wp_reduce_poly(&a.num)))
    }

    /// Coordinates over K² in the basis 1, t: `a = c0² + t·c1²`.
    fn square_coords(&self, a: &RatFn) -> Option<Vec<RatFn>> {
        if self.p != 2 {
            return None;
        }
        let g = poly::mul(&a.num, &a.den, 2);
        let mut even: Poly = g.iter().step_by(2).copied().collect();
        let mut odd: Poly = g.iter().skip(1).step_by(2).copied().collect();
        poly::trim(&mut even);
        poly::trim(&mut odd);
        Some(vec![self.fraction(even, a.den.clone()), self.fraction(odd, a.den.clone())])
    }

    fn nonsquare(&self) -> Option<RatFn> {
        Some(self.poly(vec![0, 1]))
    }

    fn variable(&self) -> Option<(&'static str, RatFn)> {
        Some(("t", self.poly(vec![0, 1])))
    }

    fn params(&self) -> Vec<RatFn> {
        let mut out: Vec<RatFn> = Vec::new();
        for x in [
            self.zero(),
            self.one(),
            self.from_int(-1),
            self.poly(vec![0, 1]),
            self.poly(vec![1, 1]),
            self.fraction(vec![1], vec![0, 1]),
        ] {
            if !out.contains(&x) {
                out.push(x);
            }
        }
        out
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> RatFn {
        let p = self.p;
        let dn = rng.gen_range(0..=2);
        let num: Poly = (0..=dn).map(|_| rng.gen_range(0..p)).collect();
        let dd = rng.gen_range(0..=1);
        let mut den: Poly = (0..dd).map(|_| rng.gen_range(0..p)).collect();
        den.push(1);
        let mut num = num;
        poly::trim(&mut num);
        self.fraction(num, den)
    }

    fn format(&self, a: &RatFn) -> String {
        let n = self.format_poly(&a.num);
        if self.is_polynomial(a) {
            return n;
        }
        let d = self.format_poly(&a.den);
        let wrap = |s: String, poly: &Poly| {
            if poly.iter().filter(|&&c| c != 0).count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        format!("{}/{}", wrap(n, &a.num), wrap(d, &a.den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_is_not_a_square() {
        let f = FunctionField::new(2).unwrap();
        let t = f.parse("t").unwrap();
        assert!(!f.is_square(&t));
        assert!(f.is_square(&f.parse("t^2+1").unwrap()));
        assert!(f.is_square(&f.parse("1/(t^2)").unwrap()));
    }

    #[test]
    fn wp_membership_for_polynomials() {
        let f = FunctionField::new(2).unwrap();
        let y = f.parse("t^3+t+1").unwrap();
        let wp = f.add(&f.square(&y), &y);
        assert_eq!(f.in_wp(&wp), Some(true));
        assert_eq!(f.in_wp(&f.one()), Some(false));
        assert_eq!(f.in_wp(&f.parse("t").unwrap()), Some(false));
        assert_eq!(f.wp_rep(&f.parse("t^2").unwrap()), f.wp_rep(&f.parse("t").unwrap()));
        assert_eq!(f.in_wp(&f.parse("1/t").unwrap()), None);
    }

    #[test]
    fn square_coords_reassemble() {
        let f = FunctionField::new(2).unwrap();
        let t = f.parse("t").unwrap();
        for s in ["t^3+t^2+1", "(t+1)/(t^2+t+1)", "1/t", "t"] {
            let a = f.parse(s).unwrap();
            let c = f.square_coords(&a).unwrap();
            let back = f.add(&f.square(&c[0]), &f.mul(&t, &f.square(&c[1])));
            assert_eq!(back, a, "{s}");
        }
    }

    #[test]
    fn square_classes_odd_p() {
        let f = FunctionField::new(3).unwrap();
        let a = f.parse("2*t^3").unwrap();
        assert_eq!(f.square_class_rep(&a), Some(f.parse("2*t").unwrap()));
        let b = f.parse("(t+1)^2/t").unwrap();
        assert_eq!(f.square_class_rep(&b), Some(f.parse("t").unwrap()));
    }
}
