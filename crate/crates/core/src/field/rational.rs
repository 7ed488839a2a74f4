//! The rational numbers, with square-class and prime-factor helpers.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use super::{Field, FieldError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

/// Trial division stops here; larger cofactors are handled by the
/// perfect-square test alone.
const TRIAL_BOUND: u64 = 1_000_000;

/// Prime factorization of a positive integer by trial division up to
/// [`TRIAL_BOUND`]. The second component is the unfactored cofactor (1 when
/// the factorization is complete); it has no prime factor below the bound.
pub fn factor_integer(n: &BigUint) -> (Vec<(BigUint, u32)>, BigUint) {
    let mut n = n.clone();
    let mut out = Vec::new();
    if n.is_zero() {
        return (out, n);
    }
    let mut d = 2u64;
    while d <= TRIAL_BOUND {
        let bd = BigUint::from(d);
        if &bd * &bd > n {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = n.div_rem(&bd);
            if !r.is_zero() {
                break;
            }
            n = q;
            e += 1;
        }
        if e > 0 {
            out.push((bd, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n.is_one() {
        return (out, n);
    }
    let bound = BigUint::from(TRIAL_BOUND);
    if &bound * &bound >= n {
        // Every composite below the square of the bound has a small factor.
        out.push((n, 1));
        return (out, BigUint::one());
    }
    (out, n)
}

/// Squarefree part of a positive integer, if it can be determined by
/// trial division: with no prime factors below the bound, a cofactor below
/// the cube of the bound has at most two prime factors, so it is either a
/// square or squarefree.
pub fn squarefree_part(n: &BigUint) -> Option<BigUint> {
    let (fs, rest) = factor_integer(n);
    let mut out = BigUint::one();
    for (p, e) in fs {
        if e % 2 == 1 {
            out *= p;
        }
    }
    if rest.is_one() {
        return Some(out);
    }
    let r = rest.sqrt();
    if &r * &r == rest {
        return Some(out);
    }
    let bound = BigUint::from(TRIAL_BOUND);
    if &bound * &bound * &bound > rest {
        return Some(out * rest);
    }
    None
}

fn is_square_uint(n: &BigUint) -> bool {
    let r = n.sqrt();
    &r * &r == *n
}

/// The squarefree integer representing the square class of a nonzero
/// rational, sign included.
pub fn rational_square_class(x: &BigRational) -> Option<BigInt> {
    if x.is_zero() {
        return None;
    }
    let n = x.numer().magnitude() * x.denom().magnitude();
    let s = squarefree_part(&n)?;
    let sign = if x.is_negative() { Sign::Minus } else { Sign::Plus };
    Some(BigInt::from_biguint(sign, s))
}

/// Whether a nonzero rational is a sum of two rational squares: positive,
/// and every prime ≡ 3 (mod 4) divides numerator·denominator to an even
/// power. `None` if the factorization is out of reach.
pub fn is_sum_of_two_squares(x: &BigRational) -> Option<bool> {
    if x.is_zero() {
        return Some(true);
    }
    if x.is_negative() {
        return Some(false);
    }
    let n = x.numer().magnitude() * x.denom().magnitude();
    let s = squarefree_part(&n)?;
    let (fs, rest) = factor_integer(&s);
    if !rest.is_one() {
        // rest is a squarefree product of at most two large primes.
        let four = BigUint::from(4u32);
        let three = BigUint::from(3u32);
        if rest.clone() % &four == three {
            return Some(false);
        }
        if is_probable_prime(&rest) {
            // A prime ≡ 1 mod 4 is harmless.
        } else {
            return None;
        }
    }
    for (p, _) in fs {
        if (p % 4u32) == BigUint::from(3u32) {
            return Some(false);
        }
    }
    Some(true)
}

fn is_probable_prime(n: &BigUint) -> bool {
    // Deterministic Miller-Rabin bases for n < 3.3·10^24.
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    let n_minus_1 = n - &one;
    let mut d = n_minus_1.clone();
    let mut s = 0;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let a = BigUint::from(a);
        if a >= *n {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Legendre symbol (a/p) for an odd prime p, as -1, 0 or 1.
pub fn legendre(a: &BigInt, p: &BigUint) -> i32 {
    let pi = BigInt::from(p.clone());
    let a = a.mod_floor(&pi).to_biguint().expect("nonnegative");
    if a.is_zero() {
        return 0;
    }
    let e = (p - 1u32) >> 1;
    let r = a.modpow(&e, p);
    if r.is_one() {
        1
    } else {
        -1
    }
}

/// Complete prime factorization, `None` when a large cofactor is composite
/// or out of reach.
pub fn prime_factors(n: &BigUint) -> Option<Vec<BigUint>> {
    let (fs, rest) = factor_integer(n);
    let mut out: Vec<BigUint> = fs.into_iter().map(|(p, _)| p).collect();
    if !rest.is_one() {
        if !is_probable_prime(&rest) {
            return None;
        }
        out.push(rest);
    }
    Some(out)
}

fn split_valuation(a: &BigInt, p: &BigUint) -> (u32, BigInt) {
    let pi = BigInt::from(p.clone());
    let mut u = a.clone();
    let mut e = 0;
    while (&u % &pi).is_zero() {
        u /= &pi;
        e += 1;
    }
    (e, u)
}

/// Hilbert symbol (a, b)_p of nonzero integers at the prime p, or at the
/// real place when `p` is `None`.
pub fn hilbert_symbol(a: &BigInt, b: &BigInt, p: Option<&BigUint>) -> i32 {
    let Some(p) = p else {
        return if a.is_negative() && b.is_negative() { -1 } else { 1 };
    };
    let (alpha, u) = split_valuation(a, p);
    let (beta, v) = split_valuation(b, p);
    if *p == BigUint::from(2u32) {
        let m8 = |x: &BigInt| x.mod_floor(&BigInt::from(8)).to_u32().expect("small");
        let eps = |x: u32| u32::from(x % 4 == 3);
        let omega = |x: u32| u32::from(x == 3 || x == 5);
        let (u8_, v8) = (m8(&u), m8(&v));
        let e = eps(u8_) * eps(v8) + alpha * omega(v8) + beta * omega(u8_);
        return if e % 2 == 0 { 1 } else { -1 };
    }
    let half = ((p - 1u32) >> 1u32).to_u64().map_or(1, |h| h % 2) as u32;
    let mut sign = if (alpha * beta * half) % 2 == 0 { 1 } else { -1 };
    if beta % 2 == 1 {
        sign *= legendre(&u, p);
    }
    if alpha % 2 == 1 {
        sign *= legendre(&v, p);
    }
    sign
}

fn integer_class(x: &BigRational) -> BigInt {
    x.numer() * x.denom()
}

/// Whether z² = ax² + by² has a nonzero rational solution, i.e. whether
/// the Hilbert symbol (a, b) is trivial at every place. `None` if a needed
/// factorization is out of reach.
pub fn hilbert_trivial(a: &BigRational, b: &BigRational) -> Option<bool> {
    let (a, b) = (integer_class(a), integer_class(b));
    if a.is_zero() || b.is_zero() {
        return Some(true);
    }
    if hilbert_symbol(&a, &b, None) == -1 {
        return Some(false);
    }
    let mut primes = prime_factors(&(a.magnitude() * b.magnitude()))?;
    let two = BigUint::from(2u32);
    if !primes.contains(&two) {
        primes.push(two);
    }
    Some(primes.iter().all(|p| hilbert_symbol(&a, &b, Some(p)) == 1))
}

/// Places where (a, b) is nontrivial: `None` stands for the real place.
/// Two quaternion algebras over ℚ are isomorphic iff these sets agree.
pub fn ramification(a: &BigRational, b: &BigRational) -> Option<Vec<Option<BigUint>>> {
    let (a, b) = (integer_class(a), integer_class(b));
    if a.is_zero() || b.is_zero() {
        return Some(Vec::new());
    }
    let mut out = Vec::new();
    if hilbert_symbol(&a, &b, None) == -1 {
        out.push(None);
    }
    let mut primes = prime_factors(&(a.magnitude() * b.magnitude()))?;
    let two = BigUint::from(2u32);
    if !primes.contains(&two) {
        primes.push(two);
    }
    primes.sort();
    out.extend(primes.into_iter().filter(|p| hilbert_symbol(&a, &b, Some(p)) == -1).map(Some));
    Some(out)
}

/// Isotropy of the diagonal ternary form ax² + by² + cz² (Hasse–Minkowski
/// via Hilbert symbols).
pub fn ternary_isotropic(a: &BigRational, b: &BigRational, c: &BigRational) -> Option<bool> {
    if a.is_zero() || b.is_zero() || c.is_zero() {
        return Some(true);
    }
    // ⟨a, b, c⟩ ≃ a⟨1, b/a, c/a⟩, isotropic iff (−b/a, −c/a) is trivial.
    hilbert_trivial(&(-(b / a)), &(-(c / a)))
}

impl Field for Rationals {
    type Elem = BigRational;

    fn name(&self) -> String {
        "q".into()
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn from_int(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_decimal(&self, digits: &str) -> BigRational {
        BigRational::from_integer(digits.parse::<BigInt>().expect("decimal digits"))
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn order(&self) -> Option<u64> {
        None
    }

    fn is_perfect(&self) -> bool {
        true
    }

    fn is_square(&self, a: &BigRational) -> bool {
        !a.is_negative() && is_square_uint(a.numer().magnitude()) && is_square_uint(a.denom().magnitude())
    }

    fn sqrt(&self, a: &BigRational) -> Option<BigRational> {
        if !self.is_square(a) {
            return None;
        }
        Some(BigRational::new(
            BigInt::from(a.numer().magnitude().sqrt()),
            BigInt::from(a.denom().magnitude().sqrt()),
        ))
    }

    fn square_class_rep(&self, a: &BigRational) -> Option<BigRational> {
        rational_square_class(a).map(BigRational::from_integer)
    }

    fn in_wp(&self, _a: &BigRational) -> Option<bool> {
        None
    }

    fn wp_rep(&self, _a: &BigRational) -> Option<BigRational> {
        None
    }

    fn square_coords(&self, _a: &BigRational) -> Option<Vec<BigRational>> {
        None
    }

    fn nonsquare(&self) -> Option<BigRational> {
        Some(self.from_int(-1))
    }

    fn params(&self) -> Vec<BigRational> {
        [0, 1, -1, 2, -2, 3].iter().map(|&n| self.from_int(n)).collect()
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        let n: i64 = rng.gen_range(-10..=10);
        let d: i64 = rng.gen_range(1..=6);
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn format(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn parse(&self, s: &str) -> Result<BigRational, FieldError> {
        super::expr::parse(self, s)
    }

    fn as_rational(&self, a: &BigRational) -> Option<BigRational> {
        Some(a.clone())
    }
}

/// Small rationals as machine integers, when they are integers.
pub fn to_i64(x: &BigRational) -> Option<i64> {
    if x.denom().is_one() {
        x.numer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn squares() {
        let f = Rationals;
        assert!(f.is_square(&q(4, 9)));
        assert!(!f.is_square(&q(-4, 9)));
        assert!(!f.is_square(&q(2, 1)));
        assert_eq!(f.sqrt(&q(4, 9)), Some(q(2, 3)));
    }

    #[test]
    fn square_class_is_squarefree_integer() {
        let f = Rationals;
        assert_eq!(f.square_class_rep(&q(12, 5)), Some(q(15, 1)));
        assert_eq!(f.square_class_rep(&q(-8, 9)), Some(q(-2, 1)));
        assert_eq!(f.square_class_rep(&q(1, 4)), Some(q(1, 1)));
    }

    #[test]
    fn two_squares() {
        assert_eq!(is_sum_of_two_squares(&q(2, 1)), Some(true));
        assert_eq!(is_sum_of_two_squares(&q(3, 1)), Some(false));
        assert_eq!(is_sum_of_two_squares(&q(9, 1)), Some(true));
        assert_eq!(is_sum_of_two_squares(&q(5, 3)), Some(false));
        assert_eq!(is_sum_of_two_squares(&q(-5, 1)), Some(false));
        assert_eq!(is_sum_of_two_squares(&q(25, 13)), Some(true));
    }

    #[test]
    fn large_cofactors() {
        // 1000003 is prime and above the trial bound.
        let p = BigUint::from(1_000_003u64);
        assert_eq!(squarefree_part(&(&p * &p * 6u32)), Some(BigUint::from(6u32)));
        assert_eq!(squarefree_part(&(&p * 6u32)), Some(&p * 6u32));
    }

    #[test]
    fn hilbert_symbols() {
        let z = |n: i64| BigInt::from(n);
        let p = |n: u32| BigUint::from(n);
        assert_eq!(hilbert_symbol(&z(-1), &z(-1), None), -1);
        assert_eq!(hilbert_symbol(&z(-1), &z(-1), Some(&p(2))), -1);
        assert_eq!(hilbert_symbol(&z(-1), &z(-1), Some(&p(3))), 1);
        assert_eq!(hilbert_symbol(&z(2), &z(3), Some(&p(3))), -1);
        assert_eq!(hilbert_symbol(&z(5), &z(7), Some(&p(7))), -1);
        assert_eq!(hilbert_trivial(&q(-1, 1), &q(-1, 1)), Some(false));
        assert_eq!(hilbert_trivial(&q(1, 1), &q(1, 1)), Some(true));
        assert_eq!(hilbert_trivial(&q(2, 1), &q(-1, 1)), Some(true));
        assert_eq!(hilbert_trivial(&q(3, 1), &q(-1, 1)), Some(false));
    }

    #[test]
    fn ternary_isotropy_matches_search() {
        for a in [1i64, -1, 2, -3, 5, 6] {
            for b in [1i64, -1, 3, -2, 7] {
                for c in [-1i64, 1, -5, 2, -6, 10] {
                    let mut found = false;
                    'outer: for x in -12i64..=12 {
                        for y in -12i64..=12 {
                            for w in 0i64..=12 {
                                if (x, y, w) != (0, 0, 0) && a * x * x + b * y * y + c * w * w == 0 {
                                    found = true;
                                    break 'outer;
                                }
                            }
                        }
                    }
                    let exact = ternary_isotropic(&q(a, 1), &q(b, 1), &q(c, 1)).unwrap();
                    if found {
                        assert!(exact, "{a} {b} {c}");
                    }
                    if !exact {
                        assert!(!found);
                    }
                }
            }
        }
        assert_eq!(ternary_isotropic(&q(1, 1), &q(1, 1), &q(-3, 1)), Some(false));
        assert_eq!(ternary_isotropic(&q(1, 1), &q(1, 1), &q(-2, 1)), Some(true));
    }
}
