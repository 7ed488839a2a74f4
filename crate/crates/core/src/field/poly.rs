//! Dense univariate polynomials over a prime field GF(p).
//!
//! Coefficients are stored lowest degree first and always trimmed, so the
//! zero polynomial is the empty vector and structural equality is equality
//! of polynomials.

pub type Poly = Vec<u32>;

fn mulmod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub fn inv_mod(a: u32, p: u32) -> u32 {
    assert!(a % p != 0, "inverse of zero mod {p}");
    // p is prime, so a^(p-2) is the inverse.
    pow_mod(a, p - 2, p)
}

pub fn pow_mod(mut base: u32, mut exp: u32, p: u32) -> u32 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub fn trim(a: &mut Poly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub fn degree(a: &Poly) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

pub fn constant(c: u32, p: u32) -> Poly {
    let mut v = vec![c % p];
    trim(&mut v);
    v
}

pub fn add(a: &Poly, b: &Poly, p: u32) -> Poly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out.push((x + y) % p);
    }
    trim(&mut out);
    out
}

pub fn neg(a: &Poly, p: u32) -> Poly {
    a.iter().map(|&c| (p - c) % p).collect()
}

pub fn sub(a: &Poly, b: &Poly, p: u32) -> Poly {
    add(a, &neg(b, p), p)
}

pub fn scale(a: &Poly, c: u32, p: u32) -> Poly {
    let mut out: Poly = a.iter().map(|&x| mulmod(x, c, p)).collect();
    trim(&mut out);
    out
}

pub fn mul(a: &Poly, b: &Poly, p: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    let p64 = p as u64;
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p64;
        }
    }
    let mut out: Poly = out.into_iter().map(|c| c as u32).collect();
    trim(&mut out);
    out
}

/// Quotient and remainder of `a` by a nonzero `b`.
pub fn divrem(a: &Poly, b: &Poly, p: u32) -> (Poly, Poly) {
    let db = degree(b).expect("polynomial division by zero");
    let lead_inv = inv_mod(b[db], p);
    let mut r = a.clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![0u32; r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = mulmod(r[dr], lead_inv, p);
        let shift = dr - db;
        q[shift] = c;
        for (j, &bj) in b.iter().enumerate() {
            let t = mulmod(c, bj, p);
            r[shift + j] = (r[shift + j] + p - t) % p;
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub fn rem(a: &Poly, b: &Poly, p: u32) -> Poly {
    divrem(a, b, p).1
}

pub fn monic(a: &Poly, p: u32) -> Poly {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => scale(a, inv_mod(lc, p), p),
    }
}

/// Monic greatest common divisor (zero if both inputs are zero).
pub fn gcd(a: &Poly, b: &Poly, p: u32) -> Poly {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

pub fn pow(a: &Poly, mut e: u32, p: u32) -> Poly {
    let mut acc = constant(1, p);
    let mut base = a.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base, p);
        }
        base = mul(&base, &base, p);
        e >>= 1;
    }
    acc
}

/// The monic polynomial whose lower coefficients are the base-`p` digits of
/// `index` (lowest degree first), of exact degree `deg`.
pub fn monic_from_index(mut index: u64, deg: usize, p: u32) -> Poly {
    let mut out = Vec::with_capacity(deg + 1);
    for _ in 0..deg {
        out.push((index % p as u64) as u32);
        index /= p as u64;
    }
    out.push(1);
    out
}

/// Irreducibility by trial division with every monic polynomial of degree
/// at most half the degree. Intended for the small moduli used here.
pub fn is_irreducible(f: &Poly, p: u32) -> bool {
    let Some(n) = degree(f) else { return false };
    if n == 0 {
        return false;
    }
    for d in 1..=n / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let g = monic_from_index(idx, d, p);
            if rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Factorization of a nonzero polynomial into its leading coefficient and
/// monic irreducible factors with multiplicities, by trial division.
pub fn factor(f: &Poly, p: u32) -> (u32, Vec<(Poly, u32)>) {
    let n = degree(f).expect("factor of zero polynomial");
    let lc = f[n];
    let mut rest = monic(f, p);
    let mut out = Vec::new();
    let mut d = 1;
    while degree(&rest).unwrap_or(0) >= 2 * d {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let g = monic_from_index(idx, d, p);
            let mut e = 0;
            loop {
                let (q, r) = divrem(&rest, &g, p);
                if !r.is_empty() {
                    break;
                }
                rest = q;
                e += 1;
            }
            if e > 0 {
                out.push((g, e));
            }
        }
        d += 1;
    }
    if degree(&rest).unwrap_or(0) > 0 {
        out.push((rest, 1));
    }
    out.sort();
    (lc, out)
}

/// Exact square root of a polynomial, if it is a square in GF(p)[t].
pub fn sqrt(f: &Poly, p: u32) -> Option<Poly> {
    let Some(n) = degree(f) else { return Some(Vec::new()) };
    if n % 2 == 1 {
        return None;
    }
    if p == 2 {
        if f.iter().skip(1).step_by(2).any(|&c| c != 0) {
            return None;
        }
        return Some(f.iter().step_by(2).copied().collect());
    }
    let lc = f[n];
    let root_lc = (0..p).find(|&r| mulmod(r, r, p) == lc)?;
    // Match coefficients from the top: h = sum h_i t^i with deg h = n/2.
    let m = n / 2;
    let mut h = vec![0u32; m + 1];
    h[m] = root_lc;
    let two_h_inv = inv_mod(mulmod(2, root_lc, p), p);
    for k in (0..m).rev() {
        // Coefficient of t^(m + k) in h^2 must equal f[m + k].
        let mut acc = 0u64;
        for i in (k + 1)..=m {
            let j = m + k - i;
            if j <= m && j > k {
                acc += mulmod(h[i], h[j], p) as u64;
            }
        }
        let acc = (acc % p as u64) as u32;
        let target = (f[m + k] + p - acc) % p;
        h[k] = mulmod(target, two_h_inv, p);
    }
    trim(&mut h);
    if mul(&h, &h, p) == *f {
        Some(h)
    } else {
        None
    }
}

pub fn eval(f: &Poly, x: u32, p: u32) -> u32 {
    f.iter().rev().fold(0, |acc, &c| (mulmod(acc, x, p) + c) % p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_identity() {
        let p = 5;
        let a = vec![1, 2, 3, 4, 1];
        let b = vec![2, 0, 1];
        let (q, r) = divrem(&a, &b, p);
        assert_eq!(add(&mul(&q, &b, p), &r, p), a);
        assert!(degree(&r).map_or(true, |d| d < 2));
    }

    #[test]
    fn irreducibles_over_small_fields() {
        assert!(is_irreducible(&vec![1, 1, 1], 2));
        assert!(!is_irreducible(&vec![1, 0, 1], 2));
        assert!(is_irreducible(&vec![1, 0, 1], 3));
        assert!(is_irreducible(&vec![1, 1, 0, 0, 1], 2));
        assert!(!is_irreducible(&vec![1, 0, 1, 0, 1], 2));
    }

    #[test]
    fn factor_reassembles() {
        let p = 3;
        let f = mul(&mul(&vec![1, 1], &vec![1, 1], p), &vec![2, 0, 2], p);
        let (lc, fs) = factor(&f, p);
        let mut prod = constant(lc, p);
        for (g, e) in &fs {
            prod = mul(&prod, &pow(g, *e, p), p);
        }
        assert_eq!(prod, f);
        assert_eq!(lc, 2);
    }

    #[test]
    fn square_roots() {
        for p in [2u32, 3, 5, 7] {
            let h = vec![1, p - 1, 0, 2 % p];
            let mut h = h;
            trim(&mut h);
            let sq = mul(&h, &h, p);
            let r = sqrt(&sq, p).expect("square");
            assert_eq!(mul(&r, &r, p), sq);
        }
        assert_eq!(sqrt(&vec![0, 1], 3), None);
        assert_eq!(sqrt(&vec![2], 3), None);
    }
}
