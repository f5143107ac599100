//! Dense ordinary polynomials over Z, lowest degree first. Only what fraction
//! reduction needs: exact division, pseudo-remainders and primitive gcd.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) fn trim(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub(crate) fn primitive_part(p: &[BigInt]) -> Vec<BigInt> {
    let mut c = content(p);
    if c.is_zero() {
        return Vec::new();
    }
    if p.last().is_some_and(|l| l.is_negative()) {
        c = -c;
    }
    p.iter().map(|x| x / &c).collect()
}

/// `n / d` when the division is exact over Z.
pub(crate) fn div_exact(n: &[BigInt], d: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut r: Vec<BigInt> = n.to_vec();
    trim(&mut r);
    let mut d: Vec<BigInt> = d.to_vec();
    trim(&mut d);
    let lead = d.last()?.clone();
    if r.is_empty() {
        return Some(Vec::new());
    }
    if r.len() < d.len() {
        return None;
    }
    let mut q = alloc::vec![BigInt::zero(); r.len() - d.len() + 1];
    for i in (0..q.len()).rev() {
        let top = &r[i + d.len() - 1];
        if top.is_zero() {
            continue;
        }
        let (qi, rem) = top.div_rem(&lead);
        if !rem.is_zero() {
            return None;
        }
        for (j, dj) in d.iter().enumerate() {
            r[i + j] -= &qi * dj;
        }
        q[i] = qi;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return None;
    }
    trim(&mut q);
    Some(q)
}

/// Pseudo-remainder of `a` by `b`: `lc(b)^(deg a - deg b + 1) a mod b`.
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let lead = b.last().unwrap().clone();
    let db = b.len() - 1;
    while r.len() > db && !r.is_empty() {
        let top = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c *= &lead;
        }
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &top * bj;
        }
        trim(&mut r);
    }
    r
}

/// Primitive gcd of two polynomials (the gcd over Q, scaled to a primitive
/// integer polynomial with positive leading coefficient).
pub(crate) fn gcd_primitive(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut a = primitive_part(a);
    let mut b = primitive_part(b);
    if a.is_empty() {
        return b;
    }
    if b.is_empty() {
        return a;
    }
    if a.len() < b.len() {
        core::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = prem(&a, &b);
        a = b;
        b = primitive_part(&r);
    }
    a
}

pub(crate) fn is_unit(p: &[BigInt]) -> bool {
    p.len() == 1 && p[0].abs().is_one()
}

/// Formal derivative.
pub(crate) fn derivative(p: &[BigInt]) -> Vec<BigInt> {
    p.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect()
}

const MOD_P: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MOD_P as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn reduce_mod(p: &[BigInt]) -> Vec<u64> {
    let m = BigInt::from(MOD_P);
    let mut out: Vec<u64> = p
        .iter()
        .map(|c| {
            let r = c.mod_floor(&m);
            r.iter_u64_digits().next().unwrap_or(0)
        })
        .collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// Degree of `gcd(a, b)` over `Z / (2^61 - 1)`.
fn gcd_degree_mod(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    while !b.is_empty() {
        let inv = powmod(*b.last().unwrap(), MOD_P - 2);
        while a.len() >= b.len() {
            let f = mulmod(*a.last().unwrap(), inv);
            let shift = a.len() - b.len();
            for (j, &bj) in b.iter().enumerate() {
                let t = mulmod(f, bj);
                a[shift + j] = (a[shift + j] + MOD_P - t) % MOD_P;
            }
            while a.last() == Some(&0) {
                a.pop();
            }
        }
        core::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Cheap certificate that `p` has no repeated factor: true when
/// `gcd(p, p')` is constant modulo a large prime that keeps the degree.
/// A false answer is inconclusive.
pub(crate) fn certainly_squarefree(p: &[BigInt]) -> bool {
    let pm = reduce_mod(p);
    if pm.len() != p.len() {
        return false;
    }
    gcd_degree_mod(pm, reduce_mod(&derivative(p))) == 0
}

/// Squarefree decomposition `p = c * prod f_i^i`, returned as the non-constant
/// primitive factors `(f_i, i)`.
pub(crate) fn squarefree_decomposition(p: &[BigInt]) -> Vec<(Vec<BigInt>, u32)> {
    let a = primitive_part(p);
    if a.len() <= 1 {
        return Vec::new();
    }
    if certainly_squarefree(&a) {
        return alloc::vec![(a, 1)];
    }
    let mut out = Vec::new();
    let mut b = gcd_primitive(&a, &derivative(&a));
    let mut c = primitive_part(&div_exact(&a, &b).expect("gcd divides"));
    let mut i = 1;
    while c.len() > 1 {
        let y = gcd_primitive(&c, &b);
        let z = primitive_part(&div_exact(&c, &y).expect("gcd divides"));
        if z.len() > 1 {
            out.push((z, i));
        }
        i += 1;
        b = primitive_part(&div_exact(&b, &y).expect("gcd divides"));
        c = y;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> Vec<BigInt> {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (x+1)(x+2) and (x+1)(x-3)
        let g = gcd_primitive(&v(&[2, 3, 1]), &v(&[-3, -2, 1]));
        assert_eq!(g, v(&[1, 1]));
    }

    #[test]
    fn gcd_ignores_content() {
        let g = gcd_primitive(&v(&[4, 4]), &v(&[6, 6]));
        assert_eq!(g, v(&[1, 1]));
    }

    #[test]
    fn coprime_gives_unit() {
        assert!(is_unit(&gcd_primitive(&v(&[1, 1]), &v(&[1, 0, 1]))));
    }

    #[test]
    fn division_rejects_non_integral_quotient() {
        assert_eq!(div_exact(&v(&[1, 1]), &v(&[1, 2])), None);
        assert_eq!(div_exact(&v(&[2, 4]), &v(&[1, 2])), Some(v(&[2])));
    }

    #[test]
    fn squarefree_split() {
        // (x - 1)^2 (x + 2) = x^3 - 3x + 2
        let p = v(&[2, -3, 0, 1]);
        assert!(!certainly_squarefree(&p));
        let parts = squarefree_decomposition(&p);
        assert_eq!(parts, alloc::vec![(v(&[2, 1]), 1), (v(&[-1, 1]), 2)]);
        let q = v(&[1, 1, 1]);
        assert!(certainly_squarefree(&q));
        assert_eq!(squarefree_decomposition(&q), alloc::vec![(q, 1)]);
    }
}
