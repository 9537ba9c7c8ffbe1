//! Modular gcd of univariate polynomials with rational coefficients.
//!
//! The gcd is computed modulo word-sized primes, lifted by Chinese
//! remaindering and accepted once it divides both inputs over Z.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Monic gcd of two nonzero polynomials, lowest coefficient first.
pub fn gcd_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let (a, b) = (primitive(a), primitive(b));
    let gamma = a.last().unwrap().gcd(b.last().unwrap());
    let mut best: Option<usize> = None;
    let mut acc: Vec<BigInt> = vec![];
    let mut modulus = BigInt::one();
    let mut last: Option<Vec<BigInt>> = None;
    for p in primes() {
        let bp = BigInt::from(p);
        if (a.last().unwrap() % &bp).is_zero() || (b.last().unwrap() % &bp).is_zero() {
            continue;
        }
        let mut g = gcd_mod(&reduce(&a, p), &reduce(&b, p), p);
        let d = g.len() - 1;
        if d == 0 {
            return vec![BigRational::one()];
        }
        match best {
            Some(k) if d > k => continue,
            Some(k) if d == k => {}
            _ => {
                best = Some(d);
                acc = vec![BigInt::zero(); d + 1];
                modulus = BigInt::one();
                last = None;
            }
        }
        let gm = (gamma.mod_floor(&bp)).to_u64().unwrap();
        for c in g.iter_mut() {
            *c = mulmod(*c, gm, p);
        }
        acc = crt(&acc, &modulus, &g, p);
        modulus *= &bp;
        let half = &modulus >> 1;
        let cand: Vec<BigInt> = acc.iter().map(|c| if c > &half { c - &modulus } else { c.clone() }).collect();
        if last.as_ref() == Some(&cand) {
            let h = primitive_z(&cand);
            if divides(&h, &a) && divides(&h, &b) {
                let lc = BigRational::from_integer(h.last().unwrap().clone());
                return h.into_iter().map(|c| BigRational::from_integer(c) / &lc).collect();
            }
        }
        last = Some(cand);
    }
    unreachable!("prime supply exhausted")
}

/// Integer primitive part with positive leading coefficient.
fn primitive(a: &[BigRational]) -> Vec<BigInt> {
    let l = a.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let z: Vec<BigInt> = a.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
    primitive_z(&z)
}

fn primitive_z(z: &[BigInt]) -> Vec<BigInt> {
    let mut g = z.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if z.last().unwrap().is_negative() {
        g = -g;
    }
    z.iter().map(|c| c / &g).collect()
}

/// Whether `h` divides `a` in Z[x], for primitive `h`.
fn divides(h: &[BigInt], a: &[BigInt]) -> bool {
    if h.len() > a.len() {
        return false;
    }
    let mut r = a.to_vec();
    let lh = h.last().unwrap();
    for k in (0..=a.len() - h.len()).rev() {
        let top = &r[k + h.len() - 1];
        if top.is_zero() {
            continue;
        }
        let (q, rem) = top.div_rem(lh);
        if !rem.is_zero() {
            return false;
        }
        for (j, c) in h.iter().enumerate() {
            r[k + j] -= &q * c;
        }
    }
    r.iter().all(|c| c.is_zero())
}

fn reduce(a: &[BigInt], p: u64) -> Vec<u64> {
    let bp = BigInt::from(p);
    a.iter().map(|c| c.mod_floor(&bp).to_u64().unwrap()).collect()
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// Monic gcd in F_p[x]; the inputs have nonzero leading coefficients.
fn gcd_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    while !b.is_empty() {
        let ib = inv(*b.last().unwrap(), p);
        while a.len() >= b.len() {
            let c = mulmod(*a.last().unwrap(), ib, p);
            let k = a.len() - b.len();
            for (j, y) in b.iter().enumerate() {
                a[k + j] = (a[k + j] + p - mulmod(c, *y, p)) % p;
            }
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    let il = inv(*a.last().unwrap(), p);
    a.iter().map(|c| mulmod(*c, il, p)).collect()
}

/// Combines residues modulo `m` with residues modulo the prime `p`.
fn crt(acc: &[BigInt], m: &BigInt, g: &[u64], p: u64) -> Vec<BigInt> {
    let bp = BigInt::from(p);
    let mi = inv(m.mod_floor(&bp).to_u64().unwrap(), p);
    acc.iter()
        .zip(g)
        .map(|(a, r)| {
            let am = a.mod_floor(&bp).to_u64().unwrap();
            let t = mulmod((*r + p - am) % p, mi, p);
            a + m * BigInt::from(t)
        })
        .collect()
}

fn is_prime(n: u64) -> bool {
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Primes below 2^31 in decreasing order.
fn primes() -> impl Iterator<Item = u64> {
    (1u64..(1 << 30)).map(|k| (1u64 << 31) - 2 * k + 1).filter(|&n| is_prime(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&c| BigRational::from_integer(c.into())).collect()
    }

    #[test]
    fn common_factor_is_recovered() {
        // (x + 2)(x - 3) and (x + 2)(2x + 5)
        let g = gcd_q(&q(&[-6, -1, 1]), &q(&[10, 9, 2]));
        assert_eq!(g, q(&[2, 1]));
        assert_eq!(gcd_q(&q(&[1, 0, 1]), &q(&[-1, 1])), q(&[1]));
    }
}
