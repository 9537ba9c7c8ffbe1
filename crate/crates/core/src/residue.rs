//! Residue bookkeeping: integer residues of simple poles, interpolation and
//! integer roots of univariate polynomials over Q(i).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::elem::{resultant, Elem, Poly};
use crate::num::Gq;
use crate::tower::Tower;

/// Newton interpolation through `(x_k, y_k)`.
pub fn interpolate(points: &[(Elem, Elem)]) -> Poly {
    let n = points.len();
    let mut coef: Vec<Elem> = points.iter().map(|p| p.1.clone()).collect();
    for j in 1..n {
        for k in (j..n).rev() {
            let num = &coef[k] - &coef[k - 1];
            let den = &points[k].0 - &points[k - j].0;
            coef[k] = &num / &den;
        }
    }
    let mut p = Poly::constant(coef[n - 1].clone());
    for k in (0..n - 1).rev() {
        let lin = Poly::new(vec![-&points[k].0, Elem::one()]);
        p = p.mul(&lin).add(&Poly::constant(coef[k].clone()));
    }
    p
}

/// Integer roots of a polynomial with numeric coefficients.
pub fn integer_roots(p: &Poly) -> Vec<i64> {
    if p.is_zero() {
        return vec![];
    }
    let mut parts = Vec::new();
    for take_im in [false, true] {
        let coeffs: Vec<num_rational::BigRational> = p
            .coeffs()
            .iter()
            .map(|c| {
                let q = c.as_num().expect("numeric polynomial");
                if take_im {
                    q.im.clone()
                } else {
                    q.re.clone()
                }
            })
            .collect();
        if coeffs.iter().any(|c| !c.is_zero()) {
            parts.push(coeffs);
        }
    }
    let base = &parts[0];
    let l = base.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = base.iter().map(|c| (c * num_rational::BigRational::from_integer(l.clone())).to_integer()).collect();
    while ints.last().map_or(false, |c| c.is_zero()) {
        ints.pop();
    }
    let mut out = Vec::new();
    let k = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if k > 0 {
        out.push(0);
        ints.drain(..k);
    }
    if ints.len() > 1 {
        for z in candidate_divisors(&ints) {
            for s in [z, -z] {
                if eval_int(&ints, s).is_zero() {
                    out.push(s);
                }
            }
        }
    }
    out.retain(|&z| {
        p.eval(&Elem::int(z)).is_zero()
    });
    out.sort();
    out.dedup();
    out
}

fn eval_int(c: &[BigInt], z: i64) -> BigInt {
    let z = BigInt::from(z);
    c.iter().rev().fold(BigInt::zero(), |acc, x| acc * &z + x)
}

fn candidate_divisors(c: &[BigInt]) -> Vec<i64> {
    let a0 = c[0].abs();
    let an = c.last().unwrap().abs();
    let bound = c.iter().map(|x| (x.abs() / &an) + 1u32).max().unwrap() + 1u32;
    let bound = bound.to_i64().unwrap_or(i64::MAX);
    if bound <= 200_000 {
        return (1..=bound).filter(|&z| (&a0 % BigInt::from(z)).is_zero()).collect();
    }
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut n = a0.clone();
    let mut p = BigInt::from(2);
    while &p * &p <= n && p < BigInt::from(1_000_000) {
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            primes.push((p.clone(), e));
        }
        p += 1;
    }
    if n > BigInt::one() {
        primes.push((n, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::new();
        for d in &divs {
            let mut x = d.clone();
            for _ in 0..=e {
                next.push(x.clone());
                x *= &p;
            }
        }
        divs = next;
    }
    divs.into_iter().filter_map(|d| d.to_i64()).filter(|&d| d <= bound).collect()
}

/// Specialises every variable below `t_level` at a sample point.
fn specialize(p: &Poly, pt: &[Gq]) -> Option<Poly> {
    let mut c = Vec::new();
    for x in p.coeffs() {
        c.push(Elem::Num(x.eval(pt)?));
    }
    Some(Poly::new(c))
}

/// Integers `z` with `gcd(num - z * dp, d) != 1`, where `d` is squarefree
/// and monic in `t_level`. The roots of the resultant
/// `res_t(d, num - z dp)` are located on a specialisation of the lower
/// variables and each candidate is confirmed by an exact gcd.
pub fn integer_residues(tower: &Tower, num: &Poly, dp: &Poly, d: &Poly) -> Vec<i64> {
    if d.degi() <= 0 {
        return vec![];
    }
    let n = d.degi() as i64;
    for seed in 1..40u64 {
        let pt = tower.sample_point(seed);
        let (sn, sdp, sd) = match (specialize(num, &pt), specialize(dp, &pt), specialize(d, &pt)) {
            (Some(a), Some(b), Some(c)) => (a, b, c),
            _ => continue,
        };
        let pts: Vec<(Elem, Elem)> = (0..=n)
            .map(|z| {
                let ze = Elem::int(z);
                (ze.clone(), resultant(&sd, &sn.sub(&sdp.scale(&ze))))
            })
            .collect();
        let r = interpolate(&pts);
        if r.is_zero() {
            continue;
        }
        return integer_roots(&r)
            .into_iter()
            .filter(|&z| {
                let g = Poly::gcd(&num.sub(&dp.scale(&Elem::int(z))), d);
                g.degi() > 0
            })
            .collect();
    }
    vec![]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = Poly::new(vec![Elem::int(3), Elem::int(-1), Elem::ratio(1, 2)]);
        let pts: Vec<_> = (0..3).map(|z| (Elem::int(z), p.eval(&Elem::int(z)))).collect();
        assert_eq!(interpolate(&pts), p);
    }

    #[test]
    fn integer_roots_of_product() {
        let lin = |a: i64| Poly::new(vec![Elem::int(-a), Elem::one()]);
        let p = lin(3).mul(&lin(-7)).mul(&Poly::new(vec![Elem::ratio(1, 3), Elem::int(2)]));
        assert_eq!(integer_roots(&p), vec![-7, 3]);
    }
}
