//! Sparse multivariate polynomials over Z and a heuristic gcd for them.
//!
//! Polynomials over the recursive fraction field are cleared of
//! denominators, the gcd is computed over Z by evaluating all but one
//! variable at large integers and reading the result back off in the
//! corresponding radix, and every answer is confirmed by exact division.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::elem::{Elem, Poly};

/// Exponent vectors of a fixed length, ordered lexicographically.
type Mono = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZPoly {
    nv: usize,
    t: BTreeMap<Mono, BigInt>,
}

/// Upper bound on `bits(xi) * degree` before the heuristic gives up.
const BIT_LIMIT: u64 = 1 << 20;

impl ZPoly {
    fn zero(nv: usize) -> ZPoly {
        ZPoly { nv, t: BTreeMap::new() }
    }

    fn constant(nv: usize, c: BigInt) -> ZPoly {
        let mut p = ZPoly::zero(nv);
        if !c.is_zero() {
            p.t.insert(vec![0; nv], c);
        }
        p
    }

    fn is_zero(&self) -> bool {
        self.t.is_empty()
    }

    fn is_one(&self) -> bool {
        self.t.len() == 1 && self.t.iter().all(|(m, c)| c.is_one() && m.iter().all(|&e| e == 0))
    }

    fn add_term(&mut self, m: Mono, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.t.entry(m) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    fn add(&self, o: &ZPoly) -> ZPoly {
        let mut out = self.clone();
        for (m, c) in &o.t {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    fn sub(&self, o: &ZPoly) -> ZPoly {
        let mut out = self.clone();
        for (m, c) in &o.t {
            out.add_term(m.clone(), -c);
        }
        out
    }

    fn mul(&self, o: &ZPoly) -> ZPoly {
        let mut out = ZPoly::zero(self.nv);
        for (m, c) in &self.t {
            for (n, d) in &o.t {
                let mn: Mono = m.iter().zip(n).map(|(a, b)| a + b).collect();
                out.add_term(mn, c * d);
            }
        }
        out
    }

    fn scale(&self, s: &BigInt) -> ZPoly {
        if s.is_zero() {
            return ZPoly::zero(self.nv);
        }
        ZPoly { nv: self.nv, t: self.t.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    /// Multiplies by `x_v^k`.
    fn shift(&self, v: usize, k: u32) -> ZPoly {
        ZPoly {
            nv: self.nv,
            t: self
                .t
                .iter()
                .map(|(m, c)| {
                    let mut m = m.clone();
                    m[v] += k;
                    (m, c.clone())
                })
                .collect(),
        }
    }

    fn lead(&self) -> (&Mono, &BigInt) {
        self.t.iter().next_back().expect("leading term of zero")
    }

    /// Integer content, signed so that the primitive part has a positive
    /// leading coefficient.
    fn icont(&self) -> BigInt {
        let g = self.t.values().fold(BigInt::zero(), |g, c| g.gcd(c));
        if self.lead().1.is_negative() {
            -g
        } else {
            g
        }
    }

    fn div_int(&self, d: &BigInt) -> ZPoly {
        ZPoly { nv: self.nv, t: self.t.iter().map(|(m, c)| (m.clone(), c / d)).collect() }
    }

    fn primitive(&self) -> ZPoly {
        self.div_int(&self.icont())
    }

    fn max_norm(&self) -> BigInt {
        self.t.values().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero)
    }

    fn deg(&self, v: usize) -> u32 {
        self.t.keys().map(|m| m[v]).max().unwrap_or(0)
    }

    fn vars(&self) -> Vec<usize> {
        (0..self.nv).filter(|&v| self.t.keys().any(|m| m[v] > 0)).collect()
    }

    fn eval(&self, v: usize, x: &BigInt) -> ZPoly {
        let mut pows = vec![BigInt::one()];
        for _ in 0..self.deg(v) {
            let next = pows.last().unwrap() * x;
            pows.push(next);
        }
        let mut out = ZPoly::zero(self.nv);
        for (m, c) in &self.t {
            let mut m2 = m.clone();
            m2[v] = 0;
            out.add_term(m2, c * &pows[m[v] as usize]);
        }
        out
    }

    /// Exact quotient `self / d`, `None` when `d` does not divide `self`.
    fn div_exact(&self, d: &ZPoly) -> Option<ZPoly> {
        if self.is_zero() {
            return Some(ZPoly::zero(self.nv));
        }
        let bound: Vec<u32> = (0..self.nv).map(|v| self.deg(v)).collect();
        let dbound: Vec<u32> = (0..self.nv).map(|v| d.deg(v)).collect();
        if bound.iter().zip(&dbound).any(|(a, b)| a < b) || !self.divisible_mod(d) {
            return None;
        }
        let (dm, dc) = d.lead();
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut r = self.clone();
        let mut q = ZPoly::zero(self.nv);
        while let Some((rm, rc)) = r.t.iter().next_back() {
            if rm.iter().zip(&dm).any(|(a, b)| a < b) {
                return None;
            }
            let (qc, rem) = rc.div_rem(&dc);
            if !rem.is_zero() {
                return None;
            }
            let qm: Mono = rm.iter().zip(&dm).map(|(a, b)| a - b).collect();
            if qm.iter().zip(bound.iter().zip(&dbound)).any(|(e, (a, b))| *e > a - b) {
                return None;
            }
            for (m, c) in &d.t {
                let mq: Mono = m.iter().zip(&qm).map(|(a, b)| a + b).collect();
                r.add_term(mq, -(&qc * c));
            }
            q.add_term(qm, qc);
        }
        Some(q)
    }

    /// Necessary condition for `d | self`: divisibility of the images in
    /// `F_p[x_w]` after substituting integers for the other variables, for
    /// each variable `w` of `d`.
    fn divisible_mod(&self, d: &ZPoly) -> bool {
        const P: u64 = 2_147_483_629;
        let pt: Vec<u64> = (0..self.nv as u64).map(|k| 1_000_003 * (k + 7) % P).collect();
        let image = |p: &ZPoly, w: usize| -> Vec<u64> {
            let mut out = vec![0u64; p.deg(w) as usize + 1];
            for (m, c) in &p.t {
                let mut x = c.mod_floor(&BigInt::from(P)).to_u64().unwrap();
                for (v, &e) in m.iter().enumerate() {
                    if v != w {
                        x = mulmod(x, powmod(pt[v], e as u64, P), P);
                    }
                }
                let k = m[w] as usize;
                out[k] = (out[k] + x) % P;
            }
            out
        };
        for w in d.vars() {
            let (a, b) = (image(self, w), image(d, w));
            if b.last() == Some(&0) {
                continue;
            }
            if !rem_mod(a, &b, P).iter().all(|&c| c == 0) {
                return false;
            }
        }
        true
    }
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

/// Remainder of `a` by `b` in `F_p[x]`, `b` with nonzero leading coefficient.
fn rem_mod(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    let ib = powmod(*b.last().unwrap(), p - 2, p);
    while a.len() >= b.len() {
        let c = mulmod(*a.last().unwrap(), ib, p);
        let k = a.len() - b.len();
        for (j, y) in b.iter().enumerate() {
            a[k + j] = (a[k + j] + p - mulmod(c, *y, p)) % p;
        }
        a.pop();
    }
    a
}

/// Numerator and denominator of `e` over Z, `None` when a coefficient is not real.
fn to_zfrac(e: &Elem, nv: usize) -> Option<(ZPoly, ZPoly)> {
    match e {
        Elem::Num(q) => {
            if !q.is_real() {
                return None;
            }
            Some((ZPoly::constant(nv, q.re.numer().clone()), ZPoly::constant(nv, q.re.denom().clone())))
        }
        Elem::Frac(f) => {
            let (n, ln) = clear(&f.num, f.var, nv)?;
            let (d, ld) = clear(&f.den, f.var, nv)?;
            Some((n.mul(&ld), d.mul(&ln)))
        }
    }
}

/// `p` in variable `v` written as `N / L` with `N, L` over Z.
fn clear(p: &Poly, v: usize, nv: usize) -> Option<(ZPoly, ZPoly)> {
    let parts: Vec<(ZPoly, ZPoly)> = p.coeffs().iter().map(|c| to_zfrac(c, nv)).collect::<Option<_>>()?;
    let mut lint = BigInt::one();
    let mut prims: Vec<ZPoly> = vec![];
    let mut split = vec![];
    for (_, d) in &parts {
        let c = d.icont();
        let pp = d.div_int(&c);
        lint = lint.lcm(&c);
        let k = match prims.iter().position(|q| q == &pp) {
            Some(k) => k,
            None => {
                prims.push(pp);
                prims.len() - 1
            }
        };
        split.push((c, k));
    }
    let mut num = ZPoly::zero(nv);
    for (j, ((n, _), (c, k))) in parts.iter().zip(&split).enumerate() {
        if n.is_zero() {
            continue;
        }
        let mut term = n.scale(&(&lint / c));
        for (i, q) in prims.iter().enumerate() {
            if i != *k {
                term = term.mul(q);
            }
        }
        num = num.add(&term.shift(v, j as u32));
    }
    let den = prims.iter().fold(ZPoly::constant(nv, lint), |a, q| a.mul(q));
    Some((num, den))
}

fn to_elem(p: &ZPoly, upto: usize) -> Elem {
    let mut out = Elem::zero();
    for (m, c) in &p.t {
        let mut term = Elem::Num(crate::num::Gq::from_big(c.clone()));
        for (v, &e) in m.iter().enumerate().take(upto) {
            if e > 0 {
                term = &term * &Elem::var_elem(v).pow(e as i64);
            }
        }
        out = &out + &term;
    }
    out
}

/// Monic gcd over the coefficient field of two polynomials in a variable
/// above all coefficient variables, `None` when the heuristic fails.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Option<Poly> {
    let main = a.coeffs().iter().chain(b.coeffs()).filter_map(|c| c.var()).max()? + 1;
    let nv = main + 1;
    let za = clear(a, main, nv)?.0;
    let zb = clear(b, main, nv)?.0;
    let g = heu_gcd(&za, &zb, 0)?;
    let mut coeffs = vec![ZPoly::zero(nv); g.deg(main) as usize + 1];
    for (m, c) in &g.t {
        let mut m2 = m.clone();
        m2[main] = 0;
        coeffs[m[main] as usize].add_term(m2, c.clone());
    }
    Some(Poly::new(coeffs.iter().map(|c| to_elem(c, main)).collect()).monic())
}

/// Inverse of `c` modulo `v` over the coefficient field, from the Sylvester
/// system `s c + w v = 1` solved by fraction-free elimination. The outer
/// `None` means the coefficients are out of reach; the inner one that `c`
/// is not invertible.
pub fn inv_mod(c: &Poly, v: &Poly) -> Option<Option<Poly>> {
    let main = c.coeffs().iter().chain(v.coeffs()).filter_map(|x| x.var()).max()? + 1;
    let nv = main + 1;
    if c.is_zero() {
        return Some(None);
    }
    let (cz, lc) = clear(c, main, nv)?;
    let vz = clear(v, main, nv)?.0;
    let (m, n) = (cz.deg(main) as usize, vz.deg(main) as usize);
    if n == 0 {
        return None;
    }
    let coeffs = |p: &ZPoly| {
        let mut out = vec![ZPoly::zero(nv); p.deg(main) as usize + 1];
        for (mono, x) in &p.t {
            let mut m2 = mono.clone();
            m2[main] = 0;
            out[mono[main] as usize].add_term(m2, x.clone());
        }
        out
    };
    let (cc, vc) = (coeffs(&cz), coeffs(&vz));
    let size = n + m;
    let mut a = vec![vec![ZPoly::zero(nv); size]; size];
    for j in 0..n {
        for (i, x) in cc.iter().enumerate() {
            a[i + j][j] = x.clone();
        }
    }
    for j in 0..m {
        for (i, x) in vc.iter().enumerate() {
            a[i + j][n + j] = x.clone();
        }
    }
    let mut rhs = vec![ZPoly::zero(nv); size];
    rhs[0] = ZPoly::constant(nv, BigInt::one());
    let mut prev = ZPoly::constant(nv, BigInt::one());
    for k in 0..size {
        let Some(p) = (k..size).find(|&r| !a[r][k].is_zero()) else { return Some(None) };
        a.swap(k, p);
        rhs.swap(k, p);
        for i in k + 1..size {
            if a[i][k].is_zero() {
                if !prev.is_one() {
                    for j in k + 1..size {
                        a[i][j] = a[k][k].mul(&a[i][j]).div_exact(&prev)?;
                    }
                    rhs[i] = a[k][k].mul(&rhs[i]).div_exact(&prev)?;
                } else {
                    for j in k + 1..size {
                        a[i][j] = a[k][k].mul(&a[i][j]);
                    }
                    rhs[i] = a[k][k].mul(&rhs[i]);
                }
                continue;
            }
            let f = a[i][k].clone();
            for j in k + 1..size {
                let x = a[k][k].mul(&a[i][j]).sub(&f.mul(&a[k][j]));
                a[i][j] = if prev.is_one() { x } else { x.div_exact(&prev)? };
            }
            let x = a[k][k].mul(&rhs[i]).sub(&f.mul(&rhs[k]));
            rhs[i] = if prev.is_one() { x } else { x.div_exact(&prev)? };
            a[i][k] = ZPoly::zero(nv);
        }
        prev = a[k][k].clone();
    }
    let det = prev;
    let mut x = vec![ZPoly::zero(nv); size];
    for i in (0..size).rev() {
        let mut acc = det.mul(&rhs[i]);
        for j in i + 1..size {
            if !a[i][j].is_zero() && !x[j].is_zero() {
                acc = acc.sub(&a[i][j].mul(&x[j]));
            }
        }
        x[i] = acc.div_exact(&a[i][i])?;
    }
    let scale = &to_elem(&lc, main) / &to_elem(&det, main);
    Some(Some(Poly::new(x[..n].iter().map(|xi| &to_elem(xi, main) * &scale).collect())))
}

/// Gcd over Z, content included, up to sign.
fn heu_gcd(a: &ZPoly, b: &ZPoly, depth: usize) -> Option<ZPoly> {
    if a.is_zero() {
        return Some(b.clone());
    }
    if b.is_zero() {
        return Some(a.clone());
    }
    let (ca, cb) = (a.icont(), b.icont());
    let c = ca.gcd(&cb);
    let (a, b) = (a.div_int(&ca), b.div_int(&cb));
    if a.vars().is_empty() || b.vars().is_empty() {
        return Some(ZPoly::constant(a.nv, c));
    }
    let mut vs = a.vars();
    for v in b.vars() {
        if !vs.contains(&v) {
            vs.push(v);
        }
    }
    vs.sort_unstable();
    if vs.is_empty() {
        return Some(ZPoly::constant(a.nv, c));
    }
    if vs.len() == 1 {
        let v = vs[0];
        let dense = |p: &ZPoly| {
            let mut out = vec![BigRational::zero(); p.deg(v) as usize + 1];
            for (m, x) in &p.t {
                out[m[v] as usize] = BigRational::from_integer(x.clone());
            }
            out
        };
        if a.deg(v) == 0 || b.deg(v) == 0 {
            return Some(ZPoly::constant(a.nv, c));
        }
        let g = crate::modgcd::gcd_q(&dense(&a), &dense(&b));
        let l = g.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let mut out = ZPoly::zero(a.nv);
        for (k, x) in g.iter().enumerate() {
            let mut m = vec![0; a.nv];
            m[v] = k as u32;
            out.add_term(m, (x * BigRational::from_integer(l.clone())).to_integer());
        }
        return Some(out.primitive().scale(&c));
    }
    if depth > 8 {
        return None;
    }
    let v = vs[0];
    let dmax = a.deg(v).max(b.deg(v)) as u64;
    let mut xi = a.max_norm().min(b.max_norm()) * 2u32 + 2u32;
    for _ in 0..6 {
        if xi.bits() * dmax.max(1) > BIT_LIMIT {
            return None;
        }
        let (ea, eb) = (a.eval(v, &xi), b.eval(v, &xi));
        if !ea.is_zero() && !eb.is_zero() {
            if let Some(gam) = heu_gcd(&ea, &eb, depth + 1) {
                let g = genpoly(&gam, &xi, v);
                if !g.is_zero() {
                    let g = g.primitive();
                    if a.div_exact(&g).is_some() && b.div_exact(&g).is_some() {
                        return Some(g.scale(&c));
                    }
                }
            }
        }
        xi = xi * 73794u32 / 27011u32;
    }
    None
}

/// Reads `gam` back as a polynomial in `x_v` from its `xi`-adic digits.
fn genpoly(gam: &ZPoly, xi: &BigInt, v: usize) -> ZPoly {
    let half = xi >> 1;
    let mut g = gam.clone();
    let mut out = ZPoly::zero(gam.nv);
    let mut k = 0u32;
    while !g.is_zero() {
        let mut digit = ZPoly::zero(g.nv);
        for (m, c) in &g.t {
            let mut r = c.mod_floor(xi);
            if r > half {
                r -= xi;
            }
            digit.add_term(m.clone(), r);
        }
        g = g.sub(&digit).div_int(xi);
        out = out.add(&digit.shift(v, k));
        k += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(nv: usize, i: usize) -> ZPoly {
        let mut m = vec![0; nv];
        m[i] = 1;
        let mut p = ZPoly::zero(nv);
        p.add_term(m, BigInt::one());
        p
    }

    #[test]
    fn inverse_modulo_over_a_function_field() {
        let x = Elem::var_elem(0);
        let t = Elem::var_elem(1);
        let one = Elem::one();
        // v = y^3 + x y + t/(x+1), c = (t y^2 + 1)/x
        let v = Poly::new(vec![&t / &(&x + &one), x.clone(), Elem::zero(), one.clone()]);
        let c = Poly::new(vec![&one / &x, Elem::zero(), &t / &x]);
        let s = inv_mod(&c, &v).expect("applicable").expect("invertible");
        assert!(s.mul(&c).rem(&v).is_one());
    }

    #[test]
    fn bivariate_common_factor() {
        let (x, y) = (v(2, 0), v(2, 1));
        let one = ZPoly::constant(2, BigInt::one());
        let g = x.mul(&y).add(&one);
        let a = g.mul(&x.add(&y));
        let b = g.mul(&x.sub(&y).sub(&one));
        let h = heu_gcd(&a, &b, 0).unwrap();
        assert_eq!(h.primitive(), g);
    }
}
