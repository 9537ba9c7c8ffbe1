//! Laurent polynomials `sum c_j t^j` with coefficients in the lower field.

use crate::elem::{Elem, Poly};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Laurent {
    lo: i64,
    c: Vec<Elem>,
}

impl Laurent {
    pub fn zero() -> Laurent {
        Laurent { lo: 0, c: vec![] }
    }

    fn normalize(mut self) -> Laurent {
        while self.c.last().map_or(false, |x| x.is_zero()) {
            self.c.pop();
        }
        let k = self.c.iter().position(|x| !x.is_zero()).unwrap_or(0);
        if k > 0 {
            self.c.drain(..k);
            self.lo += k as i64;
        }
        if self.c.is_empty() {
            self.lo = 0;
        }
        self
    }

    pub fn from_poly(p: &Poly) -> Laurent {
        Laurent { lo: 0, c: p.coeffs().to_vec() }.normalize()
    }

    pub fn monomial(c: Elem, j: i64) -> Laurent {
        Laurent { lo: j, c: vec![c] }.normalize()
    }

    pub fn constant(c: Elem) -> Laurent {
        Laurent::monomial(c, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn hdeg(&self) -> Option<i64> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.lo + self.c.len() as i64 - 1)
        }
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn tdeg(&self) -> Option<i64> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.lo)
        }
    }

    pub fn hc(&self) -> Elem {
        self.c.last().cloned().unwrap_or_else(Elem::zero)
    }

    pub fn tc(&self) -> Elem {
        self.c.first().cloned().unwrap_or_else(Elem::zero)
    }

    pub fn coeff(&self, j: i64) -> Elem {
        if j < self.lo {
            return Elem::zero();
        }
        self.c.get((j - self.lo) as usize).cloned().unwrap_or_else(Elem::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Elem)> {
        let lo = self.lo;
        self.c.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, c)| (lo + i as i64, c))
    }

    pub fn add_term(&mut self, j: i64, x: &Elem) {
        if x.is_zero() {
            return;
        }
        if self.c.is_empty() {
            self.lo = j;
            self.c.push(x.clone());
            return;
        }
        if j < self.lo {
            let k = (self.lo - j) as usize;
            let mut c = vec![Elem::zero(); k];
            c.append(&mut self.c);
            self.c = c;
            self.lo = j;
        }
        let idx = (j - self.lo) as usize;
        if idx >= self.c.len() {
            self.c.resize(idx + 1, Elem::zero());
        }
        self.c[idx] = &self.c[idx] + x;
        let s = std::mem::take(self);
        *self = s.normalize();
    }

    pub fn add(&self, o: &Laurent) -> Laurent {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        let lo = self.lo.min(o.lo);
        let hi = self.hdeg().unwrap().max(o.hdeg().unwrap());
        let c = (lo..=hi).map(|j| &self.coeff(j) + &o.coeff(j)).collect();
        Laurent { lo, c }.normalize()
    }

    pub fn neg(&self) -> Laurent {
        Laurent { lo: self.lo, c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn sub(&self, o: &Laurent) -> Laurent {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &Elem) -> Laurent {
        if s.is_zero() {
            return Laurent::zero();
        }
        Laurent { lo: self.lo, c: self.c.iter().map(|x| x * s).collect() }.normalize()
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Laurent {
        if self.is_zero() {
            return Laurent::zero();
        }
        Laurent { lo: self.lo + k, c: self.c.clone() }
    }

    pub fn mul(&self, o: &Laurent) -> Laurent {
        if self.is_zero() || o.is_zero() {
            return Laurent::zero();
        }
        let mut c = vec![Elem::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] = &c[i + j] + &(a * b);
                }
            }
        }
        Laurent { lo: self.lo + o.lo, c }.normalize()
    }

    pub fn mul_poly(&self, p: &Poly) -> Laurent {
        self.mul(&Laurent::from_poly(p))
    }

    /// Terms with exponent in `lo..=hi`.
    pub fn range(&self, lo: i64, hi: i64) -> Laurent {
        let mut out = Laurent::zero();
        for (j, c) in self.terms() {
            if j >= lo && j <= hi {
                out.add_term(j, c);
            }
        }
        out
    }

    /// As an ordinary polynomial when no negative powers occur.
    pub fn to_poly(&self) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if self.lo < 0 {
            return None;
        }
        let mut c = vec![Elem::zero(); self.lo as usize];
        c.extend(self.c.iter().cloned());
        Some(Poly::new(c))
    }

    /// The element `sum c_j v^j` in variable `v`.
    pub fn to_elem(&self, v: usize) -> Elem {
        if self.is_zero() {
            return Elem::zero();
        }
        if self.lo >= 0 {
            return Elem::from_poly(v, self.to_poly().unwrap());
        }
        let num = Poly::new(self.c.clone());
        Elem::from_reduced(v, num, Poly::monomial(Elem::one(), (-self.lo) as usize))
    }

    /// Inverse of `to_elem`; `None` when the denominator is not a power of `v`.
    pub fn from_elem(e: &Elem, v: usize) -> Option<Laurent> {
        let (n, d) = e.as_frac_in(v);
        let k = d.degi() as usize;
        if d != Poly::monomial(Elem::one(), k) {
            return None;
        }
        Some(Laurent { lo: -(k as i64), c: n.into_coeffs() }.normalize())
    }
}

impl std::fmt::Debug for Laurent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.terms().map(|(j, c)| format!("{:?}*t^{}", c, j)).collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_products() {
        let a = Laurent::monomial(Elem::int(2), -2).add(&Laurent::monomial(Elem::int(1), 3));
        let e = a.to_elem(0);
        assert_eq!(Laurent::from_elem(&e, 0), Some(a.clone()));
        let b = Laurent::monomial(Elem::int(1), 2);
        let p = a.mul(&b);
        assert_eq!(p.tdeg(), Some(0));
        assert_eq!(p.hdeg(), Some(5));
        assert!(a.sub(&a).is_zero());
    }
}
