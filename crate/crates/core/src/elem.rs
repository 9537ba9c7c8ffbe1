//! Recursive rational functions over Q(i).
//!
//! An element is either a number or a reduced fraction `num/den` of
//! univariate polynomials in one variable whose coefficients only involve
//! variables of smaller index. Denominators are monic and coprime to the
//! numerator, so structural equality is mathematical equality.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;
use num_rational::BigRational;

use crate::num::Gq;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Num(Gq),
    Frac(Arc<Frac>),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Frac {
    pub var: usize,
    pub num: Poly,
    pub den: Poly,
}

/// Dense univariate polynomial with coefficients in the recursive field,
/// lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Poly {
    c: Vec<Elem>,
}

impl Default for Elem {
    fn default() -> Self {
        Elem::zero()
    }
}

impl Elem {
    pub fn zero() -> Self {
        Elem::Num(Gq::zero())
    }

    pub fn one() -> Self {
        Elem::Num(Gq::one())
    }

    pub fn int(n: i64) -> Self {
        Elem::Num(Gq::from_int(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Elem::Num(Gq::from_ratio(n, d))
    }

    pub fn i() -> Self {
        Elem::Num(Gq::i())
    }

    /// The variable with index `v` as an element.
    pub fn var_elem(v: usize) -> Self {
        Elem::Frac(Arc::new(Frac { var: v, num: Poly::x(), den: Poly::one() }))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Elem::Num(q) if q.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Elem::Num(q) if q.is_one())
    }

    pub fn as_num(&self) -> Option<&Gq> {
        match self {
            Elem::Num(q) => Some(q),
            _ => None,
        }
    }

    /// Index of the main variable, `None` for numbers.
    pub fn var(&self) -> Option<usize> {
        match self {
            Elem::Num(_) => None,
            Elem::Frac(f) => Some(f.var),
        }
    }

    /// True when the element does not involve any variable of index `>= v`.
    pub fn below(&self, v: usize) -> bool {
        self.var().map_or(true, |w| w < v)
    }

    /// Numerator and denominator as polynomials in `v`; the element must not
    /// involve variables above `v`.
    pub fn as_frac_in(&self, v: usize) -> (Poly, Poly) {
        match self {
            Elem::Frac(f) if f.var == v => (f.num.clone(), f.den.clone()),
            _ => {
                debug_assert!(self.below(v));
                (Poly::constant(self.clone()), Poly::one())
            }
        }
    }

    /// Polynomial in `v` when the element has no denominator in `v`.
    pub fn as_poly_in(&self, v: usize) -> Option<Poly> {
        let (n, d) = self.as_frac_in(v);
        if d.is_one() {
            Some(n)
        } else {
            None
        }
    }

    /// Builds `num/den` in variable `v`, cancelling common factors.
    pub fn from_frac(v: usize, num: Poly, den: Poly) -> Elem {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Elem::zero();
        }
        if den.deg() == Some(0) {
            let s = den.lc().inv();
            return Elem::from_reduced(v, num.scale(&s), Poly::one());
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.is_one() { (num, den) } else { (num.exact_div(&g), den.exact_div(&g)) };
        let lc = den.lc().clone();
        if lc.is_one() {
            Elem::from_reduced(v, num, den)
        } else {
            let s = lc.inv();
            Elem::from_reduced(v, num.scale(&s), den.scale(&s))
        }
    }

    /// Builds an element from a coprime pair with monic denominator.
    pub fn from_reduced(v: usize, num: Poly, den: Poly) -> Elem {
        if num.is_zero() {
            return Elem::zero();
        }
        if den.is_one() && num.deg() == Some(0) {
            return num.c[0].clone();
        }
        Elem::Frac(Arc::new(Frac { var: v, num, den }))
    }

    pub fn from_poly(v: usize, p: Poly) -> Elem {
        Elem::from_reduced(v, p, Poly::one())
    }

    fn top(a: &Elem, b: &Elem) -> Option<usize> {
        match (a.var(), b.var()) {
            (None, None) => None,
            (Some(x), None) | (None, Some(x)) => Some(x),
            (Some(x), Some(y)) => Some(x.max(y)),
        }
    }

    pub fn add_ref(&self, o: &Elem) -> Elem {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let v = match Elem::top(self, o) {
            None => return Elem::Num(self.as_num().unwrap() + o.as_num().unwrap()),
            Some(v) => v,
        };
        if self.below(v) {
            return o.add_scalar(self, v);
        }
        if o.below(v) {
            return self.add_scalar(o, v);
        }
        let (na, da) = self.as_frac_in(v);
        let (nb, db) = o.as_frac_in(v);
        if da == db {
            return Elem::from_frac(v, na.add(&nb), da);
        }
        let g = Poly::gcd(&da, &db);
        if g.is_one() {
            let num = na.mul(&db).add(&nb.mul(&da));
            return Elem::from_reduced(v, num, da.mul(&db));
        }
        let da1 = da.exact_div(&g);
        let db1 = db.exact_div(&g);
        let num = na.mul(&db1).add(&nb.mul(&da1));
        let den = da.mul(&db1);
        if num.is_zero() {
            return Elem::zero();
        }
        let g2 = Poly::gcd(&num, &g);
        if g2.is_one() {
            Elem::from_reduced(v, num, den)
        } else {
            Elem::from_reduced(v, num.exact_div(&g2), den.exact_div(&g2))
        }
    }

    fn add_scalar(&self, c: &Elem, v: usize) -> Elem {
        let (n, d) = self.as_frac_in(v);
        let num = n.add(&d.scale(c));
        Elem::from_reduced(v, num, d)
    }

    pub fn neg_ref(&self) -> Elem {
        match self {
            Elem::Num(q) => Elem::Num(-q),
            Elem::Frac(f) => Elem::Frac(Arc::new(Frac { var: f.var, num: f.num.neg(), den: f.den.clone() })),
        }
    }

    pub fn sub_ref(&self, o: &Elem) -> Elem {
        self.add_ref(&o.neg_ref())
    }

    pub fn mul_ref(&self, o: &Elem) -> Elem {
        if self.is_zero() || o.is_zero() {
            return Elem::zero();
        }
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        let v = match Elem::top(self, o) {
            None => return Elem::Num(self.as_num().unwrap() * o.as_num().unwrap()),
            Some(v) => v,
        };
        if self.below(v) {
            return o.scale_below(self, v);
        }
        if o.below(v) {
            return self.scale_below(o, v);
        }
        let (na, da) = self.as_frac_in(v);
        let (nb, db) = o.as_frac_in(v);
        let g1 = Poly::gcd(&na, &db);
        let g2 = Poly::gcd(&nb, &da);
        let (na, db) = if g1.is_one() { (na, db) } else { (na.exact_div(&g1), db.exact_div(&g1)) };
        let (nb, da) = if g2.is_one() { (nb, da) } else { (nb.exact_div(&g2), da.exact_div(&g2)) };
        Elem::from_reduced(v, na.mul(&nb), da.mul(&db))
    }

    fn scale_below(&self, c: &Elem, v: usize) -> Elem {
        let (n, d) = self.as_frac_in(v);
        Elem::from_reduced(v, n.scale(c), d)
    }

    pub fn inv(&self) -> Elem {
        match self {
            Elem::Num(q) => Elem::Num(q.inv()),
            Elem::Frac(f) => {
                let s = f.num.lc().inv();
                Elem::from_reduced(f.var, f.den.scale(&s), f.num.scale(&s))
            }
        }
    }

    pub fn div_ref(&self, o: &Elem) -> Elem {
        assert!(!o.is_zero(), "division by zero");
        self.mul_ref(&o.inv())
    }

    pub fn checked_div(&self, o: &Elem) -> Option<Elem> {
        if o.is_zero() {
            None
        } else {
            Some(self.div_ref(o))
        }
    }

    pub fn pow(&self, e: i64) -> Elem {
        if e < 0 {
            return self.inv().pow(-e);
        }
        let mut acc = Elem::one();
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }

    /// Numeric value at a point giving one value per variable index.
    pub fn eval(&self, pt: &[Gq]) -> Option<Gq> {
        match self {
            Elem::Num(q) => Some(q.clone()),
            Elem::Frac(f) => {
                let x = &pt[f.var];
                let d = f.den.eval_num(x, pt)?;
                if d.is_zero() {
                    return None;
                }
                let n = f.num.eval_num(x, pt)?;
                Some(&n / &d)
            }
        }
    }

    /// Ring homomorphism sending variable `v` to `img(v)`, identity on numbers.
    pub fn map_vars(&self, img: &dyn Fn(usize) -> Elem) -> Option<Elem> {
        match self {
            Elem::Num(_) => Some(self.clone()),
            Elem::Frac(f) => {
                let x = img(f.var);
                let n = f.num.map_eval(&x, img)?;
                let d = f.den.map_eval(&x, img)?;
                n.checked_div(&d)
            }
        }
    }

    /// Whether variable `v` occurs anywhere in the element.
    pub fn contains_var(&self, v: usize) -> bool {
        match self {
            Elem::Num(_) => false,
            Elem::Frac(f) => {
                f.var == v
                    || (f.var > v
                        && (f.num.c.iter().any(|c| c.contains_var(v)) || f.den.c.iter().any(|c| c.contains_var(v))))
            }
        }
    }

    /// Real integer value, if the element is one.
    pub fn as_integer(&self) -> Option<i64> {
        self.as_num().and_then(|q| q.as_i64())
    }
}

macro_rules! forward_ops {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&Elem> for &Elem {
            type Output = Elem;
            fn $m(self, o: &Elem) -> Elem {
                self.$f(o)
            }
        }
        impl $tr<Elem> for Elem {
            type Output = Elem;
            fn $m(self, o: Elem) -> Elem {
                self.$f(&o)
            }
        }
        impl $tr<&Elem> for Elem {
            type Output = Elem;
            fn $m(self, o: &Elem) -> Elem {
                self.$f(o)
            }
        }
        impl $tr<Elem> for &Elem {
            type Output = Elem;
            fn $m(self, o: Elem) -> Elem {
                self.$f(&o)
            }
        }
    };
}

forward_ops!(Add, add, add_ref);
forward_ops!(Sub, sub, sub_ref);
forward_ops!(Mul, mul, mul_ref);
forward_ops!(Div, div, div_ref);

impl Neg for &Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        self.neg_ref()
    }
}

impl Neg for Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        self.neg_ref()
    }
}

impl From<Gq> for Elem {
    fn from(q: Gq) -> Self {
        Elem::Num(q)
    }
}

impl From<i64> for Elem {
    fn from(n: i64) -> Self {
        Elem::int(n)
    }
}

impl Poly {
    pub fn new(mut c: Vec<Elem>) -> Poly {
        while c.last().map_or(false, |x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Poly {
        Poly { c: vec![] }
    }

    pub fn one() -> Poly {
        Poly { c: vec![Elem::one()] }
    }

    pub fn x() -> Poly {
        Poly { c: vec![Elem::zero(), Elem::one()] }
    }

    pub fn constant(e: Elem) -> Poly {
        Poly::new(vec![e])
    }

    /// `c * x^k`.
    pub fn monomial(e: Elem, k: usize) -> Poly {
        if e.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Elem::zero(); k];
        c.push(e);
        Poly { c }
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<Elem> {
        self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn deg(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with `-1` for the zero polynomial.
    pub fn degi(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    pub fn lc(&self) -> &Elem {
        self.c.last().expect("leading coefficient of zero polynomial")
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.c.get(i).cloned().unwrap_or_else(Elem::zero)
    }

    pub fn coeff_ref(&self, i: usize) -> Option<&Elem> {
        self.c.get(i)
    }

    /// Lowest index with a nonzero coefficient.
    pub fn low_order(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                _ => unreachable!(),
            });
        }
        Poly::new(c)
    }

    pub fn neg(&self) -> Poly {
        Poly { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &Elem) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        if s.is_one() {
            return self.clone();
        }
        Poly::new(self.c.iter().map(|x| x * s).collect())
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Elem::zero(); k];
        c.extend(self.c.iter().cloned());
        Poly { c }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if o.c.len() == 1 {
            return self.scale(&o.c[0]);
        }
        if self.c.len() == 1 {
            return o.scale(&self.c[0]);
        }
        let mut c = vec![Elem::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        Poly::new(c)
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.lc().is_one() {
            return self.clone();
        }
        self.scale(&self.lc().inv())
    }

    /// Quotient and remainder of Euclidean division.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.c.len() - 1;
        if self.c.len() < d.c.len() {
            return (Poly::zero(), self.clone());
        }
        let inv = if d.lc().is_one() { None } else { Some(d.lc().inv()) };
        let mut r = self.c.clone();
        let mut q = vec![Elem::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let coef = match &inv {
                None => top.clone(),
                Some(i) => top * i,
            };
            for j in 0..dd {
                if !d.c[j].is_zero() {
                    r[k + j] = &r[k + j] - &(&coef * &d.c[j]);
                }
            }
            r[k + dd] = Elem::zero();
            q[k] = coef;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    pub fn exact_div(&self, d: &Poly) -> Poly {
        let (q, r) = self.divrem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor; zero only when both inputs are zero.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.c.len() == 1 || b.c.len() == 1 {
            return Poly::one();
        }
        if let (Some(x), Some(y)) = (real_coeffs(a), real_coeffs(b)) {
            let g = crate::modgcd::gcd_q(&x, &y);
            return Poly::new(g.into_iter().map(|c| Elem::Num(Gq::from_rational(c))).collect());
        }
        let (mut a, mut b) = if a.c.len() >= b.c.len() { (a.clone(), b.monic()) } else { (b.clone(), a.monic()) };
        let k = specialized_gcd_degree(&a, &b);
        if k == Some(0) {
            return Poly::one();
        }
        if let Some(g) = crate::zpoly::poly_gcd(&a, &b) {
            return g;
        }
        if k.is_some_and(|k| k + 1 == b.c.len()) && a.rem(&b).is_zero() {
            return b;
        }
        loop {
            let r = a.rem(&b);
            if r.is_zero() {
                return b;
            }
            if r.c.len() == 1 {
                return Poly::one();
            }
            a = b;
            b = r.monic();
        }
    }

    pub fn lcm(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let g = Poly::gcd(a, b);
        a.exact_div(&g).mul(b).monic()
    }

    /// Extended Euclid: returns `(g, s, t)` with `s a + t b = g` and `g` monic.
    pub fn ext_gcd(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().inv();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Inverse of `self` modulo `m`, if it exists.
    pub fn inv_mod(&self, m: &Poly) -> Option<Poly> {
        let r = self.rem(m);
        if let Some(s) = crate::zpoly::inv_mod(&r, m) {
            return s;
        }
        let (g, s, _) = Poly::ext_gcd(&r, m);
        if g.is_one() {
            Some(s.rem(m))
        } else {
            None
        }
    }

    /// Formal derivative with respect to the polynomial variable.
    pub fn formal_derivative(&self) -> Poly {
        if self.c.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(self.c.iter().enumerate().skip(1).map(|(i, x)| x * &Elem::int(i as i64)).collect())
    }

    /// Horner evaluation at an element.
    pub fn eval(&self, x: &Elem) -> Elem {
        let mut acc = Elem::zero();
        for c in self.c.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    fn eval_num(&self, x: &Gq, pt: &[Gq]) -> Option<Gq> {
        let mut acc = Gq::zero();
        for c in self.c.iter().rev() {
            let cv = c.eval(pt)?;
            acc = &(&acc * x) + &cv;
        }
        Some(acc)
    }

    fn map_eval(&self, x: &Elem, img: &dyn Fn(usize) -> Elem) -> Option<Elem> {
        let mut acc = Elem::zero();
        for c in self.c.iter().rev() {
            let cv = c.map_vars(img)?;
            acc = &(&acc * x) + &cv;
        }
        Some(acc)
    }

    /// Squarefree decomposition `[(f_1, 1), (f_2, 2), ...]` of a monic
    /// polynomial, omitting trivial factors.
    pub fn squarefree(&self) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        if self.c.len() <= 1 {
            return out;
        }
        let f = self.monic();
        let df = f.formal_derivative();
        let a = Poly::gcd(&f, &df);
        let mut b = f.exact_div(&a);
        let mut c = df.exact_div(&a).sub(&b.formal_derivative());
        let mut i = 1;
        while b.c.len() > 1 {
            let d = Poly::gcd(&b, &c);
            if d.c.len() > 1 {
                out.push((d.clone(), i));
            }
            let b2 = b.exact_div(&d);
            c = c.exact_div(&d).sub(&b2.formal_derivative());
            b = b2;
            i += 1;
        }
        out
    }

    /// Product of the distinct irreducible factors.
    pub fn radical(&self) -> Poly {
        if self.c.len() <= 1 {
            return Poly::one();
        }
        let f = self.monic();
        f.exact_div(&Poly::gcd(&f, &f.formal_derivative()))
    }

    pub fn map(&self, f: impl Fn(&Elem) -> Elem) -> Poly {
        Poly::new(self.c.iter().map(f).collect())
    }
}

/// The coefficients when they are all real rational numbers.
fn real_coeffs(p: &Poly) -> Option<Vec<BigRational>> {
    p.c.iter().map(|c| c.as_num().filter(|g| g.is_real()).map(|g| g.re.clone())).collect()
}

/// Degree of the gcd after substituting numbers for all coefficient
/// variables, an upper bound for the degree of the true gcd. `None` when the
/// coefficients are already numbers or no admissible point was found.
fn specialized_gcd_degree(a: &Poly, b: &Poly) -> Option<usize> {
    let nv = a.c.iter().chain(&b.c).filter_map(|c| c.var()).max()? + 1;
    for round in 0..2i64 {
        let pt: Vec<Gq> = (0..nv as i64).map(|k| Gq::from_ratio(7919 * (k + 1) + 104729 * round + 13, 2 * k + 3 + round)).collect();
        let spec = |p: &Poly| -> Option<Poly> {
            let c: Option<Vec<Elem>> = p.c.iter().map(|x| x.eval(&pt).map(Elem::Num)).collect();
            let q = Poly::new(c?);
            (q.c.len() == p.c.len()).then_some(q)
        };
        let (Some(sa), Some(sb)) = (spec(a), spec(b)) else { continue };
        return Some(Poly::gcd(&sa, &sb).c.len() - 1);
    }
    None
}

/// Resultant of two polynomials over the coefficient field.
pub fn resultant(a: &Poly, b: &Poly) -> Elem {
    if a.is_zero() || b.is_zero() {
        return Elem::zero();
    }
    let mut f = a.clone();
    let mut g = b.clone();
    let mut acc = Elem::one();
    loop {
        let df = f.degi();
        let dg = g.degi();
        if dg == 0 {
            return &acc * &g.lc().pow(df);
        }
        if df < dg {
            if df % 2 == 1 && dg % 2 == 1 {
                acc = -acc;
            }
            std::mem::swap(&mut f, &mut g);
            continue;
        }
        let r = f.rem(&g);
        if r.is_zero() {
            return Elem::zero();
        }
        let dr = r.degi();
        acc = &acc * &g.lc().pow(df - dr);
        if df % 2 == 1 && dg % 2 == 1 {
            acc = -acc;
        }
        f = g;
        g = r;
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Num(q) => write!(f, "{}", q),
            Elem::Frac(fr) => {
                if fr.den.is_one() {
                    write!(f, "({:?})[v{}]", fr.num, fr.var)
                } else {
                    write!(f, "({:?})/({:?})[v{}]", fr.num, fr.den, fr.var)
                }
            }
        }
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{:?}*^{}", c, i))
            .collect();
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

    fn x() -> Elem {
        Elem::var_elem(0)
    }
    fn y() -> Elem {
        Elem::var_elem(1)
    }

    #[test]
    fn cancellation_is_canonical() {
        let a = &(&x() * &x()) - &Elem::one();
        let b = &x() - &Elem::one();
        assert_eq!(&a / &b, &x() + &Elem::one());
        let c = &(&y() + &x()) / &(&(&y() * &y()) - &(&x() * &x()));
        assert_eq!(c, (&y() - &x()).inv());
    }

    #[test]
    fn mixed_levels() {
        let a = &y() / &x();
        let b = &a * &x();
        assert_eq!(b, y());
        let s = &(&y().inv() + &x()) - &x();
        assert_eq!(s, y().inv());
    }

    #[test]
    fn squarefree_and_resultant() {
        let t = Poly::x();
        let f = t.sub(&Poly::one()).pow(2).mul(&t.add(&Poly::one()));
        let sf = f.squarefree();
        assert_eq!(sf.len(), 2);
        assert_eq!(sf[0], (t.add(&Poly::one()), 1));
        assert_eq!(sf[1], (t.sub(&Poly::one()), 2));
        let g = t.mul(&t).sub(&Poly::constant(Elem::int(4)));
        let h = t.sub(&Poly::constant(Elem::int(1)));
        assert_eq!(resultant(&g, &h), Elem::int(-3));
    }

    #[test]
    fn eval_agrees_with_arithmetic() {
        let e = &(&x() * &y() + Elem::int(3)) / &(&y() - &x());
        let pt = [Gq::from_int(2), Gq::from_int(5)];
        assert_eq!(e.eval(&pt), Some(Gq::from_ratio(13, 3)));
    }
}
