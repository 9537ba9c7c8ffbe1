//! Coordinates of tower elements over the constant field.
//!
//! An element of level `L` is split into its polynomial part and the
//! `v`-adic digits of its proper part, one block per factor `v` of a
//! pairwise coprime squarefree base of the denominator. Each coefficient
//! in the lower field is split again, down to a constant. The resulting
//! functionals are linear, so they serve both as coordinates (for a common
//! base) and as pivot functionals for echelon sequences.

use std::collections::BTreeMap;

use crate::elem::{Elem, Poly};
use crate::tower::Tower;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Comp {
    /// Coefficient of `t^j` in the polynomial part.
    Poly(usize),
    /// Coefficient of `t^k` in the numerator of the `v^-e` digit.
    Frac { v: Poly, e: usize, k: usize },
}

/// Components from the top level down to level 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Index(pub Vec<Comp>);

impl Index {
    pub fn unit(level: usize) -> Index {
        Index(vec![Comp::Poly(0); level])
    }

    pub fn level(&self) -> usize {
        self.0.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PivotOrder {
    /// Smallest index in the order polynomial part first, ascending exponent.
    #[default]
    Ascending,
    /// Largest index in the same order.
    Descending,
}

/// A pivot `theta t^deg` of the Laurent basis over the lower field.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Pivot {
    pub theta: Index,
    pub deg: i64,
}

/// Pairwise coprime squarefree monic base refining the given polynomials.
pub fn coprime_base(ps: &[Poly]) -> Vec<Poly> {
    let mut base: Vec<Poly> = Vec::new();
    let mut todo: Vec<Poly> = ps.iter().filter(|p| p.degi() > 0).map(|p| p.radical()).collect();
    while let Some(p) = todo.pop() {
        if p.degi() <= 0 {
            continue;
        }
        let mut hit = None;
        for (i, q) in base.iter().enumerate() {
            let g = Poly::gcd(&p, q);
            if g.degi() > 0 {
                hit = Some((i, g));
                break;
            }
        }
        match hit {
            None => base.push(p),
            Some((i, g)) => {
                let q = base.remove(i);
                let qg = q.exact_div(&g);
                let pg = p.exact_div(&g);
                if qg == Poly::one() && pg == Poly::one() {
                    base.push(g);
                    continue;
                }
                todo.push(g);
                todo.push(qg);
                todo.push(pg);
            }
        }
    }
    let mut out = Vec::new();
    for b in base {
        out.extend(split_rational_roots(&b));
    }
    out.sort();
    out.dedup();
    out
}

/// Splits off linear factors with rational roots when all coefficients are
/// rational numbers.
fn split_rational_roots(p: &Poly) -> Vec<Poly> {
    if p.degi() <= 1 || !p.coeffs().iter().all(|c| c.as_num().map_or(false, |q| q.is_real())) {
        return vec![p.clone()];
    }
    let lc = p.lc().as_num().unwrap().re.clone();
    let l = p
        .coeffs()
        .iter()
        .fold(num_bigint::BigInt::from(1), |acc, c| num_integer::Integer::lcm(&acc, c.as_num().unwrap().re.denom()));
    let cl = num_rational::BigRational::from_integer(l);
    let a: Vec<num_rational::BigRational> = p.coeffs().iter().map(|c| &c.as_num().unwrap().re * &cl).collect();
    let n = a.len() - 1;
    let an = &lc * &cl;
    // roots r = y / an of p correspond to integer roots y of the monic
    // polynomial sum a_k an^(n-1-k) y^k
    let mut m = Vec::new();
    for (k, ak) in a.iter().enumerate() {
        if k == n {
            m.push(Elem::one());
        } else {
            let mut c = ak.clone();
            for _ in 0..(n - 1 - k) {
                c = &c * &an;
            }
            m.push(Elem::Num(crate::num::Gq::from_rational(c)));
        }
    }
    let roots = crate::residue::integer_roots(&Poly::new(m));
    let mut rest = p.clone();
    let mut out = Vec::new();
    for y in roots {
        let r = &Elem::int(y) / &Elem::Num(crate::num::Gq::from_rational(an.clone()));
        let lin = Poly::new(vec![-&r, Elem::one()]);
        let (q, rem) = rest.divrem(&lin);
        if rem.is_zero() {
            out.push(lin);
            rest = q;
        }
    }
    if rest.degi() > 0 {
        out.push(rest.monic());
    }
    out
}

/// Largest divisor of `d` whose prime factors all divide `v`, with the
/// saturation exponent.
fn saturate(d: &Poly, v: &Poly) -> (Poly, usize) {
    let mut d1 = Poly::one();
    let mut rest = d.clone();
    let mut e = 0;
    loop {
        let g = Poly::gcd(&rest, v);
        if g.degi() <= 0 {
            return (d1, e);
        }
        d1 = d1.mul(&g);
        rest = rest.exact_div(&g);
        e += 1;
    }
}

/// The `v`-adic digits `A_1, ..., A_E` (index `e - 1`) of the proper part
/// `r/d` of an element, restricted to the part of `d` supported on `v`.
pub fn digits(r: &Poly, d: &Poly, v: &Poly) -> Vec<Poly> {
    let (d1, big_e) = saturate(d, v);
    if big_e == 0 {
        return vec![];
    }
    let d2 = d.exact_div(&d1);
    let x = if d2.degi() <= 0 {
        r.scale(&d2.lc().inv()).rem(&d1)
    } else {
        r.mul(&d2.inv_mod(&d1).expect("coprime split")).rem(&d1)
    };
    let y = x.mul(&v.pow(big_e).exact_div(&d1));
    let mut out = vec![Poly::zero(); big_e];
    let mut cur = y;
    for i in 0..big_e {
        let (q, rem) = cur.divrem(v);
        out[big_e - 1 - i] = rem;
        cur = q;
    }
    out
}

fn components(e: &Elem, var: usize, base: &[Poly]) -> Vec<(Comp, Elem)> {
    let (n, d) = e.as_frac_in(var);
    let (q, r) = n.divrem(&d);
    let mut out = Vec::new();
    for (j, c) in q.coeffs().iter().enumerate() {
        if !c.is_zero() {
            out.push((Comp::Poly(j), c.clone()));
        }
    }
    if d.degi() <= 0 || r.is_zero() {
        return out;
    }
    for v in base {
        for (i, a) in digits(&r, &d, v).into_iter().enumerate() {
            for (k, c) in a.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    out.push((Comp::Frac { v: v.clone(), e: i + 1, k }, c.clone()));
                }
            }
        }
    }
    out
}

/// Joint coordinates of several elements of level at most `level`.
pub fn support_many(tower: &Tower, elems: &[Elem], level: usize) -> BTreeMap<Index, Vec<Elem>> {
    let mut out = BTreeMap::new();
    if level == 0 {
        if elems.iter().any(|e| !e.is_zero()) {
            out.insert(Index(vec![]), elems.to_vec());
        }
        return out;
    }
    let var = tower.var_of(level);
    let dens: Vec<Poly> = elems.iter().map(|e| e.as_frac_in(var).1).collect();
    let base = coprime_base(&dens);
    let mut blocks: BTreeMap<Comp, Vec<Elem>> = BTreeMap::new();
    for (i, e) in elems.iter().enumerate() {
        for (comp, c) in components(e, var, &base) {
            blocks.entry(comp).or_insert_with(|| vec![Elem::zero(); elems.len()])[i] = c;
        }
    }
    for (comp, vals) in blocks {
        for (idx, sub) in support_many(tower, &vals, level - 1) {
            let mut path = vec![comp.clone()];
            path.extend(idx.0);
            out.insert(Index(path), sub);
        }
    }
    out
}

/// Nonzero coordinates of one element.
pub fn support(tower: &Tower, e: &Elem, level: usize) -> Vec<(Index, Elem)> {
    support_many(tower, std::slice::from_ref(e), level)
        .into_iter()
        .map(|(k, mut v)| (k, v.pop().unwrap()))
        .collect()
}

/// Value of the coordinate functional `idx` on `e`.
pub fn coordinate(tower: &Tower, e: &Elem, idx: &Index) -> Elem {
    coord_rec(tower, e, &idx.0)
}

fn coord_rec(tower: &Tower, e: &Elem, path: &[Comp]) -> Elem {
    if e.is_zero() {
        return Elem::zero();
    }
    let Some((first, rest)) = path.split_first() else {
        return e.clone();
    };
    let level = path.len();
    let var = tower.var_of(level);
    let (n, d) = e.as_frac_in(var);
    let c = match first {
        Comp::Poly(j) => {
            if d.is_one() {
                n.coeff(*j)
            } else {
                n.divrem(&d).0.coeff(*j)
            }
        }
        Comp::Frac { v, e: ex, k } => {
            if d.degi() <= 0 {
                return Elem::zero();
            }
            let r = n.rem(&d);
            digits(&r, &d, v).get(ex - 1).map(|a| a.coeff(*k)).unwrap_or_else(Elem::zero)
        }
    };
    coord_rec(tower, &c, rest)
}

/// The basis element dual to the functional `idx`.
pub fn basis_element(tower: &Tower, idx: &Index) -> Elem {
    let Some((first, rest)) = idx.0.split_first() else {
        return Elem::one();
    };
    let var = tower.var_of(idx.0.len());
    let low = basis_element(tower, &Index(rest.to_vec()));
    let e = match first {
        Comp::Poly(j) => Elem::from_poly(var, Poly::monomial(Elem::one(), *j)),
        Comp::Frac { v, e, k } => Elem::from_frac(var, Poly::monomial(Elem::one(), *k), v.pow(*e)),
    };
    &e * &low
}

/// Pivot index of a nonzero element.
pub fn find_pivot(tower: &Tower, e: &Elem, level: usize, order: PivotOrder) -> Index {
    let s = support(tower, e, level);
    let pick = match order {
        PivotOrder::Ascending => s.first(),
        PivotOrder::Descending => s.last(),
    };
    pick.expect("pivot of zero element").0.clone()
}

/// Value of `theta t^deg` coordinate on a Laurent polynomial whose
/// coefficients lie in level `level`.
pub fn gamma(tower: &Tower, p: &crate::laurent::Laurent, piv: &Pivot) -> Elem {
    coordinate(tower, &p.coeff(piv.deg), &piv.theta)
}

/// Partial fractions of an element in `t_level`: polynomial part and
/// digits `(v, e, A)` with `deg A < deg v`.
pub struct PartialFractions {
    pub poly: Poly,
    pub terms: Vec<(Poly, usize, Poly)>,
}

pub fn partial_fractions(tower: &Tower, e: &Elem, level: usize) -> PartialFractions {
    let var = tower.var_of(level);
    let (n, d) = e.as_frac_in(var);
    let (q, r) = n.divrem(&d);
    let mut terms = Vec::new();
    if d.degi() > 0 {
        for v in coprime_base(&[d.clone()]) {
            for (i, a) in digits(&r, &d, &v).into_iter().enumerate() {
                if !a.is_zero() {
                    terms.push((v.clone(), i + 1, a));
                }
            }
        }
    }
    PartialFractions { poly: q, terms }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::Kind;

    fn log_tower() -> (Tower, Elem, Elem) {
        let mut t = Tower::new(&[], false);
        let x = t.push("x", Kind::Prim, Elem::one()).unwrap();
        let l = t.push("t", Kind::Prim, x.inv()).unwrap();
        (t, x, l)
    }

    #[test]
    fn partial_fractions_split_rational_roots() {
        let (t, x, _) = log_tower();
        let f = (&(&x * &x) - &Elem::one()).inv();
        let pf = partial_fractions(&t, &f, 1);
        assert!(pf.poly.is_zero());
        assert_eq!(pf.terms.len(), 2);
        let mut back = Elem::zero();
        for (v, e, a) in &pf.terms {
            back = &back + &(&Elem::from_poly(0, a.clone()) / &Elem::from_poly(0, v.pow(*e)));
        }
        assert_eq!(back, f);
    }

    #[test]
    fn pivot_and_coordinate() {
        let (t, x, l) = log_tower();
        let lc = &Elem::int(-2) / &x;
        let p = find_pivot(&t, &lc, 1, PivotOrder::Ascending);
        assert_eq!(p.0, vec![Comp::Frac { v: Poly::x(), e: 1, k: 0 }]);
        let f = &(&lc * &l) + &(&Elem::int(2) * &x);
        let lf = crate::laurent::Laurent::from_elem(&f, 1).unwrap();
        let piv = Pivot { theta: p, deg: 1 };
        assert_eq!(gamma(&t, &lf, &piv), Elem::int(-2));
    }

    #[test]
    fn joint_support_reconstructs() {
        let (t, x, l) = log_tower();
        let a = &(&l * &l) / &(&x + &Elem::one());
        let b = &(&l + &x) / &(&(&l * &l) - &x);
        let s = support_many(&t, &[a.clone(), b.clone()], 2);
        assert!(!s.is_empty());
        for (idx, vals) in &s {
            assert_eq!(coordinate(&t, &a, idx), vals[0]);
            assert_eq!(coordinate(&t, &b, idx), vals[1]);
        }
    }
}
