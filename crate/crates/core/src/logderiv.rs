//! Recognition of logarithmic derivatives, with integer parameters.
//!
//! The solver looks for integers `k_1, ..., k_r` and `u` with
//! `u'/u = c_0 + sum k_j c_j`. Working down the tower, every pole of the
//! right-hand side must be simple with an integer residue, every
//! non-constant power of `t` in the polynomial part must cancel, and a
//! hyperexponential level contributes an unknown power of its generator.
//! The conditions that cannot be settled at a level become linear
//! equations over Q in the unknowns, solved once the constants are
//! reached.

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::basis::{coprime_base, digits, support_many};
use crate::elem::{Elem, Poly};
use crate::error::{Error, Result};
use crate::linalg::{constant_equation_rows, rational_is_integer, solve_rational, QSolution};
use crate::residue::integer_residues;
use crate::tower::{Kind, Tower};

struct Affine {
    c0: Elem,
    cs: Vec<(usize, Elem)>,
}

struct Solver<'a> {
    tower: &'a Tower,
    bases: Vec<Option<Elem>>,
    rows: Vec<(Vec<(usize, BigRational)>, BigRational)>,
    known: Vec<(Elem, i64)>,
}

impl<'a> Solver<'a> {
    fn new(tower: &'a Tower) -> Self {
        Solver { tower, bases: Vec::new(), rows: Vec::new(), known: Vec::new() }
    }

    fn unknown(&mut self, base: Option<Elem>) -> usize {
        self.bases.push(base);
        self.bases.len() - 1
    }

    /// Records `aff = 0` in the field of level `level`.
    fn equate(&mut self, aff: &Affine, level: usize) {
        let mut vals = vec![aff.c0.clone()];
        vals.extend(aff.cs.iter().map(|(_, e)| e.clone()));
        if vals.iter().all(|v| v.is_zero()) {
            return;
        }
        let np = self.tower.nparams();
        for (_, coords) in support_many(self.tower, &vals, level) {
            for row in constant_equation_rows(&coords, np) {
                let r = aff.cs.len();
                let terms: Vec<(usize, BigRational)> =
                    aff.cs.iter().enumerate().filter(|(j, _)| !row[*j].is_zero()).map(|(j, (id, _))| (*id, row[j].clone())).collect();
                self.rows.push((terms, row[r].clone()));
            }
        }
    }

    fn level(&mut self, aff: Affine, level: usize) -> Result<bool> {
        if level == 0 {
            self.equate(&aff, 0);
            return Ok(true);
        }
        let t = self.tower;
        let var = t.var_of(level);
        let mut comps: Vec<Elem> = vec![aff.c0.clone()];
        comps.extend(aff.cs.iter().map(|(_, e)| e.clone()));
        let ids: Vec<usize> = aff.cs.iter().map(|(id, _)| *id).collect();
        let fr: Vec<(Poly, Poly)> = comps.iter().map(|e| e.as_frac_in(var)).collect();
        let normal_dens: Vec<Poly> = fr.iter().map(|(_, d)| t.split_special(d, level).1).collect();
        let base = coprime_base(&normal_dens);
        let mut c0 = comps[0].clone();
        let mut cs: Vec<(usize, Elem)> = aff.cs;
        for v in &base {
            let dig: Vec<Vec<Poly>> = fr.iter().map(|(n, d)| digits(&n.rem(d), d, v)).collect();
            let emax = dig.iter().map(|x| x.len()).max().unwrap_or(0);
            for e in 2..=emax {
                for k in 0..v.degi() as usize {
                    let at = |j: usize| dig[j].get(e - 1).map(|a| a.coeff(k)).unwrap_or_else(Elem::zero);
                    let eq = Affine { c0: at(0), cs: ids.iter().enumerate().map(|(j, id)| (*id, at(j + 1))).collect() };
                    self.equate(&eq, level - 1);
                }
            }
            let vp_inv = t.deriv_poly(v, level).inv_mod(v).ok_or_else(|| Error::Internal("pole factor is not normal".into()))?;
            let rho: Vec<Poly> =
                dig.iter().map(|x| x.first().map(|a| a.mul(&vp_inv).rem(v)).unwrap_or_else(Poly::zero)).collect();
            let ve = Elem::from_poly(var, v.clone());
            if rho[1..].iter().all(|r| r.is_zero()) {
                if rho[0].is_zero() {
                    continue;
                }
                let zs = integer_residues(t, &rho[0], &Poly::one(), v);
                let mut covered = 0;
                for z in zs {
                    let g = Poly::gcd(&rho[0].sub(&Poly::constant(Elem::int(z))), v);
                    covered += g.degi();
                    if z != 0 {
                        let ge = Elem::from_poly(var, g);
                        c0 = &c0 - &(&Elem::int(z) * &t.log_derivative(&ge));
                        self.known.push((ge, z));
                    }
                }
                if covered != v.degi() {
                    return Ok(false);
                }
            } else if rho.iter().all(|r| r.degi() <= 0) {
                let n = self.unknown(Some(ve.clone()));
                let eq = Affine {
                    c0: rho[0].coeff(0),
                    cs: ids
                        .iter()
                        .enumerate()
                        .map(|(j, id)| (*id, rho[j + 1].coeff(0)))
                        .chain(std::iter::once((n, Elem::int(-1))))
                        .collect(),
                };
                self.equate(&eq, level - 1);
                cs.push((n, -t.log_derivative(&ve)));
            } else {
                return Err(Error::Undecided("residues depend on the parameters in a non-constant way".into()));
            }
        }
        // polynomial and Laurent parts
        let laurent = |e: &Elem| -> Vec<(i64, Elem)> {
            let (n, d) = e.as_frac_in(var);
            let (q, r) = n.divrem(&d);
            let mut out: Vec<(i64, Elem)> =
                q.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, c)| (j as i64, c.clone())).collect();
            if t.kind(level) == Kind::Hyp && d.degi() > 0 {
                for (i, a) in digits(&r, &d, &Poly::x()).into_iter().enumerate() {
                    if !a.is_zero() {
                        out.push((-(i as i64) - 1, a.coeff(0)));
                    }
                }
            }
            out
        };
        let parts0 = laurent(&c0);
        let parts: Vec<Vec<(i64, Elem)>> = cs.iter().map(|(_, e)| laurent(e)).collect();
        let mut exps: Vec<i64> = parts0.iter().map(|p| p.0).chain(parts.iter().flatten().map(|p| p.0)).collect();
        exps.sort();
        exps.dedup();
        let pick = |ps: &[(i64, Elem)], j: i64| ps.iter().find(|p| p.0 == j).map(|p| p.1.clone()).unwrap_or_else(Elem::zero);
        for &j in exps.iter().filter(|&&j| j != 0) {
            let eq = Affine { c0: pick(&parts0, j), cs: cs.iter().zip(&parts).map(|((id, _), p)| (*id, pick(p, j))).collect() };
            self.equate(&eq, level - 1);
        }
        let mut low = Affine { c0: pick(&parts0, 0), cs: cs.iter().zip(&parts).map(|((id, _), p)| (*id, pick(p, 0))).collect() };
        if t.kind(level) == Kind::Hyp {
            let z = self.unknown(Some(t.gen(level)));
            low.cs.push((z, -t.def(level)));
        }
        self.level(low, level - 1)
    }

    fn solve(&self) -> Result<Option<Vec<i64>>> {
        let n = self.bases.len();
        let rows: Vec<Vec<BigRational>> = self
            .rows
            .iter()
            .map(|(terms, c)| {
                let mut r = vec![BigRational::zero(); n + 1];
                for (id, v) in terms {
                    r[*id] = &r[*id] + v;
                }
                r[n] = c.clone();
                r
            })
            .collect();
        let vals: Vec<BigRational> = match solve_rational(&rows, n) {
            QSolution::Inconsistent => return Ok(None),
            QSolution::Unique(v) => v,
            QSolution::Partial(v) => {
                if v.iter().any(|x| x.is_none()) {
                    return Err(Error::Undecided("logarithmic derivative exponents are not determined; is the tower regular?".into()));
                }
                v.into_iter().map(|x| x.unwrap()).collect()
            }
        };
        let mut out = Vec::new();
        for v in vals {
            if !rational_is_integer(&v) {
                return Ok(None);
            }
            match v.to_integer().to_i64() {
                Some(x) => out.push(x),
                None => return Ok(None),
            }
        }
        Ok(Some(out))
    }

    fn product(&self, vals: &[i64]) -> Elem {
        let mut u = Elem::one();
        for (g, z) in &self.known {
            u = &u * &g.pow(*z);
        }
        for (b, z) in self.bases.iter().zip(vals) {
            if let Some(b) = b {
                if *z != 0 {
                    u = &u * &b.pow(*z);
                }
            }
        }
        u
    }
}

/// Finds `u` in the field of level `level` with `u'/u = w`.
pub fn is_log_derivative(tower: &Tower, w: &Elem, level: usize) -> Result<Option<Elem>> {
    if w.is_zero() {
        return Ok(Some(Elem::one()));
    }
    let mut s = Solver::new(tower);
    if !s.level(Affine { c0: w.clone(), cs: vec![] }, level)? {
        return Ok(None);
    }
    let Some(vals) = s.solve()? else { return Ok(None) };
    let u = s.product(&vals);
    if &tower.log_derivative(&u) != w {
        return Err(Error::Internal("logarithmic derivative reconstruction failed".into()));
    }
    Ok(Some(u))
}

/// Finds an integer `k` accepted by `admissible` and `u` with
/// `u'/u = w0 + k w1` in the field of level `level`.
pub fn param_log_derivative(
    tower: &Tower,
    w0: &Elem,
    w1: &Elem,
    level: usize,
    admissible: &dyn Fn(i64) -> bool,
) -> Result<Option<(i64, Elem)>> {
    let mut s = Solver::new(tower);
    let k = s.unknown(None);
    if !s.level(Affine { c0: w0.clone(), cs: vec![(k, w1.clone())] }, level)? {
        return Ok(None);
    }
    let Some(vals) = s.solve()? else { return Ok(None) };
    if !admissible(vals[k]) {
        return Ok(None);
    }
    let u = s.product(&vals);
    let target = w0 + &(&Elem::int(vals[k]) * w1);
    if tower.log_derivative(&u) != target {
        return Err(Error::Internal("logarithmic derivative reconstruction failed".into()));
    }
    Ok(Some((vals[k], u)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn log_tower() -> (Tower, Elem, Elem) {
        let mut t = Tower::new(&[], false);
        let x = t.push("x", Kind::Prim, Elem::one()).unwrap();
        let l = t.push("t", Kind::Prim, x.inv()).unwrap();
        (t, x, l)
    }

    #[test]
    fn recognizes_products_of_powers() {
        let (t, x, l) = log_tower();
        let w1 = &(&l * &l) + &Elem::one();
        let w = &(&Elem::int(2) / &x) + &(&Elem::int(3) * &t.log_derivative(&w1));
        let u = is_log_derivative(&t, &w, 2).unwrap().unwrap();
        assert_eq!(u, &(&x * &x) * &w1.pow(3));
        assert_eq!(is_log_derivative(&t, &x.inv().mul_ref(&Elem::ratio(1, 2)), 2).unwrap(), None);
        assert_eq!(is_log_derivative(&t, &l, 2).unwrap(), None);
    }

    #[test]
    fn exponential_powers_need_the_generator() {
        let mut t = Tower::new(&[], false);
        let x = t.push("x", Kind::Prim, Elem::one()).unwrap();
        let e = t.push("e", Kind::Hyp, Elem::one()).unwrap();
        let w = &Elem::int(-3) + &(&Elem::int(2) / &x);
        let u = is_log_derivative(&t, &w, 2).unwrap().unwrap();
        assert_eq!(u, &(&x * &x) / &e.pow(3));
        assert_eq!(is_log_derivative(&t, &Elem::ratio(1, 2), 2).unwrap(), None);
    }

    #[test]
    fn parametric_shift_is_found() {
        let mut t = Tower::new(&[], false);
        let x = t.push("x", Kind::Prim, Elem::one()).unwrap();
        // u'/u = 2/x - 3 + k has the solution k = 3, u = x^2
        let w0 = &(&Elem::int(2) / &x) - &Elem::int(3);
        let r = param_log_derivative(&t, &w0, &Elem::one(), 1, &|k| k >= 0).unwrap();
        assert_eq!(r, Some((3, &x * &x)));
        let r = param_log_derivative(&t, &w0, &Elem::one(), 1, &|k| k < 0).unwrap();
        assert_eq!(r, None);
        let r = param_log_derivative(&t, &Elem::ratio(1, 2), &Elem::one(), 1, &|_| true).unwrap();
        assert_eq!(r, None);
    }
}
