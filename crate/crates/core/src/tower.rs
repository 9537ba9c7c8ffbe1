//! Towers of primitive and hyperexponential monomials over Q(i)(params).
//!
//! Variables are numbered with the parameters first, then the generators.
//! Level `0` is the constant field; level `i` adjoins generator `t_i`.

use crate::elem::{Elem, Poly};
use crate::error::{Error, Result};
use crate::laurent::Laurent;
use crate::num::Gq;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    /// `t' = def`
    Prim,
    /// `t'/t = def`
    Hyp,
}

#[derive(Clone, Debug)]
pub struct Generator {
    pub name: String,
    pub kind: Kind,
    pub def: Elem,
}

#[derive(Clone, Debug)]
pub struct Tower {
    pub params: Vec<String>,
    pub gaussian_i: bool,
    pub gens: Vec<Generator>,
}

impl Tower {
    pub fn new(params: &[&str], gaussian_i: bool) -> Tower {
        Tower { params: params.iter().map(|s| s.to_string()).collect(), gaussian_i, gens: Vec::new() }
    }

    pub fn nparams(&self) -> usize {
        self.params.len()
    }

    /// Number of generators.
    pub fn height(&self) -> usize {
        self.gens.len()
    }

    pub fn nvars(&self) -> usize {
        self.params.len() + self.gens.len()
    }

    /// Variable index of generator `t_level` (levels start at 1).
    pub fn var_of(&self, level: usize) -> usize {
        assert!(level >= 1 && level <= self.gens.len(), "no generator at level {}", level);
        self.params.len() + level - 1
    }

    pub fn level_of_var(&self, v: usize) -> usize {
        if v < self.params.len() {
            0
        } else {
            v - self.params.len() + 1
        }
    }

    /// Smallest level containing the element.
    pub fn level(&self, e: &Elem) -> usize {
        e.var().map_or(0, |v| self.level_of_var(v))
    }

    pub fn gen(&self, level: usize) -> Elem {
        Elem::var_elem(self.var_of(level))
    }

    pub fn param(&self, k: usize) -> Elem {
        Elem::var_elem(k)
    }

    pub fn kind(&self, level: usize) -> Kind {
        self.gens[level - 1].kind
    }

    pub fn def(&self, level: usize) -> &Elem {
        &self.gens[level - 1].def
    }

    /// Adjoins a generator; `def` must lie in the current top field.
    pub fn push(&mut self, name: &str, kind: Kind, def: Elem) -> Result<Elem> {
        if self.level(&def) > self.gens.len() {
            return Err(Error::Level(format!("definition of {} uses later generators", name)));
        }
        if kind == Kind::Hyp && def.is_zero() {
            return Err(Error::Input(format!("hyperexponential {} needs a nonzero logarithmic derivative", name)));
        }
        if kind == Kind::Prim && def.is_zero() {
            return Err(Error::Input(format!("primitive {} needs a nonzero derivative", name)));
        }
        self.gens.push(Generator { name: name.to_string(), kind, def });
        Ok(self.gen(self.gens.len()))
    }

    /// Truncation to the first `level` generators.
    pub fn truncate(&self, level: usize) -> Tower {
        Tower { params: self.params.clone(), gaussian_i: self.gaussian_i, gens: self.gens[..level].to_vec() }
    }

    pub fn name_of_var(&self, v: usize) -> &str {
        if v < self.params.len() {
            &self.params[v]
        } else {
            &self.gens[v - self.params.len()].name
        }
    }

    /// Derivative of a polynomial in generator `t_level` with coefficients
    /// of lower level.
    pub fn deriv_poly(&self, p: &Poly, level: usize) -> Poly {
        let def = self.def(level);
        match self.kind(level) {
            Kind::Prim => {
                let mut c: Vec<Elem> = p.coeffs().iter().map(|x| self.derive(x)).collect();
                for (i, x) in p.coeffs().iter().enumerate().skip(1) {
                    c[i - 1] = &c[i - 1] + &(&(x * def) * &Elem::int(i as i64));
                }
                Poly::new(c)
            }
            Kind::Hyp => Poly::new(
                p.coeffs()
                    .iter()
                    .enumerate()
                    .map(|(i, x)| &self.derive(x) + &(&(x * def) * &Elem::int(i as i64)))
                    .collect(),
            ),
        }
    }

    /// Coefficientwise derivative of a polynomial (the generator is held fixed).
    pub fn deriv_coeffs(&self, p: &Poly) -> Poly {
        p.map(|x| self.derive(x))
    }

    pub fn derive(&self, e: &Elem) -> Elem {
        let v = match e.var() {
            None => return Elem::zero(),
            Some(v) => v,
        };
        if v < self.params.len() {
            return Elem::zero();
        }
        let level = self.level_of_var(v);
        let (n, d) = e.as_frac_in(v);
        let dn = self.deriv_poly(&n, level);
        if d.is_one() {
            return Elem::from_poly(v, dn);
        }
        let dd = self.deriv_poly(&d, level);
        let num = dn.mul(&d).sub(&n.mul(&dd));
        Elem::from_frac(v, num, d.mul(&d))
    }

    /// Logarithmic derivative `e'/e`.
    pub fn log_derivative(&self, e: &Elem) -> Elem {
        &self.derive(e) / e
    }

    /// Derivative of a Laurent polynomial in `t_level`.
    pub fn deriv_laurent(&self, p: &Laurent, level: usize) -> Laurent {
        let def = self.def(level);
        let mut out = Laurent::zero();
        for (j, c) in p.terms() {
            out.add_term(j, &self.derive(c));
            if j != 0 {
                match self.kind(level) {
                    Kind::Prim => out.add_term(j - 1, &(&(c * def) * &Elem::int(j))),
                    Kind::Hyp => out.add_term(j, &(&(c * def) * &Elem::int(j))),
                }
            }
        }
        out
    }

    /// Whether a polynomial in `t_level` is normal: coprime to its derivative.
    pub fn is_normal(&self, p: &Poly, level: usize) -> bool {
        if p.degi() <= 0 {
            return true;
        }
        Poly::gcd(p, &self.deriv_poly(p, level)).is_one()
    }

    /// Whether a polynomial in `t_level` is special: divides its derivative.
    pub fn is_special(&self, p: &Poly, level: usize) -> bool {
        if p.is_zero() {
            return false;
        }
        self.deriv_poly(p, level).rem(p).is_zero()
    }

    /// Splits a nonzero polynomial into its special part (the power of `t`
    /// for hyperexponential levels) and its normal part.
    pub fn split_special(&self, p: &Poly, level: usize) -> (usize, Poly) {
        match self.kind(level) {
            Kind::Prim => (0, p.clone()),
            Kind::Hyp => {
                let k = p.low_order().unwrap_or(0);
                (k, Poly::new(p.coeffs()[k..].to_vec()))
            }
        }
    }

    /// Order of an element at the polynomial `p` (irreducible or squarefree)
    /// in `t_level`; the order at infinity is `deg den - deg num`.
    pub fn order_at(&self, e: &Elem, p: Option<&Poly>, level: usize) -> Option<i64> {
        if e.is_zero() {
            return None;
        }
        let (n, d) = e.as_frac_in(self.var_of(level));
        match p {
            None => Some(d.degi() - n.degi()),
            Some(p) => Some(mult(&n, p) as i64 - mult(&d, p) as i64),
        }
    }

    /// Checks that every generator definition lies below its level.
    pub fn validate(&self) -> Result<()> {
        for (i, g) in self.gens.iter().enumerate() {
            if self.level(&g.def) > i {
                return Err(Error::Level(format!("definition of {} is not in the lower field", g.name)));
            }
        }
        Ok(())
    }

    /// A sample point for numeric evaluation, one value per variable.
    pub fn sample_point(&self, seed: u64) -> Vec<Gq> {
        (0..self.nvars())
            .map(|k| {
                let h = (seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407 + 97 * k as u64)) >> 33;
                Gq::from_ratio((h % 89) as i64 + 3, (h % 7) as i64 + 2)
            })
            .collect()
    }
}

fn mult(a: &Poly, p: &Poly) -> usize {
    let mut k = 0;
    let mut a = a.clone();
    loop {
        if a.degi() < p.degi() || p.degi() <= 0 {
            return k;
        }
        let (q, r) = a.divrem(p);
        if !r.is_zero() {
            return k;
        }
        a = q;
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivation_of_log_and_exp() {
        let mut t = Tower::new(&[], false);
        let x = t.push("x", Kind::Prim, Elem::one()).unwrap();
        let l = t.push("t", Kind::Prim, x.inv()).unwrap();
        assert_eq!(t.derive(&(&l * &x)), &l + &Elem::one());
        let mut u = Tower::new(&[], false);
        let x = u.push("x", Kind::Prim, Elem::one()).unwrap();
        let e = u.push("e", Kind::Hyp, Elem::one()).unwrap();
        let f = &(&x * &e) / &(&e + &Elem::one());
        let df = u.derive(&f);
        let expect = &(&e * &(&(&e + &Elem::one()) + &x)) / &(&(&e + &Elem::one()) * &(&e + &Elem::one()));
        assert_eq!(df, expect);
    }

    #[test]
    fn normal_and_special() {
        let mut t = Tower::new(&[], false);
        t.push("x", Kind::Prim, Elem::one()).unwrap();
        t.push("e", Kind::Hyp, Elem::one()).unwrap();
        let p = Poly::x();
        assert!(t.is_special(&p, 2));
        assert!(!t.is_normal(&p, 2));
        let q = Poly::x().add(&Poly::one());
        assert!(t.is_normal(&q, 2));
    }
}
