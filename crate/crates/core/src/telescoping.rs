//! Reduction-based creative telescoping with respect to a shift of one parameter.

use crate::basis::support_many;
use crate::elem::{Elem, Poly};
use crate::error::{Error, Result};
use crate::linalg::{nullspace, rank};
use crate::reduction::Reducer;
use crate::tower::{Kind, Tower};

/// Action of `k -> k + 1` on the constants and the generators.
#[derive(Clone, Debug)]
pub struct ShiftSpec {
    /// Variable index of the shifted parameter.
    pub param: usize,
    /// `images[l - 1]` is the image of `t_l`.
    pub images: Vec<Elem>,
}

/// A telescoper `sum e_i sigma^i` with its certificate.
#[derive(Clone, Debug)]
pub struct Telescoper {
    pub coeffs: Vec<Elem>,
    /// `g` with `sum e_i sigma^i(f) = g'`.
    pub certificate: Elem,
    /// Remainders `r_0, ..., r_rho` of the shifted integrands.
    pub remainders: Vec<Elem>,
}

impl ShiftSpec {
    /// Builds a shift of parameter `param` from images given per generator
    /// level. Every generator needs an image.
    pub fn new(tower: &Tower, param: &str, images: &[(usize, Elem)]) -> Result<ShiftSpec> {
        let Some(p) = tower.params.iter().position(|n| n == param) else {
            return Err(Error::SpecIncomplete(format!("unknown parameter {}", param)));
        };
        let mut out: Vec<Option<Elem>> = vec![None; tower.height()];
        for (l, e) in images {
            if *l == 0 || *l > tower.height() {
                return Err(Error::SpecIncomplete(format!("no generator at level {}", l)));
            }
            out[l - 1] = Some(e.clone());
        }
        let mut imgs = Vec::new();
        for (l, e) in out.into_iter().enumerate() {
            match e {
                Some(e) => imgs.push(e),
                None => {
                    return Err(Error::SpecIncomplete(format!("no image for {}", tower.gens[l].name)));
                }
            }
        }
        let spec = ShiftSpec { param: p, images: imgs };
        spec.check(tower)?;
        Ok(spec)
    }

    fn image_of_var(&self, tower: &Tower, v: usize) -> Elem {
        if v == self.param {
            &Elem::var_elem(v) + &Elem::one()
        } else if v < tower.nparams() {
            Elem::var_elem(v)
        } else {
            self.images[tower.level_of_var(v) - 1].clone()
        }
    }

    /// `sigma(f)`.
    pub fn apply(&self, tower: &Tower, f: &Elem) -> Result<Elem> {
        f.map_vars(&|v| self.image_of_var(tower, v))
            .ok_or_else(|| Error::ShiftIncompatible("a denominator maps to zero".into()))
    }

    /// Verifies that the shift commutes with the derivation on every generator.
    pub fn check(&self, tower: &Tower) -> Result<()> {
        for l in 1..=tower.height() {
            let img = &self.images[l - 1];
            if img.is_zero() {
                return Err(Error::ShiftIncompatible(format!("{} maps to zero", tower.gens[l - 1].name)));
            }
            let lhs = tower.derive(img);
            let dt = match tower.kind(l) {
                Kind::Prim => tower.def(l).clone(),
                Kind::Hyp => tower.def(l) * &tower.gen(l),
            };
            let rhs = self.apply(tower, &dt)?;
            if lhs != rhs {
                return Err(Error::ShiftIncompatible(format!("generator {}", tower.gens[l - 1].name)));
            }
        }
        Ok(())
    }
}

/// `sigma^i(f)`.
pub fn shift(tower: &Tower, f: &Elem, spec: &ShiftSpec, i: usize) -> Result<Elem> {
    let mut e = f.clone();
    for _ in 0..i {
        e = spec.apply(tower, &e)?;
    }
    Ok(e)
}

/// A telescoper of minimal order at most `max_order`, or `None`.
pub fn telescoper(red: &mut Reducer, f: &Elem, spec: &ShiftSpec, max_order: usize) -> Result<Option<Telescoper>> {
    let tower = red.tower.clone();
    let n = tower.height();
    let mut gs = Vec::new();
    let mut rs = Vec::new();
    let mut fi = f.clone();
    for order in 0..=max_order {
        if order > 0 {
            fi = spec.apply(&tower, &fi)?;
        }
        let (g, r) = red.rpair(&fi, &Elem::zero(), n)?;
        gs.push(g);
        rs.push(r);
        let rows: Vec<Vec<Elem>> = support_many(&tower, &rs, n).into_values().collect();
        let ncols = order + 1;
        if rank(&rows, ncols) == ncols {
            continue;
        }
        let mut ns = nullspace(&rows, ncols);
        if ns.len() != 1 {
            return Err(Error::Internal("dependence found late".into()));
        }
        let coeffs = normalize(ns.pop().unwrap());
        let mut cert = Elem::zero();
        let mut lhs = Elem::zero();
        let mut fj = f.clone();
        for (j, e) in coeffs.iter().enumerate() {
            if j > 0 {
                fj = spec.apply(&tower, &fj)?;
            }
            cert = &cert + &(e * &gs[j]);
            lhs = &lhs + &(e * &fj);
        }
        if tower.derive(&cert) != lhs {
            return Err(Error::Internal("telescoper identity fails".into()));
        }
        return Ok(Some(Telescoper { coeffs, certificate: cert, remainders: rs }));
    }
    Ok(None)
}

fn denominator(e: &Elem) -> Option<Elem> {
    let Elem::Frac(f) = e else { return None };
    let (num, den) = e.as_frac_in(f.var);
    if den.deg() != Some(0) {
        return Some(Elem::from_poly(f.var, den));
    }
    num.coeffs().iter().find_map(denominator)
}

/// Scales a dependence so that the entries are coprime polynomials in the
/// parameters with a positive rational leading part of the last entry.
fn normalize(mut v: Vec<Elem>) -> Vec<Elem> {
    let last = v.iter().rev().find(|e| !e.is_zero()).cloned().unwrap();
    let inv = last.inv();
    for e in v.iter_mut() {
        *e = &*e * &inv;
    }
    while let Some(d) = v.iter().find_map(denominator) {
        for e in v.iter_mut() {
            *e = &*e * &d;
        }
    }
    let vars: Vec<usize> = v.iter().filter_map(|e| e.var()).collect();
    if let Some(&var) = vars.first() {
        if vars.iter().all(|&w| w == var) && v.iter().all(|e| e.var().is_some() || e.as_num().is_some()) {
            let mut g = Poly::zero();
            for e in &v {
                g = Poly::gcd(&g, &e.as_frac_in(var).0);
            }
            if g.deg().unwrap_or(0) > 0 {
                let ge = Elem::from_poly(var, g);
                for e in v.iter_mut() {
                    *e = &*e / &ge;
                }
            }
        }
    }
    let c = numeric_content(v.iter().rev().find(|e| !e.is_zero()).unwrap());
    for e in v.iter_mut() {
        *e = &*e / &c;
    }
    v
}

/// Leading numeric coefficient of a polynomial in the parameters.
fn numeric_content(e: &Elem) -> Elem {
    match e {
        Elem::Num(_) => e.clone(),
        Elem::Frac(f) => {
            let (num, _) = e.as_frac_in(f.var);
            numeric_content(num.lc())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    #[test]
    fn identity_shift_gives_order_zero_for_derivatives() {
        let mut t = Tower::new(&["k"], false);
        t.push("x", Kind::Prim, Elem::one()).unwrap();
        let spec = ShiftSpec::new(&t, "k", &[(1, t.gen(1))]).unwrap();
        let f = parse("2*k*x", &t).unwrap();
        let mut red = Reducer::new(t.clone());
        let tel = telescoper(&mut red, &f, &spec, 2).unwrap().unwrap();
        assert_eq!(tel.coeffs, vec![Elem::one()]);
        assert_eq!(tel.certificate, parse("k*x^2", &t).unwrap());
    }

    #[test]
    fn rejects_non_commuting_images() {
        let mut t = Tower::new(&["k"], false);
        t.push("x", Kind::Prim, Elem::one()).unwrap();
        let e = parse("k*x", &t).unwrap();
        t.push("t", Kind::Hyp, e).unwrap();
        let bad = ShiftSpec::new(&t, "k", &[(1, t.gen(1)), (2, t.gen(2))]);
        assert!(matches!(bad, Err(Error::ShiftIncompatible(_))));
        let missing = ShiftSpec::new(&t, "k", &[(1, t.gen(1))]);
        assert!(matches!(missing, Err(Error::SpecIncomplete(_))));
    }
}
