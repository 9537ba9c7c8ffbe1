//! Splitting `h = xi + eta'/eta` with `xi` free of integer residues.

use crate::elem::{Elem, Poly};
use crate::residue::integer_residues;
use crate::tower::Tower;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalForm {
    pub xi: Elem,
    pub eta: Elem,
}

/// Simple-pole part of the normal denominator of `h` in `t_level`.
fn simple_part(tower: &Tower, d: &Poly, level: usize) -> Option<Poly> {
    let (_, dn) = tower.split_special(d, level);
    dn.squarefree().into_iter().find(|(_, m)| *m == 1).map(|(p, _)| p)
}

/// Nonzero integer residues of `h` at its simple normal poles, each with
/// the factor of the denominator carrying it.
pub fn integer_residue_factors(tower: &Tower, h: &Elem, level: usize) -> Vec<(i64, Poly)> {
    let var = tower.var_of(level);
    let (n, d) = h.as_frac_in(var);
    let Some(d1) = simple_part(tower, &d, level) else { return vec![] };
    let dp = tower.deriv_poly(&d, level);
    integer_residues(tower, &n, &dp, &d1)
        .into_iter()
        .filter(|&z| z != 0)
        .map(|z| (z, Poly::gcd(&n.sub(&dp.scale(&Elem::int(z))), &d1)))
        .collect()
}

/// Whether `h` has no nonzero integer residue at a normal pole.
pub fn is_normalized(tower: &Tower, h: &Elem, level: usize) -> bool {
    integer_residue_factors(tower, h, level).is_empty()
}

/// Canonical split `h = xi + eta'/eta` with `xi` normalized in `t_level`
/// and `eta` a product of integer powers of normal polynomials.
pub fn normal_form(tower: &Tower, h: &Elem, level: usize) -> NormalForm {
    let var = tower.var_of(level);
    let mut xi = h.clone();
    let mut eta = Elem::one();
    loop {
        let found = integer_residue_factors(tower, &xi, level);
        if found.is_empty() {
            return NormalForm { xi, eta };
        }
        for (z, v) in found {
            let ve = Elem::from_poly(var, v);
            eta = &eta * &ve.pow(z);
            xi = &xi - &(&Elem::int(z) * &tower.log_derivative(&ve));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::Kind;

    #[test]
    fn integer_residues_move_into_eta() {
        let mut t = Tower::new(&[], false);
        let x = t.push("x", Kind::Prim, Elem::one()).unwrap();
        let l = t.push("t", Kind::Prim, x.inv()).unwrap();
        let w = &(&l * &l) + &Elem::one();
        let h = &(&(&Elem::int(2) * &t.log_derivative(&w)) + &Elem::ratio(1, 3)) + &(&l - &x).inv();
        let nf = normal_form(&t, &h, 2);
        assert_eq!(&nf.xi + &t.log_derivative(&nf.eta), h);
        assert!(is_normalized(&t, &nf.xi, 2));
        assert_eq!(nf.eta, &w * &w);
    }
}
