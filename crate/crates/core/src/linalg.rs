//! Linear algebra over the tower's fields and over Q.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::elem::Elem;
use crate::num::Gq;

/// Row echelon form in place; returns pivot columns.
fn echelon(m: &mut Vec<Vec<Elem>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv();
        let row: Vec<Elem> = m[r].iter().map(|x| x * &inv).collect();
        m[r] = row;
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let new: Vec<Elem> = m[i].iter().zip(m[r].iter()).map(|(a, b)| a - &(&f * b)).collect();
                m[i] = new;
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    pivots
}

/// A solution of `A x = b` with free variables set to zero.
pub fn solve(a: &[Vec<Elem>], b: &[Elem], ncols: usize) -> Option<Vec<Elem>> {
    let mut m: Vec<Vec<Elem>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.resize(ncols, Elem::zero());
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = echelon(&mut m, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Elem::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][ncols].clone();
    }
    Some(x)
}

/// Basis of the right null space of `A`.
pub fn nullspace(a: &[Vec<Elem>], ncols: usize) -> Vec<Vec<Elem>> {
    let mut m: Vec<Vec<Elem>> = a
        .iter()
        .map(|row| {
            let mut r = row.clone();
            r.resize(ncols, Elem::zero());
            r
        })
        .collect();
    let pivots = echelon(&mut m, ncols);
    let mut out = Vec::new();
    for f in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Elem::zero(); ncols];
        v[f] = Elem::one();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = -&m[r][f];
        }
        out.push(v);
    }
    out
}

/// Rank of a matrix.
pub fn rank(a: &[Vec<Elem>], ncols: usize) -> usize {
    let mut m = a.to_vec();
    echelon(&mut m, ncols).len()
}

/// Sparse multivariate polynomial over Q(i) in the parameters.
type MPoly = BTreeMap<Vec<u32>, Gq>;

fn mp_one(n: usize) -> MPoly {
    let mut m = MPoly::new();
    m.insert(vec![0; n], Gq::one());
    m
}

fn mp_mul(a: &MPoly, b: &MPoly) -> MPoly {
    let mut out = MPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let c = ca * cb;
            let slot = out.entry(e).or_insert_with(Gq::zero);
            *slot = &*slot + &c;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn mp_add(a: &MPoly, b: &MPoly) -> MPoly {
    let mut out = a.clone();
    for (e, c) in b {
        let slot = out.entry(e.clone()).or_insert_with(Gq::zero);
        *slot = &*slot + c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Numerator and denominator of a constant as polynomials in the
/// `n` parameters.
fn to_mpoly(e: &Elem, n: usize) -> (MPoly, MPoly) {
    match e {
        Elem::Num(q) => {
            let mut m = MPoly::new();
            if !q.is_zero() {
                m.insert(vec![0; n], q.clone());
            }
            (m, mp_one(n))
        }
        Elem::Frac(f) => {
            let conv = |p: &crate::elem::Poly| -> (MPoly, MPoly) {
                let parts: Vec<(MPoly, MPoly)> = p.coeffs().iter().map(|c| to_mpoly(c, n)).collect();
                let mut dens: Vec<MPoly> = Vec::new();
                for (_, d) in &parts {
                    if !dens.contains(d) {
                        dens.push(d.clone());
                    }
                }
                let common = dens.iter().fold(mp_one(n), |acc, d| mp_mul(&acc, d));
                let mut num = MPoly::new();
                for (i, (cn, cd)) in parts.iter().enumerate() {
                    if cn.is_empty() {
                        continue;
                    }
                    let others = dens.iter().filter(|d| *d != cd).fold(mp_one(n), |acc, d| mp_mul(&acc, d));
                    let mut term = mp_mul(cn, &others);
                    term = term
                        .into_iter()
                        .map(|(mut e, c)| {
                            e[f.var] += i as u32;
                            (e, c)
                        })
                        .collect();
                    num = mp_add(&num, &term);
                }
                (num, common)
            };
            let (nn, nd) = conv(&f.num);
            let (dn, dd) = conv(&f.den);
            (mp_mul(&nn, &dd), mp_mul(&nd, &dn))
        }
    }
}

/// Rows over Q equivalent to `vals[0] + sum_j k_j vals[j+1] = 0` in the
/// constant field, for rational unknowns `k_j`. Each row holds the
/// coefficients of the unknowns followed by the constant term.
pub fn constant_equation_rows(vals: &[Elem], nparams: usize) -> Vec<Vec<BigRational>> {
    let parts: Vec<(MPoly, MPoly)> = vals.iter().map(|v| to_mpoly(v, nparams)).collect();
    let mut dens: Vec<MPoly> = Vec::new();
    for (n, d) in &parts {
        if !n.is_empty() && !dens.contains(d) {
            dens.push(d.clone());
        }
    }
    let r = vals.len() - 1;
    let mut cols: BTreeMap<Vec<u32>, Vec<Gq>> = BTreeMap::new();
    for (j, (n, d)) in parts.iter().enumerate() {
        if n.is_empty() {
            continue;
        }
        let others = dens.iter().filter(|x| *x != d).fold(mp_one(nparams), |acc, x| mp_mul(&acc, x));
        for (e, c) in mp_mul(n, &others) {
            let slot = cols.entry(e).or_insert_with(|| vec![Gq::zero(); r + 1]);
            let pos = if j == 0 { r } else { j - 1 };
            slot[pos] = &slot[pos] + &c;
        }
    }
    let mut rows = Vec::new();
    for (_, v) in cols {
        let re: Vec<BigRational> = v.iter().map(|q| q.re.clone()).collect();
        let im: Vec<BigRational> = v.iter().map(|q| q.im.clone()).collect();
        for row in [re, im] {
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    rows
}

pub enum QSolution {
    Inconsistent,
    Unique(Vec<BigRational>),
    /// Values of the determined unknowns; `None` for unknowns that are free
    /// or depend on free ones.
    Partial(Vec<Option<BigRational>>),
}

/// Solves rows `coeffs | constant` meaning `sum c_j x_j + constant = 0`.
pub fn solve_rational(rows: &[Vec<BigRational>], n: usize) -> QSolution {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..=n {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        if c == n {
            return QSolution::Inconsistent;
        }
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..=n {
                    let d = &f * &m[r][k];
                    m[i][k] = &m[i][k] - &d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut vals: Vec<Option<BigRational>> = vec![None; n];
    for (row, &c) in pivots.iter().enumerate() {
        let others_zero = (0..n).all(|k| k == c || m[row][k].is_zero());
        if others_zero {
            vals[c] = Some(-m[row][n].clone());
        }
    }
    if pivots.len() == n {
        QSolution::Unique(vals.into_iter().map(|v| v.unwrap()).collect())
    } else {
        QSolution::Partial(vals)
    }
}

pub fn rational_is_integer(q: &BigRational) -> bool {
    q.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_and_nullspace() {
        let a = vec![vec![Elem::int(1), Elem::int(2)], vec![Elem::int(2), Elem::int(4)]];
        assert!(solve(&a, &[Elem::int(1), Elem::int(3)], 2).is_none());
        let x = solve(&a, &[Elem::int(1), Elem::int(2)], 2).unwrap();
        assert_eq!(x, vec![Elem::int(1), Elem::zero()]);
        let ns = nullspace(&a, 2);
        assert_eq!(ns, vec![vec![Elem::int(-2), Elem::int(1)]]);
    }

    #[test]
    fn parameter_coefficients_split_over_q() {
        // alpha * k1 - k2 + 3 = 0 forces k1 = 0, k2 = 3
        let alpha = Elem::var_elem(0);
        let rows = constant_equation_rows(&[Elem::int(3), alpha, Elem::int(-1)], 1);
        match solve_rational(&rows, 2) {
            QSolution::Unique(v) => {
                assert!(v[0].is_zero());
                assert_eq!(v[1], BigRational::from_integer(3.into()));
            }
            _ => panic!("expected a unique solution"),
        }
    }
}
