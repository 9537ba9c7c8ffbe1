//! Elementary integration through remainders of the complete reduction.
//!
//! The remainder of `f` is split into a part in
//! `R = C + sum R_i` (positive powers of primitive generators, nonzero
//! powers of hyperexponential ones) and a simple part in `S = sum S_i`.
//! The same is done for the remainders of `t_i'` and `t_i'/t_i`. The
//! integral is elementary exactly when constants `z_i` make the `R` parts
//! agree and the simple part of `f - sum z_i (...)` have constant residues.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use crate::basis::{coprime_base, digits, support_many};
use crate::elem::{resultant, Elem, Poly};
use crate::error::{Error, Result};
use crate::laurent::Laurent;
use crate::linalg::solve;
use crate::num::Gq;
use crate::reduction::Reducer;
use crate::residue::{integer_roots, interpolate};
use crate::tower::{Kind, Tower};

/// Decomposition `e = r + sum_L s[L-1]` with `r` in `R` and `s[L-1]` in `S_L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RsParts {
    pub r: Elem,
    pub s: Vec<Elem>,
}

/// Splits an element of level at most `level` along `R + S`.
pub fn project_rs(tower: &Tower, e: &Elem, level: usize) -> Result<RsParts> {
    let mut out = RsParts { r: Elem::zero(), s: vec![Elem::zero(); level] };
    rs_rec(tower, e, level, &mut out)?;
    Ok(out)
}

/// Proper part of `e` with respect to the normal part of its denominator,
/// and the Laurent polynomial left over.
fn split_simple(tower: &Tower, e: &Elem, level: usize) -> Result<(Elem, Laurent)> {
    let var = tower.var_of(level);
    let (n, d) = e.as_frac_in(var);
    let (_, dn) = tower.split_special(&d, level);
    let sp = if dn.degi() > 0 {
        let rest = d.exact_div(&dn);
        let x = n.mul(&rest.inv_mod(&dn).expect("coprime split")).rem(&dn);
        Elem::from_frac(var, x, dn)
    } else {
        Elem::zero()
    };
    let lp = Laurent::from_elem(&(e - &sp), var).ok_or(Error::NotInRS)?;
    Ok((sp, lp))
}

fn rs_rec(tower: &Tower, e: &Elem, level: usize, out: &mut RsParts) -> Result<()> {
    if e.is_zero() {
        return Ok(());
    }
    if level == 0 {
        out.r = &out.r + e;
        return Ok(());
    }
    let var = tower.var_of(level);
    let (sp, lp) = split_simple(tower, e, level)?;
    if !sp.is_zero() {
        let d = sp.as_frac_in(var).1;
        if !Poly::gcd(&d, &d.formal_derivative()).is_one() {
            return Err(Error::NotInRS);
        }
    }
    out.s[level - 1] = &out.s[level - 1] + &sp;
    for (j, c) in lp.terms() {
        if j == 0 {
            rs_rec(tower, c, level - 1, out)?;
        } else if j < 0 && tower.kind(level) == Kind::Prim {
            return Err(Error::NotInRS);
        } else {
            out.r = &out.r + &Laurent::monomial(c.clone(), j).to_elem(var);
        }
    }
    Ok(())
}

fn not_regular() -> Error {
    Error::Undecided("a normal factor divides its derivative; the tower is not regular".into())
}

/// Residue polynomial `A (Dv)^-1 mod v` of the `v^-1` digit of a simple element.
fn residue_poly(tower: &Tower, s: &Elem, v: &Poly, level: usize) -> Result<Poly> {
    if s.is_zero() {
        return Ok(Poly::zero());
    }
    let var = tower.var_of(level);
    let (n, d) = s.as_frac_in(var);
    let a1 = digits(&n.rem(&d), &d, v).into_iter().next().unwrap_or_else(Poly::zero);
    let dv = tower.deriv_poly(v, level);
    Ok(a1.mul(&dv.inv_mod(v).ok_or_else(not_regular)?).rem(v))
}

/// Derivative of `rho(alpha)` for the roots `alpha` of `v`, as a residue class mod `v`.
fn residue_derivative(tower: &Tower, rho: &Poly, v: &Poly) -> Poly {
    let vk = tower.deriv_coeffs(v);
    let vt = v.formal_derivative();
    let dt = vk.mul(&vt.inv_mod(v).expect("squarefree factor")).neg().rem(v);
    tower.deriv_coeffs(rho).add(&rho.formal_derivative().mul(&dt)).rem(v)
}

/// `c log(arg)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogTerm {
    pub coeff: Elem,
    pub arg: Elem,
}

/// `sum_{R(z) = 0} z log(gcd(den, num - z dden))` at generator `level`.
/// At a hyperexponential level the matching multiple of `log t` is
/// recorded as an ordinary log term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSumTerm {
    pub level: usize,
    /// Monic polynomial in `z` with constant coefficients.
    pub poly: Poly,
    pub num: Poly,
    pub dden: Poly,
    pub den: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryIntegral {
    pub rational: Elem,
    pub logs: Vec<LogTerm>,
    pub root_sums: Vec<RootSumTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElemOutcome {
    Elementary { integral: ElementaryIntegral, system: Vec<Vec<Elem>>, solution: Vec<Elem> },
    NotElementary { system: Vec<Vec<Elem>> },
}

/// Remainder projections used for one generator: `(q_i, r_i, s_i)` from the
/// R-pair of `t_i'` (primitive) or `t_i'/t_i` (hyperexponential).
struct GenData {
    q: Elem,
    parts: RsParts,
}

fn is_multiple(a: &[Elem], b: &[Elem]) -> bool {
    let Some(k) = a.iter().position(|x| !x.is_zero()) else { return true };
    if b[k].is_zero() {
        return false;
    }
    let c = &b[k] / &a[k];
    a.iter().zip(b).all(|(x, y)| &(x * &c) == y)
}

fn push_rows(rows: &mut Vec<Vec<Elem>>, new: impl IntoIterator<Item = Vec<Elem>>) {
    for row in new {
        if row.iter().all(|x| x.is_zero()) || rows.iter().any(|r| is_multiple(r, &row)) {
            continue;
        }
        rows.push(row);
    }
}

/// Decides whether `f` has an elementary integral over the top field and
/// computes one when it does.
pub fn integrate_elementary(red: &mut Reducer, f: &Elem) -> Result<ElemOutcome> {
    let tower = red.tower.clone();
    let n = tower.height();
    let (g, rem) = red.rpair(f, &Elem::zero(), n)?;
    let mut gens = Vec::new();
    for i in 1..=n {
        let d = tower.def(i).clone();
        let (q, r) = red.rpair(&d, &Elem::zero(), i - 1)?;
        gens.push(GenData { q, parts: project_rs(&tower, &r, n)? });
    }
    let pf = project_rs(&tower, &rem, n)?;
    let mut rows: Vec<Vec<Elem>> = Vec::new();
    let mut rvals: Vec<Elem> = gens.iter().map(|gd| gd.parts.r.clone()).collect();
    rvals.push(pf.r.clone());
    push_rows(&mut rows, support_many(&tower, &rvals, n).into_values());
    for level in 1..=n {
        let var = tower.var_of(level);
        let mut ss: Vec<Elem> = gens.iter().map(|gd| gd.parts.s[level - 1].clone()).collect();
        ss.push(pf.s[level - 1].clone());
        let dens: Vec<Poly> = ss.iter().filter(|s| !s.is_zero()).map(|s| s.as_frac_in(var).1).collect();
        for v in coprime_base(&dens) {
            let drho: Vec<Elem> = ss
                .iter()
                .map(|s| Ok(Elem::from_poly(var, residue_derivative(&tower, &residue_poly(&tower, s, &v, level)?, &v))))
                .collect::<Result<_>>()?;
            push_rows(&mut rows, support_many(&tower, &drho, level).into_values());
        }
    }
    let a: Vec<Vec<Elem>> = rows.iter().map(|r| r[..n].to_vec()).collect();
    let b: Vec<Elem> = rows.iter().map(|r| r[n].clone()).collect();
    let Some(z) = solve(&a, &b, n) else {
        return Ok(ElemOutcome::NotElementary { system: rows });
    };
    let mut rational = g;
    let mut logs = Vec::new();
    let mut root_sums = Vec::new();
    for (i, gd) in gens.iter().enumerate() {
        if z[i].is_zero() {
            continue;
        }
        let level = i + 1;
        rational = &rational - &(&z[i] * &gd.q);
        match tower.kind(level) {
            Kind::Prim => rational = &rational + &(&z[i] * &tower.gen(level)),
            Kind::Hyp => logs.push(LogTerm { coeff: z[i].clone(), arg: tower.gen(level) }),
        }
    }
    for level in 1..=n {
        let mut s = pf.s[level - 1].clone();
        for (i, gd) in gens.iter().enumerate() {
            s = &s - &(&z[i] * &gd.parts.s[level - 1]);
        }
        if !s.is_zero() {
            integrate_simple(&tower, &s, level, &mut logs, &mut root_sums)?;
        }
    }
    let integral = ElementaryIntegral { rational, logs, root_sums };
    if integral.root_sums.is_empty() && derivative_of(&tower, &integral) != *f {
        return Err(Error::Internal("elementary integral failed the derivative check".into()));
    }
    Ok(ElemOutcome::Elementary { integral, system: rows, solution: z })
}

/// Derivative of the explicit part of an elementary integral.
pub fn derivative_of(tower: &Tower, ei: &ElementaryIntegral) -> Elem {
    let mut d = tower.derive(&ei.rational);
    for l in &ei.logs {
        d = &d + &(&l.coeff * &tower.log_derivative(&l.arg));
    }
    d
}

/// Roots of a monic polynomial with rational coefficients that lie in Q.
fn rational_roots(p: &Poly) -> Vec<Gq> {
    let mut rats = Vec::new();
    for c in p.coeffs() {
        match c.as_num() {
            Some(q) if q.is_real() => rats.push(q.re.clone()),
            _ => return vec![],
        }
    }
    let l = rats.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = rats.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
    let lead = ints.last().unwrap().clone();
    let deg = ints.len() - 1;
    // lead^(deg-1) p(y / lead) is monic with integer coefficients
    let mut scaled = Vec::with_capacity(ints.len());
    for (k, c) in ints.iter().enumerate() {
        let pow = if k == deg { BigInt::one() } else { num_traits::pow(lead.clone(), deg - 1 - k) };
        scaled.push(Elem::Num(Gq::from_big(c * pow)));
    }
    integer_roots(&Poly::new(scaled))
        .into_iter()
        .map(|y| Gq::from_rational(BigRational::new(BigInt::from(y), lead.clone())))
        .filter(|r| p.eval(&Elem::Num(r.clone())).is_zero())
        .collect()
}

/// Integrates a simple element with constant residues at generator `level`.
fn integrate_simple(
    tower: &Tower,
    s: &Elem,
    level: usize,
    logs: &mut Vec<LogTerm>,
    root_sums: &mut Vec<RootSumTerm>,
) -> Result<()> {
    let var = tower.var_of(level);
    let (num, den) = s.as_frac_in(var);
    let dden = tower.deriv_poly(&den, level);
    let hyp = tower.kind(level) == Kind::Hyp;
    let push_log = |c: Elem, v: Poly, logs: &mut Vec<LogTerm>| {
        if hyp {
            logs.push(LogTerm { coeff: &c * &Elem::int(-(v.degi())), arg: tower.gen(level) });
        }
        logs.push(LogTerm { coeff: c, arg: Elem::from_poly(var, v) });
    };
    let rho = num.mul(&dden.inv_mod(&den).ok_or(Error::NotInRS)?).rem(&den);
    if rho.degi() <= 0 && tower.level(&rho.coeff(0)) == 0 {
        push_log(rho.coeff(0), den, logs);
        return Ok(());
    }
    let dg = den.degi();
    let pts: Vec<(Elem, Elem)> =
        (0..=dg).map(|z| (Elem::int(z), resultant(&den, &num.sub(&dden.scale(&Elem::int(z)))))).collect();
    let r = interpolate(&pts);
    let lc = r.lc().clone();
    let mut r = r.scale(&lc.inv());
    if r.coeffs().iter().any(|c| tower.level(c) != 0) {
        return Err(Error::NonConstantResidue);
    }
    let mut rest = den.clone();
    for c in rational_roots(&r) {
        let ce = Elem::Num(c.clone());
        let v = Poly::gcd(&rest, &num.sub(&dden.scale(&ce)));
        if v.degi() <= 0 {
            continue;
        }
        rest = rest.exact_div(&v);
        r = r.exact_div(&Poly::new(vec![-&ce, Elem::one()]).pow(v.degi() as usize));
        push_log(ce, v, logs);
    }
    if rest.degi() > 0 {
        let rn = num.mul(&den.exact_div(&rest).inv_mod(&rest).expect("coprime")).rem(&rest);
        let rd = tower.deriv_poly(&rest, level);
        if hyp {
            let rho = rn.mul(&rd.inv_mod(&rest).ok_or_else(not_regular)?).rem(&rest);
            let trace = (0..rest.degi() as usize).fold(Elem::zero(), |acc, k| {
                &acc + &rho.mul(&Poly::monomial(Elem::one(), k)).rem(&rest).coeff(k)
            });
            logs.push(LogTerm { coeff: -&trace, arg: tower.gen(level) });
        }
        root_sums.push(RootSumTerm { level, poly: r.monic(), num: rn, dden: rd, den: rest });
    }
    Ok(())
}
