//! Complete reduction for the operators `R_h(y) = y' + h y` on a tower.
//!
//! For `f, h` in the field of level `L` the reducer produces an R-pair
//! `(g, r)` with `f = g' + h g + r`, where `r` lies in a fixed complement of
//! the image of `R_h`. Level `L` is handled by normalising `h`, a
//! Hermite-type reduction modulo the denominator of `h`, an auxiliary
//! reduction that calls the reducer one level down, and a projection along
//! an echelon sequence cached per `(level, xi)`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::basis::{PivotOrder, Pivot};
use crate::elem::{Elem, Poly};
use crate::error::{Error, Result};
use crate::hyperexp::HypSeq;
use crate::laurent::Laurent;
use crate::normalization::{normal_form, NormalForm};
use crate::prim::PrimSeq;
use crate::tower::{Kind, Tower};

/// One member `(pre, img, pivot)` of an echelon sequence, `img = P_h(pre)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub pre: Laurent,
    pub img: Laurent,
    pub piv: Pivot,
}

/// Data attached to a normalized `xi = a/b` at level `level`.
#[derive(Clone, Debug)]
pub struct RischData {
    pub level: usize,
    pub var: usize,
    pub kind: Kind,
    pub xi: Elem,
    pub a: Poly,
    pub b: Poly,
    pub m: usize,
    pub am: Elem,
    pub bm: Elem,
    pub am1: Elem,
    pub bm1: Elem,
    pub a0: Elem,
    pub b0: Elem,
    /// `nu_inf(xi) < 0`
    pub inf_neg: bool,
    /// `nu_t(xi) < 0`, only meaningful for hyperexponential levels
    pub t_neg: bool,
}

impl RischData {
    pub fn new(tower: &Tower, xi: &Elem, level: usize) -> RischData {
        let var = tower.var_of(level);
        let (a, b) = xi.as_frac_in(var);
        let m = a.deg().unwrap_or(0).max(b.deg().unwrap_or(0));
        let inf_neg = !a.is_zero() && (b.degi() - a.degi()) < 0;
        let t_neg = !a.is_zero() && (a.low_order().unwrap_or(0) as i64 - b.low_order().unwrap_or(0) as i64) < 0;
        let (am1, bm1) = if m == 0 { (Elem::zero(), Elem::zero()) } else { (a.coeff(m - 1), b.coeff(m - 1)) };
        RischData {
            level,
            var,
            kind: tower.kind(level),
            xi: xi.clone(),
            am: a.coeff(m),
            bm: b.coeff(m),
            a0: a.coeff(0),
            b0: b.coeff(0),
            am1,
            bm1,
            a,
            b,
            m,
            inf_neg,
            t_neg,
        }
    }

    /// The companion operator `P_h(r) = b r' + a r`.
    pub fn op(&self, tower: &Tower, r: &Laurent) -> Laurent {
        tower.deriv_laurent(r, self.level).mul_poly(&self.b).add(&r.mul_poly(&self.a))
    }

    /// Whether `xi` lies in the lower field.
    pub fn in_lower(&self) -> bool {
        self.xi.below(self.var)
    }

    pub fn b_elem(&self) -> Elem {
        Elem::from_poly(self.var, self.b.clone())
    }
}

/// Hermite-type reduction modulo the denominator of a normalized `xi`:
/// `f = R_xi(g) + r/b + s` with `r` a Laurent polynomial and `s` a proper
/// fraction whose denominator is normal, squarefree and coprime to `b`.
pub fn gksr(tower: &Tower, f: &Elem, rd: &RischData) -> Result<(Elem, Laurent, Elem)> {
    let level = rd.level;
    let var = rd.var;
    let (_, bn) = tower.split_special(&rd.b, level);
    let bsq = bn.squarefree();
    let brad = bn.radical();
    let b_elem = rd.b_elem();
    let mut f = f.clone();
    let mut g = Elem::zero();
    let rxi = |y: &Elem| &tower.derive(y) + &(&rd.xi * y);
    loop {
        let (n, d) = f.as_frac_in(var);
        let (_, dn) = tower.split_special(&d, level);
        if dn.degi() <= 0 {
            break;
        }
        let mut step: Option<Elem> = None;
        'search: for (fk, k) in dn.squarefree() {
            let gb = Poly::gcd(&fk, &brad);
            let vc = fk.exact_div(&gb);
            if k >= 2 && vc.degi() > 0 {
                let v = vc;
                let a_k = crate::basis::digits(&n.rem(&d), &d, &v)[k - 1].clone();
                let vp = tower.deriv_poly(&v, level).scale(&Elem::int(k as i64 - 1));
                let inv = vp.inv_mod(&v).ok_or_else(|| Error::Internal("non-normal pole".into()))?;
                let w = a_k.mul(&inv).neg().rem(&v);
                step = Some(Elem::from_frac(var, w, v.pow(k - 1)));
                break 'search;
            }
            for (bmu, mu) in &bsq {
                let v = Poly::gcd(&fk, bmu);
                if v.degi() > 0 && k > *mu {
                    let a_k = crate::basis::digits(&n.rem(&d), &d, &v)[k - 1].clone();
                    let bhat = rd.b.exact_div(&v.pow(*mu));
                    let mut c = rd.a.mul(&bhat.inv_mod(&v).ok_or_else(|| Error::Internal("b split".into()))?).rem(&v);
                    if *mu == 1 {
                        c = c.sub(&tower.deriv_poly(&v, level).scale(&Elem::int(k as i64 - 1))).rem(&v);
                    }
                    let inv = c.inv_mod(&v).ok_or_else(|| Error::Internal("xi is not normalized".into()))?;
                    let w = a_k.mul(&inv).rem(&v);
                    step = Some(Elem::from_frac(var, w, v.pow(k - mu)));
                    break 'search;
                }
            }
        }
        match step {
            None => break,
            Some(inc) => {
                f = &f - &rxi(&inc);
                g = &g + &inc;
            }
        }
    }
    let (n, d) = f.as_frac_in(var);
    let (_, dn) = tower.split_special(&d, level);
    let mut dc = dn.clone();
    loop {
        let gg = Poly::gcd(&dc, &brad);
        if gg.degi() <= 0 {
            break;
        }
        dc = dc.exact_div(&gg);
    }
    let s = if dc.degi() <= 0 {
        Elem::zero()
    } else {
        let dr = d.exact_div(&dc);
        let x = n.mul(&dr.inv_mod(&dc).expect("coprime split")).rem(&dc);
        Elem::from_frac(var, x, dc)
    };
    let rest = &f - &s;
    let r = Laurent::from_elem(&(&rest * &b_elem), var)
        .ok_or_else(|| Error::Internal("reduction left a pole outside the denominator of xi".into()))?;
    Ok((g, r, s))
}

/// Stateful reducer holding the tower, the pivot convention and the caches
/// of normal forms, R-pairs and echelon sequences.
pub struct Reducer {
    pub tower: Tower,
    pub order: PivotOrder,
    nf_cache: HashMap<(usize, Elem), NormalForm>,
    pair_cache: HashMap<(usize, Elem, Elem), (Elem, Elem)>,
    pub(crate) prim_table: HashMap<(usize, Elem), Option<Arc<PrimSeq>>>,
    pub(crate) prim_memo: HashMap<(usize, Elem), Vec<(Laurent, Laurent)>>,
    pub(crate) hyp_table: HashMap<(usize, Elem), Arc<HypSeq>>,
}

impl Reducer {
    pub fn new(tower: Tower) -> Reducer {
        Reducer::with_order(tower, PivotOrder::default())
    }

    pub fn with_order(tower: Tower, order: PivotOrder) -> Reducer {
        Reducer {
            tower,
            order,
            nf_cache: HashMap::new(),
            pair_cache: HashMap::new(),
            prim_table: HashMap::new(),
            prim_memo: HashMap::new(),
            hyp_table: HashMap::new(),
        }
    }

    pub fn normal_form(&mut self, h: &Elem, level: usize) -> NormalForm {
        if let Some(nf) = self.nf_cache.get(&(level, h.clone())) {
            return nf.clone();
        }
        let nf = normal_form(&self.tower, h, level);
        self.nf_cache.insert((level, h.clone()), nf.clone());
        nf
    }

    fn check_level(&self, e: &Elem, level: usize) -> Result<()> {
        if self.tower.level(e) > level {
            return Err(Error::Level(format!("element lies above level {}", level)));
        }
        Ok(())
    }

    /// R-pair `(g, r)` of `f` with respect to `R_h` on the field of level
    /// `level`: `f = g' + h g + r` with `r` in the fixed complement.
    pub fn rpair(&mut self, f: &Elem, h: &Elem, level: usize) -> Result<(Elem, Elem)> {
        self.check_level(f, level)?;
        self.check_level(h, level)?;
        if f.is_zero() {
            return Ok((Elem::zero(), Elem::zero()));
        }
        if level == 0 {
            return Ok(if h.is_zero() { (Elem::zero(), f.clone()) } else { (f / h, Elem::zero()) });
        }
        let key = (level, f.clone(), h.clone());
        if let Some(p) = self.pair_cache.get(&key) {
            return Ok(p.clone());
        }
        let nf = self.normal_form(h, level);
        let rd = RischData::new(&self.tower, &nf.xi, level);
        let ef = &nf.eta * f;
        let (g, r, s) = gksr(&self.tower, &ef, &rd)?;
        let (gg, rr) = if r.is_zero() {
            (g, s)
        } else {
            let (p, q) = self.aux_pair(&rd, &r)?;
            let pe = p.to_elem(rd.var);
            if q.is_zero() {
                (&g + &pe, s)
            } else {
                let (pp, rem) = self.project(&rd, &q)?;
                let b = rd.b_elem();
                (&(&g + &pe) + &pp.to_elem(rd.var), &(&rem.to_elem(rd.var) / &b) + &s)
            }
        };
        let ieta = nf.eta.inv();
        let out = (&ieta * &gg, &ieta * &rr);
        self.pair_cache.insert(key, out.clone());
        Ok(out)
    }

    /// The remainder `phi_h(f)` of `f`.
    pub fn remainder(&mut self, f: &Elem, h: &Elem, level: usize) -> Result<Elem> {
        Ok(self.rpair(f, h, level)?.1)
    }

    /// Auxiliary pair `(g, r)` with `p = P_h(g) + r` and `r` in `U_h`.
    pub fn aux_pair(&mut self, rd: &RischData, p: &Laurent) -> Result<(Laurent, Laurent)> {
        match rd.kind {
            Kind::Prim => self.prim_aux(rd, p),
            Kind::Hyp => self.hyp_aux(rd, p),
        }
    }

    /// Projection of an auxiliary remainder onto the complement of `I_h`:
    /// `q = P_h(g) + r` with `r` in the complement.
    pub fn project(&mut self, rd: &RischData, q: &Laurent) -> Result<(Laurent, Laurent)> {
        match rd.kind {
            Kind::Prim => self.prim_project(rd, q),
            Kind::Hyp => self.hyp_project(rd, q),
        }
    }

    /// Normal form and Risch data of `h` at `level`.
    pub fn risch_data(&mut self, h: &Elem, level: usize) -> (NormalForm, RischData) {
        let nf = self.normal_form(h, level);
        let rd = RischData::new(&self.tower, &nf.xi, level);
        (nf, rd)
    }

    /// In-field integral: `Some(g)` with `g' = f` when it exists.
    pub fn integrate_infield(&mut self, f: &Elem) -> Result<Option<Elem>> {
        let n = self.tower.height();
        let (g, r) = self.rpair(f, &Elem::zero(), n)?;
        Ok(if r.is_zero() { Some(g) } else { None })
    }

    /// Eliminates the pivots of `entries` (last one first) from `r`.
    pub(crate) fn eliminate(&self, entries: &[Entry], g: &mut Laurent, r: &mut Laurent) {
        for e in entries.iter().rev() {
            let num = crate::basis::gamma(&self.tower, r, &e.piv);
            if num.is_zero() {
                continue;
            }
            let den = crate::basis::gamma(&self.tower, &e.img, &e.piv);
            let c = &num / &den;
            *g = g.add(&e.pre.scale(&c));
            *r = r.sub(&e.img.scale(&c));
        }
    }

    pub(crate) fn pivot_of(&self, l: &Laurent, level: usize) -> Pivot {
        Pivot {
            theta: crate::basis::find_pivot(&self.tower, &l.hc(), level - 1, self.order),
            deg: l.hdeg().expect("pivot of zero"),
        }
    }
}
