//! Auxiliary reduction and echelon sequences for a primitive generator.

use std::sync::Arc;

use crate::basis::{find_pivot, gamma, Index, Pivot};
use crate::elem::Elem;
use crate::error::{Error, Result};
use crate::laurent::Laurent;
use crate::logderiv::is_log_derivative;
use crate::reduction::{Entry, Reducer, RischData};

/// How the echelon sequence continues after the data `u, (vt, v), (wt, w), theta_v`.
#[derive(Clone, Debug)]
pub enum PrimShape {
    /// `xi` lies in the lower field; members `(p_i, P(p_i), theta_v t^(i-1))`.
    Four,
    /// `theta_v(iv + w)` never vanishes.
    Five,
    /// `theta_v(jv + w) = 0` with `jv + w != 0`; member `j` has its own pivot.
    Seven { j: usize, special: Entry },
    /// `jv + w = 0`; member `j` is replaced by `first`, placed before `p_0`.
    JPlus6 { j: usize, first: Entry },
}

/// Finite data that determines an echelon sequence of `im(P_h) ∩ U_h`.
#[derive(Clone, Debug)]
pub struct PrimSeq {
    pub u: Elem,
    pub vt: Elem,
    pub v: Elem,
    pub wt: Elem,
    pub w: Elem,
    pub theta_v: Index,
    /// `(p_0, P(p_0), theta_0 t^d0)`, absent when `xi` lies in the lower field.
    pub e0: Option<Entry>,
    pub shape: PrimShape,
}

impl Reducer {
    /// Auxiliary pair `(g, r)` of a polynomial `f`: `f = P_h(g) + r`, `r` in `U_h`.
    pub(crate) fn prim_aux(&mut self, rd: &RischData, f: &Laurent) -> Result<(Laurent, Laurent)> {
        let m = rd.m as i64;
        let mut p = f.clone();
        let mut g = Laurent::zero();
        let mut r = Laurent::zero();
        while let Some(d) = p.hdeg() {
            if d < m {
                break;
            }
            if p.tdeg().unwrap_or(0) < 0 {
                return Err(Error::Internal("negative power at a primitive level".into()));
            }
            let pd = p.hc();
            let (u, v) = if rd.inf_neg {
                (Laurent::monomial(&pd / &rd.am, d - m), Laurent::zero())
            } else {
                let (gd, rdd) = self.rpair(&pd, &rd.am, rd.level - 1)?;
                (Laurent::monomial(gd, d - m), Laurent::monomial(rdd, d))
            };
            p = p.sub(&rd.op(&self.tower, &u)).sub(&v);
            g = g.add(&u);
            r = r.add(&v);
        }
        Ok((g, r.add(&p)))
    }

    /// Initial data of the echelon sequence, `None` when the type is zero.
    pub fn prim_seq(&mut self, rd: &RischData) -> Result<Option<Arc<PrimSeq>>> {
        let key = (rd.level, rd.xi.clone());
        if let Some(s) = self.prim_table.get(&key) {
            return Ok(s.clone());
        }
        let seq = self.build_prim_seq(rd)?.map(Arc::new);
        self.prim_table.insert(key, seq.clone());
        Ok(seq)
    }

    fn build_prim_seq(&mut self, rd: &RischData) -> Result<Option<PrimSeq>> {
        if rd.inf_neg {
            return Ok(None);
        }
        let low = rd.level - 1;
        let Some(u) = is_log_derivative(&self.tower, &-&rd.am, low)? else { return Ok(None) };
        let def = self.tower.def(rd.level).clone();
        let (vt, v) = self.rpair(&(&u * &def), &rd.am, low)?;
        let (wt, w) = if rd.m == 0 {
            (Elem::zero(), Elem::zero())
        } else {
            let x = &(&rd.bm1 * &self.tower.derive(&u)) + &(&rd.am1 * &u);
            self.rpair(&x, &rd.am, low)?
        };
        if v.is_zero() {
            return Err(Error::Internal("first associated pair has zero remainder".into()));
        }
        let theta_v = find_pivot(&self.tower, &v, low, self.order);
        let mut seq = PrimSeq { u, vt, v, wt, w, theta_v, e0: None, shape: PrimShape::Four };
        self.prim_memo.remove(&(rd.level, rd.xi.clone()));
        if rd.in_lower() {
            return Ok(Some(seq));
        }
        let (p0, q0) = self.prim_member(rd, &seq, 0)?;
        let piv0 = self.pivot_of(&q0, rd.level);
        let e0 = Entry { pre: p0, img: q0, piv: piv0 };
        let tv = crate::basis::coordinate(&self.tower, &seq.v, &seq.theta_v);
        let tw = crate::basis::coordinate(&self.tower, &seq.w, &seq.theta_v);
        let jq = -&(&tw / &tv);
        let j = jq.as_integer().filter(|&j| j >= 1);
        seq.e0 = Some(e0.clone());
        let Some(j) = j else {
            seq.shape = PrimShape::Five;
            return Ok(Some(seq));
        };
        let j = j as usize;
        let jvw = &(&Elem::int(j as i64) * &seq.v) + &seq.w;
        if !jvw.is_zero() {
            let (pj, qj) = self.prim_member(rd, &seq, j)?;
            let piv = self.pivot_of(&qj, rd.level);
            seq.shape = PrimShape::Seven { j, special: Entry { pre: pj, img: qj, piv } };
            return Ok(Some(seq));
        }
        let (mut q, mut big_q) = self.prim_member(rd, &seq, j)?;
        for i in (0..j).rev() {
            let (pi, qi, gi) = if i == 0 {
                (e0.pre.clone(), e0.img.clone(), e0.piv.clone())
            } else {
                let (pi, qi) = self.prim_member(rd, &seq, i)?;
                (pi, qi, Pivot { theta: seq.theta_v.clone(), deg: (rd.m + i - 1) as i64 })
            };
            let num = gamma(&self.tower, &big_q, &gi);
            if num.is_zero() {
                continue;
            }
            let c = &num / &gamma(&self.tower, &qi, &gi);
            q = q.sub(&pi.scale(&c));
            big_q = big_q.sub(&qi.scale(&c));
        }
        if big_q.is_zero() {
            return Err(Error::Internal("degenerate first member".into()));
        }
        let piv = self.pivot_of(&big_q, rd.level);
        seq.shape = PrimShape::JPlus6 { j, first: Entry { pre: q, img: big_q, piv } };
        Ok(Some(seq))
    }

    /// The standard basis element `p_i` and its image `P_h(p_i)`.
    pub fn prim_member(&mut self, rd: &RischData, seq: &PrimSeq, i: usize) -> Result<(Laurent, Laurent)> {
        let key = (rd.level, rd.xi.clone());
        loop {
            let have = self.prim_memo.get(&key).map_or(0, |v| v.len());
            if have > i {
                return Ok(self.prim_memo[&key][i].clone());
            }
            let next = self.compute_member(rd, seq, have)?;
            self.prim_memo.entry(key.clone()).or_default().push(next);
        }
    }

    fn compute_member(&mut self, rd: &RischData, seq: &PrimSeq, i: usize) -> Result<(Laurent, Laurent)> {
        if i == 0 {
            let p0 = Laurent::constant(seq.u.clone());
            let img = rd.op(&self.tower, &p0);
            return Ok((p0, img));
        }
        let ie = Elem::int(i as i64);
        let s = &(&ie * &seq.vt) + &seq.wt;
        let y = Laurent::monomial(seq.u.clone(), i as i64).sub(&Laurent::monomial(s, i as i64 - 1));
        let lead = Laurent::monomial(&(&ie * &seq.v) + &seq.w, (rd.m + i - 1) as i64);
        let gi = rd.op(&self.tower, &y).sub(&lead);
        let (qi, ri) = self.prim_aux(rd, &gi)?;
        let p = y.sub(&qi);
        let img = lead.add(&ri);
        debug_assert_eq!(rd.op(&self.tower, &p), img);
        Ok((p, img))
    }

    /// Members of the echelon sequence whose pivots reach degree `deg`, in
    /// echelon order.
    pub fn prim_entries(&mut self, rd: &RischData, seq: &PrimSeq, deg: i64) -> Result<Vec<Entry>> {
        let m = rd.m as i64;
        let mut out = Vec::new();
        let std = |this: &mut Reducer, i: usize, off: i64| -> Result<Entry> {
            let (pre, img) = this.prim_member(rd, seq, i)?;
            Ok(Entry { pre, img, piv: Pivot { theta: seq.theta_v.clone(), deg: i as i64 + off } })
        };
        match &seq.shape {
            PrimShape::Four => {
                for i in 1..=(deg + 1).max(0) as usize {
                    out.push(std(self, i, -1)?);
                }
            }
            PrimShape::Five => {
                out.push(seq.e0.clone().unwrap());
                for i in 1..=(deg - m + 1).max(0) as usize {
                    out.push(std(self, i, m - 1)?);
                }
            }
            PrimShape::Seven { j, special } => {
                out.push(seq.e0.clone().unwrap());
                for i in 1..=((deg - m + 1).max(0) as usize).max(*j) {
                    if i == *j {
                        out.push(special.clone());
                    } else {
                        out.push(std(self, i, m - 1)?);
                    }
                }
            }
            PrimShape::JPlus6 { j, first } => {
                out.push(first.clone());
                out.push(seq.e0.clone().unwrap());
                for i in 1..=((deg - m + 1).max(0) as usize).max(*j - 1) {
                    if i != *j {
                        out.push(std(self, i, m - 1)?);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Projection of an auxiliary remainder onto the induced complement.
    pub(crate) fn prim_project(&mut self, rd: &RischData, q: &Laurent) -> Result<(Laurent, Laurent)> {
        let Some(seq) = self.prim_seq(rd)? else { return Ok((Laurent::zero(), q.clone())) };
        let deg = q.hdeg().unwrap_or(-1);
        let entries = self.prim_entries(rd, &seq, deg)?;
        let mut g = Laurent::zero();
        let mut r = q.clone();
        self.eliminate(&entries, &mut g, &mut r);
        Ok((g, r))
    }
}
