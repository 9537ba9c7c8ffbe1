//! Auxiliary reduction and echelon sequences for a hyperexponential generator.

use std::sync::Arc;

use crate::elem::Elem;
use crate::error::Result;
use crate::laurent::Laurent;
use crate::logderiv::param_log_derivative;
use crate::reduction::{Entry, Reducer, RischData};

/// Echelon sequence of `im(P_h) ∩ U_h`, which has dimension at most two.
#[derive(Clone, Debug, Default)]
pub struct HypSeq {
    /// Kernel element `u t^k` of the head operator, if any.
    pub head: Option<(i64, Elem)>,
    /// Kernel element `u t^l` of the tail operator, if any.
    pub tail: Option<(i64, Elem)>,
    pub entries: Vec<Entry>,
}

impl Reducer {
    /// Auxiliary pair `(g, r)` of a Laurent polynomial: `f = P_h(g) + r`, `r` in `U_h`.
    pub(crate) fn hyp_aux(&mut self, rd: &RischData, f: &Laurent) -> Result<(Laurent, Laurent)> {
        let m = rd.m as i64;
        let low = rd.level - 1;
        let theta = self.tower.def(rd.level).clone();
        let mut p = f.clone();
        let mut g = Laurent::zero();
        let mut r = Laurent::zero();
        while let Some(k) = p.hdeg() {
            if k < m || k < 0 {
                break;
            }
            let pk = p.hc();
            let (u, v) = if rd.inf_neg {
                (Laurent::monomial(&pk / &rd.am, k - m), Laurent::zero())
            } else {
                let lam = &rd.am + &(&Elem::int(k - m) * &theta);
                let (gk, rk) = self.rpair(&pk, &lam, low)?;
                (Laurent::monomial(gk, k - m), Laurent::monomial(rk, k))
            };
            p = p.sub(&rd.op(&self.tower, &u)).sub(&v);
            g = g.add(&u);
            r = r.add(&v);
        }
        while let Some(l) = p.tdeg() {
            if l >= 0 {
                break;
            }
            let ql = p.tc();
            let (u, v) = if rd.t_neg {
                (Laurent::monomial(&ql / &rd.a0, l), Laurent::zero())
            } else {
                let mu = &(&rd.a0 / &rd.b0) + &(&Elem::int(l) * &theta);
                let (gl, rl) = self.rpair(&(&ql / &rd.b0), &mu, low)?;
                (Laurent::monomial(gl, l), Laurent::monomial(&rd.b0 * &rl, l))
            };
            p = p.sub(&rd.op(&self.tower, &u)).sub(&v);
            g = g.add(&u);
            r = r.add(&v);
        }
        Ok((g, r.add(&p)))
    }

    /// Echelon sequence for `xi` at a hyperexponential level.
    pub fn hyp_seq(&mut self, rd: &RischData) -> Result<Arc<HypSeq>> {
        let key = (rd.level, rd.xi.clone());
        if let Some(s) = self.hyp_table.get(&key) {
            return Ok(s.clone());
        }
        let seq = Arc::new(self.build_hyp_seq(rd)?);
        self.hyp_table.insert(key, seq.clone());
        Ok(seq)
    }

    fn build_hyp_seq(&mut self, rd: &RischData) -> Result<HypSeq> {
        let mut seq = HypSeq::default();
        if rd.in_lower() {
            return Ok(seq);
        }
        let low = rd.level - 1;
        let theta = self.tower.def(rd.level).clone();
        let minus_theta = -&theta;
        if !rd.inf_neg {
            seq.head = param_log_derivative(&self.tower, &-&rd.am, &minus_theta, low, &|k| k >= 0)?;
        }
        if !rd.t_neg {
            let w0 = -&(&rd.a0 / &rd.b0);
            seq.tail = param_log_derivative(&self.tower, &w0, &minus_theta, low, &|l| l < 0)?;
        }
        let mut members = Vec::new();
        for (k, u) in seq.head.iter().chain(seq.tail.iter()) {
            let mono = Laurent::monomial(u.clone(), *k);
            let img = rd.op(&self.tower, &mono);
            let (g, r) = self.hyp_aux(rd, &img)?;
            members.push((mono.sub(&g), r));
        }
        match members.len() {
            0 => {}
            1 => {
                let (pre, img) = members.pop().unwrap();
                let piv = self.pivot_of(&img, rd.level);
                seq.entries.push(Entry { pre, img, piv });
            }
            _ => {
                let (pl, ql) = members.pop().unwrap();
                let (pk, qk) = members.pop().unwrap();
                let gk = self.pivot_of(&qk, rd.level);
                let c = &crate::basis::gamma(&self.tower, &ql, &gk) / &crate::basis::gamma(&self.tower, &qk, &gk);
                let pre = pl.sub(&pk.scale(&c));
                let img = ql.sub(&qk.scale(&c));
                let piv = self.pivot_of(&img, rd.level);
                seq.entries.push(Entry { pre, img, piv });
                seq.entries.push(Entry { pre: pk, img: qk, piv: gk });
            }
        }
        Ok(seq)
    }

    /// Projection of an auxiliary remainder onto the induced complement.
    pub(crate) fn hyp_project(&mut self, rd: &RischData, q: &Laurent) -> Result<(Laurent, Laurent)> {
        let seq = self.hyp_seq(rd)?;
        let mut g = Laurent::zero();
        let mut r = q.clone();
        self.eliminate(&seq.entries, &mut g, &mut r);
        Ok((g, r))
    }
}
