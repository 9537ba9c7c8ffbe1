#![allow(dead_code)]

use liouvred_core::syntax::parse;
use liouvred_core::{Elem, Kind, Tower};
use rand::rngs::StdRng;
use rand::Rng;

pub fn tower(params: &[&str], gaussian_i: bool, gens: &[(&str, Kind, &str)]) -> Tower {
    let mut t = Tower::new(params, gaussian_i);
    for (n, k, d) in gens {
        let def = parse(d, &t).unwrap();
        t.push(n, *k, def).unwrap();
    }
    t
}

pub fn p(s: &str, t: &Tower) -> Elem {
    parse(s, t).unwrap_or_else(|e| panic!("{}: {}", s, e))
}

/// Regular towers of height at most three used by the random suites.
pub fn tower_pool() -> Vec<Tower> {
    use Kind::*;
    vec![
        tower(&[], false, &[("x", Prim, "1")]),
        tower(&[], false, &[("x", Prim, "1"), ("t", Prim, "1/x")]),
        tower(&[], false, &[("x", Prim, "1"), ("t", Hyp, "1")]),
        tower(&[], true, &[("x", Prim, "1"), ("t", Prim, "1/(x^2+1)")]),
        tower(&[], false, &[("x", Prim, "1"), ("t", Prim, "1/x"), ("y", Hyp, "t")]),
        tower(&[], false, &[("x", Prim, "1"), ("e", Hyp, "1"), ("y", Hyp, "x")]),
        tower(&[], false, &[("x", Prim, "1"), ("e", Hyp, "1"), ("l", Prim, "e/(e+1)")]),
        tower(&[], false, &[("x", Prim, "1"), ("t", Prim, "1/x"), ("u", Prim, "1/(x*t)")]),
    ]
}

/// Random polynomial in the generators of `t`, at most `deg` in each and
/// with small integer coefficients.
pub fn rand_poly(rng: &mut StdRng, t: &Tower, deg: u32, terms: usize) -> Elem {
    let n = t.height();
    let mut out = Elem::zero();
    for _ in 0..terms {
        let c = rng.gen_range(-4i64..=4);
        if c == 0 {
            continue;
        }
        let mut m = Elem::int(c);
        for l in 1..=n {
            let e = rng.gen_range(0..=deg) as i64;
            if rng.gen_bool(0.5) {
                m = &m * &t.gen(l).pow(e);
            }
        }
        out = &out + &m;
    }
    out
}

/// Random nonzero fraction with numerator of degree at most `deg` and
/// denominator of degree at most two.
pub fn rand_frac(rng: &mut StdRng, t: &Tower, deg: u32) -> Elem {
    rand_ratio(rng, t, deg, deg.min(2))
}

/// Random nonzero fraction with the given degree bounds.
pub fn rand_ratio(rng: &mut StdRng, t: &Tower, ndeg: u32, ddeg: u32) -> Elem {
    loop {
        let nterms = rng.gen_range(1..=4);
        let dterms = rng.gen_range(1..=3);
        let num = rand_poly(rng, t, ndeg, nterms);
        let den = rand_poly(rng, t, ddeg, dterms);
        if num.is_zero() || den.is_zero() {
            continue;
        }
        return &num / &den;
    }
}

/// Random `h` at the top level of `t`. At hyperexponential levels most draws
/// have leading quotient an integer multiple of the generator's logarithmic
/// derivative, which is where echelon sequences are nonempty.
pub fn rand_h(rng: &mut StdRng, t: &Tower) -> Elem {
    let n = t.height();
    let low = t.truncate(n - 1);
    loop {
        let h = if t.kind(n) == Kind::Hyp && rng.gen_bool(0.7) {
            let d = rng.gen_range(1..=2i64);
            let mut lam = t.def(n) * &Elem::int(rng.gen_range(-2..=2));
            let u = rand_poly(rng, &low, 1, 2);
            if !u.is_zero() && rng.gen_bool(0.5) {
                lam = &lam + &low.log_derivative(&u);
            }
            let tt = t.gen(n);
            let num = &(&lam * &tt.pow(d)) + &(&rand_poly(rng, &low, 1, 2) * &tt.pow(rng.gen_range(0..d)));
            let den = &tt.pow(d) + &(&rand_poly(rng, &low, 1, 2) * &tt.pow(rng.gen_range(0..d)));
            if den.is_zero() {
                continue;
            }
            &num / &den
        } else {
            match rng.gen_range(0..4) {
                0 => Elem::zero(),
                1 => rand_frac(rng, t, 2),
                2 => {
                    let u = rand_frac(rng, t, 2);
                    &t.log_derivative(&u) + &rand_poly(rng, &low, 1, 1)
                }
                _ => {
                    let u = rand_poly(rng, t, 2, 2);
                    if u.is_zero() {
                        continue;
                    }
                    &(&t.log_derivative(&u) * &Elem::int(rng.gen_range(-2..=2))) + &rand_frac(rng, &low, 1)
                }
            }
        };
        return h;
    }
}

/// Dense polynomials over Q, lowest coefficient first, for the independent
/// rational-function oracle.
pub mod qpoly {
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    pub type Q = BigRational;
    pub type P = Vec<Q>;

    pub fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    pub fn trim(mut a: P) -> P {
        while a.last().is_some_and(|c| c.is_zero()) {
            a.pop();
        }
        a
    }

    pub fn deg(a: &P) -> i64 {
        a.len() as i64 - 1
    }

    pub fn add(a: &P, b: &P) -> P {
        let mut out = vec![Q::zero(); a.len().max(b.len())];
        for (i, c) in a.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in b.iter().enumerate() {
            out[i] += c;
        }
        trim(out)
    }

    pub fn scale(a: &P, s: &Q) -> P {
        trim(a.iter().map(|c| c * s).collect())
    }

    pub fn sub(a: &P, b: &P) -> P {
        add(a, &scale(b, &-Q::one()))
    }

    pub fn mul(a: &P, b: &P) -> P {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![Q::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }

    pub fn diff(a: &P) -> P {
        trim(a.iter().enumerate().skip(1).map(|(i, c)| c * q(i as i64)).collect())
    }

    pub fn divrem(a: &P, b: &P) -> (P, P) {
        let mut r = a.clone();
        let db = b.len() - 1;
        let mut quo = vec![Q::zero(); a.len().saturating_sub(db)];
        while r.len() > db && !r.is_empty() {
            let k = r.len() - 1 - db;
            let c = r.last().unwrap() / b.last().unwrap();
            for (j, y) in b.iter().enumerate() {
                r[k + j] -= &c * y;
            }
            quo[k] = c;
            r = trim(r);
        }
        (trim(quo), r)
    }

    pub fn gcd(a: &P, b: &P) -> P {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_empty() {
            let r = divrem(&x, &y).1;
            x = y;
            y = r;
        }
        let lc = x.last().unwrap().clone();
        scale(&x, &(Q::one() / lc))
    }

    /// Solves a square nonsingular system by Gauss-Jordan elimination.
    pub fn solve(mut m: Vec<Vec<Q>>, mut rhs: Vec<Q>) -> Vec<Q> {
        let n = rhs.len();
        for c in 0..n {
            let p = (c..n).find(|&r| !m[r][c].is_zero()).expect("nonsingular");
            m.swap(c, p);
            rhs.swap(c, p);
            let inv = Q::one() / &m[c][c];
            for r in 0..n {
                if r != c && !m[r][c].is_zero() {
                    let f = &m[r][c] * &inv;
                    for k in c..n {
                        let v = &m[c][k] * &f;
                        m[r][k] -= v;
                    }
                    let v = &rhs[c] * &f;
                    rhs[r] -= v;
                }
            }
        }
        (0..n).map(|i| &rhs[i] / &m[i][i]).collect()
    }

    /// `B/E` with `P/Q = (A/D)' + B/E + (polynomial)`, `E` squarefree and
    /// `deg B < deg E`, found from the undetermined-coefficient ansatz.
    pub fn ostrogradsky(p: &P, qd: &P) -> (P, P) {
        let (_, p) = divrem(p, qd);
        let d = gcd(qd, &diff(qd));
        let e = divrem(qd, &d).0;
        let h = divrem(&mul(&diff(&d), &e), &d).0;
        let na = deg(&d).max(0) as usize;
        let nb = deg(&e) as usize;
        let n = na + nb;
        // columns: a_0..a_{na-1}, b_0..b_{nb-1}; rows: coefficients of x^0..x^{n-1}
        let mut cols: Vec<P> = Vec::new();
        for i in 0..na {
            let mut a = vec![Q::zero(); i + 1];
            a[i] = Q::one();
            cols.push(sub(&mul(&diff(&a), &e), &mul(&a, &h)));
        }
        for i in 0..nb {
            let mut b = vec![Q::zero(); i + 1];
            b[i] = Q::one();
            cols.push(mul(&b, &d));
        }
        let m: Vec<Vec<Q>> = (0..n).map(|r| cols.iter().map(|c| c.get(r).cloned().unwrap_or_else(Q::zero)).collect()).collect();
        let rhs: Vec<Q> = (0..n).map(|r| p.get(r).cloned().unwrap_or_else(Q::zero)).collect();
        let sol = solve(m, rhs);
        (trim(sol[na..].to_vec()), e)
    }
}
