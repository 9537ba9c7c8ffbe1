//! Gaussian rationals `a + b i` with `a, b` in Q.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Gq {
    pub re: BigRational,
    pub im: BigRational,
}

impl Gq {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Gq { re, im }
    }

    pub fn zero() -> Self {
        Gq { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn one() -> Self {
        Gq::from_int(1)
    }

    pub fn i() -> Self {
        Gq { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Gq { re: BigRational::from_integer(BigInt::from(n)), im: BigRational::zero() }
    }

    pub fn from_big(n: BigInt) -> Self {
        Gq { re: BigRational::from_integer(n), im: BigRational::zero() }
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Gq {
            re: BigRational::new(BigInt::from(n), BigInt::from(d)),
            im: BigRational::zero(),
        }
    }

    pub fn from_rational(r: BigRational) -> Self {
        Gq { re: r, im: BigRational::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// The value as a machine integer when it is a real integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.im.is_zero() && self.re.is_integer() {
            Some(self.re.to_integer())
        } else {
            None
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        self.as_integer().and_then(|n| n.to_i64())
    }

    pub fn conj(&self) -> Self {
        Gq { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero in Q(i)");
        if self.im.is_zero() {
            return Gq { re: self.re.recip(), im: BigRational::zero() };
        }
        let n = &self.re * &self.re + &self.im * &self.im;
        Gq { re: &self.re / &n, im: -(&self.im / &n) }
    }

    pub fn pow(&self, e: i64) -> Self {
        if e < 0 {
            return self.inv().pow(-e);
        }
        let mut acc = Gq::one();
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Least common multiple of the denominators of both parts.
    pub fn denom_lcm(&self) -> BigInt {
        self.re.denom().lcm(self.im.denom())
    }
}

impl Add for &Gq {
    type Output = Gq;
    fn add(self, o: &Gq) -> Gq {
        if self.im.is_zero() && o.im.is_zero() {
            return Gq { re: &self.re + &o.re, im: BigRational::zero() };
        }
        Gq { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Sub for &Gq {
    type Output = Gq;
    fn sub(self, o: &Gq) -> Gq {
        Gq { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl Mul for &Gq {
    type Output = Gq;
    fn mul(self, o: &Gq) -> Gq {
        if self.im.is_zero() && o.im.is_zero() {
            return Gq { re: &self.re * &o.re, im: BigRational::zero() };
        }
        Gq {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Div for &Gq {
    type Output = Gq;
    fn div(self, o: &Gq) -> Gq {
        if o.im.is_zero() {
            assert!(!o.re.is_zero(), "division by zero in Q(i)");
            return Gq { re: &self.re / &o.re, im: &self.im / &o.re };
        }
        self * &o.inv()
    }
}

impl Neg for &Gq {
    type Output = Gq;
    fn neg(self) -> Gq {
        Gq { re: -self.re.clone(), im: -self.im.clone() }
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Gq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rat(&self.re));
        }
        let im = if self.im.is_one() {
            "i".to_string()
        } else if (-self.im.clone()).is_one() {
            "-i".to_string()
        } else {
            format!("{}*i", fmt_rat(&self.im))
        };
        if self.re.is_zero() {
            return write!(f, "{}", im);
        }
        if self.im.is_negative() {
            let pos = if (-self.im.clone()).is_one() {
                "i".to_string()
            } else {
                format!("{}*i", fmt_rat(&-self.im.clone()))
            };
            write!(f, "{} - {}", fmt_rat(&self.re), pos)
        } else {
            write!(f, "{} + {}", fmt_rat(&self.re), im)
        }
    }
}

impl fmt::Debug for Gq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_laws_on_samples() {
        let a = Gq::new(BigRational::new(3.into(), 4.into()), BigRational::from_integer((-2).into()));
        let b = Gq::new(BigRational::from_integer(5.into()), BigRational::new(1.into(), 3.into()));
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(&(&a + &b) - &b, a);
        assert!((&a * &a.inv()).is_one());
        assert_eq!(&Gq::i() * &Gq::i(), Gq::from_int(-1));
    }

    #[test]
    fn display_forms() {
        assert_eq!(Gq::from_ratio(-1, 2).to_string(), "-1/2");
        assert_eq!(Gq::i().to_string(), "i");
        assert_eq!((&Gq::from_int(1) - &Gq::i()).to_string(), "1 - i");
    }
}
