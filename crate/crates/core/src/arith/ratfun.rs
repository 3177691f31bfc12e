use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gcd::gcd;
use super::mono::Var;
use super::mpoly::{MPoly, Rat};

/// Reduced fraction in Q(x, y, z).
///
/// Canonical form: `gcd(num, den) = 1`, `den` is a primitive integer
/// polynomial whose leading coefficient is positive. Equal values have equal
/// representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: MPoly,
    den: MPoly,
}

impl RatFun {
    pub fn zero() -> RatFun {
        RatFun { num: MPoly::zero(), den: MPoly::one() }
    }

    pub fn one() -> RatFun {
        RatFun::from_poly(MPoly::one())
    }

    pub fn from_poly(p: MPoly) -> RatFun {
        RatFun { num: p, den: MPoly::one() }
    }

    pub fn constant(c: Rat) -> RatFun {
        RatFun::from_poly(MPoly::constant(c))
    }

    pub fn new(num: MPoly, den: MPoly) -> RatFun {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFun::zero();
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        RatFun::from_coprime(num, den)
    }

    /// Like `new` but trusts `gcd(num, den) = 1`.
    pub fn from_coprime(num: MPoly, den: MPoly) -> RatFun {
        if num.is_zero() {
            return RatFun::zero();
        }
        let (s, den) = den.integer_normalize();
        let num = num.scale(&s.recip());
        RatFun { num, den }
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn into_parts(self) -> (MPoly, MPoly) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn has_var(&self, v: Var) -> bool {
        self.num.has_var(v) || self.den.has_var(v)
    }

    pub fn scale(&self, c: &Rat) -> RatFun {
        if c.is_zero() {
            return RatFun::zero();
        }
        RatFun { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &MPoly) -> RatFun {
        RatFun::new(&self.num * p, self.den.clone())
    }

    pub fn div_poly(&self, p: &MPoly) -> RatFun {
        RatFun::new(self.num.clone(), &self.den * p)
    }

    pub fn inv(&self) -> RatFun {
        assert!(!self.is_zero(), "inverse of zero");
        RatFun::from_coprime(self.den.clone(), self.num.clone())
    }

    pub fn shift(&self, dx: i64, dy: i64, dz: i64) -> RatFun {
        if self.is_poly() {
            return RatFun::from_poly(self.num.shift(dx, dy, dz));
        }
        RatFun::from_coprime(self.num.shift(dx, dy, dz), self.den.shift(dx, dy, dz))
    }

    /// Substitution by polynomial images; the images must keep `den` nonzero.
    pub fn substitute(&self, imgs: &[MPoly; 3]) -> RatFun {
        RatFun::new(self.num.substitute(imgs), self.den.substitute(imgs))
    }

    /// Substitution by an invertible affine change of variables, which
    /// preserves coprimality.
    pub fn substitute_invertible(&self, imgs: &[MPoly; 3]) -> RatFun {
        RatFun::from_coprime(self.num.substitute(imgs), self.den.substitute(imgs))
    }

    pub fn eval_all(&self, pt: &[Rat; 3]) -> Option<Rat> {
        let d = self.den.eval_all(pt);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval_all(pt) / d)
        }
    }

    pub fn pow(&self, e: u32) -> RatFun {
        RatFun { num: self.num.pow(e), den: self.den.pow(e) }
    }

    fn add_impl(&self, other: &RatFun, negate: bool) -> RatFun {
        let b = if negate { -&other.num } else { other.num.clone() };
        if self.is_zero() {
            return RatFun { num: b, den: other.den.clone() };
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return RatFun::new(&self.num + &b, self.den.clone());
        }
        if other.den.is_one() {
            return RatFun::from_coprime(&self.num + &(&b * &self.den), self.den.clone());
        }
        if self.den.is_one() {
            return RatFun::from_coprime(&(&self.num * &other.den) + &b, other.den.clone());
        }
        let g = gcd(&self.den, &other.den);
        if g.is_one() {
            let num = &(&self.num * &other.den) + &(&b * &self.den);
            return RatFun::from_coprime(num, &self.den * &other.den);
        }
        let d1 = self.den.div_exact(&g).expect("gcd divides");
        let d2 = other.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &d2) + &(&b * &d1);
        if num.is_zero() {
            return RatFun::zero();
        }
        let h = gcd(&num, &g);
        let (num, g) = if h.is_one() {
            (num, g)
        } else {
            (num.div_exact(&h).unwrap(), g.div_exact(&h).unwrap())
        };
        RatFun::from_coprime(num, &(&d1 * &d2) * &g)
    }

    fn mul_impl(&self, other: &RatFun) -> RatFun {
        if self.is_zero() || other.is_zero() {
            return RatFun::zero();
        }
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = other.den.div_exact(&g1).unwrap();
        let n2 = other.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        RatFun::from_coprime(&n1 * &n2, &d1 * &d2)
    }
}

impl Default for RatFun {
    fn default() -> Self {
        RatFun::zero()
    }
}

impl From<MPoly> for RatFun {
    fn from(p: MPoly) -> Self {
        RatFun::from_poly(p)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            let s = self.num.to_string();
            return write!(f, "{s}");
        }
        let paren = |p: &MPoly| {
            if p.len() > 1 || p.lc() < Rat::zero() || !p.lc().is_integer() {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        let n = if self.num.len() > 1 || !self.num.lc().is_integer() {
            format!("({})", self.num)
        } else {
            self.num.to_string()
        };
        let d = if self.den.len() == 1 && self.den.terms()[0].1.is_one() {
            self.den.to_string()
        } else {
            paren(&self.den)
        };
        write!(f, "{n}/{d}")
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&RatFun> for &RatFun {
            type Output = RatFun;
            fn $m(self, rhs: &RatFun) -> RatFun {
                let f: fn(&RatFun, &RatFun) -> RatFun = $body;
                f(self, rhs)
            }
        }
        impl $tr<RatFun> for RatFun {
            type Output = RatFun;
            fn $m(self, rhs: RatFun) -> RatFun {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RatFun> for RatFun {
            type Output = RatFun;
            fn $m(self, rhs: &RatFun) -> RatFun {
                (&self).$m(rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| a.add_impl(b, false));
binop!(Sub, sub, |a, b| a.add_impl(b, true));
binop!(Mul, mul, |a, b| a.mul_impl(b));
binop!(Div, div, |a, b| a.mul_impl(&b.inv()));

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}

impl One for RatFun {
    fn one() -> Self {
        RatFun::one()
    }
}

impl Zero for RatFun {
    fn zero() -> Self {
        RatFun::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::mpoly::rat;

    #[test]
    fn telescoping_sum() {
        let y = MPoly::var(Var::Y);
        let f = RatFun::new(MPoly::one(), &y * &y.shift(0, 1, 0));
        let g = RatFun::new(MPoly::int(-1), y.clone());
        assert_eq!(&g.shift(0, 1, 0) - &g, f);
    }

    #[test]
    fn canonical_den() {
        let f = RatFun::new(MPoly::int(2), MPoly::linear(0, -2, 0, 4));
        assert_eq!(f.den(), &MPoly::linear(0, 1, 0, -2));
        assert_eq!(f.num(), &MPoly::int(-1));
        let g = &f * &RatFun::from_poly(MPoly::linear(0, 1, 0, -2));
        assert_eq!(g, RatFun::constant(rat(-1)));
    }
}
