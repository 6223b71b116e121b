//! Rational functions in one symbol, kept reduced with monic denominator.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{BigInt, Integer, One, Zero};

use super::algnum::AlgNum;
use super::poly::UniPoly;
use super::rat::Rat;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalFn {
    num: UniPoly,
    den: UniPoly,
}

impl RationalFn {
    /// Reduces to lowest terms and normalizes the denominator to be monic,
    /// so equality of values is structural equality.
    pub fn new(num: UniPoly, den: UniPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RationalFn {
                num: UniPoly::zero(),
                den: UniPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let mut num = num.exact_div(&g).unwrap();
        let mut den = den.exact_div(&g).unwrap();
        let lead = den.leading();
        let inv = Rat::one() / lead;
        num = num.scale(&inv);
        den = den.scale(&inv);
        RationalFn { num, den }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RationalFn {
            num: p,
            den: UniPoly::one(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        RationalFn::from_poly(UniPoly::constant(c))
    }

    pub fn zero() -> Self {
        RationalFn::from_poly(UniPoly::zero())
    }

    pub fn one() -> Self {
        RationalFn::from_poly(UniPoly::one())
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_poly(&self) -> Option<&UniPoly> {
        if self.den == UniPoly::one() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn recip(&self) -> RationalFn {
        assert!(!self.is_zero(), "reciprocal of zero");
        RationalFn::new(self.den.clone(), self.num.clone())
    }

    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    pub fn eval_alg(&self, x: &AlgNum) -> Option<AlgNum> {
        let d = self.den.eval_alg(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval_alg(x) / d)
        }
    }

    pub fn derivative(&self) -> RationalFn {
        RationalFn::new(
            &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative()),
            &self.den * &self.den,
        )
    }

    /// Substitutes x = p + q*t.
    pub fn compose_affine(&self, p: &Rat, q: &Rat) -> RationalFn {
        RationalFn::new(
            self.num.compose_affine(p, q),
            self.den.compose_affine(p, q),
        )
    }

    /// Integer-coefficient representative (num, den) of the same value, both
    /// primitive up to a shared unit, for display.
    fn display_pair(&self) -> (UniPoly, UniPoly) {
        let mut lcm = BigInt::one();
        for c in self.num.coeffs.iter().chain(self.den.coeffs.iter()) {
            lcm = lcm.lcm(c.denom());
        }
        let mut num = self.num.scale(&Rat::from(lcm.clone()));
        let mut den = self.den.scale(&Rat::from(lcm));
        let mut content = BigInt::zero();
        for c in num.coeffs.iter().chain(den.coeffs.iter()) {
            content = content.gcd(c.numer());
        }
        if !content.is_zero() && !content.is_one() {
            let inv = Rat::new(BigInt::one(), content);
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        (num, den)
    }

    pub fn render(&self, var: &str) -> String {
        let (num, den) = self.display_pair();
        if den == UniPoly::one() {
            return num.render(var);
        }
        let n = num.render(var);
        let d = den.render(var);
        let wrap = |s: String| {
            if s.contains(' ') {
                format!("({s})")
            } else {
                s
            }
        };
        format!("{}/{}", wrap(n), wrap(d))
    }
}

impl Add for &RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: &RationalFn) -> RationalFn {
        RationalFn::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFn {
    type Output = RationalFn;
    fn sub(self, rhs: &RationalFn) -> RationalFn {
        RationalFn::new(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Mul for &RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: &RationalFn) -> RationalFn {
        RationalFn::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RationalFn {
    type Output = RationalFn;
    fn div(self, rhs: &RationalFn) -> RationalFn {
        assert!(!rhs.is_zero(), "division by zero rational function");
        RationalFn::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Add for RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: RationalFn) -> RationalFn {
        &self + &rhs
    }
}

impl Sub for RationalFn {
    type Output = RationalFn;
    fn sub(self, rhs: RationalFn) -> RationalFn {
        &self - &rhs
    }
}

impl Mul for RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: RationalFn) -> RationalFn {
        &self * &rhs
    }
}

impl Div for RationalFn {
    type Output = RationalFn;
    fn div(self, rhs: RationalFn) -> RationalFn {
        &self / &rhs
    }
}

impl Neg for RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        RationalFn {
            num: -self.num,
            den: self.den,
        }
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("a"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::rat;

    #[test]
    fn reduction_is_canonical() {
        // (a^2-4)/(a+2) reduces to a-2
        let f = RationalFn::new(UniPoly::from_i64(&[-4, 0, 1]), UniPoly::from_i64(&[2, 1]));
        assert_eq!(f.as_poly(), Some(&UniPoly::from_i64(&[-2, 1])));
        // same value built two ways compares equal structurally
        let g = RationalFn::new(UniPoly::from_i64(&[-20, 8, 1]), UniPoly::from_i64(&[6, 3]));
        let h = RationalFn::new(
            UniPoly::from_i64(&[-40, 16, 2]),
            UniPoly::from_i64(&[12, 6]),
        );
        assert_eq!(g, h);
    }

    #[test]
    fn field_operations() {
        let f = RationalFn::new(UniPoly::from_i64(&[1]), UniPoly::from_i64(&[-2, 1]));
        let g = RationalFn::from_poly(UniPoly::from_i64(&[-2, 1]));
        assert_eq!(&f * &g, RationalFn::one());
        assert_eq!(f.recip(), g);
        let s = &f + &f;
        assert_eq!(
            s,
            RationalFn::new(UniPoly::from_i64(&[2]), UniPoly::from_i64(&[-2, 1]))
        );
        assert_eq!(s.eval(&rat(3, 1)), Some(rat(2, 1)));
        assert_eq!(f.eval(&rat(2, 1)), None);
    }

    #[test]
    fn rendering_clears_fractions() {
        // (a-2)(a+10)/(3(a+2))
        let f = RationalFn::new(
            UniPoly::from_i64(&[-20, 8, 1]),
            UniPoly::from_i64(&[6, 3]),
        );
        assert_eq!(f.render("a"), "(a^2 + 8*a - 20)/(3*a + 6)");
        assert_eq!(RationalFn::constant(rat(67, 88)).render("a"), "67/88");
    }

    #[test]
    fn composition() {
        // f(a) = 3(a+2)/(a^2+2a-2) under a = 4-u gives 3(6-u)/(u^2-10u+22)
        let f = RationalFn::new(UniPoly::from_i64(&[6, 3]), UniPoly::from_i64(&[-2, 2, 1]));
        let g = f.compose_affine(&rat(4, 1), &rat(-1, 1));
        assert_eq!(
            g,
            RationalFn::new(
                UniPoly::from_i64(&[18, -3]),
                UniPoly::from_i64(&[22, -10, 1])
            )
        );
    }
}
