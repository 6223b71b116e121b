//! Dense polynomials in two symbols: the surface parameter `a` and the flag
//! parameter `v`. Stored as coefficients of powers of `v`, each a `UniPoly`
//! in `a`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, One, Zero};

use super::poly::UniPoly;
use super::rat::Rat;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BiPoly {
    /// vcoeffs[j] is the coefficient of v^j, a polynomial in a.
    pub vcoeffs: Vec<UniPoly>,
}

impl BiPoly {
    pub fn new(mut vcoeffs: Vec<UniPoly>) -> Self {
        while vcoeffs.last().map_or(false, |c| c.is_zero()) {
            vcoeffs.pop();
        }
        BiPoly { vcoeffs }
    }

    pub fn zero() -> Self {
        BiPoly { vcoeffs: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.vcoeffs.is_empty()
    }

    pub fn constant(c: Rat) -> Self {
        BiPoly::new(vec![UniPoly::constant(c)])
    }

    pub fn from_a(p: UniPoly) -> Self {
        BiPoly::new(vec![p])
    }

    /// The symbol a.
    pub fn a() -> Self {
        BiPoly::from_a(UniPoly::var())
    }

    /// The symbol v.
    pub fn v() -> Self {
        BiPoly::new(vec![UniPoly::zero(), UniPoly::one()])
    }

    /// c0 + c1*a + c2*v from machine integers.
    pub fn affine_i64(c0: i64, c1: i64, c2: i64) -> Self {
        BiPoly::new(vec![
            UniPoly::from_i64(&[c0, c1]),
            UniPoly::from_i64(&[c2]),
        ])
    }

    pub fn vdeg(&self) -> Option<usize> {
        if self.vcoeffs.is_empty() {
            None
        } else {
            Some(self.vcoeffs.len() - 1)
        }
    }

    pub fn vcoeff(&self, j: usize) -> UniPoly {
        self.vcoeffs.get(j).cloned().unwrap_or_else(UniPoly::zero)
    }

    pub fn eval(&self, a: &Rat, v: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.vcoeffs.iter().rev() {
            acc = acc * v + c.eval(a);
        }
        acc
    }

    /// Substitutes v = p(a), collapsing to a polynomial in a.
    pub fn eval_v(&self, v: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        for c in self.vcoeffs.iter().rev() {
            acc = acc * v.clone() + c.clone();
        }
        acc
    }

    /// Substitutes a = a0, collapsing to a polynomial in v.
    pub fn eval_a(&self, a: &Rat) -> UniPoly {
        UniPoly::new(self.vcoeffs.iter().map(|c| c.eval(a)).collect())
    }

    pub fn ddv(&self) -> BiPoly {
        if self.vcoeffs.len() <= 1 {
            return BiPoly::zero();
        }
        BiPoly::new(
            self.vcoeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c.scale(&Rat::from(BigInt::from(j))))
                .collect(),
        )
    }

    /// Antiderivative in v with zero constant term.
    pub fn antiderivative_v(&self) -> BiPoly {
        let mut v = vec![UniPoly::zero()];
        for (j, c) in self.vcoeffs.iter().enumerate() {
            v.push(c.scale(&(Rat::one() / Rat::from(BigInt::from(j + 1)))));
        }
        BiPoly::new(v)
    }

    pub fn scale(&self, c: &Rat) -> BiPoly {
        BiPoly::new(self.vcoeffs.iter().map(|t| t.scale(c)).collect())
    }

    pub fn mul_a_poly(&self, p: &UniPoly) -> BiPoly {
        BiPoly::new(self.vcoeffs.iter().map(|c| c * p).collect())
    }

    /// True when the polynomial has v-degree at most 1 (affine in v).
    pub fn is_v_affine(&self) -> bool {
        self.vcoeffs.len() <= 2
    }

    pub fn render(&self, avar: &str, vvar: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (j, c) in self.vcoeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let body = c.render(avar);
            let wrapped = if c.coeffs.iter().filter(|t| !t.is_zero()).count() > 1 {
                format!("({body})")
            } else {
                body
            };
            let term = match j {
                0 => wrapped,
                1 => {
                    if wrapped == "1" {
                        vvar.to_string()
                    } else {
                        format!("{wrapped}*{vvar}")
                    }
                }
                _ => {
                    if wrapped == "1" {
                        format!("{vvar}^{j}")
                    } else {
                        format!("{wrapped}*{vvar}^{j}")
                    }
                }
            };
            parts.push(term);
        }
        parts.join(" + ")
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let n = self.vcoeffs.len().max(rhs.vcoeffs.len());
        BiPoly::new((0..n).map(|j| &self.vcoeff(j) + &rhs.vcoeff(j)).collect())
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let n = self.vcoeffs.len().max(rhs.vcoeffs.len());
        BiPoly::new((0..n).map(|j| &self.vcoeff(j) - &rhs.vcoeff(j)).collect())
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        let mut v = vec![UniPoly::zero(); self.vcoeffs.len() + rhs.vcoeffs.len() - 1];
        for (i, a) in self.vcoeffs.iter().enumerate() {
            for (j, b) in rhs.vcoeffs.iter().enumerate() {
                v[i + j] = &v[i + j] + &(a * b);
            }
        }
        BiPoly::new(v)
    }
}

impl Add for BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: BiPoly) -> BiPoly {
        &self + &rhs
    }
}

impl Sub for BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: BiPoly) -> BiPoly {
        &self - &rhs
    }
}

impl Mul for BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: BiPoly) -> BiPoly {
        &self * &rhs
    }
}

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly::new(self.vcoeffs.into_iter().map(|c| -c).collect())
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("a", "v"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::rat;

    #[test]
    fn construction_and_eval() {
        // a^2 - v^2 - 2v - 4
        let p = BiPoly::new(vec![
            UniPoly::from_i64(&[-4, 0, 1]),
            UniPoly::from_i64(&[-2]),
            UniPoly::from_i64(&[-1]),
        ]);
        assert_eq!(p.eval(&rat(3, 1), &rat(1, 1)), rat(2, 1));
        assert_eq!(p.vdeg(), Some(2));
        // substitute v = a - 2: a^2 - (a-2)^2 - 2(a-2) - 4 = 2a - 4
        let sub = p.eval_v(&UniPoly::from_i64(&[-2, 1]));
        assert_eq!(sub, UniPoly::from_i64(&[-4, 2]));
    }

    #[test]
    fn calculus_in_v() {
        let p = BiPoly::affine_i64(2, 1, -1); // 2 + a - v
        let sq = &p * &p;
        // d/dv (2+a-v)^2 = -2(2+a-v)
        assert_eq!(sq.ddv(), p.scale(&rat(-2, 1)));
        assert_eq!(sq.antiderivative_v().ddv(), sq);
    }

    #[test]
    fn rendering() {
        let p = BiPoly::affine_i64(2, -1, 1);
        assert_eq!(p.render("a", "v"), "v + (-a + 2)");
    }
}
