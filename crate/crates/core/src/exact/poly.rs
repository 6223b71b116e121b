//! Dense univariate polynomials with rational coefficients.
//!
//! Degrees stay small (at most 8 in the verified computations), so the dense
//! representation is used throughout with no sparse tricks.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, One, Signed, Zero};

use super::algnum::AlgNum;
use super::rat::{fmt_rat, rat_sqrt_exact, Rat};

/// Coefficients in increasing degree; trailing zeros stripped.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly {
    pub coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        UniPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        UniPoly::new(vec![c])
    }

    pub fn monomial(c: Rat, deg: usize) -> Self {
        let mut v = vec![Rat::zero(); deg + 1];
        v[deg] = c;
        UniPoly::new(v)
    }

    /// The variable itself.
    pub fn var() -> Self {
        UniPoly::monomial(Rat::one(), 1)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| Rat::from(BigInt::from(c))).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeff(&self, deg: usize) -> Rat {
        self.coeffs.get(deg).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_alg(&self, x: &AlgNum) -> AlgNum {
        let mut acc = AlgNum::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + AlgNum::from(c);
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from(BigInt::from(i)))
                .collect(),
        )
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> UniPoly {
        let mut v = vec![Rat::zero()];
        for (i, c) in self.coeffs.iter().enumerate() {
            v.push(c / Rat::from(BigInt::from(i + 1)));
        }
        UniPoly::new(v)
    }

    pub fn scale(&self, c: &Rat) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|t| t * c).collect())
    }

    /// Substitutes `x = p + q*t`, returning a polynomial in `t`.
    pub fn compose_affine(&self, p: &Rat, q: &Rat) -> UniPoly {
        let sub = UniPoly::new(vec![p.clone(), q.clone()]);
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * sub.clone() + UniPoly::constant(c.clone());
        }
        acc
    }

    /// Euclidean division, returning (quotient, remainder).
    pub fn divrem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree().unwrap();
        let lead_inv = Rat::one() / d.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let last = rem.last().unwrap().clone();
            if last.is_zero() {
                rem.pop();
                continue;
            }
            let k = rem.len() - 1 - dd;
            let q = last * &lead_inv;
            for (i, c) in d.coeffs.iter().enumerate() {
                let idx = k + i;
                let delta = c * &q;
                rem[idx] -= delta;
            }
            rem.pop();
            quot[k] = q;
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Exact quotient; None when the remainder is nonzero.
    pub fn exact_div(&self, d: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.divrem(d);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            let lead = a.leading();
            a.scale(&(Rat::one() / lead))
        }
    }

    /// Squarefree part, monic.
    pub fn squarefree(&self) -> UniPoly {
        if self.degree().map_or(true, |d| d == 0) {
            return if self.is_zero() {
                UniPoly::zero()
            } else {
                UniPoly::one()
            };
        }
        let g = self.gcd(&self.derivative());
        let sf = self.exact_div(&g).expect("gcd divides");
        let lead = sf.leading();
        sf.scale(&(Rat::one() / lead))
    }

    /// Exact square root when `self` is the square of a rational polynomial.
    pub fn sqrt_exact(&self) -> Option<UniPoly> {
        if self.is_zero() {
            return Some(UniPoly::zero());
        }
        let deg = self.degree().unwrap();
        if deg % 2 != 0 {
            return None;
        }
        let lead_root = rat_sqrt_exact(&self.leading())?;
        let half = deg / 2;
        // Long-division style: determine coefficients of r from the top down.
        let mut r = vec![Rat::zero(); half + 1];
        r[half] = lead_root;
        for k in (0..half).rev() {
            // coefficient of x^(k+half) in r^2 must match self
            let mut acc = Rat::zero();
            for i in (k + 1)..=half {
                let j = k + half - i;
                if j > half || j <= k {
                    continue;
                }
                acc += &r[i] * &r[j];
            }
            let target = self.coeff(k + half) - acc;
            r[k] = target / (Rat::from(BigInt::from(2)) * &r[half]);
        }
        let cand = UniPoly::new(r);
        if &cand * &cand == *self {
            Some(cand)
        } else {
            None
        }
    }

    /// Renders with the given variable name, highest degree first.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let term = if i == 0 {
                fmt_rat(&mag)
            } else {
                let pow = if i == 1 {
                    var.to_string()
                } else {
                    format!("{var}^{i}")
                };
                if mag.is_one() {
                    pow
                } else {
                    format!("{}*{}", fmt_rat(&mag), pow)
                }
            };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&term);
        }
        out
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(self.coeff(i) + rhs.coeff(i));
        }
        UniPoly::new(v)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(self.coeff(i) - rhs.coeff(i));
        }
        UniPoly::new(v)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UniPoly::new(v)
    }
}

impl Add for UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: UniPoly) -> UniPoly {
        &self + &rhs
    }
}

impl Sub for UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: UniPoly) -> UniPoly {
        &self - &rhs
    }
}

impl Mul for UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: UniPoly) -> UniPoly {
        &self * &rhs
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("x"))
    }
}
