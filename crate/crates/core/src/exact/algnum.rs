//! Exact real algebraic scalars of the form `r + sum_d c_d * sqrt(d)`.
//!
//! Every irrational constant in the verified computations lives in a real
//! quadratic field, but sums of values from *different* quadratic fields do
//! occur (piecewise integrals whose breakpoints lie in distinct fields), so
//! the scalar type is the full multi-quadratic span: a rational part plus
//! finitely many `c_d * sqrt(d)` terms with `d > 1` squarefree. This basis is
//! closed under ring operations, and linear independence of distinct square
//! roots makes equality structural and sign determination terminating.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{BigInt, One, Signed, Zero};

use super::rat::{
    fmt_rat, parse_rat, sign_of, sqrt_enclosure, squarefree_decompose, Rat,
};

/// An element of the multi-quadratic extension of the rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgNum {
    rat: Rat,
    /// Nonzero coefficients of sqrt(d), keyed by squarefree d > 1.
    terms: BTreeMap<BigInt, Rat>,
}

impl AlgNum {
    pub fn zero() -> Self {
        AlgNum {
            rat: Rat::zero(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        AlgNum::from(Rat::one())
    }

    pub fn from_int(n: i64) -> Self {
        AlgNum::from(Rat::from(BigInt::from(n)))
    }

    /// `p + q * sqrt(d)` for integer `d >= 0` (normalizing square factors).
    pub fn quad(p: Rat, q: Rat, d: i64) -> Self {
        assert!(d >= 0, "negative radicand");
        AlgNum::from(p) + AlgNum::sqrt_int(d) * AlgNum::from(q)
    }

    /// Exact `sqrt(n)` of a nonnegative integer.
    pub fn sqrt_int(n: i64) -> Self {
        AlgNum::sqrt_rat(&Rat::from(BigInt::from(n)))
    }

    /// Exact `sqrt(r)` of a nonnegative rational.
    pub fn sqrt_rat(r: &Rat) -> Self {
        assert!(!r.is_negative(), "negative radicand");
        if r.is_zero() {
            return AlgNum::zero();
        }
        // sqrt(p/q) = sqrt(p*q) / q
        let n = r.numer() * r.denom();
        let (s, d) = squarefree_decompose(&n);
        let coeff = Rat::new(s, r.denom().clone());
        if d.is_one() {
            AlgNum::from(coeff)
        } else {
            let mut terms = BTreeMap::new();
            terms.insert(d, coeff);
            AlgNum {
                rat: Rat::zero(),
                terms,
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.terms.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        if self.terms.is_empty() {
            Some(&self.rat)
        } else {
            None
        }
    }

    pub fn rational_part(&self) -> &Rat {
        &self.rat
    }

    /// Exact sign: -1, 0 or +1.
    ///
    /// Structural zero is decided directly; otherwise the value is nonzero
    /// (distinct square roots are linearly independent over the rationals)
    /// and interval refinement of the radicals terminates.
    pub fn sign(&self) -> i32 {
        if self.terms.is_empty() {
            return sign_of(&self.rat);
        }
        let mut digits = 8u32;
        loop {
            let (lo, hi) = self.enclosure(digits);
            if sign_of(&lo) > 0 {
                return 1;
            }
            if sign_of(&hi) < 0 {
                return -1;
            }
            digits *= 2;
            assert!(digits <= 1 << 16, "sign refinement failed to converge");
        }
    }

    /// Rational enclosure of width about `#terms * 10^-digits`.
    pub fn enclosure(&self, digits: u32) -> (Rat, Rat) {
        let mut lo = self.rat.clone();
        let mut hi = self.rat.clone();
        for (d, c) in &self.terms {
            let (slo, shi) = sqrt_enclosure(&Rat::from(d.clone()), digits);
            if c.is_positive() {
                lo += c * &slo;
                hi += c * &shi;
            } else {
                lo += c * &shi;
                hi += c * &slo;
            }
        }
        (lo, hi)
    }

    /// A rational approximation good to about `digits` decimal digits.
    pub fn approx(&self, digits: u32) -> Rat {
        let (lo, hi) = self.enclosure(digits);
        (lo + hi) / Rat::from(BigInt::from(2))
    }

    pub fn cmp_exact(&self, other: &AlgNum) -> std::cmp::Ordering {
        match (self.clone() - other.clone()).sign() {
            s if s < 0 => std::cmp::Ordering::Less,
            0 => std::cmp::Ordering::Equal,
            _ => std::cmp::Ordering::Greater,
        }
    }

    pub fn min_exact(a: AlgNum, b: AlgNum) -> AlgNum {
        if a.cmp_exact(&b) == std::cmp::Ordering::Greater {
            b
        } else {
            a
        }
    }

    pub fn max_exact(a: AlgNum, b: AlgNum) -> AlgNum {
        if a.cmp_exact(&b) == std::cmp::Ordering::Less {
            b
        } else {
            a
        }
    }

    fn insert_term(&mut self, d: BigInt, c: Rat) {
        if c.is_zero() {
            return;
        }
        if d.is_one() {
            self.rat += c;
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(d) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> AlgNum {
        if c.is_zero() {
            return AlgNum::zero();
        }
        AlgNum {
            rat: &self.rat * c,
            terms: self.terms.iter().map(|(d, t)| (d.clone(), t * c)).collect(),
        }
    }

    /// Multiplicative inverse.
    ///
    /// Conjugating with respect to one prime radicand at a time reduces the
    /// denominator to a rational.
    pub fn inv(&self) -> AlgNum {
        assert!(!self.is_zero(), "division by zero");
        if let Some(r) = self.as_rational() {
            return AlgNum::from(Rat::one() / r);
        }
        // Pick a prime p dividing some radicand and split x = a + sqrt(p) * b
        // where neither a nor b mentions p. Then 1/x = (a - sqrt(p) b) / (a^2 - p b^2).
        let p = {
            let d = self.terms.keys().next().unwrap();
            smallest_prime_factor(d)
        };
        let sp = Rat::from(p.clone());
        let mut a = AlgNum {
            rat: self.rat.clone(),
            terms: BTreeMap::new(),
        };
        let mut b = AlgNum::zero();
        for (d, c) in &self.terms {
            if (d % &p).is_zero() {
                b.insert_term(d / &p, c.clone());
            } else {
                a.insert_term(d.clone(), c.clone());
            }
        }
        let sqrt_p = AlgNum::sqrt_rat(&sp);
        let conj = a.clone() - sqrt_p.clone() * b.clone();
        let norm = a.clone() * a - (b.clone() * b).scale(&sp);
        debug_assert!(norm
            .terms
            .keys()
            .all(|d| !(d % &p).is_zero() || d.is_one()));
        conj * norm.inv()
    }

    /// Renders as e.g. "5/3 + 1/2*sqrt(21)". Purely rational values render "p/q".
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return fmt_rat(&self.rat);
        }
        let mut out = String::new();
        let mut first = true;
        if !self.rat.is_zero() || self.terms.is_empty() {
            out.push_str(&fmt_rat(&self.rat));
            first = false;
        }
        for (d, c) in &self.terms {
            if first {
                out.push_str(&format!("{}*sqrt({})", fmt_rat(c), d));
                first = false;
            } else if c.is_negative() {
                out.push_str(&format!(" - {}*sqrt({})", fmt_rat(&-c), d));
            } else {
                out.push_str(&format!(" + {}*sqrt({})", fmt_rat(c), d));
            }
        }
        out
    }

    /// Parses "p/q", "sqrt(d)", and sums like "7/2 - 1/2*sqrt(21)".
    pub fn parse(s: &str) -> Result<AlgNum, String> {
        let s = s.replace(' ', "");
        if s.is_empty() {
            return Err("empty scalar".into());
        }
        let mut out = AlgNum::zero();
        let bytes = s.as_bytes();
        let mut start = 0usize;
        let mut i = 1usize;
        let mut depth = 0i32;
        let mut parts: Vec<&str> = Vec::new();
        while i <= bytes.len() {
            if i == bytes.len() {
                parts.push(&s[start..i]);
                break;
            }
            match bytes[i] {
                b'(' => depth += 1,
                b')' => depth -= 1,
                b'+' | b'-' if depth == 0 && bytes[i - 1] != b'/' => {
                    parts.push(&s[start..i]);
                    start = i;
                }
                _ => {}
            }
            i += 1;
        }
        for part in parts {
            let (sign, body) = match part.strip_prefix('-') {
                Some(rest) => (-1, rest),
                None => (1, part.strip_prefix('+').unwrap_or(part)),
            };
            let term = if let Some(idx) = body.find("sqrt(") {
                let inner = &body[idx + 5..body.len() - 1];
                if !body.ends_with(')') {
                    return Err(format!("bad radical in {part:?}"));
                }
                let d = parse_rat(inner)?;
                let coeff = match &body[..idx] {
                    "" => Rat::one(),
                    c => parse_rat(c.strip_suffix('*').unwrap_or(c))?,
                };
                AlgNum::sqrt_rat(&d).scale(&coeff)
            } else {
                AlgNum::from(parse_rat(body)?)
            };
            out = if sign < 0 { out - term } else { out + term };
        }
        Ok(out)
    }
}

fn smallest_prime_factor(n: &BigInt) -> BigInt {
    let mut f = BigInt::from(2);
    while &f * &f <= *n {
        if (n % &f).is_zero() {
            return f;
        }
        f += 1u32;
    }
    n.clone()
}

impl From<Rat> for AlgNum {
    fn from(r: Rat) -> Self {
        AlgNum {
            rat: r,
            terms: BTreeMap::new(),
        }
    }
}

impl From<&Rat> for AlgNum {
    fn from(r: &Rat) -> Self {
        AlgNum::from(r.clone())
    }
}

impl Add for AlgNum {
    type Output = AlgNum;
    fn add(self, rhs: AlgNum) -> AlgNum {
        let mut out = self;
        out.rat += rhs.rat;
        for (d, c) in rhs.terms {
            out.insert_term(d, c);
        }
        out
    }
}

impl Sub for AlgNum {
    type Output = AlgNum;
    fn sub(self, rhs: AlgNum) -> AlgNum {
        self + (-rhs)
    }
}

impl Neg for AlgNum {
    type Output = AlgNum;
    fn neg(self) -> AlgNum {
        AlgNum {
            rat: -self.rat,
            terms: self.terms.into_iter().map(|(d, c)| (d, -c)).collect(),
        }
    }
}

impl Mul for AlgNum {
    type Output = AlgNum;
    fn mul(self, rhs: AlgNum) -> AlgNum {
        let mut out = AlgNum::from(&self.rat * &rhs.rat);
        for (d, c) in &rhs.terms {
            out.insert_term(d.clone(), &self.rat * c);
        }
        for (d, c) in &self.terms {
            out.insert_term(d.clone(), c * &rhs.rat);
        }
        for (d1, c1) in &self.terms {
            for (d2, c2) in &rhs.terms {
                // sqrt(d1) * sqrt(d2) = g * sqrt(m*n) with d1 = g m, d2 = g n.
                let g = num::Integer::gcd(d1, d2);
                let m = d1 / &g;
                let n = d2 / &g;
                let coeff = c1 * c2 * Rat::from(g);
                out.insert_term(m * n, coeff);
            }
        }
        out
    }
}

impl Div for AlgNum {
    type Output = AlgNum;
    fn div(self, rhs: AlgNum) -> AlgNum {
        self * rhs.inv()
    }
}

impl fmt::Display for AlgNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
