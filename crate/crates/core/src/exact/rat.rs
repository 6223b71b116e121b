//! Arbitrary-precision rational scalars.
//!
//! `Rat` is a thin re-export of [`num::BigRational`], which already keeps
//! every value reduced with a positive denominator. The helpers here cover
//! the "p/q" wire format used throughout the JSON interfaces.

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, Zero};

pub type Rat = BigRational;

/// Shorthand constructor from machine integers.
pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

/// Parses the "p/q" (or plain "p") wire format.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    match s.parse::<BigRational>() {
        Ok(r) => Ok(r),
        Err(e) => Err(format!("bad rational {s:?}: {e}")),
    }
}

/// Renders a rational in the "p/q" wire format ("p" when integral).
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Floor of sqrt(n) for a nonnegative integer.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of negative integer");
    n.sqrt()
}

/// Splits `n > 0` as `s^2 * d` with `d` squarefree, returning `(s, d)`.
///
/// Trial division is used for small primes; the (huge) cofactor that may
/// remain is handled by a perfect-square check, which is enough for every
/// radicand this crate produces.
pub fn squarefree_decompose(n: &BigInt) -> (BigInt, BigInt) {
    assert!(n.is_positive(), "radicand must be positive");
    let mut rem = n.clone();
    let mut square = BigInt::one();
    let mut free = BigInt::one();
    let mut f = BigInt::from(2);
    let limit = BigInt::from(100_000u32);
    while &f * &f <= rem && f <= limit {
        let mut e = 0u32;
        while (&rem % &f).is_zero() {
            rem /= &f;
            e += 1;
        }
        if e > 0 {
            square *= f.pow(e / 2);
            if e % 2 == 1 {
                free *= &f;
            }
        }
        f += 1u32;
    }
    if rem > BigInt::one() {
        let r = isqrt(&rem);
        if &r * &r == rem {
            square *= r;
        } else {
            free *= rem;
        }
    }
    (square, free)
}

/// Exact square root of a rational, if it is a perfect square.
pub fn rat_sqrt_exact(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let ns = isqrt(r.numer());
    let ds = isqrt(r.denom());
    if &(&ns * &ns) == r.numer() && &(&ds * &ds) == r.denom() {
        Some(Rat::new(ns, ds))
    } else {
        None
    }
}

/// Rational enclosure `lo <= sqrt(r) <= hi` of width `<= 10^-digits`.
pub fn sqrt_enclosure(r: &Rat, digits: u32) -> (Rat, Rat) {
    assert!(!r.is_negative());
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = r * Rat::from(&scale * &scale);
    // scaled = p/q; floor(sqrt(p/q)) >= floor(sqrt(p))/ceil(sqrt(q)+1) is too
    // lossy, so clear the denominator first.
    let p = scaled.numer() * scaled.denom();
    let q = scaled.denom().clone();
    let root = isqrt(&p); // floor(sqrt(p)), and sqrt(scaled) = sqrt(p)/q
    let lo = Rat::new(root.clone(), &q * &scale);
    let hi = Rat::new(root + 1, q * scale);
    (lo, hi)
}

pub fn sign_of(r: &Rat) -> i32 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_roundtrip() {
        let r = parse_rat("-67/88").unwrap();
        assert_eq!(fmt_rat(&r), "-67/88");
        assert_eq!(fmt_rat(&parse_rat("10/5").unwrap()), "2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn normalization_is_idempotent() {
        // BigRational reduces on construction; re-normalizing changes nothing.
        let r = Rat::new(BigInt::from(-6), BigInt::from(-8));
        assert_eq!(r, rat(3, 4));
        assert_eq!(Rat::new(r.numer().clone(), r.denom().clone()), r);
        assert!(r.denom().is_positive());
    }

    #[test]
    fn squarefree_split() {
        let (s, d) = squarefree_decompose(&BigInt::from(84)); // 4 * 21
        assert_eq!((s, d), (BigInt::from(2), BigInt::from(21)));
        let (s, d) = squarefree_decompose(&BigInt::from(57));
        assert_eq!((s, d), (BigInt::from(1), BigInt::from(57)));
        let (s, d) = squarefree_decompose(&BigInt::from(144));
        assert_eq!((s, d), (BigInt::from(12), BigInt::from(1)));
    }

    #[test]
    fn sqrt_enclosure_brackets() {
        let (lo, hi) = sqrt_enclosure(&rat(21, 1), 30);
        assert!(&lo * &lo <= rat(21, 1));
        assert!(&hi * &hi >= rat(21, 1));
        assert!(&hi - &lo <= Rat::new(BigInt::one(), BigInt::from(10u32).pow(30)));
    }
}
