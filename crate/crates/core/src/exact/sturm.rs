//! Sturm chains: exact sign classification on intervals, real root counting
//! and isolation, and exact root extraction for the quadratic-irrational
//! breakpoints that arise when comparing bound functions.

use num::{BigInt, Integer, One, Signed, Zero};

use super::algnum::AlgNum;
use super::poly::UniPoly;
use super::rat::{sign_of, Rat};

/// Sign of a polynomial on an open interval, or a root witness.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum IntervalSign {
    AllPositive,
    AllNegative,
    /// A rational interval containing a root of the polynomial inside the
    /// queried interval (degenerate (r, r) when the root is rational).
    HasZero(Rat, Rat),
}

/// Sturm chain of the squarefree part.
pub fn sturm_chain(p: &UniPoly) -> Vec<UniPoly> {
    let q = p.squarefree();
    let mut chain = vec![q.clone(), q.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let rem = chain[n - 2].divrem(&chain[n - 1]).1;
        if rem.is_zero() {
            break;
        }
        chain.push(-rem);
    }
    chain
}

fn variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut count = 0;
    let mut prev = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if prev != 0 && s != prev {
            count += 1;
        }
        prev = s;
    }
    count
}

fn variations_at(chain: &[UniPoly], x: &AlgNum) -> usize {
    if let Some(r) = x.as_rational() {
        variations(chain.iter().map(|p| sign_of(&p.eval(r))))
    } else {
        variations(chain.iter().map(|p| p.eval_alg(x).sign()))
    }
}

fn variations_at_pos_inf(chain: &[UniPoly]) -> usize {
    variations(chain.iter().map(|p| sign_of(&p.leading())))
}

fn variations_at_neg_inf(chain: &[UniPoly]) -> usize {
    variations(chain.iter().map(|p| {
        let s = sign_of(&p.leading());
        if p.degree().unwrap_or(0) % 2 == 1 {
            -s
        } else {
            s
        }
    }))
}

/// Number of distinct real roots in the open interval (lo, hi).
pub fn count_roots_open(p: &UniPoly, lo: &AlgNum, hi: &AlgNum) -> usize {
    assert!(!p.is_zero(), "identically zero");
    if lo.cmp_exact(hi) != std::cmp::Ordering::Less {
        return 0;
    }
    let q = p.squarefree();
    let chain = sturm_chain(p);
    // V counts roots in (lo, hi]; drop hi if it is a root.
    let mut n = variations_at(&chain, lo) - variations_at(&chain, hi);
    if q.eval_alg(hi).is_zero() {
        n -= 1;
    }
    n
}

/// Number of distinct real roots on the whole line.
pub fn count_roots_all(p: &UniPoly) -> usize {
    assert!(!p.is_zero(), "identically zero");
    let chain = sturm_chain(p);
    variations_at_neg_inf(&chain) - variations_at_pos_inf(&chain)
}

/// A rational bound B with all real roots of p in (-B, B).
pub fn cauchy_bound(p: &UniPoly) -> Rat {
    let lead = p.leading();
    let mut max = Rat::zero();
    for c in &p.coeffs {
        let r = (c / &lead).abs();
        if r > max {
            max = r;
        }
    }
    max + Rat::one() + Rat::one()
}

/// Isolating intervals (with rational endpoints) for every distinct real
/// root, in increasing order. A rational root r yields the degenerate
/// interval (r, r); every other interval contains exactly one root and the
/// polynomial is nonzero at its endpoints.
pub fn isolate_roots(p: &UniPoly) -> Vec<(Rat, Rat)> {
    assert!(!p.is_zero(), "identically zero");
    // deflating rational roots first guarantees bisection midpoints, which
    // are rational, are never roots of the remainder
    let (rats, q) = deflate_rational_roots(&p.squarefree());
    let mut out: Vec<(Rat, Rat)> = rats.into_iter().map(|r| (r.clone(), r)).collect();
    if q.degree().map_or(false, |d| d >= 1) {
        let chain = sturm_chain(&q);
        let b = cauchy_bound(&q);
        let count = |lo: &Rat, hi: &Rat| -> usize {
            let vl = variations(chain.iter().map(|t| sign_of(&t.eval(lo))));
            let vh = variations(chain.iter().map(|t| sign_of(&t.eval(hi))));
            vl - vh
        };
        let mut stack = vec![(-b.clone(), b)];
        while let Some((lo, hi)) = stack.pop() {
            match count(&lo, &hi) {
                0 => {}
                1 => out.push((lo, hi)),
                _ => {
                    let mid = (&lo + &hi) / Rat::from(BigInt::from(2));
                    debug_assert!(!q.eval(&mid).is_zero());
                    stack.push((mid.clone(), hi));
                    stack.push((lo, mid));
                }
            }
        }
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

/// Classifies the sign of p on the open interval (lo, hi).
pub fn sign_on_interval(p: &UniPoly, lo: &AlgNum, hi: &AlgNum) -> Result<IntervalSign, String> {
    if p.is_zero() {
        return Err("identically zero".into());
    }
    if lo.cmp_exact(hi) != std::cmp::Ordering::Less {
        return Err("empty interval".into());
    }
    if count_roots_open(p, lo, hi) == 0 {
        let mid = (lo.clone() + hi.clone()).scale(&Rat::new(BigInt::one(), BigInt::from(2)));
        return match p.eval_alg(&mid).sign() {
            s if s > 0 => Ok(IntervalSign::AllPositive),
            s if s < 0 => Ok(IntervalSign::AllNegative),
            _ => unreachable!("no roots inside, midpoint cannot vanish"),
        };
    }
    // find an isolating interval for a root lying inside (lo, hi)
    let (_, deflated) = deflate_rational_roots(&p.squarefree());
    for (a, b) in isolate_roots(p) {
        let (mut a, mut b) = (a, b);
        // refine until the isolating interval sits inside (lo, hi) or
        // provably misses it
        for _ in 0..256 {
            let a_alg = AlgNum::from(a.clone());
            let b_alg = AlgNum::from(b.clone());
            if b_alg.cmp_exact(lo) != std::cmp::Ordering::Greater
                || a_alg.cmp_exact(hi) != std::cmp::Ordering::Less
            {
                break; // disjoint from (lo, hi)
            }
            if a_alg.cmp_exact(lo) == std::cmp::Ordering::Greater
                && b_alg.cmp_exact(hi) == std::cmp::Ordering::Less
            {
                return Ok(IntervalSign::HasZero(a, b));
            }
            if a == b {
                break; // rational root equal to an endpoint
            }
            // non-degenerate intervals isolate a root of the deflated part,
            // which is nonzero at every rational point we test
            let mid = (&a + &b) / Rat::from(BigInt::from(2));
            if sign_of(&deflated.eval(&a)) * sign_of(&deflated.eval(&mid)) < 0 {
                b = mid;
            } else {
                a = mid;
            }
        }
    }
    Err("root witness refinement failed".into())
}

/// Rational roots with the factor removed; returns (roots, deflated poly).
fn deflate_rational_roots(p: &UniPoly) -> (Vec<Rat>, UniPoly) {
    let mut roots = Vec::new();
    let mut cur = p.clone();
    // clear to integer coefficients
    loop {
        if cur.degree().map_or(true, |d| d == 0) {
            break;
        }
        let mut lcm = BigInt::one();
        for c in &cur.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let int = cur.scale(&Rat::from(lcm));
        let mut found = None;
        let a0 = int.coeff(0).numer().clone();
        let an = int.leading().numer().clone();
        if a0.is_zero() {
            found = Some(Rat::zero());
        } else {
            'search: for pnum in divisors(&a0.abs()) {
                for pden in divisors(&an.abs()) {
                    for sgn in [1i64, -1] {
                        let cand = Rat::new(&pnum * BigInt::from(sgn), pden.clone());
                        if cur.eval(&cand).is_zero() {
                            found = Some(cand);
                            break 'search;
                        }
                    }
                }
            }
        }
        match found {
            Some(r) => {
                let factor = UniPoly::new(vec![-&r * Rat::one(), Rat::one()]);
                cur = cur.exact_div(&factor).expect("root divides");
                roots.push(r);
            }
            None => break,
        }
    }
    (roots, cur)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    assert!(n.is_positive());
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            small.push(d.clone());
            large.push(n / &d);
        }
        d += 1u32;
    }
    large.reverse();
    small.extend(large);
    small.dedup();
    small
}

/// All real roots of p in the open interval (lo, hi), as exact algebraic
/// numbers, in increasing order. Errors when an irreducible factor of degree
/// three or more has a root in the interval.
pub fn roots_exact_in(p: &UniPoly, lo: &AlgNum, hi: &AlgNum) -> Result<Vec<AlgNum>, String> {
    if p.is_zero() {
        return Err("identically zero".into());
    }
    let sf = p.squarefree();
    let (rats, rest) = deflate_rational_roots(&sf);
    let mut roots: Vec<AlgNum> = rats.into_iter().map(AlgNum::from).collect();
    match rest.degree().unwrap_or(0) {
        0 => {}
        2 => {
            // quadratic formula
            let c = rest.coeff(0);
            let b = rest.coeff(1);
            let a2 = rest.coeff(2);
            let disc = &b * &b - Rat::from(BigInt::from(4)) * &a2 * &c;
            if !disc.is_negative() {
                let sq = AlgNum::sqrt_rat(&disc);
                let inv2a = Rat::new(BigInt::one(), BigInt::from(2)) / a2;
                let nb = AlgNum::from(-b);
                roots.push((nb.clone() - sq.clone()).scale(&inv2a));
                roots.push((nb + sq).scale(&inv2a));
            }
        }
        _ => {
            if count_roots_open(&rest, lo, hi) > 0 {
                return Err(format!(
                    "irreducible factor of degree {} has a root in the interval",
                    rest.degree().unwrap()
                ));
            }
        }
    }
    let mut out: Vec<AlgNum> = roots
        .into_iter()
        .filter(|r| {
            r.cmp_exact(lo) == std::cmp::Ordering::Greater
                && r.cmp_exact(hi) == std::cmp::Ordering::Less
        })
        .collect();
    out.sort_by(|x, y| x.cmp_exact(y));
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::rat;

    fn alg(n: i64, d: i64) -> AlgNum {
        AlgNum::from(rat(n, d))
    }

    #[test]
    fn sign_classification_matches_closed_forms() {
        // 2a^2 - 2a - 10 on (2, (1+sqrt(21))/2) is negative
        let p = UniPoly::from_i64(&[-10, -2, 2]);
        let hi = AlgNum::quad(rat(1, 2), rat(1, 2), 21);
        assert_eq!(
            sign_on_interval(&p, &alg(2, 1), &hi),
            Ok(IntervalSign::AllNegative)
        );
        // constant 1 on (0,1)
        assert_eq!(
            sign_on_interval(&UniPoly::one(), &alg(0, 1), &alg(1, 1)),
            Ok(IntervalSign::AllPositive)
        );
        // a^2 - 13a + 28 has a root (13-sqrt(57))/2 in (2,3)
        let q = UniPoly::from_i64(&[28, -13, 1]);
        match sign_on_interval(&q, &alg(2, 1), &alg(3, 1)) {
            Ok(IntervalSign::HasZero(a, b)) => {
                let root = AlgNum::quad(rat(13, 2), rat(-1, 2), 57);
                assert!(AlgNum::from(a).cmp_exact(&root) != std::cmp::Ordering::Greater);
                assert!(AlgNum::from(b).cmp_exact(&root) != std::cmp::Ordering::Less);
            }
            other => panic!("expected HasZero, got {other:?}"),
        }
        assert!(sign_on_interval(&UniPoly::zero(), &alg(0, 1), &alg(1, 1)).is_err());
    }

    #[test]
    fn root_counting() {
        // (x-1)(x-2)(x-3)
        let p = UniPoly::from_i64(&[-6, 11, -6, 1]);
        assert_eq!(count_roots_all(&p), 3);
        assert_eq!(count_roots_open(&p, &alg(0, 1), &alg(5, 2)), 2);
        assert_eq!(count_roots_open(&p, &alg(1, 1), &alg(3, 1)), 1);
        // repeated roots counted once
        let sq = &p * &p;
        assert_eq!(count_roots_all(&sq), 3);
        // endpoints that are roots of intermediate chain elements are fine
        let q = UniPoly::from_i64(&[-5, -1, 1]);
        let r = AlgNum::quad(rat(1, 2), rat(1, 2), 21);
        assert_eq!(count_roots_open(&q, &alg(0, 1), &r), 0);
        assert_eq!(count_roots_open(&q, &alg(0, 1), &alg(4, 1)), 1);
    }

    #[test]
    fn isolation_brackets_every_root() {
        let p = UniPoly::from_i64(&[-6, 11, -6, 1]);
        let boxes = isolate_roots(&p);
        assert_eq!(boxes.len(), 3);
        for (i, root) in [1i64, 2, 3].iter().enumerate() {
            let r = rat(*root, 1);
            assert!(boxes[i].0 <= r && r <= boxes[i].1);
        }
        // irrational roots: x^2 - 2
        let q = UniPoly::from_i64(&[-2, 0, 1]);
        let boxes = isolate_roots(&q);
        assert_eq!(boxes.len(), 2);
        assert!(boxes[0].0 < boxes[0].1);
    }

    #[test]
    fn exact_roots() {
        // -a^2 + 13a - 28 scaled: roots (13 +- sqrt(57))/2; only the minus
        // root lies in (2,3)
        let p = UniPoly::from_i64(&[28, -13, 1]);
        let roots = roots_exact_in(&p, &alg(2, 1), &alg(3, 1)).unwrap();
        assert_eq!(roots, vec![AlgNum::quad(rat(13, 2), rat(-1, 2), 57)]);
        // mixed rational and quadratic factors: (a+2)(a^2-5)
        let q = UniPoly::from_i64(&[-10, -5, 2, 1]);
        let roots = roots_exact_in(&q, &alg(-10, 1), &alg(10, 1)).unwrap();
        assert_eq!(
            roots,
            vec![
                AlgNum::sqrt_int(5).scale(&rat(-1, 1)),
                AlgNum::from(rat(-2, 1)),
                AlgNum::sqrt_int(5),
            ]
        );
        // irreducible cubic with a root in range is refused
        let c = UniPoly::from_i64(&[-2, 0, 0, 1]);
        assert!(roots_exact_in(&c, &alg(0, 1), &alg(2, 1)).is_err());
        // but tolerated when its roots are outside
        assert_eq!(roots_exact_in(&c, &alg(2, 1), &alg(3, 1)).unwrap(), vec![]);
    }

    #[test]
    fn sturm_count_matches_brute_force_sampling() {
        // randomized degree <= 6 polynomials with well-separated roots
        let mut seed = 0x2545f4914f6cdd1du64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        for _ in 0..12 {
            let deg = (next() % 5 + 2) as usize;
            let mut p = UniPoly::one();
            let mut used = Vec::new();
            for _ in 0..deg {
                let r = rat((next() % 21) as i64 - 10, 1);
                if used.contains(&r) {
                    continue;
                }
                used.push(r.clone());
                p = &p * &UniPoly::new(vec![-r, rat(1, 1)]);
            }
            let lo = rat(-12, 1);
            let hi = rat(12, 1);
            // brute force: count sign changes over 10^4 samples
            let mut changes = 0;
            let mut prev = sign_of(&p.eval(&lo));
            for k in 1..=10_000i64 {
                let x = &lo + (&hi - &lo) * rat(k, 10_000);
                let s = sign_of(&p.eval(&x));
                if s != 0 && prev != 0 && s != prev {
                    changes += 1;
                }
                if s != 0 {
                    prev = s;
                }
            }
            assert_eq!(
                count_roots_open(&p, &AlgNum::from(lo), &AlgNum::from(hi)),
                used.len(),
            );
            assert_eq!(changes, used.len());
        }
    }
}
