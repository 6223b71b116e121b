//! Piecewise rational functions of one parameter with algebraic breakpoints:
//! the shape of every delta lower bound and of the f(u) inputs to the volume
//! bound combiner.

use num::{BigInt, One, Signed, Zero};

use super::algnum::AlgNum;
use super::poly::UniPoly;
use super::rat::{sign_of, Rat};
use super::ratfn::RationalFn;
use super::sturm::{count_roots_open, roots_exact_in};

/// One piece: the function `f` on the interval from `lo` to `hi`.
///
/// Endpoint closure is normalized away; pieces are contiguous and a bound
/// function is evaluated by interior membership, with domain endpoints
/// attached to the outermost pieces.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Piece {
    pub lo: AlgNum,
    pub hi: AlgNum,
    pub f: RationalFn,
    /// Argmin provenance, e.g. "1/S_D(C)".
    pub label: String,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundFunction {
    pieces: Vec<Piece>,
}

impl BoundFunction {
    /// Validates contiguity and that no denominator vanishes inside a piece.
    pub fn new(pieces: Vec<Piece>) -> Result<Self, String> {
        if pieces.is_empty() {
            return Err("no pieces".into());
        }
        for w in pieces.windows(2) {
            if w[0].hi != w[1].lo {
                return Err(format!(
                    "pieces not contiguous: {} vs {}",
                    w[0].hi, w[1].lo
                ));
            }
        }
        for p in &pieces {
            if p.lo.cmp_exact(&p.hi) != std::cmp::Ordering::Less {
                return Err(format!("empty piece [{}, {}]", p.lo, p.hi));
            }
            if !p.f.den().is_zero()
                && p.f.den().degree().map_or(false, |d| d >= 1)
                && count_roots_open(p.f.den(), &p.lo, &p.hi) > 0
            {
                return Err(format!("pole inside piece [{}, {}]", p.lo, p.hi));
            }
        }
        Ok(BoundFunction { pieces })
    }

    /// Single piece covering the whole domain.
    pub fn single(lo: AlgNum, hi: AlgNum, f: RationalFn, label: &str) -> Result<Self, String> {
        BoundFunction::new(vec![Piece {
            lo,
            hi,
            f,
            label: label.to_string(),
        }])
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn domain(&self) -> (AlgNum, AlgNum) {
        (
            self.pieces.first().unwrap().lo.clone(),
            self.pieces.last().unwrap().hi.clone(),
        )
    }

    /// Same piecewise data up to labels.
    pub fn same_function(&self, other: &BoundFunction) -> bool {
        self.pieces.len() == other.pieces.len()
            && self
                .pieces
                .iter()
                .zip(&other.pieces)
                .all(|(p, q)| p.lo == q.lo && p.hi == q.hi && p.f == q.f)
    }

    fn piece_at(&self, x: &AlgNum) -> Option<&Piece> {
        let (dlo, dhi) = self.domain();
        if x.cmp_exact(&dlo) == std::cmp::Ordering::Less
            || x.cmp_exact(&dhi) == std::cmp::Ordering::Greater
        {
            return None;
        }
        for p in &self.pieces {
            if x.cmp_exact(&p.hi) == std::cmp::Ordering::Less {
                return Some(p);
            }
        }
        self.pieces.last()
    }

    pub fn eval(&self, x: &AlgNum) -> Option<AlgNum> {
        self.piece_at(x).and_then(|p| p.f.eval_alg(x))
    }

    /// Pointwise minimum with exact new breakpoints and argmin labels.
    pub fn piecewise_min(&self, other: &BoundFunction) -> Result<BoundFunction, String> {
        let (alo, ahi) = self.domain();
        let (blo, bhi) = other.domain();
        if alo != blo || ahi != bhi {
            return Err("mismatched domains".into());
        }
        // union of breakpoints
        let mut cuts: Vec<AlgNum> = Vec::new();
        for p in self.pieces.iter().chain(other.pieces.iter()) {
            cuts.push(p.lo.clone());
            cuts.push(p.hi.clone());
        }
        cuts.sort_by(|x, y| x.cmp_exact(y));
        cuts.dedup();
        let half = Rat::new(BigInt::one(), BigInt::from(2));
        let mut out: Vec<Piece> = Vec::new();
        for w in cuts.windows(2) {
            let (x0, x1) = (&w[0], &w[1]);
            let mid = (x0.clone() + x1.clone()).scale(&half);
            let pa = self.piece_at(&mid).ok_or("gap in pieces")?;
            let pb = other.piece_at(&mid).ok_or("gap in pieces")?;
            let diff = &pa.f - &pb.f;
            let mut sub_cuts = vec![x0.clone()];
            if !diff.is_zero() {
                sub_cuts.extend(roots_exact_in(diff.num(), x0, x1)?);
            }
            sub_cuts.push(x1.clone());
            for sw in sub_cuts.windows(2) {
                let m = (sw[0].clone() + sw[1].clone()).scale(&half);
                let winner = if diff.is_zero() {
                    pa
                } else {
                    let s = diff
                        .eval_alg(&m)
                        .ok_or("pole while comparing pieces")?
                        .sign();
                    if s > 0 {
                        pb
                    } else {
                        pa
                    }
                };
                out.push(Piece {
                    lo: sw[0].clone(),
                    hi: sw[1].clone(),
                    f: winner.f.clone(),
                    label: winner.label.clone(),
                });
            }
        }
        Ok(BoundFunction::coalesce(out))
    }

    /// Folds piecewise_min over several bounds.
    pub fn min_of(bounds: &[BoundFunction]) -> Result<BoundFunction, String> {
        let mut it = bounds.iter();
        let mut acc = it.next().ok_or("empty min")?.clone();
        for b in it {
            acc = acc.piecewise_min(b)?;
        }
        Ok(acc)
    }

    fn coalesce(pieces: Vec<Piece>) -> BoundFunction {
        let mut out: Vec<Piece> = Vec::new();
        for p in pieces {
            if let Some(last) = out.last_mut() {
                if last.f == p.f && last.hi == p.lo {
                    last.hi = p.hi;
                    continue;
                }
            }
            out.push(p);
        }
        BoundFunction { pieces: out }
    }

    /// Substitutes the parameter x = p + q*t, remapping breakpoints through
    /// the inverse t = (x - p)/q and reversing piece order when q < 0.
    pub fn map_affine(&self, p: &Rat, q: &Rat) -> BoundFunction {
        assert!(!q.is_zero(), "degenerate substitution");
        let qa = Rat::one() / q;
        let back = |x: &AlgNum| (x.clone() - AlgNum::from(p)).scale(&qa);
        let mut pieces: Vec<Piece> = self
            .pieces
            .iter()
            .map(|pc| {
                let (a, b) = (back(&pc.lo), back(&pc.hi));
                let (lo, hi) = if q.is_negative() { (b, a) } else { (a, b) };
                Piece {
                    lo,
                    hi,
                    f: pc.f.compose_affine(p, q),
                    label: pc.label.clone(),
                }
            })
            .collect();
        if q.is_negative() {
            pieces.reverse();
        }
        BoundFunction { pieces }
    }

    /// Restricts to a subinterval of the domain, splitting pieces as needed.
    pub fn restrict(&self, lo: &AlgNum, hi: &AlgNum) -> Result<BoundFunction, String> {
        let (dlo, dhi) = self.domain();
        if lo.cmp_exact(&dlo) == std::cmp::Ordering::Less
            || hi.cmp_exact(&dhi) == std::cmp::Ordering::Greater
            || lo.cmp_exact(hi) != std::cmp::Ordering::Less
        {
            return Err("restriction outside domain".into());
        }
        let mut out = Vec::new();
        for p in &self.pieces {
            let a = if p.lo.cmp_exact(lo) == std::cmp::Ordering::Less {
                lo.clone()
            } else {
                p.lo.clone()
            };
            let b = if p.hi.cmp_exact(hi) == std::cmp::Ordering::Greater {
                hi.clone()
            } else {
                p.hi.clone()
            };
            if a.cmp_exact(&b) == std::cmp::Ordering::Less {
                out.push(Piece {
                    lo: a,
                    hi: b,
                    f: p.f.clone(),
                    label: p.label.clone(),
                });
            }
        }
        BoundFunction::new(out)
    }

    pub fn render(&self, var: &str) -> String {
        self.pieces
            .iter()
            .map(|p| format!("{} on ({}, {})", p.f.render(var), p.lo, p.hi))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// Exact value of the definite integral of g/f when g/f is a polynomial.
///
/// Errors with "non-polynomial integrand" otherwise; callers may fall back
/// to [`integrate_enclosure`].
pub fn integrate_exact(
    g: &UniPoly,
    f: &RationalFn,
    lo: &AlgNum,
    hi: &AlgNum,
) -> Result<AlgNum, String> {
    if lo == hi {
        return Ok(AlgNum::zero());
    }
    if lo.cmp_exact(hi) == std::cmp::Ordering::Greater {
        return Err("reversed interval".into());
    }
    if f.is_zero() {
        return Err("zero integrand denominator".into());
    }
    let numerator = g * f.den();
    let h = numerator
        .exact_div(f.num())
        .ok_or_else(|| "non-polynomial integrand".to_string())?;
    let anti = h.antiderivative();
    Ok(anti.eval_alg(hi) - anti.eval_alg(lo))
}

/// Certified rational enclosure of the integral of g/f over [lo, hi] with
/// target width `tol`: the midpoint rule with its error term bounded through
/// an interval enclosure of the second derivative of the integrand. No
/// exactness is assumed of f beyond having no pole on [lo, hi].
pub fn integrate_enclosure(
    g: &UniPoly,
    f: &RationalFn,
    lo: &Rat,
    hi: &Rat,
    tol: &Rat,
) -> Result<(Rat, Rat), String> {
    if lo >= hi {
        return Ok((Rat::zero(), Rat::zero()));
    }
    assert!(tol.is_positive(), "nonpositive tolerance");
    let r = RationalFn::new(g * f.den(), f.num().clone());
    if let Some(p) = r.as_poly() {
        let anti = p.antiderivative();
        let v = anti.eval(hi) - anti.eval(lo);
        return Ok((v.clone(), v));
    }
    let r2 = r.derivative().derivative();
    enclose_chunk(&r, &r2, lo, hi, tol, 0)
}

fn enclose_chunk(
    r: &RationalFn,
    r2: &RationalFn,
    lo: &Rat,
    hi: &Rat,
    tol: &Rat,
    depth: u32,
) -> Result<(Rat, Rat), String> {
    let w = hi - lo;
    // both denominators must be sign-definite on the chunk for the interval
    // bounds below; split on failure (overestimation near poles outside the
    // closed chunk shrinks under subdivision)
    let d1 = interval_eval(r.den(), lo, hi);
    let d2 = interval_eval(r2.den(), lo, hi);
    let split = sign_of(&d1.0) * sign_of(&d1.1) <= 0 || sign_of(&d2.0) * sign_of(&d2.1) <= 0;
    if split {
        if depth >= 24 {
            return Err("enclosure refinement did not converge (pole?)".into());
        }
        let mid = lo + &w / Rat::from(BigInt::from(2));
        let half_tol = tol / Rat::from(BigInt::from(2));
        let (a0, a1) = enclose_chunk(r, r2, lo, &mid, &half_tol, depth + 1)?;
        let (b0, b1) = enclose_chunk(r, r2, &mid, hi, &half_tol, depth + 1)?;
        return Ok((a0 + b0, a1 + b1));
    }
    // |r''| bound on the chunk
    let n2 = interval_eval(r2.num(), lo, hi);
    let q = interval_div(&n2, &d2);
    let c = q.0.abs().max(q.1.abs());
    // midpoint rule on n subintervals: |error| <= c * w^3 / (24 n^2)
    let n = if c.is_zero() {
        1u64
    } else {
        // enclosure width is twice the one-sided error bound
        let need = &c * &w * &w * &w / (Rat::from(BigInt::from(12)) * tol);
        let root = crate::exact::rat::isqrt(&(need.ceil().numer() + BigInt::one()));
        use num::ToPrimitive;
        let n = root.to_u64().unwrap_or(u64::MAX) + 1;
        if n > 1 << 16 {
            // the interval bound on r'' is too loose here; splitting the
            // chunk tightens it quadratically
            if depth >= 24 {
                return Err("enclosure refinement did not converge".into());
            }
            let mid = lo + &w / Rat::from(BigInt::from(2));
            let half_tol = tol / Rat::from(BigInt::from(2));
            let (a0, a1) = enclose_chunk(r, r2, lo, &mid, &half_tol, depth + 1)?;
            let (b0, b1) = enclose_chunk(r, r2, &mid, hi, &half_tol, depth + 1)?;
            return Ok((a0 + b0, a1 + b1));
        }
        n
    };
    let sub = &w / Rat::from(BigInt::from(n));
    let half = &sub / Rat::from(BigInt::from(2));
    let mut sum = Rat::zero();
    for j in 0..n {
        let m = lo + &sub * Rat::from(BigInt::from(j)) + &half;
        let v = r.eval(&m).ok_or("pole at quadrature node")?;
        sum += v * &sub;
    }
    let err = &c * &w * &w * &w
        / (Rat::from(BigInt::from(24)) * Rat::from(BigInt::from(n)) * Rat::from(BigInt::from(n)));
    Ok((&sum - &err, sum + err))
}

fn interval_eval(p: &UniPoly, lo: &Rat, hi: &Rat) -> (Rat, Rat) {
    let mut acc = (Rat::zero(), Rat::zero());
    for c in p.coeffs.iter().rev() {
        acc = interval_mul(&acc, &(lo.clone(), hi.clone()));
        acc.0 += c;
        acc.1 += c;
    }
    acc
}

fn interval_mul(a: &(Rat, Rat), b: &(Rat, Rat)) -> (Rat, Rat) {
    let cands = [
        &a.0 * &b.0,
        &a.0 * &b.1,
        &a.1 * &b.0,
        &a.1 * &b.1,
    ];
    let mut lo = cands[0].clone();
    let mut hi = cands[0].clone();
    for c in &cands[1..] {
        if c < &lo {
            lo = c.clone();
        }
        if c > &hi {
            hi = c.clone();
        }
    }
    (lo, hi)
}

fn interval_div(a: &(Rat, Rat), b: &(Rat, Rat)) -> (Rat, Rat) {
    // b must not contain zero
    interval_mul(a, &(Rat::one() / &b.1, Rat::one() / &b.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::rat;

    fn alg(n: i64, d: i64) -> AlgNum {
        AlgNum::from(rat(n, d))
    }

    fn rf(num: &[i64], den: &[i64]) -> RationalFn {
        RationalFn::new(UniPoly::from_i64(num), UniPoly::from_i64(den))
    }

    #[test]
    fn min_finds_quadratic_breakpoint() {
        // min{1/(a-2), 3(a+2)/(a^2+2a-2)} on (2,3] switches at (1+sqrt21)/2
        let b1 = BoundFunction::single(alg(2, 1), alg(3, 1), rf(&[1], &[-2, 1]), "curve").unwrap();
        let b2 =
            BoundFunction::single(alg(2, 1), alg(3, 1), rf(&[6, 3], &[-2, 2, 1]), "point").unwrap();
        let m = b1.piecewise_min(&b2).unwrap();
        let bp = AlgNum::quad(rat(1, 2), rat(1, 2), 21);
        assert_eq!(m.pieces().len(), 2);
        assert_eq!(m.pieces()[0].hi, bp);
        assert_eq!(m.pieces()[0].f, b2.pieces()[0].f);
        assert_eq!(m.pieces()[0].label, "point");
        assert_eq!(m.pieces()[1].f, b1.pieces()[0].f);
        // idempotence
        assert!(b1.piecewise_min(&b1).unwrap().same_function(&b1));
        // the documented switch of the two A2 candidates at (13-sqrt57)/2
        let c1 =
            BoundFunction::single(alg(2, 1), alg(3, 1), rf(&[6, 3], &[8, -5, 2]), "c1").unwrap();
        let c2 =
            BoundFunction::single(alg(2, 1), alg(3, 1), rf(&[6, 3], &[-20, 8, 1]), "c2").unwrap();
        let m = c1.piecewise_min(&c2).unwrap();
        assert_eq!(m.pieces().len(), 2);
        assert_eq!(m.pieces()[0].hi, AlgNum::quad(rat(13, 2), rat(-1, 2), 57));
    }

    #[test]
    fn min_is_pointwise_below_inputs() {
        let b1 = BoundFunction::single(alg(2, 1), alg(3, 1), rf(&[1], &[-2, 1]), "x").unwrap();
        let b2 =
            BoundFunction::single(alg(2, 1), alg(3, 1), rf(&[6, 3], &[-2, 2, 1]), "y").unwrap();
        let m = b1.piecewise_min(&b2).unwrap();
        for k in 1..100 {
            let x = AlgNum::from(rat(2, 1) + rat(k, 100));
            let vm = m.eval(&x).unwrap();
            for b in [&b1, &b2] {
                let vb = b.eval(&x).unwrap();
                assert!(vm.cmp_exact(&vb) != std::cmp::Ordering::Greater);
            }
        }
    }

    #[test]
    fn affine_substitution_roundtrip() {
        let b = BoundFunction::new(vec![
            Piece {
                lo: alg(2, 1),
                hi: AlgNum::quad(rat(1, 2), rat(1, 2), 21),
                f: rf(&[6, 3], &[-2, 2, 1]),
                label: "p1".into(),
            },
            Piece {
                lo: AlgNum::quad(rat(1, 2), rat(1, 2), 21),
                hi: alg(3, 1),
                f: rf(&[1], &[-2, 1]),
                label: "p2".into(),
            },
        ])
        .unwrap();
        // a = 4 - u maps (2,3] onto [1,2) reversing order
        let u = b.map_affine(&rat(4, 1), &rat(-1, 1));
        let (lo, hi) = u.domain();
        assert_eq!(lo, alg(1, 1));
        assert_eq!(hi, alg(2, 1));
        assert_eq!(u.pieces()[0].hi, AlgNum::quad(rat(7, 2), rat(-1, 2), 21));
        // u-evaluation agrees with a-evaluation
        assert_eq!(u.eval(&alg(1, 1)), b.eval(&alg(3, 1)));
        // inverse map u = 4 - a restores the original exactly
        let back = u.map_affine(&rat(4, 1), &rat(-1, 1));
        assert!(back.same_function(&b));
    }

    #[test]
    fn exact_integration() {
        // g=(2-u)(6-u), f=3(6-u)/(u^2-10u+22): g/f = (2-u)(u^2-10u+22)/3,
        // integral over [1,2] is 7/4
        let g = UniPoly::from_i64(&[12, -8, 1]);
        let f = rf(&[18, -3], &[22, -10, 1]);
        let v = integrate_exact(&g, &f, &alg(1, 1), &alg(2, 1)).unwrap();
        assert_eq!(v, AlgNum::from(rat(7, 4)));
        // g=2(3-2u)(5-2u), f=1/(2-u) over [1,3/2] gives 9/8
        let g = UniPoly::from_i64(&[30, -32, 8]);
        let f = rf(&[1], &[2, -1]);
        let v = integrate_exact(&g, &f, &alg(1, 1), &alg(3, 2)).unwrap();
        assert_eq!(v, AlgNum::from(rat(9, 8)));
        // empty interval
        assert_eq!(
            integrate_exact(&g, &f, &alg(1, 1), &alg(1, 1)).unwrap(),
            AlgNum::zero()
        );
        // non-dividing case refuses
        let bad = rf(&[1, 1], &[1]);
        assert_eq!(
            integrate_exact(&UniPoly::one(), &bad, &alg(1, 1), &alg(2, 1)),
            Err("non-polynomial integrand".into())
        );
    }

    #[test]
    fn enclosure_brackets_exact_value() {
        let g = UniPoly::from_i64(&[12, -8, 1]);
        let f = rf(&[18, -3], &[22, -10, 1]);
        let tol = Rat::new(BigInt::one(), BigInt::from(10u32).pow(9));
        let (lo, hi) = integrate_enclosure(&g, &f, &rat(1, 1), &rat(2, 1), &tol).unwrap();
        assert!(lo <= rat(7, 4) && rat(7, 4) <= hi);
        assert!(&hi - &lo <= tol);
        // a genuinely non-polynomial integrand: 1/(1+u^2) over [0,1],
        // whose value is pi/4 = 0.785398163...
        let g = UniPoly::one();
        let f = rf(&[1, 0, 1], &[1]);
        let tol = Rat::new(BigInt::one(), BigInt::from(10u32).pow(6));
        let (lo, hi) = integrate_enclosure(&g, &f, &rat(0, 1), &rat(1, 1), &tol).unwrap();
        assert!(&hi - &lo <= tol);
        assert!(lo <= rat(785_398_164, 1_000_000_000));
        assert!(hi >= rat(785_398_163, 1_000_000_000));
    }

    #[test]
    fn validation_rejects_bad_pieces() {
        assert!(BoundFunction::new(vec![]).is_err());
        // pole inside the piece
        assert!(BoundFunction::single(alg(1, 1), alg(3, 1), rf(&[1], &[-2, 1]), "x").is_err());
        // non-contiguous
        let p1 = Piece {
            lo: alg(0, 1),
            hi: alg(1, 1),
            f: RationalFn::one(),
            label: String::new(),
        };
        let p2 = Piece {
            lo: alg(2, 1),
            hi: alg(3, 1),
            f: RationalFn::one(),
            label: String::new(),
        };
        assert!(BoundFunction::new(vec![p1, p2]).is_err());
    }
}
