//! The exact scalar and symbolic tower: arbitrary-precision rationals,
//! multi-quadratic algebraic numbers, uni- and bivariate polynomials,
//! rational functions, Sturm-sequence sign certification, and piecewise
//! bound functions with exact minima and definite integration.

pub mod algnum;
pub mod bipoly;
pub mod bound;
pub mod poly;
pub mod rat;
pub mod ratfn;
pub mod sturm;

pub use algnum::AlgNum;
pub use bipoly::BiPoly;
pub use bound::{integrate_enclosure, integrate_exact, BoundFunction, Piece};
pub use poly::UniPoly;
pub use rat::{fmt_rat, parse_rat, rat, rat_int, Rat};
pub use ratfn::RationalFn;
pub use sturm::{count_roots_open, isolate_roots, roots_exact_in, sign_on_interval, IntervalSign};

use sturm::IntervalSign as IS;

/// Integrates a bivariate polynomial in v between bounds affine (or
/// polynomial) in a, certifying `lower <= upper` on the open a-interval
/// (a_lo, a_hi) first. Returns a rational function of a (in fact a
/// polynomial, wrapped for composition with the 1/D^2 factors).
pub fn integrate_poly_in_v(
    f: &BiPoly,
    lower: &UniPoly,
    upper: &UniPoly,
    a_lo: &AlgNum,
    a_hi: &AlgNum,
) -> Result<RationalFn, String> {
    let gap = upper - lower;
    if !gap.is_zero() {
        match sign_on_interval(&gap, a_lo, a_hi)? {
            IS::AllPositive => {}
            IS::AllNegative => {
                return Err(format!(
                    "integration bounds crossed on ({a_lo}, {a_hi})"
                ))
            }
            IS::HasZero(w0, w1) => {
                // touching (tangency) is fine only if the gap never goes
                // negative; a sign change is a genuine crossing
                if sign_on_interval(&gap, a_lo, &AlgNum::from(w0.clone())).ok()
                    != Some(IS::AllPositive)
                    || sign_on_interval(&gap, &AlgNum::from(w1.clone()), a_hi).ok()
                        != Some(IS::AllPositive)
                {
                    return Err(format!(
                        "integration bounds cross near ({w0}, {w1})"
                    ));
                }
            }
        }
    }
    if f.is_zero() {
        return Ok(RationalFn::zero());
    }
    let anti = f.antiderivative_v();
    let val = &anti.eval_v(upper) - &anti.eval_v(lower);
    Ok(RationalFn::from_poly(val))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(n: i64, d: i64) -> AlgNum {
        AlgNum::from(rat(n, d))
    }

    #[test]
    fn v_integration_basics() {
        // f = 1+v from 0 to a-2: (a-2)^2/2 + (a-2)
        let f = BiPoly::affine_i64(1, 0, 1);
        let got = integrate_poly_in_v(
            &f,
            &UniPoly::zero(),
            &UniPoly::from_i64(&[-2, 1]),
            &alg(2, 1),
            &alg(3, 1),
        )
        .unwrap();
        let am2 = UniPoly::from_i64(&[-2, 1]);
        let expect = RationalFn::from_poly(&(&am2 * &am2).scale(&rat(1, 2)) + &am2);
        assert_eq!(got, expect);
        // zero integrand
        assert_eq!(
            integrate_poly_in_v(
                &BiPoly::zero(),
                &UniPoly::zero(),
                &UniPoly::from_i64(&[-2, 1]),
                &alg(2, 1),
                &alg(3, 1)
            )
            .unwrap(),
            RationalFn::zero()
        );
        // crossed bounds rejected with a witness
        assert!(integrate_poly_in_v(
            &f,
            &UniPoly::from_i64(&[-2, 1]),
            &UniPoly::zero(),
            &alg(2, 1),
            &alg(3, 1)
        )
        .is_err());
    }

    #[test]
    fn v_integration_is_additive_over_splits() {
        let f = BiPoly::new(vec![
            UniPoly::from_i64(&[-4, 0, 1]),
            UniPoly::from_i64(&[-2]),
            UniPoly::from_i64(&[-1]),
        ]);
        let lo = UniPoly::zero();
        let mid = UniPoly::from_i64(&[-2, 1]); // a-2, interior for a in (2,3)
        let hi = UniPoly::from_i64(&[-4, 2]); // 2a-4
        let (a0, a1) = (alg(2, 1), alg(3, 1));
        let whole = integrate_poly_in_v(&f, &lo, &hi, &a0, &a1).unwrap();
        let left = integrate_poly_in_v(&f, &lo, &mid, &a0, &a1).unwrap();
        let right = integrate_poly_in_v(&f, &mid, &hi, &a0, &a1).unwrap();
        assert_eq!(whole, &left + &right);
    }
}
