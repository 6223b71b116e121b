//! Intersection theory of the Fano 3-fold X (the blow up of P^3 in a line
//! and a quartic elliptic curve), the volume integrals S_X for the two del
//! Pezzo pencils, and the Nemuro-style combiner turning a fiberwise delta
//! bound f(u) into a bound for delta_P(S, W^S).

pub mod certificate;

use crate::exact::{
    integrate_exact, rat, rat_int, AlgNum, BoundFunction, Piece, Rat, RationalFn, UniPoly,
};
use num::Zero;

/// Symmetric trilinear intersection form on N^1(X) in the basis (H, E, R),
/// H the hyperplane pullback, E over the quartic curve, R over the line.
///
/// The entries follow the standard blowup formulas: for the blow up of a
/// smooth curve C of genus g and degree d in P^3, E^3 = -deg N_{C/P^3} =
/// 2 - 2g - 4d on the exceptional surface over C, H.E^2 = -d, and classes
/// from disjoint centers do not meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XRing {
    form: [[[Rat; 3]; 3]; 3],
}

impl XRing {
    fn from_entries(h3: i64, he2: i64, hr2: i64, e3: i64, r3: i64) -> Self {
        let mut form: [[[Rat; 3]; 3]; 3] = Default::default();
        let mut set = |i: usize, j: usize, k: usize, v: i64| {
            // all permutations of the monomial
            let idx = [i, j, k];
            for p in [
                [0, 1, 2],
                [0, 2, 1],
                [1, 0, 2],
                [1, 2, 0],
                [2, 0, 1],
                [2, 1, 0],
            ] {
                form[idx[p[0]]][idx[p[1]]][idx[p[2]]] = rat_int(v);
            }
        };
        set(0, 0, 0, h3);
        set(0, 1, 1, he2);
        set(0, 2, 2, hr2);
        set(1, 1, 1, e3);
        set(2, 2, 2, r3);
        XRing { form }
    }

    /// The intersection ring of X: H^3 = 1, H.E^2 = -4, H.R^2 = -1,
    /// E^3 = -16, R^3 = -2, all mixed products zero.
    pub fn standard() -> Self {
        XRing::from_entries(1, -4, -1, -16, -2)
    }

    /// A deliberately wrong ring (E^3 = -15) used to show that the
    /// certificate detects perturbed intersection data.
    pub fn tampered() -> Self {
        XRing::from_entries(1, -4, -1, -15, -2)
    }

    /// Trilinear product of classes with U[u]-polynomial coordinates.
    pub fn triple(&self, x: &[UniPoly; 3], y: &[UniPoly; 3], z: &[UniPoly; 3]) -> UniPoly {
        let mut acc = UniPoly::zero();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let c = &self.form[i][j][k];
                    if c.is_zero() {
                        continue;
                    }
                    let term = &(&x[i] * &y[j]) * &z[k];
                    acc = &acc + &term.scale(c);
                }
            }
        }
        acc
    }

    /// Trilinear product of constant classes.
    pub fn triple_rat(&self, x: &[i64; 3], y: &[i64; 3], z: &[i64; 3]) -> Rat {
        let lift = |c: &[i64; 3]| {
            [
                UniPoly::constant(rat_int(c[0])),
                UniPoly::constant(rat_int(c[1])),
                UniPoly::constant(rat_int(c[2])),
            ]
        };
        self.triple(&lift(x), &lift(y), &lift(z)).coeff(0)
    }

    /// (-K_X)^3 = (4H - E - R)^3.
    pub fn anticanonical_cube(&self) -> Rat {
        self.triple_rat(&[4, -1, -1], &[4, -1, -1], &[4, -1, -1])
    }
}

/// One Mori chamber of -K_X - uS: on [lo, hi] the positive part is P(u)
/// and the negative part N(u), both with U[u]-polynomial coordinates in
/// (H, E, R).
#[derive(Clone, Debug)]
pub struct PencilChamber {
    pub lo: Rat,
    pub hi: Rat,
    pub p: [UniPoly; 3],
    pub n: [UniPoly; 3],
}

/// The two del Pezzo pencils on X.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pencil {
    /// |H - R|, the quintic del Pezzo fibration.
    HminusR,
    /// |2H - E|, the sextic del Pezzo fibration.
    TwoHminusE,
}

fn up(coeffs: &[i64]) -> UniPoly {
    UniPoly::from_i64(coeffs)
}

impl Pencil {
    pub fn id(self) -> &'static str {
        match self {
            Pencil::HminusR => "h-r",
            Pencil::TwoHminusE => "2h-e",
        }
    }

    /// The class of the pencil member.
    pub fn class(self) -> [i64; 3] {
        match self {
            Pencil::HminusR => [1, 0, -1],
            Pencil::TwoHminusE => [2, -1, 0],
        }
    }

    /// Pseudo-effective threshold of -K_X - uS.
    pub fn tau(self) -> Rat {
        match self {
            Pencil::HminusR => rat_int(2),
            Pencil::TwoHminusE => rat(3, 2),
        }
    }

    /// The Zariski chamber data of -K_X - uS from the two-chamber displays.
    pub fn chambers(self) -> Vec<PencilChamber> {
        let z = UniPoly::zero;
        match self {
            Pencil::HminusR => vec![
                PencilChamber {
                    lo: rat_int(0),
                    hi: rat_int(1),
                    p: [up(&[4, -1]), up(&[-1]), up(&[-1, 1])],
                    n: [z(), z(), z()],
                },
                PencilChamber {
                    lo: rat_int(1),
                    hi: rat_int(2),
                    p: [up(&[4, -1]), up(&[-1]), z()],
                    n: [z(), z(), up(&[-1, 1])],
                },
            ],
            Pencil::TwoHminusE => vec![
                PencilChamber {
                    lo: rat_int(0),
                    hi: rat_int(1),
                    p: [up(&[4, -2]), up(&[-1, 1]), up(&[-1])],
                    n: [z(), z(), z()],
                },
                PencilChamber {
                    lo: rat_int(1),
                    hi: rat(3, 2),
                    p: [up(&[4, -2]), z(), up(&[-1])],
                    n: [z(), up(&[-1, 1]), z()],
                },
            ],
        }
    }

    /// D^2 = (P(u)|_S)^2 on [1, tau]: (2-u)(6-u) resp. 2(3-2u)(5-2u).
    /// On [0, 1] the product is the constant fiber degree instead.
    pub fn d_squared(self) -> UniPoly {
        match self {
            Pencil::HminusR => up(&[12, -8, 1]),
            Pencil::TwoHminusE => up(&[30, -32, 8]),
        }
    }
}

/// S_X(S) = (1/(-K_X)^3) * integral of P(u)^3 over [0, tau].
pub fn s_x(ring: &XRing, pencil: Pencil) -> Rat {
    let mut total = Rat::zero();
    for ch in pencil.chambers() {
        let cube = ring.triple(&ch.p, &ch.p, &ch.p);
        let anti = cube.antiderivative();
        total += anti.eval(&ch.hi) - anti.eval(&ch.lo);
    }
    total / ring.anticanonical_cube()
}

/// The affine substitutions linking the appendix polarization parameter a
/// to the pencil parameter u.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubstMap {
    /// a = 4 - u (quintic pencil, a in (2, 3] onto u in [1, 2)).
    AMinusU,
    /// a = 4 - 2u (sextic pencil, a in (1, 2] onto u in [1, 3/2)).
    AMinus2U,
}

impl SubstMap {
    fn coeffs(self) -> (Rat, Rat) {
        match self {
            SubstMap::AMinusU => (rat_int(4), rat_int(-1)),
            SubstMap::AMinus2U => (rat_int(4), rat_int(-2)),
        }
    }

    fn u_domain(self) -> (AlgNum, AlgNum) {
        match self {
            SubstMap::AMinusU => (AlgNum::from_int(1), AlgNum::from_int(2)),
            SubstMap::AMinus2U => (AlgNum::from_int(1), AlgNum::from(rat(3, 2))),
        }
    }
}

/// Reparametrizes a bound in a as a bound in u; the a-domain must map
/// exactly onto the pencil's u-interval.
pub fn substitute(bound: &BoundFunction, map: SubstMap) -> Result<BoundFunction, String> {
    let (p, q) = map.coeffs();
    let out = bound.map_affine(&p, &q);
    let (lo, hi) = out.domain();
    let (elo, ehi) = map.u_domain();
    if lo != elo || hi != ehi {
        return Err(format!(
            "domain mismatch: substitution lands on [{lo}, {hi}], expected [{elo}, {ehi}]"
        ));
    }
    Ok(out)
}

/// The four cases of the volume bound combiner. The constants are the
/// printed ones; the fourth case of the source lemma is headed |H-R| but
/// carries the |2H-E| constants, which are what is used.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NemuroCase {
    HrNotR,
    HrInR,
    HeNotE,
    HeInE,
}

impl NemuroCase {
    pub const ALL: [NemuroCase; 4] = [
        NemuroCase::HrNotR,
        NemuroCase::HrInR,
        NemuroCase::HeNotE,
        NemuroCase::HeInE,
    ];

    pub fn id(self) -> &'static str {
        match self {
            NemuroCase::HrNotR => "hr-not-r",
            NemuroCase::HrInR => "hr-in-r",
            NemuroCase::HeNotE => "he-not-e",
            NemuroCase::HeInE => "he-in-e",
        }
    }

    pub fn pencil(self) -> Pencil {
        match self {
            NemuroCase::HrNotR | NemuroCase::HrInR => Pencil::HminusR,
            NemuroCase::HeNotE | NemuroCase::HeInE => Pencil::TwoHminusE,
        }
    }

    /// (c0, c1, g, tau): the bound is 1/(c0 + c1/f(1) + (3/22) int_1^tau g/f).
    pub fn constants(self) -> (Rat, Rat, UniPoly, Rat) {
        let g = self.pencil().d_squared();
        let tau = self.pencil().tau();
        match self {
            NemuroCase::HrNotR => (rat_int(0), rat(15, 22), g, tau),
            NemuroCase::HrInR => (rat(9, 88), rat(15, 22), g, tau),
            NemuroCase::HeNotE => (rat_int(0), rat(9, 11), g, tau),
            NemuroCase::HeInE => (rat(5, 176), rat(9, 11), g, tau),
        }
    }
}

fn certify_positive(f: &BoundFunction) -> Result<(), String> {
    let half = rat(1, 2);
    for p in f.pieces() {
        // no numerator root inside the piece, then one interior sign decides
        let roots = crate::exact::roots_exact_in(p.f.num(), &p.lo, &p.hi)?;
        if let Some(r) = roots.first() {
            return Err(format!("f vanishes at {r}"));
        }
        let mid = (p.lo.clone() + p.hi.clone()).scale(&half);
        let v = p
            .f
            .eval_alg(&mid)
            .ok_or_else(|| format!("pole at {mid}"))?;
        if v.sign() <= 0 {
            return Err(format!("f is not positive at {mid}"));
        }
        let at_lo = p
            .f
            .eval_alg(&p.lo)
            .ok_or_else(|| format!("pole at {}", p.lo))?;
        if at_lo.sign() <= 0 {
            return Err(format!("f is not positive at {}", p.lo));
        }
    }
    Ok(())
}

/// The combiner: given a positive fiberwise bound f on [1, tau), returns the
/// exact value 1/(c0 + c1/f(1) + (3/22) int_1^tau g(u)/f(u) du).
pub fn nemuro(case: NemuroCase, f: &BoundFunction) -> Result<AlgNum, String> {
    let (c0, c1, g, tau) = case.constants();
    let (lo, hi) = f.domain();
    if lo != AlgNum::from_int(1) || hi != AlgNum::from(&tau) {
        return Err(format!(
            "f must be defined on [1, {}], got [{lo}, {hi}]",
            crate::exact::fmt_rat(&tau)
        ));
    }
    certify_positive(f)?;
    let f1 = f
        .eval(&AlgNum::from_int(1))
        .ok_or("cannot evaluate f(1)")?;
    let mut denom = AlgNum::from(&c0) + AlgNum::from(&c1) * f1.inv();
    let weight = rat(3, 22);
    for p in f.pieces() {
        let piece_int = integrate_exact(&g, &p.f, &p.lo, &p.hi)?;
        denom = denom + piece_int.scale(&weight);
    }
    if denom.sign() <= 0 {
        return Err("nonpositive denominator".into());
    }
    Ok(denom.inv())
}

fn q21(p_num: i64, p_den: i64, c_num: i64, c_den: i64, d: i64) -> AlgNum {
    AlgNum::quad(rat(p_num, p_den), rat(c_num, c_den), d)
}

fn piecewise(cuts: &[(AlgNum, RationalFn)], hi: AlgNum, label: &str) -> BoundFunction {
    let mut pieces = Vec::new();
    for (k, (lo, f)) in cuts.iter().enumerate() {
        let up = if k + 1 < cuts.len() {
            cuts[k + 1].0.clone()
        } else {
            hi.clone()
        };
        pieces.push(Piece {
            lo: lo.clone(),
            hi: up,
            f: f.clone(),
            label: label.to_string(),
        });
    }
    BoundFunction::new(pieces).expect("transcribed fiberwise bound is well formed")
}

fn rfn(num: &[i64], den: &[i64]) -> RationalFn {
    RationalFn::new(UniPoly::from_i64(num), UniPoly::from_i64(den))
}

/// The fiberwise delta bounds of Propositions 2.5-2.8, as functions of u.
/// Each is the corresponding appendix bound under a = 4 - u or a = 4 - 2u;
/// the certificate checks that identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiberBound {
    /// Smooth quintic fiber, any point (Proposition 2.5).
    Dp5Smooth,
    /// A1 fiber, point off C and off E (Proposition 2.6).
    Dp5A1OffE,
    /// A1 fiber, point off C, on E (Proposition 2.6).
    Dp5A1InE,
    /// A2 fiber, point off C and off E (Proposition 2.7).
    Dp5A2OffE,
    /// A2 fiber, point off C, on E (Proposition 2.7).
    Dp5A2InE,
    /// Smooth sextic fiber, point on a (-1)-curve (Proposition 2.8).
    Dp6NegCurve,
    /// Smooth sextic fiber, point off the (-1)-curves (Proposition 2.8).
    Dp6General,
}

impl FiberBound {
    pub const ALL: [FiberBound; 7] = [
        FiberBound::Dp5Smooth,
        FiberBound::Dp5A1OffE,
        FiberBound::Dp5A1InE,
        FiberBound::Dp5A2OffE,
        FiberBound::Dp5A2InE,
        FiberBound::Dp6NegCurve,
        FiberBound::Dp6General,
    ];

    pub fn id(self) -> &'static str {
        match self {
            FiberBound::Dp5Smooth => "prop2.5",
            FiberBound::Dp5A1OffE => "prop2.6-off-e",
            FiberBound::Dp5A1InE => "prop2.6-in-e",
            FiberBound::Dp5A2OffE => "prop2.7-off-e",
            FiberBound::Dp5A2InE => "prop2.7-in-e",
            FiberBound::Dp6NegCurve => "prop2.8-neg-curve",
            FiberBound::Dp6General => "prop2.8-general",
        }
    }

    pub fn pencil(self) -> Pencil {
        match self {
            FiberBound::Dp6NegCurve | FiberBound::Dp6General => Pencil::TwoHminusE,
            _ => Pencil::HminusR,
        }
    }

    /// The printed piecewise formula on [1, tau].
    pub fn bound(self) -> BoundFunction {
        let one = AlgNum::from_int(1);
        let two = AlgNum::from_int(2);
        let three_half = AlgNum::from(rat(3, 2));
        let label = self.id();
        // 3(6-u)/(u^2-10u+22)
        let dp5_main = rfn(&[18, -3], &[22, -10, 1]);
        match self {
            FiberBound::Dp5Smooth | FiberBound::Dp5A1OffE => {
                piecewise(&[(one, dp5_main)], two, label)
            }
            FiberBound::Dp5A1InE => piecewise(
                &[
                    (one, rfn(&[1], &[2, -1])),
                    (q21(7, 2, -1, 2, 21), dp5_main),
                ],
                two,
                label,
            ),
            FiberBound::Dp5A2OffE => piecewise(
                &[
                    // 6(6-u)/((2-u)(22+u))
                    (one, rfn(&[36, -6], &[44, -20, -1])),
                    // 4(6-u)/(u^2-14u+28)
                    (q21(1, 5, 1, 5, 21), rfn(&[24, -4], &[28, -14, 1])),
                    // 2(6-u)/(u^2-6u+12)
                    (q21(-1, 1, 1, 1, 5), rfn(&[12, -2], &[12, -6, 1])),
                ],
                two,
                label,
            ),
            FiberBound::Dp5A2InE => piecewise(
                &[
                    // 6(6-u)/((2-u)(38-7u))
                    (one, rfn(&[36, -6], &[76, -52, 7])),
                    // 6(6-u)/(u^2-10u+28)
                    (q21(7, 2, -1, 2, 17), rfn(&[36, -6], &[28, -10, 1])),
                ],
                two,
                label,
            ),
            FiberBound::Dp6NegCurve => {
                piecewise(&[(one, rfn(&[1], &[2, -1]))], three_half, label)
            }
            FiberBound::Dp6General => piecewise(
                &[
                    // 2(5-2u)/(4u^2-18u+19)
                    (one, rfn(&[10, -4], &[19, -18, 4])),
                    // 3(5-2u)/(4u^2-18u+21)
                    (q21(9, 4, -1, 4, 21), rfn(&[15, -6], &[21, -18, 4])),
                ],
                three_half,
                label,
            ),
        }
    }

    /// The appendix registry record whose bound this is, under the pencil's
    /// substitution, or None for the off-E A1 case (which reuses the smooth
    /// surface formula verbatim).
    pub fn registry_source(self) -> Option<&'static str> {
        match self {
            FiberBound::Dp5Smooth => Some("dP5-cor"),
            FiberBound::Dp5A1OffE => None,
            FiberBound::Dp5A1InE => Some("A1-cor"),
            FiberBound::Dp5A2OffE => Some("A2-cor"),
            FiberBound::Dp5A2InE => Some("A2-e2"),
            FiberBound::Dp6NegCurve => Some("dP6-cor"),
            FiberBound::Dp6General => Some("dP6-general"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::registry;
    use crate::exact::integrate_enclosure;
    use num::{BigInt, One};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn intersection_ring_pins() {
        let ring = XRing::standard();
        assert_eq!(ring.anticanonical_cube(), rat_int(22));
        assert_eq!(ring.triple_rat(&[1, 0, 0], &[1, 0, 0], &[1, 0, 0]), rat_int(1));
        // ((4-u)H - E)^3 vanishes at u = 2
        let p = [up(&[4, -1]), up(&[-1]), UniPoly::zero()];
        let cube = ring.triple(&p, &p, &p);
        assert_eq!(cube.eval(&rat_int(2)), rat_int(0));
        assert_eq!(XRing::tampered().anticanonical_cube(), rat_int(21));
    }

    #[test]
    fn s_x_values() {
        let ring = XRing::standard();
        assert_eq!(s_x(&ring, Pencil::HminusR), rat(67, 88));
        assert_eq!(s_x(&ring, Pencil::TwoHminusE), rat(109, 176));
        for pencil in [Pencil::HminusR, Pencil::TwoHminusE] {
            let chambers = pencil.chambers();
            // integrand at u = 0 is the anticanonical volume
            let first = ring.triple(&chambers[0].p, &chambers[0].p, &chambers[0].p);
            assert_eq!(first.eval(&rat_int(0)), rat_int(22));
            // P(tau)^3 = 0 and the two chamber cubes agree at the seam
            let last = ring.triple(&chambers[1].p, &chambers[1].p, &chambers[1].p);
            assert_eq!(last.eval(&pencil.tau()), rat_int(0));
            assert_eq!(first.eval(&rat_int(1)), last.eval(&rat_int(1)));
        }
    }

    #[test]
    fn d_squared_matches_ring() {
        // (P(u)|_S)^2 = P(u)^2.S: the printed product on [1, tau], the
        // constant fiber degree on [0, 1] where N(u) = 0
        let ring = XRing::standard();
        for (pencil, degree) in [(Pencil::HminusR, 5), (Pencil::TwoHminusE, 6)] {
            let c = pencil.class();
            let s = [
                UniPoly::constant(rat_int(c[0])),
                UniPoly::constant(rat_int(c[1])),
                UniPoly::constant(rat_int(c[2])),
            ];
            let chambers = pencil.chambers();
            assert_eq!(
                ring.triple(&chambers[0].p, &chambers[0].p, &s),
                UniPoly::constant(rat_int(degree))
            );
            let second = ring.triple(&chambers[1].p, &chambers[1].p, &s);
            assert_eq!(second, pencil.d_squared());
            assert_eq!(second.eval(&rat_int(1)), rat_int(degree));
        }
    }

    #[test]
    fn substitution_recovers_fiber_bounds() {
        // each printed u-formula is the appendix a-formula under the map
        for fb in FiberBound::ALL {
            let Some(src) = fb.registry_source() else {
                assert!(fb
                    .bound()
                    .same_function(&FiberBound::Dp5Smooth.bound()));
                continue;
            };
            let rec = registry::verify_lemma(src).unwrap();
            let map = match fb.pencil() {
                Pencil::HminusR => SubstMap::AMinusU,
                Pencil::TwoHminusE => SubstMap::AMinus2U,
            };
            let subst = substitute(&rec.expected, map).unwrap();
            assert!(
                subst.same_function(&fb.bound()),
                "{}: {} vs {}",
                fb.id(),
                subst.render("u"),
                fb.bound().render("u")
            );
        }
        // breakpoint transport: (1+sqrt21)/2 in a <-> (7-sqrt21)/2 in u
        let in_e = FiberBound::Dp5A1InE.bound();
        assert_eq!(in_e.pieces()[0].hi, q21(7, 2, -1, 2, 21));
        // endpoint composition identity: u = 1 matches a = 3
        let rec = registry::verify_lemma("dP5-cor").unwrap();
        let subst = substitute(&rec.expected, SubstMap::AMinusU).unwrap();
        assert_eq!(
            subst.eval(&AlgNum::from_int(1)),
            rec.expected.eval(&AlgNum::from_int(3))
        );
    }

    #[test]
    fn substitution_rejects_wrong_domain() {
        let rec = registry::verify_lemma("dP5-cor").unwrap();
        assert!(substitute(&rec.expected, SubstMap::AMinus2U).is_err());
    }

    #[test]
    fn substitution_roundtrip() {
        for fb in FiberBound::ALL {
            let b = fb.bound();
            let back = match fb.pencil() {
                // inverse of a = 4 - u is u = 4 - a
                Pencil::HminusR => b
                    .map_affine(&rat_int(4), &rat_int(-1))
                    .map_affine(&rat_int(4), &rat_int(-1)),
                // inverse of a = 4 - 2u is u = 2 - a/2
                Pencil::TwoHminusE => b
                    .map_affine(&rat_int(2), &rat(-1, 2))
                    .map_affine(&rat_int(4), &rat_int(-2)),
            };
            assert!(back.same_function(&b), "{}", fb.id());
        }
    }

    #[test]
    fn nemuro_constants() {
        // c0 = (3/22) int_1^tau (u-1) g du, c1 = 3 g(1) / 22
        for case in NemuroCase::ALL {
            let (c0, c1, g, tau) = case.constants();
            let integrand = &UniPoly::from_i64(&[-1, 1]) * &g;
            let anti = integrand.antiderivative();
            let derived = (anti.eval(&tau) - anti.eval(&rat_int(1))) * rat(3, 22);
            if case == NemuroCase::HrInR || case == NemuroCase::HeInE {
                assert_eq!(c0, derived);
            } else {
                assert_eq!(c0, rat_int(0));
            }
            assert_eq!(c1, g.eval(&rat_int(1)) * rat(3, 22));
        }
        assert_eq!(NemuroCase::HrInR.constants().0, rat(9, 88));
        assert_eq!(NemuroCase::HeInE.constants().0, rat(5, 176));
    }

    #[test]
    fn nemuro_values() {
        let f = FiberBound::Dp5Smooth.bound();
        assert_eq!(
            nemuro(NemuroCase::HrNotR, &f).unwrap(),
            AlgNum::from(rat(88, 73))
        );
        assert_eq!(
            nemuro(NemuroCase::HrInR, &f).unwrap(),
            AlgNum::from(rat(44, 41))
        );
        let neg = FiberBound::Dp6NegCurve.bound();
        assert_eq!(
            nemuro(NemuroCase::HeInE, &neg).unwrap(),
            AlgNum::from_int(1)
        );
        assert_eq!(
            nemuro(NemuroCase::HeNotE, &neg).unwrap(),
            AlgNum::from(rat(176, 171))
        );
    }

    #[test]
    fn nemuro_rejects_bad_input() {
        // wrong domain
        let f = FiberBound::Dp6NegCurve.bound();
        assert!(nemuro(NemuroCase::HrNotR, &f).is_err());
        // non-positive f: -1 on [1, 2]
        let neg = BoundFunction::single(
            AlgNum::from_int(1),
            AlgNum::from_int(2),
            RationalFn::constant(rat_int(-1)),
            "bad",
        )
        .unwrap();
        let err = nemuro(NemuroCase::HrNotR, &neg).unwrap_err();
        assert!(err.contains("not positive"), "{err}");
        // f vanishing inside: u - 3/2 on [1, 2]
        let vanish = BoundFunction::single(
            AlgNum::from_int(1),
            AlgNum::from_int(2),
            rfn(&[-3, 2], &[2]),
            "bad",
        )
        .unwrap();
        assert!(nemuro(NemuroCase::HrNotR, &vanish).is_err());
    }

    #[test]
    fn nemuro_matches_quadrature() {
        // cross-check the exact integral term against a certified enclosure
        let f = FiberBound::Dp5Smooth.bound();
        let g = Pencil::HminusR.d_squared();
        let p = &f.pieces()[0];
        let tol = Rat::new(BigInt::one(), BigInt::from(10u32).pow(9));
        let (lo, hi) =
            integrate_enclosure(&g, &p.f, &rat_int(1), &rat_int(2), &tol).unwrap();
        let exact = integrate_exact(&g, &p.f, &p.lo, &p.hi).unwrap();
        let exact = exact.as_rational().unwrap();
        assert!(&lo <= exact && exact <= &hi);
        assert_eq!(exact, &rat(7, 4)); // (2-u)(u^2-10u+22)/3 over [1,2]
    }

    #[test]
    fn nemuro_antitone_in_f() {
        // scaling any piece down by c in (0, 1) can only lower the bound
        let mut rng = StdRng::seed_from_u64(422);
        let base = [
            FiberBound::Dp5Smooth,
            FiberBound::Dp5A2OffE,
            FiberBound::Dp6General,
        ];
        for k in 0..20 {
            let fb = base[k % base.len()];
            let case = match fb.pencil() {
                Pencil::HminusR => NemuroCase::HrInR,
                Pencil::TwoHminusE => NemuroCase::HeInE,
            };
            let f = fb.bound();
            let v0 = nemuro(case, &f).unwrap();
            let pieces: Vec<Piece> = f
                .pieces()
                .iter()
                .map(|p| {
                    let c = rat(rng.gen_range(1..=99), 100);
                    Piece {
                        lo: p.lo.clone(),
                        hi: p.hi.clone(),
                        f: RationalFn::new(p.f.num().scale(&c), p.f.den().clone()),
                        label: p.label.clone(),
                    }
                })
                .collect();
            let smaller = BoundFunction::new(pieces).unwrap();
            let v1 = nemuro(case, &smaller).unwrap();
            assert!(v1.cmp_exact(&v0) != std::cmp::Ordering::Greater);
        }
    }
}
