//! S-invariants of flag divisors and the per-stratum delta lower bounds.
//!
//! For a catalog curve C the two quantities of the surface flag are
//!   S_D(C)        = (1/D^2) int_0^tau P(v)^2 dv
//!   S(W^C;P)      = (2/D^2) int_0^tau ord_P(N(v)|_C) (P(v).C) dv
//!                   + (1/D^2) int_0^tau (P(v).C)^2 dv
//! and the point bound is min{1/S_D(C), 1/S(W^C;P)}. For a point-free
//! stratum the single-point blowup model is used instead, with A_S(E) = 2:
//! min{2/S_D(E), inf_O 1/S(W^E;O)}, the infimum realized over the finitely
//! many strata of O on E cut out by the catalog.

pub mod registry;

use crate::exact::{
    integrate_poly_in_v, rat, BiPoly, BoundFunction, RationalFn, UniPoly,
};
use crate::lattice::{builtins, intersect, zariski_family, SurfaceModel};
use num::Zero;

/// A point constrained to lie on the listed catalog curves (none for a
/// general point). Curves with zero intersection product cannot share a
/// point, so such lists are rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointStratum {
    pub surface: String,
    pub curves: Vec<String>,
}

impl PointStratum {
    pub fn new(surface: &str, curves: &[&str]) -> Self {
        PointStratum {
            surface: surface.to_string(),
            curves: curves.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn validate(&self, m: &SurfaceModel) -> Result<(), String> {
        let mut idx = Vec::new();
        for label in &self.curves {
            match m.curve_index(label) {
                Some(i) => idx.push(i),
                None => return Err(format!("unknown curve {label} on {}", m.id)),
            }
        }
        for (k, &i) in idx.iter().enumerate() {
            for &j in &idx[k + 1..] {
                if i == j {
                    return Err(format!("duplicate curve {}", m.curves[i].label));
                }
                if m.curve_pairing(i, j).is_zero() {
                    return Err(format!(
                        "curves {} and {} are disjoint, no common point",
                        m.curves[i].label, m.curves[j].label
                    ));
                }
            }
        }
        Ok(())
    }
}

fn d_squared(m: &SurfaceModel) -> UniPoly {
    let d = m.polarization_class();
    intersect(m, &d, &d).vcoeff(0)
}

/// S_D(C): the normalized volume integral of D - vC.
pub fn s_d(m: &SurfaceModel, c: &str) -> Result<RationalFn, String> {
    let pd = zariski_family(m, c)?;
    let (lo, hi) = m.a_interval();
    let mut acc = RationalFn::zero();
    for ch in &pd.chambers {
        let p2 = intersect(m, &ch.p, &ch.p);
        acc = &acc + &integrate_poly_in_v(&p2, &ch.v_lo, &ch.v_hi, &lo, &hi)?;
    }
    Ok(&acc / &RationalFn::from_poly(d_squared(m)))
}

/// S(W^C;P) for P on C positioned by the stratum. ord_P(N(v)|_C) is the sum
/// of mult_i * (C_i.C) over negative-part components through P; fractional
/// products at the singular points enter verbatim from the Gram matrix.
pub fn s_flag_curve_point(
    m: &SurfaceModel,
    c: &str,
    stratum: &PointStratum,
) -> Result<RationalFn, String> {
    stratum.validate(m)?;
    if !stratum.curves.iter().any(|s| s == c) {
        return Err(format!("stratum does not lie on {c}"));
    }
    let ci = m
        .curve_index(c)
        .ok_or_else(|| format!("unknown curve {c} on {}", m.id))?;
    let pd = zariski_family(m, c)?;
    let (lo, hi) = m.a_interval();
    let cl = m.curve_class(ci);
    let mut ord_int = RationalFn::zero();
    let mut sq_int = RationalFn::zero();
    for ch in &pd.chambers {
        let pc = intersect(m, &ch.p, &cl);
        let mut ord = BiPoly::zero();
        for (idx, mult) in &ch.n {
            if *idx == ci {
                continue;
            }
            let label = &m.curves[*idx].label;
            if !stratum.curves.iter().any(|s| s == label) {
                continue;
            }
            let prod = m.curve_pairing(*idx, ci);
            if !prod.is_zero() {
                ord = &ord + &mult.scale(&prod);
            }
        }
        if !ord.is_zero() {
            let f = &ord * &pc;
            ord_int = &ord_int + &integrate_poly_in_v(&f, &ch.v_lo, &ch.v_hi, &lo, &hi)?;
        }
        let f = &pc * &pc;
        sq_int = &sq_int + &integrate_poly_in_v(&f, &ch.v_lo, &ch.v_hi, &lo, &hi)?;
    }
    let two = RationalFn::constant(rat(2, 1));
    let total = &(&two * &ord_int) + &sq_int;
    Ok(&total / &RationalFn::from_poly(d_squared(m)))
}

/// The blowup flag pair (S_D(E), S(W^E;O)); the stratum lists the catalog
/// curves of the blowup model through O (beyond E itself). A_S(E) = 2 enters
/// downstream as the 2/S_D(E) term.
pub fn s_flag_blowup(
    m_bl: &SurfaceModel,
    stratum: &PointStratum,
) -> Result<(RationalFn, RationalFn), String> {
    if m_bl.curve_index("ex").is_none() {
        return Err(format!("{} is not a blowup model", m_bl.id));
    }
    let mut full = stratum.clone();
    if !full.curves.iter().any(|s| s == "ex") {
        full.curves.insert(0, "ex".to_string());
    }
    let sd = s_d(m_bl, "ex")?;
    let sw = s_flag_curve_point(m_bl, "ex", &full)?;
    Ok((sd, sw))
}

fn whole_interval(m: &SurfaceModel, f: RationalFn, label: &str) -> Result<BoundFunction, String> {
    let (lo, hi) = m.a_interval();
    BoundFunction::single(lo, hi, f, label)
}

/// min{1/S_D(C), 1/S(W^C;P)} with C the first curve of the stratum.
pub fn curve_flag_bound(m: &SurfaceModel, stratum: &PointStratum) -> Result<BoundFunction, String> {
    let c = stratum
        .curves
        .first()
        .ok_or_else(|| "empty stratum has no flag curve".to_string())?
        .clone();
    let sd = s_d(m, &c)?;
    let sw = s_flag_curve_point(m, &c, stratum)?;
    let b1 = whole_interval(m, sd.recip(), &format!("1/S_D({c})"))?;
    let b2 = whole_interval(m, sw.recip(), &format!("1/S(W^{c};P)"))?;
    b1.piecewise_min(&b2)
}

/// min{2/S_D(E), min_strata 1/S(W^E;O)} over the supplied O-strata.
pub fn blowup_bound(
    m_bl: &SurfaceModel,
    strata: &[PointStratum],
) -> Result<BoundFunction, String> {
    let mut bounds = Vec::new();
    let mut sd_done = false;
    for st in strata {
        let (sd, sw) = s_flag_blowup(m_bl, st)?;
        if !sd_done {
            let two_over = &RationalFn::constant(rat(2, 1)) / &sd;
            bounds.push(whole_interval(m_bl, two_over, "2/S_D(E)")?);
            sd_done = true;
        }
        let desc = if st.curves.is_empty() {
            "1/S(W^E;O)".to_string()
        } else {
            format!("1/S(W^E;O on {})", st.curves.join(","))
        };
        bounds.push(whole_interval(m_bl, sw.recip(), &desc)?);
    }
    BoundFunction::min_of(&bounds)
}

/// All strata of a point O on E: generic plus each catalog c-curve meeting E.
fn o_strata(m_bl: &SurfaceModel) -> Vec<PointStratum> {
    let exi = m_bl.curve_index("ex").expect("blowup model");
    let mut out = vec![PointStratum::new(&m_bl.id, &[])];
    for (i, c) in m_bl.curves.iter().enumerate() {
        if c.label.starts_with('c') && !m_bl.curve_pairing(i, exi).is_zero() {
            out.push(PointStratum::new(&m_bl.id, &[&c.label]));
        }
    }
    out
}

/// The delta lower bound for a point in the stratum. A nonempty stratum uses
/// the curve flag; a singleton is widened over every compatible one-curve
/// extension so the bound covers all positions of P on the curve. An empty
/// stratum (general point) routes through the blowup model, taking the worst
/// O-stratum on E.
pub fn delta_lower_bound(surface: &str, stratum: &PointStratum) -> Result<BoundFunction, String> {
    let m = builtins::get(surface).ok_or_else(|| format!("unknown surface {surface}"))?;
    if stratum.curves.is_empty() {
        let bl_id = if surface.ends_with("-bl") {
            surface.to_string()
        } else {
            format!("{surface}-bl")
        };
        let m_bl =
            builtins::get(&bl_id).ok_or_else(|| format!("no blowup model for {surface}"))?;
        return blowup_bound(&m_bl, &o_strata(&m_bl));
    }
    stratum.validate(&m)?;
    if stratum.curves.len() >= 2 {
        return curve_flag_bound(&m, stratum);
    }
    let c = &stratum.curves[0];
    let ci = m.curve_index(c).ok_or_else(|| format!("unknown curve {c}"))?;
    let mut bounds = vec![curve_flag_bound(&m, stratum)?];
    for (i, other) in m.curves.iter().enumerate() {
        if i == ci || m.curve_pairing(i, ci).is_zero() {
            continue;
        }
        let ext = PointStratum::new(surface, &[c, &other.label]);
        bounds.push(curve_flag_bound(&m, &ext)?);
    }
    BoundFunction::min_of(&bounds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{AlgNum, UniPoly};

    fn rf(num: &[i64], den: &[i64]) -> RationalFn {
        RationalFn::new(UniPoly::from_i64(num), UniPoly::from_i64(den))
    }

    fn model(id: &str) -> SurfaceModel {
        builtins::get(id).unwrap()
    }

    #[test]
    fn s_d_examples() {
        // quintic: S_D(e1) = (a-2)(a+10)/(3(a+2))
        assert_eq!(s_d(&model("dp5"), "e1").unwrap(), rf(&[-20, 8, 1], &[6, 3]));
        // A1 surface: S_D(e3) = a-2
        assert_eq!(s_d(&model("dp5-a1"), "e3").unwrap(), rf(&[-2, 1], &[1]));
        // sextic: S_D(l1) = a/2
        assert_eq!(s_d(&model("dp6"), "l1").unwrap(), rf(&[0, 1], &[2]));
        // more catalogued values
        assert_eq!(
            s_d(&model("dp5"), "l12").unwrap(),
            rf(&[-2, 2, 1], &[6, 3])
        );
        assert_eq!(s_d(&model("dp6"), "e1").unwrap(), rf(&[-1, 1], &[1]));
        assert_eq!(
            s_d(&model("dp5-a2"), "e2").unwrap(),
            rf(&[-20, -4, 7], &[12, 6])
        );
        assert_eq!(
            s_d(&model("dp5-a1"), "l3").unwrap(),
            rf(&[-2, 2, 1], &[6, 3])
        );
    }

    #[test]
    fn s_flag_examples() {
        let dp5 = model("dp5");
        let gen = PointStratum::new("dp5", &["e1"]);
        assert_eq!(
            s_flag_curve_point(&dp5, "e1", &gen).unwrap(),
            rf(&[8, -5, 2], &[6, 3])
        );
        let on_l12 = PointStratum::new("dp5", &["e1", "l12"]);
        assert_eq!(
            s_flag_curve_point(&dp5, "e1", &on_l12).unwrap(),
            rf(&[-2, 2, 1], &[6, 3])
        );
        let dp6 = model("dp6");
        let on_l1 = PointStratum::new("dp6", &["e1", "l1"]);
        assert_eq!(
            s_flag_curve_point(&dp6, "e1", &on_l1).unwrap(),
            rf(&[0, 1], &[2])
        );
        // A1 surface, P on e3 and l3: (a^2+2a-2)/(3(a+2))
        let a1 = model("dp5-a1");
        let st = PointStratum::new("dp5-a1", &["e3", "l3"]);
        assert_eq!(
            s_flag_curve_point(&a1, "e3", &st).unwrap(),
            rf(&[-2, 2, 1], &[6, 3])
        );
        // generic on e3: (a^2+2a+4)/(6(a+2))
        let st = PointStratum::new("dp5-a1", &["e3"]);
        assert_eq!(
            s_flag_curve_point(&a1, "e3", &st).unwrap(),
            rf(&[4, 2, 1], &[12, 6])
        );
    }

    #[test]
    fn s_flag_equals_s_d_on_stated_strata() {
        // the proofs assert S(W^C;P) = S_D(C) on these strata
        for (id, c, other) in [
            ("dp5", "l12", "l34"),
            ("dp5-a1", "l3", "l4"),
            ("dp6", "l1", "l4"),
        ] {
            let m = model(id);
            let st = PointStratum::new(id, &[c, other]);
            assert_eq!(
                s_flag_curve_point(&m, c, &st).unwrap(),
                s_d(&m, c).unwrap(),
                "{id}/{c}"
            );
        }
    }

    #[test]
    fn blowup_flags() {
        let (sd, sw0) = s_flag_blowup(
            &model("dp5-bl"),
            &PointStratum::new("dp5-bl", &["c0"]),
        )
        .unwrap();
        assert_eq!(sd, rf(&[-12, 6, 1], &[4, 2]));
        assert_eq!(sw0, rf(&[4, -2, 1], &[4, 2]));
        let (_, sw_gen) =
            s_flag_blowup(&model("dp6-bl"), &PointStratum::new("dp6-bl", &[])).unwrap();
        assert_eq!(sw_gen, rf(&[-2, 2], &[1, 1]));
        let (sd6, _) =
            s_flag_blowup(&model("dp6-bl"), &PointStratum::new("dp6-bl", &[])).unwrap();
        assert_eq!(sd6, rf(&[-1, 1, 1], &[1, 1]));
    }

    #[test]
    fn delta_bound_examples() {
        // P on e1 of the quintic, any position
        let b = delta_lower_bound("dp5", &PointStratum::new("dp5", &["e1"])).unwrap();
        assert_eq!(b.pieces().len(), 1);
        assert_eq!(b.pieces()[0].f, rf(&[6, 3], &[-2, 2, 1]));

        // general point of the A2 surface: three pieces
        let b = delta_lower_bound("dp5-a2", &PointStratum::new("dp5-a2", &[])).unwrap();
        assert_eq!(b.pieces().len(), 3);
        assert_eq!(b.pieces()[0].f, rf(&[4, 2], &[4, -2, 1]));
        assert_eq!(b.pieces()[0].hi, AlgNum::quad(rat(5, 1), rat(-1, 1), 5));
        assert_eq!(b.pieces()[1].f, rf(&[8, 4], &[-12, 6, 1]));
        assert_eq!(
            b.pieces()[1].hi,
            AlgNum::quad(rat(19, 5), rat(-1, 5), 21)
        );
        assert_eq!(b.pieces()[2].f, rf(&[12, 6], &[-52, 28, -1]));

        // P = e1 and l1 on the sextic
        let b = delta_lower_bound("dp6", &PointStratum::new("dp6", &["e1", "l1"])).unwrap();
        assert_eq!(b.pieces().len(), 1);
        assert_eq!(b.pieces()[0].f, rf(&[2], &[0, 1]));
    }

    #[test]
    fn stratum_validation() {
        let m = model("dp5");
        // disjoint curves cannot meet
        assert!(PointStratum::new("dp5", &["e1", "e2"]).validate(&m).is_err());
        assert!(PointStratum::new("dp5", &["l12", "l13"])
            .validate(&m)
            .is_err());
        assert!(PointStratum::new("dp5", &["e1", "l12"]).validate(&m).is_ok());
        // unknown curve
        assert!(PointStratum::new("dp5", &["zz"]).validate(&m).is_err());
        // the flag curve must carry the point
        assert!(s_flag_curve_point(&m, "e2", &PointStratum::new("dp5", &["e1"])).is_err());
    }
}
