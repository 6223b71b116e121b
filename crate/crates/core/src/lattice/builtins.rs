//! The eight built-in surface models: the quintic del Pezzo surface, its
//! A1 and A2 degenerations, the sextic del Pezzo surface, and the one-point
//! blowups of each used for the general-point flags. On the singular models
//! the lattice is that of the contraction, with fractional self-intersections
//! -1/2 (A1) and -1/3 (A2).

use super::{Curve, SurfaceModel};
use crate::exact::{rat, rat_int, Rat, UniPoly};

fn c(label: &str, coords: &[i64], s_num: i64, s_den: i64) -> Curve {
    Curve {
        label: label.to_string(),
        coords: coords.iter().map(|&x| rat_int(x)).collect(),
        self_intersection: rat(s_num, s_den),
    }
}

fn diag(entries: &[(i64, i64)]) -> Vec<Vec<Rat>> {
    let n = entries.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        rat(entries[i].0, entries[i].1)
                    } else {
                        Rat::from_integer(0.into())
                    }
                })
                .collect()
        })
        .collect()
}

fn pol(coords: &[(i64, i64)]) -> Vec<UniPoly> {
    // each coordinate c0 + c1*a
    coords
        .iter()
        .map(|&(c0, c1)| UniPoly::from_i64(&[c0, c1]))
        .collect()
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// Smooth quintic del Pezzo: blowup of the plane in four general points,
/// polarized by D = a*h - e1 - e2 - e3 - e4 for a in (2, 3].
pub fn dp5() -> SurfaceModel {
    SurfaceModel {
        id: "dp5".to_string(),
        basis: labels(&["h", "e1", "e2", "e3", "e4"]),
        gram: diag(&[(1, 1), (-1, 1), (-1, 1), (-1, 1), (-1, 1)]),
        curves: vec![
            c("e1", &[0, 1, 0, 0, 0], -1, 1),
            c("e2", &[0, 0, 1, 0, 0], -1, 1),
            c("e3", &[0, 0, 0, 1, 0], -1, 1),
            c("e4", &[0, 0, 0, 0, 1], -1, 1),
            c("l12", &[1, -1, -1, 0, 0], -1, 1),
            c("l13", &[1, -1, 0, -1, 0], -1, 1),
            c("l14", &[1, -1, 0, 0, -1], -1, 1),
            c("l23", &[1, 0, -1, -1, 0], -1, 1),
            c("l24", &[1, 0, -1, 0, -1], -1, 1),
            c("l34", &[1, 0, 0, -1, -1], -1, 1),
        ],
        polarization: pol(&[(0, 1), (-1, 0), (-1, 0), (-1, 0), (-1, 0)]),
        a_lo: rat_int(2),
        a_hi: rat_int(3),
    }
}

/// Quintic del Pezzo with one A1 point, lattice of the contraction:
/// e3 is the half-pointed class with e3^2 = -1/2.
pub fn dp5_a1() -> SurfaceModel {
    SurfaceModel {
        id: "dp5-a1".to_string(),
        basis: labels(&["h", "e1", "e2", "e3"]),
        gram: diag(&[(1, 1), (-1, 1), (-1, 1), (-1, 2)]),
        curves: vec![
            c("e1", &[0, 1, 0, 0], -1, 1),
            c("e2", &[0, 0, 1, 0], -1, 1),
            c("e3", &[0, 0, 0, 1], -1, 2),
            c("l1", &[1, -1, 0, -1], -1, 2),
            c("l2", &[1, 0, -1, -1], -1, 2),
            c("l3", &[1, 0, 0, -2], -1, 1),
            c("l4", &[1, -1, -1, 0], -1, 1),
        ],
        polarization: pol(&[(0, 1), (-1, 0), (-1, 0), (-2, 0)]),
        a_lo: rat_int(2),
        a_hi: rat_int(3),
    }
}

/// Quintic del Pezzo with one A2 point; e2^2 = -1/3 in the contraction
/// lattice.
pub fn dp5_a2() -> SurfaceModel {
    SurfaceModel {
        id: "dp5-a2".to_string(),
        basis: labels(&["h", "e1", "e2"]),
        gram: diag(&[(1, 1), (-1, 1), (-1, 3)]),
        curves: vec![
            c("e1", &[0, 1, 0], -1, 1),
            c("e2", &[0, 0, 1], -1, 3),
            c("l1", &[1, 0, -2], -1, 3),
            c("l2", &[1, -1, -1], -1, 3),
        ],
        polarization: pol(&[(0, 1), (-1, 0), (-3, 0)]),
        a_lo: rat_int(2),
        a_hi: rat_int(3),
    }
}

fn dp6_gram() -> Vec<Vec<Rat>> {
    let mut g = diag(&[(0, 1), (0, 1), (-1, 1), (-1, 1)]);
    g[0][1] = rat_int(1);
    g[1][0] = rat_int(1);
    g
}

/// Smooth sextic del Pezzo realized as a double blowup of P1 x P1,
/// polarized by D = a(h1 + h2) - e1 - e2 for a in (1, 2].
pub fn dp6() -> SurfaceModel {
    SurfaceModel {
        id: "dp6".to_string(),
        basis: labels(&["h1", "h2", "e1", "e2"]),
        gram: dp6_gram(),
        curves: vec![
            c("e1", &[0, 0, 1, 0], -1, 1),
            c("e2", &[0, 0, 0, 1], -1, 1),
            c("l1", &[1, 0, -1, 0], -1, 1),
            c("l2", &[0, 1, -1, 0], -1, 1),
            c("l3", &[1, 0, 0, -1], -1, 1),
            c("l4", &[0, 1, 0, -1], -1, 1),
        ],
        polarization: pol(&[(0, 1), (0, 1), (-1, 0), (-1, 0)]),
        a_lo: rat_int(1),
        a_hi: rat_int(2),
    }
}

/// dp5 blown up at a general point; D is the pullback polarization, so
/// D.E = 0 and the sixteen (-1)-curves include the strict transforms of the
/// conic c0 and the four lines ci through the blown-up point.
pub fn dp5_bl() -> SurfaceModel {
    SurfaceModel {
        id: "dp5-bl".to_string(),
        basis: labels(&["h", "e1", "e2", "e3", "e4", "ex"]),
        gram: diag(&[(1, 1), (-1, 1), (-1, 1), (-1, 1), (-1, 1), (-1, 1)]),
        curves: vec![
            c("ex", &[0, 0, 0, 0, 0, 1], -1, 1),
            c("e1", &[0, 1, 0, 0, 0, 0], -1, 1),
            c("e2", &[0, 0, 1, 0, 0, 0], -1, 1),
            c("e3", &[0, 0, 0, 1, 0, 0], -1, 1),
            c("e4", &[0, 0, 0, 0, 1, 0], -1, 1),
            c("l12", &[1, -1, -1, 0, 0, 0], -1, 1),
            c("l13", &[1, -1, 0, -1, 0, 0], -1, 1),
            c("l14", &[1, -1, 0, 0, -1, 0], -1, 1),
            c("l23", &[1, 0, -1, -1, 0, 0], -1, 1),
            c("l24", &[1, 0, -1, 0, -1, 0], -1, 1),
            c("l34", &[1, 0, 0, -1, -1, 0], -1, 1),
            c("c0", &[2, -1, -1, -1, -1, -1], -1, 1),
            c("c1", &[1, -1, 0, 0, 0, -1], -1, 1),
            c("c2", &[1, 0, -1, 0, 0, -1], -1, 1),
            c("c3", &[1, 0, 0, -1, 0, -1], -1, 1),
            c("c4", &[1, 0, 0, 0, -1, -1], -1, 1),
        ],
        polarization: pol(&[(0, 1), (-1, 0), (-1, 0), (-1, 0), (-1, 0), (0, 0)]),
        a_lo: rat_int(2),
        a_hi: rat_int(3),
    }
}

/// dp5-a1 blown up at a general point.
pub fn dp5_a1_bl() -> SurfaceModel {
    SurfaceModel {
        id: "dp5-a1-bl".to_string(),
        basis: labels(&["h", "e1", "e2", "e3", "ex"]),
        gram: diag(&[(1, 1), (-1, 1), (-1, 1), (-1, 2), (-1, 1)]),
        curves: vec![
            c("ex", &[0, 0, 0, 0, 1], -1, 1),
            c("e1", &[0, 1, 0, 0, 0], -1, 1),
            c("e2", &[0, 0, 1, 0, 0], -1, 1),
            c("e3", &[0, 0, 0, 1, 0], -1, 2),
            c("l1", &[1, -1, 0, -1, 0], -1, 2),
            c("l2", &[1, 0, -1, -1, 0], -1, 2),
            c("l3", &[1, 0, 0, -2, 0], -1, 1),
            c("l4", &[1, -1, -1, 0, 0], -1, 1),
            c("c0", &[2, -1, -1, -2, -1], -1, 1),
            c("c1", &[1, -1, 0, 0, -1], -1, 1),
            c("c2", &[1, 0, -1, 0, -1], -1, 1),
            c("c3", &[1, 0, 0, -1, -1], -1, 2),
        ],
        polarization: pol(&[(0, 1), (-1, 0), (-1, 0), (-2, 0), (0, 0)]),
        a_lo: rat_int(2),
        a_hi: rat_int(3),
    }
}

/// dp5-a2 blown up at a general point.
pub fn dp5_a2_bl() -> SurfaceModel {
    SurfaceModel {
        id: "dp5-a2-bl".to_string(),
        basis: labels(&["h", "e1", "e2", "ex"]),
        gram: diag(&[(1, 1), (-1, 1), (-1, 3), (-1, 1)]),
        curves: vec![
            c("ex", &[0, 0, 0, 1], -1, 1),
            c("e1", &[0, 1, 0, 0], -1, 1),
            c("e2", &[0, 0, 1, 0], -1, 3),
            c("l1", &[1, 0, -2, 0], -1, 3),
            c("l2", &[1, -1, -1, 0], -1, 3),
            c("c0", &[2, -1, -3, -1], -1, 1),
            c("c1", &[1, -1, 0, -1], -1, 1),
            c("c2", &[1, 0, -1, -1], -1, 3),
        ],
        polarization: pol(&[(0, 1), (-1, 0), (-3, 0), (0, 0)]),
        a_lo: rat_int(2),
        a_hi: rat_int(3),
    }
}

/// dp6 blown up at a general point.
pub fn dp6_bl() -> SurfaceModel {
    let mut gram = diag(&[(0, 1), (0, 1), (-1, 1), (-1, 1), (-1, 1)]);
    gram[0][1] = rat_int(1);
    gram[1][0] = rat_int(1);
    SurfaceModel {
        id: "dp6-bl".to_string(),
        basis: labels(&["h1", "h2", "e1", "e2", "ex"]),
        gram,
        curves: vec![
            c("ex", &[0, 0, 0, 0, 1], -1, 1),
            c("e1", &[0, 0, 1, 0, 0], -1, 1),
            c("e2", &[0, 0, 0, 1, 0], -1, 1),
            c("l1", &[1, 0, -1, 0, 0], -1, 1),
            c("l2", &[0, 1, -1, 0, 0], -1, 1),
            c("l3", &[1, 0, 0, -1, 0], -1, 1),
            c("l4", &[0, 1, 0, -1, 0], -1, 1),
            c("c0", &[1, 1, -1, -1, -1], -1, 1),
            c("c1", &[1, 0, 0, 0, -1], -1, 1),
            c("c2", &[0, 1, 0, 0, -1], -1, 1),
        ],
        polarization: pol(&[(0, 1), (0, 1), (-1, 0), (-1, 0), (0, 0)]),
        a_lo: rat_int(1),
        a_hi: rat_int(2),
    }
}

pub const BUILTIN_IDS: [&str; 8] = [
    "dp5",
    "dp5-a1",
    "dp5-a2",
    "dp6",
    "dp5-bl",
    "dp5-a1-bl",
    "dp5-a2-bl",
    "dp6-bl",
];

pub fn get(id: &str) -> Option<SurfaceModel> {
    match id {
        "dp5" => Some(dp5()),
        "dp5-a1" => Some(dp5_a1()),
        "dp5-a2" => Some(dp5_a2()),
        "dp6" => Some(dp6()),
        "dp5-bl" => Some(dp5_bl()),
        "dp5-a1-bl" => Some(dp5_a1_bl()),
        "dp5-a2-bl" => Some(dp5_a2_bl()),
        "dp6-bl" => Some(dp6_bl()),
        _ => None,
    }
}

pub fn all() -> Vec<SurfaceModel> {
    BUILTIN_IDS.iter().map(|id| get(id).unwrap()).collect()
}
