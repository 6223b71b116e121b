//! Picard-lattice surface models and the Zariski decomposition engine.
//!
//! A `SurfaceModel` packages a basis, a rational Gram matrix, a catalog of
//! negative curves, and a polarization family D(a) valid on an a-interval.
//! `zariski_family` walks the chamber structure of D(a) - v*C symbolically;
//! every sign decision along the walk is certified by Sturm sequences on the
//! open a-interval, so a successful walk is a proof of the decomposition.

pub mod builtins;
pub mod json;

use crate::exact::rat::sign_of;
use crate::exact::sturm::IntervalSign;
use crate::exact::{rat_int, sign_on_interval, AlgNum, BiPoly, Rat, UniPoly};
use num::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DivisorClass {
    pub coords: Vec<BiPoly>,
}

impl DivisorClass {
    pub fn from_rats(coords: &[Rat]) -> Self {
        DivisorClass {
            coords: coords.iter().map(|c| BiPoly::constant(c.clone())).collect(),
        }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        DivisorClass {
            coords: coords.iter().map(|&c| BiPoly::constant(rat_int(c))).collect(),
        }
    }

    pub fn zero(rank: usize) -> Self {
        DivisorClass {
            coords: vec![BiPoly::zero(); rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, a: &Rat, v: &Rat) -> Vec<Rat> {
        self.coords.iter().map(|c| c.eval(a, v)).collect()
    }

    pub fn sub(&self, other: &DivisorClass) -> DivisorClass {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        DivisorClass {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(x, y)| x - y)
                .collect(),
        }
    }

    /// self - m*other for a polynomial multiplicity m.
    pub fn sub_scaled(&self, m: &BiPoly, other: &[Rat]) -> DivisorClass {
        assert_eq!(self.rank(), other.len(), "rank mismatch");
        DivisorClass {
            coords: self
                .coords
                .iter()
                .zip(other)
                .map(|(x, c)| x - &m.scale(c))
                .collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Curve {
    pub label: String,
    pub coords: Vec<Rat>,
    pub self_intersection: Rat,
}

/// Interval convention: a runs over (a_lo, a_hi]; all sign certificates are
/// issued on the open interval, which suffices for the closed statements by
/// continuity of the affine data.
#[derive(Clone, Debug)]
pub struct SurfaceModel {
    pub id: String,
    pub basis: Vec<String>,
    pub gram: Vec<Vec<Rat>>,
    pub curves: Vec<Curve>,
    /// Coordinates of D(a) as polynomials in a.
    pub polarization: Vec<UniPoly>,
    pub a_lo: Rat,
    pub a_hi: Rat,
}

impl SurfaceModel {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn curve_index(&self, label: &str) -> Option<usize> {
        self.curves.iter().position(|c| c.label == label)
    }

    pub fn curve_class(&self, idx: usize) -> DivisorClass {
        DivisorClass::from_rats(&self.curves[idx].coords)
    }

    pub fn polarization_class(&self) -> DivisorClass {
        DivisorClass {
            coords: self
                .polarization
                .iter()
                .map(|p| BiPoly::from_a(p.clone()))
                .collect(),
        }
    }

    pub fn a_interval(&self) -> (AlgNum, AlgNum) {
        (
            AlgNum::from(self.a_lo.clone()),
            AlgNum::from(self.a_hi.clone()),
        )
    }

    fn pairing_rr(&self, x: &[Rat], y: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || self.gram[i][j].is_zero() {
                    continue;
                }
                acc += xi * yj * &self.gram[i][j];
            }
        }
        acc
    }

    pub fn curve_pairing(&self, i: usize, j: usize) -> Rat {
        self.pairing_rr(&self.curves[i].coords, &self.curves[j].coords)
    }

    /// Checks the structural invariants: symmetric Gram, catalog
    /// self-intersections, D^2 > 0, and D nef on the catalog with D.C > 0
    /// except for curves explicitly orthogonal to the family (the blowup
    /// exceptional class has D.E = 0 identically).
    pub fn validate(&self) -> Result<(), String> {
        let n = self.rank();
        if self.gram.len() != n || self.gram.iter().any(|r| r.len() != n) {
            return Err(format!("{}: gram is not {n}x{n}", self.id));
        }
        for i in 0..n {
            for j in 0..i {
                if self.gram[i][j] != self.gram[j][i] {
                    return Err(format!("{}: gram not symmetric at ({i},{j})", self.id));
                }
            }
        }
        for c in &self.curves {
            if c.coords.len() != n {
                return Err(format!("{}: curve {} has wrong rank", self.id, c.label));
            }
            let s = self.pairing_rr(&c.coords, &c.coords);
            if s != c.self_intersection {
                return Err(format!(
                    "{}: curve {} self-intersection {} != {}",
                    self.id,
                    c.label,
                    crate::exact::fmt_rat(&s),
                    crate::exact::fmt_rat(&c.self_intersection)
                ));
            }
        }
        if self.polarization.len() != n {
            return Err(format!("{}: polarization has wrong rank", self.id));
        }
        let (lo, hi) = self.a_interval();
        let d = self.polarization_class();
        let d2 = intersect(self, &d, &d);
        certify_nonneg_a(&d2.vcoeff(0), &lo, &hi, false)
            .map_err(|e| format!("{}: D^2 not positive: {e}", self.id))?;
        for (i, c) in self.curves.iter().enumerate() {
            let dc = intersect(self, &d, &self.curve_class(i)).vcoeff(0);
            certify_nonneg_a(&dc, &lo, &hi, true)
                .map_err(|e| format!("{}: D.{} not nonnegative: {e}", self.id, c.label))?;
        }
        Ok(())
    }
}

/// Bilinear pairing of two divisor classes under the model's Gram matrix.
pub fn intersect(m: &SurfaceModel, x: &DivisorClass, y: &DivisorClass) -> BiPoly {
    assert_eq!(x.rank(), m.rank(), "rank mismatch");
    assert_eq!(y.rank(), m.rank(), "rank mismatch");
    let mut acc = BiPoly::zero();
    for (i, xi) in x.coords.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.coords.iter().enumerate() {
            if yj.is_zero() || m.gram[i][j].is_zero() {
                continue;
            }
            acc = &acc + &(xi * yj).scale(&m.gram[i][j]);
        }
    }
    acc
}

// ---------------------------------------------------------------------------
// exact linear algebra on small rational matrices

fn mat_inverse(g: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = g.len();
    let mut a: Vec<Vec<Rat>> = g.to_vec();
    let mut inv: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] /= &p;
            inv[col][j] /= &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let t = &a[col][j] * &f;
                a[r][j] -= t;
                let t = &inv[col][j] * &f;
                inv[r][j] -= t;
            }
        }
    }
    Some(inv)
}

fn det(g: &[Vec<Rat>]) -> Rat {
    let n = g.len();
    let mut a: Vec<Vec<Rat>> = g.to_vec();
    let mut sign = 1i64;
    let mut d = Rat::one();
    for col in 0..n {
        let pivot = match (col..n).find(|&r| !a[r][col].is_zero()) {
            Some(p) => p,
            None => return Rat::zero(),
        };
        if pivot != col {
            a.swap(col, pivot);
            sign = -sign;
        }
        let p = a[col][col].clone();
        d *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for j in col..n {
                let t = &a[col][j] * &f;
                a[r][j] -= t;
            }
        }
    }
    d * Rat::from_integer(sign.into())
}

/// Leading-principal-minor test: (-1)^k det_k > 0 for all k.
fn is_negative_definite(g: &[Vec<Rat>]) -> bool {
    let n = g.len();
    for k in 1..=n {
        let sub: Vec<Vec<Rat>> = (0..k).map(|i| g[i][..k].to_vec()).collect();
        let d = det(&sub);
        let want = if k % 2 == 1 { -1 } else { 1 };
        if sign_of(&d) != want {
            return false;
        }
    }
    true
}

fn support_gram(m: &SurfaceModel, support: &[usize]) -> Vec<Vec<Rat>> {
    support
        .iter()
        .map(|&i| support.iter().map(|&j| m.curve_pairing(i, j)).collect())
        .collect()
}

// ---------------------------------------------------------------------------
// fixed-value Zariski decomposition

/// Iterative orthogonal projection: accumulate the curves the current
/// positive part still meets negatively and re-project until none remain.
pub fn zariski_fixed(
    m: &SurfaceModel,
    d: &[Rat],
) -> Result<(Vec<Rat>, Vec<(String, Rat)>), String> {
    assert_eq!(d.len(), m.rank(), "rank mismatch");
    let mut support: Vec<usize> = Vec::new();
    for _round in 0..=m.curves.len() {
        let (p, mults) = project_fixed(m, d, &support)?;
        let mut grew = false;
        for i in 0..m.curves.len() {
            if support.contains(&i) {
                continue;
            }
            let pc = m.pairing_rr(&p, &m.curves[i].coords);
            if pc.is_negative() {
                support.push(i);
                grew = true;
            }
        }
        if grew {
            continue;
        }
        if mults.iter().any(|x| x.is_negative())
            || m.pairing_rr(&p, &p).is_negative()
            || (!support.is_empty() && !is_negative_definite(&support_gram(m, &support)))
        {
            return Err("outside effective cone".to_string());
        }
        let mut order: Vec<usize> = (0..support.len()).collect();
        order.sort_by_key(|&k| support[k]);
        let n = order
            .into_iter()
            .filter(|&k| !mults[k].is_zero())
            .map(|k| (m.curves[support[k]].label.clone(), mults[k].clone()))
            .collect();
        return Ok((p, n));
    }
    Err("outside effective cone".to_string())
}

fn project_fixed(
    m: &SurfaceModel,
    d: &[Rat],
    support: &[usize],
) -> Result<(Vec<Rat>, Vec<Rat>), String> {
    if support.is_empty() {
        return Ok((d.to_vec(), Vec::new()));
    }
    let g = support_gram(m, support);
    // a pseudo-effective divisor only ever accumulates curves inside the
    // negative-definite support of its negative part, so indefiniteness here
    // already certifies non-effectivity (and guarantees invertibility below)
    if !is_negative_definite(&g) {
        return Err("outside effective cone".to_string());
    }
    let inv = mat_inverse(&g).ok_or_else(|| "catalog incomplete".to_string())?;
    let b: Vec<Rat> = support
        .iter()
        .map(|&j| m.pairing_rr(d, &m.curves[j].coords))
        .collect();
    let mults: Vec<Rat> = (0..support.len())
        .map(|i| {
            let mut acc = Rat::zero();
            for (j, bj) in b.iter().enumerate() {
                acc += &inv[i][j] * bj;
            }
            acc
        })
        .collect();
    let mut p = d.to_vec();
    for (k, &ci) in support.iter().enumerate() {
        for (slot, coord) in m.curves[ci].coords.iter().enumerate() {
            let t = &mults[k] * coord;
            p[slot] -= t;
        }
    }
    Ok((p, mults))
}

// ---------------------------------------------------------------------------
// parametric Zariski decomposition

#[derive(Clone, Debug)]
pub struct Chamber {
    pub v_lo: UniPoly,
    pub v_hi: UniPoly,
    pub p: DivisorClass,
    /// (catalog index, multiplicity), multiplicity affine in (a, v).
    pub n: Vec<(usize, BiPoly)>,
}

#[derive(Clone, Debug)]
pub struct PiecewiseDecomposition {
    pub surface: String,
    pub curve: usize,
    pub chambers: Vec<Chamber>,
}

impl PiecewiseDecomposition {
    pub fn tau(&self) -> UniPoly {
        self.chambers.last().expect("nonempty").v_hi.clone()
    }

    /// Evaluates the symbolic decomposition at a rational point; None when v
    /// lies outside [0, tau(a)].
    pub fn eval(
        &self,
        m: &SurfaceModel,
        a: &Rat,
        v: &Rat,
    ) -> Option<(Vec<Rat>, Vec<(String, Rat)>)> {
        for ch in &self.chambers {
            if &ch.v_lo.eval(a) <= v && v <= &ch.v_hi.eval(a) {
                let p = ch.p.eval(a, v);
                let mut order: Vec<usize> = (0..ch.n.len()).collect();
                order.sort_by_key(|&k| ch.n[k].0);
                let n = order
                    .into_iter()
                    .map(|k| (m.curves[ch.n[k].0].label.clone(), ch.n[k].1.eval(a, v)))
                    .filter(|(_, x)| !x.is_zero())
                    .collect();
                return Some((p, n));
            }
        }
        None
    }
}

/// b = f(a) + s*v with s a rational constant; the chamber walk only ever
/// meets intersection numbers of this shape because the Gram matrix is
/// constant and D(a) is polynomial in a alone.
fn affine_parts(b: &BiPoly) -> Result<(UniPoly, Rat), String> {
    match b.vdeg() {
        None => Ok((UniPoly::zero(), Rat::zero())),
        Some(0) => Ok((b.vcoeff(0), Rat::zero())),
        Some(1) => {
            let slope = b.vcoeff(1);
            if slope.degree() == Some(0) {
                Ok((b.vcoeff(0), slope.coeff(0)))
            } else {
                Err("v-slope not constant".to_string())
            }
        }
        _ => Err("not affine in v".to_string()),
    }
}

#[derive(PartialEq, Eq, Debug, Clone, Copy)]
enum Cmp {
    Lt,
    Eq,
    Gt,
}

/// A sign decision during the chamber walk can fail because the deciding
/// polynomial changes sign inside the a-interval; the polynomial is carried
/// so the interval can be split at its roots and the walk retried per region.
#[derive(Debug)]
pub enum WalkError {
    Ambiguous(UniPoly),
    Fatal(String),
}

impl WalkError {
    fn message(self) -> String {
        match self {
            WalkError::Ambiguous(q) => format!(
                "chamber sign ambiguous on a-interval: {} changes sign",
                q.render("a")
            ),
            WalkError::Fatal(s) => s,
        }
    }
}

impl From<String> for WalkError {
    fn from(s: String) -> Self {
        WalkError::Fatal(s)
    }
}

impl std::fmt::Display for WalkError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WalkError::Ambiguous(q) => write!(f, "sign of {} ambiguous", q.render("a")),
            WalkError::Fatal(s) => f.write_str(s),
        }
    }
}

/// Certified comparison of two a-polynomials on the open interval.
fn cmp_on_interval(
    f: &UniPoly,
    g: &UniPoly,
    lo: &AlgNum,
    hi: &AlgNum,
) -> Result<Cmp, WalkError> {
    let diff = f - g;
    if diff.is_zero() {
        return Ok(Cmp::Eq);
    }
    match sign_on_interval(&diff, lo, hi)? {
        IntervalSign::AllPositive => Ok(Cmp::Gt),
        IntervalSign::AllNegative => Ok(Cmp::Lt),
        IntervalSign::HasZero(_, _) => Err(WalkError::Ambiguous(diff)),
    }
}

/// Nonnegativity certificate on the open a-interval. `allow_zero` accepts an
/// identically vanishing polynomial (nef equalities, entering walls).
fn certify_nonneg_a(
    q: &UniPoly,
    lo: &AlgNum,
    hi: &AlgNum,
    allow_zero: bool,
) -> Result<(), WalkError> {
    if q.is_zero() {
        if allow_zero {
            return Ok(());
        }
        return Err(WalkError::Fatal("identically zero".to_string()));
    }
    match sign_on_interval(q, lo, hi)? {
        IntervalSign::AllPositive => Ok(()),
        IntervalSign::AllNegative => Err(WalkError::Fatal(format!(
            "{} is negative",
            q.render("a")
        ))),
        IntervalSign::HasZero(_, _) => Err(WalkError::Ambiguous(q.clone())),
    }
}

fn project_family(
    m: &SurfaceModel,
    d: &DivisorClass,
    support: &[usize],
) -> Result<(DivisorClass, Vec<BiPoly>), String> {
    if support.is_empty() {
        return Ok((d.clone(), Vec::new()));
    }
    let g = support_gram(m, support);
    let inv = mat_inverse(&g).ok_or_else(|| "catalog incomplete".to_string())?;
    let b: Vec<BiPoly> = support
        .iter()
        .map(|&j| intersect(m, d, &m.curve_class(j)))
        .collect();
    let mults: Vec<BiPoly> = (0..support.len())
        .map(|i| {
            let mut acc = BiPoly::zero();
            for (j, bj) in b.iter().enumerate() {
                if !inv[i][j].is_zero() {
                    acc = &acc + &bj.scale(&inv[i][j]);
                }
            }
            acc
        })
        .collect();
    let mut p = d.clone();
    for (k, &ci) in support.iter().enumerate() {
        p = p.sub_scaled(&mults[k], &m.curves[ci].coords);
    }
    Ok((p, mults))
}

/// Root of P(v)^2 = 0 beyond v_lo on the current chamber; P^2 is quadratic in
/// v with a constant leading coefficient, so the root is a polynomial in a
/// exactly when the discriminant is a perfect square.
fn tau_in_chamber(
    p2: &BiPoly,
    v_lo: &UniPoly,
    lo: &AlgNum,
    hi: &AlgNum,
) -> Result<UniPoly, WalkError> {
    match p2.vdeg() {
        Some(2) => {
            let c2 = p2.vcoeff(2);
            if c2.degree() != Some(0) {
                return Err(WalkError::Fatal(
                    "quadratic v-coefficient of P^2 not constant".to_string(),
                ));
            }
            let c2 = c2.coeff(0);
            let c1 = p2.vcoeff(1);
            let c0 = p2.vcoeff(0);
            let disc = &(&c1 * &c1) - &c0.scale(&(rat_int(4) * &c2));
            let root = disc.sqrt_exact().ok_or_else(|| {
                WalkError::Fatal(
                    "pseudo-effective threshold is not polynomial in a (discriminant not a square)"
                        .to_string(),
                )
            })?;
            let half = Rat::one() / (&c2 + &c2);
            let r1 = (&(-c1.clone()) + &root).scale(&half);
            let r2 = (&(-c1.clone()) - &root).scale(&half);
            let mut best: Option<UniPoly> = None;
            for r in [r1, r2] {
                if cmp_on_interval(&r, v_lo, lo, hi)? == Cmp::Lt {
                    continue;
                }
                best = Some(match best {
                    None => r,
                    Some(b) => {
                        if cmp_on_interval(&r, &b, lo, hi)? == Cmp::Lt {
                            r
                        } else {
                            b
                        }
                    }
                });
            }
            best.ok_or_else(|| WalkError::Fatal("P^2 has no root beyond the chamber".to_string()))
        }
        Some(1) => {
            let slope = p2.vcoeff(1);
            if slope.degree() != Some(0) {
                return Err(WalkError::Fatal(
                    "linear v-coefficient of P^2 not constant".to_string(),
                ));
            }
            let r = p2.vcoeff(0).scale(&(-Rat::one() / slope.coeff(0)));
            if cmp_on_interval(&r, v_lo, lo, hi)? == Cmp::Lt {
                return Err(WalkError::Fatal("P^2 root precedes the chamber".to_string()));
            }
            Ok(r)
        }
        _ => Err(WalkError::Fatal("P^2 degenerate in v".to_string())),
    }
}

/// Full chamber decomposition of D(a) - v*C over v in [0, tau(a)], valid on
/// the whole a-interval of the model. Errors with a split demand when the
/// chamber structure changes inside the interval (see `zariski_regions`).
pub fn zariski_family(m: &SurfaceModel, c: &str) -> Result<PiecewiseDecomposition, String> {
    let ci = m
        .curve_index(c)
        .ok_or_else(|| format!("unknown curve {c} on {}", m.id))?;
    let (lo, hi) = m.a_interval();
    let chambers = walk(m, ci, &lo, &hi).map_err(|e| e.message())?;
    Ok(PiecewiseDecomposition {
        surface: m.id.clone(),
        curve: ci,
        chambers,
    })
}

/// A chamber decomposition valid on a sub-interval of a.
#[derive(Clone, Debug)]
pub struct DecompositionRegion {
    pub a_lo: AlgNum,
    pub a_hi: AlgNum,
    pub chambers: Vec<Chamber>,
}

impl DecompositionRegion {
    pub fn eval(
        &self,
        m: &SurfaceModel,
        a: &Rat,
        v: &Rat,
    ) -> Option<(Vec<Rat>, Vec<(String, Rat)>)> {
        let aa = AlgNum::from(a.clone());
        if aa.cmp_exact(&self.a_lo) == std::cmp::Ordering::Less
            || aa.cmp_exact(&self.a_hi) == std::cmp::Ordering::Greater
        {
            return None;
        }
        let pd = PiecewiseDecomposition {
            surface: m.id.clone(),
            curve: 0,
            chambers: self.chambers.clone(),
        };
        pd.eval(m, a, v)
    }
}

/// Chamber decompositions covering the full a-interval: where the wall order
/// changes (two walls cross at an interior a), the interval is split at the
/// exact crossing and each region walked separately. For every built-in
/// (surface, curve) pair this terminates with finitely many regions.
pub fn zariski_regions(m: &SurfaceModel, c: &str) -> Result<Vec<DecompositionRegion>, String> {
    let ci = m
        .curve_index(c)
        .ok_or_else(|| format!("unknown curve {c} on {}", m.id))?;
    let (lo, hi) = m.a_interval();
    let mut out = Vec::new();
    let mut queue = vec![(lo, hi)];
    let mut splits = 0usize;
    while let Some((lo, hi)) = queue.pop() {
        match walk(m, ci, &lo, &hi) {
            Ok(chambers) => out.push(DecompositionRegion {
                a_lo: lo,
                a_hi: hi,
                chambers,
            }),
            Err(WalkError::Fatal(e)) => return Err(e),
            Err(WalkError::Ambiguous(q)) => {
                splits += 1;
                if splits > 64 {
                    return Err("region splitting did not terminate".to_string());
                }
                let roots = crate::exact::roots_exact_in(&q, &lo, &hi)?;
                if roots.is_empty() {
                    return Err(format!(
                        "ambiguous sign of {} but no interior root found",
                        q.render("a")
                    ));
                }
                let mut cuts = vec![lo.clone()];
                cuts.extend(roots);
                cuts.push(hi.clone());
                for w in cuts.windows(2) {
                    if w[0].cmp_exact(&w[1]) == std::cmp::Ordering::Less {
                        queue.push((w[0].clone(), w[1].clone()));
                    }
                }
            }
        }
    }
    out.sort_by(|x, y| x.a_lo.cmp_exact(&y.a_lo));
    Ok(out)
}

fn walk(
    m: &SurfaceModel,
    ci: usize,
    lo: &AlgNum,
    hi: &AlgNum,
) -> Result<Vec<Chamber>, WalkError> {
    let (lo, hi) = (lo.clone(), hi.clone());
    let d = m
        .polarization_class()
        .sub_scaled(&BiPoly::v(), &m.curves[ci].coords);
    let mut support: Vec<usize> = Vec::new();
    let mut v_lo = UniPoly::zero();
    let mut chambers: Vec<Chamber> = Vec::new();
    for _round in 0..=m.curves.len() {
        let (p, mults) = project_family(m, &d, &support)?;
        for (k, &si) in support.iter().enumerate() {
            if !intersect(m, &p, &m.curve_class(si)).is_zero() {
                return Err(WalkError::Fatal(format!(
                    "projection not orthogonal to {}",
                    m.curves[si].label
                )));
            }
            let (_, slope) = affine_parts(&mults[k]).map_err(WalkError::Fatal)?;
            if slope.is_negative() {
                return Err(WalkError::Fatal(format!(
                    "unsupported: multiplicity of {} decreases in v",
                    m.curves[si].label
                )));
            }
        }
        if !support.is_empty() && !is_negative_definite(&support_gram(m, &support)) {
            return Err(WalkError::Fatal(
                "negative part support not negative definite".to_string(),
            ));
        }
        // walls: catalog curves whose intersection with P decreases to zero
        let mut best: Option<(UniPoly, Vec<usize>)> = None;
        let mut immediate: Vec<usize> = Vec::new();
        for t in 0..m.curves.len() {
            if support.contains(&t) {
                continue;
            }
            let w = intersect(m, &p, &m.curve_class(t));
            let (alpha, slope) = affine_parts(&w).map_err(WalkError::Fatal)?;
            if !slope.is_negative() {
                continue;
            }
            let root = alpha.scale(&(-Rat::one() / &slope));
            match cmp_on_interval(&root, &v_lo, &lo, &hi)? {
                Cmp::Lt => continue,
                Cmp::Eq => {
                    immediate.push(t);
                    continue;
                }
                Cmp::Gt => {}
            }
            best = Some(match best {
                None => (root, vec![t]),
                Some((b, mut ts)) => match cmp_on_interval(&root, &b, &lo, &hi)? {
                    Cmp::Lt => (root, vec![t]),
                    Cmp::Eq => {
                        ts.push(t);
                        (b, ts)
                    }
                    Cmp::Gt => (b, ts),
                },
            });
        }
        if !immediate.is_empty() {
            // a wall sits exactly at the current lower boundary: the curves
            // enter the support without producing a chamber of width zero
            support.extend(immediate);
            continue;
        }
        let p2 = intersect(m, &p, &p);
        let chamber_n: Vec<(usize, BiPoly)> = support
            .iter()
            .cloned()
            .zip(mults.iter().cloned())
            .collect();
        match best {
            Some((wall, entering)) => {
                let q = p2.eval_v(&wall);
                let ends_at_tau = if q.is_zero() {
                    true
                } else {
                    match sign_on_interval(&q, &lo, &hi)? {
                        IntervalSign::AllPositive => false,
                        IntervalSign::AllNegative => true,
                        // tau crosses the wall inside the a-interval
                        IntervalSign::HasZero(_, _) => {
                            return Err(WalkError::Ambiguous(q.clone()))
                        }
                    }
                };
                if !ends_at_tau {
                    certify_chamber(m, &p, &chamber_n, &v_lo, &wall, &lo, &hi)?;
                    chambers.push(Chamber {
                        v_lo: v_lo.clone(),
                        v_hi: wall.clone(),
                        p,
                        n: chamber_n,
                    });
                    v_lo = wall;
                    support.extend(entering);
                    continue;
                }
                let tau = if q.is_zero() {
                    wall
                } else {
                    tau_in_chamber(&p2, &v_lo, &lo, &hi)?
                };
                certify_chamber(m, &p, &chamber_n, &v_lo, &tau, &lo, &hi)?;
                chambers.push(Chamber {
                    v_lo,
                    v_hi: tau,
                    p,
                    n: chamber_n,
                });
                return Ok(chambers);
            }
            None => {
                let tau = tau_in_chamber(&p2, &v_lo, &lo, &hi)?;
                certify_chamber(m, &p, &chamber_n, &v_lo, &tau, &lo, &hi)?;
                chambers.push(Chamber {
                    v_lo,
                    v_hi: tau,
                    p,
                    n: chamber_n,
                });
                return Ok(chambers);
            }
        }
    }
    Err(WalkError::Fatal("chamber walk did not terminate".to_string()))
}

/// Chamber invariants: P nef against the whole catalog and all negative-part
/// multiplicities nonnegative. Everything in sight is affine in v, so the two
/// v-corners certify the trapezoid.
fn certify_chamber(
    m: &SurfaceModel,
    p: &DivisorClass,
    n: &[(usize, BiPoly)],
    v_lo: &UniPoly,
    v_hi: &UniPoly,
    lo: &AlgNum,
    hi: &AlgNum,
) -> Result<(), WalkError> {
    if cmp_on_interval(v_hi, v_lo, lo, hi)? != Cmp::Gt {
        return Err(WalkError::Fatal("empty chamber".to_string()));
    }
    let ctx = |label: &str, e: WalkError| match e {
        WalkError::Fatal(s) => WalkError::Fatal(format!("{label}: {s}")),
        amb => amb,
    };
    for t in 0..m.curves.len() {
        let w = intersect(m, p, &m.curve_class(t));
        for corner in [v_lo, v_hi] {
            certify_nonneg_a(&w.eval_v(corner), lo, hi, true)
                .map_err(|e| ctx(&format!("P.{} fails nef certificate", m.curves[t].label), e))?;
        }
    }
    for (idx, mult) in n {
        for corner in [v_lo, v_hi] {
            certify_nonneg_a(&mult.eval_v(corner), lo, hi, true).map_err(|e| {
                ctx(
                    &format!("multiplicity of {} not nonnegative", m.curves[*idx].label),
                    e,
                )
            })?;
        }
    }
    Ok(())
}

/// tau(a): the largest v with D - vC pseudo-effective, certified by the
/// chamber walk ending at P(tau)^2 = 0.
pub fn pseff_threshold(m: &SurfaceModel, c: &str) -> Result<UniPoly, String> {
    Ok(zariski_family(m, c)?.tau())
}

#[cfg(test)]
mod tests {
    use super::builtins;
    use super::*;
    use crate::exact::rat;

    #[test]
    fn builtins_validate() {
        for m in builtins::all() {
            m.validate().unwrap();
        }
    }

    #[test]
    fn intersection_table_entries() {
        let m = builtins::dp5_a1();
        let pair = |x: &str, y: &str| {
            m.curve_pairing(m.curve_index(x).unwrap(), m.curve_index(y).unwrap())
        };
        // the A1 contraction table
        assert_eq!(pair("e3", "l1"), rat(1, 2));
        assert_eq!(pair("e3", "l2"), rat(1, 2));
        assert_eq!(pair("e3", "l3"), rat(1, 1));
        assert_eq!(pair("e3", "l4"), rat(0, 1));
        assert_eq!(pair("l1", "l2"), rat(1, 2));
        assert_eq!(pair("l1", "l1"), rat(-1, 2));
        assert_eq!(pair("l3", "l4"), rat(1, 1));
        assert_eq!(pair("e1", "l1"), rat(1, 1));
        assert_eq!(pair("e1", "l4"), rat(1, 1));
        let m2 = builtins::dp5_a2();
        let pair2 = |x: &str, y: &str| {
            m2.curve_pairing(m2.curve_index(x).unwrap(), m2.curve_index(y).unwrap())
        };
        assert_eq!(pair2("e2", "l1"), rat(2, 3));
        assert_eq!(pair2("e2", "l2"), rat(1, 3));
        assert_eq!(pair2("l1", "l2"), rat(1, 3));
        assert_eq!(pair2("e1", "l2"), rat(1, 1));
        assert_eq!(pair2("e1", "l1"), rat(0, 1));
    }

    #[test]
    fn polarization_squares() {
        // D^2 = a^2 - 4 on all three dp5 models, 2a^2 - 2 on dp6
        for id in ["dp5", "dp5-a1", "dp5-a2"] {
            let m = builtins::get(id).unwrap();
            let d = m.polarization_class();
            let d2 = intersect(&m, &d, &d);
            assert_eq!(d2.vcoeff(0), UniPoly::from_i64(&[-4, 0, 1]), "{id}");
        }
        let m = builtins::dp6();
        let d = m.polarization_class();
        assert_eq!(
            intersect(&m, &d, &d).vcoeff(0),
            UniPoly::from_i64(&[-2, 0, 2])
        );
        // bilinearity against zero
        assert!(intersect(&m, &d, &DivisorClass::zero(4)).is_zero());
    }

    fn d_at(m: &SurfaceModel, a: &Rat) -> Vec<Rat> {
        m.polarization.iter().map(|p| p.eval(a)).collect()
    }

    #[test]
    fn zariski_fixed_examples() {
        // dp5, a = 3, d = D - (3/2)e1: v = 3/2 sits in the chamber [a-2, 2a-4]
        // and N = (v + 2 - a)(l12 + l13 + l14) = (1/2)(l12 + l13 + l14)
        let m = builtins::dp5();
        let a = rat(3, 1);
        let mut d = d_at(&m, &a);
        d[1] -= rat(3, 2);
        let (p, n) = zariski_fixed(&m, &d).unwrap();
        assert_eq!(
            n,
            vec![
                ("l12".to_string(), rat(1, 2)),
                ("l13".to_string(), rat(1, 2)),
                ("l14".to_string(), rat(1, 2)),
            ]
        );
        for c in &m.curves {
            assert!(!m.pairing_rr(&p, &c.coords).is_negative());
        }
        // ample divisor decomposes trivially
        let (p, n) = zariski_fixed(&m, &d_at(&m, &a)).unwrap();
        assert_eq!(p, d_at(&m, &a));
        assert!(n.is_empty());
        // dp6, a = 3/2, d = D - (5/4)l1: N = (3/4)l4 + (1/4)e1
        let m = builtins::dp6();
        let a = rat(3, 2);
        let mut d = d_at(&m, &a);
        let l1 = &m.curves[m.curve_index("l1").unwrap()].coords.clone();
        for (slot, x) in l1.iter().enumerate() {
            d[slot] -= rat(5, 4) * x;
        }
        let (_, n) = zariski_fixed(&m, &d).unwrap();
        assert_eq!(
            n,
            vec![("e1".to_string(), rat(1, 4)), ("l4".to_string(), rat(3, 4))]
        );
        // beyond the pseudo-effective threshold
        let m = builtins::dp5();
        let mut d = d_at(&m, &rat(5, 2));
        d[1] -= rat(3, 1); // v = 3 > tau = 1
        assert_eq!(
            zariski_fixed(&m, &d).unwrap_err(),
            "outside effective cone"
        );
    }

    #[test]
    fn zariski_family_dp5_e1() {
        let m = builtins::dp5();
        let fam = zariski_family(&m, "e1").unwrap();
        assert_eq!(fam.chambers.len(), 2);
        assert_eq!(fam.chambers[0].v_lo, UniPoly::zero());
        assert_eq!(fam.chambers[0].v_hi, UniPoly::from_i64(&[-2, 1]));
        assert!(fam.chambers[0].n.is_empty());
        assert_eq!(fam.tau(), UniPoly::from_i64(&[-4, 2]));
        // second chamber: N = (v + 2 - a)(l12 + l13 + l14)
        let want = BiPoly::affine_i64(2, -1, 1);
        assert_eq!(fam.chambers[1].n.len(), 3);
        for (idx, mult) in &fam.chambers[1].n {
            assert!(m.curves[*idx].label.starts_with("l1"));
            assert_eq!(mult, &want);
        }
        // P^2 on the second chamber is 2(2a - v - 4)(a - v - 1)
        let p2 = intersect(&m, &fam.chambers[1].p, &fam.chambers[1].p);
        let f1 = BiPoly::affine_i64(-4, 2, -1);
        let f2 = BiPoly::affine_i64(-1, 1, -1);
        assert_eq!(p2, (&f1 * &f2).scale(&rat(2, 1)));
    }

    #[test]
    fn zariski_family_dp6() {
        let m = builtins::dp6();
        let fam = zariski_family(&m, "e1").unwrap();
        assert_eq!(fam.chambers.len(), 2);
        assert_eq!(fam.chambers[0].v_hi, UniPoly::from_i64(&[-1, 1]));
        assert_eq!(fam.tau(), UniPoly::from_i64(&[-2, 2]));
        // N = (v + 1 - a)(l1 + l2) on the upper chamber
        let want = BiPoly::affine_i64(1, -1, 1);
        let labels: Vec<&str> = fam.chambers[1]
            .n
            .iter()
            .map(|(i, mult)| {
                assert_eq!(mult, &want);
                m.curves[*i].label.as_str()
            })
            .collect();
        assert_eq!(labels, vec!["l1", "l2"]);
        let fam = zariski_family(&m, "l1").unwrap();
        assert_eq!(fam.chambers.len(), 3);
        assert_eq!(fam.chambers[1].v_hi, UniPoly::one());
        assert_eq!(fam.tau(), UniPoly::var());
    }

    #[test]
    fn blowup_threshold() {
        // dp5-bl, C = exceptional: tau = (3a - 4)/2
        let m = builtins::dp5_bl();
        let tau = pseff_threshold(&m, "ex").unwrap();
        assert_eq!(tau, UniPoly::new(vec![rat(-2, 1), rat(3, 2)]));
        let fam = zariski_family(&m, "ex").unwrap();
        assert_eq!(fam.chambers.len(), 3);
        assert_eq!(fam.chambers[0].v_hi, UniPoly::from_i64(&[-4, 2]));
        assert_eq!(fam.chambers[1].v_hi, UniPoly::from_i64(&[-1, 1]));
        // middle chamber: N = (v + 4 - 2a)c0
        assert_eq!(fam.chambers[1].n.len(), 1);
        let (idx, mult) = &fam.chambers[1].n[0];
        assert_eq!(m.curves[*idx].label, "c0");
        assert_eq!(mult, &BiPoly::affine_i64(4, -2, 1));
    }

    #[test]
    fn every_pair_walks_and_starts_trivial() {
        for m in builtins::all() {
            for c in &m.curves {
                let regions = zariski_regions(&m, &c.label)
                    .unwrap_or_else(|e| panic!("{} / {}: {e}", m.id, c.label));
                assert!(!regions.is_empty());
                for r in &regions {
                    // N(0) = 0: an ample (or nef-boundary) divisor is its own
                    // positive part at v = 0
                    let first = &r.chambers[0];
                    assert_eq!(first.v_lo, UniPoly::zero());
                    for (_, mult) in &first.n {
                        assert!(
                            mult.eval_v(&UniPoly::zero()).is_zero(),
                            "{} / {}",
                            m.id,
                            c.label
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn region_split_when_walls_cross() {
        // dp5-a1, C = l1: the walls v = 1 (from e1) and v = 2a - 4 (from l2)
        // cross at a = 5/2, so the full-interval walk must refuse and the
        // region walk must split there
        let m = builtins::dp5_a1();
        assert!(zariski_family(&m, "l1").is_err());
        let regions = zariski_regions(&m, "l1").unwrap();
        assert_eq!(regions.len(), 2);
        assert_eq!(regions[0].a_hi, AlgNum::from(rat(5, 2)));
        assert_eq!(regions[1].a_lo, AlgNum::from(rat(5, 2)));
    }

    struct XorShift(u64);
    impl XorShift {
        fn next(&mut self) -> u64 {
            let mut x = self.0;
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            self.0 = x;
            x
        }
    }

    #[test]
    fn family_matches_fixed_at_random_points() {
        let mut rng = XorShift(0x9e3779b97f4a7c15);
        for m in builtins::all() {
            for c in &m.curves {
                let regions = zariski_regions(&m, &c.label).unwrap();
                for _ in 0..25 {
                    // rational a strictly inside (a_lo, a_hi]
                    let k = (rng.next() % 96) + 1;
                    let a = &m.a_lo + (&m.a_hi - &m.a_lo) * rat(k as i64, 97);
                    let region = regions
                        .iter()
                        .find(|r| {
                            let aa = AlgNum::from(a.clone());
                            aa.cmp_exact(&r.a_lo) != std::cmp::Ordering::Less
                                && aa.cmp_exact(&r.a_hi) != std::cmp::Ordering::Greater
                        })
                        .unwrap();
                    let tau = region.chambers.last().unwrap().v_hi.eval(&a);
                    let j = rng.next() % 98;
                    let v = &tau * rat(j as i64, 97);
                    let (p_fam, n_fam) = region.eval(&m, &a, &v).unwrap();
                    let mut d: Vec<Rat> = m.polarization.iter().map(|q| q.eval(&a)).collect();
                    for (slot, x) in c.coords.iter().enumerate() {
                        d[slot] -= &v * x;
                    }
                    let (p_fix, n_fix) = zariski_fixed(&m, &d)
                        .unwrap_or_else(|e| panic!("{} / {} at a={a} v={v}: {e}", m.id, c.label));
                    assert_eq!(p_fam, p_fix, "{} / {}", m.id, c.label);
                    assert_eq!(n_fam, n_fix, "{} / {}", m.id, c.label);
                }
            }
        }
    }

    #[test]
    fn chamber_calculus_identities() {
        for m in builtins::all() {
            for c in &m.curves {
                let cc = m.curve_class(m.curve_index(&c.label).unwrap());
                for region in zariski_regions(&m, &c.label).unwrap() {
                    let mut prev: Option<(BiPoly, UniPoly)> = None;
                    for ch in &region.chambers {
                        let p2 = intersect(&m, &ch.p, &ch.p);
                        // d/dv P(v)^2 = -2 P(v).C on every chamber
                        let pc = intersect(&m, &ch.p, &cc);
                        assert_eq!(p2.ddv(), (&pc + &pc).scale(&rat(-1, 1)));
                        // volume continuity at the chamber seam
                        if let Some((q2, wall)) = prev {
                            assert_eq!(p2.eval_v(&wall), q2.eval_v(&wall));
                        }
                        prev = Some((p2, ch.v_hi.clone()));
                    }
                    // P(tau)^2 = 0
                    let (p2, tau) = prev.unwrap();
                    assert!(p2.eval_v(&tau).is_zero(), "{} / {}", m.id, c.label);
                }
            }
        }
    }

    #[test]
    fn json_roundtrip() {
        for m in builtins::all() {
            let s = super::json::model_to_json(&m);
            let back = super::json::model_from_json(&s).unwrap();
            assert_eq!(back.id, m.id);
            assert_eq!(back.gram, m.gram);
            assert_eq!(back.polarization, m.polarization);
            assert_eq!(back.curves.len(), m.curves.len());
        }
    }
}
