//! The discriminant curve of the conic bundle eta on P^1 x P^1, built from
//! the closed-form bidegree (2,3) polynomial in (lambda, a_i, b_i), and an
//! exact smoothness decision through resultant elimination in the four
//! affine charts.

use num::{One, Zero};
use serde::Serialize;

use crate::exact::{fmt_rat, isolate_roots, BiPoly, Rat, UniPoly};

/// A bihomogeneous polynomial of bidegree (2, 3) on P^1 x P^1:
/// `c[i][j]` is the coefficient of y0^(2-i) y1^i z0^(3-j) z1^j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiHomPoly {
    pub c: [[Rat; 4]; 3],
}

impl BiHomPoly {
    pub fn is_zero(&self) -> bool {
        self.c.iter().flatten().all(|x| x.is_zero())
    }

    pub fn eval(&self, y0: &Rat, y1: &Rat, z0: &Rat, z1: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for i in 0..3 {
            for j in 0..4 {
                let mut term = self.c[i][j].clone();
                for _ in 0..(2 - i) {
                    term *= y0;
                }
                for _ in 0..i {
                    term *= y1;
                }
                for _ in 0..(3 - j) {
                    term *= z0;
                }
                for _ in 0..j {
                    term *= z1;
                }
                acc += term;
            }
        }
        acc
    }

    /// Dehomogenization on the chart where the given coordinates are 1;
    /// the result lives in the BiPoly variables (a = the other y, v = the
    /// other z).
    pub fn chart(&self, y_one: usize, z_one: usize) -> BiPoly {
        let mut v_coeffs: Vec<Vec<Rat>> = vec![vec![Rat::zero(); 3]; 4];
        for i in 0..3 {
            for j in 0..4 {
                let si = if y_one == 0 { i } else { 2 - i };
                let tj = if z_one == 0 { j } else { 3 - j };
                v_coeffs[tj][si] = self.c[i][j].clone();
            }
        }
        BiPoly::new(
            v_coeffs
                .into_iter()
                .map(|cs| UniPoly::new(cs))
                .collect(),
        )
    }
}

pub const CHART_NAMES: [&str; 4] = ["y0=1,z0=1", "y0=1,z1=1", "y1=1,z0=1", "y1=1,z1=1"];

pub fn charts(p: &BiHomPoly) -> [(String, BiPoly); 4] {
    [
        (CHART_NAMES[0].into(), p.chart(0, 0)),
        (CHART_NAMES[1].into(), p.chart(0, 1)),
        (CHART_NAMES[2].into(), p.chart(1, 0)),
        (CHART_NAMES[3].into(), p.chart(1, 1)),
    ]
}

/// The printed discriminant polynomial of eta for the curve parameters
/// (lambda; a0, a1, a2; b1, b2, b3).
pub fn discriminant_poly(
    lambda: &Rat,
    a: &[Rat; 3],
    b: &[Rat; 3],
) -> Result<BiHomPoly, String> {
    let one = Rat::one();
    if lambda.is_zero() || lambda == &one || lambda == &(-one.clone()) {
        return Err("degenerate elliptic curve parameter".into());
    }
    if a.iter().all(|x| x.is_zero()) || b.iter().all(|x| x.is_zero()) {
        return Err("degenerate line parameters".into());
    }
    let l = lambda.clone();
    let l3 = &l * &l * &l;
    let sq = |x: &Rat| x * x;
    let (a0, a1, a2) = (&a[0], &a[1], &a[2]);
    let (b1, b2, b3) = (&b[0], &b[1], &b[2]);
    let c = [
        [
            &l * (sq(b1) - &l * sq(b2) + &l * sq(b3)),
            -(&l3 * sq(b2) + &l3 * sq(b3) + sq(b1)),
            -(&l3 * sq(b1) - sq(b2) + sq(b3)),
            -(&l3 * sq(b1) - sq(b2) + sq(b3)),
        ],
        [
            -Rat::from_integer(2.into()) * &l * (a1 * b1 - &l * a2 * b2),
            Rat::from_integer(2.into()) * (&l3 * a2 * b2 + a1 * b1),
            Rat::from_integer(2.into()) * (&l3 * a1 * b1 - a2 * b2),
            -Rat::from_integer(2.into()) * &l * (&l * a1 * b1 + a2 * b2),
        ],
        [
            -&l * (&l * sq(a2) + sq(a0) - sq(a1)),
            -(&l3 * sq(a2) + sq(a0) + sq(a1)),
            &l3 * sq(a0) - &l3 * sq(a1) + sq(a2),
            &l * (&l * sq(a0) + &l * sq(a1) + sq(a2)),
        ],
    ];
    Ok(BiHomPoly { c })
}

// ---- bivariate elimination helpers ----

fn vdeg(p: &BiPoly) -> Option<usize> {
    p.vdeg()
}

fn dda(p: &BiPoly) -> BiPoly {
    let n = vdeg(p).map_or(0, |d| d + 1);
    BiPoly::new((0..n).map(|j| p.vcoeff(j).derivative()).collect())
}

fn shift_v(p: &BiPoly, k: usize) -> BiPoly {
    let n = vdeg(p).map_or(0, |d| d + 1);
    let mut out = vec![UniPoly::zero(); k];
    out.extend((0..n).map(|j| p.vcoeff(j)));
    BiPoly::new(out)
}

fn transpose(p: &BiPoly) -> BiPoly {
    let n = vdeg(p).map_or(0, |d| d + 1);
    let adeg = (0..n)
        .filter_map(|j| p.vcoeff(j).degree())
        .max()
        .unwrap_or(0);
    BiPoly::new(
        (0..=adeg)
            .map(|i| UniPoly::new((0..n).map(|j| p.vcoeff(j).coeff(i)).collect()))
            .collect(),
    )
}

fn det(m: &[Vec<UniPoly>]) -> UniPoly {
    let n = m.len();
    if n == 0 {
        return UniPoly::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = UniPoly::zero();
    for (k, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<UniPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != k)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let cof = entry * &det(&minor);
        if k % 2 == 0 {
            acc = &acc + &cof;
        } else {
            acc = &acc - &cof;
        }
    }
    acc
}

fn unipoly_pow(p: &UniPoly, k: usize) -> UniPoly {
    let mut acc = UniPoly::one();
    for _ in 0..k {
        acc = &acc * p;
    }
    acc
}

/// Sylvester resultant with respect to the v variable; the result is a
/// polynomial in a.
fn res_v(p: &BiPoly, q: &BiPoly) -> UniPoly {
    let m = vdeg(p).expect("nonzero");
    let n = vdeg(q).expect("nonzero");
    if m == 0 && n == 0 {
        return UniPoly::one();
    }
    if m == 0 {
        return unipoly_pow(&p.vcoeff(0), n);
    }
    if n == 0 {
        return unipoly_pow(&q.vcoeff(0), m);
    }
    let size = m + n;
    let mut rows: Vec<Vec<UniPoly>> = Vec::with_capacity(size);
    for r in 0..n {
        let mut row = vec![UniPoly::zero(); size];
        for k in 0..=m {
            row[r + k] = p.vcoeff(m - k);
        }
        rows.push(row);
    }
    for r in 0..m {
        let mut row = vec![UniPoly::zero(); size];
        for k in 0..=n {
            row[r + k] = q.vcoeff(n - k);
        }
        rows.push(row);
    }
    det(&rows)
}

fn content_a(p: &BiPoly) -> UniPoly {
    let n = vdeg(p).map_or(0, |d| d + 1);
    let mut g = UniPoly::zero();
    for j in 0..n {
        let c = p.vcoeff(j);
        if c.is_zero() {
            continue;
        }
        g = if g.is_zero() { c } else { g.gcd(&c) };
    }
    g
}

fn div_content(p: &BiPoly, c: &UniPoly) -> BiPoly {
    let n = vdeg(p).map_or(0, |d| d + 1);
    BiPoly::new(
        (0..n)
            .map(|j| {
                let v = p.vcoeff(j);
                if v.is_zero() {
                    v
                } else {
                    v.exact_div(c).expect("content divides")
                }
            })
            .collect(),
    )
}

fn primitive_part(p: &BiPoly) -> BiPoly {
    let c = content_a(p);
    if c.is_zero() {
        p.clone()
    } else {
        div_content(p, &c)
    }
}

/// Pseudo-remainder of p by q in the v variable.
fn prem_v(p: &BiPoly, q: &BiPoly) -> BiPoly {
    let n = vdeg(q).expect("nonzero divisor");
    let lc = q.vcoeff(n);
    let mut r = p.clone();
    while let Some(d) = vdeg(&r) {
        if r.is_zero() || d < n {
            break;
        }
        let rl = r.vcoeff(d);
        r = &r.mul_a_poly(&lc) - &shift_v(q, d - n).mul_a_poly(&rl);
    }
    r
}

/// Gcd in Q[a, v], up to a rational factor.
fn gcd_bipoly(p: &BiPoly, q: &BiPoly) -> BiPoly {
    if p.is_zero() {
        return q.clone();
    }
    if q.is_zero() {
        return p.clone();
    }
    let c = content_a(p).gcd(&content_a(q));
    let (mut x, mut y) = (primitive_part(p), primitive_part(q));
    if vdeg(&x).unwrap() < vdeg(&y).unwrap() {
        std::mem::swap(&mut x, &mut y);
    }
    loop {
        if vdeg(&y).unwrap() == 0 {
            // coprime over Q(a)[v]
            return BiPoly::from_a(c);
        }
        let r = prem_v(&x, &y);
        if r.is_zero() {
            return primitive_part(&y).mul_a_poly(&c);
        }
        x = y;
        y = primitive_part(&r);
    }
}

fn is_constant(p: &BiPoly) -> bool {
    vdeg(p).map_or(true, |d| d == 0) && content_a(p).degree().map_or(true, |d| d == 0)
}

/// A certified singular point location: the chart it lies in, isolating
/// boxes for its coordinates where a real witness exists, and the exact
/// elimination data.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub chart: String,
    /// Isolating interval for the chart's y-coordinate, when real.
    pub s_box: Option<(String, String)>,
    /// Isolating interval for the chart's z-coordinate, when real.
    pub t_box: Option<(String, String)>,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub enum Smoothness {
    Smooth,
    Singular(Witness),
}

impl Smoothness {
    pub fn is_smooth(&self) -> bool {
        matches!(self, Smoothness::Smooth)
    }
}

fn fmt_box(b: &(Rat, Rat)) -> (String, String) {
    (fmt_rat(&b.0), fmt_rat(&b.1))
}

/// Best-effort real point on the zero set of a nonconstant g, as isolating
/// boxes (exact rational points collapse to width-zero boxes).
fn point_on(g: &BiPoly) -> (Option<(String, String)>, Option<(String, String)>) {
    let candidates: Vec<Rat> = (-6..=6)
        .map(|k| Rat::new(k.into(), 2.into()))
        .collect();
    for s0 in &candidates {
        let gs = g.eval_a(s0);
        if gs.is_zero() {
            let z = Rat::zero();
            return (
                Some(fmt_box(&(s0.clone(), s0.clone()))),
                Some(fmt_box(&(z.clone(), z))),
            );
        }
        if gs.degree().map_or(false, |d| d >= 1) {
            if let Some(b) = isolate_roots(&gs).into_iter().next() {
                return (
                    Some(fmt_box(&(s0.clone(), s0.clone()))),
                    Some(fmt_box(&b)),
                );
            }
        }
    }
    // no real point found on sampled vertical lines; report the a-content
    // roots if any
    let c = content_a(g);
    if c.degree().map_or(false, |d| d >= 1) {
        if let Some(b) = isolate_roots(&c).into_iter().next() {
            return (Some(fmt_box(&b)), None);
        }
    }
    (None, None)
}

/// Decides whether the chart polynomial has a singular point (a common
/// complex zero with both partials). The Smooth direction is exact: a
/// common zero forces a shared root of both elimination resultants.
pub fn chart_singular(q: &BiPoly) -> Option<Witness> {
    if is_constant(q) {
        return None;
    }
    let qa = dda(q);
    let qv = q.ddv();
    // a nonconstant common factor is a singular (non-reduced or shared)
    // component
    let mut g = gcd_bipoly(q, &qa);
    if !qv.is_zero() {
        g = gcd_bipoly(&g, &qv);
    }
    if !is_constant(&g) {
        let (s_box, t_box) = point_on(&g);
        return Some(Witness {
            chart: String::new(),
            s_box,
            t_box,
            detail: format!("common factor {}", g.render("s", "t")),
        });
    }
    if qv.is_zero() || vdeg(q).unwrap() == 0 {
        // q depends on one variable only and is squarefree against its
        // derivative by the gcd check above
        return None;
    }
    if qa.is_zero() {
        return None;
    }
    let r1 = res_v(q, &qv);
    let r2 = res_v(q, &qa);
    if r1.is_zero() || r2.is_zero() {
        // a vanishing resultant with trivial gcd means a leading-form
        // degeneracy; fall through to the transposed elimination
    } else {
        let g1 = r1.squarefree().gcd(&r2.squarefree());
        if g1.degree().map_or(true, |d| d == 0) {
            return None;
        }
    }
    let (tq, tqa, tqv) = (transpose(q), transpose(&qa), transpose(&qv));
    let s1 = res_v(&tq, &tqv);
    let s2 = res_v(&tq, &tqa);
    if !s1.is_zero() && !s2.is_zero() {
        let g2 = s1.squarefree().gcd(&s2.squarefree());
        if g2.degree().map_or(true, |d| d == 0) {
            return None;
        }
        // both projections have shared roots: report them
        let g1 = if r1.is_zero() || r2.is_zero() {
            UniPoly::zero()
        } else {
            r1.squarefree().gcd(&r2.squarefree())
        };
        let s_box = if g1.degree().map_or(false, |d| d >= 1) {
            isolate_roots(&g1).into_iter().next().map(|b| fmt_box(&b))
        } else {
            None
        };
        let t_box = isolate_roots(&g2).into_iter().next().map(|b| fmt_box(&b));
        return Some(Witness {
            chart: String::new(),
            s_box,
            t_box,
            detail: format!(
                "shared elimination roots: s-resultant gcd {}, t-resultant gcd {}",
                g1.render("s"),
                g2.render("t")
            ),
        });
    }
    Some(Witness {
        chart: String::new(),
        s_box: None,
        t_box: None,
        detail: "degenerate elimination (vanishing resultants)".into(),
    })
}

/// Exact smoothness of the curve on P^1 x P^1, chart by chart.
pub fn is_smooth(p: &BiHomPoly) -> Result<Smoothness, String> {
    if p.is_zero() {
        return Err("identically zero curve".into());
    }
    for (name, q) in charts(p) {
        if let Some(mut w) = chart_singular(&q) {
            w.chart = name;
            return Ok(Smoothness::Singular(w));
        }
    }
    Ok(Smoothness::Smooth)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    KStableByCorollary,
    Inconclusive,
}

/// Corollary-level conclusion: a smooth discriminant curve certifies the
/// K-stability of X; the statement has no converse, so anything else is
/// inconclusive.
pub fn kstable_verdict(
    lambda: &Rat,
    a: &[Rat; 3],
    b: &[Rat; 3],
) -> Result<(Smoothness, Verdict), String> {
    let p = discriminant_poly(lambda, a, b)?;
    let s = is_smooth(&p)?;
    let v = if s.is_smooth() {
        Verdict::KStableByCorollary
    } else {
        Verdict::Inconclusive
    };
    Ok((s, v))
}

#[derive(Serialize)]
pub struct VerdictDoc {
    pub lambda: String,
    pub a: [String; 3],
    pub b: [String; 3],
    pub smooth: bool,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

pub fn verdict_to_json(
    lambda: &Rat,
    a: &[Rat; 3],
    b: &[Rat; 3],
    s: &Smoothness,
    v: &Verdict,
) -> String {
    let doc = VerdictDoc {
        lambda: fmt_rat(lambda),
        a: [fmt_rat(&a[0]), fmt_rat(&a[1]), fmt_rat(&a[2])],
        b: [fmt_rat(&b[0]), fmt_rat(&b[1]), fmt_rat(&b[2])],
        smooth: s.is_smooth(),
        verdict: v.clone(),
        witness: match s {
            Smoothness::Smooth => None,
            Smoothness::Singular(w) => Some(w.clone()),
        },
    };
    serde_json::to_string_pretty(&doc).expect("verdict serializes")
}
