//! The registry of appendix statements: each record pairs a transcribed
//! closed-form bound with the engine's recomputation and compares the two
//! piecewise-exactly. Both sides are kept so a mismatch prints the printed
//! and the computed piece next to each other.

use serde::Serialize;

use super::{curve_flag_bound, delta_lower_bound, PointStratum};
use crate::exact::{rat, AlgNum, BoundFunction, Piece, RationalFn, UniPoly};
use crate::lattice::builtins;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail { detail: String },
}

impl Status {
    pub fn is_pass(&self) -> bool {
        matches!(self, Status::Pass)
    }
}

#[derive(Clone, Debug)]
pub struct LemmaRecord {
    pub id: String,
    pub paper_ref: String,
    pub surface: String,
    /// Human-readable description of the point stratum the bound covers.
    pub stratum: String,
    pub expected: BoundFunction,
    pub computed: BoundFunction,
    pub status: Status,
    /// Set on documented discrepancies.
    pub note: Option<String>,
}

pub const REGISTRY_IDS: [&str; 16] = [
    "dP5-exc",
    "dP5-lines",
    "dP5-general",
    "dP5-cor",
    "A1-e3",
    "A1-exc",
    "A1-lines",
    "A1-cor",
    "A2-e2",
    "A2-e1",
    "A2-general",
    "A2-cor",
    "dP6-exc",
    "dP6-lines",
    "dP6-general",
    "dP6-cor",
];

fn rf(num: &[i64], den: &[i64]) -> RationalFn {
    RationalFn::new(UniPoly::from_i64(num), UniPoly::from_i64(den))
}

fn alg(n: i64) -> AlgNum {
    AlgNum::from_int(n)
}

fn q(p_num: i64, p_den: i64, c_num: i64, c_den: i64, d: i64) -> AlgNum {
    AlgNum::quad(rat(p_num, p_den), rat(c_num, c_den), d)
}

/// Piecewise bound from (lo, f) pieces sharing the upper endpoints.
fn expect(cuts: &[(AlgNum, RationalFn)], hi: AlgNum) -> BoundFunction {
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
            label: "printed".to_string(),
        });
    }
    BoundFunction::new(pieces).expect("transcribed bound is well formed")
}

fn cf(surface: &str, curves: &[&str]) -> Result<BoundFunction, String> {
    let m = builtins::get(surface).ok_or_else(|| format!("unknown surface {surface}"))?;
    curve_flag_bound(&m, &PointStratum::new(surface, curves))
}

fn general(surface: &str) -> Result<BoundFunction, String> {
    delta_lower_bound(surface, &PointStratum::new(surface, &[]))
}

fn min(bounds: Vec<BoundFunction>) -> Result<BoundFunction, String> {
    BoundFunction::min_of(&bounds)
}

fn computed_bound(id: &str) -> Result<BoundFunction, String> {
    match id {
        "dP5-exc" => min(vec![cf("dp5", &["e1"])?, cf("dp5", &["e1", "l12"])?]),
        "dP5-lines" => min(vec![cf("dp5", &["l12"])?, cf("dp5", &["l12", "l34"])?]),
        "dP5-general" => general("dp5"),
        "dP5-cor" => min(vec![
            computed_bound("dP5-exc")?,
            computed_bound("dP5-lines")?,
            computed_bound("dP5-general")?,
        ]),
        "A1-e3" => min(vec![
            cf("dp5-a1", &["e3"])?,
            cf("dp5-a1", &["e3", "l3"])?,
        ]),
        "A1-exc" => min(vec![
            cf("dp5-a1", &["e1"])?,
            cf("dp5-a1", &["e1", "l4"])?,
        ]),
        "A1-lines" => min(vec![
            cf("dp5-a1", &["l3"])?,
            cf("dp5-a1", &["l3", "l4"])?,
            cf("dp5-a1", &["l4"])?,
        ]),
        "A1-cor" => min(vec![
            computed_bound("A1-e3")?,
            computed_bound("A1-exc")?,
            computed_bound("A1-lines")?,
            general("dp5-a1")?,
        ]),
        "A2-e2" => cf("dp5-a2", &["e2"]),
        "A2-e1" => cf("dp5-a2", &["e1"]),
        "A2-general" => general("dp5-a2"),
        "A2-cor" => computed_bound("A2-general"),
        "dP6-exc" => cf("dp6", &["e1"]),
        "dP6-lines" => min(vec![cf("dp6", &["l1"])?, cf("dp6", &["l1", "l4"])?]),
        "dP6-general" => general("dp6"),
        "dP6-cor" => min(vec![
            computed_bound("dP6-exc")?,
            computed_bound("dP6-lines")?,
            computed_bound("dP6-general")?,
            cf("dp6", &["e1", "l1"])?,
        ]),
        _ => Err(format!("unknown registry id {id}")),
    }
}

struct Statement {
    paper_ref: &'static str,
    surface: &'static str,
    stratum: &'static str,
    expected: BoundFunction,
    note: Option<&'static str>,
}

fn statement(id: &str) -> Option<Statement> {
    // the four rational functions the dP5-family bounds are built from
    let dp5_main = rf(&[6, 3], &[-2, 2, 1]); // 3(a+2)/(a^2+2a-2)
    let two = (alg(2), alg(3));
    let one = (alg(1), alg(2));
    let st = |paper_ref, surface, stratum, expected, note| {
        Some(Statement {
            paper_ref,
            surface,
            stratum,
            expected,
            note,
        })
    };
    match id {
        "dP5-exc" => st(
            "lemma:dP5-e1-e2-e3-e4",
            "dp5",
            "P on an exceptional curve e_i",
            expect(&[(two.0, dp5_main)], two.1),
            None,
        ),
        "dP5-lines" => st(
            "lemma:dP5-lines",
            "dp5",
            "P on a line l_ij, off the e-curves",
            expect(&[(two.0, dp5_main)], two.1),
            None,
        ),
        "dP5-general" => st(
            "lemma:dP5-general-point",
            "dp5",
            "P off every negative curve",
            expect(
                &[
                    (two.0, rf(&[4, 2], &[4, -2, 1])),
                    (q(5, 1, -1, 1, 5), rf(&[8, 4], &[-12, 6, 1])),
                ],
                two.1,
            ),
            None,
        ),
        "dP5-cor" => st(
            "corollary:dP5",
            "dp5",
            "every P",
            expect(&[(two.0, dp5_main)], two.1),
            None,
        ),
        "A1-e3" => st(
            "lemma:dP5-A1-e3",
            "dp5-a1",
            "P on e3",
            expect(
                &[
                    (two.0, dp5_main),
                    (q(1, 2, 1, 2, 21), rf(&[1], &[-2, 1])),
                ],
                two.1,
            ),
            None,
        ),
        "A1-exc" => st(
            "lemma:dP5-A1-e1-e2",
            "dp5-a1",
            "P on e1 or e2, off l1 and l2",
            expect(&[(two.0, dp5_main)], two.1),
            None,
        ),
        "A1-lines" => st(
            "lemma:dP5-A1-L3 + lemma:dP5-A1-L4",
            "dp5-a1",
            "P on l3 or l4, off the e-curves",
            expect(&[(two.0, dp5_main)], two.1),
            None,
        ),
        "A1-cor" => st(
            "corollary:dP5-A1",
            "dp5-a1",
            "every P off l1 and l2",
            expect(
                &[
                    (two.0, dp5_main),
                    (q(1, 2, 1, 2, 21), rf(&[1], &[-2, 1])),
                ],
                two.1,
            ),
            Some("second printed case writes u for a; transcribed with a"),
        ),
        "A2-e2" => st(
            "lemma:dP5-A2-e2",
            "dp5-a2",
            "P on e2, P != Sing(S)",
            expect(
                &[
                    (two.0, rf(&[12, 6], &[4, 2, 1])),
                    (q(1, 2, 1, 2, 17), rf(&[12, 6], &[-20, -4, 7])),
                ],
                two.1,
            ),
            None,
        ),
        "A2-e1" => st(
            "lemma:dP5-A2-e1-e2",
            "dp5-a2",
            "P on e1, off l2",
            // the printed case split at (13+sqrt(57))/2 > 3 leaves the first
            // case covering all of (2,3]
            expect(&[(two.0, rf(&[6, 3], &[8, -5, 2]))], two.1),
            Some(
                "printed breakpoint (13+sqrt(57))/2 exceeds 3; the computed \
                 min switches at (13-sqrt(57))/2",
            ),
        ),
        "A2-general" => st(
            "lemma:dP5-A2-general-point",
            "dp5-a2",
            "P off every negative curve",
            expect(
                &[
                    (two.0, rf(&[4, 2], &[4, -2, 1])),
                    (q(5, 1, -1, 1, 5), rf(&[8, 4], &[-12, 6, 1])),
                    (q(19, 5, -1, 5, 21), rf(&[12, 6], &[-52, 28, -1])),
                ],
                two.1,
            ),
            None,
        ),
        "A2-cor" => st(
            "corollary:dP5-A2",
            "dp5-a2",
            "P off the negative curves (printed generic case)",
            expect(
                &[
                    (two.0, rf(&[4, 2], &[4, -2, 1])),
                    (q(5, 1, -1, 1, 5), rf(&[8, 4], &[-12, 6, 1])),
                    (q(19, 5, -1, 5, 21), rf(&[12, 6], &[-52, 28, -1])),
                ],
                two.1,
            ),
            Some(
                "verified against the printed generic case; the printed \
                 exceptional case reprints the e2 bound only",
            ),
        ),
        "dP6-exc" => st(
            "lemma:dP6-e1-e2",
            "dp6",
            "P on e1 or e2, off the rulings",
            expect(
                &[
                    (one.0, rf(&[3, 3], &[1, 1, 1])),
                    (q(1, 4, 1, 4, 33), rf(&[1], &[-1, 1])),
                ],
                one.1,
            ),
            None,
        ),
        "dP6-lines" => st(
            "lemma:dP6-lines",
            "dp6",
            "P on a ruling, off the e-curves",
            expect(&[(one.0, rf(&[2], &[0, 1]))], one.1),
            None,
        ),
        "dP6-general" => st(
            "lemma:dP6-general-point",
            "dp6",
            "P off every negative curve",
            expect(
                &[
                    (one.0, rf(&[3, 3], &[1, 1, 1])),
                    (q(-1, 2, 1, 2, 21), rf(&[2, 2], &[-1, 1, 1])),
                ],
                one.1,
            ),
            None,
        ),
        "dP6-cor" => st(
            "min of lemma:dP6-e1-e2, lemma:dP6-lines, lemma:dP6-general-point",
            "dp6",
            "every P",
            expect(&[(one.0, rf(&[2], &[0, 1]))], one.1),
            Some("no printed sextic corollary; the minimum is pinned here"),
        ),
        _ => None,
    }
}

fn first_difference(expected: &BoundFunction, computed: &BoundFunction) -> String {
    let ep = expected.pieces();
    let cp = computed.pieces();
    if ep.len() != cp.len() {
        let detail = format!(
            "expected {} piece(s), computed {}",
            ep.len(),
            cp.len()
        );
        // point at the first breakpoint disagreement if there is one
        for (e, c) in ep.iter().zip(cp.iter()) {
            if e.hi != c.hi {
                return format!(
                    "{detail}; first piece ends at {} (expected) vs {} (computed)",
                    e.hi, c.hi
                );
            }
        }
        return detail;
    }
    for (k, (e, c)) in ep.iter().zip(cp.iter()).enumerate() {
        if e.hi != c.hi {
            return format!(
                "piece {k} ends at {} (expected) vs {} (computed)",
                e.hi, c.hi
            );
        }
        if e.f != c.f {
            return format!(
                "piece {k}: expected {} vs computed {}",
                e.f.render("a"),
                c.f.render("a")
            );
        }
    }
    "identical".to_string()
}

pub fn verify_lemma(id: &str) -> Result<LemmaRecord, String> {
    let stmt = statement(id).ok_or_else(|| format!("unknown registry id {id}"))?;
    let computed = computed_bound(id)?;
    let status = if stmt.expected.same_function(&computed) {
        Status::Pass
    } else {
        Status::Fail {
            detail: first_difference(&stmt.expected, &computed),
        }
    };
    Ok(LemmaRecord {
        id: id.to_string(),
        paper_ref: stmt.paper_ref.to_string(),
        surface: stmt.surface.to_string(),
        stratum: stmt.stratum.to_string(),
        expected: stmt.expected,
        computed,
        status,
        note: stmt.note.map(|s| s.to_string()),
    })
}

pub fn verify_all() -> Result<Vec<LemmaRecord>, String> {
    REGISTRY_IDS.iter().map(|id| verify_lemma(id)).collect()
}

/// Registry ids whose Fail status is a documented transcription discrepancy
/// rather than an engine defect.
pub const DOCUMENTED_MISMATCHES: [&str; 1] = ["A2-e1"];

#[derive(Serialize)]
pub struct LemmaRecordDoc {
    pub id: String,
    pub paper_ref: String,
    pub surface: String,
    pub stratum: String,
    pub expected: String,
    pub computed: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl LemmaRecordDoc {
    pub fn from_record(r: &LemmaRecord) -> Self {
        LemmaRecordDoc {
            id: r.id.clone(),
            paper_ref: r.paper_ref.clone(),
            surface: r.surface.clone(),
            stratum: r.stratum.clone(),
            expected: r.expected.render("a"),
            computed: r.computed.render("a"),
            status: match &r.status {
                Status::Pass => "Pass".to_string(),
                Status::Fail { detail } => format!("Fail: {detail}"),
            },
            note: r.note.clone(),
        }
    }
}

pub fn records_to_json(records: &[LemmaRecord]) -> String {
    let docs: Vec<LemmaRecordDoc> = records.iter().map(LemmaRecordDoc::from_record).collect();
    serde_json::to_string_pretty(&docs).expect("serializable")
}
