//! JSON (de)serialization of surface models. Rationals travel as "p/q"
//! strings so documents stay exact; polynomial coordinates of D(a) are lists
//! of coefficients in increasing degree.

use serde::{Deserialize, Serialize};

use super::{Curve, SurfaceModel};
use crate::exact::{fmt_rat, parse_rat, Rat, UniPoly};

#[derive(Serialize, Deserialize)]
pub struct SurfaceModelDoc {
    pub id: String,
    pub basis: Vec<String>,
    pub gram: Vec<Vec<String>>,
    pub curves: Vec<CurveDoc>,
    pub polarization: PolarizationDoc,
    pub a_interval: [String; 2],
}

#[derive(Serialize, Deserialize)]
pub struct CurveDoc {
    pub label: String,
    pub coords: Vec<String>,
    pub self_intersection: String,
}

#[derive(Serialize, Deserialize)]
pub struct PolarizationDoc {
    /// One coefficient list per basis element, increasing powers of a.
    pub coords: Vec<Vec<String>>,
}

fn rats(xs: &[String]) -> Result<Vec<Rat>, String> {
    xs.iter().map(|s| parse_rat(s)).collect()
}

impl SurfaceModelDoc {
    pub fn from_model(m: &SurfaceModel) -> Self {
        SurfaceModelDoc {
            id: m.id.clone(),
            basis: m.basis.clone(),
            gram: m
                .gram
                .iter()
                .map(|row| row.iter().map(fmt_rat).collect())
                .collect(),
            curves: m
                .curves
                .iter()
                .map(|c| CurveDoc {
                    label: c.label.clone(),
                    coords: c.coords.iter().map(fmt_rat).collect(),
                    self_intersection: fmt_rat(&c.self_intersection),
                })
                .collect(),
            polarization: PolarizationDoc {
                coords: m
                    .polarization
                    .iter()
                    .map(|p| p.coeffs.iter().map(fmt_rat).collect())
                    .collect(),
            },
            a_interval: [fmt_rat(&m.a_lo), fmt_rat(&m.a_hi)],
        }
    }

    pub fn into_model(self) -> Result<SurfaceModel, String> {
        let gram = self
            .gram
            .iter()
            .map(|row| rats(row))
            .collect::<Result<Vec<_>, _>>()?;
        let curves = self
            .curves
            .iter()
            .map(|c| {
                Ok(Curve {
                    label: c.label.clone(),
                    coords: rats(&c.coords)?,
                    self_intersection: parse_rat(&c.self_intersection)?,
                })
            })
            .collect::<Result<Vec<_>, String>>()?;
        let polarization = self
            .polarization
            .coords
            .iter()
            .map(|cs| Ok(UniPoly::new(rats(cs)?)))
            .collect::<Result<Vec<_>, String>>()?;
        let m = SurfaceModel {
            id: self.id,
            basis: self.basis,
            gram,
            curves,
            polarization,
            a_lo: parse_rat(&self.a_interval[0])?,
            a_hi: parse_rat(&self.a_interval[1])?,
        };
        m.validate()?;
        Ok(m)
    }
}

pub fn model_to_json(m: &SurfaceModel) -> String {
    serde_json::to_string_pretty(&SurfaceModelDoc::from_model(m)).expect("serializable")
}

pub fn model_from_json(s: &str) -> Result<SurfaceModel, String> {
    let doc: SurfaceModelDoc = serde_json::from_str(s).map_err(|e| e.to_string())?;
    doc.into_model()
}
