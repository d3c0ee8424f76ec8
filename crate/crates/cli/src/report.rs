//! JSON report shapes. Every command prints exactly one of these to
//! stdout; field order is fixed by the struct declarations so output
//! bytes are reproducible.

use abelab_core::abel::{CenterVerdict, ReturnMap};
use abelab_core::cheb::ChebSeries;
use abelab_core::moment::{CompositionWitness, Direction, MomentReport, MomentSolutionClass};
use abelab_core::verify::LemmaResult;
use serde::Serialize;

use crate::format::poly_to_json;

#[derive(Serialize)]
pub struct ChebSeriesJson {
    pub d: Vec<String>,
}

impl ChebSeriesJson {
    pub fn from_series(series: &ChebSeries) -> Self {
        ChebSeriesJson {
            d: series.coeffs().iter().map(|c| c.to_string()).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct DecompositionJson {
    pub outer: serde_json::Value,
    pub inner: serde_json::Value,
}

#[derive(Serialize)]
pub struct MomentReportJson {
    pub direction: String,
    pub bound: usize,
    pub values: Vec<(usize, String)>,
    pub all_zero: bool,
}

impl MomentReportJson {
    pub fn from_report(report: &MomentReport) -> Self {
        MomentReportJson {
            direction: match report.direction {
                Direction::PdQ => "PdQ".into(),
                Direction::QdP => "QdP".into(),
            },
            bound: report.bound,
            values: report
                .values
                .iter()
                .map(|(i, v)| (*i, v.to_string()))
                .collect(),
            all_zero: report.all_zero,
        }
    }
}

#[derive(Serialize)]
pub struct WitnessJson {
    pub w: serde_json::Value,
    pub p_tilde: serde_json::Value,
    pub q_tilde: serde_json::Value,
    pub a: String,
    pub b: String,
}

impl WitnessJson {
    pub fn from_witness(witness: &CompositionWitness) -> Self {
        WitnessJson {
            w: poly_to_json(&witness.w),
            p_tilde: poly_to_json(&witness.p_tilde),
            q_tilde: poly_to_json(&witness.q_tilde),
            a: witness.endpoints.a().to_string(),
            b: witness.endpoints.b().to_string(),
        }
    }
}

#[derive(Serialize)]
pub struct ClassJson {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m1: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m2: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<(String, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ClassJson {
    pub fn from_class(class: &MomentSolutionClass) -> Self {
        let empty = ClassJson {
            kind: String::new(),
            witness: None,
            delta: None,
            m1: None,
            m2: None,
            r: None,
            u: None,
            mu: None,
            reason: None,
            note: None,
        };
        match class {
            MomentSolutionClass::Reducible(witness) => ClassJson {
                kind: "Reducible".into(),
                witness: Some(WitnessJson::from_witness(witness)),
                ..empty
            },
            MomentSolutionClass::Type1 { delta, r, u } => ClassJson {
                kind: "Type1".into(),
                delta: Some(delta.to_string()),
                r: Some(poly_to_json(r)),
                u: Some(poly_to_json(u)),
                ..empty
            },
            MomentSolutionClass::Type2 { m1, m2, u, mu } => ClassJson {
                kind: "Type2".into(),
                m1: Some(*m1),
                m2: Some(*m2),
                u: Some(poly_to_json(u)),
                mu: Some((mu.alpha().to_string(), mu.beta().to_string())),
                ..empty
            },
            MomentSolutionClass::Type3 { m1, m2, r, u, mu } => ClassJson {
                kind: "Type3".into(),
                m1: Some(*m1),
                m2: Some(*m2),
                r: Some(poly_to_json(r)),
                u: Some(poly_to_json(u)),
                mu: Some((mu.alpha().to_string(), mu.beta().to_string())),
                ..empty
            },
            MomentSolutionClass::Unclassified { reason } => ClassJson {
                kind: "Unclassified".into(),
                reason: Some(reason.clone()),
                ..empty
            },
        }
    }
}

#[derive(Serialize)]
pub struct ReturnMapJson {
    pub order: usize,
    pub w: Vec<(usize, usize, String)>,
}

impl ReturnMapJson {
    pub fn from_map(rm: &ReturnMap) -> Self {
        ReturnMapJson {
            order: rm.order(),
            w: rm
                .nonzero_coeffs()
                .into_iter()
                .map(|(k, j, v)| (k, j, v.to_string()))
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct CenterVerdictJson {
    pub order: usize,
    pub is_center_at: Vec<(String, bool)>,
    pub is_parametric_center: bool,
    pub first_obstruction: Option<(usize, usize, String)>,
}

impl CenterVerdictJson {
    pub fn from_verdict(v: &CenterVerdict) -> Self {
        CenterVerdictJson {
            order: v.order,
            is_center_at: v
                .is_center_at
                .iter()
                .map(|(eps, ok)| (eps.to_string(), *ok))
                .collect(),
            is_parametric_center: v.is_parametric_center,
            first_obstruction: v
                .first_obstruction
                .as_ref()
                .map(|(k, j, w)| (*k, *j, w.to_string())),
        }
    }
}

#[derive(Serialize)]
pub struct LemmaResultJson {
    pub lemma: String,
    pub params: String,
    pub passed: bool,
    pub detail: String,
}

impl LemmaResultJson {
    pub fn from_result(r: &LemmaResult) -> Self {
        LemmaResultJson {
            lemma: r.lemma.clone(),
            params: r.params.clone(),
            passed: r.passed,
            detail: r.detail.clone(),
        }
    }
}

#[derive(Serialize, Clone)]
pub struct CriterionJson {
    pub id: usize,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Serialize)]
pub struct AcceptJson {
    pub seed: u64,
    pub scale: String,
    pub criteria: Vec<CriterionJson>,
    pub all_passed: bool,
}
