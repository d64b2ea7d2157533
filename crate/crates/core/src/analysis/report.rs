use serde::{Deserialize, Serialize};

use super::{profile, tangent_table_check, verdict_for, AnalysisError, BoundStatus, SurfaceProfile, TableCheck};
use crate::bounds;
use crate::form::HomogeneousForm;
use crate::projgeom::ProjectiveSpace;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperplaneEntry {
    /// Dual coordinates as element indices.
    pub hyperplane: Vec<u32>,
    pub section_count: usize,
    pub t: usize,
}

/// JSON report produced by `profile`; the layout is documented in
/// `docs/report-schema.md`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionReport {
    pub field: [u32; 2],
    pub n: usize,
    pub degree: u32,
    pub form: String,
    #[serde(rename = "N")]
    pub n_points: usize,
    pub bound: i128,
    /// `None` when the hypersurface contains an F_q-line.
    pub status: Option<BoundStatus>,
    pub exception: bool,
    pub lines_on: usize,
    pub singular_points: Vec<Vec<u32>>,
    /// "satisfied" when line-free with no F_q-singular point, else "violated".
    pub hypothesis: String,
    pub n_histogram: Vec<usize>,
    pub per_hyperplane: Vec<HyperplaneEntry>,
    /// Present for quartic surfaces over F_4 satisfying the hypothesis.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub table_check: Option<TableCheck>,
}

impl SectionReport {
    pub fn build(f: &HomogeneousForm) -> Result<Self, AnalysisError> {
        let prof = profile(f)?;
        Self::from_profile(f, &prof)
    }

    pub fn from_profile(f: &HomogeneousForm, prof: &SurfaceProfile) -> Result<Self, AnalysisError> {
        let space = ProjectiveSpace::shared(f.dim(), f.field());
        let field = f.field();
        let line_free = prof.lines_on.is_empty();
        let (status, exception) = if line_free && f.degree() >= 2 {
            let v = verdict_for(f, prof.n_points)?;
            (Some(v.status), v.exception_flag)
        } else {
            (None, false)
        };
        let satisfied = line_free && prof.singular_points.is_empty();
        Ok(Self {
            field: [field.p(), field.e()],
            n: f.dim(),
            degree: f.degree(),
            form: f.format(),
            n_points: prof.n_points,
            bound: bounds::main_bound(f.dim() as i64, i64::from(f.degree()), i64::from(field.q()))?,
            status,
            exception,
            lines_on: prof.lines_on.len(),
            singular_points: prof.singular_points.iter().map(|p| p.indices()).collect(),
            hypothesis: if satisfied { "satisfied" } else { "violated" }.to_string(),
            n_histogram: prof.n_histogram.clone(),
            per_hyperplane: space
                .hyperplanes()
                .iter()
                .zip(&prof.per_hyperplane)
                .map(|(h, s)| HyperplaneEntry {
                    hyperplane: h.indices(),
                    section_count: s.section_count,
                    t: s.t,
                })
                .collect(),
            table_check: tangent_table_check(f, prof)?,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
