//! Report assembly and rendering: runs the Clifford path (and, on
//! request, the matrix path) on one pair and collects the results into
//! a single JSON document. Wall-clock timings are segregated under
//! "timings" and excluded from any determinism guarantee.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use subangle::orientation::full_orientation;
use subangle::principal::principal_angles;
use subangle::{Blade, Multivector};

use crate::error::CliError;
use crate::pairspec::SubspacePairSpec;

/// One additive term of a multivector: 1-based basis vector indices
/// and the coefficient. Terms below 1e-12 are dropped.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MvTerm {
    pub basis: Vec<usize>,
    pub coeff: f64,
}

pub fn multivector_terms(mv: &Multivector) -> Vec<MvTerm> {
    let n = mv.dim().get();
    let mut terms = Vec::new();
    for (mask, &coeff) in mv.coeffs().iter().enumerate() {
        if coeff.abs() <= 1e-12 {
            continue;
        }
        let basis: Vec<usize> = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| i + 1)
            .collect();
        terms.push(MvTerm { basis, coeff });
    }
    terms
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InputEcho {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    pub n: usize,
    pub r: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ResidualReport {
    pub grade_leakage: f64,
    pub scalar_unit_gap: f64,
    pub split_residual: f64,
    pub reconstruction_error: f64,
    pub cos_product_gap: f64,
    pub top_grade_sign: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CliffordReport {
    pub cos_total: f64,
    pub sin_product_abs: f64,
    pub s_intersection: usize,
    pub t_perpendicular: usize,
    /// Descending, per the report convention.
    pub principal_angles: Vec<f64>,
    pub principal_planes: Vec<Vec<MvTerm>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perp_blade: Option<Vec<MvTerm>>,
    pub residuals: ResidualReport,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OracleReport {
    /// Re-sorted descending to match the Clifford list.
    pub principal_angles: Vec<f64>,
    /// Descending (SVD order).
    pub cosines: Vec<f64>,
    pub a_vectors: Vec<Vec<f64>>,
    pub b_vectors: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Timings {
    pub clifford_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_ms: Option<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportDocument {
    pub input: InputEcho,
    pub clifford: CliffordReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
    /// Max per-angle deviation between the two paths; present iff both ran.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agreement: Option<f64>,
    pub timings: Timings,
}

pub fn run_report(
    spec: &SubspacePairSpec,
    path: Option<&str>,
    with_oracle: bool,
) -> Result<ReportDocument, CliError> {
    let (sa, sb) = spec.spanning_sets()?;

    let start = Instant::now();
    let a = Blade::from_spanning(&sa)?;
    let b = Blade::from_spanning(&sb)?;
    let report = full_orientation(&a, &b)?;
    let clifford_ms = start.elapsed().as_secs_f64() * 1e3;

    let clifford = CliffordReport {
        cos_total: report.cos_total,
        sin_product_abs: report.sin_product_abs,
        s_intersection: report.s_intersection,
        t_perpendicular: report.t_perpendicular,
        principal_angles: report.principal_angles.clone(),
        principal_planes: report
            .principal_planes
            .iter()
            .map(multivector_terms)
            .collect(),
        perp_blade: report.perp_blade.as_ref().map(multivector_terms),
        residuals: ResidualReport {
            grade_leakage: report.residuals.grade_leakage,
            scalar_unit_gap: report.residuals.scalar_unit_gap,
            split_residual: report.residuals.split_residual,
            reconstruction_error: report.residuals.reconstruction_error,
            cos_product_gap: report.residuals.cos_product_gap,
            top_grade_sign: report.residuals.top_grade_sign,
        },
    };

    let mut oracle = None;
    let mut agreement = None;
    let mut oracle_ms = None;
    if with_oracle {
        let start = Instant::now();
        let data = principal_angles(&sa, &sb)?;
        oracle_ms = Some(start.elapsed().as_secs_f64() * 1e3);
        let mut desc = data.angles.clone();
        desc.sort_by(|x, y| y.partial_cmp(x).unwrap());
        agreement = Some(
            clifford
                .principal_angles
                .iter()
                .zip(&desc)
                .map(|(x, y)| (x - y).abs())
                .fold(0.0, f64::max),
        );
        oracle = Some(OracleReport {
            principal_angles: desc,
            cosines: data.cosines,
            a_vectors: data.a_vectors,
            b_vectors: data.b_vectors,
        });
    }

    Ok(ReportDocument {
        input: InputEcho {
            path: path.map(String::from),
            n: spec.n,
            r: spec.r(),
        },
        clifford,
        oracle,
        agreement,
        timings: Timings {
            clifford_ms,
            oracle_ms,
        },
    })
}

pub fn render_json(doc: &ReportDocument) -> String {
    let mut text = serde_json::to_string_pretty(doc).expect("report serializes");
    text.push('\n');
    text
}

pub fn render_text(doc: &ReportDocument, tol: f64) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let path = doc.input.path.as_deref().unwrap_or("-");
    let _ = writeln!(out, "pair: {path}  (n = {}, r = {})", doc.input.n, doc.input.r);
    let _ = writeln!(
        out,
        "intersection s = {}, perpendicular t = {}",
        doc.clifford.s_intersection, doc.clifford.t_perpendicular
    );
    let _ = writeln!(
        out,
        "cos_total = {:+.12}  sin_product = {:.12}",
        doc.clifford.cos_total, doc.clifford.sin_product_abs
    );
    let _ = writeln!(out, "  k  angle (rad)        angle (deg)");
    for (k, angle) in doc.clifford.principal_angles.iter().enumerate() {
        let _ = writeln!(
            out,
            "{:>3}  {:<17.12}  {:<14.9}",
            k + 1,
            angle,
            angle.to_degrees()
        );
    }
    if let Some(agreement) = doc.agreement {
        let status = if agreement <= tol { "ok" } else { "EXCEEDED" };
        let _ = writeln!(
            out,
            "oracle agreement: max |delta| = {agreement:.3e} (tol {tol:.1e}: {status})"
        );
    }
    let _ = writeln!(
        out,
        "residuals: reconstruction {:.3e}, split {:.3e}, leakage {:.3e}",
        doc.clifford.residuals.reconstruction_error,
        doc.clifford.residuals.split_residual,
        doc.clifford.residuals.grade_leakage
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> SubspacePairSpec {
        SubspacePairSpec {
            n: 4,
            a_span: vec![
                vec![1.0, 0.0, 0.0, 0.0],
                vec![0.0, 1.0, 0.0, 0.0],
            ],
            b_span: vec![
                vec![1.0, 0.0, 0.0, 0.0],
                vec![0.0, 0.5, 0.75f64.sqrt(), 0.0],
            ],
        }
    }

    #[test]
    fn report_without_oracle_has_no_agreement() {
        let doc = run_report(&spec(), None, false).unwrap();
        assert!(doc.oracle.is_none());
        assert!(doc.agreement.is_none());
        assert_eq!(doc.clifford.s_intersection, 1);
    }

    #[test]
    fn report_with_oracle_agrees() {
        let doc = run_report(&spec(), Some("x.json"), true).unwrap();
        assert!(doc.agreement.unwrap() < 1e-10);
        let oracle = doc.oracle.as_ref().unwrap();
        assert_eq!(oracle.principal_angles.len(), 2);
        // descending, matching the Clifford list
        assert!(oracle.principal_angles[0] >= oracle.principal_angles[1]);
        assert!((doc.clifford.principal_angles[0] - std::f64::consts::FRAC_PI_3).abs() < 1e-12);
    }

    #[test]
    fn json_rendering_round_trips() {
        let doc = run_report(&spec(), Some("x.json"), true).unwrap();
        let text = render_json(&doc);
        let again: ReportDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(again.clifford.principal_angles, doc.clifford.principal_angles);
        assert_eq!(again.input.path.as_deref(), Some("x.json"));
    }

    #[test]
    fn text_rendering_shows_degrees() {
        let doc = run_report(&spec(), None, true).unwrap();
        let text = render_text(&doc, 1e-7);
        assert!(text.contains("angle (deg)"));
        assert!(text.contains("60.0"));
        assert!(text.contains("ok"));
    }

    #[test]
    fn perp_blade_terms_appear_for_right_angles() {
        let spec = SubspacePairSpec {
            n: 3,
            a_span: vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]],
            b_span: vec![vec![1.0, 0.0, 0.0], vec![0.0, 0.0, 1.0]],
        };
        let doc = run_report(&spec, None, false).unwrap();
        assert_eq!(doc.clifford.t_perpendicular, 1);
        let terms = doc.clifford.perp_blade.unwrap();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].basis, vec![2, 3]);
    }
}
