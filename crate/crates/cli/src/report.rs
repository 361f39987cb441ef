//! The analysis report: canonical JSON schema, emission, and re-validation.

use serde::{Deserialize, Serialize};

use ginv_core::balance::{Analysis, InverseKind};
use ginv_core::graph::BipartiteGraph;
use ginv_core::matching::{flower_check, FlowerCertificate, Matching};
use num_bigint::BigInt;

/// Machine-readable outcome of `ginv analyze`. Field order is the canonical
/// serialization order; reports are byte-stable for a given input.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisReport {
    pub status: String,
    pub det: Option<i64>,
    pub input: InputInfo,
    pub matching: Option<Matching>,
    /// Matched pairs (r, c) by triangular position; row/column i of B and
    /// B^-1 belong to `pair_order[i]`.
    pub pair_order: Option<Vec<(usize, usize)>>,
    /// Positions within sorted R / sorted C, tracing matrix indices back to
    /// vertex ids.
    pub row_perm: Option<Vec<usize>>,
    pub col_perm: Option<Vec<usize>>,
    /// ±1 per triangular position (the diagonal of D), when non-negative.
    #[serde(rename = "D")]
    pub d: Option<Vec<i8>>,
    /// ±1 per vertex id (the switching function), when non-negative.
    pub zeta: Option<Vec<i8>>,
    pub flower: Option<FlowerCertificate>,
    /// Matrix Market file references, present when --mtx-out is given.
    #[serde(rename = "B")]
    pub b: Option<String>,
    #[serde(rename = "B_inv")]
    pub b_inv: Option<String>,
    #[serde(rename = "B_plus")]
    pub b_plus: Option<String>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputInfo {
    pub path: String,
    /// FNV-1a 64-bit digest of the raw input bytes, hex encoded.
    pub digest: String,
    pub n: Option<usize>,
    pub m: Option<usize>,
}

/// FNV-1a, 64-bit. Traceability digest for report provenance.
pub fn fnv1a64(bytes: &[u8]) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}")
}

impl AnalysisReport {
    pub fn from_analysis(input: InputInfo, analysis: &Analysis) -> Self {
        let (status, d, zeta, flower) = match &analysis.kind {
            InverseKind::Nonnegative { d, zeta, .. } => (
                "nonnegative".to_string(),
                Some(d.clone()),
                Some(zeta.signs().to_vec()),
                None,
            ),
            InverseKind::OddFlower(cert) => ("odd_flower".to_string(), None, None, Some(cert.clone())),
        };
        AnalysisReport {
            status,
            det: Some(analysis.det),
            input,
            matching: Some(analysis.matching.clone()),
            pair_order: Some(analysis.tri.pair_order.clone()),
            row_perm: Some(analysis.tri.row_perm.clone()),
            col_perm: Some(analysis.tri.col_perm.clone()),
            d,
            zeta,
            flower,
            b: None,
            b_inv: None,
            b_plus: None,
            error: None,
        }
    }

    pub fn error_report(input: InputInfo, err: &ginv_core::Error) -> Self {
        AnalysisReport {
            status: "error".into(),
            det: None,
            input,
            matching: None,
            pair_order: None,
            row_perm: None,
            col_perm: None,
            d: None,
            zeta: None,
            flower: None,
            b: None,
            b_inv: None,
            b_plus: None,
            error: Some(err.to_string()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Re-validate the verdict and certificate against the graph: the
    /// matching replays, and either D positivizes B^-1 or the flower passes
    /// flower_check with odd parity. Run before emission and after loading.
    pub fn validate(&self, g: &BipartiteGraph) -> Result<(), String> {
        let Some(matching) = &self.matching else {
            return if self.status == "error" { Ok(()) } else { Err("missing matching".into()) };
        };
        matching.verify(g).map_err(|e| e.to_string())?;
        let tri = ginv_core::linalg::permute_to_triangular(g, matching).map_err(|e| e.to_string())?;
        if self.pair_order.as_deref() != Some(&tri.pair_order[..]) {
            return Err("pair order does not match triangularization".into());
        }
        let b_inv = ginv_core::linalg::invert_unit_lower_triangular(&tri.l).map_err(|e| e.to_string())?;
        match self.status.as_str() {
            "nonnegative" => {
                let d = self.d.as_ref().ok_or("nonnegative report without D")?;
                if d.len() != tri.pair_order.len() || d.iter().any(|s| *s != 1 && *s != -1) {
                    return Err("malformed D".into());
                }
                for i in 0..b_inv.rows() {
                    for j in 0..b_inv.cols() {
                        let v = b_inv.get(i, j) * BigInt::from(d[i] as i64 * d[j] as i64);
                        if v < BigInt::from(0) {
                            return Err(format!("D B^-1 D has negative entry at ({i},{j})"));
                        }
                    }
                }
                Ok(())
            }
            "odd_flower" => {
                let cert = self.flower.as_ref().ok_or("odd_flower report without certificate")?;
                let s: std::collections::BTreeSet<usize> = cert.order.iter().copied().collect();
                let again = flower_check(g, matching, &s).map_err(|e| e.to_string())?;
                if !again.odd {
                    return Err("stored flower is not odd on re-check".into());
                }
                if again.negative_pairs != cert.negative_pairs {
                    return Err("negative pair count changed on re-check".into());
                }
                if again.profiles != cert.profiles {
                    return Err("profiles changed on re-check".into());
                }
                Ok(())
            }
            other => Err(format!("unknown status '{other}'")),
        }
    }
}
