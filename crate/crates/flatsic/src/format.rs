//! JSON and CSV interchange.

use std::io::Write;

use flatsic_core::ansatz::AnsatzVector;
use flatsic_core::legendre::{LegendreClassification, PerronCounts};
use flatsic_core::polysys::PolySystem;
use flatsic_core::search::{Objective, SearchConfig, SearchOutcome, SearchResult};
use flatsic_core::{CVec, Complex64, Dim, Form};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Tolerance for the modulus invariants checked when a file is loaded.
pub const LOAD_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FileForm {
    #[serde(rename = "normalized")]
    Normalized,
    #[serde(rename = "v-form")]
    VForm,
    #[serde(rename = "rescaled")]
    Rescaled,
}

impl From<FileForm> for Form {
    fn from(f: FileForm) -> Form {
        match f {
            FileForm::Normalized => Form::Normalized,
            FileForm::VForm => Form::VForm,
            FileForm::Rescaled => Form::Rescaled,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorFile {
    pub d: u64,
    pub form: FileForm,
    pub components: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

impl VectorFile {
    /// Fails for `General` vectors, which have no file form.
    pub fn from_cvec(v: &CVec, metadata: Option<Metadata>) -> Result<Self> {
        let form = match v.form() {
            Form::Normalized => FileForm::Normalized,
            Form::VForm => FileForm::VForm,
            Form::Rescaled => FileForm::Rescaled,
            Form::General => {
                return Err(Error::Invariant {
                    name: "form",
                    detail: "general vectors must be normalized before saving".into(),
                })
            }
        };
        Ok(VectorFile {
            d: v.dim().get(),
            form,
            components: v.components().iter().map(|c| [c.re, c.im]).collect(),
            metadata,
        })
    }

    /// Validate the form invariants and build the vector.
    pub fn to_cvec(&self) -> Result<CVec> {
        let dim = Dim::new(self.d)?;
        if self.components.len() != dim.len() {
            return Err(Error::LengthMismatch {
                d: self.d,
                found: self.components.len(),
            });
        }
        let comps: Vec<Complex64> = self
            .components
            .iter()
            .map(|[re, im]| Complex64::new(*re, *im))
            .collect();
        if let Some(n) = comps
            .iter()
            .position(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(Error::Invariant {
                name: "finite",
                detail: format!("component {n} is not finite"),
            });
        }
        match self.form {
            FileForm::Normalized => {}
            FileForm::VForm => {
                for (j, c) in comps.iter().enumerate().skip(1) {
                    if (c.norm() - 1.0).abs() > LOAD_TOL {
                        return Err(Error::Invariant {
                            name: "unit-phase",
                            detail: format!("|v_{j}| = {}", c.norm()),
                        });
                    }
                }
            }
            FileForm::Rescaled => {
                let x0 = comps[0];
                if x0.im.abs() > LOAD_TOL * x0.re.abs().max(1.0) || x0.re == 0.0 {
                    return Err(Error::Invariant {
                        name: "real-x0",
                        detail: format!("x_0 = {x0} must be real and non-zero"),
                    });
                }
                let target = x0.re.abs();
                for (j, c) in comps.iter().enumerate().skip(1) {
                    if (c.norm_sqr() - target).abs() > LOAD_TOL * target {
                        return Err(Error::Invariant {
                            name: "rescaled-modulus",
                            detail: format!("|x_{j}|^2 = {} but |x_0| = {target}", c.norm_sqr()),
                        });
                    }
                }
            }
        }
        Ok(CVec::new(dim, comps, self.form.into())?)
    }
}

/// JSON form of an [`AnsatzVector`]: `{"d", "ghost", "angles"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnsatzFile {
    pub d: u64,
    pub ghost: bool,
    pub angles: Vec<f64>,
}

impl AnsatzFile {
    pub fn from_ansatz(av: &AnsatzVector) -> Self {
        AnsatzFile {
            d: av.dim().get(),
            ghost: av.ghost(),
            angles: av.angles(),
        }
    }

    pub fn to_ansatz(&self) -> Result<AnsatzVector> {
        Ok(AnsatzVector::from_angles(
            Dim::new(self.d)?,
            &self.angles,
            self.ghost,
        )?)
    }
}

pub fn parse_vector_file(text: &str) -> Result<CVec> {
    serde_json::from_str::<VectorFile>(text)?.to_cvec()
}

/// Either a vector file or an Ansatz file; the latter is returned in
/// normalized form.
pub fn load_vector(text: &str) -> Result<CVec> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.get("angles").is_some() {
        let af: AnsatzFile = serde_json::from_value(value)?;
        Ok(af.to_ansatz()?.to_normalized())
    } else {
        serde_json::from_value::<VectorFile>(value)?.to_cvec()
    }
}

pub fn vector_json(v: &CVec, metadata: Option<Metadata>) -> Result<String> {
    Ok(serde_json::to_string_pretty(&VectorFile::from_cvec(
        v, metadata,
    )?)?)
}

pub fn ansatz_json(av: &AnsatzVector) -> Result<String> {
    Ok(serde_json::to_string_pretty(&AnsatzFile::from_ansatz(av))?)
}

/// Write a square table of complex numbers, one row per first index.
///
/// Complex entries take two columns `k<n>_re,k<n>_im`; with `moduli` each
/// entry is a single `k<n>` column holding its modulus.
pub fn write_complex_table<W: Write>(
    w: W,
    row_label: &str,
    rows: &[&[Complex64]],
    moduli: bool,
) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    let width = rows.first().map_or(0, |r| r.len());
    let mut header = vec![row_label.to_string()];
    for k in 0..width {
        if moduli {
            header.push(format!("k{k}"));
        } else {
            header.push(format!("k{k}_re"));
            header.push(format!("k{k}_im"));
        }
    }
    out.write_record(&header)?;
    for (i, row) in rows.iter().enumerate() {
        let mut rec = vec![i.to_string()];
        for c in row.iter() {
            if moduli {
                rec.push(c.norm().to_string());
            } else {
                rec.push(c.re.to_string());
                rec.push(c.im.to_string());
            }
        }
        out.write_record(&rec)?;
    }
    out.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn write_classification_csv<W: Write>(w: W, rows: &[LegendreClassification]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["d", "mod8", "x_overlap_residual", "sic_residual", "verdict"])?;
    for c in rows {
        out.write_record([
            c.d.to_string(),
            c.mod8.to_string(),
            c.x_overlap_residual().to_string(),
            c.sic_residual().to_string(),
            c.verdict().name().to_string(),
        ])?;
    }
    out.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn write_perron_csv<W: Write>(w: W, rows: &[PerronCounts]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record([
        "p",
        "a",
        "reste_from_reste",
        "nichtreste_from_reste",
        "reste_from_nichtreste",
        "nichtreste_from_nichtreste",
        "matches",
    ])?;
    for c in rows {
        out.write_record([
            c.p.to_string(),
            c.a.to_string(),
            c.reste_from_reste.to_string(),
            c.nichtreste_from_reste.to_string(),
            c.reste_from_nichtreste.to_string(),
            c.nichtreste_from_nichtreste.to_string(),
            c.matches_prediction().to_string(),
        ])?;
    }
    out.flush().map_err(csv::Error::from)?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolysysManifest {
    pub d: u64,
    pub symmetry_multiplier: Option<i64>,
    pub num_generators: usize,
    pub sha256: String,
}

impl PolysysManifest {
    /// Manifest for `exported`, the exact text written for `sys`.
    pub fn new(sys: &PolySystem, exported: &str) -> Self {
        PolysysManifest {
            d: sys.dim().get(),
            symmetry_multiplier: sys.symmetry_multiplier(),
            num_generators: sys.polys().len(),
            sha256: hex::encode(Sha256::digest(exported.as_bytes())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfigJson {
    pub d: u64,
    pub objective: String,
    pub seed: u64,
    pub restarts: usize,
    pub max_iterations: usize,
    pub gradient_step: f64,
    pub convergence_threshold: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResultJson {
    pub angles: Vec<f64>,
    pub objective_value: f64,
    pub restart_index: usize,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchFile {
    pub config: SearchConfigJson,
    pub results: Vec<SearchResultJson>,
}

impl SearchFile {
    pub fn from_outcome(outcome: &SearchOutcome) -> Self {
        let c = &outcome.config;
        SearchFile {
            config: SearchConfigJson {
                d: c.dim.get(),
                objective: c.objective.name().into(),
                seed: c.seed,
                restarts: c.restarts,
                max_iterations: c.max_iterations,
                gradient_step: c.gradient_step,
                convergence_threshold: c.convergence_threshold,
            },
            results: outcome
                .results
                .iter()
                .map(|r| SearchResultJson {
                    angles: r.angles.clone(),
                    objective_value: r.objective_value,
                    restart_index: r.restart_index,
                    iterations: r.iterations,
                    converged: r.converged,
                })
                .collect(),
        }
    }

    pub fn to_outcome(&self) -> Result<SearchOutcome> {
        let c = &self.config;
        let objective = Objective::from_name(&c.objective).ok_or_else(|| Error::Invariant {
            name: "objective",
            detail: format!("unknown objective `{}`", c.objective),
        })?;
        let config = SearchConfig {
            dim: Dim::new(c.d)?,
            objective,
            seed: c.seed,
            restarts: c.restarts,
            max_iterations: c.max_iterations,
            gradient_step: c.gradient_step,
            convergence_threshold: c.convergence_threshold,
        };
        config.validate()?;
        let results = self
            .results
            .iter()
            .map(|r| SearchResult {
                angles: r.angles.clone(),
                objective_value: r.objective_value,
                restart_index: r.restart_index,
                iterations: r.iterations,
                converged: r.converged,
            })
            .collect();
        Ok(SearchOutcome::from_results(config, results))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use flatsic_core::known;

    #[test]
    fn d3_fiducial_file() {
        let text = r#"{"d":3,"form":"normalized","components":[[0,0],[0.7071067812,0],[-0.7071067812,0]]}"#;
        let v = parse_vector_file(text).unwrap();
        assert_eq!(v.dim().get(), 3);
        assert_eq!(v.form(), Form::Normalized);
    }

    #[test]
    fn load_errors_name_the_invariant() {
        let short = r#"{"d":7,"form":"normalized","components":[[1,0],[0,0],[0,0],[0,0],[0,0]]}"#;
        assert!(matches!(
            parse_vector_file(short),
            Err(Error::LengthMismatch { d: 7, found: 5 })
        ));
        let long = r#"{"d":3,"form":"normalized","components":[[2,0],[0,0],[0,0]]}"#;
        assert!(matches!(
            parse_vector_file(long),
            Err(Error::Invariant {
                name: "unit-norm",
                ..
            })
        ));
        let vform = r#"{"d":3,"form":"v-form","components":[[0,1],[1,0],[0.5,0]]}"#;
        assert!(matches!(
            parse_vector_file(vform),
            Err(Error::Invariant {
                name: "unit-phase",
                ..
            })
        ));
        let resc = r#"{"d":3,"form":"rescaled","components":[[-4,0],[2,0],[1,0]]}"#;
        assert!(matches!(
            parse_vector_file(resc),
            Err(Error::Invariant {
                name: "rescaled-modulus",
                ..
            })
        ));
        assert!(matches!(parse_vector_file("{"), Err(Error::Json(_))));
        assert!(matches!(
            parse_vector_file(r#"{"d":3}"#),
            Err(Error::Json(_))
        ));
    }

    #[test]
    fn rescaled_solution_round_trips() {
        let v = known::d7_x1();
        let meta = Metadata {
            label: Some("x1".into()),
            source: None,
        };
        let text = vector_json(&v, Some(meta.clone())).unwrap();
        let back = parse_vector_file(&text).unwrap();
        assert_eq!(back, v);
        let file: VectorFile = serde_json::from_str(&text).unwrap();
        assert_eq!(file.metadata, Some(meta));
    }

    #[test]
    fn ansatz_file_is_detected() {
        let text = r#"{"d":5,"ghost":false,"angles":[0.1,0.2]}"#;
        let v = load_vector(text).unwrap();
        assert_eq!(v.form(), Form::Normalized);
        assert!((v.norm() - 1.0).abs() < 1e-12);
        assert!(load_vector(r#"{"d":5,"ghost":false,"angles":[0.1]}"#).is_err());
    }

    #[test]
    fn complex_table_layout() {
        let rows = [
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, -1.0)],
            vec![Complex64::new(0.5, 0.5), Complex64::new(3.0, 4.0)],
        ];
        let refs: Vec<&[Complex64]> = rows.iter().map(|r| r.as_slice()).collect();
        let mut buf = Vec::new();
        write_complex_table(&mut buf, "j", &refs, false).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "j,k0_re,k0_im,k1_re,k1_im\n0,1,0,0,-1\n1,0.5,0.5,3,4\n"
        );
        let mut buf = Vec::new();
        write_complex_table(&mut buf, "i", &refs, true).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap().lines().nth(2),
            Some("1,0.7071067811865476,5")
        );
    }
}
