//! Report rendering.

use markov_shap::ShapReport;
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct Report {
    pub instance: String,
    pub mode: String,
    pub scores: Vec<Score>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verify: Option<Verify>,
}

#[derive(Debug, Serialize)]
pub struct Score {
    pub position: usize,
    pub score: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<Term>>,
}

#[derive(Debug, Serialize)]
pub struct Term {
    pub k: usize,
    pub shap1: f64,
    pub shap2: f64,
}

#[derive(Debug, Serialize)]
pub struct Verify {
    pub max_abs_dev: f64,
    pub tolerance: f64,
}

impl Report {
    pub fn new(instance: String, reports: &[ShapReport<f64>]) -> Self {
        let mode = reports.first().map_or("classic", |r| r.mode.name()).to_string();
        let scores = reports
            .iter()
            .map(|r| Score {
                position: r.position,
                score: r.score,
                terms: r
                    .per_k_terms
                    .as_ref()
                    .map(|ts| ts.iter().map(|t| Term { k: t.k, shap1: t.shap1, shap2: t.shap2 }).collect()),
            })
            .collect();
        Report { instance, mode, scores, verify: None }
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            return serde_json::to_string_pretty(self).expect("report serialises");
        }
        let mut out = format!("instance: {}\nmode: {}\n", self.instance, self.mode);
        for s in &self.scores {
            out += &format!("position {:>3}: {:+.12e}\n", s.position, s.score);
            for t in s.terms.iter().flatten() {
                out += &format!("    k={:<3} shap1={:+.12e} shap2={:+.12e}\n", t.k, t.shap1, t.shap2);
            }
        }
        if let Some(v) = &self.verify {
            out += &format!("max abs deviation from oracle: {:.3e} (tolerance {:.1e})\n", v.max_abs_dev, v.tolerance);
        }
        out.pop();
        out
    }
}
