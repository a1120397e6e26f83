use serde::Serialize;

/// Output of `eval` and `verify`. The Monte Carlo fields are present only
/// for `verify`.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub group: String,
    pub rank: usize,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub closed_form: f64,
    pub method: String,
    pub condition_estimate: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mc_mean: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mc_stderr: Option<f64>,
    /// `|closed_form - mc_mean| / mc_stderr`; omitted when not finite.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z_score: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_samples: Option<u64>,
    pub elapsed_ms: u64,
}

/// Output of `constants`.
#[derive(Debug, Serialize)]
pub struct ConstantsReport {
    pub group: String,
    pub rank: usize,
    pub root_system: String,
    pub components: usize,
    pub weyl_order: u128,
    pub positive_roots: usize,
    /// `[[Π, Π]]` as a decimal string; it outgrows 64 bits quickly.
    pub pi_pi: String,
    pub pi_terms: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pi_polynomial: Option<String>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report fields serialize")
    }
}

impl ConstantsReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report fields serialize")
    }
}
