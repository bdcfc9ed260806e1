//! JSON report layout. Field names are part of the command-line interface.

use serde::Serialize;
use vbf_core::{ComponentProfile, TheoremReport, VectFn};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

pub const TOOL: Tool = Tool {
    name: "vbf",
    version: env!("CARGO_PKG_VERSION"),
};

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Input {
    File { path: String, m: usize },
}

#[derive(Serialize)]
pub struct ComponentSummary {
    pub gamma_max: usize,
    pub bent: usize,
    pub plateaued: usize,
    pub partially_bent: usize,
}

#[derive(Serialize)]
pub struct Metrics {
    pub delta: u32,
    pub delta_bar: u32,
    pub apn: bool,
    pub weakly_apn: bool,
    pub permutation: bool,
    /// Index `i` holds the number of nonzero components of degree `i`.
    pub n: Vec<usize>,
    pub n_hat: usize,
    pub max_degree: usize,
    pub degree_set: Vec<usize>,
    pub pure_quadratic: bool,
    pub pure_cubic: bool,
    pub components: ComponentSummary,
}

#[derive(Serialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

#[derive(Serialize)]
pub struct AnalyzeReport {
    pub schema_version: u32,
    pub tool: Tool,
    pub input: Input,
    pub metrics: Metrics,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub component_table: Option<Vec<ComponentProfile>>,
    pub theorems: TheoremReport,
    pub timing: Timing,
}

pub fn metrics(f: &VectFn, profiles: &[ComponentProfile]) -> Metrics {
    let weak = f.weak_differential_uniformity();
    let stats = f.degree_stats();
    let delta = f.differential_uniformity();
    Metrics {
        delta,
        delta_bar: weak.delta_bar,
        apn: delta == 2,
        weakly_apn: weak.weakly_apn,
        permutation: f.is_permutation(),
        degree_set: stats.degree_set(),
        n: stats.n,
        n_hat: stats.n_hat,
        max_degree: stats.max_degree,
        pure_quadratic: stats.pure_quadratic,
        pure_cubic: stats.pure_cubic,
        components: ComponentSummary {
            gamma_max: profiles.iter().map(|p| p.gamma_count).max().unwrap_or(0),
            bent: profiles.iter().filter(|p| p.shape.bent).count(),
            plateaued: profiles.iter().filter(|p| p.shape.is_plateaued()).count(),
            partially_bent: profiles.iter().filter(|p| p.shape.partially_bent).count(),
        },
    }
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub tool: Tool,
    pub suite: String,
    pub all_hold: bool,
    pub reports: Vec<TheoremReport>,
    pub timing: Timing,
}

#[derive(Serialize)]
pub struct SearchReport {
    pub schema_version: u32,
    pub tool: Tool,
    pub m: usize,
    pub reductions: vbf_core::Reductions,
    pub order: vbf_core::InputOrder,
    pub budget: Option<u64>,
    pub workers: usize,
    pub result: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<u32>>,
    /// The solution in S-box text format.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sbox: Option<String>,
    pub stats: vbf_core::SearchStats,
}
