//! Balanced-derivative census of 4-variable cubics.

use serde::Serialize;

use crate::boolfn::{Anf, BoolFn};
use crate::error::{Error, Result};

const M: usize = 4;
/// ANF masks of the four cubic monomials.
const CUBIC_MONOMIALS: [u32; 4] = [0b0111, 0b1011, 0b1101, 0b1110];
/// ANF masks of the six quadratic monomials.
const QUADRATIC_MONOMIALS: [u32; 6] = [0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100];
const TOP: u32 = 0b1111;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanMode {
    /// Every ANF coefficient mask on 4 variables.
    Full,
    /// Only the quadratic and cubic monomials; constant and linear terms are
    /// left at zero since they do not change which derivatives are balanced.
    Reduced,
}

/// Tally for the cubics with a given number of degree-3 monomials.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseTally {
    pub cubic_terms: usize,
    pub functions: u64,
    pub max_gamma: usize,
    /// `histogram[g]` = number of functions with `|Gamma| = g`.
    pub histogram: Vec<u64>,
    /// Smallest ANF mask attaining `max_gamma`.
    pub witness: Option<u32>,
}

impl CaseTally {
    fn new(cubic_terms: usize) -> Self {
        CaseTally {
            cubic_terms,
            functions: 0,
            max_gamma: 0,
            histogram: vec![0; 1 << M],
            witness: None,
        }
    }

    fn record(&mut self, mask: u32, gamma: usize) {
        self.functions += 1;
        self.histogram[gamma] += 1;
        if self.witness.is_none() || gamma > self.max_gamma {
            self.max_gamma = gamma;
            self.witness = Some(mask);
        }
    }

    fn merge(&mut self, other: &CaseTally) {
        self.functions += other.functions;
        for (h, o) in self.histogram.iter_mut().zip(&other.histogram) {
            *h += o;
        }
        let better = match (self.witness, other.witness) {
            (_, None) => false,
            (None, Some(_)) => true,
            (Some(w), Some(v)) => other.max_gamma > self.max_gamma || (other.max_gamma == self.max_gamma && v < w),
        };
        if better {
            self.max_gamma = other.max_gamma;
            self.witness = other.witness;
        }
    }

    /// Upper bound on `|Gamma|` proven for this case.
    pub fn bound(&self) -> usize {
        case_bound(self.cubic_terms)
    }
}

/// Largest `|Gamma|` a 4-variable cubic with `cubic_terms` degree-3
/// monomials can have.
pub fn case_bound(cubic_terms: usize) -> usize {
    if cubic_terms == 2 {
        10
    } else {
        9
    }
}

/// Overall bound on `|Gamma|` for 4-variable cubics.
pub const GAMMA_BOUND_M4: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub mode: ScanMode,
    /// Cases for 1, 2, 3 and 4 cubic monomials, in that order.
    pub cases: Vec<CaseTally>,
    pub global_max: usize,
    pub total: u64,
}

impl ScanReport {
    fn empty(mode: ScanMode) -> Self {
        ScanReport {
            mode,
            cases: (1..=4).map(CaseTally::new).collect(),
            global_max: 0,
            total: 0,
        }
    }

    fn record(&mut self, mask: u32, gamma: usize) {
        let terms = CUBIC_MONOMIALS.iter().filter(|&&c| mask >> c & 1 == 1).count();
        self.cases[terms - 1].record(mask, gamma);
        self.total += 1;
        self.global_max = self.global_max.max(gamma);
    }

    fn merge(mut self, other: ScanReport) -> Self {
        for (c, o) in self.cases.iter_mut().zip(&other.cases) {
            c.merge(o);
        }
        self.total += other.total;
        self.global_max = self.global_max.max(other.global_max);
        self
    }

    /// Descriptions of every bound that the observed maxima exceed.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.global_max > GAMMA_BOUND_M4 {
            out.push(format!("global max |Gamma| = {} exceeds {GAMMA_BOUND_M4}", self.global_max));
        }
        for c in &self.cases {
            if c.functions > 0 && c.max_gamma > c.bound() {
                out.push(format!(
                    "{} cubic terms: |Gamma| = {} for ANF mask {:#06x}, bound {}",
                    c.cubic_terms,
                    c.max_gamma,
                    c.witness.unwrap_or(0),
                    c.bound()
                ));
            }
        }
        out
    }

    /// `TheoremContradiction` if any bound is exceeded.
    pub fn check(&self) -> Result<()> {
        match self.violations().first() {
            None => Ok(()),
            Some(v) => Err(Error::TheoremContradiction {
                theorem: "4-variable cubics have at most 10 balanced derivatives".into(),
                witness: v.clone(),
            }),
        }
    }

    /// Maxima per case, for comparing scans.
    pub fn case_maxima(&self) -> Vec<usize> {
        self.cases.iter().map(|c| c.max_gamma).collect()
    }
}

fn is_cubic(mask: u32) -> bool {
    mask >> TOP & 1 == 0 && CUBIC_MONOMIALS.iter().any(|&c| mask >> c & 1 == 1)
}

fn gamma_of(mask: u32) -> usize {
    let coeffs = BoolFn::from_words(M, vec![mask as u64]).expect("m = 4");
    Anf::from_coefficients(coeffs).to_truth_table().gamma_count()
}

/// The ANF masks visited by a scan, in increasing order.
pub fn scan_masks(mode: ScanMode) -> Vec<u32> {
    match mode {
        ScanMode::Full => (0u32..1 << (1 << M)).filter(|&m| is_cubic(m)).collect(),
        ScanMode::Reduced => {
            let monomials: Vec<u32> = QUADRATIC_MONOMIALS.iter().chain(&CUBIC_MONOMIALS).copied().collect();
            let mut masks: Vec<u32> = (0u32..1 << monomials.len())
                .map(|sel| {
                    monomials
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| sel >> i & 1 == 1)
                        .fold(0u32, |acc, (_, &u)| acc | 1 << u)
                })
                .filter(|&m| is_cubic(m))
                .collect();
            masks.sort_unstable();
            masks
        }
    }
}

/// Computes `|Gamma|` for every 4-variable cubic visited by `mode`, split over
/// `workers` threads. The report does not depend on the worker count.
pub fn gamma_scan_m4(mode: ScanMode, workers: usize) -> Result<ScanReport> {
    use rayon::prelude::*;
    let masks = scan_masks(mode);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::domain(format!("cannot start worker pool: {e}")))?;
    let chunk = masks.len().div_ceil(workers.max(1) * 4).max(1);
    let report = pool.install(|| {
        masks
            .par_chunks(chunk)
            .map(|part| {
                let mut r = ScanReport::empty(mode);
                for &mask in part {
                    r.record(mask, gamma_of(mask));
                }
                r
            })
            .reduce(|| ScanReport::empty(mode), ScanReport::merge)
    });
    Ok(report)
}

/// Full census on the default worker count.
pub fn exhaustive_gamma_scan_m4() -> Result<ScanReport> {
    gamma_scan_m4(ScanMode::Full, crate::default_workers())
}
