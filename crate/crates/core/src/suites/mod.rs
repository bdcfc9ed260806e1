//! Campaigns that check structural statements about APN functions on
//! concrete inputs and report a verdict per statement.
//!
//! Each statement is checked only when its hypothesis holds for the input;
//! otherwise it is reported as not applicable.
//!
//! The census of 4-variable cubics and the permutation search used by
//! [`verify_nonexistence_m4`] are independent: the census works on ANF
//! masks and autocorrelations, the search on incremental difference pairs,
//! and they only share the truth-table primitives.

mod scan;
mod witness;

pub use scan::{case_bound, exhaustive_gamma_scan_m4, gamma_scan_m4, scan_masks, CaseTally, ScanMode, ScanReport, GAMMA_BOUND_M4};
pub use witness::find_weakly_apn_n1_witness;

use serde::Serialize;

use crate::constructions::{family_bc1, family_bc2, load_fixture, GfContext, FIXTURE_NAMES};
use crate::error::{Error, Result};
use crate::search::{Reductions, SearchConfig, SearchResult, SearchStats};
use crate::vectfn::VectFn;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Violated { witness: String },
    NotApplicable { reason: String },
}

impl Verdict {
    pub fn is_violated(&self) -> bool {
        matches!(self, Verdict::Violated { .. })
    }

    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    fn from_check(ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok {
            Verdict::Holds
        } else {
            Verdict::Violated { witness: witness() }
        }
    }

    fn skip(reason: impl Into<String>) -> Self {
        Verdict::NotApplicable { reason: reason.into() }
    }
}

/// One checked statement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremCheck {
    /// Stable identifier.
    pub id: &'static str,
    pub statement: &'static str,
    pub verdict: Verdict,
}

/// Search leg summary attached to a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchSummary {
    pub m: usize,
    pub reductions: Reductions,
    pub result: &'static str,
    pub stats: SearchStats,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub subject: String,
    pub checks: Vec<TheoremCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scan: Option<ScanReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchSummary>,
}

impl TheoremReport {
    fn new(subject: impl Into<String>) -> Self {
        TheoremReport {
            subject: subject.into(),
            checks: Vec::new(),
            scan: None,
            search: None,
        }
    }

    fn push(&mut self, id: &'static str, statement: &'static str, verdict: Verdict) {
        self.checks.push(TheoremCheck { id, statement, verdict });
    }

    pub fn check(&self, id: &str) -> Option<&TheoremCheck> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn verdict(&self, id: &str) -> Option<&Verdict> {
        self.check(id).map(|c| &c.verdict)
    }

    pub fn violations(&self) -> impl Iterator<Item = &TheoremCheck> {
        self.checks.iter().filter(|c| c.verdict.is_violated())
    }

    /// No applicable statement failed.
    pub fn all_hold(&self) -> bool {
        self.violations().next().is_none()
    }

    /// `TheoremContradiction` for the first violated statement.
    pub fn ensure_holds(&self) -> Result<()> {
        match self.violations().next() {
            None => Ok(()),
            Some(c) => Err(Error::TheoremContradiction {
                theorem: format!("{} ({})", c.statement, self.subject),
                witness: match &c.verdict {
                    Verdict::Violated { witness } => witness.clone(),
                    _ => unreachable!(),
                },
            }),
        }
    }
}

fn list(items: impl IntoIterator<Item = impl ToString>) -> String {
    items.into_iter().map(|i| i.to_string()).collect::<Vec<_>>().join(", ")
}

/// Checks every statement whose hypothesis `f` satisfies.
pub fn verify_structural_theorems(f: &VectFn) -> TheoremReport {
    verify_named(f, "input")
}

fn verify_named(f: &VectFn, subject: &str) -> TheoremReport {
    let m = f.dim();
    let n = f.len() as u32;
    let even = m.is_multiple_of(2);
    let delta = f.differential_uniformity();
    let apn = delta == 2;
    let weak = f.weak_differential_uniformity();
    let perm = f.is_permutation();
    let stats = f.degree_stats();
    let profiles = f.component_profiles(false);
    let apn_perm_even = apn && perm && even;
    let mut r = TheoremReport::new(subject);

    let target = 1i64 << (2 * m + 1);
    let sums: Vec<(u32, i64)> = (1..n).map(|a| (a, f.nyberg_sum(a).expect("a != 0"))).collect();
    let all_at_target = sums.iter().all(|&(_, s)| s == target);
    let below = sums.iter().find(|&&(_, s)| s < target);
    r.push(
        "nyberg_criterion",
        "APN exactly when every nonzero direction has derivative Fourier energy 2^(2m+1)",
        Verdict::from_check(below.is_none() && apn == all_at_target, || match below {
            Some((a, s)) => format!("a = {a}: sum {s} < {target}"),
            None => format!("delta = {delta} but all sums equal {target} is {all_at_target}"),
        }),
    );

    r.push(
        "uniformity_dominates_weak",
        "differential uniformity is at least the weak differential uniformity",
        Verdict::from_check(delta >= weak.delta_bar, || {
            format!("delta = {delta} < weak delta = {}", weak.delta_bar)
        }),
    );

    r.push(
        "weakly_apn_constant_derivatives",
        "weakly-APN functions have at most one constant derivative component per direction",
        if weak.weakly_apn {
            Verdict::from_check(stats.n_hat <= 1, || format!("n_hat = {}", stats.n_hat))
        } else {
            Verdict::skip("not weakly-APN")
        },
    );

    r.push(
        "apn_no_affine_components",
        "APN functions have no affine nonzero component",
        if apn {
            Verdict::from_check(stats.n[1] == 0 && stats.n[0] == 0, || {
                let affine: Vec<u32> = profiles.iter().filter(|p| p.degree <= 1).map(|p| p.lambda).collect();
                format!("affine components lambda = {}", list(affine))
            })
        } else {
            Verdict::skip("not APN")
        },
    );

    r.push(
        "apn_permutation_dichotomy",
        "for an APN permutation with m >= 3, n_hat = 0 rules out partially bent components",
        if apn && perm && m >= 3 {
            let pb: Vec<u32> = profiles.iter().filter(|p| p.shape.partially_bent).map(|p| p.lambda).collect();
            Verdict::from_check(stats.n_hat <= 1 && (stats.n_hat == 1 || pb.is_empty()), || {
                format!("n_hat = {}, partially bent lambda = {}", stats.n_hat, list(pb))
            })
        } else {
            Verdict::skip("not an APN permutation with m >= 3")
        },
    );

    let gate = |ok: bool| if ok { None } else { Some(Verdict::skip("not an APN permutation in even dimension")) };

    r.push(
        "constant_derivatives_are_one",
        "in an APN permutation of even dimension every constant derivative component equals 1",
        gate(apn_perm_even).unwrap_or_else(|| {
            let zero = f.constant_derivative_pairs().into_iter().find(|c| !c.value);
            Verdict::from_check(zero.is_none(), || {
                let c = zero.expect("checked");
                format!("D_a F_lambda = 0 for a = {}, lambda = {}", c.a, c.lambda)
            })
        }),
    );

    r.push(
        "no_partially_bent_component",
        "an APN permutation of even dimension has no partially bent nonzero component",
        gate(apn_perm_even).unwrap_or_else(|| {
            let pb: Vec<u32> = profiles.iter().filter(|p| p.shape.partially_bent).map(|p| p.lambda).collect();
            Verdict::from_check(pb.is_empty(), || format!("partially bent lambda = {}", list(pb)))
        }),
    );

    r.push(
        "no_quadratic_component",
        "an APN permutation of even dimension has no quadratic component",
        gate(apn_perm_even).unwrap_or_else(|| Verdict::from_check(stats.n[2] == 0, || format!("n_2 = {}", stats.n[2]))),
    );

    let has_pb = profiles.iter().any(|p| p.shape.partially_bent);
    r.push(
        "ea_inequivalent_to_permutation",
        "an even-dimensional APN function with a partially bent component is not EA-equivalent to a permutation",
        if apn && even && has_pb {
            Verdict::from_check(!perm, || "the function itself is a permutation".into())
        } else {
            Verdict::skip("needs an APN function in even dimension with a partially bent component")
        },
    );

    let cubic = stats.max_degree == 3;
    let gamma_bound = (1usize << m) - (1usize << (m - 2)) - 1;
    r.push(
        "cubic_apn_gamma_bound",
        "a cubic APN function in even dimension has a component with at least 2^m - 2^(m-2) - 1 balanced derivatives",
        if apn && even && cubic {
            let best = profiles.iter().max_by_key(|p| (p.gamma_count, std::cmp::Reverse(p.lambda)));
            let best_gamma = best.map_or(0, |p| p.gamma_count);
            Verdict::from_check(best_gamma >= gamma_bound, || {
                format!("largest |Gamma| = {best_gamma} < {gamma_bound}")
            })
        } else {
            Verdict::skip("needs a cubic APN function in even dimension")
        },
    );

    r.push(
        "pure_cubic_m4_not_apn",
        "no pure cubic function in dimension 4 is APN",
        if m == 4 && stats.pure_cubic {
            Verdict::from_check(!apn, || "pure cubic with delta = 2".into())
        } else {
            Verdict::skip("needs a pure cubic with m = 4")
        },
    );

    r.push(
        "no_apn_permutation_m4",
        "no permutation in dimension 4 is APN",
        if m == 4 && perm {
            Verdict::from_check(!apn, || "APN permutation".into())
        } else {
            Verdict::skip("needs a permutation with m = 4")
        },
    );

    r.push(
        "m6_apn_permutation_degrees",
        "every nonzero component of an APN permutation in dimension 6 has degree 3, 4 or 5",
        if m == 6 && apn && perm {
            let set = stats.degree_set();
            Verdict::from_check(set.iter().all(|d| (3..=5).contains(d)), || format!("degree set {{{}}}", list(set)))
        } else {
            Verdict::skip("needs an APN permutation with m = 6")
        },
    );

    r.push(
        "m6_invertible_pure_cubic_not_apn",
        "no invertible pure cubic in dimension 6 is APN",
        if m == 6 && perm && stats.pure_cubic {
            Verdict::from_check(!apn, || "APN invertible pure cubic".into())
        } else {
            Verdict::skip("needs an invertible pure cubic with m = 6")
        },
    );

    r
}

/// The three independent legs behind the non-existence of APN permutations
/// in dimension 4: the cubic census, the component bound on the bundled
/// APN functions, and the exhaustive search.
pub fn verify_nonexistence_m4() -> Result<TheoremReport> {
    verify_nonexistence_m4_with(crate::default_workers())
}

pub fn verify_nonexistence_m4_with(workers: usize) -> Result<TheoremReport> {
    let mut r = TheoremReport::new("dimension 4");

    let scan = gamma_scan_m4(ScanMode::Full, workers)?;
    let scan_violations = scan.violations();
    r.push(
        "cubic_gamma_below_11",
        "every 4-variable cubic has at most 10 balanced derivatives (9 unless it has exactly two cubic terms)",
        Verdict::from_check(scan_violations.is_empty(), || scan_violations.join("; ")),
    );
    r.scan = Some(scan);

    let mut premise_ok = true;
    let mut premise_witness = Vec::new();
    for name in ["apn4_quadratic", "apn4_cubic"] {
        match load_fixture(name) {
            Ok(fx) => {
                let sub = verify_named(&fx.function, name);
                let v = sub.verdict("cubic_apn_gamma_bound").cloned().expect("always reported");
                if let Verdict::Violated { witness } = &v {
                    premise_ok = false;
                    premise_witness.push(format!("{name}: {witness}"));
                }
                if name == "apn4_cubic" && !v.holds() {
                    premise_ok = false;
                    premise_witness.push(format!("{name}: bound not established ({v:?})"));
                }
                // components above the cubic ceiling must have degree <= 2
                let high: Vec<u32> = fx
                    .function
                    .component_profiles(false)
                    .iter()
                    .filter(|p| p.gamma_count > GAMMA_BOUND_M4 && p.degree > 2)
                    .map(|p| p.lambda)
                    .collect();
                if !high.is_empty() {
                    premise_ok = false;
                    premise_witness.push(format!("{name}: cubic components above the bound, lambda = {}", list(high)));
                }
            }
            Err(e) => {
                premise_ok = false;
                premise_witness.push(e.to_string());
            }
        }
    }
    r.push(
        "cubic_apn_gamma_bound_m4",
        "the bundled cubic APN function has a component with at least 11 balanced derivatives, all of degree at most 2",
        Verdict::from_check(premise_ok, || premise_witness.join("; ")),
    );

    let out = SearchConfig::new(4).workers(workers).run()?;
    let exhausted = out.result == SearchResult::ExhaustedNoSolution;
    r.push(
        "search_exhausts_m4",
        "the normalized search tree for dimension 4 contains no APN permutation",
        Verdict::from_check(exhausted, || match &out.result {
            SearchResult::Found(f) => format!("found {:?}", f.table()),
            other => other.label().to_string(),
        }),
    );
    r.search = Some(SearchSummary {
        m: 4,
        reductions: Reductions::all(),
        result: out.result.label(),
        stats: out.stats,
    });

    let legs_hold = r.checks.iter().all(|c| c.verdict.holds());
    r.push(
        "no_apn_permutation_m4",
        "no permutation in dimension 4 is APN",
        Verdict::from_check(legs_hold, || {
            let failed: Vec<&str> = r.checks.iter().filter(|c| !c.verdict.holds()).map(|c| c.id).collect();
            format!("failing legs: {}", list(failed))
        }),
    );
    Ok(r)
}

/// Structural reports for every bundled fixture; a fixture that fails to
/// load is reported as a violated `fixture_valid` check.
pub fn verify_fixture_suite() -> Vec<TheoremReport> {
    FIXTURE_NAMES
        .iter()
        .map(|&name| match load_fixture(name) {
            Ok(fx) => verify_named(&fx.function, name),
            Err(e) => {
                let mut r = TheoremReport::new(name);
                r.push(
                    "fixture_valid",
                    "the bundled table matches its recorded properties",
                    Verdict::Violated { witness: e.to_string() },
                );
                r
            }
        })
        .collect()
}

/// Structural reports for the trace-based families in dimension 6 and for
/// the cube map in dimension 3.
pub fn verify_family_suite() -> Result<Vec<TheoremReport>> {
    let f3 = GfContext::new(3, None)?;
    let f6 = GfContext::new(6, None)?;
    Ok(vec![
        verify_named(&crate::constructions::power_map(&f3, 3)?, "cube_m3"),
        verify_named(&family_bc1(&f6, 1)?, "bc1_m6_i1"),
        verify_named(&family_bc2(&f6)?, "bc2_m6"),
    ])
}
