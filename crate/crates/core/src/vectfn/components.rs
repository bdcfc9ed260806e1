//! Component-level statistics of an S-box.

use serde::Serialize;

use super::VectFn;
use crate::boolfn::{Anf, BoolFn, ShapeProfile};
use crate::error::{Error, Result};
use crate::linalg::{dot, rank};

/// Degree distribution over the nonzero components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeStats {
    /// `n[i]` = number of nonzero `lambda` with `deg F_lambda = i`, `i = 0..=m`.
    pub n: Vec<usize>,
    pub max_degree: usize,
    pub pure_quadratic: bool,
    pub pure_cubic: bool,
    /// `max_{a != 0} |{lambda != 0 : D_a F_lambda constant}|`.
    pub n_hat: usize,
}

impl DegreeStats {
    /// Distinct component degrees, ascending.
    pub fn degree_set(&self) -> Vec<usize> {
        (0..self.n.len()).filter(|&i| self.n[i] > 0).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentProfile {
    pub lambda: u32,
    pub degree: usize,
    /// `|Gamma(F_lambda)|`.
    pub gamma_count: usize,
    pub shape: ShapeProfile,
    /// `F(D_a F_lambda)` for every `a`, when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fourier_of_derivatives: Option<Vec<i64>>,
}

/// A pair `(a, lambda)` with `D_a F_lambda` equal to the constant `value`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConstantDerivative {
    pub a: u32,
    pub lambda: u32,
    pub value: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StructuralFlags {
    pub apn: bool,
    pub weakly_apn: bool,
    pub permutation: bool,
    pub n2_zero: bool,
    pub no_partially_bent_component: bool,
    /// APN, even dimension and a partially bent component: no permutation is
    /// EA-equivalent to such a function.
    pub ea_inequivalent_to_permutation: bool,
}

impl VectFn {
    /// ANFs of every component, indexed by `lambda` (entry 0 is the zero ANF).
    /// The ANF is linear in `lambda`, so only the coordinates are transformed.
    fn component_anfs(&self) -> Vec<Anf> {
        let coords: Vec<BoolFn> = self.coordinates().iter().map(|c| c.to_anf().coefficients().clone()).collect();
        let mut out: Vec<BoolFn> = vec![BoolFn::zero(self.dim()).expect("valid m")];
        for (i, c) in coords.iter().enumerate() {
            let base = 1 << i;
            for l in 0..base {
                let next = &out[l] ^ c;
                out.push(next);
            }
        }
        out.into_iter().map(Anf::from_coefficients).collect()
    }

    /// Algebraic degree of every nonzero component, indexed by `lambda`
    /// (entry 0 is reported as 0).
    pub fn component_degrees(&self) -> Vec<usize> {
        self.component_anfs().iter().map(|a| a.degree()).collect()
    }

    /// Number of nonzero `lambda` with `D_a F_lambda` constant. The derivative
    /// component is constant iff `lambda` is orthogonal to all differences of
    /// points of `Im(D_a F)`.
    fn constant_derivative_count(&self, a: u32) -> usize {
        let img = self.derivative_image(a);
        let diffs: Vec<u32> = img.iter().map(|&b| b ^ img[0]).collect();
        (1usize << (self.dim() - rank(&diffs))) - 1
    }

    pub fn degree_stats(&self) -> DegreeStats {
        let m = self.dim();
        let degrees = self.component_degrees();
        let mut n = vec![0usize; m + 1];
        for &d in &degrees[1..] {
            n[d] += 1;
        }
        let nonzero = self.len() - 1;
        let n_hat = (1..self.len() as u32)
            .map(|a| self.constant_derivative_count(a))
            .max()
            .unwrap_or(0);
        DegreeStats {
            max_degree: degrees[1..].iter().copied().max().unwrap_or(0),
            pure_quadratic: n[2] == nonzero,
            pure_cubic: m >= 3 && n[3] == nonzero,
            n_hat,
            n,
        }
    }

    /// `F(D_a F_lambda)` for every `lambda` (entry 0 is `2^m`).
    pub fn derivative_component_fourier(&self, a: u32) -> Result<Vec<i64>> {
        let d = self.derivative(a)?;
        let n = self.len() as u32;
        Ok((0..n)
            .map(|l| {
                (0..n)
                    .map(|x| if dot(l, d.get(x)) == 1 { -1i64 } else { 1 })
                    .sum()
            })
            .collect())
    }

    /// `sum over all lambda (including 0) of F(D_a F_lambda)^2`; at least
    /// `2^{2m+1}` for every `a != 0`, with equality everywhere iff APN.
    pub fn nyberg_sum(&self, a: u32) -> Result<i64> {
        if a == 0 {
            return Err(Error::domain("Nyberg sums are defined for nonzero directions"));
        }
        Ok(self.derivative_component_fourier(a)?.iter().map(|v| v * v).sum())
    }

    /// `Delta_a = { lambda != 0 : F(D_a F_lambda) != 0 }`.
    pub fn nonzero_fourier_components(&self, a: u32) -> Result<Vec<u32>> {
        if a == 0 {
            return Err(Error::domain("direction must be nonzero"));
        }
        let fv = self.derivative_component_fourier(a)?;
        Ok((1..self.len() as u32).filter(|&l| fv[l as usize] != 0).collect())
    }

    /// One profile per nonzero component, in `lambda` order.
    pub fn component_profiles(&self, with_derivative_fourier: bool) -> Vec<ComponentProfile> {
        let degrees = self.component_degrees();
        (1..self.len() as u32)
            .map(|l| {
                let c = self.component_unchecked(l);
                let ac = c.autocorrelation();
                ComponentProfile {
                    lambda: l,
                    degree: degrees[l as usize],
                    gamma_count: ac.iter().filter(|&&v| v == 0).count(),
                    shape: c.shape_profile(),
                    fourier_of_derivatives: with_derivative_fourier.then_some(ac),
                }
            })
            .collect()
    }

    /// Largest `|Gamma(F_lambda)|` over nonzero components.
    pub fn gamma_max(&self) -> usize {
        (1..self.len() as u32)
            .map(|l| self.component_unchecked(l).gamma_count())
            .max()
            .unwrap_or(0)
    }

    pub fn has_partially_bent_component(&self) -> bool {
        (1..self.len() as u32).any(|l| self.component_unchecked(l).shape_profile().partially_bent)
    }

    /// All `(a, lambda)`, both nonzero, with `D_a F_lambda` constant.
    pub fn constant_derivative_pairs(&self) -> Vec<ConstantDerivative> {
        let n = self.len() as u32;
        let mut out = Vec::new();
        for a in 1..n {
            let img = self.derivative_image(a);
            for lambda in 1..n {
                let value = dot(lambda, img[0]);
                if img.iter().all(|&b| dot(lambda, b) == value) {
                    out.push(ConstantDerivative {
                        a,
                        lambda,
                        value: value == 1,
                    });
                }
            }
        }
        out
    }

    /// APN / permutation flags together with the quadratic and partially bent
    /// component checks. For an APN permutation in even dimension both of
    /// those must come out clean; anything else is reported as an internal
    /// inconsistency.
    pub fn structural_flags(&self) -> Result<StructuralFlags> {
        let apn = self.is_apn();
        let permutation = self.is_permutation();
        let stats = self.degree_stats();
        let has_pb = self.has_partially_bent_component();
        let even = self.dim().is_multiple_of(2);
        let flags = StructuralFlags {
            apn,
            weakly_apn: self.weak_differential_uniformity().weakly_apn,
            permutation,
            n2_zero: stats.n[2] == 0,
            no_partially_bent_component: !has_pb,
            ea_inequivalent_to_permutation: apn && even && has_pb,
        };
        if apn && permutation && even && !(flags.n2_zero && flags.no_partially_bent_component) {
            return Err(Error::TheoremContradiction {
                theorem: "APN permutations in even dimension have no partially bent component".into(),
                witness: format!("n_2 = {}, partially bent component present = {has_pb}", stats.n[2]),
            });
        }
        Ok(flags)
    }
}
